//! Trace words in the derived superfields `Ψ_μ = ∂^μ Ψ |₀`.
//!
//! A letter label `μ = (r+, r-, S)` is stored as an [`AMonomial`] `z+^{r+} z-^{r-} θ_S`, meaning
//! `∂_{z+}^{r+} ∂_{z-}^{r-} ∂_{θ_{s1}} ∂_{θ_{s2}} ... Ψ` with `s1 < s2 < ...`. At the origin
//! `Ψ_μ = c_μ Φ_μ` with `c_μ = r+! r-! (-1)^{k(k-1)/2}`, `k = |S|`.
//!
//! Text format: one term per line, `coeff * Tr(L L ...) * Tr(...)`. A label is a concatenation
//! of the tokens `zp`, `zm`, `t1`, `t2`, `t3`, read as derivatives applied right to left.
//! Blank lines and `#` comments are ignored.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::cochain::{Cochain, GeneratorTable, SuperMonomial};
use crate::error::{RelcohError, Result};
use crate::liealg::LieAlgebraData;
use crate::superspace::{AMonomial, MultiDegree};

pub type Label = AMonomial;

/// Letter parity `1 + |S|`.
pub fn letter_parity(l: Label) -> u8 {
    (1 + l.theta_count() as u8) % 2
}

/// Normalization `c_μ` of `Ψ_μ |₀` against `Φ_μ`.
pub fn letter_normalization(l: Label) -> BigInt {
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let k = l.theta_count();
    let s = if (k * k.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
    fact(l.zp) * fact(l.zm) * BigInt::from(s)
}

/// `∂_{θ_i}` (0-based `i`) of `Ψ_S`: `(-1)^{#{s in S : s < i}} Ψ_{S ∪ i}`, zero if `i ∈ S`.
pub fn derive_theta(l: Label, i: usize) -> Option<(i64, Label)> {
    let bit = 1u8 << i;
    if l.theta & bit != 0 {
        return None;
    }
    let below = (l.theta & (bit - 1)).count_ones();
    let s = if below % 2 == 1 { -1 } else { 1 };
    Some((s, AMonomial::new(l.zp, l.zm, l.theta | bit)))
}

/// Derivative direction: `0 = z+`, `1 = z-`, `2..5 = θ1..θ3`.
pub fn derive(l: Label, dir: usize) -> Option<(i64, Label)> {
    match dir {
        0 => Some((1, AMonomial::new(l.zp + 1, l.zm, l.theta))),
        1 => Some((1, AMonomial::new(l.zp, l.zm + 1, l.theta))),
        _ => derive_theta(l, dir - 2),
    }
}

/// Label from derivative tokens written left to right (leftmost outermost).
pub fn label_from_dirs(dirs: &[usize]) -> Option<(i64, Label)> {
    let mut l = AMonomial::UNIT;
    let mut sign = 1;
    for &d in dirs.iter().rev() {
        let (s, nl) = derive(l, d)?;
        sign *= s;
        l = nl;
    }
    Some((sign, l))
}

pub fn label_string(l: Label) -> String {
    let mut s = String::new();
    for _ in 0..l.zp {
        s.push_str("zp");
    }
    for _ in 0..l.zm {
        s.push_str("zm");
    }
    for i in 0..3 {
        if l.theta & (1 << i) != 0 {
            s.push_str(&format!("t{}", i + 1));
        }
    }
    s
}

/// Parses a label; returns the sign picked up by reordering θ-derivatives (0 if it vanishes).
pub fn parse_label(tok: &str) -> Result<(i64, Label)> {
    let mut dirs = Vec::new();
    let b = tok.as_bytes();
    let mut k = 0;
    while k < b.len() {
        let t = tok.get(k..k + 2).ok_or_else(|| RelcohError::Parse(format!("bad label `{tok}`")))?;
        dirs.push(match t {
            "zp" => 0,
            "zm" => 1,
            "t1" => 2,
            "t2" => 3,
            "t3" => 4,
            _ => return Err(RelcohError::Parse(format!("bad label token `{t}` in `{tok}`"))),
        });
        k += 2;
    }
    if dirs.is_empty() {
        return Err(RelcohError::Parse("empty letter label".into()));
    }
    Ok(label_from_dirs(&dirs).unwrap_or((0, AMonomial::UNIT)))
}

/// `coeff * Π Tr(letters)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTerm {
    pub coeff: BigRational,
    pub traces: Vec<Vec<Label>>,
}

impl TraceTerm {
    pub fn letters(&self) -> impl Iterator<Item = &Label> {
        self.traces.iter().flatten()
    }

    pub fn multidegree(&self) -> MultiDegree {
        self.letters().fold(MultiDegree::ZERO, |acc, l| acc + l.degree())
    }

    pub fn length(&self) -> usize {
        self.letters().count()
    }
}

/// A linear combination of products of traces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceWord {
    pub terms: Vec<TraceTerm>,
}

fn trace_parity(t: &[Label]) -> u8 {
    t.iter().map(|&l| letter_parity(l)).sum::<u8>() % 2
}

/// Canonical cyclic rotation of one trace: `Some((sign, letters))`, `None` if it vanishes by
/// cyclic antisymmetry.
pub fn canonical_trace(t: &[Label]) -> Option<(i64, Vec<Label>)> {
    let n = t.len();
    if n == 0 {
        return Some((1, Vec::new()));
    }
    let mut best: Option<(Vec<Label>, i64)> = None;
    let mut cur: Vec<Label> = t.to_vec();
    let mut sign = 1i64;
    let total = trace_parity(t);
    for _ in 0..n {
        match &best {
            None => best = Some((cur.clone(), sign)),
            Some((b, s)) => match cur.cmp(b) {
                Ordering::Less => best = Some((cur.clone(), sign)),
                Ordering::Equal if *s != sign => return None,
                _ => {}
            },
        }
        // Tr(L X) = (-1)^{|L||X|} Tr(X L).
        let first = cur.remove(0);
        let pl = letter_parity(first);
        if pl == 1 && (total + pl) % 2 == 1 {
            sign = -sign;
        }
        cur.push(first);
    }
    let (b, s) = best.expect("nonempty");
    Some((s, b))
}

/// Canonical form of one trace, optionally also identifying `Tr(X1..Xk)` with
/// `(-1)^k κ Tr(Xk..X1)` (`κ` the Koszul sign of the reversal), valid when every letter satisfies
/// `X^T = -Ω X Ω^{-1}` as in the orthogonal and symplectic series.
pub fn canonical_trace_with(t: &[Label], reflect: bool) -> Option<(i64, Vec<Label>)> {
    let (s, c) = canonical_trace(t)?;
    if !reflect {
        return Some((s, c));
    }
    let rev: Vec<Label> = t.iter().rev().copied().collect();
    let (sr, cr) = canonical_trace(&rev)?;
    let odd = t.iter().filter(|&&l| letter_parity(l) == 1).count();
    let koszul = if (odd * odd.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
    let len_sign = if t.len() % 2 == 1 { -1 } else { 1 };
    let sr = sr * koszul * len_sign;
    match cr.cmp(&c) {
        Ordering::Less => Some((sr, cr)),
        Ordering::Equal if sr != s => None,
        _ => Some((s, c)),
    }
}

impl TraceWord {
    pub fn zero() -> Self {
        TraceWord::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single(coeff: BigRational, traces: Vec<Vec<Label>>) -> Self {
        TraceWord { terms: vec![TraceTerm { coeff, traces }] }.canonical()
    }

    pub fn add(&mut self, other: &TraceWord) {
        self.terms.extend(other.terms.iter().cloned());
        *self = core::mem::take(self).canonical();
    }

    pub fn scale(&self, s: &BigRational) -> TraceWord {
        TraceWord {
            terms: self.terms.iter().map(|t| TraceTerm { coeff: &t.coeff * s, traces: t.traces.clone() }).collect(),
        }
        .canonical()
    }

    /// Product of trace words (concatenation of trace lists).
    pub fn mul(&self, other: &TraceWord) -> TraceWord {
        let mut out = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut traces = a.traces.clone();
                traces.extend(b.traces.iter().cloned());
                out.push(TraceTerm { coeff: &a.coeff * &b.coeff, traces });
            }
        }
        TraceWord { terms: out }.canonical()
    }

    /// Canonical form: each trace rotated to its minimal representative, traces sorted with
    /// Koszul signs, like terms merged.
    pub fn canonical(self) -> TraceWord {
        self.canonical_with(false)
    }

    /// As [`TraceWord::canonical`], with reversal symmetry when `reflect` is set.
    pub fn canonical_with(self, reflect: bool) -> TraceWord {
        let mut acc: Vec<(Vec<Vec<Label>>, BigRational)> = Vec::new();
        let mut index: HashMap<Vec<Vec<Label>>, usize> = HashMap::new();
        'terms: for term in self.terms {
            if term.coeff.is_zero() {
                continue;
            }
            let mut sign = 1i64;
            let mut traces = Vec::with_capacity(term.traces.len());
            for t in &term.traces {
                match canonical_trace_with(t, reflect) {
                    Some((s, c)) => {
                        sign *= s;
                        traces.push(c);
                    }
                    None => continue 'terms,
                }
            }
            // Insertion sort of traces with Koszul signs.
            for i in 1..traces.len() {
                let mut j = i;
                while j > 0 && trace_key_cmp(&traces[j - 1], &traces[j]) == Ordering::Greater {
                    if trace_parity(&traces[j - 1]) == 1 && trace_parity(&traces[j]) == 1 {
                        sign = -sign;
                    }
                    traces.swap(j - 1, j);
                    j -= 1;
                }
            }
            for w in traces.windows(2) {
                if w[0] == w[1] && trace_parity(&w[0]) == 1 {
                    continue 'terms;
                }
            }
            let c = if sign < 0 { -term.coeff } else { term.coeff };
            match index.get(&traces) {
                Some(&k) => acc[k].1 += c,
                None => {
                    index.insert(traces.clone(), acc.len());
                    acc.push((traces, c));
                }
            }
        }
        let mut terms: Vec<TraceTerm> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(traces, coeff)| TraceTerm { coeff, traces })
            .collect();
        terms.sort_by(|a, b| a.traces.cmp(&b.traces));
        TraceWord { terms }
    }

    /// Multidegree and word length, if homogeneous.
    pub fn sector(&self) -> Option<(usize, MultiDegree)> {
        let mut it = self.terms.iter().map(|t| (t.length(), t.multidegree()));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn parse(text: &str) -> Result<TraceWord> {
        let mut terms = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            terms.push(parse_term(line)?);
        }
        Ok(TraceWord { terms }.canonical())
    }

    /// Applies a derivative (`dir` as in [`derive`]) to every letter by the Leibniz rule.
    pub fn derive(&self, dir: usize) -> TraceWord {
        let mut out = Vec::new();
        for t in &self.terms {
            let mut prefix = 0u8;
            for (ti, tr) in t.traces.iter().enumerate() {
                for (li, &l) in tr.iter().enumerate() {
                    if let Some((s, nl)) = derive(l, dir) {
                        let koszul = if dir >= 2 && prefix == 1 { -1 } else { 1 };
                        let mut traces = t.traces.clone();
                        traces[ti][li] = nl;
                        let c = &t.coeff * BigRational::from_integer(BigInt::from(s * koszul));
                        out.push(TraceTerm { coeff: c, traces });
                    }
                    prefix ^= letter_parity(l);
                }
            }
        }
        TraceWord { terms: out }.canonical()
    }
}

fn trace_key_cmp(a: &[Label], b: &[Label]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn parse_term(line: &str) -> Result<TraceTerm> {
    let err = |m: &str| RelcohError::Parse(format!("{m} in `{line}`"));
    let mut coeff = BigRational::one();
    let mut traces = Vec::new();
    for (k, factor) in line.split('*').enumerate() {
        let f = factor.trim();
        if let Some(inner) = f.strip_prefix("Tr(").or_else(|| f.strip_prefix("-Tr(")) {
            if f.starts_with('-') {
                coeff = -coeff;
            }
            let inner = inner.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
            let mut letters = Vec::new();
            for tok in inner.split_whitespace() {
                let (s, l) = parse_label(tok)?;
                if s == 0 {
                    coeff = BigRational::zero();
                } else if s < 0 {
                    coeff = -coeff;
                }
                letters.push(l);
            }
            if letters.is_empty() {
                return Err(err("empty trace"));
            }
            traces.push(letters);
        } else if k == 0 {
            coeff = parse_rational(f).ok_or_else(|| err("bad coefficient"))?;
        } else {
            return Err(err("expected Tr(...)"));
        }
    }
    if traces.is_empty() {
        return Err(err("term without traces"));
    }
    Ok(TraceTerm { coeff, traces })
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim().replace(' ', "");
    let s = s.strip_prefix('+').unwrap_or(&s);
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(a.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            let c = if t.coeff.is_integer() {
                t.coeff.numer().to_string()
            } else {
                format!("{}/{}", t.coeff.numer(), t.coeff.denom())
            };
            write!(f, "{c}")?;
            for tr in &t.traces {
                let letters: Vec<String> = tr.iter().map(|&l| label_string(l)).collect();
                write!(f, " * Tr({})", letters.join(" "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `QΨ_μ = (-1)^{|S|} ∂^μ(ΨΨ)|₀` as `(coeff, μ1, μ2)`; terms with an underived `Ψ` drop.
pub fn q_letter(l: Label) -> Vec<(i64, Label, Label)> {
    let mut cur: Vec<(i64, Label, Label)> = vec![(1, AMonomial::UNIT, AMonomial::UNIT)];
    let binom = |n: u32, k: u32| -> i64 { (0..k).fold(1i64, |a, i| a * (n - i) as i64 / (i + 1) as i64) };
    let mut split_z = Vec::new();
    for a in 0..=l.zp {
        for b in 0..=l.zm {
            let c = binom(l.zp, a) * binom(l.zm, b);
            split_z.push((c, AMonomial::new(a, b, 0), AMonomial::new(l.zp - a, l.zm - b, 0)));
        }
    }
    cur = cur.into_iter().flat_map(|_| split_z.clone()).collect();
    // θ-derivatives, innermost (largest index) first.
    for i in (0..3).rev() {
        if l.theta & (1 << i) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (c, a, b) in cur {
            if let Some((s, na)) = derive_theta(a, i) {
                next.push((c * s, na, b));
            }
            if let Some((s, nb)) = derive_theta(b, i) {
                let k = if letter_parity(a) == 1 { -1 } else { 1 };
                next.push((c * s * k, a, nb));
            }
        }
        cur = next;
    }
    let sign = if l.theta_count() % 2 == 1 { -1 } else { 1 };
    let mut acc: HashMap<(Label, Label), i64> = HashMap::new();
    for (c, a, b) in cur {
        if a.is_unit() || b.is_unit() {
            continue;
        }
        *acc.entry((a, b)).or_insert(0) += sign * c;
    }
    let mut out: Vec<_> = acc.into_iter().filter(|e| e.1 != 0).map(|((a, b), c)| (c, a, b)).collect();
    out.sort_by_key(|x| (x.1, x.2));
    out
}

/// The supercharge on trace words, acting letter by letter as an odd derivation.
pub fn q_superfield(w: &TraceWord) -> TraceWord {
    let mut out = Vec::new();
    for t in &w.terms {
        let mut prefix = 0u8;
        for (ti, tr) in t.traces.iter().enumerate() {
            for (li, &l) in tr.iter().enumerate() {
                let koszul = if prefix == 1 { -1 } else { 1 };
                for (c, a, b) in q_letter(l) {
                    let mut traces = t.traces.clone();
                    traces[ti].splice(li..li + 1, [a, b]);
                    let coeff = &t.coeff * BigRational::from_integer(BigInt::from(c * koszul));
                    out.push(TraceTerm { coeff, traces });
                }
                prefix ^= letter_parity(l);
            }
        }
    }
    TraceWord { terms: out }.canonical()
}

/// Nonzero entries of the defining representation, by row: `rows[i] = [(a, j, (T_a)_{ij})]`.
pub fn representation_rows(g: &LieAlgebraData) -> Vec<Vec<(usize, usize, i64)>> {
    let n = g.rep_dim();
    let mut rows = vec![Vec::new(); n];
    for (a, m) in g.basis.iter().enumerate() {
        for (i, j, v) in m.entries() {
            rows[i].push((a, j, v));
        }
    }
    rows
}

type IntCochain = HashMap<SuperMonomial, i128>;

fn expand_trace(table: &GeneratorTable, rows: &[Vec<(usize, usize, i64)>], letters: &[Label]) -> Result<IntCochain> {
    let mut ids = Vec::with_capacity(letters.len());
    for &l in letters {
        let base = table
            .try_id(0, l)
            .ok_or_else(|| RelcohError::InvalidInput(format!("letter {} outside the table bound", label_string(l))))?;
        ids.push(base);
    }
    let mut out: IntCochain = HashMap::new();
    let mut seq: SmallVec<[u32; 12]> = SmallVec::new();
    fn walk(
        table: &GeneratorTable,
        rows: &[Vec<(usize, usize, i64)>],
        ids: &[u32],
        start: usize,
        at: usize,
        val: i128,
        seq: &mut SmallVec<[u32; 12]>,
        out: &mut IntCochain,
    ) {
        let k = seq.len();
        if k == ids.len() {
            if at == start {
                if let Some((s, w)) = table.normal_order(seq) {
                    *out.entry(w).or_insert(0) += s as i128 * val;
                }
            }
            return;
        }
        for &(a, j, v) in &rows[at] {
            seq.push(ids[k] + a as u32);
            walk(table, rows, ids, start, j, val * v as i128, seq, out);
            seq.pop();
        }
    }
    for i0 in 0..rows.len() {
        walk(table, rows, &ids, i0, i0, 1, &mut seq, &mut out);
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

fn mul_int(table: &GeneratorTable, a: &IntCochain, b: &IntCochain) -> IntCochain {
    let mut out: IntCochain = HashMap::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            let mut seq = w1.0.clone();
            seq.extend_from_slice(&w2.0);
            if let Some((s, w)) = table.normal_order(&seq) {
                *out.entry(w).or_insert(0) += s as i128 * c1 * c2;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Component expansion of a trace word into a cochain over `table`.
pub fn expand(w: &TraceWord, g: &LieAlgebraData, table: &GeneratorTable) -> Result<Cochain> {
    let rows = representation_rows(g);
    let mut out = Cochain::zero();
    for t in &w.terms {
        let mut acc: IntCochain = HashMap::new();
        acc.insert(SuperMonomial::one(), 1);
        let mut norm = BigInt::one();
        for tr in &t.traces {
            let e = expand_trace(table, &rows, tr)?;
            acc = mul_int(table, &acc, &e);
            for &l in tr {
                norm *= letter_normalization(l);
            }
        }
        let scale = &t.coeff * BigRational::from_integer(norm);
        for (mono, v) in acc {
            out.add_term(mono, &scale * BigRational::from_integer(BigInt::from(v)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::differential;
    use crate::liealg::build_algebra;

    fn lab(s: &str) -> Label {
        parse_label(s).unwrap().1
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(parse_label("t3t1").unwrap(), (-1, AMonomial::new(0, 0, 0b101)));
        assert_eq!(parse_label("t1t3").unwrap(), (1, AMonomial::new(0, 0, 0b101)));
        assert_eq!(parse_label("t2t2").unwrap().0, 0);
        assert_eq!(label_string(lab("zpzmt2")), "zpzmt2");
        assert_eq!(letter_normalization(lab("zpzpt1t2")), BigInt::from(-2));
        assert!(parse_label("q1").is_err());
    }

    #[test]
    fn cyclic_antisymmetry() {
        let w = TraceWord::parse("Tr(zp zp)").unwrap();
        assert!(w.is_zero());
        let w = TraceWord::parse("Tr(t1 t1)\n-1 * Tr(t1 t1)").unwrap();
        assert!(w.is_zero());
        let a = TraceWord::parse("Tr(zp zm)").unwrap();
        let b = TraceWord::parse("-1 * Tr(zm zp)").unwrap();
        assert_eq!(a, b);
        // Odd traces anticommute.
        let c = TraceWord::parse("Tr(zp t1) * Tr(zm t2)").unwrap();
        let d = TraceWord::parse("-1 * Tr(zm t2) * Tr(zp t1)").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn print_parse_round_trip() {
        let w = TraceWord::parse("3/2 * Tr(t2t3 t1) * Tr(t1t2 t1)\n-4 * Tr(t1 t1) * Tr(zp zm)").unwrap();
        let again = TraceWord::parse(&w.to_string()).unwrap();
        assert_eq!(w, again);
    }

    #[test]
    fn q_on_first_derivatives() {
        // QΨ_i = -∂_i(ΨΨ)|₀ has no surviving terms; QΨ_{ij} does.
        assert!(q_letter(lab("t1")).is_empty());
        assert!(q_letter(lab("zp")).is_empty());
        assert_eq!(q_letter(lab("zpzp")), vec![(2, lab("zp"), lab("zp"))]);
        assert_eq!(q_letter(lab("t1t2")).len(), 2);
    }

    fn check_q_vs_d(alg: &str, text: &str) {
        let g = build_algebra(alg.parse().unwrap()).unwrap();
        let w = TraceWord::parse(text).unwrap();
        let qw = q_superfield(&w);
        let (_, n) = w.sector().unwrap();
        let table = GeneratorTable::new(&g, n);
        let lhs = expand(&qw, &g, &table).unwrap();
        let rhs = differential(&table, &expand(&w, &g, &table).unwrap());
        assert_eq!(lhs, rhs.scale(&-BigRational::one()), "{alg}: {text}");
    }

    #[test]
    fn q_matches_minus_d() {
        check_q_vs_d("sl2", "Tr(t1t2 t3)");
        check_q_vs_d("sl2", "Tr(t1t2t3 t1)");
        check_q_vs_d("sl2", "Tr(zpt1 zm t2t3)");
        check_q_vs_d("sl3", "Tr(t1t2 t1t3 t2)");
        check_q_vs_d("so5", "Tr(zpzp zm t1t2)");
        check_q_vs_d("sp4", "Tr(t1t2t3 t1t2)");
    }

    #[test]
    fn expansion_is_invariant() {
        let g = build_algebra("sl3".parse().unwrap()).unwrap();
        let w = TraceWord::parse("Tr(t1 t2 t3) * Tr(t1t2 t3)").unwrap();
        let (_, n) = w.sector().unwrap();
        let table = GeneratorTable::new(&g, n);
        let c = expand(&w, &g, &table).unwrap();
        assert!(!c.is_zero());
        for x in 0..g.dim() {
            assert!(crate::cochain::g_action(&table, x, &c).is_zero());
        }
    }
}
