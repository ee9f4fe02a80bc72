//! Single- and multi-graviton cocycles, the built-in representatives, and class verification
//! (closedness, exactness, fortuity, Cartan restriction).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cochain::{differential, Cochain, GeneratorTable, WordIndex};
use crate::error::{RelcohError, Result};
use crate::eval::{self, by_content, q_images, rank_of_words, span_words, EvalConfig};
use crate::exactla::{in_span_certified, ArithConfig, SparseMatrix};
use crate::liealg::LieAlgebraData;
use crate::sector::{relative_invariants, weight_zero_words};
use crate::superpoly::restrict_trace_word;
use crate::superspace::{AMonomial, MultiDegree};
use crate::trace::{expand, letter_parity, Label, TraceTerm, TraceWord};

/// Indices of a single-graviton cocycle: external derivatives `p±`, `e_i` and the entries
/// `Ψ+^{k+} Ψ-^{k-} Ψ1^{m1} Ψ2^{m2} Ψ3^{m3}` of the symmetrized trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GravitonSpec {
    pub p_plus: u32,
    pub p_minus: u32,
    pub m: [u32; 3],
    pub e: [u8; 3],
    pub k_plus: u8,
    pub k_minus: u8,
}

impl GravitonSpec {
    pub fn validate(&self) -> Result<()> {
        if self.e.iter().any(|&x| x > 1) || self.k_plus > 1 || self.k_minus > 1 {
            return Err(RelcohError::InvalidInput("graviton indices e_i, k± must be 0 or 1".into()));
        }
        Ok(())
    }

    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree([
            self.p_plus + self.k_plus as u32,
            self.p_minus + self.k_minus as u32,
            self.e[0] as u32 + self.m[0],
            self.e[1] as u32 + self.m[1],
            self.e[2] as u32 + self.m[2],
        ])
    }

    /// Number of `Ψ` factors, i.e. the cohomological degree.
    pub fn word_length(&self) -> usize {
        (self.k_plus as u32 + self.k_minus as u32 + self.m.iter().sum::<u32>()) as usize
    }

    pub fn level(&self) -> u32 {
        self.multidegree().level()
    }

    /// All specs of a given multidegree (at most 32).
    pub fn of_multidegree(n: MultiDegree) -> Vec<GravitonSpec> {
        let mut out = Vec::new();
        for kp in 0..=n.0[0].min(1) as u8 {
            for km in 0..=n.0[1].min(1) as u8 {
                for mask in 0u8..8 {
                    let e = [mask & 1, mask >> 1 & 1, mask >> 2 & 1];
                    if (0..3).any(|i| e[i] as u32 > n.0[2 + i]) {
                        continue;
                    }
                    let s = GravitonSpec {
                        p_plus: n.0[0] - kp as u32,
                        p_minus: n.0[1] - km as u32,
                        m: [n.0[2] - e[0] as u32, n.0[3] - e[1] as u32, n.0[4] - e[2] as u32],
                        e,
                        k_plus: kp,
                        k_minus: km,
                    };
                    if s.word_length() > 0 {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

/// Symmetrized supertrace `SymTr(X1, ..., Xn)` of letters, normalized by `1/n!`.
pub fn symtr(letters: &[Label]) -> TraceWord {
    let n = letters.len();
    if n == 0 {
        return TraceWord::zero();
    }
    let mut mult: BTreeMap<Label, usize> = BTreeMap::new();
    for &l in letters {
        *mult.entry(l).or_insert(0) += 1;
    }
    if mult.iter().any(|(&l, &c)| c > 1 && letter_parity(l) == 1) {
        return TraceWord::zero();
    }
    let fact = |k: usize| (1..=k).fold(BigInt::one(), |a, x| a * BigInt::from(x));
    let weight = mult.values().fold(BigInt::one(), |a, &c| a * fact(c));
    let coeff = BigRational::new(weight, fact(n));
    // Distinct arrangements; each stands for `Π mult!` permutations with one Koszul sign.
    let mut terms = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| letters[i]);
    loop {
        let arrangement: Vec<Label> = idx.iter().map(|&i| letters[i]).collect();
        // Koszul sign: inversions among odd letters, matched to their original positions.
        let mut used = vec![false; n];
        let origin: Vec<usize> = arrangement
            .iter()
            .map(|l| {
                let k = (0..n).find(|&k| !used[k] && letters[k] == *l).unwrap();
                used[k] = true;
                k
            })
            .collect();
        let odd: Vec<usize> = origin.iter().copied().filter(|&k| letter_parity(letters[k]) == 1).collect();
        let inversions = (0..odd.len()).flat_map(|a| (a + 1..odd.len()).map(move |b| (a, b))).filter(|&(a, b)| odd[a] > odd[b]).count();
        let c = if inversions % 2 == 1 { -coeff.clone() } else { coeff.clone() };
        terms.push(TraceTerm { coeff: c, traces: vec![arrangement] });
        // Next distinct permutation of `idx` by letter order.
        let key = |i: usize| letters[i];
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| key(idx[i]) < key(idx[i + 1])) else { break };
        let j = (i + 1..n).rev().find(|&j| key(idx[j]) > key(idx[i])).unwrap();
        idx.swap(i, j);
        idx[i + 1..].sort_by_key(|&k| key(k));
    }
    TraceWord { terms }.canonical()
}

/// The single-graviton trace word.
pub fn graviton_word(s: &GravitonSpec) -> TraceWord {
    let mut letters = Vec::new();
    if s.k_plus == 1 {
        letters.push(AMonomial::new(1, 0, 0));
    }
    if s.k_minus == 1 {
        letters.push(AMonomial::new(0, 1, 0));
    }
    for i in 0..3 {
        for _ in 0..s.m[i] {
            letters.push(AMonomial::theta(i));
        }
    }
    let mut w = symtr(&letters);
    for i in (0..3).rev() {
        if s.e[i] == 1 {
            w = w.derive(2 + i);
        }
    }
    for _ in 0..s.p_minus {
        w = w.derive(1);
    }
    for _ in 0..s.p_plus {
        w = w.derive(0);
    }
    w
}

/// Expanded single-graviton cochain.
pub fn graviton(s: &GravitonSpec, g: &LieAlgebraData) -> Result<Cochain> {
    s.validate()?;
    let w = graviton_word(s);
    let table = GeneratorTable::new(g, s.multidegree());
    expand(&w, g, &table)
}

/// Products of single gravitons (multisets of specs) of word length `p` and multidegree `n`.
pub fn multi_graviton_specs(p: usize, n: MultiDegree) -> Vec<Vec<GravitonSpec>> {
    let mut singles: Vec<GravitonSpec> = Vec::new();
    for d in sub_degrees(n) {
        singles.extend(GravitonSpec::of_multidegree(d));
    }
    singles.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(singles: &[GravitonSpec], start: usize, p: usize, n: MultiDegree, cur: &mut Vec<GravitonSpec>, out: &mut Vec<Vec<GravitonSpec>>) {
        if p == 0 && n == MultiDegree::ZERO {
            out.push(cur.clone());
            return;
        }
        for i in start..singles.len() {
            let s = singles[i];
            let Some(rest) = n.checked_sub(&s.multidegree()) else { continue };
            if s.word_length() > p {
                continue;
            }
            cur.push(s);
            go(singles, i, p - s.word_length(), rest, cur, out);
            cur.pop();
        }
    }
    go(&singles, 0, p, n, &mut cur, &mut out);
    out
}

fn sub_degrees(n: MultiDegree) -> Vec<MultiDegree> {
    let mut out = vec![MultiDegree::ZERO];
    for k in 0..5 {
        out = out
            .into_iter()
            .flat_map(|d| {
                (0..=n.0[k]).map(move |x| {
                    let mut e = d;
                    e.0[k] = x;
                    e
                })
            })
            .collect();
    }
    out.retain(|d| *d != MultiDegree::ZERO);
    out
}

/// Multi-graviton trace words of sector `(p, n)` (identically vanishing products dropped).
pub fn multi_graviton_words(p: usize, n: MultiDegree) -> Vec<(Vec<GravitonSpec>, TraceWord)> {
    let mut cache: BTreeMap<GravitonSpec, TraceWord> = BTreeMap::new();
    multi_graviton_specs(p, n)
        .into_iter()
        .filter_map(|specs| {
            let mut w = TraceWord::single(BigRational::one(), Vec::new());
            for s in &specs {
                let gw = cache.entry(*s).or_insert_with(|| graviton_word(s)).clone();
                w = w.mul(&gw);
            }
            (!w.is_zero()).then_some((specs, w))
        })
        .collect()
}

/// Graviton span and fortuitous dimension of one sector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FortuityReport {
    pub g: String,
    pub p: usize,
    pub n: MultiDegree,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    pub graviton_products: usize,
    pub graviton_span: usize,
    pub fortuitous_dim: usize,
    pub method: String,
    pub primes: Vec<u64>,
}

/// Route through monomial coordinates; exact cochains, modular ranks.
fn fortuity_monomial(g: &LieAlgebraData, p: usize, n: MultiDegree, cfg: &ArithConfig) -> Result<FortuityReport> {
    let dims = crate::sector::sector_dims(g, p, n, cfg)?;
    let words = multi_graviton_words(p, n);
    let table = GeneratorTable::new(g, n);
    let (d_cols, index) = exact_columns(&table, p, n, cfg)?;
    let mut cols = d_cols.clone();
    for (_, w) in &words {
        cols.push(coords(&index, &expand(w, g, &table)?)?);
    }
    let r_d = crate::exactla::rank_checked(&SparseMatrix::from_rows(index.len(), d_cols), cfg)?;
    let r_all = crate::exactla::rank_checked(&SparseMatrix::from_rows(index.len(), cols), cfg)?;
    let span = r_all.rank - r_d.rank;
    Ok(FortuityReport {
        g: g.spec.to_string(),
        p,
        n,
        dim_h: dims.dim_h,
        graviton_products: words.len(),
        graviton_span: span,
        fortuitous_dim: dims.dim_h - span,
        method: "monomial".into(),
        primes: r_all.primes,
    })
}

fn trace_rows(words: &[TraceWord]) -> Vec<BTreeMap<Vec<Label>, TraceWord>> {
    words.iter().map(by_content).collect()
}

/// Route through trace evaluation.
fn fortuity_trace(g: &LieAlgebraData, p: usize, n: MultiDegree, cfg: &ArithConfig, ec: &EvalConfig) -> Result<FortuityReport> {
    eval::supports_traces(g)?;
    let words = multi_graviton_words(p, n);
    let gw: Vec<TraceWord> = words.iter().map(|x| x.1.clone()).collect();
    let ((dim_h, span), primes) = eval::agree(cfg, "graviton span", |q| {
        let inv_p = eval::invariant_span(g, p, n, q, cfg.seed, ec);
        let out_p = if p as u32 >= n.total() { 0 } else { eval::rank_d_out(g, &inv_p, q, cfg.seed, ec) };
        let mut rows = if p == 0 {
            Vec::new()
        } else {
            q_images(&span_words(&eval::invariant_span(g, p - 1, n, q, cfg.seed, ec)))
        };
        let r_d = rank_of_words(g, &rows, q, cfg.seed, ec);
        rows.extend(trace_rows(&gw));
        let r_all = rank_of_words(g, &rows, q, cfg.seed, ec);
        (inv_p.dim() - out_p - r_d, r_all - r_d)
    })?;
    Ok(FortuityReport {
        g: g.spec.to_string(),
        p,
        n,
        dim_h,
        graviton_products: words.len(),
        graviton_span: span,
        fortuitous_dim: dim_h - span,
        method: "trace".into(),
        primes,
    })
}

/// Which linear-algebra route to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Monomial coordinates of cochains (all algebras).
    Monomial,
    /// Trace words evaluated at random points (not for even orthogonal algebras).
    Trace,
}

impl Method {
    /// Trace evaluation where it applies.
    pub fn auto(g: &LieAlgebraData) -> Method {
        if eval::supports_traces(g).is_ok() {
            Method::Trace
        } else {
            Method::Monomial
        }
    }
}

pub fn fortuity(g: &LieAlgebraData, p: usize, n: MultiDegree, method: Method, cfg: &ArithConfig, ec: &EvalConfig) -> Result<FortuityReport> {
    if p as u32 > n.total() {
        return Ok(FortuityReport {
            g: g.spec.to_string(),
            p,
            n,
            dim_h: 0,
            graviton_products: 0,
            graviton_span: 0,
            fortuitous_dim: 0,
            method: "none".into(),
            primes: Vec::new(),
        });
    }
    match method {
        Method::Monomial => fortuity_monomial(g, p, n, cfg),
        Method::Trace => fortuity_trace(g, p, n, cfg, ec),
    }
}

/// `(p, dim_H, fortuitous_dim)` for every `p` of one multidegree; graviton spans are only
/// computed where the cohomology is nonzero.
pub fn fortuity_profile(g: &LieAlgebraData, n: MultiDegree, method: Method, cfg: &ArithConfig, ec: &EvalConfig) -> Result<Vec<(usize, usize, usize)>> {
    let dims = match method {
        Method::Trace => eval::multidegree_dims(g, n, cfg, ec)?,
        Method::Monomial => crate::sector::multidegree_dims(g, n, cfg)?,
    };
    dims.into_iter()
        .map(|d| {
            if d.dim_h == 0 {
                return Ok((d.p, 0, 0));
            }
            let f = fortuity(g, d.p, n, method, cfg, ec)?;
            if f.dim_h != d.dim_h {
                return Err(RelcohError::Disagreement(format!("dim H at p = {} differs between passes", d.p)));
            }
            Ok((d.p, f.dim_h, f.fortuitous_dim))
        })
        .collect()
}

pub fn graviton_span_in_h(g: &LieAlgebraData, p: usize, n: MultiDegree, method: Method, cfg: &ArithConfig, ec: &EvalConfig) -> Result<usize> {
    Ok(fortuity(g, p, n, method, cfg, ec)?.graviton_span)
}

pub fn fortuitous_dim(g: &LieAlgebraData, p: usize, n: MultiDegree, method: Method, cfg: &ArithConfig, ec: &EvalConfig) -> Result<usize> {
    Ok(fortuity(g, p, n, method, cfg, ec)?.fortuitous_dim)
}

/// Graviton span dimensions of two algebras (typically ranks `r` and `r + 2` of one series)
/// on every sector with `|n| <= max_total`: `(p, n, span_small, span_large)`.
pub fn rank_stabilization(
    small: &LieAlgebraData,
    large: &LieAlgebraData,
    max_total: u32,
    cfg: &ArithConfig,
    ec: &EvalConfig,
) -> Result<Vec<(usize, MultiDegree, usize, usize)>> {
    let mut out = Vec::new();
    for n in canonical_multidegrees_up_to(max_total) {
        for p in 1..=n.total() as usize {
            let a = graviton_span_in_h(small, p, n, Method::Trace, cfg, ec)?;
            let b = graviton_span_in_h(large, p, n, Method::Trace, cfg, ec)?;
            out.push((p, n, a, b));
        }
    }
    Ok(out)
}

/// Multidegrees with `|n| <= max_total` up to swapping `z±` and permuting the `θ_i`.
pub fn canonical_multidegrees_up_to(max_total: u32) -> Vec<MultiDegree> {
    let mut out: Vec<MultiDegree> = Vec::new();
    for total in 1..=max_total {
        for d in sub_degrees(MultiDegree([total; 5])) {
            if d.total() == total && d.canonical() == d {
                out.push(d);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `XiF` for `sl2`: the level-24 fortuitous cocycle (cyclic sum over `θ` indices).
pub fn xif_sl2() -> TraceWord {
    let base = ["1 * Tr(t2t3 t1) * Tr(t1t2 t1) * Tr(t1t3 t2t3 t2t3)", "1 * Tr(t1t3 t2) * Tr(t1t2 t1) * Tr(t1t3 t2t3 t2t3)"];
    let mut text = String::new();
    for shift in 0..3 {
        for line in base {
            let rotated: String = line
                .chars()
                .map(|c| match c {
                    '1' | '2' | '3' if shift > 0 => {
                        let d = c.to_digit(10).unwrap();
                        char::from_digit((d - 1 + shift) % 3 + 1, 10).unwrap()
                    }
                    _ => c,
                })
                .collect();
            // The leading coefficient is the digit `1` too; restore it.
            let fixed = format!("1{}", &rotated[1..]);
            text.push_str(&fixed);
            text.push('\n');
        }
    }
    TraceWord::parse(&text).expect("built-in word parses")
}

/// `XiF` for `so7` at multidegree `(0,0,3,3,3)`.
pub const XIF_SO7_TEXT: &str = "\
1 * Tr(t2 t2) * Tr(t1 t2t3) * Tr(t1 t3) * Tr(t1 t3)
-4 * Tr(t2 t2) * Tr(t1 t3) * Tr(t3 t1 t3 t1t2)
-1 * Tr(t1 t3) * Tr(t1 t3) * Tr(t3 t2 t1t2 t2)
-4 * Tr(t1 t3) * Tr(t1 t3) * Tr(t3 t2 t2 t1t2)
8 * Tr(t1 t3) * Tr(t3 t1 t2 t2 t3 t1t2)
4 * Tr(t1 t3) * Tr(t3 t1 t3 t2 t1t2 t2)
16 * Tr(t1 t3) * Tr(t3 t1 t3 t2 t2 t1t2)
-4 * Tr(t3 t1t2) * Tr(t3 t1) * Tr(t3 t1 t2 t2)
8 * Tr(t3 t1 t3 t1t2) * Tr(t1 t2 t3 t2)
-2 * Tr(t2 t2) * Tr(t3 t1t2) * Tr(t3 t1 t3 t1)
8 * Tr(t3 t1 t3 t1) * Tr(t2 t2 t3 t1t2)
2 * Tr(t3 t1 t3 t1) * Tr(t2 t3 t2 t1t2)
16 * Tr(t2 t3 t1t2) * Tr(t3 t1 t3 t1 t2)
8 * Tr(t3 t1t2) * Tr(t3 t1 t3 t1 t2 t2)
8 * Tr(t2 t2) * Tr(t3 t1 t3 t1 t3 t1t2)
16 * Tr(t3 t1 t3 t1 t2 t3 t2 t1t2)
-8 * Tr(t3 t1 t3 t1 t3 t2 t1t2 t2)
-32 * Tr(t3 t1 t3 t1 t3 t2 t2 t1t2)
-16 * Tr(t3 t1 t3 t2 t1 t2 t3 t1t2)
-16 * Tr(t3 t1 t3 t2 t1 t3 t2 t1t2)
-16 * Tr(t3 t1 t3 t2 t2 t1 t3 t1t2)
";

pub fn xif_so7() -> TraceWord {
    TraceWord::parse(XIF_SO7_TEXT).expect("built-in word parses")
}

/// `XiNC` for `so7` at multidegree `(1,1,2,2,2)`: the `ε_{ijk} ε_{lmn}` contraction with
/// `Ψ_α Ψ^α = Ψ+ Ψ- - Ψ- Ψ+` and `Ψ_(i Ψ_l)` the average of both orders.
pub fn xinc_so7() -> TraceWord {
    let zp = AMonomial::new(1, 0, 0);
    let zm = AMonomial::new(0, 1, 0);
    let t = |i: usize| AMonomial::theta(i);
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    // (coefficient, first letter, second letter) of Ψ_α ⊗ Ψ^α.
    let pairs = [(1i64, zp, zm), (-1i64, zm, zp)];
    let mut terms = Vec::new();
    for (a, sa) in &perms {
        for (b, sb) in &perms {
            let (i, j, k) = (a[0], a[1], a[2]);
            let (l, m, n) = (b[0], b[1], b[2]);
            let eps = rat(sa * sb);
            let tail = [vec![t(j), t(m)], vec![t(k), t(n)]];
            let push = |terms: &mut Vec<TraceTerm>, c: BigRational, mut head: Vec<Vec<Label>>| {
                head.extend(tail.iter().cloned());
                terms.push(TraceTerm { coeff: c, traces: head });
            };
            for &(s, x, y) in &pairs {
                let s = rat(s);
                push(&mut terms, &eps * &s, vec![vec![t(i), t(l)], vec![x, y]]);
                push(&mut terms, -&eps * &s, vec![vec![t(i), x], vec![t(l), y]]);
                push(&mut terms, -&eps * &s * rat(4) * &half, vec![vec![x, y, t(i), t(l)]]);
                push(&mut terms, -&eps * &s * rat(4) * &half, vec![vec![x, y, t(l), t(i)]]);
            }
        }
    }
    TraceWord { terms }.canonical()
}

pub const BUILTIN_NAMES: [&str; 3] = ["XiF_sl2", "XiF_so7", "XiNC_so7"];

pub fn builtin_representative(name: &str) -> Result<TraceWord> {
    match name {
        "XiF_sl2" => Ok(xif_sl2()),
        "XiF_so7" => Ok(xif_so7()),
        "XiNC_so7" => Ok(xinc_so7()),
        _ => Err(RelcohError::InvalidInput(format!("unknown built-in representative `{name}`"))),
    }
}

/// Verdicts on one cochain class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub g: String,
    pub p: usize,
    pub n: MultiDegree,
    pub closed: bool,
    pub exact: bool,
    pub fortuitous: bool,
    /// Only defined in top degree `p = |n|`.
    pub cartan_restriction_zero: Option<bool>,
    pub method: String,
    /// Every verdict carries an exact rational certificate.
    pub certified: bool,
    pub primes: Vec<u64>,
}

fn coords(index: &WordIndex, c: &Cochain) -> Result<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(c.len());
    for (w, v) in c.primitive_integer_terms() {
        let i = index.get(&w).ok_or_else(|| RelcohError::InvalidInput("cochain has terms of nonzero weight".into()))?;
        let v = v.to_i64().ok_or_else(|| RelcohError::Internal("coefficient exceeds i64".into()))?;
        out.push((i, v));
    }
    out.sort_unstable();
    Ok(out)
}

/// `d` of an invariant basis of degree `p - 1`, as columns over the weight-0 words of degree `p`.
fn exact_columns(table: &GeneratorTable, p: usize, n: MultiDegree, cfg: &ArithConfig) -> Result<(Vec<Vec<(u32, i64)>>, WordIndex)> {
    let index = WordIndex::new(weight_zero_words(table, p, n));
    let mut cols = Vec::new();
    if p > 0 {
        for c in relative_invariants(table, p - 1, n, cfg)? {
            let dc = differential(table, &c);
            if !dc.is_zero() {
                cols.push(coords(&index, &dc)?);
            }
        }
    }
    Ok((cols, index))
}

fn columns_matrix(rows: usize, cols: &[Vec<(u32, i64)>]) -> SparseMatrix {
    if cols.is_empty() {
        return SparseMatrix::zero(rows, 0);
    }
    SparseMatrix::from_rows(rows, cols.to_vec()).transpose()
}

fn vector(index: &WordIndex, c: &Cochain) -> Result<Vec<i64>> {
    let mut v = vec![0i64; index.len()];
    for (i, x) in coords(index, c)? {
        v[i as usize] = x;
    }
    Ok(v)
}

/// Span membership of `v` in the column span, with an exact certificate either way.
fn certified_member(m: &SparseMatrix, v: &[i64], cfg: &ArithConfig) -> Result<bool> {
    if v.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    if m.cols == 0 {
        return Ok(false);
    }
    Ok(in_span_certified(m, v, cfg, 4096)?.0)
}

/// Certified verification of a cochain of sector `(p, n)` by the monomial route.
pub fn verify_cochain(c: &Cochain, g: &LieAlgebraData, p: usize, n: MultiDegree, graviton_words: &[TraceWord], cfg: &ArithConfig) -> Result<ClassReport> {
    let table = GeneratorTable::new(g, n);
    let closed = differential(&table, c).is_zero();
    let (d_cols, index) = exact_columns(&table, p, n, cfg)?;
    let v = vector(&index, c)?;
    let rows = index.len();
    let exact = certified_member(&columns_matrix(rows, &d_cols), &v, cfg)?;
    let mut all = d_cols;
    for w in graviton_words {
        let gc = expand(w, g, &table)?;
        if !gc.is_zero() {
            all.push(coords(&index, &gc)?);
        }
    }
    let fortuitous = !certified_member(&columns_matrix(rows, &all), &v, cfg)?;
    Ok(ClassReport {
        g: g.spec.to_string(),
        p,
        n,
        closed,
        exact,
        fortuitous,
        cartan_restriction_zero: None,
        method: "monomial".into(),
        certified: true,
        primes: cfg.primes(0),
    })
}

/// Verification of a homogeneous trace word.
pub fn verify_class(w: &TraceWord, g: &LieAlgebraData, method: Method, cfg: &ArithConfig, ec: &EvalConfig) -> Result<ClassReport> {
    let (p, n) = w.sector().ok_or_else(|| RelcohError::InvalidInput("trace word is not homogeneous".into()))?;
    let top = p as u32 == n.total();
    let cartan = if top { Some(restrict_trace_word(w, g)?.is_zero()) } else { None };
    let gravitons: Vec<TraceWord> = multi_graviton_words(p, n).into_iter().map(|x| x.1).collect();
    let mut report = match method {
        Method::Monomial => {
            let table = GeneratorTable::new(g, n);
            let c = expand(w, g, &table)?;
            verify_cochain(&c, g, p, n, &gravitons, cfg)?
        }
        Method::Trace => {
            eval::supports_traces(g)?;
            let target = by_content(w);
            let ((closed, exact, fortuitous), primes) = eval::agree(cfg, "class verdicts", |q| {
                let closed = top || rank_of_words(g, &q_images(core::slice::from_ref(w)), q, cfg.seed, ec) == 0;
                let mut rows = if p == 0 {
                    Vec::new()
                } else {
                    q_images(&span_words(&eval::invariant_span(g, p - 1, n, q, cfg.seed, ec)))
                };
                let r_d = rank_of_words(g, &rows, q, cfg.seed, ec);
                rows.push(target.clone());
                let exact = rank_of_words(g, &rows, q, cfg.seed, ec) == r_d;
                rows.pop();
                rows.extend(trace_rows(&gravitons));
                let r_g = rank_of_words(g, &rows, q, cfg.seed, ec);
                rows.push(target.clone());
                let fortuitous = rank_of_words(g, &rows, q, cfg.seed, ec) > r_g;
                (closed, exact, fortuitous)
            })?;
            ClassReport {
                g: g.spec.to_string(),
                p,
                n,
                closed,
                exact,
                fortuitous,
                cartan_restriction_zero: None,
                method: "trace".into(),
                certified: false,
                primes,
            }
        }
    };
    report.cartan_restriction_zero = cartan;
    Ok(report)
}

/// Dimension of the closed combinations of the products occurring in `w` (the support), by
/// trace evaluation; `support_size - closed_dim` constraints are violated otherwise.
pub fn closed_support_dim(w: &TraceWord, g: &LieAlgebraData, cfg: &ArithConfig, ec: &EvalConfig) -> Result<(usize, usize)> {
    let words: Vec<TraceWord> = w.terms.iter().map(|t| TraceWord { terms: vec![TraceTerm { coeff: BigRational::one(), traces: t.traces.clone() }] }).collect();
    let imgs = q_images(&words);
    let (r, _) = eval::agree(cfg, "closed support", |q| rank_of_words(g, &imgs, q, cfg.seed, ec))?;
    Ok((words.len(), words.len() - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;

    fn alg(s: &str) -> LieAlgebraData {
        build_algebra(s.parse().unwrap()).unwrap()
    }

    fn md(s: &str) -> MultiDegree {
        MultiDegree::parse(s).unwrap()
    }

    #[test]
    fn builtin_sectors() {
        assert_eq!(xif_sl2().sector(), Some((7, md("0,0,4,4,4"))));
        assert_eq!(xif_so7().sector(), Some((8, md("0,0,3,3,3"))));
        assert_eq!(xinc_so7().sector(), Some((8, md("1,1,2,2,2"))));
        assert_eq!(xif_so7().terms.len(), 21);
        for name in BUILTIN_NAMES {
            let w = builtin_representative(name).unwrap();
            assert_eq!(TraceWord::parse(&w.to_string()).unwrap(), w, "{name}");
        }
    }

    #[test]
    fn symtr_is_supersymmetric() {
        let zp = AMonomial::new(1, 0, 0);
        let zm = AMonomial::new(0, 1, 0);
        let t1 = AMonomial::theta(0);
        let a = symtr(&[zp, zm, t1]);
        let mut b = symtr(&[zm, zp, t1]);
        b.add(&a);
        assert!(b.is_zero());
        assert_eq!(symtr(&[t1, zp, t1]), symtr(&[zp, t1, t1]));
        assert!(symtr(&[zp, zp]).is_zero());
    }

    #[test]
    fn gravitons_are_closed() {
        for s in ["sl2", "so5"] {
            let g = alg(s);
            for n in canonical_multidegrees_up_to(4) {
                for spec in GravitonSpec::of_multidegree(n) {
                    let table = GeneratorTable::new(&g, n);
                    let c = graviton(&spec, &g).unwrap();
                    assert!(differential(&table, &c).is_zero(), "{s} {spec:?}");
                }
            }
        }
    }

    #[test]
    fn killing_graviton_spans() {
        let g = alg("sl2");
        let cfg = ArithConfig::default();
        let ec = EvalConfig::default();
        for m in [Method::Monomial, Method::Trace] {
            assert_eq!(graviton_span_in_h(&g, 2, md("0,0,1,1,0"), m, &cfg, &ec).unwrap(), 1);
            assert_eq!(graviton_span_in_h(&g, 1, md("0,0,1,0,0"), m, &cfg, &ec).unwrap(), 0);
        }
    }

    #[test]
    fn routes_agree_on_small_sectors() {
        let cfg = ArithConfig::default();
        let ec = EvalConfig::default();
        for s in ["sl2", "so5"] {
            let g = alg(s);
            for n in canonical_multidegrees_up_to(4) {
                for p in 1..=n.total() as usize {
                    let a = fortuity(&g, p, n, Method::Monomial, &cfg, &ec).unwrap();
                    let b = fortuity(&g, p, n, Method::Trace, &cfg, &ec).unwrap();
                    assert_eq!((a.dim_h, a.graviton_span), (b.dim_h, b.graviton_span), "{s} {p} {n}");
                    assert_eq!(a.fortuitous_dim, 0, "{s} {p} {n}");
                }
            }
        }
    }

    #[test]
    fn coboundaries_are_exact() {
        let g = alg("sl2");
        let cfg = ArithConfig::default();
        let n = md("0,0,2,1,1");
        let table = GeneratorTable::new(&g, n);
        for c in relative_invariants(&table, 2, n, &cfg).unwrap() {
            let dc = differential(&table, &c);
            let r = verify_cochain(&dc, &g, 3, n, &[], &cfg).unwrap();
            assert!(r.closed && r.exact && !r.fortuitous);
        }
    }
}
