//! Sector cohomology through trace words evaluated at random points modulo a prime.
//!
//! Invariant cochains of the classical series are spanned by products of traces of words in the
//! letters `Ψ_μ` (first fundamental theorem; for the even orthogonal series Pfaffians break this,
//! so it is rejected). A content block is a multiset of letter labels; cochains of different
//! content live in different coordinates, so ranks are computed block by block.
//!
//! A point of a block assigns a random algebra element `M_μ` to every even label and, to an odd
//! label of multiplicity `k`, `k` elements `M_{μ,1..k}` paired with Grassmann generators
//! `ε_{μ,c}`. The value of a word is the coefficient of `Π ε` in the substituted word, i.e. a sum
//! over colorings of the odd occurrences with the sign of sorting the `ε`'s. These functionals
//! separate the block's polynomial space with probability at least `1 - deg/p` each.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use num_rational::BigRational;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use smallvec::SmallVec;

use crate::error::{RelcohError, Result};
use crate::exactla::{ArithConfig, DenseEchelon};
use crate::field::PrimeField;
use crate::liealg::{LieAlgebraData, Series};
use crate::sector::{count_words, SectorDims};
use crate::superspace::{enumerate_monomials, MultiDegree};
use crate::trace::{canonical_trace_with, letter_parity, q_superfield, Label, TraceTerm, TraceWord};

/// A product of traces with coefficient one.
pub type Product = Vec<Vec<Label>>;

/// Tuning for the random-evaluation route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Consecutive points that fail to raise the rank before a block counts as saturated.
    pub patience: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { patience: 3 }
    }
}

/// Whether trace words span the invariants of this algebra.
pub fn supports_traces(g: &LieAlgebraData) -> Result<()> {
    if g.spec.series == Series::SO && g.spec.size % 2 == 0 {
        return Err(RelcohError::Unsupported(alloc::format!(
            "trace words do not span the invariants of {} (Pfaffians)",
            g.spec
        )));
    }
    Ok(())
}

/// Whether reversal `Tr(X1..Xk) ~ Tr(Xk..X1)` holds for this algebra.
pub fn reflects(g: &LieAlgebraData) -> bool {
    matches!(g.spec.series, Series::SO | Series::SP)
}

/// Label multisets of size `p` and total degree `n`, sorted.
pub fn contents(p: usize, n: MultiDegree) -> Vec<Vec<Label>> {
    let labels = enumerate_monomials(n);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(labels: &[Label], start: usize, left: usize, rem: [u32; 5], cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if left == 0 {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if (rem.iter().sum::<u32>() as usize) < left {
            return;
        }
        for i in start..labels.len() {
            let d = labels[i].degree().0;
            if d.iter().zip(rem.iter()).any(|(a, b)| a > b) {
                continue;
            }
            let mut r = rem;
            for (x, y) in r.iter_mut().zip(d) {
                *x -= y;
            }
            cur.push(labels[i]);
            go(labels, i, left - 1, r, cur, out);
            cur.pop();
        }
    }
    go(&labels, 0, p, n.0, &mut cur, &mut out);
    out
}

fn distinct_permutations(items: &[Label], mut emit: impl FnMut(&[Label])) {
    let mut v = items.to_vec();
    v.sort();
    loop {
        emit(&v);
        // Next lexicographic permutation.
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else { return };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
}

/// Canonical trace products of a given content.
pub fn trace_products(content: &[Label], reflect: bool) -> Vec<Product> {
    let mut found: HashSet<Product> = HashSet::new();
    let mut stack: Vec<Vec<Label>> = Vec::new();
    fn go(rem: Vec<Label>, reflect: bool, stack: &mut Vec<Vec<Label>>, found: &mut HashSet<Product>) {
        if rem.is_empty() {
            let w = TraceWord { terms: vec![TraceTerm { coeff: BigRational::one(), traces: stack.clone() }] }
                .canonical_with(reflect);
            if let Some(t) = w.terms.first() {
                found.insert(t.traces.clone());
            }
            return;
        }
        let first = rem[0];
        let rest = &rem[1..];
        // Sub-multisets of `rest` to join `first` in one trace.
        let mut distinct: Vec<(Label, usize)> = Vec::new();
        for &l in rest {
            match distinct.last_mut() {
                Some((x, c)) if *x == l => *c += 1,
                _ => distinct.push((l, 1)),
            }
        }
        let mut choice = vec![0usize; distinct.len()];
        loop {
            let mut sub: Vec<Label> = Vec::new();
            let mut left: Vec<Label> = Vec::new();
            for (k, &(l, c)) in distinct.iter().enumerate() {
                sub.extend(core::iter::repeat_n(l, choice[k]));
                left.extend(core::iter::repeat_n(l, c - choice[k]));
            }
            let mut necklaces: BTreeSet<Vec<Label>> = BTreeSet::new();
            distinct_permutations(&sub, |perm| {
                let mut t = Vec::with_capacity(perm.len() + 1);
                t.push(first);
                t.extend_from_slice(perm);
                if let Some((_, c)) = canonical_trace_with(&t, reflect) {
                    necklaces.insert(c);
                }
            });
            for nk in necklaces {
                stack.push(nk);
                go(left.clone(), reflect, stack, found);
                stack.pop();
            }
            // Odometer over sub-multiset choices.
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return;
                }
                if choice[k] < distinct[k].1 {
                    choice[k] += 1;
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
    let mut sorted = content.to_vec();
    sorted.sort();
    go(sorted, reflect, &mut stack, &mut found);
    let mut out: Vec<Product> = found.into_iter().collect();
    out.sort();
    out
}

/// Static data of a content block: odd labels with multiplicities and all colorings.
#[derive(Clone, Debug)]
struct Shape {
    slots: Vec<(Label, u8)>,
    odd: Vec<(Label, usize)>,
    colorings: Vec<Vec<SmallVec<[u8; 4]>>>,
}

fn permutations(k: usize) -> Vec<SmallVec<[u8; 4]>> {
    let mut out = Vec::new();
    let mut v: SmallVec<[u8; 4]> = (0..k as u8).collect();
    loop {
        out.push(v.clone());
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else { break };
        let j = (i + 1..k).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
    out
}

impl Shape {
    fn new(content: &[Label]) -> Self {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for &l in content {
            *counts.entry(l).or_insert(0) += 1;
        }
        let mut slots = Vec::new();
        let mut odd = Vec::new();
        for (&l, &c) in &counts {
            if letter_parity(l) == 1 {
                odd.push((l, c));
                for k in 0..c {
                    slots.push((l, k as u8));
                }
            } else {
                slots.push((l, 0));
            }
        }
        let mut colorings: Vec<Vec<SmallVec<[u8; 4]>>> = vec![Vec::new()];
        for &(_, c) in &odd {
            let perms = permutations(c);
            colorings = colorings
                .into_iter()
                .flat_map(|base| {
                    perms.iter().map(move |p| {
                        let mut b = base.clone();
                        b.push(p.clone());
                        b
                    })
                })
                .collect();
        }
        Shape { slots, odd, colorings }
    }

    fn slot(&self, l: Label, color: u8) -> u16 {
        self.slots.binary_search(&(l, color)).expect("label outside block") as u16
    }
}

/// Random algebra elements for every slot of a block, with a cache of trace values.
struct Point<'a> {
    f: PrimeField,
    n: usize,
    mats: Vec<Vec<u64>>,
    shape: &'a Shape,
    cache: HashMap<SmallVec<[u16; 12]>, u64>,
}

impl<'a> Point<'a> {
    fn random(g: &LieAlgebraData, f: PrimeField, shape: &'a Shape, rng: &mut ChaCha8Rng) -> Self {
        let n = g.rep_dim();
        let mats = shape
            .slots
            .iter()
            .map(|_| {
                let mut m = vec![0u64; n * n];
                for t in &g.basis {
                    let r = f.random(rng);
                    for (i, j, v) in t.entries() {
                        let x = f.mul(r, f.from_i64(v));
                        m[i * n + j] = f.add(m[i * n + j], x);
                    }
                }
                m
            })
            .collect();
        Point { f, n, mats, shape, cache: HashMap::new() }
    }

    fn trace(&mut self, slots: &[u16]) -> u64 {
        if let Some(&v) = self.cache.get(slots) {
            return v;
        }
        let (f, n) = (self.f, self.n);
        let p = f.modulus();
        let mut acc = self.mats[slots[0] as usize].clone();
        let k = slots.len();
        for &s in slots.get(1..k.saturating_sub(1)).unwrap_or(&[]) {
            let b = &self.mats[s as usize];
            let mut out = vec![0u64; n * n];
            for i in 0..n {
                for l in 0..n {
                    let a = acc[i * n + l];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out[i * n + j] = (out[i * n + j] + a * b[l * n + j]) % p;
                    }
                }
            }
            acc = out;
        }
        let v = if k == 1 {
            (0..n).fold(0, |s, i| f.add(s, acc[i * n + i]))
        } else {
            let b = &self.mats[slots[k - 1] as usize];
            let mut s = 0u64;
            for i in 0..n {
                for l in 0..n {
                    s = (s + acc[i * n + l] * b[l * n + i]) % p;
                }
            }
            s
        };
        self.cache.insert(SmallVec::from_slice(slots), v);
        v
    }

    /// Value of one product of traces (polarized in the odd labels).
    fn product(&mut self, traces: &[Vec<Label>]) -> u64 {
        let f = self.f;
        let shape = self.shape;
        let odd_index = |l: Label| shape.odd.iter().position(|x| x.0 == l);
        let mut total = 0u64;
        for coloring in &shape.colorings {
            let mut seen = vec![0usize; shape.odd.len()];
            let mut keys: SmallVec<[(usize, u8); 8]> = SmallVec::new();
            let mut slotted: SmallVec<[SmallVec<[u16; 12]>; 4]> = SmallVec::new();
            for tr in traces {
                let mut s: SmallVec<[u16; 12]> = SmallVec::new();
                for &l in tr {
                    let color = match odd_index(l) {
                        Some(i) => {
                            let c = coloring[i][seen[i]];
                            seen[i] += 1;
                            keys.push((i, c));
                            c
                        }
                        None => 0,
                    };
                    s.push(shape.slot(l, color));
                }
                slotted.push(s);
            }
            let mut inversions = 0usize;
            for a in 0..keys.len() {
                for b in a + 1..keys.len() {
                    if keys[a] > keys[b] {
                        inversions += 1;
                    }
                }
            }
            let mut v = 1u64;
            for s in &slotted {
                v = f.mul(v, self.trace(s));
                if v == 0 {
                    break;
                }
            }
            total = if inversions % 2 == 1 { f.sub(total, v) } else { f.add(total, v) };
        }
        total
    }
}

fn rational_mod(f: &PrimeField, c: &BigRational) -> u64 {
    let n = f.from_bigint(c.numer());
    let d = f.from_bigint(c.denom());
    f.mul(n, f.inv(d))
}

fn block_seed(seed: u64, prime: u64, tag: &[u64]) -> ChaCha8Rng {
    let mut h = seed ^ prime.rotate_left(17);
    for &t in tag {
        h = (h ^ t).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(23);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn label_key(content: &[Label]) -> u64 {
    content.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, l| {
        let x = ((l.zp as u64) << 16) | ((l.zm as u64) << 8) | l.theta as u64;
        (h ^ x).wrapping_mul(0x100_0000_01b3)
    })
}

/// Invariants of one degree: per block, an independent set of trace products.
#[derive(Clone, Debug, Default)]
pub struct InvariantSpan {
    pub blocks: Vec<(Vec<Label>, Vec<Product>)>,
}

impl InvariantSpan {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.1.len()).sum()
    }
}

/// Evaluates `rows` (each a sparse combination of products) at random points of one block until
/// the rank saturates; returns the echelon.
fn saturate(
    g: &LieAlgebraData,
    f: PrimeField,
    shape: &Shape,
    rows: &[Vec<(u64, &[Vec<Label>])>],
    rng: &mut ChaCha8Rng,
    patience: usize,
) -> DenseEchelon {
    let mut ech = DenseEchelon::new(f.modulus(), rows.len());
    let mut fails = 0;
    while fails < patience && ech.rank() < rows.len() {
        let mut pt = Point::random(g, f, shape, rng);
        let col: Vec<u64> = rows
            .iter()
            .map(|terms| terms.iter().fold(0, |acc, &(c, t)| f.add(acc, f.mul(c, pt.product(t)))))
            .collect();
        if ech.insert(col) {
            fails = 0;
        } else {
            fails += 1;
        }
    }
    ech
}

/// Basis of the invariants of sector `(p, n)` modulo `prime`.
pub fn invariant_span(g: &LieAlgebraData, p: usize, n: MultiDegree, prime: u64, seed: u64, ec: &EvalConfig) -> InvariantSpan {
    let f = PrimeField::new(prime);
    let reflect = reflects(g);
    let mut blocks = Vec::new();
    for content in contents(p, n) {
        let words = trace_products(&content, reflect);
        if words.is_empty() {
            continue;
        }
        let shape = Shape::new(&content);
        let rows: Vec<Vec<(u64, &[Vec<Label>])>> = words.iter().map(|w| vec![(1u64, w.as_slice())]).collect();
        let mut rng = block_seed(seed, prime, &[p as u64, label_key(&content)]);
        let ech = saturate(g, f, &shape, &rows, &mut rng, ec.patience);
        let mut piv = ech.pivots();
        piv.sort_unstable();
        let basis: Vec<Product> = piv.into_iter().map(|i| words[i].clone()).collect();
        if !basis.is_empty() {
            blocks.push((content, basis));
        }
    }
    InvariantSpan { blocks }
}

fn sorted_content(t: &TraceTerm) -> Vec<Label> {
    let mut c: Vec<Label> = t.letters().copied().collect();
    c.sort();
    c
}

/// Terms of a word grouped by content block.
pub fn by_content(w: &TraceWord) -> BTreeMap<Vec<Label>, TraceWord> {
    let mut by: BTreeMap<Vec<Label>, TraceWord> = BTreeMap::new();
    for t in &w.terms {
        by.entry(sorted_content(t)).or_default().terms.push(t.clone());
    }
    by
}

/// `Q` applied to combinations of products, grouped by target block.
pub fn q_images(rows: &[TraceWord]) -> Vec<BTreeMap<Vec<Label>, TraceWord>> {
    rows.iter().map(|w| by_content(&q_superfield(w))).collect()
}

/// Basis words of an invariant span as trace words.
pub fn span_words(span: &InvariantSpan) -> Vec<TraceWord> {
    span.blocks
        .iter()
        .flat_map(|(_, ws)| ws.iter().map(|w| TraceWord { terms: vec![TraceTerm { coeff: BigRational::one(), traces: w.clone() }] }))
        .collect()
}

/// Runs `f` once per prime of `cfg` and accepts the result only if every prime agrees, retrying
/// with fresh primes otherwise.
pub fn agree<T: PartialEq>(cfg: &ArithConfig, what: &str, f: impl Fn(u64) -> T) -> Result<(T, Vec<u64>)> {
    for attempt in 0..=cfg.max_retries {
        let primes = cfg.primes(attempt);
        let mut out: Vec<T> = primes.iter().map(|&q| f(q)).collect();
        if out.windows(2).all(|w| w[0] == w[1]) {
            return Ok((out.swap_remove(0), primes));
        }
    }
    Err(RelcohError::Disagreement(alloc::format!("{what} disagrees across primes")))
}

/// Rank of a family of trace-word combinations as polynomial functions on the algebra, where
/// every combination is homogeneous of one sector. Blocks that share no row are handled
/// independently.
pub fn rank_of_words(g: &LieAlgebraData, rows: &[BTreeMap<Vec<Label>, TraceWord>], prime: u64, seed: u64, ec: &EvalConfig) -> usize {
    let f = PrimeField::new(prime);
    // Union-find over rows joined through common blocks.
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut owner: BTreeMap<&Vec<Label>, usize> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for key in r.keys() {
            match owner.get(key) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(key, i);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..rows.len() {
        if rows[i].is_empty() {
            continue;
        }
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut total = 0;
    for members in comps.values() {
        let blocks: BTreeSet<&Vec<Label>> = members.iter().flat_map(|&i| rows[i].keys()).collect();
        let mut ech = DenseEchelon::new(prime, members.len());
        for content in blocks {
            if ech.rank() == members.len() {
                break;
            }
            let shape = Shape::new(content);
            let terms: Vec<Vec<(u64, &[Vec<Label>])>> = members
                .iter()
                .map(|&i| match rows[i].get(content) {
                    Some(w) => w.terms.iter().map(|t| (rational_mod(&f, &t.coeff), t.traces.as_slice())).collect(),
                    None => Vec::new(),
                })
                .collect();
            let mut rng = block_seed(seed, prime, &[0x51, label_key(content)]);
            let mut fails = 0;
            while fails < ec.patience && ech.rank() < members.len() {
                let mut pt = Point::random(g, f, &shape, &mut rng);
                let col: Vec<u64> = terms
                    .iter()
                    .map(|ts| ts.iter().fold(0, |acc, &(c, t)| f.add(acc, f.mul(c, pt.product(t)))))
                    .collect();
                if ech.insert(col) {
                    fails = 0;
                } else {
                    fails += 1;
                }
            }
        }
        total += ech.rank();
    }
    total
}

/// `rank(d | Inv_p)` modulo `prime`, given a basis of `Inv_p`.
pub fn rank_d_out(g: &LieAlgebraData, span: &InvariantSpan, prime: u64, seed: u64, ec: &EvalConfig) -> usize {
    rank_of_words(g, &q_images(&span_words(span)), prime, seed, ec)
}

/// Per-degree data for one prime: `(dim Inv_p, rank d_out(p))`.
fn degree_profile(g: &LieAlgebraData, n: MultiDegree, ps: &[usize], prime: u64, seed: u64, ec: &EvalConfig) -> Vec<(usize, usize)> {
    ps.iter()
        .map(|&p| {
            let span = invariant_span(g, p, n, prime, seed, ec);
            let out = if p as u32 >= n.total() { 0 } else { rank_d_out(g, &span, prime, seed, ec) };
            (span.dim(), out)
        })
        .collect()
}

fn profile_checked(g: &LieAlgebraData, n: MultiDegree, ps: &[usize], cfg: &ArithConfig, ec: &EvalConfig) -> Result<(Vec<(usize, usize)>, Vec<u64>)> {
    supports_traces(g)?;
    agree(cfg, "trace evaluation", |q| degree_profile(g, n, ps, q, cfg.seed, ec))
}

/// Every sector `(p, n)`, `0 <= p <= |n|`, by trace evaluation.
pub fn multidegree_dims(g: &LieAlgebraData, n: MultiDegree, cfg: &ArithConfig, ec: &EvalConfig) -> Result<Vec<SectorDims>> {
    let top = n.total() as usize;
    let ps: Vec<usize> = (0..=top).collect();
    let (prof, primes) = profile_checked(g, n, &ps, cfg, ec)?;
    Ok(ps
        .iter()
        .map(|&p| {
            let (inv, out) = prof[p];
            let inn = if p == 0 { 0 } else { prof[p - 1].1 };
            SectorDims {
                p,
                n,
                dim_cochain: count_words(g.dim(), n, p),
                dim_invariant: inv,
                rank_d_out: out,
                rank_d_in: inn,
                dim_h: inv - out - inn,
                primes: primes.clone(),
            }
        })
        .collect())
}

/// One sector by trace evaluation; touches degrees `p - 1` and `p` only.
pub fn sector_dims(g: &LieAlgebraData, p: usize, n: MultiDegree, cfg: &ArithConfig, ec: &EvalConfig) -> Result<SectorDims> {
    if p as u32 > n.total() {
        return Ok(SectorDims::zero(p, n));
    }
    let ps: Vec<usize> = if p == 0 { vec![0] } else { vec![p - 1, p] };
    let (prof, primes) = profile_checked(g, n, &ps, cfg, ec)?;
    let (inv, out) = *prof.last().unwrap();
    let inn = if p == 0 { 0 } else { prof[0].1 };
    Ok(SectorDims {
        p,
        n,
        dim_cochain: count_words(g.dim(), n, p),
        dim_invariant: inv,
        rank_d_out: out,
        rank_d_in: inn,
        dim_h: inv - out - inn,
        primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;
    use crate::sector;

    fn alg(s: &str) -> LieAlgebraData {
        build_algebra(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn products_of_small_contents() {
        let t = |s: &str| crate::trace::parse_label(s).unwrap().1;
        // Tr(Ψ1Ψ1), Tr(Ψ1)^2 for gl; reflection kills Tr(Ψ1) for so/sp.
        assert_eq!(trace_products(&[t("t1"), t("t1")], false).len(), 2);
        assert_eq!(trace_products(&[t("t1"), t("t1")], true).len(), 1);
        // Odd letters: Tr(Ψ+Ψ+) vanishes; Tr(Ψ+)^2 vanishes too.
        assert!(trace_products(&[t("zp"), t("zp")], false).is_empty());
        assert_eq!(trace_products(&[t("t1"), t("t2"), t("t3")], false).len(), 1 + 3 + 2);
    }

    #[test]
    fn matches_monomial_route() {
        let cfg = ArithConfig::default();
        let ec = EvalConfig::default();
        let cases: &[(&str, [u32; 5])] = &[
            ("sl2", [0, 0, 2, 1, 1]),
            ("sl2", [1, 1, 1, 0, 0]),
            ("gl2", [0, 0, 1, 1, 1]),
            ("sl3", [0, 0, 2, 1, 0]),
            ("so5", [0, 0, 2, 1, 1]),
            ("so5", [1, 1, 1, 0, 0]),
            ("sp4", [0, 0, 2, 2, 0]),
            ("sp4", [1, 0, 1, 1, 1]),
        ];
        for &(s, n) in cases {
            let g = alg(s);
            let n = MultiDegree(n);
            let a = sector::multidegree_dims(&g, n, &cfg).unwrap();
            let b = multidegree_dims(&g, n, &cfg, &ec).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(
                    (x.dim_invariant, x.rank_d_out, x.dim_h),
                    (y.dim_invariant, y.rank_d_out, y.dim_h),
                    "{s} n={n} p={}",
                    x.p
                );
            }
        }
    }

    #[test]
    fn even_orthogonal_rejected() {
        let g = alg("so4");
        assert!(multidegree_dims(&g, MultiDegree([0, 0, 1, 1, 0]), &ArithConfig::default(), &EvalConfig::default()).is_err());
    }
}
