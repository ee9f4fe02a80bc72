//! The relative Chevalley-Eilenberg complex of `(g[A], g)` in the suspended generators
//! `ξ^{(a,m)}`, `a` a basis index of `g` and `m` a non-unit monomial of `A`.
//!
//! Conventions. The superfield is `Ψ = Σ_m m Φ_m` with `Φ_m = Σ_a ξ^{(a,m)} T_a`, so
//! `|ξ^{(a,m)}| = |m| + 1`. The supercharge satisfies `QΨ = Ψ²`, kills `A`, and in components
//!
//! ```text
//! (-1)^{|m|} Q Φ_m = Σ_{m1 m2 = s m} s (-1)^{(|m1|+1)|m2|} Φ_{m1} Φ_{m2}.
//! ```
//!
//! The differential is `d = -Q`, extended to monomials as an odd derivation.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::liealg::LieAlgebraData;
use crate::superspace::{enumerate_monomials, multiply, AMonomial, MultiDegree};

/// Normal-ordered super-monomial: generator ids in non-decreasing order, odd ids at most once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SuperMonomial(pub SmallVec<[u32; 12]>);

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial(SmallVec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.0
    }
}

/// One suspended generator `ξ^{(a,m)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub g_index: usize,
    pub monomial: AMonomial,
    pub parity: u8,
    pub multidegree: MultiDegree,
}

/// Every generator `ξ^{(a,m)}` with `deg(m) <= bound`, with the differential and the
/// `g`-action precomputed on generators.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    pub bound: MultiDegree,
    pub dim: usize,
    pub rank: usize,
    pub monos: Vec<AMonomial>,
    mono_index: HashMap<AMonomial, u32>,
    parity: Vec<u8>,
    degree: Vec<[u32; 5]>,
    /// Weight as a function: `ξ^{(c,m)}` has weight `-α_c`.
    weight: Vec<i64>,
    /// `d ξ_g = Σ coeff ξ_{g1} ξ_{g2}` with `g1 <= g2`, normal ordered and combined.
    dgen: Vec<Vec<(u32, u32, i64)>>,
    /// `action[x][g]`: `ρ(T_x) ξ_g = Σ coeff ξ_{g'}`.
    action: Vec<Vec<Vec<(u32, i64)>>>,
    pub simple_raising: Vec<usize>,
    pub cartan_indices: Vec<usize>,
}

impl GeneratorTable {
    pub fn new(g: &LieAlgebraData, bound: MultiDegree) -> Self {
        let monos = enumerate_monomials(bound);
        let dim = g.dim();
        let rank = g.rank();
        let mono_index: HashMap<AMonomial, u32> =
            monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let ngen = monos.len() * dim;
        let mut parity = Vec::with_capacity(ngen);
        let mut degree = Vec::with_capacity(ngen);
        let mut weight = Vec::with_capacity(ngen * rank);
        for m in &monos {
            for a in 0..dim {
                parity.push((m.parity() + 1) % 2);
                degree.push(m.degree().0);
                weight.extend(g.weights[a].iter().map(|w| -w));
            }
        }

        // f_{ab}^c grouped by c.
        let mut by_target: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); dim];
        for a in 0..dim {
            for b in 0..dim {
                for &(c, f) in g.structure(a, b) {
                    by_target[c].push((a, b, f));
                }
            }
        }
        let mut table = GeneratorTable {
            bound,
            dim,
            rank,
            monos: monos.clone(),
            mono_index,
            parity,
            degree,
            weight,
            dgen: Vec::new(),
            action: Vec::new(),
            simple_raising: g.simple_raising.clone(),
            cartan_indices: g.cartan_indices.clone(),
        };

        let mut dgen = Vec::with_capacity(ngen);
        for m in &monos {
            for c in 0..dim {
                let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
                for m1 in &monos {
                    let Some(rest) = m.degree().checked_sub(&m1.degree()) else { continue };
                    let Some(m2) = AMonomial::from_degree(rest) else { continue };
                    if m2.is_unit() {
                        continue;
                    }
                    let Some((s, prod)) = multiply(*m1, m2) else { continue };
                    debug_assert_eq!(prod, *m);
                    let (p1, p2) = (m1.parity() as i64, m2.parity() as i64);
                    let sign_m = if m.parity() == 1 { -1 } else { 1 };
                    let koszul = if ((p1 + 1) * p2) % 2 == 1 { -1 } else { 1 };
                    let base = -sign_m * (s as i64) * koszul;
                    for &(a, b, f) in &by_target[c] {
                        let g1 = table.id(a, *m1);
                        let g2 = table.id(b, m2);
                        let mut coeff = base * f;
                        let (lo, hi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
                        if g1 > g2 && table.parity[g1 as usize] == 1 && table.parity[g2 as usize] == 1 {
                            coeff = -coeff;
                        }
                        if lo == hi && table.parity[lo as usize] == 1 {
                            continue;
                        }
                        *acc.entry((lo, hi)).or_insert(0) += coeff;
                    }
                }
                let terms = acc
                    .into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|((x, y), v)| {
                        assert!(v % 2 == 0, "odd doubled coefficient in dξ");
                        (x, y, v / 2)
                    })
                    .filter(|t| t.2 != 0)
                    .collect();
                dgen.push(terms);
            }
        }
        table.dgen = dgen;

        // ρ(x) ξ^{(c,m)} = -Σ_b f_{xb}^c ξ^{(b,m)}.
        let mut action = Vec::with_capacity(dim);
        for x in 0..dim {
            let mut per_c: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim];
            for b in 0..dim {
                for &(c, f) in g.structure(x, b) {
                    per_c[c].push((b, -f));
                }
            }
            let mut rows = Vec::with_capacity(ngen);
            for m in &monos {
                for c in 0..dim {
                    rows.push(per_c[c].iter().map(|&(b, v)| (table.id(b, *m), v)).collect());
                }
            }
            action.push(rows);
        }
        table.action = action;
        table
    }

    #[inline]
    pub fn id(&self, a: usize, m: AMonomial) -> u32 {
        self.mono_index[&m] * self.dim as u32 + a as u32
    }

    pub fn try_id(&self, a: usize, m: AMonomial) -> Option<u32> {
        self.mono_index.get(&m).map(|i| i * self.dim as u32 + a as u32)
    }

    pub fn len(&self) -> usize {
        self.parity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parity.is_empty()
    }

    pub fn generator(&self, id: u32) -> Generator {
        let (mi, a) = (id as usize / self.dim, id as usize % self.dim);
        Generator {
            g_index: a,
            monomial: self.monos[mi],
            parity: self.parity[id as usize],
            multidegree: MultiDegree(self.degree[id as usize]),
        }
    }

    #[inline]
    pub fn parity(&self, id: u32) -> u8 {
        self.parity[id as usize]
    }

    #[inline]
    pub fn weight(&self, id: u32) -> &[i64] {
        let r = self.rank;
        &self.weight[id as usize * r..(id as usize + 1) * r]
    }

    pub fn dgen(&self, id: u32) -> &[(u32, u32, i64)] {
        &self.dgen[id as usize]
    }

    pub fn action(&self, x: usize, id: u32) -> &[(u32, i64)] {
        &self.action[x][id as usize]
    }

    pub fn word_degree(&self, w: &SuperMonomial) -> MultiDegree {
        let mut d = [0u32; 5];
        for &id in w.ids() {
            for (k, v) in d.iter_mut().zip(self.degree[id as usize]) {
                *k += v;
            }
        }
        MultiDegree(d)
    }

    pub fn word_weight(&self, w: &SuperMonomial) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for &id in w.ids() {
            for (o, v) in out.iter_mut().zip(self.weight(id)) {
                *o += v;
            }
        }
        out
    }

    pub fn word_parity(&self, w: &SuperMonomial) -> u8 {
        w.ids().iter().map(|&i| self.parity[i as usize]).sum::<u8>() % 2
    }

    /// Normal form of an arbitrary product of generators: `Some((sign, word))`, or `None`
    /// when an odd generator repeats.
    pub fn normal_order(&self, seq: &[u32]) -> Option<(i64, SuperMonomial)> {
        let mut v: SmallVec<[u32; 12]> = SmallVec::from_slice(seq);
        let mut sign = 1i64;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if self.parity[v[j] as usize] == 1 && self.parity[v[j - 1] as usize] == 1 {
                    sign = -sign;
                }
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in v.windows(2) {
            if w[0] == w[1] && self.parity[w[0] as usize] == 1 {
                return None;
            }
        }
        Some((sign, SuperMonomial(v)))
    }

    /// `d` of a single normal-ordered word, as unnormalized `(coeff, word)` pairs.
    pub fn d_word(&self, w: &SuperMonomial, mut emit: impl FnMut(i64, SuperMonomial)) {
        let ids = w.ids();
        let mut prefix_parity = 0u8;
        for j in 0..ids.len() {
            // Skip repeated even factors: the derivation hits each copy, handled by multiplicity.
            if j > 0 && ids[j] == ids[j - 1] {
                prefix_parity ^= self.parity[ids[j] as usize];
                continue;
            }
            let mult = ids[j..].iter().take_while(|&&x| x == ids[j]).count() as i64;
            let sign_prefix = if prefix_parity == 1 { -1 } else { 1 };
            for &(g1, g2, c) in self.dgen(ids[j]) {
                let mut seq: SmallVec<[u32; 12]> = SmallVec::with_capacity(ids.len() + 1);
                seq.extend_from_slice(&ids[..j]);
                seq.push(g1);
                seq.push(g2);
                seq.extend_from_slice(&ids[j + 1..]);
                if let Some((s, nw)) = self.normal_order(&seq) {
                    emit(sign_prefix * s * c * mult, nw);
                }
            }
            prefix_parity ^= self.parity[ids[j] as usize];
        }
    }

    /// `ρ(T_x)` of a single word.
    pub fn act_word(&self, x: usize, w: &SuperMonomial, mut emit: impl FnMut(i64, SuperMonomial)) {
        let ids = w.ids();
        for j in 0..ids.len() {
            if j > 0 && ids[j] == ids[j - 1] {
                continue;
            }
            let mult = ids[j..].iter().take_while(|&&y| y == ids[j]).count() as i64;
            for &(g2, c) in self.action(x, ids[j]) {
                let mut seq: SmallVec<[u32; 12]> = SmallVec::from_slice(ids);
                seq[j] = g2;
                if let Some((s, nw)) = self.normal_order(&seq) {
                    emit(s * c * mult, nw);
                }
            }
        }
    }

    /// All normal-ordered words of length `p` and multidegree exactly `n`, optionally only
    /// those of a given weight, in lexicographic order of generator ids.
    pub fn enumerate_words(&self, p: usize, n: MultiDegree, weight: Option<&[i64]>) -> Vec<SuperMonomial> {
        let mut out = Vec::new();
        if !n.le(&self.bound) || p as u32 > n.total() {
            return out;
        }
        let r = self.rank;
        let mut wmin = vec![0i64; r];
        let mut wmax = vec![0i64; r];
        for id in 0..self.len() as u32 {
            for (l, &w) in self.weight(id).iter().enumerate() {
                wmin[l] = wmin[l].min(w);
                wmax[l] = wmax[l].max(w);
            }
        }
        let target: Option<Vec<i64>> = weight.map(|w| w.to_vec());
        let mut cur: SmallVec<[u32; 12]> = SmallVec::new();
        let mut rem = n.0;
        let mut wsum = vec![0i64; r];
        self.dfs(0, p, &mut rem, &mut cur, &mut wsum, target.as_deref(), &wmin, &wmax, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        start: u32,
        left: usize,
        rem: &mut [u32; 5],
        cur: &mut SmallVec<[u32; 12]>,
        wsum: &mut Vec<i64>,
        target: Option<&[i64]>,
        wmin: &[i64],
        wmax: &[i64],
        out: &mut Vec<SuperMonomial>,
    ) {
        if left == 0 {
            if rem.iter().all(|&x| x == 0) && target.is_none_or(|t| t == &wsum[..]) {
                out.push(SuperMonomial(cur.clone()));
            }
            return;
        }
        let rem_total: u32 = rem.iter().sum();
        if (rem_total as usize) < left {
            return;
        }
        if let Some(t) = target {
            for l in 0..self.rank {
                let need = t[l] - wsum[l];
                if need < wmin[l] * left as i64 || need > wmax[l] * left as i64 {
                    return;
                }
            }
        }
        for id in start..self.len() as u32 {
            let deg = self.degree[id as usize];
            if deg.iter().zip(rem.iter()).any(|(d, r)| d > r) {
                continue;
            }
            // Remaining factors after this one each need total degree >= 1.
            let dtot: u32 = deg.iter().sum();
            if ((rem_total - dtot) as usize) < left - 1 {
                continue;
            }
            let odd = self.parity[id as usize] == 1;
            for (k, d) in rem.iter_mut().zip(deg) {
                *k -= d;
            }
            for (s, w) in wsum.iter_mut().zip(self.weight(id)) {
                *s += w;
            }
            cur.push(id);
            self.dfs(if odd { id + 1 } else { id }, left - 1, rem, cur, wsum, target, wmin, wmax, out);
            cur.pop();
            for (s, w) in wsum.iter_mut().zip(self.weight(id)) {
                *s -= w;
            }
            for (k, d) in rem.iter_mut().zip(deg) {
                *k += d;
            }
        }
    }
}

/// Sparse exact linear combination of normal-ordered super-monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    pub terms: BTreeMap<SuperMonomial, BigRational>,
}

impl Cochain {
    pub fn zero() -> Self {
        Cochain::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut out = Cochain::zero();
        out.add_term(SuperMonomial::one(), c);
        out
    }

    pub fn monomial(w: SuperMonomial) -> Self {
        Cochain::constant(BigRational::one()).mul_word(w)
    }

    fn mul_word(self, w: SuperMonomial) -> Self {
        let mut out = Cochain::zero();
        for (_, c) in self.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: SuperMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain, s: &BigRational) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &BigRational) -> Cochain {
        let mut out = Cochain::zero();
        out.add_scaled(self, s);
        out
    }

    /// Word lengths present (a homogeneous cochain has exactly one).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Cochain, table: &GeneratorTable) -> Cochain {
        let mut acc: HashMap<SuperMonomial, BigRational> = HashMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut seq: SmallVec<[u32; 12]> = w1.0.clone();
                seq.extend_from_slice(&w2.0);
                if let Some((s, w)) = table.normal_order(&seq) {
                    let v = c1 * c2 * BigRational::from_integer(BigInt::from(s));
                    *acc.entry(w).or_insert_with(BigRational::zero) += v;
                }
            }
        }
        Cochain::from_map(acc)
    }

    fn from_map(acc: HashMap<SuperMonomial, BigRational>) -> Cochain {
        Cochain { terms: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Coordinates as integers after clearing denominators (projective representative).
    pub fn primitive_integer_terms(&self) -> Vec<(SuperMonomial, BigInt)> {
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let ints: Vec<(SuperMonomial, BigInt)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), (c * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |g, (_, v)| num_integer::Integer::gcd(&g, v));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|(w, v)| (w, v / &g)).collect()
    }

    /// Small integer coordinates, if they fit.
    pub fn to_i64_terms(&self) -> Option<Vec<(SuperMonomial, i64)>> {
        self.terms
            .iter()
            .map(|(w, c)| {
                if c.is_integer() {
                    c.to_integer().to_i64().map(|v| (w.clone(), v))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn to_json_terms(&self, table: &GeneratorTable) -> Vec<CochainTerm> {
        self.terms
            .iter()
            .map(|(w, c)| CochainTerm {
                monomial: w
                    .ids()
                    .iter()
                    .map(|&id| {
                        let g = table.generator(id);
                        [g.g_index as u64, monomial_code(g.monomial)]
                    })
                    .collect(),
                coeff: rational_string(c),
            })
            .collect()
    }
}

/// Serialized cochain term: `monomial` lists `[g_index, monomial_code]` per factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainTerm {
    pub monomial: Vec<[u64; 2]>,
    pub coeff: String,
}

/// Stable integer code of an `A`-monomial: `(z+ << 16) | (z- << 8) | θ-mask`.
pub fn monomial_code(m: AMonomial) -> u64 {
    ((m.zp as u64) << 16) | ((m.zm as u64) << 8) | m.theta as u64
}

pub fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        alloc::format!("{}", c.numer())
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            write!(f, "{sign}{}*{:?}", rational_string(&c.abs()), w.ids())?;
        }
        Ok(())
    }
}

fn linear_map(c: &Cochain, mut f: impl FnMut(&SuperMonomial, &mut dyn FnMut(i64, SuperMonomial))) -> Cochain {
    // Integer images per word, then scaled by the rational coefficient.
    let mut out: HashMap<SuperMonomial, BigRational> = HashMap::new();
    for (w, coeff) in &c.terms {
        let mut img: HashMap<SuperMonomial, i64> = HashMap::new();
        f(w, &mut |v, nw| *img.entry(nw).or_insert(0) += v);
        for (nw, v) in img {
            if v != 0 {
                *out.entry(nw).or_insert_with(BigRational::zero) +=
                    coeff * BigRational::from_integer(BigInt::from(v));
            }
        }
    }
    Cochain::from_map(out)
}

/// The relative Chevalley-Eilenberg differential.
pub fn differential(table: &GeneratorTable, c: &Cochain) -> Cochain {
    linear_map(c, |w, emit| table.d_word(w, |v, nw| emit(v, nw)))
}

/// The coadjoint action of the basis element `x`.
pub fn g_action(table: &GeneratorTable, x: usize, c: &Cochain) -> Cochain {
    linear_map(c, |w, emit| table.act_word(x, w, |v, nw| emit(v, nw)))
}

/// The full sector basis `(p, n)`.
pub fn enumerate_basis(table: &GeneratorTable, p: usize, n: MultiDegree) -> Vec<SuperMonomial> {
    table.enumerate_words(p, n, None)
}

/// Index of words for assembling matrices.
#[derive(Clone, Debug, Default)]
pub struct WordIndex {
    pub words: Vec<SuperMonomial>,
    index: HashMap<SuperMonomial, u32>,
}

impl WordIndex {
    pub fn new(words: Vec<SuperMonomial>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        WordIndex { words, index }
    }

    pub fn get(&self, w: &SuperMonomial) -> Option<u32> {
        self.index.get(w).copied()
    }

    /// Index of `w`, appending it if new.
    pub fn intern(&mut self, w: SuperMonomial) -> u32 {
        if let Some(&i) = self.index.get(&w) {
            return i;
        }
        let i = self.words.len() as u32;
        self.index.insert(w.clone(), i);
        self.words.push(w);
        i
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Dense integer coordinates of a cochain in this index; `None` if a term falls outside.
    pub fn coordinates(&self, c: &Cochain) -> Option<Vec<(u32, i64)>> {
        let mut out = Vec::with_capacity(c.len());
        for (w, v) in c.primitive_integer_terms() {
            let i = self.get(&w)?;
            out.push((i, v.to_i64()?));
        }
        Some(out)
    }
}

/// Images of every domain word under the simple raising operators, as sparse rows over an
/// interned target index.
pub fn raising_rows(table: &GeneratorTable, domain: &[SuperMonomial]) -> (Vec<Vec<(u32, i64)>>, usize) {
    let mut targets = WordIndex::default();
    let mut rows = Vec::with_capacity(domain.len());
    let nr = table.simple_raising.len();
    // Targets for different raising operators have different weights, so one index suffices.
    for w in domain {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for k in 0..nr {
            let x = table.simple_raising[k];
            table.act_word(x, w, |v, nw| {
                let t = targets.intern(nw);
                *acc.entry(t).or_insert(0) += v;
            });
        }
        let mut row: Vec<(u32, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
        row.sort_unstable();
        rows.push(row);
    }
    (rows, targets.len())
}

/// Images of every domain word under `d`, over an interned target index.
pub fn differential_rows(table: &GeneratorTable, domain: &[SuperMonomial]) -> (Vec<Vec<(u32, i64)>>, WordIndex) {
    let mut targets = WordIndex::default();
    let mut rows = Vec::with_capacity(domain.len());
    for w in domain {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        table.d_word(w, |v, nw| {
            let t = targets.intern(nw);
            *acc.entry(t).or_insert(0) += v;
        });
        let mut row: Vec<(u32, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
        row.sort_unstable();
        rows.push(row);
    }
    (rows, targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;
    use alloc::vec;

    fn setup(s: &str, n: [u32; 5]) -> (LieAlgebraData, GeneratorTable) {
        let g = build_algebra(s.parse().unwrap()).unwrap();
        let t = GeneratorTable::new(&g, MultiDegree(n));
        (g, t)
    }

    #[test]
    fn basis_counts() {
        let (_, t) = setup("sl2", [0, 0, 1, 1, 0]);
        assert_eq!(enumerate_basis(&t, 1, MultiDegree([0, 0, 1, 0, 0])).len(), 3);
        assert_eq!(enumerate_basis(&t, 3, MultiDegree([0, 0, 1, 1, 0])).len(), 0);
        assert_eq!(enumerate_basis(&t, 2, MultiDegree([0, 0, 1, 1, 0])).len(), 9);
        // p = 1 in the same sector: the single generators ξ^{(a, θ1θ2)}.
        assert_eq!(enumerate_basis(&t, 1, MultiDegree([0, 0, 1, 1, 0])).len(), 3);
    }

    #[test]
    fn generator_parities() {
        let (_, t) = setup("sl2", [1, 0, 1, 1, 0]);
        let g = t.generator(t.id(0, AMonomial::theta(0)));
        assert_eq!(g.parity, 0);
        assert_eq!(t.generator(t.id(1, AMonomial::new(1, 0, 0))).parity, 1);
        assert_eq!(t.generator(t.id(2, AMonomial::new(0, 0, 3))).parity, 1);
    }

    #[test]
    fn normal_order_signs() {
        let (_, t) = setup("sl2", [1, 0, 0, 0, 0]);
        // All generators here are odd (m = z+).
        let (a, b) = (t.id(0, AMonomial::new(1, 0, 0)), t.id(1, AMonomial::new(1, 0, 0)));
        assert_eq!(t.normal_order(&[b, a]), Some((-1, SuperMonomial(SmallVec::from_slice(&[a, b])))));
        assert_eq!(t.normal_order(&[a, a]), None);
    }

    #[test]
    fn d_squared_on_generators() {
        for s in ["sl2", "sl3", "so5"] {
            let (_, t) = setup(s, [1, 1, 1, 1, 1]);
            for id in 0..t.len() as u32 {
                let c = Cochain::monomial(SuperMonomial(SmallVec::from_slice(&[id])));
                let dd = differential(&t, &differential(&t, &c));
                assert!(dd.is_zero(), "{s}: d^2 != 0 on generator {id}");
            }
        }
    }

    #[test]
    fn d_of_constant_is_zero() {
        let (_, t) = setup("sl2", [0, 0, 1, 1, 0]);
        let c = Cochain::constant(BigRational::one());
        assert!(differential(&t, &c).is_zero());
    }

    #[test]
    fn killing_cochain_is_invariant() {
        let (g, t) = setup("sl2", [0, 0, 1, 1, 0]);
        let (t1, t2) = (AMonomial::theta(0), AMonomial::theta(1));
        let mut c = Cochain::zero();
        for a in 0..3 {
            for b in 0..3 {
                let k = g.trace_form(a, b);
                if k != 0 {
                    let (_, w) = t.normal_order(&[t.id(a, t1), t.id(b, t2)]).unwrap();
                    c.add_term(w, BigRational::from_integer(k.into()));
                }
            }
        }
        for x in 0..3 {
            assert!(g_action(&t, x, &c).is_zero());
        }
    }

    #[test]
    fn action_is_a_representation_and_commutes_with_d() {
        let (g, t) = setup("sl3", [0, 0, 1, 1, 1]);
        let words = enumerate_basis(&t, 2, MultiDegree([0, 0, 1, 1, 1]));
        let e = g.simple_raising[0];
        let f = g.simple_lowering[0];
        let h: Vec<(usize, i64)> = g.structure(e, f).to_vec();
        for w in words.iter().step_by(7) {
            let c = Cochain::monomial(w.clone());
            let ef = g_action(&t, e, &g_action(&t, f, &c));
            let fe = g_action(&t, f, &g_action(&t, e, &c));
            let mut lhs = ef;
            lhs.add_scaled(&fe, &-BigRational::one());
            let mut rhs = Cochain::zero();
            for &(k, v) in &h {
                rhs.add_scaled(&g_action(&t, k, &c), &BigRational::from_integer(v.into()));
            }
            assert_eq!(lhs, rhs);
            for x in [e, f, 0] {
                assert_eq!(
                    differential(&t, &g_action(&t, x, &c)),
                    g_action(&t, x, &differential(&t, &c))
                );
            }
        }
    }

    #[test]
    fn cartan_kills_weight_zero() {
        let (_, t) = setup("sl2", [0, 0, 1, 1, 0]);
        let (e, f) = (1, 2);
        let (_, w) = t
            .normal_order(&[t.id(e, AMonomial::theta(0)), t.id(f, AMonomial::theta(1))])
            .unwrap();
        assert!(g_action(&t, 0, &Cochain::monomial(w)).is_zero());
    }

    #[test]
    fn weight_filtered_enumeration() {
        let (_, t) = setup("so5", [1, 0, 1, 1, 0]);
        let n = MultiDegree([1, 0, 1, 1, 0]);
        for p in 0..=3 {
            let all = enumerate_basis(&t, p, n);
            let zero: Vec<_> = all.iter().filter(|w| t.word_weight(w).iter().all(|&x| x == 0)).cloned().collect();
            assert_eq!(t.enumerate_words(p, n, Some(&[0, 0])), zero);
            for w in &all {
                assert_eq!(t.word_degree(w), n);
            }
        }
        assert_eq!(enumerate_basis(&t, 0, MultiDegree::ZERO), vec![SuperMonomial::one()]);
    }
}
