//! Polynomial functions on `t^{3|2}`: three even copies `u_{i,k}` and two odd copies `η_{a,k}`
//! of the Cartan subalgebra, `k` running over the Cartan basis. Restriction of trace words and
//! cochains to Cartan-valued arguments, and Weyl averaging.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::cochain::{Cochain, GeneratorTable};
use crate::error::{RelcohError, Result};
use crate::liealg::LieAlgebraData;
use crate::superspace::{AMonomial, MultiDegree};
use crate::trace::{Label, TraceWord};

/// Even exponents (`3 r` entries, block `i` for `u_i`) and the set of odd variables (bit
/// `a r + k` for `η_{a,k}`, `a = 0` for `z+`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyMonomial {
    pub even: SmallVec<[u8; 12]>,
    pub odd: u32,
}

impl PolyMonomial {
    pub fn one(rank: usize) -> Self {
        PolyMonomial { even: SmallVec::from_elem(0, 3 * rank), odd: 0 }
    }

    /// Product `self * other`; `None` if an odd variable repeats.
    pub fn mul(&self, other: &PolyMonomial) -> Option<(bool, PolyMonomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        // Each odd variable of `other` moves left past the larger odd variables of `self`.
        let mut swaps = 0u32;
        let mut b = other.odd;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.odd >> j).count_ones();
            b &= b - 1;
        }
        let even = self.even.iter().zip(&other.even).map(|(x, y)| x + y).collect();
        Some((swaps % 2 == 1, PolyMonomial { even, odd: self.odd | other.odd }))
    }

    /// Multidegree `(η+, η-, u1, u2, u3)` for a given rank.
    pub fn multidegree(&self, rank: usize) -> MultiDegree {
        let mask = (1u32 << rank) - 1;
        let e = |i: usize| self.even[i * rank..(i + 1) * rank].iter().map(|&x| x as u32).sum::<u32>();
        MultiDegree([(self.odd & mask).count_ones(), (self.odd >> rank & mask).count_ones(), e(0), e(1), e(2)])
    }
}

/// A polynomial in the `u`'s and `η`'s with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoly {
    pub rank: usize,
    pub terms: BTreeMap<PolyMonomial, BigRational>,
}

fn accumulate(map: &mut HashMap<PolyMonomial, BigRational>, m: PolyMonomial, c: BigRational) {
    let e = map.entry(m).or_insert_with(BigRational::zero);
    *e += c;
}

impl SuperPoly {
    pub fn zero(rank: usize) -> Self {
        SuperPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        let mut p = SuperPoly::zero(rank);
        p.terms.insert(PolyMonomial::one(rank), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(rank: usize, map: HashMap<PolyMonomial, BigRational>) -> Self {
        SuperPoly { rank, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Even variable `u_{i,k}`.
    pub fn even_var(rank: usize, i: usize, k: usize) -> Self {
        let mut m = PolyMonomial::one(rank);
        m.even[i * rank + k] = 1;
        SuperPoly { rank, terms: BTreeMap::from([(m, BigRational::one())]) }
    }

    /// Odd variable `η_{a,k}`.
    pub fn odd_var(rank: usize, a: usize, k: usize) -> Self {
        let mut m = PolyMonomial::one(rank);
        m.odd = 1 << (a * rank + k);
        SuperPoly { rank, terms: BTreeMap::from([(m, BigRational::one())]) }
    }

    pub fn add_scaled(&mut self, other: &SuperPoly, s: &BigRational) {
        for (m, c) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c * s;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn scale(&self, s: &BigRational) -> SuperPoly {
        if s.is_zero() {
            return SuperPoly::zero(self.rank);
        }
        SuperPoly { rank: self.rank, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut map = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.mul(b) {
                    let c = ca * cb;
                    accumulate(&mut map, m, if neg { -c } else { c });
                }
            }
        }
        SuperPoly::from_map(self.rank, map)
    }

    /// Substitutes the Cartan coordinates of every copy by `w u` (`w` row-major `r x r`), i.e.
    /// returns `f ∘ w`.
    pub fn substitute(&self, w: &[i64]) -> SuperPoly {
        let r = self.rank;
        // Image of each variable as a polynomial.
        let image = |even: bool, block: usize, k: usize| -> SuperPoly {
            let mut p = SuperPoly::zero(r);
            for j in 0..r {
                let c = w[k * r + j];
                if c != 0 {
                    let v = if even { SuperPoly::even_var(r, block, j) } else { SuperPoly::odd_var(r, block, j) };
                    p.add_scaled(&v, &BigRational::from_integer(BigInt::from(c)));
                }
            }
            p
        };
        let mut out = SuperPoly::zero(r);
        for (m, c) in &self.terms {
            let mut acc = SuperPoly::one(r);
            for i in 0..3 {
                for k in 0..r {
                    for _ in 0..m.even[i * r + k] {
                        acc = acc.mul(&image(true, i, k));
                    }
                }
            }
            for bit in 0..2 * r {
                if m.odd >> bit & 1 == 1 {
                    acc = acc.mul(&image(false, bit / r, bit % r));
                }
            }
            out.add_scaled(&acc, c);
        }
        out
    }
}

/// Average over a Weyl group given as Cartan-coordinate matrices.
pub fn weyl_orbit_average(f: &SuperPoly, weyl: &[Vec<i64>]) -> SuperPoly {
    let mut out = SuperPoly::zero(f.rank);
    let inv = BigRational::new(BigInt::one(), BigInt::from(weyl.len()));
    for w in weyl {
        out.add_scaled(&f.substitute(w), &inv);
    }
    out
}

/// Diagonal of the Cartan basis matrices: `diag[k][j] = (H_k)_{jj}`.
fn cartan_diagonals(g: &LieAlgebraData) -> Result<Vec<Vec<i64>>> {
    g.cartan_indices
        .iter()
        .map(|&c| {
            let m = &g.basis[c];
            if m.entries().any(|(i, j, _)| i != j) {
                return Err(RelcohError::Internal("Cartan element is not diagonal".into()));
            }
            Ok((0..g.rep_dim()).map(|j| m.get(j, j)).collect())
        })
        .collect()
}

/// `(copy, parity)` of a first-derivative letter: `z±` are odd copies 0/1, `θ_i` even copies.
fn letter_slot(l: Label) -> Option<(bool, usize)> {
    match (l.zp, l.zm, l.theta) {
        (1, 0, 0) => Some((false, 0)),
        (0, 1, 0) => Some((false, 1)),
        (0, 0, 1) => Some((true, 0)),
        (0, 0, 2) => Some((true, 1)),
        (0, 0, 4) => Some((true, 2)),
        _ => None,
    }
}

/// Restriction of a trace word to Cartan-valued arguments. Only first-derivative letters have a
/// Cartan image; any other letter is rejected.
pub fn restrict_trace_word(w: &TraceWord, g: &LieAlgebraData) -> Result<SuperPoly> {
    let r = g.rank();
    let diag = cartan_diagonals(g)?;
    let n = g.rep_dim();
    // Entry j of the diagonal matrix assigned to a letter.
    let entry = |l: Label, j: usize| -> Result<SuperPoly> {
        let (even, copy) = letter_slot(l).ok_or_else(|| {
            RelcohError::InvalidInput(alloc::format!("letter {} has no Cartan restriction", crate::trace::label_string(l)))
        })?;
        let mut p = SuperPoly::zero(r);
        for (k, d) in diag.iter().enumerate() {
            if d[j] != 0 {
                let v = if even { SuperPoly::even_var(r, copy, k) } else { SuperPoly::odd_var(r, copy, k) };
                p.add_scaled(&v, &BigRational::from_integer(BigInt::from(d[j])));
            }
        }
        Ok(p)
    };
    let mut cache: HashMap<(Label, usize), SuperPoly> = HashMap::new();
    let mut out = SuperPoly::zero(r);
    for t in &w.terms {
        let mut prod = SuperPoly::one(r);
        for tr in &t.traces {
            let mut s = SuperPoly::zero(r);
            for j in 0..n {
                let mut acc = SuperPoly::one(r);
                for &l in tr {
                    if !cache.contains_key(&(l, j)) {
                        cache.insert((l, j), entry(l, j)?);
                    }
                    acc = acc.mul(&cache[&(l, j)]);
                    if acc.is_zero() {
                        break;
                    }
                }
                s.add_scaled(&acc, &BigRational::one());
            }
            prod = prod.mul(&s);
            if prod.is_zero() {
                break;
            }
        }
        out.add_scaled(&prod, &t.coeff);
    }
    Ok(out)
}

/// Restriction of a cochain in first-derivative generators: `ξ^{(H_k, θ_i)} ↦ u_{i,k}`,
/// `ξ^{(H_k, z±)} ↦ η_{±,k}`, every other generator `↦ 0`.
pub fn restrict_cochain(c: &Cochain, table: &GeneratorTable, g: &LieAlgebraData) -> Result<SuperPoly> {
    let r = g.rank();
    let mut out = SuperPoly::zero(r);
    'terms: for (w, coeff) in &c.terms {
        let mut acc = SuperPoly::one(r);
        for &id in w.ids() {
            let gen = table.generator(id);
            let Some(k) = g.cartan_indices.iter().position(|&x| x == gen.g_index) else { continue 'terms };
            let (even, copy) = letter_slot(gen.monomial)
                .ok_or_else(|| RelcohError::InvalidInput("cochain is not in top degree".into()))?;
            let v = if even { SuperPoly::even_var(r, copy, k) } else { SuperPoly::odd_var(r, copy, k) };
            acc = acc.mul(&v);
            if acc.is_zero() {
                continue 'terms;
            }
        }
        out.add_scaled(&acc, coeff);
    }
    Ok(out)
}

/// All monomials on `t^{3|2}` of multidegree `n` (odd degrees from `n_{z±}`).
pub fn poly_monomials(rank: usize, n: MultiDegree) -> Vec<PolyMonomial> {
    fn compositions(total: u32, parts: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if parts == 1 {
            cur.push(total as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x as u8);
            compositions(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    fn subsets(size: usize, k: u32) -> Vec<u32> {
        (0u32..1 << size).filter(|m| m.count_ones() == k).collect()
    }
    let blocks: Vec<Vec<Vec<u8>>> = (0..3)
        .map(|i| {
            let mut out = Vec::new();
            compositions(n.0[2 + i], rank, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let (plus, minus) = (subsets(rank, n.0[0]), subsets(rank, n.0[1]));
    let mut out = Vec::new();
    for a in &blocks[0] {
        for b in &blocks[1] {
            for c in &blocks[2] {
                let even: SmallVec<[u8; 12]> = a.iter().chain(b).chain(c).copied().collect();
                for &p in &plus {
                    for &m in &minus {
                        out.push(PolyMonomial { even: even.clone(), odd: p | m << rank });
                    }
                }
            }
        }
    }
    out
}

/// Cartan restriction of first-derivative letters only; `n` with `n_{z±} > rank` has no monomials.
pub fn is_first_derivative(l: AMonomial) -> bool {
    letter_slot(l).is_some()
}

/// Coordinates of polynomials against a shared monomial index (grown on demand).
pub fn poly_rows(polys: &[SuperPoly]) -> (Vec<Vec<(usize, BigRational)>>, usize) {
    let mut index: BTreeMap<&PolyMonomial, usize> = BTreeMap::new();
    for p in polys {
        for m in p.terms.keys() {
            let k = index.len();
            index.entry(m).or_insert(k);
        }
    }
    let rows = polys
        .iter()
        .map(|p| p.terms.iter().map(|(m, c)| (index[m], c.clone())).collect())
        .collect();
    (rows, index.len())
}

/// Rank of rational rows, by elimination modulo each prime (primes dividing a denominator are
/// skipped); the ranks must agree.
pub fn rational_rank(rows: &[Vec<(usize, BigRational)>], cols: usize, primes: &[u64]) -> Result<usize> {
    use crate::exactla::DenseEchelon;
    use crate::field::PrimeField;
    let mut ranks = Vec::new();
    'primes: for &p in primes {
        let f = PrimeField::new(p);
        let mut ech = DenseEchelon::new(p, cols);
        for row in rows {
            let mut v = vec![0u64; cols];
            for (k, c) in row {
                let d = f.from_bigint(c.denom());
                if d == 0 {
                    continue 'primes;
                }
                v[*k] = f.mul(f.from_bigint(c.numer()), f.inv(d));
            }
            ech.insert(v);
        }
        ranks.push(ech.rank());
    }
    match ranks.first() {
        Some(&r) if ranks.iter().all(|&x| x == r) => Ok(r),
        Some(_) => Err(RelcohError::Disagreement("polynomial rank disagrees across primes".into())),
        None => Err(RelcohError::Disagreement("no usable prime for polynomial rank".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;
    use crate::trace::expand;

    fn alg(s: &str) -> LieAlgebraData {
        build_algebra(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn odd_variables_anticommute() {
        let a = SuperPoly::odd_var(2, 0, 0);
        let b = SuperPoly::odd_var(2, 1, 1);
        let mut s = a.mul(&b);
        s.add_scaled(&b.mul(&a), &BigRational::one());
        assert!(s.is_zero());
        assert!(a.mul(&a).is_zero());
    }

    #[test]
    fn sl2_weyl_average() {
        let g = alg("sl2");
        let u1 = SuperPoly::even_var(1, 0, 0);
        assert!(weyl_orbit_average(&u1, &g.weyl_group).is_zero());
        let u12 = u1.mul(&SuperPoly::even_var(1, 1, 0));
        assert_eq!(weyl_orbit_average(&u12, &g.weyl_group), u12);
    }

    #[test]
    fn weyl_average_idempotent() {
        for s in ["so5", "sp4", "sl3", "so7"] {
            let g = alg(s);
            let r = g.rank();
            let f = SuperPoly::even_var(r, 0, 0)
                .mul(&SuperPoly::even_var(r, 0, 0))
                .mul(&SuperPoly::even_var(r, 1, r - 1))
                .mul(&SuperPoly::odd_var(r, 0, 0))
                .mul(&SuperPoly::odd_var(r, 1, r - 1));
            let once = weyl_orbit_average(&f, &g.weyl_group);
            assert_eq!(weyl_orbit_average(&once, &g.weyl_group), once, "{s}");
        }
    }

    #[test]
    fn trace_and_cochain_restrictions_agree() {
        let words = [
            "1 * Tr(t1 t2)",
            "1 * Tr(zp zm t1)\n2 * Tr(zp t1 zm)",
            "1 * Tr(zp zm) * Tr(t1 t2 t3)",
            "1 * Tr(t1 t1 t2 t2)\n-3 * Tr(t1 t2 t1 t2)",
        ];
        for s in ["sl2", "sl3", "so5", "sp4", "gl2"] {
            let g = alg(s);
            for text in words {
                let w = TraceWord::parse(text).unwrap();
                let (_, n) = w.sector().unwrap();
                let table = GeneratorTable::new(&g, n);
                let c = expand(&w, &g, &table).unwrap();
                let a = restrict_trace_word(&w, &g).unwrap();
                let b = restrict_cochain(&c, &table, &g).unwrap();
                assert_eq!(a, b, "{s}: {text}");
                // Restrictions of invariants are Weyl invariant.
                assert_eq!(weyl_orbit_average(&a, &g.weyl_group), a, "{s}: {text}");
            }
        }
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(poly_monomials(1, MultiDegree([0, 0, 1, 1, 0])).len(), 1);
        assert_eq!(poly_monomials(2, MultiDegree([1, 0, 2, 0, 0])).len(), 2 * 3);
        assert!(poly_monomials(1, MultiDegree([2, 0, 0, 0, 0])).is_empty());
    }
}
