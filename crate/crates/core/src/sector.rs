//! Sector cohomology by stacked ranks on weight-0 monomials.
//!
//! For a domain of weight-0 words at degree `p`, with `R` the simple raising operators and `D`
//! the differential, `dim Inv_p = W0 - rank R` and `rank(d|Inv_p) = rank[R | D] - rank R`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cochain::{differential_rows, raising_rows, Cochain, GeneratorTable, SuperMonomial};
use crate::error::Result;
use crate::exactla::{dense_rank_exact, nullspace_basis, rank_checked, ArithConfig, SparseMatrix};
use crate::liealg::LieAlgebraData;
use crate::superspace::MultiDegree;

/// Ranks for one degree `p` of a fixed multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRanks {
    pub p: usize,
    pub weight_zero: usize,
    pub rank_raising: usize,
    pub rank_stacked: usize,
}

impl DegreeRanks {
    pub fn empty(p: usize) -> Self {
        DegreeRanks { p, weight_zero: 0, rank_raising: 0, rank_stacked: 0 }
    }

    pub fn dim_invariant(&self) -> usize {
        self.weight_zero - self.rank_raising
    }

    pub fn rank_d_out(&self) -> usize {
        self.rank_stacked - self.rank_raising
    }
}

/// Dimensions of one sector `(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorDims {
    pub p: usize,
    pub n: MultiDegree,
    pub dim_cochain: u128,
    pub dim_invariant: usize,
    pub rank_d_out: usize,
    pub rank_d_in: usize,
    pub dim_h: usize,
    pub primes: Vec<u64>,
}

impl SectorDims {
    pub fn zero(p: usize, n: MultiDegree) -> Self {
        SectorDims { p, n, dim_cochain: 0, dim_invariant: 0, rank_d_out: 0, rank_d_in: 0, dim_h: 0, primes: Vec::new() }
    }
}

/// Combines per-degree ranks into sector dimensions for every `p` in `0..=|n|`.
pub fn assemble(n: MultiDegree, ranks: &[DegreeRanks], counts: &[u128], primes: &[u64]) -> Vec<SectorDims> {
    let mut out = Vec::with_capacity(ranks.len());
    for (p, r) in ranks.iter().enumerate() {
        let rank_in = if p == 0 { 0 } else { ranks[p - 1].rank_d_out() };
        let inv = r.dim_invariant();
        let rank_out = r.rank_d_out();
        assert!(inv >= rank_out + rank_in, "negative cohomology at p = {p}, n = {n}");
        out.push(SectorDims {
            p,
            n,
            dim_cochain: counts[p],
            dim_invariant: inv,
            rank_d_out: rank_out,
            rank_d_in: rank_in,
            dim_h: inv - rank_out - rank_in,
            primes: primes.to_vec(),
        });
    }
    out
}

/// Number of normal-ordered words of length `p` and multidegree exactly `n`, all weights.
pub fn count_words(dim: usize, n: MultiDegree, p: usize) -> u128 {
    let monos = crate::superspace::enumerate_monomials(n);
    let binom = |a: u128, b: u128| -> u128 {
        if b > a {
            return 0;
        }
        let mut r = 1u128;
        for i in 0..b {
            r = r * (a - i) / (i + 1);
        }
        r
    };
    // Ways to place k copies of one monomial's generators.
    let ways = |odd: bool, k: u32| -> u128 {
        if odd {
            binom(dim as u128, k as u128)
        } else {
            binom(dim as u128 + k as u128 - 1, k as u128)
        }
    };
    let mut memo: HashMap<(usize, [u32; 5], usize), u128> = HashMap::new();
    fn go(
        i: usize,
        rem: [u32; 5],
        left: usize,
        monos: &[crate::superspace::AMonomial],
        ways: &dyn Fn(bool, u32) -> u128,
        memo: &mut HashMap<(usize, [u32; 5], usize), u128>,
    ) -> u128 {
        if i == monos.len() {
            return u128::from(left == 0 && rem.iter().all(|&x| x == 0));
        }
        if let Some(&v) = memo.get(&(i, rem, left)) {
            return v;
        }
        let deg = monos[i].degree().0;
        let odd = monos[i].parity() == 0;
        let mut total = 0u128;
        let mut r = rem;
        let mut k = 0u32;
        loop {
            let w = ways(odd, k);
            if w == 0 && k > 0 {
                break;
            }
            total += w * go(i + 1, r, left - k as usize, monos, ways, memo);
            if left == k as usize || deg.iter().zip(r.iter()).any(|(d, x)| d > x) {
                break;
            }
            for (x, d) in r.iter_mut().zip(deg) {
                *x -= d;
            }
            k += 1;
        }
        memo.insert((i, rem, left), total);
        total
    }
    go(0, n.0, p, &monos, &ways, &mut memo)
}

fn zero_weight(table: &GeneratorTable) -> Vec<i64> {
    vec![0i64; table.rank]
}

/// Weight-0 words of sector `(p, n)`.
pub fn weight_zero_words(table: &GeneratorTable, p: usize, n: MultiDegree) -> Vec<SuperMonomial> {
    table.enumerate_words(p, n, Some(&zero_weight(table)))
}

/// Stacked ranks at degree `p`.
pub fn degree_ranks(table: &GeneratorTable, p: usize, n: MultiDegree, cfg: &ArithConfig) -> Result<(DegreeRanks, Vec<u64>)> {
    let domain = weight_zero_words(table, p, n);
    if domain.is_empty() {
        return Ok((DegreeRanks::empty(p), Vec::new()));
    }
    let (r_rows, r_cols) = raising_rows(table, &domain);
    let r = SparseMatrix::from_rows(r_cols, r_rows.clone());
    let cert_r = rank_checked(&r, cfg)?;
    let top = p as u32 >= n.total();
    let (rank_stacked, primes) = if top {
        (cert_r.rank, cert_r.primes.clone())
    } else {
        let (d_rows, d_targets) = differential_rows(table, &domain);
        let stacked: Vec<Vec<(u32, i64)>> = r_rows
            .into_iter()
            .zip(d_rows)
            .map(|(mut a, b)| {
                a.extend(b.into_iter().map(|(c, v)| (c + r_cols as u32, v)));
                a
            })
            .collect();
        let s = SparseMatrix::from_rows(r_cols + d_targets.len(), stacked);
        let cert = rank_checked(&s, cfg)?;
        (cert.rank, cert.primes)
    };
    Ok((DegreeRanks { p, weight_zero: domain.len(), rank_raising: cert_r.rank, rank_stacked }, primes))
}

/// Every sector `(p, n)` with `0 <= p <= |n|`, sharing ranks between neighbouring degrees.
pub fn multidegree_dims(g: &LieAlgebraData, n: MultiDegree, cfg: &ArithConfig) -> Result<Vec<SectorDims>> {
    let table = GeneratorTable::new(g, n);
    let top = n.total() as usize;
    let mut ranks = Vec::with_capacity(top + 1);
    let mut primes: Vec<u64> = Vec::new();
    for p in 0..=top {
        let (r, pr) = degree_ranks(&table, p, n, cfg)?;
        if primes.is_empty() {
            primes = pr;
        }
        ranks.push(r);
    }
    let counts: Vec<u128> = (0..=top).map(|p| count_words(g.dim(), n, p)).collect();
    Ok(assemble(n, &ranks, &counts, &primes))
}

/// A single sector; computes only degrees `p - 1` and `p`.
pub fn sector_dims(g: &LieAlgebraData, p: usize, n: MultiDegree, cfg: &ArithConfig) -> Result<SectorDims> {
    if p as u32 > n.total() {
        return Ok(SectorDims::zero(p, n));
    }
    let table = GeneratorTable::new(g, n);
    let (cur, primes) = degree_ranks(&table, p, n, cfg)?;
    let prev = if p == 0 { DegreeRanks::empty(0) } else { degree_ranks(&table, p - 1, n, cfg)?.0 };
    let inv = cur.dim_invariant();
    let (out, inn) = (cur.rank_d_out(), prev.rank_d_out());
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

/// Basis of the invariant cochains of sector `(p, n)`, exact over `Q`.
pub fn relative_invariants(table: &GeneratorTable, p: usize, n: MultiDegree, cfg: &ArithConfig) -> Result<Vec<Cochain>> {
    let domain = weight_zero_words(table, p, n);
    if domain.is_empty() {
        return Ok(Vec::new());
    }
    let (rows, cols) = raising_rows(table, &domain);
    // Invariants are the row combinations killed by R, i.e. the kernel of R^T.
    let rt = SparseMatrix::from_rows(cols, rows).transpose();
    let rt = if rt.rows == 0 { SparseMatrix::zero(0, domain.len()) } else { rt };
    let basis = nullspace_basis(&rt, cfg)?;
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut c = Cochain::zero();
            for (w, x) in domain.iter().zip(v) {
                c.add_term(w.clone(), x);
            }
            c
        })
        .collect())
}

fn full_action_rows(table: &GeneratorTable, domain: &[SuperMonomial], all: &[usize]) -> (Vec<Vec<(u32, i64)>>, usize) {
    let mut index: HashMap<SuperMonomial, u32> = HashMap::new();
    let mut rows = Vec::with_capacity(domain.len());
    for w in domain {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for (k, &x) in all.iter().enumerate() {
            table.act_word(x, w, |v, nw| {
                let len = index.len() as u32;
                let t = *index.entry(nw).or_insert(len);
                *acc.entry(t * all.len() as u32 + k as u32).or_insert(0) += v;
            });
        }
        let mut row: Vec<(u32, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
        row.sort_unstable();
        rows.push(row);
    }
    let cols = index.len() * all.len();
    (rows, cols)
}

/// Oracle: dimension of the joint kernel of every basis element on the full sector, all
/// weights included.
pub fn full_kernel_dim(table: &GeneratorTable, p: usize, n: MultiDegree, cfg: &ArithConfig) -> Result<usize> {
    let domain = table.enumerate_words(p, n, None);
    if domain.is_empty() {
        return Ok(0);
    }
    let all: Vec<usize> = (0..table.dim).collect();
    let (rows, cols) = full_action_rows(table, &domain, &all);
    let m = SparseMatrix::from_rows(cols, rows);
    Ok(domain.len() - rank_checked(&m, cfg)?.rank)
}

/// Oracle: `dim H^{p;n}` by dense fraction-free elimination over `Z`, using the action of every
/// basis element on weight-0 words.
pub fn dim_h_dense(table: &GeneratorTable, p: usize, n: MultiDegree) -> usize {
    if p as u32 > n.total() {
        return 0;
    }
    let all: Vec<usize> = (0..table.dim).collect();
    let ranks = |q: usize| -> (usize, usize, usize) {
        let domain = weight_zero_words(table, q, n);
        if domain.is_empty() {
            return (0, 0, 0);
        }
        let (a_rows, a_cols) = full_action_rows(table, &domain, &all);
        let (d_rows, d_targets) = differential_rows(table, &domain);
        let width = a_cols + d_targets.len();
        let mut a_dense = vec![vec![0i64; a_cols.max(1)]; domain.len()];
        let mut s_dense = vec![vec![0i64; width.max(1)]; domain.len()];
        for (i, row) in a_rows.iter().enumerate() {
            for &(c, v) in row {
                a_dense[i][c as usize] = v;
                s_dense[i][c as usize] = v;
            }
        }
        for (i, row) in d_rows.iter().enumerate() {
            for &(c, v) in row {
                s_dense[i][a_cols + c as usize] = v;
            }
        }
        (domain.len(), dense_rank_exact(&a_dense), dense_rank_exact(&s_dense))
    };
    let (w, ra, rs) = ranks(p);
    let out = rs - ra;
    let inn = if p == 0 {
        0
    } else {
        let (_, ra0, rs0) = ranks(p - 1);
        rs0 - ra0
    };
    w - ra - out - inn
}

/// Integer coordinates of a cochain, `None` if a coefficient is not integral or too large.
pub fn integer_vector(c: &Cochain, index: &HashMap<SuperMonomial, u32>, len: usize) -> Option<Vec<i64>> {
    let mut v = vec![0i64; len];
    for (w, x) in &c.terms {
        if !x.is_integer() {
            return None;
        }
        v[*index.get(w)? as usize] = x.to_integer().to_i64()?;
    }
    Some(v)
}

/// Clears denominators of a rational vector.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::from(1), |a, x| num_integer::Integer::lcm(&a, x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{differential, enumerate_basis, g_action};
    use crate::liealg::build_algebra;

    fn alg(s: &str) -> LieAlgebraData {
        build_algebra(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_sl2_sectors() {
        let g = alg("sl2");
        let cfg = ArithConfig::default();
        let n0 = MultiDegree::ZERO;
        assert_eq!(sector_dims(&g, 0, n0, &cfg).unwrap().dim_h, 1);
        let n = MultiDegree([0, 0, 1, 1, 0]);
        assert_eq!(sector_dims(&g, 2, n, &cfg).unwrap().dim_h, 1);
        assert_eq!(sector_dims(&g, 3, n, &cfg).unwrap().dim_h, 0);
        assert_eq!(sector_dims(&g, 1, MultiDegree([0, 0, 1, 0, 0]), &cfg).unwrap().dim_h, 0);
    }

    #[test]
    fn counts_match_enumeration() {
        let g = alg("sl3");
        let n = MultiDegree([1, 0, 2, 1, 0]);
        let t = GeneratorTable::new(&g, n);
        for p in 0..=4 {
            assert_eq!(count_words(g.dim(), n, p), enumerate_basis(&t, p, n).len() as u128, "p = {p}");
        }
    }

    #[test]
    fn invariants_match_full_kernel() {
        let cfg = ArithConfig::default();
        for (s, n) in [("sl2", [0, 0, 2, 1, 0]), ("so5", [1, 0, 1, 1, 0]), ("gl2", [0, 1, 1, 1, 0])] {
            let g = alg(s);
            let n = MultiDegree(n);
            let t = GeneratorTable::new(&g, n);
            for p in 0..=n.total() as usize {
                let inv = relative_invariants(&t, p, n, &cfg).unwrap();
                assert_eq!(inv.len(), full_kernel_dim(&t, p, n, &cfg).unwrap(), "{s} p={p}");
                for c in &inv {
                    for x in 0..g.dim() {
                        assert!(g_action(&t, x, c).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn killing_invariant_sector() {
        let g = alg("sl2");
        let n = MultiDegree([0, 0, 1, 1, 0]);
        let t = GeneratorTable::new(&g, n);
        let cfg = ArithConfig::default();
        assert!(relative_invariants(&t, 1, MultiDegree([0, 0, 1, 0, 0]), &cfg).unwrap().is_empty());
        let inv = relative_invariants(&t, 2, n, &cfg).unwrap();
        assert_eq!(inv.len(), 1);
        assert!(differential(&t, &inv[0]).is_zero());
        assert_eq!(relative_invariants(&t, 0, MultiDegree::ZERO, &cfg).unwrap().len(), 1);
    }

    #[test]
    fn euler_characteristic_and_dense_oracle() {
        let g = alg("sl2");
        let cfg = ArithConfig::default();
        for n in [[0, 0, 2, 1, 1], [1, 1, 1, 0, 0], [0, 2, 1, 1, 0]] {
            let n = MultiDegree(n);
            let dims = multidegree_dims(&g, n, &cfg).unwrap();
            let chi_inv: i64 = dims.iter().map(|d| if d.p % 2 == 0 { 1 } else { -1 } * d.dim_invariant as i64).sum();
            let chi_h: i64 = dims.iter().map(|d| if d.p % 2 == 0 { 1 } else { -1 } * d.dim_h as i64).sum();
            assert_eq!(chi_inv, chi_h);
            let t = GeneratorTable::new(&g, n);
            for d in &dims {
                assert_eq!(d.dim_h, dim_h_dense(&t, d.p, n), "n = {n}, p = {}", d.p);
            }
        }
    }
}
