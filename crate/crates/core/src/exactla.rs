//! Exact linear algebra: sparse elimination over prime fields with Markowitz-style pivoting,
//! multi-prime rank certificates, dense modular and fraction-free oracles, and multimodular
//! rational solving with exact verification.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{RelcohError, Result};
use crate::field::{select_primes, PrimeField};

/// Sparse integer matrix stored by rows; every row is sorted by column with no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix::from_rows(n, (0..n).map(|i| vec![(i as u32, 1)]).collect())
    }

    /// Builds from unsorted rows, merging duplicates and dropping zeros.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(u32, i64)>>) -> Self {
        let mut m = SparseMatrix::new(cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut data = vec![Vec::new(); rows];
        for &(r, c, v) in entries {
            data[r].push((c as u32, v));
        }
        SparseMatrix::from_rows(cols, data)
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let cols = dense.first().map_or(0, |r| r.len());
        SparseMatrix::from_rows(
            cols,
            dense
                .iter()
                .map(|r| r.iter().enumerate().map(|(j, &v)| (j as u32, v)).collect())
                .collect(),
        )
    }

    pub fn push_row(&mut self, mut row: Vec<(u32, i64)>) {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!((c as usize) < self.cols, "column {c} out of range");
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.data.push(merged);
        self.rows += 1;
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.data[i]
    }

    pub fn row_slices(&self) -> &[Vec<(u32, i64)>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    /// Coordinate-format view `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(c, v)| (i, c as usize, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for &(c, v) in r {
                data[c as usize].push((i as u32, v));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }

    pub fn reduce(&self, f: &PrimeField) -> Vec<Vec<(u32, u64)>> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(c, v)| (c, f.from_i64(v)))
                    .filter(|e| e.1 != 0)
                    .collect()
            })
            .collect()
    }

    /// `M v` over the rationals.
    pub fn mul_vec_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.data
            .iter()
            .map(|r| {
                r.iter().fold(BigRational::zero(), |acc, &(c, x)| {
                    acc + &v[c as usize] * BigRational::from_integer(BigInt::from(x))
                })
            })
            .collect()
    }
}

/// Outcome of a multi-prime rank computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub primes: Vec<u64>,
    /// All primes produced the same rank.
    pub agreement: bool,
}

/// How many primes to use, where to draw them from, and whether to certify over `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithConfig {
    pub seed: u64,
    pub num_primes: usize,
    pub max_retries: usize,
    pub certify: bool,
}

impl Default for ArithConfig {
    fn default() -> Self {
        ArithConfig { seed: 0x0dd_c0c4a1, num_primes: 2, max_retries: 3, certify: false }
    }
}

impl ArithConfig {
    /// Primes for attempt `k` (0 is the first try).
    pub fn primes(&self, attempt: usize) -> Vec<u64> {
        let all = select_primes(self.seed, self.num_primes * (attempt + 1));
        all[self.num_primes * attempt..].to_vec()
    }
}

type ModRow = Vec<(u32, u64)>;

/// `a - f * b` on sorted sparse rows.
fn axpy(f: &PrimeField, a: &[(u32, u64)], factor: u64, b: &[(u32, u64)]) -> ModRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = f.neg(f.mul(factor, b[j].1));
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.sub_mul(a[i].1, factor, b[j].1);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &[(u32, u64)], col: u32) -> Option<u64> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| row[k].1)
}

/// Result of a sparse elimination: pivot rows in elimination order.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    /// `(original row index, pivot column, reduced row)`.
    pub pivots: Vec<(u32, u32, ModRow)>,
    /// Rows that reduced to zero (original indices).
    pub dependent: Vec<u32>,
    /// Columns at or beyond this index are never chosen as pivots (augmented right-hand sides).
    pub pivot_limit: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn order(&self) -> Vec<(u32, u32)> {
        self.pivots.iter().map(|(r, c, _)| (*r, *c)).collect()
    }
}

/// Sparse Gaussian elimination mod `p`.
///
/// Pivot rule: the active row with fewest entries, then within it the column with fewest
/// active entries; ties go to the lowest column, then the lowest row. When `order` is given
/// the recorded `(row, col)` sequence is replayed instead, and `None` is returned if a
/// replayed pivot vanishes modulo this prime.
pub fn eliminate(
    f: &PrimeField,
    rows: Vec<ModRow>,
    cols: usize,
    pivot_limit: usize,
    order: Option<&[(u32, u32)]>,
) -> Option<Echelon> {
    let mut rows: Vec<Option<ModRow>> = rows.into_iter().map(Some).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    let mut col_count: Vec<u32> = vec![0; cols];
    let mut heap = BinaryHeap::new();
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_ref().unwrap();
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
            col_count[c as usize] += 1;
        }
        heap.push(Reverse((pivot_len(r, pivot_limit), i as u32)));
    }
    let mut pivots = Vec::new();
    let mut dependent = Vec::new();
    let mut replay = order.map(|o| o.iter());

    loop {
        let (r, c) = if let Some(it) = replay.as_mut() {
            match it.next() {
                Some(&(r, c)) => {
                    let row = rows[r as usize].as_ref()?;
                    entry(row, c)?;
                    (r, c)
                }
                None => break,
            }
        } else {
            let Some(Reverse((len, r))) = heap.pop() else { break };
            let Some(row) = rows[r as usize].as_ref() else { continue };
            if pivot_len(row, pivot_limit) != len {
                continue;
            }
            if len == 0 {
                dependent.push(r);
                rows[r as usize] = None;
                continue;
            }
            let c = row
                .iter()
                .filter(|e| (e.0 as usize) < pivot_limit)
                .min_by_key(|e| (col_count[e.0 as usize], e.0))
                .unwrap()
                .0;
            (r, c)
        };
        let prow = rows[r as usize].take().unwrap();
        for &(cc, _) in &prow {
            col_count[cc as usize] -= 1;
        }
        let pv = entry(&prow, c).unwrap();
        let pinv = f.inv(pv);
        let targets = core::mem::take(&mut col_rows[c as usize]);
        for t in targets {
            let Some(trow) = rows[t as usize].as_ref() else { continue };
            let Some(tv) = entry(trow, c) else { continue };
            let factor = f.mul(tv, pinv);
            let new = axpy(f, trow, factor, &prow);
            // Column bookkeeping: merge walk of old vs new support.
            let old = rows[t as usize].take().unwrap();
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                if j == new.len() || (i < old.len() && old[i].0 < new[j].0) {
                    col_count[old[i].0 as usize] -= 1;
                    i += 1;
                } else if i == old.len() || new[j].0 < old[i].0 {
                    col_count[new[j].0 as usize] += 1;
                    col_rows[new[j].0 as usize].push(t);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
            if replay.is_none() {
                heap.push(Reverse((pivot_len(&new, pivot_limit), t)));
            }
            rows[t as usize] = Some(new);
        }
        pivots.push((r, c, prow));
    }
    if replay.is_some() {
        for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                if pivot_len(r, pivot_limit) > 0 {
                    // The replayed order did not exhaust the rank: structure differs.
                    return None;
                }
                dependent.push(i as u32);
            }
        }
    }
    dependent.sort_unstable();
    Some(Echelon { cols, pivots, dependent, pivot_limit })
}

fn pivot_len(row: &[(u32, u64)], limit: usize) -> usize {
    row.iter().take_while(|e| (e.0 as usize) < limit).count()
}

/// Rank of `m` modulo one prime.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let f = PrimeField::new(p);
    eliminate(&f, m.reduce(&f), m.cols, m.cols, None).unwrap().rank()
}

/// Rank modulo each prime, with the agreement flag.
pub fn rank(m: &SparseMatrix, primes: &[u64]) -> RankCertificate {
    #[cfg(feature = "parallel")]
    let ranks: Vec<usize> = {
        use rayon::prelude::*;
        primes.par_iter().map(|&p| rank_mod_p(m, p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let ranks: Vec<usize> = primes.iter().map(|&p| rank_mod_p(m, p)).collect();
    let agreement = ranks.windows(2).all(|w| w[0] == w[1]);
    RankCertificate {
        rank: ranks.iter().copied().max().unwrap_or(0),
        primes: primes.to_vec(),
        agreement,
    }
}

/// Rank with retries on cross-prime disagreement; a hard error once retries are exhausted.
pub fn rank_checked(m: &SparseMatrix, cfg: &ArithConfig) -> Result<RankCertificate> {
    if m.rows == 0 || m.cols == 0 || m.nnz() == 0 {
        return Ok(RankCertificate { rank: 0, primes: cfg.primes(0), agreement: true });
    }
    for attempt in 0..=cfg.max_retries {
        let cert = rank(m, &cfg.primes(attempt));
        if cert.agreement {
            return Ok(cert);
        }
    }
    Err(RelcohError::Disagreement(alloc::format!(
        "rank of a {}x{} matrix disagrees across primes after {} retries",
        m.rows,
        m.cols,
        cfg.max_retries
    )))
}

/// Basis of the right kernel `{v : M v = 0}` modulo `p`, one vector per free column.
pub fn nullspace_mod_p(m: &SparseMatrix, p: u64) -> Vec<Vec<u64>> {
    let f = PrimeField::new(p);
    let ech = eliminate(&f, m.reduce(&f), m.cols, m.cols, None).unwrap();
    kernel_from_echelon(&f, &ech)
}

fn kernel_from_echelon(f: &PrimeField, ech: &Echelon) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![false; ech.cols];
    for (_, c, _) in &ech.pivots {
        is_pivot[*c as usize] = true;
    }
    (0..ech.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u64; ech.cols];
            x[free] = 1;
            back_substitute(f, ech, &mut x);
            x
        })
        .collect()
}

/// Fills pivot variables of `x` so that every pivot row annihilates `x`.
fn back_substitute(f: &PrimeField, ech: &Echelon, x: &mut [u64]) {
    for (_, c, row) in ech.pivots.iter().rev() {
        let mut acc = 0u64;
        let mut pv = 0u64;
        for &(j, v) in row {
            if j == *c {
                pv = v;
            } else {
                acc = f.add(acc, f.mul(v, x[j as usize]));
            }
        }
        x[*c as usize] = f.neg(f.mul(acc, f.inv(pv)));
    }
}

/// Particular solution of `A x = b` modulo `p` with free variables zero. Returns the
/// elimination order for replay on further primes.
fn solve_mod_p(
    f: &PrimeField,
    a: &SparseMatrix,
    b: &[i64],
    order: Option<&[(u32, u32)]>,
) -> Option<core::result::Result<(Vec<u64>, Vec<(u32, u32)>), ()>> {
    // Rows of A are equations; the right-hand side rides along in column `cols`.
    let n = a.cols;
    let mut rows = a.reduce(f);
    for (r, &bv) in rows.iter_mut().zip(b) {
        let v = f.from_i64(bv);
        if v != 0 {
            r.push((n as u32, v));
        }
    }
    let ech = eliminate(f, rows, n + 1, n, order)?;
    // Inconsistency shows up as a nonzero residual.
    let mut x = vec![0u64; n + 1];
    x[n] = f.neg(1);
    back_substitute(f, &ech, &mut x);
    x.truncate(n);
    let residual_ok = a.row_slices().iter().zip(b).all(|(row, &bv)| {
        let s = row
            .iter()
            .fold(0u64, |acc, &(c, v)| f.add(acc, f.mul(f.from_i64(v), x[c as usize])));
        s == f.from_i64(bv)
    });
    if !residual_ok {
        return Some(Err(()));
    }
    Some(Ok((x, ech.order())))
}

/// Rational reconstruction of `a mod m`: `n/d` with `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Incremental Chinese remaindering of residue vectors.
struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    fn add(&mut self, p: u64, residues: &[u64]) {
        let pb = BigInt::from(p);
        let f = PrimeField::new(p);
        let m_mod_p = f.from_bigint(&self.modulus);
        let inv = f.inv(m_mod_p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v' = v + M * ((r - v) / M mod p)
            let vp = f.from_bigint(v);
            let k = f.mul(f.sub(r, vp), inv);
            *v += &self.modulus * BigInt::from(k);
        }
        self.modulus *= pb;
    }

    fn reconstruct(&self) -> Option<Vec<BigRational>> {
        self.values.iter().map(|v| rational_reconstruct(v, &self.modulus)).collect()
    }
}

/// Exact rational solution of `A x = b` (free variables zero), found by solving modulo a
/// growing list of primes, Chinese remaindering and rational reconstruction, and accepted
/// only after exact verification. `Ok(None)` means the system is inconsistent.
pub fn solve_rational(
    a: &SparseMatrix,
    b: &[i64],
    cfg: &ArithConfig,
    max_primes: usize,
) -> Result<Option<Vec<BigRational>>> {
    assert_eq!(a.rows, b.len());
    let primes = select_primes(cfg.seed ^ 0x501e, max_primes);
    let mut crt = Crt::new(a.cols);
    let mut order: Option<Vec<(u32, u32)>> = None;
    let mut inconsistent_votes = 0;
    let mut used = 0;
    let mut next_check = 1;
    for &p in &primes {
        let f = PrimeField::new(p);
        match solve_mod_p(&f, a, b, order.as_deref()) {
            None => continue, // unlucky prime for the recorded pivot order
            Some(Err(())) => {
                inconsistent_votes += 1;
                if order.is_none() && inconsistent_votes >= 2 {
                    return Ok(None);
                }
                continue;
            }
            Some(Ok((x, ord))) => {
                if order.is_none() {
                    order = Some(ord);
                }
                crt.add(p, &x);
                used += 1;
            }
        }
        if used >= next_check {
            next_check = used + 1 + used / 4;
            if let Some(sol) = crt.reconstruct() {
                let lhs = a.mul_vec_rational(&sol);
                let ok = lhs
                    .iter()
                    .zip(b)
                    .all(|(l, &bv)| *l == BigRational::from_integer(BigInt::from(bv)));
                if ok {
                    return Ok(Some(sol));
                }
            }
        }
    }
    if inconsistent_votes > 0 && used == 0 {
        return Ok(None);
    }
    Err(RelcohError::Disagreement(alloc::format!(
        "rational reconstruction did not stabilize within {max_primes} primes"
    )))
}

/// Membership test for the column span of `m`, decided modulo every prime of `cfg`.
pub fn in_span_mod(m: &SparseMatrix, v: &[i64], cfg: &ArithConfig) -> Result<bool> {
    let rows_t = m.transpose();
    let mut aug = rows_t.clone();
    aug.push_row(v.iter().enumerate().map(|(i, &x)| (i as u32, x)).collect());
    for attempt in 0..=cfg.max_retries {
        let primes = cfg.primes(attempt);
        let verdicts: Vec<bool> = primes
            .iter()
            .map(|&p| rank_mod_p(&rows_t, p) == rank_mod_p(&aug, p))
            .collect();
        if verdicts.windows(2).all(|w| w[0] == w[1]) {
            return Ok(verdicts[0]);
        }
    }
    Err(RelcohError::Disagreement("span membership disagrees across primes".into()))
}

/// Exact certificate for a span verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum SpanCertificate {
    /// `m x = v`.
    Member(Vec<BigRational>),
    /// `y^T m = 0` and `y^T v = 1`.
    NonMember(Vec<BigRational>),
}

/// Column-span membership with an exact rational certificate either way.
pub fn in_span_certified(
    m: &SparseMatrix,
    v: &[i64],
    cfg: &ArithConfig,
    max_primes: usize,
) -> Result<(bool, SpanCertificate)> {
    let verdict = in_span_mod(m, v, cfg)?;
    if verdict {
        let x = solve_rational(m, v, cfg, max_primes)?
            .ok_or_else(|| RelcohError::Disagreement("modular membership not certified".into()))?;
        Ok((true, SpanCertificate::Member(x)))
    } else {
        // [m^T; v^T] y = e_last
        let mut sys = m.transpose();
        sys.push_row(v.iter().enumerate().map(|(i, &x)| (i as u32, x)).collect());
        let mut rhs = vec![0i64; sys.rows];
        *rhs.last_mut().unwrap() = 1;
        let y = solve_rational(&sys, &rhs, cfg, max_primes)?.ok_or_else(|| {
            RelcohError::Disagreement("modular non-membership not certified".into())
        })?;
        Ok((false, SpanCertificate::NonMember(y)))
    }
}

/// Column-span membership; a `true` verdict is certified over `Q` when `cfg.certify` is set.
pub fn in_span(m: &SparseMatrix, v: &[i64], cfg: &ArithConfig) -> Result<bool> {
    if cfg.certify {
        Ok(in_span_certified(m, v, cfg, 4096)?.0)
    } else {
        in_span_mod(m, v, cfg)
    }
}

/// Rational kernel basis of `m`, one vector per free column of a modular elimination,
/// reconstructed from several primes and verified exactly.
pub fn nullspace_basis(m: &SparseMatrix, cfg: &ArithConfig) -> Result<Vec<Vec<BigRational>>> {
    let primes = select_primes(cfg.seed ^ 0x4e11, 512);
    let mut order: Option<Vec<(u32, u32)>> = None;
    let mut crts: Vec<Crt> = Vec::new();
    let mut used = 0;
    for &p in &primes {
        let f = PrimeField::new(p);
        let Some(ech) = eliminate(&f, m.reduce(&f), m.cols, m.cols, order.as_deref()) else {
            continue;
        };
        let kernel = kernel_from_echelon(&f, &ech);
        if order.is_none() {
            order = Some(ech.order());
            crts = (0..kernel.len()).map(|_| Crt::new(m.cols)).collect();
        }
        if kernel.len() != crts.len() {
            continue;
        }
        for (c, k) in crts.iter_mut().zip(&kernel) {
            c.add(p, k);
        }
        used += 1;
        if used >= 2 {
            let recon: Option<Vec<Vec<BigRational>>> = crts.iter().map(|c| c.reconstruct()).collect();
            if let Some(vs) = recon {
                if vs.iter().all(|v| m.mul_vec_rational(v).iter().all(|x| x.is_zero())) {
                    return Ok(vs);
                }
            }
        }
    }
    Err(RelcohError::Disagreement("kernel reconstruction did not stabilize".into()))
}

/// Dense row echelon form modulo a prime, grown one row at a time.
#[derive(Clone, Debug)]
pub struct DenseEchelon {
    f: PrimeField,
    cols: usize,
    /// Normalized pivot rows (pivot entry 1) with their pivot column.
    rows: Vec<(usize, Vec<u64>)>,
    pivot_of_col: Vec<Option<usize>>,
}

impl DenseEchelon {
    pub fn new(p: u64, cols: usize) -> Self {
        DenseEchelon {
            f: PrimeField::new(p),
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Pivot coordinates in insertion order. Restricted to these coordinates the span is
    /// still injective, so they index an independent set of the underlying rows.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    /// Reduces `v` against the current pivots in place; returns whether anything survives.
    pub fn reduce(&self, v: &mut [u64]) -> bool {
        let f = &self.f;
        let mut nonzero = false;
        for c in 0..self.cols {
            if v[c] == 0 {
                continue;
            }
            if let Some(k) = self.pivot_of_col[c] {
                let factor = v[c];
                let row = &self.rows[k].1;
                for j in c..self.cols {
                    if row[j] != 0 {
                        v[j] = f.sub_mul(v[j], factor, row[j]);
                    }
                }
            } else {
                nonzero = true;
            }
        }
        nonzero
    }

    /// Inserts `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols);
        if !self.reduce(&mut v) {
            return false;
        }
        let c = v.iter().position(|&x| x != 0).unwrap();
        let inv = self.f.inv(v[c]);
        for x in v.iter_mut() {
            *x = self.f.mul(*x, inv);
        }
        self.pivot_of_col[c] = Some(self.rows.len());
        self.rows.push((c, v));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        !self.reduce(&mut w)
    }
}

/// Rank of a dense matrix modulo `p`.
pub fn dense_rank_mod_p(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let f = PrimeField::new(p);
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][c]);
        let prow: Vec<u64> = m[rank].iter().map(|&x| f.mul(x, inv)).collect();
        let tail: Vec<usize> = (c..cols).filter(|&j| prow[j] != 0).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for &j in &tail {
                row[j] = f.sub_mul(row[j], factor, prow[j]);
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

/// Exact rank over `Q` by fraction-free (Bareiss) elimination. Intended as an oracle for
/// small matrices.
pub fn dense_rank_exact(dense: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> =
        dense.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rational kernel of a small dense matrix by reduced row echelon form.
pub fn dense_nullspace_exact(dense: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = dense
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[k][free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn cfg() -> ArithConfig {
        ArithConfig::default()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: u32) -> SparseMatrix {
        let mut m = SparseMatrix::new(cols);
        for _ in 0..rows {
            let mut row = Vec::new();
            for c in 0..cols {
                if rng.next_u32() % 100 < density {
                    row.push((c as u32, (rng.next_u32() % 7) as i64 - 3));
                }
            }
            m.push_row(row);
        }
        m
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(rank_checked(&SparseMatrix::identity(5), &cfg()).unwrap().rank, 5);
        assert_eq!(rank_checked(&SparseMatrix::zero(4, 6), &cfg()).unwrap().rank, 0);
        assert!(nullspace_basis(&SparseMatrix::identity(4), &cfg()).unwrap().is_empty());
        assert_eq!(nullspace_basis(&SparseMatrix::zero(3, 3), &cfg()).unwrap().len(), 3);
    }

    #[test]
    fn random_matches_fraction_free_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            // Low-rank products exercise dependent rows.
            let k = 1 + trial % 12;
            let a = random_matrix(&mut rng, 20, k, 60).to_dense();
            let b = random_matrix(&mut rng, k, 30, 60).to_dense();
            let prod: Vec<Vec<i64>> = (0..20)
                .map(|i| (0..30).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
                .collect();
            let m = SparseMatrix::from_dense(&prod);
            let cert = rank_checked(&m, &cfg()).unwrap();
            assert!(cert.agreement);
            assert_eq!(cert.rank, dense_rank_exact(&prod));
            assert_eq!(cert.rank, rank_checked(&m.transpose(), &cfg()).unwrap().rank);
            let p = cert.primes[0];
            let dense_mod: Vec<Vec<u64>> = m
                .reduce(&PrimeField::new(p))
                .iter()
                .map(|r| {
                    let mut d = vec![0u64; 30];
                    for &(c, v) in r {
                        d[c as usize] = v;
                    }
                    d
                })
                .collect();
            assert_eq!(dense_rank_mod_p(&dense_mod, 30, p), cert.rank);
        }
    }

    #[test]
    fn rank_one_nullspace_verifies() {
        let u = [1i64, -2, 3, 5];
        let v = [2i64, 1, 0, -1];
        let dense: Vec<Vec<i64>> = u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
        let m = SparseMatrix::from_dense(&dense);
        let ker = nullspace_basis(&m, &cfg()).unwrap();
        assert_eq!(ker.len(), 3);
        for k in &ker {
            assert!(m.mul_vec_rational(k).iter().all(|x| x.is_zero()));
        }
        assert_eq!(dense_nullspace_exact(&dense, 4).len(), 3);
    }

    #[test]
    fn span_membership() {
        let m = SparseMatrix::from_dense(&[vec![1, 0], vec![0, 2], vec![0, 0]]);
        assert!(in_span(&m, &[1, 0, 0], &cfg()).unwrap());
        assert!(!in_span(&m, &[0, 0, 1], &cfg()).unwrap());
        let (yes, cert) = in_span_certified(&m, &[3, 4, 0], &cfg(), 64).unwrap();
        assert!(yes);
        let SpanCertificate::Member(x) = cert else { panic!() };
        assert_eq!(x[1], BigRational::from_integer(2.into()));
        let (no, cert) = in_span_certified(&m, &[0, 1, 7], &cfg(), 64).unwrap();
        assert!(!no);
        let SpanCertificate::NonMember(y) = cert else { panic!() };
        let yt = m.transpose().mul_vec_rational(&y);
        assert!(yt.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rational_solution_with_fractions() {
        // 3x + 7y = 1, 5x - 2y = 4
        let a = SparseMatrix::from_dense(&[vec![3, 7], vec![5, -2]]);
        let x = solve_rational(&a, &[1, 4], &cfg(), 64).unwrap().unwrap();
        assert_eq!(x[0], BigRational::new(30.into(), 41.into()));
        assert_eq!(x[1], BigRational::new((-7).into(), 41.into()));
        let inconsistent = SparseMatrix::from_dense(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(solve_rational(&inconsistent, &[1, 3], &cfg(), 64).unwrap(), None);
    }

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let q = BigRational::new((-1234).into(), 5678.into());
        let a = (q.numer() * q.denom().modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(q));
    }

    #[test]
    fn incremental_dense_echelon() {
        let p = select_primes(1, 1)[0];
        let mut e = DenseEchelon::new(p, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![2, 5, 7]));
        assert!(e.contains(&[1, 3, 4]));
        assert_eq!(e.rank(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn rank_transpose_and_kernel(seed in 0u64..10_000, rows in 1usize..15, cols in 1usize..15) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&mut rng, rows, cols, 30);
            let r = rank_checked(&m, &cfg()).unwrap().rank;
            prop_assert_eq!(r, rank_checked(&m.transpose(), &cfg()).unwrap().rank);
            prop_assert_eq!(r, dense_rank_exact(&m.to_dense()));
            let p = select_primes(3, 1)[0];
            let ker = nullspace_mod_p(&m, p);
            prop_assert_eq!(ker.len(), cols - r);
            let f = PrimeField::new(p);
            for k in &ker {
                for row in m.row_slices() {
                    let s = row.iter().fold(0u64, |acc, &(c, v)| f.add(acc, f.mul(f.from_i64(v), k[c as usize])));
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }
}
