//! Classical reductive Lie algebras as explicit matrix algebras.
//!
//! Orthogonal and symplectic algebras use an antidiagonal invariant form, so the Cartan
//! subalgebra is diagonal and every basis element is an elementary weight vector.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RelcohError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    GL,
    SL,
    SO,
    SP,
}

/// A member of a classical series. `size` is the dimension of the defining representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieAlgebraSpec {
    pub series: Series,
    pub size: usize,
}

impl LieAlgebraSpec {
    pub fn new(series: Series, size: usize) -> Result<Self, RelcohError> {
        let spec = LieAlgebraSpec { series, size };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RelcohError> {
        if self.size == 0 {
            return Err(RelcohError::InvalidSpec("size must be positive".into()));
        }
        if self.series == Series::SP && self.size % 2 == 1 {
            return Err(RelcohError::InvalidSpec(alloc::format!(
                "sp needs an even size, got {}",
                self.size
            )));
        }
        Ok(())
    }

    /// Rank of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        match self.series {
            Series::GL => self.size,
            Series::SL => self.size - 1,
            Series::SO | Series::SP => self.size / 2,
        }
    }

    pub fn dim(&self) -> usize {
        let n = self.size;
        match self.series {
            Series::GL => n * n,
            Series::SL => n * n - 1,
            Series::SO => n * (n - 1) / 2,
            Series::SP => n * (n + 1) / 2,
        }
    }

    pub fn weyl_order(&self) -> usize {
        let k = self.size / 2;
        let fact = |m: usize| (1..=m).product::<usize>();
        match self.series {
            Series::GL | Series::SL => fact(self.size),
            Series::SP => (1 << k) * fact(k),
            Series::SO if self.size % 2 == 1 => (1 << k) * fact(k),
            Series::SO => {
                if k == 0 {
                    1
                } else {
                    (1 << (k - 1)) * fact(k)
                }
            }
        }
    }
}

impl fmt::Display for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.series {
            Series::GL => "gl",
            Series::SL => "sl",
            Series::SO => "so",
            Series::SP => "sp",
        };
        write!(f, "{s}{}", self.size)
    }
}

impl FromStr for LieAlgebraSpec {
    type Err = RelcohError;

    /// Accepts `sl2`, `gl3`, `so7`, `sp6` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || RelcohError::InvalidSpec(alloc::format!("cannot parse algebra {s:?}"));
        if lower.len() < 3 {
            return Err(bad());
        }
        let (head, tail) = lower.split_at(2);
        let series = match head {
            "gl" => Series::GL,
            "sl" => Series::SL,
            "so" => Series::SO,
            "sp" => Series::SP,
            _ => return Err(bad()),
        };
        let size = tail.parse::<usize>().map_err(|_| bad())?;
        LieAlgebraSpec::new(series, size)
    }
}

impl Serialize for LieAlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LieAlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub n: usize,
    pub data: Vec<i64>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, data: vec![0; n * n] }
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zero(n);
        m.data[i * n + j] = 1;
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        let ab = self.mul(other);
        let ba = other.mul(self);
        Mat {
            n: self.n,
            data: ab.data.iter().zip(&ba.data).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(move |(k, &v)| (k / n, k % n, v))
    }
}

/// Role of a basis element in the root decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisRole {
    Cartan,
    Positive { height: u32 },
    Negative { height: u32 },
}

/// Immutable data of one classical Lie algebra.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub spec: LieAlgebraSpec,
    /// Defining-representation matrices `T_a`.
    pub basis: Vec<Mat>,
    pub roles: Vec<BasisRole>,
    /// `structure[a * dim + b]` lists `(c, f_{ab}^c)` with nonzero coefficient.
    structure: Vec<Vec<(usize, i64)>>,
    pub cartan_indices: Vec<usize>,
    pub simple_raising: Vec<usize>,
    pub simple_lowering: Vec<usize>,
    /// Integer weight of each basis element under the Cartan basis.
    pub weights: Vec<Vec<i64>>,
    /// Weyl group as integer matrices on Cartan coordinates: `w(h)` has coordinates `M u`.
    pub weyl_group: Vec<Vec<i64>>,
    /// Left inverse of the basis, used to decompose traceless matrices.
    coords: Vec<Vec<Ratio<i64>>>,
}

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.cartan_indices.len()
    }

    pub fn rep_dim(&self) -> usize {
        self.spec.size
    }

    /// Nonzero structure constants `f_{ab}^c`.
    #[inline]
    pub fn structure(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.structure[a * self.dim() + b]
    }

    /// Bracket of two elements given by coordinates.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let d = self.dim();
        let mut out = vec![0i64; d];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                for &(c, f) in self.structure(a, b) {
                    out[c] += xa * yb * f;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, a: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[a] = 1;
        v
    }

    /// Matrix of `ad(T_a)` on the adjoint basis: column `b` holds `[T_a, T_b]`.
    pub fn adjoint_action_matrix(&self, a: usize) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut m = vec![vec![0i64; d]; d];
        for b in 0..d {
            for &(c, f) in self.structure(a, b) {
                m[c][b] = f;
            }
        }
        m
    }

    /// Coordinates of a matrix known to lie in the algebra; `None` if it does not.
    pub fn decompose(&self, m: &Mat) -> Option<Vec<Ratio<i64>>> {
        let out: Vec<Ratio<i64>> = self
            .coords
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&m.data)
                    .fold(Ratio::zero(), |acc, (r, &v)| acc + *r * Ratio::from_integer(v))
            })
            .collect();
        let mut back = Mat::zero(m.n);
        for (a, c) in out.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, v) in self.basis[a].entries() {
                let cur = Ratio::from_integer(back.get(i, j));
                let val = cur + *c * Ratio::from_integer(v);
                if !val.is_integer() {
                    return None;
                }
                back.set(i, j, val.to_integer());
            }
        }
        let recon_ok = out.iter().all(|c| c.is_integer()) && back == *m;
        if recon_ok {
            Some(out)
        } else {
            None
        }
    }

    /// `Tr(T_a T_b)` in the defining representation.
    pub fn trace_form(&self, a: usize, b: usize) -> i64 {
        self.basis[a].mul(&self.basis[b]).trace()
    }

    /// Position of basis element `a` in the Cartan block, if any.
    pub fn cartan_position(&self, a: usize) -> Option<usize> {
        self.cartan_indices.iter().position(|&c| c == a)
    }

    pub fn name(&self, a: usize) -> String {
        match self.roles[a] {
            BasisRole::Cartan => alloc::format!("h{}", self.cartan_position(a).unwrap()),
            BasisRole::Positive { .. } => alloc::format!("e{a}"),
            BasisRole::Negative { .. } => alloc::format!("f{a}"),
        }
    }
}

fn invariant_form(spec: &LieAlgebraSpec) -> Option<Mat> {
    let n = spec.size;
    match spec.series {
        Series::GL | Series::SL => None,
        Series::SO => {
            let mut j = Mat::zero(n);
            for i in 0..n {
                j.set(i, n - 1 - i, 1);
            }
            Some(j)
        }
        Series::SP => {
            let mut j = Mat::zero(n);
            for i in 0..n {
                j.set(i, n - 1 - i, if i < n / 2 { 1 } else { -1 });
            }
            Some(j)
        }
    }
}

/// Builds the algebra together with all derived tables, checking closure, Jacobi and
/// Weyl group order along the way.
pub fn build_algebra(spec: LieAlgebraSpec) -> Result<LieAlgebraData, RelcohError> {
    spec.validate()?;
    let n = spec.size;
    let mut cartan: Vec<Mat> = Vec::new();
    let mut roots: Vec<Mat> = Vec::new();

    match invariant_form(&spec) {
        None => {
            for i in 0..n.saturating_sub(1) {
                let mut h = Mat::zero(n);
                h.set(i, i, 1);
                h.set(i + 1, i + 1, -1);
                cartan.push(h);
            }
            if spec.series == Series::GL {
                let mut id = Mat::zero(n);
                for i in 0..n {
                    id.set(i, i, 1);
                }
                cartan.push(id);
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        roots.push(Mat::unit(n, i, j));
                    }
                }
            }
        }
        Some(form) => {
            // X in the algebra iff X = -J^{-1} X^T J; project E_ij onto it.
            let jinv = match spec.series {
                Series::SO => form.clone(),
                _ => Mat { n, data: form.data.iter().map(|v| -v).collect() },
            };
            for i in 0..n / 2 {
                let mut h = Mat::zero(n);
                h.set(i, i, 1);
                h.set(n - 1 - i, n - 1 - i, -1);
                cartan.push(h);
            }
            let mut seen = BTreeSet::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let e = Mat::unit(n, i, j);
                    let et = Mat::unit(n, j, i);
                    let t = jinv.mul(&et).mul(&form);
                    let mut m = Mat {
                        n,
                        data: e.data.iter().zip(&t.data).map(|(a, b)| a - b).collect(),
                    };
                    if m.is_zero() {
                        continue;
                    }
                    // Normalize: first nonzero entry equal to +1.
                    let (_, _, lead) = m.entries().next().unwrap();
                    let g = m.data.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
                    let scale = if lead < 0 { -g } else { g };
                    for v in m.data.iter_mut() {
                        *v /= scale;
                    }
                    if seen.insert(m.data.clone()) {
                        roots.push(m);
                    }
                }
            }
        }
    }

    let rank = cartan.len();
    // Weights of root vectors: [h_l, M] = w_l M.
    let weight_of = |m: &Mat| -> Vec<i64> {
        let (i, j, v) = m.entries().next().expect("nonzero root vector");
        cartan
            .iter()
            .map(|h| {
                let c = h.commutator(m);
                let w = c.get(i, j) / v;
                debug_assert_eq!(c.data, m.data.iter().map(|x| x * w).collect::<Vec<_>>());
                w
            })
            .collect()
    };
    // Positive means strictly upper triangular.
    let is_upper = |m: &Mat| m.entries().all(|(i, j, _)| i < j);
    let mut pos: Vec<(Vec<i64>, Mat)> = Vec::new();
    let mut neg: Vec<(Vec<i64>, Mat)> = Vec::new();
    for m in roots {
        let w = weight_of(&m);
        if is_upper(&m) {
            pos.push((w, m));
        } else {
            neg.push((w, m));
        }
    }
    // Heights: simple roots are positive roots that are not sums of two positive roots.
    let pos_weights: BTreeSet<Vec<i64>> = pos.iter().map(|(w, _)| w.clone()).collect();
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    let sub = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
    let mut simple_weights: Vec<Vec<i64>> = Vec::new();
    for (w, _) in &pos {
        let decomposable = pos_weights
            .iter()
            .any(|a| a != w && pos_weights.contains(&sub(w, a)));
        if !decomposable {
            simple_weights.push(w.clone());
        }
    }
    let mut height: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
    for w in &simple_weights {
        height.insert(w.clone(), 1);
    }
    let mut h = 1;
    while height.len() < pos_weights.len() {
        let layer: Vec<Vec<i64>> =
            height.iter().filter(|(_, &v)| v == h).map(|(k, _)| k.clone()).collect();
        for w in layer {
            for s in &simple_weights {
                let cand = add(&w, s);
                if pos_weights.contains(&cand) && !height.contains_key(&cand) {
                    height.insert(cand, h + 1);
                }
            }
        }
        h += 1;
        if h as usize > pos_weights.len() + 1 {
            return Err(RelcohError::Internal("root heights did not close".into()));
        }
    }
    let key = |(w, m): &(Vec<i64>, Mat)| {
        let hw = height.get(w).copied().unwrap_or(0);
        let first = m.entries().next().map(|(i, j, _)| (i, j)).unwrap();
        (hw, first)
    };
    pos.sort_by_key(key);
    // Negatives ordered to mirror positives.
    let neg_height = |w: &Vec<i64>| height[&w.iter().map(|x| -x).collect::<Vec<_>>()];
    neg.sort_by_key(|(w, m)| {
        let mirror = pos
            .iter()
            .position(|(pw, _)| pw.iter().zip(w.iter()).all(|(a, b)| *a == -*b))
            .unwrap();
        (neg_height(w), mirror, m.entries().next().map(|(i, j, _)| (i, j)).unwrap())
    });

    let mut basis: Vec<Mat> = Vec::new();
    let mut roles = Vec::new();
    let mut weights = Vec::new();
    for hm in &cartan {
        basis.push(hm.clone());
        roles.push(BasisRole::Cartan);
        weights.push(vec![0; rank]);
    }
    for (w, m) in &pos {
        basis.push(m.clone());
        roles.push(BasisRole::Positive { height: height[w] });
        weights.push(w.clone());
    }
    for (w, m) in &neg {
        basis.push(m.clone());
        roles.push(BasisRole::Negative { height: neg_height(w) });
        weights.push(w.clone());
    }
    if basis.len() != spec.dim() {
        return Err(RelcohError::Internal(alloc::format!(
            "{spec}: built {} basis elements, expected {}",
            basis.len(),
            spec.dim()
        )));
    }
    let dim = basis.len();
    let cartan_indices: Vec<usize> = (0..rank).collect();

    let coords = left_inverse(&basis, n)?;
    let mut data = LieAlgebraData {
        spec,
        basis,
        roles,
        structure: Vec::new(),
        cartan_indices,
        simple_raising: Vec::new(),
        simple_lowering: Vec::new(),
        weights,
        weyl_group: Vec::new(),
        coords,
    };

    let mut structure = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let c = data.basis[a].commutator(&data.basis[b]);
            if c.is_zero() {
                continue;
            }
            let co = data.decompose(&c).ok_or_else(|| {
                RelcohError::Internal(alloc::format!("{spec}: bracket does not close"))
            })?;
            structure[a * dim + b] = co
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.to_integer()))
                .collect();
        }
    }
    data.structure = structure;

    for s in &simple_weights {
        let e = data.weights.iter().position(|w| w == s).unwrap();
        let minus: Vec<i64> = s.iter().map(|x| -x).collect();
        let f = data.weights.iter().position(|w| *w == minus).unwrap();
        data.simple_raising.push(e);
        data.simple_lowering.push(f);
    }
    data.simple_raising.sort();
    let raising = data.simple_raising.clone();
    data.simple_lowering = raising
        .iter()
        .map(|&e| {
            let minus: Vec<i64> = data.weights[e].iter().map(|x| -x).collect();
            data.weights.iter().position(|w| *w == minus).unwrap()
        })
        .collect();

    data.weyl_group = weyl_group(&data)?;
    if data.weyl_group.len() != spec.weyl_order() {
        return Err(RelcohError::Internal(alloc::format!(
            "{spec}: Weyl group has order {}, expected {}",
            data.weyl_group.len(),
            spec.weyl_order()
        )));
    }
    check_jacobi(&data)?;
    Ok(data)
}

/// Rational left inverse of the basis, as functionals on flattened matrices.
fn left_inverse(basis: &[Mat], n: usize) -> Result<Vec<Vec<Ratio<i64>>>, RelcohError> {
    let d = basis.len();
    let nn = n * n;
    // Row-reduce [B^T | I] where B^T is d x nn; the pivot columns give coordinate functionals.
    let mut rows: Vec<Vec<Ratio<i64>>> = basis
        .iter()
        .enumerate()
        .map(|(a, m)| {
            let mut r: Vec<Ratio<i64>> = m.data.iter().map(|&v| Ratio::from_integer(v)).collect();
            r.extend((0..d).map(|k| if k == a { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nn {
        if r == d {
            break;
        }
        let Some(p) = (r..d).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..d {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pr) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if r != d {
        return Err(RelcohError::Internal("basis matrices are linearly dependent".into()));
    }
    // Row k now reads: sum_a rows[k][nn + a] T_a = matrix with 1 at pivot k and zeros at other
    // pivots. Hence the coefficient of T_a in X is sum_k X[pivot_k] * rows[k][nn + a].
    let mut out = vec![vec![Ratio::zero(); nn]; d];
    for (k, &pc) in pivots.iter().enumerate() {
        for a in 0..d {
            out[a][pc] = rows[k][nn + a];
        }
    }
    Ok(out)
}

fn check_jacobi(g: &LieAlgebraData) -> Result<(), RelcohError> {
    let d = g.dim();
    for a in 0..d {
        for b in 0..d {
            let ab = g.bracket(&g.basis_vector(a), &g.basis_vector(b));
            let ba = g.bracket(&g.basis_vector(b), &g.basis_vector(a));
            if ab.iter().zip(&ba).any(|(x, y)| x + y != 0) {
                return Err(RelcohError::Internal("structure constants not antisymmetric".into()));
            }
        }
    }
    // Jacobi via ad being a representation: ad([a,b]) = [ad a, ad b]. Cheaper than triples.
    let ads: Vec<Vec<Vec<i64>>> = (0..d).map(|a| g.adjoint_action_matrix(a)).collect();
    let mat_mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        let mut o = vec![vec![0i64; d]; d];
        for i in 0..d {
            for k in 0..d {
                if x[i][k] == 0 {
                    continue;
                }
                for j in 0..d {
                    o[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        o
    };
    for a in 0..d {
        for b in a + 1..d {
            let xy = mat_mul(&ads[a], &ads[b]);
            let yx = mat_mul(&ads[b], &ads[a]);
            let mut expect = vec![vec![0i64; d]; d];
            for &(c, f) in g.structure(a, b) {
                for i in 0..d {
                    for j in 0..d {
                        expect[i][j] += f * ads[c][i][j];
                    }
                }
            }
            for i in 0..d {
                for j in 0..d {
                    if xy[i][j] - yx[i][j] != expect[i][j] {
                        return Err(RelcohError::Internal("Jacobi identity fails".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn weyl_group(g: &LieAlgebraData) -> Result<Vec<Vec<i64>>, RelcohError> {
    let r = g.rank();
    let mut gens = Vec::new();
    for (&e, &f) in g.simple_raising.iter().zip(&g.simple_lowering) {
        // Coroot proportional to [e, f], normalized so that alpha(coroot) = 2.
        let ef = g.bracket(&g.basis_vector(e), &g.basis_vector(f));
        let alpha = &g.weights[e];
        let pairing: i64 = (0..r).map(|l| ef[g.cartan_indices[l]] * alpha[l]).sum();
        if pairing == 0 {
            return Err(RelcohError::Internal("degenerate coroot".into()));
        }
        let coroot: Vec<Ratio<i64>> = (0..r)
            .map(|l| Ratio::new(2 * ef[g.cartan_indices[l]], pairing))
            .collect();
        // s(h_l) = h_l - alpha(h_l) coroot; column l of the matrix.
        let mut m = vec![0i64; r * r];
        for l in 0..r {
            for k in 0..r {
                let delta = if k == l { Ratio::one() } else { Ratio::zero() };
                let v = delta - coroot[k] * Ratio::from_integer(alpha[l]);
                if !v.is_integer() {
                    return Err(RelcohError::Internal("non-integral Weyl reflection".into()));
                }
                m[k * r + l] = v.to_integer();
            }
        }
        gens.push(m);
    }
    let mut id = vec![0i64; r * r];
    for i in 0..r {
        id[i * r + i] = 1;
    }
    let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut o = vec![0i64; r * r];
        for i in 0..r {
            for k in 0..r {
                let x = a[i * r + k];
                if x == 0 {
                    continue;
                }
                for j in 0..r {
                    o[i * r + j] += x * b[k * r + j];
                }
            }
        }
        o
    };
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(w) = frontier.pop() {
        for s in &gens {
            let nw = mul(s, &w);
            if seen.insert(nw.clone()) {
                frontier.push(nw);
            }
        }
        if seen.len() > 1_000_000 {
            return Err(RelcohError::Internal("Weyl group too large".into()));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Acts with a Weyl element (an `r x r` row-major matrix) on Cartan coordinates.
pub fn weyl_apply(w: &[i64], u: &[i64]) -> Vec<i64> {
    let r = u.len();
    (0..r).map(|i| (0..r).map(|j| w[i * r + j] * u[j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> LieAlgebraData {
        build_algebra(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_specs() {
        assert_eq!(
            "so7".parse::<LieAlgebraSpec>().unwrap(),
            LieAlgebraSpec { series: Series::SO, size: 7 }
        );
        assert!("sp5".parse::<LieAlgebraSpec>().is_err());
        assert!("xx3".parse::<LieAlgebraSpec>().is_err());
        assert!("sl0".parse::<LieAlgebraSpec>().is_err());
        assert_eq!("SP6".parse::<LieAlgebraSpec>().unwrap().to_string(), "sp6");
    }

    #[test]
    fn sl2_relations() {
        let g = build("sl2");
        assert_eq!(g.dim(), 3);
        let (h, e, f) = (0, g.simple_raising[0], g.simple_lowering[0]);
        assert_eq!((e, f), (1, 2));
        assert_eq!(g.bracket(&g.basis_vector(e), &g.basis_vector(f)), g.basis_vector(h));
        assert_eq!(g.structure(h, e), &[(e, 2)]);
        assert_eq!(g.structure(h, f), &[(f, -2)]);
        assert!(g.structure(h, h).is_empty());
        assert_eq!(g.weyl_group.len(), 2);
    }

    #[test]
    fn dimensions_and_weyl_orders() {
        for (s, dim, w) in [
            ("sl3", 8, 6),
            ("gl2", 4, 2),
            ("so5", 10, 8),
            ("sp4", 10, 8),
            ("so7", 21, 48),
            ("sp6", 21, 48),
            ("so6", 15, 24),
            ("so4", 6, 4),
            ("sl4", 15, 24),
        ] {
            let g = build(s);
            assert_eq!(g.dim(), dim, "{s}");
            assert_eq!(g.weyl_group.len(), w, "{s}");
            assert_eq!(g.simple_raising.len(), g.spec.rank() - (g.spec.series == Series::GL) as usize);
        }
    }

    #[test]
    fn cartan_is_diagonal_and_basis_is_weight_basis() {
        for s in ["so7", "sp6", "sl3", "gl3"] {
            let g = build(s);
            for &c in &g.cartan_indices {
                assert!(g.basis[c].entries().all(|(i, j, _)| i == j));
                for &c2 in &g.cartan_indices {
                    assert!(g.structure(c, c2).is_empty());
                }
            }
            for a in 0..g.dim() {
                for (l, &c) in g.cartan_indices.iter().enumerate() {
                    let expect: Vec<(usize, i64)> =
                        if g.weights[a][l] == 0 { vec![] } else { vec![(a, g.weights[a][l])] };
                    assert_eq!(g.structure(c, a), &expect[..]);
                }
            }
        }
    }

    #[test]
    fn gl_center_is_central() {
        let g = build("gl3");
        let id = g.cartan_indices[g.rank() - 1];
        for a in 0..g.dim() {
            assert!(g.structure(id, a).is_empty());
        }
    }

    #[test]
    fn adjoint_matrices_represent_the_bracket() {
        let g = build("sp4");
        let d = g.dim();
        let ads: Vec<_> = (0..d).map(|a| g.adjoint_action_matrix(a)).collect();
        let (e, f) = (g.simple_raising[0], g.simple_lowering[0]);
        let mm = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| {
            (0..d)
                .map(|i| (0..d).map(|j| (0..d).map(|k| x[i][k] * y[k][j]).sum::<i64>()).collect())
                .collect::<Vec<Vec<i64>>>()
        };
        let xy = mm(&ads[e], &ads[f]);
        let yx = mm(&ads[f], &ads[e]);
        let ef = g.bracket(&g.basis_vector(e), &g.basis_vector(f));
        for i in 0..d {
            for j in 0..d {
                let expect: i64 = (0..d).map(|c| ef[c] * ads[c][i][j]).sum();
                assert_eq!(xy[i][j] - yx[i][j], expect);
            }
        }
        // Cartan acts diagonally on the adjoint basis by the weights.
        let h = &ads[0];
        for a in 0..d {
            for b in 0..d {
                let want = if a == b { g.weights[a][0] } else { 0 };
                assert_eq!(h[a][b], want);
            }
        }
    }

    #[test]
    fn weyl_group_closed_and_preserves_roots() {
        for s in ["so7", "sp6", "sl3", "so6"] {
            let g = build(s);
            let r = g.rank();
            let roots: BTreeSet<Vec<i64>> =
                g.weights.iter().filter(|w| w.iter().any(|&x| x != 0)).cloned().collect();
            let set: BTreeSet<Vec<i64>> = g.weyl_group.iter().cloned().collect();
            for a in &g.weyl_group {
                for b in g.weyl_group.iter().take(6) {
                    let mut prod = vec![0i64; r * r];
                    for i in 0..r {
                        for j in 0..r {
                            prod[i * r + j] = (0..r).map(|k| a[i * r + k] * b[k * r + j]).sum();
                        }
                    }
                    assert!(set.contains(&prod));
                }
            }
            // W acts on t; its transpose acts on weights, permuting the roots.
            for w in &g.weyl_group {
                for root in &roots {
                    let moved: Vec<i64> =
                        (0..r).map(|j| (0..r).map(|i| w[i * r + j] * root[i]).sum()).collect();
                    assert!(roots.contains(&moved), "{s}");
                }
            }
        }
    }
}
