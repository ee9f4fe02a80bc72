//! Invariants of the super-commuting scheme of `g^{3|2}`, Cartan-side invariants and the
//! restriction map between them.
//!
//! Coordinates: the even `x_i` are the generators `ξ^{(a, θ_i)}` and the odd `ψ_±` are
//! `ξ^{(a, z±)}`, so a multihomogeneous scheme function of degree `n` is a top-degree cochain of
//! sector `(|n|, n)`. The defining ideal is spanned by products of the components of the
//! super-brackets `[x_i, x_j]`, `[x_i, ψ_a]`, `[ψ_a, ψ_b]` with arbitrary monomials.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, GeneratorTable, WordIndex};
use crate::error::{RelcohError, Result};
use crate::eval::{self, EvalConfig};
use crate::exactla::{nullspace_basis, rank_checked, ArithConfig, DenseEchelon, SparseMatrix};
use crate::field::PrimeField;
use crate::liealg::LieAlgebraData;
use crate::sector::{self, relative_invariants};
use crate::superpoly::{poly_monomials, poly_rows, rational_rank, restrict_cochain, restrict_trace_word, weyl_orbit_average, SuperPoly};
use crate::superspace::{AMonomial, MultiDegree};

/// The five coordinate types as first-derivative monomials, in multidegree order.
pub fn coordinate_slots() -> [AMonomial; 5] {
    [
        AMonomial::new(1, 0, 0),
        AMonomial::new(0, 1, 0),
        AMonomial::new(0, 0, 1),
        AMonomial::new(0, 0, 2),
        AMonomial::new(0, 0, 4),
    ]
}

/// Dimensions of one multidegree piece of the scheme invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeSector {
    pub n: MultiDegree,
    pub dim_ambient_invariants: usize,
    pub dim_relation_invariants: usize,
    pub dim_scheme_invariants: usize,
}

fn integer_row(index: &WordIndex, c: &Cochain) -> Result<Vec<(u32, i64)>> {
    index.coordinates(c).ok_or_else(|| RelcohError::Internal("coefficient outside i64 or word outside sector".into()))
}

/// Weight-0 part of the defining ideal in multidegree `n`, as cochains of sector `(|n|, n)`.
pub fn relation_space(table: &GeneratorTable, g: &LieAlgebraData, n: MultiDegree) -> Vec<Cochain> {
    let slots = coordinate_slots();
    let p = n.total() as usize;
    let mut out = Vec::new();
    if p < 2 {
        return out;
    }
    for s in 0..5 {
        for t in s..5 {
            let Some(rest) = n.checked_sub(&(slots[s].degree() + slots[t].degree())) else { continue };
            // Components R_γ = Σ f_{ab}^γ ξ^{(a,s)} ξ^{(b,t)}.
            let mut comps: Vec<Cochain> = vec![Cochain::zero(); g.dim()];
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    for &(c, f) in g.structure(a, b) {
                        let seq = [table.id(a, slots[s]), table.id(b, slots[t])];
                        if let Some((sign, w)) = table.normal_order(&seq) {
                            comps[c].add_term(w, BigRational::from_integer(BigInt::from(sign * f)));
                        }
                    }
                }
            }
            for r in comps.into_iter().filter(|r| !r.is_zero()) {
                let w = table.word_weight(r.terms.keys().next().unwrap());
                let target: Vec<i64> = w.iter().map(|x| -x).collect();
                for m in table.enumerate_words(p - 2, rest, Some(&target)) {
                    let prod = r.mul(&Cochain::monomial(m), table);
                    if !prod.is_zero() {
                        out.push(prod);
                    }
                }
            }
        }
    }
    out
}

/// Scheme invariants in multidegree `n`: ambient invariants modulo the invariant part of the
/// ideal, with the ambient invariant basis.
pub fn invariants_supercommuting(g: &LieAlgebraData, n: MultiDegree, cfg: &ArithConfig) -> Result<(SchemeSector, Vec<Cochain>)> {
    let p = n.total() as usize;
    let table = GeneratorTable::new(g, n);
    let inv = relative_invariants(&table, p, n, cfg)?;
    let rel = relation_space(&table, g, n);
    let index = WordIndex::new(sector::weight_zero_words(&table, p, n));
    let cols = index.len();
    let inv_rows: Vec<Vec<(u32, i64)>> = inv.iter().map(|c| integer_row(&index, c)).collect::<Result<_>>()?;
    let rel_rows: Vec<Vec<(u32, i64)>> = rel.iter().map(|c| integer_row(&index, c)).collect::<Result<_>>()?;
    let rank_rel = rank_checked(&SparseMatrix::from_rows(cols, rel_rows.clone()), cfg)?.rank;
    let mut all = rel_rows;
    all.extend(inv_rows);
    let rank_sum = rank_checked(&SparseMatrix::from_rows(cols, all), cfg)?.rank;
    let dim_rel_inv = rank_rel + inv.len() - rank_sum;
    Ok((
        SchemeSector {
            n,
            dim_ambient_invariants: inv.len(),
            dim_relation_invariants: dim_rel_inv,
            dim_scheme_invariants: inv.len() - dim_rel_inv,
        },
        inv,
    ))
}

/// Weyl-invariant polynomials on `t^{3|2}` of multidegree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanSector {
    pub n: MultiDegree,
    pub basis: Vec<SuperPoly>,
}

impl CartanSector {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn cartan_invariants(g: &LieAlgebraData, n: MultiDegree, cfg: &ArithConfig) -> Result<CartanSector> {
    let r = g.rank();
    let averages: Vec<SuperPoly> = poly_monomials(r, n)
        .into_iter()
        .map(|m| {
            let mut f = SuperPoly::zero(r);
            f.terms.insert(m, BigRational::one());
            weyl_orbit_average(&f, &g.weyl_group)
        })
        .filter(|f| !f.is_zero())
        .collect();
    let (rows, cols) = poly_rows(&averages);
    let prime = cfg.primes(0)[0];
    let f = PrimeField::new(prime);
    let mut ech = DenseEchelon::new(prime, cols);
    let mut basis = Vec::new();
    for (row, poly) in rows.iter().zip(&averages) {
        let mut v = vec![0u64; cols];
        for (k, c) in row {
            v[*k] = f.mul(f.from_bigint(c.numer()), f.inv(f.from_bigint(c.denom())));
        }
        if ech.insert(v) {
            basis.push(poly.clone());
        }
    }
    let exact = rational_rank(&rows, cols, &cfg.primes(0))?;
    if exact != basis.len() {
        return Err(RelcohError::Disagreement("Weyl-invariant rank disagrees across primes".into()));
    }
    Ok(CartanSector { n, basis })
}

/// Matrix of the restriction map: one row of polynomial coordinates per scheme-side function.
#[derive(Clone, Debug)]
pub struct RestrictionMatrix {
    pub rows: Vec<Vec<(usize, BigRational)>>,
    pub cols: usize,
    pub images: Vec<SuperPoly>,
}

impl RestrictionMatrix {
    pub fn from_images(images: Vec<SuperPoly>) -> Self {
        let (rows, cols) = poly_rows(&images);
        RestrictionMatrix { rows, cols, images }
    }

    pub fn rank(&self, cfg: &ArithConfig) -> Result<usize> {
        rational_rank(&self.rows, self.cols, &cfg.primes(0))
    }
}

/// Restriction of the ambient invariant basis (top-degree cochains).
pub fn restriction_matrix(g: &LieAlgebraData, n: MultiDegree, basis: &[Cochain]) -> Result<RestrictionMatrix> {
    let table = GeneratorTable::new(g, n);
    let images = basis.iter().map(|c| restrict_cochain(c, &table, g)).collect::<Result<Vec<_>>>()?;
    Ok(RestrictionMatrix::from_images(images))
}

/// Summary of the restriction map in one multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub g: String,
    pub n: MultiDegree,
    pub dim_scheme_invariants: usize,
    pub dim_cartan_invariants: usize,
    pub rank_restriction: usize,
    pub dim_kernel: usize,
    pub method: String,
    pub primes: Vec<u64>,
}

/// Non-Cartan classes: dimension and representatives that are independent modulo the ideal.
#[derive(Clone, Debug)]
pub struct NonCartanKernel {
    pub report: RestrictionReport,
    pub representatives: Vec<Cochain>,
}

/// Rows cleared of denominators, with the factor applied to each row.
fn to_integer_rows(rows: &[Vec<(usize, BigRational)>]) -> (Vec<Vec<(u32, i64)>>, Vec<BigRational>) {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, (_, c)| num_integer::lcm(acc, c.denom().clone()));
            let ints = row
                .iter()
                .map(|(k, c)| (*k as u32, (c * BigRational::from_integer(l.clone())).to_integer().to_i64().expect("coefficient fits i64")))
                .collect();
            (ints, BigRational::from_integer(l))
        })
        .unzip()
}

/// Kernel of the restriction map by the monomial route (exact representatives).
pub fn non_cartan_kernel(g: &LieAlgebraData, n: MultiDegree, cfg: &ArithConfig) -> Result<NonCartanKernel> {
    let (scheme, inv) = invariants_supercommuting(g, n, cfg)?;
    let cartan = cartan_invariants(g, n, cfg)?;
    let res = restriction_matrix(g, n, &inv)?;
    let rank = res.rank(cfg)?;
    // Left kernel of the restriction rows, as combinations of the ambient basis.
    let (int_rows, scales) = to_integer_rows(&res.rows);
    let mt = SparseMatrix::from_rows(res.cols, int_rows).transpose();
    let mt = if mt.rows == 0 { SparseMatrix::zero(0, inv.len()) } else { mt };
    let kernel = if inv.is_empty() { Vec::new() } else { nullspace_basis(&mt, cfg)? };
    let table = GeneratorTable::new(g, n);
    let p = n.total() as usize;
    let index = WordIndex::new(sector::weight_zero_words(&table, p, n));
    let prime = cfg.primes(0)[0];
    let f = PrimeField::new(prime);
    let mut ech = DenseEchelon::new(prime, index.len());
    let reduce = |c: &Cochain| -> Result<Vec<u64>> {
        let mut v = vec![0u64; index.len()];
        for (k, x) in integer_row(&index, c)? {
            v[k as usize] = f.from_i64(x);
        }
        Ok(v)
    };
    for r in relation_space(&table, g, n) {
        ech.insert(reduce(&r)?);
    }
    let mut reps = Vec::new();
    for y in kernel {
        let mut c = Cochain::zero();
        for ((coef, b), l) in y.iter().zip(&inv).zip(&scales) {
            if !coef.is_zero() {
                c.add_scaled(b, &(coef * l));
            }
        }
        if ech.insert(reduce(&c)?) {
            reps.push(c);
        }
    }
    let dim_kernel = scheme.dim_scheme_invariants - rank;
    if reps.len() != dim_kernel {
        return Err(RelcohError::Disagreement("non-Cartan representatives do not match the kernel dimension".into()));
    }
    Ok(NonCartanKernel {
        report: RestrictionReport {
            g: g.spec.to_string(),
            n,
            dim_scheme_invariants: scheme.dim_scheme_invariants,
            dim_cartan_invariants: cartan.dim(),
            rank_restriction: rank,
            dim_kernel,
            method: "monomial".into(),
            primes: cfg.primes(0),
        },
        representatives: reps,
    })
}

/// Restriction report by trace evaluation: the scheme invariants are the top-degree cohomology,
/// and the restriction is applied to a trace-word basis of the ambient invariants.
pub fn restriction_report_traces(g: &LieAlgebraData, n: MultiDegree, cfg: &ArithConfig, ec: &EvalConfig) -> Result<RestrictionReport> {
    let p = n.total() as usize;
    let top = eval::sector_dims(g, p, n, cfg, ec)?;
    let span = eval::invariant_span(g, p, n, top.primes[0], cfg.seed, ec);
    let images = span
        .blocks
        .iter()
        .flat_map(|(_, ws)| ws.iter())
        .map(|w| restrict_trace_word(&crate::trace::TraceWord { terms: vec![crate::trace::TraceTerm { coeff: BigRational::one(), traces: w.clone() }] }, g))
        .collect::<Result<Vec<_>>>()?;
    let rank = RestrictionMatrix::from_images(images).rank(cfg)?;
    let cartan = cartan_invariants(g, n, cfg)?;
    Ok(RestrictionReport {
        g: g.spec.to_string(),
        n,
        dim_scheme_invariants: top.dim_h,
        dim_cartan_invariants: cartan.dim(),
        rank_restriction: rank,
        dim_kernel: top.dim_h - rank,
        method: "trace".into(),
        primes: top.primes,
    })
}

/// Convenience: the ambient basis element count of a top-degree sector.
pub fn ambient_dimension(table: &GeneratorTable, n: MultiDegree) -> usize {
    table.enumerate_words(n.total() as usize, n, None).len()
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
    fn killing_sector() {
        let g = alg("sl2");
        let cfg = ArithConfig::default();
        let (s, _) = invariants_supercommuting(&g, md("0,0,1,1,0"), &cfg).unwrap();
        assert_eq!(s.dim_scheme_invariants, 1);
        assert_eq!(cartan_invariants(&g, md("0,0,1,1,0"), &cfg).unwrap().dim(), 1);
        assert_eq!(cartan_invariants(&g, md("0,0,1,0,0"), &cfg).unwrap().dim(), 0);
        let k = non_cartan_kernel(&g, md("0,0,1,1,0"), &cfg).unwrap();
        assert_eq!((k.report.rank_restriction, k.report.dim_kernel), (1, 0));
    }

    #[test]
    fn degree_one_is_empty() {
        let cfg = ArithConfig::default();
        for s in ["sl2", "so5"] {
            let g = alg(s);
            for n in ["1,0,0,0,0", "0,0,0,0,1"] {
                assert_eq!(invariants_supercommuting(&g, md(n), &cfg).unwrap().0.dim_scheme_invariants, 0);
            }
        }
    }

    #[test]
    fn matches_top_degree_cohomology() {
        let cfg = ArithConfig::default();
        for (s, ns) in [
            ("sl2", &["1,1,0,0,0", "0,0,2,1,0", "1,0,1,1,0", "0,0,1,1,1", "1,1,1,1,0"][..]),
            ("so5", &["0,0,1,1,1", "1,1,1,0,0"][..]),
        ] {
            let g = alg(s);
            for n in ns {
                let n = md(n);
                let (sch, _) = invariants_supercommuting(&g, n, &cfg).unwrap();
                let h = sector::sector_dims(&g, n.total() as usize, n, &cfg).unwrap();
                assert_eq!(sch.dim_scheme_invariants, h.dim_h, "{s} {n}");
            }
        }
    }

    #[test]
    fn trace_route_matches_monomial_route() {
        let cfg = ArithConfig::default();
        let ec = EvalConfig::default();
        for (s, n) in [("sl2", "1,1,1,1,0"), ("so5", "1,1,1,0,0"), ("sp4", "0,0,2,1,1"), ("sl3", "1,0,1,1,1")] {
            let g = alg(s);
            let n = md(n);
            let a = non_cartan_kernel(&g, n, &cfg).unwrap().report;
            let b = restriction_report_traces(&g, n, &cfg, &ec).unwrap();
            assert_eq!(
                (a.dim_scheme_invariants, a.rank_restriction, a.dim_kernel, a.dim_cartan_invariants),
                (b.dim_scheme_invariants, b.rank_restriction, b.dim_kernel, b.dim_cartan_invariants),
                "{s} {n}"
            );
        }
    }

    #[test]
    fn cartan_sides_of_langlands_pair_agree() {
        let cfg = ArithConfig::default();
        let (b, c) = (alg("so7"), alg("sp6"));
        for n in ["0,0,2,1,1", "1,1,1,1,0", "0,0,2,2,0"] {
            assert_eq!(
                cartan_invariants(&b, md(n), &cfg).unwrap().dim(),
                cartan_invariants(&c, md(n), &cfg).unwrap().dim()
            );
        }
    }
}
