//! Sector orchestration: single sectors, level tables and Langlands comparisons, backed by the
//! on-disk cache.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use relcoh_core::classes::Method;
use relcoh_core::eval::{self, EvalConfig};
use relcoh_core::exactla::ArithConfig;
use relcoh_core::sector::{self, count_words, SectorDims};
use relcoh_core::superspace::{charges, ChargeVector};
use relcoh_core::{build_algebra, LieAlgebraData, LieAlgebraSpec, MultiDegree};
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::Error;

/// Bumped whenever a sign or normalization convention changes; part of every cache key.
pub const CONVENTION_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    pub spec: LieAlgebraSpec,
    pub p: usize,
    pub n: MultiDegree,
    pub dim_cochain: u128,
    pub dim_invariant: usize,
    pub rank_d_out: usize,
    pub rank_d_in: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    pub charge: ChargeVector,
    pub level: u32,
    pub primes: Vec<u64>,
    pub method: Method,
    /// Seconds; only filled in when timing is requested, so default output stays reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl SectorReport {
    fn from_dims(spec: LieAlgebraSpec, d: SectorDims, method: Method) -> Self {
        SectorReport {
            spec,
            p: d.p,
            n: d.n,
            dim_cochain: d.dim_cochain,
            dim_invariant: d.dim_invariant,
            rank_d_out: d.rank_d_out,
            rank_d_in: d.rank_d_in,
            dim_h: d.dim_h,
            charge: charges(d.p as u32, d.n),
            level: d.n.level(),
            primes: d.primes,
            method,
            wall_time: None,
        }
    }

    /// The same numbers relabelled to another multidegree of the same symmetry orbit.
    fn relabel(&self, n: MultiDegree) -> Self {
        SectorReport { n, charge: charges(self.p as u32, n), ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelTable {
    pub spec: LieAlgebraSpec,
    pub level: u32,
    pub sectors: Vec<SectorReport>,
}

/// One sector where two algebras disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub level: u32,
    pub p: usize,
    pub n: MultiDegree,
    #[serde(rename = "dim_H_a")]
    pub dim_h_a: usize,
    #[serde(rename = "dim_H_b")]
    pub dim_h_b: usize,
    /// `dim_H_a - dim_H_b`.
    pub difference: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub a: LieAlgebraSpec,
    pub b: LieAlgebraSpec,
    pub lmax: u32,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, Default)]
pub struct EngineConfig {
    pub arith: ArithConfig,
    pub eval: EvalConfig,
    /// `None` picks trace evaluation where it applies.
    pub method: Option<Method>,
    pub timing: bool,
}

pub struct Engine {
    pub config: EngineConfig,
    cache: Option<Cache>,
}

impl Engine {
    pub fn new(config: EngineConfig, cache: Option<Cache>) -> Self {
        Engine { config, cache }
    }

    pub fn method(&self, g: &LieAlgebraData) -> Method {
        self.config.method.unwrap_or_else(|| Method::auto(g))
    }

    pub fn algebra(spec: LieAlgebraSpec) -> Result<LieAlgebraData, Error> {
        Ok(build_algebra(spec)?)
    }

    fn key(&self, g: &LieAlgebraData, p: usize, n: MultiDegree) -> String {
        let c = &self.config;
        Cache::key(g.spec, p, n, CONVENTION_VERSION, self.method(g), &c.arith.primes(0), c.arith.seed)
    }

    fn lookup(&self, g: &LieAlgebraData, p: usize, n: MultiDegree) -> Option<SectorReport> {
        self.cache.as_ref()?.get(&self.key(g, p, n))
    }

    fn store(&self, g: &LieAlgebraData, reports: &[SectorReport]) -> Result<(), Error> {
        if let Some(cache) = &self.cache {
            let entries: Vec<(String, SectorReport)> = reports
                .iter()
                .map(|r| (self.key(g, r.p, r.n), SectorReport { wall_time: None, ..r.clone() }))
                .collect();
            cache.insert_many(entries)?;
        }
        Ok(())
    }

    fn finish(&self, mut r: SectorReport, started: Instant) -> SectorReport {
        r.wall_time = self.config.timing.then(|| started.elapsed().as_secs_f64());
        r
    }

    /// `dim H^{p;n}`. Sectors with `p > |n|` vanish and are answered without linear algebra.
    pub fn dim_h(&self, g: &LieAlgebraData, p: usize, n: MultiDegree) -> Result<SectorReport, Error> {
        let started = Instant::now();
        let method = self.method(g);
        if p as u32 > n.total() {
            let mut d = SectorDims::zero(p, n);
            d.dim_cochain = count_words(g.dim(), n, p);
            return Ok(self.finish(SectorReport::from_dims(g.spec, d, method), started));
        }
        let c = n.canonical();
        if let Some(r) = self.lookup(g, p, c) {
            return Ok(self.finish(r.relabel(n), started));
        }
        let d = match method {
            Method::Trace => eval::sector_dims(g, p, c, &self.config.arith, &self.config.eval)?,
            Method::Monomial => sector::sector_dims(g, p, c, &self.config.arith)?,
        };
        let r = SectorReport::from_dims(g.spec, d, method);
        self.store(g, std::slice::from_ref(&r))?;
        Ok(self.finish(r.relabel(n), started))
    }

    /// Every sector `(p, n)`, `0 <= p <= |n|`, of one multidegree.
    pub fn multidegree(&self, g: &LieAlgebraData, n: MultiDegree) -> Result<Vec<SectorReport>, Error> {
        let started = Instant::now();
        let c = n.canonical();
        let top = c.total() as usize;
        let cached: Option<Vec<SectorReport>> = (0..=top).map(|p| self.lookup(g, p, c)).collect();
        let reports = match cached {
            Some(r) => r,
            None => {
                let method = self.method(g);
                let dims = match method {
                    Method::Trace => eval::multidegree_dims(g, c, &self.config.arith, &self.config.eval)?,
                    Method::Monomial => sector::multidegree_dims(g, c, &self.config.arith)?,
                };
                let r: Vec<SectorReport> = dims.into_iter().map(|d| SectorReport::from_dims(g.spec, d, method)).collect();
                self.store(g, &r)?;
                r
            }
        };
        Ok(reports.into_iter().map(|r| self.finish(r.relabel(n), started)).collect())
    }

    /// All sectors of the given level.
    pub fn level_table(&self, g: &LieAlgebraData, level: u32) -> Result<LevelTable, Error> {
        let all = MultiDegree::of_level(level);
        let mut orbits: BTreeMap<MultiDegree, Vec<MultiDegree>> = BTreeMap::new();
        for n in all {
            orbits.entry(n.canonical()).or_default().push(n);
        }
        // Small sectors first, so a broken pipeline shows up before the expensive ones.
        let mut reps: Vec<MultiDegree> = orbits.keys().copied().collect();
        reps.sort_by_cached_key(|n| (size_estimate(g, *n), *n));
        let computed: Vec<Result<(MultiDegree, Vec<SectorReport>), Error>> =
            reps.par_iter().map(|&c| Ok((c, self.multidegree(g, c)?))).collect();
        let mut by_rep = BTreeMap::new();
        for r in computed {
            let (c, v) = r?;
            by_rep.insert(c, v);
        }
        let mut sectors = Vec::new();
        for (c, members) in &orbits {
            for &n in members {
                sectors.extend(by_rep[c].iter().map(|r| r.relabel(n)));
            }
        }
        sectors.sort_by_key(|r| (r.n, r.p));
        Ok(LevelTable { spec: g.spec, level, sectors })
    }

    /// Sector-by-sector differences of `dim H` for all levels `<= lmax`.
    pub fn compare_langlands(&self, a: &LieAlgebraData, b: &LieAlgebraData, lmax: u32) -> Result<Comparison, Error> {
        let mut mismatches = Vec::new();
        if a.spec != b.spec {
            for level in 0..=lmax {
                let ta = self.level_table(a, level)?;
                let tb = self.level_table(b, level)?;
                for (x, y) in ta.sectors.iter().zip(&tb.sectors) {
                    debug_assert_eq!((x.p, x.n), (y.p, y.n));
                    if x.dim_h != y.dim_h {
                        mismatches.push(Mismatch {
                            level,
                            p: x.p,
                            n: x.n,
                            dim_h_a: x.dim_h,
                            dim_h_b: y.dim_h,
                            difference: x.dim_h as i64 - y.dim_h as i64,
                        });
                    }
                }
            }
        }
        Ok(Comparison { a: a.spec, b: b.spec, lmax, mismatches })
    }
}

/// Cheap upper bound used for scheduling: the largest cochain space of the multidegree.
fn size_estimate(g: &LieAlgebraData, n: MultiDegree) -> u128 {
    (0..=n.total() as usize).map(|p| count_words(g.dim(), n, p)).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> Engine {
        Engine::new(EngineConfig::default(), None)
    }

    fn sl2() -> LieAlgebraData {
        Engine::algebra("sl2".parse().unwrap()).unwrap()
    }

    #[test]
    fn constants_and_killing_form() {
        let e = engine();
        let g = sl2();
        assert_eq!(e.dim_h(&g, 0, MultiDegree::ZERO).unwrap().dim_h, 1);
        let n = MultiDegree([0, 0, 1, 1, 0]);
        assert_eq!(e.dim_h(&g, 2, n).unwrap().dim_h, 1);
        let r = e.dim_h(&g, 3, n).unwrap();
        assert_eq!((r.dim_h, r.dim_invariant, r.primes.len()), (0, 0, 0));
    }

    #[test]
    fn low_levels() {
        let e = engine();
        let g = sl2();
        let t0 = e.level_table(&g, 0).unwrap();
        assert_eq!(t0.sectors.len(), 1);
        assert_eq!(t0.sectors[0].dim_h, 1);
        let t2 = e.level_table(&g, 2).unwrap();
        assert_eq!(t2.sectors.len(), 6);
        assert!(t2.sectors.iter().all(|r| r.dim_h == 0));
    }

    #[test]
    fn orbit_members_share_dimensions() {
        let e = engine();
        let g = sl2();
        let a = e.multidegree(&g, MultiDegree([1, 0, 2, 1, 0])).unwrap();
        let b = e.multidegree(&g, MultiDegree([0, 1, 0, 1, 2])).unwrap();
        let dims = |v: &[SectorReport]| v.iter().map(|r| r.dim_h).collect::<Vec<_>>();
        assert_eq!(dims(&a), dims(&b));
        let direct = sector::multidegree_dims(&g, MultiDegree([1, 0, 2, 1, 0]), &ArithConfig::default()).unwrap();
        assert_eq!(dims(&a), direct.iter().map(|d| d.dim_h).collect::<Vec<_>>());
    }

    #[test]
    fn same_algebra_has_no_mismatch() {
        let e = engine();
        let g = sl2();
        assert!(e.compare_langlands(&g, &g, 8).unwrap().mismatches.is_empty());
    }

    #[test]
    fn euler_characteristic() {
        let e = engine();
        let g = Engine::algebra("so5".parse().unwrap()).unwrap();
        for n in [MultiDegree([0, 0, 2, 1, 1]), MultiDegree([1, 1, 1, 0, 0])] {
            let v = e.multidegree(&g, n).unwrap();
            let sign = |p: usize| if p.is_multiple_of(2) { 1 } else { -1 };
            let chi_inv: i64 = v.iter().map(|r| sign(r.p) * r.dim_invariant as i64).sum();
            let chi_h: i64 = v.iter().map(|r| sign(r.p) * r.dim_h as i64).sum();
            assert_eq!(chi_inv, chi_h);
        }
    }
}
