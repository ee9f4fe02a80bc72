//! The reproduction suite: one check per acceptance criterion, each reporting pass or fail with
//! the numbers behind the verdict.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relcoh_core::classes::{self, Method};
use relcoh_core::cochain::{differential, enumerate_basis, Cochain, GeneratorTable};
use relcoh_core::eval::EvalConfig;
use relcoh_core::exactla::ArithConfig;
use relcoh_core::schemes;
use relcoh_core::sector::{self, dim_h_dense};
use relcoh_core::superspace::ChargeVector;
use relcoh_core::trace::{expand, q_superfield, TraceTerm, TraceWord};
use relcoh_core::{charges, AMonomial, LieAlgebraData, MultiDegree};
use serde::Serialize;

use crate::cache::Cache;
use crate::engine::{Engine, EngineConfig};
use crate::output::{render, Format};
use crate::Error;

#[derive(Clone, Debug)]
pub struct ReproConfig {
    pub seed: u64,
    /// Highest level of the sl2 graviton-saturation sweep.
    pub sl2_level_budget: u32,
    pub lmax_compare: u32,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig { seed: ArithConfig::default().seed, sl2_level_budget: 16, lmax_compare: 18 }
    }
}

impl ReproConfig {
    /// The full sl2 sweep below level 24.
    pub fn extended() -> Self {
        ReproConfig { sl2_level_budget: 23, ..Self::default() }
    }

    fn arith(&self) -> ArithConfig {
        ArithConfig { seed: self.seed, ..ArithConfig::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Criterion {
    pub fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn line(&self) -> String {
        format!("{} [{}] {} ({:.1}s): {}", self.status(), self.id, self.name, self.seconds, self.detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub criteria: Vec<Criterion>,
}

impl Summary {
    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }
}

type Check = fn(&ReproConfig) -> Result<(bool, String), Error>;

/// Every check, in order: `(id, name, check)`.
pub const CHECKS: [(&str, &str, Check); 11] = [
    ("1", "d^2 = 0 on sector bases and random cochains", differential_squares),
    ("2", "Q agrees with -d on sampled trace words", q_versus_d),
    ("3", "top-degree cohomology equals super-commuting scheme invariants", top_degree_oracle),
    ("4", "sparse modular pipeline equals dense rational oracle on sl2", dense_oracle),
    ("5", "no fortuitous sl2 class below the level budget", sl2_saturation),
    ("6", "sl2 fortuitous class at (0,0,4,4,4)", sl2_fortuitous),
    ("7", "charges of the so7 sectors", charge_table),
    ("8", "so7 representatives", so7_representatives),
    ("9", "so7 / sp6 mismatch at level 18", langlands_mismatch),
    ("10", "deterministic JSON and cache coherence", determinism),
    ("S", "graviton span stable from sl4 to sl6", rank_stabilization),
];

/// Runs the checks whose ids are in `only` (all when empty), calling `each` as results arrive.
pub fn run(cfg: &ReproConfig, only: &[String], mut each: impl FnMut(&Criterion)) -> Summary {
    let mut criteria = Vec::new();
    for (id, name, check) in CHECKS {
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let t = Instant::now();
        let (pass, detail) = match check(cfg) {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        let c = Criterion { id: id.into(), name: name.into(), pass, detail, seconds: t.elapsed().as_secs_f64() };
        each(&c);
        criteria.push(c);
    }
    Summary { criteria }
}

fn alg(s: &str) -> LieAlgebraData {
    Engine::algebra(s.parse().expect("valid spec")).expect("buildable algebra")
}

fn md(s: &str) -> MultiDegree {
    MultiDegree::parse(s).expect("valid multidegree")
}

/// Every multidegree with `1 <= |n| <= max_total`.
fn multidegrees_up_to(max_total: u32) -> Vec<MultiDegree> {
    let mut out = Vec::new();
    let m = max_total;
    for a in 0..=m {
        for b in 0..=m - a {
            for c in 0..=m - a - b {
                for d in 0..=m - a - b - c {
                    for e in 0..=m - a - b - c - d {
                        let n = MultiDegree([a, b, c, d, e]);
                        if n.total() > 0 {
                            out.push(n);
                        }
                    }
                }
            }
        }
    }
    out
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn differential_squares(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let names = ["sl2", "sl3", "so5", "sp4"];
    let mut words = 0usize;
    for name in names {
        let g = alg(name);
        for n in multidegrees_up_to(4) {
            let table = GeneratorTable::new(&g, n);
            for p in 1..=n.total() as usize {
                for w in enumerate_basis(&table, p, n) {
                    let dw = differential(&table, &Cochain::monomial(w.clone()));
                    if !differential(&table, &dw).is_zero() {
                        return Ok((false, format!("{name}: d^2 of {w:?} in ({p}, {n}) is nonzero")));
                    }
                    words += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 1);
    let algebras: Vec<LieAlgebraData> = names.iter().map(|s| alg(s)).collect();
    for k in 0..200 {
        let g = algebras.choose(&mut rng).unwrap();
        let total = rng.random_range(5..=7);
        let n = random_multidegree(&mut rng, total);
        let table = GeneratorTable::new(g, n);
        let p = rng.random_range(2..=total.min(5) as usize);
        let mut c = Cochain::zero();
        for _ in 0..rng.random_range(1..=4) {
            if let Some((sign, w)) = random_word(&mut rng, &table, g, p, n) {
                c.add_term(w, rational(sign * rng.random_range(1..=9)));
            }
        }
        if !differential(&table, &differential(&table, &c)).is_zero() {
            return Ok((false, format!("random cochain {k} in ({p}, {n}) on {}", g.spec)));
        }
    }
    Ok((true, format!("{words} basis words with |n| <= 4 on sl2, sl3, so5, sp4; 200 random cochains with |n| in 5..=7")))
}

fn random_multidegree(rng: &mut ChaCha8Rng, total: u32) -> MultiDegree {
    let mut n = [0u32; 5];
    for _ in 0..total {
        n[rng.random_range(0..5)] += 1;
    }
    MultiDegree(n)
}

/// A random normal-ordered word: `n` split into `p` nonzero monomials, each with a random
/// Lie algebra index.
fn random_word(
    rng: &mut ChaCha8Rng,
    table: &GeneratorTable,
    g: &LieAlgebraData,
    p: usize,
    n: MultiDegree,
) -> Option<(i64, relcoh_core::cochain::SuperMonomial)> {
    for _ in 0..100 {
        let mut parts = vec![[0u32; 5]; p];
        for (k, &count) in n.0.iter().enumerate() {
            for _ in 0..count {
                parts[rng.random_range(0..p)][k] += 1;
            }
        }
        let monos: Option<Vec<AMonomial>> = parts
            .iter()
            .map(|d| if d.iter().all(|&x| x == 0) { None } else { AMonomial::from_degree(MultiDegree(*d)) })
            .collect();
        let Some(monos) = monos else { continue };
        let ids: Vec<u32> = monos.iter().map(|&m| table.id(rng.random_range(0..g.dim()), m)).collect();
        if let Some(w) = table.normal_order(&ids) {
            return Some(w);
        }
    }
    None
}

fn random_label(rng: &mut ChaCha8Rng) -> AMonomial {
    loop {
        let m = AMonomial::new(rng.random_range(0..=1), rng.random_range(0..=1), rng.random_range(0..8u8));
        if !m.is_unit() && m.total_degree() <= 3 {
            return m;
        }
    }
}

fn q_versus_d(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 2);
    let algebras: Vec<LieAlgebraData> = ["sl2", "sl3", "so5", "sp4", "gl2"].iter().map(|s| alg(s)).collect();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 20 {
        attempts += 1;
        if attempts > 2000 {
            return Ok((false, format!("only {checked} nonzero samples found")));
        }
        let g = algebras.choose(&mut rng).unwrap();
        let traces: Vec<Vec<AMonomial>> =
            (0..rng.random_range(1..=2)).map(|_| (0..rng.random_range(2..=3)).map(|_| random_label(&mut rng)).collect()).collect();
        let w = TraceWord { terms: vec![TraceTerm { coeff: rational(1), traces }] }.canonical();
        let Some((_, n)) = w.sector() else { continue };
        let table = GeneratorTable::new(g, n);
        let c = expand(&w, g, &table)?;
        let dc = differential(&table, &c);
        if dc.is_zero() {
            continue;
        }
        let q = expand(&q_superfield(&w), g, &table)?;
        if q != dc.scale(&rational(-1)) {
            return Ok((false, format!("{}: Q differs from -d on {}", g.spec, w.to_string().trim())));
        }
        checked += 1;
    }
    Ok((true, format!("{checked} trace words with nonzero differential agree exactly")))
}

fn top_degree_oracle(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let arith = cfg.arith();
    let engine = Engine::new(EngineConfig { arith, method: Some(Method::Monomial), ..Default::default() }, None);
    let mut count = 0;
    for (name, bound) in [("sl2", 4), ("so5", 3)] {
        let g = alg(name);
        for n in multidegrees_up_to(bound) {
            let h = engine.dim_h(&g, n.total() as usize, n)?.dim_h;
            let (s, _) = schemes::invariants_supercommuting(&g, n, &arith)?;
            if h != s.dim_scheme_invariants {
                return Ok((false, format!("{name} {n}: dim H = {h}, scheme invariants = {}", s.dim_scheme_invariants)));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} multidegrees (sl2 |n| <= 4, so5 |n| <= 3)")))
}

fn dense_oracle(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let arith = cfg.arith();
    let g = alg("sl2");
    let mut sectors = 0;
    let mut nonzero = 0;
    for n in multidegrees_up_to(5) {
        let table = GeneratorTable::new(&g, n);
        for d in sector::multidegree_dims(&g, n, &arith)? {
            let dense = dim_h_dense(&table, d.p, n);
            if dense != d.dim_h {
                return Ok((false, format!("({}, {n}): sparse {} vs dense {dense}", d.p, d.dim_h)));
            }
            sectors += 1;
            nonzero += usize::from(dense > 0);
        }
    }
    Ok((true, format!("{sectors} sectors with |n| <= 5 ({nonzero} nonzero)")))
}

fn sl2_saturation(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let arith = cfg.arith();
    let ec = EvalConfig::default();
    let g = alg("sl2");
    let mut orbits = 0;
    let mut nonzero = 0;
    for level in 0..=cfg.sl2_level_budget {
        let mut reps: Vec<MultiDegree> = MultiDegree::of_level(level).into_iter().map(|n| n.canonical()).collect();
        reps.sort();
        reps.dedup();
        for n in reps {
            if n.total() == 0 {
                continue;
            }
            for (p, h, f) in classes::fortuity_profile(&g, n, Method::Trace, &arith, &ec)? {
                if f != 0 {
                    return Ok((false, format!("fortuitous_dim = {f} at ({p}, {n}), level {level}")));
                }
                nonzero += usize::from(h > 0);
            }
            orbits += 1;
        }
    }
    Ok((
        true,
        format!("levels <= {}: {orbits} multidegree orbits, {nonzero} nonzero sectors, all spanned by gravitons", cfg.sl2_level_budget),
    ))
}

fn sl2_fortuitous(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let arith = cfg.arith();
    let ec = EvalConfig::default();
    let g = alg("sl2");
    let f = classes::fortuity(&g, 7, md("0,0,4,4,4"), Method::Trace, &arith, &ec)?;
    let certify = ArithConfig { certify: true, ..arith };
    let r = classes::verify_class(&classes::xif_sl2(), &g, Method::Monomial, &certify, &ec)?;
    let pass = f.fortuitous_dim >= 1 && r.closed && !r.exact && r.fortuitous && r.certified;
    Ok((
        pass,
        format!(
            "fortuitous_dim = {} (dim H = {}, graviton span = {}); XiF_sl2 closed = {}, exact = {}, fortuitous = {}, certified = {}",
            f.fortuitous_dim, f.dim_h, f.graviton_span, r.closed, r.exact, r.fortuitous, r.certified
        ),
    ))
}

fn charge_table(_: &ReproConfig) -> Result<(bool, String), Error> {
    let a = charges(8, md("0,0,3,3,3"));
    let b = charges(8, md("1,1,2,2,2"));
    let pass = a == ChargeVector::from_halves([1, 1, 5, 5, 5])
        && b == ChargeVector::from_halves([0, 0, 6, 6, 6])
        && b.sub(&a) == ChargeVector::of_q();
    Ok((pass, format!("{a} and {b}; second minus first {} = charge of Q", b.sub(&a))))
}

fn so7_representatives(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let arith = cfg.arith();
    let ec = EvalConfig::default();
    let g = alg("so7");
    let nc = classes::verify_class(&classes::xinc_so7(), &g, Method::Trace, &arith, &ec)?;
    let kernel = schemes::restriction_report_traces(&g, md("1,1,2,2,2"), &arith, &ec)?;
    let f = classes::verify_class(&classes::xif_so7(), &g, Method::Trace, &arith, &ec)?;
    let pass = nc.closed && nc.cartan_restriction_zero == Some(true) && kernel.dim_kernel >= 1 && f.closed;
    Ok((
        pass,
        format!(
            "XiNC_so7 closed = {}, cartan_restriction_zero = {:?}; non-Cartan kernel at (1,1,2,2,2) = {} ({} - {}); XiF_so7 closed = {}, exact = {}, fortuitous = {}",
            nc.closed,
            nc.cartan_restriction_zero,
            kernel.dim_kernel,
            kernel.dim_scheme_invariants,
            kernel.rank_restriction,
            f.closed,
            f.exact,
            f.fortuitous
        ),
    ))
}

fn langlands_mismatch(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let engine = Engine::new(EngineConfig { arith: cfg.arith(), ..Default::default() }, Some(Cache::in_memory()));
    let (a, b) = (alg("so7"), alg("sp6"));
    let full = engine.compare_langlands(&a, &b, cfg.lmax_compare)?;
    let below = engine.compare_langlands(&a, &b, cfg.lmax_compare - 1)?;
    let got: Vec<(usize, MultiDegree, i64)> = full.mismatches.iter().map(|m| (m.p, m.n, m.difference)).collect();
    let expected = vec![(8, md("0,0,3,3,3"), 1), (8, md("1,1,2,2,2"), 1)];
    let pass = got == expected && below.mismatches.is_empty();
    let list: Vec<String> = full
        .mismatches
        .iter()
        .map(|m| format!("(p={}, n={}) {} vs {}", m.p, m.n, m.dim_h_a, m.dim_h_b))
        .collect();
    Ok((
        pass,
        format!("lmax {}: [{}]; lmax {}: {} mismatches", cfg.lmax_compare, list.join(", "), cfg.lmax_compare - 1, below.mismatches.len()),
    ))
}

fn determinism(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let dir = std::env::temp_dir().join(format!("relcoh-repro-{}-{}", std::process::id(), cfg.seed));
    let _ = std::fs::remove_dir_all(&dir);
    let config = || EngineConfig { arith: cfg.arith(), ..Default::default() };
    let run = |engine: &Engine| -> Result<String, Error> {
        let mut out = String::new();
        for (name, level) in [("sl2", 8), ("so5", 6), ("so7", 6)] {
            out += &render(&engine.level_table(&alg(name), level)?, Format::Json)?;
        }
        Ok(out)
    };
    let fresh = run(&Engine::new(config(), None))?;
    let again = run(&Engine::new(config(), None))?;
    let filled = run(&Engine::new(config(), Some(Cache::open(&dir)?)))?;
    let reopened = run(&Engine::new(config(), Some(Cache::open(&dir)?)))?;
    let cached = Cache::open(&dir)?.len();
    let _ = std::fs::remove_dir_all(&dir);
    let ec = EvalConfig::default();
    let verdicts = || -> Result<String, Error> {
        let r = classes::verify_class(&classes::xif_sl2(), &alg("sl2"), Method::Trace, &cfg.arith(), &ec)?;
        render(&r, Format::Json)
    };
    let v1 = verdicts()?;
    let v2 = verdicts()?;
    let pass = fresh == again && fresh == filled && fresh == reopened && v1 == v2 && cached > 0;
    Ok((pass, format!("{} bytes of level-table JSON identical across fresh, cache-filling and cached runs ({cached} cached sectors); class verdicts identical", fresh.len())))
}

fn rank_stabilization(cfg: &ReproConfig) -> Result<(bool, String), Error> {
    let spans = classes::rank_stabilization(&alg("sl4"), &alg("sl6"), 4, &cfg.arith(), &EvalConfig::default())?;
    if let Some((p, n, a, b)) = spans.iter().find(|s| s.2 != s.3) {
        return Ok((false, format!("({p}, {n}): sl4 span {a}, sl6 span {b}")));
    }
    let total: usize = spans.iter().map(|s| s.2).sum();
    let nonzero = spans.iter().filter(|s| s.2 > 0).count();
    Ok((true, format!("{} sectors with |n| <= 4 agree; {nonzero} with nonzero span, total span {total}", spans.len())))
}
