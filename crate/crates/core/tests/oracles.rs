//! Frozen reference values for small sectors, computed by both linear-algebra routes.

use relcoh_core::classes::{self, Method};
use relcoh_core::eval::{self, EvalConfig};
use relcoh_core::exactla::ArithConfig;
use relcoh_core::{build_algebra, schemes, sector, LieAlgebraData, MultiDegree};

fn alg(s: &str) -> LieAlgebraData {
    build_algebra(s.parse().unwrap()).unwrap()
}

fn md(s: &str) -> MultiDegree {
    MultiDegree::parse(s).unwrap()
}

fn both_routes(g: &LieAlgebraData, p: usize, n: MultiDegree) -> usize {
    let cfg = ArithConfig::default();
    let a = sector::sector_dims(g, p, n, &cfg).unwrap().dim_h;
    let b = eval::sector_dims(g, p, n, &cfg, &EvalConfig::default()).unwrap().dim_h;
    assert_eq!(a, b, "{} ({p}, {n})", g.spec);
    a
}

#[test]
fn small_sl2_sectors() {
    let g = alg("sl2");
    assert_eq!(both_routes(&g, 0, MultiDegree::ZERO), 1);
    assert_eq!(both_routes(&g, 2, md("0,0,1,1,0")), 1);
    assert_eq!(both_routes(&g, 3, md("0,0,1,1,0")), 0);
    assert_eq!(both_routes(&g, 1, md("0,0,1,0,0")), 0);
    assert_eq!(both_routes(&g, 2, md("1,1,0,0,0")), 1);
}

#[test]
fn top_degree_matches_scheme_invariants() {
    let cfg = ArithConfig::default();
    for (s, n) in [("sl2", "0,0,1,1,0"), ("sl2", "1,1,0,0,0"), ("so5", "0,0,1,1,1"), ("sp4", "1,0,1,1,0")] {
        let g = alg(s);
        let n = md(n);
        let (scheme, _) = schemes::invariants_supercommuting(&g, n, &cfg).unwrap();
        assert_eq!(scheme.dim_scheme_invariants, both_routes(&g, n.total() as usize, n), "{s} {n}");
    }
}

#[test]
fn sl2_fortuitous_sector() {
    let cfg = ArithConfig::default();
    let ec = EvalConfig::default();
    let g = alg("sl2");
    let f = classes::fortuity(&g, 7, md("0,0,4,4,4"), Method::Trace, &cfg, &ec).unwrap();
    assert_eq!((f.dim_h, f.graviton_span, f.fortuitous_dim), (1, 0, 1));
    let r = classes::verify_class(&classes::xif_sl2(), &g, Method::Trace, &cfg, &ec).unwrap();
    assert!(r.closed && !r.exact && r.fortuitous);
}

#[test]
fn killing_form_is_a_graviton() {
    let cfg = ArithConfig::default();
    let ec = EvalConfig::default();
    for s in ["sl2", "sl3", "so5", "sp4", "so7"] {
        let g = alg(s);
        let f = classes::fortuity(&g, 2, md("0,0,1,1,0"), Method::Trace, &cfg, &ec).unwrap();
        assert_eq!((f.dim_h, f.graviton_span), (1, 1), "{s}");
    }
}
