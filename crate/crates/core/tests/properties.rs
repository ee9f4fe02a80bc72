//! Property tests across modules: the differential is a g-equivariant odd derivation squaring
//! to zero, charges shift by the Q charge with the degree, and trace words round-trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use relcoh_core::classes::symtr;
use relcoh_core::cochain::{differential, g_action, Cochain, GeneratorTable, SuperMonomial};
use relcoh_core::superspace::ChargeVector;
use relcoh_core::trace::{TraceTerm, TraceWord};
use relcoh_core::{build_algebra, charges, AMonomial, LieAlgebraData, MultiDegree};

const ALGEBRAS: [&str; 4] = ["sl2", "sl3", "so5", "sp4"];
const BOUND: MultiDegree = MultiDegree([2, 2, 1, 1, 1]);

fn algebra(i: usize) -> LieAlgebraData {
    build_algebra(ALGEBRAS[i].parse().unwrap()).unwrap()
}

fn arb_mono() -> impl Strategy<Value = AMonomial> {
    (0u32..=1, 0u32..=1, 0u8..8).prop_filter("non-unit", |(a, b, t)| a + b + (*t as u32) > 0).prop_map(|(a, b, t)| AMonomial::new(a, b, t))
}

/// A random word as `(generator index seeds, monomials)`, normal-ordered in the table.
fn word(table: &GeneratorTable, g: &LieAlgebraData, gens: &[(usize, AMonomial)]) -> Option<(i64, SuperMonomial)> {
    let ids: Vec<u32> = gens.iter().map(|&(a, m)| table.id(a % g.dim(), m)).collect();
    table.normal_order(&ids)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn arb_gens(max: usize) -> impl Strategy<Value = Vec<(usize, AMonomial)>> {
    prop::collection::vec((0usize..64, arb_mono()), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squares_to_zero(alg in 0usize..4, gens in arb_gens(4)) {
        let g = algebra(alg);
        let table = GeneratorTable::new(&g, BOUND);
        if let Some((s, w)) = word(&table, &g, &gens) {
            let mut c = Cochain::zero();
            c.add_term(w, rat(s));
            prop_assert!(differential(&table, &differential(&table, &c)).is_zero());
        }
    }

    #[test]
    fn d_is_an_odd_derivation(alg in 0usize..4, a in arb_gens(2), b in arb_gens(2)) {
        let g = algebra(alg);
        let table = GeneratorTable::new(&g, BOUND);
        let (Some((sa, wa)), Some((sb, wb))) = (word(&table, &g, &a), word(&table, &g, &b)) else { return Ok(()) };
        let parity = table.word_parity(&wa);
        let mut ca = Cochain::zero();
        ca.add_term(wa, rat(sa));
        let mut cb = Cochain::zero();
        cb.add_term(wb, rat(sb));
        let lhs = differential(&table, &ca.mul(&cb, &table));
        let mut rhs = differential(&table, &ca).mul(&cb, &table);
        let sign = if parity == 1 { -1 } else { 1 };
        rhs.add_scaled(&ca.mul(&differential(&table, &cb), &table), &rat(sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_commutes_with_the_action(alg in 0usize..4, gens in arb_gens(3), x in 0usize..64) {
        let g = algebra(alg);
        let table = GeneratorTable::new(&g, BOUND);
        if let Some((s, w)) = word(&table, &g, &gens) {
            let mut c = Cochain::zero();
            c.add_term(w, rat(s));
            let x = x % g.dim();
            prop_assert_eq!(differential(&table, &g_action(&table, x, &c)), g_action(&table, x, &differential(&table, &c)));
        }
    }

    #[test]
    fn charge_shifts_by_q(p in 0u32..12, n in prop::array::uniform5(0u32..6)) {
        let n = MultiDegree(n);
        prop_assert_eq!(charges(p + 1, n).sub(&charges(p, n)), ChargeVector::of_q());
        prop_assert_eq!(n.canonical().canonical(), n.canonical());
        prop_assert_eq!(n.canonical().level(), n.level());
    }

    #[test]
    fn trace_words_round_trip(traces in prop::collection::vec(prop::collection::vec(arb_mono(), 1..4), 1..3), c in -20i64..20) {
        let w = TraceWord { terms: vec![TraceTerm { coeff: rat(c), traces }] }.canonical();
        prop_assert_eq!(TraceWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn symtr_is_graded_symmetric(letters in prop::collection::vec(arb_mono(), 1..5), i in 0usize..4) {
        let i = i % letters.len();
        let j = (i + 1) % letters.len();
        let mut swapped = letters.clone();
        swapped.swap(i, j);
        let a = symtr(&letters);
        let b = symtr(&swapped);
        // Swapping two adjacent odd letters costs a sign; any other swap is free.
        let odd = |m: AMonomial| relcoh_core::trace::letter_parity(m) == 1;
        let sign = if i != j && j == i + 1 && odd(letters[i]) && odd(letters[j]) { -1 } else { 1 };
        if i == j || j == i + 1 {
            let mut diff = a.clone();
            diff.add(&b.scale(&rat(-sign)));
            prop_assert!(diff.is_zero());
        }
    }
}
