mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resilient_bf::constructions::{
    self, families, gate_lower_bound, solve_tradeoff, table1, Construction, ConstructionParams, Family, PsiSpec, StepOutput,
    TradeoffCase,
};
use resilient_bf::spectra::{self, DyadicRational};
use resilient_bf::{anf, immunity, BitPermutation, TruthTable};

fn id(k: usize) -> BitPermutation {
    BitPermutation::identity(k)
}

fn props(f: &TruthTable) -> (i32, DyadicRational) {
    let s = spectra::walsh_transform(f);
    (spectra::resiliency_order(&s), spectra::linear_bias(&s))
}

#[test]
fn majority_examples() {
    assert_eq!(constructions::majority(1).unwrap(), TruthTable::variable(1, 1).unwrap());
    assert!(constructions::majority(0).is_err());
}

#[test]
fn mm_examples() {
    let f = constructions::mm_bent(&id(2), &constructions::majority(2).unwrap()).unwrap();
    assert_eq!(spectra::nonlinearity(&spectra::walsh_transform(&f)), 6);
    let f4 = constructions::mm_bent(&id(4), &constructions::majority(4).unwrap()).unwrap();
    assert!(immunity::ai_at_least(&f4, 2).unwrap());
    assert!(families::mm_majority(&id(1)).is_err());
    assert!(constructions::mm_bent(&id(3), &constructions::majority(2).unwrap()).is_err());
}

#[test]
fn even_family_examples() {
    let f = constructions::parity_mm(0, 5, &id(2)).unwrap();
    assert!(f.is_balanced());
    assert_eq!(props(&f).1, DyadicRational::pow2_neg(2));
    let f = constructions::parity_mm(1, 10, &id(4)).unwrap();
    assert_eq!(props(&f), (1, DyadicRational::pow2_neg(4)));
    assert!(constructions::parity_mm(0, 4, &id(1)).is_err());
    assert!(constructions::parity_mm(0, 6, &id(2)).is_err());
}

#[test]
fn odd_family_examples() {
    let f = constructions::parity_f5_mm(1, 9, &id(2)).unwrap();
    assert_eq!(props(&f), (1, DyadicRational::pow2_neg(4)));
    let f = constructions::parity_f5_mm(2, 10, &id(2)).unwrap();
    assert_eq!(props(&f).0, 2);
    assert!(constructions::parity_f5_mm(0, 9, &id(2)).is_err());
}

#[test]
fn step_of_single_variables_is_two_resilient() {
    let x = TruthTable::variable(1, 1).unwrap();
    let (g, h) = constructions::step(&x, &x).unwrap();
    for f in [g, h] {
        assert_eq!(f.n(), 4);
        assert!(props(&f).0 >= 2);
    }
}

#[test]
fn step_restrictions_recover_the_seeds() {
    use std::collections::BTreeMap;
    let (gc, hc) = seeds(1, 5);
    let (g, h) = (gc.truth_table().unwrap(), hc.truth_table().unwrap());
    let allowed = [g.clone(), g.complement(), h.clone(), h.complement()];
    let (big_g, big_h) = constructions::step(&g, &h).unwrap();
    for f in [big_g, big_h] {
        for v in 0..8u8 {
            let fixed: BTreeMap<usize, bool> = (0..3).map(|i| (6 + i, (v >> i) & 1 == 1)).collect();
            assert!(allowed.contains(&f.restrict(&fixed).unwrap()));
        }
    }
}

#[test]
fn iter_with_zero_rounds_is_concat() {
    let (gc, hc) = seeds(0, 5);
    let (g, h) = (gc.truth_table().unwrap(), hc.truth_table().unwrap());
    assert_eq!(constructions::iter(&g, &h, 0).unwrap(), TruthTable::concat(&g, &h).unwrap());
}

#[test]
fn iter_on_balanced_seeds() {
    let (gc, hc) = seeds(0, 7);
    let (g, h) = (gc.truth_table().unwrap(), hc.truth_table().unwrap());
    let base = props(&TruthTable::concat(&g, &h).unwrap()).1;
    let f = constructions::iter(&g, &h, 2).unwrap();
    let (m, lb) = props(&f);
    assert!(m >= 4);
    assert_eq!(lb, base.scale_pow2(-2));
}

#[test]
fn general_construction_examples() {
    let f = constructions::iter_parity_mm(9, 1, &id(2)).unwrap();
    assert_eq!(props(&f), (2, DyadicRational::pow2_neg(3)));
    assert!(immunity::algebraic_immunity(&f).unwrap().0 >= 1);
    let f = constructions::iter_parity_mm(13, 1, &id(4)).unwrap();
    assert_eq!(props(&f).1, DyadicRational::pow2_neg(5));
    assert!(immunity::ai_at_least(&f, 2).unwrap());
    let f = constructions::iter_gadget_mm(12, 1, &id(2)).unwrap();
    assert_eq!(props(&f), (3, DyadicRational::pow2_neg(5)));
}

#[test]
fn first_case_seed_pair_collapses_to_parity_plus_bent() {
    for k in 2..=5usize {
        let n = 2 * k + 2;
        let concat = constructions::iter_parity_mm(n, 0, &id(k)).unwrap();
        let mm = constructions::mm_bent(&id(k), &constructions::majority(k).unwrap()).unwrap();
        let x = TruthTable::variable(1, 1).unwrap();
        let want = TruthTable::direct_sum(&TruthTable::direct_sum(&x, &mm).unwrap(), &x).unwrap();
        assert_eq!(concat, want, "k={k}");
    }
}

#[test]
fn trees_agree_with_tables_and_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for inst in catalogue(14) {
        let tt = inst.c.truth_table().unwrap();
        assert_eq!(tt.n(), inst.c.n());
        for _ in 0..64 {
            let x: u64 = rng.gen_range(0..1u64 << tt.n());
            let bits: Vec<bool> = (0..tt.n()).map(|j| (x >> j) & 1 == 1).collect();
            assert_eq!(inst.c.evaluate(&bits).unwrap(), tt.get(x as usize), "{}", inst.name);
        }
    }
    let c = families::parity_mm(2, 11, &id(4)).unwrap();
    assert_eq!(c.truth_table().unwrap(), constructions::parity_mm(2, 11, &id(4)).unwrap());
    assert!(c.evaluate(&[true; 3]).is_err());
}

#[test]
fn catalogue_meets_its_guarantees() {
    for inst in catalogue(16) {
        let tt = inst.c.truth_table().unwrap();
        let s = spectra::walsh_transform(&tt);
        let m = spectra::resiliency_order(&s);
        if inst.m_exact {
            assert_eq!(m, inst.m, "{}", inst.name);
        } else {
            assert!(m >= inst.m, "{}: resiliency {m} < {}", inst.name, inst.m);
        }
        if let Some(x) = inst.x {
            assert_eq!(spectra::linear_bias(&s), DyadicRational::pow2_neg(x), "{}", inst.name);
        }
        if m >= 0 {
            assert!(spectra::siegenthaler_check(tt.n(), m as usize, anf::degree(&tt)), "{}", inst.name);
        }
        if inst.a > 0 && tt.n() <= 14 {
            assert!(immunity::ai_at_least(&tt, inst.a).unwrap(), "{}", inst.name);
        }
    }
}

#[test]
fn solver_examples() {
    let s = solve_tradeoff(4, 6, 3).unwrap();
    let tuples: Vec<_> = s.cases.iter().map(|c| c.tuple()).collect();
    assert_eq!(tuples, vec![(17, 4, 6, 3), (20, 4, 8, 3), (20, 4, 8, 3), (23, 5, 10, 3)]);
    let s = solve_tradeoff(7, 12, 4).unwrap();
    let tuples: Vec<_> = s.cases.iter().map(|c| c.tuple()).collect();
    assert_eq!(tuples, vec![(32, 7, 12, 6), (31, 7, 12, 5), (30, 8, 12, 4), (30, 7, 13, 4)]);
    let s = solve_tradeoff(0, 1, 1).unwrap();
    assert_eq!(s.case(TradeoffCase::Even).tuple(), (5, 0, 2, 1));
    assert!(solve_tradeoff(1, 0, 1).is_err());
    assert!(solve_tradeoff(1, 1, 0).is_err());
}

#[test]
fn gate_lower_bound_examples() {
    assert_eq!(gate_lower_bound(4, 6, 3), 11);
    assert_eq!(gate_lower_bound(0, 1, 1), 1);
}

#[test]
fn table_examples() {
    let t = table1();
    assert_eq!(t.len(), 12);
    let row = |targets| t.iter().find(|s| s.targets == targets).unwrap();
    assert_eq!(row((4, 9, 3)).case(TradeoffCase::Even).tuple(), (23, 4, 9, 5));
    assert_eq!(row((7, 6, 3)).case(TradeoffCase::IterOdd).tuple(), (26, 8, 10, 3));
    assert_eq!(row((7, 9, 4)).case(TradeoffCase::IterEven).tuple(), (30, 7, 13, 4));
}

#[test]
fn small_solver_outputs_meet_their_tuples() {
    for (m0, x0, a0) in [(0, 2, 1), (1, 2, 2), (2, 3, 1), (1, 4, 2), (3, 3, 2)] {
        for case in solve_tradeoff(m0, x0, a0).unwrap().cases {
            if case.n > 16 {
                continue;
            }
            let f = case.construction(&id(case.psi_len())).unwrap().truth_table().unwrap();
            let (m, lb) = props(&f);
            assert!(m >= case.m as i32, "{case}: resiliency {m}");
            assert!(lb <= DyadicRational::pow2_neg(case.x as u32), "{case}: LB {lb}");
            assert!(immunity::ai_at_least(&f, case.a).unwrap(), "{case}: AI");
            assert_eq!(f.nondegenerate_vars().len(), case.n, "{case}: degenerate");
        }
    }
}

#[test]
fn table_outputs_depend_on_every_variable() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for sol in table1() {
        for case in &sol.cases {
            let c = case.construction(&id(case.psi_len())).unwrap();
            assert_eq!(c.n(), case.n);
            for j in 0..case.n {
                let live = (0..4096).any(|_| {
                    let mut x: Vec<bool> = (0..case.n).map(|_| rng.gen()).collect();
                    let a = c.evaluate(&x).unwrap();
                    x[j] = !x[j];
                    a != c.evaluate(&x).unwrap()
                });
                assert!(live, "{case}: X_{} looks degenerate", j + 1);
            }
        }
    }
}

#[test]
fn params_and_psi_parsing() {
    assert_eq!("identity".parse::<PsiSpec>().unwrap(), PsiSpec::Identity);
    assert_eq!("random:7".parse::<PsiSpec>().unwrap(), PsiSpec::Random(7));
    let p: PsiSpec = "2,3,1".parse().unwrap();
    assert_eq!(p.to_string(), "2,3,1");
    assert!("1,1,2".parse::<PsiSpec>().is_err());
    assert!(p.resolve(4).is_err());
    assert_eq!("parity_mm".parse::<Family>().unwrap(), Family::ParityMm);
    assert!("nope".parse::<Family>().is_err());

    let c = ConstructionParams::new(Family::ParityMm).with_m(1).with_n(10).build().unwrap();
    assert_eq!(c.n(), 10);
    assert!(ConstructionParams::new(Family::ParityMm).with_n(10).build().is_err());
    assert!(ConstructionParams::new(Family::Maj).with_n(5).with_t(1).build().is_err());
    let c = ConstructionParams::new(Family::Iter).with_m(1).with_n(5).with_t(2).build().unwrap();
    assert_eq!(c.n(), 12);
    let mut p = ConstructionParams::new(Family::Step).with_m(0).with_n(5);
    p.half = StepOutput::H;
    assert_eq!(p.build().unwrap(), families::step(seeds(0, 5).0, seeds(0, 5).1, StepOutput::H).unwrap());
    let c = ConstructionParams::new(Family::Mm).with_n(8).with_psi(PsiSpec::Random(5)).build().unwrap();
    assert_eq!(c, families::mm_majority(&BitPermutation::random(4, 5)).unwrap());
    assert!(matches!(ConstructionParams::new(Family::F5).build().unwrap(), Construction::F5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_reaches_its_targets(m0 in 0usize..=12, x0 in 1usize..=16, a0 in 1usize..=8) {
        let s = solve_tradeoff(m0, x0, a0).unwrap();
        prop_assert_eq!(s.cases.len(), 4);
        for c in &s.cases {
            prop_assert!(c.m >= m0 && c.x >= x0 && c.a >= a0, "{}", c);
            prop_assert_eq!(c.construction(&id(c.psi_len())).unwrap().n(), c.n);
            prop_assert!(c.n > gate_lower_bound(m0, x0, a0));
        }
        prop_assert!(s.cases.iter().all(|c| c.n >= s.selected().n));
    }

    #[test]
    fn random_psi_keeps_even_family_guarantees(m in 0usize..=3, k in 2usize..=5, seed in any::<u64>()) {
        let n = m + 1 + 2 * k;
        let f = constructions::parity_mm(m, n, &BitPermutation::random(k, seed)).unwrap();
        prop_assert_eq!(props(&f), (m as i32, DyadicRational::pow2_neg(k as u32)));
        prop_assert!(immunity::ai_at_least(&f, (n - m - 1).div_ceil(4)).unwrap());
    }

    #[test]
    fn step_balancedness_dichotomy(m in 0usize..=1, seed in any::<u64>()) {
        let n = 5;
        let (gc, hc) = families::seed_pair(m, n, |k| Ok(BitPermutation::random(k, seed))).unwrap();
        let (g, h) = (gc.truth_table().unwrap(), hc.truth_table().unwrap());
        let (big_g, big_h) = constructions::step(&g, &h).unwrap();
        let (sg, sh) = (spectra::walsh_transform(&big_g), spectra::walsh_transform(&big_h));
        prop_assert!((0..1u64 << (n + 3)).all(|a| sg.at(a) == 0 || sh.at(a) == 0));
    }
}
