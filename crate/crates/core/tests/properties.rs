mod common;

use blfkit_core::algtop::{is_symplectic, pairing as lib_pairing, HomologyVector};
use blfkit_core::fibration::{validate, BrokenFibration, Declared, FormParity, LefschetzPiece};
use blfkit_core::format::{parse, serialize};
use blfkit_core::invariants::{
    almost_complex_parity, broken_sum_invariants, euler_characteristic, homeo_report, GroupPresentation,
    InvariantRecord,
};
use blfkit_core::surface::{compose_monodromy, dehn_twist_action, CurveWord, SignedTwist, TwistSign};
use blfkit_core::surgery::{blow_down, blow_up_base_point, broken_fiber_sum, connected_sum_model, BrokenFiberSumSpec};
use blfkit_core::sw::{adjunction_check, section_constraint, sw_symmetry, SectionVerdict};
use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 200, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

fn lefschetz_with(g: usize, words: Vec<String>, sigma: i64) -> BrokenFibration {
    let cycles = words.iter().map(|w| blfkit_core::fibration::Cycle::positive(word(w))).collect();
    BrokenFibration::lefschetz(LefschetzPiece::with_cycles(g, cycles))
        .with_declared(Declared { sigma: Some(sigma), ..Declared::default() })
}

fn words_on(g: usize) -> BoxedStrategy<Vec<String>> {
    if g == 0 {
        Just(Vec::new()).boxed()
    } else {
        prop::collection::vec(word_text(g), 0..=4).boxed()
    }
}

/// Two Lefschetz fibrations of genus `g1 ≥ g2` and attaching curves
/// `a_{g2+1}, …, a_{g1}` (or `b`) in shuffled order.
fn sum_inputs() -> impl Strategy<Value = (BrokenFibration, usize, BrokenFibration, usize, Vec<String>)> {
    (0usize..=3, 0usize..=2)
        .prop_flat_map(|(g2, k)| {
            let g1 = g2 + k;
            let gammas = prop::collection::vec(any::<bool>(), k).prop_shuffle();
            (Just(g1), Just(g2), words_on(g1), words_on(g2), -8i64..=8, -8i64..=8, gammas, Just(k))
        })
        .prop_map(|(g1, g2, w1, w2, s1, s2, bs, _)| {
            let gammas =
                bs.iter().enumerate().map(|(i, &b)| format!("{}{}", if b { 'b' } else { 'a' }, g2 + 1 + i)).collect();
            (lefschetz_with(g1, w1, s1), g1, lefschetz_with(g2, w2, s2), g2, gammas)
        })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn pairing_is_antisymmetric((g, x, y) in (1usize..=3).prop_flat_map(|g| {
        (Just(g), prop::collection::vec(-5i64..=5, 2 * g), prop::collection::vec(-5i64..=5, 2 * g))
    })) {
        let (hx, hy) = (HomologyVector::from_i64(&x), HomologyVector::from_i64(&y));
        let xy = lib_pairing(&hx, &hy, g).unwrap();
        let yx = lib_pairing(&hy, &hx, g).unwrap();
        prop_assert_eq!(&xy, &-yx);
        let ox: Vec<i128> = x.iter().map(|&v| v.into()).collect();
        let oy: Vec<i128> = y.iter().map(|&v| v.into()).collect();
        prop_assert_eq!(xy, pairing(&ox, &oy).into());
    }

    #[test]
    fn twist_matches_transvection_oracle((g, v) in (1usize..=3).prop_flat_map(|g| {
        (Just(g), prop::collection::vec(-3i64..=3, 2 * g))
    })) {
        let m = dehn_twist_action(&HomologyVector::from_i64(&v), g).unwrap();
        let ov: Vec<i128> = v.iter().map(|&x| x.into()).collect();
        prop_assert_eq!(to_mat(m.matrix().unwrap()), transvection(&ov, 1));
    }

    #[test]
    fn abelianization_is_conjugation_invariant((g, w, u) in (1usize..=3).prop_flat_map(|g| {
        (Just(g), word_text(g), word_text(g))
    })) {
        let w = word(&w);
        let c = w.conjugate(&word(&u));
        prop_assert_eq!(w.abelianize(g).unwrap(), c.abelianize(g).unwrap());
    }

    #[test]
    fn words_round_trip_and_abelianize_like_oracle((g, w) in (1usize..=3).prop_flat_map(|g| (Just(g), word_text(g)))) {
        let parsed = word(&w);
        let class: Vec<i128> = parsed.abelianize(g).unwrap().to_i64().unwrap().into_iter().map(i128::from).collect();
        prop_assert_eq!(class, class_of(&w, g));
        prop_assert_eq!(CurveWord::parse(&parsed.to_string()).unwrap(), parsed);
    }

    #[test]
    fn product_of_twists_is_symplectic((g, twists) in twist_list()) {
        let ts: Vec<SignedTwist> = twists
            .iter()
            .map(|(v, s)| SignedTwist::new(HomologyVector::from_i64(v), if *s { TwistSign::Positive } else { TwistSign::Negative }))
            .collect();
        let m = compose_monodromy(&ts, g).unwrap();
        prop_assert!(is_symplectic(m.matrix().unwrap(), g).unwrap());
        prop_assert!(preserves_pairing(&to_mat(m.matrix().unwrap()), g));
    }

    #[test]
    fn documents_round_trip(f in directed_fibration(0)) {
        let text = serialize(&f);
        prop_assert_eq!(parse(&text).unwrap(), f);
    }

    #[test]
    fn validate_is_deterministic(f in directed_fibration(0)) {
        prop_assert_eq!(validate(&f), validate(&f));
    }

    #[test]
    fn broken_sum_matches_formula((x1, g1, x2, g2, gammas) in sum_inputs()) {
        let spec = BrokenFiberSumSpec::new(x1.clone(), g1, x2.clone(), g2, gammas.iter().map(|s| word(s)).collect());
        let s = broken_fiber_sum(&spec).unwrap();
        let e1 = euler_characteristic(&x1).unwrap();
        let e2 = euler_characteristic(&x2).unwrap();
        let (e, sigma, _) = broken_sum_invariants(
            (e1, x1.signature().unwrap(), g1 as i64),
            (e2, x2.signature().unwrap(), g2 as i64),
            true,
        ).unwrap();
        prop_assert_eq!(euler_characteristic(&s).unwrap(), e);
        prop_assert_eq!(euler_oracle(&s), e);
        prop_assert_eq!(s.signature(), Some(sigma));
        prop_assert_eq!(s.rounds().len(), g1 - g2);
    }

    #[test]
    fn broken_sum_is_symmetric((x1, g1, x2, g2, gammas) in sum_inputs()) {
        let gs: Vec<CurveWord> = gammas.iter().map(|s| word(s)).collect();
        let a = broken_fiber_sum(&BrokenFiberSumSpec::new(x1.clone(), g1, x2.clone(), g2, gs.clone())).unwrap();
        let b = broken_fiber_sum(&BrokenFiberSumSpec::new(x2, g2, x1, g1, gs)).unwrap();
        prop_assert_eq!(euler_characteristic(&a).unwrap(), euler_characteristic(&b).unwrap());
        prop_assert_eq!(a.signature(), b.signature());
    }

    #[test]
    fn chi_h_integrality_matches_parity(g1 in 1i64..=6, g2 in 1i64..=6, a in -3i64..=3, b in -3i64..=3) {
        // Summands with integral χ_h: e + σ = 4χ_h.
        let (e1, s1) = (4 * a + 8, -8);
        let (e2, s2) = (4 * b, 0);
        let (_, _, chi) = broken_sum_invariants((e1, s1, g1), (e2, s2, g2), false).unwrap();
        prop_assert_eq!(chi.is_integer(), almost_complex_parity(g1, g2));
    }

    #[test]
    fn connected_sum_adds_one_separating_round(f1 in directed_fibration(1), f2 in directed_fibration(0)) {
        let c = connected_sum_model(&f1, &f2).unwrap();
        let seps = |f: &BrokenFibration| f.rounds().iter().filter(|r| r.separating).count();
        prop_assert_eq!(seps(&c), seps(&f1) + seps(&f2) + 1);
        prop_assert_eq!(
            euler_characteristic(&c).unwrap(),
            euler_characteristic(&f1).unwrap() + euler_characteristic(&f2).unwrap() - 2
        );
        prop_assert_eq!(euler_oracle(&c), euler_characteristic(&c).unwrap());
    }

    #[test]
    fn blow_down_then_up_restores_totals(f in directed_fibration(0), extra in 0usize..3) {
        let mut sections = f.sections().to_vec();
        sections.insert(0, -1);
        for _ in 0..extra {
            sections.push(-1);
        }
        let f = f.with_sections(sections).with_declared(Declared { sigma: Some(-2), ..Declared::default() });
        let d = blow_down(&f, 0).unwrap();
        prop_assert_eq!(euler_characteristic(&d).unwrap(), euler_characteristic(&f).unwrap() - 1);
        prop_assert_eq!(d.signature(), Some(-1));
        let u = blow_up_base_point(&d).unwrap();
        prop_assert_eq!(euler_characteristic(&u).unwrap(), euler_characteristic(&f).unwrap());
        prop_assert_eq!(u.signature(), f.signature());
    }

    #[test]
    fn homeo_report_balances(half in 0i64..=20, sigma_half in -20i64..=20, odd in any::<bool>()) {
        let b2 = 2 * half;
        prop_assume!(sigma_half.abs() <= half);
        let sigma = 2 * sigma_half;
        let r = InvariantRecord {
            e: b2 + 2,
            sigma: Some(sigma),
            b_plus: None,
            pi1: Some(GroupPresentation::new(vec![], vec![]).unwrap()),
            h1: None,
            label: None,
            form: Some(if odd { FormParity::Odd } else { FormParity::Even }),
            near_symplectic: false,
        };
        let text = homeo_report(&r);
        let field = |k: &str| -> i64 {
            text.lines().find_map(|l| l.strip_prefix(&format!("{k}="))).unwrap().parse().unwrap()
        };
        let (bp, bm) = (field("b_plus"), field("b_minus"));
        prop_assert_eq!(bp + bm, r.e - 2);
        prop_assert_eq!(bp - bm, sigma);
    }

    #[test]
    fn sw_symmetry_is_an_involution(v in -50i64..=50, e in -40i64..=40, k in -10i64..=10) {
        let sigma = 4 * k - e;
        prop_assert_eq!(sw_symmetry(sw_symmetry(v, e, sigma).unwrap(), e, sigma).unwrap(), v);
    }

    #[test]
    fn adjunction_is_monotone_in_genus(g in 1i64..=10, dg in 0i64..=5, sq in 0i64..=20, p in -20i64..=20) {
        if adjunction_check(g, sq, p).unwrap() {
            prop_assert!(adjunction_check(g + dg, sq, p).unwrap());
        }
    }

    #[test]
    fn section_constraint_forbids_exactly_nonnegative(b in 2i64..=10, k in -10i64..=10) {
        let forbidden = section_constraint(b, true, k) == SectionVerdict::Forbidden;
        prop_assert_eq!(forbidden, k >= 0);
    }
}
