//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p blfkit-core --test acceptance`.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use blfkit_core::algtop::{smith_normal_form, HomologyVector, IntMatrix};
use blfkit_core::fibration::{round_parities, validate, BrokenFibration, RoundParityStatus};
use blfkit_core::format::parse;
use blfkit_core::invariants::{
    compute_invariants, euler_characteristic, homeo_report, homology_from_presentation, pi1_presentation,
    tietze_simplify, GroupPresentation,
};
use blfkit_core::surface::{classify_round_parity, MappingClassRep, ParityClass};
use blfkit_core::surgery::{
    blow_down, broken_fiber_sum, example42_family, push_to_higher_side, step_fibration, trade_negative_node,
    BrokenFiberSumSpec,
};
use blfkit_core::sw::{vanishing_pipeline, wall_crossing, ChamberData, Sign};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::{any, Strategy};
use proptest::test_runner::TestCaseError;

const CASES: u32 = 500;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> BrokenFibration {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn cli(args: &[&str]) -> blfkit_core::cli::Outcome {
    blfkit_core::cli::run(std::iter::once("blfkit").chain(args.iter().copied()))
}

fn data_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn matsumoto_sum() -> Check {
    let spec = BrokenFiberSumSpec::new(load("matsumoto.blf"), 2, load("s2xs2.blf"), 0, vec![word("a1"), word("b2")]);
    let x = broken_fiber_sum(&spec).map_err(|e| e.to_string())?;
    ensure(validate(&x).is_ok(), || format!("sum does not validate: {:?}", validate(&x)))?;
    let r = compute_invariants(&x).map_err(|e| e.to_string())?;
    ensure(r.e == 8, || format!("e = {}", r.e))?;
    ensure(r.sigma == Some(-4), || format!("sigma = {:?}", r.sigma))?;
    ensure(r.chi_h() == Some(1.into()), || format!("chi_h = {:?}", r.chi_h()))?;
    ensure(r.pi1_trivial(), || format!("pi1 = {:?}", r.pi1))?;
    let report = homeo_report(&r);
    ensure(report.contains("CP^2 # 5 -CP^2"), || format!("report: {report}"))?;
    let out = cli(&["report", &data_path("matsumoto-sum.blf")]);
    ensure(out.code == 0 && out.stdout.contains("CP^2 # 5 -CP^2"), || format!("cli report: {out:?}"))?;
    let out = cli(&["invariants", &data_path("matsumoto-sum.blf")]);
    ensure(out.stdout.contains("pi1=trivial"), || format!("cli invariants: {out:?}"))
}

fn parity_classification() -> Check {
    let gamma = HomologyVector::from_i64(&[1, 0]);
    let mu = |rows: [[i64; 2]; 2]| {
        let m = IntMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2");
        MappingClassRep::from_matrix(m, 1).expect("symplectic")
    };
    let twisted = classify_round_parity(&mu([[-1, 2], [0, -1]]), &gamma).map_err(|e| e.to_string())?;
    ensure(twisted == ParityClass::Twisted, || format!("got {twisted:?}"))?;
    let untwisted = classify_round_parity(&mu([[1, 0], [0, 1]]), &gamma).map_err(|e| e.to_string())?;
    ensure(untwisted == ParityClass::Untwisted, || format!("got {untwisted:?}"))?;
    let statuses = round_parities(&example42_family(0)).map_err(|e| e.to_string())?;
    ensure(statuses == vec![RoundParityStatus::Computed(ParityClass::Twisted)], || format!("{statuses:?}"))?;
    let out = cli(&["parity", &data_path("example42.blf")]);
    ensure(out.stdout.contains("round[0]: Twisted"), || format!("cli parity: {out:?}"))
}

fn step_family() -> Check {
    for g in 0..=5usize {
        for k in -3..=3i64 {
            let f = step_fibration(g, k);
            let e = euler_characteristic(&f).map_err(|e| e.to_string())?;
            let expected = 2 - 4 * g as i64;
            ensure(e == expected && euler_oracle(&f) == expected, || format!("g={g} k={k}: e={e}"))?;
            ensure(validate(&f).is_ok(), || format!("g={g} k={k}: {:?}", validate(&f)))?;
            if g == 0 {
                let want = if k % 2 == 0 { "S2xS2 # S1xS3" } else { "S2x~S2 # S1xS3" };
                let got = f.declared().label.clone();
                ensure(got.as_deref() == Some(want), || format!("k={k}: label {got:?}"))?;
            }
        }
    }
    let out = cli(&["step", "--genus", "0", "--framing", "1"]);
    ensure(out.stdout.contains("S2x~S2 # S1xS3"), || format!("cli step: {out:?}"))
}

fn example42() -> Check {
    for k in -4..=4i64 {
        let f = example42_family(k);
        let e = euler_characteristic(&f).map_err(|e| e.to_string())?;
        ensure(e == 4 && euler_oracle(&f) == 4, || format!("k={k}: e={e}"))?;
        ensure(validate(&f).is_ok(), || format!("k={k}: {:?}", validate(&f)))?;
        let want = if k % 2 == 0 { "S2xS2" } else { "CP^2 # -CP^2" };
        ensure(f.declared().label.as_deref() == Some(want), || format!("k={k}: {:?}", f.declared().label))?;
    }
    let d = blow_down(&example42_family(-1), 0).map_err(|e| e.to_string())?;
    let e = euler_characteristic(&d).map_err(|e| e.to_string())?;
    ensure((e, d.signature()) == (3, Some(1)), || format!("blow-down: e={e} sigma={:?}", d.signature()))
}

fn wall_crossing_signs() -> Check {
    // (−1)^(d/2) from the parity of d/2, written out independently.
    for d in (0..=12).step_by(2) {
        let jump = if (d / 2) % 2 == 0 { 1 } else { -1 };
        for sw in -3..=3 {
            let cases = [
                (Sign::Plus, Sign::Minus, sw + jump),
                (Sign::Minus, Sign::Plus, sw - jump),
                (Sign::Plus, Sign::Plus, sw),
                (Sign::Minus, Sign::Minus, sw),
            ];
            for (h, hp, want) in cases {
                let got = wall_crossing(sw, d, ChamberData::new(h, hp)).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("d={d} sw={sw} {h:?}->{hp:?}: got {got}, want {want}"))?;
            }
        }
    }
    ensure(wall_crossing(0, 1, ChamberData::new(Sign::Plus, Sign::Minus)).is_err(), || "odd d accepted".into())
}

fn vanishing() -> Check {
    let t = vanishing_pipeline(0, 2).map_err(|e| e.to_string())?;
    ensure(t.sw_vanishes && t.to_string().contains("SW ≡ 0"), || format!("trace:\n{t}"))?;
    let weak = vanishing_pipeline(0, 1).map_err(|e| e.to_string())?;
    ensure(!weak.to_string().contains("SW ≡ 0"), || "b+ = 1 must not conclude vanishing".into())?;
    let out = cli(&["sw", "vanishing", "--torus-square", "0", "--b-plus", "2"]);
    ensure(out.stdout.contains("SW ≡ 0"), || format!("cli: {out:?}"))
}

fn matsumoto_relation() -> Check {
    let f = load("matsumoto.blf");
    let g = 2;
    let mut product = identity(2 * g);
    for c in &f.higher().cycles {
        product = mul(&product, &transvection(&class_of(&c.word.to_string(), g), 1));
    }
    ensure(product == identity(2 * g), || format!("oracle product {product:?}"))?;
    let out = cli(&["monodromy", &data_path("matsumoto.blf")]);
    ensure(out.stdout.contains("(identity)"), || format!("cli monodromy: {out:?}"))?;
    let p = pi1_presentation(&f, &[], false).map_err(|e| e.to_string())?;
    let h1 = homology_from_presentation(&tietze_simplify(&p));
    ensure(h1.betti == 2 && h1.torsion.is_empty(), || format!("H1 = {h1}"))
}

fn run_property<S, F>(name: &str, seed: u64, strategy: S, test: F) -> Check
where
    S: proptest::strategy::Strategy,
    F: Fn(S::Value) -> std::result::Result<(), TestCaseError>,
{
    seeded_runner(CASES, seed).run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn property_suites() -> Check {
    use blfkit_core::surface::{compose_monodromy, SignedTwist, TwistSign};

    run_property("symplectic closure", 1, twist_list(), |(g, twists)| {
        let ts: Vec<SignedTwist> = twists
            .iter()
            .map(|(v, s)| {
                SignedTwist::new(
                    HomologyVector::from_i64(v),
                    if *s { TwistSign::Positive } else { TwistSign::Negative },
                )
            })
            .collect();
        let m = compose_monodromy(&ts, g).map_err(|e| fail(e.to_string()))?;
        let got = to_mat(m.matrix().expect("matrix"));
        let mut want = identity(2 * g);
        for (v, s) in &twists {
            let v: Vec<i128> = v.iter().map(|&x| x.into()).collect();
            want = mul(&want, &transvection(&v, if *s { 1 } else { -1 }));
        }
        check(got == want, || format!("product mismatch for {twists:?}"))?;
        check(preserves_pairing(&got, g), || "pairing not preserved".into())
    })?;

    run_property("smith normal form", 2, small_matrix(), |rows| {
        let m = IntMatrix::from_rows(&rows).expect("rectangular");
        let s = smith_normal_form(&m);
        let udv = s.u.checked_mul(&m).and_then(|x| x.checked_mul(&s.v)).map_err(|e| fail(e.to_string()))?;
        check(udv == s.d && s.d.is_diagonal(), || format!("u m v != d for {rows:?}"))?;
        check(s.u.is_unimodular() && s.v.is_unimodular(), || "transform not unimodular".into())?;
        let oracle = invariant_factors_oracle(&to_mat(&m));
        let got: Vec<i128> = s.invariant_factors().iter().map(|x| i128::try_from(x).expect("small")).collect();
        check(got == oracle, || format!("factors {got:?} vs oracle {oracle:?} for {rows:?}"))
    })?;

    run_property("push conserves e", 3, directed_fibration(0), |f| {
        let e = euler_characteristic(&f).map_err(|e| fail(e.to_string()))?;
        let p = push_to_higher_side(&f).map_err(|e| fail(e.to_string()))?;
        let ep = euler_characteristic(&p).map_err(|e| fail(e.to_string()))?;
        check(e == euler_oracle(&f) && ep == e && euler_oracle(&p) == e, || format!("e {e} -> {ep}"))?;
        check(f.rounds().is_empty() || p.lower().cycles.is_empty(), || "cycles left below".into())
    })?;

    run_property("trade adds one to e", 4, with_negative_node(), |(f, index)| {
        let e = euler_characteristic(&f).map_err(|e| fail(e.to_string()))?;
        let t = trade_negative_node(&f, index).map_err(|e| fail(e.to_string()))?;
        let et = euler_characteristic(&t).map_err(|e| fail(e.to_string()))?;
        check(et == e + 1 && euler_oracle(&t) == e + 1, || format!("e {e} -> {et}"))?;
        check(t.cycle_count() + 1 == f.cycle_count(), || "node not removed".into())
    })?;

    run_property("tietze preserves H1", 5, presentation(), |(n, rels)| {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        let p = GroupPresentation::new(names, rels.clone()).map_err(|e| fail(e.to_string()))?;
        let before = homology_from_presentation(&p);
        let after = homology_from_presentation(&tietze_simplify(&p));
        check(before == after, || format!("{before} vs {after} for {rels:?}"))?;
        // Oracle: rank and factors of the exponent-sum matrix.
        let mut m = vec![vec![0i128; n]; rels.len().max(1)];
        for (i, r) in rels.iter().enumerate() {
            for &x in r {
                m[i][(x.unsigned_abs() - 1) as usize] += x.signum() as i128;
            }
        }
        let factors = invariant_factors_oracle(&m);
        let torsion: Vec<BigInt> = factors.iter().filter(|&&t| t > 1).map(|&t| BigInt::from(t)).collect();
        check(after.betti == n - factors.len() && after.torsion == torsion, || format!("oracle disagrees: {after}"))
    })?;

    run_property(
        "wall-crossing involution",
        6,
        (-20i64..=20, (0i64..=10).prop_map(|x| 2 * x), any::<bool>(), any::<bool>()),
        |(sw, d, h, hp)| {
            let sign = |b: bool| if b { Sign::Plus } else { Sign::Minus };
            let c = ChamberData::new(sign(h), sign(hp));
            let there = wall_crossing(sw, d, c).map_err(|e| fail(e.to_string()))?;
            let back = wall_crossing(there, d, c.reversed()).map_err(|e| fail(e.to_string()))?;
            check(back == sw, || format!("{sw} -> {there} -> {back}"))
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 broken sum of Matsumoto and S2xS2", matsumoto_sum),
        ("2 round parity classification", parity_classification),
        ("3 step fibrations g=0..5", step_family),
        ("4 twisted family and blow-down", example42),
        ("5 wall-crossing sign cases", wall_crossing_signs),
        ("6 vanishing pipeline", vanishing),
        ("7 Matsumoto relation and H1", matsumoto_relation),
        ("8 property suites", property_suites),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    let total = start.elapsed();
    if total.as_secs_f64() >= 30.0 {
        failed += 1;
        println!("FAIL runtime {total:.2?} exceeds 30 s");
    } else {
        println!("PASS runtime {total:.2?}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
