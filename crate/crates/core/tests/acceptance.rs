//! Exit criteria for the crate. Each check prints one PASS/FAIL line and the
//! binary exits non-zero if any check fails.

use rand::Rng;
use wywitness::criteria::{CriterionId, Evaluator, Verdict};
use wywitness::matcore::{principal_sqrt, random, ComplexMatrix, DensityMatrix, Subsystem};
use wywitness::observable::{parse_observable, Observable};
use wywitness::scan::ThresholdSearch;
use wywitness::states::{self, FamilyId, StateSpec};
use wywitness::wyquant::{
    covariance, skew_info_lower_bound, skew_information, variance, wy_correlation,
    UncertaintyProfile,
};
use wywitness::Complex64;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const SAMPLES: u64 = 1000;
const PROPERTY_TOL: f64 = 1e-9;

fn obs(s: &str) -> Observable {
    parse_observable(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn threshold(
    family: FamilyId,
    fixed: &[(&str, f64)],
    param: &str,
    (lo, hi): (f64, f64),
    criterion: CriterionId,
    (a, b): (&str, &str),
    bracket_tol: f64,
) -> Result<wywitness::scan::ThresholdResult, String> {
    let mut spec = StateSpec::new(family);
    for (k, v) in fixed {
        spec.set_real(k, *v);
    }
    ThresholdSearch {
        spec,
        param: param.into(),
        lo,
        hi,
        criterion,
        a: obs(a),
        b: obs(b),
        evaluator: Evaluator::default(),
        bracket_tol,
        prescan: 64,
    }
    .run()
    .map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let third = 1.0 / 3.0;
    let mut found = Vec::new();
    for pair in [("XY", "YX"), ("ZI", "IZ")] {
        let r = threshold(
            FamilyId::Werner,
            &[],
            "p",
            (0.0, 1.0),
            CriterionId::ProposedPt,
            pair,
            1e-9,
        )?;
        ensure(!r.non_monotonic, || {
            format!("{pair:?}: several flips {:?}", r.flips)
        })?;
        ensure((r.threshold - third).abs() <= 1e-6, || {
            format!("{pair:?}: threshold {} vs 1/3", r.threshold)
        })?;
        found.push(r.threshold);
    }
    Ok(format!(
        "XY,YX -> {:.12}, ZI,IZ -> {:.12}",
        found[0], found[1]
    ))
}

fn criterion_2() -> Check {
    let ev = Evaluator::default();
    let (a, b) = (obs("ZI"), obs("IZ"));
    let mut worst = f64::INFINITY;
    for k in 0..=1000 {
        let p = k as f64 / 1000.0;
        let r = ev
            .sr_on_pt(&states::werner(p).unwrap(), &a, &b)
            .map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Satisfied, || {
            format!("violated at p = {p}")
        })?;
        worst = worst.min(r.margin);
    }
    Ok(format!(
        "1001 grid points satisfied, min margin {worst:.3e}"
    ))
}

fn criterion_3() -> Check {
    // Closed form: lhs (1 − p²)², rhs p²(1 + p)²; satisfied iff (1 − p)² ≥ p² iff p ≤ 1/2.
    let ev = Evaluator::default();
    for k in 0..=200 {
        let p = k as f64 / 200.0;
        let r = ev
            .srpt(&states::werner(p).unwrap(), &obs("XX"), &obs("YY"))
            .map_err(|e| e.to_string())?;
        let oracle = if (1.0 - p).powi(2) >= p * p {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        ensure(r.verdict == oracle, || {
            format!("p = {p}: {} vs oracle {oracle}", r.verdict)
        })?;
    }
    let r = threshold(
        FamilyId::Werner,
        &[],
        "p",
        (0.0, 1.0),
        CriterionId::Srpt,
        ("XX", "YY"),
        1e-9,
    )?;
    ensure((r.threshold - 0.5).abs() <= 1e-6, || {
        format!("threshold {}", r.threshold)
    })?;
    Ok(format!("threshold {:.12}", r.threshold))
}

fn criterion_4() -> Check {
    let root = 45f64.sqrt() - 6.0;
    let proposed = threshold(
        FamilyId::GhzW,
        &[],
        "p",
        (0.0, 1.0),
        CriterionId::ProposedPt,
        ("ZI", "IZ"),
        1e-12,
    )?;
    let ppt = threshold(
        FamilyId::GhzW,
        &[],
        "p",
        (0.0, 1.0),
        CriterionId::Ppt,
        ("ZI", "IZ"),
        1e-12,
    )?;
    ensure((proposed.threshold - root).abs() <= 1e-4, || {
        format!("threshold {} vs sqrt(45)-6 = {root}", proposed.threshold)
    })?;
    ensure((proposed.threshold * 1000.0).floor() == 708.0, || {
        format!(
            "threshold {} does not read as p > 0.708",
            proposed.threshold
        )
    })?;
    let gap = (proposed.threshold - ppt.threshold).abs();
    ensure(gap <= 2e-9, || {
        format!("PPT threshold {} differs by {gap:e}", ppt.threshold)
    })?;
    Ok(format!(
        "proposed {:.10}, PPT {:.10}, sqrt(45)-6 = {root:.10}, gap {gap:.2e}",
        proposed.threshold, ppt.threshold
    ))
}

fn criterion_5() -> Check {
    let mut out = Vec::new();
    for p in [0.4f64, 0.6, 0.8, 1.0] {
        let a_max = (0.5 * (1.0 + ((3.0 * p - 1.0) * (p + 1.0)).sqrt() / (2.0 * p))).min(1.0);
        let ev = Evaluator::default();
        let at_half = ev
            .proposed_pt_criterion(
                &states::werner_derivative(0.5, p).unwrap(),
                &obs("ZI"),
                &obs("IZ"),
            )
            .map_err(|e| e.to_string())?;
        ensure(at_half.is_violated(), || {
            format!("p = {p}: a = 1/2 not violated")
        })?;
        let r = threshold(
            FamilyId::WernerDerivative,
            &[("p", p)],
            "a",
            (0.5, 1.0),
            CriterionId::ProposedPt,
            ("ZI", "IZ"),
            1e-9,
        )?;
        ensure(
            !r.non_monotonic && r.flips[0].below == Verdict::Violated,
            || format!("p = {p}: violation region is not [1/2, a*) ({:?})", r.flips),
        )?;
        ensure((r.threshold - a_max).abs() <= 1e-6, || {
            format!("p = {p}: upper end {} vs {a_max}", r.threshold)
        })?;
        out.push(format!("p={p}: [0.5, {:.9})", r.threshold));
    }
    Ok(out.join("; "))
}

fn criterion_6() -> Check {
    let ev = Evaluator::default();
    let (a, b) = (obs("ZZ"), obs("XX"));
    let margin_at = |c0: f64| -> Result<(Verdict, f64), String> {
        let c1 = (1.0 - c0 * c0).sqrt();
        let rho = states::pure_nonmax(Complex64::new(c0, 0.0), Complex64::new(c1, 0.0))
            .map_err(|e| e.to_string())?;
        let r = ev.sr_on_pt(&rho, &a, &b).map_err(|e| e.to_string())?;
        Ok((r.verdict, r.margin))
    };
    for k in 1..=9 {
        let c0 = k as f64 / 10.0;
        let (v, _) = margin_at(c0)?;
        ensure(v == Verdict::Violated, || format!("c0 = {c0} not violated"))?;
    }
    let peak = std::f64::consts::FRAC_1_SQRT_2;
    let (_, at_peak) = margin_at(peak)?;
    for k in 1..1000 {
        let c0 = k as f64 / 1000.0;
        let (v, m) = margin_at(c0)?;
        ensure(v == Verdict::Violated, || format!("c0 = {c0} not violated"))?;
        ensure(m.abs() <= at_peak.abs() + 1e-12, || {
            format!(
                "|margin| at c0 = {c0} ({}) exceeds the value at 1/sqrt(2) ({})",
                m.abs(),
                at_peak.abs()
            )
        })?;
    }
    Ok(format!(
        "violated on the grid, max |margin| = {:.6} at c0 = 1/sqrt(2)",
        at_peak.abs()
    ))
}

fn random_pauli_string(rng: &mut impl Rng) -> Observable {
    const SYMBOLS: [char; 4] = ['I', 'X', 'Y', 'Z'];
    loop {
        let s: String = (0..2).map(|_| SYMBOLS[rng.random_range(0..4)]).collect();
        if s != "II" {
            return obs(&s);
        }
    }
}

fn criterion_7() -> Check {
    let mut rng = random::rng_from_seed(7);
    let herm = |rng: &mut rand_chacha::ChaCha8Rng, d: usize| {
        Observable::new(random::random_hermitian_with(d, rng)).unwrap()
    };
    let real_sym = |rng: &mut rand_chacha::ChaCha8Rng, d: usize| {
        Observable::new(random::random_real_symmetric_with(d, rng)).unwrap()
    };
    let mut worst = [0.0f64; 9];
    for _ in 0..SAMPLES {
        let rho = random::random_density_with(2, 2, &mut rng).unwrap();
        let a = herm(&mut rng, 4);

        // Non-negativity.
        let i = skew_information(&rho, &a).unwrap();
        worst[0] = worst[0].max(-i.re).max(i.im.abs());

        // Convexity.
        let rho2 = random::random_density_with(2, 2, &mut rng).unwrap();
        let w: f64 = rng.random();
        let mix = rho.mix(&rho2, w).unwrap();
        let lhs = skew_information(&mix, &a).unwrap().re;
        let rhs = w * i.re + (1.0 - w) * skew_information(&rho2, &a).unwrap().re;
        worst[1] = worst[1].max(lhs - rhs);

        // Additivity.
        let r1 = DensityMatrix::single(random::ginibre_state(2, &mut rng)).unwrap();
        let r2 = DensityMatrix::single(random::ginibre_state(3, &mut rng)).unwrap();
        let (a1, a2) = (herm(&mut rng, 2), herm(&mut rng, 3));
        let joint_obs = Observable::new(
            &a1.matrix().tensor(&ComplexMatrix::identity(3))
                + &ComplexMatrix::identity(2).tensor(a2.matrix()),
        )
        .unwrap();
        let joint = DensityMatrix::product(&r1, &r2).unwrap();
        let diff = skew_information(&joint, &joint_obs).unwrap()
            - skew_information(&r1, &a1).unwrap()
            - skew_information(&r2, &a2).unwrap();
        worst[2] = worst[2].max(diff.norm());

        // Unitary invariance under exp(−iθA).
        let theta: f64 = rng.random_range(-3.0..3.0);
        let u = wywitness::matcore::unitary_exp(a.matrix(), theta).unwrap();
        let rotated = rho.conjugate_by(&u).unwrap();
        worst[3] = worst[3].max((skew_information(&rotated, &a).unwrap() - i).norm());

        // Ordering 0 ≤ I ≤ U ≤ V.
        let prof = UncertaintyProfile::compute(&rho, &a).unwrap();
        let (iv, uv, vv) = (prof.skew_info, prof.u(), prof.variance);
        let order_gap = (-iv.re).max(iv.re - uv.re).max(uv.re - vv.re);
        let imag = iv.im.abs().max(uv.im.abs()).max(vv.im.abs());
        worst[4] = worst[4].max(order_gap).max(imag);

        // Purity collapse on rank-one states (real-entried A).
        let pure = random::random_pure_with(2, 2, &mut rng).unwrap();
        let ar = real_sym(&mut rng, 4);
        let b = herm(&mut rng, 4);
        let iv_gap = (skew_information(&pure, &ar).unwrap() - variance(&pure, &ar).unwrap()).norm();
        let c_gap =
            (wy_correlation(&pure, &ar, &b).unwrap() - covariance(&pure, &ar, &b).unwrap()).norm();
        worst[5] = worst[5].max(iv_gap).max(c_gap);

        // |Im C|² = ¼|⟨[A,B]⟩|².
        let corr = wy_correlation(&rho, &ar, &b).unwrap();
        let comm = rho
            .matrix()
            .trace_product(&ar.matrix().commutator(b.matrix()));
        worst[6] = worst[6].max((corr.im * corr.im - 0.25 * comm.norm_sqr()).abs());

        // Furuichi relation with Pauli strings.
        let (pa, pb) = (random_pauli_string(&mut rng), random_pauli_string(&mut rng));
        let f = Evaluator::default().furuichi(&rho, &pa, &pb).unwrap();
        worst[7] = worst[7].max(-f.margin);
        if f.verdict != Verdict::Satisfied {
            return Err(format!(
                "Furuichi violated on a valid state (margin {})",
                f.margin
            ));
        }

        // 0 ≤ I^L ≤ I.
        let lb = skew_info_lower_bound(&rho, &a).unwrap();
        worst[8] = worst[8].max(-lb).max(lb - i.re);
    }
    let names = [
        "non-negativity",
        "convexity",
        "additivity",
        "unitary invariance",
        "ordering I<=U<=V",
        "purity collapse",
        "Im-part identity",
        "Furuichi",
        "lower-bound sandwich",
    ];
    for (name, w) in names.iter().zip(worst) {
        ensure(w <= PROPERTY_TOL, || {
            format!("{name}: worst violation {w:e}")
        })?;
    }
    Ok(format!(
        "{SAMPLES} samples x 9 properties, worst {:.2e}",
        worst.iter().cloned().fold(0.0, f64::max)
    ))
}

fn criterion_8() -> Check {
    let ev = Evaluator::default();
    let pairs = [(obs("ZI"), obs("IZ")), (obs("XY"), obs("YX"))];
    let mut rng = random::rng_from_seed(8);
    let mut worst = f64::INFINITY;
    for _ in 0..SAMPLES {
        let terms = rng.random_range(1..=4);
        let rho = random::random_separable_with(2, 2, terms, &mut rng).unwrap();
        for (a, b) in &pairs {
            let r = ev
                .proposed_pt_criterion(&rho, a, b)
                .map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Satisfied, || {
                format!("false positive, margin {}", r.margin)
            })?;
            worst = worst.min(r.margin);
        }
    }
    Ok(format!(
        "0 violations over {SAMPLES} separable states x 2 pairs (min margin {worst:.2e})"
    ))
}

fn criterion_9() -> Check {
    let mut rng = random::rng_from_seed(9);
    let mut sqrt_err = 0.0f64;
    for k in 0..SAMPLES {
        let dim = 2 + (k % 7) as usize;
        let mut h = random::random_hermitian_with(dim, &mut rng);
        if k % 2 == 1 {
            // Shift half of the samples to be clearly indefinite.
            let shift = ComplexMatrix::identity(dim).scale_real(-0.5);
            h = &h + &shift;
        }
        let r = principal_sqrt(&h).map_err(|e| e.to_string())?;
        sqrt_err = sqrt_err.max((&r * &r).max_abs_diff(&h));
    }
    ensure(sqrt_err <= 1e-10, || {
        format!("sqrt round trip error {sqrt_err:e}")
    })?;

    let ev = Evaluator::default();
    let mut route_err = 0.0f64;
    for _ in 0..SAMPLES {
        let rho = random::random_density_with(2, 2, &mut rng).unwrap();
        let a = random::random_hermitian_with(4, &mut rng);
        let b = random::random_hermitian_with(4, &mut rng);
        let (ao, bo) = (
            Observable::new(a.clone()).unwrap(),
            Observable::new(b.clone()).unwrap(),
        );
        let state_side = ev
            .schrodinger_robertson(&rho.partial_transpose(Subsystem::B).unwrap(), &ao, &bo)
            .unwrap();
        let (lhs, rhs) = ev.srpt_observable_route(&rho, &a, &b).unwrap();
        route_err = route_err
            .max((state_side.lhs - lhs).norm())
            .max((state_side.rhs - rhs).abs());
    }
    ensure(route_err <= 1e-10, || {
        format!("SRPT routes differ by {route_err:e}")
    })?;

    for k in 0..SAMPLES {
        let rho = random::random_density_with(2, 3, &mut rng).unwrap();
        let rho = if k % 2 == 0 {
            rho
        } else {
            rho.partial_transpose(Subsystem::A).unwrap()
        };
        let back = DensityMatrix::from_json(&rho.to_json()).map_err(|e| e.to_string())?;
        let exact = rho
            .matrix()
            .entries()
            .iter()
            .zip(back.matrix().entries())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits());
        ensure(exact && back.dims() == rho.dims(), || {
            "JSON round trip changed entries".into()
        })?;
    }
    Ok(format!(
        "sqrt err {sqrt_err:.2e}, SRPT route gap {route_err:.2e}, JSON bit-exact"
    ))
}

fn main() {
    let checks: [Criterion; 9] = [
        (
            "1 Werner proposed threshold = 1/3 (XY,YX and ZI,IZ)",
            criterion_1,
        ),
        (
            "2 Werner SR on PT (ZI,IZ) satisfied on 0.001 grid",
            criterion_2,
        ),
        ("3 Werner SRPT threshold (XX,YY) = 1/2", criterion_3),
        (
            "4 GHZ/W proposed threshold = sqrt(45)-6, equals PPT",
            criterion_4,
        ),
        ("5 Werner-derivative violation interval", criterion_5),
        (
            "6 Pure non-maximal SR (ZZ,XX) violated, peak at 1/sqrt(2)",
            criterion_6,
        ),
        ("7 Skew-information property suite", criterion_7),
        ("8 Soundness on separable states", criterion_8),
        ("9 Infrastructure: sqrt, SRPT routes, JSON", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
