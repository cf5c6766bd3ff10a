//! The verification suites. Each check pins its trial count and tolerance;
//! thresholds are exact wherever the quantity is exact, and `2^-100` (at 256
//! working bits) or `2^-64` where roots enter.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use sl2geom::approx::ApproxScalar;
use sl2geom::binary_forms::{
    self, act, act_quadratic, isotropic_flag, moment_map_coeffs, moment_map_m3, moment_map_roots,
    reconstruct_from_powers, BinaryForm,
};
use sl2geom::dolbeault::{
    c4_brackets, c4_equation, c6_matrix, conic_class, null_cone_test, polar_part,
    sampled_curve_equation, six_points, solve_dbar, trope_form_constant,
    trope_quadratic_form_generic, DolbeaultClass, YExpansion,
};
use sl2geom::mpoly::MPoly;
use sl2geom::poly::{discriminant, UnivariatePoly};
use sl2geom::sampling;
use sl2geom::scalar::ExactScalar;
use sl2geom::theta::{kummer_incidence, Parity, ThetaChar, TwoTorsion};
use sl2geom::trope::{
    conic_tangency_report, determinant_sextic, harmonic_cubic, harmonic_cubic_generic,
    trope_line_intersection, trope_sextic, trope_sextic_generic, PairingMode,
};

use crate::report::{CheckResult, RunConfig, SuiteResult, VerificationReport};

pub const SUITE_NAMES: [&str; 6] = ["appendix", "c4c6", "exotic", "kummer", "moment", "trope"];

pub fn run(config: &RunConfig, suites: &[String]) -> Result<VerificationReport, String> {
    let mut selected: Vec<String> = if suites.iter().any(|s| s == "all") {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    selected.sort();
    selected.dedup();
    for s in &selected {
        if !SUITE_NAMES.contains(&s.as_str()) {
            return Err(format!(
                "unknown suite '{s}' (expected one of {} or 'all')",
                SUITE_NAMES.join(", ")
            ));
        }
    }
    let mut results = Vec::new();
    for name in &selected {
        let start = Instant::now();
        let mut suite = match name.as_str() {
            "moment" => moment_suite(config),
            "exotic" => exotic_suite(config),
            "appendix" => appendix_suite(config),
            "trope" => trope_suite(config),
            "c4c6" => c4c6_suite(config),
            "kummer" => kummer_suite(config),
            _ => unreachable!(),
        };
        suite.wall_time_ms = start.elapsed().as_millis();
        results.push(suite);
    }
    Ok(VerificationReport {
        config: config.clone(),
        suites: results,
    })
}

fn rng_for(config: &RunConfig, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

fn trials(config: &RunConfig, default: usize) -> usize {
    config.trials.unwrap_or(default).max(1)
}

fn timed(mut check: CheckResult, start: Instant) -> CheckResult {
    check.wall_time_ms = start.elapsed().as_millis();
    check
}

fn es(v: i64) -> ExactScalar {
    ExactScalar::from_int(v)
}

/// Random form of odd degree `m` with distinct roots and nonzero leading
/// coefficient.
fn squarefree_form<R: Rng>(rng: &mut R, m: usize, height: i64) -> BinaryForm {
    loop {
        let p = sampling::binary_form(rng, m, height);
        if m == 1 || !discriminant(&p.to_poly()).unwrap().is_zero() {
            return p;
        }
    }
}

// ---------------------------------------------------------------------------
// moment
// ---------------------------------------------------------------------------

fn moment_suite(config: &RunConfig) -> SuiteResult {
    let mut rng = rng_for(config, 1);
    let mut checks = Vec::new();
    let prec = config.precision_bits;
    let ms: Vec<usize> = match config.m {
        Some(m) => vec![m],
        None => vec![1, 3, 5, 7],
    };

    // criterion 1
    let start = Instant::now();
    {
        let n = trials(config, 100);
        let mut ok = true;
        for _ in 0..n {
            let p = sampling::binary_form(&mut rng, 1, 1_000_000);
            let mu = moment_map_coeffs(&p).unwrap();
            let square = p.to_poly().mul(&p.to_poly());
            if mu.b0 != square.coeff(2) || mu.b1 != square.coeff(1) || mu.b2 != square.coeff(0) {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c01_m1_moment_is_square",
                ok,
                "mu(p) = p(z)^2 exactly for degree-1 forms",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // criterion 2
    let start = Instant::now();
    {
        let n = trials(config, 100);
        let ratio = ExactScalar::from_rat(3, 4);
        let mut ok = true;
        for trial in 0..n {
            let p = if trial % 5 == 4 {
                // repeated root: both sides vanish
                let r = sampling::rational(&mut rng, 100);
                let s = sampling::rational(&mut rng, 100);
                let lin = UnivariatePoly::new(vec![-&r, ExactScalar::one()]);
                let other = UnivariatePoly::new(vec![-&s, ExactScalar::one()]);
                BinaryForm::from_poly(&lin.mul(&lin).mul(&other), 3).unwrap()
            } else {
                sampling::binary_form(&mut rng, 3, 1_000_000)
            };
            let mu = moment_map_m3(&p).unwrap();
            let disc = discriminant(&p.to_poly()).unwrap();
            if mu.det() != &disc * &ratio {
                ok = false;
            }
            if mu.det().is_zero() != disc.is_zero() {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c02_cubic_det_is_discriminant_multiple",
                ok,
                "det mu(p) = (3/4) disc(p) for cubics; zero iff repeated root",
                json!({"trials": n, "ratio": "3/4"}),
            ),
            start,
        ));
    }

    // criterion 3
    for &m in ms.iter().filter(|&&m| [1usize, 3, 5, 7].contains(&m)) {
        let start = Instant::now();
        let n = trials(config, 25);
        let mut ok = true;
        let mut worst: i64 = -(prec as i64);
        for _ in 0..n {
            let p = squarefree_form(&mut rng, m, 10);
            match reconstruct_from_powers(&p, prec) {
                Ok(rec) => {
                    worst = worst.max(rec.residual_log2_bound);
                    if !rec.residual_ok {
                        ok = false;
                    }
                }
                Err(_) => ok = false,
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                format!("c03_reconstruction_m{m}"),
                ok,
                "p(z) = sum_i b_i (z - alpha_i)^m with coefficient residual below 2^-100",
                json!({"trials": n, "m": m, "worst_residual_log2": worst}),
            ),
            start,
        ));
    }

    // criterion 4
    for &m in ms.iter().filter(|&&m| [1usize, 3, 5].contains(&m)) {
        let start = Instant::now();
        let n = trials(config, 25);
        let mut ok = true;
        let mut global_ratio: Option<ApproxScalar> = None;
        for _ in 0..n {
            let p = squarefree_form(&mut rng, m, 10);
            let exact = moment_map_coeffs(&p).unwrap();
            let approx = moment_map_roots(&p, prec).unwrap();
            let exact_v = [exact.b0, exact.b1, exact.b2];
            // ratio from the first component of sizable magnitude
            let mut ratio = None;
            for (e, a) in exact_v.iter().zip(&approx) {
                if !e.is_zero() && !a.is_zero() {
                    ratio = Some(
                        ApproxScalar::from_exact(e, prec).div(a).unwrap(),
                    );
                    break;
                }
            }
            let Some(r) = ratio else {
                continue;
            };
            match &global_ratio {
                None => global_ratio = Some(r.clone()),
                Some(g) => {
                    let rel = r.sub(g).div(g).unwrap();
                    if !rel.abs_le_pow2(-100) {
                        ok = false;
                    }
                }
            }
            for (e, a) in exact_v.iter().zip(&approx) {
                let want = a.mul(&r);
                let diff = ApproxScalar::from_exact(e, prec).sub(&want);
                let scale = ApproxScalar::from_exact(e, prec)
                    .norm_sqr()
                    .add(&ApproxScalar::one(prec));
                let rel = diff.div(&scale.sqrt()).unwrap();
                if !rel.abs_le_pow2(-100) {
                    ok = false;
                }
            }
        }
        let ratio_witness = global_ratio
            .map(|r| r.to_decimal_string(24))
            .unwrap_or_else(|| "none".into());
        checks.push(timed(
            CheckResult::from_bool(
                format!("c04_cross_formula_m{m}"),
                ok,
                "coefficient and root moment maps agree up to one global scalar per degree",
                json!({"trials": n, "m": m, "global_ratio": ratio_witness}),
            ),
            start,
        ));
    }

    // criterion 5
    let start = Instant::now();
    {
        let mut ok = true;
        let mut dims = Vec::new();
        for m in [1usize, 3, 5, 7, 9] {
            let flag = isotropic_flag(m).unwrap();
            let k = m.div_ceil(2);
            dims.push(json!({"m": m, "dim": flag.dims[k]}));
            if !flag.midflag_isotropic || !flag.midflag_maximal {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c05_isotropic_flag",
                ok,
                "V_k = {a_0 = ... = a_{k-1} = 0} is maximally isotropic for the symplectic form",
                json!({"flags": dims}),
            ),
            start,
        ));
    }

    // criterion 7
    let start = Instant::now();
    {
        let ok = binary_forms::divisor_degree(3) == Ok(10)
            && binary_forms::divisor_degree(1) == Ok(1)
            && binary_forms::divisor_degree(5) == Ok(35)
            && binary_forms::divisor_degree(4).is_err();
        checks.push(timed(
            CheckResult::from_bool(
                "c07_divisor_degree",
                ok,
                "divisor degree k(4k^2-1)/3: m=3 gives 10, m=1 gives 1",
                json!({"m3": 10, "m1": 1, "m5": 35}),
            ),
            start,
        ));
    }

    // equivariance property (module invariant)
    let start = Instant::now();
    {
        let n = trials(config, 100);
        let mut ok = true;
        for i in 0..n {
            let m = [1usize, 3, 5][i % 3];
            let g = sampling::sl2(&mut rng, 10);
            let p = sampling::binary_form(&mut rng, m, 10);
            let lhs = moment_map_coeffs(&act(&g, &p)).unwrap();
            let rhs = act_quadratic(&g, &moment_map_coeffs(&p).unwrap());
            if lhs != rhs {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "equivariance",
                ok,
                "mu(g.p) equals the degree-2 action of g on mu(p), exactly",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // report the bilinear coefficient tables behind the contraction
    let start = Instant::now();
    {
        let m = config.m.filter(|m| m % 2 == 1).unwrap_or(5);
        let tables = binary_forms::moment_coefficient_tables(m).unwrap();
        let render = |t: &[(usize, usize, ExactScalar)]| {
            t.iter()
                .map(|(i, j, c)| json!({"i": i, "j": j, "c": c.to_string()}))
                .collect::<Vec<_>>()
        };
        checks.push(timed(
            CheckResult::pass(
                "coefficient_tables",
                "b0 = sum c_i a_i a_{m-i-1}, b1 = sum c'_i a_i a_{m-i}, b2 = sum c''_i a_i a_{m-i+1}",
                json!({
                    "m": m,
                    "b0": render(&tables[0]),
                    "b1": render(&tables[1]),
                    "b2": render(&tables[2]),
                }),
            ),
            start,
        ));
    }

    SuiteResult {
        name: "moment".into(),
        checks,
        wall_time_ms: 0,
    }
}

// ---------------------------------------------------------------------------
// exotic
// ---------------------------------------------------------------------------

fn exotic_suite(config: &RunConfig) -> SuiteResult {
    let mut rng = rng_for(config, 2);
    let mut checks = Vec::new();

    let start = Instant::now();
    {
        // full symbolic identity in 8 entries and 3 pairings
        let mut t = sl2geom::triple::TripleTensor::<MPoly> {
            entries: Default::default(),
            pairings: [MPoly::var(8), MPoly::var(9), MPoly::var(10)],
        };
        let mut idx = 0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    t.entries[i][j][k] = MPoly::var(idx);
                    idx += 1;
                }
            }
        }
        let report = sl2geom::triple::verify_trace_equality(&t);
        checks.push(timed(
            CheckResult::from_bool(
                "c06_trace_equality_symbolic",
                report.all_equal,
                "tr phi_1^2 = tr phi_2^2 = tr phi_3^2 as a polynomial identity",
                json!({"common_terms": report.common.num_terms()}),
            ),
            start,
        ));
    }

    let start = Instant::now();
    {
        let n = trials(config, 200);
        let mut ok = true;
        let mut hyperdet_relation = true;
        for i in 0..n {
            let unit = i % 2 == 0;
            let t = sampling::triple_tensor(&mut rng, 8, unit);
            let report = sl2geom::triple::verify_trace_equality(&t);
            if !report.all_equal {
                ok = false;
            }
            if unit {
                // informational: common = -2 * hyperdeterminant at unit pairings
                let expect = &es(-2) * &report.hyperdeterminant;
                if report.common != expect {
                    hyperdet_relation = false;
                }
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c06_trace_equality_random",
                ok,
                "the three traces agree on random exact tensors",
                json!({"trials": n, "hyperdeterminant_relation_observed": hyperdet_relation}),
            ),
            start,
        ));
    }

    let start = Instant::now();
    {
        let mut t = sl2geom::triple::TripleTensor::zero_entries_with_unit_pairings();
        t.entries[0][0][0] = es(1);
        t.entries[1][1][1] = es(1);
        let report = sl2geom::triple::verify_trace_equality(&t);
        let ok = report.all_equal && report.common == es(-2);
        checks.push(timed(
            CheckResult::from_bool(
                "c06_ghz_value",
                ok,
                "the rank-2 diagonal tensor has common trace value -2",
                json!({"common": report.common.to_string()}),
            ),
            start,
        ));
    }

    SuiteResult {
        name: "exotic".into(),
        checks,
        wall_time_ms: 0,
    }
}

// ---------------------------------------------------------------------------
// appendix
// ---------------------------------------------------------------------------

fn appendix_suite(config: &RunConfig) -> SuiteResult {
    let mut rng = rng_for(config, 3);
    let mut checks = Vec::new();
    let prec = config.precision_bits;

    // criterion 8a: integral inverts dbar
    let start = Instant::now();
    {
        let n = trials(config, 100);
        let mut ok = true;
        for _ in 0..n {
            let mut h: YExpansion = YExpansion::zero(-4, false);
            for _ in 0..6 {
                let d = rng.gen_range(-3i64..=4);
                let e = rng.gen_range(1i64..=6);
                h.insert_canonical(d, e, sampling::rational(&mut rng, 1000));
            }
            if h.is_zero() {
                continue;
            }
            if h.dbar().naive_integral().unwrap() != h {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c08_integral_inverts_dbar",
                ok,
                "the y-antiderivative inverts d/dzbar termwise on the function class",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // criterion 8b: volume class nontrivial
    let start = Instant::now();
    {
        let vol: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 0, 2, -2, true);
        let h = vol.naive_integral().unwrap();
        let (_, report) = polar_part(&h);
        let solve = solve_dbar(&vol);
        let ok = !report.is_global_section
            && matches!(solve, Err(sl2geom::CoreError::Obstructed { order: 1, degree: -2 }));
        checks.push(timed(
            CheckResult::from_bool(
                "c08_volume_class_nontrivial",
                ok,
                "the corrected primitive of the volume form has a pole at infinity",
                json!({"pole_orders": report.pole_orders_at_zero}),
            ),
            start,
        ));
    }

    // criterion 8c: dimension counts
    let start = Instant::now();
    {
        let mut ok = true;
        let mut counts = Vec::new();
        for k in 1..=3i64 {
            let mut obstructed = 0;
            for m in 0..=(2 * k - 2) {
                let g: YExpansion =
                    YExpansion::from_zbar_monomial(es(1), 0, m, 2 * k, -2 * k, true);
                if matches!(solve_dbar(&g), Err(sl2geom::CoreError::Obstructed { .. })) {
                    obstructed += 1;
                }
            }
            counts.push(json!({"k": k, "classes": obstructed}));
            if obstructed != 2 * k - 1 {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c08_dimension_count",
                ok,
                "the family 0 <= m <= 2k-2 gives a (2k-1)-dimensional space of classes",
                json!({"counts": counts}),
            ),
            start,
        ));
    }

    // criterion 9a: the determinant of the 2x2 system
    let start = Instant::now();
    {
        let n = trials(config, 20);
        let mut ok = true;
        for _ in 0..n {
            let v = DolbeaultClass::new(
                sampling::rational(&mut rng, 50),
                sampling::rational(&mut rng, 50),
                sampling::nonzero_rational(&mut rng, 50),
            );
            let (value, _) = null_cone_test(&v).unwrap();
            let [v0, v1, v2] = &v.v;
            // -det [[2 v0, v1], [v1, 2 v2]]
            let det = &(&(&es(2) * v0) * &(&es(2) * v2)) - &(v1 * v1);
            if value != -&det {
                ok = false;
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c09_null_value_is_system_determinant",
                ok,
                "v1^2 - 4 v0 v2 is minus the determinant of the 2x2 kernel system",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // criterion 9b: parametrization and kernel ratio
    let start = Instant::now();
    {
        let n = trials(config, 20);
        let mut ok = true;
        for _ in 0..n {
            let t = sampling::rational(&mut rng, 50);
            let v = DolbeaultClass::new(es(1), &es(-2) * &t, &t * &t);
            match null_cone_test(&v).unwrap() {
                (value, Some((w0, w1))) => {
                    if !value.is_zero() || &w0 - &(&w1 * &t) != ExactScalar::zero() {
                        ok = false;
                    }
                }
                _ => ok = false,
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c09_parametrization_kernel",
                ok,
                "(1, -2t, t^2) lies on the null cone with kernel ratio w0/w1 = t",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // criterion 9c: six points at the roots
    let start = Instant::now();
    {
        let n = trials(config, 20);
        let mut ok = true;
        for _ in 0..n {
            let (p, rts) = sampling::sextic_with_rational_roots(&mut rng, 20);
            let pts = six_points(&p, prec).unwrap();
            if pts.len() != 6 {
                ok = false;
            }
            for r in &rts {
                let target = ApproxScalar::from_exact(r, prec);
                if !pts.iter().any(|t| t.sub(&target).abs_le_pow2(-100)) {
                    ok = false;
                }
                let (value, _) = null_cone_test(&conic_class(r)).unwrap();
                if !value.is_zero() {
                    ok = false;
                }
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c09_six_points",
                ok,
                "the six conic parameters of a sextic are its roots, each on the null cone",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // criterion 10: singular quadratic form, symbolically
    let start = Instant::now();
    {
        let cs: Vec<MPoly> = (0..7).map(MPoly::var).collect();
        let (_, det) = trope_quadratic_form_generic(&cs).unwrap();
        let c1 = MPoly::var(1);
        let c3 = MPoly::var(3);
        let c5 = MPoly::var(5);
        let kappa = trope_form_constant();
        let want = c3
            .mul(&c3)
            .sub(&c1.mul(&c5).scale(&es(4)))
            .scale(&kappa);
        let mut ok = det == want && !kappa.is_zero();
        // pinned examples
        let p = UnivariatePoly::from_int_coeffs(&[0, 1, 0, 2, 0, 1, 0]);
        let (_, d0) = sl2geom::dolbeault::trope_quadratic_form(&p).unwrap();
        ok = ok && d0.is_zero();
        let p = UnivariatePoly::from_int_coeffs(&[0, 1, 0, 1, 0, 1, 0]);
        let (_, d1) = sl2geom::dolbeault::trope_quadratic_form(&p).unwrap();
        ok = ok && d1 == &es(-3) * &kappa;
        let mut witness = json!({
            "kappa": kappa.to_string(),
            "identity": "det Q = kappa (c3^2 - 4 c1 c5)",
        });
        if let Some(cs) = &config.sextic {
            let (q, d) = trope_quadratic_form_generic(cs).unwrap();
            witness["user_sextic_det"] = json!(d.to_string());
            witness["user_sextic_q"] = json!([
                [q[0][0].to_string(), q[0][1].to_string()],
                [q[1][0].to_string(), q[1][1].to_string()],
            ]);
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c10_singular_form_identity",
                ok,
                "det Q = kappa (c3^2 - 4 c1 c5) identically, kappa = -1/6^8",
                witness,
            ),
            start,
        ));
    }

    SuiteResult {
        name: "appendix".into(),
        checks,
        wall_time_ms: 0,
    }
}

// ---------------------------------------------------------------------------
// trope
// ---------------------------------------------------------------------------

fn trope_suite(config: &RunConfig) -> SuiteResult {
    let mut rng = rng_for(config, 4);
    let mut checks = Vec::new();
    let prec = config.precision_bits;

    // criterion 11a as stated: the (0,0,1) anchor in literal mode.
    let start = Instant::now();
    {
        let cs: Vec<MPoly> = (0..7).map(MPoly::var).collect();
        let s = trope_sextic_generic(&cs, PairingMode::Literal);
        let val = s.eval(&[MPoly::zero(), MPoly::zero(), MPoly::one()]);
        let c1 = MPoly::var(1);
        let c3 = MPoly::var(3);
        let c5 = MPoly::var(5);
        let lambda = val.coeff(&[0, 0, 0, 2]);
        let pattern = c3.mul(&c3).sub(&c1.mul(&c5).scale(&es(4))).scale(&lambda);
        let ok = !lambda.is_zero() && val == pattern;
        // record the actual structure for the witness
        let literal_structure = c3
            .mul(&c3)
            .scale(&es(49))
            .sub(&c1.mul(&c5))
            .scale(&es(-4608));
        checks.push(timed(
            CheckResult::from_bool(
                "c11_anchor_001_literal",
                ok,
                "S(0,0,1) is a fixed multiple of c3^2 - 4 c1 c5 (literal pairing, displayed constants)",
                json!({
                    "holds": ok,
                    "actual": if val == literal_structure { "-4608 (49 c3^2 - c1 c5)" } else { "unexpected" },
                    "note": "the anchor is satisfied by the apolar pairing with constants (16, 128); see the companion check",
                }),
            ),
            start,
        ));
    }

    // which normalization satisfies the anchor: apolar with (16, 128)
    let start = Instant::now();
    {
        let cs: Vec<MPoly> = (0..7).map(MPoly::var).collect();
        let phi = harmonic_cubic_generic(&cs, PairingMode::Apolar);
        let phi2 = phi.mul(&phi);
        let lap = phi2.laplacian();
        let lap2 = lap.laplacian();
        let xx = sl2geom::trope::euclidean_form::<MPoly>();
        let s = xx
            .mul(&xx)
            .mul(&lap2)
            .sub(&xx.mul(&lap).scale(&es(16)))
            .sub(&phi2.scale(&es(128)));
        let val = s.eval(&[MPoly::zero(), MPoly::zero(), MPoly::one()]);
        let c1 = MPoly::var(1);
        let c3 = MPoly::var(3);
        let c5 = MPoly::var(5);
        let want = c3
            .mul(&c3)
            .sub(&c1.mul(&c5).scale(&es(4)))
            .scale(&es(-32));
        let ok = val == want;
        checks.push(timed(
            CheckResult::from_bool(
                "c11_anchor_001_determinant_normalization",
                ok,
                "with the apolar pairing and constants (16, 128), S(0,0,1) = -32 (c3^2 - 4 c1 c5)",
                json!({"satisfying_mode": "apolar", "constants": [16, 128], "multiple": "-32"}),
            ),
            start,
        ));
    }

    // criterion 11b: restriction to the cone
    let start = Instant::now();
    {
        let n = trials(config, 20);
        let mut ok = true;
        for _ in 0..n {
            let p = random_sextic(&mut rng);
            for mode in [PairingMode::Literal, PairingMode::Apolar] {
                let s = trope_sextic(&p, mode).unwrap();
                let phi = harmonic_cubic(&p, mode).unwrap();
                let residue = s.add(&phi.mul(&phi).scale(&es(3456)));
                if !sl2geom::trope::conic_pullback(&residue).is_zero() {
                    ok = false;
                }
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c11_cone_restriction",
                ok,
                "restricted to the null cone the sextic equals -3456 phi^2",
                json!({"trials": n}),
            ),
            start,
        ));
    }

    // criterion 11c: tangency, exact multiplicities
    let start = Instant::now();
    {
        let n = trials(config, 20);
        let mut ok = true;
        let mut literal_reweighted = true;
        let mut apolar_roots = true;
        let mut cases: Vec<UnivariatePoly> = Vec::new();
        if let Some(cs) = &config.sextic {
            let p = UnivariatePoly::new(cs.clone());
            if p.degree() == 6 && !discriminant(&p).unwrap().is_zero() {
                cases.push(p);
            }
        }
        while cases.len() < n {
            cases.push(random_sextic(&mut rng));
        }
        for p in &cases {
            for mode in [PairingMode::Literal, PairingMode::Apolar] {
                let rep = match conic_tangency_report(p, mode, prec) {
                    Ok(rep) => rep,
                    Err(_) => {
                        ok = false;
                        continue;
                    }
                };
                let double = rep.points.iter().all(|(_, m)| *m == 2);
                if rep.count != 6
                    || !rep.all_multiplicities_even
                    || !double
                    || rep.finite_multiplicity_sum + rep.infinity_multiplicity != 12
                {
                    ok = false;
                }
                match mode {
                    PairingMode::Literal => {
                        literal_reweighted &= rep.parameters_are_reweighted_roots
                    }
                    PairingMode::Apolar => apolar_roots &= rep.parameters_are_roots_of_p,
                }
            }
        }
        checks.push(timed(
            CheckResult::from_bool(
                "c11_conic_tangency",
                ok,
                "the plane sextic meets the null conic tangentially at six points",
                json!({
                    "trials": cases.len(),
                    "literal_parameters_are_reweighted_roots": literal_reweighted,
                    "apolar_parameters_are_roots_of_p": apolar_roots,
                }),
            ),
            start,
        ));
    }

    // criterion 12: harmonicity of all generators in both modes
    let start = Instant::now();
    {
        let mut ok = true;
        for mode in [PairingMode::Literal, PairingMode::Apolar] {
            for j in 0..=6 {
                let phi = harmonic_cubic(&UnivariatePoly::monomial(j), mode).unwrap();
                if !phi.laplacian().is_zero() {
                    ok = false;
                }
            }
        }
        // and for the determinant normalization's inputs
        let p = random_sextic(&mut rng);
        let s = determinant_sextic(&p).unwrap();
        ok = ok && s.degree() == 6;
        checks.push(timed(
            CheckResult::from_bool(
                "c12_harmonicity",
                ok,
                "the harmonic cubic of every monomial generator is annihilated by the Laplacian",
                json!({"generators": 7, "modes": ["literal", "apolar"]}),
            ),
            start,
        ));
    }

    SuiteResult {
        name: "trope".into(),
        checks,
        wall_time_ms: 0,
    }
}

fn random_sextic<R: Rng>(rng: &mut R) -> UnivariatePoly {
    loop {
        let p = sampling::poly(rng, 6, 20);
        if !discriminant(&p).unwrap().is_zero() {
            // the literal-mode parameter sextic must also be square-free
            let rew = UnivariatePoly::new(
                (0..=6)
                    .map(|j| {
                        let w = sl2geom::scalar::binom_int(6, j as i64);
                        let sign = if j % 2 == 1 { -1 } else { 1 };
                        p.coeff(j).scale_rat(&num::rational::BigRational::from_integer(
                            w * num::bigint::BigInt::from(sign),
                        ))
                    })
                    .collect(),
            );
            if !discriminant(&rew).unwrap().is_zero() {
                return p;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// c4c6
// ---------------------------------------------------------------------------

fn c4c6_suite(config: &RunConfig) -> SuiteResult {
    let mut rng = rng_for(config, 5);
    let mut checks = Vec::new();
    let prec = config.precision_bits;
    let n_curves = trials(config, 3).min(5);

    let mut curves = Vec::new();
    while curves.len() < n_curves {
        let (p, rts) = sampling::sextic_with_rational_roots(&mut rng, 10);
        curves.push((p, rts));
    }

    let mut bitangent_ok = true;
    let mut harmonic_ok = true;
    let mut localized_ok = true;
    let mut vanish_z12_ok = true;
    let mut vanish_z3456_ok = true;
    let mut vanish_witness = Vec::new();
    let mut closure6_ok = true;
    let mut closure5_fails = true;

    let start_all = Instant::now();
    for (p, rts) in &curves {
        let (z1, z2) = (&rts[0], &rts[1]);
        let q = UnivariatePoly::from_roots(ExactScalar::one(), &[z1.clone(), z2.clone()]);
        let (r, _) = p.divrem(&q).unwrap();

        // 13a: interpolated quartic; line restriction is minus a perfect square
        let (form, residual) = c4_equation(&q, &r, prec, &mut rng).unwrap();
        if !residual.abs_le_pow2(-(prec as i64) / 2) {
            bitangent_ok = false;
        }
        let line = trope_line_intersection(p, (z1, z2), prec).unwrap();
        if !line.pair_on_conic || !line.others_off_line || !line.cross_term.is_zero() {
            bitangent_ok = false;
        }
        // exact restriction -(K1 c1^2 + K2 c2^2)^2 vs the interpolated form
        let cc1 = conic_class(z1).v;
        let cc2 = conic_class(z2).v;
        for (a, b) in [(1i64, 1i64), (2, -1), (3, 2)] {
            let v = [
                &(&cc1[0] * &es(a)) + &(&cc2[0] * &es(b)),
                &(&cc1[1] * &es(a)) + &(&cc2[1] * &es(b)),
                &(&cc1[2] * &es(a)) + &(&cc2[2] * &es(b)),
            ];
            let bval = &(&line.k1 * &es(a * a)) + &(&line.k2 * &es(b * b));
            let exact = -&(&bval * &bval);
            let interp = form.eval(&[
                ApproxScalar::from_exact(&v[0], prec),
                ApproxScalar::from_exact(&v[1], prec),
                ApproxScalar::from_exact(&v[2], prec),
            ]);
            let diff = interp.sub(&ApproxScalar::from_exact(&exact, prec));
            let scale = ApproxScalar::from_exact(&exact, prec)
                .norm_sqr()
                .add(&ApproxScalar::one(prec))
                .sqrt();
            if !diff.div(&scale).unwrap().abs_le_pow2(-64) {
                bitangent_ok = false;
            }
        }

        // 13b: harmonic separation
        if !line.harmonic_ok {
            harmonic_ok = false;
        }

        // 13d: localized value up to one constant
        if !line.localized_constant_ok {
            localized_ok = false;
        }

        // 13c / 14b: vanishing at conic parameters
        let rp = r.derivative();
        for z in &rts[2..6] {
            let v = conic_class(z).v;
            let q4 = c4_brackets(&q, &r, &v).unwrap().quartic;
            if !q4.is_zero() {
                vanish_z3456_ok = false;
                let predicted = {
                    let qr = &q.eval(z) * &rp.eval(z);
                    &(&qr * &qr) * &ExactScalar::from_rat(1, 972)
                };
                vanish_witness.push(json!({
                    "parameter": z.to_string(),
                    "quartic_value": q4.to_string(),
                    "equals_q2_rprime2_over_972": q4 == predicted,
                }));
            }
        }
        for z in &rts[0..2] {
            let v = conic_class(z).v;
            let (_, det) = c6_matrix(&q, &r, &v).unwrap();
            if !det.is_zero() {
                vanish_z12_ok = false;
            }
        }
        for z in &rts[2..6] {
            let v = conic_class(z).v;
            let (_, det) = c6_matrix(&q, &r, &v).unwrap();
            if !det.is_zero() {
                vanish_z3456_ok = false;
            }
        }

        // 14a: interpolation closes at degree 6 and fails at degree 5
        let (_, res6) = sampled_curve_equation(6, prec, &mut rng, &mut |v| {
            Ok(c6_matrix(&q, &r, v)?.1)
        })
        .unwrap();
        if !res6.abs_le_pow2(-(prec as i64) / 2) {
            closure6_ok = false;
        }
        match sampled_curve_equation(5, prec, &mut rng, &mut |v| Ok(c6_matrix(&q, &r, v)?.1)) {
            Ok((_, res5)) => {
                if res5.abs_le_pow2(-32) {
                    closure5_fails = false;
                }
            }
            Err(sl2geom::CoreError::Conditioning { .. }) => {}
            Err(_) => closure5_fails = false,
        }
    }
    let elapsed = start_all.elapsed().as_millis() / 7;

    let mk = |name: &str, ok: bool, anchor: &str, witness: serde_json::Value| {
        let mut c = CheckResult::from_bool(name, ok, anchor, witness);
        c.wall_time_ms = elapsed;
        c
    };
    checks.push(mk(
        "c13_line_bitangent",
        bitangent_ok,
        "the quartic restricted to the line [q beta] = 0 is minus a perfect square",
        json!({"curves": curves.len()}),
    ));
    checks.push(mk(
        "c13_harmonic_separation",
        harmonic_ok,
        "the bitangent points harmonically separate the marked pair (cross-ratio -1)",
        json!({"tolerance_log2": -64}),
    ));
    checks.push(mk(
        "c13_quartic_conic_vanishing",
        vanish_z3456_ok,
        "the quartic vanishes at the conic parameters of the remaining four roots with multiplicity 2",
        json!({
            "counter_witnesses": vanish_witness,
            "note": "exact computation gives Q4 = q(z)^2 r'(z)^2 / 972 at those parameters; confirmed independently with localized bump representatives",
        }),
    ));
    checks.push(mk(
        "c13_localized_value",
        localized_ok,
        "[q b beta] on the line matches r(z_i) c_i^2 / (2 (z_i - z_j)) up to one constant",
        json!({"curves": curves.len()}),
    ));
    checks.push(mk(
        "c14_degree_closure",
        closure6_ok && closure5_fails,
        "the determinant locus interpolates exactly at degree 6 and not at degree 5",
        json!({"closes_at_6": closure6_ok, "fails_at_5": closure5_fails}),
    ));
    checks.push(mk(
        "c14_conic_vanishing",
        vanish_z12_ok && vanish_z3456_ok,
        "the determinant vanishes at all six conic parameters",
        json!({
            "vanishes_at_marked_pair": vanish_z12_ok,
            "vanishes_at_remaining_four": vanish_z3456_ok,
            "note": "tangency at the marked pair is exact (det factors as q(t)^2 times the quartic pullback over the conic); the remaining four fail with the same counter-witnesses as the quartic",
        }),
    ));

    SuiteResult {
        name: "c4c6".into(),
        checks,
        wall_time_ms: 0,
    }
}

// ---------------------------------------------------------------------------
// kummer
// ---------------------------------------------------------------------------

fn kummer_suite(_config: &RunConfig) -> SuiteResult {
    let mut checks = Vec::new();

    let start = Instant::now();
    {
        let chars = ThetaChar::all();
        let odd = chars.iter().filter(|t| t.parity() == Parity::Odd).count();
        let ok = chars.len() == 16 && odd == 6 && TwoTorsion::all().len() == 16;
        checks.push(timed(
            CheckResult::from_bool(
                "c15_census",
                ok,
                "16 theta characteristics, 6 odd and 10 even; 16 two-torsion points",
                json!({"characteristics": chars.len(), "odd": odd}),
            ),
            start,
        ));
    }

    let start = Instant::now();
    {
        let kappa = ThetaChar::from_points(&[1, 2, 3]).unwrap();
        let inc = kummer_incidence(&kappa);
        let rows = inc.row_sums();
        let cols = inc.column_sums();
        let ok = rows.iter().all(|&s| s == 6)
            && cols.iter().all(|&s| s == 6)
            && inc.is_symmetric();
        checks.push(timed(
            CheckResult::from_bool(
                "c15_sixteen_six",
                ok,
                "each of the 16 tropes meets exactly 6 of the 16 nodes, and dually",
                json!({"row_sums": rows, "column_sums": cols, "symmetric": inc.is_symmetric()}),
            ),
            start,
        ));
    }

    let start = Instant::now();
    {
        let kappa = ThetaChar::from_points(&[1, 2, 3]).unwrap();
        let inc = kummer_incidence(&kappa);
        let base_idx = inc
            .tropes
            .iter()
            .position(|t| *t == TwoTorsion::zero())
            .unwrap();
        let ok = inc.nodes.iter().enumerate().all(|(j, node)| {
            inc.table[base_idx][j] == (kappa.translate(node).parity() == Parity::Odd)
        });
        checks.push(timed(
            CheckResult::from_bool(
                "c15_base_trope_nodes",
                ok,
                "the base trope's six nodes are exactly the odd translates of the spin structure",
                json!({"base": format!("{:?}", kappa.points())}),
            ),
            start,
        ));
    }

    SuiteResult {
        name: "kummer".into(),
        checks,
        wall_time_ms: 0,
    }
}
