//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`cargo test --test acceptance`) so the report is
//! printed even when everything passes.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use buckle_core::analysis::{fit_asymptotics, monotonicity_audit, ASYMPTOTIC_GRID, RADIAL_CASES, TABLE_A};
use buckle_core::annulus::{
    count_radial_sign_changes, det_k0_terms, det_k_terms, det_punctured, disk_eigenvalue, first_eigenvalue, matrix_k,
    matrix_k0, radial_profile, tau,
};
use buckle_core::linalg::det4;
use buckle_core::rectangle::{find_ell_for_nodal_count, first_eigenvalue_rect, gamma_even, lambda_1m, phi};
use buckle_core::rootfind::smallest_root;
use buckle_core::specfun::{
    bessel_deriv, bessel_j, bessel_j_scaled, bessel_j_zero_value, bessel_y, bessel_y_scaled, BesselKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const XTOL: f64 = 1e-12;

/// `(a, k_opt, sqrt(lambda_1), lambda_1 |annulus|)`.
const TABLE: [(f64, u32, f64, f64); 13] = [
    (0.05, 1, 6.23824, 121.95),
    (0.10, 1, 6.71001, 140.03),
    (0.15, 2, 7.06409, 153.24),
    (0.20, 2, 7.50246, 169.76),
    (0.25, 2, 8.02527, 189.69),
    (0.30, 2, 8.63688, 213.26),
    (0.40, 3, 10.0995, 269.17),
    (0.50, 4, 12.1553, 348.13),
    (0.60, 5, 15.2003, 464.55),
    (0.70, 7, 20.2830, 659.15),
    (0.80, 11, 30.4382, 1047.8),
    (0.90, 23, 60.8901, 2213.1),
    (0.95, 47, 121.786, 4543.1),
];

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut slow = Duration::ZERO;
    let mut worst = 0.0f64;
    for &(a, k_opt, sqrt_l, norm) in &TABLE {
        let t = Instant::now();
        let r = first_eigenvalue(a, XTOL).map_err(|e| format!("a={a}: {e}"))?;
        if a > 0.9 {
            slow += t.elapsed();
        }
        ensure(r.k_opt == k_opt, format!("a={a}: k_opt {} (expected {k_opt})", r.k_opt))?;
        let (e1, e2) = (rel(r.sqrt_lambda1, sqrt_l), rel(r.normalized, norm));
        ensure(
            e1 <= 1e-3,
            format!("a={a}: sqrt(lambda1) {} vs {sqrt_l}", r.sqrt_lambda1),
        )?;
        ensure(e2 <= 1e-3, format!("a={a}: lambda1|Omega| {} vs {norm}", r.normalized))?;
        worst = worst.max(e1).max(e2);
    }
    let fast = start.elapsed() - slow;
    ensure(fast < Duration::from_secs(60), format!("a <= 0.90 took {fast:?}"))?;
    ensure(slow < Duration::from_secs(300), format!("a = 0.95 took {slow:?}"))?;
    Ok(format!(
        "13 rows, k_opt exact, max rel err {worst:.1e}, a<=0.90 in {fast:.1?}, a=0.95 in {slow:.1?}"
    ))
}

fn criterion_2() -> Check {
    let f = |mu: f64| det_punctured(mu).unwrap_or(f64::NAN);
    let root = smallest_root(f, 0.5, 0.2, XTOL).map_err(|e| e.to_string())?.root;
    ensure(
        (root - 6.6478167).abs() <= 1e-6,
        format!("first nontrivial root {root}"),
    )?;
    let r = first_eigenvalue(0.0, XTOL).map_err(|e| e.to_string())?;
    ensure(
        (r.sqrt_lambda1 - 5.13562).abs() <= 1e-4,
        format!("sqrt(lambda1) {}", r.sqrt_lambda1),
    )?;
    let j21 = bessel_j_zero_value::<f64>(2, 1).map_err(|e| e.to_string())?;
    ensure((r.lambda1 - j21 * j21).abs() <= 1e-10, "lambda1 != j_{2,1}^2")?;
    Ok(format!(
        "root {root:.10}, sqrt(lambda1) {:.6}, lambda1 {:.4}",
        r.sqrt_lambda1, r.lambda1
    ))
}

fn criterion_3a() -> Check {
    let l = disk_eigenvalue(0, 1, 1.0f64).map_err(|e| e.to_string())?;
    ensure((l - 14.6819).abs() <= 1e-3, format!("lambda1(B1) {l}"))?;
    Ok(format!("lambda1(B1) = {l:.6}"))
}

fn criterion_3b() -> Check {
    let l = disk_eigenvalue(0, 1, 1.0f64).map_err(|e| e.to_string())?;
    let normalized = l * PI;
    ensure(
        (normalized - 12.038).abs() <= 1e-2,
        format!("lambda1|B1| = {normalized:.4}, target 12.038 +- 1e-2"),
    )?;
    Ok(format!("lambda1|B1| = {normalized:.4}"))
}

fn criterion_4() -> Check {
    let g = gamma_even(1.0f64, 1.0, 0).map_err(|e| e.to_string())?;
    let l = lambda_1m(1.0f64, 1.0).map_err(|e| e.to_string())?;
    ensure((g - 2.8833).abs() <= 1e-3, format!("gamma_11 {g}"))?;
    ensure((l - 9.3134).abs() <= 1e-3, format!("lambda_11 {l}"))?;
    let l0 = lambda_1m(1e-4f64, 1.0).map_err(|e| e.to_string())?;
    ensure((l0 - 9.8696).abs() <= 1e-2, format!("lambda_1m(1e-4) {l0}"))?;
    let mut last = PI;
    for i in 0..100 {
        let m = 0.01 * 5000f64.powf(i as f64 / 99.0);
        let p = phi(m, 1.0).map_err(|e| e.to_string())?;
        ensure(p > PI / 2.0 && p < PI && p < last, format!("Phi({m}) = {p}"))?;
        last = p;
    }
    Ok(format!(
        "gamma_11 {g:.6}, lambda_11 {l:.6}, lambda at m=1e-4 {l0:.6}, Phi ok on 100 points"
    ))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let k: u32 = rng.gen_range(0..=20);
        let a: f64 = rng.gen_range(0.1..=0.9);
        let mu: f64 = rng.gen_range(1.0..=50.0);
        let (terms, m) = if k == 0 {
            (det_k0_terms(a, mu), matrix_k0(a, mu))
        } else {
            (det_k_terms(k, a, mu), matrix_k(k, a, mu))
        };
        let (terms, m) = (terms.map_err(|e| e.to_string())?, m.map_err(|e| e.to_string())?);
        let err = (terms.value() - det4(&m)).abs() / terms.scale();
        ensure(err <= 1e-8, format!("k={k} a={a} mu={mu}: relative gap {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("500 samples, worst gap {worst:.1e} of term scale"))
}

fn criterion_6() -> Check {
    let mut worst = 0.0f64;
    for i in 0..41 {
        let x = 0.5 * 1000f64.powf(i as f64 / 40.0);
        let target = 2.0 / (PI * x);
        for n in 0..=150u32 {
            let s = |r: buckle_core::Result<_>| r.map_err(|e: buckle_core::Error| e.to_string());
            let w = s(bessel_j_scaled(n + 1, x))?.mul(s(bessel_y_scaled(n, x))?).value()
                - s(bessel_j_scaled(n, x))?.mul(s(bessel_y_scaled(n + 1, x))?).value();
            let err = (w - target).abs() / target;
            ensure(err <= 1e-10, format!("Wronskian n={n} x={x}: {err:e}"))?;
            worst = worst.max(err);
        }
    }
    for n in 0..=150u32 {
        let z = |n, t| bessel_j_zero_value::<f64>(n, t).map_err(|e| e.to_string());
        let (a, b, c) = (z(n, 1)?, z(n + 1, 1)?, z(n, 2)?);
        ensure(a < b && b < c, format!("interlacing fails at n={n}"))?;
    }
    let h = 1e-5;
    for n in [0u32, 1, 2, 5, 10, 25] {
        for x in [0.8, 2.0, 5.0, 12.5, 40.0] {
            for kind in [BesselKind::J, BesselKind::Y] {
                let f = |t: f64| match kind {
                    BesselKind::J => bessel_j(n, t),
                    BesselKind::Y => bessel_y(n, t),
                };
                let fd = (f(x + h).unwrap() - f(x - h).unwrap()) / (2.0 * h);
                let d = bessel_deriv(kind, n, x).map_err(|e| e.to_string())?;
                let scale = d.abs().max(f(x).unwrap().abs());
                ensure(
                    (fd - d).abs() <= 1e-6 * scale,
                    format!("{kind:?}_{n}'({x}): {d} vs {fd}"),
                )?;
            }
        }
    }
    Ok(format!(
        "Wronskian worst {worst:.1e} (n<=150, 41 points in [0.5,500]), interlacing n<=150, derivatives ok"
    ))
}

fn criterion_7() -> Check {
    let fit = fit_asymptotics(&ASYMPTOTIC_GRID, XTOL).map_err(|e| e.to_string())?;
    ensure(rel(fit.c_mu, 6.0894) <= 0.05, format!("c_mu {}", fit.c_mu))?;
    ensure(rel(fit.c_k, 2.38) <= 0.05, format!("c_k {}", fit.c_k))?;
    Ok(format!(
        "c_mu {:.5}, c_k {:.4}{}",
        fit.c_mu,
        fit.c_k,
        if fit.flagged {
            " (fit flagged: estimates not monotone)"
        } else {
            ""
        }
    ))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let mut last = f64::INFINITY;
    let mut witnesses = Vec::new();
    for n in 1..=6u32 {
        let ell = find_ell_for_nodal_count::<f64>(n).map_err(|e| e.to_string())?;
        ensure(ell < last, format!("witness for n={n} does not decrease"))?;
        let m = first_eigenvalue_rect(ell).map_err(|e| e.to_string())?.m_opt;
        ensure(m == n, format!("ell={ell}: m_opt {m}, expected {n}"))?;
        witnesses.push(format!("{ell:.4}"));
        last = ell;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), format!("took {took:?}"))?;
    Ok(format!("witnesses {} in {took:.1?}", witnesses.join(", ")))
}

fn criterion_9() -> Check {
    for k in 0..=5u32 {
        let mut last = 0.0;
        for i in 0..=8 {
            let a = i as f64 / 10.0;
            let mu = tau(k, a, XTOL).map_err(|e| e.to_string())?.mu;
            ensure(mu > last, format!("tau_{k} not increasing at a={a}"))?;
            last = mu;
        }
    }
    for a in [0.2, 0.5, 0.8] {
        let r = first_eigenvalue(a, XTOL).map_err(|e| e.to_string())?;
        let mus = (1..=r.k_max + 3)
            .map(|k| tau(k, a, XTOL).map(|t| t.mu))
            .collect::<buckle_core::Result<Vec<f64>>>()
            .map_err(|e| e.to_string())?;
        let opt = r.k_opt as usize;
        for k in 2..=mus.len() {
            let ok = if k <= opt {
                mus[k - 1] < mus[k - 2]
            } else {
                mus[k - 1] > mus[k - 2]
            };
            ensure(ok, format!("a={a}: k -> tau_k not unimodal at k={k}"))?;
        }
    }
    let report = monotonicity_audit(&TABLE_A, XTOL);
    ensure(report.failures.is_empty(), format!("{:?}", report.failures))?;
    ensure(
        report.normalized_increasing && report.lambda_increasing,
        format!("{:?}", report.first_violation),
    )?;
    let eps = 0.5;
    for m in [2.0, 4.0] {
        let lhs = lambda_1m(m, 1.0).map_err(|e| e.to_string())? / (eps * eps);
        let rhs = lambda_1m(m / eps, eps).map_err(|e| e.to_string())?;
        ensure(rel(lhs, rhs) <= 1e-8, format!("scaling m={m}: {lhs} vs {rhs}"))?;
    }
    Ok("branch monotonicity, unimodality, lambda1|Omega| increasing over 27 radii, scaling identity".into())
}

fn criterion_10() -> Check {
    for (k, a) in RADIAL_CASES {
        let p = radial_profile(k, a, XTOL, 1024).map_err(|e| e.to_string())?;
        let s = count_radial_sign_changes(&p, 1024).map_err(|e| e.to_string())?;
        ensure(s == 0, format!("k={k} a={a}: {s} sign changes"))?;
    }
    Ok("nine profiles, 0 interior sign changes at 1024 and 2048 samples".into())
}

/// Criteria whose stated target cannot be met, with the reason.
fn unattainable(id: &str) -> Option<&'static str> {
    match id {
        "3b" => Some("12.038 is pi j_11 = 12.0377; pi j_11^2 = 46.1248"),
        _ => None,
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1", "table reproduction", criterion_1),
        ("2", "punctured disk", criterion_2),
        ("3a", "disk lambda1(B1)", criterion_3a),
        ("3b", "disk lambda1|B1|", criterion_3b),
        ("4", "rectangle ell = 1", criterion_4),
        ("5", "determinant oracle equivalence", criterion_5),
        ("6", "special functions", criterion_6),
        ("7", "asymptotic constants", criterion_7),
        ("8", "nodal divergence", criterion_8),
        ("9", "structural invariants", criterion_9),
        ("10", "radial positivity", criterion_10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut unexpected = 0;
    let mut known = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail}"),
            Err(detail) => match unattainable(id) {
                Some(why) => {
                    known += 1;
                    println!("FAIL criterion {id} ({name}): {detail} [unattainable: {why}]");
                }
                None => {
                    unexpected += 1;
                    println!("FAIL criterion {id} ({name}): {detail}");
                }
            },
        }
    }
    println!("acceptance: {unexpected} unexpected failure(s), {known} unattainable");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
