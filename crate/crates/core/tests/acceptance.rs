//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex;
use resonant::dynamics::{integrate, ApproxOptions, ResonantRhs};
use resonant::experiments::{
    run_approx_study, run_bounds_check, run_stationary_table, run_symmetry_suite, Reprojector, StateSampler,
    SymmetryOptions,
};
use resonant::multilinear::{
    a_lambda, decompose_isometry, e_a_eval, e_a_hermite_tensor, e_functional, hamiltonian, lambda_to_theta,
    rotation_about, stationary_eigenvalue, t_a_apply, theta_rotation, FunctionalRoute, Isometry, OperatorRoute,
    ResonantConfig, ResonantOperator, Slot, SlotKind,
};
use resonant::State;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn sharp_constants() -> Outcome {
    let phi0 = State::basis(0, 1);
    let h6 = hamiltonian(2, &phi0).unwrap();
    let h4 = hamiltonian(1, &phi0).unwrap();
    let e6 = (h6 - 1.0 / (PI * 3f64.sqrt())).abs();
    let e4 = (h4 - 1.0 / (2.0 * PI).sqrt()).abs();
    outcome(e6 < 1e-9 && e4 < 1e-9, format!("H6(phi0)={h6:.12} err {e6:.1e}, H4(phi0)={h4:.12} err {e4:.1e}"))
}

fn stationary_eigenvalues() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, omega0) in [(2, 6.0 / (PI * 3f64.sqrt())), (1, 4.0 / (2.0 * PI).sqrt())] {
        let w = stationary_eigenvalue(0, &ResonantConfig::new(k, 4).unwrap()).unwrap();
        let err = (w.omega - omega0).abs();
        ok &= err < 1e-9 && w.residual < 1e-9;
        let table = run_stationary_table(&ResonantConfig::new(k, 12).unwrap(), 8).unwrap();
        let worst = table.rows.iter().map(|r| r.residual).fold(0.0, f64::max);
        ok &= table.rows.len() == 9 && worst < 1e-8;
        detail.push(format!("k={k}: omega0={:.10} err {err:.1e}, max residual n<=8 {worst:.1e}", w.omega));
    }
    outcome(ok, detail.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for k in [1, 2] {
        let op = ResonantOperator::<f64>::new(ResonantConfig::new(k, 8).unwrap()).unwrap();
        let mut rng = StateSampler::new(300 + k as u64);
        for _ in 0..50 {
            let f: Vec<State> = (0..2 * k + 1).map(|_| rng.state(8)).collect();
            let refs: Vec<&State> = f.iter().collect();
            let a = op.apply(&refs, OperatorRoute::TimeAverage).unwrap();
            let b = op.apply(&refs, OperatorRoute::DirectSum).unwrap();
            worst = worst.max(a.max_abs_diff(&b));
        }
    }
    outcome(worst < 1e-10, format!("max coefficient error {worst:.1e} over 50 draws per k at N=8"))
}

fn representation_equivalence() -> Outcome {
    let mut rng = StateSampler::new(41);
    let mut worst_route = 0.0f64;
    for k in [1, 2] {
        for _ in 0..5 {
            let f: Vec<State> = (0..2 * k + 2).map(|_| rng.state(6)).collect();
            let refs: Vec<&State> = f.iter().collect();
            let a = e_functional(k, &refs, FunctionalRoute::ThetaIntegral, 64).unwrap();
            let b = e_functional(k, &refs, FunctionalRoute::HermiteSum, 64).unwrap();
            worst_route = worst_route.max((a - b).norm());
        }
    }
    let f: Vec<State> = (0..6).map(|_| rng.state(6)).collect();
    let slots: Vec<Slot<f64>> = f.iter().map(Slot::from).collect();
    let mut worst_lambda = 0.0f64;
    for i in 0..20 {
        let lambda = -4.0 + 8.0 * (i as f64 + 0.5) / 20.0;
        let ea = e_a_eval(&a_lambda(lambda), &slots).unwrap();
        let theta = lambda_to_theta(lambda);
        let d = [theta, -theta]
            .iter()
            .map(|&t| (e_a_eval(&theta_rotation(2, t), &slots).unwrap() - ea).norm())
            .fold(f64::INFINITY, f64::min);
        worst_lambda = worst_lambda.max(d);
    }
    outcome(
        worst_route < 1e-9 && worst_lambda < 1e-10,
        format!("theta vs hermite-sum {worst_route:.1e} (N=6, M=64); A(lambda) vs R(+-theta) {worst_lambda:.1e} at 20 lambda"),
    )
}

fn symmetry_suite() -> Outcome {
    let opts = SymmetryOptions::default();
    let mut ok = true;
    let mut detail = Vec::new();
    for k in [2, 1] {
        let rep = run_symmetry_suite(k, 2024, &opts).unwrap();
        let worst = rep.results.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
        ok &= rep.passed && rep.results.len() == if k == 2 { 8 } else { 5 };
        detail.push(format!("k={k}: {} actions, worst {worst:.1e}", rep.results.len()));
    }
    outcome(ok, format!("{} draws; {}", opts.draws, detail.join("; ")))
}

/// Exhaustive over mode indices < n: the largest |E| on tuples whose level
/// is nonzero, and the largest |E| overall.
fn selection_scan(k: usize, n: usize, m_theta: usize) -> (f64, f64) {
    let kinds: Vec<SlotKind> = if k == 2 {
        vec![SlotKind::Free; 6]
    } else {
        use SlotKind::{Free, Gaussian};
        vec![Gaussian, Free, Free, Gaussian, Free, Free]
    };
    let free = kinds.iter().filter(|s| **s == SlotKind::Free).count();
    let mut total = vec![0.0f64; n.pow(free as u32)];
    for j in 0..m_theta {
        let theta = 2.0 * PI * j as f64 / m_theta as f64;
        let t = e_a_hermite_tensor(&theta_rotation(k, theta), &kinds, n).unwrap();
        for (a, b) in total.iter_mut().zip(&t) {
            *a += b;
        }
    }
    // Trapezoid step times the constant of the angle-integral representation.
    let c = if k == 2 { 1.0 / (2.0 * 3f64.sqrt() * PI * PI) } else { 1.0 / (2.0 * 2f64.sqrt() * PI * PI) };
    let scale = 2.0 * PI / m_theta as f64 * c;
    let mut off = 0.0f64;
    let mut on = 0.0f64;
    for (flat, v) in total.iter().map(|v| v * scale).enumerate() {
        let mut r = flat;
        let mut idx = vec![0usize; free];
        for slot in (0..free).rev() {
            idx[slot] = r % n;
            r /= n;
        }
        let (plain, conj) = idx.split_at(free / 2);
        let level = plain.iter().sum::<usize>() as i64 - conj.iter().sum::<usize>() as i64;
        if level != 0 {
            off = off.max(v.abs());
        } else {
            on = on.max(v.abs());
        }
    }
    (off, on)
}

fn selection_rule() -> Outcome {
    let (off6, on6) = selection_scan(2, 6, 64);
    let (off4, on4) = selection_scan(1, 6, 64);
    outcome(
        off6 < 1e-12 && off4 < 1e-12 && on6 > 1e-2 && on4 > 1e-2,
        format!("indices <= 5: max non-resonant |E6| {off6:.1e}, |E4| {off4:.1e} (resonant max {on6:.2e}, {on4:.2e})"),
    )
}

fn operator_bounds() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for k in [2, 1] {
        let rep = run_bounds_check(k, 200, 7, 6).unwrap();
        ok &= rep.violations == 0;
        detail.push(format!("k={k}: max ratio {:.4} vs bound {:.4}, {} violations", rep.max_ratio, rep.bound, rep.violations));
    }
    outcome(ok, format!("200 draws; {}", detail.join("; ")))
}

fn conservation() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, n) in [(2, 32), (1, 24)] {
        let u0 = StateSampler::new(1).state(4).padded(n);
        let rhs = ResonantRhs::<f64>::new(ResonantConfig::new(k, n).unwrap()).unwrap();
        let traj = integrate(&rhs, &u0, 10.0, 1e-3, 100).unwrap();
        let mut worst = [
            traj.drift(|r| r.mass),
            traj.drift(|r| r.x_mean),
            traj.drift(|r| r.momentum),
            traj.drift(|r| r.energy),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if k == 2 {
            worst = worst.max(traj.drift(|r| r.quad_moment)).max(traj.drift(|r| r.kinetic));
        }
        let h = traj.drift(|r| r.hamiltonian);
        ok &= worst < 1e-8 && h < 1e-7;
        detail.push(format!("k={k} N={n}: invariants {worst:.1e}, H {h:.1e}"));
    }
    outcome(ok, format!("dt=1e-3, t=10; {}", detail.join("; ")))
}

fn approximation() -> Outcome {
    let opts = ApproxOptions { n_modes: 12, sample_every: 5, ..ApproxOptions::default() };
    let study = run_approx_study(1, &[0.1, 0.07, 0.05], 1.0, &opts).unwrap();
    let sup: Vec<f64> = study.curves.iter().map(|c| c.sup_error).collect();
    let ratio = sup[0] / sup[2];
    let slope = study.fitted_exponent.unwrap();
    outcome(
        (4.0..=16.0).contains(&ratio) && (2.5..=3.5).contains(&slope),
        format!("sup errors {:.2e} {:.2e} {:.2e}; ratio {ratio:.3}; exponent {slope:.3}", sup[0], sup[1], sup[2]),
    )
}

fn example_rotation_2d() -> Outcome {
    let proj = Reprojector::new(48, 200).unwrap();
    let g = proj.project(|x| Complex::new((-x * x).exp(), 0.0)).unwrap();
    let h = proj.project(|x| Complex::new(x * (-x * x).exp(), 0.0)).unwrap();
    let a = Isometry::rotation_2d(PI / 4.0);
    let tg = t_a_apply(&a, &[Slot::from(&g), Slot::from(&g), Slot::from(&g)], 48).unwrap();
    let th = t_a_apply(&a, &[Slot::from(&h), Slot::from(&h), Slot::from(&h)], 48).unwrap();
    let omega = tg.inner(&g) / g.inner(&g);
    let residual = (&tg - &g.scale(omega)).l2_norm();
    let err = (omega.norm() - (8.0 * PI).sqrt()).abs();
    let hres = th.l2_norm();
    outcome(
        err < 1e-6 && residual < 1e-9 && hres < 1e-9,
        format!("omega={:.12}{:+.1e}i, ||omega|-sqrt(8pi)| {err:.1e}, eigen residual {residual:.1e}, ||T(h,h,h)|| {hres:.1e}", omega.re, omega.im),
    )
}

fn decomposition() -> Outcome {
    let mut rng = StateSampler::new(11);
    let mut worst = 0.0f64;
    let mut clean = true;
    for _ in 0..100 {
        let mut a = Isometry::<f64>::identity(3);
        for _ in 0..1 + rng.index(4) {
            let factor = match rng.index(3) {
                0 => {
                    let mut p = vec![0usize, 1, 2];
                    for i in (1..3).rev() {
                        p.swap(i, rng.index(i + 1));
                    }
                    Isometry::permutation(&p).unwrap()
                }
                1 => Isometry::signs(&[rng.coin(), rng.coin(), rng.coin()]),
                _ => {
                    let mut axis = [0.0; 3];
                    axis[rng.index(3)] = 1.0;
                    rotation_about(axis, rng.uniform(-PI, PI)).unwrap()
                }
            };
            a = a.compose(&factor).unwrap();
        }
        let d = decompose_isometry(&a).unwrap();
        clean &= d.residual_has_no_pairs();
        let rebuilt = d.reconstruct();
        for (i, row) in rebuilt.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                worst = worst.max((v - a.get(i, j)).abs());
            }
        }
    }
    outcome(worst < 1e-12 && clean, format!("100 random products, max reconstruction error {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("sharp constants", sharp_constants),
        ("stationary eigenvalues", stationary_eigenvalues),
        ("time-average vs direct sum", oracle_equivalence),
        ("representation equivalence", representation_equivalence),
        ("symmetry suite", symmetry_suite),
        ("selection rule", selection_rule),
        ("operator L2 bounds", operator_bounds),
        ("conservation", conservation),
        ("approximation scaling", approximation),
        ("rotation example in dimension 2", example_rotation_2d),
        ("decomposition", decomposition),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failures += 1;
        }
        println!("criterion {:>2} {name}: {verdict} ({}) [{:.1}s]", i + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
