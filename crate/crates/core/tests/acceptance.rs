//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

mod common;

use std::f64::consts::{LN_2, PI};
use std::time::{Duration, Instant};

use common::{hermitian_eigen, random_state, rng, to_nalgebra};
use qthermo::cli::dephasing_measure_grid;
use qthermo::dynamics::{
    decoherence_factor, dephasing_bloch, dissipative_bloch, dissipative_flows, flows_reference_state, integrate_master, ohmic_rate,
    uniform_grid, Channel, DephasingChannel, DissipativeChannel, MasterChannel, MasterOptions, OhmicParams,
};
use qthermo::nonmarkov::dephasing::s_grid;
use qthermo::nonmarkov::{
    detect_intervals, gamma_zero_crossings, measure_general, nq_of_s, sweep, Alpha, Crossing, Functional,
    MeasureConfig,
};
use qthermo::numerics::diff::derivative;
use qthermo::qubit::{
    bloch_from_density, density_from_bloch, BlochState, ComplexMatrix2, FieldVector, LindbladTerm, Rate,
};
use qthermo::thermo::{accumulate_constant, coherence, dephasing_heat, entropy, first_law_tolerance};
use rand::Rng;

/// Outcome of one criterion: pass flag and a one-line summary.
type Verdict = (bool, String);

fn c1_markovian_null() -> Verdict {
    let ch = DissipativeChannel::new(0.1, 1.0).unwrap();
    let cfg = MeasureConfig::new(uniform_grid(50.0, 2000));
    let mut parts = Vec::new();
    let mut ok = true;
    for f in [Functional::Heat, Functional::Coherence] {
        let m = measure_general(&ch, f, f.default_alpha_rule(), &cfg).unwrap();
        ok &= m.value == 0.0;
        parts.push(format!("{f:?} = {:e}", m.value));
    }
    (ok, parts.join(", "))
}

fn c2_dissipative_flows() -> Verdict {
    let ch = DissipativeChannel::new(0.1, 1.0).unwrap();
    let samples = uniform_grid(50.0, 2000);
    // five-point central differences on a ±2δ cluster around each sample;
    // the 2000-point spacing alone cannot resolve the near-zeros of Ċ
    let delta = 1e-3;
    let mut grid: Vec<f64> = samples
        .iter()
        .flat_map(|&t| (-2..=2).map(move |k| t + k as f64 * delta))
        .filter(|t| (0.0..=50.0).contains(t))
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let th = accumulate_constant(&ch.trajectory(flows_reference_state(), &grid).unwrap(), ch.field()).unwrap();
    let q_dot = derivative(&grid, &th.column(|s| s.q_ent)).unwrap();
    let c_dot = derivative(&grid, &th.column(|s| s.c)).unwrap();
    let (mut positive, mut worst) = (0, 0.0f64);
    for &t in &samples {
        let i = grid.binary_search_by(|g| g.total_cmp(&t)).unwrap();
        let (q, c) = dissipative_flows(t, 0.1, 1.0);
        positive += (q > 0.0) as usize + (c > 0.0) as usize;
        for (closed, fd) in [(q, q_dot[i]), (c, c_dot[i])] {
            if closed.abs() > 1e-8 {
                worst = worst.max(((fd - closed) / closed).abs());
            }
        }
    }
    (positive == 0 && worst < 1e-4, format!("positive samples {positive}, max relative deviation {worst:.2e} (tol 1e-4)"))
}

fn c3_dephasing_heat() -> Verdict {
    let grid = uniform_grid(10.0, 2000);
    let z0: f64 = 0.05;
    let r0 = BlochState::new((1.0 - z0 * z0).sqrt(), 0.0, z0).unwrap();
    let heat = |s: f64| {
        let ch = DephasingChannel::new(OhmicParams::new(s, 1.0).unwrap(), 1.0).unwrap();
        let th = accumulate_constant(&ch.trajectory(r0, &grid).unwrap(), ch.field()).unwrap();
        let closed: Vec<f64> = grid.iter().map(|&t| dephasing_heat(ch.attenuation(t).unwrap(), z0, 1.0, 1.0)).collect();
        (th.column(|s| s.q_ent), closed)
    };
    let (q_markov, _) = heat(1.5);
    let monotone = q_markov.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let (q, _) = heat(3.5);
    let eps = 1e-9 * q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let found = detect_intervals(&grid, &q, Alpha::Decreasing, eps, 1e-6).unwrap();
    let want = ((PI / 7.0).tan(), (2.0 * PI / 7.0).tan());
    let matched = found.pairs().iter().any(|&(a, b)| (a - want.0).abs() < 1e-3 && (b - want.1).abs() < 1e-3);
    (
        monotone && !found.is_empty() && matched,
        format!(
            "s=1.5 non-increasing: {monotone}; s=3.5 increasing intervals {:?}; target ({:.5}, {:.5}) matched: {matched}",
            found.pairs(),
            want.0,
            want.1
        ),
    )
}

fn c4_sweep() -> Verdict {
    let s_values = s_grid(0.0, 8.0, 0.05).unwrap();
    let rows = sweep(&s_values, 1.0, 1.0).unwrap();
    let markov_zero = rows.iter().filter(|r| r.s <= 2.0).all(|r| r.n_q == 0.0 && r.n_c == 0.0);
    let argmax = |f: fn(&qthermo::nonmarkov::SweepRow) -> f64| {
        rows.iter().max_by(|a, b| f(a).total_cmp(&f(b))).map(|r| (r.s, f(r))).unwrap()
    };
    let (sq, peak_q) = argmax(|r| r.n_q);
    let (sc, peak_c) = argmax(|r| r.n_c);
    let peaks_ok = (sq - 3.2).abs() <= 0.1 + 1e-9 && (sc - 3.2).abs() <= 0.1 + 1e-9;
    let ratios: Vec<f64> = rows.iter().filter(|r| r.n_c > 0.01).map(|r| r.n_c / r.n_q).collect();
    let (rmin, rmax) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    let ratio_ok = !ratios.is_empty() && rmin >= 1.7 && rmax <= 2.3;
    let at6 = rows.iter().find(|r| (r.s - 6.0).abs() < 1e-9).unwrap();
    let tail_ok = at6.n_q < 0.05 * peak_q && at6.n_c < 0.05 * peak_c;
    // z_max is carried in log form: it underflows f64 for large s
    let zmax_ok = rows.iter().filter(|r| r.s > 2.0).all(|r| r.ln_z_max.is_some_and(f64::is_finite));
    (
        markov_zero && peaks_ok && ratio_ok && tail_ok && zmax_ok,
        format!(
            "zero for s≤2: {markov_zero}; argmax N_Q {sq}, N_C {sc}; N_C/N_Q in [{rmin:.3}, {rmax:.3}]; \
             s=6 N_Q/peak {:.1e}; z_max>0 for s>2: {zmax_ok}",
            at6.n_q / peak_q
        ),
    )
}

fn c5_oracles() -> Verdict {
    let ch = DissipativeChannel::new(0.1, 1.0).unwrap();
    let r0 = BlochState::new(0.5, 0.0, 0.5).unwrap();
    let grid = uniform_grid(50.0, 100);
    let opts = MasterOptions::default();
    let out = integrate_master(|_| ch.hamiltonian(), &ch.lindblad_terms(), &density_from_bloch(r0), &grid, opts).unwrap();
    let diss = grid
        .iter()
        .zip(out.trajectory.states())
        .map(|(&t, s)| (s.vec() - dissipative_bloch(t, r0, 0.1, 1.0).vec()).norm())
        .fold(0.0, f64::max);

    let deph_ch = DephasingChannel::new(OhmicParams::new(3.5, 1.0).unwrap(), 1.0).unwrap();
    let r0 = BlochState::new(0.6, -0.2, 0.3).unwrap();
    let grid = uniform_grid(10.0, 100);
    let h = deph_ch.field().hamiltonian();
    let out = integrate_master(|_| h, &deph_ch.lindblad_terms(), &density_from_bloch(r0), &grid, opts).unwrap();
    let deph = grid
        .iter()
        .zip(out.trajectory.states())
        .map(|(&t, s)| (s.vec() - deph_ch.lab_state(t, r0).unwrap().vec()).norm())
        .fold(0.0, f64::max);

    let unit = OhmicParams::new(1.0, 1.0).unwrap();
    let factor = uniform_grid(20.0, 100)
        .iter()
        .map(|&t| (decoherence_factor(t, unit).unwrap() - (1.0 + t * t).powf(-0.5)).abs())
        .fold(0.0, f64::max);
    (
        diss < 1e-8 && deph < 1e-7 && factor < 1e-9,
        format!("dissipative {diss:.1e} (tol 1e-8), dephasing {deph:.1e} (tol 1e-7), Γ at s=1 {factor:.1e} (tol 1e-9)"),
    )
}

fn random_channel(rng: &mut rand::rngs::StdRng, k: usize) -> Box<dyn Channel> {
    match k % 3 {
        0 => Box::new(DissipativeChannel::new(rng.gen_range(0.01..2.0), rng.gen_range(0.2..2.0)).unwrap()),
        1 => Box::new(
            DephasingChannel::new(OhmicParams::new(rng.gen_range(0.5..6.0), rng.gen_range(0.5..2.0)).unwrap(), rng.gen_range(0.2..2.0))
                .unwrap(),
        ),
        _ => {
            let mut op = || {
                let mut c = || num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                ComplexMatrix2::new(c(), c(), c(), c())
            };
            let terms = vec![
                LindbladTerm::new(op(), Rate::Constant(0.3)),
                LindbladTerm::new(op(), Rate::Ohmic(OhmicParams::new(3.0, 1.0).unwrap())),
            ];
            let field = FieldVector::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            Box::new(MasterChannel::new(field, terms))
        }
    }
}

fn c6_first_law() -> Verdict {
    let mut rng = rng(2024);
    let grid = uniform_grid(10.0, 400);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for k in 0..100 {
        let ch = random_channel(&mut rng, k);
        let r0 = random_state(&mut rng);
        let th = accumulate_constant(&ch.trajectory(r0, &grid).unwrap(), ch.field()).unwrap();
        let tol = first_law_tolerance(th.max_abs_energy());
        let star = th.samples().iter().map(|s| (s.w_ent - s.w_star).abs()).fold(0.0, f64::max);
        let res = th.first_law_residual().max(star);
        worst = worst.max(res / tol);
        failures += (res > tol) as usize;
    }
    (failures == 0, format!("100 trajectories, {failures} failures, worst residual {worst:.1e} of tolerance"))
}

fn c7_measure_pipeline() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for s in [2.5, 3.5, 4.5] {
        let p = OhmicParams::new(s, 1.0).unwrap();
        let closed = nq_of_s(p, 1.0).unwrap().n_q;
        let ch = DephasingChannel::new(p, 1.0).unwrap();
        let mut cfg = MeasureConfig::new(dephasing_measure_grid(1.0));
        cfg.search.refinements = 12;
        let m = measure_general(&ch, Functional::Heat, Functional::Heat.default_alpha_rule(), &cfg).unwrap();
        let rel = ((m.value - closed) / closed).abs();
        ok &= rel < 0.01;
        parts.push(format!("s={s}: {:.6e} vs {:.6e} (rel {rel:.1e})", m.value, closed));
    }
    (ok, parts.join("; "))
}

fn c8_properties() -> Verdict {
    const N: usize = 1000;
    let mut rng = rng(77);
    let mut fails = [0usize; 5];
    for _ in 0..N {
        let s = random_state(&mut rng);
        let back = bloch_from_density(&density_from_bloch(s)).unwrap();
        fails[0] += ((back.vec() - s.vec()).norm() > 1e-14) as usize;

        let f = FieldVector::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (_, basis) = hermitian_eigen(&f.hamiltonian());
        let rotated = basis.adjoint() * to_nalgebra(&density_from_bloch(s)) * basis;
        let l1 = rotated[(0, 1)].norm() + rotated[(1, 0)].norm();
        fails[1] += ((coherence(s, f).unwrap() - l1).abs() > 1e-10) as usize;

        let dir = random_state(&mut rng).vec();
        let pure = BlochState::from_vec(dir * (1.0 / dir.norm())).unwrap();
        fails[2] += (entropy(pure).abs() > 1e-12 || (entropy(BlochState::MAXIMALLY_MIXED) - LN_2).abs() > 1e-15) as usize;

        let t = rng.gen_range(0.0..50.0);
        let p = OhmicParams::new(rng.gen_range(0.1..8.0), rng.gen_range(0.1..5.0)).unwrap();
        let z_ok = dephasing_bloch(t, s, p).unwrap().z() * s.z() >= 0.0
            && dissipative_bloch(t, s, rng.gen_range(0.01..5.0), 1.0).z() * s.z() >= 0.0;
        fails[3] += (!z_ok) as usize;

        let crossings_ok = gamma_zero_crossings(p).into_iter().all(|c| match c {
            Crossing::At(t) => ohmic_rate(t, p).abs() < 1e-9,
            Crossing::AtInfinity => true,
        });
        fails[4] += (!crossings_ok) as usize;
    }
    let names = ["round trip", "coherence l1", "entropy limits", "z sign", "crossing residuals"];
    let summary: Vec<String> = names.iter().zip(fails).map(|(n, f)| format!("{n} {}/{N}", N - f)).collect();
    (fails.iter().all(|&f| f == 0), summary.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Duration); 8] = [
        ("1 markovian null result", c1_markovian_null, Duration::from_secs(30)),
        ("2 dissipative flows", c2_dissipative_flows, Duration::from_secs(5)),
        ("3 dephasing heat shape", c3_dephasing_heat, Duration::from_secs(10)),
        ("4 ohmicity sweep", c4_sweep, Duration::from_secs(300)),
        ("5 integrator oracles", c5_oracles, Duration::MAX),
        ("6 first law", c6_first_law, Duration::MAX),
        ("7 measure pipeline", c7_measure_pipeline, Duration::MAX),
        ("8 properties", c8_properties, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        let elapsed = start.elapsed();
        let ok = ok && elapsed <= budget;
        failed += (!ok) as usize;
        let limit = if budget == Duration::MAX { String::new() } else { format!(", limit {} s", budget.as_secs()) };
        println!("{} criterion {name}: {detail} [{:.2} s{limit}]", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
