//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion is red.

mod common;

use std::time::{Duration, Instant};

use blockpec::bench::{
    fit_models, gen_option_payoff, gen_random_bp, gen_rbs_pyramid, gen_swap_network, mean_gain_by_n,
    run_gain_experiment, Angles, ExperimentConfig, Family, Interaction, RandomLayout,
};
use blockpec::circuit::{
    classify_circuit_with, conjugate_z_string, is_pauli_z_compatible, Circuit, Compat, GateKind, GateOp, PauliZString,
};
use blockpec::noise::{invert_dephasing, make_dephasing, Inversion, NoiseSpec};
use blockpec::pec::{Mode, Pattern, PecEngine};
use blockpec::sim::{
    exact_mitigated_expectation_with, ideal_expectation, pec_estimate_with, required_samples, EstimateOptions,
    Observable,
};
use blockpec::Error;
use common::{compatible_circuit, hadamard_frame, mixed_circuit, random_noise, rng, with_hadamard_frame};

fn report(id: u32, ok: bool, detail: impl AsRef<str>) -> bool {
    println!(
        "criterion {id:>2}: {} : {}",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    ok
}

fn unc(p: f64) -> NoiseSpec {
    NoiseSpec::uncorrelated(p).unwrap()
}

fn relaxed() -> PecEngine {
    PecEngine::new(Compat::Relaxed, Inversion::Exact)
}

/// `γ_blk` for any circuit: the hybrid plan total.
fn gamma_pair(e: &PecEngine, c: &Circuit) -> (f64, f64) {
    (e.gamma_std(c).unwrap(), e.plan(c, Mode::Hybrid).unwrap().total_gamma)
}

fn closed_form_gammas(pattern: Pattern, p: f64) -> (f64, f64) {
    let g = 1.0 - 2.0 * p;
    match pattern {
        Pattern::A => (g.powi(-3), (1.0 + 2.0 * p - 2.0 * p * p) / g.powi(2)),
        Pattern::B => (g.powi(-4), (1.0 + 2.0 * p - 6.0 * p * p + 4.0 * p.powi(3)) / g.powi(3)),
        Pattern::C => (g.powi(-4), (1.0 + 2.0 * p - 2.0 * p * p) / g.powi(3)),
    }
}

fn criterion_01_closed_form_patterns() -> bool {
    let start = Instant::now();
    let engine = PecEngine::default();
    let mut worst: f64 = 0.0;
    for p in [0.01, 0.1, 0.3] {
        for pat in [Pattern::A, Pattern::B, Pattern::C] {
            let c = pat.circuit(0.83, unc(p));
            let (s, b) = closed_form_gammas(pat, p);
            worst = worst.max((engine.gamma_std(&c).unwrap() - s).abs());
            worst = worst.max((engine.gamma_blk(&c).unwrap() - b).abs());
        }
    }
    let table = [
        (Pattern::A, 1.953125, 1.84375),
        (Pattern::B, 2.44140625, 2.234375),
        (Pattern::C, 2.44140625, 2.3046875),
    ];
    for (pat, s, b) in table {
        let c = pat.circuit(1.7, unc(0.1));
        worst = worst.max((engine.gamma_std(&c).unwrap() - s).abs());
        worst = worst.max((engine.gamma_blk(&c).unwrap() - b).abs());
    }
    let closed = PecEngine::new(Compat::Strict, Inversion::ClosedForm);
    let c = Pattern::B.circuit(0.4, NoiseSpec::correlated(0.1).unwrap());
    let (cs, cb) = (closed.gamma_std(&c).unwrap(), closed.gamma_blk(&c).unwrap());
    let corr_ok = (cs - 1.5625).abs() < 1e-12 && (cb - 1.2333333333333333).abs() < 1e-12;
    let elapsed = start.elapsed();
    report(
        1,
        worst < 1e-12 && corr_ok && elapsed < Duration::from_secs(1),
        format!(
            "uncorrelated max error {worst:.1e}; correlated b gamma_std {cs:.6} (want 1.5625), gamma_blk {cb:.6} (want 1.233333); {elapsed:.2?}"
        ),
    )
}

fn criterion_02_oracle_equivalence() -> bool {
    let start = Instant::now();
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..240 {
        let n = 1 + i % 3;
        let d = 1 + (i / 3) % 4;
        let noise = random_noise(&mut r, [0.01, 0.1, 0.3][i % 3]);
        let c = compatible_circuit(&mut r, n, d, noise);
        for engine in [
            PecEngine::default(),
            PecEngine::new(Compat::Strict, Inversion::ClosedForm),
        ] {
            let fast = engine.block_coefficients(&c).unwrap();
            let slow = engine.naive_block_coefficients(&c).unwrap();
            for (a, b) in fast.coeffs().iter().zip(slow.coeffs()) {
                worst = worst.max((a - b).abs());
            }
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    report(
        2,
        worst < 1e-12 && count >= 200 && elapsed < Duration::from_secs(30),
        format!("{count} circuits, max coefficient difference {worst:.1e}, {elapsed:.2?}"),
    )
}

fn criterion_03_triangle_inequality() -> bool {
    let mut corpus: Vec<(PecEngine, Circuit)> = Vec::new();
    let strict = PecEngine::default();
    let mut r = rng(3);
    for i in 0..300 {
        let n = 1 + i % 4;
        let p = [0.001, 0.01, 0.1, 0.3][i % 4];
        let noise = random_noise(&mut r, p);
        let c = if i % 2 == 0 {
            compatible_circuit(&mut r, n, 1 + i % 6, noise)
        } else {
            mixed_circuit(&mut r, n, 1 + i % 6, noise)
        };
        corpus.push((strict, c));
    }
    for p in [0.001, 0.01, 0.1] {
        for pat in [Pattern::A, Pattern::B, Pattern::C] {
            corpus.push((strict, pat.circuit(0.3, unc(p))));
            corpus.push((strict, pat.circuit(0.3, NoiseSpec::correlated(p).unwrap())));
        }
        for n in 2..=8 {
            corpus.push((strict, gen_random_bp(n, n as u64).unwrap().with_noise(unc(p))));
            corpus.push((
                strict,
                gen_swap_network(n, 1.0, Interaction::Rzz, 1)
                    .unwrap()
                    .with_noise(unc(p)),
            ));
            corpus.push((
                relaxed(),
                gen_swap_network(n, 1.0, Interaction::Rbs, 1)
                    .unwrap()
                    .with_noise(unc(p)),
            ));
            corpus.push((
                relaxed(),
                gen_rbs_pyramid(n, Angles::Seed(1)).unwrap().with_noise(unc(p)),
            ));
            corpus.push((
                strict,
                gen_option_payoff(n, Angles::Seed(1)).unwrap().with_noise(unc(p)),
            ));
        }
    }
    let violations = corpus
        .iter()
        .filter(|(e, c)| {
            let (s, b) = gamma_pair(e, c);
            b > s * (1.0 + 1e-12)
        })
        .count();
    report(
        3,
        violations == 0,
        format!("{} circuits, {violations} violations", corpus.len()),
    )
}

fn criterion_04_unbiasedness() -> bool {
    let start = Instant::now();
    let engine = PecEngine::default();
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for i in 0..60 {
        let n = 1 + i % 4;
        let d = 1 + i % 6;
        let p = [0.01, 0.1][i % 2];
        let noise = random_noise(&mut r, p);
        let block = compatible_circuit(&mut r, n, d, noise);
        let framed = with_hadamard_frame(&mixed_circuit(&mut r, n, d.min(6 - n.min(5)).max(1), noise));
        let obs = [
            Observable::z(n, 0).unwrap(),
            Observable::ZString(PauliZString::new(n, (1 << n) - 1).unwrap()),
        ];
        for o in &obs {
            for (c, modes) in [
                (&block, &[Mode::Std, Mode::Blk, Mode::Hybrid][..]),
                (&framed, &[Mode::Std, Mode::Hybrid][..]),
            ] {
                let ideal = ideal_expectation(c, o).unwrap();
                for &m in modes {
                    match exact_mitigated_expectation_with(&engine, c, o, m) {
                        Ok(v) => {
                            worst = worst.max((v - ideal).abs());
                            runs += 1;
                        }
                        Err(Error::GuardExceeded(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        4,
        worst < 1e-10 && elapsed < Duration::from_secs(120),
        format!("{runs} mitigated values, max |mitigated - ideal| {worst:.1e}, {elapsed:.2?}"),
    )
}

fn criterion_05_product_identity() -> bool {
    let mut worst: f64 = 0.0;
    for p in [0.001, 0.01, 0.1, 0.3] {
        let g1: f64 = 1.0 / (1.0 - 2.0 * p);
        for n in 1..=6 {
            let want = g1.powi(n as i32);
            let support: Vec<usize> = (0..n).collect();
            let inv = invert_dephasing(&unc(p), &support, Inversion::Exact).unwrap();
            worst = worst.max((inv.gamma() - want).abs() / want);
            let fwd = make_dephasing(&unc(p), &support).unwrap();
            assert!(fwd.is_convex(1e-12));
            let layer =
                Circuit::from_ops(n, (0..n).map(|q| GateOp::one(GateKind::Rz(0.1 * q as f64), q)), unc(p)).unwrap();
            worst = worst.max((PecEngine::default().gamma_std(&layer).unwrap() - want).abs() / want);
            worst = worst.max((PecEngine::default().gamma_blk(&layer).unwrap() - want).abs() / want);
        }
    }
    report(5, worst < 1e-12, format!("max relative error {worst:.1e}"))
}

fn criterion_06_hoeffding_budget() -> bool {
    let start = Instant::now();
    let mut r = rng(6);
    let circuits: Vec<Circuit> = (0..5)
        .map(|_| hadamard_frame(&compatible_circuit(&mut r, 3, 4, unc(0.1)), NoiseSpec::none()))
        .collect();
    let obs = Observable::z(3, 0).unwrap();
    let mut hits = 0;
    let mut total_samples = 0;
    for run in 0..100u64 {
        let c = &circuits[run as usize % circuits.len()];
        let gamma = PecEngine::default().gamma_std(c).unwrap();
        let s = required_samples(gamma, 0.05, 0.05).unwrap() as usize;
        total_samples += s;
        let est = pec_estimate_with(c, &obs, &EstimateOptions::new(Mode::Std, s, run)).unwrap();
        if (est.mean - ideal_expectation(c, &obs).unwrap()).abs() <= 0.05 {
            hits += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        6,
        hits >= 95 && elapsed < Duration::from_secs(300),
        format!("{hits}/100 within 0.05 ({total_samples} samples), {elapsed:.2?}"),
    )
}

fn criterion_07_swap_network_gain() -> bool {
    let start = Instant::now();
    let gains: Vec<f64> = [0, 1]
        .iter()
        .map(|&seed| {
            let c = gen_swap_network(9, 3.0, Interaction::Rbs, seed)
                .unwrap()
                .with_noise(unc(0.001));
            let (s, b) = gamma_pair(&relaxed(), &c);
            (s / b).powi(2)
        })
        .collect();
    let elapsed = start.elapsed();
    let deterministic = (gains[0] - gains[1]).abs() < 1e-12;
    report(
        7,
        gains[0] >= 3.5 && deterministic && elapsed < Duration::from_secs(60),
        format!(
            "gain {:.4} (want >= 3.5), angle invariant {deterministic}, {elapsed:.2?}",
            gains[0]
        ),
    )
}

fn gain_curve(family: Family, interaction: Interaction, lo: usize, hi: usize, p: f64) -> Vec<(f64, f64)> {
    let cfg = ExperimentConfig {
        family,
        n_range: [lo, hi],
        depth_factor: 3.0,
        interaction,
        noise: unc(p),
        seeds: vec![0],
        output_path: "unused.csv".into(),
        compat: None,
        layout: RandomLayout::Layered,
    };
    mean_gain_by_n(&run_gain_experiment(&cfg).unwrap())
        .into_iter()
        .map(|(n, g)| (n as f64, g))
        .collect()
}

fn criterion_08_fit_ordering() -> bool {
    let cases = [
        (
            "rbs_pyramid",
            gain_curve(Family::RbsPyramid, Interaction::Rbs, 4, 10, 0.001),
        ),
        (
            "swap_network rzz",
            gain_curve(Family::SwapNetwork, Interaction::Rzz, 4, 10, 0.001),
        ),
        (
            "swap_network rbs",
            gain_curve(Family::SwapNetwork, Interaction::Rbs, 4, 10, 0.001),
        ),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, pts) in &cases {
        let (e, q) = fit_models(pts).unwrap();
        let monotone = pts.windows(2).all(|w| w[1].1 > w[0].1);
        ok &= e.total_squared_residual < q.total_squared_residual && monotone;
        detail.push(format!(
            "{name}: exp {:.3e} vs quad {:.3e}{}",
            e.total_squared_residual,
            q.total_squared_residual,
            if monotone { "" } else { " (not monotone)" }
        ));
    }
    report(8, ok, detail.join("; "))
}

/// Same seed for both modes.
fn variance_ratio(engine: PecEngine, c: &Circuit, obs: &Observable, blk_mode: Mode, shots: Option<u32>) -> f64 {
    let run = |mode| {
        let opts = EstimateOptions {
            engine,
            shots,
            ..EstimateOptions::new(mode, 1000, 2024)
        };
        pec_estimate_with(c, obs, &opts).unwrap().sample_variance
    };
    run(Mode::Std) / run(blk_mode)
}

fn criterion_09_variance_ratios() -> bool {
    let start = Instant::now();
    let pyramid = gen_rbs_pyramid(4, Angles::Seed(9)).unwrap().with_noise(unc(0.01));
    let z0 = Observable::z(4, 0).unwrap();
    let payoff = gen_option_payoff(4, Angles::Seed(9)).unwrap().with_noise(unc(0.01));
    let anc = Observable::excited(5, 4).unwrap();
    let pyr = variance_ratio(relaxed(), &pyramid, &z0, Mode::Blk, None);
    let pay = variance_ratio(PecEngine::default(), &payoff, &anc, Mode::Hybrid, None);
    let pyr_shot = variance_ratio(relaxed(), &pyramid, &z0, Mode::Blk, Some(1));
    let pay_shot = variance_ratio(PecEngine::default(), &payoff, &anc, Mode::Hybrid, Some(1));
    let elapsed = start.elapsed();
    report(
        9,
        (1.3..=2.1).contains(&pyr) && (1.0..=1.2).contains(&pay) && elapsed < Duration::from_secs(600),
        format!(
            "pyramid {pyr:.4} (band [1.3, 2.1]), payoff {pay:.4} (band [1.0, 1.2]); single-shot pyramid {pyr_shot:.4}, payoff {pay_shot:.4}; {elapsed:.2?}"
        ),
    )
}

fn criterion_10_random_circuit_gain() -> bool {
    let cfg = |p| ExperimentConfig {
        family: Family::RandomBp,
        n_range: [8, 8],
        depth_factor: 1.0,
        interaction: Interaction::Rzz,
        noise: unc(p),
        seeds: (0..20).collect(),
        output_path: "unused.csv".into(),
        compat: None,
        layout: RandomLayout::Layered,
    };
    let high = mean_gain_by_n(&run_gain_experiment(&cfg(0.1)).unwrap())[0].1;
    let low = mean_gain_by_n(&run_gain_experiment(&cfg(0.001)).unwrap())[0].1;
    report(
        10,
        high >= 8.0 && low <= 1.1,
        format!("mean gain {high:.2} at p=0.1 (want >= 8), {low:.5} at p=0.001 (want <= 1.1)"),
    )
}

fn criterion_11_compatibility_table() -> bool {
    let gates = [
        GateOp::one(GateKind::X, 0),
        GateOp::two(GateKind::Cz, 0, 1),
        GateOp::one(GateKind::Rz(0.3), 1),
        GateOp::two(GateKind::Rzz(1.1), 0, 1),
        GateOp::two(GateKind::Cnot, 0, 1),
        GateOp::two(GateKind::Swap, 0, 1),
    ];
    let mut ok = gates.iter().all(|g| is_pauli_z_compatible(g, Compat::Strict));
    let toffoli = GateOp::new(GateKind::Toffoli, vec![0, 1, 2]).unwrap();
    let target = PauliZString::from_qubits(3, &[2]).unwrap();
    ok &= matches!(conjugate_z_string(&toffoli, target), Err(Error::NotZClosed { .. }));
    ok &= !is_pauli_z_compatible(&toffoli, Compat::Strict);

    let cnot = GateOp::two(GateKind::Cnot, 0, 1);
    let z = |qs: &[usize]| PauliZString::from_qubits(2, qs).unwrap();
    let rules = [
        (z(&[0]), z(&[0])),
        (z(&[1]), z(&[0, 1])),
        (z(&[0, 1]), z(&[1])),
        (z(&[]), z(&[])),
    ];
    let mut rules_ok = 0;
    for (input, want) in rules {
        rules_ok += (conjugate_z_string(&cnot, input).unwrap() == want) as usize;
    }
    ok &= rules_ok == rules.len();
    let sw = classify_circuit_with(&gen_swap_network(2, 1.0, Interaction::Rzz, 0).unwrap(), Compat::Strict);
    ok &= sw.fully_compatible();
    report(
        11,
        ok,
        format!("six gates compatible, Toffoli target NotZClosed, CNOT rules {rules_ok}/4"),
    )
}

fn main() {
    let criteria: [fn() -> bool; 11] = [
        criterion_01_closed_form_patterns,
        criterion_02_oracle_equivalence,
        criterion_03_triangle_inequality,
        criterion_04_unbiasedness,
        criterion_05_product_identity,
        criterion_06_hoeffding_budget,
        criterion_07_swap_network_gain,
        criterion_08_fit_ordering,
        criterion_09_variance_ratios,
        criterion_10_random_circuit_gain,
        criterion_11_compatibility_table,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
