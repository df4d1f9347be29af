//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance`; extra numeric arguments select
//! criteria (`cargo test --test acceptance -- 2 8`).

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use erasure_core::adversaries;
use erasure_core::game::{play, strategy_moves, Player2Kind, Winner};
use erasure_core::generators::{far_step, random_linear, sorted_step, InputKind, InputSpec};
use erasure_core::ground_truth::{
    distance_to_linearity, distance_to_quadraticity, violation_probability_linearity, violation_probability_quadraticity, walsh_hadamard, Exact,
};
use erasure_core::harness::{Experiment, ExperimentConfig};
use erasure_core::model::{BooleanFunction, FunctionFile, QueryAnswer, SequenceFunction};
use erasure_core::oracle::{OracleMode, OracleSession};
use erasure_core::stats::{chi_square_homogeneity, wilson, CONFIDENCE};
use erasure_core::testers::{sortedness_query_count, QuadraticPlan, TesterKind, TesterParams};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lower confidence bound every rate claim must clear.
const RATE_FLOOR: f64 = 0.61;
/// Significance level of the indistinguishability tests.
const ALPHA: f64 = 0.01;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Independent oracles.

fn all_d3() -> impl Iterator<Item = (u32, BooleanFunction)> {
    (0u32..256).map(|t| (t, BooleanFunction::from_fn(3, |x| t >> x & 1 == 1).unwrap()))
}

/// Closest parity by direct comparison, as a count of disagreements.
fn linear_disagreements(f: &BooleanFunction) -> u64 {
    let n = 1u32 << f.dim();
    (0..n).map(|s| (0..n).filter(|&x| f.get(x) != ((x & s).count_ones() & 1) as u8).count() as u64).min().unwrap()
}

/// Violating `k`-tuples of `{0,1}^3`, counted by odometer enumeration.
fn tuple_violations_d3(f: &BooleanFunction, k: u32) -> u64 {
    let mut bad = 0;
    for code in 0u32..1 << (3 * k) {
        let (mut sum, mut xor) = (0u8, 0u32);
        for i in 0..k {
            let x = code >> (3 * i) & 7;
            sum ^= f.get(x);
            xor ^= x;
        }
        bad += u64::from(sum != f.get(xor));
    }
    bad
}

/// Homogeneous quadratics on `{0,1}^3` as 8-bit tables.
fn quadratic_tables_d3() -> Vec<u32> {
    let monomials: [&dyn Fn(u32) -> u32; 6] = [
        &|x| x & 1,
        &|x| x >> 1 & 1,
        &|x| x >> 2 & 1,
        &|x| x & x >> 1 & 1,
        &|x| x & x >> 2 & 1,
        &|x| x >> 1 & x >> 2 & 1,
    ];
    (0u32..64)
        .map(|c| (0..8u32).map(|x| ((0..6).filter(|&m| c >> m & 1 == 1).map(|m| monomials[m](x)).sum::<u32>() & 1) << x).sum())
        .collect()
}

fn eta_count_d3(f: &BooleanFunction) -> u64 {
    let mut bad = 0;
    for x in 0..8 {
        for y in 0..8 {
            for z in 0..8 {
                let t = [x, y, z, x ^ y, x ^ z, y ^ z, x ^ y ^ z].iter().fold(0, |a, &p| a ^ f.get(p));
                bad += u64::from(t);
            }
        }
    }
    bad
}

/// Whether some linear function agrees with every `(point, value)` pair,
/// by elimination over GF(2) with the value in bit 63.
fn linear_consistent(pairs: &[(u64, u64)]) -> bool {
    let mut basis: Vec<u64> = Vec::new();
    for &(p, v) in pairs {
        let mut row = p | (v & 1) << 63;
        for &b in &basis {
            let pivot = 63 - (b & !(1 << 63)).leading_zeros();
            if row >> pivot & 1 == 1 {
                row ^= b;
            }
        }
        if row == 1 << 63 {
            return false;
        }
        if row & !(1 << 63) != 0 {
            basis.push(row);
            basis.sort_unstable_by_key(|b| std::cmp::Reverse(b & !(1 << 63)));
        }
    }
    true
}

/// Longest non-decreasing subsequence of a 0/1 sequence: the best split
/// into a prefix of zeros and a suffix of ones.
fn lnds_binary(s: &SequenceFunction) -> u64 {
    let n = s.len();
    let total_ones = (1..=n).filter(|&i| s.at(i) == 1).count() as u64;
    let (mut zeros, mut ones_before, mut best) = (0u64, 0u64, total_ones);
    for i in 1..=n {
        if s.at(i) == 0 {
            zeros += 1;
        } else {
            ones_before += 1;
        }
        best = best.max(zeros + total_ones - ones_before);
    }
    best
}

fn far_enough(f: &BooleanFunction, eps: f64) -> bool {
    let spec = walsh_hadamard(f).unwrap();
    let n = 1i64 << f.dim();
    let (_, top) = spec.max_sum();
    // distance = (n - top) / (2n)
    (n - top) as f64 / (2 * n) as f64 >= eps
}

fn rate_line(rejects: u64, trials: u64) -> (f64, f64) {
    let ci = wilson(rejects, trials, CONFIDENCE);
    (rejects as f64 / trials as f64, ci.lo)
}

// ---------------------------------------------------------------------------
// Criteria.

fn criterion_1() -> Check {
    let start = Instant::now();
    for (table, f) in all_d3() {
        let dis = linear_disagreements(&f);
        let lib = distance_to_linearity(&f).unwrap();
        ensure(lib == Exact::new(dis, 8), || format!("table {table}: library distance {lib} vs {dis}/8"))?;
        for k in [2u32, 4] {
            let bad = tuple_violations_d3(&f, k);
            let total = 1u64 << (3 * k);
            // bad / total >= dis / 8
            ensure(bad * 8 >= dis * total, || format!("table {table}, k={k}: {bad}/{total} < {dis}/8"))?;
            let lib = violation_probability_linearity(&f, k).unwrap().exact().unwrap();
            ensure(lib == Exact::new(bad, total), || format!("table {table}, k={k}: library {lib}"))?;
        }
    }
    let shifted = BooleanFunction::from_fn(3, |x| x & 1 == 0).unwrap();
    let odd = tuple_violations_d3(&shifted, 3);
    ensure(odd == 0, || format!("x[1]+1 has {odd} violating triples"))?;
    ensure(linear_disagreements(&shifted) == 4, || "x[1]+1 is not 1/2-far".into())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("256 functions, k in {{2,4}}, exact; x[1]+1 has 0 odd violations; {secs:.2}s"))
}

const LINEARITY_ADVERSARIES: [&str; 3] = ["span_eraser", "random_eraser", "sum_spoiler"];

/// Far inputs shared across adversaries, each verified by the spectrum.
fn far_inputs(d: u32, eps: f64, count: u64, seed: u64) -> Result<Vec<FunctionFile>, String> {
    let exp = Experiment::new(ExperimentConfig::new(InputSpec::cube(InputKind::Far, d, eps), TesterKind::Blr, eps, 1, "null").with_seed(seed))
        .map_err(|e| e.to_string())?;
    (0..count)
        .map(|i| {
            let f = exp.input(i).map_err(|e| e.to_string())?;
            match &f {
                FunctionFile::Bool(b) if far_enough(b, eps) => Ok(f),
                _ => Err(format!("input {i} is not {eps}-far")),
            }
        })
        .collect()
}

/// Runs `tester` on far inputs and random linear ones under each
/// adversary. Returns the summary and the worst far-input CI bound.
fn linearity_protocol(tester: TesterKind, d: u32, eps: f64, t: usize, far_trials: u64, linear_trials: u64, max_queries: Option<usize>) -> Check {
    let inputs = far_inputs(d, eps, far_trials, 1000 + u64::from(d))?;
    let mut parts = Vec::new();
    for strategy in LINEARITY_ADVERSARIES {
        let cfg = ExperimentConfig::new(InputSpec::cube(InputKind::Linear, d, eps), tester, eps, t, strategy).with_seed(7);
        let exp = Experiment::new(cfg.clone().with_trials(linear_trials)).map_err(|e| e.to_string())?;
        let mut rejects = 0;
        for (i, f) in inputs.iter().enumerate() {
            let out = exp.run_on(i as u64, f).map_err(|e| e.to_string())?;
            rejects += u64::from(out.verdict.rejected());
            if let Some(cap) = max_queries {
                ensure(out.verdict.queries_used <= cap, || format!("{strategy}: trial {i} used {} queries", out.verdict.queries_used))?;
            }
            ensure(out.witness_valid != Some(false), || format!("{strategy}: invalid witness in trial {i}"))?;
        }
        let (rate, lo) = rate_line(rejects, far_trials);
        ensure(lo >= RATE_FLOOR, || format!("{strategy}: far rejection {rate:.3}, CI low {lo:.3}"))?;
        let report = exp.estimate_with(false).map_err(|e| e.to_string())?;
        ensure(report.rejects == 0, || format!("{strategy}: {} linear inputs rejected", report.rejects))?;
        if let Some(cap) = max_queries {
            ensure(report.max_queries as usize <= cap, || format!("{strategy}: linear run used {} queries", report.max_queries))?;
        }
        parts.push(format!("{strategy} {rate:.3} (lo {lo:.3})"));
    }
    Ok(format!("far rejection {}; linear 0/{linear_trials} rejected each", parts.join(", ")))
}

fn criterion_2() -> Check {
    linearity_protocol(TesterKind::LinearityOnline, 20, 0.25, 2, 2000, 10_000, None)
}

fn criterion_3() -> Check {
    let (eps, t) = (0.125, 1usize);
    let cap = 2 * (88.0 * t as f64 / eps).ceil() as usize;
    let summary = linearity_protocol(TesterKind::LinearitySimple, 14, eps, t, 2000, 10_000, Some(cap))?;
    Ok(format!("{summary}; every trial <= {cap} queries"))
}

fn criterion_4() -> Check {
    let d = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let zero = BooleanFunction::zero(d).unwrap();
    // Structure: any four queries, all spans of answered points erased.
    for seq in 0..1000 {
        let mut s = OracleSession::open(&zero, 16, OracleMode::Erasure, adversaries::span_eraser(16), seq);
        let mut answered: Vec<u64> = Vec::new();
        for _ in 0..4 {
            let x = rng.gen_range(0..1u64 << d);
            if !s.query(x).unwrap().is_erased() && !answered.contains(&x) {
                answered.push(x);
            }
            let overlay = s.inspect().1;
            for mask in 1u32..1 << answered.len() {
                if mask.count_ones() >= 2 {
                    let sum = (0..answered.len()).filter(|i| mask >> i & 1 == 1).fold(0, |a, i| a ^ answered[i]);
                    ensure(overlay.contains(sum), || format!("sequence {seq}: span {sum:#x} of {answered:x?} not erased"))?;
                }
            }
        }
    }
    // Indistinguishability: queries x, y, z, x^y^z on random linear versus
    // uniformly random inputs.
    let transcripts = 100_000u64;
    let encode = |a: QueryAnswer| match a {
        QueryAnswer::Value(v) => v as usize,
        QueryAnswer::Erased => 2,
    };
    let mut per_position = [[[0u64; 3]; 4]; 2];
    let mut joint = [vec![0u64; 81], vec![0u64; 81]];
    for (side, counts) in per_position.iter_mut().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + side as u64);
        for i in 0..transcripts {
            let f = if side == 0 {
                random_linear(d, rng.next_u64()).unwrap()
            } else {
                BooleanFunction::from_words(d, (0..64).map(|_| rng.next_u64()).collect()).unwrap()
            };
            let mut s = OracleSession::open(&f, 16, OracleMode::Erasure, adversaries::span_eraser(16), i);
            let (x, y, z) = (rng.gen_range(0..1u64 << d), rng.gen_range(0..1u64 << d), rng.gen_range(0..1u64 << d));
            let mut code = 0;
            for (pos, q) in [x, y, z, x ^ y ^ z].into_iter().enumerate() {
                let a = encode(s.query(q).unwrap());
                counts[pos][a] += 1;
                code = code * 3 + a;
            }
            joint[side][code] += 1;
        }
    }
    let mut worst = 1.0f64;
    for pos in 0..4 {
        let r = chi_square_homogeneity(&per_position[0][pos], &per_position[1][pos]);
        ensure(r.p_value > ALPHA, || format!("position {pos}: p = {:.4}", r.p_value))?;
        worst = worst.min(r.p_value);
    }
    let j = chi_square_homogeneity(&joint[0], &joint[1]);
    ensure(j.p_value > ALPHA, || format!("joint answers: p = {:.4}", j.p_value))?;
    Ok(format!("1000 sequences fully erased; per-position min p = {worst:.3}, joint p = {:.3} over {transcripts} transcripts", j.p_value))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let quads = quadratic_tables_d3();
    let mut tightest = f64::INFINITY;
    for (table, f) in all_d3() {
        let dist = quads.iter().map(|q| (table ^ q).count_ones() as u64).min().unwrap();
        let bad = eta_count_d3(&f);
        // bad/512 >= min(7 dist / 24, 1/40), scaled by 512 * 24 * 40.
        let ok = 960 * bad >= std::cmp::min(7 * dist * 512 * 40, 24 * 512);
        ensure(ok, || format!("table {table}: eta {bad}/512, distance {dist}/8"))?;
        ensure(distance_to_quadraticity(&f).unwrap() == Exact::new(dist, 8), || format!("table {table}: library distance differs"))?;
        let lib = violation_probability_quadraticity(&f).unwrap().exact().unwrap();
        ensure(lib == Exact::new(bad, 512), || format!("table {table}: library eta {lib}"))?;
        if dist > 0 {
            let bound = (7.0 / 3.0 * dist as f64 / 8.0).min(1.0 / 40.0);
            tightest = tightest.min(bad as f64 / 512.0 / bound);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("256 functions, exact; smallest eta/bound = {tightest:.3}; {secs:.2}s"))
}

const CUBE_ADVERSARIES: [&str; 6] = ["null", "random_eraser", "span_eraser", "sum_spoiler", "cube_pair_eraser", "pair_corruptor"];

fn checks_per_round(t: usize) -> u64 {
    let k = t + 1;
    let nodes = (k.pow(t as u32 + 1) - 1) / t;
    let internal = (k.pow(t as u32) - 1) / t;
    (k * (nodes + internal) + 1) as u64
}

fn criterion_6() -> Check {
    // (a) quadratic inputs, one round per trial, every adversary.
    let trials = 10_000;
    for t in [1usize, 2] {
        for strategy in CUBE_ADVERSARIES {
            let mut cfg = ExperimentConfig::new(InputSpec::cube(InputKind::Quadratic, 10, 0.25), TesterKind::QuadraticityOnline, 0.25, t, strategy)
                .with_trials(trials)
                .with_seed(60 + t as u64);
            cfg.round_cap = Some(1);
            let exp = Experiment::new(cfg).map_err(|e| e.to_string())?;
            for i in 0..trials {
                let out = exp.run_trial(i).map_err(|e| e.to_string())?;
                ensure(!out.verdict.rejected(), || format!("(a) t={t} {strategy}: trial {i} rejected a quadratic"))?;
                // (c) every set-size assertion ran and held.
                ensure(out.verdict.checks == checks_per_round(t), || format!("(c) t={t}: {} checks", out.verdict.checks))?;
            }
        }
    }
    // (b) per-round rejection on x1 x2 x3 at d = 3 against the exact eta.
    let rounds = 100_000;
    let cubic = BooleanFunction::from_fn(3, |x| x == 7).unwrap();
    let eta = eta_count_d3(&cubic) as f64 / 512.0;
    let mut cfg = ExperimentConfig::new(InputSpec::cube(InputKind::Cubic, 3, 0.25), TesterKind::QuadraticityOnline, 0.25, 1, "null")
        .with_trials(rounds)
        .with_seed(66);
    cfg.round_cap = Some(1);
    let report = Experiment::new(cfg).map_err(|e| e.to_string())?.estimate_with(false).map_err(|e| e.to_string())?;
    ensure(report.invalid_witnesses == 0, || "(b) invalid witness".into())?;
    ensure(report.ci.contains(eta), || format!("(b) rate {:.4}, CI [{:.4}, {:.4}], eta {eta:.4}", report.rejection_rate, report.ci.lo, report.ci.hi))?;
    // (d) sizes at t = 1.
    let p = QuadraticPlan::new(0.25, 1, 1).map_err(|e| e.to_string())?;
    ensure(p.reserve == 12 && p.nodes_per_tree == 3 && p.t + 1 == 2, || format!("(d) I={}, J={}", p.reserve, p.nodes_per_tree))?;
    Ok(format!(
        "(a) 0 rejections in {trials} trials x 6 adversaries x t in {{1,2}}; (b) {:.4} vs eta {eta:.4} (CI [{:.4}, {:.4}]); (c) all set sizes held; (d) I=12, J=3, 2 trees",
        report.rejection_rate, report.ci.lo, report.ci.hi
    ))
}

fn criterion_7() -> Check {
    let mut games = 0;
    for t in [1usize, 2] {
        let cap = strategy_moves(t).map_err(|e| e.to_string())?;
        for kind in [Player2Kind::Passive, Player2Kind::Random, Player2Kind::Greedy] {
            for seed in 0..100 {
                let r = play(t, kind.build().as_mut(), seed, cap, false).map_err(|e| e.to_string())?;
                ensure(r.winner == Winner::Player1 && r.moves <= cap, || format!("t={t} {kind:?} seed {seed}: {:?}", r.winner))?;
                games += 1;
            }
        }
    }
    Ok(format!("Player 1 won {games}/{games} (move caps 55 and {})", strategy_moves(2).unwrap()))
}

fn criterion_8() -> Check {
    let (n, r, eps, t) = (1u64 << 23, 2u64, 0.25, 1usize);
    let regime = eps * eps * n as f64 / (24.0 * 32.0 * 32.0 * t as f64);
    ensure((r as f64) < regime, || format!("regime fails: {r} >= {regime}"))?;
    let expected = (2.0 * 32.0 * (r as f64).sqrt() / eps).ceil() as usize;
    ensure(sortedness_query_count(eps, r) as usize == expected, || "query count formula".into())?;
    let (inputs, per_input) = (10u64, 200u64);
    let mut parts = Vec::new();
    for strategy in ["pair_eraser", "random_eraser", "null"] {
        let cfg = ExperimentConfig::new(InputSpec::line(InputKind::FarStep, n, eps), TesterKind::SortednessUniform, eps, t, strategy).with_seed(80);
        let exp = Experiment::new(cfg).map_err(|e| e.to_string())?;
        let (mut rejects, mut sorted_rejects) = (0u64, 0u64);
        for k in 0..inputs {
            let far = far_step(n, eps, 800 + k).unwrap();
            let lnds = lnds_binary(&far);
            ensure((n - lnds) as f64 / n as f64 >= eps, || format!("input {k}: distance {}/{n}", n - lnds))?;
            let sorted = sorted_step(n, 900 + k).unwrap();
            ensure(lnds_binary(&sorted) == n, || format!("sorted input {k} is not sorted"))?;
            let (far, sorted) = (FunctionFile::Seq(far), FunctionFile::Seq(sorted));
            for j in 0..per_input {
                let idx = k * per_input + j;
                for (input, count) in [(&far, &mut rejects), (&sorted, &mut sorted_rejects)] {
                    let out = exp.run_on(idx, input).map_err(|e| e.to_string())?;
                    ensure(out.verdict.queries_used == expected, || format!("{strategy}: {} queries", out.verdict.queries_used))?;
                    ensure(out.verdict.warnings.is_empty(), || format!("{strategy}: {:?}", out.verdict.warnings))?;
                    ensure(out.witness_valid != Some(false), || format!("{strategy}: invalid witness"))?;
                    *count += u64::from(out.verdict.rejected());
                }
            }
        }
        let trials = inputs * per_input;
        let (rate, lo) = rate_line(rejects, trials);
        ensure(lo >= RATE_FLOOR, || format!("{strategy}: rejection {rate:.3}, CI low {lo:.3}"))?;
        ensure(sorted_rejects == 0, || format!("{strategy}: {sorted_rejects} sorted inputs rejected"))?;
        parts.push(format!("{strategy} {rate:.3} (lo {lo:.3})"));
    }
    Ok(format!("{} queries per trial; far rejection {}; sorted never rejected", expected, parts.join(", ")))
}

/// Runs a scanning tester on D+ and D- samples, checks that no violating
/// pair is ever revealed, and compares single-index answer marginals.
fn impossibility(name: &str, kind_plus: InputKind, kind_minus: InputKind, line: bool, size: u64, tester: TesterKind, strategy: &str) -> Check {
    let trials = 10_000u64;
    let spec = |kind| if line { InputSpec::line(kind, size, 0.25) } else { InputSpec::cube(kind, size as u32, 0.25) };
    let mut marginals: [HashMap<(u64, u64), u64>; 2] = [HashMap::new(), HashMap::new()];
    for (side, kind) in [kind_plus, kind_minus].into_iter().enumerate() {
        let input_spec = spec(kind);
        for i in 0..trials {
            let f = input_spec.generate(5000 * side as u64 + i).map_err(|e| e.to_string())?;
            let mut params = TesterParams::new(0.25, 1, i);
            params.reps = Some(2);
            let mut s = OracleSession::open(f.as_input(), 1, OracleMode::Erasure, adversaries::by_name(strategy, 1).unwrap(), i);
            let verdict = tester.run(&mut s, &params).map_err(|e| e.to_string())?;
            let entries = s.inspect().0.entries();
            let seen: Vec<(u64, u64)> = entries.iter().filter_map(|e| e.answer.value().map(|v| (e.index, v))).collect();
            for (a, &(p, u)) in seen.iter().enumerate() {
                for &(q, v) in &seen[a + 1..] {
                    let bad = if tester == TesterKind::ScanSortedness {
                        (p < q && u > v) || (q < p && v > u)
                    } else {
                        let dist = if line { p.abs_diff(q) } else { u64::from((p ^ q).count_ones()) };
                        u.abs_diff(v) > dist
                    };
                    ensure(!bad, || format!("{name}: trial {i} revealed ({p},{u}) and ({q},{v})"))?;
                }
            }
            ensure(!verdict.rejected(), || format!("{name}: trial {i} rejected"))?;
            // One independent observation per trial: the first answer at
            // index i mod n.
            let n = f.as_input().domain().size();
            let target = if line { 1 + i % n } else { i % n };
            let first = entries.iter().find(|e| e.index == target).map(|e| e.answer.value().unwrap_or(u64::MAX)).unwrap();
            *marginals[side].entry((target, first)).or_default() += 1;
        }
    }
    let mut keys: Vec<(u64, u64)> = marginals[0].keys().chain(marginals[1].keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let count = |m: &HashMap<(u64, u64), u64>| keys.iter().map(|k| m.get(k).copied().unwrap_or(0)).collect::<Vec<_>>();
    let r = chi_square_homogeneity(&count(&marginals[0]), &count(&marginals[1]));
    ensure(r.p_value > ALPHA, || format!("{name}: marginal p = {:.4}", r.p_value))?;
    Ok(format!("{name} p={:.3}", r.p_value))
}

fn criterion_9() -> Check {
    let parts = [
        impossibility("sortedness", InputKind::SortDplus, InputKind::SortDminus, true, 48, TesterKind::ScanSortedness, "pair_eraser")?,
        impossibility("lipschitz line", InputKind::LipLineDplus, InputKind::LipLineDminus, true, 48, TesterKind::ScanLipschitz, "pair_eraser")?,
        impossibility("lipschitz cube", InputKind::LipCubeDplus, InputKind::LipCubeDminus, false, 5, TesterKind::ScanLipschitz, "cube_pair_eraser")?,
    ];
    Ok(format!("no violation revealed in 2 x 10^4 trials each; {}", parts.join(", ")))
}

fn criterion_10() -> Check {
    let (d, eps, t) = (20u32, 0.25, 2usize);
    let q = (2.0 * (3000.0 * t as f64 / (eps * eps)).log2()).ceil() as usize;
    ensure(q == 34, || format!("q = {q}"))?;
    let trials = 2000u64;
    let inputs = far_inputs(d, eps, trials, 1010)?;
    let (mut parts, mut failures) = (Vec::new(), Vec::new());
    for strategy in ["pair_corruptor", "sum_spoiler", "random_eraser", "span_eraser"] {
        let cfg = ExperimentConfig::new(InputSpec::cube(InputKind::Linear, d, eps), TesterKind::LinearityCorruption, eps, t, strategy)
            .with_mode(OracleMode::Corruption)
            .with_seed(10)
            .with_trials(trials);
        let exp = Experiment::new(cfg).map_err(|e| e.to_string())?;
        let (mut far_correct, mut witnesses) = (0u64, 0u64);
        for (i, f) in inputs.iter().enumerate() {
            let out = exp.run_on(i as u64, f).map_err(|e| e.to_string())?;
            if out.verdict.rejected() {
                far_correct += 1;
                let w = out.verdict.witness.as_ref().ok_or_else(|| format!("{strategy}: reject without witness"))?;
                let pairs: Vec<(u64, u64)> = w.pairs().collect();
                ensure(!linear_consistent(&pairs), || format!("{strategy}: trial {i} witness is consistent with a linear function"))?;
                witnesses += 1;
            }
        }
        let linear = exp.estimate_with(false).map_err(|e| e.to_string())?;
        let (far_rate, far_lo) = rate_line(far_correct, trials);
        let (lin_rate, lin_lo) = rate_line(linear.accepts, linear.trials);
        let (w_rate, w_lo) = rate_line(witnesses, trials);
        let line = format!("{strategy} far {far_rate:.3} (lo {far_lo:.3}) / linear {lin_rate:.3} (lo {lin_lo:.3}) / witness {w_rate:.3} (lo {w_lo:.3})");
        if far_lo < RATE_FLOOR || lin_lo < RATE_FLOOR || w_lo < RATE_FLOOR {
            // A corrupted point is hit with probability about
            // (queries)^2 t / 2^d, which is large at this dimension.
            failures.push(format!("{line}, mean linear queries {:.0}, warnings {:?}", linear.mean_queries, linear.warnings));
        } else {
            parts.push(line);
        }
    }
    ensure(failures.is_empty(), || format!("q={q}; {}", failures.join("; ")))?;
    Ok(format!("q={q}; {}; every witness fails the parity check", parts.join("; ")))
}

fn main() {
    let criteria: [(u32, fn() -> Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, run) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {id}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
