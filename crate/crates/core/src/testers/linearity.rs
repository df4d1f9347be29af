use rand::Rng;

use crate::error::{Error, Result};
use crate::model::QueryAnswer;
use crate::oracle::{OracleMode, OracleSession};
use crate::testers::{Decision, Querier, TesterParams, Verdict};
use crate::witness::{PropertyId, Witness};

/// Reserve constant of the single-level tester.
pub const SIMPLE_C: f64 = 88.0;

/// Uniform nonempty even-size subset of `{0, .., q-1}` as a bitmask: a
/// uniform subset of the first `q-1` elements, completed with the last one
/// when its size is odd, redrawn when empty.
pub fn sample_even_subset(q: usize, rng: &mut impl Rng) -> u64 {
    assert!((2..=64).contains(&q), "reserve size {q} outside 2..=64");
    let low = if q == 64 { u64::MAX >> 1 } else { (1u64 << (q - 1)) - 1 };
    loop {
        let mut s = rng.gen::<u64>() & low;
        if s.count_ones() % 2 == 1 {
            s |= 1 << (q - 1);
        }
        if s != 0 {
            return s;
        }
    }
}

/// Loop structure of the multi-level linearity tester.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityPlan {
    pub q: usize,
    /// `(rounds, sums per round)` for `j = 1, 2, ..`.
    pub levels: Vec<(u64, u64)>,
}

impl LinearityPlan {
    /// `q = ceil(2 log2(big / eps))` with `big = 50 t` for erasures; the
    /// corruption variant passes `3000 t / eps`.
    pub fn new(eps: f64, big: f64) -> Self {
        let q = (2.0 * (big / eps).log2()).ceil().max(2.0) as usize;
        let levels = (1..=(8.0 / eps).log2().ceil() as u32)
            .map(|j| {
                let p = f64::from(1u32 << j);
                ((8.0 * 5f64.ln() / (p * eps)).ceil() as u64, 4 * (1u64 << j))
            })
            .collect();
        Self { q, levels }
    }

    pub fn with_reserve(mut self, q: usize) -> Self {
        self.q = q;
        self
    }

    pub fn total_queries(&self) -> u64 {
        self.levels.iter().map(|&(rounds, sums)| rounds * (self.q as u64 + sums)).sum()
    }
}

fn uniform_point(rng: &mut impl Rng, dim: u32) -> u64 {
    rng.gen_range(0..1u64 << dim)
}

/// Algorithm 1 body shared by the erasure and corruption versions.
fn multilevel(session: &mut OracleSession<'_>, params: &TesterParams, plan: LinearityPlan, warnings: Vec<String>) -> Result<Verdict> {
    if plan.q > 64 {
        return Err(Error::TooLarge { what: "reserve size q".into(), limit: "64".into() });
    }
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let dim = oracle.cube_dim()?;
    let mut rounds = 0;
    for &(reps, sums) in &plan.levels {
        for _ in 0..reps {
            rounds += 1;
            let mut xs = Vec::with_capacity(plan.q);
            for _ in 0..plan.q {
                let x = uniform_point(&mut rng, dim);
                xs.push((x, oracle.ask(x)?));
            }
            for _ in 0..sums {
                let set = sample_even_subset(plan.q, &mut rng);
                let members = xs.iter().enumerate().filter(|(i, _)| set >> i & 1 == 1).map(|(_, p)| *p);
                let (sum, parity, clean) = members.fold((0u64, 0u64, true), |(s, p, c), (x, a)| match a {
                    QueryAnswer::Value(v) => (s ^ x, p ^ v, c),
                    QueryAnswer::Erased => (s ^ x, p, false),
                });
                let answer = oracle.ask(sum)?;
                if let (true, QueryAnswer::Value(v)) = (clean, answer) {
                    if v != parity {
                        // Every answered reserve point plus the sum.
                        let pairs = xs.iter().filter_map(|&(x, a)| a.value().map(|v| (x, v))).chain([(sum, v)]);
                        let w = Witness::new(PropertyId::Linearity, oracle.domain(), pairs);
                        let mut verdict = oracle.finish(Decision::Reject, Some(w));
                        verdict.rounds = rounds;
                        verdict.warnings = warnings;
                        return Ok(verdict);
                    }
                }
            }
        }
    }
    let mut verdict = oracle.finish(Decision::Accept, None);
    verdict.rounds = rounds;
    verdict.warnings = warnings;
    Ok(verdict)
}

fn regime_warning(params: &TesterParams, dim: u32, eps_power: f64) -> Vec<String> {
    let limit = params.c0 * params.epsilon.powf(eps_power) * 2f64.powf(f64::from(dim) / 4.0);
    if params.t as f64 > limit {
        vec![format!("t={} exceeds the validity bound {limit:.3} (c0={}); guarantee not covered", params.t, params.c0)]
    } else {
        Vec::new()
    }
}

fn cube_dim(session: &OracleSession<'_>) -> Result<u32> {
    match session.domain() {
        crate::model::Domain::Cube { dim } => Ok(dim),
        d => Err(Error::InvalidParameter(format!("tester needs a hypercube input, got {d}"))),
    }
}

/// The budget entering the logarithms; `t = 0` is treated as 1.
fn t_eff(params: &TesterParams) -> f64 {
    params.t.max(1) as f64
}

/// Multi-level tester with even-size sum checks over a reserve of
/// `q = ceil(2 log2(50t/eps))` points.
pub fn linearity_online_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(0.5)?;
    let mut plan = LinearityPlan::new(params.epsilon, 50.0 * t_eff(params));
    if let Some(q) = params.reserve_size_override {
        plan = plan.with_reserve(q);
    }
    let warnings = regime_warning(params, cube_dim(session)?, 1.25);
    multilevel(session, params, plan, warnings)
}

/// Same structure with the reserve enlarged to `ceil(2 log2(3000t/eps^2))`;
/// rejections carry a witness made of obtained values.
pub fn linearity_corruption_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(0.5)?;
    if session.mode() != OracleMode::Corruption {
        return Err(Error::InvalidParameter("linearity_corruption needs a corruption-mode session".into()));
    }
    let mut plan = LinearityPlan::new(params.epsilon, 3000.0 * t_eff(params) / params.epsilon);
    if let Some(q) = params.reserve_size_override {
        plan = plan.with_reserve(q);
    }
    let warnings = regime_warning(params, cube_dim(session)?, 1.25);
    multilevel(session, params, plan, warnings)
}

/// Reserve of `ceil(88t/eps)` points, then `ceil(24/eps)` checks of a pair
/// and its sum.
pub fn linearity_simple_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(0.5)?;
    let q = params.reserve_size_override.unwrap_or((SIMPLE_C * t_eff(params) / params.epsilon).ceil() as usize);
    if q < 2 {
        return Err(Error::InvalidParameter(format!("reserve size {q} < 2")));
    }
    let reps = params.reps.unwrap_or((24.0 / params.epsilon).ceil() as u64);
    let warnings = regime_warning(params, cube_dim(session)?, 1.0);
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let dim = oracle.cube_dim()?;
    let mut xs = Vec::with_capacity(q);
    for _ in 0..q {
        let x = uniform_point(&mut rng, dim);
        xs.push((x, oracle.ask(x)?));
    }
    let mut found = None;
    let mut rounds = reps;
    for rep in 1..=reps {
        let i = rng.gen_range(0..q);
        let mut j = rng.gen_range(0..q - 1);
        if j >= i {
            j += 1;
        }
        let ((xi, ai), (xj, aj)) = (xs[i], xs[j]);
        let answer = oracle.ask(xi ^ xj)?;
        if let (QueryAnswer::Value(vi), QueryAnswer::Value(vj), QueryAnswer::Value(v)) = (ai, aj, answer) {
            if vi ^ vj != v {
                found = Some(Witness::new(PropertyId::Linearity, oracle.domain(), [(xi, vi), (xj, vj), (xi ^ xj, v)]));
                rounds = rep;
                break;
            }
        }
    }
    let decision = if found.is_some() { Decision::Reject } else { Decision::Accept };
    let mut verdict = oracle.finish(decision, found);
    verdict.rounds = rounds;
    verdict.warnings = warnings;
    Ok(verdict)
}

/// Classic three-point test: `reps` times query `x`, `y`, `x xor y`.
pub fn blr_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(1.0)?;
    let reps = params.reps.unwrap_or((2.0 / params.epsilon).ceil() as u64);
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let dim = oracle.cube_dim()?;
    for rep in 1..=reps {
        let (x, y) = (uniform_point(&mut rng, dim), uniform_point(&mut rng, dim));
        let answers = (oracle.ask(x)?, oracle.ask(y)?, oracle.ask(x ^ y)?);
        if let (QueryAnswer::Value(a), QueryAnswer::Value(b), QueryAnswer::Value(c)) = answers {
            if a ^ b != c {
                let w = Witness::new(PropertyId::Linearity, oracle.domain(), [(x, a), (y, b), (x ^ y, c)]);
                let mut out = oracle.finish(Decision::Reject, Some(w));
                out.rounds = rep;
                return Ok(out);
            }
        }
    }
    let mut out = oracle.finish(Decision::Accept, None);
    out.rounds = reps;
    Ok(out)
}
