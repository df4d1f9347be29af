use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Domain, QueryAnswer};
use crate::oracle::OracleSession;
use crate::testers::{Decision, Querier, TesterParams, Verdict};
use crate::witness::{PropertyId, Witness};

/// Sample-size constant of the uniform sortedness tester.
pub const SORTEDNESS_C: f64 = 32.0;

/// `ceil(2 c sqrt(r) / eps)`.
pub fn sortedness_query_count(eps: f64, r: u64) -> u64 {
    (2.0 * SORTEDNESS_C * (r as f64).sqrt() / eps).ceil() as u64
}

/// A pair `u < v` with `f(u) > f(v)` among answered positions, if any.
fn find_inversion(mut answered: Vec<(u64, u64)>) -> Option<[(u64, u64); 2]> {
    answered.sort_unstable();
    let mut best: Option<(u64, u64)> = None;
    for (i, v) in answered {
        if let Some((bi, bv)) = best {
            if bv > v {
                return Some([(bi, bv), (i, v)]);
            }
        }
        if best.map_or(true, |(_, bv)| v > bv) {
            best = Some((i, v));
        }
    }
    None
}

/// Uniform independent positions; rejects on any inversion among the
/// answered ones.
pub fn sortedness_uniform_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(1.0)?;
    let r = params.r.ok_or_else(|| Error::InvalidParameter("sortedness_uniform needs r, the number of distinct values".into()))?;
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let n = oracle.line_len()?;
    let k = sortedness_query_count(params.epsilon, r);
    let mut warnings = Vec::new();
    let bound = params.epsilon.powi(2) * n as f64 / (24.0 * SORTEDNESS_C * SORTEDNESS_C * params.t.max(1) as f64);
    if r as f64 >= bound {
        warnings.push(format!("r={r} is not below eps^2 n / (24 c^2 t) = {bound:.3}; guarantee not covered"));
    }
    let mut answered = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let i = rng.gen_range(1..=n);
        if let QueryAnswer::Value(v) = oracle.ask(i)? {
            answered.push((i, v));
        }
    }
    let inversion = find_inversion(answered);
    let decision = if inversion.is_some() { Decision::Reject } else { Decision::Accept };
    let witness = inversion.map(|pair| Witness::new(PropertyId::Sortedness, oracle.domain(), pair));
    let mut out = oracle.finish(decision, witness);
    out.rounds = k;
    out.warnings = warnings;
    Ok(out)
}

// Visit order for the scanning testers: the whole domain, shuffled, `passes` times.
fn scan_order(domain: Domain, passes: u64, rng: &mut impl Rng) -> Vec<u64> {
    let mut order = Vec::new();
    for _ in 0..passes {
        let mut pass: Vec<u64> = (0..domain.size()).map(|k| domain.nth(k)).collect();
        pass.shuffle(rng);
        order.extend(pass);
    }
    order
}

/// Queries every position (`reps` passes, default 2, in shuffled order) and
/// rejects on any answered inversion. Used to show that an adversary can hide
/// all violations; it has no distance guarantee.
pub fn scan_sortedness_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    oracle.line_len()?;
    let mut answered = Vec::new();
    for i in scan_order(oracle.domain(), params.reps.unwrap_or(2), &mut rng) {
        if let QueryAnswer::Value(v) = oracle.ask(i)? {
            answered.push((i, v));
        }
    }
    let inversion = find_inversion(answered);
    let decision = if inversion.is_some() { Decision::Reject } else { Decision::Accept };
    let witness = inversion.map(|pair| Witness::new(PropertyId::Sortedness, oracle.domain(), pair));
    Ok(oracle.finish(decision, witness))
}

/// Scanning tester for the Lipschitz property on lines and cubes, for
/// ranges `{0, 1, 2}`: only neighbouring points can then violate it.
pub fn scan_lipschitz_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let domain = oracle.domain();
    let mut seen: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    for i in scan_order(domain, params.reps.unwrap_or(2), &mut rng) {
        if let QueryAnswer::Value(v) = oracle.ask(i)? {
            if v > 2 {
                return Err(Error::InvalidParameter(format!("scan_lipschitz expects values in 0..=2, saw {v}")));
            }
            seen.insert(i, v);
        }
    }
    let (property, neighbours): (PropertyId, Box<dyn Fn(u64) -> Vec<u64>>) = match domain {
        Domain::Line { len } => (PropertyId::LipschitzLine, Box::new(move |i| if i < len { vec![i + 1] } else { vec![] })),
        Domain::Cube { dim } => (PropertyId::LipschitzCube, Box::new(move |x| (0..dim).map(|b| x ^ (1 << b)).filter(|&y| y > x).collect())),
    };
    let mut keys: Vec<u64> = seen.keys().copied().collect();
    keys.sort_unstable();
    let violation = keys.iter().find_map(|&u| {
        let fu = seen[&u];
        neighbours(u).into_iter().find_map(|v| seen.get(&v).filter(|&&fv| fu.abs_diff(fv) > 1).map(|&fv| [(u, fu), (v, fv)]))
    });
    let decision = if violation.is_some() { Decision::Reject } else { Decision::Accept };
    let witness = violation.map(|pair| Witness::new(property, domain, pair));
    Ok(oracle.finish(decision, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries;
    use crate::generators::{lipschitz_cube_dminus, lipschitz_line_dminus, sortedness_dminus};
    use crate::model::SequenceFunction;
    use crate::oracle::OracleMode;
    use crate::witness::validate;

    #[test]
    fn query_count() {
        assert_eq!(sortedness_query_count(0.25, 2), 363);
    }

    #[test]
    fn inversions() {
        assert_eq!(find_inversion(vec![(1, 1), (3, 2), (5, 2)]), None);
        assert_eq!(find_inversion(vec![(5, 0), (1, 1), (3, 2)]), Some([(3, 2), (5, 0)]));
    }

    #[test]
    fn scans_catch_unguarded_violations() {
        let s = sortedness_dminus(40, 1).unwrap();
        let mut o = OracleSession::open(&s, 1, OracleMode::Erasure, adversaries::null(), 0);
        let v = scan_sortedness_test(&mut o, &TesterParams::new(0.1, 1, 0)).unwrap();
        assert!(v.rejected() && validate(v.witness.as_ref().unwrap()));
        let l = lipschitz_line_dminus(40, 2).unwrap();
        let mut o = OracleSession::open(&l, 1, OracleMode::Erasure, adversaries::null(), 0);
        let v = scan_lipschitz_test(&mut o, &TesterParams::new(0.1, 1, 0)).unwrap();
        assert!(v.rejected() && validate(v.witness.as_ref().unwrap()));
        let c = lipschitz_cube_dminus(5, 3).unwrap();
        let mut o = OracleSession::open(&c, 1, OracleMode::Erasure, adversaries::null(), 0);
        let v = scan_lipschitz_test(&mut o, &TesterParams::new(0.1, 1, 0)).unwrap();
        assert!(v.rejected() && validate(v.witness.as_ref().unwrap()));
    }

    #[test]
    fn pair_eraser_hides_everything() {
        for seed in 0..100 {
            let s = sortedness_dminus(40, seed).unwrap();
            let mut o = OracleSession::open(&s, 1, OracleMode::Erasure, adversaries::pair_eraser(), seed);
            assert!(!scan_sortedness_test(&mut o, &TesterParams::new(0.1, 1, seed)).unwrap().rejected());
            let c = lipschitz_cube_dminus(4, seed).unwrap();
            let mut o = OracleSession::open(&c, 1, OracleMode::Erasure, adversaries::cube_pair_eraser(), seed);
            assert!(!scan_lipschitz_test(&mut o, &TesterParams::new(0.1, 1, seed)).unwrap().rejected());
        }
    }

    #[test]
    fn sorted_never_rejected() {
        let s = SequenceFunction::from_values((0..100).map(|i| i / 10).collect()).unwrap();
        let mut o = OracleSession::open(&s, 1, OracleMode::Erasure, adversaries::random_eraser(1), 0);
        let mut p = TesterParams::new(0.25, 1, 0);
        p.r = Some(10);
        let v = sortedness_uniform_test(&mut o, &p).unwrap();
        assert!(!v.rejected() && !v.warnings.is_empty());
        assert_eq!(v.queries_used as u64, sortedness_query_count(0.25, 10));
    }
}
