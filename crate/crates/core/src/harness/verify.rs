//! Exhaustive structural checks behind the `verify-structure` command.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{self, Player2Kind, Winner};
use crate::ground_truth::{
    distance_to_linearity, distance_to_linearity_brute, distance_to_quadraticity, violation_probability_linearity,
    violation_probability_quadraticity, Exact,
};
use crate::model::BooleanFunction;
use crate::testers::QuadraticPlan;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn timed(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> SuiteResult {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    SuiteResult { name: name.to_string(), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Every `f: {0,1}^3 -> {0,1}`, as tables indexed by `0..256`.
pub fn all_d3_functions() -> impl Iterator<Item = BooleanFunction> {
    (0u32..256).map(|table| BooleanFunction::from_fn(3, |x| table >> x & 1 == 1).expect("d=3"))
}

/// Even-size tuples violate linearity at least as often as the distance.
pub fn even_tuples_dominate_distance() -> Result<(bool, String)> {
    let mut worst: Option<(u32, Exact, Exact)> = None;
    for (table, f) in all_d3_functions().enumerate() {
        let dist = distance_to_linearity(&f)?;
        for k in [2, 4] {
            let p = violation_probability_linearity(&f, k)?.exact().expect("exact at d=3");
            if p < dist {
                return Ok((false, format!("table {table}, k={k}: {p} < {dist}")));
            }
            if dist > Exact::new(0, 1) && worst.map_or(true, |(_, wp, wd)| p / dist < wp / wd) {
                worst = Some((k, p, dist));
            }
        }
    }
    let (k, p, d) = worst.expect("some far function");
    Ok((true, format!("256 functions, k in {{2,4}}; tightest ratio {p} vs {d} at k={k}")))
}

/// `x[1] + 1` has no violating triples.
pub fn odd_tuple_counterexample() -> Result<(bool, String)> {
    let f = BooleanFunction::from_fn(3, |x| x & 1 == 0)?;
    let p = violation_probability_linearity(&f, 3)?.exact().expect("exact");
    let d = distance_to_linearity(&f)?;
    Ok((p == Exact::new(0, 1) && d == Exact::new(1, 2), format!("k=3 violation {p}, distance {d}")))
}

/// `eta >= min(7/3 eps_f, 1/40)` over all 256 functions with `d = 3`.
pub fn akklr_eta_bound() -> Result<(bool, String)> {
    let mut tightest = f64::INFINITY;
    for (table, f) in all_d3_functions().enumerate() {
        let eta = violation_probability_quadraticity(&f)?.exact().expect("exact at d=3");
        let eps = distance_to_quadraticity(&f)?;
        let bound = std::cmp::min(eps * Exact::new(7, 3), Exact::new(1, 40));
        if eta < bound {
            return Ok((false, format!("table {table}: eta {eta} < {bound}")));
        }
        if bound > Exact::new(0, 1) {
            tightest = tightest.min(crate::ground_truth::to_f64(eta / bound));
        }
    }
    Ok((true, format!("256 functions; smallest eta/bound ratio {tightest:.3}")))
}

/// Spectrum-based distance equals brute force over all parities.
pub fn spectrum_matches_brute_force() -> Result<(bool, String)> {
    for (table, f) in all_d3_functions().enumerate() {
        if distance_to_linearity(&f)? != distance_to_linearity_brute(&f)? {
            return Ok((false, format!("table {table}")));
        }
    }
    Ok((true, "256 functions at d=3".into()))
}

/// Sizes of the `t = 1` tree tester: reserve 12, 3 nodes, two trees, 55
/// queries per round.
pub fn tree_constants_t1() -> Result<(bool, String)> {
    let p = QuadraticPlan::new(0.25, 1, 1)?;
    let per_round = p.queries_per_round();
    let ok = p.reserve == 12 && p.nodes_per_tree == 3 && p.t + 1 == 2 && per_round == 55;
    Ok((ok, format!("I={}, J={}, trees={}, queries/round={per_round}", p.reserve, p.nodes_per_tree, p.t + 1)))
}

/// Short game playouts against every built-in Player 2.
pub fn game_playouts() -> Result<(bool, String)> {
    let mut games = 0;
    for t in [1, 2] {
        let cap = game::strategy_moves(t)?;
        for kind in [Player2Kind::Passive, Player2Kind::Random, Player2Kind::Greedy] {
            for seed in 0..10 {
                let r = game::play(t, kind.build().as_mut(), seed, cap, false)?;
                if r.winner != Winner::Player1 {
                    return Ok((false, format!("t={t} {kind:?} seed {seed}: {:?}", r.winner)));
                }
                games += 1;
            }
        }
    }
    Ok((true, format!("{games} playouts won by Player 1")))
}

pub fn run_all() -> Vec<SuiteResult> {
    vec![
        timed("even_tuples_dominate_distance", even_tuples_dominate_distance),
        timed("odd_tuple_counterexample", odd_tuple_counterexample),
        timed("akklr_eta_bound", akklr_eta_bound),
        timed("spectrum_matches_brute_force", spectrum_matches_brute_force),
        timed("tree_constants_t1", tree_constants_t1),
        timed("game_playouts", game_playouts),
    ]
}
