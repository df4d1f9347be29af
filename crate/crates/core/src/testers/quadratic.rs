use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::QueryAnswer;
use crate::oracle::OracleSession;
use crate::testers::{Decision, Querier, TesterParams, Verdict, DEFAULT_ROUND_CAP};
use crate::witness::{PropertyId, Witness};

/// Iterations of the seven-point test: `ceil(3 max(3/(7 eps), 40))`, which
/// covers both branches of the lower bound on the violation probability.
pub fn akklr_default_reps(eps: f64) -> u64 {
    (3.0 * (3.0 / (7.0 * eps)).max(40.0)).ceil() as u64
}

fn answers_t(values: [QueryAnswer; 7]) -> Option<u64> {
    values.iter().try_fold(0, |acc, a| a.value().map(|v| acc ^ (v & 1)))
}

fn seven(x: u64, y: u64, z: u64) -> [u64; 7] {
    [x, y, z, x ^ y, x ^ z, y ^ z, x ^ y ^ z]
}

/// Samples `x, y, z` and queries all seven nonempty combinations.
pub fn quadraticity_akklr_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(1.0)?;
    let reps = params.reps.unwrap_or_else(|| akklr_default_reps(params.epsilon));
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let dim = oracle.cube_dim()?;
    for rep in 1..=reps {
        let (x, y, z) = (rng.gen_range(0..1u64 << dim), rng.gen_range(0..1u64 << dim), rng.gen_range(0..1u64 << dim));
        let points = seven(x, y, z);
        let mut answers = [QueryAnswer::Erased; 7];
        for (a, &p) in answers.iter_mut().zip(&points) {
            *a = oracle.ask(p)?;
        }
        if answers_t(answers) == Some(1) {
            let pairs = points.iter().zip(&answers).map(|(&p, a)| (p, a.value().expect("checked")));
            let w = Witness::new(PropertyId::Quadraticity, oracle.domain(), pairs);
            let mut out = oracle.finish(Decision::Reject, Some(w));
            out.rounds = rep;
            return Ok(out);
        }
    }
    let mut out = oracle.finish(Decision::Accept, None);
    out.rounds = reps;
    Ok(out)
}

/// Sizes and round count of the tree-based quadraticity tester.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticPlan {
    pub t: usize,
    /// Reserve size per tree, `(t+1)^2 (2t+1)^t`.
    pub reserve: usize,
    /// Nodes per tree, `((t+1)^(t+1) - 1) / t`.
    pub nodes_per_tree: usize,
    pub log2_alpha: f64,
    pub log2_ct: f64,
    /// `log2(4 c_t / alpha)`.
    pub log2_full_rounds: f64,
    pub rounds: u64,
    pub truncated: bool,
}

impl QuadraticPlan {
    pub fn new(eps: f64, t: usize, round_cap: u64) -> Result<Self> {
        if t == 0 || t > 6 {
            return Err(Error::InvalidParameter(format!("tree tester supports 1 <= t <= 6, got {t}")));
        }
        let (tf, t1) = (t as f64, (t + 1) as f64);
        let reserve = (t + 1).pow(2) * (2 * t + 1).pow(t as u32);
        let nodes_per_tree = ((t + 1).pow(t as u32 + 1) - 1) / t;
        let k = (reserve * nodes_per_tree * (t + 1)) as f64;
        let log2_alpha = (eps / 2.0).log2().min(7f64.log2() - k * (18.0 * k).log2());
        // One factor (t+1)^-(t+3) for the random choices of Steps 13-15, and
        // (s't + 1)^-s' for each subset draw of size s' at Step 10.
        let mut log2_ct = (tf + 3.0) * t1.log2();
        for m in 0..=t {
            let size = Self::subset_size(t, m) as f64;
            let executions = t1.powi(m as i32 + 1);
            log2_ct += executions * size * (size * tf + 1.0).log2();
        }
        let log2_full_rounds = 2.0 + log2_ct - log2_alpha;
        let (rounds, truncated) = if log2_full_rounds >= (round_cap as f64).log2() {
            (round_cap, true)
        } else {
            (2f64.powf(log2_full_rounds).ceil() as u64, false)
        };
        Ok(Self { t, reserve, nodes_per_tree, log2_alpha, log2_ct, log2_full_rounds, rounds, truncated })
    }

    /// `|S_j|` for a node at depth `m`: `(t+1)(2t+1)^(t-m)`.
    pub fn subset_size(t: usize, m: usize) -> usize {
        (t + 1) * (2 * t + 1).pow((t - m) as u32)
    }

    /// Queries in one round.
    pub fn queries_per_round(&self) -> usize {
        let t = self.t;
        let doubles: usize = (0..=t).map(|m| (t + 1).pow(m as u32 + 1) * Self::subset_size(t, m)).sum();
        (t + 1) * (self.reserve + self.nodes_per_tree) + doubles + 1 + (t + 1) + 2
    }
}

struct Node {
    y: u64,
    y_answer: QueryAnswer,
    /// Reserve indices drawn for this node, with the answers for `x xor y`.
    set: Vec<usize>,
    xy: Vec<QueryAnswer>,
    /// `set` minus what the children took.
    remaining: Vec<usize>,
}

struct Tree {
    reserve: Vec<(u64, QueryAnswer)>,
    /// Breadth-first, children in lexicographic order.
    nodes: Vec<Node>,
}

/// Breadth-first index of the node with path `(j_1, .., j_m)`.
fn node_index(t: usize, path: &[usize]) -> usize {
    let k = t + 1;
    let offset = (k.pow(path.len() as u32) - 1) / t;
    offset + path.iter().fold(0, |acc, &j| acc * k + j)
}

fn take_subset(rng: &mut impl Rng, from: &mut Vec<usize>, size: usize) -> Vec<usize> {
    let mut picked: Vec<usize> = sample(rng, from.len(), size).into_vec();
    picked.sort_unstable();
    let chosen: Vec<usize> = picked.iter().map(|&i| from[i]).collect();
    for &i in picked.iter().rev() {
        from.remove(i);
    }
    chosen
}

/// Reserves, decoy trees, then one checked triple per round.
pub fn quadraticity_online_test(session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
    params.check_eps(1.0)?;
    let t = params.t;
    let plan = QuadraticPlan::new(params.epsilon, t, params.round_cap.unwrap_or(DEFAULT_ROUND_CAP))?;
    let mut warnings = Vec::new();
    if t > 3 {
        warnings.push(format!("t={t} is beyond desk scale; rounds are very long"));
    }
    if plan.truncated {
        warnings.push(format!("round count 2^{:.1} capped at {}", plan.log2_full_rounds, plan.rounds));
    }
    let mut rng = params.rng();
    let mut oracle = Querier::new(session);
    let dim = oracle.cube_dim()?;
    let k = t + 1;
    let mut checks = 0u64;
    let point = |rng: &mut rand_chacha::ChaCha8Rng| rng.gen_range(0..1u64 << dim);

    for round in 1..=plan.rounds {
        let mut trees: Vec<Tree> = Vec::with_capacity(k);
        for _ in 0..k {
            let mut reserve = Vec::with_capacity(plan.reserve);
            for _ in 0..plan.reserve {
                let x = point(&mut rng);
                reserve.push((x, oracle.ask(x)?));
            }
            let mut pool: Vec<usize> = (0..plan.reserve).collect();
            let mut nodes: Vec<Node> = Vec::with_capacity(plan.nodes_per_tree);
            for m in 0..=t {
                let size = QuadraticPlan::subset_size(t, m);
                for flat in 0..k.pow(m as u32) {
                    let path: Vec<usize> = (0..m).rev().map(|p| flat / k.pow(p as u32) % k).collect();
                    let y = point(&mut rng);
                    let y_answer = oracle.ask(y)?;
                    let sibling = path.last().copied().unwrap_or(0);
                    let parent = if m == 0 { &mut pool } else { &mut nodes[node_index(t, &path[..m - 1])].remaining };
                    let parent_size = if m == 0 { plan.reserve } else { QuadraticPlan::subset_size(t, m - 1) };
                    assert_eq!(parent.len(), parent_size - sibling * size, "parent set before child {path:?}");
                    let set = take_subset(&mut rng, parent, size);
                    if m > 0 && sibling == t {
                        assert_eq!(parent_size - parent.len(), k * k * (2 * t + 1).pow((t - m) as u32), "parent set after children");
                        checks += 1;
                    }
                    checks += 1;
                    let mut xy = Vec::with_capacity(size);
                    for &i in &set {
                        xy.push(oracle.ask(reserve[i].0 ^ y)?);
                    }
                    debug_assert_eq!(nodes.len(), node_index(t, &path));
                    nodes.push(Node { y, y_answer, remaining: set.clone(), set, xy });
                }
            }
            trees.push(Tree { reserve, nodes });
        }

        let z = point(&mut rng);
        let z_answer = oracle.ask(z)?;
        let ell = rng.gen_range(0..k);
        let path: Vec<usize> = (0..t).map(|_| rng.gen_range(0..k)).collect();
        let tree = &trees[ell];
        let mut yz = Vec::with_capacity(k);
        for m in 0..=t {
            yz.push(oracle.ask(tree.nodes[node_index(t, &path[..m])].y ^ z)?);
        }
        let leaf = &tree.nodes[node_index(t, &path)];
        assert_eq!(leaf.set.len(), k, "leaf set size");
        checks += 1;
        let xi = leaf.set[rng.gen_range(0..k)];
        let (x, x_answer) = tree.reserve[xi];
        let xz = oracle.ask(x ^ z)?;
        let m = rng.gen_range(0..=t);
        let node = &tree.nodes[node_index(t, &path[..m])];
        let slot = node.set.iter().position(|&i| i == xi).expect("leaf set lies inside every ancestor set");
        let xyz = oracle.ask(x ^ node.y ^ z)?;

        let points = seven(x, node.y, z);
        let answers = [x_answer, node.y_answer, z_answer, node.xy[slot], xz, yz[m], xyz];
        if answers_t(answers) == Some(1) {
            let pairs = points.iter().zip(&answers).map(|(&p, a)| (p, a.value().expect("checked")));
            let w = Witness::new(PropertyId::Quadraticity, oracle.domain(), pairs);
            let mut out = oracle.finish(Decision::Reject, Some(w));
            out.rounds = round;
            out.checks = checks;
            out.warnings = warnings;
            return Ok(out);
        }
    }
    let mut out = oracle.finish(Decision::Accept, None);
    out.rounds = plan.rounds;
    out.truncated = plan.truncated;
    out.checks = checks;
    out.warnings = warnings;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries;
    use crate::model::BooleanFunction;
    use crate::oracle::OracleMode;
    use crate::witness::validate;

    #[test]
    fn plan_sizes() {
        let p1 = QuadraticPlan::new(0.25, 1, 10_000).unwrap();
        assert_eq!((p1.reserve, p1.nodes_per_tree), (12, 3));
        assert_eq!(p1.queries_per_round(), 55);
        assert!(p1.truncated && p1.rounds == 10_000);
        // log2 c_1 = 4 + 12 log2 7 + 8 log2 3.
        assert!((p1.log2_ct - (4.0 + 12.0 * 7f64.log2() + 8.0 * 3f64.log2())).abs() < 1e-9);
        let p2 = QuadraticPlan::new(0.25, 2, 10_000).unwrap();
        assert_eq!((p2.reserve, p2.nodes_per_tree), (225, 13));
        assert!(QuadraticPlan::new(0.25, 0, 10).is_err());
    }

    #[test]
    fn node_indices_are_breadth_first() {
        assert_eq!(node_index(1, &[]), 0);
        assert_eq!(node_index(1, &[0]), 1);
        assert_eq!(node_index(1, &[1]), 2);
        assert_eq!(node_index(2, &[2, 2]), 12);
    }

    #[test]
    fn quadratic_inputs_accepted() {
        let f = BooleanFunction::from_fn(10, |x| (x & 1) & (x >> 4 & 1) == 1).unwrap();
        for t in [1, 2] {
            let mut s = OracleSession::open(&f, t, OracleMode::Erasure, adversaries::span_eraser(t), 0);
            let mut p = TesterParams::new(0.2, t, 5);
            p.round_cap = Some(20);
            let v = quadraticity_online_test(&mut s, &p).unwrap();
            assert_eq!(v.decision, Decision::Accept);
            assert!(v.truncated && v.rounds == 20);
            let per_round = QuadraticPlan::new(0.2, t, 20).unwrap().queries_per_round();
            assert_eq!(v.queries_used, 20 * per_round);
        }
    }

    #[test]
    fn cubic_rejected_with_valid_witness() {
        let f = BooleanFunction::from_fn(3, |x| x == 0b111).unwrap();
        let mut s = OracleSession::open(&f, 1, OracleMode::Erasure, adversaries::null(), 0);
        let v = quadraticity_online_test(&mut s, &TesterParams::new(0.125, 1, 1)).unwrap();
        assert!(v.rejected());
        assert!(validate(v.witness.as_ref().unwrap()));
        let mut s = OracleSession::open(&f, 1, OracleMode::Erasure, adversaries::null(), 0);
        let v = quadraticity_akklr_test(&mut s, &TesterParams::new(0.125, 1, 1)).unwrap();
        assert!(v.rejected() && validate(v.witness.as_ref().unwrap()));
    }

    #[test]
    fn akklr_reps() {
        assert_eq!(akklr_default_reps(0.25), 120);
        assert_eq!(akklr_default_reps(0.001), 1286);
    }
}
