//! The two-player quadraticity game.
//!
//! Player 1 draws points, blue edges between non-adjacent points and blue
//! triangles; Player 2 answers every move with up to `t` red edges or red
//! triangles. Player 1 wins once some triangle and its three edges are all
//! blue. Player 1 follows the decoy-tree strategy behind the tree-based
//! quadraticity tester, with full information about Player 2's moves.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adversaries::Strategy;
use crate::error::{Error, Result};
use crate::model::BooleanFunction;
use crate::oracle::{OracleMode, OracleSession};
use crate::testers::QuadraticPlan;

pub type Vertex = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Blue,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum P1Move {
    Point,
    Edge(Vertex, Vertex),
    Triangle(Vertex, Vertex, Vertex),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum P2Step {
    Edge(Vertex, Vertex),
    Triangle(Vertex, Vertex, Vertex),
}

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

fn tri_key(a: Vertex, b: Vertex, c: Vertex) -> (Vertex, Vertex, Vertex) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

#[derive(Clone, Debug, Default)]
pub struct GameState {
    t: usize,
    vertices: u32,
    edges: HashMap<(Vertex, Vertex), Color>,
    triangles: HashMap<(Vertex, Vertex, Vertex), Color>,
    blue_adj: Vec<HashSet<Vertex>>,
    last_move: Option<P1Move>,
    p2_history: Vec<P2Step>,
}

impl GameState {
    pub fn new(t: usize) -> Self {
        Self { t, ..Self::default() }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertices
    }

    pub fn last_move(&self) -> Option<P1Move> {
        self.last_move
    }

    /// Every step Player 2 has made so far, in order.
    pub fn p2_history(&self) -> &[P2Step] {
        &self.p2_history
    }

    pub fn edge(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.edges.get(&edge_key(u, v)).copied()
    }

    pub fn triangle(&self, a: Vertex, b: Vertex, c: Vertex) -> Option<Color> {
        self.triangles.get(&tri_key(a, b, c)).copied()
    }

    pub fn blue_neighbours(&self, v: Vertex) -> &HashSet<Vertex> {
        &self.blue_adj[v as usize]
    }

    fn exists(&self, v: Vertex) -> bool {
        v < self.vertices
    }

    fn check_edge(&self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v || !self.exists(u) || !self.exists(v) {
            return Err(Error::InvalidParameter(format!("no edge between {u} and {v}")));
        }
        if self.edge(u, v).is_some() {
            return Err(Error::InvalidParameter(format!("{u} and {v} are already adjacent")));
        }
        Ok(())
    }

    fn check_triangle(&self, a: Vertex, b: Vertex, c: Vertex) -> Result<()> {
        if a == b || b == c || a == c || ![a, b, c].iter().all(|&v| self.exists(v)) {
            return Err(Error::InvalidParameter(format!("no triangle on {a}, {b}, {c}")));
        }
        if self.triangle(a, b, c).is_some() {
            return Err(Error::InvalidParameter(format!("triangle {a} {b} {c} is already coloured")));
        }
        Ok(())
    }

    /// Applies a Player 1 move; returns the new vertex for `Point`.
    pub fn apply_p1(&mut self, mv: P1Move) -> Result<Option<Vertex>> {
        let out = match mv {
            P1Move::Point => {
                self.vertices += 1;
                self.blue_adj.push(HashSet::new());
                Some(self.vertices - 1)
            }
            P1Move::Edge(u, v) => {
                self.check_edge(u, v)?;
                self.edges.insert(edge_key(u, v), Color::Blue);
                self.blue_adj[u as usize].insert(v);
                self.blue_adj[v as usize].insert(u);
                None
            }
            P1Move::Triangle(a, b, c) => {
                self.check_triangle(a, b, c)?;
                self.triangles.insert(tri_key(a, b, c), Color::Blue);
                None
            }
        };
        self.last_move = Some(mv);
        Ok(out)
    }

    pub fn apply_p2(&mut self, step: P2Step) -> Result<()> {
        match step {
            P2Step::Edge(u, v) => {
                self.check_edge(u, v)?;
                self.edges.insert(edge_key(u, v), Color::Red);
            }
            P2Step::Triangle(a, b, c) => {
                self.check_triangle(a, b, c)?;
                self.triangles.insert(tri_key(a, b, c), Color::Red);
            }
        }
        self.p2_history.push(step);
        Ok(())
    }

    /// A blue triangle whose three edges are blue.
    pub fn blue_win(&self) -> Option<(Vertex, Vertex, Vertex)> {
        self.triangles.iter().find_map(|(&(a, b, c), &col)| {
            let blue = |u, v| self.edge(u, v) == Some(Color::Blue);
            (col == Color::Blue && blue(a, b) && blue(a, c) && blue(b, c)).then_some((a, b, c))
        })
    }

    pub fn summary(&self) -> GameSummary {
        let count_e = |c| self.edges.values().filter(|&&x| x == c).count();
        let count_t = |c| self.triangles.values().filter(|&&x| x == c).count();
        GameSummary {
            vertices: self.vertices,
            blue_edges: count_e(Color::Blue),
            red_edges: count_e(Color::Red),
            blue_triangles: count_t(Color::Blue),
            red_triangles: count_t(Color::Red),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSummary {
    pub vertices: u32,
    pub blue_edges: usize,
    pub red_edges: usize,
    pub blue_triangles: usize,
    pub red_triangles: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winner {
    Player1,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameResult {
    pub winner: Winner,
    pub moves: u64,
    pub p2_steps: u64,
    /// Player 2 turns dropped for exceeding the budget or illegal steps.
    pub rejected_turns: u64,
    /// Decision points where Player 1 checked that an option was left.
    pub option_checks: u64,
    pub winning_triangle: Option<(Vertex, Vertex, Vertex)>,
    pub summary: GameSummary,
    pub log: Vec<String>,
}

/// Player 2: up to `t` steps after each Player 1 move.
pub trait Player2 {
    fn name(&self) -> String;
    fn steps(&mut self, state: &GameState, rng: &mut dyn RngCore) -> Vec<P2Step>;
}

/// Never moves.
#[derive(Clone, Debug, Default)]
pub struct Passive;

impl Player2 for Passive {
    fn name(&self) -> String {
        "passive".into()
    }

    fn steps(&mut self, _: &GameState, _: &mut dyn RngCore) -> Vec<P2Step> {
        Vec::new()
    }
}

/// Random legal steps around Player 1's latest move: red edges from the
/// newest point, or red triangles on the newest edge.
#[derive(Clone, Debug, Default)]
pub struct RandomSpoiler;

impl Player2 for RandomSpoiler {
    fn name(&self) -> String {
        "random".into()
    }

    fn steps(&mut self, state: &GameState, rng: &mut dyn RngCore) -> Vec<P2Step> {
        let n = state.vertex_count();
        let mut out = Vec::new();
        if n < 3 {
            return out;
        }
        let mut local = state.clone();
        for _ in 0..state.t() {
            for _attempt in 0..32 {
                let step = match local.last_move() {
                    Some(P1Move::Edge(a, b)) if rng.gen_bool(0.5) => P2Step::Triangle(a, b, rng.gen_range(0..n)),
                    _ => P2Step::Edge(n - 1, rng.gen_range(0..n)),
                };
                if local.apply_p2(step).is_ok() {
                    out.push(step);
                    break;
                }
            }
        }
        out
    }
}

/// Attacks the newest blue structure: first triangles that are one move
/// from winning, then missing third edges of blue paths through the latest
/// move, then red edges from the newest point to its best-connected
/// non-neighbours.
#[derive(Clone, Debug, Default)]
pub struct GreedySpoiler;

impl GreedySpoiler {
    fn candidates(state: &GameState) -> Vec<P2Step> {
        let mut out = Vec::new();
        let n = state.vertex_count();
        let (focus, newest): (Vec<Vertex>, Option<Vertex>) = match state.last_move() {
            Some(P1Move::Edge(a, b)) => (vec![a, b], None),
            Some(P1Move::Point) => (vec![n - 1], Some(n - 1)),
            Some(P1Move::Triangle(a, b, c)) => (vec![a, b, c], None),
            None => (vec![], None),
        };
        for &u in &focus {
            let mut nbrs: Vec<Vertex> = state.blue_neighbours(u).iter().copied().collect();
            nbrs.sort_unstable();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    match state.edge(a, b) {
                        Some(Color::Blue) if state.triangle(u, a, b).is_none() => out.push(P2Step::Triangle(u, a, b)),
                        None => out.push(P2Step::Edge(a, b)),
                        _ => {}
                    }
                }
            }
        }
        // Winning threats first.
        out.sort_by_key(|s| matches!(s, P2Step::Edge(..)));
        if let Some(v) = newest {
            let mut others: Vec<Vertex> = (0..v).filter(|&u| state.edge(u, v).is_none()).collect();
            others.sort_by_key(|&u| (std::cmp::Reverse(state.blue_neighbours(u).len()), std::cmp::Reverse(u)));
            out.extend(others.into_iter().map(|u| P2Step::Edge(u, v)));
        }
        out
    }
}

impl Player2 for GreedySpoiler {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn steps(&mut self, state: &GameState, _: &mut dyn RngCore) -> Vec<P2Step> {
        let mut local = state.clone();
        let mut out = Vec::new();
        for step in Self::candidates(state) {
            if out.len() == state.t() {
                break;
            }
            if local.apply_p2(step).is_ok() {
                out.push(step);
            }
        }
        out
    }
}

/// Runs an oracle adversary on an encoding of the game: each vertex is a
/// random point of `{0,1}^d`, an edge is the XOR of its endpoints and a
/// triangle the XOR of its corners. Points the adversary spoils become red
/// edges or red triangles when they encode one.
pub struct StrategyAdapter<'a> {
    session: OracleSession<'a>,
    label: String,
    points: Vec<u64>,
    pair_sums: HashMap<u64, (Vertex, Vertex)>,
    known: HashSet<u64>,
    rng: ChaCha8Rng,
    dim: u32,
}

impl<'a> StrategyAdapter<'a> {
    pub fn new(carrier: &'a BooleanFunction, strategy: Box<dyn Strategy + 'a>, budget: usize, seed: u64) -> Self {
        let label = format!("adapter({})", strategy.name());
        let session = OracleSession::open(carrier, budget, OracleMode::Erasure, strategy, seed).with_tester("game");
        Self {
            session,
            label,
            points: Vec::new(),
            pair_sums: HashMap::new(),
            known: HashSet::new(),
            rng: ChaCha8Rng::seed_from_u64(seed ^ 0x6761_6d65),
            dim: carrier.dim(),
        }
    }

    fn sync_points(&mut self, state: &GameState) {
        while (self.points.len() as u32) < state.vertex_count() {
            let v = self.points.len() as Vertex;
            let p = self.rng.gen_range(0..1u64 << self.dim);
            for (u, &q) in self.points.iter().enumerate() {
                self.pair_sums.entry(p ^ q).or_insert((u as Vertex, v));
            }
            self.points.push(p);
        }
    }

    fn decode(&self, state: &GameState, e: u64) -> Option<P2Step> {
        if let Some(&(u, v)) = self.pair_sums.get(&e) {
            if state.edge(u, v).is_none() {
                return Some(P2Step::Edge(u, v));
            }
        }
        for (w, &p) in self.points.iter().enumerate() {
            if let Some(&(u, v)) = self.pair_sums.get(&(e ^ p)) {
                let w = w as Vertex;
                if w != u && w != v && state.triangle(u, v, w).is_none() {
                    return Some(P2Step::Triangle(u, v, w));
                }
            }
        }
        None
    }
}

impl Player2 for StrategyAdapter<'_> {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn steps(&mut self, state: &GameState, _: &mut dyn RngCore) -> Vec<P2Step> {
        self.sync_points(state);
        let query = match state.last_move() {
            Some(P1Move::Point) => self.points[state.vertex_count() as usize - 1],
            Some(P1Move::Edge(u, v)) => self.points[u as usize] ^ self.points[v as usize],
            Some(P1Move::Triangle(a, b, c)) => self.points[a as usize] ^ self.points[b as usize] ^ self.points[c as usize],
            None => return Vec::new(),
        };
        self.session.query(query).expect("encoded points lie in the cube");
        let fresh: Vec<u64> = self.session.inspect().1.iter().map(|(p, _)| p).filter(|p| !self.known.contains(p)).collect();
        let mut local = state.clone();
        let mut out = Vec::new();
        for e in fresh {
            self.known.insert(e);
            if let Some(step) = self.decode(&local, e) {
                if out.len() < state.t() && local.apply_p2(step).is_ok() {
                    out.push(step);
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player2Kind {
    Passive,
    Random,
    Greedy,
}

impl std::str::FromStr for Player2Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "passive" => Ok(Self::Passive),
            "random" => Ok(Self::Random),
            "greedy" => Ok(Self::Greedy),
            _ => Err(Error::UnknownName { kind: "player 2 strategy", name: s.to_string() }),
        }
    }
}

impl Player2Kind {
    pub fn build(self) -> Box<dyn Player2> {
        match self {
            Self::Passive => Box::new(Passive),
            Self::Random => Box::new(RandomSpoiler),
            Self::Greedy => Box::new(GreedySpoiler),
        }
    }
}

/// Player 1's move count under the decoy-tree strategy; equals the
/// per-round query count of the tree-based tester.
pub fn strategy_moves(t: usize) -> Result<u64> {
    Ok(QuadraticPlan::new(0.5, t, 1)?.queries_per_round() as u64)
}

struct Timeout;

#[derive(Clone, Copy, Debug)]
enum Label {
    Reserve { tree: usize, i: usize },
    Node { tree: usize },
    Z,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Reserve { tree, i } => write!(f, "x{}_{}", tree + 1, i + 1),
            Label::Node { tree } => write!(f, "y{}", tree + 1),
            Label::Z => write!(f, "z"),
        }
    }
}

struct Game<'p> {
    state: GameState,
    p2: &'p mut dyn Player2,
    rng: ChaCha8Rng,
    moves: u64,
    move_cap: u64,
    p2_steps: u64,
    rejected: u64,
    checks: u64,
    log: Option<Vec<String>>,
}

impl Game<'_> {
    fn say(&mut self, line: impl FnOnce() -> String) {
        if let Some(log) = self.log.as_mut() {
            log.push(line());
        }
    }

    fn play(&mut self, mv: P1Move, label: Option<Label>) -> std::result::Result<Option<Vertex>, Timeout> {
        if self.moves == self.move_cap {
            return Err(Timeout);
        }
        let out = self.state.apply_p1(mv).expect("player 1 strategy only makes legal moves");
        self.moves += 1;
        self.say(|| match (mv, label, out) {
            (P1Move::Point, Some(l), Some(v)) => format!("P1 point v{v} ({l})"),
            (P1Move::Edge(a, b), ..) => format!("P1 edge v{a}-v{b}"),
            (P1Move::Triangle(a, b, c), ..) => format!("P1 triangle v{a}-v{b}-v{c}"),
            _ => format!("P1 {mv:?}"),
        });
        if self.state.blue_win().is_some() {
            return Ok(out);
        }
        let steps = self.p2.steps(&self.state, &mut self.rng);
        if steps.len() > self.state.t() {
            self.rejected += 1;
            self.say(|| format!("P2 turn of {} steps rejected", steps.len()));
            return Ok(out);
        }
        for step in steps {
            if self.state.apply_p2(step).is_err() {
                self.rejected += 1;
                self.say(|| format!("P2 illegal step {step:?}; rest of turn forfeited"));
                break;
            }
            self.p2_steps += 1;
            self.say(|| match step {
                P2Step::Edge(a, b) => format!("P2 red edge v{a}-v{b}"),
                P2Step::Triangle(a, b, c) => format!("P2 red triangle v{a}-v{b}-v{c}"),
            });
        }
        Ok(out)
    }

    fn point(&mut self, label: Label) -> std::result::Result<Vertex, Timeout> {
        Ok(self.play(P1Move::Point, Some(label))?.expect("new vertex"))
    }

    fn pick<T: Copy>(&mut self, options: &[T], what: &str) -> T {
        self.checks += 1;
        assert!(!options.is_empty(), "player 1 has no available option for {what}");
        *options.choose(&mut self.rng).expect("non-empty")
    }
}

struct TreeNode {
    y: Vertex,
    /// Reserve vertices blue-connected to `y`.
    set: Vec<Vertex>,
    remaining: Vec<Vertex>,
    /// Node indices of the children, in order.
    children: Vec<usize>,
}

// Whether a Player 2 step made after `z` was drawn touches the part of the
// structure below a node with y-vertices `nodes` and x-set `xs`.
fn touches(step: &P2Step, z: Vertex, nodes: &HashSet<Vertex>, xs: &HashSet<Vertex>) -> bool {
    match *step {
        P2Step::Edge(a, b) if a == z || b == z => {
            let other = if a == z { b } else { a };
            nodes.contains(&other) || xs.contains(&other)
        }
        P2Step::Triangle(a, b, c) if [a, b, c].contains(&z) => [a, b, c].iter().any(|v| xs.contains(v)),
        _ => false,
    }
}

/// Plays one game. `log` keeps one line per move when set.
pub fn play(t: usize, p2: &mut dyn Player2, seed: u64, move_cap: u64, log: bool) -> Result<GameResult> {
    let plan = QuadraticPlan::new(0.5, t, 1)?;
    let mut game = Game {
        state: GameState::new(t),
        p2,
        rng: ChaCha8Rng::seed_from_u64(seed),
        moves: 0,
        move_cap,
        p2_steps: 0,
        rejected: 0,
        checks: 0,
        log: log.then(Vec::new),
    };
    let outcome = run_strategy(&mut game, &plan);
    let winning_triangle = game.state.blue_win();
    let winner = match (outcome, winning_triangle) {
        (Ok(()), Some(_)) => Winner::Player1,
        (Ok(()), None) => unreachable!("strategy finished without a blue triangle"),
        (Err(Timeout), _) => Winner::Timeout,
    };
    Ok(GameResult {
        winner,
        moves: game.moves,
        p2_steps: game.p2_steps,
        rejected_turns: game.rejected,
        option_checks: game.checks,
        winning_triangle,
        summary: game.state.summary(),
        log: game.log.unwrap_or_default(),
    })
}

fn run_strategy(game: &mut Game<'_>, plan: &QuadraticPlan) -> std::result::Result<(), Timeout> {
    let t = plan.t;
    let k = t + 1;
    // Per tree: reserve and nodes in breadth-first order.
    let mut trees: Vec<(Vec<Vertex>, Vec<TreeNode>)> = Vec::new();
    for tree in 0..k {
        let mut reserve = Vec::with_capacity(plan.reserve);
        for i in 0..plan.reserve {
            reserve.push(game.point(Label::Reserve { tree, i })?);
        }
        let mut pool = reserve.clone();
        let mut nodes: Vec<TreeNode> = Vec::new();
        let mut frontier: Vec<Option<usize>> = vec![None];
        for m in 0..=t {
            let size = QuadraticPlan::subset_size(t, m);
            let mut next = Vec::new();
            for parent in frontier {
                for _ in 0..if parent.is_none() { 1 } else { k } {
                    let y = game.point(Label::Node { tree })?;
                    let mut set = Vec::with_capacity(size);
                    for _ in 0..size {
                        let from = match parent {
                            None => &pool,
                            Some(p) => &nodes[p].remaining,
                        };
                        let options: Vec<Vertex> =
                            from.iter().copied().filter(|&x| !set.contains(&x) && game.state.edge(x, y).is_none()).collect();
                        let x = game.pick(&options, "a decoy edge");
                        game.play(P1Move::Edge(x, y), None)?;
                        set.push(x);
                    }
                    let from = match parent {
                        None => &mut pool,
                        Some(p) => &mut nodes[p].remaining,
                    };
                    from.retain(|x| !set.contains(x));
                    let id = nodes.len();
                    if let Some(p) = parent {
                        nodes[p].children.push(id);
                    }
                    nodes.push(TreeNode { y, remaining: set.clone(), set, children: Vec::new() });
                    next.push(Some(id));
                }
            }
            frontier = next;
        }
        trees.push((reserve, nodes));
    }

    // Player 2 replies to z inside `point`, so count from before it.
    let since = game.state.p2_history().len();
    let z = game.point(Label::Z)?;
    let clean = |game: &Game<'_>, nodes: &HashSet<Vertex>, xs: &HashSet<Vertex>| {
        !game.state.p2_history()[since..].iter().any(|s| touches(s, z, nodes, xs))
    };
    let subtree = |tree: &[TreeNode], root: usize| {
        let mut ys = HashSet::new();
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            ys.insert(tree[i].y);
            stack.extend(&tree[i].children);
        }
        (ys, tree[root].set.iter().copied().collect::<HashSet<_>>())
    };

    let options: Vec<usize> = (0..k)
        .filter(|&l| {
            let (ys, xs) = subtree(&trees[l].1, 0);
            clean(game, &ys, &xs)
        })
        .collect();
    let ell = game.pick(&options, "a tree");
    let nodes = &trees[ell].1;
    let mut path = vec![0usize];
    game.play(P1Move::Edge(z, nodes[0].y), None)?;
    for _ in 0..t {
        let here = *path.last().expect("root");
        let options: Vec<usize> = nodes[here]
            .children
            .iter()
            .copied()
            .filter(|&c| {
                let (ys, xs) = subtree(nodes, c);
                clean(game, &ys, &xs)
            })
            .collect();
        let child = game.pick(&options, "a child on the walk");
        game.play(P1Move::Edge(z, nodes[child].y), None)?;
        path.push(child);
    }
    let leaf = &nodes[*path.last().expect("leaf")];
    assert_eq!(leaf.set.len(), k, "leaf set size");
    let options: Vec<Vertex> = leaf
        .set
        .iter()
        .copied()
        .filter(|&x| clean(game, &HashSet::new(), &HashSet::from([x])))
        .collect();
    let x = game.pick(&options, "an x-decoy");
    game.play(P1Move::Edge(z, x), None)?;
    let options: Vec<Vertex> = path.iter().map(|&i| nodes[i].y).filter(|&y| game.state.triangle(x, y, z).is_none()).collect();
    let y = game.pick(&options, "a triangle");
    game.play(P1Move::Triangle(x, y, z), None)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries;

    #[test]
    fn rules() {
        let mut s = GameState::new(1);
        for _ in 0..3 {
            s.apply_p1(P1Move::Point).unwrap();
        }
        s.apply_p1(P1Move::Edge(0, 1)).unwrap();
        assert!(s.apply_p1(P1Move::Edge(1, 0)).is_err());
        assert!(s.apply_p2(P2Step::Edge(0, 1)).is_err());
        s.apply_p2(P2Step::Edge(1, 2)).unwrap();
        assert!(s.apply_p1(P1Move::Edge(2, 1)).is_err());
        assert!(s.apply_p1(P1Move::Edge(0, 7)).is_err());
        s.apply_p1(P1Move::Edge(0, 2)).unwrap();
        s.apply_p1(P1Move::Triangle(0, 1, 2)).unwrap();
        assert!(s.apply_p2(P2Step::Triangle(2, 1, 0)).is_err());
        assert_eq!(s.blue_win(), None);
    }

    #[test]
    fn passive_game_uses_exactly_the_strategy_moves() {
        for t in [1, 2] {
            let r = play(t, &mut Passive, 3, u64::MAX, false).unwrap();
            assert_eq!(r.winner, Winner::Player1);
            assert_eq!(r.moves, strategy_moves(t).unwrap());
        }
        assert_eq!(strategy_moves(1).unwrap(), 55);
    }

    #[test]
    fn spoilers_lose() {
        for t in [1, 2] {
            for seed in 0..10 {
                for kind in [Player2Kind::Random, Player2Kind::Greedy] {
                    let r = play(t, kind.build().as_mut(), seed, strategy_moves(t).unwrap(), false).unwrap();
                    assert_eq!(r.winner, Winner::Player1, "t={t} {kind:?} seed={seed}");
                    assert_eq!(r.rejected_turns, 0);
                    assert!(r.p2_steps > 0);
                }
            }
        }
    }

    #[test]
    fn move_cap_times_out() {
        let r = play(1, &mut Passive, 0, 54, false).unwrap();
        assert_eq!(r.winner, Winner::Timeout);
        assert_eq!(r.moves, 54);
    }

    #[test]
    fn adapter_translates_oracle_adversaries() {
        let carrier = BooleanFunction::zero(20).unwrap();
        let mut p2 = StrategyAdapter::new(&carrier, adversaries::span_eraser(1), 1, 4);
        let r = play(1, &mut p2, 4, strategy_moves(1).unwrap(), true).unwrap();
        assert_eq!(r.winner, Winner::Player1);
        assert!(r.p2_steps > 0);
        assert_eq!(r.log.iter().filter(|l| l.starts_with("P1")).count() as u64, r.moves);
    }

    struct Cheater;

    impl Player2 for Cheater {
        fn name(&self) -> String {
            "cheater".into()
        }

        fn steps(&mut self, state: &GameState, _: &mut dyn RngCore) -> Vec<P2Step> {
            let n = state.vertex_count();
            if n < 3 {
                return Vec::new();
            }
            (0..n - 1).filter(|&u| state.edge(u, n - 1).is_none()).map(|u| P2Step::Edge(u, n - 1)).collect()
        }
    }

    #[test]
    fn over_budget_turns_are_dropped() {
        let r = play(1, &mut Cheater, 0, u64::MAX, false).unwrap();
        assert_eq!(r.winner, Winner::Player1);
        assert!(r.rejected_turns > 0);
    }
}
