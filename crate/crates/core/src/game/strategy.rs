use std::io::{BufRead, Write};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Arena, GameError, GameState};
use crate::certificates::{disconnects, verify_bramble, Bramble};
use crate::decomposition::{edge_adhesions, node_adhesion, Layout, NodeId, TreeCutDecomposition};
use crate::graph::{EdgeId, MultiGraph, Vertex};

pub trait CopStrategy {
    fn announce(&mut self, arena: &Arena, state: &GameState) -> Result<Vec<EdgeId>, GameError>;
}

pub trait RobberStrategy {
    fn start(&mut self, arena: &Arena) -> Result<Vertex, GameError>;
    fn respond(
        &mut self,
        arena: &Arena,
        state: &GameState,
        announced: &[EdgeId],
        legal: &[Vertex],
    ) -> Result<Vertex, GameError>;
}

/// Walks down the decomposition rooted at node 0: round 1 plays the root's
/// adhesion, and each later round moves to the child whose subtree holds the
/// robber.
#[derive(Clone, Debug)]
pub struct DecompositionCops {
    layout: Layout,
    adhesions: Vec<Vec<EdgeId>>,
}

pub fn cop_strategy_from_decomposition(g: &MultiGraph, d: &TreeCutDecomposition) -> Result<DecompositionCops, GameError> {
    let layout = Layout::new(g, d).map_err(|e| GameError::InvalidDecomposition(e.to_string()))?;
    let edge_adh = edge_adhesions(g, &layout);
    let adhesions = (0..d.node_count()).map(|t| node_adhesion(&layout, &edge_adh, t)).collect();
    Ok(DecompositionCops { layout, adhesions })
}

impl DecompositionCops {
    /// The node `t_i` played in round `state.round + 1`.
    pub fn node_for_round(&self, state: &GameState) -> NodeId {
        let mut t = 0;
        for &(_, r) in state.history.iter().skip(1) {
            let home = self.layout.node_of[r];
            match self.child_toward(t, home) {
                Some(c) => t = c,
                None => break,
            }
        }
        t
    }

    fn child_toward(&self, t: NodeId, target: NodeId) -> Option<NodeId> {
        self.layout.adjacency[t]
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| self.layout.parent[c] == Some(t))
            .find(|&c| self.layout.in_subtree(c, target))
    }

    /// Whether `x` is a strict descendant of `t`.
    pub fn strictly_below(&self, t: NodeId, x: NodeId) -> bool {
        t != x && self.layout.in_subtree(t, x)
    }

    pub fn node_of(&self, v: Vertex) -> NodeId {
        self.layout.node_of[v]
    }

    pub fn adhesion(&self, t: NodeId) -> &[EdgeId] {
        &self.adhesions[t]
    }
}

impl CopStrategy for DecompositionCops {
    /// With fewer cops than the adhesion needs, the lowest edge ids are kept.
    fn announce(&mut self, arena: &Arena, state: &GameState) -> Result<Vec<EdgeId>, GameError> {
        let adhesion = &self.adhesions[self.node_for_round(state)];
        Ok(adhesion[..adhesion.len().min(arena.config.cops)].to_vec())
    }
}

/// Keeps the robber inside the core of a slab that the cops have not
/// disconnected, moving between cores through their common vertices.
#[derive(Clone, Debug)]
pub struct BrambleRobber {
    bramble: Bramble,
    current: usize,
    /// When no slab survives, move greedily instead of failing.
    pub fallback: bool,
}

pub fn robber_strategy_from_bramble(g: &MultiGraph, b: &Bramble) -> Result<BrambleRobber, GameError> {
    verify_bramble(g, b).map_err(|v| GameError::InvalidBramble(format!("{v:?}")))?;
    Ok(BrambleRobber { bramble: b.clone(), current: 0, fallback: false })
}

impl BrambleRobber {
    pub fn with_fallback(mut self) -> Self {
        self.fallback = true;
        self
    }

    pub fn current_slab(&self) -> usize {
        self.current
    }

    pub fn bramble(&self) -> &Bramble {
        &self.bramble
    }

    /// The slab to hold after `f_next` and the vertex to move to, given the
    /// slab held now. Keeps the current slab when it survives; otherwise
    /// takes the first surviving slab and the smallest shared core vertex.
    pub fn choose(&self, g: &MultiGraph, current: usize, robber: Vertex, f_next: &[EdgeId]) -> Option<(usize, Vertex)> {
        let mut removed = vec![false; g.edge_count()];
        for &e in f_next {
            removed[e] = true;
        }
        let slabs = &self.bramble.slabs;
        if !disconnects(g, &slabs[current], &removed) {
            return Some((current, robber));
        }
        let next = (0..slabs.len()).find(|&s| !disconnects(g, &slabs[s], &removed))?;
        let shared = slabs[current].core.iter().copied().find(|v| slabs[next].core.binary_search(v).is_ok())?;
        Some((next, shared))
    }
}

impl RobberStrategy for BrambleRobber {
    fn start(&mut self, _arena: &Arena) -> Result<Vertex, GameError> {
        self.current = 0;
        Ok(self.bramble.slabs[0].core[0])
    }

    fn respond(
        &mut self,
        arena: &Arena,
        state: &GameState,
        announced: &[EdgeId],
        legal: &[Vertex],
    ) -> Result<Vertex, GameError> {
        match self.choose(arena.graph, self.current, state.robber, announced) {
            Some((slab, v)) => {
                self.current = slab;
                Ok(v)
            }
            None if self.fallback => GreedyRobber.respond(arena, state, announced, legal),
            None => Err(GameError::NoSafeSlab { round: state.round + 1 }),
        }
    }
}

/// Moves to the legal vertex with the largest capture set, smallest first on
/// ties. Starts at vertex 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyRobber;

impl RobberStrategy for GreedyRobber {
    fn start(&mut self, _arena: &Arena) -> Result<Vertex, GameError> {
        Ok(0)
    }

    fn respond(
        &mut self,
        arena: &Arena,
        state: &GameState,
        announced: &[EdgeId],
        legal: &[Vertex],
    ) -> Result<Vertex, GameError> {
        let mut after = state.clone();
        after.cop_edges = announced.to_vec();
        let best = legal.iter().copied().rev().max_by_key(|&w| {
            after.robber = w;
            arena.capture_set(&after).len()
        });
        best.ok_or(GameError::IllegalRobberMove { vertex: state.robber })
    }
}

#[derive(Clone, Debug)]
pub struct RandomCops {
    rng: ChaCha8Rng,
}

impl RandomCops {
    pub fn new(seed: u64) -> Self {
        RandomCops { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl CopStrategy for RandomCops {
    fn announce(&mut self, arena: &Arena, _state: &GameState) -> Result<Vec<EdgeId>, GameError> {
        let m = arena.graph.edge_count();
        let k = self.rng.gen_range(0..=arena.config.cops.min(m));
        let mut f = sample(&mut self.rng, m, k).into_vec();
        f.sort_unstable();
        Ok(f)
    }
}

#[derive(Clone, Debug)]
pub struct RandomRobber {
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl RobberStrategy for RandomRobber {
    fn start(&mut self, arena: &Arena) -> Result<Vertex, GameError> {
        Ok(self.rng.gen_range(0..arena.graph.vertex_count()))
    }

    fn respond(&mut self, _: &Arena, _: &GameState, _: &[EdgeId], legal: &[Vertex]) -> Result<Vertex, GameError> {
        Ok(legal[self.rng.gen_range(0..legal.len())])
    }
}

/// Plays a fixed list of cop moves, then keeps the last one.
#[derive(Clone, Debug)]
pub struct ScriptedCops {
    pub moves: Vec<Vec<EdgeId>>,
}

impl CopStrategy for ScriptedCops {
    fn announce(&mut self, _arena: &Arena, state: &GameState) -> Result<Vec<EdgeId>, GameError> {
        Ok(self.moves.get(state.round).or(self.moves.last()).cloned().unwrap_or_default())
    }
}

/// Starts at `start` and plays a fixed list of moves, then stays put.
#[derive(Clone, Debug)]
pub struct ScriptedRobber {
    pub start: Vertex,
    pub moves: Vec<Vertex>,
}

impl RobberStrategy for ScriptedRobber {
    fn start(&mut self, _arena: &Arena) -> Result<Vertex, GameError> {
        Ok(self.start)
    }

    fn respond(&mut self, _: &Arena, state: &GameState, _: &[EdgeId], _: &[Vertex]) -> Result<Vertex, GameError> {
        Ok(self.moves.get(state.round).copied().unwrap_or(state.robber))
    }
}

/// Reads robber moves from a terminal. Vertices are shown and read 1-based.
pub struct HumanRobber<R, W> {
    pub input: R,
    pub output: W,
}

/// Reads cop moves from a terminal as 1-based edge ids separated by spaces.
pub struct HumanCops<R, W> {
    pub input: R,
    pub output: W,
}

fn read_line<R: BufRead, W: Write>(input: &mut R, output: &mut W, prompt: &str) -> Result<String, GameError> {
    let io = |e: std::io::Error| GameError::Input(e.to_string());
    write!(output, "{prompt}").map_err(io)?;
    output.flush().map_err(io)?;
    let mut line = String::new();
    if input.read_line(&mut line).map_err(io)? == 0 {
        return Err(GameError::Input("unexpected end of input".into()));
    }
    Ok(line.trim().to_string())
}

fn read_vertex<R: BufRead, W: Write>(
    input: &mut R,
    output: &mut W,
    prompt: &str,
    allowed: &[Vertex],
) -> Result<Vertex, GameError> {
    loop {
        let line = read_line(input, output, prompt)?;
        match line.parse::<usize>() {
            Ok(v) if v >= 1 && allowed.contains(&(v - 1)) => return Ok(v - 1),
            _ => writeln!(output, "not allowed: {line}").map_err(|e| GameError::Input(e.to_string()))?,
        }
    }
}

fn one_based(items: &[usize]) -> String {
    items.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

impl<R: BufRead, W: Write> RobberStrategy for HumanRobber<R, W> {
    fn start(&mut self, arena: &Arena) -> Result<Vertex, GameError> {
        let all: Vec<Vertex> = arena.graph.vertices().collect();
        read_vertex(&mut self.input, &mut self.output, &format!("start vertex (1..{}): ", all.len()), &all)
    }

    fn respond(
        &mut self,
        _arena: &Arena,
        state: &GameState,
        announced: &[EdgeId],
        legal: &[Vertex],
    ) -> Result<Vertex, GameError> {
        let io = |e: std::io::Error| GameError::Input(e.to_string());
        writeln!(self.output, "round {}: robber at {}", state.round + 1, state.robber + 1).map_err(io)?;
        writeln!(self.output, "cops announce edges [{}]", one_based(announced)).map_err(io)?;
        writeln!(self.output, "legal moves [{}]", one_based(legal)).map_err(io)?;
        read_vertex(&mut self.input, &mut self.output, "move to: ", legal)
    }
}

impl<R: BufRead, W: Write> CopStrategy for HumanCops<R, W> {
    fn announce(&mut self, arena: &Arena, state: &GameState) -> Result<Vec<EdgeId>, GameError> {
        let io = |e: std::io::Error| GameError::Input(e.to_string());
        writeln!(
            self.output,
            "round {}: robber at {}, cops on [{}]",
            state.round + 1,
            state.robber + 1,
            one_based(&state.cop_edges)
        )
        .map_err(io)?;
        loop {
            let line = read_line(&mut self.input, &mut self.output, &format!("edges (at most {}): ", arena.config.cops))?;
            let parsed: Result<Vec<EdgeId>, _> = line.split_whitespace().map(|t| t.parse::<usize>()).collect();
            match parsed {
                Ok(ids)
                    if ids.len() <= arena.config.cops
                        && ids.iter().all(|&e| e >= 1 && e <= arena.graph.edge_count()) =>
                {
                    return Ok(ids.into_iter().map(|e| e - 1).collect())
                }
                _ => writeln!(self.output, "not allowed: {line}").map_err(io)?,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{play, GameConfig, StepOutcome, Winner};
    use super::*;
    use crate::certificates::Slab;
    use crate::graph::named::*;

    fn k4_bramble() -> Bramble {
        Bramble { slabs: vec![Slab::new((0..4).collect(), (0..6).collect(), (0..4).collect())] }
    }

    fn k4_split() -> TreeCutDecomposition {
        TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)])
    }

    #[test]
    fn decomposition_cops_catch_every_robber_on_k4() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(3, 3));
        let mut cops = cop_strategy_from_decomposition(&g, &k4_split()).unwrap();
        for start in 0..4 {
            let mut robber = ScriptedRobber { start, moves: vec![start, start] };
            let t = play(&arena, &mut cops, &mut robber).unwrap();
            assert_eq!(t.winner, Winner::Cops);
            assert!(t.round_count() <= 2);
        }
        let mut robber = robber_strategy_from_bramble(&g, &k4_bramble()).unwrap().with_fallback();
        let t = play(&arena, &mut cops, &mut robber).unwrap();
        assert_eq!(t.winner, Winner::Cops);
    }

    #[test]
    fn bramble_robber_escapes_two_cops() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(2, 2));
        let mut robber = robber_strategy_from_bramble(&g, &k4_bramble()).unwrap();
        let mut cops = RandomCops::new(7);
        let t = play(&arena, &mut cops, &mut robber).unwrap();
        assert_eq!(t.winner, Winner::Robber);
        assert_eq!(t.round_count(), 100);
    }

    #[test]
    fn short_handed_decomposition_cops() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(2, 2));
        let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)]);
        let mut cops = cop_strategy_from_decomposition(&g, &d).unwrap();
        let StepOutcome::Continue(s) = arena.start(0).unwrap() else { panic!() };
        assert_eq!(cops.announce(&arena, &s).unwrap().len(), 2);
        let mut robber = robber_strategy_from_bramble(&g, &k4_bramble()).unwrap();
        assert_eq!(play(&arena, &mut cops, &mut robber).unwrap().winner, Winner::Robber);
    }

    #[test]
    fn no_safe_slab_without_fallback() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(3, 3));
        let mut robber = robber_strategy_from_bramble(&g, &k4_bramble()).unwrap();
        let mut cops = ScriptedCops { moves: vec![g.boundary([3]).unwrap()] };
        assert_eq!(play(&arena, &mut cops, &mut robber), Err(GameError::NoSafeSlab { round: 1 }));
    }

    #[test]
    fn trees_are_caught_by_one_dog() {
        let g = binary_tree_15();
        let arena = Arena::new(&g, GameConfig::new(0, 1));
        let mut cops = cop_strategy_from_decomposition(&g, &TreeCutDecomposition::identity(&g)).unwrap();
        let t = play(&arena, &mut cops, &mut RandomRobber::new(3)).unwrap();
        assert_eq!((t.winner, t.round_count()), (Winner::Cops, 0));
    }

    #[test]
    fn lone_core_vertex_survives_without_dogs() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig { cops: 3, dogs: 0, max_rounds: 20 });
        let b = Bramble { slabs: vec![Slab::new(vec![2], vec![], vec![2])] };
        let mut robber = robber_strategy_from_bramble(&g, &b).unwrap();
        let t = play(&arena, &mut RandomCops::new(1), &mut robber).unwrap();
        assert_eq!(t.winner, Winner::Robber);
    }

    #[test]
    fn human_robber_reads_one_based_moves() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(3, 3));
        let input = b"9\n2\n4\n".as_slice();
        let mut robber = HumanRobber { input, output: Vec::new() };
        assert_eq!(robber.start(&arena).unwrap(), 1);
        let StepOutcome::Continue(s) = arena.start(1).unwrap() else { panic!() };
        let legal = arena.legal_robber_moves(&s, &[]).unwrap();
        assert_eq!(robber.respond(&arena, &s, &[], &legal).unwrap(), 3);
        let text = String::from_utf8(robber.output).unwrap();
        assert!(text.contains("not allowed: 9") && text.contains("legal moves [1 2 3 4]"));
    }

    #[test]
    fn human_cops_read_one_based_edges() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(2, 3));
        let mut cops = HumanCops { input: b"1 2 3\n7\n1 6\n".as_slice(), output: Vec::new() };
        let StepOutcome::Continue(s) = arena.start(0).unwrap() else { panic!() };
        assert_eq!(cops.announce(&arena, &s).unwrap(), vec![0, 5]);
    }
}
