//! The cops, dogs and robber game. Cops sit on edges; the robber moves along
//! paths avoiding edges whose cops stay put, and never leaves her
//! 3-edge-connected component. She is caught once the set of vertices she
//! could still reach is no larger than the number of dogs.

mod solve;
mod strategy;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{three_ecc, EdgeId, GraphError, MultiGraph, Vertex};

pub use solve::{cops_win, DEFAULT_STATE_LIMIT};
pub use strategy::{
    cop_strategy_from_decomposition, robber_strategy_from_bramble, BrambleRobber, CopStrategy, DecompositionCops,
    GreedyRobber, HumanCops, HumanRobber, RandomCops, RandomRobber, RobberStrategy, ScriptedCops, ScriptedRobber,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub cops: usize,
    pub dogs: usize,
    pub max_rounds: usize,
}

impl GameConfig {
    pub fn new(cops: usize, dogs: usize) -> Self {
        GameConfig { cops, dogs, max_rounds: 100 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub round: usize,
    /// Sorted edges occupied by cops.
    pub cop_edges: Vec<EdgeId>,
    pub robber: Vertex,
    /// `(F_i, r_i)` for rounds `0..=round`.
    pub history: Vec<(Vec<EdgeId>, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Continue(GameState),
    /// The robber was caught; `dogs` is the set she could still reach.
    CopsWin { state: GameState, dogs: Vec<Vertex> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("{announced} cop edges announced, only {cops} cops available")]
    TooManyCops { announced: usize, cops: usize },
    #[error("the robber cannot move to vertex {vertex}")]
    IllegalRobberMove { vertex: Vertex },
    #[error("edge {0} does not exist")]
    BadEdge(EdgeId),
    #[error("vertex {0} does not exist")]
    BadVertex(Vertex),
    #[error("no slab survives the cop move in round {round}")]
    NoSafeSlab { round: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid bramble: {0}")]
    InvalidBramble(String),
    #[error("game too large: {0}")]
    TooLarge(String),
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with its game rules.
#[derive(Clone, Debug)]
pub struct Arena<'g> {
    pub graph: &'g MultiGraph,
    pub config: GameConfig,
    class: Vec<usize>,
}

impl<'g> Arena<'g> {
    pub fn new(graph: &'g MultiGraph, config: GameConfig) -> Self {
        let partition = three_ecc(graph);
        let class = graph.vertices().map(|v| partition.block_of(v)).collect();
        Arena { graph, config, class }
    }

    pub fn same_class(&self, u: Vertex, v: Vertex) -> bool {
        self.class[u] == self.class[v]
    }

    /// Round 0: the robber is placed and no cop is on the board.
    pub fn start(&self, robber: Vertex) -> Result<StepOutcome, GameError> {
        if !self.graph.has_vertex(robber) {
            return Err(GameError::BadVertex(robber));
        }
        let state = GameState { round: 0, cop_edges: Vec::new(), robber, history: vec![(Vec::new(), robber)] };
        Ok(self.judge(state))
    }

    fn normalise(&self, f: &[EdgeId]) -> Result<Vec<EdgeId>, GameError> {
        let mut f = f.to_vec();
        f.sort_unstable();
        f.dedup();
        if let Some(&e) = f.iter().find(|&&e| e >= self.graph.edge_count()) {
            return Err(GameError::BadEdge(e));
        }
        if f.len() > self.config.cops {
            return Err(GameError::TooManyCops { announced: f.len(), cops: self.config.cops });
        }
        Ok(f)
    }

    /// Vertices of the robber's class reachable from `from` avoiding `blocked`.
    fn reach(&self, from: Vertex, blocked: &[EdgeId]) -> Vec<Vertex> {
        let mut mask = vec![false; self.graph.edge_count()];
        for &e in blocked {
            mask[e] = true;
        }
        let seen = self.graph.reachable(from, &mask);
        self.graph.vertices().filter(|&w| seen[w] && self.same_class(from, w)).collect()
    }

    /// Where the robber may go once `f_next` is announced: along paths
    /// avoiding `F_{i-1} ∩ F_next`, within her class. Staying is allowed.
    pub fn legal_robber_moves(&self, state: &GameState, f_next: &[EdgeId]) -> Result<Vec<Vertex>, GameError> {
        let f_next = self.normalise(f_next)?;
        let stay: Vec<EdgeId> = f_next.iter().copied().filter(|e| state.cop_edges.binary_search(e).is_ok()).collect();
        Ok(self.reach(state.robber, &stay))
    }

    /// Vertices the robber could reach now, which the dogs must cover.
    pub fn capture_set(&self, state: &GameState) -> Vec<Vertex> {
        self.reach(state.robber, &state.cop_edges)
    }

    pub fn step(&self, state: &GameState, f_next: &[EdgeId], choice: Vertex) -> Result<StepOutcome, GameError> {
        if !self.graph.has_vertex(choice) {
            return Err(GameError::BadVertex(choice));
        }
        let legal = self.legal_robber_moves(state, f_next)?;
        if legal.binary_search(&choice).is_err() {
            return Err(GameError::IllegalRobberMove { vertex: choice });
        }
        let cop_edges = self.normalise(f_next)?;
        let mut history = state.history.clone();
        history.push((cop_edges.clone(), choice));
        let next = GameState { round: state.round + 1, cop_edges, robber: choice, history };
        Ok(self.judge(next))
    }

    fn judge(&self, state: GameState) -> StepOutcome {
        let reach = self.capture_set(&state);
        if reach.len() <= self.config.dogs {
            StepOutcome::CopsWin { state, dogs: reach }
        } else {
            StepOutcome::Continue(state)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winner {
    Cops,
    Robber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub cops: Vec<EdgeId>,
    pub robber: Vertex,
    pub capture_set_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub config: GameConfig,
    /// Round 0 first.
    pub rounds: Vec<RoundRecord>,
    pub winner: Winner,
    /// Where the dogs were released, when the cops won.
    pub dogs: Option<Vec<Vertex>>,
}

impl Transcript {
    /// Rounds played after round 0.
    pub fn round_count(&self) -> usize {
        self.rounds.len() - 1
    }
}

/// Plays until the robber is caught or survives `max_rounds` rounds.
pub fn play(
    arena: &Arena,
    cops: &mut dyn CopStrategy,
    robber: &mut dyn RobberStrategy,
) -> Result<Transcript, GameError> {
    let r0 = robber.start(arena)?;
    let mut outcome = arena.start(r0)?;
    let mut rounds = Vec::new();
    loop {
        let (state, dogs) = match &outcome {
            StepOutcome::Continue(s) => (s, None),
            StepOutcome::CopsWin { state, dogs } => (state, Some(dogs.clone())),
        };
        rounds.push(RoundRecord {
            round: state.round,
            cops: state.cop_edges.clone(),
            robber: state.robber,
            capture_set_size: arena.capture_set(state).len(),
        });
        if dogs.is_some() {
            return Ok(Transcript { config: arena.config, rounds, winner: Winner::Cops, dogs });
        }
        if state.round >= arena.config.max_rounds {
            return Ok(Transcript { config: arena.config, rounds, winner: Winner::Robber, dogs: None });
        }
        let f = cops.announce(arena, state)?;
        let legal = arena.legal_robber_moves(state, &f)?;
        let r = robber.respond(arena, state, &f, &legal)?;
        outcome = arena.step(state, &f, r)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn state(arena: &Arena, r: Vertex) -> GameState {
        match arena.start(r).unwrap() {
            StepOutcome::Continue(s) | StepOutcome::CopsWin { state: s, .. } => s,
        }
    }

    #[test]
    fn robber_on_a_tree_cannot_move() {
        let g = binary_tree_15();
        let arena = Arena::new(&g, GameConfig::new(2, 1));
        let s = state(&arena, 3);
        assert_eq!(arena.legal_robber_moves(&s, &[]).unwrap(), vec![3]);
        assert_eq!(arena.legal_robber_moves(&s, &[0, 1]).unwrap(), vec![3]);
        assert!(matches!(arena.start(3).unwrap(), StepOutcome::CopsWin { .. }));
    }

    #[test]
    fn k4_moves() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(3, 3));
        let s = state(&arena, 0);
        assert_eq!(arena.legal_robber_moves(&s, &[]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(arena.capture_set(&s).len(), 4);
        assert!(matches!(arena.start(0).unwrap(), StepOutcome::Continue(_)));
    }

    #[test]
    fn k4_blocked_and_capture() {
        let g = complete(4);
        let arena = Arena::new(&g, GameConfig::new(3, 3));
        let delta0 = g.boundary([0]).unwrap();
        let s = GameState { round: 1, cop_edges: delta0.clone(), robber: 0, history: vec![(vec![], 0), (delta0.clone(), 0)] };
        assert_eq!(arena.legal_robber_moves(&s, &delta0).unwrap(), vec![0]);
        let delta3 = g.boundary([3]).unwrap();
        let s0 = state(&arena, 0);
        match arena.step(&s0, &delta3, 3).unwrap() {
            StepOutcome::CopsWin { state, dogs } => {
                assert_eq!(state.round, 1);
                assert_eq!(dogs, vec![3]);
            }
            other => panic!("expected capture, got {other:?}"),
        }
        assert_eq!(arena.step(&s0, &[0, 1, 2, 3], 0), Err(GameError::TooManyCops { announced: 4, cops: 3 }));
        assert_eq!(arena.step(&s0, &[99], 0), Err(GameError::BadEdge(99)));
    }

    #[test]
    fn illegal_move_is_rejected() {
        let g = path(3);
        let arena = Arena::new(&g, GameConfig::new(0, 0));
        let s = state(&arena, 0);
        assert_eq!(arena.step(&s, &[], 2), Err(GameError::IllegalRobberMove { vertex: 2 }));
        let next = arena.step(&s, &[], 0).unwrap();
        assert!(matches!(next, StepOutcome::Continue(ref t) if t.round == 1));
    }

    #[test]
    fn single_vertex_is_caught_at_once() {
        let g = MultiGraph::edgeless(1).unwrap();
        let arena = Arena::new(&g, GameConfig::new(0, 1));
        assert!(matches!(arena.start(0).unwrap(), StepOutcome::CopsWin { ref state, .. } if state.round == 0));
    }
}
