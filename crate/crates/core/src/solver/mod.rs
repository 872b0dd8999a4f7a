//! Exact search for decompositions of small graphs, the width parameters
//! defined through it, and the bramble built when no decomposition exists.

mod canonical;
mod duality;
mod search;
mod synthesis;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::certificates::CertificateError;
use crate::decomposition::{ab_widths, DecompositionError, Layout, TreeCutDecomposition};
use crate::graph::{three_ecc, GraphError, MultiGraph};
use crate::tcc::{component_torso, glue_with, TccError};

pub use canonical::{
    ab_width_frontier, canonical_decompositions, decomposition_key, exists_by_enumeration, wollan_tcw,
};
pub use duality::{duality_sweep, DualityRecord};
pub use synthesis::{
    cut_star_decomposition, good_petals, synthesize_bramble, synthesize_bramble_detailed, GoodDecomposition,
    Synthesis,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverBudget {
    /// Largest graph the subset search accepts.
    pub max_vertices: usize,
    /// Largest graph (or torso) the canonical enumeration accepts.
    pub max_enumeration_vertices: usize,
    /// Cap on tree nodes during enumeration; `None` means `2n`.
    pub max_tree_nodes: Option<usize>,
    pub time_limit: Option<Duration>,
    /// Search torsos one after another. When false they are searched in
    /// parallel; the result is the same either way.
    pub deterministic: bool,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            max_vertices: 16,
            max_enumeration_vertices: 6,
            max_tree_nodes: None,
            time_limit: None,
            deterministic: true,
        }
    }
}

impl SolverBudget {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn tree_node_limit(&self, n: usize) -> usize {
        self.max_tree_nodes.unwrap_or(2 * n).max(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal witness failed verification: {0}")]
    WitnessRejected(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tcc(#[from] TccError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Clock {
    deadline: Option<Instant>,
}

impl Clock {
    pub fn start(budget: &SolverBudget) -> Self {
        Clock { deadline: budget.time_limit.map(|d| Instant::now() + d) }
    }

    pub fn check(&self) -> Result<(), SolverError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(SolverError::BudgetExceeded("time limit reached".into())),
            _ => Ok(()),
        }
    }
}

fn check_size(n: usize, limit: usize, what: &str) -> Result<(), SolverError> {
    if n > limit || n > crate::vertex_set::VertexSet::CAPACITY {
        return Err(SolverError::BudgetExceeded(format!("{what} has {n} vertices, limit is {limit}")));
    }
    Ok(())
}

/// A decomposition of `g` with adhesion-width `< a` and bag-width `< b`, or
/// `None` if there is none. Each 3-edge-connected component's torso is
/// searched on its own and the results are glued.
pub fn exists_decomposition(
    g: &MultiGraph,
    a: usize,
    b: usize,
    budget: &SolverBudget,
) -> Result<Option<TreeCutDecomposition>, SolverError> {
    check_size(g.vertex_count(), budget.max_vertices, "graph")?;
    if a == 0 || b == 0 {
        return Ok(None);
    }
    let clock = Clock::start(budget);
    let partition = three_ecc(g);
    let blocks = partition.blocks();
    let solve = |block: &Vec<usize>| -> Result<Option<TreeCutDecomposition>, SolverError> {
        let torso = component_torso(g, block)?;
        search::search(&torso.graph, a, b, &clock)
    };
    let found: Vec<Option<TreeCutDecomposition>> = if budget.deterministic {
        blocks.iter().map(solve).collect::<Result<_, _>>()?
    } else {
        blocks.par_iter().map(solve).collect::<Result<_, _>>()?
    };
    if found.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut pieces = found.into_iter().map(Option::unwrap);
    let (glued, _) = glue_with(g, &partition, |_| pieces.next())?;
    check_witness(g, &glued, a, b)?;
    Ok(Some(glued))
}

pub(crate) fn check_witness(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    a: usize,
    b: usize,
) -> Result<(), SolverError> {
    let layout = Layout::new(g, d).map_err(|e| SolverError::WitnessRejected(e.to_string()))?;
    let (adhw, bagw) = ab_widths(g, d, &layout);
    if adhw >= a || bagw >= b {
        return Err(SolverError::WitnessRejected(format!(
            "widths ({adhw}, {bagw}) not below ({a}, {b})"
        )));
    }
    Ok(())
}

/// The least `k ≥ 1` such that some decomposition has adhesion-width and
/// bag-width both at most `k`.
pub fn ab_tcw(g: &MultiGraph, budget: &SolverBudget) -> Result<usize, SolverError> {
    for k in 1..=g.vertex_count() {
        if exists_decomposition(g, k + 1, k + 1, budget)?.is_some() {
            return Ok(k);
        }
    }
    // the single bag reaches k = n
    Ok(g.vertex_count().max(1))
}
