//! Checks, over many graphs, that exactly one of a tangle and a
//! decomposition exists for each `(a, b)`.

use rayon::prelude::*;
use serde::Serialize;

use super::{exists_decomposition, SolverBudget};
use crate::certificates::{find_tangle, verify_tangle, Tangle};
use crate::decomposition::{ab_widths, Layout, TreeCutDecomposition};
use crate::graph::MultiGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityRecord {
    pub graph: usize,
    pub a: usize,
    pub b: usize,
    pub decomposition: Option<TreeCutDecomposition>,
    #[serde(skip)]
    pub tangle: Option<Tangle>,
    pub has_tangle: bool,
    /// Exactly one of the two exists.
    pub agree: bool,
    /// Every witness present passes its verifier.
    pub witnesses_ok: bool,
    pub error: Option<String>,
}

/// One record per graph and `(a, b)` with `1 ≤ a ≤ max_a`, `1 ≤ b ≤ max_b`,
/// ordered by graph, then `a`, then `b`. Graphs are processed in parallel.
pub fn duality_sweep(graphs: &[MultiGraph], max_a: usize, max_b: usize, budget: &SolverBudget) -> Vec<DualityRecord> {
    graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            (1..=max_a).flat_map(move |a| (1..=max_b).map(move |b| (a, b))).map(move |(a, b)| check(i, g, a, b, budget))
        })
        .collect()
}

fn check(graph: usize, g: &MultiGraph, a: usize, b: usize, budget: &SolverBudget) -> DualityRecord {
    let mut record = DualityRecord {
        graph,
        a,
        b,
        decomposition: None,
        tangle: None,
        has_tangle: false,
        agree: false,
        witnesses_ok: false,
        error: None,
    };
    let decomposition = match exists_decomposition(g, a, b, budget) {
        Ok(d) => d,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    let tangle = match find_tangle(g, a, b) {
        Ok(t) => t,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    let decomposition_ok = decomposition.as_ref().map_or(true, |d| {
        Layout::new(g, d).is_ok_and(|layout| {
            let (adhw, bagw) = ab_widths(g, d, &layout);
            adhw < a && bagw < b
        })
    });
    let tangle_ok = tangle.as_ref().map_or(true, |t| verify_tangle(g, t).is_ok());
    record.agree = decomposition.is_some() != tangle.is_some();
    record.witnesses_ok = decomposition_ok && tangle_ok;
    record.has_tangle = tangle.is_some();
    record.decomposition = decomposition;
    record.tangle = tangle;
    record
}
