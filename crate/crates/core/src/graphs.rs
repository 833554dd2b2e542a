//! State graphs: circles collapsed to vertices, segments to edges, and the
//! reduced simple graph obtained by merging parallel edges.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::kauffman::{Label, StateComplex};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("segment {segment} is a loop; the state is inadequate")]
    InadequateState { segment: usize },
    #[error("reduced state graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StateEdge {
    pub segment: usize,
    pub ends: [usize; 2],
    pub label: Label,
}

impl StateEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

/// `G_sigma`, with loops and parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateGraph {
    pub vertex_count: usize,
    pub edges: Vec<StateEdge>,
}

pub fn build_state_graph(sc: &StateComplex) -> StateGraph {
    StateGraph {
        vertex_count: sc.circle_count(),
        edges: sc
            .segments()
            .iter()
            .map(|s| StateEdge {
                segment: s.crossing,
                ends: [s.endpoints[0].circle, s.endpoints[1].circle],
                label: s.label,
            })
            .collect(),
    }
}

impl StateGraph {
    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(StateEdge::is_loop)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedEdge {
    /// Endpoints with `ends[0] < ends[1]`.
    pub ends: [usize; 2],
    /// Number of parallel segments this edge replaced.
    pub multiplicity: usize,
    pub segments: Vec<usize>,
}

/// `G'_sigma`: simple, loopless.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedStateGraph {
    pub vertex_count: usize,
    pub edges: Vec<ReducedEdge>,
}

pub fn reduce(g: &StateGraph) -> Result<ReducedStateGraph, GraphError> {
    let mut classes: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for e in &g.edges {
        if e.is_loop() {
            return Err(GraphError::InadequateState { segment: e.segment });
        }
        let [a, b] = e.ends;
        classes.entry([a.min(b), a.max(b)]).or_default().push(e.segment);
    }
    Ok(ReducedStateGraph {
        vertex_count: g.vertex_count,
        edges: classes
            .into_iter()
            .map(|(ends, segments)| ReducedEdge {
                ends,
                multiplicity: segments.len(),
                segments,
            })
            .collect(),
    })
}

impl ReducedStateGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|V| - |E|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.vertex_count);
        let merges = self
            .edges
            .iter()
            .filter(|e| uf.union(e.ends[0], e.ends[1]))
            .count();
        merges + 1 == self.vertex_count
    }

    pub fn is_tree(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edges.len() + 1 == self.vertex_count)
    }

    /// `1 - chi`; nonnegative for connected graphs.
    pub fn stable_coefficient(&self) -> i64 {
        1 - self.euler_characteristic()
    }
}

/// JSON view of a reduced graph with its derived numbers.
#[derive(Debug, Clone, Serialize)]
pub struct ReducedGraphJson {
    pub vertex_count: usize,
    pub edges: Vec<ReducedEdge>,
    pub euler_characteristic: i64,
    pub connected: bool,
    pub tree: bool,
    pub stable_coefficient: i64,
}

impl From<&ReducedStateGraph> for ReducedGraphJson {
    fn from(g: &ReducedStateGraph) -> Self {
        let connected = g.is_connected();
        Self {
            vertex_count: g.vertex_count,
            edges: g.edges.clone(),
            euler_characteristic: g.euler_characteristic(),
            connected,
            tree: connected && g.edges.len() + 1 == g.vertex_count,
            stable_coefficient: g.stable_coefficient(),
        }
    }
}
