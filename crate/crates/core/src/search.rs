//! Searching Kauffman states for ones that are both adequate and homogeneous.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{LinkDiagram, Orientation};
use crate::jones::{DEFAULT_CROSSING_CAP, MAX_CROSSINGS};
use crate::kauffman::{apply_state, seifert_state, KauffmanState};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateVerdict {
    /// Bit `i` set when crossing `i` takes the B-resolution.
    pub bits: u64,
    pub state: String,
    pub circles: usize,
    pub adequate: bool,
    pub homogeneous: bool,
}

impl StateVerdict {
    pub fn passes(&self) -> bool {
        self.adequate && self.homogeneous
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Budget {
    pub max_states: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetStatus {
    Complete,
    StateLimit,
    TimeLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub crossings: usize,
    pub total_states: u64,
    pub examined: u64,
    pub adequate_count: u64,
    pub homogeneous_count: u64,
    pub homogeneously_adequate_count: u64,
    pub status: BudgetStatus,
    /// Passing states in increasing bit order.
    pub found: Vec<StateVerdict>,
}

/// Adequacy and homogeneity of one state without building a `StateComplex`.
struct Evaluator {
    c: usize,
    pair: Vec<usize>,
    circle_of: Vec<usize>,
    rotation: Vec<usize>,
    face_of: Vec<usize>,
    uf: UnionFind,
    label_of_root: Vec<u8>,
}

impl Evaluator {
    fn new(diagram: &LinkDiagram) -> Self {
        let c = diagram.crossing_count();
        let mut pair: Vec<usize> = (0..4 * c).map(|d| diagram.map().pair(d)).collect();
        for k in 0..c {
            pair.push(4 * c + 2 * k + 1);
            pair.push(4 * c + 2 * k);
        }
        Self {
            c,
            pair,
            circle_of: vec![0; 4 * c],
            rotation: vec![0; 6 * c],
            face_of: vec![0; 6 * c],
            uf: UnionFind::new(6 * c),
            label_of_root: vec![0; 6 * c],
        }
    }

    fn evaluate(&mut self, bits: u64) -> StateVerdict {
        let c = self.c;
        let b_at = |k: usize| bits >> k & 1 == 1;

        // Circles.
        self.circle_of.fill(usize::MAX);
        let mut circles = 0;
        for start in 0..4 * c {
            if self.circle_of[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                let arrive = self.pair[d];
                self.circle_of[d] = circles;
                self.circle_of[arrive] = circles;
                let p = arrive & 3;
                let q = if b_at(arrive >> 2) { 3 - p } else { p ^ 1 };
                d = (arrive & !3) | q;
                if d == start {
                    break;
                }
            }
            circles += 1;
        }
        let adequate = (0..c).all(|k| self.circle_of[4 * k] != self.circle_of[4 * k + 2]);

        // Faces of H, then regions by gluing across segments.
        for k in 0..c {
            for j in 0..2 {
                let p = match (b_at(k), j) {
                    (false, 0) => 0,
                    (false, _) => 2,
                    (true, 0) => 3,
                    (true, _) => 1,
                };
                let arm_p = 4 * k + p;
                let arm_q = 4 * k + (p + 1) % 4;
                let seg = 4 * c + 2 * k + j;
                self.rotation[arm_p] = arm_q;
                self.rotation[arm_q] = seg;
                self.rotation[seg] = arm_p;
            }
        }
        self.face_of.fill(usize::MAX);
        let mut faces = 0;
        for start in 0..6 * c {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while self.face_of[d] == usize::MAX {
                self.face_of[d] = faces;
                d = self.rotation[self.pair[d]];
            }
            faces += 1;
        }
        self.uf.reset();
        for k in 0..c {
            let s = 4 * c + 2 * k;
            self.uf.union(self.face_of[s], self.face_of[s + 1]);
        }
        self.label_of_root[..faces].fill(0);
        let mut homogeneous = true;
        for k in 0..c {
            let root = self.uf.find(self.face_of[4 * c + 2 * k]);
            let label = if b_at(k) { 2 } else { 1 };
            match self.label_of_root[root] {
                0 => self.label_of_root[root] = label,
                l if l != label => {
                    homogeneous = false;
                    break;
                }
                _ => {}
            }
        }
        StateVerdict {
            bits,
            state: String::new(),
            circles: if c == 0 { 1 } else { circles },
            adequate,
            homogeneous,
        }
    }
}

fn verdict_of(diagram: &LinkDiagram, state: &KauffmanState) -> StateVerdict {
    let sc = apply_state(diagram, state).expect("state sized to diagram");
    StateVerdict {
        bits: state.to_bits(),
        state: state.to_string(),
        circles: sc.circle_count(),
        adequate: sc.is_adequate(),
        homogeneous: sc.is_homogeneous(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertProbe {
    /// Reversed flag per component relative to the reference orientation.
    pub orientation: Vec<bool>,
    pub verdict: StateVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub crossings: usize,
    pub all_a: StateVerdict,
    pub all_b: StateVerdict,
    pub seifert: Vec<SeifertProbe>,
    /// Distinct passing states among those probed, in increasing bit order.
    pub found: Vec<StateVerdict>,
}

/// Evaluates the all-A and all-B states and the Seifert state of every orientation.
pub fn probe_special_states(diagram: &LinkDiagram) -> ProbeResult {
    let c = diagram.crossing_count();
    let all_a = verdict_of(diagram, &KauffmanState::all_a(c));
    let all_b = verdict_of(diagram, &KauffmanState::all_b(c));
    let seifert: Vec<SeifertProbe> = Orientation::all(diagram)
        .into_iter()
        .map(|o| SeifertProbe {
            verdict: verdict_of(diagram, &seifert_state(diagram, &o)),
            orientation: o.reversed().to_vec(),
        })
        .collect();
    let mut found: Vec<StateVerdict> = [&all_a, &all_b]
        .into_iter()
        .chain(seifert.iter().map(|s| &s.verdict))
        .filter(|v| v.passes())
        .cloned()
        .collect();
    found.sort_by_key(|v| v.bits);
    found.dedup_by_key(|v| v.bits);
    ProbeResult {
        crossings: c,
        all_a,
        all_b,
        seifert,
        found,
    }
}

pub fn exhaustive_search(diagram: &LinkDiagram, budget: Budget) -> Result<SearchResult, SearchError> {
    exhaustive_search_with_sink(diagram, budget, DEFAULT_CROSSING_CAP, |_| {})
}

/// States per block; blocks are evaluated in parallel, a window at a time.
const BLOCK: u64 = 1 << 12;
const WINDOW: u64 = 64;

/// Enumerates states in increasing bit order, handing each passing state to
/// `sink` as soon as its block is merged. Blocks are merged in order, so the
/// sink sees the same sequence for any thread count.
pub fn exhaustive_search_with_sink(
    diagram: &LinkDiagram,
    budget: Budget,
    cap: usize,
    mut sink: impl FnMut(&StateVerdict),
) -> Result<SearchResult, SearchError> {
    let c = diagram.crossing_count();
    let cap = cap.min(MAX_CROSSINGS);
    if c > cap {
        return Err(SearchError::TooManyCrossings { crossings: c, cap });
    }
    let total = 1u64 << c;
    let limit = budget.max_states.map_or(total, |m| m.min(total));
    let deadline = budget
        .max_seconds
        .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
    let mut result = SearchResult {
        crossings: c,
        total_states: total,
        examined: 0,
        adequate_count: 0,
        homogeneous_count: 0,
        homogeneously_adequate_count: 0,
        status: BudgetStatus::Complete,
        found: Vec::new(),
    };
    let blocks = limit.div_ceil(BLOCK);
    let mut next_block = 0;
    while next_block < blocks {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            result.status = BudgetStatus::TimeLimit;
            break;
        }
        let end_block = (next_block + WINDOW).min(blocks);
        let outcomes: Vec<(u64, u64, u64, Vec<StateVerdict>)> = (next_block..end_block)
            .into_par_iter()
            .map_init(
                || Evaluator::new(diagram),
                |ev, block| {
                    let lo = block * BLOCK;
                    let hi = (lo + BLOCK).min(limit);
                    let (mut adequate, mut homogeneous) = (0, 0);
                    let mut passing = Vec::new();
                    for bits in lo..hi {
                        let v = ev.evaluate(bits);
                        adequate += u64::from(v.adequate);
                        homogeneous += u64::from(v.homogeneous);
                        if v.passes() {
                            passing.push(v);
                        }
                    }
                    (hi - lo, adequate, homogeneous, passing)
                },
            )
            .collect();
        for (n, adequate, homogeneous, passing) in outcomes {
            result.examined += n;
            result.adequate_count += adequate;
            result.homogeneous_count += homogeneous;
            for mut v in passing {
                v.state = KauffmanState::from_bits(c, v.bits).to_string();
                result.homogeneously_adequate_count += 1;
                sink(&v);
                result.found.push(v);
            }
        }
        next_block = end_block;
    }
    if result.status == BudgetStatus::Complete && result.examined < total {
        result.status = BudgetStatus::StateLimit;
    }
    Ok(result)
}
