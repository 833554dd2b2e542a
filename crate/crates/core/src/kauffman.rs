//! Kauffman states and the resolved picture they produce: state circles, the
//! graph `H` of circles plus one segment per crossing, and the partition of
//! segments into complementary regions of the circles.
//!
//! `H` is stored as a [`CombinatorialMap`]. Each crossing contributes two
//! trivalent vertices (segment endpoints). The diagram dart `4k+p` is reused
//! as the `H` dart leaving the endpoint that sits on the circle piece through
//! position `p`; darts `4c + 2k + j` are the two halves of segment `k`, where
//! `j = 0` is the endpoint on the piece through position 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{crossing_of, position, LinkDiagram, Orientation};
use crate::map::CombinatorialMap;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
}

impl Label {
    pub fn other(self) -> Self {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::A => "A",
            Label::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("state has {given} labels but the diagram has {expected} crossings")]
    LengthMismatch { given: usize, expected: usize },
    #[error("invalid state string: {0}")]
    Parse(String),
}

/// An A/B choice at every crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KauffmanState {
    labels: Vec<Label>,
}

impl KauffmanState {
    pub fn new(labels: Vec<Label>) -> Self {
        Self { labels }
    }

    pub fn uniform(crossings: usize, label: Label) -> Self {
        Self {
            labels: vec![label; crossings],
        }
    }

    pub fn all_a(crossings: usize) -> Self {
        Self::uniform(crossings, Label::A)
    }

    pub fn all_b(crossings: usize) -> Self {
        Self::uniform(crossings, Label::B)
    }

    /// Bit `i` set means crossing `i` takes the B-resolution.
    pub fn from_bits(crossings: usize, bits: u64) -> Self {
        Self {
            labels: (0..crossings)
                .map(|i| if bits >> i & 1 == 1 { Label::B } else { Label::A })
                .collect(),
        }
    }

    /// Inverse of [`KauffmanState::from_bits`]; only meaningful for at most 64 crossings.
    pub fn to_bits(&self) -> u64 {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == Label::B)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, crossing: usize) -> Label {
        self.labels[crossing]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Every label swapped.
    pub fn dual(&self) -> Self {
        Self {
            labels: self.labels.iter().map(|l| l.other()).collect(),
        }
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

impl fmt::Display for KauffmanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for KauffmanState {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'A' | 'a' => Ok(Label::A),
                'B' | 'b' => Ok(Label::B),
                other => Err(StateError::Parse(format!("unexpected character '{other}'"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

/// Where a segment meets a state circle: the circle and the index of the
/// attachment in that circle's cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Endpoint {
    pub circle: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub crossing: usize,
    pub label: Label,
    pub endpoints: [Endpoint; 2],
    pub region: usize,
}

impl Segment {
    pub fn is_loop(&self) -> bool {
        self.endpoints[0].circle == self.endpoints[1].circle
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateCircle {
    /// Diagram edges traversed, in order.
    pub arcs: Vec<usize>,
    /// `H` darts leaving each attachment along the circle, in traversal order.
    #[serde(skip)]
    pub darts: Vec<usize>,
    /// `(segment, end)` at each attachment, in traversal order.
    pub attachments: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct StateComplex {
    state: KauffmanState,
    circles: Vec<StateCircle>,
    segments: Vec<Segment>,
    h_graph: CombinatorialMap,
    /// State circle of every arm dart of `H`.
    circle_of: Vec<usize>,
    region_count: usize,
}

/// Which endpoint of crossing `k`'s segment the piece through position `p` carries.
#[inline]
pub(crate) fn endpoint_index(label: Label, p: usize) -> usize {
    match label {
        Label::A => usize::from(p >= 2),
        Label::B => usize::from(p == 1 || p == 2),
    }
}

/// First position of the piece carrying endpoint `j`, counterclockwise.
#[inline]
fn piece_start(label: Label, j: usize) -> usize {
    match (label, j) {
        (Label::A, 0) => 0,
        (Label::A, _) => 2,
        (Label::B, 0) => 3,
        (Label::B, _) => 1,
    }
}

/// Other arm dart at the same endpoint (the splice partner).
#[inline]
pub(crate) fn splice_partner(label: Label, d: usize) -> usize {
    let base = d & !3;
    let p = position(d);
    let q = match label {
        Label::A => p ^ 1,
        Label::B => 3 - p,
    };
    base | q
}

pub fn apply_state(diagram: &LinkDiagram, state: &KauffmanState) -> Result<StateComplex, StateError> {
    let c = diagram.crossing_count();
    if state.len() != c {
        return Err(StateError::LengthMismatch {
            given: state.len(),
            expected: c,
        });
    }
    if c == 0 {
        let h_graph = CombinatorialMap::new(vec![1, 0], vec![1, 0]).expect("loop map");
        return Ok(StateComplex {
            state: state.clone(),
            circles: vec![StateCircle {
                arcs: Vec::new(),
                darts: Vec::new(),
                attachments: Vec::new(),
            }],
            segments: Vec::new(),
            h_graph,
            circle_of: vec![0, 0],
            region_count: 0,
        });
    }

    let dmap = diagram.map();
    let n = 6 * c;
    let seg = |k: usize, j: usize| 4 * c + 2 * k + j;
    let mut rotation = vec![0; n];
    let mut pairing = vec![0; n];
    for k in 0..c {
        let label = state.label(k);
        for j in 0..2 {
            let p = piece_start(label, j);
            let arm_p = 4 * k + p;
            let arm_q = 4 * k + (p + 1) % 4;
            rotation[arm_p] = arm_q;
            rotation[arm_q] = seg(k, j);
            rotation[seg(k, j)] = arm_p;
        }
        pairing[seg(k, 0)] = seg(k, 1);
        pairing[seg(k, 1)] = seg(k, 0);
    }
    for d in 0..4 * c {
        pairing[d] = dmap.pair(d);
    }
    let h_graph = CombinatorialMap::new(rotation, pairing).expect("H is a valid map");

    // Circles: forward darts follow d -> splice(pair(d)).
    let mut circle_of = vec![usize::MAX; 4 * c];
    let mut circles = Vec::new();
    for start in 0..4 * c {
        if circle_of[start] != usize::MAX {
            continue;
        }
        let id = circles.len();
        let mut darts = Vec::new();
        let mut d = start;
        loop {
            circle_of[d] = id;
            circle_of[dmap.pair(d)] = id;
            darts.push(d);
            let arrive = dmap.pair(d);
            d = splice_partner(state.label(crossing_of(arrive)), arrive);
            if d == start {
                break;
            }
        }
        let arcs = darts.iter().map(|&d| diagram.edge_of(d)).collect();
        let attachments = darts
            .iter()
            .map(|&d| {
                let k = crossing_of(d);
                (k, endpoint_index(state.label(k), position(d)))
            })
            .collect();
        circles.push(StateCircle {
            arcs,
            darts,
            attachments,
        });
    }

    let mut endpoints = vec![[Endpoint { circle: 0, position: 0 }; 2]; c];
    for (ci, circle) in circles.iter().enumerate() {
        for (pos, &(k, j)) in circle.attachments.iter().enumerate() {
            endpoints[k][j] = Endpoint {
                circle: ci,
                position: pos,
            };
        }
    }

    // Complementary regions: merge the two faces beside every segment.
    let mut uf = UnionFind::new(h_graph.face_count());
    for k in 0..c {
        uf.union(h_graph.face(seg(k, 0)), h_graph.face(seg(k, 1)));
    }
    let mut region_id = vec![usize::MAX; h_graph.face_count()];
    let mut region_count = 0;
    let segments = (0..c)
        .map(|k| {
            let root = uf.find(h_graph.face(seg(k, 0)));
            if region_id[root] == usize::MAX {
                region_id[root] = region_count;
                region_count += 1;
            }
            Segment {
                crossing: k,
                label: state.label(k),
                endpoints: endpoints[k],
                region: region_id[root],
            }
        })
        .collect();

    Ok(StateComplex {
        state: state.clone(),
        circles,
        segments,
        h_graph,
        circle_of,
        region_count,
    })
}

impl StateComplex {
    pub fn state(&self) -> &KauffmanState {
        &self.state
    }

    pub fn crossing_count(&self) -> usize {
        self.segments.len()
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> &[StateCircle] {
        &self.circles
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn h_graph(&self) -> &CombinatorialMap {
        &self.h_graph
    }

    /// `H` dart of segment `k` leaving endpoint `j`.
    pub fn segment_dart(&self, k: usize, j: usize) -> usize {
        4 * self.crossing_count() + 2 * k + j
    }

    pub fn is_segment_dart(&self, d: usize) -> bool {
        d >= 4 * self.crossing_count()
    }

    /// Segment owning an `H` dart that is a segment half.
    pub fn segment_of_dart(&self, d: usize) -> Option<usize> {
        self.is_segment_dart(d)
            .then(|| (d - 4 * self.crossing_count()) / 2)
    }

    /// State circle carrying an arm dart.
    pub fn circle_of_dart(&self, d: usize) -> Option<usize> {
        if self.is_segment_dart(d) || self.crossing_count() == 0 {
            None
        } else {
            Some(self.circle_of[d])
        }
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    /// Segment ids grouped by complementary region.
    pub fn complementary_regions(&self) -> Vec<Vec<usize>> {
        let mut regions = vec![Vec::new(); self.region_count];
        for s in &self.segments {
            regions[s.region].push(s.crossing);
        }
        regions
    }

    /// No segment has both endpoints on one circle.
    pub fn is_adequate(&self) -> bool {
        self.segments.iter().all(|s| !s.is_loop())
    }

    /// Every complementary region carries a single label.
    pub fn is_homogeneous(&self) -> bool {
        let mut seen: Vec<Option<Label>> = vec![None; self.region_count];
        self.segments.iter().all(|s| match seen[s.region] {
            None => {
                seen[s.region] = Some(s.label);
                true
            }
            Some(l) => l == s.label,
        })
    }

    /// Euler characteristic of the state surface: disks minus bands.
    pub fn surface_euler_characteristic(&self) -> i64 {
        self.circle_count() as i64 - self.crossing_count() as i64
    }
}

/// JSON view of a state complex.
#[derive(Debug, Clone, Serialize)]
pub struct StateComplexJson {
    pub state: String,
    pub circles: Vec<CircleJson>,
    pub segments: Vec<Segment>,
    pub region_count: usize,
    pub adequate: bool,
    pub homogeneous: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CircleJson {
    /// Canonical PD labels of the arcs traversed.
    pub arcs: Vec<u64>,
    pub attachments: Vec<(usize, usize)>,
}

impl StateComplexJson {
    pub fn new(diagram: &LinkDiagram, sc: &StateComplex) -> Self {
        let labels = diagram.pd_tuples();
        let edge_label = |e: usize| {
            (0..diagram.crossing_count() * 4)
                .find(|&d| diagram.edge_of(d) == e)
                .map(|d| labels[crossing_of(d)][position(d)])
                .unwrap_or(0)
        };
        Self {
            state: sc.state.to_string(),
            circles: sc
                .circles
                .iter()
                .map(|c| CircleJson {
                    arcs: c.arcs.iter().map(|&e| edge_label(e)).collect(),
                    attachments: c.attachments.clone(),
                })
                .collect(),
            segments: sc.segments.clone(),
            region_count: sc.region_count,
            adequate: sc.is_adequate(),
            homogeneous: sc.is_homogeneous(),
        }
    }
}

/// The oriented resolution at every crossing: incoming strands join the
/// adjacent outgoing ones.
pub fn seifert_state(diagram: &LinkDiagram, orientation: &Orientation) -> KauffmanState {
    KauffmanState::new(
        diagram
            .crossings()
            .map(|x| {
                let d0 = diagram.is_incoming(x.darts[0], orientation);
                let d1 = diagram.is_incoming(x.darts[1], orientation);
                if d0 != d1 {
                    Label::A
                } else {
                    Label::B
                }
            })
            .collect(),
    )
}
