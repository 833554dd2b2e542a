//! Link diagrams as 4-valent combinatorial maps with over/under data.
//!
//! Crossing `k` owns darts `4k..4k+4`. Dart `4k+p` sits at position `p`,
//! positions running counterclockwise from the incoming understrand, so
//! positions 0 and 2 carry the understrand and 1 and 3 the overstrand.

mod braid;
mod builder;
mod pd;

pub use braid::BraidWord;
pub use builder::{DiagramBuilder, Slot};
pub use pd::{parse_pd, PdJson};

use serde::Serialize;
use thiserror::Error;

use crate::map::{CombinatorialMap, MapError};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedCode(String),
    #[error("arc label {label} appears {count} time(s); every label must appear exactly twice")]
    ArcMultiplicity { label: u64, count: usize },
    #[error("diagram is not planar (Euler characteristic {euler} on a component)")]
    NonPlanar { euler: i64 },
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("primeness is undefined for a diagram without crossings")]
    ZeroCrossings,
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("orientation covers {given} components but the diagram has {expected}")]
    OrientationMismatch { given: usize, expected: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// One crossing: four darts counterclockwise from the incoming understrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub id: usize,
    pub darts: [usize; 4],
}

impl Crossing {
    fn new(id: usize) -> Self {
        Self {
            id,
            darts: [4 * id, 4 * id + 1, 4 * id + 2, 4 * id + 3],
        }
    }

    pub fn understrand(&self) -> (usize, usize) {
        (self.darts[0], self.darts[2])
    }

    pub fn overstrand(&self) -> (usize, usize) {
        (self.darts[1], self.darts[3])
    }

    /// Dart pairs joined by the A-smoothing: the A-regions sit between
    /// positions 1,2 and 3,0, so the strands reconnect as (0,1) and (2,3).
    pub fn a_pairs(&self) -> [(usize, usize); 2] {
        [(self.darts[0], self.darts[1]), (self.darts[2], self.darts[3])]
    }

    /// Dart pairs joined by the B-smoothing.
    pub fn b_pairs(&self) -> [(usize, usize); 2] {
        [(self.darts[3], self.darts[0]), (self.darts[1], self.darts[2])]
    }
}

#[inline]
pub(crate) fn position(d: usize) -> usize {
    d & 3
}

#[inline]
pub(crate) fn crossing_of(d: usize) -> usize {
    d >> 2
}

/// The dart across the crossing from `d`, on the same strand.
#[inline]
pub fn opposite(d: usize) -> usize {
    (d & !3) | ((d + 2) & 3)
}

/// Per-component direction relative to a diagram's reference orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    reversed: Vec<bool>,
}

impl Orientation {
    pub fn reference(diagram: &LinkDiagram) -> Self {
        Self {
            reversed: vec![false; diagram.component_count()],
        }
    }

    pub fn from_reversals(diagram: &LinkDiagram, reversed: Vec<bool>) -> Result<Self, DiagramError> {
        if reversed.len() != diagram.component_count() {
            return Err(DiagramError::OrientationMismatch {
                given: reversed.len(),
                expected: diagram.component_count(),
            });
        }
        Ok(Self { reversed })
    }

    /// All `2^components` orientations, reference first.
    pub fn all(diagram: &LinkDiagram) -> Vec<Self> {
        let n = diagram.component_count();
        (0..1u64 << n)
            .map(|mask| Self {
                reversed: (0..n).map(|i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn reversed(&self) -> &[bool] {
        &self.reversed
    }

    pub fn reverse_all(&self) -> Self {
        Self {
            reversed: self.reversed.iter().map(|r| !r).collect(),
        }
    }
}

/// A connected, planar link diagram.
///
/// The zero-crossing diagram is the round unknot: one component, no darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    /// Edge id at each position of each crossing.
    arcs: Vec<[usize; 4]>,
    map: CombinatorialMap,
    /// Darts of each component in traversal order: incoming, outgoing, incoming, ...
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    /// Direction of every dart under the reference orientation.
    incoming: Vec<bool>,
}

impl LinkDiagram {
    pub fn round_unknot() -> Self {
        Self {
            arcs: Vec::new(),
            map: CombinatorialMap::empty(),
            components: vec![Vec::new()],
            component_of: Vec::new(),
            incoming: Vec::new(),
        }
    }

    /// Builds a diagram from PD tuples, labels arbitrary but each used twice.
    ///
    /// Components passing under some crossing take their direction from the
    /// understrand convention. A component that is over at every crossing is
    /// oriented so its labels increase along the strand, when they do.
    pub fn from_pd(tuples: &[[u64; 4]]) -> Result<Self, DiagramError> {
        if tuples.is_empty() {
            return Err(DiagramError::MalformedCode("no crossings".into()));
        }
        let mut seen: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
        for (k, t) in tuples.iter().enumerate() {
            for (p, &label) in t.iter().enumerate() {
                seen.entry(label).or_default().push(4 * k + p);
            }
        }
        let n = 4 * tuples.len();
        let mut pairing = vec![usize::MAX; n];
        let mut arcs = vec![[0usize; 4]; tuples.len()];
        for (edge, (&label, darts)) in seen.iter().enumerate() {
            if darts.len() != 2 {
                return Err(DiagramError::ArcMultiplicity {
                    label,
                    count: darts.len(),
                });
            }
            pairing[darts[0]] = darts[1];
            pairing[darts[1]] = darts[0];
            for &d in darts {
                arcs[crossing_of(d)][position(d)] = edge;
            }
        }
        let label_of = |d: usize| tuples[crossing_of(d)][position(d)];
        Self::assemble(arcs, pairing, |comp: &[usize]| {
            // Over-only component: choose a start dart by label succession.
            let d0 = *comp.iter().min().unwrap();
            let l_in = label_of(d0);
            let l_out = label_of(opposite(d0));
            let labels: Vec<u64> = comp.iter().map(|&d| label_of(d)).collect();
            let (lo, hi) = (*labels.iter().min().unwrap(), *labels.iter().max().unwrap());
            let forward = l_out == l_in + 1 || (l_in == hi && l_out == lo && hi != lo);
            let backward = l_in == l_out + 1 || (l_out == hi && l_in == lo && hi != lo);
            if backward && !forward {
                opposite(d0)
            } else {
                d0
            }
        })
    }

    /// Shared constructor: validates the map and orients every component.
    /// `fallback_start` picks an incoming dart for components with no understrand.
    fn assemble(
        arcs: Vec<[usize; 4]>,
        pairing: Vec<usize>,
        fallback_start: impl Fn(&[usize]) -> usize,
    ) -> Result<Self, DiagramError> {
        let n = pairing.len();
        let rotation: Vec<usize> = (0..n).map(|d| (d & !3) | ((d + 1) & 3)).collect();
        let map = CombinatorialMap::new(rotation, pairing)?;
        if let Some(&euler) = map.euler_characteristics().iter().find(|&&x| x != 2) {
            return Err(DiagramError::NonPlanar { euler });
        }
        if !map.is_connected() {
            return Err(DiagramError::Disconnected);
        }

        // Strand components: darts joined across crossings and along edges.
        let mut uf = UnionFind::new(n);
        for d in 0..n {
            uf.union(d, opposite(d));
            uf.union(d, map.pair(d));
        }
        let (raw_comp, comp_count) = uf.labels();
        let mut members = vec![Vec::new(); comp_count];
        for d in 0..n {
            members[raw_comp[d]].push(d);
        }

        let mut incoming = vec![false; n];
        let mut components = Vec::with_capacity(comp_count);
        for comp in &members {
            let start = comp
                .iter()
                .copied()
                .filter(|&d| position(d) == 0)
                .min()
                .unwrap_or_else(|| fallback_start(comp));
            let mut order = Vec::with_capacity(comp.len());
            let mut d = start;
            loop {
                incoming[d] = true;
                order.push(d);
                order.push(opposite(d));
                d = map.pair(opposite(d));
                if d == start {
                    break;
                }
            }
            debug_assert_eq!(order.len(), comp.len());
            components.push(order);
        }
        for d in 0..n {
            let ok = match position(d) {
                0 => incoming[d],
                2 => !incoming[d],
                _ => true,
            };
            if !ok {
                return Err(DiagramError::MalformedCode(format!(
                    "understrand at crossing {} is not consistently oriented",
                    crossing_of(d)
                )));
            }
        }

        // Canonical traversal start: the smallest incoming dart; components
        // ordered by that dart.
        for order in components.iter_mut() {
            let (i, _) = order
                .iter()
                .enumerate()
                .filter(|(_, &d)| incoming[d])
                .min_by_key(|(_, &d)| d)
                .unwrap();
            order.rotate_left(i);
        }
        components.sort_by_key(|c| c[0]);
        let mut component_of = vec![0; n];
        for (i, c) in components.iter().enumerate() {
            for &d in c {
                component_of[d] = i;
            }
        }
        Ok(Self {
            arcs,
            map,
            components,
            component_of,
            incoming,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn crossing(&self, id: usize) -> Crossing {
        assert!(id < self.crossing_count());
        Crossing::new(id)
    }

    pub fn crossings(&self) -> impl Iterator<Item = Crossing> + '_ {
        (0..self.crossing_count()).map(Crossing::new)
    }

    pub fn is_round_unknot(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossing_count()
    }

    /// Edge id at a dart.
    pub fn edge_of(&self, d: usize) -> usize {
        self.arcs[crossing_of(d)][position(d)]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, d: usize) -> usize {
        self.component_of[d]
    }

    /// Whether `d` points into its crossing under `orientation`.
    pub fn is_incoming(&self, d: usize, orientation: &Orientation) -> bool {
        self.incoming[d] ^ orientation.reversed[self.component_of[d]]
    }

    fn check_orientation(&self, orientation: &Orientation) -> Result<(), DiagramError> {
        if orientation.reversed.len() != self.component_count() {
            return Err(DiagramError::OrientationMismatch {
                given: orientation.reversed.len(),
                expected: self.component_count(),
            });
        }
        Ok(())
    }

    /// +1 or -1. Positive when the incoming overstrand sits clockwise-adjacent
    /// to the incoming understrand, i.e. the overstrand runs lower-left to
    /// upper-right with both strands pointing up.
    pub fn crossing_sign(&self, k: usize, orientation: &Orientation) -> Result<i32, DiagramError> {
        self.check_orientation(orientation)?;
        let c = self.crossing(k);
        let u_in = if self.is_incoming(c.darts[0], orientation) { 0 } else { 2 };
        let o_in = if self.is_incoming(c.darts[1], orientation) { 1 } else { 3 };
        Ok(if o_in == (u_in + 3) % 4 { 1 } else { -1 })
    }

    pub fn writhe(&self, orientation: &Orientation) -> Result<i64, DiagramError> {
        let mut w = 0i64;
        for k in 0..self.crossing_count() {
            w += i64::from(self.crossing_sign(k, orientation)?);
        }
        Ok(w)
    }

    /// Swaps over and under at every crossing. Positions shift by one so the
    /// new understrand (the old overstrand) again starts at position 0.
    pub fn mirror(&self) -> Self {
        if self.is_round_unknot() {
            return self.clone();
        }
        let n = self.map.dart_count();
        // Old position 1 becomes position 0 when it is incoming, else old 3 does.
        let shift: Vec<usize> = (0..self.crossing_count())
            .map(|k| if self.incoming[4 * k + 1] { 1 } else { 3 })
            .collect();
        let new_dart = |d: usize| {
            let k = crossing_of(d);
            4 * k + (position(d) + 4 - shift[k]) % 4
        };
        let mut arcs = vec![[0usize; 4]; self.crossing_count()];
        let mut pairing = vec![0; n];
        let mut incoming = vec![false; n];
        for d in 0..n {
            let nd = new_dart(d);
            arcs[crossing_of(nd)][position(nd)] = self.edge_of(d);
            pairing[nd] = new_dart(self.map.pair(d));
            incoming[nd] = self.incoming[d];
        }
        let rotation: Vec<usize> = (0..n).map(|d| (d & !3) | ((d + 1) & 3)).collect();
        let map = CombinatorialMap::new(rotation, pairing).expect("mirror preserves the map");
        let mut components: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| c.iter().map(|&d| new_dart(d)).collect())
            .collect();
        for order in components.iter_mut() {
            let (i, _) = order
                .iter()
                .enumerate()
                .filter(|(_, &d)| incoming[d])
                .min_by_key(|(_, &d)| d)
                .unwrap();
            order.rotate_left(i);
        }
        components.sort_by_key(|c| c[0]);
        let mut component_of = vec![0; n];
        for (i, c) in components.iter().enumerate() {
            for &d in c {
                component_of[d] = i;
            }
        }
        Self {
            arcs,
            map,
            components,
            component_of,
            incoming,
        }
    }

    /// Along every component, crossings alternate over and under.
    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|c| {
            let ins: Vec<bool> = c.iter().step_by(2).map(|&d| position(d).is_multiple_of(2)).collect();
            (0..ins.len()).all(|i| ins[i] != ins[(i + 1) % ins.len()])
        })
    }

    /// A crossing is nugatory when one face meets it at two opposite corners.
    pub fn is_nugatory(&self, k: usize) -> bool {
        let corner = |p: usize| self.map.face(4 * k + (p + 1) % 4);
        corner(0) == corner(2) || corner(1) == corner(3)
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.crossing_count()).all(|k| !self.is_nugatory(k))
    }

    /// Diagram primeness: no simple closed curve meeting the diagram in two
    /// edge points has crossings on both sides, and no crossing is nugatory.
    pub fn is_prime(&self) -> Result<bool, DiagramError> {
        if self.is_round_unknot() {
            return Err(DiagramError::ZeroCrossings);
        }
        if !self.is_reduced() {
            return Ok(false);
        }
        Ok(map_is_prime(&self.map))
    }

    /// Canonical PD tuples: labels `1..=2c` assigned in traversal order.
    pub fn pd_tuples(&self) -> Vec<[u64; 4]> {
        let labels = self.canonical_labels();
        (0..self.crossing_count())
            .map(|k| std::array::from_fn(|p| labels[self.edge_of(4 * k + p)]))
            .collect()
    }

    /// Canonical label of each edge: components in order, each starting with
    /// the edge entering its first dart.
    fn canonical_labels(&self) -> Vec<u64> {
        let mut labels = vec![0u64; self.edge_count()];
        let mut next = 1u64;
        for c in &self.components {
            for &d in c.iter().step_by(2) {
                labels[self.edge_of(d)] = next;
                next += 1;
            }
        }
        labels
    }

    /// Edge labels of each component in traversal order.
    pub fn component_labels(&self) -> Vec<Vec<u64>> {
        let labels = self.canonical_labels();
        self.components
            .iter()
            .map(|c| c.iter().step_by(2).map(|&d| labels[self.edge_of(d)]).collect())
            .collect()
    }
}

/// No vertex of a 4-valent map meets one face at two opposite corners.
pub(crate) fn map_is_reduced(map: &CombinatorialMap) -> bool {
    map.vertices().iter().all(|v| {
        v.len() != 4 || (map.face(v[0]) != map.face(v[2]) && map.face(v[1]) != map.face(v[3]))
    })
}

/// Two-edge-cut primeness for a connected 4-valent map (see [`LinkDiagram::is_prime`]).
pub(crate) fn map_is_prime(map: &CombinatorialMap) -> bool {
    let edges: Vec<usize> = (0..map.dart_count()).filter(|&d| d < map.pair(d)).collect();
    let faces_of = |d: usize| {
        let (a, b) = (map.face(d), map.face(map.pair(d)));
        (a.min(b), a.max(b))
    };
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[i + 1..] {
            if faces_of(e1) != faces_of(e2) {
                continue;
            }
            let mut uf = UnionFind::new(map.vertex_count());
            for &e in &edges {
                if e != e1 && e != e2 {
                    uf.union(map.vertex(e), map.vertex(map.pair(e)));
                }
            }
            if uf.labels().1 > 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> LinkDiagram {
        parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        let m = d.map();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (3, 6, 5));
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        // Labels 1..6 follow the strand.
        assert_eq!(d.component_labels(), vec![vec![1, 2, 3, 4, 5, 6]]);
    }

    #[test]
    fn knot_atlas_trefoil_is_left_handed() {
        let d = trefoil();
        let o = Orientation::reference(&d);
        assert_eq!(d.writhe(&o).unwrap(), -3);
        assert_eq!(d.writhe(&o.reverse_all()).unwrap(), -3);
        assert_eq!(d.mirror().writhe(&Orientation::reference(&d)).unwrap(), 3);
    }

    #[test]
    fn mirror_is_an_involution() {
        let d = trefoil();
        assert_eq!(d.mirror().mirror(), d);
        assert_ne!(d.mirror(), d);
    }

    #[test]
    fn primeness() {
        assert!(trefoil().is_prime().unwrap());
        assert_eq!(
            LinkDiagram::round_unknot().is_prime(),
            Err(DiagramError::ZeroCrossings)
        );
        let kink = BraidWord::new(2, vec![1]).unwrap().closure().unwrap();
        assert!(kink.is_nugatory(0));
        assert!(!kink.is_prime().unwrap());
    }

    #[test]
    fn connected_sum_is_not_prime() {
        // Two trefoils spliced along arcs 1 and 7.
        let d = parse_pd(
            "X[7,4,2,5],X[3,6,4,1],X[5,2,6,3],X[1,10,8,11],X[9,12,10,7],X[11,8,12,9]",
        )
        .unwrap();
        assert_eq!(d.component_count(), 1);
        assert!(d.is_reduced());
        assert!(!d.is_prime().unwrap());
        assert!(!d.mirror().is_prime().unwrap());
    }

    #[test]
    fn orientation_mismatch_is_reported() {
        let d = trefoil();
        let err = Orientation::from_reversals(&d, vec![false, true]).unwrap_err();
        assert_eq!(err, DiagramError::OrientationMismatch { given: 2, expected: 1 });
    }
}
