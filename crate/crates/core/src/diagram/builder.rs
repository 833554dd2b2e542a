//! Assembles diagrams from crossings drawn with compass slots, then emits
//! them through the PD constructor so every diagram shares one code path.

use super::{DiagramError, LinkDiagram};
use crate::union_find::UnionFind;

/// Corner of a crossing, listed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    NE = 0,
    NW = 1,
    SW = 2,
    SE = 3,
}

/// Which diagonal of a crossing carries the understrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Under {
    /// SW to NE diagonal.
    Rising,
    /// NW to SE diagonal.
    Falling,
}

#[derive(Debug, Clone, Default)]
pub struct DiagramBuilder {
    under: Vec<Under>,
    link: Vec<usize>,
    incoming_hint: Vec<bool>,
}

const UNSET: usize = usize::MAX;

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_crossing(&mut self, under: Under) -> usize {
        self.under.push(under);
        self.link.extend([UNSET; 4]);
        self.incoming_hint.extend([false; 4]);
        self.under.len() - 1
    }

    fn dart(crossing: usize, slot: Slot) -> usize {
        4 * crossing + slot as usize
    }

    pub fn connect(&mut self, a: (usize, Slot), b: (usize, Slot)) {
        let (da, db) = (Self::dart(a.0, a.1), Self::dart(b.0, b.1));
        assert!(
            self.link[da] == UNSET && self.link[db] == UNSET,
            "slot connected twice"
        );
        self.link[da] = db;
        self.link[db] = da;
    }

    /// Requests that the strand enter the crossing at this slot.
    pub fn mark_incoming(&mut self, crossing: usize, slot: Slot) {
        self.incoming_hint[Self::dart(crossing, slot)] = true;
    }

    pub fn build(self) -> Result<LinkDiagram, DiagramError> {
        let n = self.link.len();
        if n == 0 {
            return Ok(LinkDiagram::round_unknot());
        }
        if let Some(d) = self.link.iter().position(|&l| l == UNSET) {
            return Err(DiagramError::MalformedCode(format!(
                "slot {} of crossing {} is not connected",
                d % 4,
                d / 4
            )));
        }
        let opp = |d: usize| (d & !3) | ((d + 2) & 3);
        let mut uf = UnionFind::new(n);
        for d in 0..n {
            uf.union(d, opp(d));
            uf.union(d, self.link[d]);
        }
        let (comp, count) = uf.labels();
        let mut start = vec![UNSET; count];
        for d in 0..n {
            let c = comp[d];
            if self.incoming_hint[d] && start[c] == UNSET {
                start[c] = d;
            }
        }
        for d in 0..n {
            if start[comp[d]] == UNSET {
                start[comp[d]] = d;
            }
        }

        // Orient and label edges in traversal order.
        let mut incoming = vec![false; n];
        let mut label = vec![0u64; n];
        let mut next_label = 1u64;
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&c| start[c]);
        for c in order {
            let s = start[c];
            let mut d = s;
            loop {
                incoming[d] = true;
                label[d] = next_label;
                label[self.link[d]] = next_label;
                next_label += 1;
                d = self.link[opp(d)];
                if d == s {
                    break;
                }
            }
        }
        if let Some(d) = (0..n).find(|&d| self.incoming_hint[d] && !incoming[d]) {
            return Err(DiagramError::MalformedCode(format!(
                "conflicting direction hints on crossing {}",
                d / 4
            )));
        }

        let tuples: Vec<[u64; 4]> = self
            .under
            .iter()
            .enumerate()
            .map(|(k, under)| {
                let (a, b) = match under {
                    Under::Rising => (Slot::SW, Slot::NE),
                    Under::Falling => (Slot::NW, Slot::SE),
                };
                let first = if incoming[Self::dart(k, a)] { a } else { b } as usize;
                std::array::from_fn(|p| label[4 * k + (first + p) % 4])
            })
            .collect();
        LinkDiagram::from_pd(&tuples)
    }
}

impl LinkDiagram {
    /// Standard pretzel diagram: one vertical twist column per entry, with
    /// `|a_i|` crossings; the sign of `a_i` picks the handedness of the column.
    pub fn pretzel(columns: &[i32]) -> Result<Self, DiagramError> {
        if columns.is_empty() || columns.contains(&0) {
            return Err(DiagramError::MalformedCode(
                "pretzel columns must be nonempty and nonzero".into(),
            ));
        }
        let mut b = DiagramBuilder::new();
        let mut tops = Vec::new();
        let mut bottoms = Vec::new();
        for &a in columns {
            let under = if a > 0 { Under::Falling } else { Under::Rising };
            let ids: Vec<usize> = (0..a.unsigned_abs()).map(|_| b.add_crossing(under)).collect();
            for w in ids.windows(2) {
                b.connect((w[0], Slot::SW), (w[1], Slot::NW));
                b.connect((w[0], Slot::SE), (w[1], Slot::NE));
            }
            tops.push(ids[0]);
            bottoms.push(*ids.last().unwrap());
        }
        let k = columns.len();
        for i in 0..k {
            let j = (i + 1) % k;
            b.connect((tops[i], Slot::NE), (tops[j], Slot::NW));
            b.connect((bottoms[i], Slot::SE), (bottoms[j], Slot::SW));
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretzel_one_one_one_is_a_trefoil_diagram() {
        let d = LinkDiagram::pretzel(&[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_alternating());
        assert!(d.is_prime().unwrap());
    }

    #[test]
    fn pretzel_component_counts() {
        // Odd columns only: a knot when the column count is odd.
        assert_eq!(LinkDiagram::pretzel(&[3, 3, 3]).unwrap().component_count(), 1);
        // Two columns of odd length: a two-bridge link of two components.
        assert_eq!(LinkDiagram::pretzel(&[3, 3]).unwrap().component_count(), 2);
        // One even column makes a knot.
        assert_eq!(LinkDiagram::pretzel(&[-2, 3, 7]).unwrap().component_count(), 1);
        assert!(!LinkDiagram::pretzel(&[-2, 3, 7]).unwrap().is_alternating());
    }

    #[test]
    fn unconnected_slot_is_rejected() {
        let mut b = DiagramBuilder::new();
        let c = b.add_crossing(Under::Rising);
        b.connect((c, Slot::NE), (c, Slot::NW));
        assert!(matches!(b.build(), Err(DiagramError::MalformedCode(_))));
    }
}
