//! Combinatorial maps: a rotation system plus an edge pairing on a finite dart set.
//!
//! Darts are `0..n`. `rotation[d]` is the next dart counterclockwise around the
//! vertex of `d`, `pairing[d]` is the other half of the edge of `d`. Faces are
//! the orbits of `d -> rotation[pairing[d]]`.

use serde::Serialize;
use thiserror::Error;

use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("rotation and pairing have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("rotation is not a permutation")]
    NotPermutation,
    #[error("pairing is not an involution at dart {0}")]
    NotInvolution(usize),
    #[error("pairing fixes dart {0}")]
    FixedPoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialMap {
    rotation: Vec<usize>,
    pairing: Vec<usize>,
    #[serde(skip)]
    vertex_of: Vec<usize>,
    #[serde(skip)]
    vertex_count: usize,
    #[serde(skip)]
    face_of: Vec<usize>,
    #[serde(skip)]
    face_count: usize,
}

/// Labels the orbits of a permutation by first occurrence.
fn orbit_labels(perm: &[usize]) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while label[d] == usize::MAX {
            label[d] = count;
            d = perm[d];
        }
        count += 1;
    }
    (label, count)
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl CombinatorialMap {
    pub fn new(rotation: Vec<usize>, pairing: Vec<usize>) -> Result<Self, MapError> {
        if rotation.len() != pairing.len() {
            return Err(MapError::LengthMismatch(rotation.len(), pairing.len()));
        }
        if !is_permutation(&rotation) {
            return Err(MapError::NotPermutation);
        }
        for (d, &e) in pairing.iter().enumerate() {
            if e >= pairing.len() || pairing[e] != d {
                return Err(MapError::NotInvolution(d));
            }
            if e == d {
                return Err(MapError::FixedPoint(d));
            }
        }
        let (vertex_of, vertex_count) = orbit_labels(&rotation);
        let phi: Vec<usize> = (0..rotation.len()).map(|d| rotation[pairing[d]]).collect();
        let (face_of, face_count) = orbit_labels(&phi);
        Ok(Self {
            rotation,
            pairing,
            vertex_of,
            vertex_count,
            face_of,
            face_count,
        })
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), Vec::new()).expect("empty map is valid")
    }

    pub fn dart_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    #[inline]
    pub fn rotate(&self, d: usize) -> usize {
        self.rotation[d]
    }

    #[inline]
    pub fn pair(&self, d: usize) -> usize {
        self.pairing[d]
    }

    /// Successor of `d` along its face.
    #[inline]
    pub fn face_next(&self, d: usize) -> usize {
        self.rotation[self.pairing[d]]
    }

    #[inline]
    pub fn vertex(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    #[inline]
    pub fn face(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    fn orbits(&self, next: impl Fn(usize) -> usize, count: usize, label: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); count];
        let mut done = vec![false; count];
        for start in 0..self.dart_count() {
            let id = label[start];
            if done[id] {
                continue;
            }
            done[id] = true;
            let mut d = start;
            loop {
                out[id].push(d);
                d = next(d);
                if d == start {
                    break;
                }
            }
        }
        out
    }

    /// Vertex orbits, each listed counterclockwise from its smallest dart.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.orbits(|d| self.rotate(d), self.vertex_count, &self.vertex_of)
    }

    /// Face orbits, each starting at its smallest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.orbits(|d| self.face_next(d), self.face_count, &self.face_of)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&x| x == v).count()
    }

    /// Connected component of every dart, with the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.dart_count());
        for d in 0..self.dart_count() {
            uf.union(d, self.rotation[d]);
            uf.union(d, self.pairing[d]);
        }
        uf.labels()
    }

    /// `V - E + F` for each connected component.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        let (comp, k) = self.components();
        let mut chi = vec![0i64; k];
        let mut vseen = vec![false; self.vertex_count];
        let mut fseen = vec![false; self.face_count];
        for d in 0..self.dart_count() {
            let c = comp[d];
            if !vseen[self.vertex_of[d]] {
                vseen[self.vertex_of[d]] = true;
                chi[c] += 1;
            }
            if !fseen[self.face_of[d]] {
                fseen[self.face_of[d]] = true;
                chi[c] += 1;
            }
            if d < self.pairing[d] {
                chi[c] -= 1;
            }
        }
        chi
    }

    /// True when every component is a sphere embedding.
    pub fn is_planar(&self) -> bool {
        self.euler_characteristics().iter().all(|&x| x == 2)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Proper 2-coloring of the faces (adjacent across every edge), if one exists.
    pub fn face_two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.face_count];
        let mut adjacency = vec![Vec::new(); self.face_count];
        for d in 0..self.dart_count() {
            let (a, b) = (self.face_of[d], self.face_of[self.pairing[d]]);
            adjacency[a].push(b);
        }
        for start in 0..self.face_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                let cf = color[f].unwrap();
                for &g in &adjacency[f] {
                    match color[g] {
                        None => {
                            color[g] = Some(!cf);
                            stack.push(g);
                        }
                        Some(cg) if cg == cf => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Orientation-preserving isomorphism test for connected maps.
    pub fn is_isomorphic(&self, other: &CombinatorialMap) -> bool {
        let n = self.dart_count();
        if n != other.dart_count()
            || self.vertex_count != other.vertex_count
            || self.face_count != other.face_count
        {
            return false;
        }
        if n == 0 {
            return true;
        }
        if !self.is_connected() || !other.is_connected() {
            return false;
        }
        (0..n).any(|root| self.rooted_match(other, root))
    }

    fn rooted_match(&self, other: &CombinatorialMap, root: usize) -> bool {
        let n = self.dart_count();
        let mut fwd = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fwd[0] = root;
        used[root] = true;
        let mut stack = vec![0usize];
        while let Some(d) = stack.pop() {
            let img = fwd[d];
            for (next, next_img) in [
                (self.rotate(d), other.rotate(img)),
                (self.pair(d), other.pair(img)),
            ] {
                if fwd[next] == usize::MAX {
                    if used[next_img] {
                        return false;
                    }
                    fwd[next] = next_img;
                    used[next_img] = true;
                    stack.push(next);
                } else if fwd[next] != next_img {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Single vertex with two loops drawn as a figure-eight curve.
    fn figure_eight_curve() -> CombinatorialMap {
        CombinatorialMap::new(vec![1, 2, 3, 0], vec![1, 0, 3, 2]).unwrap()
    }

    #[test]
    fn counts_and_euler() {
        let m = figure_eight_curve();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.face_count(), 3);
        assert_eq!(m.euler_characteristics(), vec![2]);
        assert!(m.is_planar());
        assert!(m.face_two_coloring().is_some());
    }

    #[test]
    fn torus_embedding_is_not_planar() {
        // One vertex, two loops interleaved around it: the torus.
        let m = CombinatorialMap::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.euler_characteristics(), vec![0]);
        assert!(!m.is_planar());
    }

    #[test]
    fn rejects_bad_pairings() {
        assert_eq!(
            CombinatorialMap::new(vec![0, 1], vec![0, 1]),
            Err(MapError::FixedPoint(0))
        );
        assert!(matches!(
            CombinatorialMap::new(vec![1, 2, 0], vec![1, 2, 0]),
            Err(MapError::NotInvolution(_))
        ));
        assert_eq!(
            CombinatorialMap::new(vec![0, 0], vec![1, 0]),
            Err(MapError::NotPermutation)
        );
    }

    #[test]
    fn isomorphism_ignores_dart_names() {
        let m = figure_eight_curve();
        let relabeled = CombinatorialMap::new(vec![1, 2, 3, 0], vec![3, 2, 1, 0]).unwrap();
        assert!(m.is_isomorphic(&relabeled));
        let torus = CombinatorialMap::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap();
        assert!(!m.is_isomorphic(&torus));
    }
}
