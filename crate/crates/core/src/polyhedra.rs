//! Decomposition of a homogeneous adequate state into polyhedral regions.
//!
//! Non-prime arcs live inside faces of `H`: an arc joins two sides of a face
//! that run along the same state circle, and is admissible when both halves of
//! the face keep at least one segment. Faces are stored as cyclic lists of
//! sides (darts of `H`) and chords (arcs already chosen), so cutting along an
//! arc is a polygon split. Regions are then the subfaces glued across
//! segments, and each region's skeleton is read off by following the boundary
//! from one segment to the next.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{map_is_prime, map_is_reduced, position, LinkDiagram};
use crate::kauffman::{apply_state, KauffmanState, Label, StateComplex, StateError};
use crate::map::{CombinatorialMap, MapError};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedraError {
    #[error("state is not adequate and homogeneous (adequate: {adequate}, homogeneous: {homogeneous})")]
    HypothesesNotMet { adequate: bool, homogeneous: bool },
    #[error("region {region} does not give a prime skeleton")]
    RegionNotPrime { region: usize },
    #[error("skeleton of region {region} is not a map: {source}")]
    Map { region: usize, source: MapError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum FaceItem {
    /// A dart of `H`; for circle darts only part of the edge may be present.
    Side(usize),
    Chord(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonPrimeArc {
    pub circle: usize,
    /// Gaps of the circle holding the endpoints; gap `i` runs from attachment `i` to `i + 1`.
    pub gaps: [usize; 2],
    /// Complementary region the arc runs through, which fixes the side of the circle.
    pub region: usize,
}

/// Arcs together with the subfaces they cut `H` into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcSystem {
    pub arcs: Vec<NonPrimeArc>,
    pub faces: Vec<Vec<FaceItem>>,
}

fn check_hypotheses(sc: &StateComplex) -> Result<(), PolyhedraError> {
    let (adequate, homogeneous) = (sc.is_adequate(), sc.is_homogeneous());
    if adequate && homogeneous {
        Ok(())
    } else {
        Err(PolyhedraError::HypothesesNotMet {
            adequate,
            homogeneous,
        })
    }
}

/// Gap index of every circle dart of `H`.
fn gap_table(sc: &StateComplex) -> Vec<usize> {
    let h = sc.h_graph();
    let mut gap = vec![usize::MAX; 4 * sc.crossing_count()];
    for circle in sc.circles() {
        for (i, &d) in circle.darts.iter().enumerate() {
            gap[d] = i;
            gap[h.pair(d)] = i;
        }
    }
    gap
}

fn has_segment(sc: &StateComplex, items: &[FaceItem]) -> bool {
    items
        .iter()
        .any(|it| matches!(*it, FaceItem::Side(d) if sc.is_segment_dart(d)))
}

/// First admissible arc in canonical order: circles by id, then faces, then
/// side pairs by position along the face.
fn find_arc(sc: &StateComplex, faces: &[Vec<FaceItem>]) -> Option<(usize, usize, usize)> {
    for circle in 0..sc.circle_count() {
        for (fi, face) in faces.iter().enumerate() {
            let sides: Vec<usize> = face
                .iter()
                .enumerate()
                .filter(|(_, it)| matches!(**it, FaceItem::Side(d) if sc.circle_of_dart(d) == Some(circle)))
                .map(|(i, _)| i)
                .collect();
            for (a, &x) in sides.iter().enumerate() {
                for &y in &sides[a + 1..] {
                    let inner = &face[x + 1..y];
                    let outer: Vec<FaceItem> =
                        face[y + 1..].iter().chain(&face[..x]).copied().collect();
                    if has_segment(sc, inner) && has_segment(sc, &outer) {
                        return Some((fi, x, y));
                    }
                }
            }
        }
    }
    None
}

/// A maximal collection of non-prime arcs, chosen greedily in canonical order.
pub fn maximal_nonprime_arcs(sc: &StateComplex) -> Result<ArcSystem, PolyhedraError> {
    check_hypotheses(sc)?;
    if sc.crossing_count() == 0 {
        return Ok(ArcSystem {
            arcs: Vec::new(),
            faces: Vec::new(),
        });
    }
    let h = sc.h_graph();
    let gap = gap_table(sc);
    let mut faces: Vec<Vec<FaceItem>> = h
        .faces()
        .into_iter()
        .map(|f| f.into_iter().map(FaceItem::Side).collect())
        .collect();
    let mut arcs = Vec::new();
    while let Some((fi, x, y)) = find_arc(sc, &faces) {
        let face = std::mem::take(&mut faces[fi]);
        let id = arcs.len();
        let (FaceItem::Side(dx), FaceItem::Side(dy)) = (face[x], face[y]) else {
            unreachable!("arc endpoints are sides")
        };
        let region = face
            .iter()
            .find_map(|it| match *it {
                FaceItem::Side(d) => sc.segment_of_dart(d),
                FaceItem::Chord(_) => None,
            })
            .map(|k| sc.segments()[k].region)
            .expect("split faces carry segments");
        let mut gaps = [gap[dx], gap[dy]];
        gaps.sort_unstable();
        arcs.push(NonPrimeArc {
            circle: sc.circle_of_dart(dx).expect("circle dart"),
            gaps,
            region,
        });
        let mut first: Vec<FaceItem> = face[x..=y].to_vec();
        first.push(FaceItem::Chord(id));
        let mut second: Vec<FaceItem> = face[y..].iter().chain(&face[..=x]).copied().collect();
        second.push(FaceItem::Chord(id));
        faces[fi] = first;
        faces.push(second);
    }
    Ok(ArcSystem { arcs, faces })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyhedralRegion {
    pub id: usize,
    pub label: Label,
    /// Complementary region of the state circles containing this one.
    pub complementary_region: usize,
    pub segments: Vec<usize>,
    /// Subfaces making up the region.
    pub faces: Vec<Vec<FaceItem>>,
}

/// Regions of the complement of the circles and arcs that contain segments,
/// ordered by their smallest segment.
pub fn decompose_regions(sc: &StateComplex, arcs: &ArcSystem) -> Vec<PolyhedralRegion> {
    let c = sc.crossing_count();
    if c == 0 {
        return Vec::new();
    }
    let mut face_of_segment_dart = vec![usize::MAX; 2 * c];
    for (fi, face) in arcs.faces.iter().enumerate() {
        for it in face {
            if let FaceItem::Side(d) = *it {
                if sc.is_segment_dart(d) {
                    face_of_segment_dart[d - 4 * c] = fi;
                }
            }
        }
    }
    let mut uf = UnionFind::new(arcs.faces.len());
    for k in 0..c {
        uf.union(face_of_segment_dart[2 * k], face_of_segment_dart[2 * k + 1]);
    }
    let mut by_root: Vec<Option<usize>> = vec![None; arcs.faces.len()];
    let mut regions: Vec<PolyhedralRegion> = Vec::new();
    for k in 0..c {
        let root = uf.find(face_of_segment_dart[2 * k]);
        let r = *by_root[root].get_or_insert_with(|| {
            regions.push(PolyhedralRegion {
                id: regions.len(),
                label: sc.segments()[k].label,
                complementary_region: sc.segments()[k].region,
                segments: Vec::new(),
                faces: Vec::new(),
            });
            regions.len() - 1
        });
        regions[r].segments.push(k);
    }
    for (fi, face) in arcs.faces.iter().enumerate() {
        if let Some(r) = by_root[uf.find(fi)] {
            if has_segment(sc, face) {
                regions[r].faces.push(face.clone());
            }
        }
    }
    regions
}

/// Skeleton of a lower polyhedron with its face shading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerPolyhedron {
    pub region: usize,
    /// Segment (crossing) at each skeleton vertex; vertex `i` owns darts `4i..4i+4`.
    pub segments: Vec<usize>,
    pub map: CombinatorialMap,
    /// Per face: true for faces lying on the state circles, false for faces
    /// inside the region.
    pub shaded: Vec<bool>,
    /// Every corner of a face agreed on its shade.
    pub shading_consistent: bool,
}

/// Rebuilds the 4-valent projection graph of the region's sub-diagram.
pub fn lower_skeleton(sc: &StateComplex, region: &PolyhedralRegion) -> Result<LowerPolyhedron, PolyhedraError> {
    let skeleton = skeleton_map(sc, region)?;
    if !(map_is_prime(&skeleton.map) && map_is_reduced(&skeleton.map)) {
        return Err(PolyhedraError::RegionNotPrime { region: region.id });
    }
    Ok(skeleton)
}

fn skeleton_map(sc: &StateComplex, region: &PolyhedralRegion) -> Result<LowerPolyhedron, PolyhedraError> {
    let h = sc.h_graph();
    let c = sc.crossing_count();
    let mut vertex_of_segment = vec![usize::MAX; c];
    for (i, &k) in region.segments.iter().enumerate() {
        vertex_of_segment[k] = i;
    }
    let local = |d: usize| 4 * vertex_of_segment[d / 4] + position(d);
    let n = 4 * region.segments.len();
    let mut pairing = vec![usize::MAX; n];
    for face in &region.faces {
        let segs: Vec<usize> = face
            .iter()
            .filter_map(|it| match *it {
                FaceItem::Side(d) if sc.is_segment_dart(d) => Some(d),
                _ => None,
            })
            .collect();
        for (i, &s) in segs.iter().enumerate() {
            let t = segs[(i + 1) % segs.len()];
            // Leave the far end of `s` along its circle; arrive at `t` just before it.
            let a = local(h.rotate(h.pair(s)));
            let b = local(h.rotate(h.rotate(t)));
            pairing[a] = b;
            pairing[b] = a;
        }
    }
    let map_err = |source| PolyhedraError::Map {
        region: region.id,
        source,
    };
    if let Some(d) = pairing.iter().position(|&p| p == usize::MAX) {
        return Err(map_err(MapError::FixedPoint(d)));
    }
    let rotation: Vec<usize> = (0..n).map(|d| (d & !3) | ((d + 1) & 3)).collect();
    let map = CombinatorialMap::new(rotation, pairing).map_err(map_err)?;
    let (shaded, shading_consistent) = shade(&map, region.label);
    Ok(LowerPolyhedron {
        region: region.id,
        segments: region.segments.clone(),
        map,
        shaded,
        shading_consistent,
    })
}

/// Shades the faces containing the corners a state circle runs through.
fn shade(map: &CombinatorialMap, label: Label) -> (Vec<bool>, bool) {
    let mut shaded: Vec<Option<bool>> = vec![None; map.face_count()];
    let mut consistent = true;
    for x in 0..map.dart_count() {
        // Corner from `x` to its rotation; it lies in the face of the rotation.
        let on_circle = position(x).is_multiple_of(2) == (label == Label::A);
        let f = map.face(map.rotate(x));
        match shaded[f] {
            None => shaded[f] = Some(on_circle),
            Some(s) if s != on_circle => consistent = false,
            _ => {}
        }
    }
    (shaded.into_iter().map(|s| s.unwrap_or(false)).collect(), consistent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SkeletonClaims {
    pub four_valent: bool,
    pub euler: bool,
    pub checkerboard: bool,
    pub prime: bool,
}

impl SkeletonClaims {
    pub fn all(&self) -> bool {
        self.four_valent && self.euler && self.checkerboard && self.prime
    }
}

impl LowerPolyhedron {
    pub fn vertex_count(&self) -> usize {
        self.map.vertex_count()
    }

    pub fn claims(&self) -> SkeletonClaims {
        let m = &self.map;
        let four_valent = (0..m.vertex_count()).all(|v| m.degree(v) == 4);
        let euler = m.is_connected() && m.is_planar();
        let proper = self.shaded.len() == m.face_count()
            && (0..m.dart_count()).all(|d| self.shaded[m.face(d)] != self.shaded[m.face(m.pair(d))]);
        let checkerboard = self.shading_consistent && proper && m.face_two_coloring().is_some();
        let prime = four_valent && map_is_prime(m) && map_is_reduced(m);
        SkeletonClaims {
            four_valent,
            euler,
            checkerboard,
            prime,
        }
    }

    fn face_sizes(&self, shaded: bool) -> impl Iterator<Item = usize> + '_ {
        self.map
            .faces()
            .into_iter()
            .enumerate()
            .filter(move |(f, _)| self.shaded[*f] == shaded)
            .map(|(_, darts)| darts.len())
    }

    pub fn white_face_count(&self) -> usize {
        self.face_sizes(false).count()
    }

    /// One color class consists of bigons only: the projection of a `(2, q)`
    /// torus link, whose bigons form a single chain.
    pub fn is_bigon_chain(&self) -> bool {
        self.vertex_count() > 0
            && [true, false]
                .into_iter()
                .any(|s| self.face_sizes(s).all(|len| len == 2))
    }
}

/// The whole decomposition in one piece.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub arcs: ArcSystem,
    pub regions: Vec<PolyhedralRegion>,
    pub polyhedra: Vec<LowerPolyhedron>,
}

/// Arcs, regions and skeleta; skeleta are built even when not prime so that
/// the claim report can say what failed.
pub fn decompose(sc: &StateComplex) -> Result<Decomposition, PolyhedraError> {
    let arcs = maximal_nonprime_arcs(sc)?;
    let regions = decompose_regions(sc, &arcs);
    let polyhedra = regions
        .iter()
        .map(|r| skeleton_map(sc, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Decomposition {
        arcs,
        regions,
        polyhedra,
    })
}

impl Decomposition {
    /// A single region whose skeleton is a chain of bigons.
    pub fn is_torus_link_pattern(&self) -> bool {
        self.polyhedra.len() == 1 && self.polyhedra[0].is_bigon_chain()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub region: usize,
    pub segments: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub claims: SkeletonClaims,
    /// White skeleton faces match the subfaces of the region.
    pub white_faces_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyhedralReport {
    pub state: String,
    /// False when the state is not adequate and homogeneous; nothing else is checked then.
    pub applicable: bool,
    pub arc_count: usize,
    pub region_count: usize,
    pub regions: Vec<RegionReport>,
    /// Every segment lies in exactly one region.
    pub segments_partitioned: bool,
    pub passed: bool,
}

/// Applies the state and checks every lower polyhedron.
pub fn verify_polyhedral_claims(
    diagram: &LinkDiagram,
    state: &KauffmanState,
) -> Result<PolyhedralReport, StateError> {
    Ok(claims_report(&apply_state(diagram, state)?))
}

pub fn claims_report(sc: &StateComplex) -> PolyhedralReport {
    let state = sc.state().to_string();
    let Ok(dec) = decompose(sc) else {
        return PolyhedralReport {
            state,
            applicable: false,
            arc_count: 0,
            region_count: 0,
            regions: Vec::new(),
            segments_partitioned: false,
            passed: false,
        };
    };
    let mut seen = vec![0usize; sc.crossing_count()];
    for r in &dec.regions {
        for &k in &r.segments {
            seen[k] += 1;
        }
    }
    let segments_partitioned = seen.iter().all(|&n| n == 1);
    let regions: Vec<RegionReport> = dec
        .regions
        .iter()
        .zip(&dec.polyhedra)
        .map(|(r, p)| RegionReport {
            region: r.id,
            segments: r.segments.clone(),
            vertices: p.map.vertex_count(),
            edges: p.map.edge_count(),
            faces: p.map.face_count(),
            claims: p.claims(),
            white_faces_match: p.white_face_count() == r.faces.len(),
        })
        .collect();
    let passed = segments_partitioned
        && dec.regions.len() == dec.polyhedra.len()
        && regions.iter().all(|r| r.claims.all() && r.white_faces_match);
    PolyhedralReport {
        state,
        applicable: true,
        arc_count: dec.arcs.arcs.len(),
        region_count: dec.regions.len(),
        regions,
        segments_partitioned,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, BraidWord};
    use crate::kauffman::seifert_state;

    fn braid(s: &str) -> LinkDiagram {
        s.parse::<BraidWord>().unwrap().closure().unwrap()
    }

    fn all_a(d: &LinkDiagram) -> StateComplex {
        apply_state(d, &KauffmanState::all_a(d.crossing_count())).unwrap()
    }

    fn figure_eight() -> LinkDiagram {
        parse_pd("X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]").unwrap()
    }

    #[test]
    fn trefoil_has_one_region_shaped_like_its_projection() {
        let d = braid("2: 1 1 1");
        let sc = all_a(&d);
        let dec = decompose(&sc).unwrap();
        assert!(dec.arcs.arcs.is_empty());
        assert_eq!(dec.regions.len(), 1);
        let p = &dec.polyhedra[0];
        assert_eq!(
            (p.map.vertex_count(), p.map.edge_count(), p.map.face_count()),
            (3, 6, 5)
        );
        assert!(p.claims().all());
        assert!(p.map.is_isomorphic(d.map()));
        assert!(dec.is_torus_link_pattern());
        assert!(claims_report(&sc).passed);
        assert!(verify_polyhedral_claims(&d, &KauffmanState::all_a(3)).unwrap().passed);
    }

    #[test]
    fn torus_links_have_a_chain_of_bigons() {
        for q in 2..7 {
            let word = format!("2:{}", " 1".repeat(q));
            let d = braid(&word);
            let dec = decompose(&all_a(&d)).unwrap();
            let p = &dec.polyhedra[0];
            assert_eq!(p.vertex_count(), q);
            let bigons = p
                .map
                .faces()
                .iter()
                .enumerate()
                .filter(|(f, darts)| !p.shaded[*f] && darts.len() == 2)
                .count();
            assert_eq!(bigons, q, "{word}");
            assert!(dec.is_torus_link_pattern());
        }
    }

    #[test]
    fn mirrored_torus_links_have_shaded_bigons() {
        for q in 2..7 {
            let word = format!("2:{}", " -1".repeat(q));
            let d = braid(&word);
            let dec = decompose(&all_a(&d)).unwrap();
            let p = &dec.polyhedra[0];
            let shaded: Vec<usize> = p.face_sizes(true).collect();
            assert_eq!(shaded, vec![2; q], "{word}");
            assert!(dec.is_torus_link_pattern());
        }
    }

    #[test]
    fn figure_eight_is_not_a_bigon_chain() {
        let d = figure_eight();
        let sc = all_a(&d);
        let dec = decompose(&sc).unwrap();
        assert_eq!(dec.polyhedra.len(), 1);
        let p = &dec.polyhedra[0];
        assert_eq!(p.vertex_count(), 4);
        assert!(p.map.is_planar());
        assert!(p.map.is_isomorphic(d.map()));
        assert!(!dec.is_torus_link_pattern());
    }

    #[test]
    fn connected_sum_needs_one_arc() {
        let d = parse_pd(
            "X[7,4,2,5],X[3,6,4,1],X[5,2,6,3],X[1,10,8,11],X[9,12,10,7],X[11,8,12,9]",
        )
        .unwrap();
        for label in [Label::A, Label::B] {
            let sc = apply_state(&d, &KauffmanState::uniform(6, label)).unwrap();
            let dec = decompose(&sc).unwrap();
            assert_eq!(dec.arcs.arcs.len(), 1, "{label}");
            assert_eq!(dec.regions.len(), 2);
            let mut parts: Vec<Vec<usize>> = dec.regions.iter().map(|r| r.segments.clone()).collect();
            parts.sort();
            assert_eq!(parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);
            let report = claims_report(&sc);
            assert!(report.passed, "{report:?}");
        }
    }

    #[test]
    fn braid_seifert_regions_follow_columns() {
        let d = braid("5: 1 2 -3 -4 2 -3 1 2 -3 2 -4 -3");
        let sc = apply_state(&d, &seifert_state(&d, &crate::diagram::Orientation::reference(&d))).unwrap();
        let dec = decompose(&sc).unwrap();
        assert!(dec.regions.len() >= sc.region_count());
        let mut sizes: Vec<usize> = dec.regions.iter().map(|r| r.segments.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 4, 4]);
        assert!(claims_report(&sc).passed);
    }

    #[test]
    fn inadequate_state_is_rejected() {
        let sc = all_a(&braid("2: -1"));
        assert_eq!(
            maximal_nonprime_arcs(&sc),
            Err(PolyhedraError::HypothesesNotMet {
                adequate: false,
                homogeneous: true
            })
        );
        assert!(!claims_report(&sc).applicable);
    }

    #[test]
    fn round_unknot_has_no_regions() {
        let sc = all_a(&LinkDiagram::round_unknot());
        let dec = decompose(&sc).unwrap();
        assert!(dec.regions.is_empty() && dec.arcs.arcs.is_empty());
    }

    #[test]
    fn three_valent_skeleton_fails_valence() {
        // Theta graph: two vertices joined by three edges.
        let map = CombinatorialMap::new(vec![1, 2, 0, 4, 5, 3], vec![3, 5, 4, 0, 2, 1]).unwrap();
        let faces = map.face_count();
        let p = LowerPolyhedron {
            region: 0,
            segments: vec![0, 1],
            map,
            shaded: vec![false; faces],
            shading_consistent: true,
        };
        let claims = p.claims();
        assert!(!claims.four_valent);
        assert!(!claims.prime);
        assert!(claims.euler);
    }
}
