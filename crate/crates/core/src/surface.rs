//! State surfaces: invariants and the geometric classification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{LinkDiagram, Orientation};
use crate::graphs::{build_state_graph, reduce};
use crate::kauffman::{apply_state, KauffmanState, Label, StateComplex, StateError};
use crate::polyhedra::decompose;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub chi: i64,
    pub boundary_components: usize,
    pub orientable: bool,
    /// Set for orientable surfaces.
    pub genus: Option<i64>,
    /// Set for non-orientable surfaces.
    pub crosscap_number: Option<i64>,
}

/// Whether some orientation of the link makes `state` the oriented
/// resolution at every crossing.
///
/// Reversing a component flips the oriented resolution at each crossing it
/// passes exactly once, so the question is a parity system over the
/// components.
pub fn is_orientable(diagram: &LinkDiagram, state: &KauffmanState) -> Result<bool, StateError> {
    let c = diagram.crossing_count();
    if state.len() != c {
        return Err(StateError::LengthMismatch {
            given: state.len(),
            expected: c,
        });
    }
    let n = diagram.component_count();
    // adjacency[i] holds (j, parity): x_i xor x_j must equal parity.
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    let reference = Orientation::reference(diagram);
    for x in diagram.crossings() {
        let (u, o) = (x.darts[0], x.darts[1]);
        let seifert_a = diagram.is_incoming(u, &reference) != diagram.is_incoming(o, &reference);
        let parity = seifert_a != (state.label(x.id) == Label::A);
        let (cu, co) = (diagram.component_of(u), diagram.component_of(o));
        if cu == co {
            if parity {
                return Ok(false);
            }
            continue;
        }
        adjacency[cu].push((co, parity));
        adjacency[co].push((cu, parity));
    }
    let mut value: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if value[start].is_some() {
            continue;
        }
        value[start] = Some(false);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let vi = value[i].unwrap();
            for &(j, parity) in &adjacency[i] {
                match value[j] {
                    None => {
                        value[j] = Some(vi ^ parity);
                        stack.push(j);
                    }
                    Some(vj) if vj != vi ^ parity => return Ok(false),
                    _ => {}
                }
            }
        }
    }
    Ok(true)
}

pub fn surface_invariants(sc: &StateComplex, diagram: &LinkDiagram) -> SurfaceReport {
    let chi = sc.surface_euler_characteristic();
    let b = diagram.component_count();
    let orientable = is_orientable(diagram, sc.state()).expect("state matches diagram");
    let deficit = 2 - chi - b as i64;
    SurfaceReport {
        chi,
        boundary_components: b,
        orientable,
        genus: orientable.then_some(deficit / 2),
        crosscap_number: (!orientable).then_some(deficit),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeometricType {
    Fiber,
    QuasifuchsianIfHyperbolic,
    HypothesesNotMet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub prime: bool,
    pub adequate: bool,
    pub homogeneous: bool,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.prime && self.adequate && self.homogeneous
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Accidental {
    Never,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub state: String,
    pub hypotheses: Hypotheses,
    pub essential: bool,
    pub accidental: Accidental,
    pub fiber: bool,
    pub semi_fiber: bool,
    pub geometric_type: GeometricType,
    pub torus_link_flag: bool,
    pub surface: SurfaceReport,
    /// `1 - chi` of the reduced state graph, when the state is adequate.
    pub stable_coefficient: Option<i64>,
    pub reduced_graph_is_tree: Option<bool>,
    /// Justification for each flag.
    pub provenance: BTreeMap<&'static str, &'static str>,
}

pub fn classify(diagram: &LinkDiagram, state: &KauffmanState) -> Result<ClassificationReport, StateError> {
    let sc = apply_state(diagram, state)?;
    // The crossingless diagram is prime vacuously.
    let prime = diagram.is_prime().unwrap_or(true);
    let hypotheses = Hypotheses {
        prime,
        adequate: sc.is_adequate(),
        homogeneous: sc.is_homogeneous(),
    };
    let reduced = reduce(&build_state_graph(&sc)).ok();
    let tree = reduced.as_ref().and_then(|g| g.is_tree().ok());
    let surface = surface_invariants(&sc, diagram);
    let mut provenance = BTreeMap::new();
    provenance.insert("adequate", "computed: no segment has both ends on one state circle");
    provenance.insert("homogeneous", "computed: one label per complementary region of the state circles");
    provenance.insert("prime", "computed: two-edge cuts and nugatory crossings of the projection");
    provenance.insert("surface", "computed: disks and bands, orientation parity system");

    let holds = hypotheses.hold();
    let fiber = holds && tree == Some(true);
    let torus_link_flag = holds && decompose(&sc).is_ok_and(|d| d.is_torus_link_pattern());
    let geometric_type = match (holds, fiber) {
        (false, _) => GeometricType::HypothesesNotMet,
        (true, true) => GeometricType::Fiber,
        (true, false) => GeometricType::QuasifuchsianIfHyperbolic,
    };
    if holds {
        provenance.insert("essential", "theorem: prime homogeneously adequate diagrams give essential state surfaces");
        provenance.insert("accidental", "theorem: such state surfaces admit no accidental parabolics");
        provenance.insert("fiber", "theorem: fiber exactly when the reduced state graph is a tree");
        provenance.insert("semi_fiber", "theorem: a semi-fiber here is always a fiber");
        provenance.insert(
            "geometric_type",
            "theorem: otherwise quasifuchsian, conditional on the link being hyperbolic",
        );
        provenance.insert(
            "torus_link_flag",
            "computed: single polyhedral region whose skeleton is a chain of bigons",
        );
    } else {
        provenance.insert("geometric_type", "hypotheses fail; no theorem applies");
    }
    Ok(ClassificationReport {
        state: state.to_string(),
        hypotheses,
        essential: holds,
        accidental: if holds { Accidental::Never } else { Accidental::Unknown },
        fiber,
        semi_fiber: fiber,
        geometric_type,
        torus_link_flag,
        surface,
        stable_coefficient: reduced.as_ref().map(|g| g.stable_coefficient()),
        reduced_graph_is_tree: tree,
        provenance,
    })
}
