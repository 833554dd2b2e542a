//! Kauffman states of link diagrams, their state surfaces and the
//! invariants read off from them.

pub mod corpus;
pub mod diagram;
pub mod graphs;
pub mod jones;
pub mod kauffman;
pub mod map;
pub mod poly;
pub mod polyhedra;
pub mod search;
pub mod surface;
pub mod union_find;

pub use corpus::{run_batch, BatchRow, CorpusEntry, CorpusError, StateSpec};
pub use diagram::{parse_pd, BraidWord, DiagramError, LinkDiagram, Orientation};
pub use graphs::{build_state_graph, reduce, ReducedStateGraph, StateGraph};
pub use jones::{jones, kauffman_bracket, JonesError, JonesPolynomial};
pub use kauffman::{apply_state, seifert_state, KauffmanState, Label, StateComplex, StateError};
pub use map::CombinatorialMap;
pub use poly::LaurentPolynomial;
pub use polyhedra::{decompose, verify_polyhedral_claims, PolyhedralReport};
pub use search::{exhaustive_search, probe_special_states, Budget, SearchResult};
pub use surface::{classify, ClassificationReport, GeometricType, SurfaceReport};
