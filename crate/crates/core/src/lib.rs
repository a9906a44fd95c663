//! Long virtual knots as open Gauss diagrams.
//!
//! * [`gauss`]: diagrams, the text grammar, canonical labels.
//! * [`moves`]: Reidemeister rewrites driven by an auditable rule table.
//! * [`monoid`]: concatenation and diagram-level cut points.
//! * [`surface`]: band surfaces as ribbon graphs; Euler characteristic,
//!   boundary tracing and supporting genus.
//! * [`invariants`]: odd writhe and end-coloring matrices over finite
//!   biquandles.
//! * [`search`]: budgeted equivalence, commutation and decomposition search.
//! * [`corpus`]: the annotated regression corpus.
//! * [`fuzz`]: seeded random diagrams, braid closures and move walks.

pub mod gauss;
pub mod moves;
pub mod monoid;
pub mod surface;
pub mod invariants;
pub mod exec;
pub mod fuzz;
pub mod search;
pub mod corpus;

pub use gauss::{parse_gauss_code, Chord, Endpoint, GaussDiagram, GaussError, Role, Sign};
pub use moves::{apply, enumerate_moves, MoveError, MoveEvent, MoveKind, MoveTable};
pub use monoid::{concat, cut_points, is_diagram_decomposable, split_at, CutPoint, MonoidError};
pub use surface::{build_band_surface, supporting_genus, RibbonGraph, SurfaceError};
pub use invariants::{coloring_matrix, commutator_witness, odd_writhe, ColoringMatrix, FiniteBiquandle};
pub use search::{commute_check, equivalent_within, fingerprint, min_genus_in_orbit, prime_scan, Budget, Verdict};
