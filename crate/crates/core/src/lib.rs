//! Conway–Coxeter style friezes: entries, classification of periodic
//! quiddity rows, and their realizations by triangulations of polygons,
//! annuli and strips.

pub mod annulus;
pub mod classify;
pub mod frieze;
pub mod json;
pub mod matching;
pub mod polygon;
pub mod row;
pub mod strip;
pub mod svg;

pub use classify::{
    classify, minimal_inner_points, polygon_order, realize_polygon, BaseKind, Classification,
    ClassifyError, Outcome, ReductionStep, ReductionTrace,
};
pub use frieze::{
    bump, bump_periodic, entry_continuant, entry_recurrence, fragment, verify_ptolemy,
    verify_unimodular, Bump, FriezeError, FriezeFragment, UnimodularReport,
};
pub use polygon::{PolygonError, TriangulatedPolygon};
pub use row::{cyclically_equal, shortest_period, QuiddityRow, RowError};
pub use strip::{
    realize_strip, realize_strip_with, PeelingState, StripArc, StripError, StripOptions, StripTriangulation,
    Triangle, Vertex,
};
pub use matching::{
    count_by_recurrence, count_matchings, count_matchings_naive, verify_matching_theorem, MatchingError,
    MatchingReport, Mismatch,
};
pub use json::{Surface, SchemaError};
