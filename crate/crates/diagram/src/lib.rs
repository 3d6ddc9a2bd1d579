//! Closed plane curves as rotation systems: Gauss codes, polylines, faces
//! and their indices.

mod diagram;
mod error;
mod gauss;
mod map;
pub mod polyline;

pub use diagram::{
    chirality_of, frame_sign, ArcJson, Basepoint, CrossingJson, DiagramJson, FaceJson,
    PlanarDiagram,
};
pub use error::DiagramError;
pub use gauss::{default_outer, parse_gauss_code};
pub use map::{CurveMap, Dart, End, FaceIndexMap, Faces, HalfEdge, Side};
pub use polyline::{ingest_polyline, parse_polyline_json, polyline_to_diagram, Point};
