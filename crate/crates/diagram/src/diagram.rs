use serde::{Deserialize, Serialize};

use crate::error::DiagramError;
use crate::map::{CurveMap, Dart, FaceIndexMap, Faces, HalfEdge};

/// A generic closed plane curve: every vertex is an ordinary double point.
///
/// Crossing ids are vertex numbers `0..crossing_count()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    map: CurveMap,
}

/// A regular point of the curve, somewhere inside an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basepoint {
    pub arc: usize,
}

impl Basepoint {
    pub fn on_arc(arc: usize) -> Self {
        Basepoint { arc }
    }
}

impl PlanarDiagram {
    /// Counter-clockwise circle.
    pub fn circle() -> Self {
        PlanarDiagram {
            map: CurveMap::circle(true),
        }
    }

    pub fn from_map(map: CurveMap) -> Result<Self, DiagramError> {
        if let Some(v) = (0..map.n_vertices()).find(|&v| map.multiplicity(v) != 2) {
            return Err(DiagramError::Invalid(format!(
                "vertex {v} has multiplicity {}; diagrams only have double points",
                map.multiplicity(v)
            )));
        }
        map.indices()?;
        Ok(PlanarDiagram { map })
    }

    pub fn map(&self) -> &CurveMap {
        &self.map
    }

    pub fn into_map(self) -> CurveMap {
        self.map
    }

    pub fn crossing_count(&self) -> usize {
        self.map.n_vertices()
    }

    pub fn arc_count(&self) -> usize {
        self.map.n_arcs()
    }

    pub fn faces(&self) -> Faces {
        self.map.faces()
    }

    pub fn face_indices(&self) -> FaceIndexMap {
        self.map.indices().expect("validated diagram")
    }

    fn check_crossing(&self, x: usize) -> Result<(), DiagramError> {
        if x < self.crossing_count() {
            Ok(())
        } else {
            Err(DiagramError::UnknownCrossing(x))
        }
    }

    fn check_basepoint(&self, bp: Basepoint) -> Result<(), DiagramError> {
        if bp.arc < self.arc_count() {
            Ok(())
        } else {
            Err(DiagramError::BadBasepoint(bp.arc))
        }
    }

    /// The two visits of crossing `x`, in curve order from visit 0.
    pub fn crossing_visits(&self, x: usize) -> Result<(usize, usize), DiagramError> {
        self.check_crossing(x)?;
        let v = self.map.visits_at(x);
        Ok((v[0], v[1]))
    }

    /// Mean of the four face indices around the crossing.
    pub fn crossing_index(&self, x: usize) -> Result<i64, DiagramError> {
        self.check_crossing(x)?;
        let fi = self.face_indices();
        Ok(crossing_index_with(&self.map, &fi, x))
    }

    /// +1 when at the first visit of `x` the other branch crosses from left
    /// to right, i.e. the chirality written in Gauss codes.
    pub fn chirality(&self, x: usize) -> Result<i8, DiagramError> {
        let (p, q) = self.crossing_visits(x)?;
        Ok(chirality_of(&self.map, p, q))
    }

    /// Orientation of the frame (tangent at the first visit, tangent at the
    /// second), the visits being ordered by travelling from the basepoint.
    pub fn crossing_sign(&self, bp: Basepoint, x: usize) -> Result<i8, DiagramError> {
        self.check_basepoint(bp)?;
        let (p, q) = self.crossing_visits(x)?;
        Ok(frame_sign(&self.map, bp.arc, p, q))
    }

    /// Larger of the two face indices beside the basepoint's arc.
    pub fn basepoint_index(&self, bp: Basepoint) -> Result<i64, DiagramError> {
        self.check_basepoint(bp)?;
        Ok(self.face_indices().of_dart(Dart::left(bp.arc)))
    }

    pub fn mirror(&self) -> Self {
        PlanarDiagram {
            map: self.map.mirror(),
        }
    }

    pub fn reversed(&self) -> Self {
        PlanarDiagram {
            map: self.map.reversed(),
        }
    }

    pub fn canonical_key(&self) -> Vec<u32> {
        self.map.canonical_key()
    }

    /// Same curve up to start point, relabelling and isotopy of the plane?
    pub fn is_isomorphic(&self, other: &PlanarDiagram) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from_map(&self.map)
    }
}

pub(crate) fn crossing_index_with(map: &CurveMap, fi: &FaceIndexMap, v: usize) -> i64 {
    let sum: i64 = map
        .corner_faces(&fi.faces, v)
        .iter()
        .map(|&f| fi.index[f])
        .sum();
    sum / map.rotation(v).len() as i64
}

/// Chirality of a double point from visits p < q.
pub fn chirality_of(map: &CurveMap, p: usize, q: usize) -> i8 {
    let v = map.vertex_of(p);
    let r = map.rotation(v);
    let k = map.pos(HalfEdge::out(p));
    if r[(k + 1) % 4] == HalfEdge::inc(q) {
        1
    } else {
        -1
    }
}

/// Frame sign of a double point for a basepoint on arc `bp_arc` (visits
/// counted from `bp_arc + 1`): +1 when the second tangent is a clockwise
/// quarter turn from the first. This is the sign that makes the index moments
/// independent of the basepoint under the left-is-higher index convention.
pub fn frame_sign(map: &CurveMap, bp_arc: usize, p: usize, q: usize) -> i8 {
    let n = map.n_visits();
    let dist = |i: usize| (i + n - (bp_arc + 1) % n) % n;
    let (first, second) = if dist(p) < dist(q) { (p, q) } else { (q, p) };
    let r = map.rotation(map.vertex_of(first));
    let k = map.pos(HalfEdge::out(first));
    if r[(k + 1) % r.len()] == HalfEdge::out(second) {
        -1
    } else {
        1
    }
}

/// Serializable snapshot of a map: rotation, faces and indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub visit_sequence: Vec<usize>,
    pub crossings: Vec<CrossingJson>,
    pub arcs: Vec<ArcJson>,
    pub faces: Vec<FaceJson>,
    pub outer_face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub id: usize,
    pub multiplicity: usize,
    pub rotation: Vec<HalfEdge>,
    pub index_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub id: usize,
    pub from_visit: usize,
    pub to_visit: usize,
    pub left_face: usize,
    pub right_face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: usize,
    pub key: String,
    pub boundary: Vec<String>,
    pub index: i64,
}

impl DiagramJson {
    pub fn from_map(map: &CurveMap) -> Self {
        let fi = map.indices().expect("valid map");
        let n = map.n_visits();
        let crossings = (0..map.n_vertices())
            .map(|v| CrossingJson {
                id: v,
                multiplicity: map.multiplicity(v),
                rotation: map.rotation(v).to_vec(),
                index_sum: map
                    .corner_faces(&fi.faces, v)
                    .iter()
                    .map(|&f| fi.index[f])
                    .sum(),
            })
            .collect();
        let arcs = (0..map.n_arcs())
            .map(|a| ArcJson {
                id: a,
                from_visit: a,
                to_visit: if n == 0 { 0 } else { (a + 1) % n },
                left_face: fi.faces.face_of(Dart::left(a)),
                right_face: fi.faces.face_of(Dart::right(a)),
            })
            .collect();
        let faces = (0..fi.faces.len())
            .map(|f| FaceJson {
                id: f,
                key: fi.faces.key(f).to_string(),
                boundary: fi.faces.boundary(f).iter().map(Dart::to_string).collect(),
                index: fi.index[f],
            })
            .collect();
        DiagramJson {
            visit_sequence: map.visits().to_vec(),
            crossings,
            arcs,
            faces,
            outer_face: fi.outer(),
        }
    }
}
