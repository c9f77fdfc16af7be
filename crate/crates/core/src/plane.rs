//! Plane graphs as rotation systems with faces derived by tracing.
//!
//! Rotations are read counterclockwise; face tracing follows the
//! next-edge-after-reversal convention, so the face set is a pure
//! function of the rotation input. Planarity itself is never tested:
//! an embedding is trusted input, validated through Euler's identity.

use crate::graph::{Graph, GraphError};
use std::collections::{BTreeMap, HashMap};

/// A dart is a directed edge occurrence: edge id plus direction.
/// `Dart(e, false)` runs tail→head as the edge was inserted.
pub type Dart = (usize, bool);

#[derive(Debug, Clone)]
pub struct Face {
    /// Boundary closed walk; `walk[i]` is the tail of the i-th dart.
    pub walk: Vec<u32>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Multiplicity of `v` on this face boundary.
    pub fn incidence_count(&self, v: u32) -> usize {
        self.walk.iter().filter(|&&w| w == v).count()
    }
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    pub graph: Graph,
    rotation: BTreeMap<u32, Vec<Dart>>,
    faces: Vec<Face>,
    dart_face: HashMap<Dart, usize>,
}

impl PlaneGraph {
    /// Builds a plane graph from a connected graph and a rotation given as
    /// neighbor lists in cyclic order. Parallel edges are matched to
    /// repeated neighbor mentions in edge-insertion order.
    pub fn new(graph: Graph, rotation_nbrs: &BTreeMap<u32, Vec<u32>>) -> Result<Self, GraphError> {
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if graph.has_loops() {
            return Err(GraphError::Validation(
                "rotation systems with loops are not supported".into(),
            ));
        }
        let mut rotation: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for v in graph.vertices() {
            let nbrs = rotation_nbrs.get(&v).ok_or_else(|| {
                GraphError::Validation(format!("vertex {v} missing from rotation"))
            })?;
            if nbrs.len() != graph.degree(v) {
                return Err(GraphError::Validation(format!(
                    "rotation at {v} lists {} neighbors, degree is {}",
                    nbrs.len(),
                    graph.degree(v)
                )));
            }
            // consume parallel edge ids in insertion order per neighbor
            let mut pool: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for &(u, e) in graph.incidences(v) {
                pool.entry(u).or_default().push(e);
            }
            for ids in pool.values_mut() {
                ids.sort_unstable();
                ids.reverse();
            }
            let mut darts = Vec::with_capacity(nbrs.len());
            for &u in nbrs {
                let e = pool
                    .get_mut(&u)
                    .and_then(|ids| ids.pop())
                    .ok_or_else(|| {
                        GraphError::Validation(format!(
                            "rotation at {v} names {u} more times than there are edges"
                        ))
                    })?;
                let (tail, _head) = graph.edges()[e];
                darts.push((e, tail != v));
            }
            rotation.insert(v, darts);
        }

        let mut pg = PlaneGraph {
            graph,
            rotation,
            faces: Vec::new(),
            dart_face: HashMap::new(),
        };
        pg.trace_faces();
        let (v, e, f) = (pg.graph.n(), pg.graph.m(), pg.faces.len());
        if v + f != e + 2 {
            return Err(GraphError::Euler { v, e, f });
        }
        Ok(pg)
    }

    fn dart_tail(&self, d: Dart) -> u32 {
        let (t, h) = self.graph.edges()[d.0];
        if d.1 {
            h
        } else {
            t
        }
    }

    /// Face successor: reverse the dart, then take the next dart in the
    /// rotation at the new tail.
    fn face_next(&self, d: Dart) -> Dart {
        let rev = (d.0, !d.1);
        let v = self.dart_tail(rev);
        let rot = &self.rotation[&v];
        let pos = rot.iter().position(|&x| x == rev).expect("dart in rotation");
        rot[(pos + 1) % rot.len()]
    }

    fn trace_faces(&mut self) {
        let mut all_darts: Vec<Dart> = Vec::with_capacity(2 * self.graph.m());
        for e in 0..self.graph.m() {
            all_darts.push((e, false));
            all_darts.push((e, true));
        }
        for start in all_darts {
            if self.dart_face.contains_key(&start) {
                continue;
            }
            let idx = self.faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.dart_face.insert(d, idx);
                walk.push(self.dart_tail(d));
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { walk });
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face on each side of edge `e`, as (left-of-forward, left-of-reverse).
    /// Both sides of a bridge are the same face.
    pub fn edge_sides(&self, e: usize) -> (usize, usize) {
        (self.dart_face[&(e, false)], self.dart_face[&(e, true)])
    }

    /// Face indices incident to `v` with multiplicity, one per incident
    /// edge slot in rotation order.
    pub fn faces_at_vertex(&self, v: u32) -> Vec<usize> {
        self.rotation[&v]
            .iter()
            .map(|&d| self.dart_face[&d])
            .collect()
    }

    /// Distinct vertices on the boundary of face `f`.
    pub fn face_vertices(&self, f: usize) -> Vec<u32> {
        let mut vs: Vec<u32> = self.faces[f].walk.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Faces sharing an edge with face `f`, with multiplicity.
    pub fn adjacent_faces(&self, f: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (&d, &fi) in &self.dart_face {
            if fi == f {
                out.push(self.dart_face[&(d.0, !d.1)]);
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks the normal-plane-map conditions: δ ≥ 3 and all face lengths
    /// ≥ 3. Returns a description of the first offender.
    pub fn check_normal(&self) -> Result<(), String> {
        for v in self.graph.vertices() {
            if self.graph.degree(v) < 3 {
                return Err(format!("vertex {v} has degree {} < 3", self.graph.degree(v)));
            }
        }
        for (i, f) in self.faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(format!("face {i} has length {} < 3", f.len()));
            }
        }
        Ok(())
    }
}

/// Parses an embedding file: `rot <v>: <n1> <n2> ...` lines.
pub fn parse_embedding(text: &str) -> Result<BTreeMap<u32, Vec<u32>>, GraphError> {
    let mut rot = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let rest = content.strip_prefix("rot").ok_or_else(|| GraphError::Parse {
            line,
            msg: "expected rot record".into(),
        })?;
        let (vpart, npart) = rest.split_once(':').ok_or_else(|| GraphError::Parse {
            line,
            msg: "expected `rot <v>: <neighbors>`".into(),
        })?;
        let v: u32 = vpart.trim().parse().map_err(|_| GraphError::Parse {
            line,
            msg: format!("bad vertex id {:?}", vpart.trim()),
        })?;
        let mut nbrs = Vec::new();
        for tok in npart.split_whitespace() {
            nbrs.push(tok.parse().map_err(|_| GraphError::Parse {
                line,
                msg: format!("bad neighbor id {tok:?}"),
            })?);
        }
        if rot.insert(v, nbrs).is_some() {
            return Err(GraphError::Parse {
                line,
                msg: format!("duplicate rotation for vertex {v}"),
            });
        }
    }
    Ok(rot)
}

/// Serializes a rotation system to the embedding file format.
pub fn serialize_embedding(rot: &BTreeMap<u32, Vec<u32>>) -> String {
    let mut out = String::new();
    for (v, nbrs) in rot {
        let list: Vec<String> = nbrs.iter().map(|n| n.to_string()).collect();
        out.push_str(&format!("rot {v}: {}\n", list.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn k4_faces() {
        let (g, rot) = generate::named_graph("K4").unwrap();
        let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
        assert_eq!(pg.face_count(), 4);
        assert!(pg.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn cycle_two_faces() {
        let (g, rot) = generate::cycle_embedded(5);
        let pg = PlaneGraph::new(g, &rot).unwrap();
        assert_eq!(pg.face_count(), 2);
        assert!(pg.faces().iter().all(|f| f.len() == 5));
    }

    #[test]
    fn cube_faces() {
        let (g, rot) = generate::named_graph("cube").unwrap();
        let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
        assert_eq!(pg.face_count(), 6);
        assert!(pg.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn face_length_sum_is_twice_edges() {
        for name in ["K4", "cube", "dodecahedron", "icosahedron"] {
            let (g, rot) = generate::named_graph(name).unwrap();
            let m = g.m();
            let pg = PlaneGraph::new(g, &rot.unwrap()).unwrap();
            let total: usize = pg.faces().iter().map(|f| f.len()).sum();
            assert_eq!(total, 2 * m, "{name}");
        }
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(&[(0, 1), (2, 3)]);
        let rot: BTreeMap<u32, Vec<u32>> =
            [(0, vec![1]), (1, vec![0]), (2, vec![3]), (3, vec![2])].into();
        assert!(matches!(
            PlaneGraph::new(g, &rot),
            Err(GraphError::Disconnected)
        ));
    }

    #[test]
    fn embedding_roundtrip() {
        let rot: BTreeMap<u32, Vec<u32>> = [(0, vec![1, 2, 3]), (1, vec![0])].into();
        let s = serialize_embedding(&rot);
        assert_eq!(parse_embedding(&s).unwrap(), rot);
    }
}
