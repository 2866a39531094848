//! Triangle-mesh representation, validation, and global/pointwise
//! geometric measurements.

mod curvature;
mod measure;
mod quadric;
pub mod stitch;

pub use curvature::{vertex_mean_curvature, CurvatureData, VertexField};
pub use measure::{measure, willmore_interior, MeasureError, SurfaceMeasures, ISO_SPHERE};
pub use quadric::{
    is_round_sphere, relative_h_spread, second_fundamental_form_at,
    second_fundamental_form_with, QuadricError, SecondFundamentalForm2D, TangentFrame,
};

use nalgebra::Vector3;
use std::collections::HashMap;
use thiserror::Error;

/// Label attached to faces of a glued surface, naming which piece of the
/// connected-sum decomposition they belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PieceLabel {
    /// Scaled inverted copy of the first surface.
    U,
    /// Bridge annulus between the two surfaces.
    W,
    /// Scaled copy of the second surface.
    V,
}

impl PieceLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PieceLabel::U => "U",
            PieceLabel::W => "W",
            PieceLabel::V => "V",
        }
    }

    pub fn parse(s: &str) -> Option<PieceLabel> {
        match s {
            "U" => Some(PieceLabel::U),
            "W" => Some(PieceLabel::W),
            "V" => Some(PieceLabel::V),
            _ => None,
        }
    }
}

/// Validation failures raised while building a mesh.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("edge ({0}, {1}) is shared by more than two faces or by two faces with the same orientation")]
    NonManifold(usize, usize),
    #[error("edge ({0}, {1}) lies on a boundary but the mesh is required to be closed")]
    OpenBoundary(usize, usize),
    #[error("face {0} is degenerate (zero area)")]
    DegenerateFace(usize),
    #[error("face {face} references vertex {vertex} out of range")]
    BadIndex { face: usize, vertex: usize },
    #[error("vertex {0} is not referenced by any face")]
    IsolatedVertex(usize),
}

/// A closed oriented manifold triangle mesh carrying an immersion into
/// 3-space. Open meshes (graph patches awaiting composition) are allowed
/// only through [`build_mesh_open`] and are flagged as such.
#[derive(Debug, Clone)]
pub struct TriangleMesh {
    vertices: Vec<Vector3<f64>>,
    faces: Vec<[usize; 3]>,
    labels: Option<Vec<Option<PieceLabel>>>,
    closed: bool,
}

/// Builds and validates a closed oriented manifold mesh.
pub fn build_mesh(
    vertices: Vec<Vector3<f64>>,
    faces: Vec<[usize; 3]>,
) -> Result<TriangleMesh, MeshError> {
    TriangleMesh::new(vertices, faces, None, true)
}

/// Builds a mesh that is allowed to have boundary edges. Used for graph
/// patches that exist only to be stitched into larger surfaces.
pub fn build_mesh_open(
    vertices: Vec<Vector3<f64>>,
    faces: Vec<[usize; 3]>,
) -> Result<TriangleMesh, MeshError> {
    TriangleMesh::new(vertices, faces, None, false)
}

impl TriangleMesh {
    pub(crate) fn new(
        vertices: Vec<Vector3<f64>>,
        faces: Vec<[usize; 3]>,
        labels: Option<Vec<Option<PieceLabel>>>,
        require_closed: bool,
    ) -> Result<TriangleMesh, MeshError> {
        if let Some(l) = &labels {
            assert_eq!(l.len(), faces.len(), "label list must match face list");
        }
        let mesh = TriangleMesh {
            vertices,
            faces,
            labels,
            closed: require_closed,
        };
        mesh.validate(require_closed)?;
        Ok(mesh)
    }

    fn validate(&self, require_closed: bool) -> Result<(), MeshError> {
        let nv = self.vertices.len();
        let mut referenced = vec![false; nv];
        for (fi, f) in self.faces.iter().enumerate() {
            for &v in f {
                if v >= nv {
                    return Err(MeshError::BadIndex { face: fi, vertex: v });
                }
                referenced[v] = true;
            }
            let area2 = self.face_normal_raw(fi).norm();
            let scale = self.face_max_edge_sq(fi);
            if !(area2 > 1e-14 * scale) || scale == 0.0 {
                return Err(MeshError::DegenerateFace(fi));
            }
        }
        if let Some(v) = referenced.iter().position(|r| !r) {
            return Err(MeshError::IsolatedVertex(v));
        }

        // (forward count, backward count) per undirected edge
        let mut edges: HashMap<(usize, usize), (u32, u32)> = HashMap::new();
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                if a == b {
                    // duplicate index in a face shows up as a degenerate face
                    // above, but guard the edge map anyway
                    return Err(MeshError::NonManifold(a, b));
                }
                let (key, fwd) = if a < b { ((a, b), true) } else { ((b, a), false) };
                let e = edges.entry(key).or_insert((0, 0));
                if fwd {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        for (&(a, b), &(fwd, bwd)) in &edges {
            let total = fwd + bwd;
            if total > 2 || fwd > 1 || bwd > 1 {
                return Err(MeshError::NonManifold(a, b));
            }
            if total == 1 && require_closed {
                return Err(MeshError::OpenBoundary(a, b));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vector3<f64>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn position(&self, v: usize) -> Vector3<f64> {
        self.vertices[v]
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn labels(&self) -> Option<&[Option<PieceLabel>]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, face: usize) -> Option<PieceLabel> {
        self.labels.as_ref().and_then(|l| l[face])
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<Option<PieceLabel>>) {
        assert_eq!(labels.len(), self.faces.len());
        self.labels = Some(labels);
    }

    /// Unnormalised face normal; its length is twice the face area.
    pub fn face_normal_raw(&self, f: usize) -> Vector3<f64> {
        let [a, b, c] = self.faces[f];
        (self.vertices[b] - self.vertices[a]).cross(&(self.vertices[c] - self.vertices[a]))
    }

    pub fn face_area(&self, f: usize) -> f64 {
        0.5 * self.face_normal_raw(f).norm()
    }

    fn face_max_edge_sq(&self, f: usize) -> f64 {
        let [a, b, c] = self.faces[f];
        let (pa, pb, pc) = (self.vertices[a], self.vertices[b], self.vertices[c]);
        (pa - pb)
            .norm_squared()
            .max((pb - pc).norm_squared())
            .max((pc - pa).norm_squared())
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = std::collections::HashSet::new();
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
        edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Genus from the Euler characteristic, valid for connected closed
    /// surfaces.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Faces incident to each vertex.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut vf = vec![Vec::new(); self.vertex_count()];
        for (fi, f) in self.faces.iter().enumerate() {
            for &v in f {
                vf[v].push(fi);
            }
        }
        vf
    }

    /// One-ring vertex neighbours (unordered, deduplicated).
    pub fn vertex_neighbors(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.vertex_count()];
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                if !nb[a].contains(&b) {
                    nb[a].push(b);
                }
                if !nb[b].contains(&a) {
                    nb[b].push(a);
                }
            }
        }
        nb
    }

    /// Vertices lying on boundary edges. Empty for closed meshes.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        let mut edges: HashMap<(usize, usize), u32> = HashMap::new();
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                *edges.entry(if a < b { (a, b) } else { (b, a) }).or_insert(0) += 1;
            }
        }
        let mut on_boundary = vec![false; self.vertex_count()];
        for (&(a, b), &cnt) in &edges {
            if cnt == 1 {
                on_boundary[a] = true;
                on_boundary[b] = true;
            }
        }
        (0..self.vertex_count()).filter(|&v| on_boundary[v]).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        let nb = self.vertex_neighbors();
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &nb[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count()
    }

    /// Graph distances (sum of edge lengths along shortest edge paths)
    /// from `source` to every vertex.
    pub fn graph_distances(&self, source: usize) -> Vec<f64> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        #[derive(PartialEq)]
        struct Entry(f64, usize);
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.0.partial_cmp(&other.0).unwrap_or(std::cmp::Ordering::Equal)
            }
        }

        let nb = self.vertex_neighbors();
        let mut dist = vec![f64::INFINITY; self.vertex_count()];
        dist[source] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse(Entry(0.0, source)));
        while let Some(Reverse(Entry(d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &w in &nb[v] {
                let nd = d + (self.vertices[v] - self.vertices[w]).norm();
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Reverse(Entry(nd, w)));
                }
            }
        }
        dist
    }

    /// Mean edge length over all edges.
    pub fn mean_edge_length(&self) -> f64 {
        let mut sum = 0.0;
        let mut n = 0usize;
        let mut edges = std::collections::HashSet::new();
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                let key = if a < b { (a, b) } else { (b, a) };
                if edges.insert(key) {
                    sum += (self.vertices[a] - self.vertices[b]).norm();
                    n += 1;
                }
            }
        }
        if n == 0 {
            0.0
        } else {
            sum / n as f64
        }
    }

    /// Diagonal of the axis-aligned bounding box.
    pub fn bbox_diagonal(&self) -> f64 {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (hi - lo).norm()
    }

    /// New mesh with every vertex mapped through `f`, keeping connectivity
    /// and labels. The result is not re-validated.
    pub fn mapped(&self, f: impl Fn(Vector3<f64>) -> Vector3<f64>) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            faces: self.faces.clone(),
            labels: self.labels.clone(),
            closed: self.closed,
        }
    }

    /// New mesh with all face orientations reversed.
    pub fn flipped(&self) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.clone(),
            faces: self.faces.iter().map(|&[a, b, c]| [a, c, b]).collect(),
            labels: self.labels.clone(),
            closed: self.closed,
        }
    }

    pub fn scaled(&self, lambda: f64) -> TriangleMesh {
        self.mapped(|v| v * lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
        let vertices = vec![
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(1.0, -1.0, -1.0),
            Vector3::new(-1.0, 1.0, -1.0),
            Vector3::new(-1.0, -1.0, 1.0),
        ];
        // outward oriented
        let faces = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
        (vertices, faces)
    }

    #[test]
    fn tetrahedron_is_valid_and_spherical() {
        let (v, f) = tetrahedron();
        let mesh = build_mesh(v, f).unwrap();
        assert_eq!(mesh.euler_characteristic(), 2);
        assert_eq!(mesh.genus(), 0);
        assert!(mesh.is_connected());
    }

    #[test]
    fn single_triangle_is_open() {
        let vertices = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
        ];
        let err = build_mesh(vertices.clone(), vec![[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, MeshError::OpenBoundary(..)));
        // but fine as an open patch
        assert!(build_mesh_open(vertices, vec![[0, 1, 2]]).is_ok());
    }

    #[test]
    fn same_orientation_across_edge_is_nonmanifold() {
        let vertices = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(1.0, 1.0, 1.0),
        ];
        // both faces traverse the shared edge 1->2 in the same direction
        let err = build_mesh_open(vertices, vec![[0, 1, 2], [3, 1, 2]]).unwrap_err();
        assert!(matches!(err, MeshError::NonManifold(1, 2)));
    }

    #[test]
    fn degenerate_face_rejected() {
        let vertices = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(2.0, 0.0, 0.0),
        ];
        let err = build_mesh_open(vertices, vec![[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, MeshError::DegenerateFace(0)));
    }

    #[test]
    fn bad_index_and_isolated_vertex() {
        let vertices = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
        ];
        let err = build_mesh_open(vertices.clone(), vec![[0, 1, 7]]).unwrap_err();
        assert!(matches!(err, MeshError::BadIndex { face: 0, vertex: 7 }));

        let mut vertices = vertices;
        vertices.push(Vector3::new(5.0, 5.0, 5.0));
        let err = build_mesh_open(vertices, vec![[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, MeshError::IsolatedVertex(3)));
    }
}
