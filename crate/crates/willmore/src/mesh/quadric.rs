//! Pointwise second-order surface data from local quadric fits, and the
//! round-sphere detector built on the spread of discrete mean curvature.

use super::curvature::CurvatureData;
use super::TriangleMesh;
use nalgebra::{DMatrix, DVector, Matrix2, Vector2, Vector3};
use thiserror::Error;

/// Symmetric bilinear form at a normalised point of a surface, expressed
/// in an orthonormal tangent frame. Entries carry units 1/length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondFundamentalForm2D {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SecondFundamentalForm2D {
    pub fn new(a11: f64, a12: f64, a22: f64) -> Self {
        SecondFundamentalForm2D { a11, a12, a22 }
    }

    pub fn from_matrix(m: &Matrix2<f64>) -> Self {
        SecondFundamentalForm2D {
            a11: m[(0, 0)],
            a12: 0.5 * (m[(0, 1)] + m[(1, 0)]),
            a22: m[(1, 1)],
        }
    }

    pub fn to_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a11, self.a12, self.a12, self.a22)
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    /// Trace-free part: the form minus half its trace times the identity.
    pub fn trace_free(&self) -> SecondFundamentalForm2D {
        let half = 0.5 * self.trace();
        SecondFundamentalForm2D {
            a11: self.a11 - half,
            a12: self.a12,
            a22: self.a22 - half,
        }
    }

    /// Frobenius pairing <A, B> = a11 b11 + 2 a12 b12 + a22 b22.
    pub fn inner(&self, other: &SecondFundamentalForm2D) -> f64 {
        self.a11 * other.a11 + 2.0 * self.a12 * other.a12 + self.a22 * other.a22
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    /// Evaluation as a quadratic form on a tangent vector.
    pub fn apply(&self, z: Vector2<f64>) -> f64 {
        self.a11 * z.x * z.x + 2.0 * self.a12 * z.x * z.y + self.a22 * z.y * z.y
    }

    /// The form conjugated by an in-plane rotation of angle theta.
    pub fn rotated(&self, theta: f64) -> SecondFundamentalForm2D {
        let (s, c) = theta.sin_cos();
        let r = Matrix2::new(c, -s, s, c);
        SecondFundamentalForm2D::from_matrix(&(r.transpose() * self.to_matrix() * r))
    }

    pub fn scaled(&self, lambda: f64) -> SecondFundamentalForm2D {
        SecondFundamentalForm2D {
            a11: lambda * self.a11,
            a12: lambda * self.a12,
            a22: lambda * self.a22,
        }
    }
}

/// Orthonormal tangent frame at a vertex: two tangent directions and the
/// unit normal they complete.
#[derive(Debug, Clone, Copy)]
pub struct TangentFrame {
    pub t1: Vector3<f64>,
    pub t2: Vector3<f64>,
    pub normal: Vector3<f64>,
}

impl TangentFrame {
    /// Builds a frame from a unit normal, picking tangents deterministically.
    pub fn from_normal(normal: Vector3<f64>) -> TangentFrame {
        let seed = if normal.x.abs() < 0.9 {
            Vector3::x()
        } else {
            Vector3::y()
        };
        let t1 = (seed - normal * seed.dot(&normal)).normalize();
        let t2 = normal.cross(&t1);
        TangentFrame { t1, t2, normal }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadricError {
    #[error("quadric fit at vertex {0} is rank deficient")]
    RankDeficientFit(usize),
    #[error("vertex {0} lacks a two-ring neighbourhood")]
    TooFewNeighbors(usize),
}

/// Least-squares quadric fit over the 2-ring of `vertex`, in the frame of
/// its angle-weighted normal. Returns the classical second fundamental
/// form (a unit sphere measures as the identity) together with the frame
/// used.
pub fn second_fundamental_form_at(
    mesh: &TriangleMesh,
    vertex: usize,
) -> Result<(SecondFundamentalForm2D, TangentFrame), QuadricError> {
    let data = CurvatureData::compute(mesh);
    second_fundamental_form_with(mesh, vertex, &data)
}

/// Same as [`second_fundamental_form_at`] but reusing precomputed
/// curvature data, for callers fitting at many vertices.
pub fn second_fundamental_form_with(
    mesh: &TriangleMesh,
    vertex: usize,
    data: &CurvatureData,
) -> Result<(SecondFundamentalForm2D, TangentFrame), QuadricError> {
    let neighbors = mesh.vertex_neighbors();
    let mut ring = std::collections::BTreeSet::new();
    for &n1 in &neighbors[vertex] {
        ring.insert(n1);
        for &n2 in &neighbors[n1] {
            if n2 != vertex {
                ring.insert(n2);
            }
        }
    }
    if ring.len() < 6 {
        return Err(QuadricError::TooFewNeighbors(vertex));
    }

    let frame = TangentFrame::from_normal(data.normal[vertex]);
    let origin = mesh.position(vertex);

    // full quadric: height = c0 + c1 x + c2 y + 0.5 (a x^2 + 2 b x y + c y^2)
    let rows = ring.len() + 1;
    let mut m = DMatrix::zeros(rows, 6);
    let mut rhs = DVector::zeros(rows);
    // normalise the fit coordinates by the ring radius for conditioning
    let scale = ring
        .iter()
        .map(|&v| (mesh.position(v) - origin).norm())
        .fold(0.0_f64, f64::max);
    for (row, &v) in std::iter::once(&vertex).chain(ring.iter()).enumerate() {
        let d = (mesh.position(v) - origin) / scale;
        let x = d.dot(&frame.t1);
        let y = d.dot(&frame.t2);
        let h = d.dot(&frame.normal);
        m[(row, 0)] = 1.0;
        m[(row, 1)] = x;
        m[(row, 2)] = y;
        m[(row, 3)] = 0.5 * x * x;
        m[(row, 4)] = x * y;
        m[(row, 5)] = 0.5 * y * y;
        rhs[row] = h;
    }

    let svd = m.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-10 * smax) {
        return Err(QuadricError::RankDeficientFit(vertex));
    }
    let coeffs = svd.solve(&rhs, 0.0).map_err(|_| QuadricError::RankDeficientFit(vertex))?;

    // undo the coordinate normalisation: the Hessian picks up 1/scale
    let hess = Matrix2::new(coeffs[3], coeffs[4], coeffs[4], coeffs[5]) / scale;
    // classical sign convention: sphere fitted in its outward-normal frame
    // has heights curving away, so the form is minus the height Hessian
    Ok((SecondFundamentalForm2D::from_matrix(&(-hess)), frame))
}

/// True iff the relative spread of discrete mean curvature is below `tol`
/// and the mesh has genus zero.
pub fn is_round_sphere(mesh: &TriangleMesh, tol: f64) -> bool {
    if mesh.genus() != 0 {
        return false;
    }
    relative_h_spread(mesh) < tol
}

/// Standard deviation of vertex mean curvature divided by its mean
/// magnitude.
pub fn relative_h_spread(mesh: &TriangleMesh) -> f64 {
    let data = CurvatureData::compute(mesh);
    let n = data.mean_curvature.len() as f64;
    let mean = data.mean_curvature.iter().sum::<f64>() / n;
    let var = data
        .mean_curvature
        .iter()
        .map(|h| (h - mean) * (h - mean))
        .sum::<f64>()
        / n;
    var.sqrt() / mean.abs().max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_ellipsoid, gen_icosphere, gen_torus, TorusSpec};
    use crate::mesh::build_mesh_open;

    #[test]
    fn icosphere_form_is_identity() {
        let mesh = gen_icosphere(1.0, 4);
        for &v in &[0usize, 100, 1000] {
            let (form, _) = second_fundamental_form_at(&mesh, v).unwrap();
            assert!((form.a11 - 1.0).abs() < 0.03, "a11 = {}", form.a11);
            assert!((form.a22 - 1.0).abs() < 0.03, "a22 = {}", form.a22);
            assert!(form.a12.abs() < 0.03);
            assert!(form.trace_free().norm_sq().sqrt() < 0.05);
        }
    }

    #[test]
    fn saddle_graph_form_is_diag_one_minus_one() {
        // z = (x^2 - y^2)/2 sampled on a fine grid around the origin
        let n = 21;
        let h = 0.01;
        let mut vertices = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let x = (i as f64 - (n as f64 - 1.0) / 2.0) * h;
                let y = (j as f64 - (n as f64 - 1.0) / 2.0) * h;
                vertices.push(nalgebra::Vector3::new(x, y, 0.5 * (x * x - y * y)));
            }
        }
        let mut faces = Vec::new();
        for j in 0..n - 1 {
            for i in 0..n - 1 {
                let a = j * n + i;
                let b = j * n + i + 1;
                let c = (j + 1) * n + i + 1;
                let d = (j + 1) * n + i;
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
        let mesh = build_mesh_open(vertices, faces).unwrap();
        let center = (n / 2) * n + n / 2;
        let (form, frame) = second_fundamental_form_at(&mesh, center).unwrap();
        // the frame normal at the saddle is -z or +z depending on winding;
        // fix the sign by referring the form to the upward normal
        let sign = frame.normal.z.signum();
        let form = form.scaled(-sign);
        // with the classical convention the upward-normal form of this graph
        // is minus its Hessian: diag(-1, 1) up to tangent-frame rotation
        let eigs = form.to_matrix().symmetric_eigenvalues();
        let mut eigs = [eigs[0], eigs[1]];
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] + 1.0).abs() < 0.03, "eigs = {eigs:?}");
        assert!((eigs[1] - 1.0).abs() < 0.03, "eigs = {eigs:?}");
    }

    #[test]
    fn torus_is_umbilic_free() {
        let spec = TorusSpec::new(1.0, 0.5, 96, 96).unwrap();
        let mesh = gen_torus(&spec);
        for &v in &[0usize, 500, 2000] {
            let (form, _) = second_fundamental_form_at(&mesh, v).unwrap();
            assert!(form.trace_free().norm_sq() > 0.0);
        }
    }

    #[test]
    fn round_sphere_detection() {
        assert!(is_round_sphere(&gen_icosphere(1.0, 3), 0.05));
        let spec = TorusSpec::new(1.0, 1.0 / 2.0_f64.sqrt(), 64, 64).unwrap();
        assert!(!is_round_sphere(&gen_torus(&spec), 0.05));
        assert!(!is_round_sphere(&gen_ellipsoid(1.0, 1.0, 2.0, 64, 64), 0.05));
    }
}
