//! Discrete curvature operators: cotangent mean-curvature vectors, mixed
//! Voronoi vertex areas, angle-weighted normals, and the exact gradients of
//! total area and enclosed volume with respect to vertex positions.

use super::TriangleMesh;
use nalgebra::Vector3;

/// Per-vertex scalar or vector data aligned with a mesh.
#[derive(Debug, Clone)]
pub struct VertexField<T> {
    values: Vec<T>,
}

impl<T: Clone> VertexField<T> {
    pub fn new(mesh: &TriangleMesh, values: Vec<T>) -> Self {
        assert_eq!(
            values.len(),
            mesh.vertex_count(),
            "field length must equal vertex count"
        );
        VertexField { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, v: usize) -> &T {
        &self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Everything the curvature pipeline derives from a mesh in one pass.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    /// Mixed (Voronoi-clamped) vertex areas.
    pub mixed_area: Vec<f64>,
    /// Angle-weighted unit vertex normals.
    pub normal: Vec<Vector3<f64>>,
    /// Cotangent mean-curvature vector; equals the gradient of total mesh
    /// area with respect to the vertex position.
    pub area_gradient: Vec<Vector3<f64>>,
    /// Gradient of the signed enclosed volume with respect to the vertex
    /// position.
    pub volume_gradient: Vec<Vector3<f64>>,
    /// Scalar mean curvature (sum of principal curvatures), signed so that
    /// an outward-oriented sphere of radius r gets H = 2/r.
    pub mean_curvature: Vec<f64>,
}

fn cot(a: Vector3<f64>, b: Vector3<f64>) -> f64 {
    let cross = a.cross(&b).norm();
    if cross < 1e-300 {
        return 0.0;
    }
    a.dot(&b) / cross
}

impl CurvatureData {
    pub fn compute(mesh: &TriangleMesh) -> CurvatureData {
        let nv = mesh.vertex_count();
        let mut mixed_area = vec![0.0; nv];
        let mut normal = vec![Vector3::zeros(); nv];
        let mut area_gradient = vec![Vector3::zeros(); nv];
        let mut volume_gradient = vec![Vector3::zeros(); nv];

        for (fi, &[ia, ib, ic]) in mesh.faces().iter().enumerate() {
            let pa = mesh.position(ia);
            let pb = mesh.position(ib);
            let pc = mesh.position(ic);
            let n_raw = mesh.face_normal_raw(fi);
            let area = 0.5 * n_raw.norm();
            let n_unit = n_raw / n_raw.norm();

            // angle-weighted normals
            let idx = [ia, ib, ic];
            let pos = [pa, pb, pc];
            for k in 0..3 {
                let e1 = pos[(k + 1) % 3] - pos[k];
                let e2 = pos[(k + 2) % 3] - pos[k];
                let angle = e1.angle(&e2);
                normal[idx[k]] += angle * n_unit;
            }

            // area gradient: d(area)/d(pa) = 0.5 (pb - pc) x n_unit
            area_gradient[ia] += 0.5 * (pb - pc).cross(&n_unit);
            area_gradient[ib] += 0.5 * (pc - pa).cross(&n_unit);
            area_gradient[ic] += 0.5 * (pa - pb).cross(&n_unit);

            // volume gradient of det(pa, pb, pc)/6
            volume_gradient[ia] += pb.cross(&pc) / 6.0;
            volume_gradient[ib] += pc.cross(&pa) / 6.0;
            volume_gradient[ic] += pa.cross(&pb) / 6.0;

            // mixed Voronoi area, clamped for obtuse triangles
            let cot_a = cot(pb - pa, pc - pa);
            let cot_b = cot(pc - pb, pa - pb);
            let cot_c = cot(pa - pc, pb - pc);
            if cot_a >= 0.0 && cot_b >= 0.0 && cot_c >= 0.0 {
                let ab2 = (pb - pa).norm_squared();
                let bc2 = (pc - pb).norm_squared();
                let ca2 = (pa - pc).norm_squared();
                mixed_area[ia] += 0.125 * (ab2 * cot_c + ca2 * cot_b);
                mixed_area[ib] += 0.125 * (ab2 * cot_c + bc2 * cot_a);
                mixed_area[ic] += 0.125 * (ca2 * cot_b + bc2 * cot_a);
            } else {
                // obtuse: half the area to the obtuse corner, quarter to the rest
                let shares = [
                    if cot_a < 0.0 { 0.5 } else { 0.25 },
                    if cot_b < 0.0 { 0.5 } else { 0.25 },
                    if cot_c < 0.0 { 0.5 } else { 0.25 },
                ];
                mixed_area[ia] += shares[0] * area;
                mixed_area[ib] += shares[1] * area;
                mixed_area[ic] += shares[2] * area;
            }
        }

        for n in normal.iter_mut() {
            let len = n.norm();
            if len > 0.0 {
                *n /= len;
            }
        }

        let mean_curvature = (0..nv)
            .map(|v| {
                let k = area_gradient[v];
                let a = mixed_area[v];
                if a <= 0.0 {
                    return 0.0;
                }
                let signed = k.dot(&normal[v]);
                signed.signum() * k.norm() / a
            })
            .collect();

        CurvatureData {
            mixed_area,
            normal,
            area_gradient,
            volume_gradient,
            mean_curvature,
        }
    }
}

/// Per-vertex scalar mean curvature with the convention H = 2/r > 0 on an
/// outward-oriented sphere of radius r.
pub fn vertex_mean_curvature(mesh: &TriangleMesh) -> VertexField<f64> {
    let data = CurvatureData::compute(mesh);
    VertexField::new(mesh, data.mean_curvature)
}
