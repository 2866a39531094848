//! Global measurements of a mesh: area, enclosed volume, Willmore energy,
//! isoperimetric ratio, and topology.

use super::curvature::CurvatureData;
use super::TriangleMesh;
use thiserror::Error;

/// Least possible isoperimetric ratio, attained by round spheres.
pub const ISO_SPHERE: f64 = 4.835975862049408; // (36 pi)^(1/3)

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("signed volume {0} is not positive: inward orientation or self-cancellation")]
    NonPositiveVolume(f64),
}

/// Measured global quantities of a closed surface mesh.
///
/// `iso` is `None` when the signed volume is not positive (inward
/// orientation or immersed self-cancellation); see [`SurfaceMeasures::require_iso`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceMeasures {
    pub area: f64,
    pub volume: f64,
    pub willmore: f64,
    pub iso: Option<f64>,
    pub euler_char: i64,
    pub genus: i64,
}

impl SurfaceMeasures {
    /// The isoperimetric ratio, or `NonPositiveVolume` if it is undefined.
    pub fn require_iso(&self) -> Result<f64, MeasureError> {
        self.iso.ok_or(MeasureError::NonPositiveVolume(self.volume))
    }
}

/// Measures a closed mesh: area, signed enclosed volume, vertex-lumped
/// Willmore energy, isoperimetric ratio area/volume^(2/3), Euler
/// characteristic and genus.
pub fn measure(mesh: &TriangleMesh) -> SurfaceMeasures {
    let mut area = 0.0;
    let mut volume = 0.0;
    for (fi, &[a, b, c]) in mesh.faces().iter().enumerate() {
        area += mesh.face_area(fi);
        volume += mesh
            .position(a)
            .dot(&mesh.position(b).cross(&mesh.position(c)))
            / 6.0;
    }
    let data = CurvatureData::compute(mesh);
    let mut willmore = 0.0;
    for v in 0..mesh.vertex_count() {
        let h = data.mean_curvature[v];
        willmore += 0.25 * h * h * data.mixed_area[v];
    }
    let euler_char = mesh.euler_characteristic();
    let iso = if volume > 0.0 {
        Some(area / volume.powf(2.0 / 3.0))
    } else {
        None
    };
    SurfaceMeasures {
        area,
        volume,
        willmore,
        iso,
        euler_char,
        genus: (2 - euler_char) / 2,
    }
}

/// Willmore energy summed over interior vertices only, skipping the given
/// set. Used for open meshes whose boundary ring has no meaningful
/// discrete curvature.
pub fn willmore_interior(mesh: &TriangleMesh, skip: &[usize]) -> f64 {
    let data = CurvatureData::compute(mesh);
    let mut excluded = vec![false; mesh.vertex_count()];
    for &v in skip {
        excluded[v] = true;
    }
    let mut willmore = 0.0;
    for v in 0..mesh.vertex_count() {
        if !excluded[v] {
            let h = data.mean_curvature[v];
            willmore += 0.25 * h * h * data.mixed_area[v];
        }
    }
    willmore
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_icosphere, gen_torus, TorusSpec};
    use crate::mesh::build_mesh;
    use nalgebra::Vector3;
    use std::f64::consts::PI;

    fn unit_cube() -> TriangleMesh {
        let vertices = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(1.0, 1.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(1.0, 0.0, 1.0),
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(0.0, 1.0, 1.0),
        ];
        let faces = vec![
            [0, 2, 1],
            [0, 3, 2], // bottom (z = 0, outward = -z)
            [4, 5, 6],
            [4, 6, 7], // top
            [0, 1, 5],
            [0, 5, 4], // front (y = 0)
            [1, 2, 6],
            [1, 6, 5], // right
            [2, 3, 7],
            [2, 7, 6], // back
            [3, 0, 4],
            [3, 4, 7], // left
        ];
        build_mesh(vertices, faces).unwrap()
    }

    #[test]
    fn cube_measures_are_exact() {
        let m = measure(&unit_cube());
        assert!((m.area - 6.0).abs() < 1e-12);
        assert!((m.volume - 1.0).abs() < 1e-12);
        assert!((m.iso.unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(m.euler_char, 2);
        assert_eq!(m.genus, 0);
    }

    #[test]
    fn icosphere_measures_match_closed_forms() {
        let mesh = gen_icosphere(1.0, 4);
        let m = measure(&mesh);
        assert!((m.area - 4.0 * PI).abs() < 0.005 * 4.0 * PI);
        assert!((m.volume - 4.0 * PI / 3.0).abs() < 0.005 * 4.0 * PI / 3.0);
        assert!((m.iso.unwrap() - ISO_SPHERE).abs() < 0.005 * ISO_SPHERE);
        assert!((m.willmore - 4.0 * PI).abs() < 0.01 * 4.0 * PI);
        assert_eq!(m.genus, 0);
    }

    #[test]
    fn icosphere_errors_shrink_under_refinement() {
        let m4 = measure(&gen_icosphere(1.0, 4));
        let m5 = measure(&gen_icosphere(1.0, 5));
        let err4 = (m4.willmore - 4.0 * PI).abs();
        let err5 = (m5.willmore - 4.0 * PI).abs();
        assert!(
            err5 < 0.5 * err4,
            "willmore error did not at least halve: {err4} -> {err5}"
        );
    }

    #[test]
    fn clifford_ratio_torus_measures() {
        let c = 1.0 / 2.0_f64.sqrt();
        let spec = TorusSpec::new(1.0, c, 256, 256).unwrap();
        let m = measure(&gen_torus(&spec));
        let w_exact = 2.0 * PI * PI;
        let iso_exact = (16.0 * 2.0_f64.sqrt() * PI * PI).powf(1.0 / 3.0);
        assert!((m.willmore - w_exact).abs() < 0.01 * w_exact);
        assert!((m.iso.unwrap() - iso_exact).abs() < 0.005 * iso_exact);
        assert_eq!(m.euler_char, 0);
        assert_eq!(m.genus, 1);
    }

    #[test]
    fn flipped_orientation_reports_absent_iso() {
        let m = measure(&unit_cube().flipped());
        assert!(m.volume < 0.0);
        assert!(m.iso.is_none());
        assert!(matches!(
            m.require_iso(),
            Err(MeasureError::NonPositiveVolume(_))
        ));
    }
}
