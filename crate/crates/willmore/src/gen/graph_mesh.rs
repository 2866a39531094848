//! Structured polar-grid triangulations of height-function graphs, with
//! their boundary rings exposed so other surfaces can be stitched on.

use crate::mesh::{build_mesh_open, TriangleMesh};
use crate::quadrature::GraphFn;
use nalgebra::{Vector2, Vector3};

/// Polar footprint of a graph patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolarDomain {
    Disk { outer: f64 },
    Annulus { inner: f64, outer: f64 },
}

impl PolarDomain {
    pub fn outer(&self) -> f64 {
        match *self {
            PolarDomain::Disk { outer } => outer,
            PolarDomain::Annulus { outer, .. } => outer,
        }
    }

    pub fn inner(&self) -> f64 {
        match *self {
            PolarDomain::Disk { .. } => 0.0,
            PolarDomain::Annulus { inner, .. } => inner,
        }
    }
}

/// A graph patch: polar domain, grid resolution, and the height function
/// handle (twice evaluable everywhere on the domain).
pub struct GraphPatch<'a> {
    pub domain: PolarDomain,
    pub n_radial: usize,
    pub n_angular: usize,
    pub height: &'a dyn GraphFn,
}

/// A meshed graph patch with its radial vertex rings exposed, innermost
/// first. Disk patches additionally carry the centre vertex.
pub struct PolarGraphMesh {
    pub mesh: TriangleMesh,
    pub rings: Vec<Vec<usize>>,
    pub radii: Vec<f64>,
    pub center: Option<usize>,
}

/// Meshes the rings/strips of a polar graph over explicit radial stations
/// (strictly increasing). With `close_center`, a fan to the vertex at the
/// origin is added.
pub fn polar_graph_mesh(
    stations: &[f64],
    n_angular: usize,
    height: &dyn GraphFn,
    close_center: bool,
) -> PolarGraphMesh {
    assert!(stations.len() >= 2, "need at least two radial stations");
    assert!(n_angular >= 8, "angular resolution too small");
    let tau = std::f64::consts::TAU;
    let mut vertices = Vec::new();
    let mut rings = Vec::new();
    for &r in stations {
        assert!(r > 0.0);
        let mut ring = Vec::with_capacity(n_angular);
        for k in 0..n_angular {
            let t = tau * k as f64 / n_angular as f64;
            let z = Vector2::new(r * t.cos(), r * t.sin());
            let w = height.jet(z).w;
            vertices.push(Vector3::new(z.x, z.y, w));
            ring.push(vertices.len() - 1);
        }
        rings.push(ring);
    }

    let mut faces = Vec::new();
    for pair in rings.windows(2) {
        faces.extend(crate::mesh::stitch::ring_strip(&pair[0], &pair[1]));
    }

    let center = if close_center {
        let w0 = height.jet(Vector2::zeros()).w;
        vertices.push(Vector3::new(0.0, 0.0, w0));
        let c = vertices.len() - 1;
        let first = &rings[0];
        for j in 0..n_angular {
            faces.push([c, first[j], first[(j + 1) % n_angular]]);
        }
        Some(c)
    } else {
        None
    };

    let mesh = build_mesh_open(vertices, faces).expect("polar grid must validate");
    PolarGraphMesh {
        mesh,
        rings,
        radii: stations.to_vec(),
        center,
    }
}

/// Structured triangulation of the graph {(z, w(z))} over the patch
/// domain. The result is open by design; its boundary rings are exposed
/// for stitching.
pub fn gen_graph_mesh(patch: &GraphPatch) -> PolarGraphMesh {
    let (inner, outer) = (patch.domain.inner(), patch.domain.outer());
    assert!(outer > inner, "outer radius must exceed inner radius");
    let n_r = patch.n_radial.max(2);
    let close_center = matches!(patch.domain, PolarDomain::Disk { .. });
    let first = if close_center {
        outer / n_r as f64
    } else {
        inner
    };
    let stations: Vec<f64> = (0..n_r)
        .map(|k| first + (outer - first) * k as f64 / (n_r - 1) as f64)
        .collect();
    polar_graph_mesh(&stations, patch.n_angular, patch.height, close_center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Jet2;
    use nalgebra::Matrix2;
    use std::f64::consts::PI;

    fn mesh_area(mesh: &TriangleMesh) -> f64 {
        (0..mesh.face_count()).map(|f| mesh.face_area(f)).sum()
    }

    #[test]
    fn flat_annulus_area() {
        let flat = |_z: Vector2<f64>| Jet2::zero();
        let patch = GraphPatch {
            domain: PolarDomain::Annulus { inner: 0.5, outer: 1.0 },
            n_radial: 48,
            n_angular: 192,
            height: &flat,
        };
        let pm = gen_graph_mesh(&patch);
        let exact = PI * (1.0 - 0.25);
        assert!((mesh_area(&pm.mesh) - exact).abs() < 0.005 * exact);
        assert!(!pm.mesh.is_closed());
    }

    #[test]
    fn paraboloid_disk_area() {
        let para = |z: Vector2<f64>| Jet2 {
            w: 0.5 * z.norm_squared(),
            dw: z,
            d2w: Matrix2::identity(),
        };
        let patch = GraphPatch {
            domain: PolarDomain::Disk { outer: 1.0 },
            n_radial: 64,
            n_angular: 256,
            height: &para,
        };
        let pm = gen_graph_mesh(&patch);
        let exact = 2.0 * PI * (2.0 * 2.0_f64.sqrt() - 1.0) / 3.0;
        assert!((mesh_area(&pm.mesh) - exact).abs() < 0.01 * exact);
        assert!(pm.center.is_some());
    }

    #[test]
    fn boundary_ring_count_matches_angular_resolution() {
        let flat = |_z: Vector2<f64>| Jet2::zero();
        let patch = GraphPatch {
            domain: PolarDomain::Annulus { inner: 0.4, outer: 0.9 },
            n_radial: 10,
            n_angular: 64,
            height: &flat,
        };
        let pm = gen_graph_mesh(&patch);
        assert_eq!(pm.rings.first().unwrap().len(), 64);
        assert_eq!(pm.rings.last().unwrap().len(), 64);
        let loops = crate::mesh::stitch::boundary_loops(pm.mesh.faces());
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|l| l.len() == 64));
    }
}
