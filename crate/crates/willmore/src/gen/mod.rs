//! Parametric generators for the test surfaces and the closed-form
//! constants attached to tori of revolution.

mod constants;
mod graph_mesh;
mod necked;

pub use constants::{solution_interval_constants, torus_closed_forms, GenError, IntervalConstants};
pub use graph_mesh::{gen_graph_mesh, GraphPatch, PolarDomain};
pub use necked::{gen_necked_spheres, NeckedError};

use crate::mesh::TriangleMesh;
use nalgebra::Vector3;
use std::collections::HashMap;

/// Torus of revolution with major radius R and minor radius r, sampled on
/// an nu x nv parameter grid.
#[derive(Debug, Clone, Copy)]
pub struct TorusSpec {
    pub major: f64,
    pub minor: f64,
    pub nu: usize,
    pub nv: usize,
}

impl TorusSpec {
    pub fn new(major: f64, minor: f64, nu: usize, nv: usize) -> Result<TorusSpec, GenError> {
        if !(minor > 0.0 && minor < major) {
            return Err(GenError::Domain(format!(
                "torus radii must satisfy 0 < r < R, got r = {minor}, R = {major}"
            )));
        }
        if nu < 8 || nv < 8 {
            return Err(GenError::Domain(format!(
                "torus grid must be at least 8x8, got {nu}x{nv}"
            )));
        }
        Ok(TorusSpec { major, minor, nu, nv })
    }

    /// Spec with the given radius ratio c = r/R at major radius 1.
    pub fn from_ratio(c: f64, nu: usize, nv: usize) -> Result<TorusSpec, GenError> {
        TorusSpec::new(1.0, c, nu, nv)
    }

    pub fn ratio(&self) -> f64 {
        self.minor / self.major
    }

    pub fn point(&self, u: f64, v: f64) -> Vector3<f64> {
        let w = self.major + self.minor * u.cos();
        Vector3::new(w * v.cos(), w * v.sin(), self.minor * u.sin())
    }
}

/// Geodesic icosphere of the given radius, outward oriented.
/// `subdiv = 0` is the icosahedron itself; each level quadruples the faces.
pub fn gen_icosphere(radius: f64, subdiv: u32) -> TriangleMesh {
    assert!(radius > 0.0, "icosphere radius must be positive");
    assert!(subdiv <= 7, "icosphere subdivision capped at 7");

    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut vertices: Vec<Vector3<f64>> = vec![
        Vector3::new(-1.0, phi, 0.0),
        Vector3::new(1.0, phi, 0.0),
        Vector3::new(-1.0, -phi, 0.0),
        Vector3::new(1.0, -phi, 0.0),
        Vector3::new(0.0, -1.0, phi),
        Vector3::new(0.0, 1.0, phi),
        Vector3::new(0.0, -1.0, -phi),
        Vector3::new(0.0, 1.0, -phi),
        Vector3::new(phi, 0.0, -1.0),
        Vector3::new(phi, 0.0, 1.0),
        Vector3::new(-phi, 0.0, -1.0),
        Vector3::new(-phi, 0.0, 1.0),
    ]
    .into_iter()
    .map(|v| v.normalize())
    .collect();

    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdiv {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut new_faces = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let mut mid = |i: usize, j: usize, vertices: &mut Vec<Vector3<f64>>| {
                let key = if i < j { (i, j) } else { (j, i) };
                *midpoint.entry(key).or_insert_with(|| {
                    let m = (vertices[i] + vertices[j]).normalize();
                    vertices.push(m);
                    vertices.len() - 1
                })
            };
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            new_faces.push([a, ab, ca]);
            new_faces.push([b, bc, ab]);
            new_faces.push([c, ca, bc]);
            new_faces.push([ab, bc, ca]);
        }
        faces = new_faces;
    }

    let vertices = vertices.into_iter().map(|v| v * radius).collect();
    TriangleMesh::new(vertices, faces, None, true).expect("icosphere must validate")
}

/// Closed (u, v)-grid of a parametric map with both directions periodic.
/// The winding of the emitted faces is fixed afterwards so the enclosed
/// volume is positive.
fn periodic_grid(
    nu: usize,
    nv: usize,
    point: impl Fn(f64, f64) -> Vector3<f64>,
) -> TriangleMesh {
    let tau = std::f64::consts::TAU;
    let mut vertices = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            vertices.push(point(tau * i as f64 / nu as f64, tau * j as f64 / nv as f64));
        }
    }
    let idx = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let a = idx(i, j);
            let b = idx(i + 1, j);
            let c = idx(i + 1, j + 1);
            let d = idx(i, j + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    let mesh = TriangleMesh::new(vertices, faces, None, true).expect("grid must validate");
    orient_outward(mesh)
}

pub(crate) fn orient_outward(mesh: TriangleMesh) -> TriangleMesh {
    if crate::mesh::measure(&mesh).volume < 0.0 {
        mesh.flipped()
    } else {
        mesh
    }
}

/// Torus of revolution, outward oriented, genus 1.
pub fn gen_torus(spec: &TorusSpec) -> TriangleMesh {
    periodic_grid(spec.nu, spec.nv, |u, v| spec.point(u, v))
}

/// Ellipsoid with semi-axes (a, b, c) as a latitude/longitude grid with
/// pole fans, outward oriented.
pub fn gen_ellipsoid(a: f64, b: f64, c: f64, n_lat: usize, n_lon: usize) -> TriangleMesh {
    assert!(a > 0.0 && b > 0.0 && c > 0.0);
    assert!(n_lat >= 3 && n_lon >= 3);
    let pi = std::f64::consts::PI;
    let tau = std::f64::consts::TAU;

    let mut vertices = Vec::new();
    vertices.push(Vector3::new(0.0, 0.0, c)); // north pole, u = 0
    for i in 1..n_lat {
        let u = pi * i as f64 / n_lat as f64;
        for j in 0..n_lon {
            let v = tau * j as f64 / n_lon as f64;
            vertices.push(Vector3::new(
                a * u.sin() * v.cos(),
                b * u.sin() * v.sin(),
                c * u.cos(),
            ));
        }
    }
    vertices.push(Vector3::new(0.0, 0.0, -c)); // south pole
    let south = vertices.len() - 1;
    let ring = |i: usize, j: usize| 1 + (i - 1) * n_lon + (j % n_lon);

    let mut faces = Vec::new();
    for j in 0..n_lon {
        faces.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..n_lat - 1 {
        for j in 0..n_lon {
            let a0 = ring(i, j);
            let b0 = ring(i, j + 1);
            let c0 = ring(i + 1, j + 1);
            let d0 = ring(i + 1, j);
            faces.push([a0, c0, b0]);
            faces.push([a0, d0, c0]);
        }
    }
    for j in 0..n_lon {
        faces.push([south, ring(n_lat - 1, j + 1), ring(n_lat - 1, j)]);
    }

    let mesh = TriangleMesh::new(vertices, faces, None, true).expect("ellipsoid must validate");
    orient_outward(mesh)
}
