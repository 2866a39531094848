//! Two concentric spheres joined by catenoid-profile necks: the classical
//! family whose bending energy approaches 8 pi from above while the
//! isoperimetric ratio blows up.

use super::orient_outward;
use crate::mesh::stitch::{boundary_loops, orient_consistently, submesh, zipper_band};
use crate::mesh::TriangleMesh;
use nalgebra::Vector3;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NeckedError {
    #[error("neck footprints overlap: {0}")]
    GeometryClash(String),
    #[error("parameters out of range: {0}")]
    Domain(String),
}

fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
}

/// Height of the two neck branches over the site tangent plane.
///
/// The waist is an exact catenoid graph; a tanh cap limits how much of the
/// sphere gap the catenoid is allowed to close, and the collar blend
/// carries the rest. Capping keeps the collar's bending cost proportional
/// to the gap, so the family's energy genuinely decays as the gap shrinks
/// regardless of how thin the waist is.
struct NeckProfile {
    r_in: f64,
    r_out: f64,
    delta: f64,
    cap_height: f64,
    rho_blend: f64,
    rho_ring: f64,
}

impl NeckProfile {
    fn branch(&self, rho: f64, upper: bool) -> f64 {
        let z_in = (self.r_in * self.r_in - rho * rho).sqrt();
        let z_out = (self.r_out * self.r_out - rho * rho).sqrt();
        let mid = 0.5 * (z_in + z_out);
        let half_sphere = 0.5 * (z_out - z_in);
        let hc = self.delta * (rho / self.delta).max(1.0).acosh();
        let half_cat = self.cap_height * (hc / self.cap_height).tanh();
        let lam = smoothstep((rho - self.rho_blend) / (self.rho_ring - self.rho_blend));
        let half = half_cat + lam * (half_sphere - half_cat);
        if upper {
            mid + half
        } else {
            mid - half
        }
    }
}

/// Genus-g surface made of spheres of radius 1 and 1+eps joined by g+1
/// necks of waist radius delta, equidistributed along the equator.
pub fn gen_necked_spheres(
    genus: usize,
    eps: f64,
    delta: f64,
) -> Result<TriangleMesh, NeckedError> {
    if genus < 1 {
        return Err(NeckedError::Domain("genus must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 0.2) {
        return Err(NeckedError::Domain(format!(
            "gap eps must lie in (0, 0.2), got {eps}"
        )));
    }
    if !(delta > 0.0 && delta <= eps / 4.0) {
        return Err(NeckedError::Domain(format!(
            "waist delta must satisfy 0 < delta <= eps/4, got {delta}"
        )));
    }
    let sites = genus + 1;

    // lateral extent of a neck hole; must leave room between sites
    let rho_hole = (8.0 * eps).sqrt().min(0.72);
    let theta_hole = rho_hole.asin();
    let spacing = std::f64::consts::TAU / sites as f64;
    if 2.0 * (theta_hole + 0.15) > spacing {
        return Err(NeckedError::GeometryClash(format!(
            "{sites} necks of angular radius {theta_hole:.3} do not fit on the equator"
        )));
    }

    let r_in = 1.0;
    let r_out = 1.0 + eps;
    let inner = super::gen_icosphere(r_in, 4);
    let outer = super::gen_icosphere(r_out, 4);

    let site_axis: Vec<Vector3<f64>> = (0..sites)
        .map(|s| {
            let t = std::f64::consts::TAU * s as f64 / sites as f64;
            Vector3::new(t.cos(), t.sin(), 0.0)
        })
        .collect();

    // drop every face with a vertex inside any neck footprint
    let hole_cos = theta_hole.cos();
    let in_hole = |p: &Vector3<f64>, radius: f64| -> bool {
        site_axis.iter().any(|axis| p.dot(axis) / radius > hole_cos)
    };
    let keep = |mesh: &TriangleMesh, radius: f64| -> Vec<bool> {
        mesh.faces()
            .iter()
            .map(|f| !f.iter().any(|&v| in_hole(&mesh.position(v), radius)))
            .collect()
    };

    let keep_in = keep(&inner, r_in);
    let (mut vertices, mut faces, _) = submesh(&inner, |fi| keep_in[fi]);
    let inner_count = faces.len();
    let keep_out = keep(&outer, r_out);
    let (v_out, f_out, _) = submesh(&outer, |fi| keep_out[fi]);
    let offset = vertices.len();
    vertices.extend(v_out);
    faces.extend(
        f_out
            .iter()
            .map(|&[a, b, c]| [a + offset, b + offset, c + offset]),
    );

    // hole loops, one per site per sphere
    let loops = boundary_loops(&faces[..inner_count])
        .into_iter()
        .map(|l| (l, true))
        .chain(
            boundary_loops(&faces[inner_count..])
                .into_iter()
                .map(|l| (l, false)),
        )
        .collect::<Vec<_>>();
    if loops.len() != 2 * sites {
        return Err(NeckedError::GeometryClash(format!(
            "expected {} hole loops, found {}",
            2 * sites,
            loops.len()
        )));
    }

    let profile = NeckProfile {
        r_in,
        r_out,
        delta,
        cap_height: 0.25 * eps,
        rho_blend: 0.35 * rho_hole,
        rho_ring: 0.8 * rho_hole,
    };

    for axis in &site_axis {
        let frame_u = Vector3::new(-axis.y, axis.x, 0.0);
        let frame_v = Vector3::new(0.0, 0.0, 1.0);
        let place = |rho: f64, theta: f64, z: f64| -> Vector3<f64> {
            (frame_u * theta.cos() + frame_v * theta.sin()) * rho + *axis * z
        };

        let n_rho = 36;
        let n_theta = 64;
        let stations: Vec<f64> = (0..=n_rho)
            .map(|k| {
                let t = k as f64 / n_rho as f64;
                delta * (profile.rho_ring / delta).powf(t)
            })
            .collect();

        let mut waist = Vec::new();
        let z_waist = profile.branch(delta, true);
        for k in 0..n_theta {
            let t = std::f64::consts::TAU * k as f64 / n_theta as f64;
            vertices.push(place(delta, t, z_waist));
            waist.push(vertices.len() - 1);
        }

        for upper in [false, true] {
            let mut prev = waist.clone();
            for &rho in stations.iter().skip(1) {
                let mut ring = Vec::new();
                for k in 0..n_theta {
                    let t = std::f64::consts::TAU * k as f64 / n_theta as f64;
                    vertices.push(place(rho, t, profile.branch(rho, upper)));
                    ring.push(vertices.len() - 1);
                }
                faces.extend(crate::mesh::stitch::ring_strip(&prev, &ring));
                prev = ring;
            }
            // zipper the outermost neck ring to the matching hole loop
            let want_inner = !upper;
            let target = loops
                .iter()
                .filter(|(_, is_inner)| *is_inner == want_inner)
                .min_by(|(l1, _), (l2, _)| {
                    let center_dist = |l: &Vec<usize>| {
                        let c = l.iter().map(|&v| vertices[v]).sum::<Vector3<f64>>()
                            / l.len() as f64;
                        (c.normalize() - axis).norm()
                    };
                    center_dist(l1).partial_cmp(&center_dist(l2)).unwrap()
                })
                .map(|(l, _)| l.clone())
                .expect("hole loop for site");
            let vs_now = vertices.clone();
            let angle = |v: usize| {
                let p = vs_now[v];
                p.dot(&frame_v).atan2(p.dot(&frame_u))
            };
            faces.extend(zipper_band(&prev, &target, angle));
        }
    }

    orient_consistently(&mut faces).map_err(|e| {
        NeckedError::GeometryClash(format!("assembled neck surface is not orientable: {e}"))
    })?;
    let mesh = TriangleMesh::new(vertices, faces, None, true)
        .map_err(|e| NeckedError::GeometryClash(format!("assembly failed validation: {e}")))?;
    Ok(orient_outward(mesh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::measure;
    use std::f64::consts::PI;

    #[test]
    fn genus_one_necked_spheres() {
        let mesh = gen_necked_spheres(1, 0.05, 0.005).unwrap();
        let m = measure(&mesh);
        assert_eq!(m.genus, 1, "euler = {}", m.euler_char);
        assert!(m.volume > 0.0);
        assert!(
            m.willmore > 8.0 * PI,
            "W = {} should exceed 8 pi = {}",
            m.willmore,
            8.0 * PI
        );
    }

    #[test]
    fn energy_decreases_and_iso_grows_toward_the_limit() {
        let coarse = measure(&gen_necked_spheres(1, 0.05, 0.005).unwrap());
        let fine = measure(&gen_necked_spheres(1, 0.02, 0.001).unwrap());
        assert!(fine.willmore > 8.0 * PI);
        assert!(
            fine.willmore < coarse.willmore,
            "W should decrease toward 8 pi: {} -> {}",
            coarse.willmore,
            fine.willmore
        );
        assert!(
            fine.iso.unwrap() > coarse.iso.unwrap(),
            "iso should increase: {} -> {}",
            coarse.iso.unwrap(),
            fine.iso.unwrap()
        );
    }

    #[test]
    fn genus_three_topology() {
        let mesh = gen_necked_spheres(3, 0.02, 0.001).unwrap();
        assert_eq!(mesh.euler_characteristic(), -4);
        assert_eq!(mesh.genus(), 3);
    }

    #[test]
    fn oversized_necks_clash() {
        assert!(matches!(
            gen_necked_spheres(24, 0.05, 0.005),
            Err(NeckedError::GeometryClash(_))
        ));
    }
}
