//! Mesh surgery: extracting boundary loops, removing windows, stitching
//! rings of vertices into bands, and propagating a consistent orientation
//! through an assembled face soup.

use super::{MeshError, TriangleMesh};
use nalgebra::Vector3;
use std::collections::HashMap;

/// Keeps the faces selected by `keep`, drops unreferenced vertices, and
/// returns the open submesh together with the old-to-new vertex map.
pub fn submesh(
    mesh: &TriangleMesh,
    keep: impl Fn(usize) -> bool,
) -> (Vec<Vector3<f64>>, Vec<[usize; 3]>, Vec<Option<usize>>) {
    let mut map: Vec<Option<usize>> = vec![None; mesh.vertex_count()];
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (fi, f) in mesh.faces().iter().enumerate() {
        if !keep(fi) {
            continue;
        }
        let mut nf = [0usize; 3];
        for (k, &v) in f.iter().enumerate() {
            let nv = *map[v].get_or_insert_with(|| {
                vertices.push(mesh.position(v));
                vertices.len() - 1
            });
            nf[k] = nv;
        }
        faces.push(nf);
    }
    (vertices, faces, map)
}

/// Directed boundary edges of a face list: edges whose reverse never
/// occurs. For a consistently oriented manifold patch these chain into
/// disjoint cycles, which are returned as vertex loops.
pub fn boundary_loops(faces: &[[usize; 3]]) -> Vec<Vec<usize>> {
    let mut directed = std::collections::HashSet::new();
    for f in faces {
        for k in 0..3 {
            directed.insert((f[k], f[(k + 1) % 3]));
        }
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in &directed {
        if !directed.contains(&(b, a)) {
            // boundary edge; the loop follows it in reverse so that the
            // cycle winds with the surface on its left
            next.insert(b, a);
        }
    }
    let mut loops = Vec::new();
    let mut visited = std::collections::HashSet::new();
    let mut starts: Vec<usize> = next.keys().copied().collect();
    starts.sort_unstable();
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        loop {
            cycle.push(v);
            visited.insert(v);
            v = next[&v];
            if v == start {
                break;
            }
        }
        loops.push(cycle);
    }
    loops
}

/// Triangulates the band between two vertex loops that both wind once
/// around a common axis. `angle` gives the winding angle of each vertex;
/// loops are re-sorted internally. Produces `|a| + |b|` triangles.
pub fn zipper_band(
    loop_a: &[usize],
    loop_b: &[usize],
    angle: impl Fn(usize) -> f64,
) -> Vec<[usize; 3]> {
    let tau = std::f64::consts::TAU;
    let sort_by_angle = |l: &[usize]| {
        let mut v: Vec<(f64, usize)> = l
            .iter()
            .map(|&i| (angle(i).rem_euclid(tau), i))
            .collect();
        v.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        v
    };
    let a = sort_by_angle(loop_a);
    let b = sort_by_angle(loop_b);
    let (na, nb) = (a.len(), b.len());
    assert!(na >= 3 && nb >= 3, "zipper loops need at least 3 vertices");

    // start b at its vertex of least non-negative angular offset from a[0]
    let ja = 0usize;
    let mut jb = 0usize;
    let mut best = f64::INFINITY;
    for (k, &(t, _)) in b.iter().enumerate() {
        let off = (t - a[0].0).rem_euclid(tau);
        if off < best {
            best = off;
            jb = k;
        }
    }

    // cumulative unwrapped angle after k steps around the loop from `start`
    let unwrapped = |l: &[(f64, usize)], start: usize| -> Vec<f64> {
        let n = l.len();
        let mut u = vec![0.0; n + 1];
        for k in 1..=n {
            let t_prev = l[(start + k - 1) % n].0;
            let t_cur = l[(start + k) % n].0;
            let mut step = (t_cur - t_prev).rem_euclid(tau);
            if step == 0.0 && k == n {
                step = tau;
            }
            u[k] = u[k - 1] + step;
        }
        u
    };
    let ua = unwrapped(&a, ja);
    let ub = unwrapped(&b, jb);

    let mut faces = Vec::with_capacity(na + nb);
    let (mut ia, mut ib) = (0usize, 0usize);
    while ia < na || ib < nb {
        let a_cur = a[(ja + ia) % na].1;
        let b_cur = b[(jb + ib) % nb].1;
        let advance_a = if ia >= na {
            false
        } else if ib >= nb {
            true
        } else {
            ua[ia + 1] <= best + ub[ib + 1]
        };
        if advance_a {
            let a_next = a[(ja + ia + 1) % na].1;
            faces.push([a_cur, b_cur, a_next]);
            ia += 1;
        } else {
            let b_next = b[(jb + ib + 1) % nb].1;
            faces.push([b_cur, b_next, a_cur]);
            ib += 1;
        }
    }
    faces
}

/// Quad strip between two rings with identical vertex counts and matching
/// angular order.
pub fn ring_strip(inner: &[usize], outer: &[usize]) -> Vec<[usize; 3]> {
    assert_eq!(inner.len(), outer.len());
    let n = inner.len();
    let mut faces = Vec::with_capacity(2 * n);
    for j in 0..n {
        let a = inner[j];
        let b = inner[(j + 1) % n];
        let c = outer[(j + 1) % n];
        let d = outer[j];
        faces.push([a, d, c]);
        faces.push([a, c, b]);
    }
    faces
}

/// Flips faces until every interior edge is traversed once in each
/// direction, starting from face 0 of each connected component. Fails on
/// genuinely non-orientable or non-manifold input.
pub fn orient_consistently(faces: &mut [[usize; 3]]) -> Result<(), MeshError> {
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let a = f[k];
            let b = f[(k + 1) % 3];
            let key = if a < b { (a, b) } else { (b, a) };
            edge_faces.entry(key).or_default().push(fi);
        }
    }
    for (&(a, b), fs) in &edge_faces {
        if fs.len() > 2 {
            return Err(MeshError::NonManifold(a, b));
        }
    }

    let has_directed = |f: &[usize; 3], a: usize, b: usize| -> bool {
        (0..3).any(|k| f[k] == a && f[(k + 1) % 3] == b)
    };

    let n = faces.len();
    let mut state = vec![0u8; n]; // 0 unvisited, 1 keep, 2 flipped
    for seed in 0..n {
        if state[seed] != 0 {
            continue;
        }
        state[seed] = 1;
        let mut stack = vec![seed];
        while let Some(fi) = stack.pop() {
            let f = faces[fi];
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                let key = if a < b { (a, b) } else { (b, a) };
                for &gi in &edge_faces[&key] {
                    if gi == fi {
                        continue;
                    }
                    // neighbour must traverse the shared edge as b -> a
                    let consistent = has_directed(&faces[gi], b, a);
                    if state[gi] == 0 {
                        if !consistent {
                            faces[gi].swap(1, 2);
                            state[gi] = 2;
                        } else {
                            state[gi] = 1;
                        }
                        stack.push(gi);
                    } else if !has_directed(&faces[gi], b, a) {
                        return Err(MeshError::NonManifold(a, b));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_icosphere;
    use crate::mesh::{build_mesh, build_mesh_open, measure};
    use nalgebra::Vector3;

    #[test]
    fn boundary_loop_of_punctured_sphere() {
        let sphere = gen_icosphere(1.0, 2);
        // remove a cap around +z
        let keep = |fi: usize| {
            let [a, b, c] = sphere.faces()[fi];
            [a, b, c]
                .iter()
                .all(|&v| sphere.position(v).z < 0.8)
        };
        let (vertices, faces, _) = submesh(&sphere, keep);
        let loops = boundary_loops(&faces);
        assert_eq!(loops.len(), 1, "one hole expected");
        assert!(loops[0].len() >= 5);
        let open = build_mesh_open(vertices, faces).unwrap();
        assert!(!open.boundary_vertices().is_empty());
    }

    #[test]
    fn zipper_closes_a_punctured_sphere_with_a_ring() {
        let sphere = gen_icosphere(1.0, 2);
        let keep = |fi: usize| {
            let [a, b, c] = sphere.faces()[fi];
            [a, b, c].iter().all(|&v| sphere.position(v).z < 0.8)
        };
        let (mut vertices, mut faces, _) = submesh(&sphere, keep);
        let hole = boundary_loops(&faces).remove(0);
        // cap the hole with a small ring plus a fan to the pole
        let n_ring = 16;
        let mut ring = Vec::new();
        let rho = 0.35;
        let z = (1.0_f64 - rho * rho).sqrt();
        for k in 0..n_ring {
            let t = std::f64::consts::TAU * k as f64 / n_ring as f64;
            vertices.push(Vector3::new(rho * t.cos(), rho * t.sin(), z));
            ring.push(vertices.len() - 1);
        }
        let pole = vertices.len();
        vertices.push(Vector3::new(0.0, 0.0, 1.0));
        let vs = vertices.clone();
        let angle = |v: usize| vs[v].y.atan2(vs[v].x);
        faces.extend(zipper_band(&hole, &ring, angle));
        for k in 0..n_ring {
            faces.push([pole, ring[k], ring[(k + 1) % n_ring]]);
        }
        orient_consistently(&mut faces).unwrap();
        let mesh = build_mesh(vertices, faces).unwrap();
        let m = measure(&mesh);
        let mesh = if m.volume < 0.0 { mesh.flipped() } else { mesh };
        let m = measure(&mesh);
        assert_eq!(m.euler_char, 2);
        let exact = 4.0 / 3.0 * std::f64::consts::PI;
        assert!((m.volume - exact).abs() < 0.05 * exact);
    }

    #[test]
    fn ring_strip_is_manifold() {
        let n = 12;
        let mut vertices = Vec::new();
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        for k in 0..n {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            vertices.push(Vector3::new(t.cos(), t.sin(), 0.0));
            inner.push(k);
        }
        for k in 0..n {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            vertices.push(Vector3::new(2.0 * t.cos(), 2.0 * t.sin(), 0.0));
            outer.push(n + k);
        }
        let faces = ring_strip(&inner, &outer);
        let mesh = build_mesh_open(vertices, faces).unwrap();
        assert_eq!(mesh.face_count(), 2 * n);
        // every band face has upward normal
        for fi in 0..mesh.face_count() {
            assert!(mesh.face_normal_raw(fi).z > 0.0);
        }
    }
}
