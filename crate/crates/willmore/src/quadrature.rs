//! High-order quadrature of geometric quantities of graph surfaces
//! {(z, w(z))} over polar domains: Gauss-Legendre panels radially,
//! trapezoid (spectrally accurate for periodic integrands) in angle.

use nalgebra::{Matrix2, Vector2};

/// Value, gradient, and Hessian of a height function at a point.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    pub w: f64,
    pub dw: Vector2<f64>,
    pub d2w: Matrix2<f64>,
}

impl Jet2 {
    pub fn zero() -> Jet2 {
        Jet2 {
            w: 0.0,
            dw: Vector2::zeros(),
            d2w: Matrix2::zeros(),
        }
    }
}

/// A twice-differentiable height function over (part of) the plane.
pub trait GraphFn {
    fn jet(&self, z: Vector2<f64>) -> Jet2;
}

impl<F: Fn(Vector2<f64>) -> Jet2> GraphFn for F {
    fn jet(&self, z: Vector2<f64>) -> Jet2 {
        self(z)
    }
}

/// Mean curvature of the graph (z, w(z)) with respect to the upward
/// normal, signed so that the upper unit hemisphere measures +2.
pub fn graph_mean_curvature(jet: &Jet2) -> f64 {
    let (wx, wy) = (jet.dw.x, jet.dw.y);
    let (wxx, wxy, wyy) = (jet.d2w[(0, 0)], jet.d2w[(0, 1)], jet.d2w[(1, 1)]);
    let g = 1.0 + wx * wx + wy * wy;
    -((1.0 + wy * wy) * wxx - 2.0 * wx * wy * wxy + (1.0 + wx * wx) * wyy) / (g * g.sqrt())
}

/// Integrated quantities of a graph patch.
#[derive(Debug, Clone, Copy, Default)]
pub struct GraphQuad {
    /// Surface area of the graph.
    pub area: f64,
    /// Willmore energy (1/4) int H^2 dmu.
    pub willmore: f64,
    /// (1/3) int (w - z . Dw) dL^2: the flux contribution of the patch to
    /// the enclosed volume, with the upward-normal orientation.
    pub volume_flux: f64,
    /// int (|z||Dw| + |w|) dL^2, the crude bound used for volume drift.
    pub volume_bound: f64,
}

impl GraphQuad {
    fn accumulate(&mut self, z: Vector2<f64>, jet: &Jet2, weight: f64) {
        let g = (1.0 + jet.dw.norm_squared()).sqrt();
        let h = graph_mean_curvature(jet);
        self.area += weight * g;
        self.willmore += weight * 0.25 * h * h * g;
        self.volume_flux += weight * (jet.w - z.dot(&jet.dw)) / 3.0;
        self.volume_bound += weight * (z.norm() * jet.dw.norm() + jet.w.abs());
    }

    pub fn max_abs(&self) -> f64 {
        self.area
            .abs()
            .max(self.willmore.abs())
            .max(self.volume_flux.abs())
            .max(self.volume_bound.abs())
    }

    fn sub(&self, other: &GraphQuad) -> GraphQuad {
        GraphQuad {
            area: self.area - other.area,
            willmore: self.willmore - other.willmore,
            volume_flux: self.volume_flux - other.volume_flux,
            volume_bound: self.volume_bound - other.volume_bound,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Quadrature resolution: Gauss-Legendre order per radial panel and the
/// number of uniform angular samples.
#[derive(Debug, Clone, Copy)]
pub struct QuadOrders {
    pub radial: usize,
    pub angular: usize,
}

impl Default for QuadOrders {
    fn default() -> Self {
        QuadOrders {
            radial: 64,
            angular: 256,
        }
    }
}

impl QuadOrders {
    pub fn doubled(&self) -> QuadOrders {
        QuadOrders {
            radial: 2 * self.radial,
            angular: 2 * self.angular,
        }
    }
}

/// Integrates the graph quantities over the polar region whose radial
/// extent is partitioned by `breaks` (strictly increasing, at least two
/// entries). The integrand is assumed smooth inside each panel.
pub fn polar_quad(f: &dyn GraphFn, breaks: &[f64], orders: QuadOrders) -> GraphQuad {
    assert!(breaks.len() >= 2, "need at least one radial panel");
    let (gl_x, gl_w) = gauss_legendre(orders.radial);
    let n_t = orders.angular;
    let dt = std::f64::consts::TAU / n_t as f64;
    let mut out = GraphQuad::default();
    for panel in breaks.windows(2) {
        let (r0, r1) = (panel[0], panel[1]);
        assert!(r1 > r0 && r0 >= 0.0, "panel [{r0}, {r1}] is invalid");
        let half = 0.5 * (r1 - r0);
        let mid = 0.5 * (r1 + r0);
        for (xi, wi) in gl_x.iter().zip(&gl_w) {
            let r = mid + half * xi;
            let wr = wi * half * r; // polar measure r dr
            for k in 0..n_t {
                let theta = dt * k as f64;
                let z = Vector2::new(r * theta.cos(), r * theta.sin());
                let jet = f.jet(z);
                out.accumulate(z, &jet, wr * dt);
            }
        }
    }
    out
}

/// Same integration with a doubled-resolution cross-check; the
/// relative difference between the two passes is reported.
pub fn polar_quad_checked(
    f: &dyn GraphFn,
    breaks: &[f64],
    orders: QuadOrders,
) -> (GraphQuad, f64) {
    let coarse = polar_quad(f, breaks, orders);
    let fine = polar_quad(f, breaks, orders.doubled());
    let delta = fine.sub(&coarse);
    let scale = fine.max_abs().max(1e-300);
    (fine, delta.max_abs() / scale)
}

/// Willmore energy of a graph over the unbounded region {|z| >= r0}.
/// The integral is mapped to s = r0 / r in (0, 1], which is regular
/// because the integrand decays like 1/r^3 at infinity for the
/// asymptotically flat ends handled here.
pub fn willmore_tail(f: &dyn GraphFn, r0: f64, orders: QuadOrders) -> f64 {
    let s_breaks = [0.0, 0.02, 0.1, 0.4, 1.0];
    let (gl_x, gl_w) = gauss_legendre(orders.radial);
    let n_t = orders.angular;
    let dt = std::f64::consts::TAU / n_t as f64;
    let mut total = 0.0;
    for panel in s_breaks.windows(2) {
        let half = 0.5 * (panel[1] - panel[0]);
        let mid = 0.5 * (panel[1] + panel[0]);
        for (xi, wi) in gl_x.iter().zip(&gl_w) {
            let s = mid + half * xi;
            let r = r0 / s;
            // r dr = (r0^2 / s^3) ds
            let wr = wi * half * r0 * r0 / (s * s * s);
            for k in 0..n_t {
                let theta = dt * k as f64;
                let z = Vector2::new(r * theta.cos(), r * theta.sin());
                let jet = f.jet(z);
                let g = (1.0 + jet.dw.norm_squared()).sqrt();
                let h = graph_mean_curvature(&jet);
                total += wr * dt * 0.25 * h * h * g;
            }
        }
    }
    total
}
