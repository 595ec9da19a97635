//! Quadrature building blocks: Gauss-Legendre rules, graded panel sets,
//! sphere/circle direction grids and tensor-product grids over boxes.
//!
//! Equispaced periodic grids carry a golden-ratio phase offset so that they
//! never sample the measure-zero kink sets of piecewise-smooth gauges or
//! tent ridges exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{BoundingBox, Vector, MAX_DIM};
use crate::scalar::Real;

/// Fractional part of the golden ratio, used as an irrational phase shift.
pub(crate) const GOLDEN_FRAC: f64 = 0.618_033_988_749_894_8;

/// Gauss-Legendre nodes per spatial panel (tensor grids over supports).
pub(crate) const GL_SPATIAL: usize = 6;
/// Gauss-Legendre nodes per radial panel.
pub(crate) const GL_RADIAL: usize = 8;
/// Gauss-Legendre nodes per 1D panel in projection-density integrals.
pub(crate) const GL_LINE: usize = 12;

/// Gauss-Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre<F> {
    pub nodes: Vec<F>,
    pub weights: Vec<F>,
}

impl<F: Real> GaussLegendre<F> {
    /// Compute an `n`-point rule by Newton iteration on the Legendre
    /// polynomial recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature order must be positive");
        let mut nodes = vec![F::zero(); n];
        let mut weights = vec![F::zero(); n];
        let nf = F::of_usize(n);
        for i in 0..n {
            // Tricomi-style initial guess
            let mut x = (F::PI() * (F::of_usize(i) + F::of(0.75)) / (nf + F::of(0.5))).cos();
            let mut dp = F::zero();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= F::epsilon() * F::of(4.0) {
                    let (_, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    break;
                }
            }
            nodes[n - 1 - i] = x; // ascending order
            weights[n - 1 - i] = F::of(2.0) / ((F::one() - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    /// Sum `f` against the rule mapped onto [a, b].
    #[inline]
    pub fn integrate<G: FnMut(F) -> F>(&self, a: F, b: F, mut f: G) -> F {
        let half = (b - a) * F::of(0.5);
        let mid = (b + a) * F::of(0.5);
        let mut acc = F::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative<F: Real>(n: usize, x: F) -> (F, F) {
    let mut p0 = F::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = F::of_usize(k);
        let p2 = ((F::of(2.0) * kf - F::one()) * x * p1 - (kf - F::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (F::one(), F::zero());
    }
    if n == 1 {
        return (x, F::one());
    }
    let d = F::of_usize(n) * (x * p1 - p0) / (x * x - F::one());
    (p1, d)
}

/// Panel boundaries on [0, len] geometrically graded toward 0.
/// Returns `panels + 1` ascending boundaries; the innermost panel reaches 0.
pub fn graded_toward_zero<F: Real>(len: F, panels: usize, ratio: F) -> Vec<F> {
    let mut bs = Vec::with_capacity(panels + 1);
    bs.push(F::zero());
    for j in (1..panels).rev() {
        bs.push(len * ratio.powi(j as i32));
    }
    bs.push(len);
    bs
}

/// Panel boundaries on [0, len] geometrically graded toward `len`.
pub fn graded_toward_end<F: Real>(len: F, panels: usize, ratio: F) -> Vec<F> {
    let mut bs = Vec::with_capacity(panels + 1);
    bs.push(F::zero());
    for j in 1..panels {
        bs.push(len * (F::one() - ratio.powi(j as i32)));
    }
    bs.push(len);
    bs
}

/// Panel boundaries on [0, len] graded toward both ends (kept sorted).
pub fn graded_both_ends<F: Real>(len: F, panels_per_side: usize, ratio: F) -> Vec<F> {
    let half = len * F::of(0.5);
    let mut bs = graded_toward_zero(half, panels_per_side, ratio);
    for j in 1..=panels_per_side {
        let b = if j == panels_per_side {
            len
        } else {
            len - half * ratio.powi(j as i32)
        };
        bs.push(b);
    }
    // the second half was generated descending in gap size; restore order
    bs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    bs.dedup_by(|a, b| *a == *b);
    bs
}

/// Unit directions and weights for the circle, trapezoid rule with a
/// golden-ratio phase (spectrally accurate for smooth periodic integrands).
pub fn circle_directions<F: Real>(points: usize) -> Vec<(Vector<F>, F)> {
    let w = F::of(2.0) * F::PI() / F::of_usize(points);
    (0..points)
        .map(|j| {
            let theta = (F::of_usize(j) + F::of(GOLDEN_FRAC)) * w;
            let v = Vector::from_array(2, [theta.cos(), theta.sin(), F::zero()]);
            (v, w)
        })
        .collect()
}

/// Unit directions and weights on the 2-sphere: Gauss-Legendre in the cosine
/// of the colatitude times an offset equispaced longitude grid. Weights sum
/// to the sphere area 4 pi.
pub fn sphere_directions<F: Real>(colat_points: usize) -> Vec<(Vector<F>, F)> {
    let gl = GaussLegendre::<F>::new(colat_points);
    let lon_points = 2 * colat_points;
    let wl = F::of(2.0) * F::PI() / F::of_usize(lon_points);
    let mut dirs = Vec::with_capacity(colat_points * lon_points);
    for (&t, &wt) in gl.nodes.iter().zip(&gl.weights) {
        let sin_phi = (F::one() - t * t).max(F::zero()).sqrt();
        for j in 0..lon_points {
            let lam = (F::of_usize(j) + F::of(GOLDEN_FRAC)) * wl;
            let v = Vector::from_array(3, [sin_phi * lam.cos(), sin_phi * lam.sin(), t]);
            dirs.push((v, wt * wl));
        }
    }
    dirs
}

/// Directions for S^{n-1}, n in 1..=3. For n = 1 this is the two-point set
/// {-1, +1} with unit weights (counting measure).
pub fn unit_sphere_directions<F: Real>(dim: usize, points_2d: usize) -> Vec<(Vector<F>, F)> {
    match dim {
        1 => vec![
            (Vector::from_array(1, [F::one(), F::zero(), F::zero()]), F::one()),
            (Vector::from_array(1, [-F::one(), F::zero(), F::zero()]), F::one()),
        ],
        2 => circle_directions(points_2d),
        _ => {
            // keep 3D product grids at a comparable total budget
            let colat = (points_2d / 4).max(6);
            sphere_directions(colat)
        }
    }
}

/// 1D panel quadrature: nodes and weights for `panels` uniform panels on
/// [a, b] with `order`-point Gauss-Legendre per panel.
pub fn line_nodes<F: Real>(a: F, b: F, panels: usize, order: usize) -> Vec<(F, F)> {
    let gl = GaussLegendre::<F>::new(order);
    let mut out = Vec::with_capacity(panels * order);
    let width = (b - a) / F::of_usize(panels);
    for k in 0..panels {
        let lo = a + width * F::of_usize(k);
        let hi = lo + width;
        let half = (hi - lo) * F::of(0.5);
        let mid = (hi + lo) * F::of(0.5);
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            out.push((mid + half * x, w * half));
        }
    }
    out
}

/// Tensor-product Gauss-Legendre grid over an axis-aligned box.
#[derive(Clone, Debug)]
pub struct TensorGrid<F> {
    pub nodes: Vec<Vector<F>>,
    pub weights: Vec<F>,
}

impl<F: Real> TensorGrid<F> {
    pub fn over_box(bbox: &BoundingBox<F>, panels_per_axis: usize, order: usize) -> Self {
        let dim = bbox.dim();
        let axes: Vec<Vec<(F, F)>> = (0..dim)
            .map(|i| line_nodes(bbox.min.get(i), bbox.max.get(i), panels_per_axis, order))
            .collect();
        let total: usize = axes.iter().map(|a| a.len()).product();
        let mut nodes = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut idx = [0usize; MAX_DIM];
        'outer: loop {
            let mut coords = [F::zero(); MAX_DIM];
            let mut w = F::one();
            for (ax, axis_nodes) in axes.iter().enumerate() {
                let (x, wx) = axis_nodes[idx[ax]];
                coords[ax] = x;
                w = w * wx;
            }
            nodes.push(Vector::from_array(dim, coords));
            weights.push(w);
            // odometer increment
            for ax in (0..dim).rev() {
                idx[ax] += 1;
                if idx[ax] < axes[ax].len() {
                    continue 'outer;
                }
                idx[ax] = 0;
            }
            break;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// All discretization parameters for reproducible integration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec<F: Real> {
    /// Graded radial panel count (per grading direction); at least 8.
    pub radial_panels: usize,
    /// Geometric grading ratio in (0, 1).
    pub radial_grading: F,
    /// 2D: number of circle angles. 3D: scaled down to a colatitude x
    /// longitude product grid of comparable cost.
    pub angular_points: usize,
    /// Tensor panels per axis for integrals over function supports.
    pub spatial_panels: usize,
    /// Near/far split radius in gauge units; `None` derives the tightest
    /// admissible value from the support diameter and the body.
    pub split_radius: Option<F>,
    /// Monte Carlo sample count for bodies without closed-form moments.
    pub mc_samples: u64,
    /// Seed for all Monte Carlo sampling.
    pub seed: u64,
}

impl<F: Real> Default for QuadratureSpec<F> {
    fn default() -> Self {
        Self {
            radial_panels: 16,
            radial_grading: F::of(0.5),
            angular_points: 64,
            spatial_panels: 8,
            split_radius: None,
            mc_samples: 1_000_000,
            seed: 0,
        }
    }
}

impl<F: Real> QuadratureSpec<F> {
    pub fn validate(&self) -> Result<()> {
        if self.radial_panels < 8 {
            return Err(Error::InvalidParameter {
                name: "radial_panels",
                reason: format!("must be at least 8, got {}", self.radial_panels),
            });
        }
        if !(self.radial_grading > F::zero() && self.radial_grading < F::one()) {
            return Err(Error::InvalidParameter {
                name: "radial_grading",
                reason: format!("must lie in (0,1), got {}", self.radial_grading),
            });
        }
        if self.angular_points == 0 {
            return Err(Error::InvalidParameter {
                name: "angular_points",
                reason: "must be positive".into(),
            });
        }
        if self.spatial_panels == 0 {
            return Err(Error::InvalidParameter {
                name: "spatial_panels",
                reason: "must be positive".into(),
            });
        }
        if let Some(r) = self.split_radius {
            if !(r.is_finite() && r > F::zero()) {
                return Err(Error::InvalidParameter {
                    name: "split_radius",
                    reason: "must be positive and finite".into(),
                });
            }
        }
        Ok(())
    }

    /// Halved-resolution copy used for two-grid error estimates.
    pub(crate) fn coarsened(&self) -> Self {
        Self {
            radial_panels: (self.radial_panels / 2).max(4),
            angular_points: (self.angular_points / 2).max(8),
            spatial_panels: (self.spatial_panels / 2).max(2),
            ..self.clone()
        }
    }

    /// Doubled-resolution copy used by refinement tests.
    pub fn refined(&self) -> Self {
        Self {
            radial_panels: self.radial_panels * 2,
            angular_points: self.angular_points * 2,
            spatial_panels: self.spatial_panels * 2,
            ..self.clone()
        }
    }

    /// Canonical digest of every discretization parameter.
    pub fn digest(&self) -> String {
        let desc = format!(
            "quad:rp={};rg={:?};ap={};sp={};sr={:?};mc={};seed={}",
            self.radial_panels,
            self.radial_grading.as_f64(),
            self.angular_points,
            self.spatial_panels,
            self.split_radius.map(|r| r.as_f64()),
            self.mc_samples,
            self.seed
        );
        crate::digest::digest_str(&desc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let gl = GaussLegendre::<f64>::new(8);
        // degree 15 is exact for an 8-point rule
        let val = gl.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((val - 1.0 / 16.0).abs() < 1e-14);
        let sum: f64 = gl.weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_smooth_accuracy() {
        let gl = GaussLegendre::<f64>::new(16);
        let val = gl.integrate(0.0, std::f64::consts::PI, |x| x.sin());
        assert!((val - 2.0).abs() < 1e-13);
    }

    #[test]
    fn graded_panels_cover_interval() {
        let bs = graded_toward_zero(2.0f64, 10, 0.5);
        assert_eq!(bs.len(), 11);
        assert_eq!(bs[0], 0.0);
        assert_eq!(*bs.last().unwrap(), 2.0);
        assert!(bs.windows(2).all(|w| w[0] < w[1]));

        let be = graded_toward_end(2.0f64, 10, 0.5);
        assert_eq!(be.len(), 11);
        assert!(be.windows(2).all(|w| w[0] < w[1]));
        // the last panel is the smallest
        let first = be[1] - be[0];
        let last = be[10] - be[9];
        assert!(last < first);
    }

    #[test]
    fn circle_weights_sum_to_circumference() {
        let dirs = circle_directions::<f64>(17);
        let total: f64 = dirs.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        for (v, _) in dirs {
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sphere_weights_sum_to_area() {
        let dirs = sphere_directions::<f64>(8);
        let total: f64 = dirs.iter().map(|(_, w)| w).sum();
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-10);
        // integral of z^2 over the sphere = 4 pi / 3
        let zz: f64 = dirs.iter().map(|(v, w)| v.get(2) * v.get(2) * w).sum();
        assert!((zz - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn tensor_grid_integrates_volume() {
        let bbox = BoundingBox::centered(&Vector::zeros(2), &[1.0, 2.0]);
        let grid = TensorGrid::over_box(&bbox, 3, 4);
        let vol: f64 = grid.weights.iter().sum();
        assert!((vol - 8.0).abs() < 1e-12);
    }

    #[test]
    fn spec_validation() {
        let mut spec = QuadratureSpec::<f64>::default();
        assert!(spec.validate().is_ok());
        spec.radial_panels = 4;
        assert!(spec.validate().is_err());
        spec = QuadratureSpec::default();
        spec.radial_grading = 1.5;
        assert!(spec.validate().is_err());
    }
}
