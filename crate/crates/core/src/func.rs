//! Compactly supported test functions with analytic values and gradients,
//! their L^p norms, and anisotropic first-order Sobolev energies
//! `int N(grad f)^p dx` for a convex-body norm `N`.
//!
//! The tent is Lipschitz but not C^1 (its ridge set is flagged by the
//! gradient and never carries quadrature weight); the bump kinds are C^1
//! with smooth interiors.

use crate::body::ConvexBody;
use crate::digest::digest_str;
use crate::error::{Error, Result};
use crate::geom::{check_dim, BoundingBox, Matrix, Vector, MAX_DIM};
use crate::moment::BodyNorm;
use crate::quad::{QuadratureSpec, TensorGrid, GL_SPATIAL};
use crate::scalar::Real;

/// Radial profile shapes shared by the radial kinds and `product_1d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile1d {
    Tent,
    SmoothBump,
    CosineBump,
}

impl Profile1d {
    pub fn name(self) -> &'static str {
        match self {
            Profile1d::Tent => "tent",
            Profile1d::SmoothBump => "smooth_bump",
            Profile1d::CosineBump => "cosine_bump",
        }
    }

    /// Profile value at normalized radius `r in [0, inf)`.
    #[inline]
    fn value<F: Real>(self, r: F) -> F {
        if r >= F::one() {
            return F::zero();
        }
        match self {
            Profile1d::Tent => F::one() - r,
            Profile1d::SmoothBump => {
                let d = F::one() - r * r;
                (F::one() - d.recip()).exp()
            }
            Profile1d::CosineBump => {
                let c = (F::PI() * r * F::of(0.5)).cos();
                c * c
            }
        }
    }

    /// Derivative with respect to `r`; the tent ridge at `r = 0, 1` is the
    /// caller's concern.
    #[inline]
    fn derivative<F: Real>(self, r: F) -> F {
        if r >= F::one() {
            return F::zero();
        }
        match self {
            Profile1d::Tent => -F::one(),
            Profile1d::SmoothBump => {
                let d = F::one() - r * r;
                self.value(r) * (-F::of(2.0) * r / (d * d))
            }
            Profile1d::CosineBump => {
                // d/dr cos^2(pi r / 2) = -(pi/2) sin(pi r)
                -(F::PI() * F::of(0.5)) * (F::PI() * r).sin()
            }
        }
    }
}

#[derive(Clone, Debug)]
enum FnKind<F> {
    Radial { profile: Profile1d },
    Product1d { profile: Profile1d },
    AffineImage { profile: Profile1d, map: Matrix<F> },
}

/// A compactly supported W^{1,p} test function with analytic gradient.
#[derive(Clone, Debug)]
pub struct TestFunction<F> {
    dim: usize,
    kind: FnKind<F>,
    center: Vector<F>,
    scale: F,
    support_box: BoundingBox<F>,
    support_diameter: F,
    digest: String,
}

impl<F: Real> TestFunction<F> {
    fn validated(center: &[F], scale: F) -> Result<(usize, Vector<F>)> {
        let dim = center.len();
        check_dim(dim)?;
        let c = Vector::from_slice(dim, center)?;
        if !(scale.is_finite() && scale > F::zero()) {
            return Err(Error::InvalidFunction(
                "scale must be positive and finite".into(),
            ));
        }
        Ok((dim, c))
    }

    fn radial(profile: Profile1d, center: &[F], scale: F) -> Result<Self> {
        let (dim, c) = Self::validated(center, scale)?;
        let hw = vec![scale; dim];
        let digest = digest_str(&format!(
            "fn:{};dim={dim};c={:?};s={:?}",
            profile.name(),
            center.iter().map(|x| x.as_f64()).collect::<Vec<_>>(),
            scale.as_f64()
        ));
        Ok(Self {
            dim,
            kind: FnKind::Radial { profile },
            center: c,
            scale,
            support_box: BoundingBox::centered(&c, &hw),
            support_diameter: F::of(2.0) * scale,
            digest,
        })
    }

    /// `(1 - |x - c| / scale)_+`
    pub fn tent(center: &[F], scale: F) -> Result<Self> {
        Self::radial(Profile1d::Tent, center, scale)
    }

    /// `exp(1 - 1/(1 - |x-c|^2/scale^2))` inside the support ball, 0 outside.
    pub fn smooth_bump(center: &[F], scale: F) -> Result<Self> {
        Self::radial(Profile1d::SmoothBump, center, scale)
    }

    /// `cos^2(pi |x-c| / (2 scale))` inside the support ball, 0 outside.
    pub fn cosine_bump(center: &[F], scale: F) -> Result<Self> {
        Self::radial(Profile1d::CosineBump, center, scale)
    }

    /// Tensor product of one 1D profile per axis.
    pub fn product_1d(profile: Profile1d, center: &[F], scale: F) -> Result<Self> {
        let (dim, c) = Self::validated(center, scale)?;
        let hw = vec![scale; dim];
        let bbox = BoundingBox::centered(&c, &hw);
        let digest = digest_str(&format!(
            "fn:product_1d[{}];dim={dim};c={:?};s={:?}",
            profile.name(),
            center.iter().map(|x| x.as_f64()).collect::<Vec<_>>(),
            scale.as_f64()
        ));
        Ok(Self {
            dim,
            kind: FnKind::Product1d { profile },
            center: c,
            scale,
            support_diameter: bbox.diameter(),
            support_box: bbox,
            digest,
        })
    }

    /// Radial profile composed with an invertible linear map:
    /// `f(x) = profile(|M (x - c)| / scale)`.
    pub fn affine_image(
        profile: Profile1d,
        center: &[F],
        scale: F,
        map_rows: &[Vec<F>],
    ) -> Result<Self> {
        let (dim, c) = Self::validated(center, scale)?;
        let map = Matrix::from_rows(dim, map_rows)?;
        let inv = map.inverse().map_err(|_| {
            Error::InvalidFunction("affine image matrix must be invertible".into())
        })?;
        let hw: Vec<F> = (0..dim).map(|i| scale * inv.row_norm(i)).collect();
        let bbox = BoundingBox::centered(&c, &hw);
        let digest = digest_str(&format!(
            "fn:affine[{}];dim={dim};c={:?};s={:?};m={:?}",
            profile.name(),
            center.iter().map(|x| x.as_f64()).collect::<Vec<_>>(),
            scale.as_f64(),
            map_rows
                .iter()
                .map(|r| r.iter().map(|x| x.as_f64()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        ));
        Ok(Self {
            dim,
            kind: FnKind::AffineImage { profile, map },
            center: c,
            scale,
            support_diameter: bbox.diameter(),
            support_box: bbox,
            digest,
        })
    }

    /// The dilate `x -> f(x / lambda)` (support and center scale with it).
    pub fn dilate(&self, lambda: F) -> Result<Self> {
        if !(lambda.is_finite() && lambda > F::zero()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: "dilation factor must be positive".into(),
            });
        }
        let center: Vec<F> = self.center.coords().iter().map(|&c| c * lambda).collect();
        let scale = self.scale * lambda;
        match &self.kind {
            FnKind::Radial { profile } => Self::radial(*profile, &center, scale),
            FnKind::Product1d { profile } => Self::product_1d(*profile, &center, scale),
            FnKind::AffineImage { profile, map } => {
                Self::affine_image(*profile, &center, scale, &map.rows())
            }
        }
    }

    /// Same shape moved to a new center.
    pub fn recentered(&self, center: &[F]) -> Result<Self> {
        match &self.kind {
            FnKind::Radial { profile } => Self::radial(*profile, center, self.scale),
            FnKind::Product1d { profile } => Self::product_1d(*profile, center, self.scale),
            FnKind::AffineImage { profile, map } => {
                Self::affine_image(*profile, center, self.scale, &map.rows())
            }
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn scale(&self) -> F {
        self.scale
    }

    #[inline]
    pub fn support_box(&self) -> &BoundingBox<F> {
        &self.support_box
    }

    /// Upper bound on the Euclidean diameter of the support (tight for the
    /// radial and product kinds).
    #[inline]
    pub fn support_diameter(&self) -> F {
        self.support_diameter
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn eval(&self, x: &Vector<F>) -> Result<F> {
        self.check(x)?;
        Ok(self.eval_raw(&x.array()))
    }

    fn check(&self, x: &Vector<F>) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn eval_raw(&self, x: &[F; MAX_DIM]) -> F {
        match &self.kind {
            FnKind::Radial { profile } => {
                let r = self.centered_radius(x);
                profile.value(r)
            }
            FnKind::Product1d { profile } => {
                let mut acc = F::one();
                for i in 0..self.dim {
                    let t = (x[i] - self.center.get(i)).abs() / self.scale;
                    if t >= F::one() {
                        return F::zero();
                    }
                    acc = acc * profile.value(t);
                }
                acc
            }
            FnKind::AffineImage { profile, map, .. } => {
                let d = Vector::from_array(self.dim, *x).sub(&self.center);
                let y = map.apply(&d);
                profile.value(y.norm() / self.scale)
            }
        }
    }

    #[inline]
    fn centered_radius(&self, x: &[F; MAX_DIM]) -> F {
        let mut acc = F::zero();
        for i in 0..self.dim {
            let d = x[i] - self.center.get(i);
            acc += d * d;
        }
        acc.sqrt() / self.scale
    }

    /// Analytic gradient; errors only on dimension mismatch.
    pub fn grad(&self, x: &Vector<F>) -> Result<Vector<F>> {
        Ok(self.grad_flagged(x)?.0)
    }

    /// Analytic gradient plus a flag marking measure-zero ridge points of
    /// the tent kinds, where a subgradient selection is returned.
    pub fn grad_flagged(&self, x: &Vector<F>) -> Result<(Vector<F>, bool)> {
        self.check(x)?;
        Ok(self.grad_raw(&x.array()))
    }

    pub(crate) fn grad_raw(&self, x: &[F; MAX_DIM]) -> (Vector<F>, bool) {
        match &self.kind {
            FnKind::Radial { profile } => {
                let r = self.centered_radius(x);
                let ridge_tol = F::of(1e-13);
                if r >= F::one() {
                    let on_ridge =
                        *profile == Profile1d::Tent && (r - F::one()).abs() <= ridge_tol;
                    return (Vector::zeros(self.dim), on_ridge);
                }
                if r <= ridge_tol {
                    // apex: smooth kinds have a true zero gradient, the tent
                    // takes the zero subgradient selection
                    return (Vector::zeros(self.dim), *profile == Profile1d::Tent);
                }
                let dphi = profile.derivative(r);
                let mut g = [F::zero(); MAX_DIM];
                let inv = dphi / (self.scale * self.scale * r);
                for i in 0..self.dim {
                    g[i] = inv * (x[i] - self.center.get(i));
                }
                let on_ridge =
                    *profile == Profile1d::Tent && (r - F::one()).abs() <= ridge_tol;
                (Vector::from_array(self.dim, g), on_ridge)
            }
            FnKind::Product1d { profile } => {
                let ridge_tol = F::of(1e-13);
                let mut vals = [F::zero(); MAX_DIM];
                let mut ts = [F::zero(); MAX_DIM];
                let mut signs = [F::one(); MAX_DIM];
                let mut ridge = false;
                for i in 0..self.dim {
                    let d = x[i] - self.center.get(i);
                    let t = d.abs() / self.scale;
                    ts[i] = t;
                    signs[i] = if d < F::zero() { -F::one() } else { F::one() };
                    vals[i] = profile.value(t);
                    if *profile == Profile1d::Tent
                        && (t <= ridge_tol || (t - F::one()).abs() <= ridge_tol)
                    {
                        ridge = true;
                    }
                }
                let mut g = [F::zero(); MAX_DIM];
                for i in 0..self.dim {
                    if ts[i] >= F::one() {
                        return (Vector::zeros(self.dim), ridge);
                    }
                    let mut others = F::one();
                    for (j, &v) in vals.iter().enumerate().take(self.dim) {
                        if j != i {
                            others = others * v;
                        }
                    }
                    let dt = if ts[i] <= ridge_tol && *profile == Profile1d::Tent {
                        F::zero() // zero subgradient selection on the 1D apex
                    } else {
                        profile.derivative(ts[i]) * signs[i]
                    };
                    g[i] = dt / self.scale * others;
                }
                (Vector::from_array(self.dim, g), ridge)
            }
            FnKind::AffineImage { profile, map, .. } => {
                let d = Vector::from_array(self.dim, *x).sub(&self.center);
                let y = map.apply(&d);
                let r = y.norm() / self.scale;
                let ridge_tol = F::of(1e-13);
                if r >= F::one() || r <= ridge_tol {
                    let on_ridge = *profile == Profile1d::Tent
                        && ((r - F::one()).abs() <= ridge_tol || r <= ridge_tol);
                    return (Vector::zeros(self.dim), on_ridge);
                }
                let dphi = profile.derivative(r);
                let base = y.scale(dphi / (self.scale * self.scale * r));
                let on_ridge = *profile == Profile1d::Tent && (r - F::one()).abs() <= ridge_tol;
                (map.apply_transpose(&base), on_ridge)
            }
        }
    }

    /// `(int |f|^p)^{1/p}` over the support box by tensor-product quadrature.
    pub fn lp_norm(&self, p: F, spec: &QuadratureSpec<F>) -> Result<F> {
        spec.validate()?;
        if !(p.is_finite() && p >= F::one()) {
            return Err(Error::InvalidParameter {
                name: "p",
                reason: format!("exponent must satisfy p >= 1, got {p}"),
            });
        }
        // 1D tent with p = 1 has the closed triangle-area form
        if p == F::one() && self.dim == 1 {
            if let FnKind::Radial { profile: Profile1d::Tent } = self.kind {
                return Ok(self.scale);
            }
        }
        Ok(self.lp_norm_pow(p, spec).powf(p.recip()))
    }

    /// `int |f|^p` (no root); shared with the seminorm far-field terms.
    pub(crate) fn lp_norm_pow(&self, p: F, spec: &QuadratureSpec<F>) -> F {
        let grid = TensorGrid::over_box(&self.support_box, spec.spatial_panels, GL_SPATIAL);
        let mut acc = F::zero();
        for (node, w) in grid.nodes.iter().zip(&grid.weights) {
            let v = self.eval_raw(&node.array()).abs();
            acc += *w * pow_p(v, p);
        }
        acc
    }
}

#[inline]
fn pow_p<F: Real>(a: F, p: F) -> F {
    if p == F::one() {
        a
    } else if p == F::of(2.0) {
        a * a
    } else {
        a.powf(p)
    }
}

/// Anisotropic first-order Sobolev energy `int N(grad f(x))^p dx` over the
/// support box (the p-th power, not its root).
pub fn anisotropic_sobolev_seminorm<F: Real>(
    f: &TestFunction<F>,
    p: F,
    norm: &BodyNorm<F>,
    spec: &QuadratureSpec<F>,
) -> Result<F> {
    spec.validate()?;
    if norm.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: norm.dim(),
        });
    }
    if !(p.is_finite() && p >= F::one()) {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("exponent must satisfy p >= 1, got {p}"),
        });
    }
    let grid = TensorGrid::over_box(f.support_box(), spec.spatial_panels, GL_SPATIAL);
    let mut acc = F::zero();
    for (node, w) in grid.nodes.iter().zip(&grid.weights) {
        let (g, _) = f.grad_raw(&node.array());
        if g.norm_sq() == F::zero() {
            continue;
        }
        acc += *w * pow_p(norm.eval(&g), p);
    }
    Ok(acc)
}

/// Isotropic Sobolev energy `int |grad f|^p dx`.
pub fn sobolev_seminorm_pow<F: Real>(
    f: &TestFunction<F>,
    p: F,
    spec: &QuadratureSpec<F>,
) -> Result<F> {
    let euclid = BodyNorm::gauge(ConvexBody::euclidean_ball(f.dim())?);
    anisotropic_sobolev_seminorm(f, p, &euclid, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    #[test]
    fn tent_values() {
        let f = TestFunction::tent(&[0.0], 1.0).unwrap();
        let at = |x: f64| f.eval(&Vector::from_slice(1, &[x]).unwrap()).unwrap();
        assert_eq!(at(0.0), 1.0);
        assert_eq!(at(2.0), 0.0);
        assert!((at(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn smooth_bump_value_matches_formula() {
        let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
        let x = Vector::from_slice(2, &[0.6, 0.0]).unwrap();
        let expected = (1.0f64 - 1.0 / (1.0 - 0.36)).exp();
        assert!((f.eval(&x).unwrap() - expected).abs() < 1e-15);
        // symmetry f(x) = f(-x)
        let y = Vector::from_slice(2, &[-0.6, 0.0]).unwrap();
        assert_eq!(f.eval(&x).unwrap(), f.eval(&y).unwrap());
    }

    #[test]
    fn vanishes_outside_support_shell() {
        let f = TestFunction::cosine_bump(&[0.3, -0.2], 0.7).unwrap();
        let bbox = f.support_box();
        let mut rng = CounterRng::for_index(11, 0);
        for _ in 0..200 {
            // points just outside the box faces
            let mut coords = [0.0f64; 2];
            for (i, c) in coords.iter_mut().enumerate() {
                *c = bbox.min.get(i)
                    + (bbox.max.get(i) - bbox.min.get(i)) * rng.next_unit::<f64>() * 1.4
                    - 0.2 * (bbox.max.get(i) - bbox.min.get(i));
            }
            let x = Vector::from_slice(2, &coords).unwrap();
            if !bbox.contains(&x) {
                assert_eq!(f.eval(&x).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn tent_gradient_1d() {
        let f: TestFunction<f64> = TestFunction::tent(&[0.0], 1.0).unwrap();
        let g = f.grad(&Vector::from_slice(1, &[0.5]).unwrap()).unwrap();
        assert!((g.get(0) - -1.0).abs() < 1e-15);
        let (g0, ridge) = f
            .grad_flagged(&Vector::from_slice(1, &[0.0]).unwrap())
            .unwrap();
        assert_eq!(g0.get(0), 0.0);
        assert!(ridge);
    }

    #[test]
    fn bump_gradient_zero_at_center() {
        for f in [
            TestFunction::smooth_bump(&[0.1, 0.2], 0.8).unwrap(),
            TestFunction::cosine_bump(&[0.1, 0.2], 0.8).unwrap(),
        ] {
            let (g, ridge) = f
                .grad_flagged(&Vector::from_slice(2, &[0.1, 0.2]).unwrap())
                .unwrap();
            assert_eq!(g.norm(), 0.0);
            assert!(!ridge);
        }
    }

    fn finite_difference_check(f: &TestFunction<f64>, samples: usize, tol: f64) {
        let bbox = f.support_box();
        let mut rng = CounterRng::for_index(5, 77);
        let h = 1e-5 * f.scale();
        let mut checked = 0;
        let mut worst: f64 = 0.0;
        while checked < samples {
            let mut coords = [0.0f64; MAX_DIM];
            for i in 0..f.dim() {
                coords[i] = bbox.min.get(i)
                    + (bbox.max.get(i) - bbox.min.get(i)) * rng.next_unit::<f64>();
            }
            let x = Vector::from_slice(f.dim(), &coords[..f.dim()]).unwrap();
            // stay well inside the smooth interior
            let v = f.eval(&x).unwrap();
            if v < 1e-3 {
                continue;
            }
            checked += 1;
            let g = f.grad(&x).unwrap();
            for i in 0..f.dim() {
                let mut plus = coords;
                let mut minus = coords;
                plus[i] += h;
                minus[i] -= h;
                let fd = (f.eval(&Vector::from_slice(f.dim(), &plus[..f.dim()]).unwrap()).unwrap()
                    - f.eval(&Vector::from_slice(f.dim(), &minus[..f.dim()]).unwrap()).unwrap())
                    / (2.0 * h);
                let denom = g.get(i).abs().max(1.0);
                worst = worst.max((fd - g.get(i)).abs() / denom);
            }
        }
        assert!(worst <= tol, "worst relative FD mismatch {worst}");
    }

    #[test]
    fn gradients_match_finite_differences() {
        finite_difference_check(&TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap(), 300, 1e-5);
        finite_difference_check(&TestFunction::cosine_bump(&[0.2, -0.1], 0.9).unwrap(), 300, 1e-5);
        finite_difference_check(
            &TestFunction::product_1d(Profile1d::CosineBump, &[0.0, 0.0], 1.0).unwrap(),
            300,
            1e-5,
        );
        finite_difference_check(
            &TestFunction::affine_image(
                Profile1d::SmoothBump,
                &[0.0, 0.0],
                1.0,
                &[vec![1.0, 0.3], vec![-0.2, 0.8]],
            )
            .unwrap(),
            300,
            1e-5,
        );
        finite_difference_check(&TestFunction::smooth_bump(&[0.0, 0.0, 0.0], 1.0).unwrap(), 150, 1e-5);
    }

    #[test]
    fn tent_lp_norms() {
        let f = TestFunction::tent(&[0.0], 1.0).unwrap();
        let sp = spec();
        assert!((f.lp_norm(1.0, &sp).unwrap() - 1.0).abs() < 1e-10);
        let l2 = f.lp_norm(2.0, &sp).unwrap();
        assert!((l2 - (2.0f64 / 3.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn degenerate_scale_rejected() {
        assert!(TestFunction::<f64>::tent(&[0.0], 0.0).is_err());
        assert!(TestFunction::<f64>::tent(&[0.0], f64::NAN).is_err());
        assert!(TestFunction::<f64>::tent(&[0.0; 4], 1.0).is_err());
    }

    #[test]
    fn tent_sobolev_energy_1d() {
        // |f'| = 1 on the support: int |f'|^p = 2 for any p
        let f = TestFunction::tent(&[0.0], 1.0).unwrap();
        let sp = spec();
        for p in [1.0, 2.0] {
            let e = sobolev_seminorm_pow(&f, p, &sp).unwrap();
            assert!((e - 2.0).abs() < 1e-10, "p={p}: {e}");
        }
    }

    #[test]
    fn translation_invariance() {
        let sp = spec();
        let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
        let g = f.recentered(&[1.3, -0.4]).unwrap();
        let nf = f.lp_norm(2.0, &sp).unwrap();
        let ng = g.lp_norm(2.0, &sp).unwrap();
        assert!((nf - ng).abs() < 1e-12 * nf);
        let ef = sobolev_seminorm_pow(&f, 2.0, &sp).unwrap();
        let eg = sobolev_seminorm_pow(&g, 2.0, &sp).unwrap();
        assert!((ef - eg).abs() < 1e-12 * ef);
    }

    #[test]
    fn dilation_scaling_laws() {
        let sp = spec();
        let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
        let lam = 1.7f64;
        let fl = f.dilate(lam).unwrap();
        let p = 2.0;
        let n = 2.0;
        let lp = f.lp_norm(p, &sp).unwrap().powf(p);
        let lpl = fl.lp_norm(p, &sp).unwrap().powf(p);
        assert!((lpl - lam.powf(n) * lp).abs() < 1e-8 * lpl.abs());
        let e = sobolev_seminorm_pow(&f, p, &sp).unwrap();
        let el = sobolev_seminorm_pow(&fl, p, &sp).unwrap();
        assert!((el - lam.powf(n - p) * e).abs() < 1e-8 * el.abs());
    }

    #[test]
    fn isotropic_moment_norm_reduction() {
        // for the euclidean ball, int N(grad f)^p with the moment-polar norm
        // equals alpha(n,p) * int |grad f|^p
        let sp = spec();
        let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
        let p = 2.0;
        let ball = ConvexBody::euclidean_ball(2).unwrap();
        let norm = BodyNorm::lp_moment_polar(ball, p, &sp).unwrap();
        let lhs = anisotropic_sobolev_seminorm(&f, p, &norm, &sp).unwrap();
        let alpha = crate::moment::alpha_np(2, p, &sp).unwrap();
        let rhs = alpha * sobolev_seminorm_pow(&f, p, &sp).unwrap();
        assert!((lhs - rhs).abs() < 1e-6 * rhs, "lhs {lhs} rhs {rhs}");
    }
}
