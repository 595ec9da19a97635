//! The anisotropic Gagliardo double integral
//!
//! `int int |f(x) - f(y)|^p / |x - y|_K^{n + p s} dx dy`
//!
//! evaluated by two independent routes:
//!
//! * **direct**: substitute `h = y - x`, switch `h` to Euclidean polar
//!   coordinates (`|h|_K = r * gauge(theta)`), and integrate the radial
//!   factor after the change of variable `u = r^{p(1-s)}`, which absorbs the
//!   weak endpoint singularity exactly; panels are geometrically graded
//!   toward both ends of the `u`-interval. Beyond a split radius (gauge
//!   units) chosen so the two supports are disjoint, the tail is added in
//!   closed form through the gauge polar-coordinate identity.
//! * **bp**: the Blaschke-Petkantschin line decomposition; an integral over
//!   lines (direction times base point in the orthogonal complement, with
//!   the leading 1/2 of the affine-Grassmannian parametrization) of 1D
//!   Gagliardo seminorms of the restrictions.
//!
//! Deterministic error model: every estimate reports a two-grid Richardson
//! difference as its `std_error`. Partial sums are reduced in a fixed order
//! independent of worker scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::func::TestFunction;
use crate::geom::{BoundingBox, Vector, MAX_DIM};
use crate::quad::{
    graded_both_ends, line_nodes, unit_sphere_directions, GaussLegendre, QuadratureSpec,
    TensorGrid, GL_RADIAL, GL_SPATIAL,
};
use crate::scalar::Real;

/// Which computation path produced an estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Bp,
    OneD,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Bp => "bp",
            Method::OneD => "one_d",
        }
    }
}

/// A seminorm value with its declared error bound and full parameter record.
#[derive(Clone, Debug, Serialize)]
pub struct SeminormEstimate<F> {
    pub value: F,
    /// Two-grid Richardson difference (deterministic paths).
    pub std_error: F,
    pub method: Method,
    pub s: F,
    pub p: F,
    pub dim: usize,
    pub body_digest: String,
    pub fn_digest: String,
    pub spec_digest: String,
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

fn check_sp<F: Real>(s: F, p: F) -> Result<()> {
    if !(s > F::zero() && s < F::one()) {
        return Err(Error::SOutOfRange(s.as_f64()));
    }
    if !(p.is_finite() && p >= F::one()) {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("exponent must satisfy p >= 1, got {p}"),
        });
    }
    Ok(())
}

/// Split radius in gauge units: at least the support diameter measured in
/// the gauge, so that beyond it the supports of `f` and its translate are
/// disjoint and the tail integral is exact.
fn resolve_split_radius<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    spec: &QuadratureSpec<F>,
) -> Result<F> {
    let required = f.support_diameter() * body.gauge_max_on_sphere();
    match spec.split_radius {
        Some(r) => {
            if r < required * (F::one() - F::of(1e-12)) {
                Err(Error::SplitRadiusTooSmall {
                    given: r.as_f64(),
                    required: required.as_f64(),
                })
            } else {
                Ok(r)
            }
        }
        None => Ok(required * (F::one() + F::of(1e-9))),
    }
}

/// Quadrature data over the support box of `f`, reused across every radial
/// and angular node of one seminorm evaluation.
struct SupportGrid<F> {
    bbox: BoundingBox<F>,
    nodes: Vec<Vector<F>>,
    weights: Vec<F>,
    fvals: Vec<F>,
    /// `int |f|^p` on the same grid.
    fp_pow: F,
    /// Reference panel nodes on [0, 1] for integrals over shifted sub-boxes.
    ref_line: Vec<(F, F)>,
}

impl<F: Real> SupportGrid<F> {
    fn build(f: &TestFunction<F>, p: F, spec: &QuadratureSpec<F>) -> Self {
        let bbox = *f.support_box();
        let grid = TensorGrid::over_box(&bbox, spec.spatial_panels, GL_SPATIAL);
        let fvals: Vec<F> = grid.nodes.iter().map(|x| f.eval_raw(&x.array())).collect();
        let fp_pow = grid
            .weights
            .iter()
            .zip(&fvals)
            .map(|(&w, &v)| w * pow_p(v.abs(), p))
            .sum();
        let ref_line = line_nodes(F::zero(), F::one(), spec.spatial_panels, GL_SPATIAL);
        Self {
            bbox,
            nodes: grid.nodes,
            weights: grid.weights,
            fvals,
            fp_pow,
            ref_line,
        }
    }

    /// `D_p(h) = int |f(x+h) - f(x)|^p dx` over all of R^n, split into the
    /// support-box integral plus the band where only `f(x+h)` is nonzero.
    fn displacement_energy(&self, f: &TestFunction<F>, h: &[F; MAX_DIM], p: F) -> F {
        let mut term = F::zero();
        for ((node, &w), &fx) in self.nodes.iter().zip(&self.weights).zip(&self.fvals) {
            let a = node.array();
            let shifted = [a[0] + h[0], a[1] + h[1], a[2] + h[2]];
            let d = (f.eval_raw(&shifted) - fx).abs();
            term += w * pow_p(d, p);
        }
        term + self.band_integral(f, h, p)
    }

    /// `int_{box \ (box+h)} |f|^p`: the region where `x + h` covers the
    /// support but `x` does not. Integrated directly over the set-difference
    /// slabs; the complement form `fp_pow - int_{box cap (box+h)}` cancels
    /// catastrophically once `|h|^p` divides it near the radial origin.
    fn band_integral(&self, f: &TestFunction<F>, h: &[F; MAX_DIM], p: F) -> F {
        let dim = self.bbox.dim();
        let shift = Vector::from_array(dim, *h);
        let Some(ibox) = self.bbox.intersect_shifted(&shift) else {
            return self.fp_pow;
        };
        // box \ ibox as disjoint slabs: prefix axes clipped to ibox, one
        // axis on its missing strip, suffix axes over the full box
        let mut total = F::zero();
        for k in 0..dim {
            let (slo, shi) = if h[k] >= F::zero() {
                (self.bbox.min.get(k), ibox.min.get(k))
            } else {
                (ibox.max.get(k), self.bbox.max.get(k))
            };
            if !(shi > slo) {
                continue;
            }
            let mut lo = [F::zero(); MAX_DIM];
            let mut hi = [F::zero(); MAX_DIM];
            for j in 0..dim {
                if j < k {
                    lo[j] = ibox.min.get(j);
                    hi[j] = ibox.max.get(j);
                } else if j == k {
                    lo[j] = slo;
                    hi[j] = shi;
                } else {
                    lo[j] = self.bbox.min.get(j);
                    hi[j] = self.bbox.max.get(j);
                }
            }
            let sub = BoundingBox::new(
                Vector::from_array(dim, lo),
                Vector::from_array(dim, hi),
            );
            total += self.integral_over(f, &sub, p);
        }
        total
    }

    /// `int_box |f|^p` over an arbitrary sub-box via the reference panels.
    fn integral_over(&self, f: &TestFunction<F>, sub: &BoundingBox<F>, p: F) -> F {
        let dim = sub.dim();
        let lo = sub.min.array();
        let len = [
            sub.width(0),
            if dim > 1 { sub.width(1) } else { F::zero() },
            if dim > 2 { sub.width(2) } else { F::zero() },
        ];
        let mut acc = F::zero();
        match dim {
            1 => {
                for &(t, w) in &self.ref_line {
                    let x = [lo[0] + len[0] * t, F::zero(), F::zero()];
                    acc += w * len[0] * pow_p(f.eval_raw(&x).abs(), p);
                }
            }
            2 => {
                for &(t0, w0) in &self.ref_line {
                    let x0 = lo[0] + len[0] * t0;
                    let mut inner = F::zero();
                    for &(t1, w1) in &self.ref_line {
                        let x = [x0, lo[1] + len[1] * t1, F::zero()];
                        inner += w1 * pow_p(f.eval_raw(&x).abs(), p);
                    }
                    acc += w0 * inner;
                }
                acc = acc * len[0] * len[1];
            }
            _ => {
                for &(t0, w0) in &self.ref_line {
                    let x0 = lo[0] + len[0] * t0;
                    let mut mid = F::zero();
                    for &(t1, w1) in &self.ref_line {
                        let x1 = lo[1] + len[1] * t1;
                        let mut inner = F::zero();
                        for &(t2, w2) in &self.ref_line {
                            let x = [x0, x1, lo[2] + len[2] * t2];
                            inner += w2 * pow_p(f.eval_raw(&x).abs(), p);
                        }
                        mid += w1 * inner;
                    }
                    acc += w0 * mid;
                }
                acc = acc * len[0] * len[1] * len[2];
            }
        }
        acc
    }
}

/// Radial integral `int_0^{r_max} r^{-1-ps} D(r) dr` under `u = r^{p(1-s)}`:
/// the integrand becomes `D(r(u)) / r(u)^p / (p(1-s))`, bounded up to r = 0.
fn near_field_radial<F: Real>(
    r_max: F,
    s: F,
    p: F,
    radial_panels: usize,
    grading: F,
    gl: &GaussLegendre<F>,
    mut d_p: impl FnMut(F) -> F,
) -> F {
    let beta = p * (F::one() - s);
    let inv_beta = beta.recip();
    let u_max = r_max.powf(beta);
    let r_floor = r_max * F::of(1e-7);
    let bounds = graded_both_ends(u_max, radial_panels, grading);
    let mut acc = F::zero();
    for w in bounds.windows(2) {
        acc += gl.integrate(w[0], w[1], |u| {
            let r = u.powf(inv_beta).max(r_floor).min(r_max);
            d_p(r) / pow_p(r, p)
        });
    }
    acc * inv_beta
}

/// Closed-form tail `int_{|h|_K > R} |h|_K^{-(n+ps)} dh * 2 int |f|^p`
/// by the gauge polar-coordinate identity.
fn far_field_tail<F: Real>(body: &ConvexBody<F>, fp_pow: F, split: F, s: F, p: F) -> F {
    let n = F::of_usize(body.dim());
    let ps = p * s;
    F::of(2.0) * fp_pow * n * body.volume() * split.powf(-ps) / ps
}

fn estimate_value<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    s: F,
    p: F,
    split: F,
    spec: &QuadratureSpec<F>,
) -> F {
    let n = body.dim();
    let grid = SupportGrid::build(f, p, spec);
    let angular = if body.is_gauge_smooth() || n == 1 {
        spec.angular_points
    } else {
        spec.angular_points * 4
    };
    let dirs = unit_sphere_directions::<F>(n, angular);
    let gl = GaussLegendre::<F>::new(GL_RADIAL);
    let exponent = -(F::of_usize(n) + p * s);
    let contributions: Vec<F> = dirs
        .par_iter()
        .map(|(theta, w)| {
            let g0 = body.gauge_raw(&theta.array());
            let r_max = split / g0;
            let th = theta.array();
            let near = near_field_radial(
                r_max,
                s,
                p,
                spec.radial_panels,
                spec.radial_grading,
                &gl,
                |r| {
                    let h = [th[0] * r, th[1] * r, th[2] * r];
                    grid.displacement_energy(f, &h, p)
                },
            );
            *w * g0.powf(exponent) * near
        })
        .collect();
    let near_total: F = contributions.into_iter().sum();
    near_total + far_field_tail(body, grid.fp_pow, split, s, p)
}

fn assemble<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    s: F,
    p: F,
    spec: &QuadratureSpec<F>,
    method: Method,
    value: F,
    coarse: F,
) -> SeminormEstimate<F> {
    let diff = (value - coarse).abs() * F::of(1.25);
    let std_error = diff.max(value.abs() * F::of(1e-12));
    SeminormEstimate {
        value,
        std_error,
        method,
        s,
        p,
        dim: body.dim(),
        body_digest: body.digest().to_string(),
        fn_digest: f.digest().to_string(),
        spec_digest: spec.digest(),
    }
}

/// The 1D Gagliardo seminorm of a compactly supported function on the line.
pub fn gagliardo_1d<F: Real>(
    g: &TestFunction<F>,
    s: F,
    p: F,
    spec: &QuadratureSpec<F>,
) -> Result<SeminormEstimate<F>> {
    if g.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: g.dim(),
        });
    }
    let unit_interval = ConvexBody::axis_box(&[F::one()])?;
    let mut est = direct_impl(g, &unit_interval, s, p, spec)?;
    est.method = Method::OneD;
    Ok(est)
}

/// Direct singular quadrature of the anisotropic seminorm.
pub fn seminorm_direct<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    s: F,
    p: F,
    spec: &QuadratureSpec<F>,
) -> Result<SeminormEstimate<F>> {
    direct_impl(f, body, s, p, spec)
}

fn direct_impl<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    s: F,
    p: F,
    spec: &QuadratureSpec<F>,
) -> Result<SeminormEstimate<F>> {
    spec.validate()?;
    check_sp(s, p)?;
    if f.dim() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            got: f.dim(),
        });
    }
    let split = resolve_split_radius(f, body, spec)?;
    let value = estimate_value(f, body, s, p, split, spec);
    let coarse = estimate_value(f, body, s, p, split, &spec.coarsened());
    Ok(assemble(f, body, s, p, spec, Method::Direct, value, coarse))
}

/// Blaschke-Petkantschin route: integral over lines of 1D seminorms of the
/// restrictions, weighted by the gauge of the line direction.
pub fn seminorm_via_bp<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    s: F,
    p: F,
    spec: &QuadratureSpec<F>,
) -> Result<SeminormEstimate<F>> {
    spec.validate()?;
    check_sp(s, p)?;
    if f.dim() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            got: f.dim(),
        });
    }
    if body.dim() == 1 {
        return Err(Error::Unsupported(
            "the line decomposition needs n >= 2; use gagliardo_1d in dimension 1".into(),
        ));
    }
    let value = bp_value(f, body, s, p, spec);
    let coarse = bp_value(f, body, s, p, &spec.coarsened());
    Ok(assemble(f, body, s, p, spec, Method::Bp, value, coarse))
}

fn bp_value<F: Real>(
    f: &TestFunction<F>,
    body: &ConvexBody<F>,
    s: F,
    p: F,
    spec: &QuadratureSpec<F>,
) -> F {
    let n = body.dim();
    let angular = if body.is_gauge_smooth() {
        spec.angular_points
    } else {
        spec.angular_points * 4
    };
    let dirs = unit_sphere_directions::<F>(n, angular);
    let gl = GaussLegendre::<F>::new(GL_RADIAL);
    let bbox = *f.support_box();
    let exponent = -(F::of_usize(n) + p * s);
    let line_radial = spec.radial_panels;
    let ref_line = line_nodes(F::zero(), F::one(), spec.spatial_panels, GL_SPATIAL);

    let contributions: Vec<F> = dirs
        .par_iter()
        .map(|(u, wu)| {
            let gauge_w = body.gauge_raw(&u.array()).powf(exponent);
            let base_total = match n {
                2 => {
                    let perp = Vector::from_array(2, [-u.get(1), u.get(0), F::zero()]);
                    let (t0, t1) = shadow_interval(&bbox, &perp);
                    let base_nodes =
                        line_nodes(t0, t1, spec.spatial_panels, GL_SPATIAL);
                    let mut acc = F::zero();
                    for (t, wb) in base_nodes {
                        let base = perp.scale(t);
                        acc += wb
                            * line_restriction_seminorm(
                                f, &bbox, &base, u, s, p, line_radial, spec.radial_grading,
                                &gl, &ref_line,
                            );
                    }
                    acc
                }
                _ => {
                    let (e1, e2) = orthonormal_complement(u);
                    let (a0, a1) = shadow_interval(&bbox, &e1);
                    let (b0, b1) = shadow_interval(&bbox, &e2);
                    let nodes_a = line_nodes(a0, a1, spec.spatial_panels, GL_SPATIAL);
                    let nodes_b = line_nodes(b0, b1, spec.spatial_panels, GL_SPATIAL);
                    let mut acc = F::zero();
                    for &(ta, wa) in &nodes_a {
                        let pa = e1.scale(ta);
                        let mut inner = F::zero();
                        for &(tb, wb) in &nodes_b {
                            let base = pa.add(&e2.scale(tb));
                            inner += wb
                                * line_restriction_seminorm(
                                    f, &bbox, &base, u, s, p, line_radial,
                                    spec.radial_grading, &gl, &ref_line,
                                );
                        }
                        acc += wa * inner;
                    }
                    acc
                }
            };
            *wu * gauge_w * base_total
        })
        .collect();
    contributions.into_iter().sum::<F>() * F::of(0.5)
}

/// Projection interval of the box onto the direction `w`.
fn shadow_interval<F: Real>(bbox: &BoundingBox<F>, w: &Vector<F>) -> (F, F) {
    let dim = bbox.dim();
    let mut center = F::zero();
    let mut half = F::zero();
    for i in 0..dim {
        let c = (bbox.min.get(i) + bbox.max.get(i)) * F::of(0.5);
        let hw = (bbox.max.get(i) - bbox.min.get(i)) * F::of(0.5);
        center += c * w.get(i);
        half += hw * w.get(i).abs();
    }
    (center - half, center + half)
}

/// Orthonormal basis of the complement of a 3D unit vector.
fn orthonormal_complement<F: Real>(u: &Vector<F>) -> (Vector<F>, Vector<F>) {
    let seed = if u.get(0).abs() < F::of(0.9) {
        Vector::from_array(3, [F::one(), F::zero(), F::zero()])
    } else {
        Vector::from_array(3, [F::zero(), F::one(), F::zero()])
    };
    let proj = seed.sub(&u.scale(seed.dot(u)));
    let e1 = proj.unit().expect("complement frame");
    let e2 = Vector::from_array(
        3,
        [
            u.get(1) * e1.get(2) - u.get(2) * e1.get(1),
            u.get(2) * e1.get(0) - u.get(0) * e1.get(2),
            u.get(0) * e1.get(1) - u.get(1) * e1.get(0),
        ],
    );
    (e1, e2)
}

/// 1D Gagliardo seminorm (Euclidean kernel, exponent 1 + ps) of the
/// restriction of `f` to the line `base + lambda u`.
#[allow(clippy::too_many_arguments)]
fn line_restriction_seminorm<F: Real>(
    f: &TestFunction<F>,
    bbox: &BoundingBox<F>,
    base: &Vector<F>,
    u: &Vector<F>,
    s: F,
    p: F,
    radial_panels: usize,
    grading: F,
    gl: &GaussLegendre<F>,
    ref_line: &[(F, F)],
) -> F {
    let Some((l0, l1)) = line_box_clip(bbox, base, u) else {
        return F::zero();
    };
    let len = l1 - l0;
    if !(len > F::zero()) {
        return F::zero();
    }
    let dim = bbox.dim();
    let eval = |lambda: F| -> F {
        let x = [
            base.get(0) + lambda * u.get(0),
            if dim > 1 { base.get(1) + lambda * u.get(1) } else { F::zero() },
            if dim > 2 { base.get(2) + lambda * u.get(2) } else { F::zero() },
        ];
        f.eval_raw(&x)
    };
    // int |g|^p along the clipped segment
    let mut gp_pow = F::zero();
    for &(t, w) in ref_line {
        gp_pow += w * len * pow_p(eval(l0 + len * t).abs(), p);
    }
    if gp_pow <= F::zero() {
        return F::zero();
    }
    let d1 = |h: F| -> F {
        let mut term = F::zero();
        for &(t, w) in ref_line {
            let lam = l0 + len * t;
            let d = (eval(lam + h) - eval(lam)).abs();
            term += w * len * pow_p(d, p);
        }
        // band [l0, min(l0+h, l1)] where only g(. + h) is nonzero,
        // integrated directly (no cancellation against gp_pow)
        let bhi = (l0 + h).min(l1);
        let blen = bhi - l0;
        let mut band = F::zero();
        for &(t, w) in ref_line {
            band += w * blen * pow_p(eval(l0 + blen * t).abs(), p);
        }
        term + band
    };
    let near = near_field_radial(len, s, p, radial_panels, grading, gl, d1);
    let ps = p * s;
    // both h-signs, plus the disjoint-support tail 4 |g|_p^p len^{-ps}/(ps)
    F::of(2.0) * near + F::of(4.0) * gp_pow * len.powf(-ps) / ps
}

/// Intersection of the line `base + lambda u` with the box, as a lambda
/// interval; `None` when the line misses the box.
fn line_box_clip<F: Real>(
    bbox: &BoundingBox<F>,
    base: &Vector<F>,
    u: &Vector<F>,
) -> Option<(F, F)> {
    let mut lo = F::neg_infinity();
    let mut hi = F::infinity();
    for i in 0..bbox.dim() {
        let b = base.get(i);
        let d = u.get(i);
        if d.abs() <= F::of(1e-15) {
            if b < bbox.min.get(i) || b > bbox.max.get(i) {
                return None;
            }
            continue;
        }
        let (a, c) = ((bbox.min.get(i) - b) / d, (bbox.max.get(i) - b) / d);
        let (a, c) = if a <= c { (a, c) } else { (c, a) };
        lo = lo.max(a);
        hi = hi.min(c);
    }
    if lo < hi {
        Some((lo, hi))
    } else {
        None
    }
}
