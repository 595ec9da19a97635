//! Origin-symmetric convex bodies with the origin interior: boxes,
//! ellipsoids, l_q balls and symmetric V-polytopes. Each kind supplies an
//! exact gauge (Minkowski functional), support function and volume.
//!
//! Polytopes are converted once at construction into their facet
//! (H-)description, so a gauge query is a small max-of-dot-products scan
//! rather than a per-query linear program. Facets are stored as one
//! representative per +/- pair and evaluated through |a . x|, which makes
//! gauge(-x) == gauge(x) hold exactly in floating point.

use crate::digest::digest_str;
use crate::error::{Error, Result};
use crate::geom::{check_dim, SymMat, Vector, MAX_DIM};
use crate::quad::{graded_toward_zero, GaussLegendre, QuadratureSpec, GL_RADIAL};
use crate::rng::CounterRng;
use crate::scalar::Real;
use crate::special::{gamma, unit_ball_volume};

#[derive(Clone, Debug)]
enum BodyKind<F> {
    AxisBox {
        half_widths: [F; MAX_DIM],
    },
    Ellipsoid {
        shape: SymMat<F>,
        inverse: SymMat<F>,
    },
    LqBall {
        q: F,
        scales: [F; MAX_DIM],
    },
    SymPolytope {
        /// Deduplicated generating vertices (one per +/- pair not enforced).
        vertices: Vec<Vector<F>>,
        /// One facet normal per +/- facet pair, scaled so the facet plane is
        /// `a . x = 1`; the gauge is `max |a . x|`.
        facets: Vec<Vector<F>>,
    },
}

/// An origin-symmetric convex body in dimension 1..=3.
#[derive(Clone, Debug)]
pub struct ConvexBody<F> {
    dim: usize,
    kind: BodyKind<F>,
    volume: F,
    gauge_max: F,
    digest: String,
}

impl<F: Real> ConvexBody<F> {
    /// Axis-aligned box with the given strictly positive half-widths.
    pub fn axis_box(half_widths: &[F]) -> Result<Self> {
        let dim = half_widths.len();
        check_dim(dim)?;
        let mut w = [F::one(); MAX_DIM];
        for (slot, &hw) in w.iter_mut().zip(half_widths) {
            if !(hw.is_finite() && hw > F::zero()) {
                return Err(Error::InvalidBody("box half-widths must be positive".into()));
            }
            *slot = hw;
        }
        let volume = half_widths
            .iter()
            .fold(F::one(), |acc, &hw| acc * F::of(2.0) * hw);
        let gauge_max = half_widths
            .iter()
            .fold(F::zero(), |acc, &hw| acc.max(hw.recip()));
        let digest = digest_str(&format!(
            "body:box;dim={dim};w={:?}",
            half_widths.iter().map(|x| x.as_f64()).collect::<Vec<_>>()
        ));
        Ok(Self {
            dim,
            kind: BodyKind::AxisBox { half_widths: w },
            volume,
            gauge_max,
            digest,
        })
    }

    /// Ellipsoid `{x : x . (A x) <= 1}` for symmetric positive-definite `A`.
    pub fn ellipsoid(shape: SymMat<F>) -> Result<Self> {
        let dim = shape.dim();
        check_dim(dim)?;
        if !shape.is_positive_definite() {
            return Err(Error::InvalidBody(
                "ellipsoid shape matrix must be positive definite".into(),
            ));
        }
        let inverse = shape.inverse()?;
        let volume = unit_ball_volume::<F>(dim) / shape.det().sqrt();
        // gauge(u) = sqrt(u . A u) <= sqrt(lambda_max(A)); tiny safety margin
        // because the bound is only used to validate/derive split radii.
        let gauge_max = shape.max_eigenvalue().sqrt() * F::of(1.0 + 1e-9);
        let mut rows = String::new();
        for i in 0..dim {
            for j in 0..dim {
                rows.push_str(&format!("{:?},", shape.entry(i, j).as_f64()));
            }
        }
        let digest = digest_str(&format!("body:ellipsoid;dim={dim};a=[{rows}]"));
        Ok(Self {
            dim,
            kind: BodyKind::Ellipsoid { shape, inverse },
            volume,
            gauge_max,
            digest,
        })
    }

    /// Euclidean unit ball (identity ellipsoid).
    pub fn euclidean_ball(dim: usize) -> Result<Self> {
        Self::ellipsoid(SymMat::identity(dim))
    }

    /// Scaled l_q ball `{x : sum (|x_i|/w_i)^q <= 1}`, `q` in `[1, inf]`.
    pub fn lq_ball(q: F, scales: &[F]) -> Result<Self> {
        let dim = scales.len();
        check_dim(dim)?;
        if !(q >= F::one()) {
            return Err(Error::InvalidBody(format!(
                "l_q exponent must satisfy q >= 1, got {q}"
            )));
        }
        let mut w = [F::one(); MAX_DIM];
        for (slot, &sc) in w.iter_mut().zip(scales) {
            if !(sc.is_finite() && sc > F::zero()) {
                return Err(Error::InvalidBody("l_q scales must be positive".into()));
            }
            *slot = sc;
        }
        // closed beta-function volume: 2^n Gamma(1+1/q)^n / Gamma(1+n/q) * prod(w)
        let inv_q = if q.is_infinite() { F::zero() } else { q.recip() };
        let g1 = gamma(F::one() + inv_q);
        let gn = gamma(F::one() + F::of_usize(dim) * inv_q);
        let volume = scales
            .iter()
            .fold(g1.powi(dim as i32) / gn, |acc, &sc| acc * F::of(2.0) * sc);
        let gauge_max = lq_gauge_sphere_max(q, &w[..dim]);
        let digest = digest_str(&format!(
            "body:lq;dim={dim};q={:?};w={:?}",
            q.as_f64(),
            scales.iter().map(|x| x.as_f64()).collect::<Vec<_>>()
        ));
        Ok(Self {
            dim,
            kind: BodyKind::LqBall { q, scales: w },
            volume,
            gauge_max,
            digest,
        })
    }

    /// Symmetric polytope `conv(V u -V)`; the vertex set must span R^n.
    pub fn sym_polytope(dim: usize, vertices: &[Vec<F>]) -> Result<Self> {
        check_dim(dim)?;
        if vertices.is_empty() {
            return Err(Error::InvalidBody("polytope needs at least one vertex".into()));
        }
        let mut verts: Vec<Vector<F>> = Vec::with_capacity(vertices.len());
        for v in vertices {
            verts.push(Vector::from_slice(dim, v)?);
        }
        // symmetrize, then drop duplicates
        let mut sym: Vec<Vector<F>> = Vec::with_capacity(verts.len() * 2);
        for v in &verts {
            sym.push(*v);
            sym.push(v.neg());
        }
        let scale = sym
            .iter()
            .fold(F::zero(), |acc, v| acc.max(v.norm()));
        if !(scale > F::zero()) {
            return Err(Error::InvalidBody("polytope vertices are all zero".into()));
        }
        let tol = scale * F::of(1e-12);
        let mut dedup: Vec<Vector<F>> = Vec::new();
        for v in sym {
            if !dedup.iter().any(|u| u.sub(&v).norm() <= tol) {
                dedup.push(v);
            }
        }
        let (facets, volume) = match dim {
            1 => {
                let w = dedup.iter().fold(F::zero(), |acc, v| acc.max(v.get(0).abs()));
                (vec![Vector::from_array(1, [w.recip(), F::zero(), F::zero()])], F::of(2.0) * w)
            }
            2 => hull::facets_2d(&dedup)?,
            _ => hull::facets_3d(&dedup)?,
        };
        let gauge_max = facets.iter().fold(F::zero(), |acc, a| acc.max(a.norm()));
        let digest = digest_str(&format!(
            "body:polytope;dim={dim};v={:?}",
            vertices
                .iter()
                .map(|v| v.iter().map(|x| x.as_f64()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        ));
        Ok(Self {
            dim,
            kind: BodyKind::SymPolytope { vertices: dedup, facets },
            volume,
            gauge_max,
            digest,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact volume.
    #[inline]
    pub fn volume(&self) -> F {
        self.volume
    }

    /// Canonical content digest.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Upper bound (tight except for a safety margin on ellipsoids/l_q) of
    /// the gauge over the Euclidean unit sphere.
    #[inline]
    pub fn gauge_max_on_sphere(&self) -> F {
        self.gauge_max
    }

    pub(crate) fn as_axis_box(&self) -> Option<[F; MAX_DIM]> {
        match &self.kind {
            BodyKind::AxisBox { half_widths } => Some(*half_widths),
            _ => None,
        }
    }

    pub(crate) fn is_ellipsoid(&self) -> bool {
        matches!(self.kind, BodyKind::Ellipsoid { .. })
    }

    /// True when the gauge restricted to the unit sphere is smooth, which
    /// lets angular trapezoid rules converge spectrally.
    pub(crate) fn is_gauge_smooth(&self) -> bool {
        match &self.kind {
            BodyKind::Ellipsoid { .. } => true,
            BodyKind::LqBall { q, .. } => *q == F::of(2.0),
            _ => false,
        }
    }

    /// Minkowski functional `inf { t > 0 : x in t K }`; checked entry point.
    pub fn gauge(&self, x: &Vector<F>) -> Result<F> {
        self.check_vector(x)?;
        Ok(self.gauge_raw(&x.array()))
    }

    /// Support function `max { v . x : x in K }`; checked entry point.
    pub fn support(&self, v: &Vector<F>) -> Result<F> {
        self.check_vector(v)?;
        Ok(self.support_raw(&v.array()))
    }

    fn check_vector(&self, x: &Vector<F>) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        if x.coords().iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn gauge_raw(&self, x: &[F; MAX_DIM]) -> F {
        match &self.kind {
            BodyKind::AxisBox { half_widths } => {
                let mut m = F::zero();
                for i in 0..self.dim {
                    m = m.max(x[i].abs() / half_widths[i]);
                }
                m
            }
            BodyKind::Ellipsoid { shape, .. } => {
                shape.quad_form(&Vector::from_array(self.dim, *x)).max(F::zero()).sqrt()
            }
            BodyKind::LqBall { q, scales } => {
                if q.is_infinite() {
                    let mut m = F::zero();
                    for i in 0..self.dim {
                        m = m.max(x[i].abs() / scales[i]);
                    }
                    m
                } else {
                    let mut acc = F::zero();
                    for i in 0..self.dim {
                        acc += (x[i].abs() / scales[i]).powf(*q);
                    }
                    acc.powf(q.recip())
                }
            }
            BodyKind::SymPolytope { facets, .. } => {
                let v = Vector::from_array(self.dim, *x);
                let mut m = F::zero();
                for a in facets {
                    m = m.max(a.dot(&v).abs());
                }
                m
            }
        }
    }

    #[inline]
    pub(crate) fn support_raw(&self, v: &[F; MAX_DIM]) -> F {
        match &self.kind {
            BodyKind::AxisBox { half_widths } => {
                let mut acc = F::zero();
                for i in 0..self.dim {
                    acc += half_widths[i] * v[i].abs();
                }
                acc
            }
            BodyKind::Ellipsoid { inverse, .. } => {
                inverse.quad_form(&Vector::from_array(self.dim, *v)).max(F::zero()).sqrt()
            }
            BodyKind::LqBall { q, scales } => {
                // dual exponent: 1/q + 1/q' = 1
                if *q == F::one() {
                    let mut m = F::zero();
                    for i in 0..self.dim {
                        m = m.max(scales[i] * v[i].abs());
                    }
                    m
                } else if q.is_infinite() {
                    let mut acc = F::zero();
                    for i in 0..self.dim {
                        acc += scales[i] * v[i].abs();
                    }
                    acc
                } else {
                    let qd = *q / (*q - F::one());
                    let mut acc = F::zero();
                    for i in 0..self.dim {
                        acc += (scales[i] * v[i].abs()).powf(qd);
                    }
                    acc.powf(qd.recip())
                }
            }
            BodyKind::SymPolytope { vertices, .. } => {
                let x = Vector::from_array(self.dim, *v);
                let mut m = F::zero();
                for p in vertices {
                    m = m.max(p.dot(&x).abs());
                }
                m
            }
        }
    }

    /// Half-widths of the tightest axis-aligned bounding box, for rejection
    /// sampling.
    pub(crate) fn bounding_half_widths(&self) -> [F; MAX_DIM] {
        match &self.kind {
            BodyKind::AxisBox { half_widths } => *half_widths,
            BodyKind::Ellipsoid { inverse, .. } => {
                let mut w = [F::zero(); MAX_DIM];
                for (i, slot) in w.iter_mut().enumerate().take(self.dim) {
                    *slot = inverse.entry(i, i).max(F::zero()).sqrt();
                }
                w
            }
            BodyKind::LqBall { scales, .. } => *scales,
            BodyKind::SymPolytope { vertices, .. } => {
                let mut w = [F::zero(); MAX_DIM];
                for v in vertices {
                    for (i, slot) in w.iter_mut().enumerate().take(self.dim) {
                        *slot = slot.max(v.get(i).abs());
                    }
                }
                w
            }
        }
    }

    /// Deterministic uniform sample: the point for `(seed, index)` does not
    /// depend on scheduling, so parallel Monte Carlo reduces reproducibly.
    pub(crate) fn sample_point(&self, seed: u64, index: u64) -> Vector<F> {
        let bbox = self.bounding_half_widths();
        let mut rng = CounterRng::for_index(seed, index);
        for _ in 0..1_000_000u32 {
            let mut coords = [F::zero(); MAX_DIM];
            for (i, c) in coords.iter_mut().enumerate().take(self.dim) {
                *c = bbox[i] * rng.next_symmetric::<F>();
            }
            if self.gauge_raw(&coords) <= F::one() {
                return Vector::from_array(self.dim, coords);
            }
        }
        unreachable!("rejection sampling failed: body volume fraction is degenerate")
    }

    /// The homothet `lambda K`.
    pub fn scale_body(&self, lambda: F) -> Result<Self> {
        if !(lambda.is_finite() && lambda > F::zero()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: "scale factor must be positive and finite".into(),
            });
        }
        match &self.kind {
            BodyKind::AxisBox { half_widths } => {
                let w: Vec<F> = half_widths[..self.dim].iter().map(|&x| x * lambda).collect();
                Self::axis_box(&w)
            }
            BodyKind::Ellipsoid { shape, .. } => {
                let inv_l2 = (lambda * lambda).recip();
                let rows: Vec<Vec<F>> = (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| shape.entry(i, j) * inv_l2).collect())
                    .collect();
                Self::ellipsoid(SymMat::from_rows(self.dim, &rows)?)
            }
            BodyKind::LqBall { q, scales } => {
                let w: Vec<F> = scales[..self.dim].iter().map(|&x| x * lambda).collect();
                Self::lq_ball(*q, &w)
            }
            BodyKind::SymPolytope { vertices, .. } => {
                let verts: Vec<Vec<F>> = vertices
                    .iter()
                    .map(|v| v.coords().iter().map(|&c| c * lambda).collect())
                    .collect();
                Self::sym_polytope(self.dim, &verts)
            }
        }
    }
}

/// Largest value of the scaled l_q gauge over the Euclidean unit sphere.
fn lq_gauge_sphere_max<F: Real>(q: F, scales: &[F]) -> F {
    let a: Vec<F> = scales.iter().map(|&w| w.recip()).collect();
    if q.is_infinite() || q >= F::of(2.0) {
        return a.iter().fold(F::zero(), |acc, &x| acc.max(x));
    }
    // Lagrange stationarity for 1 <= q < 2: max = (sum a_i^t)^{1/t}, t = 2q/(2-q)
    let t = F::of(2.0) * q / (F::of(2.0) - q);
    a.iter()
        .fold(F::zero(), |acc, &x| acc + x.powf(t))
        .powf(t.recip())
}

/// Integrate `profile(|h|_K)` over R^n through the gauge polar-coordinate
/// identity: the result is `n Vol(K) * int_0^{r_max} profile(r) r^{n-1} dr`.
///
/// `r_max` may be `+inf` when the profile decays fast enough; divergent
/// profiles are reported as errors once refinement stops converging.
pub fn gauge_polar_integral<F: Real>(
    body: &ConvexBody<F>,
    profile: impl Fn(F) -> F,
    r_max: F,
    spec: &QuadratureSpec<F>,
) -> Result<F> {
    spec.validate()?;
    if !(r_max > F::zero()) {
        return Err(Error::InvalidParameter {
            name: "r_max",
            reason: "must be positive (possibly infinite)".into(),
        });
    }
    let n = body.dim();
    let nf = F::of_usize(n);
    let gl = GaussLegendre::<F>::new(GL_RADIAL);
    let weighted = |r: F| profile(r) * r.powi(n as i32 - 1);

    let finite_part = |len: F| -> Result<F> {
        let bounds = graded_toward_zero(len, spec.radial_panels, spec.radial_grading);
        let mut contributions = Vec::with_capacity(bounds.len() - 1);
        for w in bounds.windows(2) {
            contributions.push(gl.integrate(w[0], w[1], weighted));
        }
        let total: F = contributions.iter().copied().sum();
        // Innermost panels of an integrable weighted profile decay toward 0
        // (per-octave factor ratio^alpha, alpha > 0); sustained growth inward
        // signals a non-integrable singularity. Panel 0 touches r = 0 and is
        // excluded: its Gauss nodes misrepresent a singular integrand.
        if contributions.len() >= 4 {
            let c1 = contributions[1].abs();
            let c2 = contributions[2].abs();
            let c3 = contributions[3].abs();
            let one_plus = F::one() + F::of(1e-4);
            if c1 > c2 * one_plus
                && c2 > c3 * one_plus
                && c1 > total.abs().max(F::of(1e-300)) * F::of(1e-6)
            {
                return Err(Error::NonIntegrable(
                    "radial profile diverges under refinement toward r = 0".into(),
                ));
            }
        }
        Ok(total)
    };

    let radial = if r_max.is_finite() {
        finite_part(r_max)?
    } else {
        // inner graded part on (0, 1], then expanding octaves
        let mut acc = finite_part(F::one())?;
        let mut lo = F::one();
        let mut prev = F::infinity();
        let mut quiet = 0u32;
        for k in 0..600u32 {
            let hi = lo * F::of(2.0);
            let c = gl.integrate(lo, hi, weighted);
            acc += c;
            if c.abs() <= acc.abs().max(F::of(1e-300)) * F::of(1e-14) {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            if k > 60 && c.abs() >= prev.abs() {
                return Err(Error::NonIntegrable(
                    "radial tail does not decay; profile must fall faster than r^-n".into(),
                ));
            }
            prev = c;
            lo = hi;
        }
        acc
    };
    Ok(nf * body.volume() * radial)
}

mod hull {
    //! Facet enumeration for symmetric polytopes in 2D and 3D.
    //!
    //! 2D uses the monotone chain; 3D enumerates supporting planes by brute
    //! force over vertex triples, which is robust and cheap at the small
    //! vertex counts this library targets.

    use super::*;

    /// Keep one representative per exact +/- facet pair: the one whose first
    /// significantly nonzero coordinate is positive.
    fn canonical_half<F: Real>(facets: Vec<Vector<F>>) -> Vec<Vector<F>> {
        let mut out = Vec::with_capacity(facets.len() / 2);
        for a in facets {
            let scale = a.coords().iter().fold(F::zero(), |m, c| m.max(c.abs()));
            let lead = a
                .coords()
                .iter()
                .find(|c| c.abs() > scale * F::of(1e-12))
                .copied()
                .unwrap_or(F::zero());
            if lead > F::zero() {
                out.push(a);
            }
        }
        out
    }

    pub fn facets_2d<F: Real>(points: &[Vector<F>]) -> Result<(Vec<Vector<F>>, F)> {
        let mut pts: Vec<(F, F)> = points.iter().map(|p| (p.get(0), p.get(1))).collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let cross = |o: (F, F), a: (F, F), b: (F, F)| -> F {
            (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
        };
        let mut lower: Vec<(F, F)> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= F::zero()
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(F, F)> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= F::zero()
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper); // counter-clockwise hull
        if lower.len() < 3 {
            return Err(Error::InvalidBody(
                "polytope vertices do not span R^2".into(),
            ));
        }
        let hull = lower;
        let m = hull.len();
        let mut area2 = F::zero();
        let mut facets = Vec::with_capacity(m);
        for i in 0..m {
            let p = hull[i];
            let q = hull[(i + 1) % m];
            area2 += p.0 * q.1 - q.0 * p.1;
            // outward normal of a CCW edge
            let n = (q.1 - p.1, -(q.0 - p.0));
            let c = n.0 * p.0 + n.1 * p.1;
            if c <= F::zero() {
                return Err(Error::InvalidBody(
                    "origin is not interior to the polytope".into(),
                ));
            }
            facets.push(Vector::from_array(2, [n.0 / c, n.1 / c, F::zero()]));
        }
        let volume = area2.abs() * F::of(0.5);
        if !(volume > F::zero()) {
            return Err(Error::InvalidBody(
                "polytope vertices do not span R^2".into(),
            ));
        }
        Ok((canonical_half(facets), volume))
    }

    pub fn facets_3d<F: Real>(points: &[Vector<F>]) -> Result<(Vec<Vector<F>>, F)> {
        let m = points.len();
        let scale = points.iter().fold(F::zero(), |acc, p| acc.max(p.norm()));
        let area_tol = scale * scale * F::of(1e-12);
        let mut planes: Vec<Vector<F>> = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let u = points[j].sub(&points[i]);
                    let v = points[k].sub(&points[i]);
                    let n = Vector::from_array(
                        3,
                        [
                            u.get(1) * v.get(2) - u.get(2) * v.get(1),
                            u.get(2) * v.get(0) - u.get(0) * v.get(2),
                            u.get(0) * v.get(1) - u.get(1) * v.get(0),
                        ],
                    );
                    if n.norm() <= area_tol {
                        continue; // collinear triple
                    }
                    let mut n = n;
                    let mut c = n.dot(&points[i]);
                    if c < F::zero() {
                        n = n.neg();
                        c = -c;
                    }
                    if c <= n.norm() * scale * F::of(1e-9) {
                        continue; // plane through the origin cannot support a symmetric body
                    }
                    let side_tol = n.norm() * scale * F::of(1e-9);
                    if points.iter().all(|p| n.dot(p) <= c + side_tol) {
                        let a = n.scale(c.recip());
                        let dup = planes.iter().any(|b| {
                            a.sub(b).norm() <= b.norm().max(a.norm()) * F::of(1e-8)
                        });
                        if !dup {
                            planes.push(a);
                        }
                    }
                }
            }
        }
        if planes.len() < 4 {
            return Err(Error::InvalidBody(
                "polytope vertices do not span R^3".into(),
            ));
        }
        // cone decomposition: volume = sum over facets of fan tetrahedra
        let mut volume = F::zero();
        for a in &planes {
            let on_tol = F::of(1e-8);
            let incident: Vec<&Vector<F>> = points
                .iter()
                .filter(|p| (a.dot(p) - F::one()).abs() <= on_tol)
                .collect();
            if incident.len() < 3 {
                return Err(Error::InvalidBody(
                    "degenerate facet in polytope hull".into(),
                ));
            }
            // order the facet polygon by angle around its centroid
            let centroid = incident
                .iter()
                .fold(Vector::zeros(3), |acc, p| acc.add(p))
                .scale(F::of_usize(incident.len()).recip());
            let axis = a.unit().expect("facet normal is nonzero");
            // in-plane orthonormal frame
            let seed = if axis.get(0).abs() < F::of(0.9) {
                Vector::from_array(3, [F::one(), F::zero(), F::zero()])
            } else {
                Vector::from_array(3, [F::zero(), F::one(), F::zero()])
            };
            let e1 = {
                let proj = seed.sub(&axis.scale(seed.dot(&axis)));
                proj.unit().expect("frame construction")
            };
            let e2 = Vector::from_array(
                3,
                [
                    axis.get(1) * e1.get(2) - axis.get(2) * e1.get(1),
                    axis.get(2) * e1.get(0) - axis.get(0) * e1.get(2),
                    axis.get(0) * e1.get(1) - axis.get(1) * e1.get(0),
                ],
            );
            let mut ordered: Vec<(&Vector<F>, F)> = incident
                .iter()
                .map(|p| {
                    let d = p.sub(&centroid);
                    let ang = d.dot(&e2).as_f64().atan2(d.dot(&e1).as_f64());
                    (*p, F::of(ang))
                })
                .collect();
            ordered.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
            let v0 = ordered[0].0;
            for w in ordered[1..].windows(2) {
                let (p1, p2) = (w[0].0, w[1].0);
                let det = v0.get(0) * (p1.get(1) * p2.get(2) - p1.get(2) * p2.get(1))
                    - v0.get(1) * (p1.get(0) * p2.get(2) - p1.get(2) * p2.get(0))
                    + v0.get(2) * (p1.get(0) * p2.get(1) - p1.get(1) * p2.get(0));
                volume += det.abs() / F::of(6.0);
            }
        }
        if !(volume > F::zero()) {
            return Err(Error::InvalidBody(
                "polytope vertices do not span R^3".into(),
            ));
        }
        Ok((canonical_half(planes), volume))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(x: f64, y: f64) -> Vector<f64> {
        Vector::from_slice(2, &[x, y]).unwrap()
    }

    #[test]
    fn box_gauge_support_volume() {
        let k = ConvexBody::axis_box(&[1.0, 1.0]).unwrap();
        assert_eq!(k.gauge(&vec2(2.0, 0.0)).unwrap(), 2.0);
        assert_eq!(k.support(&vec2(1.0, 1.0)).unwrap(), 2.0);
        assert_eq!(k.volume(), 4.0);
        assert_eq!(k.gauge_max_on_sphere(), 1.0);
    }

    #[test]
    fn ball_gauge_support_volume() {
        let k = ConvexBody::euclidean_ball(2).unwrap();
        assert!((k.gauge(&vec2(3.0, 4.0)).unwrap() - 5.0).abs() < 1e-14);
        assert!((k.support(&vec2(0.0, 3.0)).unwrap() - 3.0).abs() < 1e-14);
        assert!((k.volume() - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn cross_polytope_gauge_is_l1() {
        let k = ConvexBody::sym_polytope(2, &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((k.gauge(&vec2(0.5, 0.5)).unwrap() - 1.0).abs() < 1e-12);
        assert!((k.support(&vec2(2.0, 1.0)).unwrap() - 2.0).abs() < 1e-14);
        assert!((k.volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn octahedron_volume_and_gauge() {
        let k: ConvexBody<f64> = ConvexBody::sym_polytope(
            3,
            &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        )
        .unwrap();
        // 2^n / n! for the standard cross-polytope
        assert!((k.volume() - 8.0 / 6.0).abs() < 1e-10);
        let x = Vector::from_slice(3, &[0.2, 0.3, 0.4]).unwrap();
        assert!((k.gauge(&x).unwrap() - 0.9).abs() < 1e-10);
    }

    #[test]
    fn cube_as_polytope_matches_box() {
        let verts: Vec<Vec<f64>> = vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, 1.0, -1.0],
            vec![1.0, -1.0, 1.0],
            vec![1.0, -1.0, -1.0],
        ];
        let k = ConvexBody::sym_polytope(3, &verts).unwrap();
        let b = ConvexBody::axis_box(&[1.0, 1.0, 1.0]).unwrap();
        assert!((k.volume() - b.volume()).abs() < 1e-9);
        let x = Vector::from_slice(3, &[0.4, -0.9, 0.2]).unwrap();
        assert!((k.gauge(&x).unwrap() - b.gauge(&x).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn lq_ball_volume_and_gauge() {
        // q = 2 equals the euclidean ball
        let k = ConvexBody::lq_ball(2.0, &[1.0, 1.0]).unwrap();
        assert!((k.volume() - std::f64::consts::PI).abs() < 1e-10);
        // q = inf equals the box
        let b = ConvexBody::lq_ball(f64::INFINITY, &[1.5, 0.5]).unwrap();
        assert!((b.volume() - 3.0).abs() < 1e-12);
        assert!((b.gauge(&vec2(3.0, 0.0)).unwrap() - 2.0).abs() < 1e-14);
        // q = 1 cross-polytope volume 2 w1 w2
        let c: ConvexBody<f64> = ConvexBody::lq_ball(1.0, &[1.0, 1.0]).unwrap();
        assert!((c.volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_polytopes_rejected() {
        assert!(ConvexBody::<f64>::sym_polytope(2, &[vec![1.0, 0.0]]).is_err());
        assert!(ConvexBody::<f64>::sym_polytope(
            3,
            &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]
        )
        .is_err());
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(ConvexBody::<f64>::axis_box(&[1.0, -1.0]).is_err());
        assert!(ConvexBody::<f64>::axis_box(&[1.0; 4]).is_err());
        assert!(ConvexBody::<f64>::lq_ball(0.5, &[1.0]).is_err());
        let bad = SymMat::from_rows(2, &[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(ConvexBody::ellipsoid(bad).is_err());
    }

    #[test]
    fn gauge_checks_dimensions_and_finiteness() {
        let k = ConvexBody::axis_box(&[1.0, 1.0]).unwrap();
        let x3 = Vector::from_slice(3, &[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            k.gauge(&x3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gauge_exact_sign_symmetry() {
        let k = ConvexBody::sym_polytope(2, &[vec![1.0, 0.3], vec![-0.2, 0.9]]).unwrap();
        for &(x, y) in &[(0.3, 0.7), (-1.2, 0.4), (0.0, -2.0)] {
            let g1 = k.gauge(&vec2(x, y)).unwrap();
            let g2 = k.gauge(&vec2(-x, -y)).unwrap();
            assert_eq!(g1, g2);
        }
    }

    #[test]
    fn polar_integral_recovers_volume() {
        let k = ConvexBody::axis_box(&[1.0, 1.0]).unwrap();
        let spec = QuadratureSpec::default();
        let one = |_: f64| 1.0;
        let v = gauge_polar_integral(&k, one, 1.0, &spec).unwrap();
        assert!((v - k.volume()).abs() < 1e-10);
    }

    #[test]
    fn polar_integral_power_tail() {
        // profile r^{-(n+ps)} past r = 1: analytic value n Vol / (p s)
        let k = ConvexBody::axis_box(&[1.0, 1.0]).unwrap();
        let spec = QuadratureSpec::default();
        let (p, s) = (1.0, 0.5);
        let profile = move |r: f64| {
            if r >= 1.0 {
                r.powf(-(2.0 + p * s))
            } else {
                0.0
            }
        };
        let v = gauge_polar_integral(&k, profile, f64::INFINITY, &spec).unwrap();
        assert!((v - 16.0).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn polar_integral_linear_profile() {
        // profile r on r <= 1 over the euclidean disk: 2 pi / 3
        let k = ConvexBody::euclidean_ball(2).unwrap();
        let spec = QuadratureSpec::default();
        let profile = |r: f64| if r <= 1.0 { r } else { 0.0 };
        let v = gauge_polar_integral(&k, profile, 1.0, &spec).unwrap();
        assert!((v - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn polar_integral_rejects_divergent_profile() {
        let k = ConvexBody::euclidean_ball(2).unwrap();
        let spec = QuadratureSpec::default();
        // r^{-n} is right at the divergence threshold at 0
        let profile = |r: f64| r.powf(-2.5);
        assert!(matches!(
            gauge_polar_integral(&k, profile, 1.0, &spec),
            Err(Error::NonIntegrable(_))
        ));
    }

    #[test]
    fn scaled_bodies() {
        let k = ConvexBody::euclidean_ball(2).unwrap();
        let k2 = k.scale_body(2.0).unwrap();
        assert!((k2.volume() - 4.0 * std::f64::consts::PI).abs() < 1e-10);
        let x = vec2(1.0, 1.0);
        assert!((k2.gauge(&x).unwrap() - k.gauge(&x).unwrap() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_stays_inside() {
        let k = ConvexBody::sym_polytope(2, &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        for i in 0..200 {
            let p = k.sample_point(7, i);
            assert!(k.gauge(&p).unwrap() <= 1.0 + 1e-12);
        }
        // deterministic per index
        assert_eq!(k.sample_point(7, 3), k.sample_point(7, 3));
    }
}
