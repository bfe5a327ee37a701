//! Projective plane-curve machinery: nonsingularity, the Hessian curve,
//! inflection points over ℂ with multiplicities, and real-branch sampling.
//!
//! Intersections are computed by a randomized rational coordinate change
//! (fixed seed, retried on degeneracy), elimination of y by an exact
//! Sylvester resultant, complex root finding with multiplicity clustering,
//! and back-substitution. Points are mapped back through the shear before
//! reporting, so records are always in the curve's own coordinates.

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::resultant::resultant;
use crate::poly::roots::{complex_roots_f64, complex_roots_with, RootConfig};
use crate::poly::{BivariatePoly, ProjVar, TrivariatePoly, Var};
use crate::random::seeded_rng;
use crate::rational::{rat, rational_to_f64, Rational};

/// A plane projective curve of degree ≥ 1 with its homogeneous defining
/// polynomial.
#[derive(Clone, Debug)]
pub struct ProjectiveCurve {
    defining: TrivariatePoly,
    degree: u32,
}

impl ProjectiveCurve {
    pub fn new(defining: TrivariatePoly) -> Result<Self> {
        let d = defining.degree();
        if d < 1 {
            return Err(Error::DegenerateInput(
                "a projective curve needs degree at least 1".into(),
            ));
        }
        Ok(Self {
            defining,
            degree: d as u32,
        })
    }

    pub fn from_affine(f: &BivariatePoly) -> Result<Self> {
        Self::new(f.homogenize()?)
    }

    pub fn defining(&self) -> &TrivariatePoly {
        &self.defining
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// One inflection of the complexified curve.
///
/// The point is stored projectively, rescaled so its largest-modulus
/// coordinate is exactly 1.
#[derive(Clone, Debug)]
pub struct InflectionRecord {
    pub point: [Complex64; 3],
    pub multiplicity: u32,
    pub at_infinity: bool,
    pub real: bool,
}

impl Serialize for InflectionRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InflectionRecord", 4)?;
        let point: Vec<[f64; 2]> = self.point.iter().map(|c| [c.re, c.im]).collect();
        s.serialize_field("point", &point)?;
        s.serialize_field("multiplicity", &self.multiplicity)?;
        s.serialize_field("at_infinity", &self.at_infinity)?;
        s.serialize_field("real", &self.real)?;
        s.end()
    }
}

/// Counts over a list of inflection records.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct InflectionSummary {
    pub finite_count: usize,
    pub at_infinity_count: usize,
    pub real_count: usize,
    pub max_multiplicity: u32,
    pub total_multiplicity: u32,
    /// Set when max_multiplicity exceeds d−2, which a nonsingular curve
    /// cannot do; indicates numerical clustering error.
    pub multiplicity_bound_exceeded: bool,
}

#[derive(Clone, Debug)]
pub struct CurveConfig {
    /// Seed for the rational coordinate shears.
    pub seed: u64,
    /// Residual threshold for accepting a point as lying on a curve.
    pub residual_tol: f64,
    /// Imaginary parts below this (after normalization) count as real.
    pub realness_tol: f64,
    /// |z| below this (after normalization) counts as at infinity.
    pub at_infinity_tol: f64,
    pub max_shear_attempts: u64,
    pub roots: RootConfig,
}

impl Default for CurveConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            residual_tol: 1e-8,
            realness_tol: 1e-8,
            at_infinity_tol: 1e-8,
            max_shear_attempts: 8,
            roots: RootConfig::default(),
        }
    }
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let a = &m[0];
    let b = &m[1];
    let c = &m[2];
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Invertible rational matrix near the identity with random quarter-integer
/// entries. Moves the line at infinity and the projection center to generic
/// position.
fn random_shear<R: Rng>(rng: &mut R) -> [[Rational; 3]; 3] {
    loop {
        let mut m = [
            [rat(1, 1), rat(0, 1), rat(0, 1)],
            [rat(0, 1), rat(1, 1), rat(0, 1)],
            [rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        for row in &mut m {
            for entry in row.iter_mut() {
                let jitter = rat(rng.gen_range(-8i64..=8), 4);
                *entry = &*entry + jitter;
            }
        }
        if !det3(&m).is_zero() {
            return m;
        }
    }
}

fn apply_matrix(m: &[[Rational; 3]; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    let mf = |r: &Rational| Complex64::new(rational_to_f64(r), 0.0);
    [
        mf(&m[0][0]) * v[0] + mf(&m[0][1]) * v[1] + mf(&m[0][2]) * v[2],
        mf(&m[1][0]) * v[0] + mf(&m[1][1]) * v[1] + mf(&m[1][2]) * v[2],
        mf(&m[2][0]) * v[0] + mf(&m[2][1]) * v[1] + mf(&m[2][2]) * v[2],
    ]
}

/// Rescales a projective point so the largest-modulus coordinate is 1.
fn normalize_projective(p: [Complex64; 3]) -> [Complex64; 3] {
    let mut best = 0usize;
    for k in 1..3 {
        if p[k].norm() > p[best].norm() {
            best = k;
        }
    }
    let scale = p[best];
    [p[0] / scale, p[1] / scale, p[2] / scale]
}

/// True iff the curve and its three partials have no common projective zero,
/// decided by resultant elimination down to univariate roots plus a numeric
/// common-root check.
pub fn is_nonsingular(curve: &ProjectiveCurve) -> Result<bool> {
    is_nonsingular_with(curve, &CurveConfig::default())
}

pub fn is_nonsingular_with(curve: &ProjectiveCurve, cfg: &CurveConfig) -> Result<bool> {
    let d = curve.degree();
    if d == 1 {
        return Ok(true);
    }
    for attempt in 0..cfg.max_shear_attempts {
        let mut rng = seeded_rng(cfg.seed.wrapping_add(attempt));
        let m = random_shear(&mut rng);
        let s = curve.defining.substitute_linear(&m);
        let a = s.partial_derivative(ProjVar::X).dehomogenize();
        let b = s.partial_derivative(ProjVar::Y).dehomogenize();
        let c = s.partial_derivative(ProjVar::Z).dehomogenize();
        // A singular projective point of a degree-d curve is a common zero of
        // all three partials (Euler). After a generic shear it is finite in
        // the z = 1 chart and both a, b have full y-degree d−1 with constant
        // leading coefficient, so Res_y(a, b) captures every candidate x.
        if a.degree_in(Var::Y) != (d - 1) as i64 || b.degree_in(Var::Y) != (d - 1) as i64 {
            continue;
        }
        if !leading_y_coeff_is_constant(&a) || !leading_y_coeff_is_constant(&b) {
            continue;
        }
        let r = resultant(&a, &b, Var::Y)?;
        if r.is_zero() {
            // The two partials share a whole component of common zeros.
            return Ok(false);
        }
        let coeffs = r
            .univariate_coeffs(Var::X)
            .expect("resultant eliminated y");
        if r.degree() == 0 {
            return Ok(true);
        }
        let Ok(xroots) = complex_roots_with(&coeffs, &cfg.roots) else {
            continue;
        };
        let an = a.normalized();
        let bn = b.normalized();
        let cn = c.normalized();
        let mut found = false;
        'outer: for xr in &xroots.roots {
            let ycoeffs = an.substitute_x_complex(xr.value);
            let Ok(yroots) = complex_roots_f64(&ycoeffs, &cfg.roots) else {
                continue;
            };
            for yr in &yroots.roots {
                let (x0, y0) = (xr.value, yr.value);
                if affine_residual(&an, x0, y0) < cfg.residual_tol
                    && affine_residual(&bn, x0, y0) < cfg.residual_tol
                    && affine_residual(&cn, x0, y0) < cfg.residual_tol
                {
                    found = true;
                    break 'outer;
                }
            }
        }
        return Ok(!found);
    }
    Err(Error::DegenerateInput(
        "nonsingularity check did not stabilize under coordinate shears".into(),
    ))
}

fn leading_y_coeff_is_constant(p: &BivariatePoly) -> bool {
    p.coeffs_in(Var::Y)
        .last()
        .map(|lead| lead.degree() == 0)
        .unwrap_or(false)
}

/// |p(x, y)| scaled by the point's magnitude so thresholds are meaningful at
/// any scale; p is expected max-coefficient-normalized.
fn affine_residual(p: &BivariatePoly, x: Complex64, y: Complex64) -> f64 {
    let deg = p.degree().max(0) as i32;
    let scale = x.norm().max(y.norm()).max(1.0).powi(deg);
    p.eval_complex(x, y).norm() / scale
}

/// The Hessian determinant curve: det of the 3×3 matrix of second partials.
/// Homogeneous of degree 3(d−2) when nonzero.
pub fn hessian_curve(curve: &ProjectiveCurve) -> Result<TrivariatePoly> {
    let d = curve.degree();
    if d < 2 {
        return Err(Error::DegenerateInput(
            "the Hessian curve needs degree at least 2".into(),
        ));
    }
    let f = &curve.defining;
    let vars = [ProjVar::X, ProjVar::Y, ProjVar::Z];
    let mut h = Vec::with_capacity(3);
    for vi in vars {
        let fi = f.partial_derivative(vi);
        h.push(vars.map(|vj| fi.partial_derivative(vj)));
    }
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| -> TrivariatePoly {
        h[r1][c1]
            .mul(&h[r2][c2])
            .sub(&h[r1][c2].mul(&h[r2][c1]))
            .expect("homogeneous degrees match")
    };
    let det = h[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&h[0][1].mul(&minor(1, 2, 0, 2)))
        .expect("homogeneous degrees match")
        .add(&h[0][2].mul(&minor(1, 2, 0, 1)))
        .expect("homogeneous degrees match");
    debug_assert!(det.is_zero() || det.degree() == 3 * (d as i64 - 2));
    Ok(det)
}

/// All inflection points of a nonsingular curve of degree ≥ 2, with
/// multiplicities summing to 3d(d−2).
pub fn inflection_points(curve: &ProjectiveCurve) -> Result<Vec<InflectionRecord>> {
    inflection_points_with(curve, &CurveConfig::default())
}

pub fn inflection_points_with(
    curve: &ProjectiveCurve,
    cfg: &CurveConfig,
) -> Result<Vec<InflectionRecord>> {
    let d = curve.degree();
    if d < 2 {
        return Err(Error::DegenerateInput(
            "inflection points need degree at least 2".into(),
        ));
    }
    if !is_nonsingular_with(curve, cfg)? {
        return Err(Error::SingularCurve);
    }
    if d == 2 {
        // The Hessian of a conic is a nonzero constant: 3d(d−2) = 0.
        return Ok(Vec::new());
    }
    let expected_total = (3 * d * (d - 2)) as i64;
    let hess = hessian_curve(curve)?;

    let mut last_err: Option<Error> = None;
    for attempt in 0..cfg.max_shear_attempts {
        let mut rng = seeded_rng(cfg.seed.wrapping_add(0x1000 + attempt));
        let m = random_shear(&mut rng);
        let sheared = ProjectiveCurve::new(curve.defining.substitute_linear(&m))?;
        // The Hessian of the sheared polynomial is det(M)²·(Hessian ∘ M), so
        // intersecting it with the sheared curve finds the sheared flexes.
        let sheared_hess = hessian_curve(&sheared)?;
        let a = sheared.defining.dehomogenize();
        let b = sheared_hess.dehomogenize();
        if a.degree_in(Var::Y) != d as i64 || b.degree_in(Var::Y) != (3 * (d - 2)) as i64 {
            continue;
        }
        if !leading_y_coeff_is_constant(&a) || !leading_y_coeff_is_constant(&b) {
            continue;
        }
        let r = resultant(&a, &b, Var::Y)?;
        if r.degree_in(Var::X) != expected_total {
            continue;
        }
        let coeffs = r
            .univariate_coeffs(Var::X)
            .expect("resultant eliminated y");
        let xroots = match complex_roots_with(&coeffs, &cfg.roots) {
            Ok(roots) => roots,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match back_substitute(curve, &hess, &a, &b, &m, &xroots.roots, cfg) {
            Some(mut records) => {
                records.sort_by(record_order);
                debug_assert_eq!(
                    records.iter().map(|r| r.multiplicity as i64).sum::<i64>(),
                    expected_total
                );
                return Ok(records);
            }
            None => continue,
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::DegenerateInput("inflection search did not stabilize under coordinate shears".into())
    }))
}

fn back_substitute(
    curve: &ProjectiveCurve,
    hess: &TrivariatePoly,
    a: &BivariatePoly,
    b: &BivariatePoly,
    m: &[[Rational; 3]; 3],
    xroots: &[crate::poly::roots::RootEstimate],
    cfg: &CurveConfig,
) -> Option<Vec<InflectionRecord>> {
    let an = a.normalized();
    let bn = b.normalized();
    let mut records = Vec::with_capacity(xroots.len());
    for xr in xroots {
        let x0 = xr.value;
        let ycoeffs = an.substitute_x_complex(x0);
        let yroots = complex_roots_f64(&ycoeffs, &cfg.roots).ok()?;
        // The intersection point above x0 is the y-root of the curve that the
        // Hessian also vanishes at; a generic shear makes it unique.
        let candidates: Vec<(Complex64, f64)> = yroots
            .roots
            .iter()
            .map(|yr| (yr.value, affine_residual(&bn, x0, yr.value)))
            .collect();
        let &(y0, res) = candidates
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if res > cfg.residual_tol {
            return None;
        }
        let ambiguous = candidates.iter().any(|&(y, r)| {
            (y - y0).norm() > cfg.roots.cluster_radius && r < cfg.residual_tol
        });
        if ambiguous {
            // Two distinct curve points above one x: shear was not generic.
            return None;
        }
        let p = normalize_projective(apply_matrix(m, [x0, y0, Complex64::new(1.0, 0.0)]));
        if curve.defining.eval_normalized(p).norm() > cfg.residual_tol
            || hess.eval_normalized(p).norm() > cfg.residual_tol
        {
            return None;
        }
        let at_infinity = p[2].norm() < cfg.at_infinity_tol;
        let real = p.iter().all(|c| c.im.abs() < cfg.realness_tol);
        records.push(InflectionRecord {
            point: p,
            multiplicity: xr.multiplicity,
            at_infinity,
            real,
        });
    }
    Some(records)
}

fn record_order(a: &InflectionRecord, b: &InflectionRecord) -> std::cmp::Ordering {
    (a.at_infinity, !a.real)
        .cmp(&(b.at_infinity, !b.real))
        .then(a.point[0].re.total_cmp(&b.point[0].re))
        .then(a.point[0].im.total_cmp(&b.point[0].im))
        .then(a.point[1].re.total_cmp(&b.point[1].re))
        .then(a.point[1].im.total_cmp(&b.point[1].im))
        .then(a.point[2].re.total_cmp(&b.point[2].re))
        .then(a.point[2].im.total_cmp(&b.point[2].im))
}

/// Counts finite / at-infinity / real records and the largest multiplicity.
/// `curve_degree` feeds the d−2 multiplicity bound diagnostic.
pub fn classify_inflections(records: &[InflectionRecord], curve_degree: u32) -> InflectionSummary {
    let mut summary = InflectionSummary::default();
    for r in records {
        if r.at_infinity {
            summary.at_infinity_count += 1;
        } else {
            summary.finite_count += 1;
        }
        if r.real {
            summary.real_count += 1;
        }
        summary.max_multiplicity = summary.max_multiplicity.max(r.multiplicity);
        summary.total_multiplicity += r.multiplicity;
    }
    summary.multiplicity_bound_exceeded =
        curve_degree >= 2 && summary.max_multiplicity > curve_degree - 2;
    summary
}

/// Scale-free distance between projective points: the sine of the angle
/// between the lines they span, computed as the norm of the component of one
/// unit vector orthogonal to the other (no cancellation near zero).
pub fn projective_distance(p: &[Complex64; 3], q: &[Complex64; 3]) -> f64 {
    let np: f64 = p.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nq: f64 = q.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let u: Vec<Complex64> = p.iter().map(|c| c / np).collect();
    let v: Vec<Complex64> = q.iter().map(|c| c / nq).collect();
    let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a * b.conj()).sum();
    u.iter()
        .zip(&v)
        .map(|(a, b)| (a - dot * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Discrete convexity of a closed polygon given in cyclic order: every turn
/// has the same sign, with flat spots (zero curvature) allowed.
pub fn polygon_is_convex(points: &[[f64; 2]]) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    let mut scale: f64 = 0.0;
    let mut crosses = Vec::with_capacity(n);
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        let c = points[(i + 2) % n];
        let e1 = [b[0] - a[0], b[1] - a[1]];
        let e2 = [c[0] - b[0], c[1] - b[1]];
        crosses.push(e1[0] * e2[1] - e1[1] * e2[0]);
        scale = scale.max(e1[0].hypot(e1[1]) * e2[0].hypot(e2[1]));
    }
    let tol = 1e-9 * scale;
    crosses.iter().all(|&c| c >= -tol) || crosses.iter().all(|&c| c <= tol)
}

#[derive(Clone, Debug)]
pub struct BranchConfig {
    /// Required |f| at each returned point.
    pub residual_tol: f64,
    /// Give up on a ray past this distance from the seed.
    pub max_radius: f64,
}

impl Default for BranchConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            max_radius: 1e3,
        }
    }
}

/// Traces the compact real zero branch of `f` around an interior seed point:
/// `n` rays at equal angles, one root solve per ray, points ordered by angle.
pub fn sample_real_branch(
    f: &BivariatePoly,
    seed: [f64; 2],
    n: usize,
    cfg: &BranchConfig,
) -> Result<Vec<[f64; 2]>> {
    sample_real_branch_at_angles(
        f,
        seed,
        (0..n).map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64),
        cfg,
    )
}

pub fn sample_real_branch_at_angles(
    f: &BivariatePoly,
    seed: [f64; 2],
    angles: impl IntoIterator<Item = f64>,
    cfg: &BranchConfig,
) -> Result<Vec<[f64; 2]>> {
    let fx = f.partial_derivative(Var::X);
    let fy = f.partial_derivative(Var::Y);
    let inside = f.eval_f64(seed[0], seed[1]);
    if inside == 0.0 || !inside.is_finite() {
        return Err(Error::InvalidOval(
            "seed point lies on the curve or evaluates non-finite".into(),
        ));
    }
    let mut out = Vec::new();
    for angle in angles {
        let u = [angle.cos(), angle.sin()];
        let g = |t: f64| f.eval_f64(seed[0] + t * u[0], seed[1] + t * u[1]);
        // March outward until the sign flips, then bisect and polish.
        let mut t0 = 0.0f64;
        let mut t1 = 0.01 * (1.0 + seed[0].abs() + seed[1].abs());
        let mut bracket = None;
        while t1 <= cfg.max_radius {
            let v = g(t1);
            if v == 0.0 || (v > 0.0) != (inside > 0.0) {
                bracket = Some((t0, t1));
                break;
            }
            t0 = t1;
            t1 += (0.05 * t1).max(0.01);
        }
        let (mut lo, mut hi) = bracket.ok_or(Error::BranchNotFound {
            angle,
            radius: cfg.max_radius,
        })?;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            let v = g(mid);
            if v == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (v > 0.0) == (inside > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut t = 0.5 * (lo + hi);
        // Newton polish along the ray.
        for _ in 0..4 {
            let p = [seed[0] + t * u[0], seed[1] + t * u[1]];
            let val = f.eval_f64(p[0], p[1]);
            let grad = fx.eval_f64(p[0], p[1]) * u[0] + fy.eval_f64(p[0], p[1]) * u[1];
            if grad.abs() < 1e-300 {
                break;
            }
            let step = val / grad;
            t -= step;
            if step.abs() < 1e-16 * (1.0 + t.abs()) {
                break;
            }
        }
        let p = [seed[0] + t * u[0], seed[1] + t * u[1]];
        if f.eval_f64(p[0], p[1]).abs() > cfg.residual_tol {
            return Err(Error::SolverDivergence(format!(
                "branch point at angle {angle} did not meet the residual target"
            )));
        }
        out.push(p);
    }
    Ok(out)
}
