//! Outer billiard dynamics around a convex oval.
//!
//! The map T sends an exterior point x to its reflection 2p − x in the
//! tangency point p of the right tangent line from x. "Right" is fixed by the
//! sign convention cross(p − x, s − x) < 0, where s is the oval's interior
//! seed: looking from x toward the interior, p sits on the chosen side. Any
//! consistent choice conjugates to any other.

mod desargues;

pub use desargues::{
    desargues_involution_check, fit_involution, ConicPencil, DesarguesReport, InvolutionFit,
    DEFAULT_LAMBDAS,
};

use crate::curves::{polygon_is_convex, sample_real_branch, BranchConfig};
use crate::error::{Error, Result};
use crate::poly::{BivariatePoly, Var};

const TANGENCY_TOL: f64 = 1e-12;
const SWEEP_SAMPLES: usize = 512;

/// A strictly convex table. Parametric ellipses get closed-form tangency
/// solving; implicit ovals are traced through the angular parametrization
/// around their interior seed point.
#[derive(Clone, Debug)]
pub struct Oval {
    kind: OvalKind,
}

#[derive(Clone, Debug)]
enum OvalKind {
    Ellipse {
        a: f64,
        b: f64,
    },
    Implicit {
        f: BivariatePoly,
        fx: BivariatePoly,
        fy: BivariatePoly,
        seed: [f64; 2],
        /// Sign of f at the seed; f times this is negative inside.
        interior_sign: f64,
        /// Boundary radius at SWEEP_SAMPLES equally spaced angles.
        radial_table: Vec<f64>,
    },
}

impl Oval {
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidOval("semi-axes must be positive".into()));
        }
        Ok(Self {
            kind: OvalKind::Ellipse { a, b },
        })
    }

    /// Validates that the zero set of f has a closed convex branch around the
    /// seed, then caches the angular radius table used by the tangency
    /// solver.
    pub fn implicit(f: BivariatePoly, seed: [f64; 2]) -> Result<Self> {
        let value = f.eval_f64(seed[0], seed[1]);
        if value == 0.0 || !value.is_finite() {
            return Err(Error::InvalidOval(
                "seed must lie strictly inside the oval".into(),
            ));
        }
        let interior_sign = value.signum();
        let pts = sample_real_branch(&f, seed, SWEEP_SAMPLES, &BranchConfig::default())
            .map_err(|e| Error::InvalidOval(format!("branch tracing failed: {e}")))?;
        if !polygon_is_convex(&pts) {
            return Err(Error::InvalidOval(
                "the traced branch is not convex".into(),
            ));
        }
        let radial_table = pts
            .iter()
            .map(|p| (p[0] - seed[0]).hypot(p[1] - seed[1]))
            .collect();
        let fx = f.partial_derivative(Var::X);
        let fy = f.partial_derivative(Var::Y);
        Ok(Self {
            kind: OvalKind::Implicit {
                f,
                fx,
                fy,
                seed,
                interior_sign,
                radial_table,
            },
        })
    }

    pub fn seed(&self) -> [f64; 2] {
        match &self.kind {
            OvalKind::Ellipse { .. } => [0.0, 0.0],
            OvalKind::Implicit { seed, .. } => *seed,
        }
    }

    pub fn is_strictly_outside(&self, p: [f64; 2]) -> bool {
        match &self.kind {
            OvalKind::Ellipse { a, b } => {
                (p[0] / a).powi(2) + (p[1] / b).powi(2) > 1.0 + 1e-12
            }
            OvalKind::Implicit {
                f, interior_sign, ..
            } => {
                let v = f.eval_f64(p[0], p[1]) * interior_sign;
                v < -1e-12 * (1.0 + v.abs())
            }
        }
    }

    /// Boundary point on the ray at `theta` from the seed.
    pub fn boundary_point(&self, theta: f64) -> Result<[f64; 2]> {
        match &self.kind {
            OvalKind::Ellipse { a, b } => Ok([a * theta.cos(), b * theta.sin()]),
            OvalKind::Implicit { seed, .. } => {
                let r = self.radius_at(theta)?;
                Ok([seed[0] + r * theta.cos(), seed[1] + r * theta.sin()])
            }
        }
    }

    fn radius_at(&self, theta: f64) -> Result<f64> {
        let OvalKind::Implicit {
            f,
            fx,
            fy,
            seed,
            radial_table,
            ..
        } = &self.kind
        else {
            unreachable!("radius_at is only called for implicit ovals");
        };
        let tau = 2.0 * std::f64::consts::PI;
        let t = theta.rem_euclid(tau) / tau * SWEEP_SAMPLES as f64;
        let k = (t as usize) % SWEEP_SAMPLES;
        let frac = t - t.floor();
        let guess =
            radial_table[k] * (1.0 - frac) + radial_table[(k + 1) % SWEEP_SAMPLES] * frac;
        let (cu, su) = (theta.cos(), theta.sin());
        let mut r = guess;
        for _ in 0..40 {
            let p = [seed[0] + r * cu, seed[1] + r * su];
            let v = f.eval_f64(p[0], p[1]);
            let d = fx.eval_f64(p[0], p[1]) * cu + fy.eval_f64(p[0], p[1]) * su;
            if d.abs() < 1e-300 {
                break;
            }
            let step = v / d;
            r -= step;
            if step.abs() < 1e-16 * (1.0 + r.abs()) {
                return Ok(r);
            }
        }
        // Newton should converge in a handful of steps from the table guess;
        // reaching here means the branch geometry degenerated.
        Err(Error::SolverDivergence(format!(
            "radial solve stalled at angle {theta}"
        )))
    }

    fn gradient(&self, p: [f64; 2]) -> [f64; 2] {
        match &self.kind {
            OvalKind::Ellipse { a, b } => [2.0 * p[0] / (a * a), 2.0 * p[1] / (b * b)],
            OvalKind::Implicit { fx, fy, .. } => {
                [fx.eval_f64(p[0], p[1]), fy.eval_f64(p[0], p[1])]
            }
        }
    }
}

/// A solved tangency: the point of contact and the normalized tangency
/// residual |(x − p)·∇f| / (|x − p||∇f|).
#[derive(Clone, Copy, Debug)]
pub struct Tangency {
    pub point: [f64; 2],
    pub residual: f64,
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

/// The right tangency point seen from the exterior point `x`: of the two
/// tangencies, the one with cross(p − x, s − x) < 0 for the interior seed s.
pub fn tangency_from_point(oval: &Oval, x: [f64; 2]) -> Result<Tangency> {
    if !oval.is_strictly_outside(x) {
        return Err(Error::PointInsideOval(x[0], x[1]));
    }
    match &oval.kind {
        OvalKind::Ellipse { a, b } => {
            // Polar-line geometry: p = (a cos t, b sin t) is a tangency from
            // (x0, y0) iff (x0/a)cos t + (y0/b)sin t = 1.
            let alpha = x[0] / a;
            let beta = x[1] / b;
            let r = alpha.hypot(beta);
            let phi = beta.atan2(alpha);
            let gamma = (1.0 / r).acos();
            let pick = |t: f64| -> Tangency {
                let p = [a * t.cos(), b * t.sin()];
                Tangency {
                    point: p,
                    residual: tangency_residual(oval, x, p),
                }
            };
            let cand_a = pick(phi + gamma);
            let cand_b = pick(phi - gamma);
            let seed = oval.seed();
            let side = |t: &Tangency| {
                cross(
                    [t.point[0] - x[0], t.point[1] - x[1]],
                    [seed[0] - x[0], seed[1] - x[1]],
                )
            };
            let chosen = if side(&cand_a) < 0.0 { cand_a } else { cand_b };
            debug_assert!(side(&chosen) < 0.0);
            Ok(chosen)
        }
        OvalKind::Implicit { seed, .. } => {
            let seed = *seed;
            // Zeros over theta of c(θ) = (x − p(θ))·∇f(p(θ)); strict convexity
            // gives exactly two, one on each side of the sightline.
            let condition = |theta: f64| -> Result<f64> {
                let p = oval.boundary_point(theta)?;
                let g = oval.gradient(p);
                Ok((x[0] - p[0]) * g[0] + (x[1] - p[1]) * g[1])
            };
            let tau = 2.0 * std::f64::consts::PI;
            let mut samples = Vec::with_capacity(SWEEP_SAMPLES + 1);
            for k in 0..=SWEEP_SAMPLES {
                let theta = tau * k as f64 / SWEEP_SAMPLES as f64;
                samples.push((theta, condition(theta)?));
            }
            let mut candidates = Vec::new();
            for w in samples.windows(2) {
                let (t0, v0) = w[0];
                let (t1, v1) = w[1];
                if v0 == 0.0 {
                    candidates.push(t0);
                    continue;
                }
                if (v0 > 0.0) != (v1 > 0.0) {
                    // Bisect the bracket down to machine precision.
                    let (mut lo, mut hi, lo_pos) = (t0, t1, v0 > 0.0);
                    for _ in 0..64 {
                        let mid = 0.5 * (lo + hi);
                        let vm = condition(mid)?;
                        if vm == 0.0 {
                            lo = mid;
                            hi = mid;
                            break;
                        }
                        if (vm > 0.0) == lo_pos {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    candidates.push(0.5 * (lo + hi));
                }
            }
            let mut best: Option<Tangency> = None;
            for theta in candidates {
                let p = oval.boundary_point(theta)?;
                let side = cross([p[0] - x[0], p[1] - x[1]], [seed[0] - x[0], seed[1] - x[1]]);
                if side >= 0.0 {
                    continue;
                }
                let t = Tangency {
                    point: p,
                    residual: tangency_residual(oval, x, p),
                };
                if best.is_none_or(|b| t.residual < b.residual) {
                    best = Some(t);
                }
            }
            let best = best.ok_or_else(|| {
                Error::SolverDivergence("no right tangency found in the angular sweep".into())
            })?;
            if best.residual > TANGENCY_TOL {
                return Err(Error::SolverDivergence(format!(
                    "tangency residual {:.3e} above tolerance",
                    best.residual
                )));
            }
            Ok(best)
        }
    }
}

fn tangency_residual(oval: &Oval, x: [f64; 2], p: [f64; 2]) -> f64 {
    let g = oval.gradient(p);
    let chord = [x[0] - p[0], x[1] - p[1]];
    let num = (chord[0] * g[0] + chord[1] * g[1]).abs();
    let den = chord[0].hypot(chord[1]) * g[0].hypot(g[1]);
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// One application of the outer billiard map: reflect x in the tangency
/// point.
pub fn outer_billiard_step(oval: &Oval, x: [f64; 2]) -> Result<([f64; 2], Tangency)> {
    let t = tangency_from_point(oval, x)?;
    let y = [2.0 * t.point[0] - x[0], 2.0 * t.point[1] - x[1]];
    Ok((y, t))
}

/// An orbit x_0, x_1, …, with the reflection centers and per-step residuals.
/// `failure` is set when the solver stopped the orbit early; the record then
/// holds the successfully computed prefix.
#[derive(Clone, Debug, Default)]
pub struct OrbitRecord {
    pub points: Vec<[f64; 2]>,
    pub tangency_points: Vec<[f64; 2]>,
    pub solver_residuals: Vec<f64>,
    pub failure: Option<String>,
}

pub fn orbit(oval: &Oval, x0: [f64; 2], steps: usize) -> OrbitRecord {
    let mut record = OrbitRecord {
        points: vec![x0],
        ..OrbitRecord::default()
    };
    let mut x = x0;
    for _ in 0..steps {
        match outer_billiard_step(oval, x) {
            Ok((y, t)) => {
                record.points.push(y);
                record.tangency_points.push(t.point);
                record.solver_residuals.push(t.residual);
                x = y;
            }
            Err(e) => {
                record.failure = Some(e.to_string());
                break;
            }
        }
    }
    record
}

/// max_k |F(x_k) − F(x_0)|: zero up to solver error when the level curves of
/// F are invariant.
pub fn invariance_drift(f: &BivariatePoly, record: &OrbitRecord) -> f64 {
    let Some(first) = record.points.first() else {
        return 0.0;
    };
    let base = f.eval_f64(first[0], first[1]);
    record
        .points
        .iter()
        .map(|p| (f.eval_f64(p[0], p[1]) - base).abs())
        .fold(0.0, f64::max)
}

/// |det(finite-difference Jacobian of T at x) − 1|; the outer billiard map is
/// area-preserving, so this measures solver error.
pub fn jacobian_defect(oval: &Oval, x: [f64; 2], h: f64) -> Result<f64> {
    if !(1e-7..=1e-4).contains(&h) {
        return Err(Error::DegenerateInput(
            "finite-difference step must lie in [1e-7, 1e-4]".into(),
        ));
    }
    jacobian_defect_of_map(|p| outer_billiard_step(oval, p).map(|(y, _)| y), x, h)
}

/// Central-difference Jacobian determinant defect of an arbitrary planar map.
pub fn jacobian_defect_of_map(
    map: impl Fn([f64; 2]) -> Result<[f64; 2]>,
    x: [f64; 2],
    h: f64,
) -> Result<f64> {
    let mut jac = [[0.0f64; 2]; 2];
    for col in 0..2 {
        let mut plus = x;
        let mut minus = x;
        plus[col] += h;
        minus[col] -= h;
        let fp = map(plus)?;
        let fm = map(minus)?;
        for row in 0..2 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    Ok((det - 1.0).abs())
}
