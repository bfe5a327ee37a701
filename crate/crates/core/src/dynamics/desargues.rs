//! Desargues involution on a tangent line cut by a conic pencil.
//!
//! Members of the pencil λ·f1 + f2 intersect the tangent line to f1 = 0 at a
//! base point in pairs (t, σ(t)). For an honest pencil σ is a projective
//! (Möbius) involution; the check fits the involution through two observed
//! pairs and reports the worst disagreement over the rest.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BivariatePoly, Var};

/// Two non-proportional conics spanning the pencil λ·f1 + μ·f2.
#[derive(Clone, Debug)]
pub struct ConicPencil {
    pub f1: BivariatePoly,
    pub f2: BivariatePoly,
}

impl ConicPencil {
    pub fn new(f1: BivariatePoly, f2: BivariatePoly) -> Result<Self> {
        if f1.degree() != 2 || f2.degree() != 2 {
            return Err(Error::DegenerateInput(
                "pencil generators must both have degree 2".into(),
            ));
        }
        // Proportional generators span a single conic, not a pencil.
        let proportional = {
            let lt1 = f1.leading_term().expect("degree 2").1.clone();
            let lt2 = f2.leading_term().expect("degree 2").1.clone();
            f1.scale(&lt2).sub(&f2.scale(&lt1)).is_zero()
        };
        if proportional {
            return Err(Error::DegenerateInput(
                "pencil generators are proportional".into(),
            ));
        }
        Ok(Self { f1, f2 })
    }
}

/// Fitted involution σ(t) = (a·t + b)/(c·t − a), stored as (a, b, c) rescaled
/// so the largest-magnitude entry is 1.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InvolutionFit {
    pub coefficients: [f64; 3],
}

impl InvolutionFit {
    pub fn apply(&self, t: f64) -> f64 {
        let [a, b, c] = self.coefficients;
        (a * t + b) / (c * t - a)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DesarguesReport {
    /// Intersection parameter pairs (t, σ(t)) along the tangent line, one per
    /// sampled pencil member.
    pub pairs: Vec<[f64; 2]>,
    pub fitted_involution: InvolutionFit,
    /// max |σ_fitted(t) − σ_observed(t)| over the pairs not used in the fit.
    pub residual: f64,
    /// max |t + σ(t)|: zero when pairs are symmetric about the tangency
    /// point, the geometric face of the ε-evenness of conics.
    pub symmetry_defect: f64,
}

/// A pair (u, w) with σ(u) = w imposes one linear condition
/// a(u + w) + b − c·u·w = 0 on the trace-zero Möbius coefficients. Two pairs
/// determine the involution; the rest measure it.
pub fn fit_involution(pairs: &[[f64; 2]]) -> Result<(InvolutionFit, f64)> {
    if pairs.len() < 3 {
        return Err(Error::InsufficientPairs {
            needed: 3,
            got: pairs.len(),
        });
    }
    let row = |p: &[f64; 2]| [p[0] + p[1], 1.0, -p[0] * p[1]];
    let r1 = row(&pairs[0]);
    let r2 = row(&pairs[1]);
    let mut coef = [
        r1[1] * r2[2] - r1[2] * r2[1],
        r1[2] * r2[0] - r1[0] * r2[2],
        r1[0] * r2[1] - r1[1] * r2[0],
    ];
    let max = coef.iter().map(|c| c.abs()).fold(0.0, f64::max);
    if max < 1e-14 {
        return Err(Error::DegenerateTangent(
            "the first two pairs do not determine an involution".into(),
        ));
    }
    let pivot = coef
        .iter()
        .position(|c| c.abs() == max)
        .expect("max realized");
    let scale = coef[pivot];
    for c in &mut coef {
        *c /= scale;
    }
    let fit = InvolutionFit { coefficients: coef };
    let mut residual = 0.0f64;
    for p in &pairs[2..] {
        let forward = (fit.apply(p[0]) - p[1]).abs();
        let backward = (fit.apply(p[1]) - p[0]).abs();
        residual = residual.max(forward.max(backward));
    }
    Ok((fit, residual))
}

/// Samples pencil members against the tangent line to f1 = 0 at `base`,
/// collects real intersection pairs and fits the Desargues involution.
///
/// `lambdas` chooses the members f2 + λ·f1; member f1 itself (the double
/// point at the tangency) is excluded.
pub fn desargues_involution_check(
    pencil: &ConicPencil,
    base: [f64; 2],
    lambdas: &[f64],
) -> Result<DesarguesReport> {
    let f1 = &pencil.f1;
    let f2 = &pencil.f2;
    let on_f1 = f1.eval_f64(base[0], base[1]).abs();
    if on_f1 > 1e-10 {
        return Err(Error::DegenerateInput(format!(
            "base point is not on f1 = 0 (|f1| = {on_f1:.3e})"
        )));
    }
    let grad = [
        f1.partial_derivative(Var::X).eval_f64(base[0], base[1]),
        f1.partial_derivative(Var::Y).eval_f64(base[0], base[1]),
    ];
    let gn = grad[0].hypot(grad[1]);
    if gn < 1e-12 {
        return Err(Error::DegenerateTangent(
            "f1 has vanishing gradient at the base point".into(),
        ));
    }
    let dir = [-grad[1] / gn, grad[0] / gn];
    if f2.eval_f64(base[0], base[1]).abs() < 1e-10 {
        // Every member passes through the base point, so the pairs collapse
        // onto t = 0 and no involution is cut out.
        return Err(Error::DegenerateTangent(
            "the tangent line passes through a base point of the pencil".into(),
        ));
    }

    let mut pairs = Vec::new();
    for &lambda in lambdas {
        let member_at = |t: f64| -> f64 {
            let p = [base[0] + t * dir[0], base[1] + t * dir[1]];
            f2.eval_f64(p[0], p[1]) + lambda * f1.eval_f64(p[0], p[1])
        };
        // Quadratic restriction q(t) = A t² + B t + C from three samples.
        let c = member_at(0.0);
        let s1 = member_at(1.0);
        let s_1 = member_at(-1.0);
        let a = 0.5 * (s1 + s_1) - c;
        let b = 0.5 * (s1 - s_1);
        let scale = a.abs().max(b.abs()).max(c.abs());
        if scale == 0.0 || a.abs() < 1e-14 * scale {
            continue; // member degenerates along this line
        }
        let disc = b * b - 4.0 * a * c;
        if disc <= 0.0 {
            continue; // no real pair for this member
        }
        let sq = disc.sqrt();
        let q = -0.5 * (b + b.signum() * sq);
        let (t1, t2) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / a, c / q)
        };
        pairs.push(if t1 <= t2 { [t1, t2] } else { [t2, t1] });
    }
    if pairs.len() < 3 {
        return Err(Error::InsufficientPairs {
            needed: 3,
            got: pairs.len(),
        });
    }
    let (fitted_involution, residual) = fit_involution(&pairs)?;
    let symmetry_defect = pairs
        .iter()
        .map(|p| (p[0] + p[1]).abs())
        .fold(0.0, f64::max);
    Ok(DesarguesReport {
        pairs,
        fitted_involution,
        residual,
        symmetry_defect,
    })
}

/// Default pencil members for the check: spread-out positive λ so a tangent
/// line to an inner generator keeps meeting every member in real pairs.
pub const DEFAULT_LAMBDAS: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 3.5, 5.0];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> BivariatePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn circle_in_ellipse_pencil_is_projective() {
        let pencil = ConicPencil::new(p("x^2+y^2-1"), p("x^2/4+y^2-1")).unwrap();
        let report =
            desargues_involution_check(&pencil, [1.0, 0.0], &DEFAULT_LAMBDAS).unwrap();
        assert!(report.residual < 1e-8, "residual {}", report.residual);

        // Cross-ratio oracle, independent of the Möbius fit: a projective σ
        // preserves cross-ratios of (t_i) against their images.
        let pts: Vec<f64> = report.pairs.iter().map(|p| p[0]).collect();
        let img: Vec<f64> = report.pairs.iter().map(|p| p[1]).collect();
        let cr = |a: f64, b: f64, c: f64, d: f64| ((a - c) * (b - d)) / ((a - d) * (b - c));
        let lhs = cr(pts[0], pts[1], pts[2], pts[3]);
        let rhs = cr(img[0], img[1], img[2], img[3]);
        assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
    }

    #[test]
    fn concentric_circles_reflect_through_tangency() {
        let pencil = ConicPencil::new(p("x^2+y^2-1"), p("x^2+y^2-4")).unwrap();
        let report =
            desargues_involution_check(&pencil, [0.0, 1.0], &DEFAULT_LAMBDAS).unwrap();
        assert!(report.symmetry_defect < 1e-12);
        assert!(report.residual < 1e-12);
        // σ(t) = −t exactly: coefficients proportional to (1, 0, 0).
        let [a, b, c] = report.fitted_involution.coefficients;
        assert!((a.abs() - 1.0).abs() < 1e-12 && b.abs() < 1e-12 && c.abs() < 1e-12);
    }

    #[test]
    fn non_pencil_family_fails_the_fit() {
        // Pairs assembled from two different circle families: (u from
        // concentric circles, w from circles shifted by 0.3). Not a pencil.
        let mut pairs = Vec::new();
        for r in [1.5f64, 2.0, 2.5, 3.0, 4.0] {
            let u = -(r * r - 1.0).sqrt();
            let w = ((r + 0.3) * (r + 0.3) - 1.0).sqrt();
            pairs.push([u, w]);
        }
        let (_, residual) = fit_involution(&pairs).unwrap();
        assert!(residual > 1e-2, "residual {residual}");
    }

    #[test]
    fn degenerate_cases_are_reported() {
        // Tangent through a pencil base point: circle and ellipse touch at
        // (0, 1).
        let pencil = ConicPencil::new(p("x^2+y^2-1"), p("x^2/4+y^2-1")).unwrap();
        assert!(matches!(
            desargues_involution_check(&pencil, [0.0, 1.0], &DEFAULT_LAMBDAS),
            Err(Error::DegenerateTangent(_))
        ));

        // Base point not on f1.
        assert!(desargues_involution_check(&pencil, [2.0, 0.0], &DEFAULT_LAMBDAS).is_err());

        // Too few real pairs.
        assert!(matches!(
            desargues_involution_check(&pencil, [1.0, 0.0], &[0.0, 0.5]),
            Err(Error::InsufficientPairs { .. })
        ));

        // Not conics.
        assert!(ConicPencil::new(p("x^2+y^2-1"), p("x+y")).is_err());
        assert!(ConicPencil::new(p("x^2+y^2-1"), p("2*x^2+2*y^2-2")).is_err());
    }
}
