//! The integrability certification pipeline.
//!
//! Given a candidate oval polynomial f and cofactor g (so F = g·f), the
//! pipeline runs, in order: nonsingularity of the complexified curve, the
//! assumption that g does not vanish on the curve, evenness of the tangent
//! reflection expansion at every odd order up to K, constancy of H(F) on the
//! curve, extraction of the quotient h from g³H(f) − c = h·f, and — for
//! degree > 2 — the finite-inflection witness at which f = H(f) = 0 makes the
//! two sides of that identity disagree by exactly c.

use num_complex::Complex64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::curves::{
    inflection_points_with, is_nonsingular_with, polygon_is_convex, sample_real_branch,
    BranchConfig, CurveConfig, InflectionRecord, ProjectiveCurve,
};
use crate::error::{Error, Result};
use crate::operators::{epsilon_expansion, h_operator};
use crate::poly::BivariatePoly;
use crate::rational::{rational_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ConicConsistent,
    EvennessFails,
    HNotConstant,
    ContradictionWitness,
    InvalidInput,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConicConsistent => "CONIC_CONSISTENT",
            Verdict::EvennessFails => "EVENNESS_FAILS",
            Verdict::HNotConstant => "H_NOT_CONSTANT",
            Verdict::ContradictionWitness => "CONTRADICTION_WITNESS",
            Verdict::InvalidInput => "INVALID_INPUT",
        }
    }
}

/// One odd order of the ε-expansion of F(x+εF_y, y−εF_x) reduced against f.
///
/// The residue carries the k!-scaled Taylor coefficient (so the k = 3 entry
/// is exactly W(F)): the zero polynomial when the coefficient is divisible by
/// f, the scaled coefficient itself otherwise.
#[derive(Clone, Debug)]
pub struct OddDefect {
    pub order: u32,
    pub residue: BivariatePoly,
}

impl OddDefect {
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

/// Evaluations of both sides of g³H(f) − c = h·f at the witness point.
#[derive(Clone, Debug)]
pub struct ContradictionEvaluation {
    /// g³H(f) − c at the witness; ≈ −c because f = H(f) = 0 there.
    pub left: Complex64,
    /// h·f at the witness; ≈ 0. Absent when no quotient h was recovered.
    pub right: Option<Complex64>,
    pub constant: Rational,
}

#[derive(Clone, Debug)]
pub struct IntegrabilityReport {
    pub f: BivariatePoly,
    pub g: BivariatePoly,
    pub degree: i64,
    pub order: u32,
    pub verdict: Verdict,
    pub nonsingular: Option<bool>,
    pub g_nonzero_on_curve: Option<bool>,
    pub odd_defects: Vec<OddDefect>,
    /// Remainder of H(g·f) modulo f; constant exactly when stage 4 passes.
    pub h_of_f_mod_f: Option<BivariatePoly>,
    pub constant_c: Option<Rational>,
    pub quotient_h: Option<BivariatePoly>,
    pub witness: Option<InflectionRecord>,
    pub contradiction: Option<ContradictionEvaluation>,
    /// None: convexity left as an assumption (no seed supplied).
    pub convexity_checked: Option<bool>,
    pub skipped_stages: Vec<&'static str>,
    pub invalid_reason: Option<String>,
}

impl Serialize for IntegrabilityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct DefectOut {
            order: u32,
            residue: String,
            is_zero: bool,
        }
        #[derive(Serialize)]
        struct ContradictionOut {
            left: [f64; 2],
            right: Option<[f64; 2]>,
            constant: String,
        }
        let mut s = serializer.serialize_struct("IntegrabilityReport", 15)?;
        s.serialize_field("f", &self.f.to_string())?;
        s.serialize_field("g", &self.g.to_string())?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("verdict", self.verdict.as_str())?;
        s.serialize_field("nonsingular", &self.nonsingular)?;
        s.serialize_field("g_nonzero_on_curve", &self.g_nonzero_on_curve)?;
        let defects: Vec<DefectOut> = self
            .odd_defects
            .iter()
            .map(|d| DefectOut {
                order: d.order,
                residue: d.residue.to_string(),
                is_zero: d.is_zero(),
            })
            .collect();
        s.serialize_field("odd_defects", &defects)?;
        s.serialize_field("h_of_f_mod_f", &self.h_of_f_mod_f.as_ref().map(|p| p.to_string()))?;
        s.serialize_field("constant_c", &self.constant_c.as_ref().map(|c| c.to_string()))?;
        s.serialize_field("quotient_h", &self.quotient_h.as_ref().map(|p| p.to_string()))?;
        s.serialize_field("witness", &self.witness)?;
        let contradiction = self.contradiction.as_ref().map(|c| ContradictionOut {
            left: [c.left.re, c.left.im],
            right: c.right.map(|r| [r.re, r.im]),
            constant: c.constant.to_string(),
        });
        s.serialize_field("contradiction", &contradiction)?;
        s.serialize_field("convexity_checked", &self.convexity_checked)?;
        s.serialize_field("skipped_stages", &self.skipped_stages)?;
        s.serialize_field("invalid_reason", &self.invalid_reason)?;
        s.end()
    }
}

/// Residues of the odd ε-orders of F = g·f against f: zero polynomial where
/// the order is divisible by f, the k!-scaled coefficient otherwise.
pub fn evenness_defect(f: &BivariatePoly, g: &BivariatePoly, order: u32) -> Result<Vec<OddDefect>> {
    if f.is_zero() {
        return Err(Error::DivisorZero);
    }
    let expansion = epsilon_expansion(&g.mul(f), order);
    let mut out = Vec::new();
    for k in (1..=order).step_by(2) {
        let k_factorial = (1..=k).fold(Rational::from_integer(1.into()), |acc, v| {
            acc * Rational::from_integer(v.into())
        });
        let scaled = expansion.coefficient(k).scale(&k_factorial);
        let residue = if scaled.exact_divide(f)?.is_some() {
            BivariatePoly::zero()
        } else {
            scaled
        };
        out.push(OddDefect { order: k, residue });
    }
    Ok(out)
}

/// Reduces H(g·f) modulo f by leading-term division; returns the constant
/// when the remainder is a nonzero constant, `None` otherwise.
pub fn h_constant_on_curve(f: &BivariatePoly, g: &BivariatePoly) -> Result<Option<Rational>> {
    Ok(h_remainder_on_curve(f, g)?
        .constant_value()
        .filter(|c| !c.is_zero()))
}

/// The full remainder of H(g·f) mod f, for reporting.
pub fn h_remainder_on_curve(f: &BivariatePoly, g: &BivariatePoly) -> Result<BivariatePoly> {
    let h = h_operator(&g.mul(f));
    let (_, r) = h.div_rem(f)?;
    Ok(r)
}

/// The quotient h with g³·H(f) − c = h·f when the division is exact.
pub fn verify_ideal_identity(
    f: &BivariatePoly,
    g: &BivariatePoly,
    c: &Rational,
) -> Result<Option<BivariatePoly>> {
    debug_assert!(!c.is_zero());
    let lhs = g
        .pow(3)
        .mul(&h_operator(f))
        .sub(&BivariatePoly::constant(c.clone()));
    lhs.exact_divide(f)
}

/// A finite inflection of the complexified curve of f, or `None` for conics.
///
/// The returned record additionally satisfies |H(f)| < 1e−6 at the
/// dehomogenized point, the numerical face of "H(f) vanishes at inflections".
pub fn inflection_witness(f: &BivariatePoly) -> Result<Option<InflectionRecord>> {
    inflection_witness_with(f, &CurveConfig::default())
}

pub fn inflection_witness_with(
    f: &BivariatePoly,
    cfg: &CurveConfig,
) -> Result<Option<InflectionRecord>> {
    let curve = ProjectiveCurve::from_affine(f)?;
    if !is_nonsingular_with(&curve, cfg)? {
        return Err(Error::SingularCurve);
    }
    if curve.degree() == 2 {
        return Ok(None);
    }
    let records = inflection_points_with(&curve, cfg)?;
    // Records are ordered finite-first (and real-first among those).
    let witness = records
        .into_iter()
        .find(|r| !r.at_infinity)
        .ok_or(Error::WitnessNotFound)?;
    let (wx, wy) = dehomogenized(&witness);
    let h_residual = scaled_affine_value(&h_operator(f), wx, wy);
    if h_residual > 1e-6 {
        return Err(Error::SolverDivergence(format!(
            "witness fails the H(f) cross-check: |H(f)| = {h_residual:.3e}"
        )));
    }
    Ok(Some(witness))
}

fn dehomogenized(record: &InflectionRecord) -> (Complex64, Complex64) {
    (record.point[0] / record.point[2], record.point[1] / record.point[2])
}

/// |p(x,y)| on the max-coefficient-normalized polynomial, scaled by the
/// point's magnitude.
pub fn scaled_affine_value(p: &BivariatePoly, x: Complex64, y: Complex64) -> f64 {
    let deg = p.degree().max(0) as i32;
    let scale = x.norm().max(y.norm()).max(1.0).powi(deg);
    p.normalized().eval_complex(x, y).norm() / scale
}

/// Test-visible pipeline controls. The forced-skip flags exist so the
/// contradiction stage can be exercised on inputs that honestly fail the
/// earlier stages.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct CertifyOptions {
    pub curve: CurveConfig,
    /// Bypass stage 3 (evenness residues).
    pub skip_evenness: bool,
    /// Bypass stage 4 (H constancy) and use `assumed_constant` downstream.
    pub skip_h_constant: bool,
    pub assumed_constant: Option<Rational>,
    /// Interior seed for the numeric convexity check; None leaves convexity
    /// as a recorded assumption.
    pub convexity_seed: Option<[f64; 2]>,
}


pub fn certify(f: &BivariatePoly, g: &BivariatePoly, order: u32) -> IntegrabilityReport {
    certify_with(f, g, order, &CertifyOptions::default())
}

pub fn certify_with(
    f: &BivariatePoly,
    g: &BivariatePoly,
    order: u32,
    options: &CertifyOptions,
) -> IntegrabilityReport {
    let mut report = IntegrabilityReport {
        f: f.clone(),
        g: g.clone(),
        degree: f.degree(),
        order,
        verdict: Verdict::InvalidInput,
        nonsingular: None,
        g_nonzero_on_curve: None,
        odd_defects: Vec::new(),
        h_of_f_mod_f: None,
        constant_c: None,
        quotient_h: None,
        witness: None,
        contradiction: None,
        convexity_checked: None,
        skipped_stages: Vec::new(),
        invalid_reason: None,
    };
    let invalid = |report: &mut IntegrabilityReport, reason: String| {
        report.verdict = Verdict::InvalidInput;
        report.invalid_reason = Some(reason);
    };

    if f.is_zero() {
        invalid(&mut report, "f is the zero polynomial".into());
        return report;
    }
    if order < 3 {
        invalid(&mut report, "expansion order must be at least 3".into());
        return report;
    }

    // Stage 1: the complexified curve must be nonsingular.
    let curve = match ProjectiveCurve::from_affine(f) {
        Ok(c) => c,
        Err(e) => {
            invalid(&mut report, format!("cannot homogenize f: {e}"));
            return report;
        }
    };
    match is_nonsingular_with(&curve, &options.curve) {
        Ok(ok) => {
            report.nonsingular = Some(ok);
            if !ok {
                invalid(&mut report, "the curve f = 0 is singular".into());
                return report;
            }
        }
        Err(e) => {
            invalid(&mut report, format!("nonsingularity check failed: {e}"));
            return report;
        }
    }

    // Stage 2: g must not vanish identically on the curve, i.e. f ∤ g.
    let g_ok = match g.div_rem(f) {
        Ok((_, r)) => !r.is_zero(),
        Err(_) => false,
    };
    report.g_nonzero_on_curve = Some(g_ok);
    if !g_ok {
        invalid(
            &mut report,
            "g vanishes identically on the curve (divisible by f)".into(),
        );
        return report;
    }

    if let Some(seed) = options.convexity_seed {
        report.convexity_checked = sample_real_branch(f, seed, 128, &BranchConfig::default())
            .ok()
            .map(|pts| polygon_is_convex(&pts));
    }

    // Stage 3: every odd ε-order must vanish on the curve.
    if options.skip_evenness {
        report.skipped_stages.push("evenness_defect");
    } else {
        match evenness_defect(f, g, order) {
            Ok(defects) => {
                let failed = defects.iter().any(|d| !d.is_zero());
                report.odd_defects = defects;
                if failed {
                    report.verdict = Verdict::EvennessFails;
                    return report;
                }
            }
            Err(e) => {
                invalid(&mut report, format!("evenness expansion failed: {e}"));
                return report;
            }
        }
    }

    // Stage 4: H(gf) must reduce to a nonzero constant mod f.
    if options.skip_h_constant {
        report.skipped_stages.push("h_constant_on_curve");
        report.constant_c = options.assumed_constant.clone();
    } else {
        match h_remainder_on_curve(f, g) {
            Ok(r) => {
                report.h_of_f_mod_f = Some(r.clone());
                report.constant_c = r.constant_value().filter(|c| !c.is_zero());
            }
            Err(e) => {
                invalid(&mut report, format!("H reduction failed: {e}"));
                return report;
            }
        }
        if report.constant_c.is_none() {
            report.verdict = Verdict::HNotConstant;
            return report;
        }
    }
    let Some(constant) = report.constant_c.clone() else {
        report.verdict = Verdict::HNotConstant;
        return report;
    };

    // Stage 5: extract h from g³H(f) − c = h·f.
    match verify_ideal_identity(f, g, &constant) {
        Ok(h) => report.quotient_h = h,
        Err(e) => {
            invalid(&mut report, format!("ideal identity division failed: {e}"));
            return report;
        }
    }
    if report.quotient_h.is_none() && !options.skip_h_constant {
        // Unreachable when stage 4 passed (H(gf) ≡ g³H(f) mod f); kept as a
        // defensive verdict rather than a panic.
        report.verdict = Verdict::HNotConstant;
        return report;
    }

    // Stage 6: conics are consistent; anything of higher degree must exhibit
    // the finite-inflection contradiction.
    if report.degree == 2 {
        report.verdict = Verdict::ConicConsistent;
        return report;
    }
    match inflection_witness_with(f, &options.curve) {
        Ok(Some(witness)) => {
            let (wx, wy) = (
                witness.point[0] / witness.point[2],
                witness.point[1] / witness.point[2],
            );
            let gv = g.eval_complex(wx, wy);
            let hf = h_operator(f).eval_complex(wx, wy);
            let cf = Complex64::new(rational_to_f64(&constant), 0.0);
            let left = gv * gv * gv * hf - cf;
            let right = report.quotient_h.as_ref().map(|h| {
                h.eval_complex(wx, wy) * f.eval_complex(wx, wy)
            });
            report.contradiction = Some(ContradictionEvaluation {
                left,
                right,
                constant: constant.clone(),
            });
            report.witness = Some(witness);
            report.verdict = Verdict::ContradictionWitness;
        }
        Ok(None) => {
            // Only conics return no witness, and those exited above.
            invalid(
                &mut report,
                "internal inconsistency: no witness for degree > 2".into(),
            );
        }
        Err(e) => {
            invalid(
                &mut report,
                format!("numerical failure while locating the witness: {e}"),
            );
        }
    }
    report
}
