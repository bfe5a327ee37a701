//! Resultants by Sylvester-matrix determinant.
//!
//! The determinant is computed with fraction-free Bareiss elimination over
//! the polynomial ring itself, so the result is exact. Entries stay
//! polynomials in the non-eliminated variable throughout; every division the
//! algorithm performs is exact by construction.

use crate::error::{Error, Result};
use crate::poly::{BivariatePoly, Var};

/// Resultant of `p` and `q` with respect to `eliminate`, as an exact
/// polynomial in the remaining variable.
pub fn resultant(p: &BivariatePoly, q: &BivariatePoly, eliminate: Var) -> Result<BivariatePoly> {
    let dp = p.degree_in(eliminate);
    let dq = q.degree_in(eliminate);
    if dp < 1 || dq < 1 {
        return Err(Error::DegenerateInput(format!(
            "resultant needs positive degree in the eliminated variable (got {dp} and {dq})"
        )));
    }
    let m = dp as usize;
    let n = dq as usize;
    let pc = p.coeffs_in(eliminate); // ascending
    let qc = q.coeffs_in(eliminate);
    let size = m + n;
    let zero = BivariatePoly::zero();
    let mut mat = vec![vec![zero; size]; size];
    // n rows of p's coefficients (descending), then m rows of q's.
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

fn bareiss_determinant(mut mat: Vec<Vec<BivariatePoly>>) -> BivariatePoly {
    let n = mat.len();
    let mut negate = false;
    let mut prev = BivariatePoly::one();
    for k in 0..n.saturating_sub(1) {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BivariatePoly::zero();
            };
            mat.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .exact_divide(&prev)
                    .expect("previous pivot is nonzero")
                    .expect("Bareiss division is exact");
            }
            mat[i][k] = BivariatePoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> BivariatePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn linear_divisor_evaluates() {
        // Res_y(y^2 - x, y - 1) = p evaluated at y = 1.
        let r = resultant(&p("y^2 - x"), &p("y - 1"), Var::Y).unwrap();
        assert_eq!(r, p("1 - x"));
    }

    #[test]
    fn circle_against_axis() {
        let r = resultant(&p("x^2+y^2-1"), &p("y"), Var::Y).unwrap();
        assert_eq!(r, p("x^2 - 1"));
    }

    #[test]
    fn bezout_degree_bound() {
        let a = p("x^2*y^2 - 3*y + x");
        let b = p("y^3 + x^2 - 2");
        let r = resultant(&a, &b, Var::Y).unwrap();
        assert!(r.degree_in(Var::X) <= a.degree() * b.degree());
        assert_eq!(r.degree_in(Var::Y), 0);
    }

    #[test]
    fn planted_common_factor_kills_resultant() {
        // p and q share the factor (y - 2x + 1), so the resultant vanishes
        // identically.
        let common = p("y - 2*x + 1");
        let a = common.mul(&p("y + x^2"));
        let b = common.mul(&p("y^2 - 3"));
        let r = resultant(&a, &b, Var::Y).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(resultant(&p("x^2"), &p("y"), Var::Y).is_err());
        assert!(resultant(&p("y"), &p("3"), Var::Y).is_err());
    }
}
