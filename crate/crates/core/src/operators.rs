//! Differential operators on level-curve polynomials.
//!
//! For a polynomial F, the symplectic gradient v = (F_y, −F_x) is tangent to
//! the level curves of F. Reflecting along the tangent direction and expanding
//! F(x + εF_y, y − εF_x) in ε produces the Taylor coefficients c_k; the
//! determinant polynomial H(F) equals 2c₂ and the cubic obstruction W(F)
//! equals 6c₃. The identities v(H(F)) = W(F) and H(gf) ≡ g³H(f) mod f are
//! exact and machine-checked here.

use num_traits::One;

use crate::error::Result;
use crate::poly::{BivariatePoly, Var};
use crate::rational::Rational;

/// The symplectic gradient (F_y, −F_x) of the polynomial it was built from.
#[derive(Clone, Debug)]
pub struct VectorFieldPair {
    /// ∂/∂x component, equals F_y.
    pub dx_component: BivariatePoly,
    /// ∂/∂y component, equals −F_x.
    pub dy_component: BivariatePoly,
}

/// Taylor coefficients c_0..c_K of F(x + εF_y, y − εF_x) in ε, with the
/// displacement frozen at the base point.
#[derive(Clone, Debug)]
pub struct EpsilonExpansion {
    pub coefficients: Vec<BivariatePoly>,
}

impl EpsilonExpansion {
    pub fn order(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    pub fn coefficient(&self, k: u32) -> &BivariatePoly {
        &self.coefficients[k as usize]
    }
}

pub fn symplectic_gradient(f: &BivariatePoly) -> VectorFieldPair {
    VectorFieldPair {
        dx_component: f.partial_derivative(Var::Y),
        dy_component: f.partial_derivative(Var::X).neg(),
    }
}

/// Applies the field as a derivation: v(p) = v_x·∂p/∂x + v_y·∂p/∂y.
pub fn apply_field(v: &VectorFieldPair, p: &BivariatePoly) -> BivariatePoly {
    let px = p.partial_derivative(Var::X);
    let py = p.partial_derivative(Var::Y);
    v.dx_component.mul(&px).add(&v.dy_component.mul(&py))
}

/// Exact ε-expansion of F(x + εF_y, y − εF_x) up to order K ≥ 3.
///
/// c_k = (1/k!) Σ_{m+n=k} C(k,m)·F_y^m·(−F_x)^n·∂x^m∂y^n F, the straight-line
/// Taylor coefficient with the displacement (F_y, −F_x) held constant.
pub fn epsilon_expansion(f: &BivariatePoly, order: u32) -> EpsilonExpansion {
    assert!(order >= 3, "expansion order must be at least 3");
    let k = order as usize;

    // Mixed partials ∂x^m ∂y^n F for m+n <= K.
    let mut partials: Vec<Vec<BivariatePoly>> = vec![vec![BivariatePoly::zero(); k + 1]; k + 1];
    partials[0][0] = f.clone();
    for m in 0..=k {
        for n in 0..=k - m {
            if m == 0 && n == 0 {
                continue;
            }
            partials[m][n] = if m > 0 {
                partials[m - 1][n].partial_derivative(Var::X)
            } else {
                partials[m][n - 1].partial_derivative(Var::Y)
            };
        }
    }

    let a = f.partial_derivative(Var::Y); // displacement x-component
    let b_neg = f.partial_derivative(Var::X).neg(); // displacement y-component
    let powers = |base: &BivariatePoly| -> Vec<BivariatePoly> {
        let mut v = vec![BivariatePoly::one()];
        for _ in 0..k {
            v.push(v.last().unwrap().mul(base));
        }
        v
    };
    let a_pow = powers(&a);
    let b_pow = powers(&b_neg);

    // Pascal triangle of C(k, m) as rationals.
    let mut binom = vec![vec![Rational::one(); 1]];
    for row in 1..=k {
        let prev = &binom[row - 1];
        let mut cur = vec![Rational::one()];
        for m in 1..row {
            cur.push(&prev[m - 1] + &prev[m]);
        }
        cur.push(Rational::one());
        binom.push(cur);
    }

    let mut coefficients = Vec::with_capacity(k + 1);
    let mut factorial = Rational::one();
    for kk in 0..=k {
        if kk > 0 {
            factorial *= Rational::from_integer((kk as u32).into());
        }
        let inv_fact = Rational::one() / &factorial;
        let mut c = BivariatePoly::zero();
        for m in 0..=kk {
            let n = kk - m;
            let term = a_pow[m]
                .mul(&b_pow[n])
                .mul(&partials[m][n])
                .scale(&binom[kk][m]);
            c = c.add(&term);
        }
        coefficients.push(c.scale(&inv_fact));
    }
    EpsilonExpansion { coefficients }
}

/// W(F) = F_xxx·F_y³ − 3F_xxy·F_y²·F_x + 3F_xyy·F_y·F_x² − F_yyy·F_x³,
/// the cubic-in-ε obstruction. Identically zero for deg F ≤ 2.
pub fn w_operator(f: &BivariatePoly) -> BivariatePoly {
    let fx = f.partial_derivative(Var::X);
    let fy = f.partial_derivative(Var::Y);
    let fxx = fx.partial_derivative(Var::X);
    let fxxx = fxx.partial_derivative(Var::X);
    let fxxy = fxx.partial_derivative(Var::Y);
    let fyy = fy.partial_derivative(Var::Y);
    let fyyy = fyy.partial_derivative(Var::Y);
    let fxyy = fyy.partial_derivative(Var::X);

    let three = Rational::from_integer(3.into());
    fxxx.mul(&fy.pow(3))
        .sub(&fxxy.mul(&fy.pow(2)).mul(&fx).scale(&three))
        .add(&fxyy.mul(&fy).mul(&fx.pow(2)).scale(&three))
        .sub(&fyyy.mul(&fx.pow(3)))
}

/// H(F) as the 2×2 determinant with rows (F_y, −F_x) and
/// (F_yy·F_x − F_xy·F_y, F_xx·F_y − F_xy·F_x); expands to
/// F_xx·F_y² − 2F_xy·F_x·F_y + F_yy·F_x².
pub fn h_operator(f: &BivariatePoly) -> BivariatePoly {
    let fx = f.partial_derivative(Var::X);
    let fy = f.partial_derivative(Var::Y);
    let fxx = fx.partial_derivative(Var::X);
    let fxy = fx.partial_derivative(Var::Y);
    let fyy = fy.partial_derivative(Var::Y);

    let top_left = &fy;
    let top_right = fx.neg();
    let bottom_left = fyy.mul(&fx).sub(&fxy.mul(&fy));
    let bottom_right = fxx.mul(&fy).sub(&fxy.mul(&fx));
    top_left.mul(&bottom_right).sub(&top_right.mul(&bottom_left))
}

/// v(H(F)) = W(F), exactly.
pub fn check_vh_equals_w(f: &BivariatePoly) -> bool {
    let lhs = apply_field(&symplectic_gradient(f), &h_operator(f));
    lhs.sub(&w_operator(f)).is_zero()
}

/// H(g·f) − g³·H(f) is divisible by f, exactly.
pub fn check_h_cubic_scaling(f: &BivariatePoly, g: &BivariatePoly) -> Result<bool> {
    let gf = g.mul(f);
    let diff = h_operator(&gf).sub(&g.pow(3).mul(&h_operator(f)));
    Ok(diff.exact_divide(f)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;
    use crate::rational::{rat, rat_int};

    fn p(s: &str) -> BivariatePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn symplectic_gradient_examples() {
        let v = symplectic_gradient(&p("x^2+y^2-1"));
        assert_eq!(v.dx_component, p("2*y"));
        assert_eq!(v.dy_component, p("-2*x"));

        let v2 = symplectic_gradient(&p("x*y"));
        assert_eq!(v2.dx_component, p("x"));
        assert_eq!(v2.dy_component, p("-y"));
    }

    #[test]
    fn field_annihilates_its_own_potential() {
        for s in ["x^2+y^2-1", "x^3 - 2*x*y + y^4", "7*x - y^2/3"] {
            let f = p(s);
            assert!(apply_field(&symplectic_gradient(&f), &f).is_zero());
        }
        // Constants are annihilated by any field.
        let v = symplectic_gradient(&p("x^4 - y"));
        assert!(apply_field(&v, &p("5/2")).is_zero());
    }

    #[test]
    fn apply_field_hand_example() {
        // F = x^3 + y^2: H(F) = 24xy^2 + 18x^4, v = (2y, -3x^2),
        // v(H) = 2y(24y^2 + 72x^3) - 3x^2·48xy = 48y^3.
        let f = p("x^3+y^2");
        let h = h_operator(&f);
        assert_eq!(h, p("24*x*y^2 + 18*x^4"));
        let vh = apply_field(&symplectic_gradient(&f), &h);
        assert_eq!(vh, p("48*y^3"));
    }

    #[test]
    fn epsilon_expansion_circle() {
        let f = p("x^2+y^2-1");
        let e = epsilon_expansion(&f, 5);
        assert_eq!(e.coefficients.len(), 6);
        assert_eq!(e.coefficient(0), &f);
        assert!(e.coefficient(1).is_zero());
        assert_eq!(e.coefficient(2), &p("4*x^2 + 4*y^2"));
        assert!(e.coefficient(3).is_zero());
        // Quadratic F: everything beyond ε² vanishes.
        assert!(e.coefficient(4).is_zero());
        assert!(e.coefficient(5).is_zero());
    }

    #[test]
    fn epsilon_expansion_quartic_cubic_term() {
        let f = p("x^4+y^4-1");
        let e = epsilon_expansion(&f, 3);
        let expected = p("256*x*y^9 - 256*x^9*y");
        assert_eq!(e.coefficient(3), &expected);
        assert_eq!(w_operator(&f), expected.scale(&rat_int(6)));
    }

    #[test]
    fn w_operator_examples() {
        assert!(w_operator(&p("x^2 - 3*x*y + y^2 + x - 7")).is_zero());
        assert_eq!(w_operator(&p("x^4+y^4-1")), p("1536*x*y^9 - 1536*x^9*y"));
        assert_eq!(w_operator(&p("x^3+y^2")), p("48*y^3"));
    }

    #[test]
    fn h_operator_examples() {
        let f = p("x^2+y^2-1");
        assert_eq!(h_operator(&f), p("8*x^2 + 8*y^2"));
        let (_, r) = h_operator(&f).div_rem(&f).unwrap();
        assert_eq!(r, BivariatePoly::constant(rat_int(8)));

        // Ellipse x²/a² + y²/b² − 1 reduces to 8/(a²b²).
        for (a, b) in [(2i64, 1i64), (3, 2), (5, 1)] {
            let f = BivariatePoly::from_terms(vec![
                ((2, 0), rat(1, a * a)),
                ((0, 2), rat(1, b * b)),
                ((0, 0), rat_int(-1)),
            ]);
            let (_, r) = h_operator(&f).div_rem(&f).unwrap();
            assert_eq!(r, BivariatePoly::constant(rat(8, a * a * b * b)));
        }

        assert!(h_operator(&p("x")).is_zero());
    }

    #[test]
    fn h_determinant_matches_expanded_form() {
        for s in ["x^3 - y^2 + x*y", "x^4+y^4-1", "2*x*y - 3"] {
            let f = p(s);
            let fx = f.partial_derivative(Var::X);
            let fy = f.partial_derivative(Var::Y);
            let fxx = fx.partial_derivative(Var::X);
            let fxy = fx.partial_derivative(Var::Y);
            let fyy = fy.partial_derivative(Var::Y);
            let expanded = fxx
                .mul(&fy.pow(2))
                .sub(&fxy.mul(&fx).mul(&fy).scale(&rat_int(2)))
                .add(&fyy.mul(&fx.pow(2)));
            assert_eq!(h_operator(&f), expanded);
        }
    }

    #[test]
    fn vh_w_identity_examples() {
        assert!(check_vh_equals_w(&p("x^2+y^2-1")));
        assert!(check_vh_equals_w(&p("x^3+y^2")));
        assert!(check_vh_equals_w(&p("x^4+y^4-1")));
    }

    #[test]
    fn h_cubic_scaling_examples() {
        let f = p("x^2+y^2-1");
        assert!(check_h_cubic_scaling(&f, &BivariatePoly::one()).unwrap());
        assert!(check_h_cubic_scaling(&f, &p("x")).unwrap());
        assert!(check_h_cubic_scaling(&p("x^3 + y^3 + 1"), &p("x - 2*y + 1")).unwrap());
        assert!(check_h_cubic_scaling(&BivariatePoly::zero(), &p("x")).is_err());
    }

    #[test]
    fn h_cubic_homogeneity_in_scaling() {
        let f = p("x^3 - x*y + 2*y^2 - 5");
        let lam = rat(-7, 3);
        let lhs = h_operator(&f.scale(&lam));
        let rhs = h_operator(&f).scale(&(&lam * &lam * &lam));
        assert_eq!(lhs, rhs);
    }
}
