//! All complex roots of a univariate polynomial.
//!
//! Simultaneous Aberth–Ehrlich iteration, followed by single-link clustering
//! that turns groups of nearby approximations into one root with a
//! multiplicity. Residuals are measured on the max-coefficient-normalized
//! polynomial so the acceptance threshold is scale-free.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::horner_complex;
use crate::rational::{rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct RootEstimate {
    pub value: Complex64,
    pub multiplicity: u32,
    /// |p(value)| / max(1, |value|)^deg on the normalized polynomial.
    pub residual: f64,
}

#[derive(Debug, Clone, Default)]
pub struct UnivariateRoots {
    pub roots: Vec<RootEstimate>,
}

impl UnivariateRoots {
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Relative correction size that counts as converged.
    pub correction_tol: f64,
    /// Approximations closer than this merge into one multiple root.
    pub cluster_radius: f64,
    /// Largest acceptable normalized residual per returned root.
    pub residual_tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            max_iterations: 1000,
            correction_tol: 1e-14,
            cluster_radius: 1e-6,
            residual_tol: 1e-10,
        }
    }
}

/// Roots of an exact-rational polynomial, coefficients ascending.
///
/// Multiple roots are peeled off exactly first (Yun square-free
/// decomposition over ℚ), so the iteration only ever chases simple roots of
/// well-conditioned factors; multiplicities are exact, not clustered guesses.
pub fn complex_roots(coeffs: &[Rational]) -> Result<UnivariateRoots> {
    complex_roots_with(coeffs, &RootConfig::default())
}

pub fn complex_roots_with(coeffs: &[Rational], cfg: &RootConfig) -> Result<UnivariateRoots> {
    // Exact trims first: leading zeros shrink the degree, trailing (constant
    // side) zeros are exact roots at the origin.
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::DegenerateInput(
            "root finding on the zero polynomial".into(),
        ));
    }
    let mut zero_mult = 0u32;
    while c.first().is_some_and(|v| v.is_zero()) {
        c.remove(0);
        zero_mult += 1;
    }

    let degree = (c.len() - 1) as u32 + zero_mult;
    let mut roots: Vec<RootEstimate> = Vec::with_capacity(degree as usize);
    if zero_mult > 0 {
        roots.push(RootEstimate {
            value: Complex64::zero(),
            multiplicity: zero_mult,
            residual: 0.0,
        });
    }

    // Residuals are judged against the full normalized input.
    let max = c
        .iter()
        .map(|v| v.abs())
        .max()
        .expect("nonempty after trims");
    let input_f64: Vec<Complex64> = c
        .iter()
        .map(|v| Complex64::new(rational_to_f64(&(v / &max)), 0.0))
        .collect();

    for (factor, mult) in yun_square_free(&c) {
        let fmax = factor
            .iter()
            .map(|v| v.abs())
            .max()
            .expect("factors are nonzero");
        let cf: Vec<Complex64> = factor
            .iter()
            .map(|v| Complex64::new(rational_to_f64(&(v / &fmax)), 0.0))
            .collect();
        let partial = solve_normalized(&cf, 0, cfg)?;
        for r in partial.roots {
            roots.push(RootEstimate {
                value: r.value,
                multiplicity: r.multiplicity * mult,
                residual: normalized_residual(&input_f64, r.value),
            });
        }
    }

    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    let out = UnivariateRoots { roots };
    debug_assert_eq!(out.total_multiplicity(), degree);
    if out.max_residual() > cfg.residual_tol || out.roots.iter().any(|r| !r.value.is_finite()) {
        return Err(Error::ConvergenceFailure { partial: out });
    }
    Ok(out)
}

// --- exact univariate helpers over ℚ (ascending coefficients) ---

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    c
}

fn uni_derivative(c: &[Rational]) -> Vec<Rational> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v * Rational::from_integer((k as u32).into()))
        .collect()
}

fn uni_monic(c: Vec<Rational>) -> Vec<Rational> {
    let c = trim(c);
    let Some(lead) = c.last().cloned() else {
        return c;
    };
    c.into_iter().map(|v| v / &lead).collect()
}

/// Remainder of a mod b; b nonzero.
fn uni_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] / lead;
        if !q.is_zero() {
            for k in 0..=db {
                let idx = dr - db + k;
                let delta = &q * &b[k];
                r[idx] -= delta;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= db {
            break;
        }
    }
    trim(r)
}

/// Exact quotient a / b when b divides a.
fn uni_exact_div(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let coef = &r[dr] / lead;
        q[dr - db] = coef.clone();
        for k in 0..=db {
            let idx = dr - db + k;
            let delta = &coef * &b[k];
            r[idx] -= delta;
        }
        r.pop();
        r = trim(r);
    }
    debug_assert!(trim(r).is_empty(), "division was not exact");
    trim(q)
}

/// Monic gcd by the Euclidean remainder sequence, re-normalizing each step to
/// keep coefficient growth in check.
fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = uni_monic(a.to_vec());
    let mut y = uni_monic(b.to_vec());
    while !y.is_empty() {
        let r = uni_monic(uni_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// Yun's square-free decomposition: returns pairwise-coprime monic factors
/// with their multiplicities; the input is the product of factor^multiplicity
/// up to a constant.
fn yun_square_free(c: &[Rational]) -> Vec<(Vec<Rational>, u32)> {
    let f = uni_monic(c.to_vec());
    if f.len() <= 1 {
        return Vec::new();
    }
    if f.len() == 2 {
        return vec![(f, 1)];
    }
    let df = uni_derivative(&f);
    let g = uni_gcd(&f, &df);
    if g.len() <= 1 {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut ci = uni_exact_div(&f, &g);
    let mut di = {
        let t = uni_exact_div(&df, &g);
        uni_sub(&t, &uni_derivative(&ci))
    };
    let mut i = 1u32;
    while ci.len() > 1 {
        let ai = uni_gcd(&ci, &di);
        if ai.len() > 1 {
            out.push((ai.clone(), i));
        }
        ci = uni_exact_div(&ci, &ai);
        let t = uni_exact_div(&di, &ai);
        di = uni_sub(&t, &uni_derivative(&ci));
        i += 1;
    }
    out
}

fn uni_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let av = a.get(k).cloned().unwrap_or_else(Rational::zero);
        let bv = b.get(k).cloned().unwrap_or_else(Rational::zero);
        out.push(av - bv);
    }
    trim(out)
}

/// Roots of a complex-coefficient polynomial, coefficients ascending.
pub fn complex_roots_f64(coeffs: &[Complex64], cfg: &RootConfig) -> Result<UnivariateRoots> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    let scale = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::DegenerateInput(
            "root finding on the zero polynomial".into(),
        ));
    }
    // Leading coefficients far below the coefficient scale are numerically
    // absent degrees, not roots near infinity.
    while c.last().is_some_and(|v| v.norm() < 1e-13 * scale) {
        c.pop();
    }
    let mut zero_mult = 0u32;
    while c.first().is_some_and(|v| v.norm() == 0.0) {
        c.remove(0);
        zero_mult += 1;
    }
    let rescale = 1.0 / c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for v in &mut c {
        *v *= rescale;
    }
    solve_normalized(&c, zero_mult, cfg)
}

fn solve_normalized(
    coeffs: &[Complex64],
    zero_mult: u32,
    cfg: &RootConfig,
) -> Result<UnivariateRoots> {
    let n = coeffs.len() - 1;
    let mut approx: Vec<Complex64> = Vec::with_capacity(n + zero_mult as usize);
    for _ in 0..zero_mult {
        approx.push(Complex64::zero());
    }
    if n == 1 {
        approx.push(-coeffs[0] / coeffs[1]);
    } else if n >= 2 {
        approx.extend(aberth(coeffs, cfg));
    }
    let deg = n + zero_mult as usize;
    if deg == 0 {
        return Ok(UnivariateRoots::default());
    }

    let clusters = cluster(&approx, cfg.cluster_radius);
    let mut roots = Vec::with_capacity(clusters.len());
    for members in clusters {
        let m = members.len() as u32;
        let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
        let residual = if centroid.is_zero() && zero_mult > 0 {
            0.0
        } else {
            normalized_residual(coeffs, centroid)
        };
        roots.push(RootEstimate {
            value: centroid,
            multiplicity: m,
            residual,
        });
    }
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    let out = UnivariateRoots { roots };
    debug_assert_eq!(out.total_multiplicity() as usize, deg);
    if out.max_residual() > cfg.residual_tol || out.roots.iter().any(|r| !r.value.is_finite()) {
        return Err(Error::ConvergenceFailure { partial: out });
    }
    Ok(out)
}

fn normalized_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let n = (coeffs.len() - 1) as i32;
    horner_complex(coeffs, z).norm() / z.norm().max(1.0).powi(n)
}

fn aberth(coeffs: &[Complex64], cfg: &RootConfig) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    // Fujiwara root bound: 2·max_k (|a_{n−k}|/|a_n|)^{1/k}. Unlike the Cauchy
    // bound it stays moderate when the leading coefficient is far below the
    // coefficient scale, which resultants of high degree routinely produce.
    // The offset angle breaks the symmetric stalls of real-symmetric root
    // sets.
    let lead = coeffs[n].norm();
    let radius = (2.0
        * (0..n)
            .map(|i| (coeffs[i].norm() / lead).powf(1.0 / (n - i) as f64))
            .fold(0.0, f64::max))
    .clamp(1e-3, 1e8);
    let reset = |k: usize| {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.41;
        Complex64::from_polar(0.9 * radius * (1.0 + 0.01 * k as f64), theta)
    };
    let mut z: Vec<Complex64> = (0..n).map(reset).collect();

    for _ in 0..cfg.max_iterations {
        for k in 0..n {
            if !z[k].is_finite() {
                z[k] = reset(k);
            }
        }
        let mut max_step = 0.0f64;
        for k in 0..n {
            let zk = z[k];
            let pv = horner_complex(coeffs, zk);
            if pv.is_zero() {
                continue;
            }
            let dv = horner_complex(&deriv, zk);
            let w = if dv.is_zero() {
                // Critical-point collision; nudge instead of dividing by zero.
                Complex64::new(1e-8, 1e-8)
            } else {
                pv / dv
            };
            let mut repulsion = Complex64::zero();
            for (j, &zj) in z.iter().enumerate() {
                if j != k {
                    let d = zk - zj;
                    if d.norm() > 1e-300 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let step = if denom.is_zero() { w } else { w / denom };
            z[k] = zk - step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < cfg.correction_tol {
            break;
        }
    }
    z
}

/// Single-link clustering: points chained within `radius` form one root.
fn cluster(points: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .re
            .total_cmp(&points[b].re)
            .then(points[a].im.total_cmp(&points[b].im))
    });
    let mut assigned = vec![false; points.len()];
    let mut out = Vec::new();
    for &start in &order {
        if assigned[start] {
            continue;
        }
        let mut members = vec![start];
        assigned[start] = true;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for &j in &order {
                if !assigned[j] && (points[i] - points[j]).norm() <= radius {
                    assigned[j] = true;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        out.push(members.into_iter().map(|i| points[i]).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn close(a: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (a.re - re).abs() < tol && (a.im - im).abs() < tol
    }

    #[test]
    fn quadratic_with_imaginary_pair() {
        // x^2 + 1
        let r = complex_roots(&[rat_int(1), rat_int(0), rat_int(1)]).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(close(r.roots[0].value, 0.0, -1.0, 1e-10));
        assert!(close(r.roots[1].value, 0.0, 1.0, 1e-10));
    }

    #[test]
    fn double_root_clusters() {
        // (x-1)^2 = 1 - 2x + x^2
        let r = complex_roots(&[rat_int(1), rat_int(-2), rat_int(1)]).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 2);
        assert!(close(r.roots[0].value, 1.0, 0.0, 1e-6));
    }

    #[test]
    fn cube_roots_of_unity() {
        // x^3 - 1
        let r = complex_roots(&[rat_int(-1), rat_int(0), rat_int(0), rat_int(1)]).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert_eq!(r.total_multiplicity(), 3);
        for root in &r.roots {
            assert!((root.value.norm() - 1.0).abs() < 1e-10);
            assert_eq!(root.multiplicity, 1);
        }
        let half = 3f64.sqrt() / 2.0;
        assert!(close(r.roots[0].value, -0.5, -half, 1e-10));
        assert!(close(r.roots[1].value, -0.5, half, 1e-10));
        assert!(close(r.roots[2].value, 1.0, 0.0, 1e-10));
    }

    #[test]
    fn zero_roots_split_off_exactly() {
        // x^2 (x - 3)
        let r = complex_roots(&[rat_int(0), rat_int(0), rat_int(-3), rat_int(1)]).unwrap();
        assert_eq!(r.total_multiplicity(), 3);
        let zero = r.roots.iter().find(|r| r.value.norm() < 1e-12).unwrap();
        assert_eq!(zero.multiplicity, 2);
    }

    #[test]
    fn residuals_and_multiplicity_sum_on_planted_products() {
        // (x - 2)(x + 1/2)(x^2 + 4), degree 4.
        // Expanded by hand: (x^2 - 3/2 x - 1)(x^2 + 4).
        use crate::rational::rat;
        let coeffs = [
            rat(-4, 1),
            rat(-6, 1),
            rat(3, 1),
            rat(-3, 2),
            rat(1, 1),
        ];
        let r = complex_roots(&coeffs).unwrap();
        assert_eq!(r.total_multiplicity(), 4);
        assert!(r.max_residual() < 1e-10);
        assert!(r
            .roots
            .iter()
            .any(|root| close(root.value, 2.0, 0.0, 1e-9)));
        assert!(r
            .roots
            .iter()
            .any(|root| close(root.value, -0.5, 0.0, 1e-9)));
        assert!(r
            .roots
            .iter()
            .any(|root| close(root.value, 0.0, 2.0, 1e-9)));
    }

    #[test]
    fn degree_zero_has_no_roots() {
        let r = complex_roots(&[rat_int(7)]).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.total_multiplicity(), 0);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(complex_roots(&[rat_int(0)]).is_err());
        assert!(complex_roots(&[]).is_err());
    }
}
