//! Sparse exact-rational polynomials in two and three variables.
//!
//! `BivariatePoly` is the workhorse: a finite map from exponent pairs to
//! nonzero rational coefficients. The graded-lexicographic order (total degree
//! first, then x-degree) drives leading-term selection, single-divisor
//! division and the canonical text form. `TrivariatePoly` is its homogeneous
//! projective counterpart.

pub mod parse;
pub mod resultant;
pub mod roots;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_negative, rational_to_f64, Rational};

/// An affine variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// A projective variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjVar {
    X,
    Y,
    Z,
}

/// Graded-lex comparison of exponent pairs: total degree first, then x-degree.
pub fn grlex_cmp(a: (u32, u32), b: (u32, u32)) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// Sparse polynomial in x and y over the rationals.
///
/// Invariant: no stored zero coefficients. The zero polynomial is the empty
/// map and reports degree −1.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        let exp = match v {
            Var::X => (1, 0),
            Var::Y => (0, 1),
        };
        p.add_term(exp, Rational::one());
        p
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (exp, c) in iter {
            p.add_term(exp, c);
        }
        p
    }

    /// Adds `c` to the coefficient of the given exponent, dropping the entry
    /// if it cancels to zero.
    pub fn add_term(&mut self, exp: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, with −1 as the zero-polynomial sentinel.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|&(i, j)| (i + j) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, v: Var) -> i64 {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i as i64,
                Var::Y => j as i64,
            })
            .max()
            .unwrap_or(-1)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= 0
    }

    /// The value as a rational when the polynomial has degree ≤ 0.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }

    /// Leading term under graded-lex.
    pub fn leading_term(&self) -> Option<((u32, u32), &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(*a.0, *b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let e = (
                    i1.checked_add(i2).expect("exponent overflow"),
                    j1.checked_add(j2).expect("exponent overflow"),
                );
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact formal partial derivative.
    pub fn partial_derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => out.add_term((i - 1, j), c * Rational::from_integer(i.into())),
                Var::Y if j > 0 => out.add_term((i, j - 1), c * Rational::from_integer(j.into())),
                _ => {}
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in y over Horner-in-x rows.
        let rows = self.rows_by_y_power();
        let mut acc = Rational::zero();
        let mut prev_j: Option<u32> = None;
        for (j, row) in rows.iter().rev() {
            if let Some(pj) = prev_j {
                for _ in 0..(pj - j) {
                    acc *= y;
                }
            }
            acc += horner_rational(row, x);
            prev_j = Some(*j);
        }
        if let Some(pj) = prev_j {
            for _ in 0..pj {
                acc *= y;
            }
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let coeffs = self.substitute_x_complex(x);
        horner_complex(&coeffs, y)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.eval_complex(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).re
    }

    /// Coefficients of the powers of `y` after substituting a complex `x`,
    /// ascending. Index k holds the coefficient of y^k.
    pub fn substitute_x_complex(&self, x: Complex64) -> Vec<Complex64> {
        let deg_y = self.degree_in(Var::Y).max(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); deg_y + 1];
        if self.is_zero() {
            return vec![Complex64::new(0.0, 0.0)];
        }
        for (j, row) in self.rows_by_y_power() {
            // Sparse Horner over x; row is ascending in i.
            let mut acc = Complex64::new(0.0, 0.0);
            let mut prev: Option<u32> = None;
            for (i, c) in row.iter().rev() {
                if let Some(p) = prev {
                    acc *= x.powu(p - i);
                }
                acc += Complex64::new(rational_to_f64(c), 0.0);
                prev = Some(*i);
            }
            if let Some(p) = prev {
                acc *= x.powu(p);
            }
            out[j as usize] = acc;
        }
        out
    }

    fn rows_by_y_power(&self) -> Vec<(u32, Vec<(u32, Rational)>)> {
        let mut rows: BTreeMap<u32, Vec<(u32, Rational)>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            rows.entry(j).or_default().push((i, c.clone()));
        }
        rows.into_iter().collect()
    }

    /// Coefficients in `v`, ascending; each coefficient is a polynomial in the
    /// other variable.
    pub fn coeffs_in(&self, v: Var) -> Vec<BivariatePoly> {
        let deg = self.degree_in(v);
        if deg < 0 {
            return vec![BivariatePoly::zero()];
        }
        let mut out = vec![BivariatePoly::zero(); deg as usize + 1];
        for (&(i, j), c) in &self.terms {
            let (k, rest) = match v {
                Var::X => (i, (0, j)),
                Var::Y => (j, (i, 0)),
            };
            out[k as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Rational coefficients ascending in `v`, when the polynomial involves
    /// only that variable.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<Rational>> {
        let other = match v {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        if self.degree_in(other) > 0 {
            return None;
        }
        Some(
            self.coeffs_in(v)
                .into_iter()
                .map(|p| p.coeff(0, 0))
                .collect(),
        )
    }

    /// Largest coefficient magnitude; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Exactly rescales so the largest coefficient magnitude is 1, then maps
    /// to f64. Term order is the map order, so the result is deterministic.
    pub fn normalized_f64_terms(&self) -> Vec<(u32, u32, f64)> {
        let m = self.max_abs_coeff();
        if m.is_zero() {
            return Vec::new();
        }
        self.terms
            .iter()
            .map(|(&(i, j), c)| (i, j, rational_to_f64(&(c / &m))))
            .collect()
    }

    /// Exact rescale of every coefficient by 1/max|coeff|.
    pub fn normalized(&self) -> Self {
        let m = self.max_abs_coeff();
        if m.is_zero() {
            return Self::zero();
        }
        let inv = Rational::one() / m;
        self.scale(&inv)
    }

    /// Single-divisor division with remainder under graded-lex.
    ///
    /// Returns (q, r) with `self = q·f + r` and no term of `r` divisible by
    /// the leading monomial of `f`. For a single divisor the remainder is
    /// unique and r = 0 iff f divides self.
    pub fn div_rem(&self, f: &Self) -> Result<(Self, Self)> {
        let ((fi, fj), fc) = f.leading_term().ok_or(Error::DivisorZero)?;
        let fc = fc.clone();
        let mut p = self.clone();
        let mut q = Self::zero();
        let mut r = Self::zero();
        while let Some(((pi, pj), pc)) = p.leading_term() {
            let pc = pc.clone();
            if pi >= fi && pj >= fj {
                let exp = (pi - fi, pj - fj);
                let coef = &pc / &fc;
                let m = Self::monomial(exp.0, exp.1, coef.clone());
                q.add_term(exp, coef);
                p = p.sub(&m.mul(f));
            } else {
                r.add_term((pi, pj), pc.clone());
                p.terms.remove(&(pi, pj));
            }
        }
        Ok((q, r))
    }

    /// The quotient when `f` divides `self` exactly, `None` otherwise.
    pub fn exact_divide(&self, f: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(f)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Multiplies each monomial by z^(d−i−j).
    pub fn homogenize(&self) -> Result<TrivariatePoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree() as u32;
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((i, j, d - i - j), c.clone()));
        TrivariatePoly::from_terms(terms)
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical form: graded-lex descending, explicit `*` between factors,
/// e.g. `x^2 + y^2 - 1` or `1/2*x*y^3`.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&(u32, u32), &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(*b.0, *a.0));
        for (idx, (&(i, j), c)) in terms.iter().enumerate() {
            let neg = is_negative(c);
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn horner_rational(row: &[(u32, Rational)], x: &Rational) -> Rational {
    // row ascending in exponent.
    let mut acc = Rational::zero();
    let mut prev: Option<u32> = None;
    for (i, c) in row.iter().rev() {
        if let Some(p) = prev {
            for _ in 0..(p - i) {
                acc *= x;
            }
        }
        acc += c;
        prev = Some(*i);
    }
    if let Some(p) = prev {
        for _ in 0..p {
            acc *= x;
        }
    }
    acc
}

pub(crate) fn horner_complex(coeffs_ascending: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs_ascending.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Homogeneous sparse polynomial in x, y, z over the rationals.
///
/// Invariant: every monomial has the same total degree; no zero coefficients.
/// The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TrivariatePoly {
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl TrivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32, u32), Rational)>>(
        iter: I,
    ) -> Result<Self> {
        let mut p = Self::zero();
        let mut degree: Option<u32> = None;
        for ((i, j, k), c) in iter {
            if c.is_zero() {
                continue;
            }
            let d = i + j + k;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::DegenerateInput(format!(
                        "not homogeneous: monomial degrees {d0} and {d}"
                    )))
                }
                _ => {}
            }
            p.add_term_unchecked((i, j, k), c);
        }
        Ok(p)
    }

    fn add_term_unchecked(&mut self, exp: (u32, u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// Common total degree, −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .next()
            .map(|&(i, j, k)| (i + j + k) as i64)
            .unwrap_or(-1)
    }

    pub fn partial_derivative(&self, v: ProjVar) -> Self {
        let mut out = Self::zero();
        for (&(i, j, k), c) in &self.terms {
            let (exp, mult) = match v {
                ProjVar::X if i > 0 => ((i - 1, j, k), i),
                ProjVar::Y if j > 0 => ((i, j - 1, k), j),
                ProjVar::Z if k > 0 => ((i, j, k - 1), k),
                _ => continue,
            };
            out.add_term_unchecked(exp, c * Rational::from_integer(mult.into()));
        }
        out
    }

    /// Sets z = 1.
    pub fn dehomogenize(&self) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j, _), c) in &self.terms {
            out.add_term((i, j), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (*e, c.clone()))
                .chain(other.terms.iter().map(|(e, c)| (*e, c.clone()))),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1, k1), c1) in &self.terms {
            for (&(i2, j2, k2), c2) in &other.terms {
                out.add_term_unchecked((i1 + i2, j1 + j2, k1 + k2), c1 * c2);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn eval_complex(&self, p: [Complex64; 3]) -> Complex64 {
        let m = self.max_abs_coeff();
        if m.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let mf = rational_to_f64(&m);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j, k), c) in &self.terms {
            let cf = rational_to_f64(&(c / &m));
            acc += Complex64::new(cf, 0.0) * p[0].powu(i) * p[1].powu(j) * p[2].powu(k);
        }
        acc * Complex64::new(mf, 0.0)
    }

    /// Evaluation of the max-coefficient-normalized polynomial; the natural
    /// scale for residual thresholds.
    pub fn eval_normalized(&self, p: [Complex64; 3]) -> Complex64 {
        let m = self.max_abs_coeff();
        if m.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j, k), c) in &self.terms {
            let cf = rational_to_f64(&(c / &m));
            acc += Complex64::new(cf, 0.0) * p[0].powu(i) * p[1].powu(j) * p[2].powu(k);
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Substitutes the linear change of coordinates v ↦ M·v, returning
    /// self ∘ M.
    pub fn substitute_linear(&self, m: &[[Rational; 3]; 3]) -> Self {
        let d = match self.degree() {
            d if d < 0 => return Self::zero(),
            d => d as u32,
        };
        let lin = |row: usize| -> Self {
            let mut p = Self::zero();
            p.add_term_unchecked((1, 0, 0), m[row][0].clone());
            p.add_term_unchecked((0, 1, 0), m[row][1].clone());
            p.add_term_unchecked((0, 0, 1), m[row][2].clone());
            p
        };
        let (lx, ly, lz) = (lin(0), lin(1), lin(2));
        let powers = |base: &Self| -> Vec<Self> {
            let mut v = Vec::with_capacity(d as usize + 1);
            let mut one = Self::zero();
            one.add_term_unchecked((0, 0, 0), Rational::one());
            v.push(one);
            for _ in 0..d {
                let next = v.last().unwrap().mul(base);
                v.push(next);
            }
            v
        };
        let (px, py, pz) = (powers(&lx), powers(&ly), powers(&lz));
        let mut out = Self::zero();
        for (&(i, j, k), c) in &self.terms {
            let prod = px[i as usize].mul(&py[j as usize]).mul(&pz[k as usize]);
            for (&e, v) in &prod.terms {
                out.add_term_unchecked(e, v * c);
            }
        }
        out
    }
}

impl fmt::Debug for TrivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})x^{i}y^{j}z^{k}")?;
            first = false;
        }
        Ok(())
    }
}
