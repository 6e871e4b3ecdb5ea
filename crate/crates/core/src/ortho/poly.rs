use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Result;
use crate::field::FieldElement;

/// What the indeterminate of a [`Poly`] stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    /// Polynomials in X = x², as the Wilson and continuous dual Hahn families are stored.
    XSquared,
    Z,
}

/// Dense univariate polynomial; `coeffs[k]` multiplies the k-th power.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
    var: Var,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>, var: Var) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        Poly { coeffs: Vec::new(), var }
    }

    pub fn constant(c: FieldElement, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(FieldElement::one(), var)
    }

    /// c + d·t
    pub fn linear(c: FieldElement, d: FieldElement, var: Var) -> Self {
        Self::new(vec![c, d], var)
    }

    /// The indeterminate itself.
    pub fn variable(var: Var) -> Self {
        Self::linear(FieldElement::zero(), FieldElement::one(), var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.var)
    }

    pub fn eval(&self, t: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * t + c;
        }
        acc
    }

    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(FieldElement::to_complex).collect()
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        horner(&self.complex_coeffs(), t)
    }

    /// p(a·t + c), same variable tag.
    pub fn compose_linear(&self, a: &FieldElement, c: &FieldElement) -> Self {
        let lin = Poly::linear(c.clone(), a.clone(), self.var);
        let mut acc = Poly::zero(self.var);
        for coef in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(coef.clone(), self.var);
        }
        acc
    }

    /// Rewrites a polynomial in X = x² as a polynomial in x (degrees double).
    pub fn x_squared_to_x(&self) -> Self {
        assert_eq!(self.var, Var::XSquared);
        let mut coeffs = vec![FieldElement::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Self::new(coeffs, Var::X)
    }

    /// Synthetic division by (t − a): returns (quotient, remainder).
    pub fn div_linear(&self, a: &FieldElement) -> (Poly, FieldElement) {
        if self.coeffs.is_empty() {
            return (Poly::zero(self.var), FieldElement::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![FieldElement::zero(); n - 1];
        let mut carry = FieldElement::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * a);
            if k == 0 {
                return (Poly::new(quot, self.var), v);
            }
            quot[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Poly {
        assert_eq!(self.var, other.var, "variable mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = FieldElement::zero();
        let coeffs = (0..n)
            .map(|k| f(self.coeffs.get(k).unwrap_or(&zero), other.coeffs.get(k).unwrap_or(&zero)))
            .collect();
        Poly::new(coeffs, self.var)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }
}

pub(crate) fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.var);
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out, self.var)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.var {
            Var::X => "x",
            Var::XSquared => "X",
            Var::Z => "z",
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})·{name}^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Sparse Laurent polynomial in z. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, FieldElement>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(FieldElement::one(), 0)
    }

    pub fn monomial(c: FieldElement, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, FieldElement)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn coeff(&self, e: i64) -> FieldElement {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Multiplies by z^shift.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, x)| (e + shift, x.clone())).collect() }
    }

    /// p(z) ↦ p(1/z).
    pub fn reflect(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, x)| (-e, x.clone())).collect() }
    }

    pub fn map_coeffs<F: FnMut(&FieldElement) -> FieldElement>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, x)| (e, f(x))))
    }

    pub fn eval(&self, z: &FieldElement) -> Result<FieldElement> {
        let mut acc = FieldElement::zero();
        for (&e, c) in &self.terms {
            acc += c * &z.powi(e)?;
        }
        Ok(acc)
    }

    pub fn complex_terms(&self) -> Vec<(i64, Complex64)> {
        self.terms.iter().map(|(&e, c)| (e, c.to_complex())).collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        eval_complex_terms(&self.complex_terms(), z)
    }

    /// Position of z^e in the sequence 1, z, z⁻¹, z², z⁻², …
    pub fn laurent_position(e: i64) -> usize {
        if e > 0 {
            (2 * e - 1) as usize
        } else {
            (-2 * e) as usize
        }
    }

    /// Supported on the first k+1 terms of 1, z, z⁻¹, z², … with unit
    /// coefficient on the (k+1)st.
    pub fn is_monic_laurent(&self, k: usize) -> bool {
        let within = self.terms.keys().all(|&e| Self::laurent_position(e) <= k);
        let lead = if k % 2 == 1 { (k as i64 + 1) / 2 } else { -(k as i64) / 2 };
        within && self.coeff(lead).is_one()
    }
}

pub(crate) fn eval_complex_terms(terms: &[(i64, Complex64)], z: Complex64) -> Complex64 {
    terms.iter().map(|&(e, c)| c * z.powi(e as i32)).sum()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})·z^{e}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn trims_and_degrees() {
        let p = Poly::new(vec![fe(1), fe(2), fe(0)], Var::X);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::zero(Var::X).degree(), None);
    }

    #[test]
    fn synthetic_division() {
        // (x² − 1) / (x − 1) = x + 1
        let p = Poly::new(vec![fe(-1), fe(0), fe(1)], Var::X);
        let (q, r) = p.div_linear(&fe(1));
        assert!(r.is_zero());
        assert_eq!(q, Poly::new(vec![fe(1), fe(1)], Var::X));
        let (_, r) = p.div_linear(&fe(2));
        assert_eq!(r, fe(3));
    }

    #[test]
    fn compose_linear_shifts() {
        // (x²)(2x + 1) = 4x² + 4x + 1
        let p = Poly::new(vec![fe(0), fe(0), fe(1)], Var::X);
        let q = p.compose_linear(&fe(2), &fe(1));
        assert_eq!(q, Poly::new(vec![fe(1), fe(4), fe(4)], Var::X));
    }

    #[test]
    fn x_squared_conversion() {
        let p = Poly::new(vec![fe(3), fe(5)], Var::XSquared);
        let q = p.x_squared_to_x();
        assert_eq!(q, Poly::new(vec![fe(3), fe(0), fe(5)], Var::X));
        assert_eq!(q.eval(&fe(2)), p.eval(&fe(4)));
    }

    #[test]
    fn laurent_arithmetic() {
        let a = LaurentPoly::from_terms([(1, fe(1)), (-1, fe(1))]);
        let sq = &a * &a;
        assert_eq!(sq, LaurentPoly::from_terms([(2, fe(1)), (0, fe(2)), (-2, fe(1))]));
        assert_eq!(a.reflect(), a);
        assert!((&a - &a).is_zero());
        assert_eq!(sq.eval(&fe(2)).unwrap(), FieldElement::frac(25, 4));
    }

    #[test]
    fn laurent_monic_positions() {
        assert_eq!(LaurentPoly::laurent_position(0), 0);
        assert_eq!(LaurentPoly::laurent_position(1), 1);
        assert_eq!(LaurentPoly::laurent_position(-1), 2);
        assert_eq!(LaurentPoly::laurent_position(2), 3);
        // degree 2: span{1, z, z⁻¹} with unit z⁻¹ coefficient
        let p = LaurentPoly::from_terms([(1, fe(5)), (0, fe(3)), (-1, fe(1))]);
        assert!(p.is_monic_laurent(2));
        assert!(!p.is_monic_laurent(1));
        assert!(!p.is_monic_laurent(3));
    }
}
