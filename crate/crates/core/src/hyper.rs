//! Pochhammer symbols, q-shifted factorials and terminating (q-)hypergeometric sums.
//!
//! Termination is never inferred from parameter values. A terminating sum
//! carries its witnesses explicitly: `neg_int` holds the m's of numerator
//! parameters −m (ordinary case), `q_powers` the m's of numerator
//! parameters q^{−m} (basic case). The series stops at the smallest one.

use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Rising factorial (a)_n = a(a+1)⋯(a+n−1).
pub fn pochhammer(a: &FieldElement, n: usize) -> FieldElement {
    let mut acc = FieldElement::one();
    let mut factor = a.clone();
    let one = FieldElement::one();
    for _ in 0..n {
        acc = &acc * &factor;
        factor = &factor + &one;
    }
    acc
}

/// q-shifted factorial (a;q)_n = ∏_{k<n} (1 − a q^k).
pub fn q_pochhammer(a: &FieldElement, q: &FieldElement, n: usize) -> FieldElement {
    let one = FieldElement::one();
    let mut acc = FieldElement::one();
    let mut aqk = a.clone();
    for k in 0..n {
        acc = &acc * &(&one - &aqk);
        if k + 1 < n {
            aqk = &aqk * q;
        }
    }
    acc
}

/// (a₁, …, a_r; q)_n = ∏_j (a_j; q)_n.
pub fn q_pochhammer_multi(a: &[FieldElement], q: &FieldElement, n: usize) -> FieldElement {
    a.iter().map(|x| q_pochhammer(x, q, n)).product()
}

/// (a;q)_n for any integer n, with (a;q)_{−n} = 1/(a q^{−n}; q)_n.
pub fn q_pochhammer_signed(a: &FieldElement, q: &FieldElement, n: i64) -> Result<FieldElement> {
    if n >= 0 {
        return Ok(q_pochhammer(a, q, n as usize));
    }
    let shifted = a * &q.powi(n)?;
    q_pochhammer(&shifted, q, (-n) as usize).invert()
}

pub fn factorial(n: usize) -> FieldElement {
    pochhammer(&FieldElement::one(), n)
}

/// Generalized binomial coefficient binom(x, n) = (x−n+1)_n / n!.
pub fn binomial(x: &FieldElement, n: usize) -> FieldElement {
    let start = x - &FieldElement::from_int(n as i64) + FieldElement::one();
    pochhammer(&start, n).div_exact(&factorial(n))
}

/// A terminating ordinary hypergeometric series
/// Σ_k [∏(−m_i)_k ∏(a)_k / ∏(d)_k] z^k / k!.
#[derive(Clone, Debug)]
pub struct HypSpec {
    /// m's of the numerator parameters −m (termination witnesses).
    pub neg_int: Vec<usize>,
    /// The remaining numerator parameters.
    pub numerator: Vec<FieldElement>,
    pub denominator: Vec<FieldElement>,
    pub argument: FieldElement,
}

impl HypSpec {
    pub fn new(
        neg_int: Vec<usize>,
        numerator: Vec<FieldElement>,
        denominator: Vec<FieldElement>,
        argument: FieldElement,
    ) -> Self {
        HypSpec { neg_int, numerator, denominator, argument }
    }

    /// ₂F₁(−m, −n; b; z).
    pub fn two_f_one(m: usize, n: usize, b: &FieldElement, z: &FieldElement) -> Self {
        HypSpec::new(vec![m, n], vec![], vec![b.clone()], z.clone())
    }

    fn last_index(&self) -> Result<usize> {
        self.neg_int
            .iter()
            .copied()
            .min()
            .ok_or_else(|| Error::Shape("terminating series needs a −m numerator witness".into()))
    }
}

/// The individual terms t_0, …, t_m of a terminating series.
pub fn hyp_terms(spec: &HypSpec) -> Result<Vec<FieldElement>> {
    let m = spec.last_index()?;
    let mut terms = Vec::with_capacity(m + 1);
    let mut term = FieldElement::one();
    terms.push(term.clone());
    for k in 0..m {
        let kk = FieldElement::from_int(k as i64);
        let mut num = spec.argument.clone();
        for &w in &spec.neg_int {
            num *= FieldElement::from_int(k as i64 - w as i64);
        }
        for a in &spec.numerator {
            num *= a + &kk;
        }
        if num.is_zero() {
            break;
        }
        let mut den = FieldElement::from_int(k as i64 + 1);
        for d in &spec.denominator {
            den *= d + &kk;
        }
        if den.is_zero() {
            return Err(Error::Pole { index: k, context: "hypergeometric denominator".into() });
        }
        term *= num.div_exact(&den);
        terms.push(term.clone());
    }
    Ok(terms)
}

pub fn hyp_terminating(spec: &HypSpec) -> Result<FieldElement> {
    Ok(hyp_terms(spec)?.into_iter().sum())
}

/// A terminating basic hypergeometric series
/// Σ_k [∏(q^{−m_i};q)_k ∏(a;q)_k / ∏(d;q)_k] z^k / (q;q)_k.
#[derive(Clone, Debug)]
pub struct QHypSpec {
    /// m's of the numerator parameters q^{−m} (termination witnesses).
    pub q_powers: Vec<usize>,
    pub numerator: Vec<FieldElement>,
    pub denominator: Vec<FieldElement>,
    pub base: FieldElement,
    pub argument: FieldElement,
}

impl QHypSpec {
    pub fn new(
        q_powers: Vec<usize>,
        numerator: Vec<FieldElement>,
        denominator: Vec<FieldElement>,
        base: FieldElement,
        argument: FieldElement,
    ) -> Self {
        QHypSpec { q_powers, numerator, denominator, base, argument }
    }

    fn last_index(&self) -> Result<usize> {
        self.q_powers
            .iter()
            .copied()
            .min()
            .ok_or_else(|| Error::Shape("terminating q-series needs a q^{−m} numerator witness".into()))
    }
}

/// Terms of a terminating q-series. No balance requirement: polynomial
/// builders feed only the z-independent parameters here.
pub fn qhyp_terms(spec: &QHypSpec) -> Result<Vec<FieldElement>> {
    let m = spec.last_index()?;
    let q = &spec.base;
    let one = FieldElement::one();
    let mut terms = Vec::with_capacity(m + 1);
    let mut term = FieldElement::one();
    terms.push(term.clone());
    let mut qk = FieldElement::one();
    for k in 0..m {
        let mut num = spec.argument.clone();
        for &w in &spec.q_powers {
            // 1 − q^{−w} q^k
            num *= &one - &q.powi(k as i64 - w as i64)?;
        }
        for a in &spec.numerator {
            num *= &one - &(a * &qk);
        }
        if num.is_zero() {
            break;
        }
        let qk1 = &qk * q;
        let mut den = &one - &qk1;
        for d in &spec.denominator {
            den *= &one - &(d * &qk);
        }
        if den.is_zero() {
            return Err(Error::Pole { index: k, context: "basic hypergeometric denominator".into() });
        }
        term *= num.div_exact(&den);
        terms.push(term.clone());
        qk = qk1;
    }
    Ok(terms)
}

/// Sum of a balanced-shape (r = s + 1) terminating ₍ᵣ₎φ₍ₛ₎.
pub fn qhyp_terminating(spec: &QHypSpec) -> Result<FieldElement> {
    let r = spec.q_powers.len() + spec.numerator.len();
    let s = spec.denominator.len();
    if r != s + 1 {
        return Err(Error::Shape(format!("expected r = s + 1, got r = {r}, s = {s}")));
    }
    Ok(qhyp_terms(spec)?.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::frac(n, d)
    }

    #[test]
    fn pochhammer_examples() {
        assert!(pochhammer(&FieldElement::omega(), 0).is_one());
        assert_eq!(pochhammer(&fe(1, 1), 3), fe(6, 1));
        assert!(pochhammer(&fe(-3, 1), 5).is_zero());
    }

    #[test]
    fn q_pochhammer_examples() {
        let a = fe(2, 7);
        let q = fe(1, 3);
        assert!(q_pochhammer(&a, &q, 0).is_one());
        assert_eq!(q_pochhammer(&a, &q, 1), fe(1, 1) - &a);
        let expect = (fe(1, 1) - &q) * (fe(1, 1) - &q * &q);
        assert_eq!(q_pochhammer(&q, &q, 2), expect);
    }

    #[test]
    fn signed_q_pochhammer() {
        let a = fe(3, 5);
        let q = fe(1, 2);
        // (a;q)_{-1} = 1/(1 − a/q)
        let expect = (fe(1, 1) - &a.div_exact(&q)).invert().unwrap();
        assert_eq!(q_pochhammer_signed(&a, &q, -1).unwrap(), expect);
        // (a;q)_{m+n} = (a;q)_m (aq^m;q)_n holds across negative m
        let lhs = q_pochhammer_signed(&a, &q, 1).unwrap();
        let rhs = q_pochhammer_signed(&a, &q, -2).unwrap()
            * q_pochhammer(&(&a * &q.powi(-2).unwrap()), &q, 3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_examples() {
        assert!(binomial(&fe(5, 3), 0).is_one());
        assert_eq!(binomial(&fe(4, 1), 2), fe(6, 1));
        // (b)_{m+n}/(n!(b)_m) = binom(b+m+n−1, n) at (b,m,n) = (2,1,2): both 6
        let b = fe(2, 1);
        let lhs = pochhammer(&b, 3).div_exact(&(factorial(2) * pochhammer(&b, 1)));
        let rhs = binomial(&(&b + &fe(2, 1)), 2);
        assert_eq!(lhs, fe(6, 1));
        assert_eq!(lhs, rhs);
        // with (b)_n in place of (b)_m the two sides differ (2 vs 6)
        let swapped = pochhammer(&b, 3).div_exact(&(factorial(2) * pochhammer(&b, 2)));
        assert_eq!(swapped, fe(2, 1));
    }

    #[test]
    fn two_f_one_examples() {
        // ₂F₁(−1,−1;2;1) = 1 + 1/2
        let s = HypSpec::two_f_one(1, 1, &fe(2, 1), &fe(1, 1));
        assert_eq!(hyp_terminating(&s).unwrap(), fe(3, 2));
        // terminates at k = 0
        let s = HypSpec::two_f_one(0, 4, &fe(7, 3), &FieldElement::omega());
        assert!(hyp_terminating(&s).unwrap().is_one());
        // Chu–Vandermonde at (m, n, b) = (2, 3, 5/2)
        let b = fe(5, 2);
        let s = HypSpec::two_f_one(2, 3, &b, &fe(1, 1));
        let cv = pochhammer(&b, 5).div_exact(&(pochhammer(&b, 2) * pochhammer(&b, 3)));
        assert_eq!(hyp_terminating(&s).unwrap(), cv);
    }

    #[test]
    fn pole_before_termination() {
        // ₂F₁(−3, 1; −1; 1): (−1)_2 = 0 while (−3)_2 ≠ 0
        let s = HypSpec::new(vec![3], vec![fe(1, 1)], vec![fe(-1, 1)], fe(1, 1));
        assert!(matches!(hyp_terminating(&s), Err(Error::Pole { index: 1, .. })));
        // numerator vanishes at the same k: allowed
        let s = HypSpec::new(vec![1], vec![], vec![fe(-1, 1)], fe(1, 1));
        assert_eq!(hyp_terminating(&s).unwrap(), fe(2, 1));
    }

    #[test]
    fn missing_witness_is_rejected() {
        let s = HypSpec::new(vec![], vec![fe(1, 1)], vec![fe(2, 1)], fe(1, 1));
        assert!(matches!(hyp_terminating(&s), Err(Error::Shape(_))));
    }

    #[test]
    fn qhyp_examples() {
        let q = fe(1, 2);
        // numerator q⁰ terminates at once
        let s = QHypSpec::new(vec![0], vec![fe(3, 1)], vec![fe(5, 1)], q.clone(), q.clone());
        assert!(qhyp_terminating(&s).unwrap().is_one());
        // ₂φ₁(q^{-1}, a; c; q, q) at (a, c, q) = (2, 3, 1/2), direct two-term sum
        let (a, c) = (fe(2, 1), fe(3, 1));
        let s = QHypSpec::new(vec![1], vec![a.clone()], vec![c.clone()], q.clone(), q.clone());
        let one = fe(1, 1);
        let t1 = (&one - &q.invert().unwrap()) * (&one - &a) * &q
            * ((&one - &c) * (&one - &q)).invert().unwrap();
        assert_eq!(qhyp_terminating(&s).unwrap(), &one + &t1);
    }

    #[test]
    fn qhyp_shape_error() {
        let q = fe(1, 2);
        let s = QHypSpec::new(vec![2], vec![], vec![fe(3, 1)], q.clone(), q);
        assert!(matches!(qhyp_terminating(&s), Err(Error::Shape(_))));
    }
}
