//! Truncated q-series with Laurent-polynomial coefficients in z, and the
//! quintuple and triple product expansions built from them.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldElement as Fe;
use crate::ortho::LaurentPoly;
use crate::par::Exec;

/// Σ_{k=0}^{K} a_k(z) q^k, exact modulo q^{K+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedQSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedQSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedQSeries { coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(LaurentPoly::one(), order)
    }

    pub fn constant(c: LaurentPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// c z^j q^e, or zero when e exceeds the order.
    pub fn monomial(c: Fe, j: i64, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = LaurentPoly::monomial(c, j);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape("a series needs at least the q^0 coefficient".into()));
        }
        Ok(TruncatedQSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Adds c z^j q^e in place; ignored beyond the order.
    pub fn add_term(&mut self, c: &Fe, j: i64, e: usize) {
        if e <= self.order() {
            self.coeffs[e].add_term(j, c);
        }
    }

    pub fn scale(&self, c: &Fe) -> Self {
        TruncatedQSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiplies every coefficient by a Laurent polynomial in z.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        TruncatedQSeries { coeffs: self.coeffs.iter().map(|a| a * p).collect() }
    }

    /// In-place multiplication by 1 − c z^j q^e.
    fn mul_binomial(&mut self, c: &Fe, j: i64, e: usize) {
        let k = self.order();
        if e > k {
            return;
        }
        if e == 0 {
            let f = &LaurentPoly::one() - &LaurentPoly::monomial(c.clone(), j);
            for a in &mut self.coeffs {
                *a = &*a * &f;
            }
            return;
        }
        for i in (e..=k).rev() {
            let t = self.coeffs[i - e].shift(j).scale(c);
            self.coeffs[i] = &self.coeffs[i] - &t;
        }
    }

    /// Product with an explicit execution strategy over output orders.
    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        let k = self.order().min(other.order());
        let orders: Vec<usize> = (0..=k).collect();
        let coeffs = exec.map(&orders, |&i| {
            let mut acc = LaurentPoly::zero();
            for a in 0..=i {
                if self.coeffs[a].is_zero() || other.coeffs[i - a].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[a] * &other.coeffs[i - a]);
            }
            acc
        });
        TruncatedQSeries { coeffs }
    }

    /// Largest |exponent of z| over all coefficients.
    pub fn z_width(&self) -> i64 {
        self.coeffs
            .iter()
            .filter_map(|p| Some(p.min_exp()?.abs().max(p.max_exp()?.abs())))
            .max()
            .unwrap_or(0)
    }

    /// First order at which two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let k = self.order().min(other.order());
        (0..=k).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl Add for &TruncatedQSeries {
    type Output = TruncatedQSeries;
    fn add(self, rhs: Self) -> TruncatedQSeries {
        let k = self.order().min(rhs.order());
        TruncatedQSeries { coeffs: (0..=k).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &TruncatedQSeries {
    type Output = TruncatedQSeries;
    fn sub(self, rhs: Self) -> TruncatedQSeries {
        let k = self.order().min(rhs.order());
        TruncatedQSeries { coeffs: (0..=k).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Neg for &TruncatedQSeries {
    type Output = TruncatedQSeries;
    fn neg(self) -> TruncatedQSeries {
        TruncatedQSeries { coeffs: self.coeffs.iter().map(|p| -p).collect() }
    }
}

impl Mul for &TruncatedQSeries {
    type Output = TruncatedQSeries;
    fn mul(self, rhs: Self) -> TruncatedQSeries {
        self.mul_with(rhs, Exec::default())
    }
}

/// One infinite product (c z^j q^d; q^step)_∞.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub c: Fe,
    pub d: usize,
    pub j: i64,
}

impl Factor {
    pub fn new(c: Fe, d: usize, j: i64) -> Self {
        Factor { c, d, j }
    }
}

/// ∏_factors ∏_{k≥0} (1 − c q^{d+step·k} z^j) modulo q^{K+1}.
pub fn series_product(factors: &[Factor], step: usize, order: usize) -> Result<TruncatedQSeries> {
    if step == 0 {
        return Err(Error::Shape("step must be positive".into()));
    }
    let mut s = TruncatedQSeries::one(order);
    for f in factors {
        let mut e = f.d;
        while e <= order {
            s.mul_binomial(&f.c, f.j, e);
            e += step;
        }
    }
    Ok(s)
}

fn prod(factors: &[(Fe, usize, i64)], step: usize, order: usize) -> TruncatedQSeries {
    let fs: Vec<Factor> = factors.iter().map(|(c, d, j)| Factor::new(c.clone(), *d, *j)).collect();
    series_product(&fs, step, order).expect("step is positive")
}

fn one() -> Fe {
    Fe::one()
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// (q³;q³)_∞ (z², z⁻²; q³)_∞.
pub fn wq_lhs(order: usize) -> TruncatedQSeries {
    let a = prod(&[(one(), 3, 0)], 3, order);
    let b = prod(&[(one(), 0, 2), (one(), 0, -2)], 3, order);
    &a * &b
}

/// (1+z)(z, z⁻¹; q³)_∞ · (1−ω)/3 · (q;q)_∞ · [(qzω, ω²/z; q)_∞ − ω²(qzω², ω/z; q)_∞].
/// With `poisoned` the ω² term is dropped.
pub fn wq_rhs(order: usize, poisoned: bool) -> TruncatedQSeries {
    let w = Fe::omega();
    let w2 = &w * &w;
    let one_plus_z = LaurentPoly::from_terms([(0, one()), (1, one())]);
    let zz = prod(&[(one(), 0, 1), (one(), 0, -1)], 3, order).mul_laurent(&one_plus_z);
    let qq = prod(&[(one(), 1, 0)], 1, order).scale(&((one() - &w) / Fe::from_int(3)));
    let first = prod(&[(w.clone(), 1, 1), (w2.clone(), 0, -1)], 1, order);
    let bracket = if poisoned {
        first
    } else {
        let second = prod(&[(w2.clone(), 1, 1), (w.clone(), 0, -1)], 1, order).scale(&w2);
        &first - &second
    };
    &(&zz * &qq) * &bracket
}

/// Cross-multiplied quintuple-product lemma modulo q^{K+1}.
pub fn wq_check(order: usize) -> bool {
    wq_lhs(order) == wq_rhs(order, false)
}

/// The negative control: must differ from the left side.
pub fn wq_check_poisoned(order: usize) -> bool {
    wq_lhs(order) == wq_rhs(order, true)
}

/// Σ_n (−1)^n q^{C(3n,2)} z^{3n−1}(1 + z q^{3n}), truncated.
pub fn la_sum(order: usize) -> TruncatedQSeries {
    let mut s = TruncatedQSeries::zero(order);
    let k = order as i64;
    for n in -k - 1..=k + 1 {
        let sign = if n % 2 == 0 { one() } else { Fe::from_int(-1) };
        let e = binom2(3 * n);
        if (0..=k).contains(&e) {
            s.add_term(&sign, 3 * n - 1, e as usize);
        }
        let e2 = e + 3 * n;
        if (0..=k).contains(&e2) {
            s.add_term(&sign, 3 * n, e2 as usize);
        }
    }
    s
}

/// (1−ω)/3 Σ_n (−1)^n q^{C(n+1,2)} z^n (ω^n − ω^{2n+2}), truncated.
pub fn lb_sum(order: usize) -> TruncatedQSeries {
    let w = Fe::omega();
    let pre = (one() - &w) / Fe::from_int(3);
    let mut s = TruncatedQSeries::zero(order);
    let k = order as i64;
    for n in -k - 2..=k + 1 {
        let e = binom2(n + 1);
        if !(0..=k).contains(&e) {
            continue;
        }
        let sign = if n % 2 == 0 { one() } else { Fe::from_int(-1) };
        let c = sign * &pre * (w.powi(n).expect("ω is a unit") - w.powi(2 * n + 2).expect("ω is a unit"));
        s.add_term(&c, n, e as usize);
    }
    s
}

/// (q³;q³)_∞ · z⁻¹(−z, −q³/z; q³)_∞ (q³z², q³/z²; q⁶)_∞.
pub fn la_product_side(order: usize) -> TruncatedQSeries {
    let m1 = Fe::from_int(-1);
    let a = prod(&[(one(), 3, 0), (m1.clone(), 0, 1), (m1, 3, -1)], 3, order);
    let b = prod(&[(one(), 3, 2), (one(), 3, -2)], 6, order);
    (&a * &b).mul_laurent(&LaurentPoly::monomial(one(), -1))
}

/// (1−ω)/3 (q;q)_∞ [(qzω, ω²/z; q)_∞ − ω²(qzω², ω/z; q)_∞].
pub fn lb_product_side(order: usize) -> TruncatedQSeries {
    let w = Fe::omega();
    let w2 = &w * &w;
    let qq = prod(&[(one(), 1, 0)], 1, order).scale(&((one() - &w) / Fe::from_int(3)));
    let first = prod(&[(w.clone(), 1, 1), (w2.clone(), 0, -1)], 1, order);
    let second = prod(&[(w2.clone(), 1, 1), (w, 0, -1)], 1, order).scale(&w2);
    &qq * &(&first - &second)
}

/// Both bilateral expansions against their product sides, and against each other.
pub fn laurent_expansions_check(order: usize) -> bool {
    let la = la_sum(order);
    let lb = lb_sum(order);
    la == lb && la == la_product_side(order) && lb == lb_product_side(order)
}

/// Jacobi triple product (q, x, q/x; q)_∞ = Σ (−1)^n q^{C(n,2)} x^n at x = ω²/z.
pub fn triple_product_check(order: usize) -> bool {
    let w = Fe::omega();
    let w2 = &w * &w;
    let lhs = prod(&[(one(), 1, 0), (w.clone(), 1, 1), (w2.clone(), 0, -1)], 1, order);
    let mut rhs = TruncatedQSeries::zero(order);
    let k = order as i64;
    for n in -k - 1..=k + 1 {
        let e = binom2(n);
        if (0..=k).contains(&e) {
            let sign = if n % 2 == 0 { one() } else { Fe::from_int(-1) };
            rhs.add_term(&(sign * w2.powi(n).expect("ω is a unit")), -n, e as usize);
        }
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Fe::from_int(c))))
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(series_product(&[], 1, 5).unwrap(), TruncatedQSeries::one(5));
    }

    #[test]
    fn truncation_keeps_only_low_factors() {
        let s = series_product(&[Factor::new(one(), 0, 1)], 3, 2).unwrap();
        assert_eq!(s, TruncatedQSeries::constant(lp(&[(0, 1), (1, -1)]), 2));
    }

    #[test]
    fn euler_pentagonal() {
        let s = series_product(&[Factor::new(one(), 1, 0)], 1, 5).unwrap();
        let want: Vec<i64> = vec![1, -1, -1, 0, 0, 1];
        for (k, w) in want.into_iter().enumerate() {
            assert_eq!(s.coeff(k), &lp(&[(0, w)]), "q^{k}");
        }
    }

    #[test]
    fn zero_step_rejected() {
        assert!(series_product(&[], 0, 3).is_err());
    }

    #[test]
    fn order_zero_coefficient() {
        let l = wq_lhs(0);
        let r = wq_rhs(0, false);
        assert_eq!(l.coeff(0), r.coeff(0));
        assert_eq!(l.coeff(0), &lp(&[(-2, -1), (0, 2), (2, -1)]));
    }

    #[test]
    fn lemma_holds_to_order_30() {
        assert!(wq_check(30));
    }

    #[test]
    fn poisoned_lemma_fails_early() {
        let l = wq_lhs(2);
        let r = wq_rhs(2, true);
        assert!(l.first_difference(&r).is_some_and(|k| k <= 2));
        assert!(!wq_check_poisoned(30));
    }

    #[test]
    fn width_grows_linearly() {
        let l = wq_lhs(30);
        for k in [5, 10, 20, 30] {
            let t = TruncatedQSeries::from_coeffs(l.coeffs()[..=k].to_vec()).unwrap();
            assert!(t.z_width() <= 2 * k as i64 + 2, "order {k}");
        }
    }

    #[test]
    fn la_leading_term() {
        let s = la_sum(0);
        assert_eq!(s.coeff(0), &lp(&[(-1, 1), (0, 1)]));
    }

    #[test]
    fn expansions_agree_to_order_20() {
        assert!(laurent_expansions_check(20));
    }

    #[test]
    fn literal_minus_q_over_z_is_not_the_quintuple_side() {
        let m1 = Fe::from_int(-1);
        let a = prod(&[(one(), 3, 0), (m1.clone(), 0, 1), (m1, 1, -1)], 3, 6);
        let b = prod(&[(one(), 3, 2), (one(), 3, -2)], 6, 6);
        let lit = (&a * &b).mul_laurent(&LaurentPoly::monomial(one(), -1));
        assert_ne!(lit, la_sum(6));
    }

    #[test]
    fn triple_product_to_order_20() {
        assert!(triple_product_check(20));
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = wq_lhs(12);
        let b = wq_rhs(12, false);
        assert_eq!(a.mul_with(&b, Exec::Sequential), a.mul_with(&b, Exec::Parallel));
    }
}
