//! Exact constructions of the classical families used by the scaffolds:
//! Wilson, continuous dual Hahn, Meixner–Pollaczek, Askey–Wilson and the
//! Pastro-type Laurent polynomials, plus the Christoffel transform.

mod christoffel;
mod poly;

pub use christoffel::christoffel;
pub use poly::{LaurentPoly, Poly, Var};

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::hyper::{
    factorial, hyp_terms, pochhammer, q_pochhammer, q_pochhammer_multi, qhyp_terms, HypSpec, QHypSpec,
};

/// An angle φ = kπ/12, stored as k so that e^{iφ} = ζ^k exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Angle(pub i64);

impl Angle {
    pub const HALF_PI: Angle = Angle(6);

    /// p/q · π; fails unless 12p/q is an integer.
    pub fn from_pi_fraction(p: i64, q: i64) -> Result<Angle> {
        if q == 0 || (12 * p) % q != 0 {
            return Err(Error::Parse(format!("{p}π/{q} is not a multiple of π/12")));
        }
        Ok(Angle(12 * p / q))
    }

    pub fn radians(self) -> f64 {
        self.0 as f64 * std::f64::consts::PI / 12.0
    }

    pub fn exp_i(self) -> FieldElement {
        FieldElement::zeta_pow(self.0)
    }

    /// 2 sin φ = −i(ζ^k − ζ^{−k})
    pub fn two_sin(self) -> FieldElement {
        let d = FieldElement::zeta_pow(self.0) - FieldElement::zeta_pow(-self.0);
        -(FieldElement::i() * d)
    }

    /// 2 cos φ = ζ^k + ζ^{−k}
    pub fn two_cos(self) -> FieldElement {
        FieldElement::zeta_pow(self.0) + FieldElement::zeta_pow(-self.0)
    }

    pub fn tan(self) -> Result<FieldElement> {
        self.two_sin().checked_div(&self.two_cos())
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

/// ∏_{j<k} ((a+j)² + X) for k = 0..=n, as polynomials in X = x².
fn quadratic_products(a: &FieldElement, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Poly::one(Var::XSquared);
    out.push(acc.clone());
    for j in 0..n {
        let c = a + &fe(j as i64);
        acc = &acc * &Poly::linear(&c * &c, FieldElement::one(), Var::XSquared);
        out.push(acc.clone());
    }
    out
}

fn combine(terms: &[FieldElement], basis: &[Poly], var: Var) -> Poly {
    terms.iter().zip(basis).fold(Poly::zero(var), |acc, (t, b)| &acc + &b.scale(t))
}

/// W_n(x²; a1, a2, a3, a4) as a polynomial in X = x².
pub fn wilson(n: usize, a: &[FieldElement; 4]) -> Result<Poly> {
    let s = &a[0] + &a[1] + &a[2] + &a[3];
    let den = vec![&a[0] + &a[1], &a[0] + &a[2], &a[0] + &a[3]];
    let spec = HypSpec::new(vec![n], vec![&s + &fe(n as i64 - 1)], den.clone(), FieldElement::one());
    let terms = hyp_terms(&spec)?;
    let basis = quadratic_products(&a[0], terms.len().saturating_sub(1));
    let pre: FieldElement = den.iter().map(|d| pochhammer(d, n)).product();
    Ok(combine(&terms, &basis, Var::XSquared).scale(&pre))
}

/// h_n^W for the normalized Wilson measure.
pub fn wilson_norm(n: usize, a: &[FieldElement; 4]) -> Result<FieldElement> {
    if n == 0 {
        return Ok(FieldElement::one());
    }
    let s1 = &a[0] + &a[1] + &a[2] + &a[3] - fe(1);
    let mut num = &s1 * &factorial(n);
    for j in 0..4 {
        for k in j + 1..4 {
            num *= pochhammer(&(&a[j] + &a[k]), n);
        }
    }
    let den = (&s1 + &fe(2 * n as i64)) * pochhammer(&s1, n);
    num.checked_div(&den).map_err(|_| Error::Pole { index: n, context: "Wilson norm".into() })
}

/// S_n(x²; a1, a2, a3) as a polynomial in X = x².
pub fn cdh(n: usize, a: &[FieldElement; 3]) -> Result<Poly> {
    let den = vec![&a[0] + &a[1], &a[0] + &a[2]];
    let spec = HypSpec::new(vec![n], vec![], den.clone(), FieldElement::one());
    let terms = hyp_terms(&spec)?;
    let basis = quadratic_products(&a[0], terms.len().saturating_sub(1));
    let pre: FieldElement = den.iter().map(|d| pochhammer(d, n)).product();
    Ok(combine(&terms, &basis, Var::XSquared).scale(&pre))
}

pub fn cdh_norm(n: usize, a: &[FieldElement; 3]) -> FieldElement {
    factorial(n)
        * pochhammer(&(&a[0] + &a[1]), n)
        * pochhammer(&(&a[0] + &a[2]), n)
        * pochhammer(&(&a[1] + &a[2]), n)
}

/// P_n^{(λ)}(x; φ) as a polynomial in x.
pub fn mp(n: usize, lambda: &FieldElement, phi: Angle) -> Result<Poly> {
    let two_lambda = lambda + lambda;
    let arg = FieldElement::one() - FieldElement::zeta_pow(-2 * phi.0);
    let spec = HypSpec::new(vec![n], vec![], vec![two_lambda.clone()], arg);
    let terms = hyp_terms(&spec)?;
    // (λ + ix)_k expanded in x
    let mut basis = Vec::with_capacity(terms.len());
    let mut acc = Poly::one(Var::X);
    basis.push(acc.clone());
    for j in 1..terms.len() {
        let c = lambda + &fe(j as i64 - 1);
        acc = &acc * &Poly::linear(c, FieldElement::i(), Var::X);
        basis.push(acc.clone());
    }
    let pre = pochhammer(&two_lambda, n).div_exact(&factorial(n)) * FieldElement::zeta_pow(n as i64 * phi.0);
    Ok(combine(&terms, &basis, Var::X).scale(&pre))
}

pub fn mp_norm(n: usize, lambda: &FieldElement) -> FieldElement {
    pochhammer(&(lambda + lambda), n).div_exact(&factorial(n))
}

/// Right-hand side of the Meixner–Pollaczek connection formula taking
/// angle π/2 − φ to π/2 + φ.
pub fn mp_connection_rhs(n: usize, lambda: &FieldElement, phi: Angle) -> Result<Poly> {
    let two_lambda = lambda + lambda;
    let two_sin = phi.two_sin();
    let mut acc = Poly::zero(Var::X);
    for k in 0..=n {
        let coef = pochhammer(&fe(-(n as i64)), k).checked_div(&pochhammer(&two_lambda, k))?
            * two_sin.pow((n - k) as u32);
        acc = &acc + &mp(k, lambda, Angle::HALF_PI - phi)?.scale(&coef);
    }
    let sign = if n.is_multiple_of(2) { fe(1) } else { fe(-1) };
    Ok(acc.scale(&(sign * mp_norm(n, lambda))))
}

/// Expands both sides of the connection formula and compares them exactly.
pub fn mp_connection_check(n: usize, lambda: &FieldElement, phi: Angle) -> Result<bool> {
    Ok(mp(n, lambda, Angle::HALF_PI + phi)? == mp_connection_rhs(n, lambda, phi)?)
}

/// p_n((z+z⁻¹)/2; a1, a2, a3, a4 | q) as a Laurent polynomial in z.
pub fn askey_wilson(n: usize, a: &[FieldElement; 4], q: &FieldElement) -> Result<LaurentPoly> {
    let s = &a[0] * &a[1] * &a[2] * &a[3];
    let den = vec![&a[0] * &a[1], &a[0] * &a[2], &a[0] * &a[3]];
    let top = &s * &q.powi(n as i64 - 1)?;
    let spec = QHypSpec::new(vec![n], vec![top], den.clone(), q.clone(), q.clone());
    let terms = qhyp_terms(&spec)?;
    let one = FieldElement::one();
    let mut acc = LaurentPoly::zero();
    let mut basis = LaurentPoly::one();
    let mut aqj = a[0].clone();
    for (k, t) in terms.iter().enumerate() {
        if k > 0 {
            let f = LaurentPoly::from_terms([(0, &one + &(&aqj * &aqj)), (1, -&aqj), (-1, -&aqj)]);
            basis = &basis * &f;
            aqj = &aqj * q;
        }
        acc = &acc + &basis.scale(t);
    }
    let pre = q_pochhammer_multi(&den, q, n).checked_div(&a[0].pow(n as u32))?;
    Ok(acc.scale(&pre))
}

/// h_n^{AW} for the normalized Askey–Wilson measure.
pub fn askey_wilson_norm(n: usize, a: &[FieldElement; 4], q: &FieldElement) -> Result<FieldElement> {
    let s = &a[0] * &a[1] * &a[2] * &a[3];
    let sq = s.checked_div(q)?;
    let one = FieldElement::one();
    let mut num = (&one - &sq) * q_pochhammer(q, q, n);
    for j in 0..4 {
        for k in j + 1..4 {
            num *= q_pochhammer(&(&a[j] * &a[k]), q, n);
        }
    }
    let den = (&one - &(&s * &q.powi(2 * n as i64 - 1)?)) * q_pochhammer(&sq, q, n);
    num.checked_div(&den).map_err(|_| Error::Pole { index: n, context: "Askey–Wilson norm".into() })
}

/// P_n^{(a,b;q)} and its normalizing constant C_n.
pub fn pastro(n: usize, a: &FieldElement, b: &FieldElement, q: &FieldElement) -> Result<(LaurentPoly, FieldElement)> {
    let ab = a * b;
    let b_over_a = b.checked_div(a)?;
    let low = q.powi(1 - n as i64)?.checked_div(&ab)?;
    let arg = q.checked_div(b)?;
    let spec = QHypSpec::new(vec![n], vec![b_over_a.clone()], vec![low], q.clone(), arg);
    let terms = qhyp_terms(&spec)?;
    let shift = (n / 2) as i64;
    let p = LaurentPoly::from_terms(terms.into_iter().enumerate().map(|(k, t)| (k as i64 - shift, t)));
    let c = if n.is_multiple_of(2) {
        FieldElement::one()
    } else {
        (a.pow(n as u32) * q_pochhammer(&b_over_a, q, n))
            .checked_div(&q_pochhammer(&ab, q, n))
            .map_err(|_| Error::Pole { index: n, context: "(ab;q)_n in C_n".into() })?
    };
    Ok((p, c))
}

/// The norm h_n of P_n^{(a,b;q)} under μ_{a,b}.
pub fn pastro_norm(n: usize, a: &FieldElement, b: &FieldElement, q: &FieldElement) -> Result<FieldElement> {
    let half = n / 2;
    let half_up = n.div_ceil(2);
    let ab = a * b;
    let b_over_a = b.checked_div(a)?;
    let sign = if n.is_multiple_of(2) { fe(1) } else { fe(-1) };
    let num = sign
        * a.pow(2 * half as u32)
        * q_pochhammer_multi(&[q.clone(), b * b, b_over_a.clone()], q, n);
    let den = q_pochhammer(&ab, q, n) * q_pochhammer(&(&ab * q), q, 2 * half) * q_pochhammer(&b_over_a, q, 2 * half_up);
    num.checked_div(&den).map_err(|_| Error::Pole { index: n, context: "Pastro norm".into() })
}

/// Closed form of μ_{c,b}(P_m^{(a,b;q)} P_n^{(a,b;q)}).
///
/// With u = a/c the factor (u;q)_{hi} is moved inside the ₄φ₃ and
/// (u;q)_{hi}/(q^{1−hi}/u;q)_k rewritten as (u;q)_{hi−k} ∏_{j<k}(−u q^{hi−1−j}).
/// Every remaining u-dependent factor then has the form 1 − u q^e, so
/// vanishing factors cancel exactly between numerator and denominator and
/// the removable singularity at c = a evaluates to its limit.
pub fn pastro_pairing(
    m: usize,
    n: usize,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    q: &FieldElement,
) -> Result<FieldElement> {
    let lo = m / 2 + n / 2;
    let hi = m.div_ceil(2) + n.div_ceil(2);
    let one = FieldElement::one();
    let ab = a * b;
    let b2 = b * b;
    let u = a.checked_div(c)?;
    let pre_num = a.pow(lo as u32)
        * q_pochhammer(&b2, q, m)
        * q_pochhammer(&b2, q, n)
        * q_pochhammer(&q.checked_div(&u)?, q, lo);
    let pre_den = q_pochhammer(&ab, q, m)
        * q_pochhammer(&ab, q, n)
        * q_pochhammer(&(q * b * c), q, lo)
        * q_pochhammer(&b.checked_div(c)?, q, hi);
    let pre = pre_num.checked_div(&pre_den)?;
    let top = [q.powi(-(m as i64))?, q.powi(-(n as i64))?, ab.clone(), b.checked_div(a)?];
    let mut total = FieldElement::zero();
    for k in 0..=m.min(n) {
        let plain = (q_pochhammer_multi(&top, q, k) * q.pow(k as u32))
            .checked_div(&q_pochhammer_multi(&[q.clone(), b2.clone()], q, k))
            .map_err(|_| Error::Pole { index: k, context: "(q, b²; q)_k".into() })?;
        let mut zeros = 0i64;
        let mut val = plain;
        for j in 0..hi - k {
            let f = &one - &(&u * &q.pow(j as u32));
            if f.is_zero() {
                zeros += 1;
            } else {
                val *= f;
            }
        }
        for j in 0..k {
            val *= -(&u * &q.pow((hi - 1 - j) as u32));
            let f = &one - &(&u * &q.powi(j as i64 - lo as i64)?);
            if f.is_zero() {
                zeros -= 1;
            } else {
                val = val.div_exact(&f);
            }
        }
        match zeros.cmp(&0) {
            std::cmp::Ordering::Greater => {}
            std::cmp::Ordering::Equal => total += val,
            std::cmp::Ordering::Less => {
                return Err(Error::Pole { index: k, context: "pairing denominator".into() })
            }
        }
    }
    Ok(pre * total)
}

/// p⁰_k from the lemma combining two Askey–Wilson systems in base q³,
/// together with its norm h⁰_k.
pub fn laurent_p0(k: usize, b: &FieldElement, q: &FieldElement) -> Result<(LaurentPoly, FieldElement)> {
    let q3 = q.pow(3);
    let b3 = b.pow(3);
    let n = k / 2;
    let one = FieldElement::one();
    let tail = [b.clone(), b * q, b * &q.pow(2)];
    if k.is_multiple_of(2) {
        let params = [one.clone(), tail[0].clone(), tail[1].clone(), tail[2].clone()];
        let aw = askey_wilson(n, &params, &q3)?;
        let d = q_pochhammer(&(&b3 * &q3.pow(n as u32)), &q3, n);
        let p = aw.scale(&d.invert()?);
        let num = q_pochhammer_multi(&[q3.clone(), b3.clone()], &q3, n)
            * q_pochhammer_multi(&[b.clone(), b * b * q], q, 3 * n);
        let den = q_pochhammer_multi(&[b3.clone(), &b3 * &q3], &q3, 2 * n);
        Ok((p, num.checked_div(&den)?))
    } else {
        let params = [q3.clone(), tail[0].clone(), tail[1].clone(), tail[2].clone()];
        let aw = askey_wilson(n, &params, &q3)?;
        let d = q_pochhammer(&(&b3 * &q3.pow(n as u32 + 1)), &q3, n);
        let factor = LaurentPoly::from_terms([(1, one.clone()), (0, -&one)]);
        let p = (&factor * &aw).scale(&d.invert()?);
        let num = q_pochhammer_multi(&[q3.clone(), &b3 * &q3], &q3, n)
            * q_pochhammer_multi(&[b * &q3, b * b * q], q, 3 * n);
        let den = q_pochhammer_multi(&[&b3 * &q3, &b3 * &q3.pow(2)], &q3, 2 * n);
        Ok((p, -(odd_multiplier(b, q)? * num.checked_div(&den)?)))
    }
}

/// (1−b)(1−bq²)/((1−ωbq)(1−ω²bq)), the multiplier relating the two
/// Askey–Wilson measures in the lemma.
pub fn odd_multiplier(b: &FieldElement, q: &FieldElement) -> Result<FieldElement> {
    let one = FieldElement::one();
    let w = FieldElement::omega();
    let bq = b * q;
    let num = (&one - b) * (&one - &(&bq * q));
    let den = (&one - &(&w * &bq)) * (&one - &(&w * &w * &bq));
    num.checked_div(&den)
}

/// The monic family p⁰_k orthogonal for the Andrews weight w₀, built from
/// Wilson polynomials in x² with a1 = 0 (even k) or a1 = 1 (odd k).
pub fn andrews_p0(k: usize, b: &FieldElement) -> Result<Poly> {
    let n = k / 2;
    let b6 = b * &FieldElement::frac(1, 6);
    let tail = [b6.clone(), &b6 + &FieldElement::frac(1, 3), &b6 + &FieldElement::frac(2, 3)];
    let half_b = b * &FieldElement::frac(1, 2);
    let sign = if n.is_multiple_of(2) { fe(1) } else { fe(-1) };
    if k.is_multiple_of(2) {
        let a = [FieldElement::zero(), tail[0].clone(), tail[1].clone(), tail[2].clone()];
        let w = wilson(n, &a)?.x_squared_to_x();
        let d = pochhammer(&(&half_b + &fe(n as i64)), n);
        Ok(w.scale(&sign.checked_div(&d)?))
    } else {
        let a = [FieldElement::one(), tail[0].clone(), tail[1].clone(), tail[2].clone()];
        let w = wilson(n, &a)?.x_squared_to_x();
        let d = pochhammer(&(&half_b + &fe(n as i64 + 1)), n);
        Ok((&w * &Poly::variable(Var::X)).scale(&sign.checked_div(&d)?))
    }
}
