//! Exact arithmetic in the cyclotomic field Q(ζ), ζ = e^{2πi/24}.
//!
//! Elements are stored in the power basis ζ⁰ … ζ⁷ modulo the 24th
//! cyclotomic polynomial Φ₂₄(x) = x⁸ − x⁴ + 1, as eight integer numerators
//! over one positive common denominator. The representation is kept in
//! lowest terms after every operation, so structural equality is field
//! equality.
//!
//! Every constant used by the determinant catalog lives here: ω = ζ⁸,
//! i = ζ⁶, √2 = ζ³ + ζ²¹, √3 = ζ² + ζ²², e^{iπ/3} = ζ⁴, e^{iπ/6} = ζ².

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Degree of Q(ζ₂₄) over Q.
pub const DEGREE: usize = 8;

/// Order of the root of unity generating the field.
pub const ORDER: i64 = 24;

/// Exponents k with gcd(k, 24) = 1: the Galois group (Z/24)^*.
pub const GALOIS_EXPONENTS: [i64; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

/// Formats a rational as `num/den`, `0/1` for zero.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer. The result is normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Coordinates of ζ^e for e = 0..24, reduced with ζ⁸ = ζ⁴ − 1.
fn zeta_power_table() -> &'static [[i64; DEGREE]; 24] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[[i64; DEGREE]; 24]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[0i64; DEGREE]; 24];
        let mut cur = [0i64; DEGREE];
        cur[0] = 1;
        for row in table.iter_mut() {
            *row = cur;
            // multiply by ζ
            let top = cur[DEGREE - 1];
            for k in (1..DEGREE).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            // ζ⁸ = ζ⁴ − 1
            cur[4] += top;
            cur[0] -= top;
        }
        table
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: [BigInt; DEGREE],
    den: BigInt,
}

impl FieldElement {
    fn from_parts(mut num: [BigInt; DEGREE], mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in num.iter() {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                if !c.is_zero() {
                    *c = &*c / &g;
                }
            }
            den /= g;
        }
        FieldElement { num, den }
    }

    pub fn zero() -> Self {
        FieldElement { num: Default::default(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = BigInt::from(n);
        FieldElement { num, den: BigInt::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = r.numer().clone();
        Self::from_parts(num, r.denom().clone())
    }

    /// `n/d` as a field element. Panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = BigInt::from(n);
        Self::from_parts(num, BigInt::from(d))
    }

    /// Builds an element from its eight power-basis coordinates.
    pub fn from_coeffs(coeffs: &[Rational; DEGREE]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = std::array::from_fn(|k| coeffs[k].numer() * (&den / coeffs[k].denom()));
        Self::from_parts(num, den)
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let row = &zeta_power_table()[k.rem_euclid(ORDER) as usize];
        let num = std::array::from_fn(|j| BigInt::from(row[j]));
        FieldElement { num, den: BigInt::one() }
    }

    /// ω = e^{2πi/3}.
    pub fn omega() -> Self {
        Self::zeta_pow(8)
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    pub fn sqrt2() -> Self {
        Self::zeta_pow(3) + Self::zeta_pow(21)
    }

    pub fn sqrt3() -> Self {
        Self::zeta_pow(2) + Self::zeta_pow(22)
    }

    /// `p^{k/2}` for p ∈ {2, 3}; odd k uses the field's square root.
    pub fn half_power(p: u32, k: i64) -> Self {
        let root = match p {
            2 => Self::sqrt2(),
            3 => Self::sqrt3(),
            _ => panic!("half_power only supports p = 2 or 3"),
        };
        let whole = k.div_euclid(2);
        let base = Self::from_int(p as i64);
        let r = if whole >= 0 {
            base.pow(whole as u32)
        } else {
            Self::frac(1, 1).div_exact(&base.pow((-whole) as u32))
        };
        if k.rem_euclid(2) == 1 {
            r * root
        } else {
            r
        }
    }

    /// The k-th power-basis coordinate as a rational.
    pub fn coeff(&self, k: usize) -> Rational {
        Rational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> [Rational; DEGREE] {
        std::array::from_fn(|k| self.coeff(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff(0))
    }

    /// Returns the value as an integer if the element is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Number of nonzero coordinates.
    fn support(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.invert()?.pow((-e) as u32))
        }
    }

    /// The Galois automorphism ζ ↦ ζ^k, for k coprime to 24.
    pub fn galois(&self, k: i64) -> Self {
        assert!(
            k.rem_euclid(2) == 1 && k.rem_euclid(3) != 0,
            "ζ ↦ ζ^{k} is not an automorphism"
        );
        if self.is_rational() {
            return self.clone();
        }
        let table = zeta_power_table();
        let mut num: [BigInt; DEGREE] = Default::default();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &table[(j as i64 * k).rem_euclid(ORDER) as usize];
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    num[t] += c * r;
                }
            }
        }
        Self::from_parts(num, self.den.clone())
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ⁻¹.
    pub fn conjugate(&self) -> Self {
        self.galois(ORDER - 1)
    }

    /// Multiplicative inverse via the norm: x⁻¹ = ∏_{σ≠1} σ(x) / N(x).
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut num: [BigInt; DEGREE] = Default::default();
            num[0] = self.den.clone();
            return Ok(Self::from_parts(num, self.num[0].clone()));
        }
        let mut cofactor = Self::one();
        for &k in &GALOIS_EXPONENTS[1..] {
            cofactor = &cofactor * &self.galois(k);
        }
        let norm = (self * &cofactor)
            .to_rational()
            .expect("norm of a cyclotomic element is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    /// Division by a value known to be nonzero. Panics otherwise.
    pub fn div_exact(&self, other: &Self) -> Self {
        self.checked_div(other).expect("division by zero field element")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = std::array::from_fn(|k| &self.num[k] * r.numer());
        Self::from_parts(num, &self.den * r.denom())
    }

    /// Evaluates at ζ = e^{2πi/24} in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(f64::NAN);
            z += Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / ORDER as f64);
        }
        z
    }

    fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let num = std::array::from_fn(|k| &self.num[k] + &other.num[k]);
            return Self::from_parts(num, self.den.clone());
        }
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = std::array::from_fn(|k| &self.num[k] * &fa + &other.num[k] * &fb);
        Self::from_parts(num, l)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // rational factor: plain scaling
        if other.is_rational() {
            let num = std::array::from_fn(|k| &self.num[k] * &other.num[0]);
            return Self::from_parts(num, &self.den * &other.den);
        }
        if self.is_rational() {
            return other.mul_ref(self);
        }
        let (a, b) = if self.support() <= other.support() { (self, other) } else { (other, self) };
        let mut prod: [BigInt; 2 * DEGREE - 1] = Default::default();
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for d in (DEGREE..2 * DEGREE - 1).rev() {
            let c = std::mem::take(&mut prod[d]);
            if !c.is_zero() {
                prod[d - 4] += &c;
                prod[d - 8] -= c;
            }
        }
        let mut num: [BigInt; DEGREE] = Default::default();
        for (k, slot) in num.iter_mut().enumerate() {
            *slot = std::mem::take(&mut prod[k]);
        }
        Self::from_parts(num, &self.den * &other.den)
    }

    /// JSON-facing coordinates: eight `num/den` strings.
    pub fn to_strings(&self) -> [String; DEGREE] {
        std::array::from_fn(|k| rational_to_string(&self.coeff(k)))
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        if parts.len() != DEGREE {
            return Err(Error::Parse(format!(
                "field element needs {DEGREE} coordinates, got {}",
                parts.len()
            )));
        }
        let mut coeffs: [Rational; DEGREE] = Default::default();
        for (slot, s) in coeffs.iter_mut().zip(parts) {
            *slot = parse_rational(s.as_ref())?;
        }
        Ok(Self::from_coeffs(&coeffs))
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Rational> for FieldElement {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$inner(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$inner(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$inner(&rhs)
            }
        }
    };
}

impl FieldElement {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&-other)
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
// Panics on a zero divisor, like integer division.
forward_binop!(Div, div, div_exact);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { num: std::array::from_fn(|k| -&self.num[k]), den: self.den.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = self.mul_ref(rhs);
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = self.mul_ref(&rhs);
    }
}

impl Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |acc, x| acc + x)
    }
}

impl Product for FieldElement {
    fn product<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a FieldElement> for FieldElement {
    fn product<I: Iterator<Item = &'a FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in 0..DEGREE {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ζ^{k}")?,
                (_, false) => write!(f, "{mag}·ζ^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        FieldElement::from_strings(&parts).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::frac(n, d)
    }

    #[test]
    fn named_constants_satisfy_defining_relations() {
        let w = FieldElement::omega();
        assert!((&w * &w * &w).is_one());
        assert_eq!(&w * &w + &w + FieldElement::one(), FieldElement::zero());
        let i = FieldElement::i();
        assert_eq!(&i * &i, fe(-1, 1));
        assert_eq!(FieldElement::sqrt2().pow(2), fe(2, 1));
        assert_eq!(FieldElement::sqrt3().pow(2), fe(3, 1));
        // e^{iπ/3} = −ω²
        assert_eq!(FieldElement::zeta_pow(4), -(&w * &w));
        assert_eq!(FieldElement::zeta_pow(2).pow(2), FieldElement::zeta_pow(4));
        assert!(FieldElement::zeta_pow(24).is_one());
        assert_eq!(FieldElement::zeta_pow(-1), FieldElement::zeta_pow(23));
    }

    #[test]
    fn omega_plus_omega_squared() {
        let w = FieldElement::omega();
        assert_eq!(&w + &w * &w, fe(-1, 1));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(fe(2, 1).invert().unwrap(), fe(1, 2));
        let w = FieldElement::omega();
        assert_eq!(w.invert().unwrap(), &w * &w);
        let one_plus_i = FieldElement::one() + FieldElement::i();
        let expected = (FieldElement::one() - FieldElement::i()).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(one_plus_i.invert().unwrap(), expected);
        assert_eq!(FieldElement::zero().invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(FieldElement::i().conjugate(), -FieldElement::i());
        let w = FieldElement::omega();
        assert_eq!(w.conjugate(), &w * &w);
        assert_eq!(FieldElement::sqrt2().conjugate(), FieldElement::sqrt2());
        assert_eq!(FieldElement::sqrt3().conjugate(), FieldElement::sqrt3());
    }

    #[test]
    fn to_complex_examples() {
        let z = FieldElement::i().to_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let s = FieldElement::sqrt3().to_complex();
        assert!((s.re - 3f64.sqrt()).abs() < 1e-12 && s.im.abs() < 1e-12);
    }

    #[test]
    fn half_powers() {
        assert_eq!(FieldElement::half_power(2, 2), fe(2, 1));
        assert_eq!(FieldElement::half_power(3, -2), fe(1, 3));
        assert_eq!(FieldElement::half_power(3, 3), fe(3, 1) * FieldElement::sqrt3());
        assert_eq!(FieldElement::half_power(2, -1) * FieldElement::sqrt2(), fe(1, 1));
        assert!(FieldElement::half_power(2, 0).is_one());
    }

    #[test]
    fn canonical_zero_and_signs() {
        let z = fe(3, 4) - fe(6, 8);
        assert_eq!(z, FieldElement::zero());
        assert_eq!(z.to_strings()[0], "0/1");
        assert_eq!(fe(2, -4).to_strings()[0], "-1/2");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2/1").unwrap(), Rational::from_integer(2.into()));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = fe(1, 2) + FieldElement::zeta_pow(1).scale(&Rational::new((-3).into(), 7.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"["1/2","-3/7","0/1","0/1","0/1","0/1","0/1","0/1"]"#
        );
        let back: FieldElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display_is_readable() {
        let x = fe(1, 2) - FieldElement::zeta_pow(4);
        assert_eq!(x.to_string(), "1/2 - ζ^4");
    }
}
