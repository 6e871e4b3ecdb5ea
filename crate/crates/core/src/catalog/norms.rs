//! Closed forms for the norms h⁽⁰⁾_k of the full-weight families and the
//! constants c_n of the odd-weight families.

use crate::error::Result;
use crate::field::FieldElement as Fe;
use crate::hyper::{factorial, pochhammer};

use super::Div;

fn fr(n: i64, d: i64) -> Fe {
    Fe::frac(n, d)
}

fn half(b: &Fe) -> Fe {
    b * &fr(1, 2)
}

/// Andrews weight: h⁽⁰⁾_{2n} and h⁽⁰⁾_{2n+1} from the Wilson norms.
pub fn andrews_h0(k: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let n = k / 2;
    let hb = half(b);
    let b1 = b + &fr(1, 1);
    if k.is_multiple_of(2) {
        let num = factorial(n) * pochhammer(&hb, n) * pochhammer(&hb, 3 * n) * pochhammer(&b1, 3 * n);
        let den = Fe::from_int(3).pow(6 * n as u32) * pochhammer(&hb, 2 * n) * pochhammer(&(&hb + &fr(1, 1)), 2 * n);
        d.div(num, den, "(b/2)_{2n}(b/2+1)_{2n}")
    } else {
        let num = b * &(b + &fr(4, 1)) * fr(1, 4)
            * factorial(n)
            * pochhammer(&(&hb + &fr(1, 1)), n)
            * pochhammer(&(&hb + &fr(3, 1)), 3 * n)
            * pochhammer(&b1, 3 * n);
        let den = Fe::from_int(3).pow(6 * n as u32 + 3)
            * pochhammer(&(&hb + &fr(1, 1)), 2 * n)
            * pochhammer(&(&hb + &fr(2, 1)), 2 * n);
        d.div(num, den, "(b/2+1)_{2n}(b/2+2)_{2n}")
    }
}

/// First CEKZ weight (Andrews weight times 3i(x − ib/6)).
pub fn cekz1_h0(k: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let n = k / 2;
    let hb = half(b);
    if k.is_multiple_of(2) {
        let p = pochhammer(&(&hb + &fr(1, 1)), 2 * n);
        let num = &hb
            * &factorial(n)
            * pochhammer(&(&hb + &fr(1, 1)), n)
            * pochhammer(&(&hb + &fr(1, 1)), 3 * n)
            * pochhammer(&(b + &fr(1, 1)), 3 * n);
        d.div(num, Fe::from_int(3).pow(6 * n as u32) * &p * &p, "(b/2+1)_{2n}")
    } else {
        let p = pochhammer(&(&hb + &fr(2, 1)), 2 * n);
        let num = b * &(b + &fr(1, 1)) * (b + &fr(4, 1)) * fr(1, 2)
            * factorial(n)
            * pochhammer(&(&hb + &fr(1, 1)), n)
            * pochhammer(&(&hb + &fr(3, 1)), 3 * n)
            * pochhammer(&(b + &fr(3, 1)), 3 * n);
        d.div(num, Fe::from_int(3).pow(6 * n as u32 + 4) * &p * &p, "(b/2+2)_{2n}")
    }
}

/// Second CEKZ weight (sinh-type w₀).
pub fn cekz2_h0(k: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let n = k / 2;
    let i = Fe::i();
    if k.is_multiple_of(2) {
        let u = (b + &fr(1, 1)) * fr(1, 2);
        let v = (b + &fr(3, 1)) * fr(1, 2);
        let num = &i * b * fr(1, 2)
            * factorial(n)
            * pochhammer(&u, n)
            * pochhammer(&v, 3 * n)
            * pochhammer(&(b + &fr(1, 1)), 3 * n);
        let den = Fe::half_power(3, 12 * n as i64 + 1) * pochhammer(&u, 2 * n) * pochhammer(&v, 2 * n);
        d.div(num, den, "((b+1)/2)_{2n}((b+3)/2)_{2n}")
    } else {
        let u = half(b) + fr(3, 2);
        let v = half(b) + fr(5, 2);
        let num = &i * b * (b + &fr(1, 1)) * (b + &fr(2, 1))
            * factorial(n)
            * pochhammer(&u, n)
            * pochhammer(&v, 3 * n)
            * pochhammer(&(b + &fr(3, 1)), 3 * n);
        let den = fr(2, 1) * Fe::half_power(3, 12 * n as i64 + 7) * pochhammer(&u, 2 * n) * pochhammer(&v, 2 * n);
        d.div(num, den, "(b/2+3/2)_{2n}(b/2+5/2)_{2n}")
    }
}

/// First continuous-Hahn weight.
pub fn half1_h0(k: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let n = k / 2;
    let u = (b + &fr(1, 1)) * fr(1, 2);
    if k.is_multiple_of(2) {
        let num = factorial(n) * pochhammer(&u, n) * pochhammer(&half(b), 2 * n);
        d.div(num, Fe::from_int(4).pow(n as u32), "4^n")
    } else {
        let num = b * &(b + &fr(2, 1))
            * factorial(n)
            * pochhammer(&u, n)
            * pochhammer(&(half(b) + fr(2, 1)), 2 * n);
        d.div(num, Fe::from_int(4).pow(n as u32 + 2), "4^{n+2}")
    }
}

/// Second continuous-Hahn weight (sinh-type w₀).
pub fn half_i_h0(k: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let n = k / 2;
    let i = Fe::i();
    if k.is_multiple_of(2) {
        let num = &i * b
            * factorial(n)
            * pochhammer(&((b + &fr(1, 1)) * fr(1, 2)), n)
            * pochhammer(&(half(b) + fr(1, 1)), 2 * n);
        d.div(num, Fe::from_int(2).pow(2 * n as u32 + 1), "2^{2n+1}")
    } else {
        let num = &i * b * (b + &fr(1, 1)) * (b + &fr(2, 1))
            * factorial(n)
            * pochhammer(&((b + &fr(3, 1)) * fr(1, 2)), n)
            * pochhammer(&(half(b) + fr(2, 1)), 2 * n);
        d.div(num, Fe::from_int(2).pow(2 * n as u32 + 4), "2^{2n+4}")
    }
}

/// Cube-root-of-unity continuous-Hahn weight.
pub fn third_zeta_h0(k: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let n = k / 2;
    let i = Fe::i();
    if k.is_multiple_of(2) {
        let num = &i * b * factorial(n) * pochhammer(&(b + &fr(1, 1)), 3 * n);
        d.div(num, fr(2, 1) * Fe::half_power(3, 6 * n as i64 - 1), "3^{3n−1/2}")
    } else {
        let num = &i * b * (b + &fr(1, 1)) * (b + &fr(2, 1)) * factorial(n) * pochhammer(&(b + &fr(3, 1)), 3 * n);
        d.div(num, fr(2, 1) * Fe::half_power(3, 6 * n as i64 + 3), "3^{3n+3/2}")
    }
}

/// c_n for the odd Andrews-type weight: h⁽⁰⁾_{2n} of the second CEKZ weight over 3i.
pub fn cekz3_c(n: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let u = (b + &fr(1, 1)) * fr(1, 2);
    let v = (b + &fr(3, 1)) * fr(1, 2);
    let num = half(b) * factorial(n) * pochhammer(&u, n) * pochhammer(&v, 3 * n) * pochhammer(&(b + &fr(1, 1)), 3 * n);
    let den = Fe::half_power(3, 12 * n as i64 + 3) * pochhammer(&u, 2 * n) * pochhammer(&v, 2 * n);
    d.div(num, den, "((b+1)/2)_{2n}((b+3)/2)_{2n}")
}

pub fn half_neg_c(n: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let num = b
        * &factorial(n)
        * pochhammer(&((b + &fr(1, 1)) * fr(1, 2)), n)
        * pochhammer(&(half(b) + fr(1, 1)), 2 * n);
    d.div(num, Fe::from_int(2).pow(2 * n as u32 + 2), "2^{2n+2}")
}

pub fn third_neg_c(n: usize, b: &Fe, d: &Div) -> Result<Fe> {
    let num = b * &factorial(n) * pochhammer(&(b + &fr(1, 1)), 3 * n);
    d.div(num, fr(2, 1) * Fe::half_power(3, 6 * n as i64 + 1), "3^{3n+1/2}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CaseId;
    use crate::hyper::pochhammer;
    use crate::ortho::{andrews_p0, cdh_norm, christoffel, wilson_norm};

    fn d() -> Div {
        Div::new(CaseId::AndrewsAt)
    }

    #[test]
    fn andrews_norms_from_wilson() {
        for b in [fr(2, 1), fr(7, 3)] {
            let b6 = &b * &fr(1, 6);
            let tail = [b6.clone(), &b6 + &fr(1, 3), &b6 + &fr(2, 3)];
            for n in 0..4 {
                let a = [Fe::zero(), tail[0].clone(), tail[1].clone(), tail[2].clone()];
                let s = pochhammer(&(half(&b) + Fe::from_int(n as i64)), n);
                let even = wilson_norm(n, &a).unwrap() / (&s * &s);
                assert_eq!(andrews_h0(2 * n, &b, &d()).unwrap(), even);

                let a = [Fe::one(), tail[0].clone(), tail[1].clone(), tail[2].clone()];
                let s = pochhammer(&(half(&b) + Fe::from_int(n as i64 + 1)), n);
                let c = &b * &(&b + &fr(4, 1)) * fr(1, 108);
                let odd = c * wilson_norm(n, &a).unwrap() / (&s * &s);
                assert_eq!(andrews_h0(2 * n + 1, &b, &d()).unwrap(), odd);
            }
        }
    }

    #[test]
    fn christoffel_reproduces_first_cekz_norms() {
        let b = fr(2, 1);
        let node = &b * &fr(1, 6) * Fe::i();
        let p: Vec<_> = (0..=4).map(|k| andrews_p0(k, &b).unwrap()).collect();
        let h: Vec<_> = (0..=4).map(|k| andrews_h0(k, &b, &d()).unwrap()).collect();
        let (pt, ht) = christoffel(&p, &h, &node).unwrap();
        let three_i = Fe::from_int(3) * Fe::i();
        for n in 0..=3 {
            assert!(pt[n].is_monic());
            assert_eq!(&three_i * &ht[n], cekz1_h0(n, &b, &d()).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn cekz2_norms_from_wilson() {
        let b = fr(3, 1);
        let b6 = &b * &fr(1, 6);
        for n in 0..4 {
            let a = [fr(1, 2), b6.clone(), &b6 + &fr(1, 3), &b6 + &fr(2, 3)];
            let s = pochhammer(&(half(&b) + Fe::from_int(n as i64) + fr(1, 2)), n);
            let pre = Fe::i() * &b / (fr(2, 1) * Fe::sqrt3());
            let even = pre * wilson_norm(n, &a).unwrap() / (&s * &s);
            assert_eq!(cekz2_h0(2 * n, &b, &d()).unwrap(), even);

            let a = [fr(1, 2), &b6 + &fr(1, 3), &b6 + &fr(2, 3), &b6 + &fr(1, 1)];
            let s = pochhammer(&(half(&b) + Fe::from_int(n as i64) + fr(3, 2)), n);
            let pre = Fe::i() * &b * (&b + &fr(1, 1)) * (&b + &fr(2, 1)) / (fr(2, 1) * Fe::half_power(3, 7));
            let odd = pre * wilson_norm(n, &a).unwrap() / (&s * &s);
            assert_eq!(cekz2_h0(2 * n + 1, &b, &d()).unwrap(), odd);
        }
    }

    #[test]
    fn hahn_norms_from_cdh() {
        let b = fr(5, 2);
        let b4 = &b * &fr(1, 4);
        let b6 = &b * &fr(1, 6);
        let i = Fe::i();
        for n in 0..4 {
            let a = [Fe::zero(), b4.clone(), &b4 + &fr(1, 2)];
            assert_eq!(half1_h0(2 * n, &b, &d()).unwrap(), cdh_norm(n, &a));
            let a = [Fe::one(), b4.clone(), &b4 + &fr(1, 2)];
            let odd = &b * &(&b + &fr(2, 1)) * fr(1, 16) * cdh_norm(n, &a);
            assert_eq!(half1_h0(2 * n + 1, &b, &d()).unwrap(), odd);

            let a = [fr(1, 2), b4.clone(), &b4 + &fr(1, 2)];
            assert_eq!(half_i_h0(2 * n, &b, &d()).unwrap(), &i * &b * fr(1, 2) * cdh_norm(n, &a));
            let a = [fr(1, 2), &b4 + &fr(1, 2), &b4 + &fr(1, 1)];
            let odd = &i * &b * (&b + &fr(1, 1)) * (&b + &fr(2, 1)) * fr(1, 16) * cdh_norm(n, &a);
            assert_eq!(half_i_h0(2 * n + 1, &b, &d()).unwrap(), odd);

            let a = [b6.clone(), &b6 + &fr(1, 3), &b6 + &fr(2, 3)];
            let even = &i * &Fe::sqrt3() * &b * fr(1, 2) * cdh_norm(n, &a);
            assert_eq!(third_zeta_h0(2 * n, &b, &d()).unwrap(), even);
            let a = [&b6 + &fr(1, 3), &b6 + &fr(2, 3), &b6 + &fr(1, 1)];
            let odd = &i * &b * (&b + &fr(1, 1)) * (&b + &fr(2, 1)) / (fr(2, 1) * Fe::half_power(3, 3))
                * cdh_norm(n, &a);
            assert_eq!(third_zeta_h0(2 * n + 1, &b, &d()).unwrap(), odd);
        }
    }

    #[test]
    fn odd_constants_are_even_norms_over_imaginary_unit() {
        let b = fr(7, 2);
        let three_i = Fe::from_int(3) * Fe::i();
        let two_i = Fe::from_int(2) * Fe::i();
        for n in 0..4 {
            assert_eq!(cekz3_c(n, &b, &d()).unwrap(), cekz2_h0(2 * n, &b, &d()).unwrap() / &three_i);
            assert_eq!(half_neg_c(n, &b, &d()).unwrap(), half_i_h0(2 * n, &b, &d()).unwrap() / &two_i);
            assert_eq!(third_neg_c(n, &b, &d()).unwrap(), third_zeta_h0(2 * n, &b, &d()).unwrap() / &three_i);
        }
    }
}
