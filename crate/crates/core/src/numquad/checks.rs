//! Gram matrices of the orthogonal families computed by quadrature and
//! compared with their exact norms.

use std::f64::consts::PI;

use serde::Serialize;

use super::{
    gamma_abs2, integrate_circle, integrate_line, log_gamma, qpoch_inf, qpoch_inf_multi, weight_split_all, Decay,
    QuadResult, Range, C64,
};
use crate::error::Result;
use crate::field::{FieldElement as Fe, Rational};
use crate::hyper::{factorial, hyp_terminating, pochhammer, HypSpec};
use crate::ortho::{self, Angle, LaurentPoly, Poly};
use crate::par::Exec;

/// Relative tolerance for every Gram entry.
pub const GRAM_TOL: f64 = 1e-7;
/// Absolute quadrature tolerance, relative to the entry scale.
const QUAD_TOL: f64 = 1e-11;
const SIZE: usize = 4;

/// One numeric value against its exact counterpart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub numeric: QuadResult,
    pub expected: C64,
}

impl Comparison {
    pub fn abs_error(&self) -> f64 {
        (self.numeric.value - self.expected).norm()
    }

    pub fn rel_error(&self, scale: f64) -> f64 {
        self.abs_error() / scale
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramCheck {
    pub name: String,
    /// Largest |G_mn − E_mn| / max(|E_mn|, √|E_mm E_nn|) over 0 ≤ m, n ≤ 3.
    pub max_rel_error: f64,
    pub passed: bool,
}

impl GramCheck {
    fn from_scalar(name: &str, rel: f64) -> Self {
        GramCheck { name: name.to_string(), max_rel_error: rel, passed: rel < GRAM_TOL }
    }
}

fn fe(r: &Rational) -> Fe {
    Fe::from_rational(r)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn cx(x: &Fe) -> C64 {
    x.to_complex()
}

fn real(r: &Rational) -> f64 {
    cx(&fe(r)).re
}

/// Runs the (m, n) grid in parallel and measures entries against `expected`.
fn gram<P, E>(name: &str, pairing: P, expected: E) -> Result<GramCheck>
where
    P: Fn(usize, usize, f64) -> Result<QuadResult> + Sync + Send,
    E: Fn(usize, usize) -> Result<C64> + Sync + Send,
{
    let mut exp = vec![vec![C64::new(0.0, 0.0); SIZE]; SIZE];
    for (m, row) in exp.iter_mut().enumerate() {
        for (n, v) in row.iter_mut().enumerate() {
            *v = expected(m, n)?;
        }
    }
    let scale = |m: usize, n: usize| exp[m][n].norm().max((exp[m][m].norm() * exp[n][n].norm()).sqrt());
    let pairs: Vec<(usize, usize)> = (0..SIZE).flat_map(|m| (m..SIZE).map(move |n| (m, n))).collect();
    let errs = Exec::default().map(&pairs, |&(m, n)| -> Result<f64> {
        let s = scale(m, n);
        let r = pairing(m, n, s * QUAD_TOL)?;
        Ok(Comparison { numeric: r, expected: exp[m][n] }.rel_error(s))
    });
    let mut worst: f64 = 0.0;
    for e in errs {
        worst = worst.max(e?);
    }
    Ok(GramCheck::from_scalar(name, worst))
}

fn lg(z: C64) -> C64 {
    log_gamma(z).expect("argument is off the poles")
}

fn poly_coeffs(family: impl Fn(usize) -> Result<Poly>) -> Result<Vec<Vec<C64>>> {
    (0..SIZE).map(|n| Ok(family(n)?.complex_coeffs())).collect()
}

fn horner(c: &[C64], t: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * t + a)
}

/// Wilson orthogonality with a₁ = 0: parameters (0, b/6, b/6+1/3, b/6+2/3) at b = 2.
pub fn wilson_check() -> Result<GramCheck> {
    let b = rat(2, 1);
    let bf = fe(&b) / Fe::from_int(6);
    let a = [Fe::zero(), bf.clone(), &bf + &Fe::frac(1, 3), &bf + &Fe::frac(2, 3)];
    let af: Vec<f64> = a.iter().map(|x| cx(x).re).collect();
    let sum: f64 = af.iter().sum();
    let mut pre = lg(C64::new(sum, 0.0)).re - (2.0 * PI).ln();
    for j in 0..4 {
        for k in j + 1..4 {
            pre -= lg(C64::new(af[j] + af[k], 0.0)).re;
        }
    }
    let polys = poly_coeffs(|n| ortho::wilson(n, &a))?;
    let w = move |x: f64| {
        let mut s = -lg(C64::new(0.0, 2.0 * x));
        for &aj in &af {
            s += lg(C64::new(aj, x));
        }
        (pre + 2.0 * s.re).exp()
    };
    gram(
        "wilson_a1_zero",
        |m, n, tol| {
            let (pm, pn) = (&polys[m], &polys[n]);
            integrate_line(
                |x| {
                    let t = C64::new(x * x, 0.0);
                    horner(pm, t) * horner(pn, t) * w(x)
                },
                Range::Half,
                Decay { power: 12.0, rate: 2.0 },
                tol,
                Exec::Sequential,
            )
        },
        |m, n| Ok(if m == n { cx(&ortho::wilson_norm(n, &a)?) } else { C64::new(0.0, 0.0) }),
    )
}

/// Continuous dual Hahn with a₁ = 0: parameters (0, 1/2, 1).
pub fn cdh_check() -> Result<GramCheck> {
    let a = [Fe::zero(), Fe::frac(1, 2), Fe::one()];
    let af: Vec<f64> = a.iter().map(|x| cx(x).re).collect();
    let mut pre = -(2.0 * PI).ln();
    for j in 0..3 {
        for k in j + 1..3 {
            pre -= lg(C64::new(af[j] + af[k], 0.0)).re;
        }
    }
    let polys = poly_coeffs(|n| ortho::cdh(n, &a))?;
    let w = move |x: f64| {
        let mut s = -lg(C64::new(0.0, 2.0 * x));
        for &aj in &af {
            s += lg(C64::new(aj, x));
        }
        (pre + 2.0 * s.re).exp()
    };
    gram(
        "cdh_a1_zero",
        |m, n, tol| {
            let (pm, pn) = (&polys[m], &polys[n]);
            integrate_line(
                |x| {
                    let t = C64::new(x * x, 0.0);
                    horner(pm, t) * horner(pn, t) * w(x)
                },
                Range::Half,
                Decay { power: 12.0, rate: 1.0 },
                tol,
                Exec::Sequential,
            )
        },
        |m, n| Ok(if m == n { cx(&ortho::cdh_norm(n, &a)) } else { C64::new(0.0, 0.0) }),
    )
}

/// Meixner–Pollaczek at λ = 1, φ = 2π/3.
pub fn mp_check() -> Result<GramCheck> {
    let lambda = Fe::one();
    let phi = Angle(8);
    let l = 1.0;
    let p = phi.radians();
    let pre = (2.0 * p.sin()).powf(2.0 * l) / (2.0 * PI * lg(C64::new(2.0 * l, 0.0)).re.exp());
    let polys = poly_coeffs(|n| ortho::mp(n, &lambda, phi))?;
    gram(
        "meixner_pollaczek",
        |m, n, tol| {
            let (pm, pn) = (&polys[m], &polys[n]);
            integrate_line(
                |x| {
                    let t = C64::new(x, 0.0);
                    let w = pre * ((2.0 * p - PI) * x).exp() * gamma_abs2(C64::new(l, x)).expect("λ > 0");
                    horner(pm, t) * horner(pn, t) * w
                },
                Range::Full,
                Decay { power: 6.0, rate: 1.0 / 3.0 },
                tol,
                Exec::Sequential,
            )
        },
        |m, n| Ok(if m == n { cx(&ortho::mp_norm(n, &lambda)) } else { C64::new(0.0, 0.0) }),
    )
}

fn laurent_c(p: &LaurentPoly) -> Vec<(i64, C64)> {
    p.complex_terms()
}

fn eval_l(t: &[(i64, C64)], z: C64) -> C64 {
    t.iter().map(|&(e, c)| c * z.powi(e as i32)).sum()
}

/// (1 − z²)(1 − z⁻²)/((1 − az)(1 − a/z)), with the a = 1 double zero cancelled.
fn leading_ratio(a: C64, z: C64) -> C64 {
    if a == C64::new(1.0, 0.0) {
        (1.0 + z) * (1.0 + z.inv())
    } else {
        (1.0 - z * z) * (1.0 - (z * z).inv()) / ((1.0 - a * z) * (1.0 - a / z))
    }
}

/// Askey–Wilson with a₁ = 1 at (1, 0.3, 0.2, 0.1), q = 0.4.
pub fn aw_check() -> Result<GramCheck> {
    let a = [Fe::one(), Fe::frac(3, 10), Fe::frac(1, 5), Fe::frac(1, 10)];
    let q = Fe::frac(2, 5);
    let ac: Vec<C64> = a.iter().map(cx).collect();
    let qc = cx(&q);
    let mut pre = qpoch_inf(qc, qc) / (2.0 * qpoch_inf(ac[0] * ac[1] * ac[2] * ac[3], qc));
    for j in 0..4 {
        for k in j + 1..4 {
            pre *= qpoch_inf(ac[j] * ac[k], qc);
        }
    }
    let polys: Vec<Vec<(i64, C64)>> =
        (0..SIZE).map(|n| Ok(laurent_c(&ortho::askey_wilson(n, &a, &q)?))).collect::<Result<_>>()?;
    let w = move |z: C64| {
        let zi = z.inv();
        let mut v = pre * leading_ratio(ac[0], z) * qpoch_inf_multi(&[qc * z * z, qc * zi * zi], qc)
            / qpoch_inf_multi(&[qc * ac[0] * z, qc * ac[0] * zi], qc);
        for &aj in &ac[1..] {
            v /= qpoch_inf_multi(&[aj * z, aj * zi], qc);
        }
        v
    };
    gram(
        "askey_wilson_a1_one",
        |m, n, tol| {
            let (pm, pn) = (&polys[m], &polys[n]);
            integrate_circle(|z| eval_l(pm, z) * eval_l(pn, z) * w(z), tol, Exec::Sequential)
        },
        |m, n| Ok(if m == n { cx(&ortho::askey_wilson_norm(n, &a, &q)?) } else { C64::new(0.0, 0.0) }),
    )
}

/// Both pairings of the rescaled Meixner–Pollaczek lemma at one (m, n).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MmlComparison {
    pub same_angle: Comparison,
    pub opposite_angle: Comparison,
}

struct Mml {
    b: f64,
    t: f64,
    phi: f64,
    polys: Vec<Vec<C64>>,
    rmo: Vec<Vec<C64>>,
    rme: Vec<Vec<C64>>,
}

fn mml_setup(b: &Rational, t: &Rational, phi: Angle, size: usize) -> Result<Mml> {
    let (bf, tf) = (fe(b), fe(t));
    let lambda = (&bf + &Fe::one()) / Fe::from_int(2);
    let two_t_cos = &tf * &phi.two_cos();
    let shift = -(Fe::i() / Fe::from_int(2));
    let polys = (0..size)
        .map(|n| {
            let p = ortho::mp(n, &lambda, Angle::HALF_PI + phi)?.compose_linear(&tf, &shift);
            Ok(p.scale(&(factorial(n) / two_t_cos.pow(n as u32))).complex_coeffs())
        })
        .collect::<Result<Vec<_>>>()?;
    let b1 = &bf + &Fe::one();
    let rmo = (0..size)
        .map(|m| {
            (0..size)
                .map(|n| {
                    if m != n {
                        return C64::new(0.0, 0.0);
                    }
                    cx(&(phi.exp_i() * factorial(n) * pochhammer(&b1, n) / two_t_cos.pow(2 * n as u32)))
                })
                .collect()
        })
        .collect();
    let ratio = -(phi.tan()? / &tf);
    let z = Fe::one() / phi.two_sin().pow(2);
    let rme = (0..size)
        .map(|m| {
            (0..size)
                .map(|n| {
                    let f = hyp_terminating(&HypSpec::two_f_one(m, n, &b1, &z))?;
                    Ok(cx(&((-phi).exp_i()
                        * ratio.pow((m + n) as u32)
                        * pochhammer(&b1, m)
                        * pochhammer(&b1, n)
                        * f)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mml { b: real(b), t: real(t), phi: phi.radians(), polys, rmo, rme })
}

fn mml_pairing(s: &Mml, m: usize, n: usize, psi: f64, tol: f64) -> Result<QuadResult> {
    let (b, t) = (s.b, s.t);
    let pre = t * (2.0 * psi.cos()).powf(b + 1.0) / (2.0 * PI * lg(C64::new(b + 1.0, 0.0)).re.exp());
    let (pm, pn) = (&s.polys[m], &s.polys[n]);
    integrate_line(
        |x| {
            let g = (lg(C64::new(b / 2.0 + 1.0, t * x)) + lg(C64::new(b / 2.0, -t * x))).exp();
            let xc = C64::new(x, 0.0);
            horner(pm, xc) * horner(pn, xc) * g * pre * (2.0 * psi * t * x).exp()
        },
        Range::Full,
        Decay { power: b + 6.0, rate: t * (1.0 - 2.0 * psi.abs() / PI) },
        tol,
        Exec::Sequential,
    )
}

/// ⟨p_m, p_n⟩_φ and ⟨p_m, p_n⟩_{−φ} against their closed forms.
pub fn check_mml(b: &Rational, t: &Rational, phi: Angle, m: usize, n: usize) -> Result<MmlComparison> {
    let s = mml_setup(b, t, phi, m.max(n) + 1)?;
    let scale = s.rmo[m][m].norm().max(s.rmo[n][n].norm()).max(s.rme[m][n].norm());
    let tol = scale * QUAD_TOL;
    Ok(MmlComparison {
        same_angle: Comparison { numeric: mml_pairing(&s, m, n, s.phi, tol)?, expected: s.rmo[m][n] },
        opposite_angle: Comparison { numeric: mml_pairing(&s, m, n, -s.phi, tol)?, expected: s.rme[m][n] },
    })
}

/// Both relations of the lemma at (b, t, φ) = (1, 3, π/6).
pub fn mml_check() -> Result<(GramCheck, GramCheck)> {
    let s = mml_setup(&rat(1, 1), &rat(3, 1), Angle(2), SIZE)?;
    let same = gram("mml_same_angle", |m, n, tol| mml_pairing(&s, m, n, s.phi, tol), |m, n| Ok(s.rmo[m][n]))?;
    let opp = gram("mml_opposite_angle", |m, n, tol| mml_pairing(&s, m, n, -s.phi, tol), |m, n| Ok(s.rme[m][n]))?;
    Ok((same, opp))
}

/// μ_{c,b}(f) for a Laurent polynomial f given by its complex terms.
fn mu(c: C64, b: C64, q: C64, f: impl Fn(C64) -> C64 + Sync + Send, tol: f64) -> Result<QuadResult> {
    let pre = qpoch_inf_multi(&[q, b * b], q) / qpoch_inf_multi(&[q * c * b, b / c], q);
    integrate_circle(
        |z| {
            let zi = z.inv();
            f(z) * pre * qpoch_inf_multi(&[q * c * z, zi / c], q) / qpoch_inf_multi(&[b * z, b * zi], q)
        },
        tol,
        Exec::Sequential,
    )
}

struct Olp {
    a: Fe,
    b: Fe,
    q: Fe,
    polys: Vec<Vec<(i64, C64)>>,
}

fn olp_setup(a: Fe, b: Fe, q: Fe, size: usize) -> Result<Olp> {
    let polys =
        (0..size).map(|n| Ok(laurent_c(&ortho::pastro(n, &a, &b, &q)?.0))).collect::<Result<Vec<_>>>()?;
    Ok(Olp { a, b, q, polys })
}

fn olp_pair(s: &Olp, c: &Fe, m: usize, n: usize, tol: f64) -> Result<QuadResult> {
    let (pm, pn) = (&s.polys[m], &s.polys[n]);
    mu(cx(c), cx(&s.b), cx(&s.q), |z| eval_l(pm, z) * eval_l(pn, z), tol)
}

/// Numeric μ_{c,b}(P_m P_n) against the exact pairing formula.
pub fn check_sp(a: &Fe, b: &Fe, c: &Fe, q: &Fe, m: usize, n: usize) -> Result<Comparison> {
    let s = olp_setup(a.clone(), b.clone(), q.clone(), m.max(n) + 1)?;
    let expected = cx(&ortho::pastro_pairing(m, n, a, b, c, q)?);
    let diag = cx(&ortho::pastro_norm(m.max(n), a, b, q)?).norm();
    let numeric = olp_pair(&s, c, m, n, expected.norm().max(diag) * QUAD_TOL)?;
    Ok(Comparison { numeric, expected })
}

fn olp_params() -> (Fe, Fe, Fe) {
    (Fe::omega(), Fe::frac(3, 10), Fe::frac(1, 2))
}

/// Pastro orthogonality μ_{a,b}(P_m P_n) = h_n δ_{mn} at a = ω, b = 0.3, q = 0.5.
pub fn olp_lo_check() -> Result<GramCheck> {
    let (a, b, q) = olp_params();
    let s = olp_setup(a.clone(), b.clone(), q.clone(), SIZE)?;
    gram("pastro_orthogonality", |m, n, tol| olp_pair(&s, &s.a, m, n, tol), |m, n| {
        Ok(if m == n { cx(&ortho::pastro_norm(n, &a, &b, &q)?) } else { C64::new(0.0, 0.0) })
    })
}

/// The cross pairing μ_{ω²,b}(P_m^{(ω)} P_n^{(ω)}).
pub fn olp_sp_check() -> Result<GramCheck> {
    let (a, b, q) = olp_params();
    let c = &a * &a;
    let s = olp_setup(a.clone(), b.clone(), q.clone(), SIZE)?;
    gram("pastro_cross_pairing", |m, n, tol| olp_pair(&s, &c, m, n, tol), |m, n| {
        Ok(cx(&ortho::pastro_pairing(m, n, &a, &b, &c, &q)?))
    })
}

/// The split measure's Laurent polynomials at b = 0.3, q = 0.4. The
/// 1/(1+z) singularity is cancelled analytically against (z², z⁻²; q³)_∞.
pub fn lemma_all_check() -> Result<GramCheck> {
    let (b, q) = (Fe::frac(3, 10), Fe::frac(2, 5));
    let (bc, qc) = (cx(&b), cx(&q));
    let q3 = qc * qc * qc;
    let pre = qpoch_inf(q3, q3) * qpoch_inf_multi(&[bc, bc * bc * qc], qc) / qpoch_inf(bc * bc * bc * q3, q3);
    let mut polys = Vec::new();
    let mut norms = Vec::new();
    for k in 0..SIZE {
        let (p, h) = ortho::laurent_p0(k, &b, &q)?;
        polys.push(laurent_c(&p));
        norms.push(cx(&h));
    }
    let w = move |z: C64| {
        let zi = z.inv();
        // (1 − z²)(1 − z⁻²) / ((1 + z)(1 − z)(1 − z⁻¹)) = 1 + z⁻¹
        pre * (1.0 + zi) * qpoch_inf_multi(&[q3 * z * z, q3 * zi * zi], q3)
            / (qpoch_inf_multi(&[q3 * z, q3 * zi], q3) * qpoch_inf_multi(&[bc * z, bc * zi], qc))
    };
    gram(
        "split_measure_laurent",
        |m, n, tol| {
            let (pm, pn) = (&polys[m], &polys[n]);
            integrate_circle(|z| eval_l(pm, z) * eval_l(pn, z) * w(z), tol, Exec::Sequential)
        },
        |m, n| Ok(if m == n { norms[n] } else { C64::new(0.0, 0.0) }),
    )
}

/// Largest coefficient gap between the exact Meixner–Pollaczek polynomial
/// and a direct double-precision expansion of its ₂F₁.
pub fn mp_exact_vs_float(n: usize, lambda: &Rational, phi: Angle) -> Result<f64> {
    let exact = ortho::mp(n, &fe(lambda), phi)?.complex_coeffs();
    let l = real(lambda);
    let p = phi.radians();
    let w = 1.0 - C64::from_polar(1.0, -2.0 * p);
    let mut total = vec![C64::new(0.0, 0.0); n + 1];
    // (λ + ix)_k as a polynomial in x
    let mut rising = vec![C64::new(1.0, 0.0)];
    let mut term = C64::new(1.0, 0.0);
    for k in 0..=n {
        for (j, c) in rising.iter().enumerate() {
            total[j] += term * c;
        }
        let mut next = vec![C64::new(0.0, 0.0); rising.len() + 1];
        for (j, c) in rising.iter().enumerate() {
            next[j] += c * (l + k as f64);
            next[j + 1] += c * C64::new(0.0, 1.0);
        }
        rising = next;
        term *= w * (k as f64 - n as f64) / ((2.0 * l + k as f64) * (k as f64 + 1.0));
    }
    let mut pre = C64::from_polar(1.0, n as f64 * p);
    for k in 0..n {
        pre *= (2.0 * l + k as f64) / (k as f64 + 1.0);
    }
    let gap = exact
        .iter()
        .zip(total.iter().map(|c| c * pre).chain(std::iter::repeat(C64::new(0.0, 0.0))))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(gap)
}

/// Every numeric check, in a fixed order.
pub fn run_all() -> Result<Vec<GramCheck>> {
    let (same, opp) = mml_check()?;
    let mut out = vec![
        wilson_check()?,
        cdh_check()?,
        mp_check()?,
        aw_check()?,
        same,
        opp,
        olp_lo_check()?,
        olp_sp_check()?,
        lemma_all_check()?,
    ];
    let split = weight_split_all()?;
    out.push(GramCheck { name: "weight_split_table".into(), max_rel_error: split.1, passed: split.0 });
    Ok(out)
}
