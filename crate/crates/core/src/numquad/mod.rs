//! Double-precision corroboration of the integral statements: complex
//! log-gamma, Gauss–Legendre line integrals and trapezoid circle integrals.

mod checks;
mod weights;

pub use checks::{
    aw_check, cdh_check, check_mml, check_sp, lemma_all_check, mml_check, mp_check, mp_exact_vs_float, olp_lo_check,
    olp_sp_check, run_all, wilson_check, Comparison, GramCheck, MmlComparison,
};
pub use weights::{
    check_weight_split, table_mass_check, weight, weight_split_all, wilson_factorization_residual, w0, WeightSpec,
    WEIGHT_TABLE,
};

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::Exec;

pub type C64 = Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Γ(z) by the Lanczos approximation, shifted into Re z ≥ 1/2 by the
/// recurrence. exp of the result is Γ(z); the imaginary part may differ from
/// the principal branch by a multiple of 2π.
pub fn log_gamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { index: (-z.re) as usize, context: "log_gamma at a nonpositive integer".into() });
    }
    let mut shift = C64::new(0.0, 0.0);
    let mut z = z;
    while z.re < 0.5 {
        shift += z.ln();
        z += 1.0;
    }
    let z1 = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z1 + i as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z1 + 0.5) * t.ln() - t + x.ln() - shift)
}

pub fn gamma(z: C64) -> Result<C64> {
    Ok(log_gamma(z)?.exp())
}

/// |Γ(z)|².
pub fn gamma_abs2(z: C64) -> Result<f64> {
    Ok((2.0 * log_gamma(z)?.re).exp())
}

/// (a; q)_∞, stopping once |a qᵏ| < 1e−18.
pub fn qpoch_inf(a: C64, q: C64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut t = a;
    for _ in 0..100_000 {
        if t.norm() < 1e-18 {
            break;
        }
        acc *= 1.0 - t;
        t *= q;
    }
    acc
}

pub fn qpoch_inf_multi(a: &[C64], q: C64) -> C64 {
    a.iter().map(|&x| qpoch_inf(x, q)).product()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    /// Difference between the last two refinements; not a bound.
    pub error: f64,
    pub panels: usize,
}

/// Decay hint |f(x)| ≲ |x|^power e^{−π·rate·|x|}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decay {
    pub power: f64,
    pub rate: f64,
}

/// Whole line or [0, ∞).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    Full,
    Half,
}

const GL_POINTS: usize = 32;
const MAX_PANELS: usize = 1 << 14;
const MAX_X: f64 = 400.0;

fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(GL_POINTS).expect("nonzero"))
            .as_node_weight_pairs()
            .to_vec()
    })
}

fn panel<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> C64 {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    gauss_legendre().iter().map(|&(x, w)| f(mid + half * x) * w).sum::<C64>() * half
}

fn cutoff<F: Fn(f64) -> C64>(f: &F, range: Range, decay: Decay, tol: f64) -> f64 {
    let bound = |x: f64| x.powf(decay.power) * (-PI * decay.rate * x).exp();
    let mut x = 1.0;
    while x < MAX_X && bound(x) >= tol / 10.0 {
        x += 1.0;
    }
    let tail = |x: f64| f(x).norm() + if range == Range::Full { f(-x).norm() } else { 0.0 };
    while x < MAX_X && tail(x) >= tol / 10.0 {
        x += 1.0;
    }
    x
}

/// ∫ f over the range, truncated where the tail drops below tol/10, with
/// 32-point Gauss–Legendre panels halved until two refinements agree to tol.
pub fn integrate_line<F>(f: F, range: Range, decay: Decay, tol: f64, exec: Exec) -> Result<QuadResult>
where
    F: Fn(f64) -> C64 + Sync + Send,
{
    let hi = cutoff(&f, range, decay, tol);
    let lo = if range == Range::Full { -hi } else { 0.0 };
    let eval = |count: usize| -> C64 {
        let h = (hi - lo) / count as f64;
        let idx: Vec<usize> = (0..count).collect();
        exec.map(&idx, |&i| panel(&f, lo + h * i as f64, lo + h * (i + 1) as f64)).into_iter().sum()
    };
    let mut count = ((hi - lo).ceil() as usize).max(1);
    let mut prev = eval(count);
    while count * 2 <= MAX_PANELS {
        count *= 2;
        let next = eval(count);
        let error = (next - prev).norm();
        if error < tol {
            return Ok(QuadResult { value: next, error, panels: count });
        }
        prev = next;
    }
    Err(Error::NoConvergence(format!("line integral after {count} panels")))
}

const CIRCLE_START: usize = 256;
const CIRCLE_MAX: usize = 4096;

fn trapezoid<F: Fn(C64) -> C64 + Sync + Send>(f: &F, m: usize, exec: Exec) -> C64 {
    let idx: Vec<usize> = (0..m).collect();
    let step = 2.0 * PI / m as f64;
    let vals = exec.map(&idx, |&j| f(C64::from_polar(1.0, step * (j as f64 + 0.5))));
    vals.into_iter().sum::<C64>() / m as f64
}

/// ∮ f(z) dz/(2πiz) over the unit circle. Nodes sit half a step off the
/// usual grid so z = ±1 is never sampled.
pub fn integrate_circle<F>(f: F, tol: f64, exec: Exec) -> Result<QuadResult>
where
    F: Fn(C64) -> C64 + Sync + Send,
{
    let mut m = CIRCLE_START;
    let mut prev = trapezoid(&f, m, exec);
    while m * 2 <= CIRCLE_MAX {
        m *= 2;
        let next = trapezoid(&f, m, exec);
        let error = (next - prev).norm();
        if error < tol {
            return Ok(QuadResult { value: next, error, panels: m });
        }
        prev = next;
    }
    Err(Error::NoConvergence(format!("circle integral at {m} points")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn gamma_half_squared_is_pi() {
        assert!((gamma_abs2(c(0.5)).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn gamma_integer() {
        assert!((gamma(c(5.0)).unwrap() - 24.0).norm() < 1e-10);
        assert!((gamma(c(1.0)).unwrap() - 1.0).norm() < 1e-13);
    }

    #[test]
    fn duplication_formula() {
        for x in [0.3, 1.7] {
            let lhs = (2.0 * PI).sqrt() * gamma(c(2.0 * x)).unwrap();
            let rhs = 2f64.powf(2.0 * x - 0.5) * gamma(c(x)).unwrap() * gamma(c(x + 0.5)).unwrap();
            assert!((lhs - rhs).norm() / gamma(c(2.0 * x)).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn reflection_on_the_critical_line() {
        for x in [0.0, 0.4, 3.0, 11.0] {
            let v = gamma_abs2(C64::new(0.5, x)).unwrap();
            assert!((v * (PI * x).cosh() / PI - 1.0).abs() < 1e-11, "x = {x}");
        }
    }

    #[test]
    fn recurrence_for_small_real_part() {
        let z = C64::new(0.1, 2.0);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-12);
    }

    #[test]
    fn poles_are_errors() {
        assert!(log_gamma(c(0.0)).is_err());
        assert!(log_gamma(c(-3.0)).is_err());
        assert!(log_gamma(c(-2.5)).is_ok());
    }

    #[test]
    fn euler_function_value() {
        // (q;q)_∞ at q = 1/2
        let v = qpoch_inf(c(0.5), c(0.5));
        assert!((v.re - 0.288_788_095_086_602_4).abs() < 1e-15);
    }

    #[test]
    fn gaussian_integral() {
        let r = integrate_line(|x| c((-x * x).exp()), Range::Full, Decay { power: 0.0, rate: 1.0 }, 1e-12, Exec::Sequential)
            .unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn circle_picks_out_constant_term() {
        let r = integrate_circle(|z| 3.0 + z * 2.0 + z.inv() * 5.0 + (z * 0.3).exp(), 1e-13, Exec::Sequential).unwrap();
        assert!((r.value - 4.0).norm() < 1e-13);
    }

    #[test]
    fn refinement_is_self_consistent() {
        let f = |x: f64| c(1.0 / (x * x).cosh());
        let d = Decay { power: 0.0, rate: 0.5 };
        let a = integrate_line(f, Range::Full, d, 1e-9, Exec::Sequential).unwrap();
        let b = integrate_line(f, Range::Full, d, 1e-11, Exec::Parallel).unwrap();
        assert!((a.value - b.value).norm() <= a.error.max(1e-12));
    }
}
