//! The nine weight splittings w₀ = w₁ + w₋₁, checked pointwise.

use std::f64::consts::PI;

use serde::Serialize;

use super::{integrate_line, log_gamma, Decay, Range, C64};
use crate::catalog::CaseId;
use crate::error::{Error, Result};
use crate::par::Exec;

/// w_{±1}(x) = l(2cos(πk/2l))^b/(4πΓ(b)) (±1)^δ e^{±kπx} Γ(b/2 + lix + ε) Γ(b/2 − lix).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightSpec {
    pub k: u32,
    pub l: u32,
    pub delta: u32,
    pub epsilon: u32,
    pub b: f64,
    /// +1 or −1.
    pub sign: i32,
}

/// (theorem, k, l, δ, ε) for each split weight.
pub const WEIGHT_TABLE: [(CaseId, u32, u32, u32, u32); 9] = [
    (CaseId::AndrewsAt, 1, 3, 0, 0),
    (CaseId::CekzCt, 1, 3, 0, 1),
    (CaseId::CekzCt2, 1, 3, 1, 1),
    (CaseId::CekzCt3, 1, 3, 1, 0),
    (CaseId::HalfHdt, 1, 2, 0, 0),
    (CaseId::HalfHt, 1, 2, 1, 1),
    (CaseId::HalfXt, 1, 2, 1, 0),
    (CaseId::ThirdYt, 2, 3, 1, 1),
    (CaseId::ThirdTdc, 2, 3, 1, 0),
];

impl WeightSpec {
    pub fn new(k: u32, l: u32, delta: u32, epsilon: u32, b: f64, sign: i32) -> Result<Self> {
        if k == 0 || l == 0 || delta > 1 || epsilon > 1 || b <= 0.0 || sign.abs() != 1 {
            return Err(Error::Shape(format!("invalid weight ({k},{l},{delta},{epsilon}), b = {b}, sign {sign}")));
        }
        Ok(WeightSpec { k, l, delta, epsilon, b, sign })
    }

    fn norm(&self) -> f64 {
        let l = self.l as f64;
        let c = 2.0 * (PI * self.k as f64 / (2.0 * l)).cos();
        l * c.powf(self.b) / (4.0 * PI * log_gamma(C64::new(self.b, 0.0)).expect("b > 0").re.exp())
    }

    fn gammas(&self, x: f64) -> C64 {
        let (b, l) = (self.b, self.l as f64);
        let g1 = log_gamma(C64::new(b / 2.0 + self.epsilon as f64, l * x)).expect("b > 0");
        let g2 = log_gamma(C64::new(b / 2.0, -l * x)).expect("b > 0");
        (g1 + g2).exp()
    }
}

pub fn weight(spec: &WeightSpec, x: f64) -> C64 {
    let s = spec.sign as f64;
    let phase = if spec.delta == 1 { s } else { 1.0 };
    spec.gammas(x) * spec.norm() * phase * (s * spec.k as f64 * PI * x).exp()
}

/// w₀ built directly from cosh or sinh.
pub fn w0(spec: &WeightSpec, x: f64) -> C64 {
    let kx = spec.k as f64 * PI * x;
    let hyp = if spec.delta == 0 { kx.cosh() } else { kx.sinh() };
    spec.gammas(x) * 2.0 * spec.norm() * hyp
}

/// |w₀ − w₁ − w₋₁| < 1e−12·|w₀| at every sample.
pub fn check_weight_split(spec: &WeightSpec, xs: &[f64]) -> bool {
    let plus = WeightSpec { sign: 1, ..*spec };
    let minus = WeightSpec { sign: -1, ..*spec };
    xs.iter().all(|&x| {
        let w = w0(spec, x);
        (w - weight(&plus, x) - weight(&minus, x)).norm() < 1e-12 * w.norm()
    })
}

/// Relative gap between w₀ of the first row and its Wilson-weight form
/// with (a₁, …, a₄) = (0, b/6, b/6+1/3, b/6+2/3).
pub fn wilson_factorization_residual(b: f64, x: f64) -> f64 {
    let spec = WeightSpec { k: 1, l: 3, delta: 0, epsilon: 0, b, sign: 1 };
    let a = [0.0, b / 6.0, b / 6.0 + 1.0 / 3.0, b / 6.0 + 2.0 / 3.0];
    let lg = |z: C64| log_gamma(z).expect("off the poles");
    let mut log = lg(C64::new(a.iter().sum(), 0.0)).re - (4.0 * PI).ln();
    for j in 0..4 {
        for k in j + 1..4 {
            log -= lg(C64::new(a[j] + a[k], 0.0)).re;
        }
    }
    let mut s = -lg(C64::new(0.0, 2.0 * x));
    for &aj in &a {
        s += lg(C64::new(aj, x));
    }
    let wilson = (log + 2.0 * s.re).exp();
    let direct = w0(&spec, x);
    (direct - wilson).norm() / direct.norm()
}

/// ∫ w₀ dx, which is 1 for the δ = ε = 0 rows.
pub fn table_mass_check(k: u32, l: u32, b: f64) -> Result<f64> {
    let spec = WeightSpec::new(k, l, 0, 0, b, 1)?;
    let r = integrate_line(|x| w0(&spec, x), Range::Full, Decay { power: b, rate: l as f64 - k as f64 }, 1e-12, Exec::Sequential)?;
    Ok((r.value - 1.0).norm())
}

/// All nine rows at b = 2, the first-row Wilson form and both unit masses.
/// Returns (passed, worst relative residual).
pub fn weight_split_all() -> Result<(bool, f64)> {
    let xs = [-2.3, -0.7, 0.1, 0.7, 2.3];
    let mut ok = true;
    for &(_, k, l, d, e) in &WEIGHT_TABLE {
        ok &= check_weight_split(&WeightSpec::new(k, l, d, e, 2.0, 1)?, &xs);
    }
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.3] {
        worst = worst.max(wilson_factorization_residual(2.0, x));
    }
    ok &= worst < 1e-10;
    for (k, l) in [(1, 3), (1, 2)] {
        let gap = table_mass_check(k, l, 2.0)?;
        worst = worst.max(gap);
        ok &= gap < 1e-8;
    }
    Ok((ok, worst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosh_row() {
        let s = WeightSpec::new(1, 3, 0, 0, 2.0, 1).unwrap();
        assert!(check_weight_split(&s, &[0.1, 0.7, 2.3]));
    }

    #[test]
    fn sinh_row_negates_minus_weight() {
        let s = WeightSpec::new(1, 3, 1, 0, 2.0, 1).unwrap();
        assert!(check_weight_split(&s, &[0.1, 0.7, 2.3]));
        let m = WeightSpec { sign: -1, ..s };
        let x = 0.4;
        let unsigned = WeightSpec { delta: 0, ..m };
        assert!((weight(&m, x) + weight(&unsigned, x)).norm() < 1e-15);
    }

    #[test]
    fn every_table_row_splits() {
        for &(_, k, l, d, e) in &WEIGHT_TABLE {
            let s = WeightSpec::new(k, l, d, e, 2.0, 1).unwrap();
            assert!(check_weight_split(&s, &[-1.1, 0.1, 0.7, 2.3]), "({k},{l},{d},{e})");
        }
    }

    #[test]
    fn wilson_form_of_first_row() {
        assert!(wilson_factorization_residual(2.0, 0.5) < 1e-10);
    }

    #[test]
    fn first_row_has_unit_mass() {
        assert!(table_mass_check(1, 3, 2.0).unwrap() < 1e-8);
        assert!(table_mass_check(1, 2, 2.0).unwrap() < 1e-8);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(WeightSpec::new(1, 3, 2, 0, 2.0, 1).is_err());
        assert!(WeightSpec::new(1, 3, 0, 0, -1.0, 1).is_err());
        assert!(WeightSpec::new(1, 3, 0, 0, 2.0, 0).is_err());
    }

    #[test]
    fn summary() {
        let (ok, worst) = weight_split_all().unwrap();
        assert!(ok, "worst {worst}");
    }
}
