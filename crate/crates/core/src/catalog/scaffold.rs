//! Pre-simplification determinants built from the closed-form pairings,
//! checked against the norm products and mapped onto the theorem matrices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement as Fe, Rational};
use crate::hyper::{factorial, hyp_terminating, pochhammer, HypSpec};
use crate::linalg::ExactMatrix;

use super::norms;
use super::{hahn_pairing, lhs_matrix, rhs_value, CaseId, Div, TheoremCase};

/// Families where the full weight admits orthogonal polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GfdFamily {
    Andrews,
    Cekz1,
    Cekz2,
    Half1,
    HalfI,
    ThirdZeta,
}

/// Families with an odd full weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OfdFamily {
    Cekz3,
    HalfNeg,
    ThirdNeg,
}

impl GfdFamily {
    pub const ALL: [GfdFamily; 6] = [
        GfdFamily::Andrews,
        GfdFamily::Cekz1,
        GfdFamily::Cekz2,
        GfdFamily::Half1,
        GfdFamily::HalfI,
        GfdFamily::ThirdZeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GfdFamily::Andrews => "andrews",
            GfdFamily::Cekz1 => "cekz1",
            GfdFamily::Cekz2 => "cekz2",
            GfdFamily::Half1 => "half1",
            GfdFamily::HalfI => "half_i",
            GfdFamily::ThirdZeta => "third_zeta",
        }
    }

    pub fn theorem(self) -> CaseId {
        match self {
            GfdFamily::Andrews => CaseId::AndrewsAt,
            GfdFamily::Cekz1 => CaseId::CekzCt,
            GfdFamily::Cekz2 => CaseId::CekzCt2,
            GfdFamily::Half1 => CaseId::HalfHdt,
            GfdFamily::HalfI => CaseId::HalfHt,
            GfdFamily::ThirdZeta => CaseId::ThirdYt,
        }
    }

    /// Whether the matching theorem case runs at b + 1.
    fn shifted(self) -> bool {
        matches!(self, GfdFamily::Cekz1 | GfdFamily::Cekz2 | GfdFamily::HalfI | GfdFamily::ThirdZeta)
    }

    fn h1(self, n: usize, b: &Fe) -> Fe {
        let nf = factorial(n);
        match self {
            GfdFamily::Andrews => nf * pochhammer(b, n) / (Fe::from_int(2) * Fe::from_int(3).pow(3 * n as u32)),
            GfdFamily::Cekz1 | GfdFamily::Cekz2 => {
                Fe::zeta_pow(2) * pochhammer(b, n + 1) * nf
                    / (Fe::from_int(2) * Fe::half_power(3, 6 * n as i64 + 1))
            }
            GfdFamily::Half1 => nf * pochhammer(b, n) / Fe::from_int(2).pow(3 * n as u32 + 1),
            GfdFamily::HalfI => {
                Fe::zeta_pow(3) * nf * pochhammer(b, n + 1) / Fe::half_power(2, 6 * n as i64 + 3)
            }
            GfdFamily::ThirdZeta => {
                Fe::zeta_pow(4) * nf * pochhammer(b, n + 1) / (Fe::from_int(2) * Fe::from_int(3).pow(2 * n as u32))
            }
        }
    }

    fn off(self, m: usize, n: usize, b: &Fe, d: &Div) -> Result<Fe> {
        let s = sign(m + n);
        let two = Fe::from_int(2);
        Ok(match self {
            GfdFamily::Andrews => {
                let f = hyp_terminating(&HypSpec::two_f_one(m, n, b, &Fe::one()))
                    .map_err(|_| d.fail("(b)_k"))?;
                s * pochhammer(b, m) * pochhammer(b, n) * f
                    / (two * Fe::half_power(3, 3 * (m + n) as i64))
            }
            GfdFamily::Cekz1 | GfdFamily::Cekz2 => {
                let v = s * Fe::zeta_pow(-2) * pochhammer(b, m + n + 1)
                    / (two * Fe::half_power(3, 3 * (m + n) as i64 + 1));
                if self == GfdFamily::Cekz2 {
                    -v
                } else {
                    v
                }
            }
            GfdFamily::Half1 => {
                // 2^{(m+n)/2}(b)_m(b)_n F / 2^{m+n+1} · (−1)^{m+n}
                s * hahn_pairing(m, n, b, 2, d)? / (two * Fe::half_power(2, 3 * (m + n) as i64))
            }
            GfdFamily::HalfI => {
                let b1 = b + &Fe::one();
                -(s * Fe::zeta_pow(-3) * b * hahn_pairing(m, n, &b1, 2, d)?
                    / Fe::half_power(2, 3 * (m + n) as i64 + 3))
            }
            GfdFamily::ThirdZeta => {
                let b1 = b + &Fe::one();
                -(s * Fe::zeta_pow(-4) * b * hahn_pairing(m, n, &b1, 3, d)?
                    / (two * Fe::from_int(3).pow((m + n) as u32)))
            }
        })
    }

    fn h0(self, k: usize, b: &Fe, d: &Div) -> Result<Fe> {
        match self {
            GfdFamily::Andrews => norms::andrews_h0(k, b, d),
            GfdFamily::Cekz1 => norms::cekz1_h0(k, b, d),
            GfdFamily::Cekz2 => norms::cekz2_h0(k, b, d),
            GfdFamily::Half1 => norms::half1_h0(k, b, d),
            GfdFamily::HalfI => norms::half_i_h0(k, b, d),
            GfdFamily::ThirdZeta => norms::third_zeta_h0(k, b, d),
        }
    }

    /// Row and column multiplier d_n.
    fn scale(self, n: usize) -> Fe {
        let s = sign(n);
        match self {
            GfdFamily::Andrews => s * Fe::sqrt2() * Fe::half_power(3, 3 * n as i64),
            GfdFamily::Cekz1 | GfdFamily::Cekz2 => s * Fe::half_power(3, 3 * n as i64),
            GfdFamily::Half1 => s * Fe::half_power(2, 3 * n as i64 + 1),
            GfdFamily::HalfI => s * Fe::half_power(2, 3 * n as i64),
            GfdFamily::ThirdZeta => s * Fe::from_int(3).pow(n as u32),
        }
    }

    /// κ with d_m d_n S_{mn} = κ T_{mn}; `b` is the scaffold parameter.
    fn kappa(self, b: &Fe) -> Fe {
        match self {
            GfdFamily::Andrews | GfdFamily::Half1 => Fe::one(),
            GfdFamily::Cekz1 | GfdFamily::Cekz2 => Fe::zeta_pow(2) * b / (Fe::from_int(2) * Fe::sqrt3()),
            GfdFamily::HalfI => Fe::zeta_pow(3) * b / Fe::half_power(2, 3),
            GfdFamily::ThirdZeta => Fe::zeta_pow(4) * b / Fe::from_int(2),
        }
    }
}

impl OfdFamily {
    pub const ALL: [OfdFamily; 3] = [OfdFamily::Cekz3, OfdFamily::HalfNeg, OfdFamily::ThirdNeg];

    pub fn name(self) -> &'static str {
        match self {
            OfdFamily::Cekz3 => "cekz3",
            OfdFamily::HalfNeg => "half_neg",
            OfdFamily::ThirdNeg => "third_neg",
        }
    }

    pub fn theorem(self) -> CaseId {
        match self {
            OfdFamily::Cekz3 => CaseId::CekzCt3,
            OfdFamily::HalfNeg => CaseId::HalfXt,
            OfdFamily::ThirdNeg => CaseId::ThirdTdc,
        }
    }

    fn h1(self, n: usize, b: &Fe) -> Fe {
        let v = factorial(n) * pochhammer(b, n);
        match self {
            OfdFamily::Cekz3 => v / (Fe::from_int(2) * Fe::from_int(3).pow(3 * n as u32)),
            OfdFamily::HalfNeg => v / Fe::from_int(2).pow(3 * n as u32 + 1),
            OfdFamily::ThirdNeg => v / (Fe::from_int(2) * Fe::from_int(3).pow(2 * n as u32)),
        }
    }

    fn off(self, m: usize, n: usize, b: &Fe, d: &Div) -> Result<Fe> {
        let s = sign(m + n);
        let two = Fe::from_int(2);
        Ok(-match self {
            OfdFamily::Cekz3 => {
                s * pochhammer(b, m + n) / (two * Fe::half_power(3, 3 * (m + n) as i64))
            }
            OfdFamily::HalfNeg => s * hahn_pairing(m, n, b, 2, d)? / (two * Fe::half_power(2, 3 * (m + n) as i64)),
            OfdFamily::ThirdNeg => s * hahn_pairing(m, n, b, 3, d)? / (two * Fe::from_int(3).pow((m + n) as u32)),
        })
    }

    fn c(self, n: usize, b: &Fe, d: &Div) -> Result<Fe> {
        match self {
            OfdFamily::Cekz3 => norms::cekz3_c(n, b, d),
            OfdFamily::HalfNeg => norms::half_neg_c(n, b, d),
            OfdFamily::ThirdNeg => norms::third_neg_c(n, b, d),
        }
    }

    fn scale(self, n: usize) -> Fe {
        let s = sign(n);
        match self {
            OfdFamily::Cekz3 => s * Fe::sqrt2() * Fe::half_power(3, 3 * n as i64),
            OfdFamily::HalfNeg => s * Fe::half_power(2, 3 * n as i64 + 1),
            OfdFamily::ThirdNeg => s * Fe::sqrt2() * Fe::from_int(3).pow(n as u32),
        }
    }
}

macro_rules! named_enum {
    ($ty:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                $ty::ALL
                    .into_iter()
                    .find(|c| c.name() == s)
                    .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
            }
        }
    };
}

named_enum!(GfdFamily);
named_enum!(OfdFamily);

fn sign(k: usize) -> Fe {
    if k.is_multiple_of(2) {
        Fe::one()
    } else {
        Fe::from_int(-1)
    }
}

/// The three exact checks of one scaffold instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaffoldReport {
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub b: String,
    /// det of the scaffold equals the norm product (or the block formula).
    pub det_matches_norms: bool,
    /// d_m d_n S_{mn} = κ T_{mn} entrywise.
    pub scaling_matches: bool,
    /// det·∏d_n² / κ^N equals the theorem's product side.
    pub rhs_matches: bool,
}

impl ScaffoldReport {
    pub fn passed(&self) -> bool {
        self.det_matches_norms && self.scaling_matches && self.rhs_matches
    }
}

struct Pieces {
    scaffold: ExactMatrix,
    scales: Vec<Fe>,
    kappa: Fe,
    theorem: TheoremCase,
}

fn compare(family: &str, n: usize, b: &Rational, p: Pieces, target: Fe) -> Result<ScaffoldReport> {
    let det = p.scaffold.determinant();
    let scaled = p.scaffold.scale_diag(&p.scales, &p.scales);
    let expected = lhs_matrix(&p.theorem)?.map(|x| x * &p.kappa);
    let d2: Fe = p.scales.iter().map(|s| s * s).product();
    let rhs = rhs_value(&p.theorem)? * p.kappa.pow(n as u32);
    Ok(ScaffoldReport {
        family: family.to_string(),
        n,
        b: crate::field::rational_to_string(b),
        det_matches_norms: det == target,
        scaling_matches: scaled == expected,
        rhs_matches: &det * &d2 == rhs,
    })
}

pub fn gfd_scaffold_report(family: GfdFamily, n: usize, b: &Rational) -> Result<ScaffoldReport> {
    let d = Div::new(family.theorem());
    let bf = Fe::from_rational(b);
    let scaffold = ExactMatrix::try_from_fn(n, |m, k| {
        let mut v = family.off(m, k, &bf, &d)?;
        if m == k {
            v += family.h1(m, &bf);
        }
        Ok(v)
    })?;
    let target = (0..n).map(|k| family.h0(k, &bf, &d)).collect::<Result<Vec<_>>>()?.into_iter().product();
    let bt = if family.shifted() { b + Rational::from_integer(1.into()) } else { b.clone() };
    let pieces = Pieces {
        scaffold,
        scales: (0..n).map(|k| family.scale(k)).collect(),
        kappa: family.kappa(&bf),
        theorem: TheoremCase::new(family.theorem(), n).with_b(bt),
    };
    compare(family.name(), n, b, pieces, target)
}

pub fn gfd_scaffold_check(family: GfdFamily, n: usize, b: &Rational) -> Result<bool> {
    Ok(gfd_scaffold_report(family, n, b)?.passed())
}

pub fn ofd_scaffold_report(family: OfdFamily, n: usize, b: &Rational) -> Result<ScaffoldReport> {
    let d = Div::new(family.theorem());
    let bf = Fe::from_rational(b);
    let scaffold = ExactMatrix::try_from_fn(n, |m, k| {
        let mut v = family.off(m, k, &bf, &d)?;
        if m == k {
            v += family.h1(m, &bf);
        }
        Ok(v)
    })?;
    let target = if n % 2 == 1 {
        Fe::zero()
    } else {
        let c: Fe = (0..n / 2).map(|k| family.c(k, &bf, &d)).collect::<Result<Vec<_>>>()?.into_iter().product();
        sign(n / 2) * &c * &c
    };
    let pieces = Pieces {
        scaffold,
        scales: (0..n).map(|k| family.scale(k)).collect(),
        kappa: Fe::one(),
        theorem: TheoremCase::new(family.theorem(), n).with_b(b.clone()),
    };
    compare(family.name(), n, b, pieces, target)
}

pub fn ofd_scaffold_check(family: OfdFamily, n: usize, b: &Rational) -> Result<bool> {
    Ok(ofd_scaffold_report(family, n, b)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn andrews_one_by_one() {
        let r = gfd_scaffold_report(GfdFamily::Andrews, 1, &rat(2, 1)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn all_gfd_small() {
        for fam in GfdFamily::ALL {
            for n in 1..=4 {
                let r = gfd_scaffold_report(fam, n, &rat(3, 1)).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn all_ofd_small() {
        for fam in OfdFamily::ALL {
            for n in 1..=4 {
                let r = ofd_scaffold_report(fam, n, &rat(1, 1)).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn family_names_parse() {
        for f in GfdFamily::ALL {
            assert_eq!(f.name().parse::<GfdFamily>().unwrap(), f);
        }
        for f in OfdFamily::ALL {
            assert_eq!(f.to_string().parse::<OfdFamily>().unwrap(), f);
        }
    }
}
