//! The q-analogue of Andrews's determinant, verified at seeded rational points.

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement as Fe, Rational};
use crate::hyper::{q_pochhammer, q_pochhammer_multi, q_pochhammer_signed, qhyp_terminating, QHypSpec};
use crate::par::Exec;

use super::{CaseId, Div, TheoremCase, VerifyReport};

const MAX_ATTEMPTS: usize = 1000;

/// A sample point (q, b).
#[derive(Clone, Debug, PartialEq)]
pub struct QtPoint {
    pub q: Rational,
    pub b: Rational,
}

fn sign(k: usize) -> Fe {
    if k.is_multiple_of(2) {
        Fe::one()
    } else {
        Fe::from_int(-1)
    }
}

/// X_m = (−1)^m (bω, bω²; q)_m / ((qbω; q)_{2[m/2]} (bω²; q)_{2[(m+1)/2]}).
pub fn qt_x(m: usize, b: &Fe, q: &Fe, d: &Div) -> Result<Fe> {
    let w = Fe::omega();
    let w2 = &w * &w;
    let bw = b * &w;
    let bw2 = b * &w2;
    let num = sign(m) * q_pochhammer_multi(&[bw.clone(), bw2.clone()], q, m);
    let den = q_pochhammer(&(q * &bw), q, 2 * (m / 2)) * q_pochhammer(&bw2, q, 2 * m.div_ceil(2));
    d.div(num, den, "(qbω;q)_{2[m/2]}(bω²;q)_{2[(m+1)/2]}")
}

/// The (m, n) entry of the q-analogue matrix.
pub fn qt_lhs_entry(m: usize, n: usize, b: &Fe, q: &Fe, d: &Div) -> Result<Fe> {
    let w = Fe::omega();
    let w2 = &w * &w;
    let b2 = b * b;
    let lo = m / 2 + n / 2;
    let hi = m.div_ceil(2) + n.div_ceil(2);
    let num = q_pochhammer(&b2, q, m)
        * q_pochhammer(&b2, q, n)
        * q_pochhammer(&(q * &w), q, lo)
        * q_pochhammer(&w2, q, hi);
    let den = q_pochhammer(&(b * &w2), q, lo + 1) * q_pochhammer_signed(&(q * b * &w), q, hi as i64 - 1)?;
    let pre = d.div(num, den, "(bω²;q)_{[m/2]+[n/2]+1}(qbω;q)_{[(m+1)/2]+[(n+1)/2]−1}")?;
    let spec = QHypSpec::new(
        vec![m, n],
        vec![b * &w, b * &w2],
        vec![b2.clone(), q.powi(-(lo as i64))? * &w2, q.powi(1 - hi as i64)? * &w],
        q.clone(),
        q.clone(),
    );
    let phi = qhyp_terminating(&spec).map_err(|e| match e {
        Error::Pole { .. } => d.fail("₄φ₃ denominator"),
        other => other,
    })?;
    let mut v = -(w2 * pre * phi);
    if m == n {
        v += qt_x(m, b, q, d)? * q_pochhammer_multi(&[q.clone(), b2], q, m);
    }
    Ok(v)
}

/// The product side of the q-analogue.
pub fn qt_rhs(nn: usize, b: &Fe, q: &Fe, d: &Div) -> Result<Fe> {
    let one = Fe::one();
    let w = Fe::omega();
    let w2 = &w * &w;
    let q3 = q.pow(3);
    let b3 = b.pow(3);
    let first = d.div(
        Fe::from_int(3) * (&one + b),
        (&one - &w) * (&one - &(b * &w2)),
        "(1−ω)(1−bω²)",
    )?;
    let one_bw2 = &one - &(b * &w2);
    let second = d.div(
        -((&one - b) * (&one - &(b * &q.pow(2))) * &one_bw2 * &one_bw2 * &w2),
        (&one - &(q * b * &w)) * (&one - &(q * b * &w2)),
        "(1−qbω)(1−qbω²)",
    )?;
    let mut acc = first.pow(nn as u32) * second.pow((nn / 2) as u32);
    let even_top = (nn as i64 - 1).div_euclid(2);
    let odd_top = (nn as i64 - 2).div_euclid(2);
    for n in 0..=even_top {
        let n = n as usize;
        let s = q_pochhammer(&(b * &w), q, 2 * n);
        let num = w.pow(n as u32)
            * &s
            * &s
            * q_pochhammer_multi(&[q3.clone(), b3.clone()], &q3, n)
            * q_pochhammer_multi(&[b.clone(), b * b * q], q, 3 * n);
        let den = q_pochhammer_multi(&[b3.clone(), &b3 * &q3], &q3, 2 * n);
        acc *= d.div(num, den, "(b³,b³q³;q³)_{2n}")?;
    }
    for n in 0..=odd_top {
        let n = n as usize;
        let s = q_pochhammer(&(q * b * &w2), q, 2 * n);
        let num = w2.pow(n as u32)
            * &s
            * &s
            * q_pochhammer_multi(&[q3.clone(), &b3 * &q3], &q3, n)
            * q_pochhammer_multi(&[b * &q3, b * b * q], q, 3 * n);
        let den = q_pochhammer_multi(&[&b3 * &q3, &b3 * &q3.pow(2)], &q3, 2 * n);
        acc *= d.div(num, den, "(b³q³,b³q⁶;q³)_{2n}")?;
    }
    Ok(acc)
}

fn random_unit_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den: i64 = rng.gen_range(2..=9);
    let num: i64 = rng.gen_range(1..den);
    let num = if rng.gen_bool(0.5) { -num } else { num };
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn qt_case(nn: usize, p: &QtPoint) -> TheoremCase {
    TheoremCase::new(CaseId::QQt, nn).with_q(p.q.clone()).with_b(p.b.clone())
}

/// Draws `count` admissible points with small-denominator q, b in (−1, 1) \ {0}.
/// A point is rejected when some entry or product factor vanishes.
pub fn sample_qt_points(nn: usize, count: usize, seed: u64) -> Result<Vec<QtPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let p = QtPoint { q: random_unit_rational(&mut rng), b: random_unit_rational(&mut rng) };
        let case = qt_case(nn, &p);
        let ok = super::lhs_matrix(&case).and_then(|_| super::rhs_value(&case));
        match ok {
            Ok(_) => out.push(p),
            Err(Error::Applicability { .. } | Error::Pole { .. } | Error::DivisionByZero) => {
                rejected += 1;
                if rejected >= MAX_ATTEMPTS {
                    return Err(Error::SampleExhausted { attempts: rejected });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Verifies each point exactly. With `poisoned` the product side is
/// multiplied by 1 + q, which must make every comparison fail.
pub fn verify_qt_points(nn: usize, points: &[QtPoint], poisoned: bool, exec: Exec) -> Result<Vec<VerifyReport>> {
    exec.map(points, |p| {
        let start = Instant::now();
        let case = qt_case(nn, p);
        let lhs = super::lhs_matrix(&case)?.determinant();
        let mut rhs = super::rhs_value(&case)?;
        if poisoned {
            rhs *= Fe::one() + Fe::from_rational(&p.q);
        }
        Ok(super::report(&case, lhs, rhs, start))
    })
    .into_iter()
    .collect()
}

pub fn verify_qt_random(nn: usize, count: usize, seed: u64) -> Result<Vec<VerifyReport>> {
    let points = sample_qt_points(nn, count, seed)?;
    verify_qt_points(nn, &points, false, Exec::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64, d: i64) -> Fe {
        Fe::frac(n, d)
    }

    fn d() -> Div {
        Div::new(CaseId::QQt)
    }

    #[test]
    fn x_matches_case_split() {
        let (b, q) = (fr(1, 5), fr(1, 3));
        let one = Fe::one();
        let bw = &b * &Fe::omega();
        let bw2 = &bw * &Fe::omega();
        for m in 0..8 {
            let qm = q.pow(m as u32);
            let expect = if m % 2 == 0 {
                (&one - &bw) / (&one - &(&bw * &qm))
            } else {
                -((&one - &bw) / (&one - &(&bw2 * &qm)))
            };
            assert_eq!(qt_x(m, &b, &q, &d()).unwrap(), expect, "m = {m}");
        }
    }

    #[test]
    fn one_by_one_case() {
        let (b, q) = (fr(1, 5), fr(1, 3));
        let lhs = qt_lhs_entry(0, 0, &b, &q, &d()).unwrap();
        assert_eq!(lhs, qt_rhs(1, &b, &q, &d()).unwrap());
    }

    #[test]
    fn fixed_point_n3() {
        let case = qt_case(3, &QtPoint { q: fr(1, 3).to_rational().unwrap(), b: fr(1, 5).to_rational().unwrap() });
        assert!(super::super::verify(&case).unwrap().equal);
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let a = sample_qt_points(2, 10, 7).unwrap();
        let b = sample_qt_points(2, 10, 7).unwrap();
        assert_eq!(a, b);
        for p in &a {
            for r in [&p.q, &p.b] {
                assert!(r.numer().magnitude() < r.denom().magnitude());
                assert!(*r.numer() != BigInt::from(0));
            }
        }
    }

    #[test]
    fn poisoned_rhs_fails_everywhere() {
        let points = sample_qt_points(2, 5, 1).unwrap();
        let reports = verify_qt_points(2, &points, true, Exec::Sequential).unwrap();
        assert!(reports.iter().all(|r| !r.equal));
    }
}
