//! Alternating sign matrices: brute-force enumeration and the product formula.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;

/// Largest N accepted by [`asm_enumerate`].
pub const MAX_ENUMERATE: usize = 5;

/// Sample matrices are retained up to this size.
const SAMPLE_MAX: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsMatrix {
    entries: Vec<Vec<i8>>,
}

impl AsMatrix {
    /// Validates the row/column sum and partial-sum conditions.
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("matrix must be square".into()));
        }
        let m = AsMatrix { entries };
        if !m.is_valid() {
            return Err(Error::Shape("not an alternating sign matrix".into()));
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn is_valid(&self) -> bool {
        let n = self.size();
        let line_ok = |line: &mut dyn Iterator<Item = i8>| {
            let mut s = 0i32;
            for v in line {
                if !(-1..=1).contains(&v) {
                    return false;
                }
                s += v as i32;
                if !(0..=1).contains(&s) {
                    return false;
                }
            }
            s == 1
        };
        (0..n).all(|r| line_ok(&mut self.entries[r].iter().copied()))
            && (0..n).all(|c| line_ok(&mut (0..n).map(|r| self.entries[r][c])))
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// ∏_{k=0}^{N−1} (3k+1)! / (N+k)!, computed exactly.
pub fn asm_count_formula(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Shape("N must be at least 1".into()));
    }
    let n = n as u64;
    let num: BigUint = (0..n).map(|k| factorial(3 * k + 1)).product();
    let den: BigUint = (0..n).map(|k| factorial(n + k)).product();
    if !(&num % &den).is_zero() {
        return Err(Error::Integrality(format!("count for N = {n} is not an integer")));
    }
    Ok(num / den)
}

/// All rows compatible with column partial sums `state`: entries in {−1,0,1},
/// row partial sums in {0,1}, row sum 1, new column sums in {0,1}.
fn rows_for(state: &[u8]) -> Vec<Vec<i8>> {
    let n = state.len();
    let mut out = Vec::new();
    let mut row = vec![0i8; n];
    fn go(j: usize, s: i8, state: &[u8], row: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if j == state.len() {
            if s == 1 {
                out.push(row.clone());
            }
            return;
        }
        for v in [-1i8, 0, 1] {
            let ns = s + v;
            let col = state[j] as i8 + v;
            if (0..=1).contains(&ns) && (0..=1).contains(&col) {
                row[j] = v;
                go(j + 1, ns, state, row, out);
            }
        }
        row[j] = 0;
    }
    go(0, 0, state, &mut row, &mut out);
    out
}

fn apply(state: &[u8], row: &[i8]) -> Vec<u8> {
    state.iter().zip(row).map(|(&s, &v)| (s as i8 + v) as u8).collect()
}

fn count_from(state: &[u8], rows_left: usize, prefix: &mut Vec<Vec<i8>>, samples: &mut Vec<AsMatrix>) -> u64 {
    if rows_left == 0 {
        if state.iter().all(|&s| s == 1) {
            if state.len() <= SAMPLE_MAX {
                samples.push(AsMatrix { entries: prefix.clone() });
            }
            return 1;
        }
        return 0;
    }
    let mut total = 0;
    for row in rows_for(state) {
        let next = apply(state, &row);
        prefix.push(row);
        total += count_from(&next, rows_left - 1, prefix, samples);
        prefix.pop();
    }
    total
}

/// Enumeration result with the stored sample matrices (empty for N > 3).
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub count: u64,
    pub samples: Vec<AsMatrix>,
}

pub fn asm_enumerate_with(n: usize, exec: Exec) -> Result<Enumeration> {
    if n == 0 {
        return Err(Error::Shape("N must be at least 1".into()));
    }
    if n > MAX_ENUMERATE {
        return Err(Error::Budget { n, max: MAX_ENUMERATE });
    }
    let start = vec![0u8; n];
    let firsts = rows_for(&start);
    let parts = exec.map(&firsts, |row| {
        let mut prefix = vec![row.clone()];
        let mut samples = Vec::new();
        let c = count_from(&apply(&start, row), n - 1, &mut prefix, &mut samples);
        (c, samples)
    });
    let mut out = Enumeration { count: 0, samples: Vec::new() };
    for (c, s) in parts {
        out.count += c;
        out.samples.extend(s);
    }
    Ok(out)
}

pub fn asm_enumerate(n: usize) -> Result<u64> {
    Ok(asm_enumerate_with(n, Exec::default())?.count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsmReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub enumerated: u64,
    pub formula: String,
    pub determinant: String,
}

fn biguint_to_bigint(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

/// Enumeration, product formula and determinant must all agree.
pub fn asm_crosscheck(n: usize) -> Result<AsmReport> {
    let enumerated = asm_enumerate(n)?;
    let formula = asm_count_formula(n)?;
    let det = crate::catalog::asm_det(n)?
        .to_integer()
        .ok_or_else(|| Error::Mismatch(format!("N = {n}: determinant is not an integer")))?;
    if det.is_negative() {
        return Err(Error::Mismatch(format!("N = {n}: determinant {det} is negative")));
    }
    if formula.to_u64() != Some(enumerated) {
        return Err(Error::Mismatch(format!("N = {n}: enumeration {enumerated} vs formula {formula}")));
    }
    if biguint_to_bigint(&formula) != det {
        return Err(Error::Mismatch(format!("N = {n}: formula {formula} vs determinant {det}")));
    }
    Ok(AsmReport { n, enumerated, formula: formula.to_string(), determinant: det.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        let v: Vec<u64> = (1..=7).map(|n| asm_count_formula(n).unwrap().to_u64().unwrap()).collect();
        assert_eq!(v, [1, 2, 7, 42, 429, 7436, 218348]);
    }

    #[test]
    fn enumeration_values() {
        for (n, want) in [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)] {
            assert_eq!(asm_enumerate(n).unwrap(), want);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(asm_enumerate(6), Err(Error::Budget { n: 6, max: 5 }));
    }

    #[test]
    fn samples_are_valid_and_distinct() {
        let e = asm_enumerate_with(3, Exec::Sequential).unwrap();
        assert_eq!(e.samples.len(), 7);
        assert!(e.samples.iter().all(AsMatrix::is_valid));
        let mut v: Vec<_> = e.samples.iter().map(|m| m.entries().to_vec()).collect();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 7);
        assert!(asm_enumerate_with(4, Exec::Sequential).unwrap().samples.is_empty());
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(AsMatrix::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).is_ok());
        assert!(AsMatrix::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(AsMatrix::new(vec![vec![-1, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = asm_enumerate_with(5, Exec::Sequential).unwrap().count;
        let b = asm_enumerate_with(5, Exec::Parallel).unwrap().count;
        assert_eq!(a, b);
    }

    #[test]
    fn crosscheck_small() {
        for n in 1..=5 {
            let r = asm_crosscheck(n).unwrap();
            assert_eq!(r.formula, r.determinant);
        }
    }
}
