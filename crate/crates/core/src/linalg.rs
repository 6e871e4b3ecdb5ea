//! Dense square matrices over Q(ζ₂₄) and the exact determinant kernel.

use std::fmt;

use crate::error::Result;
use crate::field::FieldElement;

/// N×N matrix, row-major, 0-based (row m, column n).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    size: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zeros(size: usize) -> Self {
        ExactMatrix { size, entries: vec![FieldElement::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for k in 0..size {
            m.set(k, k, FieldElement::one());
        }
        m
    }

    pub fn from_fn<F>(size: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> FieldElement,
    {
        let mut entries = Vec::with_capacity(size * size);
        for m in 0..size {
            for n in 0..size {
                entries.push(f(m, n));
            }
        }
        ExactMatrix { size, entries }
    }

    pub fn try_from_fn<F>(size: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<FieldElement>,
    {
        let mut entries = Vec::with_capacity(size * size);
        for m in 0..size {
            for n in 0..size {
                entries.push(f(m, n)?);
            }
        }
        Ok(ExactMatrix { size, entries })
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        ExactMatrix { size, entries: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, m: usize, n: usize) -> &FieldElement {
        &self.entries[m * self.size + n]
    }

    pub fn set(&mut self, m: usize, n: usize, value: FieldElement) {
        self.entries[m * self.size + n] = value;
    }

    pub fn row(&self, m: usize) -> &[FieldElement] {
        &self.entries[m * self.size..(m + 1) * self.size]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for n in 0..self.size {
            self.entries.swap(a * self.size + n, b * self.size + n);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |m, n| self.get(n, m).clone())
    }

    /// Applies `f` to every entry.
    pub fn map<F: FnMut(&FieldElement) -> FieldElement>(&self, f: F) -> Self {
        ExactMatrix { size: self.size, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale_row(&self, index: usize, c: &FieldElement) -> Self {
        let mut out = self.clone();
        for n in 0..self.size {
            let v = self.get(index, n) * c;
            out.set(index, n, v);
        }
        out
    }

    pub fn scale_col(&self, index: usize, c: &FieldElement) -> Self {
        let mut out = self.clone();
        for m in 0..self.size {
            let v = self.get(m, index) * c;
            out.set(m, index, v);
        }
        out
    }

    /// Scales row m by `rows[m]` and column n by `cols[n]` in one pass.
    pub fn scale_diag(&self, rows: &[FieldElement], cols: &[FieldElement]) -> Self {
        assert_eq!(rows.len(), self.size);
        assert_eq!(cols.len(), self.size);
        Self::from_fn(self.size, |m, n| self.get(m, n) * &rows[m] * &cols[n])
    }

    /// Exact determinant by Gaussian elimination over the field.
    ///
    /// Pivot is the first nonzero entry in the column; a column without one
    /// makes the matrix singular and the result is exactly zero.
    pub fn determinant(&self) -> FieldElement {
        let n = self.size;
        if n == 0 {
            return FieldElement::one();
        }
        let mut a = self.clone();
        let mut det = FieldElement::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return FieldElement::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            if col + 1 == n {
                break;
            }
            let p_inv = p.invert().expect("pivot is nonzero");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) * &p_inv;
                for c in col + 1..n {
                    let v = a.get(r, c) - &(&factor * a.get(col, c));
                    a.set(r, c, v);
                }
                a.set(r, col, FieldElement::zero());
            }
        }
        det
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.size, self.size)?;
        for m in 0..self.size {
            let row: Vec<String> = self.row(m).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn identity_determinant() {
        assert!(ExactMatrix::identity(5).determinant().is_one());
    }

    #[test]
    fn two_by_two() {
        let m = ExactMatrix::from_rows(vec![vec![fe(2), fe(1)], vec![fe(1), fe(3)]]);
        assert_eq!(m.determinant(), fe(5));
    }

    #[test]
    fn equal_rows_vanish() {
        let r = vec![fe(1), FieldElement::omega(), fe(4)];
        let m = ExactMatrix::from_rows(vec![r.clone(), vec![fe(0), fe(2), fe(7)], r]);
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn zero_leading_pivot_needs_swap() {
        let m = ExactMatrix::from_rows(vec![vec![fe(0), fe(1)], vec![fe(1), fe(0)]]);
        assert_eq!(m.determinant(), fe(-1));
    }

    #[test]
    fn scale_row_multiplies_det() {
        let m = ExactMatrix::identity(2).scale_row(0, &fe(3));
        assert_eq!(m.determinant(), fe(3));
        let m = ExactMatrix::identity(3).scale_col(2, &FieldElement::i());
        assert_eq!(m.determinant(), FieldElement::i());
    }
}
