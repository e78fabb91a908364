use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::QuadScalar;
use crate::serial::{entry_record, rational_record, EntryRecord, WireInt};

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QuadScalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![QuadScalar::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, QuadScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QuadScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QuadScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QuadScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[QuadScalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadScalar::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &QuadScalar)> {
        self.entries.iter().position(|e| !e.is_zero()).map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, s: &QuadScalar) -> Result<Self> {
        let entries = self.entries.iter().map(|a| s.try_mul(a)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.entries[idx] = out.entries[idx].try_add(&a.try_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let v = a.try_mul(other.get(r2, c2))?;
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<QuadScalar> {
        (0..self.rows.min(self.cols)).try_fold(QuadScalar::zero(), |acc, i| acc.try_add(self.get(i, i)))
    }

    /// Row echelon reduction with full pivoting. Returns the reduced copy,
    /// the rank, and the column order (pivot columns first).
    fn eliminate(&self) -> Result<(Self, usize, Vec<usize>)> {
        let mut m = self.clone();
        let mut col_order: Vec<usize> = (0..self.cols).collect();
        let mut rank = 0;
        while rank < m.rows.min(m.cols) {
            let pivot = (rank..m.rows)
                .flat_map(|r| (rank..m.cols).map(move |c| (r, c)))
                .find(|&(r, c)| !m.get(r, col_order[c]).is_zero());
            let Some((pr, pc)) = pivot else { break };
            m.swap_rows(rank, pr);
            col_order.swap(rank, pc);
            let inv = m.get(rank, col_order[rank]).inverse()?;
            for r in rank + 1..m.rows {
                let factor = m.get(r, col_order[rank]).try_mul(&inv)?;
                if factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let v = m.get(r, c).try_sub(&factor.try_mul(m.get(rank, c))?)?;
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        Ok((m, rank, col_order))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.eliminate()?.1)
    }

    /// Exact inverse by Gauss-Jordan elimination with full pivoting.
    ///
    /// Returns `Err(Error::NonInvertible)` for singular input.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::SizeMismatch(format!("cannot invert {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        // col_perm[k] is the original column (unknown) sitting in position k
        let mut col_perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let pivot = (k..n).flat_map(|r| (k..n).map(move |c| (r, c))).find(|&(r, c)| !a.get(r, c).is_zero());
            let Some((pr, pc)) = pivot else { return Err(Error::NonInvertible) };
            a.swap_rows(k, pr);
            inv.swap_rows(k, pr);
            if pc != k {
                for r in 0..n {
                    a.entries.swap(r * n + k, r * n + pc);
                }
                col_perm.swap(k, pc);
            }
            let p_inv = a.get(k, k).inverse()?;
            for c in 0..n {
                let v = a.get(k, c).try_mul(&p_inv)?;
                a.set(k, c, v);
                let w = inv.get(k, c).try_mul(&p_inv)?;
                inv.set(k, c, w);
            }
            for r in 0..n {
                if r == k {
                    continue;
                }
                let f = a.get(r, k).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(r, c).try_sub(&f.try_mul(a.get(k, c))?)?;
                    a.set(r, c, v);
                    let w = inv.get(r, c).try_sub(&f.try_mul(inv.get(k, c))?)?;
                    inv.set(r, c, w);
                }
            }
        }
        // A·Q·X = I with Q the column permutation, so A⁻¹ = Q·X: row k of X is unknown col_perm[k]
        let mut out = Self::zeros(n, n);
        for (k, &orig) in col_perm.iter().enumerate() {
            for c in 0..n {
                out.set(orig, c, inv.get(k, c).clone());
            }
        }
        Ok(out)
    }

    /// Discriminant of the first irrational entry, if any.
    pub fn field_discriminant(&self) -> Option<&BigRational> {
        self.entries.iter().find(|e| !e.is_rational()).map(QuadScalar::discriminant)
    }

    pub fn to_record(&self, fallback_d: &BigRational) -> MatrixRecord {
        let d = self.field_discriminant().unwrap_or(fallback_d);
        MatrixRecord {
            rows: self.rows,
            cols: self.cols,
            d: rational_record(d),
            entries: self.entries.iter().map(entry_record).collect(),
        }
    }
}

/// `{rows, cols, D, entries: [[x_num, x_den, y_num, y_den], ...]}`, row-major.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "D")]
    pub d: [WireInt; 2],
    pub entries: Vec<EntryRecord>,
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:>width$}", cells[r * self.cols + c])).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| QuadScalar::from_int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn inverse_of_small_matrix() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, m(&[&[4, -1], &[-7, 2]]));
        assert_eq!(a.mul(&inv).unwrap(), DenseMatrix::identity(2));
    }

    #[test]
    fn inverse_needs_column_pivot() {
        let a = m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), DenseMatrix::identity(3));
        assert_eq!(inv.mul(&a).unwrap(), DenseMatrix::identity(3));
    }

    #[test]
    fn singular_is_a_value_outcome() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).invert(), Err(Error::NonInvertible));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
        assert!(matches!(m(&[&[1, 2]]).invert(), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn inverse_over_quadratic_field() {
        let r5 = QuadScalar::sqrt_of(parse_rational("5").unwrap());
        let a =
            DenseMatrix::from_rows(vec![vec![QuadScalar::one(), r5.clone()], vec![r5.neg(), QuadScalar::from_int(2)]])
                .unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), DenseMatrix::identity(2));
    }

    #[test]
    fn kron_and_trace() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i2 = DenseMatrix::identity(2);
        let k = a.kron(&i2).unwrap();
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(2, 0), &QuadScalar::from_int(3));
        assert_eq!(k.trace().unwrap(), QuadScalar::from_int(10));
    }

    #[test]
    fn shape_errors() {
        let a = m(&[&[1, 2]]);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&DenseMatrix::identity(2)).is_err());
    }
}
