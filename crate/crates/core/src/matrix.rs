//! Square matrices of non-negative integer counters.
//!
//! Every arithmetic operation is checked; overflow surfaces as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseIntMatrix {
    order: usize,
    entries: Vec<u64>,
}

impl DenseIntMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0; order * order],
        }
    }

    /// Builds a matrix from row-major entries. Panics if the length is not `order²`.
    pub fn from_row_major(order: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), order * order, "entry count must be order²");
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        let n = self.order;
        &mut self.entries[i * n..(i + 1) * n]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Result<u64> {
        (0..self.order).try_fold(0u64, |acc, i| {
            acc.checked_add(self.get(i, i))
                .ok_or_else(|| Error::Overflow("matrix trace".into()))
        })
    }

    /// Sum of every entry, diagonal included.
    pub fn entry_sum(&self) -> Result<u64> {
        self.entries.iter().try_fold(0u64, |acc, &v| {
            acc.checked_add(v)
                .ok_or_else(|| Error::Overflow("matrix entry sum".into()))
        })
    }

    pub fn checked_mul(&self, rhs: &DenseIntMatrix) -> Result<DenseIntMatrix> {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        let n = self.order;
        let mut out = DenseIntMatrix::zeros(n);
        let overflow = || Error::Overflow("matrix product".into());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = out.row_mut(i);
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    let term = a.checked_mul(b).ok_or_else(overflow)?;
                    *o = o.checked_add(term).ok_or_else(overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise `self - rhs`; fails if any entry would go negative.
    pub fn checked_sub(&self, rhs: &DenseIntMatrix) -> Result<DenseIntMatrix> {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| {
                a.checked_sub(b)
                    .ok_or_else(|| Error::Overflow("matrix difference (negative entry)".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            entries,
        })
    }

    /// Copy with every off-diagonal entry cleared.
    pub fn diagonal(&self) -> DenseIntMatrix {
        let mut out = DenseIntMatrix::zeros(self.order);
        for i in 0..self.order {
            out.set(i, i, self.get(i, i));
        }
        out
    }

    /// Writes `header` followed by one line of space-separated integers per row.
    pub fn write_rows(&self, header: &str, out: &mut impl fmt::Write) -> fmt::Result {
        writeln!(out, "{header}")?;
        for i in 0..self.order {
            let mut first = true;
            for v in self.row(i) {
                if !first {
                    out.write_char(' ')?;
                }
                write!(out, "{v}")?;
                first = false;
            }
            out.write_char('\n')?;
        }
        Ok(())
    }
}

impl fmt::Debug for DenseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseIntMatrix({})", self.order)?;
        for i in 0..self.order {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_overflow_is_reported() {
        let big = DenseIntMatrix::from_row_major(2, vec![u64::MAX, 1, 1, 0]);
        let err = big.checked_mul(&big).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn entry_sum_overflow_is_reported() {
        let m = DenseIntMatrix::from_row_major(2, vec![u64::MAX, 1, 0, 0]);
        assert!(m.entry_sum().is_err());
        assert_eq!(m.trace().unwrap(), u64::MAX);
    }

    #[test]
    fn negative_difference_is_an_error() {
        let a = DenseIntMatrix::zeros(2);
        let b = DenseIntMatrix::from_row_major(2, vec![0, 1, 0, 0]);
        assert!(a.checked_sub(&b).is_err());
        assert_eq!(b.checked_sub(&b).unwrap(), a);
    }

    #[test]
    fn row_dump_format() {
        let m = DenseIntMatrix::from_row_major(2, vec![0, 1, 1, 0]);
        let mut s = String::new();
        m.write_rows("R 1 2", &mut s).unwrap();
        assert_eq!(s, "R 1 2\n0 1\n1 0\n");
    }
}
