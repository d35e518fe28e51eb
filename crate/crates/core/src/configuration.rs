//! The vector configuration `A = {a_1, .., a_m} ⊂ Z^n` of a positive lattice.
//!
//! `a_i` is the image of `e_i` in `Z^m / Sat(L) ≅ Z^n`. The isomorphism is
//! only canonical up to `GL_n(Z)`; we fix it by taking the Hermite basis of
//! the orthogonal complement of `L` as the rows of the matrix. Entries of the
//! matrix are therefore one representative among many, while everything
//! derived from it downstream (face supports, verdicts) is invariant.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{integer_kernel, rational_feasible, IntMatrix, RatVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    matrix: IntMatrix,
    grading: RatVector,
}

impl Configuration {
    /// Configuration of a positive lattice; rejects non-positive lattices.
    pub fn of(l: &Lattice) -> Result<Self> {
        if !l.is_positive() {
            return Err(Error::NotPositive);
        }
        let matrix = integer_kernel(l.basis());
        let a = Self::from_matrix(matrix)?;
        if let Some(j) = (0..a.m()).find(|&j| a.column(j).iter().all(Zero::is_zero)) {
            return Err(Error::Internal(format!("zero column {} in configuration of a positive lattice", j + 1)));
        }
        Ok(a)
    }

    /// Wraps an explicit `n × m` matrix whose columns admit a strict positive grading.
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        let cols: Vec<RatVector> = (0..matrix.cols()).map(|j| RatVector::from_ints(&matrix.column(j))).collect();
        let grading = match rational_feasible(&[], &cols)? {
            Some(d) => d,
            None => return Err(Error::NotPositive),
        };
        Ok(Self { matrix, grading })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn m(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, i: usize) -> Vec<BigInt> {
        self.matrix.column(i)
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.m()).map(|j| self.column(j)).collect()
    }

    /// A rational `d` with `d·a_i ≥ 1` for every column.
    pub fn grading(&self) -> &RatVector {
        &self.grading
    }

    /// Recomputes a grading witness from scratch.
    pub fn grading_witness(&self) -> Result<RatVector> {
        let cols: Vec<RatVector> = (0..self.m()).map(|j| RatVector::from_ints(&self.column(j))).collect();
        rational_feasible(&[], &cols)?.ok_or(Error::NotPositive)
    }

    /// `deg_A(x^v) = Σ v_i a_i` for a nonnegative exponent vector `v`.
    pub fn degree(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: v.len() });
        }
        if let Some(i) = v.iter().position(Signed::is_negative) {
            return Err(Error::NegativeEntry(i));
        }
        let mut out = vec![BigInt::zero(); self.n()];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.matrix.column(i)) {
                *o += vi * a;
            }
        }
        Ok(out)
    }

    /// Dimension of the cone `pos(A)`: the rank of the matrix.
    pub fn dimension(&self) -> usize {
        self.matrix.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeVector;
    use num_rational::BigRational;
    use num_traits::One;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_lattice_gives_standard_basis() {
        let a = Configuration::of(&Lattice::zero(3).unwrap()).unwrap();
        assert_eq!(a.matrix(), &IntMatrix::identity(3));
        assert_eq!(a.grading_witness().unwrap(), RatVector::from_i64(&[1, 1, 1]));
    }

    #[test]
    fn rejects_non_positive() {
        let l = Lattice::from_generators(2, &[LatticeVector::from_i64(&[1, 1])]).unwrap();
        assert_eq!(Configuration::of(&l), Err(Error::NotPositive));
    }

    #[test]
    fn degree_checks() {
        let a = Configuration::from_matrix(IntMatrix::from_i64(&[&[1, 1, 1, 1]])).unwrap();
        assert_eq!(a.degree(&big(&[1, 1, 0, 0])).unwrap(), big(&[2]));
        assert_eq!(a.degree(&big(&[0, 0, 0, 0])).unwrap(), big(&[0]));
        assert_eq!(a.degree(&big(&[0, -1, 0, 0])), Err(Error::NegativeEntry(1)));
        assert_eq!(a.grading_witness().unwrap(), RatVector::from_i64(&[1]));
    }

    #[test]
    fn grading_is_strict() {
        let a = Configuration::from_matrix(IntMatrix::from_i64(&[&[1, 0, 1, 2], &[0, 1, 2, 1]])).unwrap();
        let d = a.grading_witness().unwrap();
        for c in a.columns() {
            assert!(d.dot_int(&c) >= BigRational::one());
        }
        assert!(Configuration::from_matrix(IntMatrix::from_i64(&[&[1, -1]])).is_err());
    }
}
