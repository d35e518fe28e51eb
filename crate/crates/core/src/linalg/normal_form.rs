//! Hermite and Smith normal forms over the integers, and integer kernels.
//!
//! The Hermite form is row-style: `H = U·M` with `U` unimodular, pivots
//! strictly increasing in column and positive, entries above each pivot
//! reduced into `[0, pivot)`, zero rows last. Two matrices have the same row
//! lattice iff their Hermite forms agree on the nonzero rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `h`: a canonical basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        let idx: Vec<usize> = (0..self.rank()).collect();
        self.h.select_rows(&idx)
    }
}

fn min_abs_nonzero_row(m: &IntMatrix, col: usize, from: usize) -> Option<usize> {
    (from..m.rows())
        .filter(|&i| !m[(i, col)].is_zero())
        .min_by(|&a, &b| m[(a, col)].abs().cmp(&m[(b, col)].abs()))
}

pub fn hnf(m: &IntMatrix) -> HermiteForm {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..h.cols() {
        if p == h.rows() {
            break;
        }
        while let Some(best) = min_abs_nonzero_row(&h, col, p) {
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut done = true;
            for i in p + 1..h.rows() {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(p, col)]);
                h.add_row_multiple(i, p, &q);
                u.add_row_multiple(i, p, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = -h[(i, col)].div_floor(&h[(p, col)]);
            h.add_row_multiple(i, p, &q);
            u.add_row_multiple(i, p, &q);
        }
        pivots.push(col);
        p += 1;
    }
    HermiteForm { h, u, pivots }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `d = u·m·v`, diagonal with `d_1 | d_2 | ... | d_r`, all positive.
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, tracked alongside it so callers can read off lattice bases.
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

struct SmithState {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithState {
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
    }

    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = SmithState {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &s.d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break;
        };
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        loop {
            for i in t + 1..rows {
                if !s.d[(i, t)].is_zero() {
                    let q = -s.d[(i, t)].div_floor(&s.d[(t, t)]);
                    s.row_op(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !s.d[(t, j)].is_zero() {
                    let q = -s.d[(t, j)].div_floor(&s.d[(t, t)]);
                    s.col_op(j, t, &q);
                }
            }
            // Remainders left in the pivot row or column are smaller than the pivot.
            let row_rem = (t + 1..rows).find(|&i| !s.d[(i, t)].is_zero());
            let col_rem = (t + 1..cols).find(|&j| !s.d[(t, j)].is_zero());
            if let Some(i) = row_rem {
                s.swap_rows(t, i);
                continue;
            }
            if let Some(j) = col_rem {
                s.swap_cols(t, j);
                continue;
            }
            let piv = s.d[(t, t)].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s.d[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => s.row_op(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if s.d[(t, t)].is_negative() {
            s.d.negate_row(t);
            s.u.negate_row(t);
        }
    }
    SmithForm { d: s.d, u: s.u, v: s.v, v_inv: s.v_inv }
}

/// Basis (as rows, in Hermite form) of the saturated lattice `{x ∈ Z^cols : M·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let t = hnf(&m.transpose());
    let idx: Vec<usize> = (t.rank()..m.cols()).collect();
    let k = t.u.select_rows(&idx);
    hnf(&k).basis()
}
