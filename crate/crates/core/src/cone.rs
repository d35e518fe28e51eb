//! Face supports of the cone `σ = pos_Q(A)`.
//!
//! A face support is a set `E = {i : a_i ∈ F}` for a face `F`. Every
//! classification here is an exact rational feasibility problem over the
//! functional `c ∈ Q^n`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::linalg::{cone_feasible, rational_feasible, IntMatrix, RatVector};
use crate::support::Support;

/// A face support together with a functional `c` that vanishes on `a_i`
/// for `i` in the support and is at least 1 on every other column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSupport {
    pub indices: Support,
    pub witness: RatVector,
}

impl FaceSupport {
    /// Re-checks the witness against `a`.
    pub fn verify(&self, a: &Configuration) -> bool {
        (0..a.m()).all(|i| {
            let v = self.witness.dot_int(&a.column(i));
            if self.indices.contains(i) {
                v == num_rational::BigRational::from_integer(0.into())
            } else {
                v >= num_rational::BigRational::from_integer(1.into())
            }
        })
    }
}

impl Configuration {
    fn rat_columns(&self) -> Vec<RatVector> {
        (0..self.m()).map(|j| RatVector::from_ints(&self.column(j))).collect()
    }

    fn check_subset(&self, e: Support) -> Result<()> {
        if e.bound() > self.m() {
            return Err(Error::IndexOutOfRange { index: e.bound() - 1, ambient: self.m() });
        }
        Ok(())
    }

    /// Support of the smallest face containing `{a_i : i ∈ e}`.
    ///
    /// `j` belongs to the closure iff every `c` with `c·a_i = 0` on `e` and
    /// `c ≥ 0` on the cone also has `c·a_j = 0`. A witness found for one `j`
    /// is usually positive on other columns too, which settles them at once.
    pub fn support_closure(&self, e: Support) -> Result<Support> {
        self.check_subset(e)?;
        let cols = self.rat_columns();
        let eq: Vec<RatVector> = e.iter().map(|i| cols[i].clone()).collect();
        let mut settled = e;
        let mut closure = e;
        for j in 0..self.m() {
            if settled.contains(j) {
                continue;
            }
            let nonneg: Vec<RatVector> = (0..self.m()).filter(|&k| !e.contains(k) && k != j).map(|k| cols[k].clone()).collect();
            match cone_feasible(&eq, &nonneg, std::slice::from_ref(&cols[j]))? {
                Some(c) => {
                    for (k, col) in cols.iter().enumerate() {
                        if c.dot(col) > num_rational::BigRational::from_integer(0.into()) {
                            settled = settled.with(k);
                        }
                    }
                }
                None => {
                    closure = closure.with(j);
                    settled = settled.with(j);
                }
            }
        }
        Ok(closure)
    }

    /// `Some` with a witness iff `e` is a face support.
    pub fn is_face_support(&self, e: Support) -> Result<Option<FaceSupport>> {
        self.check_subset(e)?;
        let cols = self.rat_columns();
        let eq: Vec<RatVector> = e.iter().map(|i| cols[i].clone()).collect();
        let strict: Vec<RatVector> = (0..self.m()).filter(|k| !e.contains(*k)).map(|k| cols[k].clone()).collect();
        if eq.is_empty() && strict.is_empty() {
            return Ok(Some(FaceSupport { indices: e, witness: RatVector::zeros(self.n()) }));
        }
        let witness = if eq.is_empty() {
            rational_feasible(&[], &strict)?
        } else {
            rational_feasible(&eq, &strict)?
        };
        Ok(witness.map(|witness| FaceSupport { indices: e, witness }))
    }

    /// All face supports, sorted (shortlex), each with a witness.
    ///
    /// Breadth-first over the face lattice: every face other than the
    /// smallest one is the closure of a smaller face plus one index.
    pub fn enumerate_face_supports(&self) -> Result<Vec<FaceSupport>> {
        let supports = self.face_support_set()?;
        supports
            .into_iter()
            .map(|e| {
                self.is_face_support(e)?
                    .ok_or_else(|| Error::Internal(format!("closed set {e} has no face witness")))
            })
            .collect()
    }

    /// Face supports without witnesses.
    pub fn face_support_set(&self) -> Result<BTreeSet<Support>> {
        let start = self.support_closure(Support::EMPTY)?;
        let mut seen: HashSet<Support> = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for j in 0..self.m() {
                if f.contains(j) {
                    continue;
                }
                let g = self.support_closure(f.with(j))?;
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Support of the minimal face containing `a_i`.
    pub fn minimal_face_support(&self, i: usize) -> Result<Support> {
        if i >= self.m() {
            return Err(Error::IndexOutOfRange { index: i, ambient: self.m() });
        }
        self.support_closure(Support::singleton(i))
    }

    fn rank_of(&self, e: Support) -> usize {
        self.matrix().select_columns(&e.to_vec()).rank()
    }

    /// One representative (lowest index) per extreme ray, in increasing order.
    pub fn extreme_rays(&self) -> Result<Vec<usize>> {
        let mut rays: Vec<usize> = Vec::new();
        let mut seen: HashSet<Support> = HashSet::new();
        for i in 0..self.m() {
            let f = self.minimal_face_support(i)?;
            if self.rank_of(f) == 1 && seen.insert(f) {
                rays.push(i);
            }
        }
        Ok(rays)
    }

    /// Ray representatives when the extreme rays are linearly independent.
    pub fn is_simplex(&self) -> Result<Option<Vec<usize>>> {
        let rays = self.extreme_rays()?;
        let independent = self.rank_of(Support::from_indices(rays.iter().copied())?) == rays.len();
        Ok(independent.then_some(rays))
    }

    /// For a full configuration, the reindexing that lists the ray
    /// representatives first and the remaining indices after them in
    /// increasing order; `None` when the configuration is not full.
    pub fn full_ordering(&self) -> Result<Option<Vec<usize>>> {
        let Some(rays) = self.is_simplex()? else {
            return Ok(None);
        };
        let n = self.n();
        if rays.len() != n || self.dimension() != n {
            return Ok(None);
        }
        let ray_set = Support::from_indices(rays.iter().copied())?;
        let full = Support::full(self.m());
        let mut order = rays;
        for i in 0..self.m() {
            if ray_set.contains(i) {
                continue;
            }
            if self.minimal_face_support(i)? != full {
                return Ok(None);
            }
            order.push(i);
        }
        Ok(Some(order))
    }

    pub fn is_full(&self) -> Result<bool> {
        Ok(self.full_ordering()?.is_some())
    }

    /// Restriction of the configuration to the columns in `e` (in order).
    pub fn columns_matrix(&self, e: Support) -> IntMatrix {
        self.matrix().select_columns(&e.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rows: &[&[i64]]) -> Configuration {
        Configuration::from_matrix(IntMatrix::from_i64(rows)).unwrap()
    }

    fn s(ix: &[usize]) -> Support {
        Support::from_one_based(ix)
    }

    #[test]
    fn quadrant_faces() {
        let a = cfg(&[&[1, 0], &[0, 1]]);
        let faces: Vec<Support> = a.enumerate_face_supports().unwrap().into_iter().map(|f| f.indices).collect();
        assert_eq!(faces, vec![s(&[]), s(&[1]), s(&[2]), s(&[1, 2])]);
        assert!(a.is_full().unwrap());
    }

    #[test]
    fn ray_configuration() {
        let a = cfg(&[&[1, 1, 1, 1]]);
        let faces: Vec<Support> = a.enumerate_face_supports().unwrap().into_iter().map(|f| f.indices).collect();
        assert_eq!(faces, vec![s(&[]), s(&[1, 2, 3, 4])]);
        assert_eq!(a.is_simplex().unwrap(), Some(vec![0]));
        assert_eq!(a.full_ordering().unwrap(), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn simplex_with_interior_points() {
        let a = cfg(&[&[1, 0, 1, 2], &[0, 1, 2, 1]]);
        assert_eq!(a.is_simplex().unwrap(), Some(vec![0, 1]));
        assert!(a.is_full().unwrap());
        assert_eq!(a.support_closure(s(&[3])).unwrap(), s(&[1, 2, 3, 4]));
        assert_eq!(a.support_closure(s(&[])).unwrap(), s(&[]));
    }

    #[test]
    fn square_cone_is_not_simplex() {
        // four rays over a square cross-section
        let a = cfg(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 1, 0, 0]]);
        // columns: (1,0,1),(0,1,1),(1,0,0),(0,1,0)
        assert_eq!(a.extreme_rays().unwrap().len(), 4);
        assert_eq!(a.is_simplex().unwrap(), None);
        assert!(!a.is_full().unwrap());
        let faces = a.enumerate_face_supports().unwrap();
        assert_eq!(faces.len(), 10);
        assert!(faces.iter().all(|f| f.verify(&a)));
    }

    #[test]
    fn full_support_has_zero_witness() {
        let a = cfg(&[&[1, 0, 1], &[0, 1, 1]]);
        let f = a.is_face_support(Support::full(3)).unwrap().unwrap();
        assert!(f.witness.is_zero());
        assert!(a.is_face_support(s(&[3])).unwrap().is_none());
        assert!(a.support_closure(s(&[9])).is_err());
    }

    #[test]
    fn implicit_equalities_in_closure() {
        let a = cfg(&[
            &[1, 0, 0, 10, -13, -4, 9],
            &[0, 1, 0, 11, -11, -4, 11],
            &[0, 0, 1, 2, -3, -1, 3],
            &[0, 0, 0, 21, -25, -9, 20],
        ]);
        let faces = a.enumerate_face_supports().unwrap();
        assert!(faces.iter().all(|f| f.verify(&a)));
        assert_eq!(faces.last().unwrap().indices, Support::full(7));
    }
}
