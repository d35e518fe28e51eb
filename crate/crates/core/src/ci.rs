//! Mixed dominating matrices and a bounded search for complete-intersection
//! certificates.
//!
//! A positive lattice ideal is a complete intersection iff its lattice has a
//! basis whose matrix is mixed dominating; it is one iff every face
//! restriction is. The search below is a semi-decision: it certifies, refutes
//! through a counting argument, or gives up at the coefficient bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::linalg::{snf, IntMatrix};
use crate::support::Support;

/// Every row has a positive and a negative entry.
pub fn is_mixed(m: &IntMatrix) -> bool {
    m.row_iter().all(|r| r.iter().any(Signed::is_positive) && r.iter().any(Signed::is_negative))
}

fn sign_masks(row: &[BigInt]) -> (u64, u64) {
    let mut pos = 0u64;
    let mut neg = 0u64;
    for (j, x) in row.iter().enumerate() {
        if x.is_positive() {
            pos |= 1 << j;
        } else if x.is_negative() {
            neg |= 1 << j;
        }
    }
    (pos, neg)
}

/// No square submatrix is mixed.
pub fn is_dominating(m: &IntMatrix) -> bool {
    assert!(m.cols() <= 64, "at most 64 columns");
    let masks: Vec<(u64, u64)> = m.row_iter().map(sign_masks).collect();
    dominating_masks(&masks, m.cols())
}

/// A `k × k` mixed submatrix on rows `R` exists iff some set of at most `k`
/// columns meets both sign sets of every row in `R` (and `k ≤` columns):
/// padding the column set keeps every row mixed.
fn dominating_masks(rows: &[(u64, u64)], cols: usize) -> bool {
    let r = rows.len();
    (1u64..1 << r).filter(|s| s.count_ones() >= 2 && s.count_ones() as usize <= cols).all(|subset| {
        let sets: Vec<u64> = (0..r).filter(|i| subset >> i & 1 == 1).flat_map(|i| [rows[i].0, rows[i].1]).collect();
        !hitting_set_within(&sets, 0, subset.count_ones())
    })
}

/// Some `C ⊇ chosen` with `|C \ chosen| ≤ budget` meets every set.
fn hitting_set_within(sets: &[u64], chosen: u64, budget: u32) -> bool {
    let Some(&open) = sets.iter().find(|&&s| s & chosen == 0) else {
        return true;
    };
    if budget == 0 || open == 0 {
        return false;
    }
    let mut bits = open;
    while bits != 0 {
        let c = bits & bits.wrapping_neg();
        bits &= bits - 1;
        if hitting_set_within(sets, chosen | c, budget - 1) {
            return true;
        }
    }
    false
}

pub fn is_mixed_dominating(m: &IntMatrix) -> bool {
    is_mixed(m) && is_dominating(m)
}

/// Vectors proposed as a basis, with their matrix `M(v_1, .., v_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateBasis {
    pub vectors: Vec<LatticeVector>,
    pub matrix: IntMatrix,
}

impl CandidateBasis {
    pub fn new(ambient: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        let rows = vectors
            .iter()
            .map(|v| {
                if v.len() != ambient {
                    return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
                }
                Ok(v.entries().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = IntMatrix::from_rows(ambient, rows)?;
        Ok(Self { vectors, matrix })
    }
}

/// Whether `b` is a basis of `l` with a mixed dominating matrix.
pub fn ci_with_basis(l: &Lattice, b: &CandidateBasis) -> Result<bool> {
    for v in &b.vectors {
        if v.len() != l.ambient() {
            return Err(Error::DimensionMismatch { expected: l.ambient(), found: v.len() });
        }
        if !l.contains(v)? {
            return Err(Error::NotInLattice(v.to_string()));
        }
    }
    let m = &b.matrix;
    Ok(b.vectors.len() == l.rank() && m.rank() == l.rank() && l.spans(&b.vectors)? && is_mixed_dominating(m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CiStatus {
    CiCertified { basis: Vec<LatticeVector> },
    NotCiAtFace { face: Support, reason: String },
    UnknownWithinBound { bound: u32 },
}

/// Search outcome on one face restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiFaceReport {
    pub face: Support,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<LatticeVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiVerdict {
    #[serde(flatten)]
    pub status: CiStatus,
    pub face_reports: Vec<CiFaceReport>,
}

impl CiVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, CiStatus::CiCertified { .. })
    }
}

/// Searches every face restriction of `l` for a mixed dominating basis whose
/// coefficients over the Hermite basis lie in `[-bound, bound]`.
pub fn ci_search(l: &Lattice, bound: u32) -> Result<CiVerdict> {
    let a = Configuration::of(l)?;
    let faces = a.face_support_set()?;
    let singleton_faces: Support = Support::from_indices(
        faces.iter().filter(|f| f.len() == 1).map(|f| f.iter().next().expect("singleton")),
    )?;
    let reports = faces
        .par_iter()
        .filter(|f| !f.is_empty())
        .map(|&e| -> Result<CiFaceReport> {
            let le = l.restrict(e)?;
            let rank = le.rank();
            let obstruction = cover_obstruction(e, singleton_faces, rank);
            let basis = if obstruction.is_some() { None } else { search_basis(&le, bound)? };
            Ok(CiFaceReport { face: e, rank, basis, obstruction })
        })
        .collect::<Result<Vec<_>>>()?;
    let status = if let Some(r) = reports.iter().find(|r| r.obstruction.is_some()) {
        CiStatus::NotCiAtFace { face: r.face, reason: r.obstruction.clone().expect("present") }
    } else {
        let full = Support::full(l.ambient());
        match reports.iter().find(|r| r.face == full).and_then(|r| r.basis.clone()) {
            Some(basis) => {
                check_face_coherence(l, &faces, &basis)?;
                CiStatus::CiCertified { basis }
            }
            None => CiStatus::UnknownWithinBound { bound },
        }
    };
    Ok(CiVerdict { status, face_reports: reports })
}

/// A basis of a complete intersection generates the ideal and so covers the
/// face configuration; a vector of a positive lattice covers the singleton
/// `{j}` only when one of its sign parts is supported exactly on `j`, so it
/// covers at most two singletons.
fn cover_obstruction(e: Support, singleton_faces: Support, rank: usize) -> Option<String> {
    let uncovered = e.difference(singleton_faces).len();
    (uncovered > 2 * rank).then(|| {
        format!("{uncovered} non-face singletons cannot be covered by {rank} basis vectors (each covers at most 2)")
    })
}

/// The sub-basis supported in each face support must be a mixed dominating
/// basis of the restriction.
fn check_face_coherence(l: &Lattice, faces: &BTreeSet<Support>, basis: &[LatticeVector]) -> Result<()> {
    for &e in faces {
        let sub: Vec<LatticeVector> = basis.iter().filter(|b| b.support().is_subset(e)).cloned().collect();
        let le = l.restrict(e)?;
        if !ci_with_basis(&le, &CandidateBasis::new(l.ambient(), sub)?)? {
            return Err(Error::Internal(format!("certified basis does not restrict to face {e}")));
        }
    }
    Ok(())
}

struct Candidate {
    lambda: Vec<i64>,
    vector: LatticeVector,
    masks: (u64, u64),
}

/// Coefficient vectors in `[-b, b]^k`, primitive, first nonzero entry
/// positive, ordered by max-norm then lexicographically.
fn coefficient_vectors(k: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for norm in 1..=b {
        let mut layer = Vec::new();
        let mut cur = vec![-norm; k];
        loop {
            let first_pos = cur.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
            let max = cur.iter().map(|x| x.abs()).max().unwrap_or(0);
            let g = cur.iter().fold(0i64, |g, &x| g.gcd(&x));
            if first_pos && max == norm && g == 1 {
                layer.push(cur.clone());
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if cur[i] < norm {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -norm;
            }
            if cur.iter().all(|&x| x == -norm) {
                break;
            }
        }
        out.extend(layer);
    }
    out
}

/// Rows extend to a basis of `Z^k`: all invariant factors are 1 and the rank is full.
fn extends_to_unimodular(lambdas: &[&[i64]]) -> bool {
    let k = lambdas[0].len();
    let rows = lambdas.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = IntMatrix::from_rows(k, rows).expect("equal lengths");
    let f = snf(&m).invariant_factors();
    f.len() == lambdas.len() && f.iter().all(One::is_one)
}

fn search_basis(le: &Lattice, bound: u32) -> Result<Option<Vec<LatticeVector>>> {
    let k = le.rank();
    let h = le.basis_vectors();
    match k {
        0 => return Ok(Some(Vec::new())),
        1 => {
            let m = IntMatrix::from_rows(le.ambient(), vec![h[0].entries().to_vec()])?;
            return Ok(is_mixed(&m).then(|| h.clone()));
        }
        _ => {}
    }
    let cols = le.ambient();
    let candidates: Vec<Candidate> = coefficient_vectors(k, i64::from(bound))
        .into_iter()
        .filter_map(|lambda| {
            let mut v = LatticeVector::zero(cols);
            for (c, hv) in lambda.iter().zip(&h) {
                if *c != 0 {
                    v = v.add_scaled(&BigInt::from(*c), hv);
                }
            }
            let masks = sign_masks(v.entries());
            (masks.0 != 0 && masks.1 != 0).then_some(Candidate { lambda, vector: v, masks })
        })
        .collect();
    let found = (0..candidates.len()).into_par_iter().find_map_first(|first| {
        let mut chosen = vec![first];
        extend(&candidates, &mut chosen, k, cols).then_some(chosen)
    });
    let Some(idx) = found else {
        return Ok(None);
    };
    let basis: Vec<LatticeVector> = idx.iter().map(|&i| candidates[i].vector.clone()).collect();
    if !ci_with_basis(le, &CandidateBasis::new(cols, basis.clone())?)? {
        return Err(Error::Internal("search produced an invalid basis".into()));
    }
    Ok(Some(basis))
}

/// Depth-first extension of `chosen` (increasing candidate indices) to `k`
/// rows whose sign pattern is dominating and whose coefficient rows extend
/// to a unimodular matrix.
fn extend(candidates: &[Candidate], chosen: &mut Vec<usize>, k: usize, cols: usize) -> bool {
    if chosen.len() == k {
        return true;
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for next in start..candidates.len() {
        chosen.push(next);
        let masks: Vec<(u64, u64)> = chosen.iter().map(|&i| candidates[i].masks).collect();
        let ok = new_row_dominating(&masks, cols) && {
            let lambdas: Vec<&[i64]> = chosen.iter().map(|&i| candidates[i].lambda.as_slice()).collect();
            extends_to_unimodular(&lambdas)
        };
        if ok && extend(candidates, chosen, k, cols) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Dominance check restricted to row subsets containing the last row; the
/// rest were checked when they were chosen.
fn new_row_dominating(rows: &[(u64, u64)], cols: usize) -> bool {
    let r = rows.len();
    let last = 1u64 << (r - 1);
    (last..1 << r).filter(|s| s & last != 0 && s.count_ones() >= 2 && s.count_ones() as usize <= cols).all(|subset| {
        let sets: Vec<u64> = (0..r).filter(|i| subset >> i & 1 == 1).flat_map(|i| [rows[i].0, rows[i].1]).collect();
        !hitting_set_within(&sets, 0, subset.count_ones())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::ojeda;
    use itertools::Itertools;

    /// Exhaustive oracle: some `k × k` submatrix (`k ≥ 1`) is mixed.
    fn has_square_mixed_submatrix_brute(m: &IntMatrix) -> bool {
        for k in 1..=m.rows().min(m.cols()) {
            for rows in (0..m.rows()).combinations(k) {
                for cols in (0..m.cols()).combinations(k) {
                    let mixed = rows.iter().all(|&i| {
                        cols.iter().any(|&j| m[(i, j)].is_positive()) && cols.iter().any(|&j| m[(i, j)].is_negative())
                    });
                    if mixed {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn mixed_examples() {
        assert!(is_mixed(&mat(&[&[1, -1]])));
        assert!(!is_mixed(&mat(&[&[1, 0], &[0, -1]])));
        let l8 = ojeda(8).unwrap();
        let e = CandidateBasis::new(4, l8.select(&["e1", "e2", "e3"])).unwrap();
        assert!(is_mixed(&e.matrix));
    }

    #[test]
    fn dominating_examples() {
        assert!(is_dominating(&mat(&[&[1, -1]])));
        assert!(!is_dominating(&mat(&[&[1, -1], &[-1, 1]])));
        assert!(!is_dominating(&mat(&[&[5, -3, -1, -1], &[-3, 5, -1, -1], &[-3, -1, 5, -1]])));
        assert!(is_dominating(&mat(&[&[1, -1, 0], &[0, 1, -1]])));
        // square mixed needs k columns for k rows: three rows over two columns only allow 2x2
        assert!(is_dominating(&mat(&[&[1, -1, 0, 0], &[0, 0, 1, -1]])));
    }

    #[test]
    fn ci_with_basis_examples() {
        let l = Lattice::from_generators(4, &[LatticeVector::from_i64(&[1, 1, -1, -1])]).unwrap();
        let b = CandidateBasis::new(4, vec![LatticeVector::from_i64(&[1, 1, -1, -1])]).unwrap();
        assert!(ci_with_basis(&l, &b).unwrap());
        let l8 = ojeda(8).unwrap();
        let e = CandidateBasis::new(4, l8.select(&["e1", "e2", "e3"])).unwrap();
        assert!(!ci_with_basis(&l8.lattice, &e).unwrap());
        let l2 = Lattice::from_generators(2, &[LatticeVector::from_i64(&[2, -3])]).unwrap();
        let half = Lattice::from_generators(2, &[LatticeVector::from_i64(&[4, -6])]).unwrap();
        let b = CandidateBasis::new(2, vec![LatticeVector::from_i64(&[4, -6])]).unwrap();
        assert!(!ci_with_basis(&l2, &b).unwrap());
        assert!(ci_with_basis(&half, &b).unwrap());
        let outside = CandidateBasis::new(2, vec![LatticeVector::from_i64(&[1, -1])]).unwrap();
        assert!(ci_with_basis(&l2, &outside).is_err());
    }

    #[test]
    fn search_small_cases() {
        let l = Lattice::from_generators(2, &[LatticeVector::from_i64(&[2, -3])]).unwrap();
        assert!(ci_search(&l, 1).unwrap().is_certified());
        let z = Lattice::zero(3).unwrap();
        match ci_search(&z, 1).unwrap().status {
            CiStatus::CiCertified { basis } => assert!(basis.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn twisted_cubic_and_a_chain() {
        // twisted cubic: three quadrics at height 2, two non-face singletons, no obstruction
        let a = mat(&[&[3, 2, 1, 0], &[0, 1, 2, 3]]);
        let l = Lattice::from_matrix(&crate::linalg::integer_kernel(&a)).unwrap();
        let v = ci_search(&l, 2).unwrap();
        assert!(!v.is_certified());
        let ci = Lattice::from_generators(
            4,
            &[LatticeVector::from_i64(&[1, 1, -2, 0]), LatticeVector::from_i64(&[0, 0, 1, -1])],
        )
        .unwrap();
        let verdict = ci_search(&ci, 2).unwrap();
        assert!(verdict.is_certified(), "{verdict:?}");
        if let CiStatus::CiCertified { basis } = &verdict.status {
            assert!(ci_with_basis(&ci, &CandidateBasis::new(4, basis.clone()).unwrap()).unwrap());
        }
    }

    #[test]
    fn ojeda_eight_is_never_certified() {
        let l8 = ojeda(8).unwrap().lattice;
        for b in 1..=3 {
            assert!(!ci_search(&l8, b).unwrap().is_certified());
        }
    }

    #[test]
    fn dominating_matches_brute_force_on_samples() {
        let samples = [
            mat(&[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]),
            mat(&[&[2, -1, -1, 0], &[0, 0, 1, -1]]),
            mat(&[&[1, 1, -1], &[-1, 1, 0]]),
        ];
        for m in samples {
            assert_eq!(is_dominating(&m), !has_square_mixed_submatrix_brute(&m), "{m:?}");
        }
    }

    #[test]
    fn coefficient_order() {
        let c = coefficient_vectors(2, 1);
        assert_eq!(c, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
    }
}
