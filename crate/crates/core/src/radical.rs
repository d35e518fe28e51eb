//! Cover checking and the radical-generation criterion.
//!
//! A family `U ⊂ L` generates `rad(I_L)` up to radical iff (i) it covers
//! every subset that is not a face support and (ii) on every face support
//! `E` the members supported in `E` generate `L ∩ Z^E` (in characteristic
//! `p`: the same after `p`-saturating both sides).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::lattice::{is_prime, Lattice, LatticeVector};
use crate::support::Support;

/// Largest ambient dimension accepted by the exhaustive subset sweep.
pub const MAX_SWEEP: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }
}

/// Field characteristic: `0` or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u64", try_from = "u64")]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn new(c: u64) -> Result<Self> {
        match c {
            0 => Ok(Characteristic::Zero),
            p if is_prime(p) => Ok(Characteristic::Prime(p)),
            p => Err(Error::NotPrime(p)),
        }
    }
}

impl From<Characteristic> for u64 {
    fn from(c: Characteristic) -> u64 {
        match c {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }
}

impl TryFrom<u64> for Characteristic {
    type Error = Error;
    fn try_from(c: u64) -> Result<Self> {
        Characteristic::new(c)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u64::from(*self))
    }
}

/// One non-face subset and the index (into the supplied list) of the first
/// vector covering it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    pub subset: Support,
    pub vector: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVerdict {
    pub status: Status,
    /// Least uncovered non-face subset in shortlex order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Support>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<Vec<Covering>>,
}

impl CoverVerdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Lattice comparison on one face support. In characteristic `p` both
/// lattices are stored already `p`-saturated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub face: Support,
    pub required: Lattice,
    pub generated: Lattice,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalVerdict {
    pub status: Status,
    pub characteristic: Characteristic,
    pub cover: CoverVerdict,
    pub face_reports: Vec<FaceReport>,
}

impl RadicalVerdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// First face whose lattices differ.
    pub fn failing_face(&self) -> Option<Support> {
        self.face_reports.iter().find(|r| !r.equal).map(|r| r.face)
    }
}

/// Whether `u` splits `e`: one sign part is supported in `e`, the other is not.
pub fn covers_subset(u: &LatticeVector, e: Support) -> bool {
    split(u.positive_support(), u.negative_support(), e)
}

fn split(pos: Support, neg: Support, e: Support) -> bool {
    (pos.is_subset(e) && !neg.is_subset(e)) || (neg.is_subset(e) && !pos.is_subset(e))
}

fn check_vectors(m: usize, u: &[LatticeVector]) -> Result<Vec<(Support, Support)>> {
    u.iter()
        .map(|v| {
            if v.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: v.len() });
            }
            Ok((v.positive_support(), v.negative_support()))
        })
        .collect()
}

fn check_sweep(m: usize) -> Result<()> {
    if m > MAX_SWEEP {
        return Err(Error::SweepTooLarge(m));
    }
    Ok(())
}

/// Decides whether `u` is a cover of `a`.
pub fn is_cover(a: &Configuration, u: &[LatticeVector]) -> Result<CoverVerdict> {
    cover_with_faces(a.m(), &a.face_support_set()?, u, false)
}

/// As [`is_cover`], additionally listing a covering vector for every non-face subset.
pub fn is_cover_with_map(a: &Configuration, u: &[LatticeVector]) -> Result<CoverVerdict> {
    cover_with_faces(a.m(), &a.face_support_set()?, u, true)
}

fn cover_with_faces(m: usize, faces: &BTreeSet<Support>, u: &[LatticeVector], with_map: bool) -> Result<CoverVerdict> {
    check_sweep(m)?;
    let parts = check_vectors(m, u)?;
    let faces: HashSet<u64> = faces.iter().map(|f| f.bits()).collect();
    let first_cover = |e: Support| parts.iter().position(|&(p, n)| split(p, n, e));
    let witness = (0..1u64 << m)
        .into_par_iter()
        .filter(|bits| !faces.contains(bits))
        .map(Support::from_bits)
        .filter(|&e| first_cover(e).is_none())
        .min();
    let covering = match (witness, with_map) {
        (None, true) => Some(
            (0..1u64 << m)
                .filter(|bits| !faces.contains(bits))
                .map(Support::from_bits)
                .sorted()
                .map(|e| Covering { subset: e, vector: first_cover(e).expect("no uncovered subset") })
                .collect(),
        ),
        _ => None,
    };
    Ok(CoverVerdict { status: Status::of(witness.is_none()), witness, covering })
}

/// Decides whether `rad(B(u_1), .., B(u_q)) = rad(I_L)` in the given characteristic.
pub fn check_radical_generation(l: &Lattice, u: &[LatticeVector], ch: Characteristic) -> Result<RadicalVerdict> {
    if let Characteristic::Prime(p) = ch {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    check_vectors(l.ambient(), u)?;
    for v in u {
        if !l.contains(v)? {
            return Err(Error::NotInLattice(v.to_string()));
        }
    }
    let a = Configuration::of(l)?;
    let faces = a.face_support_set()?;
    let cover = cover_with_faces(a.m(), &faces, u, false)?;
    let face_reports = faces
        .par_iter()
        .map(|&e| face_report(l, u, e, ch))
        .collect::<Result<Vec<_>>>()?;
    let ok = cover.passed() && face_reports.iter().all(|r| r.equal);
    Ok(RadicalVerdict { status: Status::of(ok), characteristic: ch, cover, face_reports })
}

fn face_report(l: &Lattice, u: &[LatticeVector], e: Support, ch: Characteristic) -> Result<FaceReport> {
    let inside: Vec<LatticeVector> = u.iter().filter(|v| v.support().is_subset(e)).cloned().collect();
    let mut required = l.restrict(e)?;
    let mut generated = Lattice::from_generators(l.ambient(), &inside)?;
    if let Characteristic::Prime(p) = ch {
        required = required.p_saturation(p)?;
        generated = generated.p_saturation(p)?;
    }
    let equal = required == generated;
    Ok(FaceReport { face: e, required, generated, equal })
}

/// A cover of `m − n` vectors for a lattice whose cone is simplex: one
/// relation `g_i e_i − Σ c_j e_j` per index `i` that is not a ray
/// representative, with the `j` ranging over the rays of the minimal face of `a_i`.
pub fn construct_simplex_cover(l: &Lattice, a: &Configuration) -> Result<Vec<LatticeVector>> {
    if l.ambient() != a.m() {
        return Err(Error::DimensionMismatch { expected: l.ambient(), found: a.m() });
    }
    let rays = a.is_simplex()?.ok_or(Error::NotSimplex)?;
    if a.dimension() != a.n() || rays.len() != a.n() {
        return Err(Error::Precondition("cone dimension differs from n".into()));
    }
    let ray_set = Support::from_indices(rays.iter().copied())?;
    let mut out = Vec::with_capacity(a.m() - a.n());
    for i in (0..a.m()).filter(|&i| !ray_set.contains(i)) {
        let d = a.minimal_face_support(i)?.intersection(ray_set);
        out.push(l.rank_one_relation(i, d)?);
    }
    if !is_cover(a, &out)?.passed() {
        return Err(Error::Internal("simplex construction does not cover".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinCover {
    /// Smallest cover within the limit, as indices into the pool.
    Exact { size: usize, indices: Vec<usize> },
    /// No sub-family of at most `limit` vectors covers; the minimum is at least this.
    AtLeast(usize),
}

/// Smallest sub-family of `pool` that is a cover, searched up to `limit` members.
pub fn min_cover_size(a: &Configuration, pool: &[LatticeVector], limit: usize) -> Result<MinCover> {
    let m = a.m();
    check_sweep(m)?;
    let parts = check_vectors(m, pool)?;
    let faces: HashSet<u64> = a.face_support_set()?.iter().map(|f| f.bits()).collect();
    let non_faces: Vec<Support> = (0..1u64 << m).filter(|b| !faces.contains(b)).map(Support::from_bits).collect();
    let words = non_faces.len().div_ceil(64);
    let coverage: Vec<Vec<u64>> = parts
        .iter()
        .map(|&(p, n)| {
            let mut bits = vec![0u64; words];
            for (k, &e) in non_faces.iter().enumerate() {
                if split(p, n, e) {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let left = non_faces.len() - w * 64;
            if left >= 64 { u64::MAX } else { (1u64 << left) - 1 }
        })
        .collect();
    for k in 0..=limit.min(pool.len()) {
        let found = (0..pool.len()).combinations(k).find(|idx| {
            (0..words).all(|w| idx.iter().fold(0u64, |acc, &i| acc | coverage[i][w]) == full[w])
        });
        if let Some(indices) = found {
            return Ok(MinCover::Exact { size: k, indices });
        }
    }
    Ok(MinCover::AtLeast(limit + 1))
}

/// Non-face subsets grouped by the vectors that cover them; a diagnostic view.
pub fn coverage_table(a: &Configuration, u: &[LatticeVector]) -> Result<BTreeMap<Support, Vec<usize>>> {
    let m = a.m();
    check_sweep(m)?;
    let parts = check_vectors(m, u)?;
    let faces = a.face_support_set()?;
    Ok((0..1u64 << m)
        .map(Support::from_bits)
        .filter(|e| !faces.contains(e))
        .map(|e| (e, parts.iter().positions(|&(p, n)| split(p, n, e)).collect()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::veronese33;

    fn s(ix: &[usize]) -> Support {
        Support::from_one_based(ix)
    }

    fn pick(named: &[LatticeVector], one_based: &[usize]) -> Vec<LatticeVector> {
        one_based.iter().map(|&i| named[i - 1].clone()).collect()
    }

    #[test]
    fn covers_subset_examples() {
        let u11 = LatticeVector::from_i64(&[0, 0, 0, 1, 0, 0, 1, 0, 0, -2]);
        assert!(covers_subset(&u11, s(&[10])));
        let u1 = LatticeVector::from_i64(&[2, 1, 0, -3, 0, 0, 0, 0, 0, 0]);
        assert!(covers_subset(&u1, s(&[1, 2])));
        assert!(!covers_subset(&u1, s(&[1, 2, 4])));
        assert!(!covers_subset(&u1, s(&[3])));
    }

    #[test]
    fn veronese_cover_and_witness() {
        let v = veronese33();
        let a = Configuration::of(&v.lattice).unwrap();
        let u = v.family("u");
        let seven = pick(&u, &[1, 3, 4, 6, 7, 9, 11]);
        assert!(is_cover(&a, &seven).unwrap().passed());
        let six = pick(&u, &[1, 3, 4, 6, 7, 9]);
        let verdict = is_cover(&a, &six).unwrap();
        assert_eq!(verdict.status, Status::Fail);
        assert_eq!(verdict.witness, Some(s(&[10])));
        let empty = is_cover(&a, &[]).unwrap();
        assert!(!empty.passed());
    }

    #[test]
    fn cover_map_lists_every_non_face() {
        let v = veronese33();
        let a = Configuration::of(&v.lattice).unwrap();
        let u = pick(&v.family("u"), &[1, 3, 4, 6, 7, 9, 11]);
        let verdict = is_cover_with_map(&a, &u).unwrap();
        let map = verdict.covering.unwrap();
        assert_eq!(map.len(), 1024 - 8);
        assert!(map.iter().all(|c| covers_subset(&u[c.vector], c.subset)));
    }

    #[test]
    fn veronese_radical_checks() {
        let v = veronese33();
        let u = v.family("u");
        let all = check_radical_generation(&v.lattice, &u, Characteristic::Zero).unwrap();
        assert!(all.passed());
        let mut seven = pick(&u, &[1, 3, 4, 6, 7, 9]);
        seven.push(v.get("v").unwrap().clone());
        let zero = check_radical_generation(&v.lattice, &seven, Characteristic::Zero).unwrap();
        assert!(!zero.passed());
        assert!(zero.cover.passed());
        assert_eq!(zero.failing_face(), Some(s(&[1, 2, 4, 5])));
        assert!(check_radical_generation(&v.lattice, &seven, Characteristic::new(3).unwrap()).unwrap().passed());
        assert!(!check_radical_generation(&v.lattice, &seven, Characteristic::new(5).unwrap()).unwrap().passed());
    }

    #[test]
    fn radical_rejects_bad_input() {
        let v = veronese33();
        let outside = LatticeVector::from_i64(&[1, -1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(
            check_radical_generation(&v.lattice, &[outside], Characteristic::Zero),
            Err(Error::NotInLattice(_))
        ));
        assert_eq!(Characteristic::new(4), Err(Error::NotPrime(4)));
        assert!(matches!(
            check_radical_generation(&v.lattice, &[], Characteristic::Prime(6)),
            Err(Error::NotPrime(6))
        ));
        let l = Lattice::from_generators(2, &[LatticeVector::from_i64(&[1, 1])]).unwrap();
        assert_eq!(check_radical_generation(&l, &[], Characteristic::Zero), Err(Error::NotPositive));
    }

    #[test]
    fn simplex_cover_on_veronese() {
        let v = veronese33();
        let a = Configuration::of(&v.lattice).unwrap();
        let cover = construct_simplex_cover(&v.lattice, &a).unwrap();
        assert_eq!(cover.len(), 7);
        for (w, i) in cover.iter().zip(3..10) {
            assert_eq!(w.positive_support(), Support::singleton(i));
            assert!(v.lattice.contains(w).unwrap());
        }
    }

    #[test]
    fn simplex_cover_without_interior_points() {
        let l = Lattice::zero(3).unwrap();
        let a = Configuration::of(&l).unwrap();
        assert!(construct_simplex_cover(&l, &a).unwrap().is_empty());
    }

    #[test]
    fn min_cover_on_veronese() {
        let v = veronese33();
        let a = Configuration::of(&v.lattice).unwrap();
        let u = v.family("u");
        match min_cover_size(&a, &u, 7).unwrap() {
            MinCover::Exact { size, indices } => {
                assert_eq!(size, 7);
                let chosen: Vec<LatticeVector> = indices.iter().map(|&i| u[i].clone()).collect();
                assert!(is_cover(&a, &chosen).unwrap().passed());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(min_cover_size(&a, &[], 3).unwrap(), MinCover::AtLeast(4));
    }
}
