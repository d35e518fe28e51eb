//! Sublattices of `Z^m` and the lattice-level operations the radical and
//! complete-intersection criteria reduce to.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{cone_feasible, hnf, integer_kernel, snf, IntMatrix, RatVector};
use crate::support::{Support, MAX_AMBIENT};

/// An integer vector `u = u+ - u-`, the exponent vector of the binomial `B(u)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![BigInt::zero(); m])
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn positive_part(&self) -> Vec<BigInt> {
        self.0.iter().map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() }).collect()
    }

    pub fn negative_part(&self) -> Vec<BigInt> {
        self.0.iter().map(|x| if x.is_negative() { -x } else { BigInt::zero() }).collect()
    }

    fn support_where(&self, pred: impl Fn(&BigInt) -> bool) -> Support {
        let bits = self
            .0
            .iter()
            .take(MAX_AMBIENT)
            .enumerate()
            .filter(|(_, x)| pred(x))
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        Support::from_bits(bits)
    }

    pub fn support(&self) -> Support {
        self.support_where(|x| !x.is_zero())
    }

    /// Support of `u+`.
    pub fn positive_support(&self) -> Support {
        self.support_where(Signed::is_positive)
    }

    /// Support of `u-`.
    pub fn negative_support(&self) -> Support {
        self.support_where(Signed::is_negative)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: &BigInt, other: &LatticeVector) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(x, y)| x + c * y).collect())
    }

    pub fn same_up_to_sign(&self, other: &LatticeVector) -> bool {
        self == other || *self == other.neg()
    }
}

impl std::ops::Index<usize> for LatticeVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A sublattice `L ⊆ Z^m`, stored by its Hermite basis.
///
/// Two `Lattice` values compare equal exactly when they are the same set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice").field("ambient", &self.ambient).field("basis", &self.basis).finish()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_ambient(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::EmptyAmbient);
    }
    if m > MAX_AMBIENT {
        return Err(Error::AmbientTooLarge(m));
    }
    Ok(())
}

impl Lattice {
    /// The lattice generated by `gens` (which may be dependent) in `Z^m`.
    pub fn from_generators(m: usize, gens: &[LatticeVector]) -> Result<Self> {
        check_ambient(m)?;
        let rows = gens
            .iter()
            .map(|g| {
                if g.len() != m {
                    Err(Error::DimensionMismatch { expected: m, found: g.len() })
                } else {
                    Ok(g.0.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_matrix_unchecked(IntMatrix::from_rows(m, rows)?))
    }

    /// The row lattice of `m`.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        check_ambient(m.cols())?;
        Ok(Self::from_matrix_unchecked(m.clone()))
    }

    fn from_matrix_unchecked(m: IntMatrix) -> Self {
        let ambient = m.cols();
        Self { ambient, basis: hnf(&m).basis() }
    }

    pub fn zero(m: usize) -> Result<Self> {
        check_ambient(m)?;
        Ok(Self { ambient: m, basis: IntMatrix::zeros(0, m) })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Hermite basis, one row per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<LatticeVector> {
        self.basis.row_iter().map(|r| LatticeVector(r.to_vec())).collect()
    }

    fn check_vector(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        Ok(())
    }

    fn check_support(&self, e: Support) -> Result<()> {
        if e.bound() > self.ambient {
            return Err(Error::IndexOutOfRange { index: e.bound() - 1, ambient: self.ambient });
        }
        Ok(())
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v ∈ L`.
    pub fn coordinates(&self, v: &LatticeVector) -> Result<Option<Vec<BigInt>>> {
        self.check_vector(v)?;
        let mut rest = v.0.clone();
        let mut coords = Vec::with_capacity(self.rank());
        for (k, row) in self.basis.row_iter().enumerate() {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(self.basis.row(k)) {
                    *x -= &q * b;
                }
            }
            coords.push(q);
        }
        Ok(rest.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn equal(&self, other: &Lattice) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(self.basis == other.basis)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Sat(L) = {α : dα ∈ L for some d ≠ 0}`.
    pub fn saturation(&self) -> Lattice {
        self.scaled_smith_rows(|_| BigInt::one())
    }

    /// `(L : p^∞) = {α : p^k α ∈ L for some k}`.
    pub fn p_saturation(&self, p: u64) -> Result<Lattice> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = BigInt::from(p);
        Ok(self.scaled_smith_rows(|d| {
            let mut d = d.clone();
            while d.is_multiple_of(&p) {
                d /= &p;
            }
            d
        }))
    }

    /// With `D = U·B·V`, `L` is spanned by `d_i · (row i of V⁻¹)`; this
    /// rebuilds the lattice with each invariant factor replaced by `f(d_i)`.
    fn scaled_smith_rows(&self, f: impl Fn(&BigInt) -> BigInt) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let s = snf(&self.basis);
        let rows: Vec<Vec<BigInt>> = s
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let c = f(d);
                s.v_inv.row(i).iter().map(|x| x * &c).collect()
            })
            .collect();
        let m = IntMatrix::from_rows(self.ambient, rows).expect("rows have ambient width");
        Self::from_matrix_unchecked(m)
    }

    /// `L ∩ Z^E`: the vectors of `L` supported inside `e`.
    pub fn restrict(&self, e: Support) -> Result<Lattice> {
        self.check_support(e)?;
        let outside: Vec<usize> = (0..self.ambient).filter(|&j| !e.contains(j)).collect();
        if outside.is_empty() || self.rank() == 0 {
            return Ok(self.clone());
        }
        // coefficient vectors λ with (λ·B)_j = 0 for every j outside e
        let cols = self.basis.select_columns(&outside);
        let lambdas = integer_kernel(&cols.transpose());
        let rows = lambdas.mul(&self.basis)?;
        Ok(Self::from_matrix_unchecked(rows))
    }

    /// Whether `L ∩ N^m = {0}`.
    ///
    /// Decided on the primal side: `L` fails to be positive iff some rational
    /// `x = λ·B` satisfies `x ≥ 0` and `Σ x_i ≥ 1`.
    pub fn is_positive(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        let cols: Vec<RatVector> = (0..self.ambient).map(|j| RatVector::from_ints(&self.basis.column(j))).collect();
        let row_sum: Vec<BigInt> =
            self.basis.row_iter().map(|r| r.iter().sum()).collect();
        let strict = [RatVector::from_ints(&row_sum)];
        matches!(cone_feasible(&[], &cols, &strict), Ok(None))
    }

    /// Whether the vectors `c` (all of which must lie in `L`) generate `L`.
    pub fn spans(&self, c: &[LatticeVector]) -> Result<bool> {
        for v in c {
            if !self.contains(v)? {
                return Err(Error::NotInLattice(v.to_string()));
            }
        }
        Ok(Lattice::from_generators(self.ambient, c)? == *self)
    }

    /// Extends a basis of `L ∩ Z^{E1}` to a basis of `L ∩ Z^{E2}`, adding the
    /// indices of `E2 \ E1` in increasing order. Each added vector has the
    /// least positive coordinate at its new index among all elements of the
    /// enlarged restricted lattice.
    pub fn extend_basis(&self, e1: Support, e2: Support, basis1: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
        self.check_support(e2)?;
        if !e1.is_subset(e2) {
            return Err(Error::Precondition("E1 must be contained in E2".into()));
        }
        let l1 = self.restrict(e1)?;
        let independent = Lattice::from_generators(self.ambient, basis1)?.rank() == basis1.len();
        if !independent || basis1.iter().any(|b| !b.support().is_subset(e1)) || !l1.spans(basis1)? {
            return Err(Error::Precondition("basis1 is not a Z-basis of L ∩ Z^E1".into()));
        }
        let mut out = basis1.to_vec();
        let mut cur = e1;
        for i in e2.difference(e1).iter() {
            cur = cur.with(i);
            if let Some(v) = self.restrict(cur)?.least_positive_at(i) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// An element with the least positive `i`-coordinate, or `None` when every
    /// element has `i`-coordinate zero. Read off the Hermite form computed
    /// with column `i` moved to the front.
    pub fn least_positive_at(&self, i: usize) -> Option<LatticeVector> {
        let mut order = vec![i];
        order.extend((0..self.ambient).filter(|&j| j != i));
        let h = hnf(&self.basis.select_columns(&order));
        if h.rank() == 0 || h.pivots[0] != 0 {
            return None;
        }
        let mut v = vec![BigInt::zero(); self.ambient];
        for (k, &j) in order.iter().enumerate() {
            v[j] = h.h[(0, k)].clone();
        }
        Some(LatticeVector(v))
    }

    /// Generator `w` of the rank-one lattice `L ∩ Z^{D ∪ {i}}`, signed so that `w_i > 0`.
    pub fn rank_one_relation(&self, i: usize, d: Support) -> Result<LatticeVector> {
        if i >= self.ambient {
            return Err(Error::IndexOutOfRange { index: i, ambient: self.ambient });
        }
        if d.contains(i) {
            return Err(Error::Precondition(format!("index {} already in D", i + 1)));
        }
        let r = self.restrict(d.with(i))?;
        if r.rank() != 1 {
            return Err(Error::RankNotOne(r.rank()));
        }
        let w = LatticeVector(r.basis.row(0).to_vec());
        match w[i].sign() {
            num_bigint::Sign::NoSign => Err(Error::ZeroPivot(i)),
            num_bigint::Sign::Minus => Ok(w.neg()),
            num_bigint::Sign::Plus => Ok(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    fn lat(m: usize, gens: &[&[i64]]) -> Lattice {
        Lattice::from_generators(m, &gens.iter().map(|g| lv(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn parts_and_supports() {
        let u = lv(&[2, 1, 0, -3]);
        assert_eq!(u.positive_part(), lv(&[2, 1, 0, 0]).into_entries());
        assert_eq!(u.negative_part(), lv(&[0, 0, 0, 3]).into_entries());
        assert_eq!(u.positive_support(), Support::from_indices([0, 1]).unwrap());
        assert_eq!(u.negative_support(), Support::singleton(3));
        assert_eq!(u.support().len(), 3);
    }

    #[test]
    fn generators_may_be_dependent() {
        let l = lat(2, &[&[2, -2], &[4, -4]]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis_vectors(), vec![lv(&[2, -2])]);
        assert_eq!(lat(3, &[]).rank(), 0);
    }

    #[test]
    fn ingestion_errors() {
        assert_eq!(Lattice::from_generators(0, &[]), Err(Error::EmptyAmbient));
        assert!(matches!(Lattice::from_generators(2, &[lv(&[1, 2, 3])]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn membership() {
        let l = lat(2, &[&[2, 0], &[0, 2]]);
        assert!(l.contains(&lv(&[0, 0])).unwrap());
        assert!(l.contains(&lv(&[4, -2])).unwrap());
        assert!(!l.contains(&lv(&[1, 1])).unwrap());
        assert!(l.contains(&lv(&[1, 1, 1])).is_err());
    }

    #[test]
    fn equality() {
        assert!(lat(2, &[&[1, 1]]).equal(&lat(2, &[&[-1, -1]])).unwrap());
        assert!(!lat(2, &[&[2, 0], &[0, 2]]).equal(&lat(2, &[&[2, 0], &[1, 1]])).unwrap());
        assert!(lat(2, &[&[1, 1]]).equal(&lat(3, &[&[1, 1, 0]])).is_err());
    }

    #[test]
    fn saturations() {
        let l = lat(2, &[&[2, -2]]);
        assert_eq!(l.saturation(), lat(2, &[&[1, -1]]));
        let s = lat(3, &[&[1, -1, 0], &[0, 1, -1]]);
        assert_eq!(s.saturation(), s);
        let t = lat(2, &[&[3, -3]]);
        assert_eq!(t.p_saturation(3).unwrap(), lat(2, &[&[1, -1]]));
        assert_eq!(t.p_saturation(2).unwrap(), t);
        assert_eq!(s.p_saturation(5).unwrap(), s);
        assert_eq!(t.p_saturation(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn mixed_p_saturation() {
        // index 12 = 4 * 3 sublattice of a rank-one saturated lattice
        let l = lat(3, &[&[12, -12, 0]]);
        assert_eq!(l.p_saturation(2).unwrap(), lat(3, &[&[3, -3, 0]]));
        assert_eq!(l.p_saturation(3).unwrap(), lat(3, &[&[4, -4, 0]]));
    }

    #[test]
    fn restriction() {
        let l = lat(3, &[&[1, -1, 0], &[0, 1, -1]]);
        let r = l.restrict(Support::from_indices([0, 1]).unwrap()).unwrap();
        assert_eq!(r, lat(3, &[&[1, -1, 0]]));
        assert_eq!(l.restrict(Support::full(3)).unwrap(), l);
        assert_eq!(l.restrict(Support::EMPTY).unwrap().rank(), 0);
        assert!(l.restrict(Support::singleton(5)).is_err());
    }

    #[test]
    fn positivity() {
        assert!(lat(3, &[&[1, -1, 0], &[0, 1, -1]]).is_positive());
        assert!(!lat(2, &[&[1, 1]]).is_positive());
        assert!(!lat(2, &[&[1, -1], &[1, 0]]).is_positive());
        assert!(Lattice::zero(4).unwrap().is_positive());
    }

    #[test]
    fn spanning() {
        let l = lat(3, &[&[1, -1, 0], &[0, 1, -1]]);
        assert!(l.spans(&l.basis_vectors()).unwrap());
        let doubled: Vec<_> = l.basis_vectors().iter().map(|b| b.scale(&BigInt::from(2))).collect();
        assert!(!l.spans(&doubled).unwrap());
        assert!(l.spans(&[lv(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn least_positive_coordinate() {
        let l = lat(3, &[&[4, -2, -2], &[6, 0, -6]]);
        // coordinate 0 values: gcd(4, 6) = 2
        let v = l.least_positive_at(0).unwrap();
        assert_eq!(v[0], BigInt::from(2));
        assert!(l.contains(&v).unwrap());
    }

    #[test]
    fn basis_extension_from_empty() {
        let l = lat(3, &[&[1, -1, 0], &[0, 1, -1]]);
        let b = l.extend_basis(Support::EMPTY, Support::full(3), &[]).unwrap();
        assert_eq!(b.len(), 2);
        assert!(l.spans(&b).unwrap());
        let bad = l.extend_basis(Support::EMPTY, Support::full(3), &[lv(&[1, -1, 0])]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn rank_one_relation_parallel_columns() {
        // configuration a = (1, 2, 3): columns 0 and 1 are parallel
        let l = Lattice::from_matrix(&integer_kernel(&IntMatrix::from_i64(&[&[1, 2, 3]]))).unwrap();
        let w = l.rank_one_relation(1, Support::singleton(0)).unwrap();
        assert_eq!(w, lv(&[-2, 1, 0]));
        assert_eq!(l.rank_one_relation(2, Support::EMPTY), Err(Error::RankNotOne(0)));
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91));
    }
}
