//! Exact feasibility of homogeneous rational cone systems.
//!
//! Systems have the shape `E·x = 0`, `W·x ≥ 0`, `S·x ≥ 1`. Because every
//! system is homogeneous, `S·x ≥ 1` is the same as strict positivity up to
//! scaling. Equalities are removed by parametrising the integer kernel of
//! `E`; the remaining inequalities go through Fourier–Motzkin elimination
//! with Chernikov's history rule and duplicate pruning, and a witness is
//! recovered by back-substitution.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RatVector};
use super::normal_form::integer_kernel;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Ineq {
    /// Primitive integer coefficient vector.
    a: Vec<BigInt>,
    /// Right-hand side: `a·t ≥ b`.
    b: BigRational,
    hist: BTreeSet<usize>,
}

/// Scales a rational vector to a primitive integer vector, returning the positive factor used.
fn primitive_scale(v: &[BigRational]) -> (Vec<BigInt>, BigRational) {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, BigRational::one());
    }
    let ints = ints.into_iter().map(|x| x / &g).collect();
    (ints, BigRational::new(lcm, g))
}

enum Normalized {
    Keep(Ineq),
    Trivial,
    Infeasible,
}

fn normalize(a: Vec<BigRational>, b: BigRational, hist: BTreeSet<usize>) -> Normalized {
    if a.iter().all(Zero::is_zero) {
        return if b.is_positive() { Normalized::Infeasible } else { Normalized::Trivial };
    }
    let (ints, f) = primitive_scale(&a);
    Normalized::Keep(Ineq { a: ints, b: b * f, hist })
}

/// Keeps, for each coefficient vector, only the tightest right-hand side.
fn dedup(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut best: HashMap<Vec<BigInt>, Ineq> = HashMap::new();
    let mut order = Vec::new();
    for r in rows {
        match best.get_mut(&r.a) {
            Some(cur) => {
                if r.b > cur.b || (r.b == cur.b && r.hist.len() < cur.hist.len()) {
                    *cur = r;
                }
            }
            None => {
                order.push(r.a.clone());
                best.insert(r.a.clone(), r);
            }
        }
    }
    order.into_iter().map(|k| best.remove(&k).expect("key present")).collect()
}

fn to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Runs elimination on `t ∈ Q^vars`; returns a candidate witness or `None` when infeasible.
///
/// With `prune` the eliminated system only loses rows, so `None` stays exact;
/// the candidate can fail when implicit equalities are present.
fn fourier_motzkin(vars: usize, rows: Vec<Ineq>, prune: bool) -> Option<Vec<BigRational>> {
    // stages[k] holds the system over variables 0..k
    let mut stages: Vec<Vec<Ineq>> = vec![Vec::new(); vars + 1];
    let mut current = dedup(rows);
    for (eliminated, k) in (0..vars).rev().enumerate() {
        stages[k + 1] = current.clone();
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in current {
            match r.a[k].sign() {
                num_bigint::Sign::Plus => pos.push(r),
                num_bigint::Sign::Minus => neg.push(r),
                num_bigint::Sign::NoSign => zero.push(r),
            }
        }
        let mut next = zero;
        let limit = eliminated + 2;
        for p in &pos {
            for n in &neg {
                let hist: BTreeSet<usize> = p.hist.union(&n.hist).copied().collect();
                if prune && hist.len() > limit {
                    continue;
                }
                let pk = p.a[k].clone();
                let nk = -n.a[k].clone();
                let a: Vec<BigRational> = p
                    .a
                    .iter()
                    .zip(&n.a)
                    .map(|(x, y)| to_rat(&(x * &nk + y * &pk)))
                    .collect();
                let b = &p.b * to_rat(&nk) + &n.b * to_rat(&pk);
                match normalize(a, b, hist) {
                    Normalized::Keep(r) => next.push(r),
                    Normalized::Trivial => {}
                    Normalized::Infeasible => return None,
                }
            }
        }
        current = dedup(next);
    }
    // current is over zero variables; normalize already rejected 0 ≥ positive
    debug_assert!(current.is_empty());

    let mut t: Vec<BigRational> = Vec::with_capacity(vars);
    for k in 0..vars {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in &stages[k + 1] {
            let rest: BigRational = (0..k).map(|j| to_rat(&r.a[j]) * &t[j]).sum();
            let coef = to_rat(&r.a[k]);
            if coef.is_zero() {
                continue;
            }
            let bound = (&r.b - rest) / &coef;
            if coef.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        t.push(pick_value(lo, hi));
    }
    Some(t)
}

/// Picks a value in `[lo, hi]`, preferring 0 and then the integer closest to 0.
fn pick_value(lo: Option<BigRational>, hi: Option<BigRational>) -> BigRational {
    let zero = BigRational::zero();
    let above = lo.as_ref().is_none_or(|l| *l <= zero);
    let below = hi.as_ref().is_none_or(|h| *h >= zero);
    if above && below {
        return zero;
    }
    if !above {
        let l = lo.expect("lower bound present");
        let c = l.ceil();
        if hi.as_ref().is_none_or(|h| c <= *h) { c } else { l }
    } else {
        let h = hi.expect("upper bound present");
        let f = h.floor();
        if lo.as_ref().is_none_or(|l| f >= *l) { f } else { h }
    }
}

fn check_dims(dim: usize, rows: &[RatVector]) -> Result<()> {
    for r in rows {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
        }
    }
    Ok(())
}

/// Finds `c` with `e·c = 0` for every equality, `w·c ≥ 0` for every `nonneg`
/// row and `s·c ≥ 1` for every `strict` row, or returns `None`.
pub fn cone_feasible(
    equalities: &[RatVector],
    nonneg: &[RatVector],
    strict: &[RatVector],
) -> Result<Option<RatVector>> {
    let dim = equalities
        .iter()
        .chain(nonneg)
        .chain(strict)
        .map(RatVector::dim)
        .next()
        .unwrap_or(0);
    check_dims(dim, equalities)?;
    check_dims(dim, nonneg)?;
    check_dims(dim, strict)?;

    // x = N·t with the columns of N spanning the solutions of the equalities
    let eq_rows: Vec<Vec<BigInt>> = equalities.iter().map(|e| primitive_scale(&e.0).0).collect();
    let kernel = if eq_rows.is_empty() {
        IntMatrix::identity(dim)
    } else {
        integer_kernel(&IntMatrix::from_rows(dim, eq_rows)?)
    };
    let vars = kernel.rows();

    let mut rows = Vec::new();
    let all = nonneg.iter().map(|w| (w, BigRational::zero())).chain(strict.iter().map(|s| (s, BigRational::one())));
    for (idx, (g, b)) in all.enumerate() {
        let a: Vec<BigRational> = (0..vars).map(|k| g.dot_int(kernel.row(k))).collect();
        match normalize(a, b, BTreeSet::from([idx])) {
            Normalized::Keep(r) => rows.push(r),
            Normalized::Trivial => {}
            Normalized::Infeasible => return Ok(None),
        }
    }

    let satisfies = |x: &RatVector| {
        equalities.iter().all(|e| e.dot(x).is_zero())
            && nonneg.iter().all(|w| !w.dot(x).is_negative())
            && strict.iter().all(|s| s.dot(x) >= BigRational::one())
    };
    for prune in [true, false] {
        let Some(t) = fourier_motzkin(vars, rows.clone(), prune) else {
            return Ok(None);
        };
        let x = lift(&kernel, &t, dim);
        if satisfies(&x) {
            return Ok(Some(x));
        }
    }
    Err(Error::Internal("feasibility witness fails re-substitution".into()))
}

fn lift(kernel: &IntMatrix, t: &[BigRational], dim: usize) -> RatVector {
    let mut x = vec![BigRational::zero(); dim];
    for (k, tk) in t.iter().enumerate() {
        if tk.is_zero() {
            continue;
        }
        for (xi, n) in x.iter_mut().zip(kernel.row(k)) {
            *xi += tk * to_rat(n);
        }
    }
    RatVector(x)
}

/// Finds `c` with `e·c = 0` for all equalities and `s·c ≥ 1` for all strict rows.
pub fn rational_feasible(equalities: &[RatVector], strict: &[RatVector]) -> Result<Option<RatVector>> {
    cone_feasible(equalities, &[], strict)
}
