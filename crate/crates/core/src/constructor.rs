//! Explicit binomial generators up to radical for full configurations.
//!
//! The configuration is reindexed so that the `n` ray representatives come
//! first; positions `0..n` are the rays and position `t ≥ n` carries the
//! 1-based step index `t + 1`. Vectors are built in that order and mapped
//! back to the original coordinates on output. Every "large enough" constant
//! is the smallest one that works.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::radical::{check_radical_generation, Characteristic};
use crate::support::Support;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullInstance {
    pub lattice: Lattice,
    pub configuration: Configuration,
    /// `ordering[t]` is the original index placed at position `t`; the first `n` are rays.
    pub ordering: Vec<usize>,
    pub n: usize,
    /// `u_basis[t - n]` has support in the first `t + 1` positions and the least
    /// positive coordinate at position `t`; together they form a basis of `L`.
    pub u_basis: Vec<LatticeVector>,
    /// `v_relations[t - n]` is positive on the rays and negative exactly at position `t`.
    pub v_relations: Vec<LatticeVector>,
}

impl FullInstance {
    pub fn m(&self) -> usize {
        self.ordering.len()
    }

    pub fn ray_indices(&self) -> &[usize] {
        &self.ordering[..self.n]
    }

    /// Original-coordinate support of the first `t` positions.
    fn prefix(&self, t: usize) -> Support {
        Support::from_indices(self.ordering[..t].iter().copied()).expect("indices below ambient")
    }

    fn to_positions(&self, v: &LatticeVector) -> Vec<BigInt> {
        self.ordering.iter().map(|&j| v[j].clone()).collect()
    }

    fn to_original(&self, w: Vec<BigInt>) -> LatticeVector {
        let mut out = vec![BigInt::zero(); self.m()];
        for (t, x) in w.into_iter().enumerate() {
            out[self.ordering[t]] = x;
        }
        LatticeVector::new(out)
    }

    fn bit_size(&self) -> u64 {
        self.u_basis.iter().chain(&self.v_relations).flat_map(|v| v.entries()).map(|x| x.bits().max(1)).sum::<u64>().max(1)
    }
}

/// Reindexes a full configuration and builds the `u` basis and `v` relations.
pub fn prepare_full(l: &Lattice) -> Result<FullInstance> {
    let a = Configuration::of(l)?;
    let ordering = a.full_ordering()?.ok_or(Error::NotFull)?;
    let n = a.n();
    let m = a.m();
    let rays = Support::from_indices(ordering[..n].iter().copied())?;
    let mut u_basis: Vec<LatticeVector> = Vec::with_capacity(m - n);
    let mut v_relations = Vec::with_capacity(m - n);
    let mut prev = rays;
    for &i in &ordering[n..m] {
        let cur = prev.with(i);
        let extended = l.extend_basis(prev, cur, &u_basis)?;
        if extended.len() != u_basis.len() + 1 {
            return Err(Error::Internal(format!("restriction rank did not grow at index {}", i + 1)));
        }
        u_basis = extended;
        v_relations.push(l.rank_one_relation(i, rays)?.neg());
        prev = cur;
    }
    let inst = FullInstance { lattice: l.clone(), configuration: a, ordering, n, u_basis, v_relations };
    for (k, v) in inst.v_relations.iter().enumerate() {
        let t = n + k;
        if v.positive_support() != rays || v.negative_support() != Support::singleton(inst.ordering[t]) {
            return Err(Error::Internal(format!("relation {v} has the wrong sign pattern")));
        }
    }
    if let (Some(u), Some(v)) = (inst.u_basis.first(), inst.v_relations.first()) {
        if !u.same_up_to_sign(v) {
            return Err(Error::Internal("first basis vector differs from the first relation".into()));
        }
    }
    Ok(inst)
}

/// Smallest `r ≥ 1` with `x + r·step > 0`, for `step > 0`.
fn least_to_positive(x: &BigInt, step: &BigInt) -> BigInt {
    let r: BigInt = Integer::div_floor(&-x, step) + 1;
    r.max(BigInt::one())
}

/// `x + c·y` componentwise.
fn axpy(x: &[BigInt], c: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(a, b)| a + c * b).collect()
}

/// `m − n + 1` vectors generating `rad(I_L)` in characteristic zero:
/// `z_{n+1}, .., z_m` form a basis of `L` and `z_{m+1} = v_m`.
pub fn construct_char0(f: &FullInstance) -> Result<Vec<LatticeVector>> {
    let (n, m) = (f.n, f.m());
    if m == n {
        return Ok(Vec::new());
    }
    let u: Vec<Vec<BigInt>> = f.u_basis.iter().map(|x| f.to_positions(x)).collect();
    let v: Vec<Vec<BigInt>> = f.v_relations.iter().map(|x| f.to_positions(x)).collect();
    let mut z: Vec<Vec<BigInt>> = u.iter().take(2).cloned().collect();
    for t in n + 2..m {
        let mut w = u[t - n].clone();
        for j in n..t - 1 {
            let g = -&v[j - n][j];
            let r = least_to_positive(&w[j], &g);
            w = axpy(&w, &-r, &v[j - n]);
        }
        let back = &v[t - 1 - n];
        let r = (0..n).map(|k| least_to_positive(&w[k], &back[k])).max().expect("n >= 1");
        z.push(axpy(&w, &r, back));
    }
    z.push(v[m - 1 - n].clone());
    let out: Vec<LatticeVector> = z.into_iter().map(|x| f.to_original(x)).collect();

    if !f.lattice.spans(&out[..m - n])? {
        return Err(Error::Internal("z vectors do not form a basis".into()));
    }
    if out[0].positive_support() != Support::singleton(f.ordering[n]) {
        return Err(Error::Internal("first z vector is not positive on a single index".into()));
    }
    for t in n + 2..=m {
        if out[t - n].negative_support() != Support::singleton(f.ordering[t - 1]) {
            return Err(Error::Internal(format!("z vector {} has a wide negative part", t + 1)));
        }
    }
    if !check_radical_generation(&f.lattice, &out, Characteristic::Zero)?.passed() {
        return Err(Error::Internal("characteristic zero construction fails the criterion".into()));
    }
    Ok(out)
}

/// `m − n` vectors generating `rad(I_L)` in characteristic `p`.
pub fn construct_charp(f: &FullInstance, p: u64) -> Result<Vec<LatticeVector>> {
    let ch = Characteristic::new(p)?;
    if ch == Characteristic::Zero {
        return Err(Error::NotPrime(0));
    }
    let (n, m) = (f.n, f.m());
    if m == n {
        return Ok(Vec::new());
    }
    let u: Vec<Vec<BigInt>> = f.u_basis.iter().map(|x| f.to_positions(x)).collect();
    let v: Vec<Vec<BigInt>> = f.v_relations.iter().map(|x| f.to_positions(x)).collect();
    let cap = 64 * f.bit_size();
    let pb = BigInt::from(p);
    let mut y: Vec<Vec<BigInt>> = vec![u[0].clone()];
    for t in n + 1..m {
        let mut w = u[t - n].clone();
        for j in n..t {
            let g = -&v[j - n][j];
            // smallest r ≥ 1 with w_j − r·g < 0
            let r = least_to_positive(&-&w[j], &g);
            w = axpy(&w, &r, &v[j - n]);
        }
        let vi = &v[t - n];
        let ui_t = &u[t - n][t];
        let (tq, rem) = (-&vi[t]).div_rem(ui_t);
        if !rem.is_zero() || !tq.is_positive() {
            return Err(Error::Internal(format!("relation at position {} is not a multiple of the basis vector", t + 1)));
        }
        let mut k = 1u64;
        let yi = loop {
            if k > cap {
                return Err(Error::Internal(format!("no exponent up to {cap} makes the ray coordinates negative")));
            }
            let pk: BigInt = Pow::pow(&pb, k);
            let (r, s) = pk.div_rem(&tq);
            let cand: Vec<BigInt> = w.iter().zip(vi).map(|(a, b)| &s * a - &r * b).collect();
            if cand[..n].iter().all(Signed::is_negative) {
                if cand[t] != pk * ui_t {
                    return Err(Error::Internal("wrong leading coordinate".into()));
                }
                break cand;
            }
            k += 1;
        };
        y.push(yi);
    }
    let out: Vec<LatticeVector> = y.into_iter().map(|x| f.to_original(x)).collect();

    for t in n..m {
        let e = f.prefix(t + 1);
        let yi = &out[t - n];
        if !yi.support().is_subset(e) || yi.positive_support() != Support::singleton(f.ordering[t]) {
            return Err(Error::Internal(format!("y vector {} has the wrong shape", t + 1)));
        }
        let generated = Lattice::from_generators(m, &out[..=t - n])?.p_saturation(p)?;
        if generated != f.lattice.restrict(e)?.p_saturation(p)? {
            return Err(Error::Internal(format!("p-saturations differ after step {}", t + 1)));
        }
    }
    if !check_radical_generation(&f.lattice, &out, ch)?.passed() {
        return Err(Error::Internal("characteristic p construction fails the criterion".into()));
    }
    Ok(out)
}
