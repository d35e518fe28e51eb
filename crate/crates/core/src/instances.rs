//! Built-in lattices and seeded random generators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::InstanceFile;
use crate::lattice::{Lattice, LatticeVector};
use crate::linalg::{integer_kernel, IntMatrix};

/// Attempts made by the rejection samplers before giving up.
pub const SAMPLING_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVector {
    pub name: String,
    pub vector: LatticeVector,
}

/// A lattice together with named elements of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedInstance {
    pub name: String,
    pub lattice: Lattice,
    pub named: Vec<NamedVector>,
}

impl NamedInstance {
    fn new(name: impl Into<String>, lattice: Lattice, named: Vec<(String, LatticeVector)>) -> Result<Self> {
        for (n, v) in &named {
            if !lattice.contains(v)? {
                return Err(Error::InvalidInstance(format!("{n} = {v} is not in the lattice")));
            }
        }
        let named = named.into_iter().map(|(name, vector)| NamedVector { name, vector }).collect();
        Ok(Self { name: name.into(), lattice, named })
    }

    pub fn get(&self, name: &str) -> Option<&LatticeVector> {
        self.named.iter().find(|n| n.name == name).map(|n| &n.vector)
    }

    /// The vectors named `names`, in that order. Panics on an unknown name.
    pub fn select(&self, names: &[&str]) -> Vec<LatticeVector> {
        names
            .iter()
            .map(|n| self.get(n).unwrap_or_else(|| panic!("no vector named {n} in {}", self.name)).clone())
            .collect()
    }

    /// Vectors named `prefix` followed by a number, in listing order.
    pub fn family(&self, prefix: &str) -> Vec<LatticeVector> {
        self.named
            .iter()
            .filter(|n| n.name.strip_prefix(prefix).is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())))
            .map(|n| n.vector.clone())
            .collect()
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            ambient: self.lattice.ambient(),
            generators: self.lattice.basis_vectors(),
            vectors: self.named.iter().map(|n| n.vector.clone()).collect(),
            names: self.named.iter().map(|n| n.name.clone()).collect(),
        }
    }
}

/// Monomial degrees of the (3,3)-Veronese embedding, as columns.
pub fn veronese33_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[
        &[3, 0, 0, 2, 1, 0, 0, 2, 1, 1],
        &[0, 3, 0, 1, 2, 2, 1, 0, 0, 1],
        &[0, 0, 3, 0, 0, 1, 2, 1, 2, 1],
    ])
}

/// The toric lattice of the (3,3)-Veronese variety with its named vectors
/// `u1..u11` and `v`.
pub fn veronese33() -> NamedInstance {
    let lattice = Lattice::from_matrix(&integer_kernel(&veronese33_matrix())).expect("ambient 10");
    let rows: [&[i64]; 12] = [
        &[2, 1, 0, -3, 0, 0, 0, 0, 0, 0],
        &[1, 0, 0, -2, 1, 0, 0, 0, 0, 0],
        &[1, 2, 0, 0, -3, 0, 0, 0, 0, 0],
        &[0, 2, 1, 0, 0, -3, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, -2, 1, 0, 0, 0],
        &[0, 1, 2, 0, 0, 0, -3, 0, 0, 0],
        &[2, 0, 1, 0, 0, 0, 0, -3, 0, 0],
        &[1, 0, 0, 0, 0, 0, 0, -2, 1, 0],
        &[1, 0, 2, 0, 0, 0, 0, 0, -3, 0],
        &[1, 0, 0, -1, 0, 0, 0, -1, 0, 1],
        &[0, 0, 0, 1, 0, 0, 1, 0, 0, -2],
        &[1, 1, 1, 0, 0, 0, 0, 0, 0, -3],
    ];
    let named = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let name = if k < 11 { format!("u{}", k + 1) } else { "v".to_string() };
            (name, LatticeVector::from_i64(r))
        })
        .collect();
    NamedInstance::new("veronese33", lattice, named).expect("listed vectors lie in the lattice")
}

fn v4(a: i64, b: i64, c: i64, d: i64) -> LatticeVector {
    LatticeVector::from_i64(&[a, b, c, d])
}

/// The rank-3 lattice `L(m) ⊂ Z^4` (m ≥ 8) with generators `e1, e2, e3` and
/// the exponent vectors of its minimal generators `f1, f2, f3, f12, f23_i, f13_j, f123`.
pub fn ojeda(m: usize) -> Result<NamedInstance> {
    if m < 8 {
        return Err(Error::InvalidInstance(format!("ojeda family needs m >= 8, got {m}")));
    }
    let mi = m as i64;
    let q = mi % 2;
    let e1 = v4(mi + 2 * q - 3, -mi + 2 * q + 5, -1, -1);
    let e2 = v4(-mi - 2 * q + 5, mi - 2 * q - 3, -1, -1);
    let e3 = v4(-mi - 2 * q + 5, -1, mi - 3, -1);
    let lattice = Lattice::from_generators(4, &[e1.clone(), e2.clone(), e3.clone()])?;
    let mut named: Vec<(String, LatticeVector)> = vec![
        ("e1".into(), e1.clone()),
        ("e2".into(), e2.clone()),
        ("e3".into(), e3.clone()),
        ("f1".into(), e1),
        ("f2".into(), e2),
        ("f3".into(), e3),
        ("f12".into(), v4(2, 2, -2, -2)),
    ];
    // (m+q)/2 - 3 and (m-q)/2 - 2 vectors respectively
    for i in 1..=(mi + q) / 2 - 3 {
        named.push((format!("f23_{i}"), v4(-(mi + 2 * q - 2 * i - 5), 2 * i - 1, mi - 2 * i - 3, -(2 * i + 1))));
    }
    for j in 1..=(mi - q) / 2 - 2 {
        named.push((format!("f13_{j}"), v4(2 * j, -(mi - 2 * q - 2 * j - 2), mi - 2 * j - 2, -2 * j)));
    }
    let f123 = if q == 0 { v4(-1, -(mi - 5), -1, mi - 3) } else { v4(-(mi - 3), -1, -1, mi - 3) };
    named.push(("f123".into(), f123));
    NamedInstance::new(format!("ojeda:{m}"), lattice, named)
}

/// The grading `φ_m` whose kernel is the saturation of `L(m)`, as a 1 × 4 matrix.
pub fn ojeda_grading(m: usize) -> IntMatrix {
    let mi = m as i64;
    if m.is_multiple_of(2) {
        IntMatrix::from_i64(&[&[1, 1, 1, 1]])
    } else {
        IntMatrix::from_i64(&[&[mi - 6, mi - 2, mi - 4, mi - 4]])
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, data).expect("shape")
}

/// A positive lattice of rank `r` in `Z^m` generated by `r` vectors with
/// entries in `[-bound, bound]`, rejection-sampled from a seeded stream.
pub fn random_positive_lattice(m: usize, r: usize, seed: u64, bound: u64) -> Result<Lattice> {
    let bound = i64::try_from(bound).map_err(|_| Error::Precondition("entry bound too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_BUDGET {
        let l = Lattice::from_matrix(&random_matrix(&mut rng, r, m, bound))?;
        if l.rank() == r && l.is_positive() {
            return Ok(l);
        }
    }
    Err(Error::SamplingExhausted(SAMPLING_BUDGET))
}

/// Shuffles columns; the returned permutation maps new positions to old ones.
fn shuffle_columns(rng: &mut ChaCha8Rng, a: &IntMatrix) -> IntMatrix {
    let mut order: Vec<usize> = (0..a.cols()).collect();
    order.shuffle(rng);
    a.select_columns(&order)
}

/// Replaces the row lattice of `k` by a random sublattice of finite index.
fn random_sublattice(rng: &mut ChaCha8Rng, k: &IntMatrix) -> Result<Lattice> {
    let mut rows = k.clone();
    for i in 0..rows.rows() {
        let scale = BigInt::from(rng.gen_range(1..=3));
        for x in rows.row_mut(i) {
            *x *= &scale;
        }
        if i > 0 && rng.gen_bool(0.5) {
            let f = BigInt::from(rng.gen_range(-2..=2));
            rows.add_row_multiple(i, 0, &f);
        }
    }
    Lattice::from_matrix(&rows)
}

/// A lattice whose configuration is full: `n` independent rays plus `m − n`
/// points in the interior of their cone (coordinates in `1..=bound`).
/// Columns are shuffled and the lattice is a random finite-index sublattice
/// of the saturated one.
pub fn random_full_lattice(n: usize, m: usize, seed: u64, bound: u64) -> Result<Lattice> {
    random_cone_lattice(n, m, seed, bound, true)
}

/// Like [`random_full_lattice`] but the non-ray points may lie on proper
/// faces of the simplex cone (coordinates in `0..=bound`, not all zero).
pub fn random_simplex_lattice(n: usize, m: usize, seed: u64, bound: u64) -> Result<Lattice> {
    random_cone_lattice(n, m, seed, bound, false)
}

fn random_cone_lattice(n: usize, m: usize, seed: u64, bound: u64, interior: bool) -> Result<Lattice> {
    if n == 0 || m < n {
        return Err(Error::Precondition(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    let bound = i64::try_from(bound.max(1)).map_err(|_| Error::Precondition("entry bound too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = if interior { 1 } else { 0 };
    let mut a = IntMatrix::zeros(n, m);
    for i in 0..n {
        a[(i, i)] = BigInt::from(rng.gen_range(1..=2));
    }
    for j in n..m {
        loop {
            let col: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=bound)).collect();
            if col.iter().any(|&x| x != 0) {
                for (i, x) in col.into_iter().enumerate() {
                    a[(i, j)] = BigInt::from(x);
                }
                break;
            }
        }
    }
    let a = shuffle_columns(&mut rng, &a);
    let k = integer_kernel(&a);
    if k.rows() == 0 {
        return Lattice::zero(m);
    }
    random_sublattice(&mut rng, &k)
}

/// Instance selector accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    Veronese33,
    Ojeda(usize),
    Random { m: usize, r: usize, seed: u64, bound: u64 },
}

impl InstanceSpec {
    pub fn resolve(&self) -> Result<NamedInstance> {
        match *self {
            InstanceSpec::Veronese33 => Ok(veronese33()),
            InstanceSpec::Ojeda(m) => ojeda(m),
            InstanceSpec::Random { m, r, seed, bound } => {
                let lattice = random_positive_lattice(m, r, seed, bound)?;
                Ok(NamedInstance { name: self.to_string(), lattice, named: Vec::new() })
            }
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown instance {s:?}; expected veronese33, ojeda:M or random:M,R,SEED,BOUND"));
        if s == "veronese33" {
            return Ok(InstanceSpec::Veronese33);
        }
        if let Some(m) = s.strip_prefix("ojeda:") {
            return m.parse().map(InstanceSpec::Ojeda).map_err(|_| bad());
        }
        if let Some(args) = s.strip_prefix("random:") {
            let parts: Vec<u64> = args.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
            if let [m, r, seed, bound] = parts[..] {
                return Ok(InstanceSpec::Random { m: m as usize, r: r as usize, seed, bound });
            }
        }
        Err(bad())
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Veronese33 => write!(f, "veronese33"),
            InstanceSpec::Ojeda(m) => write!(f, "ojeda:{m}"),
            InstanceSpec::Random { m, r, seed, bound } => write!(f, "random:{m},{r},{seed},{bound}"),
        }
    }
}
