use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use latrad_core::configuration::Configuration;
use latrad_core::instances::random_positive_lattice;
use latrad_core::io::{parse_lattice, parse_vectors, to_json, VectorSet};
use latrad_core::lattice::{Lattice, LatticeVector};
use latrad_core::linalg::{cone_feasible, hnf, integer_kernel, snf, IntMatrix, RatVector};
use latrad_core::radical::{check_radical_generation, is_cover, Characteristic, RadicalVerdict};
use latrad_core::Support;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn positive_lattice() -> impl Strategy<Value = Lattice> {
    (3usize..=6, 0u64..1000).prop_flat_map(|(m, seed)| {
        (1..m).prop_map(move |r| random_positive_lattice(m, r, seed, 3).unwrap())
    })
}

fn lattice_element(l: &Lattice, coeffs: &[i64]) -> LatticeVector {
    l.basis_vectors()
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(LatticeVector::zero(l.ambient()), |acc, (b, &c)| acc.add_scaled(&BigInt::from(c), b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_canonical(m in matrix(4, 5, 6)) {
        let h = hnf(&m);
        prop_assert!(h.u.is_unimodular());
        prop_assert_eq!(h.u.mul(&m).unwrap(), h.h.clone());
        prop_assert_eq!(hnf(&h.basis()).basis(), h.basis());
        prop_assert_eq!(h.rank(), m.rank());
    }

    #[test]
    fn snf_invariants(m in matrix(4, 5, 6)) {
        let s = snf(&m);
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        let f = s.invariant_factors();
        prop_assert_eq!(f.len(), m.rank());
        prop_assert!(f.iter().all(Signed::is_positive));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn kernel_is_saturated_and_annihilated(m in matrix(3, 6, 5)) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.rows() + m.rank(), m.cols());
        prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
        if k.rows() > 0 {
            let l = Lattice::from_matrix(&k).unwrap();
            prop_assert!(l.equal(&l.saturation()).unwrap());
        }
    }

    #[test]
    fn saturations_are_nested(l in positive_lattice(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let ps = l.p_saturation(p).unwrap();
        prop_assert!(l.is_sublattice_of(&ps).unwrap());
        prop_assert!(ps.is_sublattice_of(&l.saturation()).unwrap());
        prop_assert!(ps.equal(&ps.p_saturation(p).unwrap()).unwrap());
    }

    #[test]
    fn lattice_json_round_trip(l in positive_lattice()) {
        prop_assert_eq!(parse_lattice(&to_json(&l)).unwrap(), l);
    }

    #[test]
    fn vector_set_json_round_trip(rows in prop::collection::vec(prop::collection::vec(any::<i64>(), 4), 0..5)) {
        let set = VectorSet::unnamed(rows.iter().map(|r| LatticeVector::from_i64(r)).collect());
        prop_assert_eq!(parse_vectors(&to_json(&set)).unwrap(), set);
    }

    #[test]
    fn support_order_is_shortlex(a in 0u64..(1 << 12), b in 0u64..(1 << 12)) {
        let (x, y) = (Support::from_bits(a), Support::from_bits(b));
        let key = |s: Support| (s.len(), s.to_vec());
        prop_assert_eq!(x.cmp(&y), key(x).cmp(&key(y)));
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Support>(&json).unwrap(), x);
    }

    #[test]
    fn binomials_are_homogeneous(l in positive_lattice(), c in prop::collection::vec(-4i64..=4, 6)) {
        let a = Configuration::of(&l).unwrap();
        let u = lattice_element(&l, &c);
        prop_assert_eq!(a.degree(&u.positive_part()).unwrap(), a.degree(&u.negative_part()).unwrap());
        // a face support meets both sign parts of u or neither
        for f in a.face_support_set().unwrap() {
            prop_assert_eq!(u.positive_support().is_subset(f), u.negative_support().is_subset(f));
        }
    }

    #[test]
    fn basis_passes_and_verdict_round_trips(l in positive_lattice(), p in prop::sample::select(vec![0u64, 2, 3])) {
        let ch = Characteristic::new(p).unwrap();
        let a = Configuration::of(&l).unwrap();
        let mut gens = l.basis_vectors();
        for f in a.face_support_set().unwrap() {
            gens.extend(l.restrict(f).unwrap().basis_vectors());
        }
        let cover = is_cover(&a, &gens).unwrap();
        let v = check_radical_generation(&l, &gens, ch).unwrap();
        prop_assert_eq!(v.passed(), cover.passed());
        let back: RadicalVerdict = serde_json::from_str(&to_json(&v)).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn feasibility_witness_is_sound(
        eq in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..2),
        nonneg in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4),
        strict in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..4),
    ) {
        let conv = |rows: &[Vec<i64>]| rows.iter().map(|r| RatVector::from_i64(r)).collect::<Vec<_>>();
        let (eq, nonneg, strict) = (conv(&eq), conv(&nonneg), conv(&strict));
        if let Some(x) = cone_feasible(&eq, &nonneg, &strict).unwrap() {
            prop_assert!(eq.iter().all(|e| e.dot(&x).is_zero()));
            prop_assert!(nonneg.iter().all(|w| !w.dot(&x).is_negative()));
            prop_assert!(strict.iter().all(|s| s.dot(&x) >= num_rational::BigRational::one()));
        } else {
            // infeasibility is exact: no small integer point satisfies the system
            let grid = -3i64..=3;
            for p in itertools::iproduct!(grid.clone(), grid.clone(), grid.clone(), grid) {
                let x = RatVector::from_i64(&[p.0, p.1, p.2, p.3]);
                let ok = eq.iter().all(|e| e.dot(&x).is_zero())
                    && nonneg.iter().all(|w| !w.dot(&x).is_negative())
                    && strict.iter().all(|s| s.dot(&x).is_positive());
                prop_assert!(!ok, "point {:?} satisfies an infeasible system", p);
            }
        }
    }
}
