//! Randomised invariants of the linear algebra, the graded spaces and the
//! Hochschild machinery.

use std::collections::BTreeMap;

use proptest::prelude::*;

use hhss::center::{graded_center, one_object_center_dim};
use hhss::corpus::{describe, ingest_str, Input};
use hhss::dgcat::{Bimodule, CategoryBuilder, DGCategory, GradedFunctor};
use hhss::graded::{DGVectorSpace, GradedVectorSpace};
use hhss::hochschild::{Bicomplex, Stability, TotalComplex};
use hhss::specseq::{pages, Filtration};
use hhss::{Field, Matrix};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

fn matrix(f: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let data: Vec<Vec<_>> = (0..rows)
        .map(|i| (0..cols).map(|j| f.from_int(entries[(i * cols + j) % entries.len()])).collect())
        .collect();
    Matrix::from_rows(f, &data, cols)
}

fn small_matrix() -> impl Strategy<Value = (Field, Matrix)> {
    (field(), 1usize..6, 1usize..6, prop::collection::vec(-2i64..=2, 1..36))
        .prop_map(|(f, r, c, e)| (f, matrix(f, r, c, &e)))
}

/// A complex on degrees `0..dims.len()` with `d_n = K_{n-1} R_n`, where the
/// columns of `K_{n-1}` span `ker d_{n-1}`, so that `d² = 0` by construction.
fn complex(f: Field, dims: &[usize], entries: &[i64]) -> DGVectorSpace {
    let basis: BTreeMap<i64, Vec<String>> = dims
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| (n as i64, (0..k).map(|i| format!("v{n}_{i}")).collect()))
        .collect();
    let space = GradedVectorSpace::new(basis).unwrap();
    let mut d: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut salt = 0;
    for n in 1..dims.len() {
        let below = d.get(&(n as i64 - 1)).cloned().unwrap_or_else(|| Matrix::zeros(f, 0, dims[n - 1]));
        let kernel = below.kernel_basis();
        let rotated: Vec<i64> = entries.iter().cycle().skip(salt).take(entries.len()).copied().collect();
        salt += 1;
        let r = matrix(f, kernel.cols(), dims[n], &rotated);
        d.insert(n as i64, kernel.mul(&r));
    }
    DGVectorSpace::new(f, space, d).unwrap()
}

fn small_complex() -> impl Strategy<Value = (Field, DGVectorSpace)> {
    (field(), prop::collection::vec(0usize..4, 1..4), prop::collection::vec(-2i64..=2, 1..20))
        .prop_map(|(f, dims, e)| (f, complex(f, &dims, &e)))
}

/// `K[x]/(x^m)` with `|x| = deg`.
fn monomial(f: Field, m: usize, deg: i64) -> DGCategory {
    let label = |i: usize| if i == 1 { "x".to_string() } else { format!("x{i}") };
    let mut b = CategoryBuilder::new(f);
    b.object("*").unwrap();
    b.identity("*", "1").unwrap();
    for i in 1..m {
        b.basis("*", "*", &label(i), deg * i as i64).unwrap();
    }
    for i in 1..m {
        for j in 1..m {
            let value = if i + j < m { vec![(label(i + j), f.one())] } else { Vec::new() };
            b.product("*", "*", "*", &label(i), &label(j), value).unwrap();
        }
    }
    b.build().unwrap()
}

fn small_algebra() -> impl Strategy<Value = DGCategory> {
    (field(), 2usize..4, -2i64..=2).prop_map(|(f, m, d)| monomial(f, m, d))
}

/// An arity certifying `lo..=hi`, when one exists and is small.
fn certified_arity(a: &DGCategory, normalized: bool, lo: i64, hi: i64, cap: usize) -> Option<usize> {
    let probe = Bicomplex::build(a, &Bimodule::standard(a), 0, normalized).ok()?;
    probe.certificate().required_s_max(lo, hi).filter(|&s| s <= cap).map(|s| s.max(1))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rank_plus_nullity((_, m) in small_matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn rref_is_deterministic_and_idempotent((_, m) in small_matrix()) {
        let (r, p) = m.rref();
        let (r2, p2) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(p, p2);
        prop_assert_eq!(m.rref().0, r);
    }

    #[test]
    fn solve_recovers_a_consistent_right_hand_side((f, m) in small_matrix(), seed in prop::collection::vec(-2i64..=2, 1..6)) {
        let x: Vec<_> = (0..m.cols()).map(|i| f.from_int(seed[i % seed.len()])).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn random_complexes_square_to_zero((_, v) in small_complex()) {
        prop_assert!(v.check_d_squared().is_ok());
        let h = v.homology().unwrap();
        // Euler characteristic is preserved by homology.
        let chi = |dims: BTreeMap<i64, usize>| dims.iter().map(|(n, d)| if n % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum::<i64>();
        prop_assert_eq!(chi(v.space().dims()), chi(h.dims()));
    }

    #[test]
    fn kunneth((f, v) in small_complex(), dims in prop::collection::vec(0usize..3, 1..3), e in prop::collection::vec(-2i64..=2, 1..12)) {
        let w = complex(f, &dims, &e);
        let t = v.tensor(&w);
        prop_assert!(t.check_d_squared().is_ok());
        let (hv, hw, ht) = (v.homology().unwrap(), w.homology().unwrap(), t.homology().unwrap());
        for n in -1..8 {
            let expected: usize = (0..=n).map(|i| hv.dim(i) * hw.dim(n - i)).sum();
            prop_assert_eq!(ht.dim(n), expected, "degree {}", n);
        }
    }

    #[test]
    fn hom_complex_homology((f, v) in small_complex(), dims in prop::collection::vec(0usize..3, 1..3), e in prop::collection::vec(-2i64..=2, 1..12)) {
        let w = complex(f, &dims, &e);
        let h = v.hom_complex(&w);
        prop_assert!(h.check_d_squared().is_ok());
        let (hv, hw, hh) = (v.homology().unwrap(), w.homology().unwrap(), h.homology().unwrap());
        for n in -6..6 {
            let expected: usize = (0..6).map(|i| hv.dim(i) * hw.dim(i + n)).sum();
            prop_assert_eq!(hh.dim(n), expected, "degree {}", n);
        }
    }

    #[test]
    fn hochschild_bicomplex_squares_to_zero(a in small_algebra(), normalized in any::<bool>()) {
        prop_assert!(a.validate().is_ok());
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 3, normalized).unwrap();
        prop_assert!(b.check().is_ok());
        prop_assert!(TotalComplex::new(&b, -4, 4).check());
    }

    #[test]
    fn normalized_equals_full(a in small_algebra()) {
        let (lo, hi) = (0, 2);
        let (Some(sn), Some(sf)) = (certified_arity(&a, true, lo, hi, 5), certified_arity(&a, false, lo, hi, 4)) else {
            return Ok(());
        };
        let m = Bimodule::standard(&a);
        let hn = Bicomplex::build(&a, &m, sn, true).unwrap().hochschild_cohomology(lo, hi).unwrap();
        let hf = Bicomplex::build(&a, &m, sf, false).unwrap().hochschild_cohomology(lo, hi).unwrap();
        for n in lo..=hi {
            prop_assert_eq!(hn.dim(n), hf.dim(n), "degree {}", n);
        }
    }

    #[test]
    fn pages_shrink_and_converge(a in small_algebra(), forgetful in any::<bool>()) {
        let (lo, hi) = (-2, 3);
        let Some(s) = certified_arity(&a, true, lo, hi, 5) else { return Ok(()) };
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), s, true).unwrap();
        let filtration = if forgetful { Filtration::Forgetful } else { Filtration::Characteristic };
        let ss = pages(&b, filtration, (lo, hi), 3).unwrap();
        for w in ss.sequence.pages.windows(2) {
            for ((p, n), d) in w[1].nonzero() {
                prop_assert!(d <= w[0].dim(p, n));
            }
        }
        let hh = b.hochschild_cohomology(lo, hi).unwrap();
        for n in lo..=hi {
            if b.stability(n) == Stability::Exact {
                prop_assert_eq!(ss.diagonal_sum(n), hh.dim(n).unwrap());
            }
        }
    }

    #[test]
    fn centers_are_graded_commutative_and_agree_with_brute_force(a in small_algebra()) {
        let z = graded_center(&a, (-6, 6));
        prop_assert!(z.is_graded_commutative(&a));
        for t in -6..=6 {
            prop_assert_eq!(z.dim(t), one_object_center_dim(&a, t));
        }
        let parity = GradedFunctor::parity(&a);
        let zp = hhss::center::graded_center_with_automorphism(&a, &parity, (-6, 6)).unwrap();
        prop_assert!(zp.is_contained_in(&z) && z.is_contained_in(&zp));
    }

    #[test]
    fn descriptions_round_trip(a in small_algebra()) {
        let input = Input { name: "random".into(), category: a.clone(), functors: BTreeMap::new(), bimodule: None, note: None };
        let text = describe(&input).to_text();
        let back = ingest_str("random", &text, None).unwrap();
        prop_assert_eq!(&back.category, &a);
        prop_assert_eq!(describe(&back).to_text(), text);
    }
}
