use proptest::prelude::*;

use cr_spectra::algebra::rational::{is_negative, ratio};
use cr_spectra::algebra::{GaussianRational, Monomial, Polynomial, Var};
use cr_spectra::crops::{connection_data, kohn_laplacian, paneitz, VectorField};
use cr_spectra::exec::Execution;
use cr_spectra::harmonics::{agree_on_sphere, canonicalize, flat_laplacian, inner_product};
use cr_spectra::spectral::{assemble_paneitz_matrix, det_sign, negative_spectrum_sweep, SeedChoice};

fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=8, -20i64..=20, 1i64..=8)
        .prop_map(|(a, b, c, d)| GaussianRational::new(ratio(a, b), ratio(c, d)))
}

fn polynomial(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((0..=max_exp, 0..=max_exp, 0..=max_exp, 0..=max_exp), coefficient()),
        0..=max_terms,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|((a, b, c, d), k)| (Monomial::new(a, b, c, d), k)),
        )
    })
}

fn small_t() -> impl Strategy<Value = cr_spectra::algebra::Rational> {
    (-9i64..=9).prop_map(|n| ratio(n, 10))
}

fn var() -> impl Strategy<Value = Var> {
    prop::sample::select(Var::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in polynomial(2, 4), g in polynomial(2, 4), h in polynomial(2, 3)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(), f.clone());
    }

    #[test]
    fn conjugation_is_a_ring_involution(f in polynomial(2, 4), g in polynomial(2, 4)) {
        prop_assert_eq!(f.conjugate().conjugate(), f.clone());
        prop_assert_eq!((&f * &g).conjugate(), &f.conjugate() * &g.conjugate());
        prop_assert!((&f + &f.conjugate()).is_real());
    }

    #[test]
    fn leibniz_and_conjugate_derivative(f in polynomial(3, 4), g in polynomial(3, 4), v in var()) {
        let lhs = (&f * &g).derive(v);
        let rhs = &(&f.derive(v) * &g) + &(&f * &g.derive(v));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.derive(v).conjugate(), f.conjugate().derive(v.conj()));
    }

    #[test]
    fn bidegree_split_recombines(f in polynomial(3, 6)) {
        let mut sum = Polynomial::zero();
        for ((p, q), part) in f.bidegree_split() {
            prop_assert!(part.is_homogeneous_of(p, q));
            sum = &sum + &part;
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn text_round_trip(f in polynomial(3, 6)) {
        let text = f.to_string();
        let back: Polynomial = text.parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn pairing_is_hermitian_and_positive(f in polynomial(2, 4), g in polynomial(2, 4)) {
        prop_assert_eq!(inner_product(&f, &g), inner_product(&g, &f).conj());
        let n = inner_product(&f, &f);
        prop_assert!(n.is_real());
        prop_assert!(!is_negative(&n.re));
        prop_assert_eq!(n.is_zero(), f.is_zero());
    }

    #[test]
    fn canonical_form_agrees_on_sphere(f in polynomial(2, 5)) {
        let s = canonicalize(&f);
        let back = s.to_polynomial();
        let deg = f.degree().unwrap_or(0);
        prop_assert!(agree_on_sphere(&f, &back, deg));
        prop_assert_eq!(inner_product(&f, &f), inner_product(&back, &back));
        for (_, part) in s.components() {
            prop_assert!(flat_laplacian(part).is_zero());
        }
    }

    #[test]
    fn parseval(f in polynomial(2, 5)) {
        let s = canonicalize(&f);
        let mut total = GaussianRational::zero();
        for (_, part) in s.components() {
            total += &inner_product(part, part);
        }
        prop_assert_eq!(total, inner_product(&f, &f));
    }

    #[test]
    fn frame_field_is_a_derivation(f in polynomial(2, 3), g in polynomial(2, 3)) {
        let z1 = VectorField::z1();
        let lhs = z1.apply(&(&f * &g));
        let rhs = &(&z1.apply(&f) * &g) + &(&f * &z1.apply(&g));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn paneitz_is_real_and_symmetric(t in small_t(), f in polynomial(2, 3), g in polynomial(2, 3)) {
        let geom = connection_data(&t).unwrap();
        let (f, g) = (canonicalize(&f), canonicalize(&g));
        let pf = paneitz(&geom, &f).unwrap();
        let pg = paneitz(&geom, &g).unwrap();
        prop_assert_eq!(pf.inner_product(&g), f.inner_product(&pg));
        prop_assert_eq!(paneitz(&geom, &f.conjugate()).unwrap(), pf.conjugate());
    }

    #[test]
    fn kohn_laplacian_is_nonnegative(t in small_t(), f in polynomial(2, 3)) {
        let geom = connection_data(&t).unwrap();
        let f = canonicalize(&f);
        let q = kohn_laplacian(&geom, &f).inner_product(&f);
        prop_assert!(q.is_real());
        prop_assert!(!is_negative(&q.re));
    }

    #[test]
    fn determinant_sign_is_invariant(t in small_t(), k in 1usize..=4, s in 1i64..=50, perm_seed in 0usize..24) {
        prop_assume!(!t.is_zero());
        let pair = assemble_paneitz_matrix(k, &t).unwrap();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.rotate_left(perm_seed % k);
        let sign = det_sign(&pair).unwrap();
        prop_assert_eq!(sign, -1);
        prop_assert_eq!(det_sign(&pair.scaled(&ratio(s, 7))).unwrap(), sign);
        prop_assert_eq!(det_sign(&pair.permuted(&perm)).unwrap(), sign);
        prop_assert_eq!(pair.exact_det().unwrap(), pair.permuted(&perm).exact_det().unwrap());
    }

    #[test]
    fn random_seeds_reproduce(seed in any::<u64>(), t in small_t()) {
        prop_assume!(!t.is_zero());
        let rows = negative_spectrum_sweep(&[t], 3, 128, &SeedChoice::Random(seed), Execution::Sequential).unwrap();
        for r in rows {
            prop_assert!(r.reproduces());
        }
    }
}
