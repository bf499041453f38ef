//! Values checked against oracles that do not share code paths with the
//! library: numerical quadrature on S³, an exact LDLᴴ inertia count written
//! here, and frozen regression values.

use std::f64::consts::PI;

use cr_spectra::algebra::rational::{from_f64_exact, is_negative, ratio, to_f64};
use cr_spectra::algebra::GaussianRational;
use cr_spectra::exec::Execution;
use cr_spectra::harmonics::{inner_product, monomial_integral};
use cr_spectra::spectral::{generalized_eigenvalues, kohn_block, negative_spectrum_sweep, MatrixPair, SeedChoice};

/// `∫_{S³} z^a w^b z̄^c w̄^d dσ` in Hopf coordinates
/// `z = cos η e^{iα}`, `w = sin η e^{iβ}`, `dσ = sin η cos η dη dα dβ / 2π²`.
/// Simpson in `η`, trapezoid (exact on trigonometric polynomials) in the angles.
fn quadrature(a: u32, b: u32, c: u32, d: u32) -> (f64, f64) {
    let n_eta = 2000;
    let n_ang = 24;
    let h = (PI / 2.0) / n_eta as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for i in 0..=n_eta {
        let eta = i as f64 * h;
        let simpson = if i == 0 || i == n_eta {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let radial = eta.cos().powi((a + c) as i32) * eta.sin().powi((b + d) as i32) * eta.sin() * eta.cos();
        for j in 0..n_ang {
            for k in 0..n_ang {
                let alpha = 2.0 * PI * j as f64 / n_ang as f64;
                let beta = 2.0 * PI * k as f64 / n_ang as f64;
                let phase = (a as f64 - c as f64) * alpha + (b as f64 - d as f64) * beta;
                let weight = simpson * h / 3.0 * (2.0 * PI / n_ang as f64).powi(2) / (2.0 * PI * PI);
                re += weight * radial * phase.cos();
                im += weight * radial * phase.sin();
            }
        }
    }
    (re, im)
}

#[test]
fn monomial_integrals_match_quadrature() {
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                for d in 0..=2 {
                    let exact = to_f64(&monomial_integral(a, b, c, d));
                    let (re, im) = quadrature(a, b, c, d);
                    assert!((exact - re).abs() < 1e-9, "({a},{b},{c},{d}): {exact} vs {re}");
                    assert!(im.abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn unit_volume_and_low_moments() {
    assert_eq!(monomial_integral(0, 0, 0, 0), ratio(1, 1));
    assert_eq!(monomial_integral(1, 0, 1, 0), ratio(1, 2));
    assert_eq!(monomial_integral(1, 1, 1, 1), ratio(1, 6));
    assert_eq!(monomial_integral(2, 0, 2, 0), ratio(1, 3));
    let z: cr_spectra::algebra::Polynomial = "z".parse().unwrap();
    assert_eq!(inner_product(&z, &z), GaussianRational::real(ratio(1, 2)));
}

/// Number of negative eigenvalues of the Hermitian matrix `A − rG`, from an
/// exact LDLᴴ factorization; `None` on a zero pivot.
fn negatives_below(pair: &MatrixPair, r: &cr_spectra::algebra::Rational) -> Option<usize> {
    let n = pair.dim();
    let rc = GaussianRational::real(r.clone());
    let m = |i: usize, j: usize| pair.a.get(i, j) - &(&rc * pair.g.get(i, j));
    let mut l = vec![vec![GaussianRational::zero(); n]; n];
    let mut d: Vec<GaussianRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut dk = m(k, k);
        for j in 0..k {
            dk -= &(&(&l[k][j] * &d[j]) * &l[k][j].conj());
        }
        if dk.is_zero() {
            return None;
        }
        for i in k + 1..n {
            let mut s = m(i, k);
            for j in 0..k {
                s -= &(&(&l[i][j] * &d[j]) * &l[k][j].conj());
            }
            l[i][k] = &s / &dk;
        }
        d.push(dk);
    }
    Some(d.iter().filter(|x| is_negative(&x.re)).count())
}

fn assert_spectrum_matches_inertia(pair: &MatrixPair, eigenvalues: &[f64]) {
    for &lambda in eigenvalues {
        let delta = 1e-7 * lambda.abs().max(1.0);
        let lo = from_f64_exact(lambda - delta).unwrap();
        let hi = from_f64_exact(lambda + delta).unwrap();
        let below = negatives_below(pair, &lo).expect("pivot");
        let upto = negatives_below(pair, &hi).expect("pivot");
        let inside = eigenvalues.iter().filter(|x| (**x - lambda).abs() <= delta).count();
        let under = eigenvalues.iter().filter(|x| **x < lambda - delta).count();
        assert_eq!(upto - below, inside, "multiplicity near {lambda}");
        assert_eq!(below, under, "count below {lambda}");
    }
}

#[test]
fn paneitz_eigenvalues_bracketed_by_exact_inertia() {
    let rows = negative_spectrum_sweep(
        &[ratio(1, 2), ratio(-1, 3)],
        6,
        128,
        &SeedChoice::Default,
        Execution::default(),
    )
    .unwrap();
    for row in &rows {
        assert_spectrum_matches_inertia(&row.pair, &row.spectrum.eigenvalues);
        assert_eq!(negatives_below(&row.pair, &ratio(0, 1)), Some(1), "k = {}", row.k);
    }
}

#[test]
fn kohn_eigenvalues_bracketed_by_exact_inertia() {
    for n in 1..=4 {
        let pair = kohn_block(&ratio(1, 2), n).unwrap();
        let spec = generalized_eigenvalues(&pair, 128).unwrap();
        assert_spectrum_matches_inertia(&pair, &spec.eigenvalues);
    }
}

#[test]
fn frozen_determinants() {
    let rows = negative_spectrum_sweep(&[ratio(1, 3)], 5, 128, &SeedChoice::Default, Execution::default()).unwrap();
    let dets: Vec<&str> = rows.iter().map(|r| r.spectrum.exact_det.as_str()).collect();
    assert_eq!(dets, ["-1/3", "-5/3", "-875/9", "-214375/9", "-16506875/1"]);
}

#[test]
fn frozen_half_spectra() {
    let rows = negative_spectrum_sweep(&[ratio(1, 2)], 3, 128, &SeedChoice::Default, Execution::default()).unwrap();
    let expected: [&[f64]; 3] = [
        &[-0.75],
        &[-0.4759958246336977, 17.7259958246337],
        &[-0.23772487397163633, 26.030971723971476, 178.95675315000017],
    ];
    for (row, want) in rows.iter().zip(expected) {
        for (x, y) in row.spectrum.eigenvalues.iter().zip(want) {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0), "k = {}: {x} vs {y}", row.k);
        }
    }
}
