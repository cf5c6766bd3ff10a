//! Deterministic random generation of exact test data from a caller-provided
//! generator: rationals as ratios of bounded integers, forms, tensors and
//! determinant-one matrices.

use rand::Rng;

use crate::binary_forms::{BinaryForm, Sl2Action};
use crate::poly::UnivariatePoly;
use crate::scalar::ExactScalar;
use crate::triple::TripleTensor;

/// A random rational with numerator in `[-height, height]` and denominator
/// in `[1, height]`.
pub fn rational<R: Rng>(rng: &mut R, height: i64) -> ExactScalar {
    let num = rng.gen_range(-height..=height);
    let den = rng.gen_range(1..=height);
    ExactScalar::from_rat(num, den)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, height: i64) -> ExactScalar {
    loop {
        let x = rational(rng, height);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random Gaussian rational of the given height.
pub fn gauss_rational<R: Rng>(rng: &mut R, height: i64) -> ExactScalar {
    let re = rational(rng, height);
    let im = rational(rng, height);
    ExactScalar::new(re.re, im.re)
}

/// A random polynomial of exact degree `degree` with rational coefficients.
pub fn poly<R: Rng>(rng: &mut R, degree: usize, height: i64) -> UnivariatePoly {
    let mut coeffs: Vec<ExactScalar> = (0..degree).map(|_| rational(rng, height)).collect();
    coeffs.push(nonzero_rational(rng, height));
    UnivariatePoly::new(coeffs)
}

/// A random binary form of odd degree `m` with nonzero leading coefficient.
pub fn binary_form<R: Rng>(rng: &mut R, m: usize, height: i64) -> BinaryForm {
    let mut coeffs = vec![nonzero_rational(rng, height)];
    coeffs.extend((0..m).map(|_| rational(rng, height)));
    BinaryForm::new(coeffs).expect("odd degree by construction")
}

/// A sextic with distinct random rational roots drawn from a height bound.
pub fn sextic_with_rational_roots<R: Rng>(
    rng: &mut R,
    height: i64,
) -> (UnivariatePoly, Vec<ExactScalar>) {
    let mut roots: Vec<ExactScalar> = Vec::new();
    while roots.len() < 6 {
        let candidate = rational(rng, height);
        if !roots.contains(&candidate) {
            roots.push(candidate);
        }
    }
    (
        UnivariatePoly::from_roots(ExactScalar::one(), &roots),
        roots,
    )
}

/// A random determinant-one rational matrix: `a, b, c` free with `a != 0`
/// and `d = (1 + bc)/a`.
pub fn sl2<R: Rng>(rng: &mut R, height: i64) -> Sl2Action {
    let a = nonzero_rational(rng, height);
    let b = rational(rng, height);
    let c = rational(rng, height);
    let d = &(&ExactScalar::one() + &(&b * &c)) / &a;
    Sl2Action::new(a, b, c, d).expect("determinant 1 by construction")
}

/// A random triple tensor with rational entries and nonzero pairings.
pub fn triple_tensor<R: Rng>(rng: &mut R, height: i64, unit_pairings: bool) -> TripleTensor {
    let mut t = TripleTensor::zero_entries_with_unit_pairings();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                t.entries[i][j][k] = rational(rng, height);
            }
        }
    }
    if !unit_pairings {
        for l in 0..3 {
            t.pairings[l] = nonzero_rational(rng, height);
        }
    }
    t
}

/// A random decomposable tensor `u (x) v (x) w`.
pub fn decomposable_tensor<R: Rng>(rng: &mut R, height: i64) -> TripleTensor {
    let u = [rational(rng, height), rational(rng, height)];
    let v = [rational(rng, height), rational(rng, height)];
    let w = [rational(rng, height), rational(rng, height)];
    let mut t = TripleTensor::zero_entries_with_unit_pairings();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                t.entries[i][j][k] = &(&u[i] * &v[j]) * &w[k];
            }
        }
    }
    t
}
