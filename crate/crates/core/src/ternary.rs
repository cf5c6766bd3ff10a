//! Homogeneous forms in three variables: Laplacian and interpolation.

use std::collections::BTreeMap;

use crate::approx::ApproxScalar;
use crate::error::{CoreError, Result};
use crate::linalg;
use crate::scalar::{Coeff, ExactScalar};

/// A homogeneous form of fixed degree in `x1, x2, x3`, stored sparsely by
/// exponent triple `(i, j, k)` with `i + j + k = degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct TernaryForm<T: Coeff = ExactScalar> {
    degree: u32,
    coeffs: BTreeMap<(u32, u32, u32), T>,
}

impl<T: Coeff> TernaryForm<T> {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn set(&mut self, e: (u32, u32, u32), c: T) {
        assert_eq!(e.0 + e.1 + e.2, self.degree, "exponents must sum to degree");
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn adding(&mut self, e: (u32, u32, u32), c: &T) {
        assert_eq!(e.0 + e.1 + e.2, self.degree, "exponents must sum to degree");
        let cur = self.coeffs.get(&e);
        let next = match cur {
            Some(v) => v.ring_add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, next);
        }
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> T {
        self.coeffs.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &T)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.adding(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.ring_neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TernaryForm::zero(self.degree + other.degree);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.adding((e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2), &c1.ring_mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return TernaryForm::zero(self.degree);
        }
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k.ring_scale(c))).collect(),
        }
    }

    /// Multiply every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &T) -> Self {
        if c.is_zero() {
            return TernaryForm::zero(self.degree);
        }
        let mut out = TernaryForm::zero(self.degree);
        for (e, k) in &self.coeffs {
            out.adding(*e, &k.ring_mul(c));
        }
        out
    }

    pub fn eval(&self, x: &[T; 3]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.coeffs {
            let mut term = c.clone();
            for (xi, &exp) in x.iter().zip([e.0, e.1, e.2].iter()) {
                for _ in 0..exp {
                    term = term.ring_mul(xi);
                }
            }
            acc = acc.ring_add(&term);
        }
        acc
    }

    /// `d^2 f / dx1^2 + d^2 f / dx2^2 + d^2 f / dx3^2`; the zero form of
    /// degree 0 when the degree is below 2.
    pub fn laplacian(&self) -> Self {
        if self.degree < 2 {
            return TernaryForm::zero(0);
        }
        let mut out = TernaryForm::zero(self.degree - 2);
        for (e, c) in &self.coeffs {
            let exps = [e.0, e.1, e.2];
            for axis in 0..3 {
                if exps[axis] >= 2 {
                    let factor = ExactScalar::from_int((exps[axis] * (exps[axis] - 1)) as i64);
                    let mut ne = exps;
                    ne[axis] -= 2;
                    out.adding((ne[0], ne[1], ne[2]), &c.ring_scale(&factor));
                }
            }
        }
        out
    }
}

/// Exponent triples of all degree-`d` monomials in deterministic order.
pub fn monomial_exponents(degree: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=(degree - i)).rev() {
            out.push((i, j, degree - i - j));
        }
    }
    out
}

/// Least-squares fit of a homogeneous degree-`degree` form through sampled
/// values. Returns the fitted form and the max-norm residual; an exact fit
/// (values from a true form) leaves the residual below `2^-(prec/2)`.
pub fn interpolate_homogeneous(
    degree: u32,
    samples: &[([ApproxScalar; 3], ApproxScalar)],
    prec: u32,
) -> Result<(TernaryForm<ApproxScalar>, ApproxScalar)> {
    let exps = monomial_exponents(degree);
    let need = exps.len();
    if samples.len() < need {
        return Err(CoreError::Domain(format!(
            "degree-{degree} interpolation needs at least {need} samples, got {}",
            samples.len()
        )));
    }
    let mut a: linalg::Mat = Vec::with_capacity(samples.len());
    let mut b = Vec::with_capacity(samples.len());
    for (pt, val) in samples {
        let mut row = Vec::with_capacity(need);
        for &(i, j, k) in &exps {
            let mut m = ApproxScalar::one(prec);
            for _ in 0..i {
                m = m.mul(&pt[0]);
            }
            for _ in 0..j {
                m = m.mul(&pt[1]);
            }
            for _ in 0..k {
                m = m.mul(&pt[2]);
            }
            row.push(m);
        }
        a.push(row);
        b.push(val.clone());
    }
    let (x, residual) = linalg::least_squares(&a, &b, prec, "homogeneous interpolation")?;
    let mut form = TernaryForm::<ApproxScalar>::zero(degree);
    for (e, c) in exps.iter().zip(x) {
        if !c.is_zero() {
            form.set(*e, c);
        }
    }
    Ok((form, residual))
}
