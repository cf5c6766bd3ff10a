//! Sparse multivariate polynomials over exact Gaussian rationals.
//!
//! Used to verify claimed identities by full symbolic expansion: the same
//! generic formulas that run on numbers run on these.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Coeff, ExactScalar};

/// A sparse polynomial in finitely many variables. Polynomials with
/// different variable counts are compatible: exponent vectors are padded
/// with zeros on demand, so `MPoly::zero()` and `MPoly::one()` work in any
/// context.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<u16>, ExactScalar>,
}

fn pad(mut e: Vec<u16>, n: usize) -> Vec<u16> {
    while e.len() < n {
        e.push(0);
    }
    e
}

fn trim(mut e: Vec<u16>) -> Vec<u16> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn one() -> Self {
        MPoly::constant(ExactScalar::one())
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0u16; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, ExactScalar::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    fn insert(&mut self, e: Vec<u16>, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let n = e1.len().max(e2.len());
                let a = pad(e1.clone(), n);
                let b = pad(e2.clone(), n);
                let e: Vec<u16> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Evaluate at a point; missing trailing variables read as given.
    pub fn eval(&self, point: &[ExactScalar]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = &term * &point[i].pow(exp as u32);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[u16]) -> ExactScalar {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &ExactScalar)> {
        self.terms.iter()
    }
}

impl Coeff for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        MPoly::add(self, other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        MPoly::sub(self, other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        MPoly::mul(self, other)
    }
    fn ring_neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn ring_scale(&self, c: &ExactScalar) -> Self {
        MPoly::scale(self, c)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{x}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
