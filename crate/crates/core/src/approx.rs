//! Approximate scalars: complex numbers in fixed-point binary at a stated
//! working precision.
//!
//! A value is `(re + im*i) / 2^prec` with unbounded integer components, so
//! magnitudes never overflow and absolute resolution is `2^-prec`. This is
//! exactly what residual checks against thresholds like `2^-100` need.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};
use crate::scalar::{Coeff, ExactScalar};

/// Default working precision in bits when none is supplied.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// A complex number `(re + i*im) * 2^-prec`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ApproxScalar {
    re: BigInt,
    im: BigInt,
    prec: u32,
}

/// Round `x / 2^bits` to the nearest integer, ties away from zero.
/// Computed on magnitudes: shift-right of a negative BigInt floors, which
/// would break the symmetry `round(-x) = -round(x)`.
fn round_shift(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    let half = BigInt::from(1) << (bits - 1);
    let mag = (x.abs() + half) >> bits;
    if x.sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Round `n / d` to the nearest integer, ties away from zero. `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    // round(n/d) = sign(n) * floor((2|n| + |d|) / (2|d|))
    let sign = if n.is_negative() { -1 } else { 1 };
    let num = (n.abs() << 1u32) + d;
    let q = num / (d << 1u32);
    BigInt::from(sign) * q
}

impl ApproxScalar {
    pub fn zero(prec: u32) -> Self {
        ApproxScalar {
            re: BigInt::zero(),
            im: BigInt::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        ApproxScalar {
            re: BigInt::from(1) << prec,
            im: BigInt::zero(),
            prec,
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    pub fn from_exact(x: &ExactScalar, prec: u32) -> Self {
        ApproxScalar {
            re: rational_to_scaled(&x.re, prec),
            im: rational_to_scaled(&x.im, prec),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        ApproxScalar {
            re: BigInt::from(n) << prec,
            im: BigInt::zero(),
            prec,
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let conv = |v: f64| -> BigInt {
            match BigRational::from_float(v) {
                Some(r) => rational_to_scaled(&r, prec),
                None => BigInt::zero(),
            }
        };
        ApproxScalar {
            re: conv(re),
            im: conv(im),
            prec,
        }
    }

    /// Re-round to a different working precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => ApproxScalar {
                re: &self.re << (prec - self.prec),
                im: &self.im << (prec - self.prec),
                prec,
            },
            Ordering::Less => ApproxScalar {
                re: round_shift(&self.re, self.prec - prec),
                im: round_shift(&self.im, self.prec - prec),
                prec,
            },
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self, u32) {
        let p = self.prec.max(other.prec);
        (self.with_precision(p), other.with_precision(p), p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, p) = self.aligned(other);
        ApproxScalar {
            re: a.re + b.re,
            im: a.im + b.im,
            prec: p,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, p) = self.aligned(other);
        ApproxScalar {
            re: a.re - b.re,
            im: a.im - b.im,
            prec: p,
        }
    }

    pub fn neg(&self) -> Self {
        ApproxScalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
            prec: self.prec,
        }
    }

    pub fn conj(&self) -> Self {
        ApproxScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, p) = self.aligned(other);
        let re = &a.re * &b.re - &a.im * &b.im;
        let im = &a.re * &b.im + &a.im * &b.re;
        ApproxScalar {
            re: round_shift(&re, p),
            im: round_shift(&im, p),
            prec: p,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b, p) = self.aligned(other);
        let d = &b.re * &b.re + &b.im * &b.im; // scale 2p
        if d.is_zero() {
            return Err(CoreError::Domain("division by zero".into()));
        }
        // a/b = a*conj(b)/|b|^2; numerator at scale 2p, so multiply by 2^p
        // before dividing to land back on scale p.
        let nre = (&a.re * &b.re + &a.im * &b.im) << p;
        let nim = (&a.im * &b.re - &a.re * &b.im) << p;
        Ok(ApproxScalar {
            re: round_div(&nre, &d),
            im: round_div(&nim, &d),
            prec: p,
        })
    }

    pub fn recip(&self) -> Result<Self> {
        ApproxScalar::one(self.prec).div(self)
    }

    /// `|x|^2` at the same scale (rounded).
    pub fn norm_sqr(&self) -> ApproxScalar {
        let n = &self.re * &self.re + &self.im * &self.im;
        ApproxScalar {
            re: round_shift(&n, self.prec),
            im: BigInt::zero(),
            prec: self.prec,
        }
    }

    /// Raw `|x|^2 * 2^{2 prec}` as an integer, for exact comparisons.
    fn norm_sqr_raw(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// True iff `|x| <= 2^eps_log2` (eps_log2 may be negative).
    pub fn abs_le_pow2(&self, eps_log2: i64) -> bool {
        // |x|^2 * 2^{2p} <= 2^{2p + 2 eps}
        let bound_exp = 2 * self.prec as i64 + 2 * eps_log2;
        if bound_exp < 0 {
            return self.norm_sqr_raw().is_zero();
        }
        self.norm_sqr_raw() <= (BigInt::from(1) << (bound_exp as u64))
    }

    /// Compare `|self|` with `|other|` exactly.
    pub fn abs_cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.norm_sqr_raw().cmp(&b.norm_sqr_raw())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        // r = |x| at scale p: isqrt(re^2+im^2) (both at scale 2p).
        let r = self.norm_sqr_raw().sqrt();
        if self.im.is_zero() {
            if !self.re.is_negative() {
                let u = ((&self.re) << p).sqrt();
                return ApproxScalar {
                    re: u,
                    im: BigInt::zero(),
                    prec: p,
                };
            }
            let v = ((-&self.re) << p).sqrt();
            return ApproxScalar {
                re: BigInt::zero(),
                im: v,
                prec: p,
            };
        }
        // u = sqrt((r+re)/2), v = sign(im) sqrt((r-re)/2)
        let u2 = (&r + &self.re) << (p - 1);
        let v2 = (&r - &self.re) << (p - 1);
        let u = u2.max(BigInt::zero()).sqrt();
        let v = v2.max(BigInt::zero()).sqrt();
        let v = if self.im.is_negative() { -v } else { v };
        ApproxScalar {
            re: u,
            im: v,
            prec: p,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let scale = 2f64.powi(-(self.prec as i32));
        let re = self.re.to_f64().unwrap_or(f64::NAN) * scale;
        let im = self.im.to_f64().unwrap_or(f64::NAN) * scale;
        (re, im)
    }

    /// Deterministic decimal rendering with the given number of fractional
    /// digits, used for reproducible reports.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let fmt_part = |x: &BigInt, prec: u32| -> String {
            let pow10 = BigInt::from(10u32).pow(digits);
            let scaled = round_div(&(x * pow10), &(BigInt::from(1) << prec));
            let neg = scaled.is_negative();
            let a = scaled.abs();
            let ten = BigInt::from(10u32).pow(digits);
            let int = &a / &ten;
            let frac = &a % &ten;
            let mut s = String::new();
            if neg {
                s.push('-');
            }
            s.push_str(&int.to_string());
            if digits > 0 {
                s.push('.');
                let f = frac.to_string();
                for _ in f.len()..digits as usize {
                    s.push('0');
                }
                s.push_str(&f);
            }
            s
        };
        format!(
            "{}{}{}i",
            fmt_part(&self.re, self.prec),
            if self.im.is_negative() { "" } else { "+" },
            fmt_part(&self.im, self.prec)
        )
    }
}

fn rational_to_scaled(r: &BigRational, prec: u32) -> BigInt {
    round_div(&(r.numer() << prec), r.denom())
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re}{}{}i", if im < 0.0 { "" } else { "+" }, im)
    }
}

impl Coeff for ApproxScalar {
    fn zero() -> Self {
        ApproxScalar::zero(DEFAULT_PRECISION_BITS)
    }
    fn one() -> Self {
        ApproxScalar::one(DEFAULT_PRECISION_BITS)
    }
    fn is_zero(&self) -> bool {
        ApproxScalar::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        ApproxScalar::add(self, other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        ApproxScalar::sub(self, other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        ApproxScalar::mul(self, other)
    }
    fn ring_neg(&self) -> Self {
        ApproxScalar::neg(self)
    }
    fn ring_scale(&self, c: &ExactScalar) -> Self {
        self.mul(&ApproxScalar::from_exact(c, self.prec))
    }
}

/// A point of the projective line: a finite scalar or the distinguished
/// point at infinity. Keeps Moebius actions and cross-ratios total.
#[derive(Clone, PartialEq, Debug)]
pub enum P1<T> {
    Finite(T),
    Infinity,
}

impl<T> P1<T> {
    pub fn finite(t: T) -> Self {
        P1::Finite(t)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1::Infinity)
    }
}

/// Homogeneous coordinates `(x : y)` with `Infinity = (1 : 0)`.
fn homog_exact(p: &P1<ExactScalar>) -> (ExactScalar, ExactScalar) {
    match p {
        P1::Finite(t) => (t.clone(), ExactScalar::one()),
        P1::Infinity => (ExactScalar::one(), ExactScalar::zero()),
    }
}

fn homog_approx(p: &P1<ApproxScalar>, prec: u32) -> (ApproxScalar, ApproxScalar) {
    match p {
        P1::Finite(t) => (t.clone(), ApproxScalar::one(prec)),
        P1::Infinity => (ApproxScalar::one(prec), ApproxScalar::zero(prec)),
    }
}

/// Cross-ratio `((a-c)(b-d)) / ((a-d)(b-c))` on exact projective points,
/// with the standard limit convention at infinity.
pub fn cross_ratio_exact(
    a: &P1<ExactScalar>,
    b: &P1<ExactScalar>,
    c: &P1<ExactScalar>,
    d: &P1<ExactScalar>,
) -> Result<ExactScalar> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(CoreError::Domain(
                    "cross-ratio requires four pairwise distinct points".into(),
                ));
            }
        }
    }
    let (xa, ya) = homog_exact(a);
    let (xb, yb) = homog_exact(b);
    let (xc, yc) = homog_exact(c);
    let (xd, yd) = homog_exact(d);
    let det = |x1: &ExactScalar, y1: &ExactScalar, x2: &ExactScalar, y2: &ExactScalar| {
        &(x1 * y2) - &(x2 * y1)
    };
    let num = det(&xa, &ya, &xc, &yc) * det(&xb, &yb, &xd, &yd);
    let den = det(&xa, &ya, &xd, &yd) * det(&xb, &yb, &xc, &yc);
    if den.is_zero() {
        return Err(CoreError::Degeneracy("coincident points in cross-ratio".into()));
    }
    Ok(&num / &den)
}

/// Cross-ratio on approximate projective points.
pub fn cross_ratio(
    a: &P1<ApproxScalar>,
    b: &P1<ApproxScalar>,
    c: &P1<ApproxScalar>,
    d: &P1<ApproxScalar>,
) -> Result<ApproxScalar> {
    let prec = [a, b, c, d]
        .iter()
        .filter_map(|p| match p {
            P1::Finite(t) => Some(t.precision_bits()),
            P1::Infinity => None,
        })
        .max()
        .unwrap_or(DEFAULT_PRECISION_BITS);
    let (xa, ya) = homog_approx(a, prec);
    let (xb, yb) = homog_approx(b, prec);
    let (xc, yc) = homog_approx(c, prec);
    let (xd, yd) = homog_approx(d, prec);
    let det = |x1: &ApproxScalar, y1: &ApproxScalar, x2: &ApproxScalar, y2: &ApproxScalar| {
        x1.mul(y2).sub(&x2.mul(y1))
    };
    let num = det(&xa, &ya, &xc, &yc).mul(&det(&xb, &yb, &xd, &yd));
    let den = det(&xa, &ya, &xd, &yd).mul(&det(&xb, &yb, &xc, &yc));
    if den.is_zero() {
        return Err(CoreError::Degeneracy("coincident points in cross-ratio".into()));
    }
    num.div(&den)
}

/// Exact Moebius action `z -> (az+b)/(cz+d)` on the projective line.
pub fn moebius_exact(
    m: &[ExactScalar; 4],
    p: &P1<ExactScalar>,
) -> P1<ExactScalar> {
    let [a, b, c, d] = m;
    let (x, y) = homog_exact(p);
    let nx = &(a * &x) + &(b * &y);
    let ny = &(c * &x) + &(d * &y);
    if ny.is_zero() {
        P1::Infinity
    } else {
        P1::Finite(&nx / &ny)
    }
}
