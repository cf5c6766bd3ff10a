//! Univariate polynomials with exact coefficients, plus the root-finding,
//! resultant and discriminant utilities everything else consumes.
//!
//! Root multiplicities are decided exactly: a Yun square-free decomposition
//! over the Gaussian rationals runs first, and the simultaneous-iteration
//! root finder only ever sees square-free factors.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::ToPrimitive;

use crate::approx::ApproxScalar;
use crate::error::{CoreError, Result};
use crate::scalar::ExactScalar;

/// Polynomial in one variable, coefficients in ascending degree order.
/// The zero polynomial has an empty coefficient vector and degree -1.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<ExactScalar>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivariatePoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        UnivariatePoly::new(vec![c])
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); n + 1];
        coeffs[n] = ExactScalar::one();
        UnivariatePoly { coeffs }
    }

    pub fn from_int_coeffs(ascending: &[i64]) -> Self {
        UnivariatePoly::new(ascending.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    /// `lead * prod (z - r_i)`.
    pub fn from_roots(lead: ExactScalar, roots: &[ExactScalar]) -> Self {
        let mut p = UnivariatePoly::constant(lead);
        for r in roots {
            p = p.mul(&UnivariatePoly::new(vec![-r, ExactScalar::one()]));
        }
        p
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> ExactScalar {
        self.coeffs.last().cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &other.coeff(i));
        }
        UnivariatePoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) - &other.coeff(i));
        }
        UnivariatePoly::new(out)
    }

    pub fn neg(&self) -> Self {
        UnivariatePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UnivariatePoly::new(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        UnivariatePoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UnivariatePoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UnivariatePoly::zero();
        }
        UnivariatePoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale_rat(&BigRational::from_integer(BigInt::from(i as i64 + 1))))
                .collect(),
        )
    }

    pub fn eval(&self, z: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn eval_approx(&self, z: &ApproxScalar, prec: u32) -> ApproxScalar {
        let mut acc = ApproxScalar::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&ApproxScalar::from_exact(c, prec));
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip().unwrap();
        self.scale(&inv)
    }

    /// Long division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(CoreError::Domain("division by zero polynomial".into()));
        }
        let mut rem = self.coeffs.clone();
        let d = div.coeffs.len() - 1;
        if rem.len() <= d {
            return Ok((UnivariatePoly::zero(), self.clone()));
        }
        let lead_inv = div.leading().recip().unwrap();
        let mut q = vec![ExactScalar::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = &rem[i] * &lead_inv;
            if !c.is_zero() {
                for j in 0..=d {
                    rem[i - d + j] = &rem[i - d + j] - &(&c * &div.coeffs[j]);
                }
            }
            q[i - d] = c;
        }
        rem.truncate(d);
        Ok((UnivariatePoly::new(q), UnivariatePoly::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_monic(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns pairwise-coprime monic
    /// square-free factors with their multiplicities, and the content
    /// (leading scalar), so that
    /// `self = content * prod factor_k^k`.
    pub fn squarefree_decomposition(&self) -> Result<(ExactScalar, Vec<(UnivariatePoly, u32)>)> {
        if self.is_zero() {
            return Err(CoreError::Domain("square-free decomposition of zero".into()));
        }
        if self.degree() == 0 {
            return Ok((self.leading(), Vec::new()));
        }
        let p = self.monic();
        let dp = p.derivative();
        let g = p.gcd_monic(&dp);
        let mut out = Vec::new();
        if g.degree() == 0 {
            out.push((p, 1));
            return Ok((self.leading(), out));
        }
        let mut w = p.divrem(&g)?.0;
        let mut y = dp.divrem(&g)?.0;
        let mut i = 1u32;
        loop {
            let z = y.sub(&w.derivative());
            if z.is_zero() {
                if w.degree() > 0 {
                    out.push((w.monic(), i));
                }
                break;
            }
            let a = w.gcd_monic(&z);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            w = w.divrem(&a)?.0;
            y = z.divrem(&a)?.0;
            i += 1;
        }
        Ok((self.leading(), out))
    }

    /// Largest |coefficient| as a crude f64 (for root radius bounds).
    fn coeff_bound_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.norm_sqr().to_f64().unwrap_or(f64::MAX).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Sylvester-matrix resultant of two nonzero polynomials.
pub fn resultant(p: &UnivariatePoly, q: &UnivariatePoly) -> Result<ExactScalar> {
    if p.is_zero() || q.is_zero() {
        return Err(CoreError::Domain("resultant of zero polynomial".into()));
    }
    let m = p.degree() as usize;
    let n = q.degree() as usize;
    if m == 0 {
        return Ok(p.leading().pow(n as u32));
    }
    if n == 0 {
        return Ok(q.leading().pow(m as u32));
    }
    let size = m + n;
    // Rows 0..n-1 carry p (descending), rows n..n+m-1 carry q.
    let mut mat = vec![vec![ExactScalar::zero(); size]; size];
    for r in 0..n {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(det_exact(mat))
}

/// Determinant by Gaussian elimination over the exact scalars.
fn det_exact(mut mat: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let n = mat.len();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !mat[r][col].is_zero());
        let pr = match pivot_row {
            Some(r) => r,
            None => return ExactScalar::zero(),
        };
        if pr != col {
            mat.swap(pr, col);
            det = -det;
        }
        let pivot = mat[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.recip().unwrap();
        for r in (col + 1)..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &mat[col][c];
                mat[r][c] = &mat[r][c] - &sub;
            }
        }
    }
    det
}

/// Discriminant `(-1)^{n(n-1)/2} res(p, p') / lc(p)`, zero iff `p` has a
/// repeated root.
pub fn discriminant(p: &UnivariatePoly) -> Result<ExactScalar> {
    let n = p.degree();
    if n < 2 {
        return Err(CoreError::Domain(format!(
            "discriminant requires degree >= 2, got {n}"
        )));
    }
    let r = resultant(p, &p.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 {
        ExactScalar::one()
    } else {
        -ExactScalar::one()
    };
    Ok(&(&sign * &r) / &p.leading())
}

/// All roots with exact multiplicities.
///
/// Multiplicity structure comes from the exact square-free decomposition;
/// the Aberth-Ehrlich iteration then finds the simple roots of each
/// square-free factor at `precision_bits`. The result is verified by
/// re-expanding the product and comparing against `p` coefficientwise
/// within `2^-(precision_bits/2)`.
pub fn roots(p: &UnivariatePoly, precision_bits: u32) -> Result<Vec<(ApproxScalar, u32)>> {
    if p.is_zero() {
        return Err(CoreError::Domain("roots of the zero polynomial".into()));
    }
    if p.degree() < 1 {
        return Err(CoreError::Domain("roots of a constant polynomial".into()));
    }
    let wp = precision_bits + 96;
    let (_, factors) = p.squarefree_decomposition()?;
    let mut out: Vec<(ApproxScalar, u32)> = Vec::new();
    for (f, mult) in &factors {
        for r in aberth_simple_roots(f, wp)? {
            out.push((r, *mult));
        }
    }
    // Verification against the input.
    let mut prod = ApproxPoly::constant(ApproxScalar::from_exact(&p.leading(), wp));
    for (r, mult) in &out {
        let lin = ApproxPoly {
            coeffs: vec![r.neg(), ApproxScalar::one(wp)],
        };
        for _ in 0..*mult {
            prod = prod.mul(&lin);
        }
    }
    for i in 0..=(p.degree() as usize) {
        let want = ApproxScalar::from_exact(&p.coeff(i), wp);
        let diff = prod.coeff(i).sub(&want);
        if !diff.abs_le_pow2(-(precision_bits as i64) / 2) {
            return Err(CoreError::Precision {
                context: format!("root verification for degree-{} polynomial", p.degree()),
                precision_bits,
            });
        }
    }
    let out = out
        .into_iter()
        .map(|(r, m)| (r.with_precision(precision_bits), m))
        .collect();
    Ok(out)
}

/// Aberth-Ehrlich simultaneous iteration on a square-free polynomial.
fn aberth_simple_roots(f: &UnivariatePoly, wp: u32) -> Result<Vec<ApproxScalar>> {
    let n = f.degree() as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let root = ApproxScalar::from_exact(&(&(-f.coeff(0)) / &f.coeff(1)), wp);
        return Ok(vec![root]);
    }
    let df = f.derivative();
    // Initial guesses on a circle of Cauchy-bound radius; angles only need
    // to break symmetry, so f64 trigonometry is fine here.
    let lead = f.leading().norm_sqr().to_f64().unwrap_or(1.0).sqrt();
    let radius = 1.0 + f.coeff_bound_f64() / lead.max(f64::MIN_POSITIVE);
    let mut zs: Vec<ApproxScalar> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.43;
            ApproxScalar::from_f64(radius * theta.cos(), radius * theta.sin(), wp)
        })
        .collect();
    let tol = -(wp as i64) + 48;
    let max_iter = 600;
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            let pv = f.eval_approx(&zs[i], wp);
            if pv.is_zero() {
                continue;
            }
            let dv = df.eval_approx(&zs[i], wp);
            if dv.is_zero() {
                // Nudge away from a critical point.
                zs[i] = zs[i].add(&ApproxScalar::from_f64(1e-3, 1e-3, wp));
                done = false;
                continue;
            }
            let newton = pv.div(&dv)?;
            let mut sum = ApproxScalar::zero(wp);
            for j in 0..n {
                if j != i {
                    let d = zs[i].sub(&zs[j]);
                    if d.is_zero() {
                        return Err(CoreError::Precision {
                            context: "root iteration collision".into(),
                            precision_bits: wp,
                        });
                    }
                    sum = sum.add(&d.recip()?);
                }
            }
            let denom = ApproxScalar::one(wp).sub(&newton.mul(&sum));
            let w = if denom.is_zero() { newton.clone() } else { newton.div(&denom)? };
            zs[i] = zs[i].sub(&w);
            if !w.abs_le_pow2(tol) {
                done = false;
            }
        }
        if done {
            return Ok(zs);
        }
    }
    Err(CoreError::Precision {
        context: format!("Aberth iteration on degree-{n} factor"),
        precision_bits: wp,
    })
}

/// Polynomial with approximate coefficients (ascending), for expansions of
/// root-based formulas.
#[derive(Clone, Debug)]
pub struct ApproxPoly {
    pub coeffs: Vec<ApproxScalar>,
}

impl ApproxPoly {
    pub fn constant(c: ApproxScalar) -> Self {
        ApproxPoly { coeffs: vec![c] }
    }

    pub fn zero(prec: u32) -> Self {
        ApproxPoly {
            coeffs: vec![ApproxScalar::zero(prec)],
        }
    }

    /// `z - a`.
    pub fn linear_root(a: &ApproxScalar, prec: u32) -> Self {
        ApproxPoly {
            coeffs: vec![a.neg(), ApproxScalar::one(prec)],
        }
    }

    pub fn coeff(&self, i: usize) -> ApproxScalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| ApproxScalar::zero(self.coeffs[0].precision_bits()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ApproxPoly {
            coeffs: (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.coeffs[0].precision_bits();
        let mut out = vec![ApproxScalar::zero(prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        ApproxPoly { coeffs: out }
    }

    pub fn scale(&self, c: &ApproxScalar) -> Self {
        ApproxPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32, prec: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ApproxPoly::constant(ApproxScalar::one(prec));
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> UnivariatePoly {
        UnivariatePoly::monomial(1)
    }

    #[test]
    fn discriminant_quadratic() {
        // z^2 - 1 -> 4
        let p = UnivariatePoly::from_int_coeffs(&[-1, 0, 1]);
        assert_eq!(discriminant(&p).unwrap(), ExactScalar::from_int(4));
    }

    #[test]
    fn discriminant_cubic() {
        // z^3 - z -> 4 (matches -4p^3 - 27q^2 with p=-1, q=0)
        let p = UnivariatePoly::from_int_coeffs(&[0, -1, 0, 1]);
        assert_eq!(discriminant(&p).unwrap(), ExactScalar::from_int(4));
    }

    #[test]
    fn discriminant_repeated_root_vanishes() {
        // (z-1)^2 (z+3)
        let p = UnivariatePoly::from_roots(
            ExactScalar::one(),
            &[
                ExactScalar::from_int(1),
                ExactScalar::from_int(1),
                ExactScalar::from_int(-3),
            ],
        );
        assert_eq!(discriminant(&p).unwrap(), ExactScalar::zero());
    }

    #[test]
    fn discriminant_rejects_low_degree() {
        assert!(discriminant(&z()).is_err());
    }

    #[test]
    fn resultant_examples() {
        // (z-1, z+1) -> 2
        let p = UnivariatePoly::from_int_coeffs(&[-1, 1]);
        let q = UnivariatePoly::from_int_coeffs(&[1, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), ExactScalar::from_int(2));
        // (z^2-1, z-1) -> 0 (shared root)
        let a = UnivariatePoly::from_int_coeffs(&[-1, 0, 1]);
        assert_eq!(resultant(&a, &p).unwrap(), ExactScalar::zero());
        // (z^2+1, z^2-1) -> 4
        let b = UnivariatePoly::from_int_coeffs(&[1, 0, 1]);
        assert_eq!(resultant(&b, &a).unwrap(), ExactScalar::from_int(4));
        // zero input rejected
        assert!(resultant(&UnivariatePoly::zero(), &p).is_err());
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // (z-2)^2
        let p = UnivariatePoly::from_roots(
            ExactScalar::one(),
            &[ExactScalar::from_int(2), ExactScalar::from_int(2)],
        );
        let (_, factors) = p.squarefree_decomposition().unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 2);
        assert_eq!(factors[0].0.degree(), 1);
    }

    #[test]
    fn roots_exact_factorizations() {
        // z^2 - 1 -> {1, -1}
        let p = UnivariatePoly::from_int_coeffs(&[-1, 0, 1]);
        let rs = roots(&p, 128).unwrap();
        assert_eq!(rs.len(), 2);
        for (r, m) in &rs {
            assert_eq!(*m, 1);
            let r2 = r.mul(r).sub(&ApproxScalar::one(128));
            assert!(r2.abs_le_pow2(-100));
        }
        // z^3 - z -> {0, 1, -1}
        let p = UnivariatePoly::from_int_coeffs(&[0, -1, 0, 1]);
        let rs = roots(&p, 128).unwrap();
        assert_eq!(rs.len(), 3);
        // (z-2)^2 -> {(2, 2)}
        let p = UnivariatePoly::from_roots(
            ExactScalar::one(),
            &[ExactScalar::from_int(2), ExactScalar::from_int(2)],
        );
        let rs = roots(&p, 128).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].1, 2);
        let diff = rs[0].0.sub(&ApproxScalar::from_int(2, 128));
        assert!(diff.abs_le_pow2(-100));
    }

    #[test]
    fn roots_rejects_degenerate_inputs() {
        assert!(roots(&UnivariatePoly::zero(), 128).is_err());
        assert!(roots(&UnivariatePoly::one(), 128).is_err());
    }

    #[test]
    fn roots_complex_coefficients() {
        // (z - i)(z + 2i) = z^2 + iz + 2
        let p = UnivariatePoly::new(vec![
            ExactScalar::from_int(2),
            ExactScalar::i(),
            ExactScalar::one(),
        ]);
        let rs = roots(&p, 160).unwrap();
        assert_eq!(rs.len(), 2);
        for (r, _) in &rs {
            let v = p.eval_approx(r, 160);
            assert!(v.abs_le_pow2(-120));
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let a = UnivariatePoly::from_int_coeffs(&[3, -2, 0, 5, 1]);
        let b = UnivariatePoly::from_int_coeffs(&[1, 4, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
