//! Binary forms of odd degree and their SL(2,C) moment map.
//!
//! A form `p(z) = a0 z^m + a1 z^{m-1} + ... + am` of odd degree m carries the
//! invariant symplectic pairing
//! `omega(p, q) = sum_{l=0}^{k-1} (-1)^l l! (m-l)! (p_l q_{m-l} - p_{m-l} q_l)`
//! with `m = 2k-1`. The moment map is the contraction of `p (x) p` down to a
//! binary quadratic, computed three ways: from the roots, from the exact
//! degree-3 coefficient formula, and from the iterated contraction with the
//! skew form (normalized so that `mu(p) = p^2` at m = 1). The three agree up
//! to one global scalar per degree; the constants are reported, not forced.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

use crate::approx::ApproxScalar;
use crate::error::{CoreError, Result};
use crate::linalg;
use crate::poly::{roots, ApproxPoly, UnivariatePoly};
use crate::scalar::{factorial, Coeff, ExactScalar};

/// A binary form of odd degree `m`, coefficients descending: `a0` multiplies
/// `z^m`.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm {
    coeffs: Vec<ExactScalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<ExactScalar>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(2) {
            return Err(CoreError::Domain(format!(
                "binary form degree must be odd, got {}",
                coeffs.len() as i64 - 1
            )));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        BinaryForm::new(coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `a_i` (of `z^{m-i}`).
    pub fn a(&self, i: usize) -> ExactScalar {
        self.coeffs[i].clone()
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// As a univariate polynomial in `z` (ascending coefficients).
    pub fn to_poly(&self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Inverse of `to_poly` for a fixed degree `m`; lower-degree polynomials
    /// pad with zero leading coefficients.
    pub fn from_poly(p: &UnivariatePoly, m: usize) -> Result<Self> {
        if p.degree() > m as i64 {
            return Err(CoreError::Domain("polynomial degree exceeds form degree".into()));
        }
        let coeffs = (0..=m).map(|i| p.coeff(m - i)).collect();
        BinaryForm::new(coeffs)
    }
}

/// The moment image: a binary quadratic `b0 z^2 + b1 z + b2`, identified with
/// the traceless matrix `[[b1/2, b2], [-b0, -b1/2]]`.
#[derive(Clone, PartialEq, Debug)]
pub struct MomentImage {
    pub b0: ExactScalar,
    pub b1: ExactScalar,
    pub b2: ExactScalar,
}

impl MomentImage {
    pub fn new(b0: ExactScalar, b1: ExactScalar, b2: ExactScalar) -> Self {
        MomentImage { b0, b1, b2 }
    }

    pub fn zero() -> Self {
        MomentImage::new(ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero())
    }

    pub fn matrix(&self) -> [[ExactScalar; 2]; 2] {
        let half = ExactScalar::from_rat(1, 2);
        [
            [&self.b1 * &half, self.b2.clone()],
            [-&self.b0, -&(&self.b1 * &half)],
        ]
    }

    /// Determinant of the associated traceless matrix: `b0 b2 - b1^2 / 4`.
    pub fn det(&self) -> ExactScalar {
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        &(&self.b0 * &self.b2) - &(&self.b1 * &self.b1).scale_rat(&quarter)
    }

    /// Discriminant of the quadratic, `b1^2 - 4 b0 b2` (equals `-4 det`).
    pub fn quad_discriminant(&self) -> ExactScalar {
        let four = BigRational::from_integer(BigInt::from(4));
        &(&self.b1 * &self.b1) - &(&self.b0 * &self.b2).scale_rat(&four)
    }

    pub fn is_zero(&self) -> bool {
        self.b0.is_zero() && self.b1.is_zero() && self.b2.is_zero()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        MomentImage::new(&self.b0 * c, &self.b1 * c, &self.b2 * c)
    }
}

/// An element of SL(2,C): `[[a, b], [c, d]]` with `ad - bc = 1` exactly.
#[derive(Clone, PartialEq, Debug)]
pub struct Sl2Action {
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub c: ExactScalar,
    pub d: ExactScalar,
}

impl Sl2Action {
    pub fn new(a: ExactScalar, b: ExactScalar, c: ExactScalar, d: ExactScalar) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det != ExactScalar::one() {
            return Err(CoreError::Domain(format!("matrix determinant must be 1, got {det}")));
        }
        Ok(Sl2Action { a, b, c, d })
    }

    pub fn identity() -> Self {
        Sl2Action {
            a: ExactScalar::one(),
            b: ExactScalar::zero(),
            c: ExactScalar::zero(),
            d: ExactScalar::one(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Sl2Action {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        }
    }
}

/// Symplectic pairing of two coefficient vectors of the same odd degree.
/// Generic so identities can be checked symbolically.
pub fn symplectic_pairing<T: Coeff>(p: &[T], q: &[T]) -> Result<T> {
    if p.len() != q.len() {
        return Err(CoreError::Domain(format!(
            "symplectic form needs equal degrees, got {} and {}",
            p.len() as i64 - 1,
            q.len() as i64 - 1
        )));
    }
    let m = p.len() - 1;
    if m.is_multiple_of(2) {
        return Err(CoreError::Domain("symplectic form requires odd degree".into()));
    }
    let k = m.div_ceil(2);
    let mut acc = T::zero();
    for l in 0..k {
        let weight = {
            let w = factorial(l as u64) * factorial((m - l) as u64);
            let w = if l % 2 == 1 { -w } else { w };
            ExactScalar::from_rational(BigRational::from_integer(w))
        };
        let skew = p[l].ring_mul(&q[m - l]).ring_sub(&p[m - l].ring_mul(&q[l]));
        acc = acc.ring_add(&skew.ring_scale(&weight));
    }
    Ok(acc)
}

/// The invariant symplectic form on two binary forms.
pub fn symplectic_form(p: &BinaryForm, q: &BinaryForm) -> Result<ExactScalar> {
    symplectic_pairing(&p.coeffs, &q.coeffs)
}

/// Matrix of the substitution action `p(z) -> (cz+d)^m p((az+b)/(cz+d))` on
/// descending coefficient vectors of degree-`m` forms: column `j` is the
/// image of the monomial `z^{m-j}`.
pub fn rep_matrix(g: &Sl2Action, m: usize) -> Vec<Vec<ExactScalar>> {
    let num = UnivariatePoly::new(vec![g.b.clone(), g.a.clone()]); // az + b
    let den = UnivariatePoly::new(vec![g.d.clone(), g.c.clone()]); // cz + d
    let mut mat = vec![vec![ExactScalar::zero(); m + 1]; m + 1];
    for j in 0..=m {
        // z^{m-j} maps to (az+b)^{m-j} (cz+d)^j
        let img = num.pow((m - j) as u32).mul(&den.pow(j as u32));
        for (row, entry) in mat.iter_mut().enumerate() {
            entry[j] = img.coeff(m - row);
        }
    }
    mat
}

/// Apply the substitution action to a generic coefficient vector.
pub fn act_coeffs<T: Coeff>(g: &Sl2Action, coeffs: &[T]) -> Vec<T> {
    let m = coeffs.len() - 1;
    let mat = rep_matrix(g, m);
    (0..=m)
        .map(|row| {
            let mut acc = T::zero();
            for (col, c) in coeffs.iter().enumerate() {
                acc = acc.ring_add(&c.ring_scale(&mat[row][col]));
            }
            acc
        })
        .collect()
}

/// `p(z) -> (cz+d)^m p((az+b)/(cz+d))`.
pub fn act(g: &Sl2Action, p: &BinaryForm) -> BinaryForm {
    BinaryForm {
        coeffs: act_coeffs(g, &p.coeffs),
    }
}

/// The degree-2 substitution action on a moment image (the adjoint action
/// under the identification of binary quadratics with sl2).
pub fn act_quadratic(g: &Sl2Action, q: &MomentImage) -> MomentImage {
    let v = act_coeffs(g, &[q.b0.clone(), q.b1.clone(), q.b2.clone()]);
    MomentImage::new(v[0].clone(), v[1].clone(), v[2].clone())
}

/// Report on the flag `V_j = {a_0 = ... = a_{j-1} = 0}` inside the space of
/// degree-`m` forms (the forms vanishing to order `j` at infinity).
#[derive(Clone, Debug)]
pub struct FlagReport {
    pub m: usize,
    /// `dims[j]` is the dimension of `V_j`.
    pub dims: Vec<usize>,
    /// `isotropic[j]`: the symplectic form vanishes identically on `V_j`.
    pub isotropic: Vec<bool>,
    /// Monomial degrees spanning each `V_j`.
    pub bases: Vec<Vec<usize>>,
    /// `V_k` (k = (m+1)/2) is isotropic of dimension k = (m+1)/2.
    pub midflag_isotropic: bool,
    /// No coordinate subspace strictly containing `V_k` is isotropic.
    pub midflag_maximal: bool,
}

/// Build and verify the flag; `V_k` is the maximal isotropic member.
pub fn isotropic_flag(m: usize) -> Result<FlagReport> {
    if m.is_multiple_of(2) {
        return Err(CoreError::Domain("isotropic flag requires odd degree".into()));
    }
    let k = m.div_ceil(2);
    let monomial = |deg: usize| -> Vec<ExactScalar> {
        // z^deg as a degree-m form: a_{m-deg} = 1
        let mut v = vec![ExactScalar::zero(); m + 1];
        v[m - deg] = ExactScalar::one();
        v
    };
    let mut dims = Vec::new();
    let mut iso = Vec::new();
    let mut bases = Vec::new();
    for j in 0..=m {
        // V_j = span{ z^s : s <= m - j }
        let degs: Vec<usize> = (0..=(m - j)).collect();
        dims.push(degs.len());
        let mut all_zero = true;
        for &s in &degs {
            for &t in &degs {
                if !symplectic_pairing(&monomial(s), &monomial(t))?.is_zero() {
                    all_zero = false;
                }
            }
        }
        iso.push(all_zero);
        bases.push(degs);
    }
    let midflag_isotropic = iso[k] && dims[k] == k;
    // Adding any monomial z^t, t >= k, to V_k breaks isotropy.
    let mut midflag_maximal = true;
    for t in k..=m {
        let mut pairs_nonzero = false;
        for s in 0..k {
            if !symplectic_pairing(&monomial(s), &monomial(t))?.is_zero() {
                pairs_nonzero = true;
            }
        }
        if !pairs_nonzero {
            midflag_maximal = false;
        }
    }
    Ok(FlagReport {
        m,
        dims,
        isotropic: iso,
        bases,
        midflag_isotropic,
        midflag_maximal,
    })
}

/// The matrix `A_ij = (alpha_j - alpha_i)^m`; skew-symmetric for odd `m`.
pub fn power_difference_matrix(alphas: &[ApproxScalar], m: usize) -> linalg::Mat {
    let n = alphas.len();
    let mut mat = vec![Vec::with_capacity(n); n];
    for i in 0..n {
        for j in 0..n {
            let d = alphas[j].sub(&alphas[i]);
            let mut pw = ApproxScalar::one(d.precision_bits());
            for _ in 0..m {
                pw = pw.mul(&d);
            }
            mat[i].push(pw);
        }
    }
    mat
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub residual_ok: bool,
    pub rank_warning: bool,
    pub numerical_rank: usize,
}

/// Null vector of the skew matrix of m-th power differences, normalized so
/// the largest entry is 1.
pub fn skew_matrix_kernel(
    alphas: &[ApproxScalar],
    m: usize,
    precision_bits: u32,
) -> Result<(Vec<ApproxScalar>, KernelReport)> {
    if m.is_multiple_of(2) {
        return Err(CoreError::Domain("skew kernel requires odd power".into()));
    }
    let n = alphas.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if alphas[i].sub(&alphas[j]).abs_le_pow2(-(precision_bits as i64) / 2) {
                return Err(CoreError::Degeneracy(
                    "repeated roots in skew kernel construction".into(),
                ));
            }
        }
    }
    if n == 1 {
        return Ok((
            vec![ApproxScalar::one(precision_bits)],
            KernelReport {
                residual_ok: true,
                rank_warning: false,
                numerical_rank: 0,
            },
        ));
    }
    let a = power_difference_matrix(alphas, m);
    let (b, rank) = linalg::null_vector(&a, precision_bits, "skew power-difference kernel")?;
    // Residual |A b| against |A| |b| with |b|_inf = 1.
    let mut resid_ok = true;
    for row in &a {
        let mut v = ApproxScalar::zero(precision_bits);
        let mut scale = ApproxScalar::zero(precision_bits);
        for (c, x) in row.iter().zip(&b) {
            v = v.add(&c.mul(x));
            if c.abs_cmp(&scale) == std::cmp::Ordering::Greater {
                scale = c.clone();
            }
        }
        let rel = if scale.is_zero() { v.clone() } else { v.div(&scale)? };
        if !rel.abs_le_pow2(-(precision_bits as i64) / 2) {
            resid_ok = false;
        }
    }
    Ok((
        b,
        KernelReport {
            residual_ok: resid_ok,
            rank_warning: rank < n - 1,
            numerical_rank: rank,
        },
    ))
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub nodes: Vec<ApproxScalar>,
    pub weights: Vec<ApproxScalar>,
    /// Witness: smallest e with max coefficient deviation below `2^e`.
    pub residual_log2_bound: i64,
    /// Deviation below `2^-100`.
    pub residual_ok: bool,
}

/// Write `p` as `sum_i b_i (z - alpha_i)^m` over its roots.
pub fn reconstruct_from_powers(p: &BinaryForm, precision_bits: u32) -> Result<Reconstruction> {
    let m = p.degree();
    if p.a(0).is_zero() {
        return Err(CoreError::Domain("leading coefficient must be nonzero".into()));
    }
    let wp = precision_bits + 64;
    let rts = roots(&p.to_poly(), wp)?;
    if rts.iter().any(|(_, mult)| *mult > 1) {
        return Err(CoreError::Degeneracy("form has a repeated root".into()));
    }
    let alphas: Vec<ApproxScalar> = rts.into_iter().map(|(r, _)| r).collect();
    let (b, _report) = skew_matrix_kernel(&alphas, m, wp)?;
    // Scale so the z^m coefficient matches a0: sum b_i = a0.
    let sum = b.iter().fold(ApproxScalar::zero(wp), |acc, x| acc.add(x));
    if sum.is_zero() {
        return Err(CoreError::Degeneracy("kernel weights sum to zero".into()));
    }
    let lambda = ApproxScalar::from_exact(&p.a(0), wp).div(&sum)?;
    let weights: Vec<ApproxScalar> = b.iter().map(|x| x.mul(&lambda)).collect();
    // Verify the expansion.
    let mut expansion = ApproxPoly::zero(wp);
    for (w, alpha) in weights.iter().zip(&alphas) {
        let pw = ApproxPoly::linear_root(alpha, wp).pow(m as u32, wp);
        expansion = expansion.add(&pw.scale(w));
    }
    let mut ok = true;
    let mut worst: i64 = -(wp as i64);
    for i in 0..=m {
        let want = ApproxScalar::from_exact(&p.a(m - i), wp);
        let diff = expansion.coeff(i).sub(&want);
        // Bisect a witness exponent for the report.
        let mut lo = -(wp as i64);
        let mut hi = 64i64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if diff.abs_le_pow2(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        worst = worst.max(lo);
        if !diff.abs_le_pow2(-100) {
            ok = false;
        }
    }
    Ok(Reconstruction {
        nodes: alphas,
        weights,
        residual_log2_bound: worst,
        residual_ok: ok,
    })
}

/// Root-form moment map: the double sum
/// `sum_{i,j} b_i b_j (alpha_i - alpha_j)^{m-1} (z - alpha_i)(z - alpha_j)`
/// expanded into a quadratic, with the `0^0 = 1` convention covering the
/// diagonal at m = 1.
pub fn moment_map_roots(p: &BinaryForm, precision_bits: u32) -> Result<[ApproxScalar; 3]> {
    let m = p.degree();
    let rec = reconstruct_from_powers(p, precision_bits)?;
    let wp = precision_bits + 64;
    let alphas = &rec.nodes;
    let b = &rec.weights;
    let mut quad = ApproxPoly::zero(wp);
    for i in 0..alphas.len() {
        for j in 0..alphas.len() {
            let d = alphas[i].sub(&alphas[j]);
            let mut pw = ApproxScalar::one(wp);
            for _ in 0..(m - 1) {
                pw = pw.mul(&d);
            }
            if pw.is_zero() {
                continue;
            }
            let cross =
                ApproxPoly::linear_root(&alphas[i], wp).mul(&ApproxPoly::linear_root(&alphas[j], wp));
            quad = quad.add(&cross.scale(&b[i].mul(&b[j]).mul(&pw)));
        }
    }
    Ok([
        quad.coeff(2).with_precision(precision_bits),
        quad.coeff(1).with_precision(precision_bits),
        quad.coeff(0).with_precision(precision_bits),
    ])
}

/// Exact moment map for cubics: the symmetric-function expansion of the
/// root formula with the discriminant factor removed,
/// `b0 = 3 a0 a2 - a1^2`, `b1 = 9 a0 a3 - a1 a2`, `b2 = 3 a1 a3 - a2^2`.
pub fn moment_map_m3(p: &BinaryForm) -> Result<MomentImage> {
    if p.degree() != 3 {
        return Err(CoreError::Domain(format!(
            "cubic moment formula requires degree 3, got {}",
            p.degree()
        )));
    }
    let (a0, a1, a2, a3) = (p.a(0), p.a(1), p.a(2), p.a(3));
    let three = ExactScalar::from_int(3);
    let nine = ExactScalar::from_int(9);
    let b0 = &(&three * &(&a0 * &a2)) - &(&a1 * &a1);
    let b1 = &(&nine * &(&a0 * &a3)) - &(&a1 * &a2);
    let b2 = &(&three * &(&a1 * &a3)) - &(&a2 * &a2);
    Ok(MomentImage::new(b0, b1, b2))
}

fn falling(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    acc
}

/// Coefficient vector (descending, length `m+1-s-t`) of the partial
/// derivative `d^{s+t} P / dx^s dy^t` of the homogenization of `p`.
fn homog_derivative<T: Coeff>(coeffs: &[T], s: i64, t: i64) -> Vec<T> {
    let m = coeffs.len() as i64 - 1;
    let deg = m - s - t;
    // a_i x^{m-i} y^i differentiates to
    // falling(m-i, s) falling(i, t) x^{m-i-s} y^{i-t}; descending index j = i - t.
    let mut out = vec![T::zero(); (deg + 1).max(0) as usize];
    for (i, c) in coeffs.iter().enumerate() {
        let i = i as i64;
        if m - i < s || i < t {
            continue;
        }
        let w = falling(m - i, s) * falling(i, t);
        let j = (i - t) as usize;
        out[j] = out[j].ring_add(&c.ring_scale(&ExactScalar::from_rational(
            BigRational::from_integer(w),
        )));
    }
    out
}

/// Coefficient-form moment map for any odd degree: the (m-1)-fold
/// contraction of `p (x) p` with the unit skew form,
/// `sum_{i=0}^{m-1} (-1)^i C(m-1,i) P_{x^{m-1-i} y^i} P_{x^i y^{m-1-i}}`,
/// restricted to the diagonal. At m = 1 this is exactly `p^2`.
pub fn moment_contraction<T: Coeff>(coeffs: &[T]) -> Result<[T; 3]> {
    let m = coeffs.len() as i64 - 1;
    if m < 1 || m % 2 == 0 {
        return Err(CoreError::Domain("moment map requires odd degree".into()));
    }
    let r = m - 1;
    let mut b = [T::zero(), T::zero(), T::zero()];
    for i in 0..=r {
        let sign_binom = {
            let w = crate::scalar::binom_int(r, i);
            if i % 2 == 1 {
                -w
            } else {
                w
            }
        };
        let f = homog_derivative(coeffs, r - i, i);
        let g = homog_derivative(coeffs, i, r - i);
        // f, g are linear (descending length 2); the product is a quadratic.
        debug_assert_eq!(f.len(), 2);
        let w = ExactScalar::from_rational(BigRational::from_integer(sign_binom));
        b[0] = b[0].ring_add(&f[0].ring_mul(&g[0]).ring_scale(&w));
        b[1] = b[1].ring_add(&f[0].ring_mul(&g[1]).ring_add(&f[1].ring_mul(&g[0])).ring_scale(&w));
        b[2] = b[2].ring_add(&f[1].ring_mul(&g[1]).ring_scale(&w));
    }
    Ok(b)
}

/// Exact moment map in coefficient form.
pub fn moment_map_coeffs(p: &BinaryForm) -> Result<MomentImage> {
    let b = moment_contraction(&p.coeffs)?;
    Ok(MomentImage::new(b[0].clone(), b[1].clone(), b[2].clone()))
}

/// The bilinear coefficient tables behind `moment_map_coeffs`:
/// `b0 = sum c_i a_i a_{m-i-1}`, `b1 = sum c'_i a_i a_{m-i}`,
/// `b2 = sum c''_i a_i a_{m-i+1}`. Computed once per degree by running the
/// contraction on symbolic coefficients; returned so callers can report them.
pub fn moment_coefficient_tables(m: usize) -> Result<[Vec<(usize, usize, ExactScalar)>; 3]> {
    use crate::mpoly::MPoly;
    let vars: Vec<MPoly> = (0..=m).map(MPoly::var).collect();
    let b = moment_contraction(&vars)?;
    let mut out: [Vec<(usize, usize, ExactScalar)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (slot, poly) in b.iter().enumerate() {
        for (exps, c) in poly.terms() {
            let mut pair = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    pair.push(i);
                }
            }
            let (i, j) = match pair.len() {
                1 => (pair[0], pair[0]),
                2 => (pair[0], pair[1]),
                _ => continue,
            };
            out[slot].push((i, j, c.clone()));
        }
    }
    Ok(out)
}

/// The rank-one moment image `u (x) u` of `u = (u1, u2)`: the square of the
/// linear form `u1 z + u2`.
pub fn nilpotent_moment(u: (&ExactScalar, &ExactScalar)) -> MomentImage {
    let (u1, u2) = u;
    let cross = u1 * u2;
    MomentImage::new(u1 * u1, &cross + &cross, u2 * u2)
}

/// Dimension `3(g-1) - k` of the nilpotent stratum.
pub fn nilpotent_stratum_dimension(g: i64, k: i64) -> Result<i64> {
    if g < 2 {
        return Err(CoreError::Domain(format!("genus must be >= 2, got {g}")));
    }
    if k < 0 || k > g - 1 {
        return Err(CoreError::Domain(format!(
            "stratum index {k} out of range 0..={}",
            g - 1
        )));
    }
    Ok(3 * (g - 1) - k)
}

/// Degree `k (4k^2 - 1) / 3` of the divisor attached to degree `m = 2k - 1`.
pub fn divisor_degree(m: i64) -> Result<i64> {
    if m < 1 || m % 2 == 0 {
        return Err(CoreError::Domain(format!("divisor degree requires odd m, got {m}")));
    }
    let k = (m + 1) / 2;
    let num = k * (4 * k * k - 1);
    debug_assert_eq!(num % 3, 0);
    Ok(num / 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MPoly;
    use crate::poly::discriminant;

    fn es(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    #[test]
    fn symplectic_form_examples() {
        // m=1: omega(z, 1) = 1
        let p = BinaryForm::from_ints(&[1, 0]).unwrap();
        let q = BinaryForm::from_ints(&[0, 1]).unwrap();
        assert_eq!(symplectic_form(&p, &q).unwrap(), es(1));
        // m=3: omega(z^3, 1) = 0! 3! = 6
        let p = BinaryForm::from_ints(&[1, 0, 0, 0]).unwrap();
        let q = BinaryForm::from_ints(&[0, 0, 0, 1]).unwrap();
        assert_eq!(symplectic_form(&p, &q).unwrap(), es(6));
        // antisymmetry: omega(p, p) = 0
        let p = BinaryForm::from_ints(&[3, -1, 2, 7]).unwrap();
        assert_eq!(symplectic_form(&p, &p).unwrap(), es(0));
        // mismatched degrees rejected
        let q1 = BinaryForm::from_ints(&[1, 0]).unwrap();
        assert!(symplectic_form(&p, &q1).is_err());
    }

    #[test]
    fn act_identity_and_translation() {
        let p = BinaryForm::from_ints(&[1, 0]).unwrap(); // z
        assert_eq!(act(&Sl2Action::identity(), &p), p);
        // [[1,1],[0,1]] sends z to z+1
        let g = Sl2Action::new(es(1), es(1), es(0), es(1)).unwrap();
        assert_eq!(act(&g, &p), BinaryForm::from_ints(&[1, 1]).unwrap());
    }

    #[test]
    fn act_inversion_by_substitution_oracle() {
        // g = [[0,1],[-1,0]] on z^3: (cz+d)^3 p((az+b)/(cz+d)) with
        // (a,b,c,d) = (0,1,-1,0) is (-z)^3 (-1/z)^3 = 1.
        let g = Sl2Action::new(es(0), es(1), es(-1), es(0)).unwrap();
        let p = BinaryForm::from_ints(&[1, 0, 0, 0]).unwrap();
        assert_eq!(act(&g, &p), BinaryForm::from_ints(&[0, 0, 0, 1]).unwrap());
    }

    #[test]
    fn act_composition_law() {
        // The substitution action composes as act(g) . act(h) = act(hg).
        let g = Sl2Action::new(es(1), es(2), es(0), es(1)).unwrap();
        let h = Sl2Action::new(es(1), es(0), es(3), es(1)).unwrap();
        let p = BinaryForm::from_ints(&[2, -1, 5, 7]).unwrap();
        let lhs = act(&g, &act(&h, &p));
        let rhs = act(&h.compose(&g), &p);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn flag_examples() {
        // m=1: V_1 = span{1}
        let f = isotropic_flag(1).unwrap();
        assert_eq!(f.dims[1], 1);
        assert!(f.midflag_isotropic && f.midflag_maximal);
        // m=3: V_2 = span{z, 1}, dim 2 of 4
        let f = isotropic_flag(3).unwrap();
        assert_eq!(f.dims[2], 2);
        assert_eq!(f.bases[2], vec![0, 1]);
        assert!(f.midflag_isotropic && f.midflag_maximal);
        // m=5: V_3 isotropic of dim 3
        let f = isotropic_flag(5).unwrap();
        assert_eq!(f.dims[3], 3);
        assert!(f.midflag_isotropic && f.midflag_maximal);
        assert!(isotropic_flag(4).is_err());
    }

    #[test]
    fn skew_kernel_m3_example() {
        // alphas (0, 1, -1): kernel proportional to (8, -1, -1)
        let prec = 192;
        let alphas = vec![
            ApproxScalar::zero(prec),
            ApproxScalar::from_int(1, prec),
            ApproxScalar::from_int(-1, prec),
        ];
        let (b, report) = skew_matrix_kernel(&alphas, 3, prec).unwrap();
        assert!(report.residual_ok && !report.rank_warning);
        // normalized so largest entry is 1: (1, -1/8, -1/8)
        assert!(b[0].sub(&ApproxScalar::one(prec)).abs_le_pow2(-150));
        let eighth = ApproxScalar::from_exact(&ExactScalar::from_rat(-1, 8), prec);
        assert!(b[1].sub(&eighth).abs_le_pow2(-150));
        assert!(b[2].sub(&eighth).abs_le_pow2(-150));
    }

    #[test]
    fn skew_kernel_rejects_repeats_and_even_m() {
        let prec = 128;
        let alphas = vec![ApproxScalar::one(prec), ApproxScalar::one(prec)];
        assert!(matches!(
            skew_matrix_kernel(&alphas, 3, prec),
            Err(CoreError::Degeneracy(_))
        ));
        let alphas = vec![ApproxScalar::one(prec), ApproxScalar::from_int(2, prec)];
        assert!(skew_matrix_kernel(&alphas, 2, prec).is_err());
    }

    #[test]
    fn reconstruction_examples() {
        // p = 6(z^3 - z) has weights proportional to (8, -1, -1) over (0, 1, -1)
        let p = BinaryForm::from_ints(&[6, 0, -6, 0]).unwrap();
        let rec = reconstruct_from_powers(&p, 256).unwrap();
        assert!(rec.residual_ok);
        // p = z - 5: single node 5 with weight 1
        let p = BinaryForm::from_ints(&[1, -5]).unwrap();
        let rec = reconstruct_from_powers(&p, 256).unwrap();
        assert_eq!(rec.nodes.len(), 1);
        let one = ApproxScalar::one(rec.weights[0].precision_bits());
        assert!(rec.weights[0].sub(&one).abs_le_pow2(-100));
        // repeated root rejected
        let p = BinaryForm::from_ints(&[1, -2, 1, 0]).unwrap(); // z(z-1)^2
        assert!(matches!(
            reconstruct_from_powers(&p, 128),
            Err(CoreError::Degeneracy(_))
        ));
    }

    #[test]
    fn moment_roots_m1_is_square() {
        // p = 2(z - 3): mu = 4 (z-3)^2 = p^2
        let p = BinaryForm::from_ints(&[2, -6]).unwrap();
        let b = moment_map_roots(&p, 192).unwrap();
        let prec = b[0].precision_bits();
        assert!(b[0].sub(&ApproxScalar::from_int(4, prec)).abs_le_pow2(-100));
        assert!(b[1].sub(&ApproxScalar::from_int(-24, prec)).abs_le_pow2(-100));
        assert!(b[2].sub(&ApproxScalar::from_int(36, prec)).abs_le_pow2(-100));
    }

    #[test]
    fn moment_m3_matches_root_formula_up_to_scalar() {
        // mu(z^3 - z) is proportional to 3z^2 + 1; the exact cubic formula
        // gives -(3z^2+1), the root double-sum gives -(2/9)(3z^2+1).
        let p = BinaryForm::from_ints(&[1, 0, -1, 0]).unwrap();
        let exact = moment_map_m3(&p).unwrap();
        assert_eq!(exact.b0, es(-3));
        assert_eq!(exact.b1, es(0));
        assert_eq!(exact.b2, es(-1));
        let approx = moment_map_roots(&p, 256).unwrap();
        let prec = approx[0].precision_bits();
        let ratio = ApproxScalar::from_exact(&ExactScalar::from_rat(2, 9), prec);
        for (ap, ex) in approx.iter().zip([&exact.b0, &exact.b1, &exact.b2]) {
            let want = ApproxScalar::from_exact(ex, prec).mul(&ratio);
            assert!(ap.sub(&want).abs_le_pow2(-100));
        }
    }

    #[test]
    fn moment_m3_double_root_kills_discriminant() {
        // p = (z-1)^2 (z+2)
        let p = BinaryForm::from_ints(&[1, 0, -3, 2]).unwrap();
        let mu = moment_map_m3(&p).unwrap();
        assert_eq!(mu.quad_discriminant(), es(0));
        assert_eq!(mu.det(), es(0));
    }

    #[test]
    fn moment_det_is_discriminant_multiple() {
        // det(mu(p)) = (3/4) disc(p) for cubics, one fixed ratio.
        let want = ExactScalar::from_rat(3, 4);
        for coeffs in [[1i64, 0, -1, 0], [1, 0, 0, -1], [2, -3, 5, 7], [1, 4, -2, 9]] {
            let p = BinaryForm::from_ints(&coeffs).unwrap();
            let mu = moment_map_m3(&p).unwrap();
            let disc = discriminant(&p.to_poly()).unwrap();
            assert_eq!(mu.det(), &disc * &want);
        }
    }

    #[test]
    fn moment_coeffs_m1_symbolic_square() {
        // Full symbolic check: the contraction at m=1 is exactly p^2.
        let a0 = MPoly::var(0);
        let a1 = MPoly::var(1);
        let b = moment_contraction(&[a0.clone(), a1.clone()]).unwrap();
        assert_eq!(b[0], a0.mul(&a0));
        assert_eq!(b[1], a0.mul(&a1).scale(&es(2)));
        assert_eq!(b[2], a1.mul(&a1));
    }

    #[test]
    fn moment_coeffs_vs_m3_global_scalar() {
        // contraction = 8 * cubic formula, checked symbolically
        let vars: Vec<MPoly> = (0..4).map(MPoly::var).collect();
        let b = moment_contraction(&vars).unwrap();
        let three = es(3);
        let nine = es(9);
        let f0 = vars[0].mul(&vars[2]).scale(&three).sub(&vars[1].mul(&vars[1]));
        let f1 = vars[0].mul(&vars[3]).scale(&nine).sub(&vars[1].mul(&vars[2]));
        let f2 = vars[1].mul(&vars[3]).scale(&three).sub(&vars[2].mul(&vars[2]));
        let eight = es(8);
        assert_eq!(b[0], f0.scale(&eight));
        assert_eq!(b[1], f1.scale(&eight));
        assert_eq!(b[2], f2.scale(&eight));
    }

    #[test]
    fn moment_equivariance_symbolic_m3() {
        // mu(act(g, p)) = act_2(g, mu(p)) as an identity in the a_i for a
        // concrete rational g (degree 2: full expansion).
        let g = Sl2Action::new(es(2), es(3), es(1), es(2)).unwrap();
        let vars: Vec<MPoly> = (0..4).map(MPoly::var).collect();
        let moved = act_coeffs(&g, &vars);
        let lhs = moment_contraction(&moved).unwrap();
        let mu = moment_contraction(&vars).unwrap();
        let rhs = act_coeffs(&g, &mu);
        assert_eq!(lhs.to_vec(), rhs);
    }

    #[test]
    fn nilpotent_examples() {
        // u = (1,0) -> z^2, matrix [[0,0],[-1,0]]
        let mu = nilpotent_moment((&es(1), &es(0)));
        assert_eq!((mu.b0.clone(), mu.b1.clone(), mu.b2.clone()), (es(1), es(0), es(0)));
        let m = mu.matrix();
        assert_eq!(m[0][0], es(0));
        assert_eq!(m[1][0], es(-1));
        assert_eq!(mu.det(), es(0));
        // u = (0,0) -> zero
        assert!(nilpotent_moment((&es(0), &es(0))).is_zero());
        // u = (1,2) -> (z+2)^2 with det 0
        let mu = nilpotent_moment((&es(1), &es(2)));
        assert_eq!((mu.b0.clone(), mu.b1.clone(), mu.b2.clone()), (es(1), es(4), es(4)));
        assert_eq!(mu.det(), es(0));
    }

    #[test]
    fn stratum_dimensions_and_divisor_degrees() {
        assert_eq!(nilpotent_stratum_dimension(2, 0).unwrap(), 3);
        assert_eq!(nilpotent_stratum_dimension(3, 0).unwrap(), 6);
        assert_eq!(nilpotent_stratum_dimension(2, 1).unwrap(), 2);
        assert!(nilpotent_stratum_dimension(2, 2).is_err());
        assert_eq!(divisor_degree(3).unwrap(), 10);
        assert_eq!(divisor_degree(1).unwrap(), 1);
        assert_eq!(divisor_degree(5).unwrap(), 35);
        assert!(divisor_degree(4).is_err());
    }

    #[test]
    fn moment_homogeneity() {
        // mu(lambda p) = lambda^2 mu(p)
        let p = BinaryForm::from_ints(&[3, -2, 1, 5]).unwrap();
        let lam = ExactScalar::from_rat(7, 3);
        let lhs = moment_map_coeffs(&p.scale(&lam)).unwrap();
        let rhs = moment_map_coeffs(&p).unwrap().scale(&(&lam * &lam));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coefficient_tables_match_bilinear_shape() {
        // b0 pairs (i, m-1-i), b1 pairs (i, m-i), b2 pairs (i, m-i+1)
        let tables = moment_coefficient_tables(5).unwrap();
        assert!(!tables[0].is_empty());
        for &(i, j, _) in &tables[0] {
            assert_eq!(i + j, 4);
        }
        for &(i, j, _) in &tables[1] {
            assert_eq!(i + j, 5);
        }
        for &(i, j, _) in &tables[2] {
            assert_eq!(i + j, 6);
        }
    }
}
