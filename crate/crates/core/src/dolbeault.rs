//! An exact dbar-calculus on the projective line.
//!
//! The working function class is spanned by `z^a zbar^b y^-c` with
//! `y = 1 + z zbar`. Substituting `zbar = (y - 1)/z` gives the canonical
//! basis `z^d y^-e` (d, e integers), in which the class is closed under
//! products, d/dzbar acts termwise as `(d, e) -> -e (d+1, e+1)`, and the
//! naive y-integral inverts it termwise as `(d, e) -> (d-1, e-1)/(1-e)`.
//! Cohomology appears through the failure of a corrected primitive to be a
//! global smooth section: a Laurent tail `c z^-j` removes a pole at 0 but is
//! itself smooth at infinity only when `j >= -D` for the bundle `O(D)`, so
//! each bundle `O(-n)` shows exactly `n - 1` obstructed tail orders.
//!
//! Integrals over the projective line reduce by rotation invariance to
//! radial integrals `int_1^inf y^-e dy = 1/(e-1)`; all brackets are reported
//! in units of the common transcendental factor pi.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::approx::ApproxScalar;
use crate::error::{CoreError, Result};
use crate::poly::{roots, UnivariatePoly};
use crate::scalar::{binom_int, Coeff, ExactScalar};

/// A finite sum `sum coeff z^d y^-e` (canonical form), tagged with the
/// degree of the line bundle it lives in and whether a `dzbar` factor is
/// attached.
#[derive(Clone, PartialEq, Debug)]
pub struct YExpansion<T: Coeff = ExactScalar> {
    /// `(d, e) -> coeff` meaning `coeff * z^d * y^-e`.
    terms: BTreeMap<(i64, i64), T>,
    /// Degree of the bundle `O(twist)` this object is a section/form of.
    pub twist: i64,
    /// Whether a `dzbar` factor is attached (a (0,1)-form).
    pub antiholomorphic_form_degree: bool,
}

impl<T: Coeff> YExpansion<T> {
    pub fn zero(twist: i64, dbar: bool) -> Self {
        YExpansion {
            terms: BTreeMap::new(),
            twist,
            antiholomorphic_form_degree: dbar,
        }
    }

    /// Insert `coeff * z^d * y^-e` (canonical form).
    pub fn insert_canonical(&mut self, d: i64, e: i64, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let key = (d, e);
        let next = match self.terms.get(&key) {
            Some(cur) => cur.ring_add(&coeff),
            None => coeff,
        };
        if next.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next);
        }
    }

    /// `coeff * z^a * zbar^b * y^-c` with `b >= 0`, converted to canonical
    /// form via `zbar^b = z^-b (y-1)^b`.
    pub fn add_zbar_monomial(&mut self, coeff: &T, a: i64, b: i64, c: i64) {
        assert!(b >= 0, "zbar exponent must be nonnegative");
        for k in 0..=b {
            // (y-1)^b = sum_k C(b,k) y^k (-1)^(b-k)
            let mut w = binom_int(b, k);
            if (b - k) % 2 == 1 {
                w = -w;
            }
            let scaled = coeff.ring_scale(&ExactScalar::from_rational(BigRational::from_integer(w)));
            self.insert_canonical(a - b, c - k, scaled);
        }
    }

    pub fn from_zbar_monomial(coeff: T, a: i64, b: i64, c: i64, twist: i64, dbar: bool) -> Self {
        let mut out = YExpansion::zero(twist, dbar);
        out.add_zbar_monomial(&coeff, a, b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &T)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.twist, other.twist);
        debug_assert_eq!(self.antiholomorphic_form_degree, other.antiholomorphic_form_degree);
        let mut out = self.clone();
        for (&(d, e), c) in &other.terms {
            out.insert_canonical(d, e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        YExpansion {
            terms: self.terms.iter().map(|(k, c)| (*k, c.ring_neg())).collect(),
            twist: self.twist,
            antiholomorphic_form_degree: self.antiholomorphic_form_degree,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return YExpansion::zero(self.twist, self.antiholomorphic_form_degree);
        }
        YExpansion {
            terms: self.terms.iter().map(|(k, v)| (*k, v.ring_scale(c))).collect(),
            twist: self.twist,
            antiholomorphic_form_degree: self.antiholomorphic_form_degree,
        }
    }

    /// Product of two expansions; twists add, at most one `dzbar` factor.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            !(self.antiholomorphic_form_degree && other.antiholomorphic_form_degree),
            "cannot multiply two (0,1)-forms"
        );
        let mut out = YExpansion::zero(
            self.twist + other.twist,
            self.antiholomorphic_form_degree || other.antiholomorphic_form_degree,
        );
        for (&(d1, e1), c1) in &self.terms {
            for (&(d2, e2), c2) in &other.terms {
                out.insert_canonical(d1 + d2, e1 + e2, c1.ring_mul(c2));
            }
        }
        out
    }

    /// Multiply by a polynomial in `z` regarded as a section of
    /// `O(poly_degree_bound)`.
    pub fn mul_poly(&self, p: &UnivariatePoly, poly_degree_bound: i64) -> Self {
        let mut out = YExpansion::zero(
            self.twist + poly_degree_bound,
            self.antiholomorphic_form_degree,
        );
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&(d, e), v) in &self.terms {
                out.insert_canonical(d + k as i64, e, v.ring_scale(c));
            }
        }
        out
    }

    /// Multiply by a polynomial in `z` with coefficients in the ring
    /// (ascending), as a section of `O(poly_degree_bound)`.
    pub fn mul_zpoly(&self, coeffs: &[T], poly_degree_bound: i64) -> Self {
        let mut out = YExpansion::zero(
            self.twist + poly_degree_bound,
            self.antiholomorphic_form_degree,
        );
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&(d, e), v) in &self.terms {
                out.insert_canonical(d + k as i64, e, v.ring_mul(c));
            }
        }
        out
    }

    /// `d/dzbar`, termwise: `z^d y^-e -> -e z^(d+1) y^-(e+1)`.
    pub fn dbar(&self) -> Self {
        assert!(!self.antiholomorphic_form_degree, "already a (0,1)-form");
        let mut out = YExpansion::zero(self.twist, true);
        for (&(d, e), c) in &self.terms {
            if e == 0 {
                continue; // z-only terms are dbar-closed
            }
            let w = ExactScalar::from_rational(BigRational::from_integer(BigInt::from(-e)));
            out.insert_canonical(d + 1, e + 1, c.ring_scale(&w));
        }
        out
    }

    /// Termwise antiderivative in `y` at fixed `z`: the inverse of `dbar`
    /// on the class. A term with `y^-1` would integrate to a logarithm and
    /// is rejected; `y^-e` with `e <= 0` is not integrable at infinity.
    pub fn naive_integral(&self) -> Result<Self> {
        assert!(self.antiholomorphic_form_degree, "naive integral expects a (0,1)-form");
        let mut out = YExpansion::zero(self.twist, false);
        for (&(d, e), c) in &self.terms {
            if e == 1 {
                return Err(CoreError::LogObstruction { zpow: d });
            }
            if e <= 0 {
                return Err(CoreError::Divergence { zpow: d, ypow: e });
            }
            let w = ExactScalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(1 - e)));
            out.insert_canonical(d - 1, e - 1, c.ring_scale(&w));
        }
        Ok(out)
    }

    /// Coefficients of the singular monomials `z^-j zbar^t` (j >= 1) in the
    /// Taylor expansion around z = 0, with cancellations across terms.
    pub fn singular_monomials(&self) -> BTreeMap<(i64, i64), T> {
        let mut out: BTreeMap<(i64, i64), T> = BTreeMap::new();
        for (&(d, e), c) in &self.terms {
            if d >= 0 {
                continue;
            }
            // y^-e = sum_t binom(-e, t) (z zbar)^t
            for t in 0..(-d) {
                let w = binom_int(-e, t);
                let contrib = c.ring_scale(&ExactScalar::from_rational(BigRational::from_integer(w)));
                if contrib.is_zero() {
                    continue;
                }
                let key = (-(d + t), t);
                let next = match out.get(&key) {
                    Some(cur) => cur.ring_add(&contrib),
                    None => contrib,
                };
                if next.is_zero() {
                    out.remove(&key);
                } else {
                    out.insert(key, next);
                }
            }
        }
        out
    }

    /// The expansion in the chart at infinity (`w = 1/z`), as a section of
    /// the same bundle: `w^D h(1/w)` with `D = twist`.
    pub fn at_infinity(&self) -> Self {
        assert!(!self.antiholomorphic_form_degree, "sections only");
        let mut out = YExpansion::zero(self.twist, false);
        for (&(d, e), c) in &self.terms {
            // z^d y^-e = w^(D-d+e) wbar^e (1+w wbar)^-e, up to w^D transition
            out.add_zbar_monomial(c, self.twist - d + e, e, e);
        }
        out
    }
}

/// Regularity data for a (corrected) primitive as a section of `O(twist)`.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    /// Orders `j` with a nonzero singular monomial `z^-j zbar^t` before
    /// correction.
    pub pole_orders_at_zero: Vec<i64>,
    /// All singular monomials with a `zbar` factor cancel (the pole is a
    /// pure Laurent tail, hence correctable).
    pub mixed_clean: bool,
    /// Minimal `w`-power margin of the corrected section at infinity;
    /// nonnegative means decay consistent with the bundle degree.
    pub decay_exponent_at_infinity: BigRational,
    /// Corrected primitive is a global smooth section.
    pub is_global_section: bool,
}

/// The minimal dbar-closed Laurent correction making `h` regular at 0,
/// plus the verdict on whether the corrected `h` is a global section of
/// `O(h.twist)`.
pub fn polar_part<T: Coeff>(h: &YExpansion<T>) -> (YExpansion<T>, RegularityReport) {
    let sing = h.singular_monomials();
    let mut tail = YExpansion::zero(h.twist, false);
    let mut orders = Vec::new();
    let mut mixed_clean = true;
    for (&(j, t), c) in &sing {
        if !orders.contains(&j) {
            orders.push(j);
        }
        if t == 0 {
            tail.insert_canonical(-j, 0, c.clone());
        } else {
            mixed_clean = false;
        }
    }
    orders.sort_unstable();
    let corrected = h.sub(&tail);
    let at_inf = corrected.at_infinity();
    let infinity_regular = at_inf.singular_monomials().is_empty();
    let decay = corrected
        .terms
        .keys()
        .map(|&(d, _)| BigRational::from_integer(BigInt::from(h.twist - d)))
        .min()
        .unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
    let report = RegularityReport {
        pole_orders_at_zero: orders,
        mixed_clean,
        decay_exponent_at_infinity: decay,
        is_global_section: mixed_clean && infinity_regular,
    };
    (tail, report)
}

/// Solve `dbar h = g` for a genuinely trivial class: naive integral, then
/// polar correction. Errors if a cohomological obstruction or an
/// irremovable mixed singularity appears.
pub fn solve_dbar<T: Coeff>(g: &YExpansion<T>) -> Result<YExpansion<T>> {
    let h = g.naive_integral()?;
    let (tail, report) = polar_part(&h);
    if !report.mixed_clean {
        let sing = h.singular_monomials();
        let (&(j, t), _) = sing.iter().find(|(&(_, t), _)| t > 0).unwrap();
        return Err(CoreError::MixedSingularity { zpow: j, zbarpow: t });
    }
    // A tail term z^-j is smooth at infinity as a section of O(D) only for
    // j >= -D; lower orders are true cohomological obstructions.
    for (&(d, _), c) in tail.terms() {
        let j = -d;
        if j < -g.twist && !c.is_zero() {
            return Err(CoreError::Obstructed {
                order: j,
                degree: g.twist,
            });
        }
    }
    let corrected = h.sub(&tail);
    if !corrected.at_infinity().singular_monomials().is_empty() {
        return Err(CoreError::Obstructed {
            order: 0,
            degree: g.twist,
        });
    }
    Ok(corrected)
}

/// Integral over the projective line of a (0,1)-form valued in `O(-2)`,
/// in units of pi: terms `z^d y^-e` with `d != 0` vanish by rotation
/// invariance; diagonal terms contribute `1/(e-1)`.
pub fn bracket<T: Coeff>(x: &YExpansion<T>) -> Result<T> {
    if !x.antiholomorphic_form_degree {
        return Err(CoreError::Domain("bracket expects a (0,1)-form".into()));
    }
    if x.twist != -2 {
        return Err(CoreError::Domain(format!(
            "bracket expects an O(-2)-valued form, got O({})",
            x.twist
        )));
    }
    let mut acc = T::zero();
    for (&(d, e), c) in x.terms() {
        if d != 0 {
            continue;
        }
        if e <= 1 {
            return Err(CoreError::Divergence { zpow: d, ypow: e });
        }
        let w = ExactScalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(e - 1)));
        acc = acc.ring_add(&c.ring_scale(&w));
    }
    Ok(acc)
}

/// Coordinates of a cohomology class in the standard `O(-4)` family
/// `(v0 + v1 zbar + v2 zbar^2) y^-4 dz^2 dzbar`.
#[derive(Clone, PartialEq, Debug)]
pub struct DolbeaultClass {
    pub v: [ExactScalar; 3],
}

impl DolbeaultClass {
    pub fn new(v0: ExactScalar, v1: ExactScalar, v2: ExactScalar) -> Self {
        DolbeaultClass { v: [v0, v1, v2] }
    }
}

/// The standard representative of a class as a `YExpansion`, generic in the
/// coefficient ring.
pub fn beta_rep<T: Coeff>(v: &[T; 3]) -> YExpansion<T> {
    let mut out = YExpansion::zero(-4, true);
    for (b, coeff) in v.iter().enumerate() {
        out.add_zbar_monomial(coeff, 0, b as i64, 4);
    }
    out
}

pub fn beta_rep_exact(v: &DolbeaultClass) -> YExpansion<ExactScalar> {
    beta_rep(&v.v)
}

/// Value `v1^2 - 4 v0 v2` of the null form, and the kernel `(w0, w1)` of the
/// system `2 v0 w0 + v1 w1 = 0`, `v1 w0 + 2 v2 w1 = 0` when the value is 0.
pub fn null_cone_test(
    v: &DolbeaultClass,
) -> Result<(ExactScalar, Option<(ExactScalar, ExactScalar)>)> {
    let [v0, v1, v2] = &v.v;
    if v0.is_zero() && v1.is_zero() && v2.is_zero() {
        return Err(CoreError::Domain("class must be nonzero".into()));
    }
    let four = ExactScalar::from_int(4);
    let value = &(v1 * v1) - &(&four * &(v0 * v2));
    let kernel = if value.is_zero() {
        if !v0.is_zero() {
            Some((-v1, &ExactScalar::from_int(2) * v0))
        } else {
            // on the cone with v0 = 0 forces v1 = 0: kernel annihilates w1
            Some((ExactScalar::one(), ExactScalar::zero()))
        }
    } else {
        None
    };
    Ok((value, kernel))
}

/// The class attached to the conic parameter `t`: `(1, 2t, t^2)`, the point
/// of the null cone whose kernel section of `O(1)` vanishes at `t`.
pub fn conic_class(t: &ExactScalar) -> DolbeaultClass {
    DolbeaultClass::new(
        ExactScalar::one(),
        &ExactScalar::from_int(2) * t,
        t * t,
    )
}

/// The six conic parameters attached to a degree-6 polynomial: its roots.
pub fn six_points(p: &UnivariatePoly, precision_bits: u32) -> Result<Vec<ApproxScalar>> {
    if p.degree() != 6 {
        return Err(CoreError::Domain(format!(
            "expected a sextic, got degree {}",
            p.degree()
        )));
    }
    let rs = roots(p, precision_bits)?;
    if rs.iter().any(|(_, m)| *m > 1) {
        return Err(CoreError::Degeneracy("sextic has a repeated root".into()));
    }
    Ok(rs.into_iter().map(|(r, _)| r).collect())
}

fn er(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_rat(n, d)
}

/// The quadratic form of the one-dimensional subspace computation at the
/// base class `v = (0, 1, 0)`: entries `Q_ab = int B_a B_b p beta` over the
/// basis `(1, z^2)` of admissible `a_0`, where `B_0 = f + 1/(6 z^2)` and
/// `B_2 = z^2 f` with `f` the corrected primitive of `beta`. Returns
/// `(Q, det Q)`; `det Q = -(c3^2 - 4 c1 c5)/6^8` identically.
pub fn trope_quadratic_form_generic<T: Coeff>(p_coeffs: &[T]) -> Result<([[T; 2]; 2], T)> {
    // beta at v = (0,1,0): zbar y^-4 dz^2 dzbar
    let beta: YExpansion<T> = YExpansion::from_zbar_monomial(T::one(), 0, 1, 4, -4, true);
    let f = beta.naive_integral()?;
    // B0 = 1 * f - (polar tail); the tail is -1/(6 z^2)
    let one_poly = UnivariatePoly::one();
    let u0f = f.mul_poly(&one_poly, 2);
    let (tail, report) = polar_part(&u0f);
    if !report.mixed_clean {
        return Err(CoreError::MixedSingularity { zpow: 2, zbarpow: 1 });
    }
    let b_0 = u0f.sub(&tail);
    let b_2 = f.mul_poly(&UnivariatePoly::monomial(2), 2);
    let p_beta = beta.mul_zpoly(p_coeffs, 6);
    let entry = |x: &YExpansion<T>, y: &YExpansion<T>| -> Result<T> {
        bracket(&x.mul(y).mul(&p_beta))
    };
    let q00 = entry(&b_0, &b_0)?;
    let q02 = entry(&b_0, &b_2)?;
    let q22 = entry(&b_2, &b_2)?;
    let det = q00.ring_mul(&q22).ring_sub(&q02.ring_mul(&q02));
    Ok(([[q00, q02.clone()], [q02, q22]], det))
}

/// Exact quadratic form and determinant for a concrete sextic.
pub fn trope_quadratic_form(
    p: &UnivariatePoly,
) -> Result<([[ExactScalar; 2]; 2], ExactScalar)> {
    if p.degree() > 6 {
        return Err(CoreError::Domain("expected degree at most 6".into()));
    }
    let coeffs: Vec<ExactScalar> = (0..=6).map(|i| p.coeff(i)).collect();
    trope_quadratic_form_generic(&coeffs)
}

/// The constant kappa with `det Q = kappa (c3^2 - 4 c1 c5)`.
pub fn trope_form_constant() -> ExactScalar {
    er(-1, 1679616) // -1/6^8
}

/// The three brackets of the quartic-curve computation for `p = q r`:
/// `[q beta]`, `[q b beta]`, `C([beta]) = int b^2 q beta` with
/// `dbar b = r beta`, plus the projective quartic value
/// `Q4 = [q beta] C([beta]) - [q b beta]^2`.
#[derive(Clone, Debug)]
pub struct C4Brackets<T: Coeff> {
    pub q_beta: T,
    pub qb_beta: T,
    pub cubic: T,
    pub quartic: T,
}

pub fn c4_brackets<T: Coeff>(
    q: &UnivariatePoly,
    r: &UnivariatePoly,
    v: &[T; 3],
) -> Result<C4Brackets<T>> {
    if q.degree() > 2 || r.degree() > 4 {
        return Err(CoreError::Domain(
            "expected a quadratic and a quartic".into(),
        ));
    }
    let beta = beta_rep(v);
    let b = solve_dbar(&beta.mul_poly(r, 4))?;
    let q_beta_form = beta.mul_poly(q, 2);
    let a = bracket(&q_beta_form)?;
    let bq = bracket(&q_beta_form.mul(&b))?;
    let c = bracket(&q_beta_form.mul(&b).mul(&b))?;
    let quartic = a.ring_mul(&c).ring_sub(&bq.ring_mul(&bq));
    Ok(C4Brackets {
        q_beta: a,
        qb_beta: bq,
        cubic: c,
        quartic,
    })
}

/// The 2x2 matrix of the degree-6 computation: the obstruction class
/// `[q b2 beta]` paired against the dual basis `(1, z)`, as `u` runs over
/// the basis `(1, z)` of sections of `O(1)`. Returns the matrix and its
/// determinant (degree 6 in the class coordinates).
pub fn c6_matrix<T: Coeff>(
    q: &UnivariatePoly,
    r: &UnivariatePoly,
    v: &[T; 3],
) -> Result<([[T; 2]; 2], T)> {
    if q.degree() > 2 || r.degree() > 4 {
        return Err(CoreError::Domain(
            "expected a quadratic and a quartic".into(),
        ));
    }
    let beta = beta_rep(v);
    let q_beta = beta.mul_poly(q, 2);
    let mut m: [[T; 2]; 2] = [
        [T::zero(), T::zero()],
        [T::zero(), T::zero()],
    ];
    for j in 0..2usize {
        // a0 basis element u = z^j
        let g1 = q_beta.mul_poly(&UnivariatePoly::monomial(j), 1);
        let b1 = solve_dbar(&g1)?;
        let g2 = beta.mul_poly(r, 4).mul(&b1);
        let b2 = solve_dbar(&g2)?;
        let obstruction = q_beta.mul(&b2);
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = bracket(&obstruction.mul_poly(&UnivariatePoly::monomial(i), 1))?;
        }
    }
    let det = m[0][0]
        .ring_mul(&m[1][1])
        .ring_sub(&m[0][1].ring_mul(&m[1][0]));
    Ok((m, det))
}

/// Interpolate the quartic curve equation from sampled values of `Q4` on
/// random rational classes of height at most 20; resamples on conditioning
/// failure. Returns the fitted form in `(v0, v1, v2)` and the residual.
pub fn c4_equation<R: rand::Rng>(
    q: &UnivariatePoly,
    r: &UnivariatePoly,
    precision_bits: u32,
    rng: &mut R,
) -> Result<(crate::ternary::TernaryForm<ApproxScalar>, ApproxScalar)> {
    sampled_curve_equation(4, precision_bits, rng, &mut |v| {
        Ok(c4_brackets(q, r, v)?.quartic)
    })
}

/// Shared sampling + interpolation driver for curve equations whose values
/// come from exact bracket computations.
pub fn sampled_curve_equation<R: rand::Rng>(
    degree: u32,
    precision_bits: u32,
    rng: &mut R,
    value: &mut dyn FnMut(&[ExactScalar; 3]) -> Result<ExactScalar>,
) -> Result<(crate::ternary::TernaryForm<ApproxScalar>, ApproxScalar)> {
    let n_monomials = crate::ternary::monomial_exponents(degree).len();
    let n_samples = n_monomials + n_monomials / 2 + 2;
    let mut last_err = None;
    for _attempt in 0..4 {
        let mut samples = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let v = [
                rand_height20(rng),
                rand_height20(rng),
                rand_height20(rng),
            ];
            let val = value(&v)?;
            samples.push((
                [
                    ApproxScalar::from_exact(&v[0], precision_bits),
                    ApproxScalar::from_exact(&v[1], precision_bits),
                    ApproxScalar::from_exact(&v[2], precision_bits),
                ],
                ApproxScalar::from_exact(&val, precision_bits),
            ));
        }
        match crate::ternary::interpolate_homogeneous(degree, &samples, precision_bits) {
            Ok(out) => return Ok(out),
            Err(e @ CoreError::Conditioning { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

fn rand_height20<R: rand::Rng>(rng: &mut R) -> ExactScalar {
    let num = rng.gen_range(-20i64..=20);
    let den = rng.gen_range(1i64..=20);
    ExactScalar::from_rat(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MPoly;

    fn es(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    #[test]
    fn naive_integral_of_volume_form() {
        // (1/y^2) dz dzbar integrates (in zbar) to -1/(z y)
        let vol: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 0, 2, -2, true);
        let h = vol.naive_integral().unwrap();
        let mut want = YExpansion::zero(-2, false);
        want.insert_canonical(-1, 1, es(-1));
        assert_eq!(h, want);
        // and dbar inverts it
        assert_eq!(h.dbar(), vol);
    }

    #[test]
    fn naive_integral_zbar_over_y4() {
        // zbar/y^4 dzbar -> (1/z^2)(1/(3y^3) - 1/(2y^2))
        let g: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 1, 4, -4, true);
        let h = g.naive_integral().unwrap();
        let mut want = YExpansion::zero(-4, false);
        want.insert_canonical(-2, 3, er(1, 3));
        want.insert_canonical(-2, 2, er(-1, 2));
        assert_eq!(h, want);
    }

    #[test]
    fn naive_integral_full_family() {
        // the n = 4 family with coordinates (v0, v1, v2) = (2, 3, 5):
        // f = -(1/z^3)( (1/3y^3)(v0 z^2 - v1 z + v2) + (1/2y^2)(v1 z - 2 v2) + v2/y )
        let v = [es(2), es(3), es(5)];
        let beta = beta_rep(&v);
        let f = beta.naive_integral().unwrap();
        let mut want = YExpansion::zero(-4, false);
        // 1/3 y^-3 terms: -(v0 z^-1 - v1 z^-2 + v2 z^-3)/3
        want.insert_canonical(-1, 3, er(-2, 3));
        want.insert_canonical(-2, 3, er(3, 3));
        want.insert_canonical(-3, 3, er(-5, 3));
        // 1/2 y^-2 terms: -(v1 z^-2 - 2 v2 z^-3)/2
        want.insert_canonical(-2, 2, er(-3, 2));
        want.insert_canonical(-3, 2, es(5));
        // y^-1 term: -v2 z^-3
        want.insert_canonical(-3, 1, es(-5));
        assert_eq!(f, want);
    }

    #[test]
    fn log_and_divergence_obstructions() {
        // c - b = 1 is a logarithm
        let g: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 0, 1, -2, true);
        assert!(matches!(g.naive_integral(), Err(CoreError::LogObstruction { .. })));
        // c <= b is divergent: zbar^2 y^-2 has terms down to y^0
        let g: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 2, 2, -2, true);
        assert!(matches!(g.naive_integral(), Err(CoreError::Divergence { .. })));
    }

    #[test]
    fn volume_class_is_nontrivial() {
        // the corrected primitive of the volume form fails at infinity
        let vol: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 0, 2, -2, true);
        let h = vol.naive_integral().unwrap();
        let (tail, report) = polar_part(&h);
        assert_eq!(report.pole_orders_at_zero, vec![1]);
        assert!(report.mixed_clean);
        assert!(!report.is_global_section);
        // tail is -1/z
        let mut want = YExpansion::zero(-2, false);
        want.insert_canonical(-1, 0, es(-1));
        assert_eq!(tail, want);
        // and solve_dbar reports the obstruction
        assert!(matches!(
            solve_dbar(&vol),
            Err(CoreError::Obstructed { order: 1, degree: -2 })
        ));
    }

    #[test]
    fn trivial_class_is_solvable() {
        // zbar^2/y^4 dzbar as an O(-2)-valued form (m = 2 >= 2k-1 = 1):
        // the corrected primitive is a global section.
        let g: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 2, 4, -2, true);
        let h = g.naive_integral().unwrap();
        let (_, report) = polar_part(&h);
        assert!(report.is_global_section);
        let s = solve_dbar(&g).unwrap();
        assert_eq!(s.dbar(), g);
    }

    #[test]
    fn obstruction_dimension_count() {
        // For O(-2k), the representatives zbar^m / y^2k with 0 <= m <= 2k-2
        // are all obstructed: a (2k-1)-dimensional space of classes.
        for k in 1..=3i64 {
            let mut obstructed = 0;
            for m in 0..=(2 * k - 2) {
                let g: YExpansion =
                    YExpansion::from_zbar_monomial(es(1), 0, m, 2 * k, -2 * k, true);
                match solve_dbar(&g) {
                    Err(CoreError::Obstructed { .. }) => obstructed += 1,
                    other => panic!("expected obstruction, got {other:?}"),
                }
            }
            assert_eq!(obstructed, 2 * k - 1);
        }
    }

    #[test]
    fn bracket_examples() {
        // int 1/y^2 = 1
        let x: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 0, 2, -2, true);
        assert_eq!(bracket(&x).unwrap(), es(1));
        // int z zbar / y^4 = 1/6
        let x: YExpansion = YExpansion::from_zbar_monomial(es(1), 1, 1, 4, -2, true);
        assert_eq!(bracket(&x).unwrap(), er(1, 6));
        // off-diagonal angular terms vanish
        let x: YExpansion = YExpansion::from_zbar_monomial(es(1), 3, 1, 6, -2, true);
        assert_eq!(bracket(&x).unwrap(), es(0));
        // wrong twist rejected
        let x: YExpansion = YExpansion::from_zbar_monomial(es(1), 0, 0, 2, -4, true);
        assert!(bracket(&x).is_err());
    }

    #[test]
    fn bracket_vanishes_on_exact_forms() {
        // Stokes: bracket(s * dbar h) = 0 for h decaying fast enough.
        let mut h: YExpansion = YExpansion::zero(-4, false);
        h.insert_canonical(1, 5, es(3));
        h.insert_canonical(0, 4, es(-2));
        h.insert_canonical(2, 7, er(5, 3));
        let s = UnivariatePoly::from_int_coeffs(&[1, -2, 4]); // degree 2 = -(-4) - 2
        let form = h.dbar().mul_poly(&s, 2);
        assert_eq!(bracket(&form).unwrap(), es(0));
    }

    #[test]
    fn dbar_roundtrip_random_shapes() {
        let mut h: YExpansion = YExpansion::zero(-3, false);
        h.insert_canonical(-2, 3, er(7, 2));
        h.insert_canonical(0, 1, es(-5));
        h.insert_canonical(4, 6, er(1, 9));
        let back = h.dbar().naive_integral().unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn null_cone_examples() {
        // (1, -2t, t^2) is null with kernel ratio t
        let t = er(7, 3);
        let v = DolbeaultClass::new(es(1), &es(-2) * &t, &t * &t);
        let (value, kernel) = null_cone_test(&v).unwrap();
        assert!(value.is_zero());
        let (w0, w1) = kernel.unwrap();
        assert_eq!(&w0 / &w1, t);
        // (0,1,0) -> 1, no kernel
        let v = DolbeaultClass::new(es(0), es(1), es(0));
        let (value, kernel) = null_cone_test(&v).unwrap();
        assert_eq!(value, es(1));
        assert!(kernel.is_none());
        // (1,0,1) -> -4, no kernel
        let v = DolbeaultClass::new(es(1), es(0), es(1));
        let (value, kernel) = null_cone_test(&v).unwrap();
        assert_eq!(value, es(-4));
        assert!(kernel.is_none());
        // zero class rejected
        assert!(null_cone_test(&DolbeaultClass::new(es(0), es(0), es(0))).is_err());
    }

    #[test]
    fn conic_class_kills_section_vanishing_at_t() {
        // at conic_class(t), the kernel section w0 + w1 z vanishes at z = t
        let t = er(-5, 2);
        let v = conic_class(&t);
        let (value, kernel) = null_cone_test(&v).unwrap();
        assert!(value.is_zero());
        let (w0, w1) = kernel.unwrap();
        // w0 + w1 t = 0
        assert!((&w0 + &(&w1 * &t)).is_zero());
    }

    #[test]
    fn six_points_examples() {
        // (z^2-1)(z^2-4)(z^2-9) -> +-1, +-2, +-3
        let p = UnivariatePoly::from_roots(
            es(1),
            &[es(1), es(-1), es(2), es(-2), es(3), es(-3)],
        );
        let pts = six_points(&p, 128).unwrap();
        assert_eq!(pts.len(), 6);
        // each point satisfies the null condition via its exact class
        for target in [1i64, -1, 2, -2, 3, -3] {
            let matched = pts.iter().any(|t| {
                t.sub(&ApproxScalar::from_int(target, t.precision_bits()))
                    .abs_le_pow2(-100)
            });
            assert!(matched);
            let (value, _) = null_cone_test(&conic_class(&es(target))).unwrap();
            assert!(value.is_zero());
        }
        // repeated roots rejected
        let p = UnivariatePoly::from_roots(
            es(1),
            &[es(1), es(1), es(2), es(-2), es(3), es(-3)],
        );
        assert!(matches!(six_points(&p, 128), Err(CoreError::Degeneracy(_))));
    }

    #[test]
    fn trope_quadratic_form_frozen_entries() {
        // Q00 = c5/648, Q02 = -c3/1296, Q22 = c1/648
        let p = UnivariatePoly::from_int_coeffs(&[9, 7, -4, 3, 1, -2, 6]);
        let (q, det) = trope_quadratic_form(&p).unwrap();
        assert_eq!(q[0][0], &es(-2) * &er(1, 648));
        assert_eq!(q[0][1], &es(3) * &er(-1, 1296));
        assert_eq!(q[1][1], &es(7) * &er(1, 648));
        // det Q = kappa (c3^2 - 4 c1 c5) with kappa = -1/6^8
        let c3sq_4c1c5 = &(&es(3) * &es(3)) - &(&es(4) * &(&es(7) * &es(-2)));
        assert_eq!(det, &trope_form_constant() * &c3sq_4c1c5);
    }

    #[test]
    fn trope_quadratic_form_singular_cases() {
        // (c1, c3, c5) = (1, 2, 1): det Q = 0
        let p = UnivariatePoly::from_int_coeffs(&[0, 1, 0, 2, 0, 1, 0]);
        let (_, det) = trope_quadratic_form(&p).unwrap();
        assert!(det.is_zero());
        // (c1, c3, c5) = (1, 1, 1): det Q = -3 kappa
        let p = UnivariatePoly::from_int_coeffs(&[0, 1, 0, 1, 0, 1, 0]);
        let (_, det) = trope_quadratic_form(&p).unwrap();
        assert_eq!(det, &es(-3) * &trope_form_constant());
        // even sextic: Q = 0 identically
        let p = UnivariatePoly::from_int_coeffs(&[3, 0, -1, 0, 5, 0, 2]);
        let (q, det) = trope_quadratic_form(&p).unwrap();
        assert!(det.is_zero());
        assert!(q.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn trope_quadratic_form_symbolic_identity() {
        // det Q = kappa (c3^2 - 4 c1 c5) as a polynomial in c0..c6
        let cs: Vec<MPoly> = (0..7).map(MPoly::var).collect();
        let (_, det) = trope_quadratic_form_generic(&cs).unwrap();
        let c1 = MPoly::var(1);
        let c3 = MPoly::var(3);
        let c5 = MPoly::var(5);
        let want = c3
            .mul(&c3)
            .sub(&c1.mul(&c5).scale(&es(4)))
            .scale(&trope_form_constant());
        assert_eq!(det, want);
    }

    #[test]
    fn c4_q_beta_localization() {
        // [q beta] restricted to the conic is q(t)/3: the linear form
        // vanishes exactly at the two roots of q.
        let z1 = es(1);
        let z2 = es(-2);
        let q = UnivariatePoly::from_roots(es(1), &[z1.clone(), z2.clone()]);
        let r = UnivariatePoly::from_roots(es(1), &[es(2), es(-1), es(3), es(5)]);
        for (t, expect_zero) in [(es(1), true), (es(-2), true), (es(4), false)] {
            let v = conic_class(&t).v;
            let br = c4_brackets(&q, &r, &v).unwrap();
            assert_eq!(br.q_beta.is_zero(), expect_zero);
            if !expect_zero {
                let qt = q.eval(&t);
                assert_eq!(br.q_beta, &qt * &er(1, 3));
            }
        }
    }

    #[test]
    fn c4_quartic_projective_weight() {
        // Q4(lambda v) = lambda^4 Q4(v)
        let q = UnivariatePoly::from_roots(es(1), &[es(1), es(-1)]);
        let r = UnivariatePoly::from_roots(es(1), &[es(2), es(-2), es(3), es(-3)]);
        let v = [es(3), er(1, 2), es(-2)];
        let lam = er(5, 3);
        let scaled = [&v[0] * &lam, &v[1] * &lam, &v[2] * &lam];
        let q4 = c4_brackets(&q, &r, &v).unwrap().quartic;
        let q4s = c4_brackets(&q, &r, &scaled).unwrap().quartic;
        assert_eq!(q4s, &q4 * &lam.pow(4));
    }

    #[test]
    fn c6_determinant_conic_structure() {
        // The determinant vanishes at the conic parameters of the roots of
        // q, and on the conic satisfies det(cc(t)) = -q(t)^2 Q4(cc(t)) / 27:
        // the residual intersections of the sextic and the quartic with the
        // conic coincide.
        let q = UnivariatePoly::from_roots(es(1), &[es(1), es(2)]);
        let r = UnivariatePoly::from_roots(es(1), &[es(3), es(4), es(5), es(6)]);
        for z in [es(1), es(2)] {
            let v = conic_class(&z).v;
            let (_, det) = c6_matrix(&q, &r, &v).unwrap();
            assert!(det.is_zero(), "det nonzero at conic parameter {z}");
        }
        for t in [es(3), es(4), es(7), er(1, 2)] {
            let v = conic_class(&t).v;
            let (_, det) = c6_matrix(&q, &r, &v).unwrap();
            let q4 = c4_brackets(&q, &r, &v).unwrap().quartic;
            let qt = q.eval(&t);
            let want = -&(&(&(&qt * &qt) * &q4) * &er(1, 27));
            assert_eq!(det, want, "structure fails at t = {t}");
        }
        // at the r-roots the quartic value is q(z)^2 r'(z)^2 / 972, nonzero
        let rp = r.derivative();
        for z in [es(3), es(4), es(5), es(6)] {
            let v = conic_class(&z).v;
            let q4 = c4_brackets(&q, &r, &v).unwrap().quartic;
            let qz = q.eval(&z);
            let rz = rp.eval(&z);
            let want = &(&(&qz * &qz) * &(&rz * &rz)) * &er(1, 972);
            assert_eq!(q4, want);
        }
        // and the determinant is nonzero at a generic class
        let v = [es(1), es(1), es(-7)];
        let (_, det) = c6_matrix(&q, &r, &v).unwrap();
        assert!(!det.is_zero());
    }
}
