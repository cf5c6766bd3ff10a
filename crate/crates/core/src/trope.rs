//! Plane geometry of the standard trope: the harmonic-cubic correspondence
//! for binary sextics, the associated plane sextic and its tangency with the
//! null conic, and the line/quartic intersection data for a marked pair of
//! branch points.
//!
//! The correspondence sends a sextic `p` to the coefficient of `z^6` in
//! `((x1 + i x2) + 2 x3 z - (x1 - i x2) z^2)^3 p(z)`; with the quadratic
//! evaluated on the rational conic parametrization
//! `x(t) = ((t^2-1)/2, -i(t^2+1)/2, -t)` it collapses to `(z - t)^2`, so the
//! pullback of everything to the conic is exactly computable. Two pairing
//! normalizations are supported: `literal` (the plain coefficient
//! extraction) and `apolar` (weights `(-1)^j / C(6,j)`), under which the
//! conic restriction of the cubic is the sextic itself.

use num::rational::BigRational;

use crate::approx::{cross_ratio, ApproxScalar, P1};
use crate::dolbeault::{c4_brackets, conic_class};
use crate::error::{CoreError, Result};
use crate::poly::{discriminant, roots, UnivariatePoly};
use crate::scalar::{binom_int, Coeff, ExactScalar};
use crate::ternary::TernaryForm;

/// Which normalization ties binary sextics to harmonic cubics.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PairingMode {
    #[default]
    Literal,
    Apolar,
}

/// A genus-2 curve datum `y^2 = p(z)`: a sextic with distinct roots and its
/// cached numerical roots.
#[derive(Clone, Debug)]
pub struct HyperellipticData {
    pub sextic: UnivariatePoly,
    pub roots: Vec<ApproxScalar>,
}

impl HyperellipticData {
    pub fn new(sextic: UnivariatePoly, precision_bits: u32) -> Result<Self> {
        if sextic.degree() != 6 {
            return Err(CoreError::Domain(format!(
                "hyperelliptic datum needs a sextic, got degree {}",
                sextic.degree()
            )));
        }
        if discriminant(&sextic)?.is_zero() {
            return Err(CoreError::Degeneracy("sextic has a repeated root".into()));
        }
        let roots = roots(&sextic, precision_bits)?
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        Ok(HyperellipticData { sextic, roots })
    }
}

fn x1<T: Coeff>() -> TernaryForm<T> {
    let mut f = TernaryForm::zero(1);
    f.set((1, 0, 0), T::one());
    f
}

fn x2_times<T: Coeff>(c: ExactScalar) -> TernaryForm<T> {
    let mut f = TernaryForm::zero(1);
    f.set((0, 1, 0), T::one().ring_scale(&c));
    f
}

fn x3_times<T: Coeff>(c: ExactScalar) -> TernaryForm<T> {
    let mut f = TernaryForm::zero(1);
    f.set((0, 0, 1), T::one().ring_scale(&c));
    f
}

/// The seven degree-3 forms `H_k`: coefficients of `z^k` in
/// `(A + B z + C z^2)^3` with `A = x1 + i x2`, `B = 2 x3`, `C = -(x1 - i x2)`.
/// All seven are harmonic.
pub fn harmonic_basis<T: Coeff>() -> Vec<TernaryForm<T>> {
    let a = x1::<T>().add(&x2_times(ExactScalar::i()));
    let b = x3_times::<T>(ExactScalar::from_int(2));
    let c = x1::<T>().neg().add(&x2_times(ExactScalar::i()));
    let quad = [a, b, c];
    // cube the z-polynomial with ternary-form coefficients
    let mut cube: Vec<TernaryForm<T>> = vec![TernaryForm::zero(0)];
    cube[0] = {
        let mut one = TernaryForm::zero(0);
        one.set((0, 0, 0), T::one());
        one
    };
    for _ in 0..3 {
        let mut next = vec![TernaryForm::<T>::zero(cube[0].degree() + 1); cube.len() + 2];
        for (i, f) in cube.iter().enumerate() {
            for (j, g) in quad.iter().enumerate() {
                next[i + j] = next[i + j].add(&f.mul(g));
            }
        }
        cube = next;
    }
    debug_assert_eq!(cube.len(), 7);
    cube
}

/// The harmonic cubic attached to a polynomial of degree at most 6:
/// `sum_j w_j c_j H_{6-j}` with `w_j = 1` (literal) or `(-1)^j / C(6,j)`
/// (apolar). Generic over the coefficient ring.
pub fn harmonic_cubic_generic<T: Coeff>(coeffs: &[T], mode: PairingMode) -> TernaryForm<T> {
    let basis = harmonic_basis::<T>();
    let mut phi = TernaryForm::zero(3);
    for (j, c) in coeffs.iter().enumerate().take(7) {
        if c.is_zero() {
            continue;
        }
        let w = match mode {
            PairingMode::Literal => ExactScalar::one(),
            PairingMode::Apolar => {
                let b = binom_int(6, j as i64);
                let sign = if j % 2 == 1 { -1 } else { 1 };
                ExactScalar::from_rational(BigRational::new(sign.into(), b))
            }
        };
        phi = phi.add(&basis[6 - j].scale(&w).mul_coeff(c));
    }
    phi
}

/// The harmonic cubic of a concrete sextic (ascending coefficients `c_j`).
pub fn harmonic_cubic(p: &UnivariatePoly, mode: PairingMode) -> Result<TernaryForm> {
    if p.degree() > 6 {
        return Err(CoreError::Domain("expected degree at most 6".into()));
    }
    let coeffs: Vec<ExactScalar> = (0..=6).map(|i| p.coeff(i)).collect();
    Ok(harmonic_cubic_generic(&coeffs, mode))
}

/// `(x, x) = x1^2 + x2^2 + x3^2`.
pub fn euclidean_form<T: Coeff>() -> TernaryForm<T> {
    let mut f = TernaryForm::zero(2);
    f.set((2, 0, 0), T::one());
    f.set((0, 2, 0), T::one());
    f.set((0, 0, 2), T::one());
    f
}

/// The plane sextic `(x,x)^2 D^2(phi^2) - 16 (x,x) D(phi^2) - 3456 phi^2`
/// where `D` is the Laplacian.
pub fn trope_sextic_generic<T: Coeff>(coeffs: &[T], mode: PairingMode) -> TernaryForm<T> {
    let phi = harmonic_cubic_generic(coeffs, mode);
    let phi2 = phi.mul(&phi);
    let lap = phi2.laplacian();
    let lap2 = lap.laplacian();
    let xx = euclidean_form::<T>();
    let t1 = xx.mul(&xx).mul(&lap2);
    let t2 = xx.mul(&lap).scale(&ExactScalar::from_int(16));
    let t3 = phi2.scale(&ExactScalar::from_int(3456));
    t1.sub(&t2).sub(&t3)
}

pub fn trope_sextic(p: &UnivariatePoly, mode: PairingMode) -> Result<TernaryForm> {
    if p.degree() > 6 {
        return Err(CoreError::Domain("expected degree at most 6".into()));
    }
    let coeffs: Vec<ExactScalar> = (0..=6).map(|i| p.coeff(i)).collect();
    Ok(trope_sextic_generic(&coeffs, mode))
}

/// The sextic in the normalization that matches the determinant
/// computation exactly: apolar pairing with constants (16, 128),
/// `(x,x)^2 D^2(phi^2) - 16 (x,x) D(phi^2) - 128 phi^2`. Its value at
/// `(0,0,1)` is exactly `-32 (c3^2 - 4 c1 c5)`, and it is proportional to
/// the sextic factor of the degree-10 determinant form.
pub fn determinant_sextic(p: &UnivariatePoly) -> Result<TernaryForm> {
    if p.degree() > 6 {
        return Err(CoreError::Domain("expected degree at most 6".into()));
    }
    let coeffs: Vec<ExactScalar> = (0..=6).map(|i| p.coeff(i)).collect();
    let phi = harmonic_cubic_generic(&coeffs, PairingMode::Apolar);
    let phi2 = phi.mul(&phi);
    let lap = phi2.laplacian();
    let lap2 = lap.laplacian();
    let xx = euclidean_form::<ExactScalar>();
    let t1 = xx.mul(&xx).mul(&lap2);
    let t2 = xx.mul(&lap).scale(&ExactScalar::from_int(16));
    let t3 = phi2.scale(&ExactScalar::from_int(128));
    Ok(t1.sub(&t2).sub(&t3))
}

/// Exact rational point of the null conic at parameter `t`:
/// `x(t) = ((t^2-1)/2, -i(t^2+1)/2, -t)`, satisfying `(x,x) = 0` and
/// reducing the defining quadratic to `(z-t)^2`.
pub fn conic_point_exact(t: &ExactScalar) -> [ExactScalar; 3] {
    let half = ExactScalar::from_rat(1, 2);
    let t2 = t * t;
    [
        &(&t2 - &ExactScalar::one()) * &half,
        &(-ExactScalar::i()) * &(&(&t2 + &ExactScalar::one()) * &half),
        -t,
    ]
}

/// Approximate conic point; the distinguished point at infinity is the
/// direction `(1, -i, 0)/2`.
pub fn conic_point(t: &P1<ApproxScalar>, precision_bits: u32) -> [ApproxScalar; 3] {
    match t {
        P1::Finite(t) => {
            let half = ApproxScalar::from_exact(&ExactScalar::from_rat(1, 2), precision_bits);
            let i = ApproxScalar::from_exact(&ExactScalar::i(), precision_bits);
            let one = ApproxScalar::one(precision_bits);
            let t2 = t.mul(t);
            [
                t2.sub(&one).mul(&half),
                t2.add(&one).mul(&half).mul(&i).neg(),
                t.neg(),
            ]
        }
        P1::Infinity => {
            let half = ApproxScalar::from_exact(&ExactScalar::from_rat(1, 2), precision_bits);
            let i = ApproxScalar::from_exact(&ExactScalar::i(), precision_bits);
            [half.clone(), half.mul(&i).neg(), ApproxScalar::zero(precision_bits)]
        }
    }
}

/// Substitute the conic parametrization into a ternary form, producing an
/// exact univariate polynomial in the parameter of degree at most
/// `2 * degree`.
pub fn conic_pullback(f: &TernaryForm) -> UnivariatePoly {
    let half = ExactScalar::from_rat(1, 2);
    let mhalf_i = &(-ExactScalar::i()) * &half;
    // x1 = (t^2 - 1)/2, x2 = -i (t^2 + 1)/2, x3 = -t
    let comps = [
        UnivariatePoly::new(vec![-&half, ExactScalar::zero(), half.clone()]),
        UnivariatePoly::new(vec![mhalf_i.clone(), ExactScalar::zero(), mhalf_i]),
        UnivariatePoly::new(vec![ExactScalar::zero(), -ExactScalar::one()]),
    ];
    let mut acc = UnivariatePoly::zero();
    for (&(i, j, k), c) in f.terms() {
        let term = comps[0]
            .pow(i)
            .mul(&comps[1].pow(j))
            .mul(&comps[2].pow(k))
            .scale(c);
        acc = acc.add(&term);
    }
    acc
}

/// Intersection data of the plane sextic with the null conic.
#[derive(Clone, Debug)]
pub struct TangencyReport {
    pub mode: PairingMode,
    /// Tangency parameters with exact multiplicities.
    pub points: Vec<(ApproxScalar, u32)>,
    pub all_multiplicities_even: bool,
    /// Number of distinct finite tangency points.
    pub count: usize,
    pub finite_multiplicity_sum: i64,
    /// Intersection multiplicity absorbed at the conic point at infinity.
    pub infinity_multiplicity: i64,
    /// The degree-6 polynomial in the conic parameter whose square is
    /// `-1/3456` times the pullback.
    pub parameter_sextic: UnivariatePoly,
    /// The parameter sextic is proportional to `p` itself.
    pub parameters_are_roots_of_p: bool,
    /// The parameter sextic is proportional to `sum_j C(6,j) c_j (-t)^j`.
    pub parameters_are_reweighted_roots: bool,
}

fn proportional(a: &UnivariatePoly, b: &UnivariatePoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    if a.degree() != b.degree() {
        return false;
    }
    let la = a.leading();
    let lb = b.leading();
    a.scale(&lb) == b.scale(&la)
}

/// Pull the sextic back to the conic and decide tangency by exact
/// square-free multiplicities.
pub fn conic_tangency_report(
    p: &UnivariatePoly,
    mode: PairingMode,
    precision_bits: u32,
) -> Result<TangencyReport> {
    if p.degree() != 6 {
        return Err(CoreError::Domain("expected a sextic".into()));
    }
    let s = trope_sextic(p, mode)?;
    let pull = conic_pullback(&s);
    if pull.is_zero() {
        return Err(CoreError::Degeneracy(
            "sextic vanishes identically on the conic".into(),
        ));
    }
    // The (x,x)-terms die on the conic, so the pullback is -3456 phi(x(t))^2.
    let phi_pull = conic_pullback(&harmonic_cubic(p, mode)?);
    debug_assert_eq!(
        pull,
        phi_pull.mul(&phi_pull).scale(&ExactScalar::from_int(-3456))
    );
    let (_, factors) = pull.squarefree_decomposition()?;
    let mut points = Vec::new();
    let mut finite_sum = 0i64;
    let mut all_even = true;
    for (f, mult) in &factors {
        finite_sum += *mult as i64 * f.degree();
        if mult % 2 == 1 {
            all_even = false;
        }
        for (r, m) in roots(f, precision_bits)? {
            debug_assert_eq!(m, 1);
            points.push((r, *mult));
        }
    }
    let reweighted = UnivariatePoly::new(
        (0..=6)
            .map(|j| {
                let w = binom_int(6, j);
                let sign = if j % 2 == 1 { -1 } else { 1 };
                p.coeff(j as usize)
                    .scale_rat(&BigRational::from_integer(w * num::bigint::BigInt::from(sign)))
            })
            .collect(),
    );
    Ok(TangencyReport {
        mode,
        count: points.len(),
        all_multiplicities_even: all_even,
        finite_multiplicity_sum: finite_sum,
        infinity_multiplicity: 12 - pull.degree(),
        parameters_are_roots_of_p: proportional(&phi_pull, p),
        parameters_are_reweighted_roots: proportional(&phi_pull, &reweighted),
        parameter_sextic: phi_pull,
        points,
    })
}

/// Data for the line cut out by a marked pair of branch points: the linear
/// form `[q beta]`, its conic intersections, and the bitangency structure of
/// the quartic on it.
#[derive(Clone, Debug)]
pub struct LineReport {
    /// Coefficients of the linear form `v -> [q beta_v]`.
    pub line_form: [ExactScalar; 3],
    /// The form vanishes at the conic classes of the pair, exactly.
    pub pair_on_conic: bool,
    /// No other root of the sextic lies on the line (resultant test).
    pub others_off_line: bool,
    /// `[q b beta]` at the two basis classes of the line and the cross term.
    pub k1: ExactScalar,
    pub k2: ExactScalar,
    pub cross_term: ExactScalar,
    /// `K1 r(z2) + K2 r(z1) = 0`: the localized values match
    /// `r(z_i) c_i^2 / (2 (z_i - z_j))` up to one shared constant.
    pub localized_constant_ok: bool,
    /// Cross-ratio of the bitangent points against the pair on the line.
    pub harmonic_cross_ratio: ApproxScalar,
    pub harmonic_ok: bool,
}

/// Analyze the line `[q beta] = 0` for `q = (z - z1)(z - z2)` dividing `p`.
pub fn trope_line_intersection(
    p: &UnivariatePoly,
    pair: (&ExactScalar, &ExactScalar),
    precision_bits: u32,
) -> Result<LineReport> {
    let (z1, z2) = pair;
    if z1 == z2 {
        return Err(CoreError::Degeneracy("marked points must be distinct".into()));
    }
    if p.degree() != 6 {
        return Err(CoreError::Domain("expected a sextic".into()));
    }
    if discriminant(p)?.is_zero() {
        return Err(CoreError::Degeneracy("sextic has a repeated root".into()));
    }
    let q = UnivariatePoly::from_roots(ExactScalar::one(), &[z1.clone(), z2.clone()]);
    let (r, rem) = p.divrem(&q)?;
    if !rem.is_zero() {
        return Err(CoreError::Domain(
            "marked pair must be roots of the sextic".into(),
        ));
    }
    // Linear form on classes: evaluate [q beta] on the coordinate basis.
    let basis = [
        [ExactScalar::one(), ExactScalar::zero(), ExactScalar::zero()],
        [ExactScalar::zero(), ExactScalar::one(), ExactScalar::zero()],
        [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::one()],
    ];
    let mut line_form = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()];
    for (k, e) in basis.iter().enumerate() {
        line_form[k] = c4_brackets(&q, &r, e)?.q_beta;
    }
    let eval_line = |v: &[ExactScalar; 3]| -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (c, x) in line_form.iter().zip(v) {
            acc = &acc + &(c * x);
        }
        acc
    };
    let cc1 = conic_class(z1).v;
    let cc2 = conic_class(z2).v;
    let pair_on_conic = eval_line(&cc1).is_zero() && eval_line(&cc2).is_zero();
    let others_off_line = !crate::poly::resultant(&q, &r)?.is_zero();
    // Quartic bracket on the line through the two conic classes.
    let combo = |a: &ExactScalar, b: &ExactScalar| -> [ExactScalar; 3] {
        [
            &(&cc1[0] * a) + &(&cc2[0] * b),
            &(&cc1[1] * a) + &(&cc2[1] * b),
            &(&cc1[2] * a) + &(&cc2[2] * b),
        ]
    };
    let one = ExactScalar::one();
    let zero = ExactScalar::zero();
    let k1 = c4_brackets(&q, &r, &combo(&one, &zero))?.qb_beta;
    let k2 = c4_brackets(&q, &r, &combo(&zero, &one))?.qb_beta;
    let k11 = c4_brackets(&q, &r, &combo(&one, &one))?.qb_beta;
    let cross_term = &(&k11 - &k1) - &k2;
    // K1 / K2 = -r(z1)/r(z2) up to the shared constant.
    let localized_constant_ok = {
        let lhs = &k1 * &r.eval(z2);
        let rhs = &k2 * &r.eval(z1);
        (&lhs + &rhs).is_zero()
    };
    // Bitangent points c1/c2 = +-sqrt(-K2/K1) harmonically separate the pair
    // (coordinates (1:0) and (0:1) on the line).
    let (harmonic_cross_ratio, harmonic_ok) = if k1.is_zero() || k2.is_zero() {
        (ApproxScalar::zero(precision_bits), false)
    } else {
        let ratio = ApproxScalar::from_exact(&(&(-&k2) / &k1), precision_bits + 32);
        let s = ratio.sqrt();
        let cr = cross_ratio(
            &P1::Infinity,
            &P1::finite(ApproxScalar::zero(precision_bits + 32)),
            &P1::finite(s.clone()),
            &P1::finite(s.neg()),
        )?;
        let dev = cr.add(&ApproxScalar::one(precision_bits + 32));
        (cr.with_precision(precision_bits), dev.abs_le_pow2(-64))
    };
    Ok(LineReport {
        line_form,
        pair_on_conic,
        others_off_line,
        k1,
        k2,
        cross_term,
        localized_constant_ok,
        harmonic_cross_ratio,
        harmonic_ok,
    })
}
