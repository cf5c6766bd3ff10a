//! Cross-check tying the plane sextic to the first-principles determinant
//! form: at a symbolic class v, the determinant of the 2x2 obstruction form
//! (over a rational kernel basis) factors exactly as
//! `v1^2 * (v1^2 - 4 v0 v2) * S(v)` — the basis framing squared, the null
//! conic, and a sextic — and `S` is proportional to the pullback of
//! `determinant_sextic` under `x(v) = ((v2-v0)/2, -i(v2+v0)/2, -v1/2)`.

use std::collections::BTreeMap;

use sl2geom::dolbeault::{beta_rep, bracket, solve_dbar, YExpansion};
use sl2geom::mpoly::MPoly;
use sl2geom::poly::UnivariatePoly;
use sl2geom::scalar::ExactScalar;
use sl2geom::ternary::TernaryForm;
use sl2geom::trope::determinant_sextic;

fn es(v: i64) -> ExactScalar {
    ExactScalar::from_int(v)
}

/// View an MPoly in (v0, v1, v2) as a polynomial in v1 with coefficients in
/// (v0, v2).
fn by_v1(p: &MPoly) -> BTreeMap<u16, MPoly> {
    let mut out: BTreeMap<u16, MPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let e0 = *e.first().unwrap_or(&0);
        let e1 = if e.len() > 1 { e[1] } else { 0 };
        let e2 = if e.len() > 2 { e[2] } else { 0 };
        let mono = MPoly::var(0)
            .pow(e0 as u32)
            .mul(&MPoly::var(2).pow(e2 as u32))
            .scale(c);
        let entry = out.entry(e1).or_insert_with(MPoly::zero);
        *entry = entry.add(&mono);
    }
    out
}

fn from_v1(map: &BTreeMap<u16, MPoly>) -> MPoly {
    let mut acc = MPoly::zero();
    for (e1, c) in map {
        acc = acc.add(&c.mul(&MPoly::var(1).pow(*e1 as u32)));
    }
    acc
}

fn div_v1(p: &MPoly, k: u16) -> Option<MPoly> {
    let m = by_v1(p);
    if m.keys().any(|&e| e < k) {
        return None;
    }
    Some(from_v1(&m.into_iter().map(|(e, c)| (e - k, c)).collect()))
}

/// Exact division by `v1^2 - 4 v0 v2` (monic in v1); `None` on nonzero
/// remainder.
fn div_conic(p: &MPoly) -> Option<MPoly> {
    let mut m = by_v1(p);
    let mut q: BTreeMap<u16, MPoly> = BTreeMap::new();
    let four_v0v2 = MPoly::var(0).mul(&MPoly::var(2)).scale(&es(4));
    while let Some(&deg) = m.keys().max() {
        let lead = m.get(&deg).cloned().unwrap_or_else(MPoly::zero);
        if lead.is_zero() {
            m.remove(&deg);
            continue;
        }
        if deg < 2 {
            return if m.values().all(|c| c.is_zero()) {
                Some(from_v1(&q))
            } else {
                None
            };
        }
        q.insert(deg - 2, lead.clone());
        let e = m.entry(deg).or_insert_with(MPoly::zero);
        *e = e.sub(&lead);
        if e.is_zero() {
            m.remove(&deg);
        }
        let e = m.entry(deg - 2).or_insert_with(MPoly::zero);
        *e = e.add(&lead.mul(&four_v0v2));
        if e.is_zero() {
            m.remove(&(deg - 2));
        }
    }
    Some(from_v1(&q))
}

/// Pull a ternary form back along `x(v)`.
fn to_class_coordinates(f: &TernaryForm<ExactScalar>) -> MPoly {
    let half = ExactScalar::from_rat(1, 2);
    let mi_half = &(-ExactScalar::i()) * &half;
    let x1 = MPoly::var(0)
        .scale(&(-&half))
        .add(&MPoly::var(2).scale(&half));
    let x2 = MPoly::var(0)
        .scale(&mi_half)
        .add(&MPoly::var(2).scale(&mi_half));
    let x3 = MPoly::var(1).scale(&(-&half));
    let xs = [&x1, &x2, &x3];
    let mut acc = MPoly::zero();
    for (&(i, j, k), c) in f.terms() {
        let mut term = MPoly::constant(c.clone());
        for (axis, &e) in [i, j, k].iter().enumerate() {
            for _ in 0..e {
                term = term.mul(xs[axis]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

#[test]
fn determinant_form_factors_through_the_sextic() {
    for coeffs in [
        // distinct rational roots
        vec![1i64, 0, -1, 0, 0, 0, 0],
        vec![-36, 0, 49, 0, -14, 0, 1],
    ] {
        // p with degree 6; pad the first example to a sextic with distinct roots
        let p = if coeffs.len() == 7 && coeffs[6] != 0 {
            UnivariatePoly::from_int_coeffs(&coeffs)
        } else {
            UnivariatePoly::from_roots(
                es(1),
                &[es(1), es(-1), es(2), es(-2), es(3), es(-3)],
            )
        };
        let v: [MPoly; 3] = [MPoly::var(0), MPoly::var(1), MPoly::var(2)];
        let beta = beta_rep(&v);
        // rational basis of { u : [beta u] = 0 }
        let u1 = [v[1].clone(), v[0].scale(&es(-2)), MPoly::zero()];
        let u2 = [MPoly::zero(), v[2].scale(&es(-2)), v[1].clone()];
        let b1 = solve_dbar(&beta.mul_zpoly(&u1, 2)).unwrap();
        let b2 = solve_dbar(&beta.mul_zpoly(&u2, 2)).unwrap();
        let p_beta = beta.mul_poly(&p, 6);
        let entry = |x: &YExpansion<MPoly>, y: &YExpansion<MPoly>| -> MPoly {
            bracket(&x.mul(y).mul(&p_beta)).unwrap()
        };
        let det = entry(&b1, &b1)
            .mul(&entry(&b2, &b2))
            .sub(&entry(&b1, &b2).pow(2));
        let g = div_v1(&det, 2).expect("framing factor v1^2");
        let s_true = div_conic(&g).expect("null conic factor");
        assert_eq!(s_true.total_degree(), 6);
        // proportional to the calibrated plane sextic
        let s_plane = to_class_coordinates(&determinant_sextic(&p).unwrap());
        let (e0, c0) = s_true.terms().next().unwrap();
        let c1 = s_plane.coeff(e0);
        assert!(!c1.is_zero());
        assert_eq!(s_true.scale(&c1), s_plane.scale(c0));
    }
}
