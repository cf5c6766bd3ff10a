//! Partial moment maps of a 2x2x2 tensor.
//!
//! Slicing `psi` along one leg writes it as `u1 (x) e1 + u2 (x) e2` with
//! `e1, e2` in the product of the other two factors; the product symplectic
//! form pairs those slices, and
//! `tr phi^2 = 2 <u1,u2>^2 ((e1,e1)(e2,e2) - (e1,e2)^2)`
//! comes out the same whichever leg is chosen. Everything here is exact and
//! generic over the coefficient ring, so the equality can be established as
//! a polynomial identity in the eight entries and three pairings.

use crate::error::{CoreError, Result};
use crate::scalar::{Coeff, ExactScalar};

/// A tensor `psi_{ijk} u_i (x) v_j (x) w_k` with symplectic basis volumes
/// `<u1,u2>`, `<v1,v2>`, `<w1,w2>` on the three factors.
#[derive(Clone, PartialEq, Debug)]
pub struct TripleTensor<T: Coeff = ExactScalar> {
    /// `entries[i][j][k]` is the coefficient of `u_{i+1} (x) v_{j+1} (x) w_{k+1}`.
    pub entries: [[[T; 2]; 2]; 2],
    /// `pairings[l]` is the symplectic volume of the chosen basis of leg `l`.
    pub pairings: [T; 3],
}

/// Which tensor factor to slice along.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Leg {
    First,
    Second,
    Third,
}

impl Leg {
    pub const ALL: [Leg; 3] = [Leg::First, Leg::Second, Leg::Third];

    pub fn index(self) -> usize {
        match self {
            Leg::First => 0,
            Leg::Second => 1,
            Leg::Third => 2,
        }
    }
}

/// The two slices of a tensor along a leg, each a 2x2 matrix in the bases of
/// the remaining factors (in the order the legs appear).
pub type Slices<T> = ([[T; 2]; 2], [[T; 2]; 2]);

impl<T: Coeff> TripleTensor<T> {
    pub fn new(entries: [[[T; 2]; 2]; 2], pairings: [T; 3]) -> Result<Self> {
        if pairings.iter().any(|p| p.is_zero()) {
            return Err(CoreError::Domain("all three pairings must be nonzero".into()));
        }
        Ok(TripleTensor { entries, pairings })
    }

    pub fn zero_entries_with_unit_pairings() -> Self {
        let z = || T::zero();
        TripleTensor {
            entries: [
                [[z(), z()], [z(), z()]],
                [[z(), z()], [z(), z()]],
            ],
            pairings: [T::one(), T::one(), T::one()],
        }
    }

    /// Write `psi = b_1 (x) e1 + b_2 (x) e2` where `b` is the basis of the
    /// chosen leg; `e1, e2` live in the remaining two factors.
    pub fn slice(&self, leg: Leg) -> Slices<T> {
        let e = &self.entries;
        let get = |i: usize, j: usize, k: usize| e[i][j][k].clone();
        match leg {
            Leg::First => (
                [[get(0, 0, 0), get(0, 0, 1)], [get(0, 1, 0), get(0, 1, 1)]],
                [[get(1, 0, 0), get(1, 0, 1)], [get(1, 1, 0), get(1, 1, 1)]],
            ),
            Leg::Second => (
                [[get(0, 0, 0), get(0, 0, 1)], [get(1, 0, 0), get(1, 0, 1)]],
                [[get(0, 1, 0), get(0, 1, 1)], [get(1, 1, 0), get(1, 1, 1)]],
            ),
            Leg::Third => (
                [[get(0, 0, 0), get(0, 1, 0)], [get(1, 0, 0), get(1, 1, 0)]],
                [[get(0, 0, 1), get(0, 1, 1)], [get(1, 0, 1), get(1, 1, 1)]],
            ),
        }
    }

    /// Rebuild the tensor from slices along a leg (round-trip of `slice`).
    pub fn from_slices(leg: Leg, slices: Slices<T>, pairings: [T; 3]) -> Result<Self> {
        if pairings.iter().any(|p| p.is_zero()) {
            return Err(CoreError::Domain("all three pairings must be nonzero".into()));
        }
        let mut t = TripleTensor {
            entries: TripleTensor::<T>::zero_entries_with_unit_pairings().entries,
            pairings,
        };
        let (e1, e2) = slices;
        for a in 0..2 {
            for b in 0..2 {
                for (idx, e) in [&e1, &e2].into_iter().enumerate() {
                    let v = e[a][b].clone();
                    match leg {
                        Leg::First => t.entries[idx][a][b] = v,
                        Leg::Second => t.entries[a][idx][b] = v,
                        Leg::Third => t.entries[a][b][idx] = v,
                    }
                }
            }
        }
        Ok(t)
    }

    /// Product symplectic pairing of two slices on the factors complementary
    /// to `leg`: `(e, f) = <.,.><.,.> tr(E adj(F))`.
    pub fn complement_pairing(&self, leg: Leg, e: &[[T; 2]; 2], f: &[[T; 2]; 2]) -> T {
        let (p, q) = match leg {
            Leg::First => (&self.pairings[1], &self.pairings[2]),
            Leg::Second => (&self.pairings[0], &self.pairings[2]),
            Leg::Third => (&self.pairings[0], &self.pairings[1]),
        };
        // tr(E adj(F)) = e00 f11 - e01 f10 - e10 f01 + e11 f00
        let s = e[0][0]
            .ring_mul(&f[1][1])
            .ring_sub(&e[0][1].ring_mul(&f[1][0]))
            .ring_sub(&e[1][0].ring_mul(&f[0][1]))
            .ring_add(&e[1][1].ring_mul(&f[0][0]));
        s.ring_mul(p).ring_mul(q)
    }

    /// The symmetric 2-tensor on the chosen leg, as quadratic coefficients
    /// `[(e1,e1), 2(e1,e2), (e2,e2)]` (the `b0 z^2 + b1 z + b2` convention).
    pub fn phi(&self, leg: Leg) -> [T; 3] {
        let (e1, e2) = self.slice(leg);
        let p11 = self.complement_pairing(leg, &e1, &e1);
        let p12 = self.complement_pairing(leg, &e1, &e2);
        let p22 = self.complement_pairing(leg, &e2, &e2);
        [p11, p12.ring_add(&p12), p22]
    }

    /// `tr phi^2 = 2 <u1,u2>^2 ((e1,e1)(e2,e2) - (e1,e2)^2)` for the chosen
    /// leg, exactly as displayed.
    pub fn trace_phi_squared(&self, leg: Leg) -> T {
        let (e1, e2) = self.slice(leg);
        let p11 = self.complement_pairing(leg, &e1, &e1);
        let p12 = self.complement_pairing(leg, &e1, &e2);
        let p22 = self.complement_pairing(leg, &e2, &e2);
        let own = &self.pairings[leg.index()];
        let bracket = p11.ring_mul(&p22).ring_sub(&p12.ring_mul(&p12));
        bracket
            .ring_mul(own)
            .ring_mul(own)
            .ring_scale(&ExactScalar::from_int(2))
    }
}

/// Slice data in the normal form `e1 = v1 (x) w1 + v2 (x) w2`,
/// `e2 = v1 (x) (a w1 + b w2) + v2 (x) (c w1 + d w2)`: the matrix of `e2`
/// relative to an invertible `e1`.
#[derive(Clone, PartialEq, Debug)]
pub enum SliceData<T: Coeff> {
    /// `e1` invertible: `(a, b, c, d)` with `[[a,b],[c,d]] = E2 E1^{-1}`.
    NormalForm { a: T, b: T, c: T, d: T },
    /// `e1` singular as a 2x2 matrix; the normal form does not exist.
    Degenerate,
}

/// Extract `(a, b, c, d)` for an exact tensor when the first slice is
/// invertible; `Degenerate` otherwise.
pub fn slice_data(t: &TripleTensor<ExactScalar>, leg: Leg) -> SliceData<ExactScalar> {
    let (e1, e2) = t.slice(leg);
    let det = &(&e1[0][0] * &e1[1][1]) - &(&e1[0][1] * &e1[1][0]);
    if det.is_zero() {
        return SliceData::Degenerate;
    }
    let inv = det.recip().unwrap();
    let adj = [
        [&e1[1][1] * &inv, -&(&e1[0][1] * &inv)],
        [-&(&e1[1][0] * &inv), &e1[0][0] * &inv],
    ];
    let mut m = [
        [ExactScalar::zero(), ExactScalar::zero()],
        [ExactScalar::zero(), ExactScalar::zero()],
    ];
    for i in 0..2 {
        for j in 0..2 {
            let mut s = ExactScalar::zero();
            for k in 0..2 {
                s = &s + &(&e2[i][k] * &adj[k][j]);
            }
            m[i][j] = s;
        }
    }
    SliceData::NormalForm {
        a: m[0][0].clone(),
        b: m[0][1].clone(),
        c: m[1][0].clone(),
        d: m[1][1].clone(),
    }
}

/// Outcome of checking `tr phi_1^2 = tr phi_2^2 = tr phi_3^2` on one tensor.
#[derive(Clone, Debug)]
pub struct TraceReport<T: Coeff> {
    pub traces: [T; 3],
    pub all_equal: bool,
    pub common: T,
    /// Informational only: Cayley's hyperdeterminant of the entries. With
    /// unit pairings the observed relation is `common = -2 * hyperdet`;
    /// logged, never asserted.
    pub hyperdeterminant: T,
}

/// Compute the three traces and report whether they agree.
pub fn verify_trace_equality<T: Coeff>(t: &TripleTensor<T>) -> TraceReport<T> {
    let traces = [
        t.trace_phi_squared(Leg::First),
        t.trace_phi_squared(Leg::Second),
        t.trace_phi_squared(Leg::Third),
    ];
    let all_equal = traces[0] == traces[1] && traces[1] == traces[2];
    TraceReport {
        common: traces[0].clone(),
        all_equal,
        hyperdeterminant: hyperdeterminant(t),
        traces,
    }
}

/// Cayley's 2x2x2 hyperdeterminant of the entries (ignores pairings).
pub fn hyperdeterminant<T: Coeff>(t: &TripleTensor<T>) -> T {
    let a = |i: usize, j: usize, k: usize| t.entries[i][j][k].clone();
    let sq = |x: T| x.ring_mul(&x);
    let mut acc = sq(a(0, 0, 0).ring_mul(&a(1, 1, 1)))
        .ring_add(&sq(a(0, 0, 1).ring_mul(&a(1, 1, 0))))
        .ring_add(&sq(a(0, 1, 0).ring_mul(&a(1, 0, 1))))
        .ring_add(&sq(a(1, 0, 0).ring_mul(&a(0, 1, 1))));
    let pairs = [
        [a(0, 0, 0), a(0, 0, 1), a(1, 1, 0), a(1, 1, 1)],
        [a(0, 0, 0), a(0, 1, 0), a(1, 0, 1), a(1, 1, 1)],
        [a(0, 0, 0), a(1, 0, 0), a(0, 1, 1), a(1, 1, 1)],
        [a(0, 0, 1), a(0, 1, 0), a(1, 0, 1), a(1, 1, 0)],
        [a(0, 0, 1), a(1, 0, 0), a(0, 1, 1), a(1, 1, 0)],
        [a(0, 1, 0), a(1, 0, 0), a(0, 1, 1), a(1, 0, 1)],
    ];
    for q in pairs {
        let prod = q[0].ring_mul(&q[1]).ring_mul(&q[2]).ring_mul(&q[3]);
        acc = acc.ring_sub(&prod.ring_scale(&ExactScalar::from_int(2)));
    }
    let quad1 = a(0, 0, 0)
        .ring_mul(&a(0, 1, 1))
        .ring_mul(&a(1, 0, 1))
        .ring_mul(&a(1, 1, 0));
    let quad2 = a(0, 0, 1)
        .ring_mul(&a(0, 1, 0))
        .ring_mul(&a(1, 0, 0))
        .ring_mul(&a(1, 1, 1));
    acc.ring_add(&quad1.ring_add(&quad2).ring_scale(&ExactScalar::from_int(4)))
}

/// Apply one SL(2) element per leg to the entries. Determinant-1
/// substitutions preserve the symplectic volumes, so pairings are unchanged.
pub fn act_three(
    gs: [&crate::binary_forms::Sl2Action; 3],
    t: &TripleTensor<ExactScalar>,
) -> TripleTensor<ExactScalar> {
    let mats: Vec<[[ExactScalar; 2]; 2]> = gs
        .iter()
        .map(|g| [[g.a.clone(), g.b.clone()], [g.c.clone(), g.d.clone()]])
        .collect();
    let mut out = TripleTensor::<ExactScalar>::zero_entries_with_unit_pairings();
    out.pairings = t.pairings.clone();
    for l in 0..2 {
        for m in 0..2 {
            for n in 0..2 {
                let mut s = ExactScalar::zero();
                for i in 0..2 {
                    for j in 0..2 {
                        for k in 0..2 {
                            // basis vectors transform by columns: g e_i = sum_j g[j][i] e_j
                            let w = &(&mats[0][l][i] * &mats[1][m][j]) * &mats[2][n][k];
                            s = &s + &(&w * &t.entries[i][j][k]);
                        }
                    }
                }
                out.entries[l][m][n] = s;
            }
        }
    }
    out
}
