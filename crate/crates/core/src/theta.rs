//! Theta characteristics and two-torsion for a genus-2 hyperelliptic curve,
//! in the standard combinatorial model: subsets of the six branch points
//! modulo complement. Odd-size classes (normalized size 1 or 3) are the 16
//! theta characteristics, even-size classes (normalized size 0 or 2) the 16
//! two-torsion points; translation is symmetric difference.

use crate::error::{CoreError, Result};

const FULL: u8 = 0b11_1111;

fn canonical(mask: u8) -> u8 {
    let mask = mask & FULL;
    let comp = !mask & FULL;
    match mask.count_ones() {
        0..=2 => mask,
        4..=6 => comp,
        3 => mask.min(comp),
        _ => unreachable!(),
    }
}

/// A theta characteristic: an odd-size subset class of the branch points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ThetaChar(u8);

/// A two-torsion point: an even-size subset class of the branch points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct TwoTorsion(u8);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Odd,
    Even,
}

impl ThetaChar {
    /// From branch-point indices in 1..=6.
    pub fn from_points(points: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &p in points {
            if !(1..=6).contains(&p) {
                return Err(CoreError::Domain(format!("branch point {p} out of 1..=6")));
            }
            mask |= 1 << (p - 1);
        }
        if mask.count_ones().is_multiple_of(2) {
            return Err(CoreError::Domain(
                "theta characteristic needs an odd-size subset".into(),
            ));
        }
        Ok(ThetaChar(canonical(mask)))
    }

    pub fn points(&self) -> Vec<usize> {
        (1..=6).filter(|p| self.0 & (1 << (p - 1)) != 0).collect()
    }

    pub fn parity(&self) -> Parity {
        if self.0.count_ones() == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn translate(&self, e: &TwoTorsion) -> ThetaChar {
        ThetaChar(canonical(self.0 ^ e.0))
    }

    pub fn all() -> Vec<ThetaChar> {
        let mut out: Vec<ThetaChar> = (0u8..=FULL)
            .filter(|m| m.count_ones() % 2 == 1)
            .map(|m| ThetaChar(canonical(m)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl TwoTorsion {
    pub fn zero() -> Self {
        TwoTorsion(0)
    }

    /// From a pair of branch points (or an empty slice for the identity).
    pub fn from_points(points: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &p in points {
            if !(1..=6).contains(&p) {
                return Err(CoreError::Domain(format!("branch point {p} out of 1..=6")));
            }
            mask |= 1 << (p - 1);
        }
        if mask.count_ones() % 2 == 1 {
            return Err(CoreError::Domain("two-torsion needs an even-size subset".into()));
        }
        Ok(TwoTorsion(canonical(mask)))
    }

    pub fn points(&self) -> Vec<usize> {
        (1..=6).filter(|p| self.0 & (1 << (p - 1)) != 0).collect()
    }

    pub fn compose(&self, other: &TwoTorsion) -> TwoTorsion {
        TwoTorsion(canonical(self.0 ^ other.0))
    }

    pub fn all() -> Vec<TwoTorsion> {
        let mut out: Vec<TwoTorsion> = (0u8..=FULL)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|m| TwoTorsion(canonical(m)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The 16 x 16 incidence table of tropes and nodes for a chosen base spin
/// structure: the node indexed by `e` lies on the trope indexed by `e'`
/// exactly when `kappa + e' + e` is odd.
#[derive(Clone, Debug)]
pub struct KummerIncidence {
    pub base: ThetaChar,
    pub tropes: Vec<TwoTorsion>,
    pub nodes: Vec<TwoTorsion>,
    /// `table[i][j]`: node j lies on trope i.
    pub table: Vec<Vec<bool>>,
}

impl KummerIncidence {
    pub fn row_sums(&self) -> Vec<usize> {
        self.table
            .iter()
            .map(|row| row.iter().filter(|&&b| b).count())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .map(|j| self.table.iter().filter(|row| row[j]).count())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.table.len();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }
}

/// Build the incidence table for base spin structure `kappa`.
pub fn kummer_incidence(kappa: &ThetaChar) -> KummerIncidence {
    let torsion = TwoTorsion::all();
    let table = torsion
        .iter()
        .map(|trope_shift| {
            let trope_char = kappa.translate(trope_shift);
            torsion
                .iter()
                .map(|node| trope_char.translate(node).parity() == Parity::Odd)
                .collect()
        })
        .collect();
    KummerIncidence {
        base: *kappa,
        tropes: torsion.clone(),
        nodes: torsion,
        table,
    }
}
