//! Small dense linear algebra over fixed-point complex scalars: solve,
//! null vectors and least squares. Matrices here never exceed a few dozen
//! rows, so Gaussian elimination with partial pivoting is enough.

use crate::approx::ApproxScalar;
use crate::error::{CoreError, Result};

pub type Mat = Vec<Vec<ApproxScalar>>;

fn threshold_log2(prec: u32) -> i64 {
    -(prec as i64) / 2
}

/// Forward elimination with partial pivoting. Returns the reduced matrix,
/// pivot columns, and the permutation-extended right-hand sides.
fn eliminate(mut a: Mat, mut rhs: Vec<Vec<ApproxScalar>>, pivot_floor_log2: i64) -> (Mat, Vec<Vec<ApproxScalar>>, Vec<usize>) {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let mut best = row;
        for r in (row + 1)..rows {
            if a[r][col].abs_cmp(&a[best][col]) == std::cmp::Ordering::Greater {
                best = r;
            }
        }
        if a[best][col].abs_le_pow2(pivot_floor_log2) {
            continue; // numerically zero column below current row
        }
        a.swap(row, best);
        rhs.swap(row, best);
        let inv = a[row][col].recip().expect("pivot nonzero");
        for r in 0..rows {
            if r == row {
                continue;
            }
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..cols {
                let sub = factor.mul(&a[row][c]);
                a[r][c] = a[r][c].sub(&sub);
            }
            for k in 0..rhs[r].len() {
                let sub = factor.mul(&rhs[row][k]);
                rhs[r][k] = rhs[r][k].sub(&sub);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, rhs, pivots)
}

/// Solve a square system `A x = b`.
pub fn solve(a: &Mat, b: &[ApproxScalar], prec: u32, context: &str) -> Result<Vec<ApproxScalar>> {
    let n = a.len();
    let rhs: Vec<Vec<ApproxScalar>> = b.iter().map(|x| vec![x.clone()]).collect();
    // Scale-aware pivot floor: relative to the largest matrix entry.
    let (red, rhs, pivots) = eliminate(a.clone(), rhs, threshold_log2(prec) - 8);
    if pivots.len() < n {
        return Err(CoreError::Conditioning {
            context: context.into(),
            rank: pivots.len(),
            expected: n,
        });
    }
    let mut x = vec![ApproxScalar::zero(prec); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rhs[r][0].div(&red[r][col])?;
    }
    Ok(x)
}

/// A nonzero kernel vector of a (numerically) rank-deficient square matrix,
/// normalized so its largest-modulus entry is exactly 1. Also reports the
/// numerical rank so callers can warn when the kernel is not 1-dimensional.
pub fn null_vector(a: &Mat, prec: u32, context: &str) -> Result<(Vec<ApproxScalar>, usize)> {
    let n = a.len();
    let scale = a
        .iter()
        .flatten()
        .fold(ApproxScalar::zero(prec), |acc, x| {
            if x.abs_cmp(&acc) == std::cmp::Ordering::Greater {
                x.clone()
            } else {
                acc
            }
        });
    // Pivot floor relative to the matrix scale.
    let scale_bits = {
        let (re, im) = scale.to_f64();
        let m = (re * re + im * im).sqrt();
        if m > 0.0 { m.log2().ceil() as i64 } else { 0 }
    };
    let floor = threshold_log2(prec) + scale_bits;
    let (red, _, pivots) = eliminate(a.clone(), vec![Vec::new(); n], floor);
    let rank = pivots.len();
    if rank == n {
        return Err(CoreError::Conditioning {
            context: format!("{context}: matrix has full numerical rank"),
            rank,
            expected: n - 1,
        });
    }
    // Choose the first free column, set it to 1, back-substitute.
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut x = vec![ApproxScalar::zero(prec); n];
    x[free] = ApproxScalar::one(prec);
    for (r, &col) in pivots.iter().enumerate() {
        // red[r][col] * x[col] + red[r][free] * 1 = 0
        x[col] = red[r][free].neg().div(&red[r][col])?;
    }
    // Normalize: largest-modulus entry becomes exactly 1.
    let mut best = 0;
    for i in 1..n {
        if x[i].abs_cmp(&x[best]) == std::cmp::Ordering::Greater {
            best = i;
        }
    }
    let inv = x[best].recip()?;
    let x = x.iter().map(|v| v.mul(&inv)).collect();
    Ok((x, rank))
}

/// Least squares via the normal equations `A^H A x = A^H b`.
/// Returns the solution and the max-norm residual of `A x - b`.
pub fn least_squares(
    a: &Mat,
    b: &[ApproxScalar],
    prec: u32,
    context: &str,
) -> Result<(Vec<ApproxScalar>, ApproxScalar)> {
    let rows = a.len();
    let cols = a[0].len();
    if rows < cols {
        return Err(CoreError::Conditioning {
            context: format!("{context}: {rows} samples for {cols} unknowns"),
            rank: rows,
            expected: cols,
        });
    }
    let mut gram = vec![vec![ApproxScalar::zero(prec); cols]; cols];
    let mut rhs = vec![ApproxScalar::zero(prec); cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut s = ApproxScalar::zero(prec);
            for r in 0..rows {
                s = s.add(&a[r][i].conj().mul(&a[r][j]));
            }
            gram[i][j] = s;
        }
        let mut s = ApproxScalar::zero(prec);
        for r in 0..rows {
            s = s.add(&a[r][i].conj().mul(&b[r]));
        }
        rhs[i] = s;
    }
    let x = solve(&gram, &rhs, prec, context)?;
    let mut residual = ApproxScalar::zero(prec);
    for r in 0..rows {
        let mut v = b[r].neg();
        for c in 0..cols {
            v = v.add(&a[r][c].mul(&x[c]));
        }
        if v.norm_sqr().abs_cmp(&residual.norm_sqr()) == std::cmp::Ordering::Greater {
            residual = v.norm_sqr().sqrt();
        }
    }
    Ok((x, residual))
}
