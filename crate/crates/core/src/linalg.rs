//! Least squares for the tiny (at most three column) grey-model designs.

use crate::error::{GreyError, Result};
use crate::scalar::Real;

/// Relative pivot magnitude below which the normal equations count as singular.
pub const SINGULAR_PIVOT: f64 = 1e-12;

fn pivot_threshold<T: Real>() -> T {
    T::lit(SINGULAR_PIVOT).max(T::epsilon() * T::lit(16.0))
}

/// Solves the square system `m * x = rhs` by Gaussian elimination with
/// partial pivoting. `m` is row-major `p x p`.
pub fn solve_dense<T: Real>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Result<Vec<T>> {
    let p = rhs.len();
    if m.len() != p || m.iter().any(|row| row.len() != p) {
        return Err(GreyError::InvalidInput("system is not square".into()));
    }
    let scale = m
        .iter()
        .flatten()
        .fold(T::zero(), |acc, v| acc.max(v.abs()));
    if !scale.is_finite() || scale <= T::zero() {
        return Err(GreyError::SingularDesign { pivot: 0.0 });
    }
    let threshold = pivot_threshold::<T>();

    for col in 0..p {
        let (best, best_abs) =
            (col..p)
                .map(|r| (r, m[r][col].abs()))
                .fold(
                    (col, -T::one()),
                    |acc, cur| if cur.1 > acc.1 { cur } else { acc },
                );
        let relative = best_abs / scale;
        if relative.is_nan() || relative < threshold {
            return Err(GreyError::SingularDesign {
                pivot: relative.to_f64_lossy(),
            });
        }
        m.swap(col, best);
        rhs.swap(col, best);
        for r in col + 1..p {
            let factor = m[r][col] / m[col][col];
            if factor == T::zero() {
                continue;
            }
            let (upper, lower) = m.split_at_mut(r);
            for (dst, &src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst = *dst - factor * src;
            }
            let delta = factor * rhs[col];
            rhs[r] = rhs[r] - delta;
        }
    }

    let mut x = vec![T::zero(); p];
    for r in (0..p).rev() {
        let mut acc = rhs[r];
        for c in r + 1..p {
            acc = acc - m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    Ok(x)
}

/// `argmin ||B phi - y||` via the normal equations `(B^T B) phi = B^T y`.
///
/// The normal matrix is equilibrated to unit diagonal before the solve, so
/// the pivot test measures collinearity of the columns rather than their
/// relative magnitudes.
pub fn solve_least_squares<T: Real>(design: &[Vec<T>], y: &[T]) -> Result<Vec<T>> {
    if design.len() != y.len() {
        return Err(GreyError::LengthMismatch {
            observed: y.len(),
            predicted: design.len(),
        });
    }
    let p = design.first().map_or(0, Vec::len);
    if p == 0 || design.iter().any(|row| row.len() != p) {
        return Err(GreyError::InvalidInput(
            "design matrix is empty or ragged".into(),
        ));
    }
    if design.len() < p {
        return Err(GreyError::InvalidInput(format!(
            "{} rows cannot determine {} parameters",
            design.len(),
            p
        )));
    }
    let mut normal = vec![vec![T::zero(); p]; p];
    let mut rhs = vec![T::zero(); p];
    for (row, &target) in design.iter().zip(y) {
        for i in 0..p {
            for j in 0..p {
                normal[i][j] = normal[i][j] + row[i] * row[j];
            }
            rhs[i] = rhs[i] + row[i] * target;
        }
    }
    let mut scale = Vec::with_capacity(p);
    for (i, row) in normal.iter().enumerate() {
        let d = row[i];
        if !d.is_finite() || d <= T::zero() {
            return Err(GreyError::SingularDesign { pivot: 0.0 });
        }
        scale.push(d.sqrt());
    }
    for i in 0..p {
        for j in 0..p {
            normal[i][j] = normal[i][j] / (scale[i] * scale[j]);
        }
        rhs[i] = rhs[i] / scale[i];
    }
    let mut phi = solve_dense(normal, rhs)?;
    for (v, s) in phi.iter_mut().zip(&scale) {
        *v = *v / *s;
    }
    Ok(phi)
}
