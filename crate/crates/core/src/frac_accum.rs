//! Fractional accumulated generating operation (r-AGO) and its inverse.
//!
//! Both operators are upper-triangular Toeplitz, so they are applied as a
//! causal convolution with a coefficient kernel:
//!
//! ```text
//! x_r[k] = sum_{i=0..=k} c[k - i] * x[i]      (0-indexed storage)
//! ```
//!
//! Index `k` here is position `k + 1` in the usual 1-indexed notation, so
//! `x_r[0] == x[0]` always. Forward coefficients are `r(r+1)...(r+i-1)/i!`;
//! inverse coefficients are `(-1)^i * C(r, i)`, which is the exact inverse
//! kernel for every `r > 0`, integer or not.
//!
//! The explicit matrices are only needed for checking and debugging.

use std::fmt::{self, LowerExp};

use crate::error::{GreyError, Result};
use crate::scalar::{Coefficient, Real};
use crate::series::Series;

/// A validated fractional order `r > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder<T>(T);

impl<T: Coefficient> FracOrder<T> {
    pub fn new(r: T) -> Result<Self> {
        if !r.is_finite_value() || r <= T::zero() {
            return Err(GreyError::InvalidOrder(format!("{r:?}")));
        }
        Ok(Self(r))
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0 == T::one()
    }
}

impl<T: Real> FracOrder<T> {
    pub fn get(self) -> T {
        self.0
    }

    pub fn unit() -> Self {
        Self(T::one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// r-AGO
    Forward,
    /// r-IAGO
    Inverse,
}

/// Coefficients of one of the two operators, truncated to a fixed length.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffKernel<T> {
    order: FracOrder<T>,
    direction: Direction,
    coeffs: Vec<T>,
}

impl<T: Coefficient> CoeffKernel<T> {
    pub fn new(order: FracOrder<T>, direction: Direction, len: usize) -> Self {
        let r = order.value().clone();
        let mut coeffs = Vec::with_capacity(len);
        if len > 0 {
            coeffs.push(T::one());
        }
        for i in 1..len {
            let fi = index::<T>(i);
            let step = match direction {
                Direction::Forward => (r.clone() + fi.clone() - T::one()) / fi,
                Direction::Inverse => (fi.clone() - T::one() - r.clone()) / fi,
            };
            let next = coeffs[i - 1].clone() * step;
            coeffs.push(next);
        }
        Self {
            order,
            direction,
            coeffs,
        }
    }

    pub fn forward(order: FracOrder<T>, len: usize) -> Self {
        Self::new(order, Direction::Forward, len)
    }

    pub fn inverse(order: FracOrder<T>, len: usize) -> Self {
        Self::new(order, Direction::Inverse, len)
    }

    pub fn order(&self) -> &FracOrder<T> {
        &self.order
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Causal convolution of `x` with the kernel.
    ///
    /// # Panics
    /// If the kernel is shorter than `x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert!(
            self.coeffs.len() >= x.len(),
            "kernel of length {} applied to {} values",
            self.coeffs.len(),
            x.len()
        );
        (0..x.len())
            .map(|k| {
                let mut acc = T::zero();
                for (i, xi) in x[..=k].iter().enumerate() {
                    acc = acc + self.coeffs[k - i].clone() * xi.clone();
                }
                acc
            })
            .collect()
    }
}

fn index<T: Coefficient>(i: usize) -> T {
    T::from_usize(i).expect("index representable in scalar type")
}

fn checked_order<T: Coefficient>(r: T) -> Result<FracOrder<T>> {
    FracOrder::new(r)
}

/// Forward coefficient `r(r+1)...(r+i-1)/i!`; 1 for `i = 0`.
pub fn frac_binomial<T: Coefficient>(r: T, i: usize) -> Result<T> {
    let order = checked_order(r)?;
    Ok(CoeffKernel::forward(order, i + 1).coeffs[i].clone())
}

/// Inverse coefficient `(-1)^i * C(r, i)`; 1 for `i = 0`.
pub fn inv_binomial<T: Coefficient>(r: T, i: usize) -> Result<T> {
    let order = checked_order(r)?;
    Ok(CoeffKernel::inverse(order, i + 1).coeffs[i].clone())
}

pub fn accumulate_values<T: Coefficient>(x: &[T], r: &FracOrder<T>) -> Vec<T> {
    CoeffKernel::forward(r.clone(), x.len()).apply(x)
}

pub fn inverse_accumulate_values<T: Coefficient>(x: &[T], r: &FracOrder<T>) -> Vec<T> {
    CoeffKernel::inverse(r.clone(), x.len()).apply(x)
}

/// r-AGO of a series. Labels are carried through unchanged.
pub fn accumulate<T: Coefficient>(series: &Series<T>, r: &FracOrder<T>) -> Series<T> {
    series.with_values(accumulate_values(series.values(), r))
}

/// r-IAGO of a series; the exact inverse of [`accumulate`].
pub fn inverse_accumulate<T: Coefficient>(series: &Series<T>, r: &FracOrder<T>) -> Series<T> {
    series.with_values(inverse_accumulate_values(series.values(), r))
}

/// Dense row-major square matrix. Only used for the explicit operator forms.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Coefficient> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Upper-triangular Toeplitz matrix with `kernel[j - i]` at `(i, j)`.
    pub fn upper_toeplitz(kernel: &CoeffKernel<T>) -> Self {
        let n = kernel.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.data[i * n + j] = kernel.coeffs[j - i].clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for l in 0..n {
                    acc = acc + self.get(i, l).clone() * rhs.get(l, j).clone();
                }
                out.data[i * n + j] = acc;
            }
        }
        out
    }

    /// Row-vector product `x * M`, summing over rows in ascending order.
    pub fn left_apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|j| {
                let mut acc = T::zero();
                for (i, xi) in x.iter().enumerate() {
                    acc = acc + xi.clone() * self.get(i, j).clone();
                }
                acc
            })
            .collect()
    }
}

impl<T: Real> SquareMatrix<T> {
    /// `max |M - I|` over all entries.
    pub fn max_identity_deviation(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((*self.get(i, j) - target).abs());
            }
        }
        worst
    }
}

impl<T: LowerExp> SquareMatrix<T> {
    /// Row-major CSV with every entry in shortest round-trip scientific notation.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.data.chunks(self.n.max(1)) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

impl<T: LowerExp> fmt::Display for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

/// The n x n r-AGO matrix `A^r`.
pub fn build_ago_matrix<T: Coefficient>(n: usize, r: &FracOrder<T>) -> SquareMatrix<T> {
    SquareMatrix::upper_toeplitz(&CoeffKernel::forward(r.clone(), n))
}

/// The n x n r-IAGO matrix `D^r`.
pub fn build_iago_matrix<T: Coefficient>(n: usize, r: &FracOrder<T>) -> SquareMatrix<T> {
    SquareMatrix::upper_toeplitz(&CoeffKernel::inverse(r.clone(), n))
}
