use crate::error::{GreyError, Result};
use crate::scalar::Real;

/// Least-squares parameters: development coefficient `a`, grey action `b t + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// Parameters that make the continuous response satisfy the discrete basic
/// equation exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptParams<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Real> BaseParams<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }
}

impl<T: Real> OptParams<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn as_tuple(&self) -> (T, T, T) {
        (self.alpha, self.beta, self.gamma)
    }

    /// The `(a, b, c)` that least squares recovers when the data follow the
    /// response function with these parameters exactly.
    ///
    /// Inverts [`optimize_params`]: `a = 2 tanh(alpha / 2)`, `b = beta a / alpha`,
    /// and `c` from the constant-term matching condition.
    pub fn to_base(&self) -> BaseParams<T> {
        let two = T::lit(2.0);
        let (alpha, beta, gamma) = self.as_tuple();
        let a = two * (alpha / two).tanh();
        let b = beta * a / alpha;
        let c = b / two + (T::one() - a / two) * beta / alpha
            - (beta / (alpha * alpha) - gamma / alpha) * a;
        BaseParams { a, b, c }
    }
}

/// `ln((2 + a) / (2 - a)) - a`: how far the optimized rate drifts from `a`.
pub fn alpha_gap<T: Real>(a: T) -> T {
    let two = T::lit(2.0);
    ((two + a) / (two - a)).ln() - a
}

/// Maps least-squares `(a, b, c)` to the optimized `(alpha, beta, gamma)`.
pub fn optimize_params<T: Real>(base: &BaseParams<T>) -> Result<OptParams<T>> {
    let BaseParams { a, b, c } = *base;
    if !base.is_finite() {
        return Err(GreyError::NonFinite("base parameters".into()));
    }
    if a == T::zero() {
        return Err(GreyError::ZeroDevelopmentCoefficient);
    }
    let two = T::lit(2.0);
    if a.abs() >= two {
        return Err(GreyError::DevelopmentCoefficientOutOfRange(
            a.to_f64_lossy(),
        ));
    }
    let alpha = ((two + a) / (two - a)).ln();
    let beta = b / a * alpha;
    let gamma = alpha * c / a - alpha * b / (two * a) + beta / alpha + beta / two - beta / a;
    let opt = OptParams { alpha, beta, gamma };
    if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
        return Err(GreyError::NonFinite("optimized parameters".into()));
    }
    Ok(opt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round4(v: f64) -> String {
        format!("{v:.4}")
    }

    #[test]
    fn alpha_gap_matches_published_values() {
        assert_eq!(
            round4(
                optimize_params(&BaseParams::new(1.0, 0.0, 0.0))
                    .unwrap()
                    .alpha
                    - 1.0
            ),
            "0.0986"
        );
        assert_eq!(round4(alpha_gap(1.0_f64)), "0.0986");
        assert!(
            (optimize_params(&BaseParams::new(1.0, 0.0, 0.0))
                .unwrap()
                .alpha
                - 3.0_f64.ln())
            .abs()
                < 1e-15
        );
        assert_eq!(round4(alpha_gap(0.1_f64)), "0.0001");
    }

    #[test]
    fn defining_identities_hold() {
        for &(a, b, c) in &[
            (0.3_f64, 1.5, 10.0),
            (-1.2, 0.4, 77.0),
            (1.9, 5.0, 0.0),
            (-0.05, 2.0, 5.0),
        ] {
            let opt = optimize_params(&BaseParams::new(a, b, c)).unwrap();
            let rate = (1.0 + a / 2.0) - (1.0 - a / 2.0) * opt.alpha.exp();
            let slope = opt.beta * a / opt.alpha - b;
            assert!(rate.abs() < 1e-12, "rate residual {rate}");
            assert!(slope.abs() < 1e-12, "slope residual {slope}");
            // constant-term condition
            let lhs = (1.0 - a / 2.0) * opt.beta / opt.alpha
                - (opt.beta / opt.alpha.powi(2) - opt.gamma / opt.alpha) * a;
            assert!((lhs - (c - b / 2.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn gamma_matches_simplified_form() {
        // gamma - c == (alpha_gap(a) / a) * (c - b / a)
        for &(a, b, c) in &[(0.5_f64, 2.0, 5.0), (-0.7, 3.0, 40.0), (1.3, 0.1, 0.2)] {
            let opt = optimize_params(&BaseParams::new(a, b, c)).unwrap();
            let simplified = alpha_gap(a) / a * (c - b / a);
            assert!((opt.gamma - c - simplified).abs() < 1e-12);
        }
    }

    #[test]
    fn small_development_coefficient() {
        let opt = optimize_params(&BaseParams::new(0.01, 2.0, 5.0)).unwrap();
        assert!((opt.alpha - 0.01_f64).abs() < 1e-3);
        assert!((opt.beta - 2.0_f64).abs() < 1e-3);
        // gamma - c = (a^2/12)(c - b/a) to leading order, about -1.625e-3 here
        assert!(((opt.gamma - 5.0) - (-1.6250243719753144e-3)).abs() < 1e-10);
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(
            optimize_params(&BaseParams::new(0.0, 1.0, 1.0)),
            Err(GreyError::ZeroDevelopmentCoefficient)
        );
        assert!(matches!(
            optimize_params(&BaseParams::new(2.0, 1.0, 1.0)),
            Err(GreyError::DevelopmentCoefficientOutOfRange(_))
        ));
        assert!(matches!(
            optimize_params(&BaseParams::new(-2.5, 1.0, 1.0)),
            Err(GreyError::DevelopmentCoefficientOutOfRange(_))
        ));
        assert!(optimize_params(&BaseParams::new(f64::NAN, 1.0, 1.0)).is_err());
    }

    #[test]
    fn to_base_inverts_optimize() {
        for &(a, b, c) in &[(0.3_f64, 1.5, 10.0), (-1.2, 0.4, 77.0), (1.9, 5.0, 0.0)] {
            let base = optimize_params(&BaseParams::new(a, b, c))
                .unwrap()
                .to_base();
            assert!((base.a - a).abs() < 1e-12);
            assert!((base.b - b).abs() < 1e-10);
            assert!((base.c - c).abs() < 1e-9);
        }
    }
}
