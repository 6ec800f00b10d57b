//! Gamma and Beta functions on the positive axis, and the closed-form
//! constants of the cubic integrals.
//!
//! Gamma uses the Lanczos approximation with Pugh's coefficients
//! (`g = 10.900511`, eleven terms), which holds about 15 significant digits
//! for arguments at or above 1/2. Smaller positive arguments go through the
//! recurrence `Γ(x) = Γ(x + 1) / x`, never through reflection; moderate
//! arguments are reduced to `[1/2, 3/2)` by the upward recurrence.

use serde::Serialize;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 10.900511;

const LANCZOS_D: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

/// `2 √(e/π)`
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_717_336_249_247_266_663_112_059_4;
/// `ln(2 √(e/π))`
const LN_TWO_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_222_345_518_445_781_647_212_251_8;

/// Upper end of the range where `gamma` reduces its argument by recurrence.
const RECURRENCE_LIMIT: f64 = 40.0;

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS_D
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_D[0], |s, (i, &dk)| s + dk / (x + i as f64 - 1.0))
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "argument must be positive and finite, got {x}"
        )))
    }
}

pub fn gamma(x: f64) -> Result<f64> {
    check_positive(x)?;
    if x < 0.5 {
        return Ok(gamma(x + 1.0)? / x);
    }
    if (1.5..=RECURRENCE_LIMIT).contains(&x) {
        // Γ(x) = (x−1)(x−2)…(x−k) Γ(x−k) keeps the large power out of powf
        let mut y = x;
        let mut prod = 1.0;
        while y >= 1.5 {
            y -= 1.0;
            prod *= y;
        }
        return Ok(prod * gamma(y)?);
    }
    Ok(lanczos_sum(x)
        * TWO_SQRT_E_OVER_PI
        * ((x - 0.5 + LANCZOS_G) / std::f64::consts::E).powf(x - 0.5))
}

pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive(x)?;
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    Ok(
        lanczos_sum(x).ln()
            + LN_TWO_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + LANCZOS_G).ln() - 1.0),
    )
}

/// `B(p, q) = Γ(p) Γ(q) / Γ(p + q)`, evaluated in log space.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    Ok((ln_gamma(p)? + ln_gamma(q)? - ln_gamma(p + q)?).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialConstants {
    /// `2^(1/3) B(1/2, 1/6)`, the constant for `D < 0`.
    pub c_minus: f64,
    /// `3 B(1/3, 1/3)`, the constant for `D > 0`.
    pub c_plus: f64,
    /// `2π = 2 B(1/2, 1/2)`, the quadratic-form constant.
    pub gaussian_constant: f64,
}

pub fn constants() -> SpecialConstants {
    let b = |p, q| beta(p, q).expect("positive arguments");
    SpecialConstants {
        c_minus: 2f64.cbrt() * b(0.5, 1.0 / 6.0),
        c_plus: 3.0 * b(1.0 / 3.0, 1.0 / 3.0),
        gaussian_constant: 2.0 * b(0.5, 0.5),
    }
}

impl SpecialConstants {
    /// Closed-form value of the renormalized cubic integral for discriminant `d`.
    pub fn cubic_prediction(&self, d: f64) -> Option<f64> {
        if d < 0.0 {
            Some(self.c_minus / (-d).powf(1.0 / 6.0))
        } else if d > 0.0 {
            Some(self.c_plus / d.powf(1.0 / 6.0))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_examples() {
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gamma(1.0).unwrap(), 1.0) < 1e-15);
    }

    #[test]
    fn gamma_integers_up_to_thirty() {
        let mut fact = 1.0_f64;
        for n in 1..=30 {
            assert!(rel(gamma(n as f64).unwrap(), fact) < 1e-13, "n={n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn domain_errors() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(beta(0.5, 0.0).is_err());
    }

    #[test]
    fn beta_examples() {
        assert!(rel(beta(0.5, 0.5).unwrap(), PI) < 1e-14);
        assert!(rel(beta(1.0, 1.0).unwrap(), 1.0) < 1e-15);
        let lhs = 2f64.cbrt() * beta(0.5, 1.0 / 6.0).unwrap();
        let rhs = 3f64.sqrt() * beta(1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn beta_is_symmetric() {
        for (p, q) in [(0.5, 1.0 / 6.0), (0.3, 2.7), (4.0, 0.01)] {
            assert_eq!(beta(p, q).unwrap(), beta(q, p).unwrap());
        }
    }

    #[test]
    fn constants_relation() {
        let c = constants();
        assert!(c.c_minus > 0.0 && c.c_plus > 0.0);
        assert!(rel(c.c_plus / c.c_minus, 3f64.sqrt()) < 1e-12);
        assert!(rel(c.gaussian_constant, 2.0 * PI) < 1e-12);
        assert_eq!(c.cubic_prediction(0.0), None);
    }
}
