//! Complete elliptic integrals of the first and second kind.
//!
//! Both are evaluated with the arithmetic-geometric mean, which converges
//! quadratically; a handful of iterations reach full double precision for
//! any modulus not extremely close to 1.
//!
//! The argument is the modulus `k` (not the parameter `m = k^2`):
//!
//! ```text
//! K(k) = int_0^1 da / (sqrt(1 - a^2) sqrt(1 - k^2 a^2))
//! E(k) = int_0^1 sqrt(1 - k^2 a^2) / sqrt(1 - a^2) da
//! ```

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectrumError};

const AGM_REL_TOL: f64 = 1e-16;
const AGM_MAX_ITER: usize = 64;

/// Elliptic modulus in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(SpectrumError::Domain(format!(
                "elliptic modulus must lie in [0, 1], got {value}"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary modulus `sqrt(1 - k^2)`.
    pub fn complement(self) -> Self {
        Self((1.0 - self.0 * self.0).max(0.0).sqrt())
    }
}

/// Result pair of one AGM run: `K` and `E` share the same iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticValue {
    pub modulus: f64,
    pub k: f64,
    pub e: f64,
}

/// AGM iteration started from `(1, k')` while accumulating
/// `sum 2^(n-1) c_n^2` with `c_0 = k`.
fn agm(modulus: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - modulus * modulus).sqrt();
    let mut c = modulus;
    let mut pow = 0.5_f64;
    let mut sum = pow * c * c;
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_REL_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
    }
    (a, sum)
}

/// Complete elliptic integral of the first kind. Diverges at `k = 1`.
pub fn ellip_k(modulus: Modulus) -> Result<f64> {
    let k = modulus.value();
    if k >= 1.0 {
        return Err(SpectrumError::Domain(
            "K(k) diverges at k = 1".to_string(),
        ));
    }
    let (a, _) = agm(k);
    Ok(FRAC_PI_2 / a)
}

/// Complete elliptic integral of the second kind, `E(1) = 1`.
pub fn ellip_e(modulus: Modulus) -> f64 {
    let k = modulus.value();
    if k >= 1.0 {
        return 1.0;
    }
    let (a, sum) = agm(k);
    FRAC_PI_2 / a * (1.0 - sum)
}

/// Both integrals from a single AGM run.
pub fn ellip_ke(modulus: Modulus) -> Result<EllipticValue> {
    let k = ellip_k(modulus)?;
    Ok(EllipticValue {
        modulus: modulus.value(),
        k,
        e: ellip_e(modulus),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_modulus_gives_half_pi() {
        let m = Modulus::new(0.0).unwrap();
        assert!((ellip_k(m).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((ellip_e(m) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn unit_modulus() {
        let m = Modulus::new(1.0).unwrap();
        assert_eq!(ellip_e(m), 1.0);
        assert!(ellip_k(m).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Modulus::new(-0.1).is_err());
        assert!(Modulus::new(1.0 + 1e-12).is_err());
        assert!(Modulus::new(f64::NAN).is_err());
    }

    #[test]
    fn known_value_k_half() {
        // K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi))
        let gamma_quarter = 3.625_609_908_221_908_f64;
        let expected = gamma_quarter * gamma_quarter / (4.0 * PI.sqrt());
        let m = Modulus::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((ellip_k(m).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn near_one_stays_finite() {
        let m = Modulus::new(1.0 - 1e-15).unwrap();
        let k = ellip_k(m).unwrap();
        assert!(k.is_finite() && k > 15.0);
        let e = ellip_e(m);
        assert!(e > 1.0 && e < 1.0 + 1e-12);
    }
}
