use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// `v = t * ord_E` for a prime divisor `E` (addressed by label) and `t > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealDivisorialValuation<F> {
    pub divisor: String,
    pub scale: F,
}

impl<F: ExactField> RealDivisorialValuation<F> {
    pub fn new(divisor: impl Into<String>, scale: F) -> Result<Self> {
        let divisor = divisor.into();
        if !scale.is_sign_positive() {
            return Err(Error::InvalidSigma(format!(
                "scale {scale} of ord_{divisor} must be positive"
            )));
        }
        Ok(RealDivisorialValuation { divisor, scale })
    }

    /// `ord_E`.
    pub fn ord(divisor: impl Into<String>) -> Self {
        RealDivisorialValuation {
            divisor: divisor.into(),
            scale: F::one(),
        }
    }
}
