use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Lower bound on the number of reflex angles of an arithmetic polygon
/// with `n` sides: `sqrt(n)/(pi sqrt 3) - 4/(pi sqrt(3n)) - 2`.
pub fn mu_lower_bound(n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooFewSides(n));
    }
    let n = n as f64;
    let s3 = 3f64.sqrt();
    Ok(n.sqrt() / (PI * s3) - 4.0 / (PI * (3.0 * n).sqrt()) - 2.0)
}

/// Largest side count for which at most `nu` reflex angles are possible:
/// `floor(8 + 3 pi^2 (nu + 2)^2)`.
pub fn convexity_side_cap(nu: u64) -> u64 {
    let k = (nu + 2) as f64;
    (8.0 + 3.0 * PI * PI * k * k).floor() as u64
}
