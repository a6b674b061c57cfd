//! Numerical tolerances shared by every verifier.
//!
//! Weights are `f64` while the stability notions are stated over exact reals.
//! Every comparison of two derived quantities uses the relative tolerance
//! [`REL`] against a scale that is natural for the comparison.

/// Relative tolerance for stability, distinction and weight comparisons.
pub const REL: f64 = 1e-9;

/// `a ≥ b` up to `REL · scale`.
#[inline]
pub fn ge(a: f64, b: f64, scale: f64) -> bool {
    a >= b - REL * scale.abs()
}

/// `|a − b| ≤ REL · max(|a|, |b|, 1)`.
#[inline]
pub fn rel_eq(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= REL * a.abs().max(b.abs()).max(1.0)
}

/// Ratio with the conventions used for stability: `x / 0 = +∞` for any
/// `x ≥ 0`, including `0 / 0`.
#[inline]
pub fn stability_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert!(ge(1.0 - 1e-12, 1.0, 1.0));
        assert!(!ge(1.0 - 1e-6, 1.0, 1.0));
        assert!(rel_eq(1e6, 1e6 * (1.0 + 1e-12)));
        assert!(!rel_eq(1.0, 1.001));
        assert_eq!(stability_ratio(0.0, 0.0), f64::INFINITY);
        assert_eq!(stability_ratio(3.0, 2.0), 1.5);
    }
}
