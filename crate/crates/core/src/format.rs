//! Fixed float formatting for reproducible output.

/// Rounds to 12 significant digits; `-0.0` becomes `0.0`.
pub fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Text form of [`sig12`]: plain decimals in `[1e-4, 1e15)`, exponent
/// notation otherwise (`5.55111512313e-17`).
pub fn fmt12(v: f64) -> String {
    let r = sig12(v);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&a) || !r.is_finite() {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn sig12_vec(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(sig12).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig12(2f64.sqrt().recip()).to_string(), "0.707106781187");
        assert_eq!(sig12(-0.0), 0.0);
        assert_eq!(sig12(1.0 + 1e-15), 1.0);
        assert_eq!(sig12(-1.5e-20), -1.5e-20);
        assert_eq!(fmt12(5.551115123125783e-17), "5.55111512313e-17");
        assert_eq!(fmt12(-0.25), "-0.25");
        assert_eq!(fmt12(0.0), "0");
    }
}
