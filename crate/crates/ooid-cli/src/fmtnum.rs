//! Fixed numeric formatting: 17 significant digits in files, 6 in console
//! summaries, independent of locale.

/// Full-precision file format (17 significant digits).
pub fn file17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Console format with `sig` significant digits, %g style.
pub fn sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..sig as i32).contains(&exp) {
        let prec = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{x:.prec$}")
    } else {
        format!("{:.*e}", sig - 1, x)
    }
}

/// Console default: 6 significant digits.
pub fn sig6(x: f64) -> String {
    sig(x, 6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.23456789), "1.23457");
        assert_eq!(sig6(1.0821), "1.08210");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(9.67e-12), "9.67000e-12");
        assert_eq!(sig6(-0.001234567), "-0.00123457");
    }

    #[test]
    fn file_format_has_seventeen_digits() {
        assert_eq!(file17(std::f64::consts::PI), "3.1415926535897931e0");
    }
}
