//! Numeric formatting shared by every CSV writer.

/// Formats `x` with six significant digits in fixed notation.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // exponent after rounding to six digits, so 0.9999999 counts as 1
    let scientific = format!("{x:.5e}");
    let magnitude: i32 = scientific
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific notation has an exponent");
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    // -0.00000 and friends
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        return "0".to_string();
    }
    s
}
