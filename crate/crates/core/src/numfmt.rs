//! Real-number formatting shared by every output format.

/// 17 significant digits, so every f64 survives a print/parse round trip.
/// Plain decimal notation for magnitudes in [1e-5, 1e17), scientific
/// otherwise.
pub fn real(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-5..17).contains(&mag) {
        let decimals = (16 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.16e}")
    }
}

/// Round half away from zero.
pub fn round_half_away(v: f64) -> i64 {
    v.round() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for v in [0.1, -0.197_414_907_0, 455_050_683.306_846_9, 2.014_672_866_912_482_6e20, 1e-9, 3.0, 1e17] {
            let s = real(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn rounding_mode() {
        assert_eq!(round_half_away(2.5), 3);
        assert_eq!(round_half_away(-2.5), -3);
        assert_eq!(round_half_away(21.715), 22);
        assert_eq!(round_half_away(0.49), 0);
    }
}
