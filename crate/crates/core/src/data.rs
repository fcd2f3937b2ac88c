//! Bundled zero datasets: the first 100 positive ordinates for ζ and for
//! the primitive characters mod 3 and mod 4, in the `lzeros-v1` format.
//!
//! The files carry their provenance in the `source` header. User-supplied
//! files in the same format can replace them through the CLI's dataset
//! directory override.

use crate::error::Result;
use crate::zeros::ZeroDataset;

pub const ZETA_100: &str = include_str!("../data/zeta_100.lzeros");
pub const CHI3_100: &str = include_str!("../data/chi3_100.lzeros");
pub const CHI4_100: &str = include_str!("../data/chi4_100.lzeros");

/// (file stem, contents) of every bundled dataset.
pub const BUNDLED: [(&str, &str); 3] = [
    ("zeta_100", ZETA_100),
    ("chi3_100", CHI3_100),
    ("chi4_100", CHI4_100),
];

pub fn zeta_dataset() -> Result<ZeroDataset> {
    ZeroDataset::parse(ZETA_100)
}

pub fn chi3_dataset() -> Result<ZeroDataset> {
    ZeroDataset::parse(CHI3_100)
}

pub fn chi4_dataset() -> Result<ZeroDataset> {
    ZeroDataset::parse(CHI4_100)
}

/// Bundled dataset for the given modulus, if one exists.
pub fn bundled_for_modulus(q: u64) -> Option<Result<ZeroDataset>> {
    match q {
        1 => Some(zeta_dataset()),
        3 => Some(chi3_dataset()),
        4 => Some(chi4_dataset()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_datasets_parse_and_validate() {
        for (name, text) in BUNDLED {
            let ds = ZeroDataset::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(ds.ordinates.len(), 100, "{name}");
            assert!(ds.symmetric);
            assert!(ds.gamma_max > *ds.ordinates.last().unwrap());
        }
    }

    #[test]
    fn first_ordinates_match_known_values() {
        assert!((zeta_dataset().unwrap().ordinates[0] - 14.1347251).abs() < 1e-6);
        assert!((chi3_dataset().unwrap().ordinates[0] - 8.0397372).abs() < 1e-6);
        assert!((chi4_dataset().unwrap().ordinates[0] - 6.0209489).abs() < 1e-6);
    }

    #[test]
    fn coverage_reaches_t_plus_50() {
        // The explicit-formula checks go up to t = 50.
        for ds in [chi3_dataset().unwrap(), chi4_dataset().unwrap()] {
            assert!(ds.gamma_max >= 100.0, "q = {}: {}", ds.q, ds.gamma_max);
        }
        assert!(zeta_dataset().unwrap().gamma_max >= 100.0);
    }
}
