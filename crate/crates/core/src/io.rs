use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Scientific notation with 17 significant digits; parses back to the same
/// `f64` bit pattern.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for x in [0.0, -0.0, 1.0, 1.0 / 3.0, 6.02214076e23, -1e-300, f64::MIN_POSITIVE] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(30.0), "3.0000000000000000e1");
    }
}
