//! Fixed float formatting for every file this crate writes.
//!
//! All reals are printed with 17 significant digits in scientific notation
//! with a lowercase `e` (`2.5000000000000000e-1`), so identical runs produce
//! byte-identical output.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Formats a real with 17 significant digits; non-finite values become `null`
/// so that the result is always a valid JSON token.
pub fn fmt_sci(x: f64) -> String {
    if x.is_finite() {
        // Normalize -0 so that sign-of-zero noise never changes output bytes.
        let x = if x == 0.0 { 0.0 } else { x };
        format!("{:.16e}", x)
    } else {
        "null".to_string()
    }
}

/// A real that serializes through [`fmt_sci`].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Sci(pub f64);

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sci(self.0))
    }
}

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(fmt_sci(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

pub fn sci_array<const N: usize>(xs: [f64; N]) -> [Sci; N] {
    xs.map(Sci)
}
