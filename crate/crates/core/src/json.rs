//! JSON helpers: floats are written with 17 significant digits.

use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Format a float with 17 significant digits (`null`-safe callers should
/// check finiteness first).
pub fn fmt17(v: f64) -> String {
    if v == 0.0 {
        return "0.0000000000000000e0".to_string();
    }
    format!("{v:.16e}")
}

/// A float that serializes as a JSON number with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

pub fn sig17_vec(v: &[f64]) -> Vec<Sig17> {
    v.iter().copied().map(Sig17).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        let x = 1.0 / 3.0;
        let s = serde_json::to_string(&Sig17(x)).unwrap();
        assert_eq!(s, "3.3333333333333331e-1");
        let back: f64 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&Sig17(f64::NAN)).unwrap(), "null");
        assert_eq!(serde_json::to_string(&vec![Sig17(0.0)]).unwrap(), "[0.0000000000000000e0]");
    }
}
