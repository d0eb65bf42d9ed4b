//! Exact rational helpers: all rates, bounds, and LP values are fractions.

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The exact rational type used throughout (rates, eta, LP optima).
pub type Frac = Ratio<i64>;

pub fn frac(num: i64, den: i64) -> Frac {
    Ratio::new(num, den)
}

/// Renders as `num/den`, or just `num` for integers.
pub fn frac_string(r: &Frac) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct FracDoc {
    num: i64,
    den: i64,
}

/// `#[serde(with = "crate::ratio")]` adapter: fractions serialize as
/// `{"num": ..., "den": ...}` objects, reduced, with positive denominator.
pub fn serialize<S: Serializer>(r: &Frac, s: S) -> Result<S::Ok, S::Error> {
    FracDoc {
        num: *r.numer(),
        den: *r.denom(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Frac, D::Error> {
    let doc = FracDoc::deserialize(d)?;
    if doc.den == 0 {
        return Err(D::Error::custom("fraction with zero denominator"));
    }
    Ok(Ratio::new(doc.num, doc.den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(frac_string(&frac(3, 8)), "3/8");
        assert_eq!(frac_string(&frac(4, 2)), "2");
        assert_eq!(frac_string(&frac(0, 5)), "0");
    }

    #[test]
    fn reduced_on_construction() {
        assert_eq!(frac(6, 16), frac(3, 8));
        assert_eq!(frac(2, -4), frac(-1, 2));
    }
}
