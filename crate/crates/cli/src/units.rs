//! Quantities with mandatory unit suffixes.
//!
//! `0.2mm`, `100 nm`, `1.8m`, `5e-4rad`. A bare number is rejected so that
//! a millimetre can never be read as a metre.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitError(String);

impl fmt::Display for UnitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UnitError {}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Scale {
    /// Applied to the decimal text, so `0.2mm` is exactly the double `2e-4`.
    Pow10(i32),
    Factor(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Angle,
    Mass,
    Speed,
}

impl Dimension {
    fn units(self) -> &'static [(&'static str, Scale)] {
        use Scale::{Factor, Pow10};
        match self {
            Dimension::Length => &[
                ("nm", Pow10(-9)),
                ("um", Pow10(-6)),
                ("mm", Pow10(-3)),
                ("cm", Pow10(-2)),
                ("m", Pow10(0)),
            ],
            Dimension::Angle => &[("mrad", Pow10(-3)), ("rad", Pow10(0))],
            Dimension::Mass => &[("kg", Pow10(0)), ("u", Factor(1.660_539_066_60e-27))],
            Dimension::Speed => &[("mm/s", Pow10(-3)), ("m/s", Pow10(0))],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Dimension::Length => "length",
            Dimension::Angle => "angle",
            Dimension::Mass => "mass",
            Dimension::Speed => "speed",
        }
    }
}

/// Parses `text` as a quantity of `dim`, returning its SI value.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, UnitError> {
    let t = text.trim();
    let split = t
        .find(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E')
        .unwrap_or(t.len());
    let (number, unit) = t.split_at(split);
    let unit = unit.trim();
    if unit.is_empty() {
        let expected: Vec<&str> = dim.units().iter().map(|(u, _)| *u).collect();
        return Err(UnitError(format!(
            "`{t}` has no unit; give a {} in one of {}",
            dim.name(),
            expected.join(", ")
        )));
    }
    let scale = dim
        .units()
        .iter()
        .find(|(u, _)| *u == unit)
        .map(|(_, s)| *s)
        .ok_or_else(|| UnitError(format!("unknown {} unit `{unit}` in `{t}`", dim.name())))?;
    let number = number.trim();
    let not_number = || UnitError(format!("`{number}` is not a number"));
    if number.is_empty()
        || number.contains(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E')
    {
        return Err(not_number());
    }
    let value: f64 = match scale {
        Scale::Pow10(k) => {
            let (mantissa, exp) = match number.split_once(['e', 'E']) {
                Some((m, e)) => (m, e.parse::<i32>().map_err(|_| not_number())?),
                None => (number, 0),
            };
            format!("{mantissa}e{}", exp + k)
                .parse()
                .map_err(|_| not_number())?
        }
        Scale::Factor(f) => number.parse::<f64>().map_err(|_| not_number())? * f,
    };
    if !value.is_finite() {
        return Err(UnitError(format!("`{t}` is not finite")));
    }
    Ok(value)
}

pub fn length(text: &str) -> Result<f64, UnitError> {
    parse_quantity(text, Dimension::Length)
}

pub fn angle(text: &str) -> Result<f64, UnitError> {
    parse_quantity(text, Dimension::Angle)
}

pub fn mass(text: &str) -> Result<f64, UnitError> {
    parse_quantity(text, Dimension::Mass)
}

pub fn speed(text: &str) -> Result<f64, UnitError> {
    parse_quantity(text, Dimension::Speed)
}

/// `lo:hi` with both ends lengths, e.g. `-2.7mm:4.5mm`.
pub fn window(text: &str) -> Result<(f64, f64), UnitError> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| UnitError(format!("window `{text}` must look like lo:hi")))?;
    let (lo, hi) = (length(lo)?, length(hi)?);
    if lo >= hi {
        return Err(UnitError(format!("window `{text}` is empty")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn suffix_equals_decimal_exponent(m in -1e6f64..1e6, e in -20i32..20) {
            let text = format!("{m}e{e}");
            let plain: f64 = format!("{m}e{}", e - 3).parse().unwrap();
            prop_assert_eq!(length(&format!("{text}mm")).unwrap(), plain);
            prop_assert_eq!(length(&format!("{text}m")).unwrap(), text.parse::<f64>().unwrap());
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(length("0.2mm").unwrap(), 0.2e-3);
        assert_eq!(length("100nm").unwrap(), 100e-9);
        assert_eq!(length("1.8m").unwrap(), 1.8);
        assert_eq!(length(" 3 um ").unwrap(), 3e-6);
        assert_eq!(length("1e-3m").unwrap(), 1e-3);
        assert_eq!(length("-2.7mm").unwrap(), -2.7e-3);
    }

    #[test]
    fn bare_numbers_are_rejected() {
        for bad in ["1.8", "0", "1e-3", ""] {
            assert!(length(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn wrong_units_are_rejected() {
        assert!(length("1rad").is_err());
        assert!(angle("1mm").is_err());
        assert!(length("1 furlong").is_err());
        assert!(length("xmm").is_err());
        assert!(length("infm").is_err());
    }

    #[test]
    fn other_dimensions() {
        assert_eq!(angle("5e-4rad").unwrap(), 5e-4);
        assert_eq!(angle("2mrad").unwrap(), 2e-3);
        assert_eq!(speed("2m/s").unwrap(), 2.0);
        assert_eq!(mass("1.5e-25kg").unwrap(), 1.5e-25);
        assert!((mass("12u").unwrap() - 1.992_646_879e-26).abs() < 1e-34);
    }

    #[test]
    fn windows() {
        assert_eq!(window("-2.7mm:4.5mm").unwrap(), (-2.7e-3, 4.5e-3));
        assert!(window("1mm:1mm").is_err());
        assert!(window("1mm").is_err());
        assert!(window("-1:1").is_err());
    }
}
