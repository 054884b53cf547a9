//! Exact box lengths `Λ = q·√r` and the irrational-ratio criterion.
//!
//! Every `f64` is rational, so irrationality of `Λ₁/Λ₂` cannot be decided
//! numerically. Lengths are kept as a positive rational times the root of a
//! square-free integer; the ratio `(q₁/q₂)·√(r₁/r₂)` is rational iff
//! `r₁ = r₂`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::CheckedMul;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxLength {
    rational: Ratio<i64>,
    surd: u64,
}

impl BoxLength {
    /// `q·√r`, with square factors of `r` moved into the rational part.
    pub fn new(q: Ratio<i64>, r: u64) -> Result<Self> {
        if q <= Ratio::from_integer(0) {
            return Err(Error::param(
                "rational_part",
                format!("must be > 0, got {q}"),
            ));
        }
        if r == 0 {
            return Err(Error::param("surd_part", "must be a positive integer"));
        }
        let (outside, inside) = split_square(r);
        let outside = i64::try_from(outside)
            .map_err(|_| Error::param("surd_part", "square factor overflows"))?;
        let rational = q
            .checked_mul(&Ratio::from_integer(outside))
            .ok_or_else(|| Error::param("rational_part", "overflow while normalising"))?;
        Ok(Self {
            rational,
            surd: inside,
        })
    }

    pub fn rational(value: Ratio<i64>) -> Result<Self> {
        Self::new(value, 1)
    }

    pub fn rational_part(&self) -> Ratio<i64> {
        self.rational
    }

    /// Square-free radicand.
    pub fn surd_part(&self) -> u64 {
        self.surd
    }

    pub fn to_f64(&self) -> f64 {
        *self.rational.numer() as f64 / *self.rational.denom() as f64 * (self.surd as f64).sqrt()
    }
}

/// Writes `r = k²·m` with `m` square-free; returns `(k, m)`.
fn split_square(mut r: u64) -> (u64, u64) {
    let mut outside = 1;
    let mut inside = 1;
    let mut p = 2u64;
    while p.saturating_mul(p) <= r {
        let mut count = 0;
        while r.is_multiple_of(p) {
            r /= p;
            count += 1;
        }
        outside *= p.pow(count / 2);
        if count % 2 == 1 {
            inside *= p;
        }
        p += 1;
    }
    (outside, inside * r)
}

impl fmt::Display for BoxLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.surd, self.rational == Ratio::from_integer(1)) {
            (1, _) => write!(f, "{}", self.rational),
            (r, true) => write!(f, "sqrt({r})"),
            (r, false) => write!(f, "{}*sqrt({r})", self.rational),
        }
    }
}

impl FromStr for BoxLength {
    type Err = Error;

    /// Accepts `p`, `p/q`, `sqrt(r)`, `p/q*sqrt(r)` and `p/qsqrt(r)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse box length `{s}`"));
        let text = s.trim();
        let surd_given = text.contains("sqrt(");
        let (rational_text, surd) = match text.find("sqrt(") {
            Some(pos) => {
                let inner = text[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
                let r: u64 = inner.trim().parse().map_err(|_| bad())?;
                let head = text[..pos].trim_end();
                (head.strip_suffix('*').unwrap_or(head).trim(), r)
            }
            None => (text, 1),
        };
        let rational = if rational_text.is_empty() && surd_given {
            Ratio::from_integer(1)
        } else {
            match rational_text.split_once('/') {
                Some((p, q)) => {
                    let p: i64 = p.trim().parse().map_err(|_| bad())?;
                    let q: i64 = q.trim().parse().map_err(|_| bad())?;
                    if q == 0 {
                        return Err(bad());
                    }
                    Ratio::new(p, q)
                }
                None => Ratio::from_integer(rational_text.parse().map_err(|_| bad())?),
            }
        };
        Self::new(rational, surd)
    }
}

/// `nπ/Λ` for `n = 1..=n_max`.
pub fn box_spectrum(length: &BoxLength, n_max: usize) -> Vec<f64> {
    let lambda = length.to_f64();
    (1..=n_max).map(|n| n as f64 * PI / lambda).collect()
}

/// True iff `Λ₁/Λ₂` is rational.
///
/// An irrational ratio makes the two box representations inequivalent; a
/// rational ratio is treated as equivalent, which is a convention rather
/// than a theorem.
pub fn boxes_equivalent(l1: &BoxLength, l2: &BoxLength) -> bool {
    l1.surd == l2.surd
}
