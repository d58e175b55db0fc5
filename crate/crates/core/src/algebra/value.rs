use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An element of a truth-value algebra.
///
/// The variant depends on the algebra: `Bit` for the two-element Boolean
/// algebra, `Level` for finite chains and table algebras (an index into the
/// carrier) and `Real` for the standard algebras on `[0,1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TruthValue {
    Bit(bool),
    Level(u32),
    Real(Rational),
}

impl TruthValue {
    pub fn real(num: i64, den: i64) -> Self {
        TruthValue::Real(rational(num, den))
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::Bit(b) => write!(f, "{}", u8::from(*b)),
            TruthValue::Level(k) => write!(f, "#{k}"),
            TruthValue::Real(r) => write!(f, "{}", format_rational(r)),
        }
    }
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering; exact when the expansion terminates, otherwise rounded
/// to `digits` places and suffixed with `...`.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let neg = r.is_negative();
    let r = r.abs();
    let int = r.trunc();
    let mut frac = r - &int;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut s = format!("{}{}.", if neg { "-" } else { "" }, int.numer());
    for _ in 0..digits {
        frac *= &ten;
        let d = frac.trunc();
        s.push_str(&d.numer().to_string());
        frac -= d;
        if frac.is_zero() {
            return s;
        }
    }
    s.push_str("...");
    s
}

/// Parses `p/q`, an integer, or a terminating decimal like `0.9` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().ok()?;
        let mag = Rational::new(int_part.abs() * &scale + frac_part, scale);
        return Some(if neg { -mag } else { mag });
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub(crate) fn unit_interval_contains(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}
