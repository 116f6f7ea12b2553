//! Exact rational scalars and their string form.
//!
//! Exponents and degrees are small and live in [`Rat`]; coefficients of ring
//! elements go through elimination and use the arbitrary-precision [`Coeff`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;
pub type Coeff = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

pub fn rat_to_coeff(q: &Rat) -> Coeff {
    Coeff::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// Renders `q` as `"numerator/denominator"`, always with an explicit denominator.
pub fn fmt_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn fmt_coeff(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn split(s: &str) -> Option<(&str, &str)> {
    match s.trim().split_once('/') {
        Some((n, d)) => Some((n.trim(), d.trim())),
        None => Some((s.trim(), "1")),
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = || Error::ParseRational(s.to_string());
    let (n, d) = split(s).ok_or_else(err)?;
    let n: i64 = n.parse().map_err(|_| err())?;
    let d: i64 = d.parse().map_err(|_| err())?;
    if d == 0 {
        return Err(err());
    }
    Ok(Rat::new(n, d))
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let err = || Error::ParseRational(s.to_string());
    let (n, d) = split(s).ok_or_else(err)?;
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Coeff::new(n, d))
}

/// Bit-size of a coefficient, used to pick the simplest pivot.
pub(crate) fn bit_size(c: &Coeff) -> u64 {
    c.numer().bits() + c.denom().bits()
}

/// Multiplies a list of rationals by the lcm of their denominators and divides
/// by the gcd of the resulting numerators, giving coprime integers.
pub fn clear_denominators(values: &[Coeff]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    let scaled: Vec<BigInt> = values.iter().map(|v| (v * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for s in &scaled {
        g = g.gcd(s);
    }
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|s| s / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form_always_has_denominator() {
        assert_eq!(fmt_rat(&int(3)), "3/1");
        assert_eq!(fmt_rat(&rat(-4, 6)), "-2/3");
        assert_eq!(parse_rat("10/15").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn clearing_denominators() {
        let v = [Coeff::new(1.into(), 2.into()), Coeff::new((-1).into(), 3.into())];
        assert_eq!(clear_denominators(&v), vec![BigInt::from(3), BigInt::from(-2)]);
    }
}
