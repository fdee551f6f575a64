//! Exact rational helpers built on `num-rational`.
//!
//! `BigRational` keeps every value reduced with a positive denominator, which is
//! the invariant all closed forms and oracles rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Binomial coefficient by the multiplicative formula.
///
/// Each partial product `C(n, i)` is itself an integer, and the running
/// gcd reduction keeps the intermediate factors small.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        let mut num = BigInt::from(n - k + i);
        let mut den = BigInt::from(i);
        let g = acc.gcd(&den);
        acc /= &g;
        den /= &g;
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        debug_assert!(den.is_one());
        acc *= num;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Central binomial coefficient `C(2n, n)`.
pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

/// Formats as `num/den`; integers print as `num/1` so the field type never varies.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `7`, `-3/4`, or a finite decimal such as `3.5` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(whole * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(int(n))
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Rescales `values` to integers sharing one denominator; order comparisons
/// and sign tests are preserved.
pub(crate) fn to_scaled_integers(values: &[Rational]) -> Vec<BigInt> {
    let l = common_denominator(values);
    values
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect()
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_table() {
        let row: Vec<BigInt> = (0..=6).map(|k| binomial(6, k)).collect();
        let want: Vec<BigInt> = [1, 6, 15, 20, 15, 6, 1].into_iter().map(BigInt::from).collect();
        assert_eq!(row, want);
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut prev = vec![BigInt::one()];
        for n in 1..=60u64 {
            let mut cur = vec![BigInt::one(); n as usize + 1];
            for k in 1..n as usize {
                cur[k] = &prev[k - 1] + &prev[k];
            }
            for k in 0..=n {
                assert_eq!(binomial(n, k), cur[k as usize], "C({n},{k})");
            }
            prev = cur;
        }
    }

    #[test]
    fn parses_fraction_decimal_and_integer() {
        assert_eq!(parse_rational("7/2").unwrap(), ratio(7, 2));
        assert_eq!(parse_rational("3.5").unwrap(), ratio(7, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn fraction_strings_are_reduced() {
        assert_eq!(to_fraction_string(&ratio(10, -4)), "-5/2");
        assert_eq!(to_fraction_string(&int(3)), "3/1");
    }
}
