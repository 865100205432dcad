//! Exact integer and rational arithmetic.
//!
//! Values are arbitrary precision; nothing here ever rounds. The factorial,
//! binomial and rising-factorial helpers are the building blocks of every
//! closed form in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

/// `n!` for `n >= 0`.
pub fn factorial(n: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::domain(format!("factorial of negative number {n}")));
    }
    Ok((2..=n).fold(Integer::one(), |acc, t| acc * t))
}

/// Binomial coefficient with the vanishing convention: `C(n, k) = 0` unless
/// `0 <= k <= n`.
///
/// Panics if `n < 0`; every caller in the crate passes a count.
pub fn binomial_int(n: i64, k: i64) -> Integer {
    assert!(n >= 0, "binomial_int requires n >= 0, got {n}");
    if k < 0 || k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for t in 0..k {
        // acc = C(n, t) here, and C(n, t+1) = C(n, t) * (n - t) / (t + 1) exactly
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Generalised binomial `x (x-1) ... (x-k+1) / k!`.
pub fn binomial_gen(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for t in 0..k {
        acc *= x - rat_int(t);
    }
    acc / rat_int(factorial(k as i64).expect("k is nonnegative"))
}

/// Rising factorial `(a)_i = a (a+1) ... (a+i-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, i: u64) -> Rational {
    let mut acc = Rational::one();
    for t in 0..i {
        acc *= a + rat_int(t);
    }
    acc
}

/// Converts to an integer, failing if the value has a nontrivial denominator.
pub fn expect_integral(value: &Rational, what: &str) -> Result<Integer> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Contract(format!(
            "{what} evaluated to non-integer {value}"
        )))
    }
}

/// Floor division for possibly negative numerators.
pub fn floor_div(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_floor(&a, &b)
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Text form `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Parses `p`, `-p`, `p/q` with optional sign on either part. The result is
/// normalised to lowest terms with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::parse(1, 1, format!("{msg}: {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_integer(num).ok_or_else(|| bad("invalid numerator"))?;
    let den = match den {
        Some(d) => parse_integer(d).ok_or_else(|| bad("invalid denominator"))?,
        None => Integer::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_integer(text: &str) -> Option<Integer> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), int(1));
        assert_eq!(factorial(5).unwrap(), int(120));
        // iterated multiplication in u128
        let oracle: u128 = (1..=20u128).product();
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20).unwrap(), Integer::from(oracle));
        assert!(matches!(factorial(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn factorial_handles_large_inputs() {
        let f200 = factorial(200).unwrap();
        assert_eq!(f200.to_string().len(), 375);
        assert_eq!(&f200 / factorial(199).unwrap(), int(200));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial_int(4, 1), int(4));
        assert_eq!(binomial_int(7, 2), int(21));
        assert_eq!(binomial_int(10, -1), int(0));
        assert_eq!(binomial_int(10, 11), int(0));
        assert_eq!(binomial_int(0, 0), int(1));
    }

    #[test]
    fn generalised_binomial_at_one_half() {
        let half = rat(1, 2);
        assert_eq!(binomial_gen(&half, 1), rat(1, 2));
        assert_eq!(binomial_gen(&half, 2), rat(-1, 8));
        assert_eq!(binomial_gen(&rat(17, 5), 0), rat(1, 1));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(2, 3), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&rat(-1, 6), 1), rat(-1, 6));
    }

    #[test]
    fn factorial_is_pochhammer_of_one() {
        for n in 0..=30u64 {
            assert_eq!(
                rat_int(factorial(n as i64).unwrap()),
                pochhammer(&rat(1, 1), n)
            );
        }
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
        assert_eq!(parse_rational("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rational("-12").unwrap(), rat(-12, 1));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        for bad in ["", "1/0", "1/", "/3", "x", "1.5", "1//2", "--1", "1 2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    proptest! {
        #[test]
        fn pochhammer_recurrence(num in -40i64..40, den in 1i64..12, i in 0u64..12) {
            let a = rat(num, den);
            let next = pochhammer(&a, i) * (&a + rat_int(i));
            prop_assert_eq!(pochhammer(&a, i + 1), next);
        }

        #[test]
        fn generalised_binomial_agrees_on_integers(n in 0i64..40, k in 0u64..45) {
            prop_assert_eq!(binomial_gen(&rat_int(n), k), rat_int(binomial_int(n, k as i64)));
        }

        #[test]
        fn rational_text_round_trip(num in any::<i64>(), den in 1i64..i64::MAX) {
            let value = rat(num, den);
            prop_assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }
}
