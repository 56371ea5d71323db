//! Exact rational scalars.
//!
//! All areas, volumes, and curvature parameters in this crate are
//! arbitrary-precision rationals kept in lowest terms with a positive
//! denominator (`num_rational::BigRational` guarantees both). No floating
//! point enters any computation; decimals appear only as renderings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand constructor used heavily in tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse an exact rational from one of three accepted forms: an integer
/// string ("42", "-3"), a fraction "p/q" with positive q, or a finite
/// decimal ("0.25", "-1.5"). Binary floats and exponents are rejected.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty weight".into());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator {p:?}"))?;
        let den: BigInt = q
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator {q:?}"))?;
        if den <= BigInt::zero() {
            return Err(format!("denominator must be positive, got {q}"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) || int_digits.is_empty() {
            return Err(format!("bad decimal {s:?}"));
        }
        let int_val: BigInt = int_digits.parse().unwrap();
        let frac_val: BigInt = frac_part.parse().unwrap();
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = Rational::new(int_val * &scale + frac_val, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let num: BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
    Ok(Rational::from_integer(num))
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Plain decimal rendering with `sig` significant digits, round half away
/// from zero, trailing fractional zeros stripped. Never uses exponents.
pub fn decimal_string(r: &Rational, sig: usize) -> String {
    assert!(sig > 0);
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    let int_part = &num / &den;
    let int_str = int_part.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if !int_part.is_zero() && int_str.len() >= sig {
        // Round the integer itself to `sig` significant digits.
        let drop = int_str.len() - sig;
        let pow = BigInt::from(10u32).pow(drop as u32);
        let (q, rem) = (&num / &den).div_rem(&pow);
        let q = if BigInt::from(2) * rem >= pow { q + 1 } else { q };
        let mut s = (q * pow).to_string();
        // Rounding can add a digit (999 -> 1000); keep the full integer.
        if s.len() < int_str.len() {
            s = format!("{:0>width$}", s, width = int_str.len());
        }
        out.push_str(&s);
        return out;
    }

    let frac_digits = if int_part.is_zero() {
        // Count leading zeros after the point before the first significant digit.
        let mut lead = 0usize;
        let mut scaled: BigInt = num.clone() * 10;
        let mut rem: BigInt = &scaled / &den;
        while rem.is_zero() {
            lead += 1;
            scaled *= 10;
            rem = &scaled / &den;
        }
        lead + sig
    } else {
        sig - int_str.len()
    };

    let pow = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = &num * &pow;
    let (mut q, rem) = scaled.div_rem(&den);
    if BigInt::from(2) * rem >= den {
        q += 1;
    }
    let digits = q.to_string();
    let (ipart, fpart) = if digits.len() > frac_digits {
        let split = digits.len() - frac_digits;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", digits, width = frac_digits))
    };
    out.push_str(&ipart);
    let fpart = fpart.trim_end_matches('0');
    if !fpart.is_empty() {
        out.push('.');
        out.push_str(fpart);
    }
    out
}
