//! Decimal rendering of exact rationals. Values are accumulated exactly
//! everywhere in this crate; conversion to digits happens once, here, with
//! explicit rounding (half away from zero).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Fixed-point rendering with the given number of decimals.
pub fn rational_decimal(r: &BigRational, decimals: usize) -> String {
    let negative = r.is_negative();
    let numer = r.numer().abs().to_biguint().expect("abs is nonnegative");
    let denom = r.denom().to_biguint().expect("denominator is positive");
    let scaled = numer * BigUint::from(10u32).pow(u32::try_from(decimals).unwrap());
    let (mut q, rem) = scaled.div_rem(&denom);
    if BigUint::from(2u32) * rem >= denom {
        q += 1u32;
    }
    let digits = q.to_string();
    let sign = if negative && !q.is_zero() { "-" } else { "" };
    if decimals == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = decimals + 1);
    let split = padded.len() - decimals;
    format!("{sign}{}.{}", &padded[..split], &padded[split..])
}

/// Scientific rendering with the given number of significant digits,
/// e.g. `3.91e3` or `1.37e38`.
pub fn rational_scientific(r: &BigRational, sig_digits: usize) -> String {
    assert!(sig_digits >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let numer = r.numer().abs().to_biguint().unwrap();
    let denom = r.denom().to_biguint().unwrap();
    let mut exponent = floor_log10(&numer, &denom);
    let mut mantissa = round_scaled(&numer, &denom, sig_digits as i64 - 1 - exponent);
    let cap = BigUint::from(10u32).pow(u32::try_from(sig_digits).unwrap());
    if mantissa == cap {
        // Rounding carried into the next decade (e.g. 9.99 -> 10.0).
        mantissa = &cap / 10u32;
        exponent += 1;
    }
    let digits = mantissa.to_string();
    debug_assert_eq!(digits.len(), sig_digits);
    let sign = if negative { "-" } else { "" };
    if sig_digits == 1 {
        format!("{sign}{digits}e{exponent}")
    } else {
        format!("{sign}{}.{}e{exponent}", &digits[..1], &digits[1..])
    }
}

/// Rendering with significant digits, fixed-point for moderate magnitudes
/// and scientific otherwise.
pub fn rational_sig_string(r: &BigRational, sig_digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let numer = r.numer().abs().to_biguint().unwrap();
    let denom = r.denom().to_biguint().unwrap();
    let exponent = floor_log10(&numer, &denom);
    if exponent < -4 || exponent >= 9 {
        rational_scientific(r, sig_digits)
    } else {
        let decimals = (sig_digits as i64 - 1 - exponent).max(0) as usize;
        rational_decimal(r, decimals)
    }
}

/// Plain "numerator/denominator" form, or just the numerator for integers.
pub fn rational_exact_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// floor(log10(n/d)) for positive n, d.
fn floor_log10(numer: &BigUint, denom: &BigUint) -> i64 {
    assert!(!numer.is_zero() && !denom.is_zero());
    let mut e = numer.to_string().len() as i64 - denom.to_string().len() as i64;
    // The digit-count estimate is off by at most one; fix by comparison.
    while pow10_cmp(numer, denom, e) == std::cmp::Ordering::Less {
        e -= 1;
    }
    while pow10_cmp(numer, denom, e + 1) != std::cmp::Ordering::Less {
        e += 1;
    }
    e
}

/// Compares n/d with 10^e.
fn pow10_cmp(numer: &BigUint, denom: &BigUint, e: i64) -> std::cmp::Ordering {
    if e >= 0 {
        numer.cmp(&(denom * BigUint::from(10u32).pow(u32::try_from(e).unwrap())))
    } else {
        (numer * BigUint::from(10u32).pow(u32::try_from(-e).unwrap())).cmp(denom)
    }
}

/// round(n/d * 10^shift), half away from zero.
fn round_scaled(numer: &BigUint, denom: &BigUint, shift: i64) -> BigUint {
    let (n, d) = if shift >= 0 {
        (
            numer * BigUint::from(10u32).pow(u32::try_from(shift).unwrap()),
            denom.clone(),
        )
    } else {
        (
            numer.clone(),
            denom * BigUint::from(10u32).pow(u32::try_from(-shift).unwrap()),
        )
    };
    let (mut q, rem) = n.div_rem(&d);
    if BigUint::from(2u32) * rem >= d {
        q += 1u32;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_decimal(&ratio(1, 3), 2), "0.33");
        assert_eq!(rational_decimal(&ratio(2, 3), 2), "0.67");
        assert_eq!(rational_decimal(&ratio(9521, 100), 2), "95.21");
        assert_eq!(rational_decimal(&ratio(999, 1000), 2), "1.00");
        assert_eq!(rational_decimal(&ratio(5, 1), 0), "5");
        assert_eq!(rational_decimal(&ratio(-1, 8), 3), "-0.125");
        assert_eq!(rational_decimal(&ratio(0, 1), 2), "0.00");
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(rational_scientific(&ratio(3937, 1), 3), "3.94e3");
        assert_eq!(rational_scientific(&ratio(3906, 1), 3), "3.91e3");
        assert_eq!(rational_scientific(&ratio(1, 8), 3), "1.25e-1");
        assert_eq!(rational_scientific(&ratio(999, 1), 2), "1.0e3");
        assert_eq!(rational_scientific(&ratio(0, 1), 3), "0");
        assert_eq!(rational_scientific(&ratio(-25, 2), 3), "-1.25e1");
        // Paper-style magnitudes survive exactly.
        let big = BigRational::from(BigInt::from(137u64) * BigInt::from(10u64).pow(36));
        assert_eq!(rational_scientific(&big, 3), "1.37e38");
    }

    #[test]
    fn sig_string_switches_notation() {
        assert_eq!(rational_sig_string(&ratio(5, 2), 3), "2.50");
        assert_eq!(rational_sig_string(&ratio(3937, 1), 6), "3937.00");
        assert_eq!(rational_sig_string(&ratio(1, 100000), 3), "1.00e-5");
        let big = BigRational::from(BigInt::from(10u64).pow(12));
        assert_eq!(rational_sig_string(&big, 3), "1.00e12");
    }

    #[test]
    fn exact_string() {
        assert_eq!(rational_exact_string(&ratio(5, 2)), "5/2");
        assert_eq!(rational_exact_string(&ratio(4, 2)), "2");
    }
}
