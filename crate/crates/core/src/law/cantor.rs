//! The Cantor function through its ternary-to-binary digit map.
//!
//! `φ(Σ a_n 3^-n) = Σ α(a_n) β(a_1)…β(a_{n-1}) 2^-n` with `α(0) = 0`,
//! `α(1) = α(2) = 1`, `β(1) = 0`, `β(0) = β(2) = 1`: ternary digits 0/2 become
//! binary 0/1 and the first digit 1 ends the expansion.
//!
//! Digits are extracted with exact integer arithmetic from the binary value
//! of the `f64` argument (or from an exact ratio), so truncation at
//! `digits` places is the only error.

use num_bigint::BigUint;

use crate::{Error, Result};

/// Matches the `f64` mantissa width.
pub const DEFAULT_CANTOR_DIGITS: usize = 52;

/// `x = num / 2^shift` exactly, for finite `x >= 0`.
fn exact_binary(x: f64) -> (BigUint, usize) {
    debug_assert!(x >= 0.0 && x.is_finite());
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    if e >= 0 {
        (BigUint::from(mant) << e as usize, 0)
    } else {
        (BigUint::from(mant), (-e) as usize)
    }
}

fn check_digits(digits: usize) -> Result<()> {
    if digits == 0 {
        return Err(Error::param("digits", "must be >= 1"));
    }
    Ok(())
}

/// Digit map on the exact value `num / den` in `[0, 1)`.
fn phi_exact(mut num: BigUint, den: &BigUint, digits: usize) -> f64 {
    let mut value = 0.0;
    let mut scale = 0.5;
    for _ in 0..digits {
        num *= 3u32;
        let digit: BigUint = &num / den;
        num -= &digit * den;
        match digit.to_u32_digits().first().copied().unwrap_or(0) {
            0 => {}
            1 => return value + scale,
            _ => value += scale,
        }
        scale *= 0.5;
    }
    value
}

/// Cantor function at `x` in `[0, 1]`, truncated to `digits` ternary places
/// (error at most `2^-digits`).
pub fn cantor_phi(x: f64, digits: usize) -> Result<f64> {
    check_digits(digits)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::param("x", "must lie in [0, 1]"));
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let (num, shift) = exact_binary(x);
    Ok(phi_exact(num, &(BigUint::from(1u32) << shift), digits))
}

/// Cantor function at the exact rational `num / den` in `[0, 1]`.
pub fn cantor_phi_ratio(num: u64, den: u64, digits: usize) -> Result<f64> {
    check_digits(digits)?;
    if den == 0 || num > den {
        return Err(Error::param("x", "ratio must lie in [0, 1]"));
    }
    if num == den {
        return Ok(1.0);
    }
    Ok(phi_exact(BigUint::from(num), &BigUint::from(den), digits))
}

/// Smallest `f64` that is `>= num / den`.
fn ceil_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    // 64 significant bits of the quotient, then correct by ulps
    let shift = (den.bits() as i64 - num.bits() as i64 + 64).max(0) as usize;
    let q: BigUint = (num << shift) / den;
    let approx = q.to_string().parse::<f64>().unwrap_or(0.0) / 2f64.powi(shift as i32);
    let below = |f: f64| {
        let (m, s) = exact_binary(f);
        // m / 2^s < num / den  <=>  m * den < num * 2^s
        m * den < num << s
    };
    let mut f = approx;
    while below(f) {
        f = f.next_up();
    }
    while f > 0.0 && !below(f.next_down()) {
        f = f.next_down();
    }
    f
}

/// Left-continuous quantile of the Cantor measure at `t` in `(0, 1]`.
///
/// The binary digits `b_n` of `t` become ternary digits `2 b_n`. A
/// terminating expansion is first rewritten in its non-terminating form
/// (`…01` becomes `…0111…`), which lands on the left end of the flat of `φ`
/// at level `t`. The exact value is rounded up to the next `f64`, so it
/// stays inside that flat whenever the flat is wider than one ulp.
pub fn cantor_quantile(t: f64, digits: usize) -> Result<f64> {
    check_digits(digits)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::param("t", "must lie in (0, 1]"));
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    let (num, shift) = exact_binary(t);
    let one = BigUint::from(1u32);
    let mut bits = Vec::with_capacity(digits);
    let mut rem = num;
    for k in 0..digits {
        if k >= shift {
            bits.push(0u8);
            continue;
        }
        let bit_pos = shift - 1 - k;
        let b = rem.bit(bit_pos as u64);
        if b {
            rem -= &one << bit_pos;
        }
        bits.push(b as u8);
    }
    let terminating = rem == BigUint::from(0u32);
    let last_one = bits.iter().rposition(|&b| b == 1);

    // value = acc / 3^len
    let mut acc = BigUint::from(0u32);
    let len = match (terminating, last_one) {
        (true, Some(k)) => {
            // b_1 … b_{k-1} then ternary digit 1 (= 0222…)
            for &b in &bits[..k] {
                acc = acc * 3u32 + 2u32 * b as u32;
            }
            acc = acc * 3u32 + 1u32;
            k + 1
        }
        _ => {
            for &b in &bits {
                acc = acc * 3u32 + 2u32 * b as u32;
            }
            digits
        }
    };
    let den = BigUint::from(3u32).pow(len as u32);
    Ok(ceil_to_f64(&acc, &den))
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: usize = DEFAULT_CANTOR_DIGITS;

    #[test]
    fn endpoints_and_classic_values() {
        assert_eq!(cantor_phi(0.0, D).unwrap(), 0.0);
        assert_eq!(cantor_phi(1.0, D).unwrap(), 1.0);
        assert_eq!(cantor_phi_ratio(1, 3, D).unwrap(), 0.5);
        assert_eq!(cantor_phi_ratio(2, 3, D).unwrap(), 0.5);
        assert!((cantor_phi_ratio(1, 4, D).unwrap() - 1.0 / 3.0).abs() <= 2f64.powi(-50));
        assert!((cantor_phi(0.25, D).unwrap() - 1.0 / 3.0).abs() <= 2f64.powi(-50));
        assert_eq!(cantor_phi(0.5, D).unwrap(), 0.5);
        // the f64 nearest 1/3 sits just left of the flat
        let below = cantor_phi(1.0 / 3.0, D).unwrap();
        assert!(below < 0.5 && 0.5 - below < 2f64.powi(-30));
    }

    #[test]
    fn quantile_values() {
        assert_eq!(cantor_quantile(1.0, D).unwrap(), 1.0);
        let q = cantor_quantile(0.5, D).unwrap();
        assert!(q >= 1.0 / 3.0 && q - 1.0 / 3.0 < 1e-16);
        assert_eq!(cantor_phi(q, D).unwrap(), 0.5);
        let q = cantor_quantile(0.25, D).unwrap();
        assert!((q - 1.0 / 9.0).abs() < 1e-16);
    }

    #[test]
    fn inverse_on_dyadic_grid() {
        for m in 1..=14 {
            let n = 1u64 << m;
            for j in (1..n).step_by(((n / 64).max(1)) as usize) {
                let t = j as f64 / n as f64;
                let q = cantor_quantile(t, D).unwrap();
                assert_eq!(cantor_phi(q, D).unwrap(), t, "t = {t}");
            }
        }
    }

    #[test]
    fn inverse_on_generic_levels() {
        let mut t = 0.123_456_789_f64;
        for _ in 0..200 {
            t = (t * 7.31 + 0.137).fract().max(1e-6);
            let q = cantor_quantile(t, D).unwrap();
            assert!((cantor_phi(q, D).unwrap() - t).abs() < 2f64.powi(-30));
        }
    }

    #[test]
    fn monotone() {
        let mut prev = 0.0;
        for k in 0..=10_000 {
            let v = cantor_phi(k as f64 / 10_000.0, D).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn range_checks() {
        assert!(cantor_phi(-0.1, D).is_err());
        assert!(cantor_phi(1.1, D).is_err());
        assert!(cantor_phi(0.5, 0).is_err());
        assert!(cantor_quantile(0.0, D).is_err());
        assert!(cantor_phi_ratio(4, 3, D).is_err());
    }
}
