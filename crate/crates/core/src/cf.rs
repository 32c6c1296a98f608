//! Ceiling (negative-regular) continued fractions and their SL₂(ℤ) side.
//!
//! For coprime `0 < d < r` the recurrence `(r, d) ↦ (d, ⌈r/d⌉·d - r)`
//! terminates at `(1, 0)` and its quotients `aᵢ = ⌈rᵢ/dᵢ⌉` satisfy `aᵢ >= 2`
//! and
//!
//! ```text
//! r/d = a₀ - 1/(a₁ - 1/(a₂ - ...))
//! ```
//!
//! The module also computes the Bézout cofactors `(b, c)` with
//! `r·c + d·b = 1` and `0 < b < r`, evaluates reversed expansions (which
//! produce `r/b`), and realizes expansions as products `Tᵃ⁰S·Tᵃ¹S···TᵃⁿS`
//! in SL₂(ℤ). All rational values are exact, with arbitrary-precision
//! integers; nothing here touches floating point.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fm::{Mat2, UniModMatrix};

/// Digits `a₀..aₙ` of a ceiling continued fraction; every digit is at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    digits: Vec<i64>,
}

impl CfExpansion {
    pub fn new(digits: Vec<i64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::Invariant {
                name: "cf_nonempty",
                detail: "digit list must be nonempty".into(),
            });
        }
        if let Some(&bad) = digits.iter().find(|&&a| a < 2) {
            return Err(Error::Invariant {
                name: "cf_digit_min",
                detail: format!("digits must be at least 2, got {bad}"),
            });
        }
        Ok(CfExpansion { digits })
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> CfExpansion {
        CfExpansion { digits: self.digits.iter().rev().copied().collect() }
    }

    pub fn last(&self) -> i64 {
        *self.digits.last().expect("digit list is nonempty")
    }
}

/// The Bézout cofactors of a coprime pair: `r·c + d·b = 1` with `0 < b < r`,
/// so `b` is the inverse of `d` modulo `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutPair {
    pub r: i64,
    pub d: i64,
    pub b: i64,
    pub c: i64,
}

fn check_pair(r: i64, d: i64) -> Result<()> {
    if d <= 0 || d >= r {
        return Err(Error::OutOfRange {
            name: "d",
            detail: format!("need 0 < d < r, got r={r}, d={d}"),
        });
    }
    if num_integer::gcd(r, d) != 1 {
        return Err(Error::NotCoprime { a: r, b: d });
    }
    Ok(())
}

fn ceil_div(r: i64, d: i64) -> i64 {
    debug_assert!(r > 0 && d > 0);
    (r + d - 1) / d
}

/// Expand `r/d` by the ceiling recurrence `(r, d) ↦ (d, ⌈r/d⌉·d - r)`.
pub fn cf_expand(r: i64, d: i64) -> Result<CfExpansion> {
    check_pair(r, d)?;
    let (mut r, mut d) = (r, d);
    let mut digits = Vec::new();
    while d > 0 {
        let a = ceil_div(r, d);
        digits.push(a);
        (r, d) = (d, a * d - r);
    }
    debug_assert_eq!(r, 1, "coprime input terminates at (1, 0)");
    debug_assert!(digits.iter().all(|&a| a >= 2));
    Ok(CfExpansion { digits })
}

/// Evaluate `a₀ - 1/(a₁ - 1/(...))` exactly. The result is `> 1` in lowest
/// terms, and `cf_eval(cf_expand(r, d)) = r/d`.
pub fn cf_eval(cf: &CfExpansion) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(cf.last()));
    for &a in cf.digits.iter().rev().skip(1) {
        // Every partial evaluation exceeds 1 because all digits are >= 2,
        // so the reciprocal below never divides by zero.
        acc = BigRational::from_integer(BigInt::from(a)) - acc.recip();
    }
    acc
}

/// Inverse of `d` modulo `r`, normalized to `0 < b < r`. Shared by the
/// appendix-style cofactor `b` and the rank bound usually written `a`; the
/// two names denote the same number.
pub(crate) fn mod_inverse(d: i64, r: i64) -> i64 {
    // Extended Euclid tracking only the coefficient of d.
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_r, mut rr) = (d, r);
    while rr != 0 {
        let q = old_r.div_euclid(rr);
        (old_r, rr) = (rr, old_r - q * rr);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r.abs(), 1);
    // old_s * d == old_r (mod r); flip sign if the gcd came out as -1.
    let inv = if old_r == 1 { old_s } else { -old_s };
    inv.rem_euclid(r)
}

/// The unique pair `(b, c)` with `r·c + d·b = 1` and `0 < b < r`.
pub fn bezout(r: i64, d: i64) -> Result<BezoutPair> {
    check_pair(r, d)?;
    let b = mod_inverse(d, r);
    debug_assert!(b > 0 && b < r);
    let c = (1 - d * b) / r;
    debug_assert_eq!(r * c + d * b, 1);
    Ok(BezoutPair { r, d, b, c })
}

/// Evaluate the reversed expansion of `r/d`; the result equals `r/b` with
/// `b` the Bézout cofactor.
pub fn cf_reverse(r: i64, d: i64) -> Result<BigRational> {
    Ok(cf_eval(&cf_expand(r, d)?.reversed()))
}

/// The factor `Tᵃ·S` contributed by one digit.
fn digit_factor(a: i64) -> UniModMatrix {
    gen_t_pow(a) * gen_s()
}

/// The SL₂(ℤ) matrix `A = Tᵃ⁰·S·Tᵃ¹·S···TᵃⁿS`. Its first column is `(r, d)ᵗ`
/// and its second is `(-b, c)ᵗ`.
pub fn cf_matrix(cf: &CfExpansion) -> UniModMatrix {
    cf.digits
        .iter()
        .fold(UniModMatrix::identity(), |acc, &a| acc * digit_factor(a))
}

/// The closing digit `aₙ` of the expansion of `r/d`; it equals `⌈r/b⌉`.
pub fn last_digit(r: i64, d: i64) -> Result<i64> {
    Ok(cf_expand(r, d)?.last())
}

/// `T = [[1,1],[0,1]]`.
pub fn gen_t() -> UniModMatrix {
    gen_t_pow(1)
}

/// `Tᵃ = [[1,a],[0,1]]`.
pub fn gen_t_pow(a: i64) -> UniModMatrix {
    UniModMatrix::new([[1, a], [0, 1]]).expect("shear matrices have determinant 1")
}

/// `S = [[0,-1],[1,0]]`, the quarter turn; also the charge matrix of the
/// Poincaré-kernel transform.
pub fn gen_s() -> UniModMatrix {
    UniModMatrix::psi()
}

/// `R = [[-1,0],[0,1]]`. Determinant -1, so it lives outside SL₂(ℤ); it
/// enters only through the conjugation `R·Aᵗ·R` in the reversal identity.
pub fn gen_r() -> Mat2 {
    Mat2::new([[-1, 0], [0, 1]])
}
