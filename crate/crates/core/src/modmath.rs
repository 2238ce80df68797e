//! Arithmetic in the ring of integers modulo a power of two.
//!
//! The units of Z/2^t are exactly the odd residues, so every odd integer has
//! a unique inverse modulo 2^t. That is the fact the number-theoretic DHT
//! construction relies on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported exponent. Products of two residues are formed in `u128`.
pub const MAX_EXPONENT: u32 = 63;

/// A modulus of the form `2^t`, `1 <= t <= 63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PowerOfTwoModulus {
    exponent: u32,
}

impl PowerOfTwoModulus {
    pub fn from_exponent(exponent: u32) -> Result<Self> {
        if exponent == 0 || exponent > MAX_EXPONENT {
            return Err(Error::domain(format!(
                "modulus exponent must be in 1..={MAX_EXPONENT}, got {exponent}"
            )));
        }
        Ok(Self { exponent })
    }

    /// Accepts `value` only if it is an exact power of two `>= 2`.
    pub fn from_value(value: u64) -> Result<Self> {
        if value < 2 || !value.is_power_of_two() {
            return Err(Error::domain(format!(
                "modulus must be a power of two >= 2, got {value}"
            )));
        }
        Self::from_exponent(value.trailing_zeros())
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn value(self) -> u64 {
        1u64 << self.exponent
    }

    fn mask(self) -> u64 {
        self.value() - 1
    }

    /// Reduces an unsigned value into `[0, M)`.
    pub fn reduce_u64(self, v: u64) -> u64 {
        v & self.mask()
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) as u64) & self.mask()
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        a.wrapping_add(b) & self.mask()
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        a.wrapping_sub(b) & self.mask()
    }
}

impl TryFrom<u64> for PowerOfTwoModulus {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Self::from_value(value)
    }
}

impl From<PowerOfTwoModulus> for u64 {
    fn from(m: PowerOfTwoModulus) -> u64 {
        m.value()
    }
}

impl fmt::Display for PowerOfTwoModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// An element of Z/M, stored canonically in `[0, M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: PowerOfTwoModulus,
}

impl Residue {
    pub fn new(value: i64, modulus: PowerOfTwoModulus) -> Self {
        signed_reduce(value, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PowerOfTwoModulus {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        self.value & 1 == 1
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and
/// `a*x + b*y = g`.
pub fn egcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::domain("egcd(0, 0) is undefined"));
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    let narrow =
        |v: i128| i64::try_from(v).map_err(|_| Error::domain("egcd coefficient overflows i64"));
    Ok((narrow(old_r)?, narrow(old_s)?, narrow(old_t)?))
}

/// Canonical representative of `d` in `[0, M)`; negative inputs wrap.
pub fn signed_reduce(d: i64, m: PowerOfTwoModulus) -> Residue {
    // Two's complement masking is exactly Euclidean reduction mod 2^t.
    Residue {
        value: (d as u64) & m.mask(),
        modulus: m,
    }
}

/// Inverse of `a` modulo `M`. Fails with [`Error::NotAUnit`] when `a` is even.
pub fn mod_inverse(a: i64, m: PowerOfTwoModulus) -> Result<Residue> {
    let r = signed_reduce(a, m);
    if !r.is_unit() {
        return Err(Error::NotAUnit {
            value: a,
            modulus: m.value(),
        });
    }
    Ok(Residue {
        value: inverse_u64(r.value, m),
        modulus: m,
    })
}

/// Inverse of an odd residue via Newton-Hensel lifting.
///
/// `x = a` is already correct mod 8 for odd `a`; each step
/// `x <- x (2 - a x)` doubles the number of correct low bits.
pub(crate) fn inverse_u64(a: u64, m: PowerOfTwoModulus) -> u64 {
    debug_assert!(a & 1 == 1);
    let mut x = a;
    let mut bits = 3;
    while bits < 64 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
        bits *= 2;
    }
    m.reduce_u64(x)
}

/// Inverse of an odd `a` via extended Euclid. Kept alongside the Hensel
/// route so the two can be cross-checked.
pub fn mod_inverse_euclid(a: i64, m: PowerOfTwoModulus) -> Result<Residue> {
    let r = signed_reduce(a, m);
    if !r.is_unit() {
        return Err(Error::NotAUnit {
            value: a,
            modulus: m.value(),
        });
    }
    // M = 2^63 does not fit in i64; compute the inverse mod 2^62 there and
    // lift once with Hensel.
    if m.exponent() == MAX_EXPONENT {
        let half = PowerOfTwoModulus::from_exponent(MAX_EXPONENT - 1)?;
        let x = mod_inverse_euclid(r.value as i64 & half.mask() as i64, half)?.value;
        let x = x.wrapping_mul(2u64.wrapping_sub(r.value.wrapping_mul(x)));
        return Ok(Residue {
            value: m.reduce_u64(x),
            modulus: m,
        });
    }
    let (_, x, _) = egcd(r.value as i64, m.value() as i64)?;
    Ok(signed_reduce(x, m))
}
