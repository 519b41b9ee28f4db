//! Exact arithmetic used by every threshold test.
//!
//! Average degrees, codegree bounds and sampling probabilities are kept as
//! reduced fractions. Irrational quantities such as `d^{1/4}` or `log2 k`
//! are never materialised; instead the comparison is rewritten into an
//! integer inequality (`x^4 >= d`, `k^q >= 2^p`) and decided with big
//! integers.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Shorthand constructor; panics on a zero denominator.
pub fn rat(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

pub fn int(v: i128) -> Rational {
    Ratio::from_integer(v)
}

/// Renders as `p/q` even for integers, so consumers never see decimals.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Argument(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(rat(p, q))
        }
        None => Ok(int(s.parse().map_err(|_| bad())?)),
    }
}

/// `serde(with = ...)` adapter that stores rationals as `"p/q"` strings.
pub mod serde_fraction {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn big_pow(r: &Rational, e: u32) -> BigRational {
    num_traits::pow(to_big(r), e as usize)
}

/// Decides `x^a >= y^b` without overflow.
pub fn pow_ge(x: &Rational, a: u32, y: &Rational, b: u32) -> bool {
    big_pow(x, a) >= big_pow(y, b)
}

/// `x^e` in the small-integer range; overflows panic, which at desk scale
/// never happens for the exponents used here (at most 7).
pub fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(*x, e as usize)
}

pub fn ceil_usize(r: &Rational) -> usize {
    let c = r.ceil().to_integer();
    if c <= 0 {
        0
    } else {
        c as usize
    }
}

pub fn floor_usize(r: &Rational) -> usize {
    let f = r.floor().to_integer();
    if f <= 0 {
        0
    } else {
        f as usize
    }
}

fn biguint(v: i128) -> BigUint {
    BigUint::from(v.max(0) as u128)
}

/// Dyadic lower approximation `floor(x^{1/n} * 2^bits) / 2^bits` of the
/// real `n`-th root of a non-negative rational.
pub fn root_floor(x: &Rational, n: u32, bits: u32) -> Rational {
    assert!(n >= 1, "root index must be positive");
    if !x.is_positive() {
        return Rational::zero();
    }
    let scaled = (biguint(*x.numer()) << (bits as usize * n as usize)) / biguint(*x.denom());
    let root = scaled.nth_root(n);
    let num = root.to_i128().expect("root fits in i128");
    rat(num, 1i128 << bits)
}

/// Fixed-point resolution of sampling probabilities: an item is kept iff a
/// uniform `u32` draw is strictly below the threshold.
pub const PROB_BITS: u32 = 32;

/// A sampling probability quantised to `threshold / 2^32`, always rounded
/// down and clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    threshold: u64,
}

impl Probability {
    pub const ONE: Probability = Probability { threshold: 1 << PROB_BITS };

    fn from_scaled(v: BigUint) -> Self {
        let cap = BigUint::one() << PROB_BITS as usize;
        let t = if v >= cap { cap } else { v };
        Probability { threshold: t.to_u64().expect("bounded by 2^32") }
    }

    pub fn from_rational(p: &Rational) -> Self {
        if !p.is_positive() {
            return Probability { threshold: 0 };
        }
        Self::from_scaled((biguint(*p.numer()) << PROB_BITS as usize) / biguint(*p.denom()))
    }

    /// `coeff * base^(-a/b)`, e.g. `3 d^{-1/2}` or `Δ^{-3/4} / 2`.
    pub fn scaled_inverse_root(coeff: &Rational, base: &Rational, a: u32, b: u32) -> Self {
        if !coeff.is_positive() {
            return Probability { threshold: 0 };
        }
        if !base.is_positive() {
            return Self::ONE;
        }
        // (coeff * 2^32)^b / base^a, then the integer b-th root.
        let cn = num_traits::pow(biguint(*coeff.numer()), b as usize);
        let cd = num_traits::pow(biguint(*coeff.denom()), b as usize);
        let bn = num_traits::pow(biguint(*base.numer()), a as usize);
        let bd = num_traits::pow(biguint(*base.denom()), a as usize);
        let numer = (cn * bd) << (PROB_BITS as usize * b as usize);
        let denom = cd * bn;
        Self::from_scaled((numer / denom).nth_root(b))
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn is_one(&self) -> bool {
        self.threshold >= 1 << PROB_BITS
    }

    pub fn as_rational(&self) -> Rational {
        rat(self.threshold as i128, 1i128 << PROB_BITS)
    }

    pub fn keep(&self, draw: u32) -> bool {
        (draw as u64) < self.threshold
    }
}

/// Smallest `r >= 0` with `2^r >= k^e`, i.e. `ceil(e * log2 k)` for `k >= 1`.
pub fn ceil_log2_pow(k: &Rational, e: u32) -> u32 {
    let target = big_pow(k, e);
    let mut r = 0u32;
    let mut two_r = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    while two_r < target {
        two_r *= &two;
        r += 1;
    }
    r
}

/// Decides `log2(k) >= c` exactly for `k > 0`.
///
/// Brackets `m * log2 k` between bit lengths of `a^m` and `b^m` for growing
/// `m`; a near-tie falls back to comparing `k^q` with `2^p` for `c = p/q`.
pub fn log2_ge(k: &Rational, c: &Rational) -> bool {
    assert!(k.is_positive(), "log2 of a non-positive number");
    let a = biguint(*k.numer());
    let b = biguint(*k.denom());
    let mut m: u32 = 16;
    while m <= 4096 {
        let la = num_traits::pow(a.clone(), m as usize).bits() as i128;
        let lb = num_traits::pow(b.clone(), m as usize).bits() as i128;
        // (la - lb - 1) < m * log2 k < (la - lb + 1)
        let mc = *c * int(m as i128);
        if mc <= int(la - lb - 1) {
            return true;
        }
        if mc >= int(la - lb + 1) {
            return false;
        }
        m *= 4;
    }
    // log2 k >= p/q  <=>  a^q * 2^{-p} >= b^q  (q > 0)
    let p = *c.numer();
    let q = *c.denom() as usize;
    let lhs = num_traits::pow(a, q);
    let rhs = num_traits::pow(b, q);
    if p >= 0 {
        lhs >= rhs << (p as usize)
    } else {
        lhs << (p.unsigned_abs() as usize) >= rhs
    }
}
