//! Arbitrary-precision rationals and rational intervals.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::KernelError;

/// Exact rational number, always stored reduced with positive denominator
/// (guaranteed by `num_rational::BigRational`).
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Parses "p/q" or "p". Whitespace is not accepted.
pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let bad = || KernelError::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.parse().map_err(|_| bad())?;
            let den: BigInt = q.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from(num))
        }
    }
}

/// Canonical "p/q" form; integers print without the "/1".
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// r^k for integer k (k may be negative if r is nonzero).
pub fn rat_pow(r: &Rational, k: i64) -> Rational {
    if k == 0 {
        return BigRational::one();
    }
    let mut base = if k < 0 { r.recip() } else { r.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        let sq = &base * &base;
        base = sq;
        e >>= 1;
    }
    acc
}

pub fn rat_abs(r: &Rational) -> Rational {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat_min(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn rat_max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// Closed rational interval [lo, hi]; the basic certificate carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if the interval certifies one: -1, 0 (straddles), +1.
    pub fn certified_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn shift(&self, c: &Rational) -> RatInterval {
        RatInterval::new(&self.lo + c, &self.hi + c)
    }

    pub fn pow(&self, k: u32) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn intersect(&self, o: &RatInterval) -> Option<RatInterval> {
        let lo = rat_max(self.lo.clone(), o.lo.clone());
        let hi = rat_min(self.hi.clone(), o.hi.clone());
        if lo <= hi {
            Some(RatInterval::new(lo, hi))
        } else {
            None
        }
    }

    pub fn disjoint(&self, o: &RatInterval) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }
}

/// 2^-k as a rational, the standard tolerance ladder.
pub fn two_pow_neg(k: u32) -> Rational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(rational_to_string(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn interval_mul_covers_products() {
        let a = RatInterval::new(rat(-1, 2), rat(3, 1));
        let b = RatInterval::new(rat(-2, 1), rat(1, 3));
        let m = a.mul(&b);
        assert!(m.contains(&(rat(-1, 2) * rat(-2, 1))));
        assert!(m.contains(&(rat(3, 1) * rat(-2, 1))));
    }

    #[test]
    fn rat_pow_negative_exponent() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
    }
}
