//! Exact arithmetic in cyclotomic fields and certified enclosures of real
//! cyclotomic values.
//!
//! Elements of Q(zeta_N) are represented redundantly as rational polynomials
//! modulo x^N - 1; equality with zero is decided by exact divisibility by the
//! N-th cyclotomic polynomial. Real values get certified interval enclosures
//! through rigorous rational approximations of cos(2 pi k / N).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use conespec_kernel::poly::IntPoly;
use conespec_kernel::rational::{rat_int, two_pow_neg, RatInterval, Rational};

/// The N-th cyclotomic polynomial, by iterative division of x^d - 1 over the
/// divisor lattice.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    fn xn_minus_1(n: u64) -> IntPoly {
        let mut v = vec![BigInt::zero(); n as usize + 1];
        v[0] = -BigInt::one();
        v[n as usize] = BigInt::one();
        IntPoly::new(v)
    }
    let mut phis: std::collections::BTreeMap<u64, IntPoly> = Default::default();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut acc = xn_minus_1(d);
        for e in 1..d {
            if d % e == 0 {
                acc = acc.div_exact(&phis[&e]);
            }
        }
        phis.insert(d, acc);
    }
    phis.remove(&n).unwrap()
}

/// Element of Q(zeta_N) as coefficients modulo x^N - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycElem {
    pub order: u64,
    pub coeffs: Vec<Rational>, // length = order
}

impl CycElem {
    pub fn zero(order: u64) -> Self {
        CycElem {
            order,
            coeffs: vec![BigRational::zero(); order as usize],
        }
    }

    pub fn from_rational(order: u64, r: Rational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = r;
        e
    }

    /// zeta^k
    pub fn root_power(order: u64, k: u64) -> Self {
        let mut e = Self::zero(order);
        let idx = (k % order) as usize;
        e.coeffs[idx] = BigRational::one();
        e
    }

    /// Embeds into a field of multiple order.
    pub fn stretch(&self, new_order: u64) -> Self {
        assert!(new_order % self.order == 0);
        let f = (new_order / self.order) as usize;
        let mut e = Self::zero(new_order);
        for (i, c) in self.coeffs.iter().enumerate() {
            e.coeffs[i * f] = c.clone();
        }
        e
    }

    pub fn add(&self, o: &CycElem) -> CycElem {
        assert_eq!(self.order, o.order);
        CycElem {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> CycElem {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &CycElem) -> CycElem {
        assert_eq!(self.order, o.order);
        let n = self.order as usize;
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[(i + j) % n] += a * b;
            }
        }
        CycElem {
            order: self.order,
            coeffs: out,
        }
    }

    /// Complex conjugation: zeta -> zeta^(N-1).
    pub fn conj(&self) -> CycElem {
        let n = self.order as usize;
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(n - i) % n] = c.clone();
        }
        CycElem {
            order: self.order,
            coeffs: out,
        }
    }

    /// Adds c * zeta^j in place (the sparse workhorse for evaluation).
    pub fn add_monomial(&mut self, j: u64, c: &Rational) {
        let idx = (j % self.order) as usize;
        self.coeffs[idx] += c;
    }

    /// Exact zero test: the representative must be divisible by the
    /// cyclotomic polynomial of the order.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return true;
        }
        // clear denominators, reduce mod Phi_N over Q via exact division test
        let phi = cyclotomic_poly(self.order).to_rat().monic();
        let poly = conespec_kernel::poly::RatPoly::new(self.coeffs.clone());
        poly.rem(&phi).is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.sub(&self.conj()).is_zero()
    }

    pub fn sub(&self, o: &CycElem) -> CycElem {
        assert_eq!(self.order, o.order);
        CycElem {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Certified enclosure of the real part: sum of coeff_k cos(2 pi k / N).
    pub fn real_part_enclosure(&self, prec: u32) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let turn = BigRational::new(BigInt::from(k as u64), BigInt::from(self.order));
            let cosv = cos_turn_interval(&turn, prec);
            acc = acc.add(&cosv.scale(c));
        }
        acc
    }

    /// Exact sign of a real cyclotomic value (must satisfy `is_real`).
    /// Enclosures settle nonzero values quickly; the exact divisibility test
    /// is consulted only when refinement keeps straddling zero.
    pub fn real_sign(&self) -> i8 {
        let mut prec = 32u32;
        loop {
            let enc = self.real_part_enclosure(prec);
            if !enc.contains_zero() {
                return if enc.lo.is_positive() { 1 } else { -1 };
            }
            if prec >= 128 {
                if self.is_zero() {
                    return 0;
                }
            }
            prec += 64;
            assert!(prec < 1 << 16, "sign refinement failed to converge");
        }
    }

    /// Cheap structural rational extraction: succeeds when the support lies
    /// in {1, -1} (exponent 0 and, for even order, the half turn). Deeper
    /// cyclotomic cancellations deliberately return None; exactness there is
    /// the job of `is_zero` and `real_sign`.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.order as usize;
        let half = if n % 2 == 0 { Some(n / 2) } else { None };
        let mut value = BigRational::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                value += c;
            } else if Some(j) == half {
                value -= c;
            } else {
                return None;
            }
        }
        Some(value)
    }
}

// ---------------------------------------------------------------------------
// certified trigonometry at rational turns
// ---------------------------------------------------------------------------

thread_local! {
    static PI_CACHE: std::cell::RefCell<std::collections::HashMap<u32, RatInterval>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
    static COS_CACHE: std::cell::RefCell<
        std::collections::HashMap<(BigInt, BigInt, u32), RatInterval>,
    > = std::cell::RefCell::new(std::collections::HashMap::new());
}

/// Rigorous enclosure of pi via Machin's formula with alternating-series
/// error bounds.
pub fn pi_interval(prec: u32) -> RatInterval {
    if let Some(hit) = PI_CACHE.with(|c| c.borrow().get(&prec).cloned()) {
        return hit;
    }
    let a5 = atan_inv_interval(5, prec + 6);
    let a239 = atan_inv_interval(239, prec + 6);
    let out = a5.scale(&rat_int(16)).sub(&a239.scale(&rat_int(4)));
    PI_CACHE.with(|c| c.borrow_mut().insert(prec, out.clone()));
    out
}

/// atan(1/x) for integer x >= 2 by the alternating Taylor series.
fn atan_inv_interval(x: i64, prec: u32) -> RatInterval {
    let target = two_pow_neg(prec);
    let xr = rat_int(x);
    let x2 = &xr * &xr;
    let mut term = xr.recip();
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        let signed = if k % 2 == 0 { term.clone() } else { -term.clone() };
        sum += signed;
        // next term
        term = term / &x2 * rat_int(2 * k as i64 + 1) / rat_int(2 * k as i64 + 3);
        k += 1;
        if term < target {
            break;
        }
    }
    // alternating series: error bounded by the next term
    RatInterval::new(&sum - &term, &sum + &term)
}

/// cos(2 pi t) for rational t, certified to roughly 2^-prec.
pub fn cos_turn_interval(turn: &Rational, prec: u32) -> RatInterval {
    // normalize the turn into [0, 1)
    let turn = normalized_turn(turn);
    let key = (turn.numer().clone(), turn.denom().clone(), prec);
    if let Some(hit) = COS_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let pi = pi_interval(prec + 8);
    let x = pi.scale(&(turn * rat_int(2)));
    let out = cos_interval(&x, prec);
    COS_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

pub fn sin_turn_interval(turn: &Rational, prec: u32) -> RatInterval {
    // sin(y) = cos(y - pi/2): shift the turn by -1/4
    let shifted = normalized_turn(&(normalized_turn(turn) - BigRational::new(1.into(), 4.into())));
    let pi = pi_interval(prec + 8);
    let x = pi.scale(&(shifted * rat_int(2)));
    cos_interval(&x, prec)
}

fn normalized_turn(t: &Rational) -> Rational {
    let fl = t.floor();
    t - fl
}

/// cos on a small rational interval: Taylor at the midpoint with a Lagrange
/// tail bound, widened by the interval radius (|cos'| <= 1).
fn cos_interval(x: &RatInterval, prec: u32) -> RatInterval {
    let m = x.mid();
    let radius = x.width() / rat_int(2);
    let target = two_pow_neg(prec + 2);
    // Taylor sum_{j} (-1)^j m^(2j) / (2j)! until the Lagrange bound is small
    let m2 = &m * &m;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut j = 0u32;
    let tail = loop {
        sum += if j % 2 == 0 { term.clone() } else { -term.clone() };
        // next term: m^(2j+2) / (2j+2)!
        term = term * &m2 / rat_int((2 * j as i64 + 1) * (2 * j as i64 + 2));
        j += 1;
        if term < target && j > 1 {
            break term;
        }
        assert!(j < 4096, "cosine series failed to converge");
    };
    let slack = &tail + &radius;
    let lo = &sum - &slack;
    let hi = &sum + &slack;
    // clamp into [-1, 1]: cheap and keeps enclosures sane near extrema
    let lo = if lo < rat_int(-1) { rat_int(-1) } else { lo };
    let hi = if hi > rat_int(1) { rat_int(1) } else { hi };
    RatInterval::new(lo, hi)
}

/// lcm of the denominators of a list of rational turns.
pub fn common_order(turns: &[Rational]) -> u64 {
    let mut l = BigInt::one();
    for t in turns {
        l = l.lcm(t.denom());
    }
    use num_traits::ToPrimitive;
    l.to_u64().expect("turn denominators overflow u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use conespec_kernel::rational::rat;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        // zeta3 + zeta3^2 = -1
        let a = CycElem::root_power(3, 1);
        let b = CycElem::root_power(3, 2);
        let s = a.add(&b);
        assert!(s.is_real());
        assert_eq!(s.real_sign(), -1);
        // exactly -1: s + 1 vanishes in the field
        let plus_one = s.add(&CycElem::from_rational(3, rat_int(1)));
        assert!(plus_one.is_zero());
    }

    #[test]
    fn geometric_sum_vanishes() {
        // 1 + zeta5 + ... + zeta5^4 = 0
        let mut s = CycElem::zero(5);
        for k in 0..5 {
            s = s.add(&CycElem::root_power(5, k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation_and_realness() {
        let z = CycElem::root_power(8, 1);
        assert!(!z.is_real());
        let r = z.add(&z.conj()); // 2cos(pi/4) = sqrt2
        assert!(r.is_real());
        assert_eq!(r.real_sign(), 1);
        let enc = r.real_part_enclosure(64);
        // sqrt2 ~ 1.41421356
        assert!(enc.lo < rat(141422, 100000));
        assert!(enc.hi > rat(141421, 100000));
    }

    #[test]
    fn pi_enclosure_tight() {
        let p = pi_interval(64);
        assert!(p.lo < rat(314159265359i64, 100000000000i64));
        assert!(p.hi > rat(314159265358i64, 100000000000i64));
        assert!(p.width() < two_pow_neg(60));
    }

    #[test]
    fn cos_at_special_turns() {
        let c0 = cos_turn_interval(&rat(0, 1), 64);
        assert!(c0.contains(&rat_int(1)));
        let chalf = cos_turn_interval(&rat(1, 2), 64);
        assert!(chalf.contains(&rat_int(-1)));
        let c3 = cos_turn_interval(&rat(1, 3), 64);
        assert!(c3.contains(&rat(-1, 2)));
        let c4 = cos_turn_interval(&rat(1, 4), 64);
        assert!(c4.contains(&rat(0, 1)));
    }

    #[test]
    fn mul_in_field() {
        // zeta4^2 = -1
        let i = CycElem::root_power(4, 1);
        let m = i.mul(&i);
        assert_eq!(m.as_rational(), Some(rat_int(-1)));
    }
}
