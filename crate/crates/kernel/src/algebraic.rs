//! Certified real algebraic numbers: an irreducible integer minimal
//! polynomial plus a refinable isolating interval. All arithmetic and all
//! comparisons are exact; intervals are only ever certificates.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::KernelError;
use crate::factor::factor_int_poly;
use crate::poly::{isolate_real_roots, refine_root_interval, IntPoly, RatPoly, SturmChain};
use crate::rational::{rat_int, rat_sign, two_pow_neg, RatInterval, Rational};
use crate::resultant::{root_prod_poly, root_sum_poly};

/// A real root of an irreducible primitive integer polynomial of degree >= 2,
/// isolated by an interval with a sign change whose interior contains exactly
/// that root. Endpoints are never roots (the polynomial has no rational ones).
#[derive(Debug, Clone)]
pub struct AlgebraicRoot {
    pub min_poly: IntPoly,
    pub interval: RatInterval,
}

impl AlgebraicRoot {
    pub fn refine_once(&mut self) {
        self.interval = refine_root_interval(&self.min_poly, &self.interval);
    }

    pub fn refined_to(&self, eps: &Rational) -> AlgebraicRoot {
        let mut out = self.clone();
        while out.interval.width() > *eps {
            out.refine_once();
        }
        out
    }
}

/// Exact real algebraic number.
#[derive(Debug, Clone)]
pub enum RealAlgebraic {
    Rational(Rational),
    Algebraic(AlgebraicRoot),
}

impl RealAlgebraic {
    pub fn from_rational(r: Rational) -> Self {
        RealAlgebraic::Rational(r)
    }

    pub fn from_int(n: i64) -> Self {
        RealAlgebraic::Rational(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Wraps an isolated root of an irreducible primitive polynomial.
    /// Degree-1 polynomials collapse to the rational root.
    pub fn from_isolated_root(min_poly: IntPoly, interval: RatInterval) -> Self {
        if min_poly.degree() == 1 {
            let r = -BigRational::new(min_poly.coeff(0), min_poly.coeff(1));
            return RealAlgebraic::Rational(r);
        }
        RealAlgebraic::Algebraic(AlgebraicRoot { min_poly, interval })
    }

    /// All real roots of an arbitrary nonzero rational polynomial, ascending.
    pub fn real_roots_of(f: &RatPoly) -> Vec<RealAlgebraic> {
        let mut out = vec![];
        if f.degree() == 0 {
            return out;
        }
        for (fac, _mult) in factor_int_poly(&f.to_int_primitive()) {
            for iv in isolate_real_roots(&fac) {
                out.push(RealAlgebraic::from_isolated_root(fac.clone(), iv));
            }
        }
        out.sort_by(|a, b| a.cmp(b));
        out
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlgebraic::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealAlgebraic::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Minimal polynomial as a primitive integer polynomial (degree 1 for
    /// rationals: q*x - p).
    pub fn min_poly(&self) -> IntPoly {
        match self {
            RealAlgebraic::Rational(r) => {
                IntPoly::new(vec![-r.numer().clone(), r.denom().clone()])
            }
            RealAlgebraic::Algebraic(a) => a.min_poly.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            RealAlgebraic::Rational(_) => 1,
            RealAlgebraic::Algebraic(a) => a.min_poly.degree(),
        }
    }

    /// A certified enclosure of width <= eps.
    pub fn enclosure(&self, eps: &Rational) -> RatInterval {
        match self {
            RealAlgebraic::Rational(r) => RatInterval::point(r.clone()),
            RealAlgebraic::Algebraic(a) => a.refined_to(eps).interval,
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            RealAlgebraic::Rational(r) => rat_sign(r),
            RealAlgebraic::Algebraic(a) => {
                // zero is rational, so the root is nonzero; refine until the
                // interval certifies the sign
                let mut root = a.clone();
                loop {
                    if let Some(s) = root.interval.certified_sign() {
                        return s;
                    }
                    if !root.interval.contains_zero() {
                        return if root.interval.lo.is_positive() { 1 } else { -1 };
                    }
                    root.refine_once();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RealAlgebraic::Rational(r) if r.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn cmp(&self, other: &RealAlgebraic) -> Ordering {
        match (self, other) {
            (RealAlgebraic::Rational(a), RealAlgebraic::Rational(b)) => a.cmp(b),
            (RealAlgebraic::Rational(r), RealAlgebraic::Algebraic(b)) => {
                // r is never equal to a root of an irreducible poly of deg >= 2
                let mut root = b.clone();
                loop {
                    if *r <= root.interval.lo {
                        return Ordering::Less;
                    }
                    if *r >= root.interval.hi {
                        return Ordering::Greater;
                    }
                    root.refine_once();
                }
            }
            (RealAlgebraic::Algebraic(_), RealAlgebraic::Rational(_)) => {
                other.cmp(self).reverse()
            }
            (RealAlgebraic::Algebraic(a), RealAlgebraic::Algebraic(b)) => {
                if a.min_poly == b.min_poly {
                    if let Some(common) = a.interval.intersect(&b.interval) {
                        if common.lo < common.hi {
                            let chain = SturmChain::new(&a.min_poly.to_rat().monic());
                            if chain.count_roots(&common.lo, &common.hi) == 1 {
                                return Ordering::Equal;
                            }
                        }
                    }
                }
                // distinct numbers: refine until the intervals separate
                let mut x = a.clone();
                let mut y = b.clone();
                loop {
                    if x.interval.hi <= y.interval.lo {
                        return Ordering::Less;
                    }
                    if y.interval.hi <= x.interval.lo {
                        return Ordering::Greater;
                    }
                    x.refine_once();
                    y.refine_once();
                    if x.min_poly == y.min_poly {
                        if let Some(common) = x.interval.intersect(&y.interval) {
                            if common.lo < common.hi {
                                let chain = SturmChain::new(&x.min_poly.to_rat().monic());
                                if chain.count_roots(&common.lo, &common.hi) == 1 {
                                    return Ordering::Equal;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn equals(&self, other: &RealAlgebraic) -> bool {
        self.cmp(other) == Ordering::Equal
    }

    pub fn neg(&self) -> RealAlgebraic {
        match self {
            RealAlgebraic::Rational(r) => RealAlgebraic::Rational(-r.clone()),
            RealAlgebraic::Algebraic(a) => RealAlgebraic::Algebraic(AlgebraicRoot {
                min_poly: a.min_poly.compose_neg().primitive(),
                interval: a.interval.neg(),
            }),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> RealAlgebraic {
        match self {
            RealAlgebraic::Rational(a) => RealAlgebraic::Rational(a + r),
            RealAlgebraic::Algebraic(a) => {
                // roots of p(x - r)
                let shifted = a.min_poly.to_rat().shift(&-r.clone()).to_int_primitive();
                RealAlgebraic::Algebraic(AlgebraicRoot {
                    min_poly: shifted,
                    interval: a.interval.shift(r),
                })
            }
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> RealAlgebraic {
        if r.is_zero() {
            return RealAlgebraic::zero();
        }
        match self {
            RealAlgebraic::Rational(a) => RealAlgebraic::Rational(a * r),
            RealAlgebraic::Algebraic(a) => {
                // roots of p(x / r)
                let scaled = a
                    .min_poly
                    .to_rat()
                    .scale_arg(&r.recip())
                    .to_int_primitive();
                RealAlgebraic::Algebraic(AlgebraicRoot {
                    min_poly: scaled,
                    interval: a.interval.scale(r),
                })
            }
        }
    }

    pub fn add(&self, other: &RealAlgebraic) -> RealAlgebraic {
        match (self, other) {
            (RealAlgebraic::Rational(a), _) => other.add_rational(a),
            (_, RealAlgebraic::Rational(b)) => self.add_rational(b),
            (RealAlgebraic::Algebraic(a), RealAlgebraic::Algebraic(b)) => {
                let res = root_sum_poly(&a.min_poly, &b.min_poly).squarefree_part();
                identify_root(&res, a, b, |x, y| x.add(y))
            }
        }
    }

    pub fn sub(&self, other: &RealAlgebraic) -> RealAlgebraic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RealAlgebraic) -> RealAlgebraic {
        match (self, other) {
            (RealAlgebraic::Rational(a), _) => other.mul_rational(a),
            (_, RealAlgebraic::Rational(b)) => self.mul_rational(b),
            (RealAlgebraic::Algebraic(a), RealAlgebraic::Algebraic(b)) => {
                let res = root_prod_poly(&a.min_poly, &b.min_poly).squarefree_part();
                identify_root(&res, a, b, |x, y| x.mul(y))
            }
        }
    }

    pub fn recip(&self) -> Result<RealAlgebraic, KernelError> {
        match self {
            RealAlgebraic::Rational(r) => {
                if r.is_zero() {
                    Err(KernelError::DivisionByZero)
                } else {
                    Ok(RealAlgebraic::Rational(r.recip()))
                }
            }
            RealAlgebraic::Algebraic(a) => {
                // roots of the reversed polynomial; refine until the interval
                // excludes zero so the reciprocal interval is valid
                let mut root = a.clone();
                while root.interval.contains_zero() {
                    root.refine_once();
                }
                let rev = root.min_poly.reverse().primitive();
                let lo = root.interval.hi.recip();
                let hi = root.interval.lo.recip();
                Ok(RealAlgebraic::Algebraic(AlgebraicRoot {
                    min_poly: rev,
                    interval: RatInterval::new(lo, hi),
                }))
            }
        }
    }

    pub fn div(&self, other: &RealAlgebraic) -> Result<RealAlgebraic, KernelError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: u32) -> RealAlgebraic {
        let mut acc = RealAlgebraic::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The unique positive real r-th root of a positive number.
    pub fn nth_root(&self, r: u32) -> Result<RealAlgebraic, KernelError> {
        assert!(r >= 1);
        if self.sign() < 0 {
            return Err(KernelError::NegativeRadicand);
        }
        if r == 1 || self.is_zero() {
            return Ok(self.clone());
        }
        // roots of p(x^r) where p is the minimal polynomial
        let defining = self.min_poly().compose_power(r);
        let factors: Vec<IntPoly> = factor_int_poly(&defining)
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        // keep only candidates that can be positive
        let mut candidates: Vec<(usize, RatInterval)> = vec![];
        for (fi, fac) in factors.iter().enumerate() {
            for iv in isolate_real_roots(fac) {
                if iv.hi.is_positive() {
                    candidates.push((fi, iv));
                }
            }
        }
        let mut eps = two_pow_neg(16);
        loop {
            // widen point enclosures so converging candidate powers can land
            let raw = self.enclosure(&eps);
            let target = RatInterval::new(&raw.lo - &eps, &raw.hi + &eps);
            let mut alive: Vec<usize> = vec![];
            let mut undecided_sign = false;
            for (ci, (_fi, iv)) in candidates.iter().enumerate() {
                if !iv.hi.is_positive() {
                    continue; // certainly nonpositive
                }
                if iv.lo.is_negative() {
                    // sign not determined yet; keep refining this one
                    alive.push(ci);
                    undecided_sign = true;
                    continue;
                }
                if !iv.pow(r).disjoint(&target) {
                    alive.push(ci);
                }
            }
            if alive.len() == 1 && !undecided_sign {
                let (fi, iv) = candidates[alive[0]].clone();
                return Ok(RealAlgebraic::from_isolated_root(factors[fi].clone(), iv));
            }
            // refine every surviving candidate and sharpen the target
            for ci in alive {
                let (fi, iv) = &mut candidates[ci];
                if iv.lo != iv.hi {
                    *iv = refine_root_interval(&factors[*fi], iv);
                }
            }
            eps = &eps * two_pow_neg(8);
        }
    }

    pub fn abs(&self) -> RealAlgebraic {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealAlgebraic::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealAlgebraic::Algebraic(a) => {
                let iv = a.refined_to(&two_pow_neg(60)).interval;
                iv.mid().to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// Exact sign of g(alpha) for a rational polynomial g.
    pub fn sign_of_poly_at(&self, g: &RatPoly) -> i8 {
        match self {
            RealAlgebraic::Rational(r) => rat_sign(&g.eval(r)),
            RealAlgebraic::Algebraic(a) => {
                let reduced = g.rem(&a.min_poly.to_rat().monic());
                if reduced.is_zero() {
                    return 0;
                }
                // reduced(alpha) != 0 because deg(reduced) < deg(min_poly)
                let mut root = a.clone();
                loop {
                    let v = reduced.eval_interval(&root.interval);
                    if !v.contains_zero() {
                        return if v.lo.is_positive() { 1 } else { -1 };
                    }
                    root.refine_once();
                }
            }
        }
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        RealAlgebraic::cmp(self, other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Rational(r) => write!(f, "{}", crate::rational::rational_to_string(r)),
            RealAlgebraic::Algebraic(a) => {
                write!(f, "root(")?;
                let mut first = true;
                for (i, c) in a.min_poly.coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
                    } else if c.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                    let ab = c.abs();
                    match i {
                        0 => write!(f, "{}", ab)?,
                        1 => {
                            if ab.is_one() {
                                write!(f, "t")?
                            } else {
                                write!(f, "{}t", ab)?
                            }
                        }
                        _ => {
                            if ab.is_one() {
                                write!(f, "t^{}", i)?
                            } else {
                                write!(f, "{}t^{}", ab, i)?
                            }
                        }
                    }
                }
                write!(f, " ~ {:.6})", self.to_f64())
            }
        }
    }
}

/// Picks the root of `defining` (squarefree) equal to op(a, b), by interval
/// refinement of both operands until exactly one isolated root of `defining`
/// can contain the result.
fn identify_root(
    defining: &IntPoly,
    a: &AlgebraicRoot,
    b: &AlgebraicRoot,
    op: fn(&RatInterval, &RatInterval) -> RatInterval,
) -> RealAlgebraic {
    let factors: Vec<IntPoly> = factor_int_poly(defining).into_iter().map(|(p, _)| p).collect();
    let mut candidates: Vec<(usize, RatInterval)> = vec![];
    for (fi, fac) in factors.iter().enumerate() {
        for iv in isolate_real_roots(fac) {
            candidates.push((fi, iv));
        }
    }
    let mut x = a.clone();
    let mut y = b.clone();
    loop {
        let target = op(&x.interval, &y.interval);
        let mut alive = 0;
        let mut last: Option<&(usize, RatInterval)> = None;
        for c in &candidates {
            if !c.1.disjoint(&target) {
                alive += 1;
                last = Some(c);
            }
        }
        if alive == 1 {
            let (fi, iv) = last.unwrap();
            return RealAlgebraic::from_isolated_root(factors[*fi].clone(), iv.clone());
        }
        debug_assert!(alive > 0, "operation result escaped every candidate root");
        x.refine_once();
        y.refine_once();
        for c in candidates.iter_mut() {
            if c.1.lo != c.1.hi {
                c.1 = refine_root_interval(&factors[c.0], &c.1);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sqrt_of(n: i64) -> RealAlgebraic {
        RealAlgebraic::from_rational(rat_int(n)).nth_root(2).unwrap()
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = sqrt_of(2);
        assert_eq!(s.degree(), 2);
        let sq = s.mul(&s);
        assert!(sq.equals(&RealAlgebraic::from_int(2)));
    }

    #[test]
    fn sum_of_square_roots() {
        let s2 = sqrt_of(2);
        let s3 = sqrt_of(3);
        let s = s2.add(&s3);
        assert_eq!(s.degree(), 4);
        // (sqrt2+sqrt3)^2 = 5 + 2*sqrt6
        let sq = s.mul(&s);
        let expect = sqrt_of(6).mul_rational(&rat_int(2)).add_rational(&rat_int(5));
        assert!(sq.equals(&expect));
    }

    #[test]
    fn ordering_and_sign() {
        let s2 = sqrt_of(2);
        assert_eq!(s2.sign(), 1);
        assert!(s2 > RealAlgebraic::from_rational(rat(7, 5)));
        assert!(s2 < RealAlgebraic::from_rational(rat(3, 2)));
        assert_eq!(s2.neg().sign(), -1);
    }

    #[test]
    fn division_round_trip() {
        let s6 = sqrt_of(6);
        let s2 = sqrt_of(2);
        let q = s6.div(&s2).unwrap(); // sqrt3
        assert!(q.equals(&sqrt_of(3)));
    }

    #[test]
    fn golden_ratio_sign_of_poly() {
        // alpha = (1+sqrt5)/2, min poly x^2-x-1
        let phi = sqrt_of(5).add_rational(&rat_int(1)).mul_rational(&rat(1, 2));
        let p = RatPoly::from_i64(&[-1, -1, 1]);
        assert_eq!(phi.sign_of_poly_at(&p), 0);
        let q = RatPoly::new(vec![rat(-3, 2), rat_int(1)]); // x - 3/2
        assert_eq!(phi.sign_of_poly_at(&q), 1);
        let r = RatPoly::from_i64(&[0, -1]); // -x
        assert_eq!(phi.sign_of_poly_at(&r), -1);
    }

    #[test]
    fn rational_nth_root_of_perfect_power() {
        let eight = RealAlgebraic::from_int(8);
        let c = eight.nth_root(3).unwrap();
        assert!(c.equals(&RealAlgebraic::from_int(2)));
        let nine = RealAlgebraic::from_int(9);
        assert!(nine.nth_root(2).unwrap().equals(&RealAlgebraic::from_int(3)));
    }

    #[test]
    fn cube_root_arithmetic() {
        let c = RealAlgebraic::from_int(2).nth_root(3).unwrap();
        assert_eq!(c.degree(), 3);
        assert!(c.pow(3).equals(&RealAlgebraic::from_int(2)));
    }

    #[test]
    fn equality_of_same_root_through_different_intervals() {
        let a = sqrt_of(2);
        let b = match &a {
            RealAlgebraic::Algebraic(r) => {
                RealAlgebraic::Algebraic(r.refined_to(&two_pow_neg(40)))
            }
            _ => unreachable!(),
        };
        assert!(a.equals(&b));
    }
}
