//! Dense exact polynomials over Z and Q, with Euclidean structure, Yun
//! squarefree decomposition and Sturm-based real root isolation.
//!
//! Coefficients are stored constant-term first. The zero polynomial is the
//! empty coefficient vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat_int, rat_max, rat_sign, RatInterval, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<BigRational>,
}

fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn trim_rat(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPoly {
            coeffs: trim_int(coeffs),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention of callers
    /// that have excluded it. Use `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + o.coeff(i));
        }
        IntPoly::new(v)
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - o.coeff(i));
        }
        IntPoly::new(v)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; panics if the division is not exact (internal use
    /// inside fraction-free algorithms where exactness is guaranteed).
    pub fn div_exact(&self, o: &IntPoly) -> IntPoly {
        assert!(!o.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dn = o.degree();
        let lead = o.leading();
        assert!(rem.len() > dn || rem.len() == o.coeffs.len());
        let mut q = vec![BigInt::zero(); rem.len() - dn];
        for k in (0..q.len()).rev() {
            let (c, r) = rem[k + dn].div_rem(&lead);
            assert!(r.is_zero(), "non-exact polynomial division");
            if !c.is_zero() {
                for (j, b) in o.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        for c in &rem {
            assert!(c.is_zero(), "non-exact polynomial division (remainder)");
        }
        IntPoly::new(q)
    }

    /// Content: gcd of coefficients, with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part: content divided out, leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_rat(&self, x: &Rational) -> Rational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        rat_sign(&self.eval_rat(x))
    }

    /// Interval evaluation by Horner with interval arithmetic.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x)
                .add(&RatInterval::point(BigRational::from(c.clone())));
        }
        acc
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        }
    }

    /// p(x^k)
    pub fn compose_power(&self, k: u32) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let k = k as usize;
        let mut v = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPoly::new(v)
    }

    /// p(-x)
    pub fn compose_neg(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Reversal x^n p(1/x); requires nonzero constant term for root sense.
    pub fn reverse(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// Cauchy root bound: all complex roots have |z| <= 1 + max|a_i|/|a_n|.
    pub fn root_bound(&self) -> Rational {
        assert!(!self.is_zero());
        let lead = BigRational::from(self.leading()).abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            m = rat_max(m, BigRational::from(c.clone()).abs());
        }
        BigRational::one() + m / lead
    }

    pub fn squarefree_part(&self) -> IntPoly {
        let d = self.derivative();
        if d.is_zero() {
            return self.primitive();
        }
        let g = int_gcd(&self.primitive(), &d.primitive());
        if g.degree() == 0 {
            self.primitive()
        } else {
            self.primitive().div_exact(&g).primitive()
        }
    }
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
pub fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    assert!(!b.is_zero());
    let mut r = a.clone();
    let db = b.degree();
    let lb = b.leading();
    while !r.is_zero() && r.degree() >= db {
        let dr = r.degree();
        let lr = r.leading();
        let mut v = vec![BigInt::zero(); r.coeffs.len()];
        for (i, c) in r.coeffs.iter().enumerate() {
            v[i] = c * &lb;
        }
        for (j, c) in b.coeffs.iter().enumerate() {
            v[dr - db + j] -= &lr * c;
        }
        let nr = IntPoly::new(v);
        debug_assert!(nr.is_zero() || nr.degree() < dr);
        r = nr;
    }
    r
}

/// Primitive PRS gcd over Z; result is primitive with positive leading coeff.
pub fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut f = a.primitive();
    let mut g = b.primitive();
    if f.is_zero() {
        return g;
    }
    if g.is_zero() {
        return f;
    }
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g);
        if r.is_zero() {
            return g;
        }
        f = g;
        g = r.primitive();
        if g.degree() == 0 {
            return IntPoly::one();
        }
    }
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RatPoly {
            coeffs: trim_rat(coeffs),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn x() -> Self {
        RatPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }

    pub fn mul_scalar(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, o: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!o.is_zero());
        let dn = o.degree();
        if self.is_zero() || self.degree() < dn {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let lead = o.leading();
        let mut q = vec![BigRational::zero(); rem.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dn] / &lead;
            if !c.is_zero() {
                for (j, b) in o.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        (RatPoly::new(q), RatPoly::new(rem))
    }

    pub fn rem(&self, o: &RatPoly) -> RatPoly {
        self.div_rem(o).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let l = self.leading();
        self.mul_scalar(&l.recip())
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RatInterval::point(c.clone()));
        }
        acc
    }

    /// Clears denominators; returns the primitive integer polynomial with the
    /// same roots (positive leading coefficient).
    pub fn to_int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
        .primitive()
    }

    /// p(x + c)
    pub fn shift(&self, c: &Rational) -> RatPoly {
        // Horner-style Taylor shift
        let mut acc = RatPoly::zero();
        let shifted_x = RatPoly::new(vec![c.clone(), BigRational::one()]);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&shifted_x).add(&RatPoly::constant(coeff.clone()));
        }
        acc
    }

    /// p(c*x)
    pub fn scale_arg(&self, c: &Rational) -> RatPoly {
        let mut pow = BigRational::one();
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let v = a * &pow;
                    pow *= c;
                    v
                })
                .collect(),
        )
    }
}

/// Yun squarefree decomposition of a nonzero rational polynomial:
/// f = lc * prod_i g_i^i with the g_i squarefree, pairwise coprime, monic.
pub fn squarefree_decomposition(f: &RatPoly) -> Vec<(RatPoly, u32)> {
    assert!(!f.is_zero());
    let f = f.monic();
    if f.degree() == 0 {
        return vec![];
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    if a0.degree() == 0 {
        return vec![(f, 1)];
    }
    let mut out = vec![];
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut mult = 1u32;
    loop {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.clone(), mult));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        mult += 1;
        if b.degree() == 0 {
            break;
        }
    }
    out
}

/// Sturm chain of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(f: &RatPoly) -> Self {
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            // normalize to keep coefficient growth in check; positive scaling
            // preserves all signs
            let scale = r.leading().abs().recip();
            chain.push(r.mul_scalar(&scale));
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &Rational) -> u32 {
        let mut count = 0;
        let mut prev = 0i8;
        for p in &self.chain {
            let s = rat_sign(&p.eval(x));
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> u32 {
        debug_assert!(a <= b);
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Isolates all real roots of a squarefree nonzero polynomial into disjoint
/// intervals (lo, hi] with sign conditions suitable for bisection refinement.
/// Returned intervals are sorted increasingly and each contains exactly one
/// root; rational roots of linear polynomials come out as point intervals.
pub fn isolate_real_roots(f: &IntPoly) -> Vec<RatInterval> {
    assert!(!f.is_zero());
    if f.degree() == 0 {
        return vec![];
    }
    if f.degree() == 1 {
        let root = -BigRational::new(f.coeff(0), f.coeff(1));
        return vec![RatInterval::point(root)];
    }
    let fr = f.to_rat().monic();
    let chain = SturmChain::new(&fr);
    let bound = f.root_bound();
    let mut out = vec![];
    let lo = -bound.clone();
    let hi = bound;
    // handle a possible root exactly at the left endpoint: Cauchy bound is
    // strict, so (-b, b] covers all real roots
    let total = chain.count_roots(&lo, &hi);
    if total == 0 {
        return vec![];
    }
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RatInterval::new(a, b));
            continue;
        }
        let m = (&a + &b) / rat_int(2);
        // For irreducible factors of degree >= 2 the midpoint is never a
        // root; for general squarefree input it may be. Nudge if so.
        let m = if fr.eval(&m).is_zero() {
            // midpoint is a rational root; isolate it as a point and split
            // around a gap certified to contain no other root
            out.push(RatInterval::point(m.clone()));
            let mut radius = (&b - &a) / rat_int(4);
            loop {
                let left_hi = &m - &radius;
                let right_lo = &m + &radius;
                if !fr.eval(&left_hi).is_zero()
                    && !fr.eval(&right_lo).is_zero()
                    && chain.count_roots(&left_hi, &right_lo) == 1
                {
                    let nl = chain.count_roots(&a, &left_hi);
                    let nr = chain.count_roots(&right_lo, &b);
                    stack.push((a, left_hi, nl));
                    stack.push((right_lo, b, nr));
                    break;
                }
                radius /= rat_int(2);
            }
            continue;
        } else {
            m
        };
        let nl = chain.count_roots(&a, &m);
        stack.push((a, m.clone(), nl));
        stack.push((m, b, n - nl));
    }
    out.sort_by(|p, q| p.lo.cmp(&q.lo));
    out
}

/// One bisection step on an isolating interval of `f` (squarefree, with a
/// sign change across the interval). Point intervals are returned unchanged.
pub fn refine_root_interval(f: &IntPoly, iv: &RatInterval) -> RatInterval {
    if iv.lo == iv.hi {
        return iv.clone();
    }
    let sl = f.sign_at(&iv.lo);
    let m = iv.mid();
    let sm = f.sign_at(&m);
    if sm == 0 {
        return RatInterval::point(m);
    }
    if sm == sl {
        RatInterval::new(m, iv.hi.clone())
    } else {
        RatInterval::new(iv.lo.clone(), m)
    }
}

/// Refine until width <= eps.
pub fn refine_to_width(f: &IntPoly, iv: &RatInterval, eps: &Rational) -> RatInterval {
    let mut cur = iv.clone();
    while cur.width() > *eps {
        cur = refine_root_interval(f, &cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn int_poly_div_exact_round_trip() {
        let a = IntPoly::from_i64(&[2, 3, 1]); // (x+1)(x+2)
        let b = IntPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b), IntPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // x^2-1
        let b = IntPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(int_gcd(&a, &b), IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // (x-1)^2 (x+2)
        let f = RatPoly::from_i64(&[2, -3, 0, 1]);
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (RatPoly::from_i64(&[2, 1]), 1));
        assert_eq!(parts[1], (RatPoly::from_i64(&[-1, 1]), 2));
    }

    #[test]
    fn sturm_counts_roots_of_quadratic() {
        let f = RatPoly::from_i64(&[-2, 0, 1]); // x^2-2
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_roots(&rat(-3, 1), &rat(3, 1)), 2);
        assert_eq!(chain.count_roots(&rat(0, 1), &rat(3, 1)), 1);
        assert_eq!(chain.count_roots(&rat(2, 1), &rat(3, 1)), 0);
    }

    #[test]
    fn isolate_golden_ratio_roots() {
        let f = IntPoly::from_i64(&[-1, -1, 1]); // x^2-x-1
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let phi = roots[1].clone();
        let refined = refine_to_width(&f, &phi, &rat(1, 1 << 20));
        // phi = 1.618033988...
        assert!(refined.lo < rat(16181, 10000));
        assert!(refined.hi > rat(16180, 10000));
    }

    #[test]
    fn isolate_with_rational_midpoint_root() {
        // roots at -1, 0, 1: midpoint of [-bound,bound] is 0 exactly
        let f = IntPoly::from_i64(&[0, -1, 0, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn shift_and_scale() {
        let f = RatPoly::from_i64(&[0, 0, 1]); // x^2
        let g = f.shift(&rat(1, 1)); // (x+1)^2
        assert_eq!(g, RatPoly::from_i64(&[1, 2, 1]));
        let h = f.scale_arg(&rat(3, 1)); // 9x^2
        assert_eq!(h, RatPoly::from_i64(&[0, 0, 9]));
    }
}
