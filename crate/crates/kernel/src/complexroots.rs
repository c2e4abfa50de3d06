//! Certified boxes around the complex-conjugate root pairs of a squarefree
//! integer polynomial.
//!
//! Approximations come from floating-point Durand-Kerner iteration; the
//! certificates do not trust them. For an approximation z the classical bound
//! "the nearest root lies within deg * |p(z)/p'(z)|" is evaluated in exact
//! rational arithmetic, and a pigeonhole argument over disjoint disks (plus
//! the Sturm count of real roots) pins exactly one root per disk.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{isolate_real_roots, IntPoly};
use crate::rational::{rat_int, rat_max, RatInterval, Rational};

/// Exact complex rational point.
#[derive(Debug, Clone)]
pub struct CRat {
    pub re: Rational,
    pub im: Rational,
}

impl CRat {
    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add_real(&self, r: &Rational) -> CRat {
        CRat {
            re: &self.re + r,
            im: self.im.clone(),
        }
    }

    fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn eval_at(p: &IntPoly, z: &CRat) -> CRat {
    let mut acc = CRat {
        re: BigRational::zero(),
        im: BigRational::zero(),
    };
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(z).add_real(&BigRational::from(c.clone()));
    }
    acc
}

/// Rounds to a dyadic rational with denominator 2^bits.
fn dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigRational::from_integer(num_bigint::BigInt::one() << bits);
    let scaled = (r * &scale).round();
    BigRational::new(scaled.to_integer(), scale.to_integer())
}

/// A certified box around one root of the upper half plane.
#[derive(Debug, Clone)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval, // strictly positive
}

impl ComplexBox {
    pub fn width(&self) -> Rational {
        rat_max(self.re.width(), self.im.width())
    }

    /// Interval enclosure of |z|^2 over the box.
    pub fn modulus_sq_interval(&self) -> RatInterval {
        let re2 = self.re.mul(&self.re);
        let im2 = self.im.mul(&self.im);
        // squares are nonnegative; clamp below at 0 (mul overestimates when
        // the interval straddles zero)
        let lo = rat_max(BigRational::zero(), &re2.lo + &im2.lo);
        let hi = &re2.hi + &im2.hi;
        RatInterval::new(lo, hi)
    }

    /// Interval enclosure of z + conj(z) = 2 Re(z).
    pub fn trace_interval(&self) -> RatInterval {
        self.re.scale(&rat_int(2))
    }

    pub fn disjoint(&self, o: &ComplexBox) -> bool {
        self.re.disjoint(&o.re) || self.im.disjoint(&o.im)
    }
}

fn f64_durand_kerner(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0
        + monic[..n]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            (radius * 0.7 * ang.cos(), radius * 0.7 * ang.sin())
        })
        .collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for &c in monic.iter().rev() {
            let nre = re * z.0 - im * z.1 + c;
            let nim = re * z.1 + im * z.0;
            re = nre;
            im = nim;
        }
        (re, im)
    };
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
            }
            let v = eval(z[i]);
            let dsq = den.0 * den.0 + den.1 * den.1;
            if dsq == 0.0 || !dsq.is_finite() {
                continue;
            }
            let q = ((v.0 * den.0 + v.1 * den.1) / dsq, (v.1 * den.0 - v.0 * den.1) / dsq);
            z[i] = (z[i].0 - q.0, z[i].1 - q.1);
            moved += q.0.abs() + q.1.abs();
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Certified boxes for the conjugate pairs (upper-half representatives) of a
/// squarefree polynomial with `real_count` real roots. Boxes are pairwise
/// disjoint, each strictly above the real axis, each containing exactly one
/// root; every box has width <= eps.
pub fn certified_complex_boxes(f: &IntPoly, real_count: usize, eps: &Rational) -> Vec<ComplexBox> {
    let n = f.degree();
    assert!(n >= 2);
    let pairs = (n - real_count) / 2;
    assert_eq!(n - real_count, 2 * pairs, "parity mismatch with Sturm count");
    if pairs == 0 {
        return vec![];
    }
    let fr: Vec<f64> = f
        .coeffs
        .iter()
        .map(|c| BigRational::from(c.clone()).to_f64().unwrap())
        .collect();
    let approx = f64_durand_kerner(&fr);
    let deriv = f.derivative();
    let nn = BigRational::from_integer(num_bigint::BigInt::from(n as i64));

    let mut bits: u32 = 53;
    let mut centers: Vec<CRat> = approx
        .iter()
        .filter(|&&(_, im)| im > 0.0)
        .map(|&(re, im)| CRat {
            re: BigRational::from_float(re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_float(im).unwrap_or_else(BigRational::zero),
        })
        .collect();

    for _attempt in 0..40 {
        if centers.len() == pairs {
            // exact residual-based disk radii: rho = n*|p(z)/p'(z)|
            let mut ok = true;
            let mut disks: Vec<(CRat, Rational)> = vec![];
            for z in &centers {
                let pv = eval_at(f, z);
                let dv = eval_at(&deriv, z);
                let dn = dv.norm_sq();
                if dn.is_zero() {
                    ok = false;
                    break;
                }
                let rho_sq = &nn * &nn * pv.norm_sq() / dn;
                // rational upper bound on rho
                let rho = sqrt_upper(&rho_sq, bits);
                disks.push((z.clone(), rho));
            }
            if ok {
                // strictly above axis and pairwise disjoint, and small enough
                ok = disks.iter().all(|(z, r)| z.im > *r && (r * rat_int(2)) <= *eps);
                if ok {
                    // boxes must be disjoint as rectangles AND no box may
                    // reach into a neighbouring disk (sqrt2 < 3/2 covers the
                    // circumscribed square's corners)
                    'outer: for i in 0..disks.len() {
                        for j in i + 1..disks.len() {
                            let d = disks[i].0.sub(&disks[j].0).norm_sq();
                            let (ri, rj) = (&disks[i].1, &disks[j].1);
                            let reach_a = ri * rat_int(3) / rat_int(2) + rj;
                            let reach_b = rj * rat_int(3) / rat_int(2) + ri;
                            if d <= &reach_a * &reach_a || d <= &reach_b * &reach_b {
                                ok = false;
                                break 'outer;
                            }
                            let dre = (&disks[i].0.re - &disks[j].0.re).abs();
                            let dim = (&disks[i].0.im - &disks[j].0.im).abs();
                            let rr = ri + rj;
                            if dre <= rr && dim <= rr {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                if ok {
                    return disks
                        .into_iter()
                        .map(|(z, r)| ComplexBox {
                            re: RatInterval::new(&z.re - &r, &z.re + &r),
                            im: RatInterval::new(&z.im - &r, &z.im + &r),
                        })
                        .collect();
                }
            }
        }
        // polish every center by one exact Newton step at higher precision
        bits += 32;
        let mut next = vec![];
        for z in &centers {
            let pv = eval_at(f, z);
            let dv = eval_at(&deriv, z);
            let dn = dv.norm_sq();
            if dn.is_zero() {
                continue;
            }
            let qre = (&pv.re * &dv.re + &pv.im * &dv.im) / &dn;
            let qim = (&pv.im * &dv.re - &pv.re * &dv.im) / &dn;
            next.push(CRat {
                re: dyadic(&(&z.re - &qre), bits),
                im: dyadic(&(&z.im - &qim), bits),
            });
        }
        centers = next;
        if centers.len() != pairs {
            // restart from scratch if the float pass lost roots
            let approx = f64_durand_kerner(&fr);
            centers = approx
                .iter()
                .filter(|&&(_, im)| im > 0.0)
                .map(|&(re, im)| CRat {
                    re: BigRational::from_float(re).unwrap_or_else(BigRational::zero),
                    im: BigRational::from_float(im).unwrap_or_else(BigRational::zero),
                })
                .collect();
        }
    }
    panic!("complex root certification did not converge");
}

/// Rational upper bound on sqrt(q), accurate to about 2^-bits. Newton from
/// an upper seed decreases monotonically; every iterate is rounded UP to a
/// dyadic of bounded size so the numbers never blow up and the upper-bound
/// property is preserved.
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    if q.is_zero() {
        return BigRational::zero();
    }
    assert!(q.is_positive());
    // dyadic seed 2^e >= sqrt(q) from the bit lengths of numerator/denominator
    let lg = q.numer().bits() as i64 - q.denom().bits() as i64;
    let e = lg / 2 + 2;
    let mut x = if e >= 0 {
        BigRational::from_integer(num_bigint::BigInt::one() << (e as u32))
    } else {
        BigRational::new(num_bigint::BigInt::one(), num_bigint::BigInt::one() << ((-e) as u32))
    };
    for _ in 0..4 * (bits as usize + 16) {
        let next = dyadic_ceil(&((&x + q / &x) / rat_int(2)), bits + 8);
        if next >= x {
            break;
        }
        x = next;
    }
    debug_assert!(&x * &x >= *q);
    x
}

/// Smallest dyadic with denominator 2^bits that is >= r.
fn dyadic_ceil(r: &Rational, bits: u32) -> Rational {
    let scale = num_bigint::BigInt::one() << bits;
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Real isolating intervals refined to eps, plus certified complex boxes, for
/// one squarefree irreducible factor.
pub fn factor_root_layout(
    f: &IntPoly,
    eps: &Rational,
) -> (Vec<RatInterval>, Vec<ComplexBox>) {
    let reals: Vec<RatInterval> = isolate_real_roots(f)
        .into_iter()
        .map(|iv| crate::poly::refine_to_width(f, &iv, eps))
        .collect();
    if f.degree() == reals.len() {
        return (reals, vec![]);
    }
    let boxes = certified_complex_boxes(f, reals.len(), eps);
    (reals, boxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn boxes_for_pure_rotation() {
        // x^2 + 1: pair at +-i
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let (reals, boxes) = factor_root_layout(&f, &rat(1, 1024));
        assert!(reals.is_empty());
        assert_eq!(boxes.len(), 1);
        let b = &boxes[0];
        assert!(b.im.lo.is_positive());
        assert!(b.re.contains(&rat(0, 1)));
        assert!(b.im.contains(&rat(1, 1)));
    }

    #[test]
    fn boxes_for_scaled_rotation() {
        // x^2 + 4: pair at +-2i, modulus 2
        let f = IntPoly::from_i64(&[4, 0, 1]);
        let (_, boxes) = factor_root_layout(&f, &rat(1, 1 << 20));
        assert_eq!(boxes.len(), 1);
        let m2 = boxes[0].modulus_sq_interval();
        assert!(m2.contains(&rat(4, 1)));
        assert!(m2.width() < rat(1, 1000));
    }

    #[test]
    fn mixed_real_and_complex_cubic() {
        // x^3 - 2: one real, one pair
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let (reals, boxes) = factor_root_layout(&f, &rat(1, 1 << 16));
        assert_eq!(reals.len(), 1);
        assert_eq!(boxes.len(), 1);
        // pair modulus^2 = 2^(2/3) ~ 1.5874
        let m2 = boxes[0].modulus_sq_interval();
        assert!(m2.lo < rat(159, 100) && m2.hi > rat(158, 100));
    }

    #[test]
    fn quintic_with_two_pairs() {
        // x^5 - 2
        let f = IntPoly::from_i64(&[-2, 0, 0, 0, 0, 1]);
        let (reals, boxes) = factor_root_layout(&f, &rat(1, 1 << 16));
        assert_eq!(reals.len(), 1);
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].disjoint(&boxes[1]));
    }
}
