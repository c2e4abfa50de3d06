//! Real number fields Q(theta) with exact arithmetic and certified signs,
//! plus primitive-element composita. Elements are polynomials in the
//! generator reduced modulo its minimal polynomial; the generator's isolating
//! interval supplies exact sign decisions.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{AlgebraicRoot, RealAlgebraic};
use crate::poly::RatPoly;
use crate::rational::{rat_int, rat_sign, RatInterval, Rational};

/// Exact field scalar: the interface Gaussian elimination and the feasibility
/// solver need. Constructors are value-based so heterogeneous contexts
/// (number field handles) travel with the elements.
pub trait FieldScalar: Clone {
    fn zero_elem(&self) -> Self;
    fn one_elem(&self) -> Self;
    fn from_rational_elem(&self, r: &Rational) -> Self;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// Multiplicative inverse; panics on zero (callers test first).
    fn inv_elem(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// Exact sign in the real embedding.
    fn sign_elem(&self) -> i8;
}

impl FieldScalar for BigRational {
    fn zero_elem(&self) -> Self {
        BigRational::zero()
    }
    fn one_elem(&self) -> Self {
        BigRational::one()
    }
    fn from_rational_elem(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn inv_elem(&self) -> Self {
        assert!(!self.is_zero());
        self.recip()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sign_elem(&self) -> i8 {
        rat_sign(self)
    }
}

/// A real number field presented by one generator.
#[derive(Debug)]
pub struct NumberField {
    pub generator: AlgebraicRoot,
    monic_min: RatPoly,
    pub degree: usize,
}

impl NumberField {
    pub fn new(generator: AlgebraicRoot) -> Arc<Self> {
        let monic_min = generator.min_poly.to_rat().monic();
        let degree = monic_min.degree();
        assert!(degree >= 2);
        Arc::new(NumberField {
            generator,
            monic_min,
            degree,
        })
    }

    pub fn from_algebraic(a: &RealAlgebraic) -> Option<Arc<Self>> {
        match a {
            RealAlgebraic::Algebraic(root) => Some(Self::new(root.clone())),
            RealAlgebraic::Rational(_) => None,
        }
    }

    pub fn min_poly(&self) -> &RatPoly {
        &self.monic_min
    }
}

/// Element of a number field.
#[derive(Debug, Clone)]
pub struct NfElem {
    pub field: Arc<NumberField>,
    pub coords: Vec<Rational>,
}

impl NfElem {
    pub fn from_coords(field: Arc<NumberField>, mut coords: Vec<Rational>) -> Self {
        coords.resize(field.degree, BigRational::zero());
        NfElem { field, coords }
    }

    pub fn rational(field: Arc<NumberField>, r: Rational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree];
        coords[0] = r;
        NfElem { field, coords }
    }

    pub fn theta(field: Arc<NumberField>) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree];
        coords[1] = BigRational::one();
        NfElem { field, coords }
    }

    /// Reduces an arbitrary rational polynomial in theta to an element.
    pub fn from_polynomial(field: Arc<NumberField>, p: &RatPoly) -> Self {
        let r = p.rem(&field.monic_min);
        Self::from_coords(field, r.coeffs)
    }

    fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Certified enclosure of the real value.
    pub fn enclosure(&self, max_refines: u32) -> RatInterval {
        let p = self.as_poly();
        let mut root = self.field.generator.clone();
        let mut out = p.eval_interval(&root.interval);
        for _ in 0..max_refines {
            out = p.eval_interval(&root.interval);
            root.refine_once();
        }
        out
    }

    /// Exact value as a standalone algebraic number.
    pub fn to_algebraic(&self) -> RealAlgebraic {
        if let Some(r) = self.as_rational() {
            return RealAlgebraic::Rational(r);
        }
        // evaluate the coordinate polynomial at theta by exact arithmetic
        let theta = RealAlgebraic::Algebraic(self.field.generator.clone());
        let mut acc = RealAlgebraic::zero();
        for c in self.coords.iter().rev() {
            acc = acc.mul(&theta).add(&RealAlgebraic::Rational(c.clone()));
        }
        acc
    }
}

impl FieldScalar for NfElem {
    fn zero_elem(&self) -> Self {
        NfElem::rational(self.field.clone(), BigRational::zero())
    }
    fn one_elem(&self) -> Self {
        NfElem::rational(self.field.clone(), BigRational::one())
    }
    fn from_rational_elem(&self, r: &Rational) -> Self {
        NfElem::rational(self.field.clone(), r.clone())
    }
    fn add_elem(&self, o: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.field, &o.field));
        NfElem::from_coords(
            self.field.clone(),
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
    fn sub_elem(&self, o: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.field, &o.field));
        NfElem::from_coords(
            self.field.clone(),
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
    fn mul_elem(&self, o: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.field, &o.field));
        let prod = self.as_poly().mul(&o.as_poly());
        NfElem::from_polynomial(self.field.clone(), &prod)
    }
    fn neg_elem(&self) -> Self {
        NfElem::from_coords(
            self.field.clone(),
            self.coords.iter().map(|c| -c.clone()).collect(),
        )
    }
    fn inv_elem(&self) -> Self {
        assert!(!self.is_zero_elem(), "inverse of zero field element");
        // extended Euclid: s*a + t*min = gcd = const
        let a = self.as_poly();
        let m = self.field.monic_min.clone();
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
        }
        assert_eq!(r0.degree(), 0, "minimal polynomial not irreducible?");
        let inv_lead = r0.coeff(0).recip();
        NfElem::from_polynomial(self.field.clone(), &s0.mul_scalar(&inv_lead))
    }
    fn is_zero_elem(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn sign_elem(&self) -> i8 {
        if self.is_zero_elem() {
            return 0;
        }
        // nonzero element of the field: reduced degree < deg(min), so the
        // value at theta is nonzero; refine until certified
        let p = self.as_poly();
        let mut root = self.field.generator.clone();
        loop {
            let v = p.eval_interval(&root.interval);
            if !v.contains_zero() {
                return if v.lo.is_positive() { 1 } else { -1 };
            }
            root.refine_once();
        }
    }
}

// ---------------------------------------------------------------------------
// polynomials with number-field coefficients
// ---------------------------------------------------------------------------

pub type NfPoly = Vec<NfElem>; // constant first, may carry trailing zeros

pub fn nf_poly_trim(mut p: NfPoly) -> NfPoly {
    while p.last().map(|c| c.is_zero_elem()).unwrap_or(false) {
        p.pop();
    }
    p
}

pub fn nf_poly_mul(a: &NfPoly, b: &NfPoly) -> NfPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let zero = a[0].zero_elem();
    let mut v = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = v[i + j].add_elem(&x.mul_elem(y));
        }
    }
    nf_poly_trim(v)
}

pub fn nf_poly_divrem(a: &NfPoly, b: &NfPoly) -> (NfPoly, NfPoly) {
    let b = nf_poly_trim(b.clone());
    assert!(!b.is_empty());
    let mut r = nf_poly_trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let zero = b[0].zero_elem();
    let db = b.len() - 1;
    let inv = b[db].inv_elem();
    let mut q = vec![zero; r.len() - db];
    for k in (0..q.len()).rev() {
        if r.len() <= k + db {
            continue;
        }
        let c = r[k + db].mul_elem(&inv);
        if !c.is_zero_elem() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = r[k + j].sub_elem(&c.mul_elem(y));
            }
        }
        q[k] = c;
        r = nf_poly_trim(r);
    }
    (nf_poly_trim(q), r)
}

pub fn nf_poly_gcd(a: &NfPoly, b: &NfPoly) -> NfPoly {
    let mut f = nf_poly_trim(a.clone());
    let mut g = nf_poly_trim(b.clone());
    while !g.is_empty() {
        let (_, r) = nf_poly_divrem(&f, &g);
        f = g;
        g = r;
    }
    if f.is_empty() {
        return f;
    }
    // monic normalization
    let inv = f.last().unwrap().inv_elem();
    f.iter().map(|c| c.mul_elem(&inv)).collect()
}

pub fn nf_poly_from_rat(field: &Arc<NumberField>, p: &RatPoly) -> NfPoly {
    p.coeffs
        .iter()
        .map(|c| NfElem::rational(field.clone(), c.clone()))
        .collect()
}

pub fn nf_poly_eval(p: &NfPoly, x: &NfElem) -> NfElem {
    let mut acc = x.zero_elem();
    for c in p.iter().rev() {
        acc = acc.mul_elem(x).add_elem(c);
    }
    acc
}

// ---------------------------------------------------------------------------
// composita via primitive elements
// ---------------------------------------------------------------------------

/// Finds gamma with Q(gamma) = Q(a, b) and expresses a and b in it.
/// Both inputs must be irrational.
pub fn primitive_element(
    a: &RealAlgebraic,
    b: &RealAlgebraic,
) -> (Arc<NumberField>, NfElem, NfElem) {
    let qa = a.min_poly().to_rat().monic();
    let qb = b.min_poly().to_rat().monic();
    for k in 1i64..=64 {
        let kr = rat_int(k);
        let gamma = a.add(&b.mul_rational(&kr));
        let root = match &gamma {
            RealAlgebraic::Algebraic(r) => r.clone(),
            RealAlgebraic::Rational(_) => continue,
        };
        let field = NumberField::new(root);
        // gcd of q_b(y) and q_a(gamma - k y) over Q(gamma)[y]
        let pb = nf_poly_from_rat(&field, &qb);
        let gamma_elem = NfElem::theta(field.clone());
        // build q_a(gamma - k*y) by Horner: coefficients in y
        let lin: NfPoly = vec![
            gamma_elem.clone(),
            NfElem::rational(field.clone(), -kr.clone()),
        ];
        let mut pa_shift: NfPoly = vec![];
        for c in qa.coeffs.iter().rev() {
            pa_shift = nf_poly_mul(&pa_shift, &lin);
            if pa_shift.is_empty() {
                pa_shift = vec![NfElem::rational(field.clone(), c.clone())];
            } else {
                pa_shift[0] = pa_shift[0].add_elem(&NfElem::rational(field.clone(), c.clone()));
            }
        }
        let g = nf_poly_gcd(&pb, &pa_shift);
        if g.len() == 2 {
            // unique common root: it is b itself
            let b_expr = g[0].neg_elem(); // monic: y + g0 => root -g0
            let a_expr = gamma_elem.sub_elem(&b_expr.mul_elem(&NfElem::rational(
                field.clone(),
                kr.clone(),
            )));
            debug_assert!(nf_poly_eval(&pb, &b_expr).is_zero_elem());
            debug_assert!(
                nf_poly_eval(&nf_poly_from_rat(&field, &qa), &a_expr).is_zero_elem()
            );
            return (field, a_expr, b_expr);
        }
    }
    panic!("no primitive element found within the search window");
}

/// Incremental compositum of several real algebraic generators. At least one
/// generator must be irrational; every generator is re-expressed in the
/// final field.
pub fn compositum(gens: &[RealAlgebraic]) -> (Arc<NumberField>, Vec<NfElem>) {
    assert!(!gens.is_empty());
    let mut field: Option<Arc<NumberField>> = None;
    let mut exprs: Vec<Option<NfElem>> = vec![None; gens.len()];
    let mut current_gen: Option<RealAlgebraic> = None;
    for (i, g) in gens.iter().enumerate() {
        match g {
            RealAlgebraic::Rational(_) => {} // fill in once the field exists
            RealAlgebraic::Algebraic(root) => match (&field, &current_gen) {
                (None, _) => {
                    let f = NumberField::new(root.clone());
                    exprs[i] = Some(NfElem::theta(f.clone()));
                    field = Some(f);
                    current_gen = Some(g.clone());
                }
                (Some(_), Some(cur)) => {
                    let (newf, cur_expr, g_expr) = primitive_element(cur, g);
                    // remap previous expressions through cur -> cur_expr
                    for e in exprs.iter_mut().flatten() {
                        let p = RatPoly::new(e.coords.clone());
                        let mut acc = NfElem::rational(newf.clone(), BigRational::zero());
                        for c in p.coeffs.iter().rev() {
                            acc = acc
                                .mul_elem(&cur_expr)
                                .add_elem(&NfElem::rational(newf.clone(), c.clone()));
                        }
                        *e = acc;
                    }
                    exprs[i] = Some(g_expr);
                    current_gen = Some(RealAlgebraic::Algebraic(newf.generator.clone()));
                    field = Some(newf);
                }
                _ => unreachable!(),
            },
        }
    }
    let field = field.expect("compositum needs at least one irrational generator");
    let out = gens
        .iter()
        .zip(exprs)
        .map(|(g, e)| match e {
            Some(e) => e,
            None => NfElem::rational(field.clone(), g.as_rational().unwrap().clone()),
        })
        .collect();
    (field, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sqrt(n: i64) -> RealAlgebraic {
        RealAlgebraic::from_int(n).nth_root(2).unwrap()
    }

    #[test]
    fn field_arithmetic_in_sqrt2() {
        let s2 = sqrt(2);
        let f = NumberField::from_algebraic(&s2).unwrap();
        let theta = NfElem::theta(f.clone());
        let two = theta.mul_elem(&theta);
        assert_eq!(two.as_rational(), Some(rat_int(2)));
        let inv = theta.inv_elem(); // 1/sqrt2 = sqrt2/2
        let prod = inv.mul_elem(&theta);
        assert_eq!(prod.as_rational(), Some(rat_int(1)));
        assert_eq!(theta.sign_elem(), 1);
        assert_eq!(theta.neg_elem().sign_elem(), -1);
        // theta - 3/2 is negative (sqrt2 < 1.5)
        let d = theta.sub_elem(&NfElem::rational(f, rat(3, 2)));
        assert_eq!(d.sign_elem(), -1);
    }

    #[test]
    fn primitive_element_of_sqrt2_sqrt3() {
        let (field, a, b) = primitive_element(&sqrt(2), &sqrt(3));
        assert_eq!(field.degree, 4);
        let a2 = a.mul_elem(&a);
        let b2 = b.mul_elem(&b);
        assert_eq!(a2.as_rational(), Some(rat_int(2)));
        assert_eq!(b2.as_rational(), Some(rat_int(3)));
        let prod = a.mul_elem(&b); // sqrt6
        let p2 = prod.mul_elem(&prod);
        assert_eq!(p2.as_rational(), Some(rat_int(6)));
    }

    #[test]
    fn compositum_with_rationals_and_nested_field() {
        // sqrt2 and sqrt8 generate the same field
        let gens = vec![sqrt(2), RealAlgebraic::from_rational(rat(5, 3)), sqrt(8)];
        let (field, exprs) = compositum(&gens);
        assert!(field.degree >= 2);
        let s2 = &exprs[0];
        let c = &exprs[1];
        let s8 = &exprs[2];
        assert_eq!(s2.mul_elem(s2).as_rational(), Some(rat_int(2)));
        assert_eq!(c.as_rational(), Some(rat(5, 3)));
        assert_eq!(s8.mul_elem(s8).as_rational(), Some(rat_int(8)));
        // sqrt8 = 2*sqrt2
        let twice = s2.add_elem(s2);
        assert!(s8.sub_elem(&twice).is_zero_elem());
    }

    #[test]
    fn nf_poly_gcd_extracts_common_root() {
        let s2 = sqrt(2);
        let f = NumberField::from_algebraic(&s2).unwrap();
        // (y - theta)(y + 1) and (y - theta)(y - 5) share root theta
        let theta = NfElem::theta(f.clone());
        let one = theta.one_elem();
        let a = nf_poly_mul(
            &vec![theta.neg_elem(), one.clone()],
            &vec![one.clone(), one.clone()],
        );
        let b = nf_poly_mul(
            &vec![theta.neg_elem(), one.clone()],
            &vec![one.from_rational_elem(&rat_int(-5)), one.clone()],
        );
        let g = nf_poly_gcd(&a, &b);
        assert_eq!(g.len(), 2);
        // monic linear gcd y + g0 with root theta, so g0 = -theta
        assert!(g[0].add_elem(&theta).is_zero_elem());
    }
}
