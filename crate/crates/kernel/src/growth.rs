//! Growth rates of vectors under matrix iteration and the dominant-term
//! signature (beta, a, sign) of pairing sequences n -> (M^n v . Z).
//!
//! Nothing here iterates the matrix to convergence: the growth rate comes
//! from the factor filtration of the characteristic polynomial, and the
//! signature from the pole structure of the rational generating function
//! sum_n (M^n v . Z) x^n, both exact.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::RealAlgebraic;
use crate::error::KernelError;
use crate::matrix::RationalMatrix;
use crate::numfield::{
    nf_poly_divrem, nf_poly_eval, nf_poly_from_rat, FieldScalar, NfElem, NumberField,
};
use crate::poly::RatPoly;
use crate::rational::Rational;
use crate::spectrum::{CertifiedSpectrum, EigenvalueKind};

/// Dominant-term data of a pairing sequence: (M^n v . Z) =
/// C beta^n n^a + O(beta^n n^(a-1)) with sign(C) recorded.
#[derive(Debug, Clone)]
pub struct GrowthSignature {
    pub beta: RealAlgebraic,
    pub poly_degree: u32,
    pub leading_sign: i8,
}

impl GrowthSignature {
    /// Lexicographic comparison of (beta, a).
    pub fn cmp_rate(&self, other: &GrowthSignature) -> std::cmp::Ordering {
        self.beta
            .cmp(&other.beta)
            .then(self.poly_degree.cmp(&other.poly_degree))
    }
}

/// lim ||M^n v||^(1/n): the maximal factor modulus over the factors of the
/// characteristic polynomial that see a component of v.
pub fn growth_rate(
    m: &RationalMatrix,
    spec: &CertifiedSpectrum,
    v: &[Rational],
) -> Result<RealAlgebraic, KernelError> {
    if v.iter().all(|c| c.is_zero()) {
        return Err(KernelError::ZeroVector);
    }
    if v.len() != m.n {
        return Err(KernelError::DimensionMismatch(format!(
            "vector length {} vs matrix dimension {}",
            v.len(),
            m.n
        )));
    }
    let mut best: Option<RealAlgebraic> = None;
    for fi in 0..spec.factors.len() {
        if !factor_sees_vector(m, spec, fi, v) {
            continue;
        }
        let rho = spec.factor_modulus(fi);
        best = Some(match best {
            None => rho,
            Some(b) => {
                if rho > b {
                    rho
                } else {
                    b
                }
            }
        });
    }
    Ok(best.expect("nonzero vector has a component in some factor space"))
}

/// Whether the component of v in the generalized eigenspace of factor `fi`
/// is nonzero: the cofactor polynomial (char/q^mult) applied to M kills all
/// other factor spaces and is invertible on this one.
fn factor_sees_vector(
    m: &RationalMatrix,
    spec: &CertifiedSpectrum,
    fi: usize,
    v: &[Rational],
) -> bool {
    let (q, mult) = &spec.factors[fi];
    let mut qpow = RatPoly::one();
    let qr = q.to_rat().monic();
    for _ in 0..*mult {
        qpow = qpow.mul(&qr);
    }
    let cofactor = spec.char_poly.div_rem(&qpow).0;
    let w = m.apply_poly(&cofactor).mul_vec(v);
    w.iter().any(|c| !c.is_zero())
}

/// The unique (beta, a, sign C) of the pairing sequence; requires every
/// eigenvalue real and positive.
pub fn growth_signature(
    m: &RationalMatrix,
    spec: &CertifiedSpectrum,
    v: &[Rational],
    z: &[Rational],
) -> Result<GrowthSignature, KernelError> {
    if !spec.all_real_positive() {
        let bad = spec
            .entries
            .iter()
            .find(|e| {
                e.kind == EigenvalueKind::ComplexPair
                    || e.value.as_ref().map(|x| x.sign() <= 0).unwrap_or(false)
            })
            .map(crate::eigenspace::entry_description)
            .unwrap_or_default();
        return Err(KernelError::SpectrumNotPositiveReal(bad));
    }
    let n = m.n;
    if v.len() != n || z.len() != n {
        return Err(KernelError::DimensionMismatch(
            "pairing data must match the matrix dimension".into(),
        ));
    }
    // first n terms of the sequence
    let mut terms = Vec::with_capacity(n);
    let mut w = v.to_vec();
    for _ in 0..n {
        let dot: Rational = w.iter().zip(z).map(|(a, b)| a * b).sum();
        terms.push(dot);
        w = m.mul_vec(&w);
    }
    // denominator Q(x) = x^n chi(1/x), constant term 1
    let chi = &spec.char_poly;
    let mut qc = chi.coeffs.clone();
    qc.reverse();
    let q_poly = RatPoly::new(qc);
    // numerator P = (sum_k a_k x^k) * Q truncated below degree n
    let mut p_coeffs = vec![BigRational::zero(); n];
    for (k, a) in terms.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, qj) in q_poly.coeffs.iter().enumerate() {
            if k + j < n {
                p_coeffs[k + j] += a * qj;
            }
        }
    }
    let p_poly = RatPoly::new(p_coeffs);
    if p_poly.is_zero() {
        return Err(KernelError::ZeroSequence);
    }
    let g = p_poly.gcd(&q_poly);
    let p_red = p_poly.div_rem(&g).0;
    let q_red = q_poly.div_rem(&g).0;

    // surviving factors: reversed irreducible factors dividing the reduced
    // denominator; beta is the largest eigenvalue among them
    let mut beta: Option<(RealAlgebraic, usize, u32)> = None; // (value, factor, pole mult)
    for (fi, (fac, _)) in spec.factors.iter().enumerate() {
        let rev = fac.reverse().to_rat().monic();
        let mut k = 0u32;
        let mut rest = q_red.clone();
        loop {
            let (qt, r) = rest.div_rem(&rev);
            if r.is_zero() {
                k += 1;
                rest = qt;
            } else {
                break;
            }
        }
        if k == 0 {
            continue;
        }
        let max_root = spec
            .entries
            .iter()
            .filter(|e| e.factor_index == fi)
            .map(|e| e.value.clone().unwrap())
            .max()
            .unwrap();
        let replace = match &beta {
            None => true,
            Some((b, _, _)) => max_root > *b,
        };
        if replace {
            beta = Some((max_root, fi, k));
        }
    }
    let (beta, _fi, pole_mult) =
        beta.ok_or_else(|| KernelError::Internal("no pole survived reduction".into()))?;
    let a = pole_mult - 1;

    // sign of the leading coefficient: K = P(1/beta) / R(1/beta) with
    // Q_red = (1 - beta x)^pole R(x)
    let sign = match &beta {
        RealAlgebraic::Rational(b) => {
            let lin = RatPoly::new(vec![BigRational::one(), -b.clone()]);
            let mut r_poly = q_red.clone();
            for _ in 0..pole_mult {
                let (qt, rem) = r_poly.div_rem(&lin);
                debug_assert!(rem.is_zero());
                r_poly = qt;
            }
            let x0 = b.recip();
            let num = p_red.eval(&x0);
            let den = r_poly.eval(&x0);
            debug_assert!(!den.is_zero());
            crate::rational::rat_sign(&(num / den))
        }
        RealAlgebraic::Algebraic(_) => {
            let field = NumberField::from_algebraic(&beta).unwrap();
            let beta_elem = NfElem::theta(field.clone());
            let one = beta_elem.one_elem();
            let lin = vec![one.clone(), beta_elem.neg_elem()];
            let mut r_poly = nf_poly_from_rat(&field, &q_red);
            for _ in 0..pole_mult {
                let (qt, rem) = nf_poly_divrem(&r_poly, &lin);
                debug_assert!(rem.is_empty());
                r_poly = qt;
            }
            let x0 = beta_elem.inv_elem();
            let num = nf_poly_eval(&nf_poly_from_rat(&field, &p_red), &x0);
            let den = nf_poly_eval(&r_poly, &x0);
            num.mul_elem(&den.inv_elem()).sign_elem()
        }
    };
    Ok(GrowthSignature {
        beta,
        poly_degree: a,
        leading_sign: sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, two_pow_neg};
    use crate::spectrum::certified_spectrum;

    fn setup(rows: &[&[i64]]) -> (RationalMatrix, CertifiedSpectrum) {
        let m = RationalMatrix::from_i64_rows(rows);
        let s = certified_spectrum(&m, &two_pow_neg(64));
        (m, s)
    }

    fn vec_i64(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn growth_rate_diagonal() {
        let (m, s) = setup(&[&[2, 0], &[0, 3]]);
        let g = growth_rate(&m, &s, &vec_i64(&[1, 1])).unwrap();
        assert!(g.equals(&RealAlgebraic::from_int(3)));
        let g2 = growth_rate(&m, &s, &vec_i64(&[1, 0])).unwrap();
        assert!(g2.equals(&RealAlgebraic::from_int(2)));
        assert!(matches!(
            growth_rate(&m, &s, &vec_i64(&[0, 0])),
            Err(KernelError::ZeroVector)
        ));
    }

    #[test]
    fn growth_rate_of_scaled_rotation() {
        // 2 * rotation by 90 degrees: pair of modulus 2
        let (m, s) = setup(&[&[0, -2], &[2, 0]]);
        let g = growth_rate(&m, &s, &vec_i64(&[1, 0])).unwrap();
        assert!(g.equals(&RealAlgebraic::from_int(2)));
    }

    #[test]
    fn signature_dominant_diagonal() {
        let (m, s) = setup(&[&[2, 0], &[0, 3]]);
        let sig = growth_signature(&m, &s, &vec_i64(&[1, 1]), &vec_i64(&[1, 1])).unwrap();
        assert!(sig.beta.equals(&RealAlgebraic::from_int(3)));
        assert_eq!(sig.poly_degree, 0);
        assert_eq!(sig.leading_sign, 1);
    }

    #[test]
    fn signature_jordan_block() {
        // (M^n e2 . (1,1)) = n 2^(n-1) + 2^n
        let (m, s) = setup(&[&[2, 1], &[0, 2]]);
        let sig = growth_signature(&m, &s, &vec_i64(&[0, 1]), &vec_i64(&[1, 1])).unwrap();
        assert!(sig.beta.equals(&RealAlgebraic::from_int(2)));
        assert_eq!(sig.poly_degree, 1);
        assert_eq!(sig.leading_sign, 1);
    }

    #[test]
    fn signature_negative_dominant_coefficient() {
        // 2^n - 3^n
        let (m, s) = setup(&[&[2, 0], &[0, 3]]);
        let sig = growth_signature(&m, &s, &vec_i64(&[1, -1]), &vec_i64(&[1, 1])).unwrap();
        assert!(sig.beta.equals(&RealAlgebraic::from_int(3)));
        assert_eq!(sig.poly_degree, 0);
        assert_eq!(sig.leading_sign, -1);
    }

    #[test]
    fn signature_rejects_mixed_spectrum() {
        let (m, s) = setup(&[&[0, -1], &[1, 0]]);
        assert!(matches!(
            growth_signature(&m, &s, &vec_i64(&[1, 0]), &vec_i64(&[1, 0])),
            Err(KernelError::SpectrumNotPositiveReal(_))
        ));
    }

    #[test]
    fn signature_zero_sequence() {
        let (m, s) = setup(&[&[2, 0], &[0, 3]]);
        assert!(matches!(
            growth_signature(&m, &s, &vec_i64(&[1, 0]), &vec_i64(&[0, 1])),
            Err(KernelError::ZeroSequence)
        ));
    }

    #[test]
    fn signature_with_irrational_beta() {
        // companion of t^2 - t - 1: dominant eigenvalue golden ratio
        let (m, s) = setup(&[&[0, 1], &[1, 1]]);
        // spectrum has a negative eigenvalue, so the positivity precondition
        // fails; shift by 2 to push both eigenvalues positive:
        // M + 2I has eigenvalues phi+2 > psi+2 > 0
        let m2 = m.add(&RationalMatrix::diagonal(&[rat_int(2), rat_int(2)]));
        let s2 = certified_spectrum(&m2, &two_pow_neg(64));
        let sig = growth_signature(&m2, &s2, &vec_i64(&[1, 0]), &vec_i64(&[1, 0])).unwrap();
        let phi_plus2 = RealAlgebraic::from_int(5)
            .nth_root(2)
            .unwrap()
            .add_rational(&rat_int(1))
            .mul_rational(&crate::rational::rat(1, 2))
            .add_rational(&rat_int(2));
        assert!(sig.beta.equals(&phi_plus2));
        assert_eq!(sig.poly_degree, 0);
        assert_eq!(sig.leading_sign, 1);
        let _ = s; // silence
    }
}
