//! Certified spectra of rational matrices: eigenvalues as (irreducible
//! factor, isolating certificate, multiplicity) with real eigenvalues carried
//! as exact algebraic numbers and complex pairs carried with exact trace and
//! squared modulus.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebraic::RealAlgebraic;
use crate::complexroots::{certified_complex_boxes, ComplexBox};
use crate::factor::factor_rat_poly;
use crate::matrix::RationalMatrix;
use crate::poly::{isolate_real_roots, refine_root_interval, refine_to_width, IntPoly, RatPoly};
use crate::rational::{rat_int, two_pow_neg, RatInterval, Rational};
use crate::resultant::{root_prod_poly, root_sum_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenvalueKind {
    Real,
    ComplexPair,
}

/// One eigenvalue (or conjugate pair) of the spectrum.
#[derive(Debug, Clone)]
pub struct EigenvalueEntry {
    pub factor_index: usize,
    pub min_poly: IntPoly,
    /// Algebraic multiplicity of each root in this entry (a pair contributes
    /// twice this to the dimension count).
    pub multiplicity: u32,
    pub kind: EigenvalueKind,
    /// Exact value for real eigenvalues.
    pub value: Option<RealAlgebraic>,
    /// Certified box for the upper-half representative of a pair.
    pub complex_box: Option<ComplexBox>,
    /// Exact c + conj(c) for a pair.
    pub pair_trace: Option<RealAlgebraic>,
    /// Exact |c|^2 for a pair.
    pub pair_modulus_sq: Option<RealAlgebraic>,
}

impl EigenvalueEntry {
    /// |eigenvalue| as an exact algebraic number.
    pub fn modulus(&self) -> RealAlgebraic {
        match self.kind {
            EigenvalueKind::Real => self.value.as_ref().unwrap().abs(),
            EigenvalueKind::ComplexPair => self
                .pair_modulus_sq
                .as_ref()
                .unwrap()
                .nth_root(2)
                .expect("modulus of nonzero eigenvalue"),
        }
    }

    /// Dimension contributed to the ambient space.
    pub fn dimension_weight(&self) -> usize {
        let per_root = self.multiplicity as usize;
        match self.kind {
            EigenvalueKind::Real => per_root,
            EigenvalueKind::ComplexPair => 2 * per_root,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedSpectrum {
    pub dim: usize,
    pub char_poly: RatPoly,
    pub factors: Vec<(IntPoly, u32)>,
    pub entries: Vec<EigenvalueEntry>,
}

impl CertifiedSpectrum {
    /// Indices and exact values of the strictly positive real eigenvalues.
    pub fn positive_real(&self) -> Vec<(usize, RealAlgebraic)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e.kind {
                EigenvalueKind::Real => {
                    let v = e.value.clone().unwrap();
                    if v.sign() > 0 {
                        Some((i, v))
                    } else {
                        None
                    }
                }
                EigenvalueKind::ComplexPair => None,
            })
            .collect()
    }

    pub fn all_real(&self) -> bool {
        self.entries.iter().all(|e| e.kind == EigenvalueKind::Real)
    }

    pub fn all_real_positive(&self) -> bool {
        self.entries.iter().all(|e| {
            e.kind == EigenvalueKind::Real && e.value.as_ref().unwrap().sign() > 0
        })
    }

    /// Spectral radius: the maximum eigenvalue modulus.
    pub fn spectral_radius(&self) -> RealAlgebraic {
        let mut best: Option<RealAlgebraic> = None;
        for e in &self.entries {
            let m = e.modulus();
            best = Some(match best {
                None => m,
                Some(b) => {
                    if m > b {
                        m
                    } else {
                        b
                    }
                }
            });
        }
        best.expect("spectrum of a matrix of dimension >= 1 is nonempty")
    }

    /// Maximum root modulus among entries of one irreducible factor.
    pub fn factor_modulus(&self, factor_index: usize) -> RealAlgebraic {
        self.entries
            .iter()
            .filter(|e| e.factor_index == factor_index)
            .map(|e| e.modulus())
            .max()
            .expect("factor has at least one entry")
    }
}

/// Computes the certified spectrum with every isolating certificate of
/// diameter at most `width`. Always succeeds; refinement loops until all
/// certificates are disjoint and identified.
pub fn certified_spectrum(m: &RationalMatrix, width: &Rational) -> CertifiedSpectrum {
    let chi = m.char_poly();
    let factors = factor_rat_poly(&chi);
    spectrum_of_factors(m.n, chi, factors, width)
}

pub fn spectrum_of_poly(chi: &RatPoly, width: &Rational) -> CertifiedSpectrum {
    let factors = factor_rat_poly(chi);
    let dim = chi.degree();
    spectrum_of_factors(dim, chi.clone(), factors, width)
}

fn spectrum_of_factors(
    dim: usize,
    chi: RatPoly,
    factors: Vec<(IntPoly, u32)>,
    width: &Rational,
) -> CertifiedSpectrum {
    let mut real_parts: Vec<Vec<RatInterval>> = vec![];
    let mut complex_parts: Vec<Vec<(ComplexBox, RealAlgebraic, RealAlgebraic)>> = vec![];
    for (f, _) in &factors {
        let (reals, pairs) = factor_layout(f, width);
        real_parts.push(reals);
        complex_parts.push(pairs);
    }

    // cross-factor separation of real isolating intervals
    loop {
        let mut clash = None;
        'scan: for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                for a in 0..real_parts[i].len() {
                    for b in 0..real_parts[j].len() {
                        if !real_parts[i][a].disjoint(&real_parts[j][b]) {
                            clash = Some((i, a, j, b));
                            break 'scan;
                        }
                    }
                }
            }
        }
        match clash {
            None => break,
            Some((i, a, j, b)) => {
                let fi = factors[i].0.clone();
                let fj = factors[j].0.clone();
                real_parts[i][a] = refine_root_interval(&fi, &real_parts[i][a]);
                real_parts[j][b] = refine_root_interval(&fj, &real_parts[j][b]);
            }
        }
    }

    // cross-factor separation of complex boxes
    let mut eps_scale = width.clone();
    loop {
        let mut overlap = None;
        'scan2: for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                for a in 0..complex_parts[i].len() {
                    for b in 0..complex_parts[j].len() {
                        if !complex_parts[i][a].0.disjoint(&complex_parts[j][b].0) {
                            overlap = Some((i, j));
                            break 'scan2;
                        }
                    }
                }
            }
        }
        match overlap {
            None => break,
            Some((i, j)) => {
                eps_scale = &eps_scale * two_pow_neg(8);
                complex_parts[i] = factor_layout(&factors[i].0, &eps_scale).1;
                complex_parts[j] = factor_layout(&factors[j].0, &eps_scale).1;
            }
        }
    }

    let mut entries = vec![];
    for (fi, (f, mult)) in factors.iter().enumerate() {
        let mut reals: Vec<RealAlgebraic> = real_parts[fi]
            .iter()
            .map(|iv| RealAlgebraic::from_isolated_root(f.clone(), iv.clone()))
            .collect();
        reals.sort();
        for v in reals {
            entries.push(EigenvalueEntry {
                factor_index: fi,
                min_poly: f.clone(),
                multiplicity: *mult,
                kind: EigenvalueKind::Real,
                value: Some(v),
                complex_box: None,
                pair_trace: None,
                pair_modulus_sq: None,
            });
        }
        let mut pairs = complex_parts[fi].clone();
        pairs.sort_by(|a, b| (a.1.clone(), a.2.clone()).cmp(&(b.1.clone(), b.2.clone())));
        for (bx, trace, modsq) in pairs {
            entries.push(EigenvalueEntry {
                factor_index: fi,
                min_poly: f.clone(),
                multiplicity: *mult,
                kind: EigenvalueKind::ComplexPair,
                value: None,
                complex_box: Some(bx),
                pair_trace: Some(trace),
                pair_modulus_sq: Some(modsq),
            });
        }
    }
    // real eigenvalues ascending, then pairs ascending by (trace, |.|^2)
    entries.sort_by(|a, b| match (a.kind, b.kind) {
        (EigenvalueKind::Real, EigenvalueKind::ComplexPair) => std::cmp::Ordering::Less,
        (EigenvalueKind::ComplexPair, EigenvalueKind::Real) => std::cmp::Ordering::Greater,
        (EigenvalueKind::Real, EigenvalueKind::Real) => {
            a.value.as_ref().unwrap().cmp(b.value.as_ref().unwrap())
        }
        (EigenvalueKind::ComplexPair, EigenvalueKind::ComplexPair) => {
            (a.pair_trace.clone().unwrap(), a.pair_modulus_sq.clone().unwrap())
                .cmp(&(b.pair_trace.clone().unwrap(), b.pair_modulus_sq.clone().unwrap()))
        }
    });
    let total: usize = entries.iter().map(|e| e.dimension_weight()).sum();
    assert_eq!(total, dim, "multiplicities must sum to the dimension");
    CertifiedSpectrum {
        dim,
        char_poly: chi,
        factors,
        entries,
    }
}

/// Real isolating intervals plus identified complex pairs of one irreducible
/// factor.
fn factor_layout(
    f: &IntPoly,
    width: &Rational,
) -> (Vec<RatInterval>, Vec<(ComplexBox, RealAlgebraic, RealAlgebraic)>) {
    let reals: Vec<RatInterval> = isolate_real_roots(f)
        .into_iter()
        .map(|iv| refine_to_width(f, &iv, width))
        .collect();
    let n = f.degree();
    if reals.len() == n {
        return (reals, vec![]);
    }
    // degree-2 pair: trace and modulus are rational, no resultants needed
    if n == 2 {
        let a = BigRational::from(f.coeff(2));
        let trace = RealAlgebraic::Rational(-(BigRational::from(f.coeff(1)) / &a));
        let modsq = RealAlgebraic::Rational(BigRational::from(f.coeff(0)) / &a);
        let boxes = certified_complex_boxes(f, 0, width);
        return (reals, vec![(boxes[0].clone(), trace, modsq)]);
    }
    // general identification of (trace, |.|^2) per pair through the
    // composed-root polynomials
    let trace_cands = real_root_candidates(&root_sum_poly(f, f).squarefree_part());
    let modsq_cands = real_root_candidates(&root_prod_poly(f, f).squarefree_part());
    let mut eps = width.clone();
    loop {
        let boxes = certified_complex_boxes(f, reals.len(), &eps);
        let mut resolved = vec![];
        let mut ok = true;
        for bx in &boxes {
            let t = unique_candidate(&trace_cands, &bx.trace_interval(), &eps);
            let m = unique_candidate(&modsq_cands, &bx.modulus_sq_interval(), &eps);
            match (t, m) {
                (Some(tv), Some(mv)) => resolved.push((bx.clone(), tv, mv)),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return (reals, resolved);
        }
        eps = &eps * two_pow_neg(8);
    }
}

fn real_root_candidates(p: &IntPoly) -> Vec<RealAlgebraic> {
    let mut out = vec![];
    for (fac, _) in crate::factor::factor_int_poly(p) {
        for iv in isolate_real_roots(&fac) {
            out.push(RealAlgebraic::from_isolated_root(fac.clone(), iv));
        }
    }
    out
}

/// The unique candidate lying inside `window`, when the others can be
/// excluded at precision eps; None triggers a retry at finer precision.
fn unique_candidate(
    cands: &[RealAlgebraic],
    window: &RatInterval,
    eps: &Rational,
) -> Option<RealAlgebraic> {
    let mut hit = None;
    for c in cands {
        let enc = c.enclosure(eps);
        if !enc.disjoint(window) {
            if hit.is_some() {
                return None;
            }
            hit = Some(c.clone());
        }
    }
    hit
}

/// Lexicographically sorted eigenvalue moduli (with repetition per entry).
pub fn eigenvalue_moduli(spec: &CertifiedSpectrum) -> Vec<RealAlgebraic> {
    let mut v: Vec<RealAlgebraic> = spec.entries.iter().map(|e| e.modulus()).collect();
    v.sort();
    v
}

/// Exact sign of a one-variable rational polynomial expression evaluated at
/// an algebraic number: the ordered-field primitive.
pub fn algebraic_sign(expr: &RatPoly, at: &RealAlgebraic) -> i8 {
    at.sign_of_poly_at(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn spec_of(rows: &[&[i64]]) -> CertifiedSpectrum {
        let m = RationalMatrix::from_i64_rows(rows);
        certified_spectrum(&m, &two_pow_neg(64))
    }

    #[test]
    fn diagonal_two_three() {
        let s = spec_of(&[&[2, 0], &[0, 3]]);
        assert_eq!(s.entries.len(), 2);
        assert!(s.all_real_positive());
        let vals: Vec<i8> = s.entries.iter().map(|e| e.kind as i8).collect();
        assert_eq!(vals.len(), 2);
        let pos = s.positive_real();
        assert!(pos[0].1.equals(&RealAlgebraic::from_int(2)));
        assert!(pos[1].1.equals(&RealAlgebraic::from_int(3)));
    }

    #[test]
    fn golden_companion_boxes() {
        // companion of t^2 - t - 1
        let s = spec_of(&[&[0, 1], &[1, 1]]);
        assert_eq!(s.entries.len(), 2);
        let phi = &s.entries[1];
        let enc = phi.value.as_ref().unwrap().enclosure(&rat(1, 1_000_000));
        assert!(enc.lo > rat(1618033, 1000000));
        assert!(enc.hi < rat(1618035, 1000000));
        let psi = &s.entries[0];
        let enc2 = psi.value.as_ref().unwrap().enclosure(&rat(1, 1_000_000));
        assert!(enc2.lo > rat(-618035, 1000000));
        assert!(enc2.hi < rat(-618033, 1000000));
    }

    #[test]
    fn rotation_has_one_pair_of_modulus_one() {
        let s = spec_of(&[&[0, -1], &[1, 0]]);
        assert_eq!(s.entries.len(), 1);
        let e = &s.entries[0];
        assert_eq!(e.kind, EigenvalueKind::ComplexPair);
        assert_eq!(e.min_poly, IntPoly::from_i64(&[1, 0, 1]));
        assert!(e.modulus().equals(&RealAlgebraic::from_int(1)));
        assert!(s.spectral_radius().equals(&RealAlgebraic::from_int(1)));
    }

    #[test]
    fn scaled_rotation_modulus_two() {
        let s = spec_of(&[&[0, -2], &[2, 0]]);
        let e = &s.entries[0];
        assert_eq!(e.kind, EigenvalueKind::ComplexPair);
        assert!(e.modulus().equals(&RealAlgebraic::from_int(2)));
    }

    #[test]
    fn swap_scale_has_sqrt6() {
        let s = spec_of(&[&[0, 2], &[3, 0]]);
        assert_eq!(s.entries.len(), 2);
        let pos = s.positive_real();
        assert_eq!(pos.len(), 1);
        let sqrt6 = RealAlgebraic::from_int(6).nth_root(2).unwrap();
        assert!(pos[0].1.equals(&sqrt6));
        assert!(s.spectral_radius().equals(&sqrt6));
    }

    #[test]
    fn jordan_block_multiplicity() {
        let s = spec_of(&[&[2, 1], &[0, 2]]);
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].multiplicity, 2);
        assert_eq!(s.entries[0].dimension_weight(), 2);
    }

    #[test]
    fn quintic_shift_spectrum() {
        // companion of t^5 - 2: one real, two pairs
        let mut rows = vec![vec![0i64; 5]; 5];
        for i in 1..5 {
            rows[i][i - 1] = 1;
        }
        rows[0][4] = 2;
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let s = spec_of(&refs);
        assert_eq!(s.entries.len(), 3);
        let pairs: Vec<&EigenvalueEntry> = s
            .entries
            .iter()
            .filter(|e| e.kind == EigenvalueKind::ComplexPair)
            .collect();
        assert_eq!(pairs.len(), 2);
        // all moduli equal 2^(1/5)
        let m = RealAlgebraic::from_int(2).nth_root(5).unwrap();
        for p in pairs {
            assert!(p.modulus().equals(&m));
        }
        assert!(s.spectral_radius().equals(&m));
    }
}
