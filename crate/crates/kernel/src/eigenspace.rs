//! Generalized eigenspaces E_S for conjugation-closed eigenvalue selections.
//!
//! A selection is a set of spectrum entries (real eigenvalues and whole
//! conjugate pairs), so it is conjugation-closed by construction; the
//! splitting-a-pair error is surfaced by the root-level validation used by
//! callers that accept raw root lists.
//!
//! When the selection consists of complete root sets of irreducible factors
//! the basis is rational: the kernel of q(M)^mult for q the product of those
//! factors. Partial selections inside a factor produce a basis over a real
//! number field assembled by primitive elements.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::RealAlgebraic;
use crate::error::KernelError;
use crate::matrix::{kernel_field, RationalMatrix};
use crate::numfield::{
    compositum, nf_poly_divrem, nf_poly_from_rat, nf_poly_mul, nf_poly_trim, FieldScalar, NfElem,
    NfPoly, NumberField,
};
use crate::poly::RatPoly;
use crate::rational::{two_pow_neg, Rational};
use crate::spectrum::{CertifiedSpectrum, EigenvalueEntry, EigenvalueKind};

/// Basis of a generalized eigenspace; rational whenever possible.
#[derive(Debug, Clone)]
pub enum EigenspaceBasis {
    Rational(Vec<Vec<Rational>>),
    Algebraic {
        field: Arc<NumberField>,
        basis: Vec<Vec<NfElem>>,
    },
}

impl EigenspaceBasis {
    pub fn dim(&self) -> usize {
        match self {
            EigenspaceBasis::Rational(b) => b.len(),
            EigenspaceBasis::Algebraic { basis, .. } => basis.len(),
        }
    }
}

/// Root-level selector used by external callers; `PairHalf` exists so the
/// conjugation-closure error is expressible and testable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSelector {
    /// A real eigenvalue entry.
    Real(usize),
    /// Both members of a complex-conjugate pair entry.
    WholePair(usize),
    /// One member of a pair: always rejected.
    PairHalf(usize),
}

pub fn validate_selection(
    spec: &CertifiedSpectrum,
    sel: &[RootSelector],
) -> Result<Vec<usize>, KernelError> {
    let mut entries = vec![];
    for s in sel {
        match *s {
            RootSelector::PairHalf(_) => return Err(KernelError::SNotConjugationClosed),
            RootSelector::Real(i) => {
                let e = spec.entries.get(i).ok_or(KernelError::BadSelection)?;
                if e.kind != EigenvalueKind::Real {
                    return Err(KernelError::BadSelection);
                }
                entries.push(i);
            }
            RootSelector::WholePair(i) => {
                let e = spec.entries.get(i).ok_or(KernelError::BadSelection)?;
                if e.kind != EigenvalueKind::ComplexPair {
                    return Err(KernelError::BadSelection);
                }
                entries.push(i);
            }
        }
    }
    entries.sort_unstable();
    entries.dedup();
    Ok(entries)
}

/// E_S for a selection of spectrum entries (indices into `spec.entries`).
pub fn generalized_eigenspace(
    m: &RationalMatrix,
    spec: &CertifiedSpectrum,
    selection: &[usize],
) -> Result<EigenspaceBasis, KernelError> {
    for &i in selection {
        if i >= spec.entries.len() {
            return Err(KernelError::BadSelection);
        }
    }
    // group selected entries by factor
    let mut by_factor: Vec<Vec<usize>> = vec![vec![]; spec.factors.len()];
    for &i in selection {
        by_factor[spec.entries[i].factor_index].push(i);
    }
    let factor_entry_count: Vec<usize> = (0..spec.factors.len())
        .map(|fi| {
            spec.entries
                .iter()
                .filter(|e| e.factor_index == fi)
                .count()
        })
        .collect();

    // whole factors contribute a rational polynomial; partial factors need
    // algebraic coefficients
    let mut rational_poly = RatPoly::one();
    let mut partial: Vec<(usize, Vec<usize>)> = vec![];
    for (fi, sel) in by_factor.iter().enumerate() {
        if sel.is_empty() {
            continue;
        }
        let (f, mult) = &spec.factors[fi];
        if sel.len() == factor_entry_count[fi] {
            let mut q = f.to_rat().monic();
            let mut acc = RatPoly::one();
            for _ in 0..*mult {
                acc = acc.mul(&q);
            }
            q = acc;
            rational_poly = rational_poly.mul(&q);
        } else {
            partial.push((fi, sel.clone()));
        }
    }

    if partial.is_empty() {
        if rational_poly.degree() == 0 {
            return Ok(EigenspaceBasis::Rational(vec![])); // empty selection
        }
        let qm = m.apply_poly(&rational_poly);
        return Ok(EigenspaceBasis::Rational(qm.kernel_basis()));
    }

    // gather generators for every partial factor: the real roots selected and
    // (trace, modulus^2) for every selected pair; use the complement when it
    // is cheaper, dividing the factor by the complement polynomial
    struct PartialPlan {
        factor: usize,
        use_complement: bool,
        units: Vec<usize>, // entry indices to build the unit polynomial from
    }
    let mut plans = vec![];
    let mut gens: Vec<RealAlgebraic> = vec![];
    let mut gen_slots: Vec<Vec<usize>> = vec![]; // per plan, indices into gens
    for (fi, sel) in &partial {
        let all: Vec<usize> = spec
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.factor_index == *fi)
            .map(|(i, _)| i)
            .collect();
        let complement: Vec<usize> = all.iter().copied().filter(|i| !sel.contains(i)).collect();
        let cost = |units: &[usize]| -> usize {
            units
                .iter()
                .map(|&i| match spec.entries[i].kind {
                    EigenvalueKind::Real => spec.entries[i].value.as_ref().unwrap().degree(),
                    EigenvalueKind::ComplexPair => {
                        let e = &spec.entries[i];
                        e.pair_trace.as_ref().unwrap().degree()
                            + e.pair_modulus_sq.as_ref().unwrap().degree()
                    }
                })
                .sum()
        };
        let use_complement = cost(&complement) < cost(sel);
        let units = if use_complement {
            complement
        } else {
            sel.clone()
        };
        let mut slots = vec![];
        for &i in &units {
            let e = &spec.entries[i];
            match e.kind {
                EigenvalueKind::Real => {
                    slots.push(gens.len());
                    gens.push(e.value.clone().unwrap());
                }
                EigenvalueKind::ComplexPair => {
                    slots.push(gens.len());
                    gens.push(e.pair_trace.clone().unwrap());
                    gens.push(e.pair_modulus_sq.clone().unwrap());
                }
            }
        }
        gen_slots.push(slots);
        plans.push(PartialPlan {
            factor: *fi,
            use_complement,
            units,
        });
    }

    if gens.iter().all(|g| g.is_rational()) {
        // partial selection with rational data (e.g. rational pair traces);
        // fall back to the rational path by direct construction
        let mut poly = rational_poly;
        for (pi, plan) in plans.iter().enumerate() {
            let unit_poly = rational_unit_poly(spec, &plan.units, &gen_slots[pi], &gens);
            let (f, mult) = &spec.factors[plan.factor];
            let selected = if plan.use_complement {
                f.to_rat().monic().div_rem(&unit_poly).0
            } else {
                unit_poly
            };
            let mut acc = RatPoly::one();
            for _ in 0..*mult {
                acc = acc.mul(&selected);
            }
            poly = poly.mul(&acc);
        }
        let qm = m.apply_poly(&poly);
        return Ok(EigenspaceBasis::Rational(qm.kernel_basis()));
    }

    let (field, exprs) = compositum(&gens);
    // assemble the full annihilating polynomial over the field
    let one = NfElem::rational(field.clone(), BigRational::one());
    let mut poly: NfPoly = nf_poly_from_rat(&field, &rational_poly);
    for (pi, plan) in plans.iter().enumerate() {
        let mut unit_poly: NfPoly = vec![one.clone()];
        let mut slot_iter = gen_slots[pi].iter();
        for &i in &plan.units {
            let e = &spec.entries[i];
            let base = *slot_iter.next().unwrap();
            match e.kind {
                EigenvalueKind::Real => {
                    // (t - r)
                    let lin = vec![exprs[base].neg_elem(), one.clone()];
                    unit_poly = nf_poly_mul(&unit_poly, &lin);
                }
                EigenvalueKind::ComplexPair => {
                    // t^2 - trace t + modsq
                    let quad = vec![
                        exprs[base + 1].clone(),
                        exprs[base].neg_elem(),
                        one.clone(),
                    ];
                    unit_poly = nf_poly_mul(&unit_poly, &quad);
                }
            }
        }
        let (f, mult) = &spec.factors[plan.factor];
        let selected = if plan.use_complement {
            let whole = nf_poly_from_rat(&field, &f.to_rat().monic());
            let (q, r) = nf_poly_divrem(&whole, &unit_poly);
            debug_assert!(nf_poly_trim(r).is_empty(), "complement must divide factor");
            q
        } else {
            unit_poly
        };
        for _ in 0..*mult {
            poly = nf_poly_mul(&poly, &selected);
        }
    }

    // kernel of poly(M) over the field
    let n = m.n;
    let zero = NfElem::rational(field.clone(), BigRational::zero());
    let mut acc: Vec<Vec<NfElem>> = vec![vec![zero.clone(); n]; n];
    // Horner: acc = acc * M + c * I
    for c in poly.iter().rev() {
        // acc * M (rational matrix on the right)
        let mut next = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if acc[i][k].is_zero_elem() {
                    continue;
                }
                for j in 0..n {
                    let mij = m.at(k, j);
                    if mij.is_zero() {
                        continue;
                    }
                    let term = acc[i][k].mul_elem(&NfElem::rational(field.clone(), mij.clone()));
                    next[i][j] = next[i][j].add_elem(&term);
                }
            }
        }
        for i in 0..n {
            next[i][i] = next[i][i].add_elem(c);
        }
        acc = next;
    }
    let basis = kernel_field(&acc);
    Ok(EigenspaceBasis::Algebraic { field, basis })
}

fn rational_unit_poly(
    spec: &CertifiedSpectrum,
    units: &[usize],
    slots: &[usize],
    gens: &[RealAlgebraic],
) -> RatPoly {
    let mut poly = RatPoly::one();
    let mut slot_iter = slots.iter();
    for &i in units {
        let e = &spec.entries[i];
        let base = *slot_iter.next().unwrap();
        match e.kind {
            EigenvalueKind::Real => {
                let r = gens[base].as_rational().unwrap().clone();
                poly = poly.mul(&RatPoly::new(vec![-r, BigRational::one()]));
            }
            EigenvalueKind::ComplexPair => {
                let t = gens[base].as_rational().unwrap().clone();
                let s = gens[base + 1].as_rational().unwrap().clone();
                poly = poly.mul(&RatPoly::new(vec![s, -t, BigRational::one()]));
            }
        }
    }
    poly
}

/// Exact dimension of E_S (counting over the reals).
pub fn expected_dimension(spec: &CertifiedSpectrum, selection: &[usize]) -> usize {
    selection
        .iter()
        .map(|&i| spec.entries[i].dimension_weight())
        .sum()
}

/// Convenience: E_S from exact real eigenvalues (selects the matching real
/// entries).
pub fn eigenspace_of_values(
    m: &RationalMatrix,
    spec: &CertifiedSpectrum,
    values: &[RealAlgebraic],
) -> Result<EigenspaceBasis, KernelError> {
    let mut selection = vec![];
    for v in values {
        let mut found = false;
        for (i, e) in spec.entries.iter().enumerate() {
            if e.kind == EigenvalueKind::Real && e.value.as_ref().unwrap().equals(v) {
                selection.push(i);
                found = true;
                break;
            }
        }
        if !found {
            return Err(KernelError::BadSelection);
        }
    }
    generalized_eigenspace(m, spec, &selection)
}

pub fn entry_description(e: &EigenvalueEntry) -> String {
    match e.kind {
        EigenvalueKind::Real => format!("{}", e.value.as_ref().unwrap()),
        EigenvalueKind::ComplexPair => {
            format!(
                "pair(trace {}, |.|^2 {})",
                e.pair_trace.as_ref().unwrap(),
                e.pair_modulus_sq.as_ref().unwrap()
            )
        }
    }
}

/// Verifies that an eigenspace basis is annihilated by q(M)^mult, over the
/// right field; used in tests and verification suites.
pub fn check_invariant_subspace(m: &RationalMatrix, basis: &EigenspaceBasis) -> bool {
    match basis {
        EigenspaceBasis::Rational(rows) => {
            // M-invariance: M * v stays in span(rows)
            if rows.is_empty() {
                return true;
            }
            let span = rows.clone();
            for v in rows {
                let mv = m.mul_vec(v);
                if !in_span_rational(&span, &mv) {
                    return false;
                }
            }
            true
        }
        EigenspaceBasis::Algebraic { basis, .. } => {
            if basis.is_empty() {
                return true;
            }
            for v in basis {
                let mv: Vec<NfElem> = (0..m.n)
                    .map(|i| {
                        let mut s = v[0].zero_elem();
                        for j in 0..m.n {
                            let c = v[0].from_rational_elem(m.at(i, j));
                            s = s.add_elem(&c.mul_elem(&v[j]));
                        }
                        s
                    })
                    .collect();
                if !in_span_field(basis, &mv) {
                    return false;
                }
            }
            true
        }
    }
}

fn in_span_rational(span: &[Vec<Rational>], v: &[Rational]) -> bool {
    let cols: Vec<Vec<Rational>> = transpose_to_columns(span, v.len());
    crate::matrix::solve_field(&cols, v).is_some()
}

fn in_span_field<T: FieldScalar>(span: &[Vec<T>], v: &[T]) -> bool {
    let cols: Vec<Vec<T>> = transpose_to_columns(span, v.len());
    crate::matrix::solve_field(&cols, v).is_some()
}

fn transpose_to_columns<T: Clone>(span: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| span.iter().map(|row| row[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::certified_spectrum;

    fn setup(rows: &[&[i64]]) -> (RationalMatrix, CertifiedSpectrum) {
        let m = RationalMatrix::from_i64_rows(rows);
        let s = certified_spectrum(&m, &two_pow_neg(64));
        (m, s)
    }

    #[test]
    fn diagonal_single_eigenvector() {
        let (m, s) = setup(&[&[2, 0], &[0, 3]]);
        // entry 0 should be eigenvalue 2
        let sel = vec![0usize];
        let basis = generalized_eigenspace(&m, &s, &sel).unwrap();
        match basis {
            EigenspaceBasis::Rational(b) => {
                assert_eq!(b.len(), 1);
                // must be a multiple of e1
                assert!(b[0][1].is_zero());
                assert!(!b[0][0].is_zero());
            }
            _ => panic!("expected rational basis"),
        }
    }

    #[test]
    fn jordan_block_full_plane() {
        let (m, s) = setup(&[&[2, 1], &[0, 2]]);
        let basis = generalized_eigenspace(&m, &s, &[0]).unwrap();
        assert_eq!(basis.dim(), 2);
    }

    #[test]
    fn diag_three_select_two() {
        let (m, s) = setup(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        // entries sorted ascending within factor ordering; find values 2 and 5
        let sel: Vec<usize> = s
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let v = e.value.as_ref().unwrap();
                v.equals(&RealAlgebraic::from_int(2)) || v.equals(&RealAlgebraic::from_int(5))
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(sel.len(), 2);
        let basis = generalized_eigenspace(&m, &s, &sel).unwrap();
        assert_eq!(basis.dim(), 2);
        match &basis {
            EigenspaceBasis::Rational(b) => {
                for v in b {
                    assert!(v[1].is_zero(), "second coordinate must vanish");
                }
            }
            _ => panic!("expected rational basis"),
        }
        assert!(check_invariant_subspace(&m, &basis));
    }

    #[test]
    fn partial_selection_in_irrational_factor() {
        // swap-scale: eigenvalues +-sqrt6, factor t^2-6; select only +sqrt6
        let (m, s) = setup(&[&[0, 2], &[3, 0]]);
        let pos: Vec<usize> = s
            .positive_real()
            .into_iter()
            .map(|(i, _)| i)
            .collect();
        assert_eq!(pos.len(), 1);
        let basis = generalized_eigenspace(&m, &s, &pos).unwrap();
        assert_eq!(basis.dim(), 1);
        match &basis {
            EigenspaceBasis::Algebraic { field, basis } => {
                assert_eq!(field.degree, 2);
                // the eigenvector direction (2, sqrt6) up to scaling
                let v = &basis[0];
                assert!(!v[0].is_zero_elem() && !v[1].is_zero_elem());
            }
            _ => panic!("expected algebraic basis"),
        }
        assert!(check_invariant_subspace(&m, &basis));
    }

    #[test]
    fn pair_half_is_rejected() {
        let (_, s) = setup(&[&[0, -1], &[1, 0]]);
        let err = validate_selection(&s, &[RootSelector::PairHalf(0)]).unwrap_err();
        assert!(matches!(err, KernelError::SNotConjugationClosed));
    }

    #[test]
    fn complementary_dimensions_add_up() {
        let (m, s) = setup(&[&[0, 2, 0], &[3, 0, 0], &[0, 0, 7]]);
        let all: Vec<usize> = (0..s.entries.len()).collect();
        for k in 0..(1usize << all.len()) {
            let sel: Vec<usize> = all
                .iter()
                .copied()
                .filter(|i| k & (1 << i) != 0)
                .collect();
            let co: Vec<usize> = all
                .iter()
                .copied()
                .filter(|i| k & (1 << i) == 0)
                .collect();
            let d1 = generalized_eigenspace(&m, &s, &sel).unwrap().dim();
            let d2 = generalized_eigenspace(&m, &s, &co).unwrap().dim();
            assert_eq!(d1 + d2, 3);
            assert_eq!(d1, expected_dimension(&s, &sel));
        }
    }
}
