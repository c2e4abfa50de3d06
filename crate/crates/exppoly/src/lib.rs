//! Exact exponential-polynomial sequences in one or two variables: terms
//! c * u^n v^m n^s m^t with rational moduli and rational rotation numbers.
//!
//! Evaluation is exact in a cyclotomic field (rational fast path when every
//! turn is 0 or 1/2), dominant signatures come from the lexicographic order
//! on (|u|, |v|, s, t), torus closures of rational rotation vectors are
//! finite cyclic groups handled by enumeration, and the negative-value
//! search for purely rotational dominant parts is certified sign by sign.

pub mod cyclotomic;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use conespec_kernel::rational::{rat_int, rat_pow, two_pow_neg, RatInterval, Rational};

use cyclotomic::{common_order, CycElem};

#[derive(Debug, Error)]
pub enum ExpPolyError {
    #[error("arity mismatch: expected {expected} arguments")]
    ArityMismatch { expected: u8 },
    #[error("term data invalid: {0}")]
    BadTerm(String),
    #[error("terms are not closed under conjugation: {0}")]
    NotConjugationClosed(String),
    #[error("the sequence is identically zero")]
    ZeroSequence,
    #[error("positivity violated at sample point ({0}, {1})")]
    PositivityViolated(u64, u64),
    #[error("a dominant term has zero angle")]
    ZeroAngleTerm,
    #[error("the coefficient data is identically zero")]
    IdenticallyZero,
    #[error("no negative value found within one period; counterexample candidate")]
    SignSearchExhausted,
    #[error("target subset of the closure group is empty")]
    EmptyTarget,
}

/// One term c * u^n v^m n^s m^t. The rotation data is stored as
/// (modulus, turn) with angle = 2 pi turn; the coefficient is a complex
/// rational re + i im.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolyTerm {
    pub coeff_re: Rational,
    pub coeff_im: Rational,
    pub u_mod: Rational,
    pub u_turn: Rational,
    pub v_mod: Option<Rational>,
    pub v_turn: Option<Rational>,
    pub s: u32,
    pub t: Option<u32>,
}

impl ExpPolyTerm {
    pub fn one_var(
        re: (i64, i64),
        im: (i64, i64),
        u_mod: (i64, i64),
        u_turn: (i64, i64),
        s: u32,
    ) -> Self {
        ExpPolyTerm {
            coeff_re: BigRational::new(re.0.into(), re.1.into()),
            coeff_im: BigRational::new(im.0.into(), im.1.into()),
            u_mod: BigRational::new(u_mod.0.into(), u_mod.1.into()),
            u_turn: BigRational::new(u_turn.0.into(), u_turn.1.into()),
            v_mod: None,
            v_turn: None,
            s,
            t: None,
        }
    }

    fn signature(&self) -> (Rational, Rational, Rational, Rational, u32, u32) {
        (
            self.u_mod.clone(),
            self.u_turn.clone(),
            self.v_mod.clone().unwrap_or_else(BigRational::one),
            self.v_turn.clone().unwrap_or_else(BigRational::zero),
            self.s,
            self.t.unwrap_or(0),
        )
    }

    /// Signature of the complex-conjugate term.
    fn conj_signature(&self) -> (Rational, Rational, Rational, Rational, u32, u32) {
        let (um, ut, vm, vt, s, t) = self.signature();
        (um, conj_turn(&ut), vm, conj_turn(&vt), s, t)
    }

    fn is_self_conjugate_signature(&self) -> bool {
        let (_, ut, _, vt, _, _) = self.signature();
        ut == conj_turn(&ut) && vt == conj_turn(&vt)
    }

    /// Lexicographic size |p| = (|u|, |v|, s, t).
    fn size(&self) -> (Rational, Rational, u32, u32) {
        (
            self.u_mod.clone(),
            self.v_mod.clone().unwrap_or_else(BigRational::one),
            self.s,
            self.t.unwrap_or(0),
        )
    }
}

fn conj_turn(t: &Rational) -> Rational {
    if t.is_zero() {
        BigRational::zero()
    } else {
        BigRational::one() - t
    }
}

fn normalize_turn(t: &Rational) -> Rational {
    let fl = t.floor();
    t - fl
}

/// Conjugation-closed exponential polynomial.
#[derive(Debug, Clone)]
pub struct ExpPoly {
    pub arity: u8,
    pub terms: Vec<ExpPolyTerm>,
}

impl ExpPoly {
    /// Validates, normalizes turns into [0,1), merges duplicate signatures,
    /// drops zero terms, and checks conjugation closure so every evaluation
    /// is real.
    pub fn new(arity: u8, terms: Vec<ExpPolyTerm>) -> Result<Self, ExpPolyError> {
        assert!(arity == 1 || arity == 2);
        let mut cleaned: Vec<ExpPolyTerm> = vec![];
        for mut term in terms {
            if term.u_mod <= BigRational::zero() {
                return Err(ExpPolyError::BadTerm("u modulus must be positive".into()));
            }
            term.u_turn = normalize_turn(&term.u_turn);
            if arity == 1 {
                if term.v_mod.is_some() || term.v_turn.is_some() || term.t.is_some() {
                    return Err(ExpPolyError::BadTerm(
                        "one-variable term carries second-variable data".into(),
                    ));
                }
            } else {
                let vm = term
                    .v_mod
                    .clone()
                    .ok_or_else(|| ExpPolyError::BadTerm("missing v modulus".into()))?;
                if vm <= BigRational::zero() {
                    return Err(ExpPolyError::BadTerm("v modulus must be positive".into()));
                }
                term.v_turn = Some(normalize_turn(
                    &term.v_turn.clone().unwrap_or_else(BigRational::zero),
                ));
                if term.t.is_none() {
                    term.t = Some(0);
                }
            }
            cleaned.push(term);
        }
        // merge duplicate signatures
        let mut merged: Vec<ExpPolyTerm> = vec![];
        for term in cleaned {
            match merged
                .iter_mut()
                .find(|m| m.signature() == term.signature())
            {
                Some(m) => {
                    m.coeff_re += &term.coeff_re;
                    m.coeff_im += &term.coeff_im;
                }
                None => merged.push(term),
            }
        }
        merged.retain(|t| !t.coeff_re.is_zero() || !t.coeff_im.is_zero());
        // conjugation closure
        for term in &merged {
            if term.is_self_conjugate_signature() {
                if !term.coeff_im.is_zero() {
                    return Err(ExpPolyError::NotConjugationClosed(format!(
                        "self-conjugate term with turn {} has imaginary coefficient",
                        term.u_turn
                    )));
                }
            } else {
                let want = term.conj_signature();
                let partner = merged.iter().find(|m| m.signature() == want);
                match partner {
                    Some(p)
                        if p.coeff_re == term.coeff_re
                            && p.coeff_im == -term.coeff_im.clone() => {}
                    _ => {
                        return Err(ExpPolyError::NotConjugationClosed(format!(
                            "term with turn {} lacks its conjugate",
                            term.u_turn
                        )))
                    }
                }
            }
        }
        merged.sort_by(|a, b| a.signature().cmp(&b.signature()));
        Ok(ExpPoly {
            arity,
            terms: merged,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn orders(&self) -> u64 {
        let mut turns: Vec<Rational> = vec![];
        for t in &self.terms {
            turns.push(t.u_turn.clone());
            if let Some(vt) = &t.v_turn {
                turns.push(vt.clone());
            }
        }
        if turns.is_empty() {
            1
        } else {
            common_order(&turns)
        }
    }

    /// Exact value as a cyclotomic element; each term lands as one or two
    /// monomials, so this is linear in the term count.
    fn eval_cyclotomic(&self, n: u64, m: Option<u64>) -> CycElem {
        let base = self.orders();
        let need_i = self.terms.iter().any(|t| !t.coeff_im.is_zero());
        let order = if need_i { base.lcm(&4) } else { base };
        let mut acc = CycElem::zero(order);
        for term in &self.terms {
            let mut scalar = rat_pow(&term.u_mod, n as i64);
            scalar *= rat_pow(&rat_int(n as i64), term.s as i64);
            if let Some(mm) = m {
                scalar *= rat_pow(term.v_mod.as_ref().unwrap(), mm as i64);
                scalar *= rat_pow(&rat_int(mm as i64), term.t.unwrap() as i64);
            }
            let mut turn = &term.u_turn * rat_int(n as i64);
            if let Some(mm) = m {
                turn += term.v_turn.as_ref().unwrap() * rat_int(mm as i64);
            }
            let turn = normalize_turn(&turn);
            let j = (&turn * rat_int(order as i64))
                .to_integer()
                .to_u64()
                .expect("turn resolves in the common order");
            acc.add_monomial(j, &(&term.coeff_re * &scalar));
            if !term.coeff_im.is_zero() {
                // i = zeta^(order/4)
                acc.add_monomial(j + order / 4, &(&term.coeff_im * &scalar));
            }
        }
        acc
    }

    /// Exact evaluation. Every conjugation-closed polynomial takes real
    /// values; the result carries the exact rational value when the rotation
    /// data allows it, plus a certified enclosure whose width is at most
    /// 2^-prec relative to the coefficient mass of the value (so normalized
    /// ratios inherit the absolute precision).
    pub fn eval(&self, n: u64, m: Option<u64>, prec: u32) -> Result<EvalResult, ExpPolyError> {
        match (self.arity, m) {
            (1, None) | (2, Some(_)) => {}
            _ => {
                return Err(ExpPolyError::ArityMismatch {
                    expected: self.arity,
                })
            }
        }
        let acc = self.eval_cyclotomic(n, m);
        let exact = acc.as_rational();
        let enclosure = match &exact {
            Some(r) => RatInterval::point(r.clone()),
            None => acc.real_part_enclosure(prec + 8),
        };
        Ok(EvalResult { exact, enclosure })
    }

    /// Exact sign of the (real) value at a point.
    pub fn sign_at(&self, n: u64, m: Option<u64>) -> Result<i8, ExpPolyError> {
        match (self.arity, m) {
            (1, None) | (2, Some(_)) => {}
            _ => {
                return Err(ExpPolyError::ArityMismatch {
                    expected: self.arity,
                })
            }
        }
        Ok(self.eval_cyclotomic(n, m).real_sign())
    }
}

#[derive(Debug, Clone)]
pub struct EvalResult {
    pub exact: Option<Rational>,
    pub enclosure: RatInterval,
}

// ---------------------------------------------------------------------------
// dominant signature
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DominantSignature {
    pub beta: Rational,
    pub gamma: Option<Rational>,
    pub a: u32,
    pub b: Option<u32>,
    /// Indices into `terms` of the maximal-size terms S+.
    pub plus_terms: Vec<usize>,
}

/// Lexicographic maximum of (|u|, |v|, s, t) over the terms, with the
/// achieving sublist.
pub fn dominant_signature(h: &ExpPoly) -> Result<DominantSignature, ExpPolyError> {
    if h.is_zero() {
        return Err(ExpPolyError::ZeroSequence);
    }
    let max_size = h.terms.iter().map(|t| t.size()).max().unwrap();
    let plus: Vec<usize> = h
        .terms
        .iter()
        .enumerate()
        .filter(|(_, t)| t.size() == max_size)
        .map(|(i, _)| i)
        .collect();
    let (beta, gamma, a, b) = max_size;
    Ok(DominantSignature {
        beta,
        gamma: if h.arity == 2 { Some(gamma) } else { None },
        a,
        b: if h.arity == 2 { Some(b) } else { None },
        plus_terms: plus,
    })
}

// ---------------------------------------------------------------------------
// region sampling for the two-variable dominance bracket
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RegionBracket {
    pub c_lower: Rational,
    pub c_upper: Rational,
    pub bounded_ratio_constant: Rational,
    pub sample_count: usize,
    /// True when no sample satisfied (log n)^2 <= m <= n^eps0 and the
    /// pre-asymptotic window 1 <= m <= n^eps0 was used instead.
    pub pre_asymptotic_window: bool,
    /// Per non-dominant term, the sup over sampled m of
    /// |u|^n |v|^m n^s m^t / (beta^n gamma^m n^a m^b), listed along the
    /// increasing n grid; used for decay checks.
    pub remainder_envelopes: Vec<Vec<Rational>>,
}

/// Samples h over the region { (n,m) : (log n)^2 <= m <= n^eps0, n <= n_max }
/// (falling back to the window 1 <= m <= n^eps0 at desk scales where the
/// stated region is empty), checks positivity and the bounded-ratio
/// condition on the samples, and brackets h / (beta^n gamma^m n^a m^b).
pub fn region_bound_check(
    h: &ExpPoly,
    eps0: &Rational,
    n_max: u64,
) -> Result<RegionBracket, ExpPolyError> {
    assert!(h.arity == 2, "region check is for two-variable data");
    assert!(eps0 > &BigRational::zero() && eps0 < &BigRational::one());
    let sig = dominant_signature(h)?;
    let beta = sig.beta.clone();
    let gamma = sig.gamma.clone().unwrap();
    let a = sig.a;
    let b = sig.b.unwrap();

    // geometric n grid
    let mut ngrid = vec![];
    let mut n = 4u64;
    while n < n_max {
        ngrid.push(n);
        n = n.saturating_mul(2);
    }
    ngrid.push(n_max);
    ngrid.dedup();

    let mut samples: Vec<(u64, u64)> = vec![];
    let mut strict_region = vec![];
    for &n in &ngrid {
        let mcap = pow_cap(n, eps0).min(12);
        for m in 1..=mcap {
            samples.push((n, m));
            if in_strict_region(n, m, eps0) {
                strict_region.push((n, m));
            }
        }
    }
    let pre_asymptotic_window = strict_region.is_empty();
    let used: Vec<(u64, u64)> = if pre_asymptotic_window {
        samples
    } else {
        strict_region
    };

    let mut c_lower: Option<Rational> = None;
    let mut c_upper: Option<Rational> = None;
    let mut bounded_d = BigRational::zero();
    for &(n, m) in &used {
        if h.sign_at(n, Some(m))? <= 0 {
            return Err(ExpPolyError::PositivityViolated(n, m));
        }
        let val = h.eval(n, Some(m), 96)?;
        let denom = rat_pow(&beta, n as i64)
            * rat_pow(&gamma, m as i64)
            * rat_pow(&rat_int(n as i64), a as i64)
            * rat_pow(&rat_int(m as i64), b as i64);
        let lo = &val.enclosure.lo / &denom;
        let hi = &val.enclosure.hi / &denom;
        c_lower = Some(match c_lower {
            None => lo.clone(),
            Some(c) => {
                if lo < c {
                    lo.clone()
                } else {
                    c
                }
            }
        });
        c_upper = Some(match c_upper {
            None => hi.clone(),
            Some(c) => {
                if hi > c {
                    hi.clone()
                } else {
                    c
                }
            }
        });
        // bounded-ratio condition on neighbours
        let v0 = h.eval(n, Some(m), 64)?.enclosure;
        let v1 = h.eval(n + 1, Some(m), 64)?.enclosure;
        let v2 = h.eval(n, Some(m + 1), 64)?.enclosure;
        if v0.lo.is_positive() {
            let r1 = &v1.hi / &v0.lo;
            let r2 = &v2.hi / &v0.lo;
            let r = if r1 > r2 { r1 } else { r2 };
            if r > bounded_d {
                bounded_d = r;
            }
        }
    }
    // per-term remainder envelopes along the n grid (sup over sampled m)
    let mut envelopes = vec![];
    for (ti, term) in h.terms.iter().enumerate() {
        if sig.plus_terms.contains(&ti) {
            continue;
        }
        let mut env = vec![];
        for &n in &ngrid {
            let mut sup: Option<Rational> = None;
            for &(sn, sm) in &used {
                if sn != n {
                    continue;
                }
                let num = rat_pow(&term.u_mod, n as i64)
                    * rat_pow(term.v_mod.as_ref().unwrap(), sm as i64)
                    * rat_pow(&rat_int(n as i64), term.s as i64)
                    * rat_pow(&rat_int(sm as i64), term.t.unwrap() as i64);
                let denom = rat_pow(&beta, n as i64)
                    * rat_pow(&gamma, sm as i64)
                    * rat_pow(&rat_int(n as i64), a as i64)
                    * rat_pow(&rat_int(sm as i64), b as i64);
                let q = num / denom;
                sup = Some(match sup {
                    None => q.clone(),
                    Some(s) => {
                        if q > s {
                            q
                        } else {
                            s
                        }
                    }
                });
            }
            if let Some(s) = sup {
                env.push(s);
            }
        }
        envelopes.push(env);
    }
    Ok(RegionBracket {
        c_lower: c_lower.unwrap_or_else(BigRational::one),
        c_upper: c_upper.unwrap_or_else(BigRational::one),
        bounded_ratio_constant: bounded_d,
        sample_count: used.len(),
        pre_asymptotic_window,
        remainder_envelopes: envelopes,
    })
}

/// floor(n^eps0) via exact integer power comparison: the largest m with
/// m^q <= n^p for eps0 = p/q.
fn pow_cap(n: u64, eps0: &Rational) -> u64 {
    let p = eps0.numer().to_u32().expect("small exponent");
    let q = eps0.denom().to_u32().expect("small exponent");
    let np = num_bigint::BigInt::from(n).pow(p);
    let mut m = 1u64;
    loop {
        let cand = num_bigint::BigInt::from(m + 1).pow(q);
        if cand <= np {
            m += 1;
        } else {
            return m;
        }
    }
}

/// Conservative exact test for (log n)^2 <= m (natural log, certified
/// enclosure at fixed precision; only points certainly inside count).
fn in_strict_region(n: u64, m: u64, eps0: &Rational) -> bool {
    if m > pow_cap(n, eps0) {
        return false;
    }
    let ln = ln_interval(n, 48);
    let sq_hi = &ln.hi * &ln.hi;
    sq_hi <= rat_int(m as i64)
}

/// Certified enclosure of ln(n) for integer n >= 1.
pub fn ln_interval(n: u64, prec: u32) -> RatInterval {
    assert!(n >= 1);
    if n == 1 {
        return RatInterval::point(BigRational::zero());
    }
    // n = 2^e * r with r in [1, 2)
    let mut e = 0u64;
    let mut v = n;
    while v >= 2 {
        v >>= 1;
        e += 1;
    }
    let r = BigRational::new(n.into(), num_bigint::BigInt::one() << (e as u32));
    let ln2 = atanh_based_ln(&rat_int(2), prec + 8);
    let lnr = atanh_based_ln(&r, prec + 8);
    ln2.scale(&rat_int(e as i64)).add(&lnr)
}

/// ln(x) for rational x in [1, 2] via the atanh series with geometric tail
/// bound: ln x = 2 sum u^(2k+1)/(2k+1), u = (x-1)/(x+1).
fn atanh_based_ln(x: &Rational, prec: u32) -> RatInterval {
    let target = two_pow_neg(prec);
    let u = (x - BigRational::one()) / (x + BigRational::one());
    if u.is_zero() {
        return RatInterval::point(BigRational::zero());
    }
    let u2 = &u * &u;
    let mut term = u.clone();
    let mut sum = BigRational::zero();
    let mut k = 0i64;
    loop {
        sum += &term / rat_int(2 * k + 1);
        term *= &u2;
        k += 1;
        if &term / rat_int(2 * k + 1) < target {
            break;
        }
    }
    // tail <= term / ((2k+1)(1 - u^2))
    let tail = &term / (rat_int(2 * k + 1) * (BigRational::one() - &u2));
    let lo = (&sum) * rat_int(2);
    let hi = (&sum + &tail) * rat_int(2);
    RatInterval::new(lo, hi)
}

// ---------------------------------------------------------------------------
// torus closures, visit bounds, sign search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TorusClosure {
    /// Order of the finite cyclic closure group.
    pub order: u64,
    pub generators: Vec<Rational>,
    /// Arithmetic progression of exact return times: order, 2*order, ...
    pub return_times: Vec<u64>,
}

/// Closure of { n * turns mod 1 : n >= 0 }: a cyclic group of order the lcm
/// of the turn denominators; exact, no limits involved.
pub fn torus_closure(turns: &[Rational]) -> TorusClosure {
    let normalized: Vec<Rational> = turns.iter().map(normalize_turn).collect();
    let order = if normalized.is_empty() {
        1
    } else {
        common_order(&normalized)
    };
    TorusClosure {
        order,
        generators: normalized,
        return_times: (1..=4).map(|k| k * order).collect(),
    }
}

/// Exact minimal B such that from every group element some shift within
/// {0..B} lands in the target set (elements given as indices 0..order of
/// multiples of the generator vector).
pub fn visit_bound(turns: &[Rational], target: &[u64]) -> Result<u64, ExpPolyError> {
    let closure = torus_closure(turns);
    let order = closure.order;
    if target.is_empty() {
        return Err(ExpPolyError::EmptyTarget);
    }
    let target: Vec<u64> = target.iter().map(|t| t % order).collect();
    let mut worst = 0u64;
    for start in 0..order {
        let mut best: Option<u64> = None;
        for shift in 0..order {
            if target.contains(&((start + shift) % order)) {
                best = Some(shift);
                break;
            }
        }
        let b = best.expect("nonempty target is reachable within one period");
        worst = worst.max(b);
    }
    Ok(worst)
}

/// Purely rotational coefficient data: C(n) = sum c_p e^(2 pi i turn_p n).
#[derive(Debug, Clone)]
pub struct RotationTerm {
    pub coeff_re: Rational,
    pub coeff_im: Rational,
    pub turn: Rational,
}

fn rotation_poly(terms: &[RotationTerm]) -> Result<ExpPoly, ExpPolyError> {
    let mut ep_terms = vec![];
    for t in terms {
        let turn = normalize_turn(&t.turn);
        if turn.is_zero() {
            return Err(ExpPolyError::ZeroAngleTerm);
        }
        ep_terms.push(ExpPolyTerm {
            coeff_re: t.coeff_re.clone(),
            coeff_im: t.coeff_im.clone(),
            u_mod: BigRational::one(),
            u_turn: turn,
            v_mod: None,
            v_turn: None,
            s: 0,
            t: None,
        });
    }
    ExpPoly::new(1, ep_terms)
}

/// Finds the least m within one period with C(m) < 0, certified. All turns
/// must be nonzero and the data conjugation-closed (so values are real).
/// Failure to find one is reported as a counterexample candidate.
pub fn negative_value_search(terms: &[RotationTerm]) -> Result<(u64, i8), ExpPolyError> {
    if terms
        .iter()
        .all(|t| t.coeff_re.is_zero() && t.coeff_im.is_zero())
    {
        return Err(ExpPolyError::IdenticallyZero);
    }
    let h = rotation_poly(terms)?;
    if h.is_zero() {
        return Err(ExpPolyError::IdenticallyZero);
    }
    let order = h.orders();
    for m in 0..=order {
        let s = h.sign_at(m, None)?;
        if s < 0 {
            return Ok((m, s));
        }
    }
    Err(ExpPolyError::SignSearchExhausted)
}

/// Exact Cesaro identity: the sum of C(n) over one full period is zero when
/// every turn is nonzero (geometric sums of nontrivial roots of unity).
pub fn cesaro_period_sum_is_zero(terms: &[RotationTerm]) -> Result<bool, ExpPolyError> {
    let h = rotation_poly(terms)?;
    if h.is_zero() {
        return Ok(true);
    }
    let order = h.orders();
    let need_i = h.terms.iter().any(|t| !t.coeff_im.is_zero());
    let field_order = if need_i { order.lcm(&4) } else { order };
    let mut acc = CycElem::zero(field_order);
    for n in 0..order {
        let v = h.eval_cyclotomic(n, None);
        acc = acc.add(&v.stretch_to(field_order));
    }
    Ok(acc.is_zero())
}

trait StretchTo {
    fn stretch_to(&self, order: u64) -> CycElem;
}

impl StretchTo for CycElem {
    fn stretch_to(&self, order: u64) -> CycElem {
        if self.order == order {
            self.clone()
        } else {
            self.stretch(order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conespec_kernel::rational::rat;

    fn simple_poly(terms: Vec<ExpPolyTerm>) -> ExpPoly {
        ExpPoly::new(1, terms).unwrap()
    }

    #[test]
    fn two_pow_plus_minus_one_pow() {
        // 2^n + (-1)^n at n=3 -> 7
        let h = simple_poly(vec![
            ExpPolyTerm::one_var((1, 1), (0, 1), (2, 1), (0, 1), 0),
            ExpPolyTerm::one_var((1, 1), (0, 1), (1, 1), (1, 2), 0),
        ]);
        let r = h.eval(3, None, 64).unwrap();
        assert_eq!(r.exact, Some(rat_int(7)));
    }

    #[test]
    fn two_variable_product() {
        // 3^n 2^m at (2,1) -> 18
        let t = ExpPolyTerm {
            coeff_re: rat_int(1),
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: rat_int(0),
            v_mod: Some(rat_int(2)),
            v_turn: Some(rat_int(0)),
            s: 0,
            t: Some(0),
        };
        let h = ExpPoly::new(2, vec![t]).unwrap();
        let r = h.eval(2, Some(1), 64).unwrap();
        assert_eq!(r.exact, Some(rat_int(18)));
    }

    #[test]
    fn cyclotomic_evaluation() {
        // 2^n * 2cos(2 pi n/3) at n=1 -> -2
        let h = simple_poly(vec![
            ExpPolyTerm::one_var((1, 1), (0, 1), (2, 1), (1, 3), 0),
            ExpPolyTerm::one_var((1, 1), (0, 1), (2, 1), (2, 3), 0),
        ]);
        let r = h.eval(1, None, 64).unwrap();
        assert_eq!(r.exact, Some(rat_int(-2)));
        assert_eq!(h.sign_at(1, None).unwrap(), -1);
        // at n=3: 8 * 2cos(2 pi) = 16
        let r3 = h.eval(3, None, 64).unwrap();
        assert_eq!(r3.exact, Some(rat_int(16)));
    }

    #[test]
    fn conjugation_closure_enforced() {
        let bad = ExpPoly::new(
            1,
            vec![ExpPolyTerm::one_var((1, 1), (1, 1), (2, 1), (1, 3), 0)],
        );
        assert!(matches!(bad, Err(ExpPolyError::NotConjugationClosed(_))));
        let also_bad = ExpPoly::new(
            1,
            vec![ExpPolyTerm::one_var((0, 1), (1, 1), (2, 1), (0, 1), 0)],
        );
        assert!(matches!(
            also_bad,
            Err(ExpPolyError::NotConjugationClosed(_))
        ));
    }

    #[test]
    fn dominant_signature_lex_order() {
        // 3^n 2^m + 3^n n: (3,2,0,0) > (3,1,1,0)
        let t1 = ExpPolyTerm {
            coeff_re: rat_int(1),
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: rat_int(0),
            v_mod: Some(rat_int(2)),
            v_turn: Some(rat_int(0)),
            s: 0,
            t: Some(0),
        };
        let t2 = ExpPolyTerm {
            coeff_re: rat_int(1),
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: rat_int(0),
            v_mod: Some(rat_int(1)),
            v_turn: Some(rat_int(0)),
            s: 1,
            t: Some(0),
        };
        let h = ExpPoly::new(2, vec![t1, t2]).unwrap();
        let sig = dominant_signature(&h).unwrap();
        assert_eq!(sig.beta, rat_int(3));
        assert_eq!(sig.gamma, Some(rat_int(2)));
        assert_eq!(sig.a, 0);
        assert_eq!(sig.b, Some(0));
        assert_eq!(sig.plus_terms.len(), 1);
    }

    #[test]
    fn dominant_signature_one_var() {
        // 5^n n^2 + 5^n n: a=2 wins
        let h = simple_poly(vec![
            ExpPolyTerm::one_var((1, 1), (0, 1), (5, 1), (0, 1), 2),
            ExpPolyTerm::one_var((1, 1), (0, 1), (5, 1), (0, 1), 1),
        ]);
        let sig = dominant_signature(&h).unwrap();
        assert_eq!(sig.beta, rat_int(5));
        assert_eq!(sig.a, 2);
        // 2^n + (-1)^n: beta=2, a=0
        let h2 = simple_poly(vec![
            ExpPolyTerm::one_var((1, 1), (0, 1), (2, 1), (0, 1), 0),
            ExpPolyTerm::one_var((1, 1), (0, 1), (1, 1), (1, 2), 0),
        ]);
        let sig2 = dominant_signature(&h2).unwrap();
        assert_eq!(sig2.beta, rat_int(2));
        assert_eq!(sig2.a, 0);
        assert_eq!(sig2.plus_terms.len(), 1);
    }

    #[test]
    fn torus_closure_orders() {
        assert_eq!(torus_closure(&[rat(1, 3)]).order, 3);
        assert_eq!(torus_closure(&[rat(1, 2), rat(1, 3)]).order, 6);
        assert_eq!(torus_closure(&[rat(2, 5), rat(1, 5)]).order, 5);
        let c = torus_closure(&[rat(1, 3)]);
        assert_eq!(c.return_times, vec![3, 6, 9, 12]);
    }

    #[test]
    fn visit_bounds() {
        assert_eq!(visit_bound(&[rat(1, 3)], &[0]).unwrap(), 2);
        assert_eq!(visit_bound(&[rat(0, 1)], &[0]).unwrap(), 0);
        // order-6 group, target {identity, generator}
        assert_eq!(visit_bound(&[rat(1, 6)], &[0, 1]).unwrap(), 4);
        assert!(matches!(
            visit_bound(&[rat(1, 3)], &[]),
            Err(ExpPolyError::EmptyTarget)
        ));
    }

    #[test]
    fn negative_search_on_cosines() {
        // C(n) = 2cos(2 pi n/3): negative at n=1
        let terms = vec![
            RotationTerm {
                coeff_re: rat_int(1),
                coeff_im: rat_int(0),
                turn: rat(1, 3),
            },
            RotationTerm {
                coeff_re: rat_int(1),
                coeff_im: rat_int(0),
                turn: rat(2, 3),
            },
        ];
        let (m, s) = negative_value_search(&terms).unwrap();
        assert_eq!(m, 1);
        assert_eq!(s, -1);
        // C(n) = cos(pi n): negative at n=1
        let terms2 = vec![RotationTerm {
            coeff_re: rat_int(1),
            coeff_im: rat_int(0),
            turn: rat(1, 2),
        }];
        let (m2, _) = negative_value_search(&terms2).unwrap();
        assert_eq!(m2, 1);
        // zero angle rejected
        let terms3 = vec![RotationTerm {
            coeff_re: rat_int(1),
            coeff_im: rat_int(0),
            turn: rat(0, 1),
        }];
        assert!(matches!(
            negative_value_search(&terms3),
            Err(ExpPolyError::ZeroAngleTerm)
        ));
    }

    #[test]
    fn cesaro_sums_vanish() {
        let terms = vec![
            RotationTerm {
                coeff_re: rat(3, 2),
                coeff_im: rat(1, 3),
                turn: rat(1, 5),
            },
            RotationTerm {
                coeff_re: rat(3, 2),
                coeff_im: rat(-1, 3),
                turn: rat(4, 5),
            },
        ];
        assert!(cesaro_period_sum_is_zero(&terms).unwrap());
    }

    #[test]
    fn region_check_single_term_is_exactly_one() {
        // h = 3^n 2^m: ratio identically 1
        let t = ExpPolyTerm {
            coeff_re: rat_int(1),
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: rat_int(0),
            v_mod: Some(rat_int(2)),
            v_turn: Some(rat_int(0)),
            s: 0,
            t: Some(0),
        };
        let h = ExpPoly::new(2, vec![t]).unwrap();
        let rep = region_bound_check(&h, &rat(1, 2), 4096).unwrap();
        assert_eq!(rep.c_lower, rat_int(1));
        assert_eq!(rep.c_upper, rat_int(1));
    }

    #[test]
    fn region_check_positivity_violation() {
        // 3^n 2^m cos(2 pi n/3) goes negative on the sample grid
        let t1 = ExpPolyTerm {
            coeff_re: rat(1, 2),
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: rat(1, 3),
            v_mod: Some(rat_int(2)),
            v_turn: Some(rat_int(0)),
            s: 0,
            t: Some(0),
        };
        let t2 = ExpPolyTerm {
            coeff_re: rat(1, 2),
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: rat(2, 3),
            v_mod: Some(rat_int(2)),
            v_turn: Some(rat_int(0)),
            s: 0,
            t: Some(0),
        };
        let h = ExpPoly::new(2, vec![t1, t2]).unwrap();
        assert!(matches!(
            region_bound_check(&h, &rat(1, 2), 64),
            Err(ExpPolyError::PositivityViolated(_, _))
        ));
    }

    #[test]
    fn region_check_oscillating_bracket() {
        // 3^n 2^m (2 + cos(2 pi (n/3 + m/5))): ratio within [1, 3]
        let mk = |re: Rational, tu: Rational, tv: Rational| ExpPolyTerm {
            coeff_re: re,
            coeff_im: rat_int(0),
            u_mod: rat_int(3),
            u_turn: tu,
            v_mod: Some(rat_int(2)),
            v_turn: Some(tv),
            s: 0,
            t: Some(0),
        };
        let h = ExpPoly::new(
            2,
            vec![
                mk(rat_int(2), rat_int(0), rat_int(0)),
                mk(rat(1, 2), rat(1, 3), rat(1, 5)),
                mk(rat(1, 2), rat(2, 3), rat(4, 5)),
            ],
        )
        .unwrap();
        let rep = region_bound_check(&h, &rat(1, 2), 1024).unwrap();
        assert!(rep.c_lower >= rat(9, 10));
        assert!(rep.c_upper <= rat(31, 10));
        assert!(rep.bounded_ratio_constant > BigRational::zero());
    }

    #[test]
    fn ln_enclosures() {
        let l = ln_interval(2, 48);
        assert!(l.lo < rat(6932, 10000) && l.hi > rat(6931, 10000));
        let l10 = ln_interval(10, 48);
        assert!(l10.lo < rat(23026, 10000) && l10.hi > rat(23025, 10000));
    }

    #[test]
    fn realness_of_random_closed_data() {
        let h = simple_poly(vec![
            ExpPolyTerm::one_var((2, 3), (1, 7), (5, 2), (1, 6), 1),
            ExpPolyTerm::one_var((2, 3), (-1, 7), (5, 2), (5, 6), 1),
        ]);
        for n in 0..8 {
            let e = h.eval(n, None, 80).unwrap();
            assert!(e.enclosure.width() <= two_pow_neg(80) || e.exact.is_some());
        }
    }
}
