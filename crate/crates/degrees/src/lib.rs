//! Dynamical-degree profiles of graded pullback systems, the spectra of the
//! big and ample cone models, and the hyperbolicity/amplified classification.
//!
//! The geometric data is always user input: per-codimension pullback
//! matrices, optional polyhedral models of the ample/big cones in the
//! divisor space, and a tree of periodic subsystems. This crate computes
//! what the theory derives from that data, exactly.

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use conespec_cones::{cone_spectrum, validate_good_cone, ConeError, PolyhedralCone};
use conespec_kernel::algebraic::RealAlgebraic;
use conespec_kernel::matrix::RationalMatrix;
use conespec_kernel::rational::two_pow_neg;
use conespec_kernel::spectrum::certified_spectrum;
use conespec_kernel::KernelError;

#[derive(Debug, Error)]
pub enum DegreeError {
    #[error("invalid pullback system: {0}")]
    BadSystem(String),
    #[error("log-concavity violated at index {0}: the data cannot come from an endomorphism")]
    LogConcavityViolated(usize),
    #[error("subsystem tree is invalid: {0}")]
    BadTree(String),
    #[error("no big-cone model supplied")]
    MissingBigModel,
    #[error("big-cone cross-check mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Pullback action on the graded numerical groups of a d-dimensional system:
/// one square rational matrix per codimension 0..=d, with the outermost
/// gradings one-dimensional.
#[derive(Debug, Clone)]
pub struct GradedPullbackSystem {
    pub dimension: usize,
    pub pullbacks: Vec<RationalMatrix>,
    pub ample_model: Option<PolyhedralCone>,
    pub big_model: Option<PolyhedralCone>,
    pub label: String,
}

impl GradedPullbackSystem {
    pub fn validate(&self) -> Result<(), DegreeError> {
        let d = self.dimension;
        if self.pullbacks.len() != d + 1 {
            return Err(DegreeError::BadSystem(format!(
                "expected {} pullback matrices, got {}",
                d + 1,
                self.pullbacks.len()
            )));
        }
        if self.pullbacks[0].n != 1 || !self.pullbacks[0].at(0, 0).is_one() {
            return Err(DegreeError::BadSystem(
                "the degree-zero pullback must be the 1x1 identity".into(),
            ));
        }
        if self.pullbacks[d].n != 1 {
            return Err(DegreeError::BadSystem(
                "the top pullback must be 1x1 (the topological degree)".into(),
            ));
        }
        if *self.pullbacks[d].at(0, 0) < BigRational::one() {
            return Err(DegreeError::BadSystem(
                "the topological degree must be >= 1".into(),
            ));
        }
        if d >= 1 {
            for model in [self.ample_model.as_ref(), self.big_model.as_ref()]
                .into_iter()
                .flatten()
            {
                if model.ambient_dim != self.pullbacks[1].n {
                    return Err(DegreeError::BadSystem(format!(
                        "cone model dimension {} does not match the divisor pullback {}",
                        model.ambient_dim, self.pullbacks[1].n
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact degree profile: lambdas are certified spectral radii, mus their
/// successive ratios, with the terminal mu pinned to zero.
#[derive(Debug, Clone)]
pub struct DegreeProfile {
    pub lambdas: Vec<RealAlgebraic>,
    pub mus: Vec<RealAlgebraic>,
}

impl DegreeProfile {
    /// mu_i for i in 1..=d (excluding the terminal zero).
    pub fn mus_proper(&self) -> &[RealAlgebraic] {
        &self.mus[..self.mus.len() - 1]
    }
}

/// Computes the profile: lambda_i as the spectral radius of the i-th
/// pullback, mu_i = lambda_i / lambda_(i-1); asserts log-concavity of the
/// lambdas and the resulting monotonicity of the mus.
pub fn dynamical_degrees(sys: &GradedPullbackSystem) -> Result<DegreeProfile, DegreeError> {
    sys.validate()?;
    let width = two_pow_neg(64);
    let lambdas: Vec<RealAlgebraic> = sys
        .pullbacks
        .iter()
        .map(|p| certified_spectrum(p, &width).spectral_radius())
        .collect();
    // log-concavity: lambda_i^2 >= lambda_(i-1) * lambda_(i+1)
    for i in 1..lambdas.len() - 1 {
        let lhs = lambdas[i].mul(&lambdas[i]);
        let rhs = lambdas[i - 1].mul(&lambdas[i + 1]);
        if lhs < rhs {
            return Err(DegreeError::LogConcavityViolated(i));
        }
    }
    let mut mus = Vec::with_capacity(lambdas.len());
    for i in 1..lambdas.len() {
        mus.push(lambdas[i].div(&lambdas[i - 1])?);
    }
    for w in mus.windows(2) {
        if w[0] < w[1] {
            return Err(DegreeError::BadSystem(
                "Lyapunov exponents must be non-increasing".into(),
            ));
        }
    }
    mus.push(RealAlgebraic::zero());
    Ok(DegreeProfile { lambdas, mus })
}

/// Deduplicated sorted set of exact algebraic numbers.
pub fn dedup_values(mut vals: Vec<RealAlgebraic>) -> Vec<RealAlgebraic> {
    vals.sort();
    vals.dedup_by(|a, b| a.equals(b));
    vals
}

pub fn set_contains(set: &[RealAlgebraic], v: &RealAlgebraic) -> bool {
    set.iter().any(|w| w.equals(v))
}

pub fn set_subset(a: &[RealAlgebraic], b: &[RealAlgebraic]) -> bool {
    a.iter().all(|v| set_contains(b, v))
}

pub fn set_equal(a: &[RealAlgebraic], b: &[RealAlgebraic]) -> bool {
    set_subset(a, b) && set_subset(b, a)
}

/// The spectrum of the big-cone action: { mu_1, ..., mu_d } as a set.
pub fn big_spectrum(sys: &GradedPullbackSystem) -> Result<Vec<RealAlgebraic>, DegreeError> {
    let profile = dynamical_degrees(sys)?;
    Ok(dedup_values(profile.mus_proper().to_vec()))
}

/// A periodic subsystem: the pullback data of the return map f^period
/// restricted to the subvariety, with the subvariety hierarchy below it.
#[derive(Debug, Clone)]
pub struct SubsystemNode {
    pub name: String,
    pub period: u32,
    pub system: GradedPullbackSystem,
    pub children: Vec<SubsystemNode>,
}

impl SubsystemNode {
    pub fn validate_as_root(&self) -> Result<(), DegreeError> {
        if self.period != 1 {
            return Err(DegreeError::BadTree("the root must have period 1".into()));
        }
        self.validate_rec(None)
    }

    fn validate_rec(&self, parent_dim: Option<usize>) -> Result<(), DegreeError> {
        if self.period == 0 {
            return Err(DegreeError::BadTree(format!(
                "node {} has period 0",
                self.name
            )));
        }
        self.system.validate()?;
        if let Some(pd) = parent_dim {
            if self.system.dimension >= pd {
                return Err(DegreeError::BadTree(format!(
                    "node {} must have dimension strictly below its parent",
                    self.name
                )));
            }
        }
        for c in &self.children {
            c.validate_rec(Some(self.system.dimension))?;
        }
        Ok(())
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a SubsystemNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }

    pub fn nodes(&self) -> Vec<&SubsystemNode> {
        let mut out = vec![];
        self.walk(&mut out);
        out
    }
}

#[derive(Debug, Clone)]
pub struct AmpleSpectrumReport {
    pub values: Vec<RealAlgebraic>,
    /// Set when only the root was supplied: the result is then a lower bound
    /// for the true ample spectrum, not the full union.
    pub root_only: bool,
    pub per_node: Vec<(String, Vec<RealAlgebraic>)>,
}

/// Union over all supplied periodic subsystems of the period-normalized
/// Lyapunov exponents mu_i(V, f) = mu_i(f^r|_V)^(1/r). Zero-dimensional
/// nodes contribute nothing.
pub fn ample_spectrum(tree: &SubsystemNode) -> Result<AmpleSpectrumReport, DegreeError> {
    tree.validate_as_root()?;
    let mut values = vec![];
    let mut per_node = vec![];
    for node in tree.nodes() {
        let mut contributed = vec![];
        if node.system.dimension >= 1 {
            let profile = dynamical_degrees(&node.system)?;
            for mu in profile.mus_proper() {
                let normalized = mu.nth_root(node.period)?;
                contributed.push(normalized.clone());
                values.push(normalized);
            }
        }
        per_node.push((node.name.clone(), dedup_values(contributed)));
    }
    Ok(AmpleSpectrumReport {
        values: dedup_values(values),
        root_only: tree.children.is_empty(),
        per_node,
    })
}

/// Classification of the system per the mu profiles. Each false verdict
/// carries the witnessing index or value.
#[derive(Debug, Clone)]
pub struct Classification {
    pub cohomologically_hyperbolic: bool,
    pub hyperbolic_witness: Option<usize>,
    pub quasi_amplified: bool,
    pub amplified: Option<bool>,
    pub int_amplified: bool,
    pub profile: DegreeProfile,
}

pub fn classify(
    sys: &GradedPullbackSystem,
    tree: Option<&SubsystemNode>,
) -> Result<Classification, DegreeError> {
    if sys.dimension == 0 {
        return Err(DegreeError::BadSystem(
            "classification needs dimension >= 1".into(),
        ));
    }
    let profile = dynamical_degrees(sys)?;
    let one = RealAlgebraic::one();
    let mut hyperbolic = true;
    let mut witness = None;
    for (i, mu) in profile.mus_proper().iter().enumerate() {
        if mu.equals(&one) {
            hyperbolic = false;
            witness = Some(i + 1);
            break;
        }
    }
    let big = dedup_values(profile.mus_proper().to_vec());
    let quasi_amplified = !set_contains(&big, &one);
    let amplified = match tree {
        Some(t) => {
            let amp = ample_spectrum(t)?;
            Some(!set_contains(&amp.values, &one))
        }
        None => None,
    };
    let mu_d = &profile.mus_proper()[profile.mus_proper().len() - 1];
    let int_amplified = *mu_d > one;
    Ok(Classification {
        cohomologically_hyperbolic: hyperbolic,
        hyperbolic_witness: witness,
        quasi_amplified,
        amplified,
        int_amplified,
        profile,
    })
}

#[derive(Debug, Clone)]
pub struct FactorReport {
    pub big_ok: bool,
    pub ample_ok: bool,
    pub violations: Vec<String>,
}

/// The spectral consequence of a declared factor (semi-conjugate quotient):
/// the target's spectra must be contained in the source's. A violation is
/// evidence that the declaration is wrong.
pub fn factor_consistency(
    source: &SubsystemNode,
    target: &SubsystemNode,
) -> Result<FactorReport, DegreeError> {
    let sa = ample_spectrum(source)?;
    let ta = ample_spectrum(target)?;
    let sb = big_spectrum(&source.system)?;
    let tb = big_spectrum(&target.system)?;
    let mut violations = vec![];
    let ample_ok = set_subset(&ta.values, &sa.values);
    if !ample_ok {
        for v in &ta.values {
            if !set_contains(&sa.values, v) {
                violations.push(format!("ample value {} not inherited from source", v));
            }
        }
    }
    let big_ok = set_subset(&tb, &sb);
    if !big_ok {
        for v in &tb {
            if !set_contains(&sb, v) {
                violations.push(format!("big value {} not inherited from source", v));
            }
        }
    }
    Ok(FactorReport {
        big_ok,
        ample_ok,
        violations,
    })
}

#[derive(Debug, Clone)]
pub struct BigCrossCheck {
    pub cone_side: Vec<RealAlgebraic>,
    pub profile_side: Vec<RealAlgebraic>,
    pub equal: bool,
}

/// The strongest internal consistency test: the cone spectrum of the divisor
/// pullback on the supplied big-cone model must equal { mu_i } from the
/// graded profile.
pub fn cross_check_big(sys: &GradedPullbackSystem) -> Result<BigCrossCheck, DegreeError> {
    let model = sys.big_model.as_ref().ok_or(DegreeError::MissingBigModel)?;
    let m1 = &sys.pullbacks[1];
    let cert = validate_good_cone(m1, model)?;
    if !cert.is_good() {
        return Err(DegreeError::Cone(ConeError::BadCone(
            "big model is not a good invariant cone for the divisor pullback".into(),
        )));
    }
    let cone_side = cone_spectrum(m1, model, false)?.member_values();
    let profile_side = big_spectrum(sys)?;
    let equal = set_equal(&cone_side, &profile_side);
    Ok(BigCrossCheck {
        cone_side,
        profile_side,
        equal,
    })
}

/// Builds the split-product system on (P^1)^k with the given exponents: the
/// graded pieces are indexed by subsets of coordinates and the pullbacks are
/// diagonal with subset-product entries. Used by tests, generators and the
/// gallery.
pub fn split_monomial_system(exponents: &[i64]) -> GradedPullbackSystem {
    use conespec_kernel::rational::rat_int;
    let k = exponents.len();
    let mut pullbacks = vec![];
    for i in 0..=k {
        let subsets = subsets_of_size(k, i);
        let entries: Vec<BigRational> = subsets
            .iter()
            .map(|s| {
                let mut prod = 1i64;
                for &j in s {
                    prod *= exponents[j];
                }
                rat_int(prod)
            })
            .collect();
        pullbacks.push(RationalMatrix::diagonal(&entries));
    }
    let models = if k >= 1 {
        Some(PolyhedralCone::orthant(k))
    } else {
        None
    };
    GradedPullbackSystem {
        dimension: k,
        pullbacks,
        ample_model: models.clone(),
        big_model: models,
        label: format!("split-monomial{:?}", exponents),
    }
}

/// All size-i subsets of 0..k in lexicographic order.
pub fn subsets_of_size(k: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..k {
            if k - j < left {
                break;
            }
            cur.push(j);
            rec(j + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    let mut cur = vec![];
    rec(0, k, i, &mut cur, &mut out);
    out
}

/// The full periodic tree of a split monomial system: one representative
/// node per proper nonempty coordinate subset, with a fixed point as a
/// dimension-zero leaf.
pub fn split_monomial_tree(exponents: &[i64]) -> SubsystemNode {
    let k = exponents.len();
    let mut children = vec![];
    for size in (1..k).rev() {
        for s in subsets_of_size(k, size) {
            let sub: Vec<i64> = s.iter().map(|&j| exponents[j]).collect();
            children.push(SubsystemNode {
                name: format!("coords{:?}", s),
                period: 1,
                system: split_monomial_system(&sub),
                children: vec![],
            });
        }
    }
    if k >= 1 {
        children.push(SubsystemNode {
            name: "fixed-point".into(),
            period: 1,
            system: split_monomial_system(&[]),
            children: vec![],
        });
    }
    SubsystemNode {
        name: "ambient".into(),
        period: 1,
        system: split_monomial_system(exponents),
        children,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conespec_kernel::rational::rat_int;

    fn ra(n: i64) -> RealAlgebraic {
        RealAlgebraic::from_int(n)
    }

    #[test]
    fn plane_degree_two_profile() {
        // pullbacks (1), (2), (4)
        let sys = GradedPullbackSystem {
            dimension: 2,
            pullbacks: vec![
                RationalMatrix::diagonal(&[rat_int(1)]),
                RationalMatrix::diagonal(&[rat_int(2)]),
                RationalMatrix::diagonal(&[rat_int(4)]),
            ],
            ample_model: None,
            big_model: None,
            label: "plane-squared".into(),
        };
        let p = dynamical_degrees(&sys).unwrap();
        assert!(p.lambdas[0].equals(&ra(1)));
        assert!(p.lambdas[1].equals(&ra(2)));
        assert!(p.lambdas[2].equals(&ra(4)));
        assert!(p.mus[0].equals(&ra(2)));
        assert!(p.mus[1].equals(&ra(2)));
        assert!(p.mus[2].equals(&ra(0)));
    }

    #[test]
    fn product_of_lines_profile() {
        let sys = split_monomial_system(&[2, 3]);
        let p = dynamical_degrees(&sys).unwrap();
        assert!(p.lambdas[1].equals(&ra(3)));
        assert!(p.lambdas[2].equals(&ra(6)));
        assert!(p.mus[0].equals(&ra(3)));
        assert!(p.mus[1].equals(&ra(2)));
        let big = big_spectrum(&sys).unwrap();
        assert_eq!(big.len(), 2);
        assert!(set_contains(&big, &ra(2)));
        assert!(set_contains(&big, &ra(3)));
    }

    #[test]
    fn identity_system_profile() {
        let sys = split_monomial_system(&[1, 1, 1]);
        let p = dynamical_degrees(&sys).unwrap();
        for l in &p.lambdas {
            assert!(l.equals(&ra(1)));
        }
        let big = big_spectrum(&sys).unwrap();
        assert_eq!(big.len(), 1);
        assert!(big[0].equals(&ra(1)));
    }

    #[test]
    fn log_concavity_violation_detected() {
        let sys = GradedPullbackSystem {
            dimension: 2,
            pullbacks: vec![
                RationalMatrix::diagonal(&[rat_int(1)]),
                RationalMatrix::diagonal(&[rat_int(2)]),
                RationalMatrix::diagonal(&[rat_int(9)]),
            ],
            ample_model: None,
            big_model: None,
            label: "bad".into(),
        };
        assert!(matches!(
            dynamical_degrees(&sys),
            Err(DegreeError::LogConcavityViolated(1))
        ));
    }

    #[test]
    fn ample_spectrum_of_full_tree() {
        let tree = split_monomial_tree(&[2, 3]);
        let rep = ample_spectrum(&tree).unwrap();
        assert!(!rep.root_only);
        assert_eq!(rep.values.len(), 2);
        assert!(set_contains(&rep.values, &ra(2)));
        assert!(set_contains(&rep.values, &ra(3)));
    }

    #[test]
    fn ample_spectrum_point_tree_is_empty() {
        let tree = SubsystemNode {
            name: "pt".into(),
            period: 1,
            system: split_monomial_system(&[]),
            children: vec![],
        };
        let rep = ample_spectrum(&tree).unwrap();
        assert!(rep.values.is_empty());
        assert!(rep.root_only);
    }

    #[test]
    fn period_two_contribution_takes_root() {
        // node with mu_1(f^2|_V) = 9, period 2 contributes 3
        let node = SubsystemNode {
            name: "curve".into(),
            period: 2,
            system: split_monomial_system(&[9]),
            children: vec![],
        };
        let tree = SubsystemNode {
            name: "ambient".into(),
            period: 1,
            system: split_monomial_system(&[81, 3]),
            children: vec![node],
        };
        let rep = ample_spectrum(&tree).unwrap();
        assert!(set_contains(&rep.values, &ra(3)));
        assert!(set_contains(&rep.values, &ra(81)));
    }

    #[test]
    fn classification_gallery() {
        // (x^2, y^3): everything true
        let sys = split_monomial_system(&[2, 3]);
        let tree = split_monomial_tree(&[2, 3]);
        let c = classify(&sys, Some(&tree)).unwrap();
        assert!(c.cohomologically_hyperbolic);
        assert!(c.quasi_amplified);
        assert_eq!(c.amplified, Some(true));
        assert!(c.int_amplified);

        // (x, y^2): mu = (2, 1): not hyperbolic, not quasi-amplified
        let sys2 = split_monomial_system(&[1, 2]);
        let c2 = classify(&sys2, None).unwrap();
        assert!(!c2.cohomologically_hyperbolic);
        assert!(!c2.quasi_amplified);
        assert!(!c2.int_amplified);

        // identity: all false
        let sys3 = split_monomial_system(&[1, 1]);
        let tree3 = split_monomial_tree(&[1, 1]);
        let c3 = classify(&sys3, Some(&tree3)).unwrap();
        assert!(!c3.cohomologically_hyperbolic);
        assert!(!c3.quasi_amplified);
        assert_eq!(c3.amplified, Some(false));
        assert!(!c3.int_amplified);
    }

    #[test]
    fn factor_projection_consistent_alien_rejected() {
        let source = split_monomial_tree(&[2, 3]);
        let target = split_monomial_tree(&[2]);
        let rep = factor_consistency(&source, &target).unwrap();
        assert!(rep.big_ok && rep.ample_ok);

        let alien = split_monomial_tree(&[5]);
        let rep2 = factor_consistency(&source, &alien).unwrap();
        assert!(!rep2.big_ok || !rep2.ample_ok);
        assert!(!rep2.violations.is_empty());
    }

    #[test]
    fn cross_check_big_on_split_systems() {
        for exps in [vec![2i64, 3], vec![2, 2], vec![5], vec![2, 3, 4]] {
            let sys = split_monomial_system(&exps);
            let rep = cross_check_big(&sys).unwrap();
            assert!(rep.equal, "mismatch for {:?}", exps);
        }
    }

    #[test]
    fn big_subset_of_ample_when_tree_rooted_at_system() {
        let tree = split_monomial_tree(&[2, 5]);
        let big = big_spectrum(&tree.system).unwrap();
        let amp = ample_spectrum(&tree).unwrap();
        assert!(set_subset(&big, &amp.values));
    }
}
