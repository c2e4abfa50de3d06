//! Finite-model calculus of generated cycles over a stratified poset.
//!
//! A model is a finite poset of strata points with a rational "numerical
//! group" attached to each point and functorial pushforward maps along the
//! order. A generated cycle assigns to every point its class contribution;
//! restriction to a closed set sums contributions through the pushout of the
//! component spaces, constructible restriction is componentwise (and proven
//! equal to the subtractive recursion), positive cycles decompose into atoms
//! certified against per-point cones, and dual covector families induce
//! nonnegative additive set functions on the constructible algebra.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use conespec_cones::PolyhedralCone;
use conespec_kernel::matrix::rref_field;
use conespec_kernel::rational::{rat_sign, Rational};

#[derive(Debug, Error)]
pub enum CycleError {
    #[error("unknown point id {0:?}")]
    UnknownPoint(String),
    #[error("model is invalid: {0}")]
    InvalidModel(String),
    #[error("closed set is empty")]
    EmptySet,
    #[error("component at {point} violates the positive cone (facet {facet})")]
    NotPositive { point: String, facet: usize },
    #[error("covector family is not compatible with the pushforwards: {0}")]
    NotCompatible(String),
    #[error("covector at {0} is not in the dual cone")]
    NotDual(String),
    #[error("support of the cycle meets the divisor set")]
    SupportMeetsD,
    #[error("missing cone or pairing data: {0}")]
    MissingData(String),
}

/// Rectangular rational matrix as rows (target dim x source dim).
pub type LinearMap = Vec<Vec<Rational>>;

pub fn apply_map(map: &LinearMap, v: &[Rational]) -> Vec<Rational> {
    map.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), v.len());
            row.iter().zip(v).map(|(a, b)| a * b).sum()
        })
        .collect()
}

fn compose_maps(outer: &LinearMap, inner: &LinearMap) -> LinearMap {
    // outer: mid -> top, inner: low -> mid
    outer
        .iter()
        .map(|orow| {
            (0..inner.first().map(|r| r.len()).unwrap_or(0))
                .map(|j| {
                    orow.iter()
                        .enumerate()
                        .map(|(k, c)| c * &inner[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn identity_map(n: usize) -> LinearMap {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::from_integer(1.into())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct StratumPoint {
    pub id: String,
    pub dim: u32,
}

/// User-declared stratified model for a fixed cycle dimension.
#[derive(Debug, Clone)]
pub struct StratifiedModel {
    pub cycle_dim: u32,
    pub points: Vec<StratumPoint>,
    /// le[a][b] holds when a <= b, i.e. the stratum a lies in the closure
    /// of b.
    le: Vec<Vec<bool>>,
    pub space_dims: Vec<usize>,
    /// Pushforward per comparable pair (lower, upper), lower != upper.
    maps: BTreeMap<(usize, usize), LinearMap>,
    pub positive_cones: Vec<Option<PolyhedralCone>>,
    pub divisor_pairings: Vec<Option<Vec<Rational>>>,
}

#[derive(Debug, Clone, Default)]
pub struct ModelReport {
    pub violations: Vec<String>,
}

impl ModelReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl StratifiedModel {
    /// Builds a model from declared closure pairs (lower_id, upper_id) and
    /// pushforwards keyed the same way. Missing composite maps are completed
    /// along the order; conflicts surface in `validate`.
    pub fn new(
        cycle_dim: u32,
        points: Vec<StratumPoint>,
        closure_pairs: &[(String, String)],
        space_dims: Vec<usize>,
        given_maps: BTreeMap<(String, String), LinearMap>,
        positive_cones: Vec<Option<PolyhedralCone>>,
        divisor_pairings: Vec<Option<Vec<Rational>>>,
    ) -> Result<Self, CycleError> {
        let n = points.len();
        let index: BTreeMap<&str, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.as_str(), i))
            .collect();
        let look = |id: &str| -> Result<usize, CycleError> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| CycleError::UnknownPoint(id.to_string()))
        };
        let mut le = vec![vec![false; n]; n];
        for i in 0..n {
            le[i][i] = true;
        }
        for (lo, hi) in closure_pairs {
            let a = look(lo)?;
            let b = look(hi)?;
            le[a][b] = true;
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut maps = BTreeMap::new();
        for ((lo, hi), m) in given_maps {
            let a = look(&lo)?;
            let b = look(&hi)?;
            maps.insert((a, b), m);
        }
        let mut model = StratifiedModel {
            cycle_dim,
            points,
            le,
            space_dims,
            maps,
            positive_cones,
            divisor_pairings,
        };
        model.complete_maps();
        Ok(model)
    }

    /// Fills in missing comparable-pair maps by composing given ones.
    fn complete_maps(&mut self) {
        let n = self.points.len();
        // zero maps are forced whenever either space is zero
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le[a][b] && !self.maps.contains_key(&(a, b)) {
                    if self.space_dims[a] == 0 || self.space_dims[b] == 0 {
                        self.maps
                            .insert((a, b), vec![vec![BigRational::zero(); self.space_dims[a]]; self.space_dims[b]]);
                    }
                }
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                for b in 0..n {
                    if a == b || !self.le[a][b] || self.maps.contains_key(&(a, b)) {
                        continue;
                    }
                    // find a middle point
                    for mid in 0..n {
                        if mid == a || mid == b || !self.le[a][mid] || !self.le[mid][b] {
                            continue;
                        }
                        if let (Some(low), Some(high)) =
                            (self.maps.get(&(a, mid)), self.maps.get(&(mid, b)))
                        {
                            let comp = compose_maps(high, low);
                            self.maps.insert((a, b), comp);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, CycleError> {
        self.points
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| CycleError::UnknownPoint(id.to_string()))
    }

    /// Pushforward along a <= b (identity when a == b).
    pub fn map(&self, a: usize, b: usize) -> LinearMap {
        if a == b {
            return identity_map(self.space_dims[a]);
        }
        self.maps
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| panic!("missing pushforward {} -> {}", a, b))
    }

    /// Full consistency report for the type invariants.
    pub fn validate(&self) -> ModelReport {
        let n = self.points.len();
        let mut violations = vec![];
        // antisymmetry
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le[a][b] && self.le[b][a] {
                    violations.push(format!(
                        "order is not antisymmetric between {} and {}",
                        self.points[a].id, self.points[b].id
                    ));
                }
            }
        }
        // dimension strictly decreases downward
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le[a][b] && self.points[a].dim >= self.points[b].dim {
                    violations.push(format!(
                        "{} <= {} but dim {} >= dim {}",
                        self.points[a].id,
                        self.points[b].id,
                        self.points[a].dim,
                        self.points[b].dim
                    ));
                }
            }
        }
        // spaces below the cycle dimension are zero
        for (i, p) in self.points.iter().enumerate() {
            if p.dim < self.cycle_dim && self.space_dims[i] != 0 {
                violations.push(format!(
                    "point {} has dim {} < {} but a nonzero space",
                    p.id, p.dim, self.cycle_dim
                ));
            }
        }
        // every comparable pair has a map of the right shape
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.le[a][b] {
                    continue;
                }
                match self.maps.get(&(a, b)) {
                    None => violations.push(format!(
                        "no pushforward for {} <= {}",
                        self.points[a].id, self.points[b].id
                    )),
                    Some(m) => {
                        if m.len() != self.space_dims[b]
                            || m.iter().any(|r| r.len() != self.space_dims[a])
                        {
                            violations.push(format!(
                                "pushforward {} -> {} has the wrong shape",
                                self.points[a].id, self.points[b].id
                            ));
                        }
                    }
                }
            }
        }
        // composition on all chains
        for a in 0..n {
            for mid in 0..n {
                for b in 0..n {
                    if a == mid || mid == b || a == b {
                        continue;
                    }
                    if self.le[a][mid] && self.le[mid][b] {
                        let direct = self.map(a, b);
                        let composed = compose_maps(&self.map(mid, b), &self.map(a, mid));
                        if direct != composed {
                            violations.push(format!(
                                "pushforwards do not compose along {} <= {} <= {}",
                                self.points[a].id, self.points[mid].id, self.points[b].id
                            ));
                        }
                    }
                }
            }
        }
        ModelReport { violations }
    }

    /// Down-closure of a point set.
    pub fn down_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &x in set {
            for y in 0..self.points.len() {
                if self.le[y][x] {
                    out.insert(y);
                }
            }
        }
        out
    }

    pub fn principal(&self, x: usize) -> ClosedSet {
        let mut s = BTreeSet::new();
        s.insert(x);
        ClosedSet(self.down_closure(&s))
    }

    pub fn whole_space(&self) -> ClosedSet {
        ClosedSet((0..self.points.len()).collect())
    }

    fn maximal_points(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| y != x && self.le[x][y]))
            .collect()
    }
}

/// Down-closed set of strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSet(pub BTreeSet<usize>);

impl ClosedSet {
    pub fn union(&self, o: &ClosedSet) -> ClosedSet {
        ClosedSet(self.0.union(&o.0).copied().collect())
    }

    pub fn intersect(&self, o: &ClosedSet) -> ClosedSet {
        ClosedSet(self.0.intersection(&o.0).copied().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }
}

/// Arbitrary point set: in the finite constructible algebra every subset is
/// a boolean combination of closed sets.
pub type Constructible = BTreeSet<usize>;

/// A generated cycle: one class contribution per stratum point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCycle {
    pub components: Vec<Vec<Rational>>,
}

impl GeneratedCycle {
    pub fn zero(model: &StratifiedModel) -> Self {
        GeneratedCycle {
            components: model
                .space_dims
                .iter()
                .map(|&d| vec![BigRational::zero(); d])
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, o: &GeneratedCycle) -> GeneratedCycle {
        GeneratedCycle {
            components: self
                .components
                .iter()
                .zip(&o.components)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, o: &GeneratedCycle) -> GeneratedCycle {
        GeneratedCycle {
            components: self
                .components
                .iter()
                .zip(&o.components)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    /// The atom v placed at stratum x.
    pub fn atom(model: &StratifiedModel, x: usize, v: Vec<Rational>) -> Self {
        let mut c = Self::zero(model);
        c.components[x] = v;
        c
    }
}

/// Presentation of the pushout space N_i(V) for a closed set V: the direct
/// sum over maximal components modulo gluing along shared lower strata.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    pub maximal: Vec<usize>,
    offsets: Vec<usize>,
    pub total_dim: usize,
    rel_rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl QuotientSpace {
    pub fn build(model: &StratifiedModel, v: &ClosedSet) -> QuotientSpace {
        let maximal = model.maximal_points(&v.0);
        let mut offsets = vec![];
        let mut total = 0usize;
        for &eta in &maximal {
            offsets.push(total);
            total += model.space_dims[eta];
        }
        // relations: a class on a shared lower stratum is the same seen from
        // any maximal component above it
        let mut rel_rows: Vec<Vec<Rational>> = vec![];
        for &y in &v.0 {
            let uppers: Vec<usize> = maximal
                .iter()
                .enumerate()
                .filter(|(_, &eta)| model.leq(y, eta))
                .map(|(pos, _)| pos)
                .collect();
            if uppers.len() < 2 || model.space_dims[y] == 0 {
                continue;
            }
            let first = uppers[0];
            for &other in &uppers[1..] {
                for k in 0..model.space_dims[y] {
                    let mut basis_vec = vec![BigRational::zero(); model.space_dims[y]];
                    basis_vec[k] = BigRational::from_integer(1.into());
                    let via_first = apply_map(&model.map(y, maximal[first]), &basis_vec);
                    let via_other = apply_map(&model.map(y, maximal[other]), &basis_vec);
                    let mut row = vec![BigRational::zero(); total];
                    for (i, c) in via_first.iter().enumerate() {
                        row[offsets[first] + i] = c.clone();
                    }
                    for (i, c) in via_other.iter().enumerate() {
                        row[offsets[other] + i] -= c;
                    }
                    rel_rows.push(row);
                }
            }
        }
        let pivots = rref_field(&mut rel_rows);
        QuotientSpace {
            maximal,
            offsets,
            total_dim: total,
            rel_rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.total_dim - self.pivots.len()
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![BigRational::zero(); self.total_dim]
    }

    /// Canonical representative: eliminate pivot coordinates.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (ri, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (j, c) in self.rel_rows[ri].iter().enumerate() {
                let d = &f * c;
                v[j] -= d;
            }
        }
        v
    }

    /// Injects a class living at a point x in V through the first maximal
    /// component above it.
    pub fn inject(&self, model: &StratifiedModel, x: usize, class: &[Rational]) -> Vec<Rational> {
        let mut out = self.zero();
        if class.iter().all(|c| c.is_zero()) {
            return out;
        }
        let pos = self
            .maximal
            .iter()
            .position(|&eta| model.leq(x, eta))
            .expect("point lies below a maximal component");
        let img = apply_map(&model.map(x, self.maximal[pos]), class);
        for (i, c) in img.into_iter().enumerate() {
            out[self.offsets[pos] + i] = c;
        }
        out
    }

    pub fn eq_classes(&self, a: &[Rational], b: &[Rational]) -> bool {
        let diff: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(diff).iter().all(|c| c.is_zero())
    }

    /// Pushforward of a reduced class of a smaller closed set into this one.
    pub fn push_from(
        &self,
        model: &StratifiedModel,
        sub: &QuotientSpace,
        class: &[Rational],
    ) -> Vec<Rational> {
        let mut out = self.zero();
        for (pos, &mu) in sub.maximal.iter().enumerate() {
            let slice = &class[sub.offsets[pos]..sub.offsets[pos] + model.space_dims[mu]];
            if slice.iter().all(|c| c.is_zero()) {
                continue;
            }
            let inj = self.inject(model, mu, slice);
            for (i, c) in inj.into_iter().enumerate() {
                out[i] += c;
            }
        }
        self.reduce(out)
    }
}

/// Value of a restriction: the pushout space plus the reduced class inside.
#[derive(Debug, Clone)]
pub struct RestrictedClass {
    pub space: QuotientSpace,
    pub class: Vec<Rational>,
}

/// R_V by the direct sum formula: push every contribution in V into the
/// pushout.
pub fn restrict_direct(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    v: &ClosedSet,
) -> Result<RestrictedClass, CycleError> {
    if v.is_empty() {
        return Err(CycleError::EmptySet);
    }
    let space = QuotientSpace::build(model, v);
    let mut acc = space.zero();
    for &x in &v.0 {
        if model.space_dims[x] == 0 {
            continue;
        }
        let inj = space.inject(model, x, &alpha.components[x]);
        for (i, c) in inj.into_iter().enumerate() {
            acc[i] += c;
        }
    }
    let class = space.reduce(acc);
    Ok(RestrictedClass { space, class })
}

/// R_V by the inductive recursion on (dim, number of components):
/// irreducible sets take the top contribution plus the restriction of the
/// boundary; reducible sets split off one component and use cut-and-paste.
pub fn restrict_inductive(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    v: &ClosedSet,
) -> Result<RestrictedClass, CycleError> {
    if v.is_empty() {
        return Err(CycleError::EmptySet);
    }
    let space = QuotientSpace::build(model, v);
    let class = restrict_inductive_inner(model, alpha, v, &space)?;
    Ok(RestrictedClass { space, class })
}

fn restrict_inductive_inner(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    v: &ClosedSet,
    space: &QuotientSpace,
) -> Result<Vec<Rational>, CycleError> {
    let maximal = space.maximal.clone();
    if maximal.len() == 1 {
        let eta = maximal[0];
        // top contribution
        let mut acc = space.inject(model, eta, &alpha.components[eta]);
        // plus the boundary, pushed forward
        let mut boundary = v.0.clone();
        boundary.remove(&eta);
        if !boundary.is_empty() {
            let bset = ClosedSet(boundary);
            let bspace = QuotientSpace::build(model, &bset);
            let bclass = restrict_inductive_inner(model, alpha, &bset, &bspace)?;
            let pushed = space.push_from(model, &bspace, &bclass);
            for (i, c) in pushed.into_iter().enumerate() {
                acc[i] += c;
            }
        }
        return Ok(space.reduce(acc));
    }
    // reducible: first component against the rest (canonical order)
    let v1 = model.principal(maximal[0]);
    let mut rest = BTreeSet::new();
    for &eta in &maximal[1..] {
        rest.extend(model.principal(eta).0);
    }
    let w = ClosedSet(rest);
    let inter = v1.intersect(&w);
    let s1 = QuotientSpace::build(model, &v1);
    let c1 = restrict_inductive_inner(model, alpha, &v1, &s1)?;
    let sw = QuotientSpace::build(model, &w);
    let cw = restrict_inductive_inner(model, alpha, &w, &sw)?;
    let mut acc = space.push_from(model, &s1, &c1);
    let pw = space.push_from(model, &sw, &cw);
    for (i, c) in pw.into_iter().enumerate() {
        acc[i] += c;
    }
    if !inter.is_empty() {
        let si = QuotientSpace::build(model, &inter);
        let ci = restrict_inductive_inner(model, alpha, &inter, &si)?;
        let pi = space.push_from(model, &si, &ci);
        for (i, c) in pi.into_iter().enumerate() {
            acc[i] -= c;
        }
    }
    Ok(space.reduce(acc))
}

/// Componentwise constructible restriction: keep contributions at points of
/// W, zero elsewhere.
pub fn pi_componentwise(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    w: &Constructible,
) -> GeneratedCycle {
    let mut out = GeneratedCycle::zero(model);
    for &x in w {
        out.components[x] = alpha.components[x].clone();
    }
    out
}

/// The subtractive recursion pi_W = pi_closure(W) - pi_(closure(W) minus W),
/// grounded at closed sets; equal to the componentwise form (tested).
pub fn pi_subtractive(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    w: &Constructible,
) -> GeneratedCycle {
    let closure = model.down_closure(w);
    if closure == *w {
        // closed: componentwise by definition
        return pi_componentwise(model, alpha, w);
    }
    let diff: Constructible = closure.difference(w).copied().collect();
    let a = pi_subtractive(model, alpha, &closure);
    let b = pi_subtractive(model, alpha, &diff);
    a.sub(&b)
}

/// Support: the set of strata with nonzero contribution (every constructible
/// neighbourhood of such a point keeps a nonzero restriction).
pub fn support(model: &StratifiedModel, alpha: &GeneratedCycle) -> BTreeSet<usize> {
    let _ = model;
    alpha
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|x| !x.is_zero()))
        .map(|(i, _)| i)
        .collect()
}

/// Atomic decomposition of a positive cycle: the nonzero components, each
/// certified inside its declared cone.
pub fn atomic_decomposition(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
) -> Result<Vec<(usize, Vec<Rational>)>, CycleError> {
    let mut atoms = vec![];
    for (x, comp) in alpha.components.iter().enumerate() {
        if comp.iter().all(|c| c.is_zero()) {
            continue;
        }
        let cone = model.positive_cones[x].as_ref().ok_or_else(|| {
            CycleError::MissingData(format!("no positive cone at {}", model.points[x].id))
        })?;
        for (fi, f) in cone.facets.iter().enumerate() {
            let pairing: Rational = f.iter().zip(comp).map(|(a, b)| a * b).sum();
            if rat_sign(&pairing) < 0 {
                return Err(CycleError::NotPositive {
                    point: model.points[x].id.clone(),
                    facet: fi,
                });
            }
        }
        atoms.push((x, comp.clone()));
    }
    Ok(atoms)
}

/// Rebuilds the cycle from atoms (the inverse of atomic_decomposition).
pub fn reconstruct(model: &StratifiedModel, atoms: &[(usize, Vec<Rational>)]) -> GeneratedCycle {
    let mut out = GeneratedCycle::zero(model);
    for (x, v) in atoms {
        out.components[*x] = v.clone();
    }
    out
}

/// A compatible covector family: one covector per point space agreeing with
/// the pushforwards.
#[derive(Debug, Clone)]
pub struct CovectorFamily {
    pub per_point: Vec<Vec<Rational>>,
}

impl CovectorFamily {
    pub fn validate(&self, model: &StratifiedModel) -> Result<(), CycleError> {
        let n = model.points.len();
        for x in 0..n {
            if self.per_point[x].len() != model.space_dims[x] {
                return Err(CycleError::NotCompatible(format!(
                    "covector length at {} mismatches the space",
                    model.points[x].id
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b || !model.leq(a, b) {
                    continue;
                }
                // beta_a must equal beta_b composed with the pushforward
                let m = model.map(a, b);
                for k in 0..model.space_dims[a] {
                    let mut basis = vec![BigRational::zero(); model.space_dims[a]];
                    basis[k] = BigRational::from_integer(1.into());
                    let img = apply_map(&m, &basis);
                    let through: Rational =
                        img.iter().zip(&self.per_point[b]).map(|(u, v)| u * v).sum();
                    if through != self.per_point[a][k] {
                        return Err(CycleError::NotCompatible(format!(
                            "fails along {} <= {}",
                            model.points[a].id, model.points[b].id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pairing with a restricted class through any maximal component.
    pub fn pair_restricted(&self, model: &StratifiedModel, rc: &RestrictedClass) -> Rational {
        let mut acc = BigRational::zero();
        for (pos, &eta) in rc.space.maximal.iter().enumerate() {
            let off = rc.space.offsets[pos];
            for k in 0..model.space_dims[eta] {
                acc += &rc.class[off + k] * &self.per_point[eta][k];
            }
        }
        acc
    }
}

/// Exact intersection number (alpha . beta) on a closed set V.
pub fn intersection_number(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    v: &ClosedSet,
    beta: &CovectorFamily,
) -> Result<Rational, CycleError> {
    beta.validate(model)?;
    let rc = restrict_direct(model, alpha, v)?;
    Ok(beta.pair_restricted(model, &rc))
}

/// Nonnegative additive set function W -> (pi_W(alpha) . beta) for a
/// positive cycle and a dual-cone covector family.
#[derive(Debug, Clone)]
pub struct FiniteVectorMeasure {
    pub point_masses: Vec<Rational>,
}

impl FiniteVectorMeasure {
    pub fn measure(&self, w: &Constructible) -> Rational {
        w.iter().map(|&x| self.point_masses[x].clone()).sum()
    }

    pub fn total(&self) -> Rational {
        self.point_masses.iter().sum()
    }
}

pub fn vector_measure(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    beta: &CovectorFamily,
) -> Result<FiniteVectorMeasure, CycleError> {
    beta.validate(model)?;
    // positivity of the cycle
    atomic_decomposition(model, alpha)?;
    // beta must lie in the dual cone at every point with a cone
    for (x, cone) in model.positive_cones.iter().enumerate() {
        if let Some(cone) = cone {
            for ray in &cone.rays {
                let pairing: Rational = ray
                    .iter()
                    .zip(&beta.per_point[x])
                    .map(|(a, b)| a * b)
                    .sum();
                if rat_sign(&pairing) < 0 {
                    return Err(CycleError::NotDual(model.points[x].id.clone()));
                }
            }
        }
    }
    let masses: Vec<Rational> = alpha
        .components
        .iter()
        .enumerate()
        .map(|(x, comp)| {
            comp.iter()
                .zip(&beta.per_point[x])
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    Ok(FiniteVectorMeasure {
        point_masses: masses,
    })
}

/// (alpha . D) >= 0 whenever the support avoids the divisor set: exact
/// pairing against the declared divisor covectors.
pub fn disjoint_support_positivity(
    model: &StratifiedModel,
    alpha: &GeneratedCycle,
    d: &ClosedSet,
) -> Result<Rational, CycleError> {
    let supp = support(model, alpha);
    if supp.iter().any(|x| d.contains(*x)) {
        return Err(CycleError::SupportMeetsD);
    }
    let mut acc = BigRational::zero();
    for &x in &supp {
        let pairing = model.divisor_pairings[x].as_ref().ok_or_else(|| {
            CycleError::MissingData(format!("no divisor pairing at {}", model.points[x].id))
        })?;
        let val: Rational = alpha.components[x]
            .iter()
            .zip(pairing)
            .map(|(a, b)| a * b)
            .sum();
        acc += val;
    }
    Ok(acc)
}

/// The worked two-lines model: two curves meeting at a point, cycle
/// dimension one, rank-one spaces on the curves.
pub fn two_lines_model() -> StratifiedModel {
    let points = vec![
        StratumPoint {
            id: "eta1".into(),
            dim: 1,
        },
        StratumPoint {
            id: "eta2".into(),
            dim: 1,
        },
        StratumPoint {
            id: "p".into(),
            dim: 0,
        },
    ];
    let pairs = vec![
        ("p".to_string(), "eta1".to_string()),
        ("p".to_string(), "eta2".to_string()),
    ];
    let ray = PolyhedralCone::orthant(1);
    StratifiedModel::new(
        1,
        points,
        &pairs,
        vec![1, 1, 0],
        BTreeMap::new(),
        vec![Some(ray.clone()), Some(ray), None],
        vec![
            Some(vec![BigRational::from_integer(1.into())]),
            Some(vec![BigRational::from_integer(1.into())]),
            Some(vec![]),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use conespec_kernel::rational::rat_int;

    fn rvec(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn two_lines_alpha() -> (StratifiedModel, GeneratedCycle) {
        let model = two_lines_model();
        let mut alpha = GeneratedCycle::zero(&model);
        alpha.components[0] = rvec(&[1]);
        alpha.components[1] = rvec(&[2]);
        (model, alpha)
    }

    #[test]
    fn two_lines_validates() {
        let model = two_lines_model();
        let rep = model.validate();
        assert!(rep.valid(), "{:?}", rep.violations);
    }

    #[test]
    fn dim_equal_comparable_flagged() {
        let points = vec![
            StratumPoint {
                id: "a".into(),
                dim: 1,
            },
            StratumPoint {
                id: "b".into(),
                dim: 1,
            },
        ];
        let model = StratifiedModel::new(
            1,
            points,
            &[("a".into(), "b".into())],
            vec![1, 1],
            BTreeMap::new(),
            vec![None, None],
            vec![None, None],
        )
        .unwrap();
        let rep = model.validate();
        assert!(!rep.valid());
    }

    #[test]
    fn non_composing_chain_flagged() {
        // chain c <= b <= a with maps that do not compose
        let points = vec![
            StratumPoint {
                id: "a".into(),
                dim: 2,
            },
            StratumPoint {
                id: "b".into(),
                dim: 1,
            },
            StratumPoint {
                id: "c".into(),
                dim: 0,
            },
        ];
        let mut maps = BTreeMap::new();
        maps.insert(("c".to_string(), "b".to_string()), vec![vec![rat_int(1)]]);
        maps.insert(("b".to_string(), "a".to_string()), vec![vec![rat_int(1)]]);
        maps.insert(("c".to_string(), "a".to_string()), vec![vec![rat_int(5)]]);
        let model = StratifiedModel::new(
            0,
            points,
            &[
                ("c".into(), "b".into()),
                ("b".into(), "a".into()),
                ("c".into(), "a".into()),
            ],
            vec![1, 1, 1],
            maps,
            vec![None, None, None],
            vec![None, None, None],
        )
        .unwrap();
        let rep = model.validate();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.contains("do not compose")));
    }

    #[test]
    fn restriction_on_two_lines() {
        let (model, alpha) = two_lines_alpha();
        // single line: base case
        let l1 = model.principal(0);
        let r1 = restrict_direct(&model, &alpha, &l1).unwrap();
        assert_eq!(r1.class, rvec(&[1]));
        // union of the lines: rank-2 pushout with classes (1, 2)
        let both = l1.union(&model.principal(1));
        let r = restrict_direct(&model, &alpha, &both).unwrap();
        assert_eq!(r.space.dim(), 2);
        assert_eq!(r.class, rvec(&[1, 2]));
        // inductive route agrees
        let ri = restrict_inductive(&model, &alpha, &both).unwrap();
        assert!(r.space.eq_classes(&r.class, &ri.class));
        // degree pairing gives 1 + 2 = 3
        let beta = CovectorFamily {
            per_point: vec![rvec(&[1]), rvec(&[1]), vec![]],
        };
        let n = intersection_number(&model, &alpha, &both, &beta).unwrap();
        assert_eq!(n, rat_int(3));
    }

    #[test]
    fn zero_cycle_restricts_to_zero() {
        let model = two_lines_model();
        let alpha = GeneratedCycle::zero(&model);
        let whole = model.whole_space();
        let r = restrict_direct(&model, &alpha, &whole).unwrap();
        assert!(r.class.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn cut_and_paste_on_two_lines() {
        let (model, alpha) = two_lines_alpha();
        let v1 = model.principal(0);
        let v2 = model.principal(1);
        assert!(cut_and_paste_holds(&model, &alpha, &v1, &v2));
        // equal sets: both sides are 2 R_V
        assert!(cut_and_paste_holds(&model, &alpha, &v1, &v1));
    }

    #[test]
    fn pi_routes_agree() {
        let (model, alpha) = two_lines_alpha();
        // W = L1 minus the point
        let mut w = BTreeSet::new();
        w.insert(0usize);
        let a = pi_componentwise(&model, &alpha, &w);
        let b = pi_subtractive(&model, &alpha, &w);
        assert_eq!(a, b);
        assert_eq!(a.components[0], rvec(&[1]));
        assert!(a.components[1].iter().all(|c| c.is_zero()));
        // disjoint pieces compose to zero
        let mut w2 = BTreeSet::new();
        w2.insert(1usize);
        let pi1_of_pi2 = pi_componentwise(&model, &pi_componentwise(&model, &alpha, &w2), &w);
        assert!(pi1_of_pi2.is_zero());
    }

    #[test]
    fn support_rules() {
        let (model, alpha) = two_lines_alpha();
        let s = support(&model, &alpha);
        assert!(s.contains(&0) && s.contains(&1) && !s.contains(&2));
        let mut only_eta1 = GeneratedCycle::zero(&model);
        only_eta1.components[0] = rvec(&[1]);
        let s1 = support(&model, &only_eta1);
        assert_eq!(s1.into_iter().collect::<Vec<_>>(), vec![0]);
        assert!(support(&model, &GeneratedCycle::zero(&model)).is_empty());
    }

    #[test]
    fn atoms_and_reconstruction() {
        let (model, alpha) = two_lines_alpha();
        let atoms = atomic_decomposition(&model, &alpha).unwrap();
        assert_eq!(atoms.len(), 2);
        let back = reconstruct(&model, &atoms);
        assert_eq!(back, alpha);
        // negative component rejected
        let mut bad = alpha.clone();
        bad.components[0] = rvec(&[-1]);
        assert!(matches!(
            atomic_decomposition(&model, &bad),
            Err(CycleError::NotPositive { .. })
        ));
        // empty decomposition of zero
        assert!(atomic_decomposition(&model, &GeneratedCycle::zero(&model))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn measure_on_cells() {
        let (model, alpha) = two_lines_alpha();
        let beta = CovectorFamily {
            per_point: vec![rvec(&[1]), rvec(&[1]), vec![]],
        };
        let mu = vector_measure(&model, &alpha, &beta).unwrap();
        let cell_l1: Constructible = [0usize].into_iter().collect();
        let cell_l2: Constructible = [1usize].into_iter().collect();
        let cell_p: Constructible = [2usize].into_iter().collect();
        assert_eq!(mu.measure(&cell_l1), rat_int(1));
        assert_eq!(mu.measure(&cell_l2), rat_int(2));
        assert_eq!(mu.measure(&cell_p), rat_int(0));
        assert_eq!(mu.total(), rat_int(3));
        // additivity over the partition
        let all: Constructible = [0usize, 1, 2].into_iter().collect();
        assert_eq!(
            mu.measure(&all),
            mu.measure(&cell_l1) + mu.measure(&cell_l2) + mu.measure(&cell_p)
        );
    }

    #[test]
    fn disjoint_support_pairing() {
        let (model, alpha) = two_lines_alpha();
        // D = {p}: support misses it
        let d = model.principal(2);
        let val = disjoint_support_positivity(&model, &alpha, &d).unwrap();
        assert!(val >= rat_int(0));
        // cycle supported on D is rejected
        let mut on_d = GeneratedCycle::zero(&model);
        on_d.components[0] = rvec(&[1]);
        let d_big = model.principal(0);
        assert!(matches!(
            disjoint_support_positivity(&model, &on_d, &d_big),
            Err(CycleError::SupportMeetsD)
        ));
    }

    #[test]
    fn incompatible_covector_family_rejected() {
        // chain c <= a with consistent maps but a family violating pullback
        let points = vec![
            StratumPoint {
                id: "a".into(),
                dim: 1,
            },
            StratumPoint {
                id: "c".into(),
                dim: 0,
            },
        ];
        let mut maps = BTreeMap::new();
        maps.insert(("c".to_string(), "a".to_string()), vec![vec![rat_int(1)]]);
        let model = StratifiedModel::new(
            0,
            points,
            &[("c".into(), "a".into())],
            vec![1, 1],
            maps,
            vec![None, None],
            vec![None, None],
        )
        .unwrap();
        let bad = CovectorFamily {
            per_point: vec![rvec(&[1]), rvec(&[5])],
        };
        assert!(bad.validate(&model).is_err());
        let good = CovectorFamily {
            per_point: vec![rvec(&[1]), rvec(&[1])],
        };
        assert!(good.validate(&model).is_ok());
    }

    /// shared helper: the cut-and-paste identity in the union's pushout
    fn cut_and_paste_holds(
        model: &StratifiedModel,
        alpha: &GeneratedCycle,
        v1: &ClosedSet,
        v2: &ClosedSet,
    ) -> bool {
        let union = v1.union(v2);
        let inter = v1.intersect(v2);
        let space = QuotientSpace::build(model, &union);
        let r1 = restrict_direct(model, alpha, v1).unwrap();
        let r2 = restrict_direct(model, alpha, v2).unwrap();
        let ru = restrict_direct(model, alpha, &union).unwrap();
        let mut lhs = space.push_from(model, &r1.space, &r1.class);
        let p2 = space.push_from(model, &r2.space, &r2.class);
        for (i, c) in p2.into_iter().enumerate() {
            lhs[i] += c;
        }
        let mut rhs = ru.class.clone();
        if !inter.is_empty() {
            let ri = restrict_direct(model, alpha, &inter).unwrap();
            let pi = space.push_from(model, &ri.space, &ri.class);
            for (i, c) in pi.into_iter().enumerate() {
                rhs[i] += c;
            }
        }
        space.eq_classes(&space.reduce(lhs), &space.reduce(rhs))
    }
}
