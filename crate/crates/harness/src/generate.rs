//! Deterministic instance generators. Every generator takes an explicit
//! 64-bit seed and produces identical artifacts for identical parameters,
//! so any failing check embeds a replayable instance description.
//!
//! Good cones are generated only in families where the invariance
//! g(closure) = closure holds by construction: diagonal systems, split
//! monomial products, and permutation-scale (monomial) matrices on the
//! orthant.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conespec_cones::PolyhedralCone;
use conespec_degrees::{split_monomial_system, split_monomial_tree, GradedPullbackSystem, SubsystemNode};
use conespec_exppoly::{ExpPoly, ExpPolyTerm, RotationTerm};
use conespec_gencycles::{CovectorFamily, GeneratedCycle, LinearMap, StratifiedModel, StratumPoint};
use conespec_kernel::algebraic::RealAlgebraic;
use conespec_kernel::matrix::RationalMatrix;
use conespec_kernel::rational::{rat, rat_int, Rational};

fn rng_for(kind: &str, seed: u64) -> ChaCha8Rng {
    // stable per-kind stream: fold the kind name into the seed
    let mut h: u64 = 0xcbf29ce484222325;
    for b in kind.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn random_positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(1..=12i64);
    let den = rng.gen_range(1..=4i64);
    rat(num, den)
}

/// Diagonal matrix with positive rational entries plus the orthant.
pub struct DiagonalInstance {
    pub matrix: RationalMatrix,
    pub cone: PolyhedralCone,
    pub entries: Vec<Rational>,
}

pub fn gen_diagonal(seed: u64, dim: usize) -> DiagonalInstance {
    let mut rng = rng_for("diagonal-cone", seed);
    let entries: Vec<Rational> = (0..dim).map(|_| random_positive_rational(&mut rng)).collect();
    DiagonalInstance {
        matrix: RationalMatrix::diagonal(&entries),
        cone: PolyhedralCone::orthant(dim),
        entries,
    }
}

/// Monomial matrix: permutation composed with a positive scaling, plus the
/// orthant and the exact expected cone spectrum (one value per cycle).
pub struct PermutationScaleInstance {
    pub matrix: RationalMatrix,
    pub cone: PolyhedralCone,
    pub expected_spectrum: Vec<RealAlgebraic>,
    pub permutation: Vec<usize>,
    pub scales: Vec<Rational>,
}

pub fn gen_permutation_scale(seed: u64, dim: usize) -> PermutationScaleInstance {
    let mut rng = rng_for("permutation-scale", seed);
    let mut perm: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let scales: Vec<Rational> = (0..dim).map(|_| random_positive_rational(&mut rng)).collect();
    let mut m = RationalMatrix::zero(dim);
    for i in 0..dim {
        // e_i maps to scales[i] * e_{perm[i]}
        *m.at_mut(perm[i], i) = scales[i].clone();
    }
    // expected members: for each cycle with scale product s and length L,
    // the positive real root s^(1/L)
    let mut seen = vec![false; dim];
    let mut expected = vec![];
    for start in 0..dim {
        if seen[start] {
            continue;
        }
        let mut prod = BigRational::from_integer(1.into());
        let mut len = 0u32;
        let mut cur = start;
        loop {
            seen[cur] = true;
            prod *= &scales[cur];
            len += 1;
            cur = perm[cur];
            if cur == start {
                break;
            }
        }
        expected.push(
            RealAlgebraic::Rational(prod)
                .nth_root(len)
                .expect("positive scale product"),
        );
    }
    expected.sort();
    expected.dedup_by(|a, b| a.equals(b));
    PermutationScaleInstance {
        matrix: m,
        cone: PolyhedralCone::orthant(dim),
        expected_spectrum: expected,
        permutation: perm,
        scales,
    }
}

/// Split monomial endomorphism of a k-fold product of lines with its full
/// periodic tree.
pub struct MonomialProductInstance {
    pub exponents: Vec<i64>,
    pub system: GradedPullbackSystem,
    pub tree: SubsystemNode,
}

pub fn gen_monomial_product(seed: u64, k: usize) -> MonomialProductInstance {
    let mut rng = rng_for("monomial-product", seed);
    let exponents: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=5i64)).collect();
    monomial_product_with(&exponents)
}

pub fn monomial_product_with(exponents: &[i64]) -> MonomialProductInstance {
    MonomialProductInstance {
        exponents: exponents.to_vec(),
        system: split_monomial_system(exponents),
        tree: split_monomial_tree(exponents),
    }
}

/// Random stratified model with a positive cycle and a compatible dual
/// covector family, built functorially so that every validation passes.
pub struct StratifiedInstance {
    pub model: StratifiedModel,
    pub cycle: GeneratedCycle,
    pub dual: CovectorFamily,
}

pub fn gen_random_stratified(seed: u64, max_points: usize) -> StratifiedInstance {
    let mut rng = rng_for("random-stratified", seed);
    let cycle_dim = 1u32;
    // layers by dimension 2 (top), 1, 0; at least one point on top
    let n2 = rng.gen_range(1..=2usize);
    let n1 = rng.gen_range(1..=((max_points.saturating_sub(n2 + 1)).clamp(1, 6)));
    let n0 = rng
        .gen_range(0..=((max_points.saturating_sub(n2 + n1)).clamp(0, 4)));
    let mut points = vec![];
    for i in 0..n2 {
        points.push(StratumPoint {
            id: format!("s2_{}", i),
            dim: 2,
        });
    }
    for i in 0..n1 {
        points.push(StratumPoint {
            id: format!("s1_{}", i),
            dim: 1,
        });
    }
    for i in 0..n0 {
        points.push(StratumPoint {
            id: format!("s0_{}", i),
            dim: 0,
        });
    }
    // space dims: zero below the cycle dimension, monotone upward so the
    // coordinate-inclusion construction is functorial
    let mut space_dims = vec![0usize; points.len()];
    let mut pairs: Vec<(String, String)> = vec![];
    let dim1_range = n2..n2 + n1;
    for i in dim1_range.clone() {
        space_dims[i] = rng.gen_range(1..=2usize);
    }
    // every dim-1 point lies under at least one top point
    let mut under: Vec<Vec<usize>> = vec![vec![]; points.len()];
    for i in dim1_range.clone() {
        let top = rng.gen_range(0..n2);
        under[i].push(top);
        pairs.push((points[i].id.clone(), points[top].id.clone()));
        if n2 > 1 && rng.gen_bool(0.3) {
            let other = (top + 1) % n2;
            under[i].push(other);
            pairs.push((points[i].id.clone(), points[other].id.clone()));
        }
    }
    for i in 0..n2 {
        let lowers_max = points
            .iter()
            .enumerate()
            .filter(|(j, _)| under.iter().enumerate().any(|(l, ups)| l == *j && ups.contains(&i)))
            .map(|(j, _)| space_dims[j])
            .max()
            .unwrap_or(1);
        space_dims[i] = lowers_max + rng.gen_range(0..=1usize);
    }
    // dim-0 points go below one or two dim-1 points (and thereby below top)
    for i in (n2 + n1)..(n2 + n1 + n0) {
        let mid = n2 + rng.gen_range(0..n1);
        pairs.push((points[i].id.clone(), points[mid].id.clone()));
        for &top in &under[mid] {
            pairs.push((points[i].id.clone(), points[top].id.clone()));
        }
        if n1 > 1 && rng.gen_bool(0.3) {
            let mid2 = n2 + ((mid - n2 + 1) % n1);
            pairs.push((points[i].id.clone(), points[mid2].id.clone()));
            for &top in &under[mid2] {
                pairs.push((points[i].id.clone(), points[top].id.clone()));
            }
        }
    }
    // unimodular change of basis per point, pushforwards as T_x inclusion
    // T_y^{-1}: functorial because coordinate inclusions compose
    let ts: Vec<RationalMatrix> = space_dims
        .iter()
        .map(|&d| random_unimodular(&mut rng, d.max(1)))
        .collect();
    let mut maps: BTreeMap<(String, String), LinearMap> = BTreeMap::new();
    // full comparability: dim0 <= dim1 <= dim2 along declared pairs and
    // their compositions; StratifiedModel completes composites, so only the
    // declared pairs need maps
    for (lo_id, hi_id) in &pairs {
        let lo = points.iter().position(|p| &p.id == lo_id).unwrap();
        let hi = points.iter().position(|p| &p.id == hi_id).unwrap();
        let (sl, sh) = (space_dims[lo], space_dims[hi]);
        let map: LinearMap = if sl == 0 {
            vec![vec![]; sh]
        } else {
            // rows of T_hi * incl * T_lo^{-1}
            let tlo_inv = ts[lo].inverse().expect("unimodular");
            let mut rows = vec![vec![BigRational::from_integer(0.into()); sl]; sh];
            for c in 0..sl {
                // image of e_c: T_hi * incl * (T_lo^{-1} e_c)
                let col: Vec<Rational> = (0..sl).map(|r| tlo_inv.at(r, c).clone()).collect();
                // pad to sh
                let mut padded = col.clone();
                padded.resize(sh, BigRational::from_integer(0.into()));
                let img = ts[hi].mul_vec(&padded);
                for r in 0..sh {
                    rows[r][c] = img[r].clone();
                }
            }
            rows
        };
        maps.insert((lo_id.clone(), hi_id.clone()), map);
    }
    // positive cones: image of the orthant under T_x
    let mut cones = vec![];
    let mut pairings = vec![];
    // a single global nonnegative covector, truncated per point, transported
    // through T_x^{-1}: compatible with every pushforward by construction
    let max_dim = space_dims.iter().copied().max().unwrap_or(1);
    let global: Vec<Rational> = (0..max_dim)
        .map(|_| rat_int(rng.gen_range(0..=3i64)))
        .collect();
    let mut dual_per_point = vec![];
    for (i, &d) in space_dims.iter().enumerate() {
        if d == 0 {
            cones.push(None);
            pairings.push(Some(vec![]));
            dual_per_point.push(vec![]);
            continue;
        }
        let rays: Vec<Vec<Rational>> = (0..d)
            .map(|j| (0..d).map(|r| ts[i].at(r, j).clone()).collect())
            .collect();
        cones.push(Some(
            PolyhedralCone::from_rays(d, rays).expect("unimodular image of the orthant"),
        ));
        // beta_x = global (truncated) composed with T_x^{-1}
        let tinv = ts[i].inverse().unwrap();
        let beta: Vec<Rational> = (0..d)
            .map(|c| {
                (0..d)
                    .map(|r| &global[r] * tinv.at(r, c))
                    .sum()
            })
            .collect();
        pairings.push(Some(beta.clone()));
        dual_per_point.push(beta);
    }
    let model = StratifiedModel::new(
        cycle_dim,
        points,
        &pairs,
        space_dims.clone(),
        maps,
        cones,
        pairings,
    )
    .expect("generated ids are consistent");
    // positive cycle: T_x applied to nonnegative coordinates
    let mut cycle = GeneratedCycle::zero(&model);
    for (i, &d) in space_dims.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let raw: Vec<Rational> = (0..d).map(|_| rat_int(rng.gen_range(0..=4i64))).collect();
        cycle.components[i] = ts[i].mul_vec(&raw);
    }
    let dual = CovectorFamily {
        per_point: dual_per_point,
    };
    StratifiedInstance { model, cycle, dual }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    for _ in 0..(2 * n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let c = rat_int(rng.gen_range(-2..=2i64));
        // row_a += c * row_b
        for j in 0..n {
            let v = &c * m.at(b, j);
            *m.at_mut(a, j) += v;
        }
    }
    m
}

/// Two-variable positive exponential polynomial with a dominant constant
/// layer, an oscillating conjugate pair of the same size, and strictly
/// dominated secondary terms (for decay checks).
pub fn gen_exppoly_region(seed: u64) -> ExpPoly {
    let mut rng = rng_for("exppoly-random", seed);
    let beta = rat_int(rng.gen_range(2..=4i64));
    let gamma = rat_int(rng.gen_range(2..=3i64));
    let re = rat(rng.gen_range(-3..=3i64), 2);
    let im = rat(rng.gen_range(-3..=3i64), 2);
    // constant coefficient strictly dominating the oscillation
    let k0 = {
        use num_traits::Signed;
        re.abs() + im.abs() + rat_int(1)
    };
    let nu = rng.gen_range(2..=6u64);
    let nv = rng.gen_range(2..=6u64);
    let tu = rat(rng.gen_range(1..nu as i64), nu as i64);
    let tv = rat(rng.gen_range(1..nv as i64), nv as i64);
    let mk = |cre: Rational, cim: Rational, ut: Rational, vt: Rational, um: Rational, vm: Rational, s: u32, t: u32| {
        ExpPolyTerm {
            coeff_re: cre,
            coeff_im: cim,
            u_mod: um,
            u_turn: ut,
            v_mod: Some(vm),
            v_turn: Some(vt),
            s,
            t: Some(t),
        }
    };
    let mut terms = vec![
        mk(
            k0,
            rat_int(0),
            rat_int(0),
            rat_int(0),
            beta.clone(),
            gamma.clone(),
            0,
            0,
        ),
        mk(
            re.clone(),
            im.clone(),
            tu.clone(),
            tv.clone(),
            beta.clone(),
            gamma.clone(),
            0,
            0,
        ),
        mk(
            re.clone(),
            -im.clone(),
            BigRational::from_integer(1.into()) - &tu,
            BigRational::from_integer(1.into()) - &tv,
            beta.clone(),
            gamma.clone(),
            0,
            0,
        ),
    ];
    // strictly dominated secondary: smaller u modulus
    let smaller = &beta - rat_int(1);
    terms.push(mk(
        rat_int(rng.gen_range(1..=3i64)),
        rat_int(0),
        rat_int(0),
        rat_int(0),
        smaller,
        gamma.clone(),
        rng.gen_range(0..=2u32),
        0,
    ));
    ExpPoly::new(2, terms).expect("constructed data is conjugation-closed")
}

/// Random conjugation-closed rotational data with nonzero turns.
pub fn gen_sign_instance(seed: u64) -> Vec<RotationTerm> {
    let mut rng = rng_for("sign-search", seed);
    let order = rng.gen_range(3..=12u64);
    let pair_count = rng.gen_range(1..=2usize);
    let mut terms = vec![];
    for _ in 0..pair_count {
        let k = rng.gen_range(1..order);
        let re = rat(rng.gen_range(-4..=4i64), rng.gen_range(1..=3i64));
        let im = rat(rng.gen_range(-4..=4i64), rng.gen_range(1..=3i64));
        let turn = rat(k as i64, order as i64);
        let half = rat(1, 2);
        if turn == half {
            // self-conjugate angle: real coefficient only
            terms.push(RotationTerm {
                coeff_re: re,
                coeff_im: rat_int(0),
                turn,
            });
        } else {
            terms.push(RotationTerm {
                coeff_re: re.clone(),
                coeff_im: im.clone(),
                turn: turn.clone(),
            });
            terms.push(RotationTerm {
                coeff_re: re,
                coeff_im: -im,
                turn: BigRational::from_integer(1.into()) - turn,
            });
        }
    }
    // guarantee nonzero data
    if terms
        .iter()
        .all(|t| t.coeff_re == rat_int(0) && t.coeff_im == rat_int(0))
    {
        terms[0].coeff_re = rat_int(1);
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism_of_generators() {
        let a = gen_diagonal(7, 3);
        let b = gen_diagonal(7, 3);
        assert_eq!(a.entries, b.entries);
        let p1 = gen_permutation_scale(11, 4);
        let p2 = gen_permutation_scale(11, 4);
        assert_eq!(p1.permutation, p2.permutation);
        assert_eq!(p1.scales, p2.scales);
        let m1 = gen_monomial_product(3, 3);
        let m2 = gen_monomial_product(3, 3);
        assert_eq!(m1.exponents, m2.exponents);
        let s1 = gen_random_stratified(5, 12);
        let s2 = gen_random_stratified(5, 12);
        assert_eq!(s1.cycle, s2.cycle);
    }

    #[test]
    fn generated_models_validate() {
        for seed in 0..10 {
            let inst = gen_random_stratified(seed, 14);
            let rep = inst.model.validate();
            assert!(rep.valid(), "seed {}: {:?}", seed, rep.violations);
            assert!(inst.dual.validate(&inst.model).is_ok(), "seed {}", seed);
            assert!(
                conespec_gencycles::atomic_decomposition(&inst.model, &inst.cycle).is_ok(),
                "seed {}",
                seed
            );
        }
    }

    #[test]
    fn permutation_scale_maps_orthant_exactly() {
        for seed in 0..8 {
            let inst = gen_permutation_scale(seed, 4);
            let cert =
                conespec_cones::validate_good_cone(&inst.matrix, &inst.cone).unwrap();
            assert!(cert.is_good(), "seed {}", seed);
        }
    }

    #[test]
    fn swap_scale_fixture() {
        // the gallery matrix [[0,2],[3,0]] corresponds to a 2-cycle with
        // scales 3 and 2 in column convention; build it directly
        let mut m = RationalMatrix::zero(2);
        *m.at_mut(1, 0) = rat_int(3);
        *m.at_mut(0, 1) = rat_int(2);
        let rows = m.rows();
        assert_eq!(rows[0][1], rat_int(2));
        assert_eq!(rows[1][0], rat_int(3));
    }

    #[test]
    fn exppoly_region_instances_positive() {
        for seed in 0..5 {
            let h = gen_exppoly_region(seed);
            for n in 1..6u64 {
                for m in 1..4u64 {
                    assert!(h.sign_at(n, Some(m)).unwrap() > 0, "seed {}", seed);
                }
            }
        }
    }

    #[test]
    fn sign_instances_have_nonzero_turns() {
        for seed in 0..10 {
            let terms = gen_sign_instance(seed);
            assert!(!terms.is_empty());
            for t in &terms {
                assert!(!t.turn.is_integer() || t.turn != rat_int(0));
            }
        }
    }
}
