//! Salient full-dimensional closed polyhedral cones by rays and facets,
//! kept mutually consistent by the double description method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use conespec_kernel::matrix::rank_field;
use conespec_kernel::rational::{rat_sign, Rational};

use crate::error::ConeError;
use crate::lp::dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeProvenance {
    User,
    Derived,
}

/// Closed polyhedral cone: `rays` generate it, `facets` cut it out as
/// {x : f.x >= 0 for every facet f}. The open cone of interest is the
/// interior: all facet inequalities strict.
#[derive(Debug, Clone)]
pub struct PolyhedralCone {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Rational>>,
    pub facets: Vec<Vec<Rational>>,
    pub provenance: ConeProvenance,
}

/// Scales to a primitive integer vector (entries coprime), keeping direction.
pub fn primitive_vector(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return vec![BigRational::zero(); v.len()];
    }
    ints.into_iter()
        .map(|c| BigRational::from_integer(c / &g))
        .collect()
}

fn canonical_list(mut vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    for v in vs.iter_mut() {
        *v = primitive_vector(v);
    }
    vs.retain(|v| v.iter().any(|c| !c.is_zero()));
    vs.sort_by(|a, b| {
        let ka: Vec<BigInt> = a.iter().map(|c| c.numer().clone()).collect();
        let kb: Vec<BigInt> = b.iter().map(|c| c.numer().clone()).collect();
        ka.cmp(&kb)
    });
    vs.dedup();
    vs
}

impl PolyhedralCone {
    /// Builds from generators; facets come from double description of the
    /// dual cone.
    pub fn from_rays(dim: usize, rays: Vec<Vec<Rational>>) -> Result<Self, ConeError> {
        check_dims(dim, &rays)?;
        let rays = canonical_list(rays);
        if rank_field(&rays) != dim {
            return Err(ConeError::NotFullDimensional);
        }
        // extreme rays of the dual cone {z : r.z >= 0} are the facet normals
        let facets = double_description(dim, &rays)?;
        if rank_field(&facets) != dim {
            return Err(ConeError::NotSalient);
        }
        Ok(PolyhedralCone {
            ambient_dim: dim,
            rays,
            facets: canonical_list(facets),
            provenance: ConeProvenance::Derived,
        })
    }

    /// Builds from halfspaces; rays come from double description, and the
    /// facet list is re-derived so redundant inequalities vanish.
    pub fn from_facets(dim: usize, facets: Vec<Vec<Rational>>) -> Result<Self, ConeError> {
        check_dims(dim, &facets)?;
        let facets_in = canonical_list(facets);
        if rank_field(&facets_in) != dim {
            return Err(ConeError::NotSalient);
        }
        let rays = double_description(dim, &facets_in)?;
        if rank_field(&rays) != dim {
            return Err(ConeError::NotFullDimensional);
        }
        let rays = canonical_list(rays);
        let facets = canonical_list(double_description(dim, &rays)?);
        Ok(PolyhedralCone {
            ambient_dim: dim,
            rays,
            facets,
            provenance: ConeProvenance::Derived,
        })
    }

    /// Builds from both descriptions, verifying they agree.
    pub fn from_rays_and_facets(
        dim: usize,
        rays: Vec<Vec<Rational>>,
        facets: Vec<Vec<Rational>>,
    ) -> Result<Self, ConeError> {
        check_dims(dim, &rays)?;
        check_dims(dim, &facets)?;
        let built = Self::from_rays(dim, rays.clone())?;
        // every supplied facet must hold on every ray
        for f in &facets {
            for r in &rays {
                if rat_sign(&dot_r(f, r)) < 0 {
                    return Err(ConeError::InconsistentDescription(
                        "a supplied facet cuts off a supplied ray".into(),
                    ));
                }
            }
        }
        // the supplied facets must cut out the same cone: each derived ray
        // satisfies them, and each derived facet must be implied; we check by
        // comparing canonical double descriptions
        let from_f = Self::from_facets(dim, facets)?;
        if built.rays != from_f.rays || built.facets != from_f.facets {
            return Err(ConeError::InconsistentDescription(
                "rays and facets describe different cones".into(),
            ));
        }
        Ok(PolyhedralCone {
            provenance: ConeProvenance::User,
            ..built
        })
    }

    /// First-orthant cone.
    pub fn orthant(dim: usize) -> Self {
        let mut rays = vec![];
        for i in 0..dim {
            let mut v = vec![BigRational::zero(); dim];
            v[i] = BigRational::one();
            rays.push(v);
        }
        PolyhedralCone {
            ambient_dim: dim,
            rays: rays.clone(),
            facets: rays,
            provenance: ConeProvenance::Derived,
        }
    }

    pub fn is_salient(&self) -> bool {
        rank_field(&self.facets) == self.ambient_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        rank_field(&self.rays) == self.ambient_dim
    }

    /// Closed-cone membership: every facet inequality holds.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.facets.iter().all(|f| rat_sign(&dot_r(f, v)) >= 0)
    }

    /// Open-cone membership: every facet inequality strict.
    pub fn contains_interior(&self, v: &[Rational]) -> bool {
        self.facets.iter().all(|f| rat_sign(&dot_r(f, v)) > 0)
    }

    /// Containment of closed cones: all of `self`'s rays inside `other`.
    pub fn subset_of(&self, other: &PolyhedralCone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
    }

    /// A strictly interior point (sum of rays works for a full-dimensional
    /// cone generated by them).
    pub fn interior_point(&self) -> Vec<Rational> {
        let mut v = vec![BigRational::zero(); self.ambient_dim];
        for r in &self.rays {
            for (i, c) in r.iter().enumerate() {
                v[i] += c;
            }
        }
        debug_assert!(self.contains_interior(&v));
        v
    }
}

fn check_dims(dim: usize, vs: &[Vec<Rational>]) -> Result<(), ConeError> {
    if dim == 0 {
        return Err(ConeError::DimensionMismatch("dimension must be >= 1".into()));
    }
    for v in vs {
        if v.len() != dim {
            return Err(ConeError::DimensionMismatch(format!(
                "vector of length {} in dimension {}",
                v.len(),
                dim
            )));
        }
    }
    Ok(())
}

fn dot_r(a: &[Rational], b: &[Rational]) -> Rational {
    dot(a, b)
}

/// Double description: extreme rays of {x : c.x >= 0 for all c in
/// constraints}. Requires the constraint matrix to have full column rank
/// (pointed result). This one routine serves both directions: facets from
/// rays are the extreme rays of the dual.
pub fn double_description(
    dim: usize,
    constraints: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>, ConeError> {
    if rank_field(&constraints.to_vec()) != dim {
        return Err(ConeError::NotSalient);
    }
    // greedy independent subset for the simplicial start
    let mut chosen: Vec<usize> = vec![];
    let mut acc: Vec<Vec<Rational>> = vec![];
    for (i, c) in constraints.iter().enumerate() {
        let mut trial = acc.clone();
        trial.push(c.clone());
        if rank_field(&trial) > acc.len() {
            acc = trial;
            chosen.push(i);
            if acc.len() == dim {
                break;
            }
        }
    }
    // initial rays: columns of the inverse of the chosen square system
    let m = conespec_kernel::matrix::RationalMatrix::from_rows(acc)
        .map_err(|e| ConeError::Kernel(e))?;
    let inv = m
        .inverse()
        .expect("chosen rows are independent by construction");
    let mut rays: Vec<Vec<Rational>> = (0..dim)
        .map(|j| (0..dim).map(|i| inv.at(i, j).clone()).collect())
        .collect();
    let mut active: Vec<Vec<usize>> = (0..dim)
        .map(|j| chosen.iter().copied().filter(|&i| i != chosen[j]).collect())
        .collect();

    for (ci, c) in constraints.iter().enumerate() {
        if chosen.contains(&ci) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot_r(c, r)).collect();
        let mut pos = vec![];
        let mut zer = vec![];
        let mut neg = vec![];
        for (i, v) in vals.iter().enumerate() {
            match rat_sign(v) {
                1 => pos.push(i),
                0 => zer.push(i),
                _ => neg.push(i),
            }
        }
        if neg.is_empty() {
            for &i in &zer {
                active[i].push(ci);
            }
            continue;
        }
        let mut new_rays = vec![];
        let mut new_active = vec![];
        for &i in pos.iter().chain(&zer) {
            new_rays.push(rays[i].clone());
            let mut a = active[i].clone();
            if vals[i].is_zero() {
                a.push(ci);
            }
            new_active.push(a);
        }
        for &p in &pos {
            for &n in &neg {
                // adjacency: common active constraints have rank dim-2
                let common: Vec<usize> = active[p]
                    .iter()
                    .copied()
                    .filter(|i| active[n].contains(i))
                    .collect();
                let rows: Vec<Vec<Rational>> =
                    common.iter().map(|&i| constraints[i].clone()).collect();
                if rank_field(&rows) != dim.saturating_sub(2) {
                    continue;
                }
                let combo: Vec<Rational> = (0..dim)
                    .map(|t| &vals[p] * &rays[n][t] - &vals[n] * &rays[p][t])
                    .collect();
                let mut a = common;
                a.push(ci);
                new_rays.push(primitive_vector(&combo));
                new_active.push(a);
            }
        }
        rays = new_rays;
        active = new_active;
    }
    Ok(canonical_list(rays))
}

#[cfg(test)]
mod tests {
    use super::*;
    use conespec_kernel::rational::rat_int;

    fn v(data: &[i64]) -> Vec<Rational> {
        data.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn orthant_round_trip() {
        let k = PolyhedralCone::from_rays(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(k.facets.len(), 2);
        assert!(k.contains(&v(&[1, 0])));
        assert!(!k.contains_interior(&v(&[1, 0])));
        assert!(k.contains_interior(&v(&[1, 1])));
        assert!(!k.contains(&v(&[-1, 1])));
    }

    #[test]
    fn redundant_ray_removed() {
        let k =
            PolyhedralCone::from_rays(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        // (1,1) is not extreme, but it is still a valid generator; the facet
        // description must be exactly the quadrant
        assert_eq!(k.facets.len(), 2);
        let k2 = PolyhedralCone::from_facets(2, k.facets.clone()).unwrap();
        assert_eq!(k2.rays.len(), 2);
    }

    #[test]
    fn line_is_rejected() {
        let e = PolyhedralCone::from_rays(2, vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])]);
        assert!(matches!(e, Err(ConeError::NotSalient)));
    }

    #[test]
    fn low_dimensional_rejected() {
        let e = PolyhedralCone::from_rays(2, vec![v(&[1, 0])]);
        assert!(matches!(e, Err(ConeError::NotFullDimensional)));
    }

    #[test]
    fn simplicial_cone_in_three_dims() {
        let k = PolyhedralCone::from_rays(
            3,
            vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[1, 1, 1])],
        )
        .unwrap();
        assert_eq!(k.facets.len(), 3);
        assert_eq!(k.rays.len(), 3);
        let p = k.interior_point();
        assert!(k.contains_interior(&p));
    }

    #[test]
    fn square_cone_four_rays() {
        // cone over a square: 4 extreme rays, 4 facets
        let k = PolyhedralCone::from_rays(
            3,
            vec![
                v(&[1, 1, 1]),
                v(&[1, -1, 1]),
                v(&[-1, 1, 1]),
                v(&[-1, -1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(k.rays.len(), 4);
        assert_eq!(k.facets.len(), 4);
    }

    #[test]
    fn from_facets_of_quadrant() {
        let k = PolyhedralCone::from_facets(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(k.rays.len(), 2);
        assert!(k.rays.contains(&v(&[1, 0])));
        assert!(k.rays.contains(&v(&[0, 1])));
    }

    #[test]
    fn consistent_pair_accepted_inconsistent_rejected() {
        let ok = PolyhedralCone::from_rays_and_facets(
            2,
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![v(&[1, 0]), v(&[0, 1])],
        );
        assert!(ok.is_ok());
        let bad = PolyhedralCone::from_rays_and_facets(
            2,
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![v(&[1, 0]), v(&[1, -1])],
        );
        assert!(bad.is_err());
    }
}
