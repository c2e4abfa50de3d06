//! JSON file formats: rationals as "p/q" strings, matrices row-major,
//! polynomials constant-term first. Parsing canonicalizes, so a
//! parse -> serialize -> parse round trip is the identity on canonical
//! forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use conespec_cones::{ConeError, PolyhedralCone};
use conespec_degrees::{GradedPullbackSystem, SubsystemNode};
use conespec_exppoly::{ExpPoly, ExpPolyError, ExpPolyTerm};
use conespec_gencycles::{CycleError, StratifiedModel, StratumPoint};
use conespec_kernel::matrix::RationalMatrix;
use conespec_kernel::rational::{parse_rational, rational_to_string, Rational};
use conespec_kernel::KernelError;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    ExpPoly(#[from] ExpPolyError),
    #[error("format: {0}")]
    Format(String),
}

fn parse_vec(v: &[String]) -> Result<Vec<Rational>, FileError> {
    v.iter().map(|s| Ok(parse_rational(s)?)).collect()
}

fn show_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_to_string).collect()
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<RationalMatrix, FileError> {
        let rows: Result<Vec<Vec<Rational>>, FileError> =
            self.entries.iter().map(|r| parse_vec(r)).collect();
        Ok(RationalMatrix::from_rows(rows?)?)
    }

    pub fn from_matrix(m: &RationalMatrix) -> Self {
        MatrixFile {
            entries: m.rows().iter().map(|r| show_vec(r)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// cones
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct ConeFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<String>>>,
}

impl ConeFile {
    /// Reconstructs the missing block by double description.
    pub fn to_cone(&self) -> Result<PolyhedralCone, FileError> {
        let rays = match &self.rays {
            Some(r) => Some(
                r.iter()
                    .map(|v| parse_vec(v))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let facets = match &self.facets {
            Some(f) => Some(
                f.iter()
                    .map(|v| parse_vec(v))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let dim = rays
            .as_ref()
            .and_then(|r| r.first().map(|v| v.len()))
            .or_else(|| facets.as_ref().and_then(|f| f.first().map(|v| v.len())))
            .ok_or_else(|| FileError::Format("cone file needs rays or facets".into()))?;
        let cone = match (rays, facets) {
            (Some(r), Some(f)) => PolyhedralCone::from_rays_and_facets(dim, r, f)?,
            (Some(r), None) => PolyhedralCone::from_rays(dim, r)?,
            (None, Some(f)) => PolyhedralCone::from_facets(dim, f)?,
            (None, None) => unreachable!(),
        };
        Ok(cone)
    }

    pub fn from_cone(k: &PolyhedralCone) -> Self {
        ConeFile {
            rays: Some(k.rays.iter().map(|r| show_vec(r)).collect()),
            facets: Some(k.facets.iter().map(|f| show_vec(f)).collect()),
        }
    }
}

// ---------------------------------------------------------------------------
// graded systems and subsystem trees
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub d: usize,
    pub pullbacks: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ample_model: Option<ConeFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_model: Option<ConeFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SystemFile {
    pub fn to_system(&self) -> Result<GradedPullbackSystem, FileError> {
        let mut pullbacks = vec![];
        for m in &self.pullbacks {
            let rows: Result<Vec<Vec<Rational>>, FileError> =
                m.iter().map(|r| parse_vec(r)).collect();
            pullbacks.push(RationalMatrix::from_rows(rows?)?);
        }
        Ok(GradedPullbackSystem {
            dimension: self.d,
            pullbacks,
            ample_model: self
                .ample_model
                .as_ref()
                .map(|c| c.to_cone())
                .transpose()?,
            big_model: self.big_model.as_ref().map(|c| c.to_cone()).transpose()?,
            label: self.label.clone().unwrap_or_default(),
        })
    }

    pub fn from_system(s: &GradedPullbackSystem) -> Self {
        SystemFile {
            d: s.dimension,
            pullbacks: s
                .pullbacks
                .iter()
                .map(|m| m.rows().iter().map(|r| show_vec(r)).collect())
                .collect(),
            ample_model: s.ample_model.as_ref().map(ConeFile::from_cone),
            big_model: s.big_model.as_ref().map(ConeFile::from_cone),
            label: if s.label.is_empty() {
                None
            } else {
                Some(s.label.clone())
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TreeFile {
    pub name: String,
    pub period: u32,
    pub system: SystemFile,
    #[serde(default)]
    pub children: Vec<TreeFile>,
}

impl TreeFile {
    pub fn to_tree(&self) -> Result<SubsystemNode, FileError> {
        Ok(SubsystemNode {
            name: self.name.clone(),
            period: self.period,
            system: self.system.to_system()?,
            children: self
                .children
                .iter()
                .map(|c| c.to_tree())
                .collect::<Result<Vec<_>, _>>()?,
        })
    }

    pub fn from_tree(t: &SubsystemNode) -> Self {
        TreeFile {
            name: t.name.clone(),
            period: t.period,
            system: SystemFile::from_system(&t.system),
            children: t.children.iter().map(TreeFile::from_tree).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// exponential polynomials
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct ExpPolyFile {
    pub arity: u8,
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermFile {
    pub re: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
    pub u_mod: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_turn: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_mod: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_turn: Option<String>,
    #[serde(default)]
    pub s: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
}

impl ExpPolyFile {
    pub fn to_exppoly(&self) -> Result<ExpPoly, FileError> {
        let mut terms = vec![];
        for t in &self.terms {
            terms.push(ExpPolyTerm {
                coeff_re: parse_rational(&t.re)?,
                coeff_im: t
                    .im
                    .as_ref()
                    .map(|s| parse_rational(s))
                    .transpose()?
                    .unwrap_or_else(|| conespec_kernel::rational::rat_int(0)),
                u_mod: parse_rational(&t.u_mod)?,
                u_turn: t
                    .u_turn
                    .as_ref()
                    .map(|s| parse_rational(s))
                    .transpose()?
                    .unwrap_or_else(|| conespec_kernel::rational::rat_int(0)),
                v_mod: t.v_mod.as_ref().map(|s| parse_rational(s)).transpose()?,
                v_turn: t.v_turn.as_ref().map(|s| parse_rational(s)).transpose()?,
                s: t.s,
                t: t.t,
            });
        }
        Ok(ExpPoly::new(self.arity, terms)?)
    }

    pub fn from_exppoly(h: &ExpPoly) -> Self {
        ExpPolyFile {
            arity: h.arity,
            terms: h
                .terms
                .iter()
                .map(|t| TermFile {
                    re: rational_to_string(&t.coeff_re),
                    im: if t.coeff_im
                        == conespec_kernel::rational::rat_int(0)
                    {
                        None
                    } else {
                        Some(rational_to_string(&t.coeff_im))
                    },
                    u_mod: rational_to_string(&t.u_mod),
                    u_turn: if t.u_turn == conespec_kernel::rational::rat_int(0) {
                        None
                    } else {
                        Some(rational_to_string(&t.u_turn))
                    },
                    v_mod: t.v_mod.as_ref().map(rational_to_string),
                    v_turn: t.v_turn.as_ref().map(rational_to_string),
                    s: t.s,
                    t: t.t,
                })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// stratified models
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub i: u32,
    pub points: Vec<PointFile>,
    /// pairs [lower, upper]
    pub closure: Vec<[String; 2]>,
    pub spaces: BTreeMap<String, usize>,
    /// key "lower->upper"
    #[serde(default)]
    pub pushforwards: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub cones: BTreeMap<String, ConeFile>,
    #[serde(default)]
    pub pairings: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PointFile {
    pub id: String,
    pub dim: u32,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<StratifiedModel, FileError> {
        let points: Vec<StratumPoint> = self
            .points
            .iter()
            .map(|p| StratumPoint {
                id: p.id.clone(),
                dim: p.dim,
            })
            .collect();
        let pairs: Vec<(String, String)> = self
            .closure
            .iter()
            .map(|p| (p[0].clone(), p[1].clone()))
            .collect();
        let mut space_dims = vec![];
        for p in &points {
            let d = self.spaces.get(&p.id).copied().ok_or_else(|| {
                FileError::Format(format!("space dimension missing for {}", p.id))
            })?;
            space_dims.push(d);
        }
        let mut maps = BTreeMap::new();
        for (k, m) in &self.pushforwards {
            let (lo, hi) = k
                .split_once("->")
                .ok_or_else(|| FileError::Format(format!("bad pushforward key {:?}", k)))?;
            let rows: Result<Vec<Vec<Rational>>, FileError> =
                m.iter().map(|r| parse_vec(r)).collect();
            maps.insert((lo.to_string(), hi.to_string()), rows?);
        }
        let mut cones = vec![None; points.len()];
        for (id, c) in &self.cones {
            let idx = points
                .iter()
                .position(|p| &p.id == id)
                .ok_or_else(|| FileError::Format(format!("cone for unknown point {}", id)))?;
            cones[idx] = Some(c.to_cone()?);
        }
        let mut pairings = vec![None; points.len()];
        for (id, v) in &self.pairings {
            let idx = points
                .iter()
                .position(|p| &p.id == id)
                .ok_or_else(|| FileError::Format(format!("pairing for unknown point {}", id)))?;
            pairings[idx] = Some(parse_vec(v)?);
        }
        Ok(StratifiedModel::new(
            self.i, points, &pairs, space_dims, maps, cones, pairings,
        )?)
    }
}

// ---------------------------------------------------------------------------
// io helpers
// ---------------------------------------------------------------------------

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, FileError> {
    let data = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&data)?)
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), FileError> {
    let data = serde_json::to_string_pretty(value)?;
    std::fs::write(path, data + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let mf = MatrixFile {
            entries: vec![
                vec!["0".into(), "2".into()],
                vec!["3".into(), "0".into()],
            ],
        };
        let m = mf.to_matrix().unwrap();
        let back = MatrixFile::from_matrix(&m);
        assert_eq!(back.entries, mf.entries);
    }

    #[test]
    fn cone_file_completion() {
        let cf = ConeFile {
            rays: Some(vec![
                vec!["1".into(), "0".into()],
                vec!["0".into(), "1".into()],
            ]),
            facets: None,
        };
        let k = cf.to_cone().unwrap();
        assert_eq!(k.facets.len(), 2);
        let full = ConeFile::from_cone(&k);
        let k2 = full.to_cone().unwrap();
        assert_eq!(k.rays, k2.rays);
        assert_eq!(k.facets, k2.facets);
    }

    #[test]
    fn exppoly_round_trip() {
        let f = ExpPolyFile {
            arity: 1,
            terms: vec![
                TermFile {
                    re: "1".into(),
                    im: None,
                    u_mod: "2".into(),
                    u_turn: None,
                    v_mod: None,
                    v_turn: None,
                    s: 0,
                    t: None,
                },
                TermFile {
                    re: "1".into(),
                    im: None,
                    u_mod: "1".into(),
                    u_turn: Some("1/2".into()),
                    v_mod: None,
                    v_turn: None,
                    s: 0,
                    t: None,
                },
            ],
        };
        let h = f.to_exppoly().unwrap();
        let back = ExpPolyFile::from_exppoly(&h);
        let h2 = back.to_exppoly().unwrap();
        assert_eq!(h.terms, h2.terms);
    }

    #[test]
    fn model_file_parses() {
        let json = r#"{
            "i": 1,
            "points": [
                {"id": "eta1", "dim": 1},
                {"id": "eta2", "dim": 1},
                {"id": "p", "dim": 0}
            ],
            "closure": [["p", "eta1"], ["p", "eta2"]],
            "spaces": {"eta1": 1, "eta2": 1, "p": 0},
            "cones": {
                "eta1": {"rays": [["1"]]},
                "eta2": {"rays": [["1"]]}
            },
            "pairings": {"eta1": ["1"], "eta2": ["1"], "p": []}
        }"#;
        let mf: ModelFile = serde_json::from_str(json).unwrap();
        let model = mf.to_model().unwrap();
        assert!(model.validate().valid());
        assert_eq!(model.point_count(), 3);
    }
}
