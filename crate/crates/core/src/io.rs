//! JSON file formats for groups, racks, cocycles and twisted homogeneous
//! rack specifications.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cocycles::{chi_cocycle, ScalarCocycle};
use crate::error::{Error, Result};
use crate::perm::{alternating_group, mathieu11, matrix_group_to_perm, psl2, symmetric_group};
use crate::perm::{Action, Field, FqMatrix, GroupAutomorphism, PermGroup, Permutation};
use crate::rack::{affine, from_conjugacy_class, AffineSpec, Rack, RackFile};
use crate::thr::{build_thr, ThrSpec};

/// `{ "degree": n, "generators": ["(0 1)(2 3)", …] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// `{ "n": 2, "q": 5, "generators": [[[0,4],[1,0]]], "action": "projective" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroupFile {
    pub n: usize,
    pub q: u64,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default = "default_action")]
    pub action: Action,
}

fn default_action() -> Action {
    Action::Projective
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Perm(GroupFile),
    Matrix(MatrixGroupFile),
    Named(String),
}

impl GroupFile {
    pub fn to_group(&self, caps: &Caps) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::parse(g, self.degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate_with_degree(self.degree, &gens, caps.group_elements)
    }
}

impl MatrixGroupFile {
    pub fn to_group(&self, caps: &Caps) -> Result<PermGroup> {
        let f = Field::new(self.q)?;
        let mats = self.generators.iter().map(|m| FqMatrix::from_rows(&f, m)).collect::<Result<Vec<_>>>()?;
        let gens = matrix_group_to_perm(&f, self.n, &mats, self.action, caps.matrix_points)?;
        PermGroup::generate(&gens, caps.group_elements)
    }
}

/// Built-in groups: `S<m>`, `A<m>`, `M11`, `PSL2(<q>)`.
pub fn named_group(name: &str, caps: &Caps) -> Result<PermGroup> {
    let name = name.trim();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("unknown group {name:?}")));
    if name.eq_ignore_ascii_case("M11") {
        return mathieu11();
    }
    if let Some(q) = name.strip_prefix("PSL2(").and_then(|r| r.strip_suffix(')')) {
        return psl2(num(q)? as u64, caps.matrix_points);
    }
    if let Some(m) = name.strip_prefix('S') {
        return symmetric_group(num(m)?);
    }
    if let Some(m) = name.strip_prefix('A') {
        return alternating_group(num(m)?);
    }
    Err(Error::Parse(format!("unknown group {name:?}")))
}

impl GroupSource {
    pub fn to_group(&self, caps: &Caps) -> Result<PermGroup> {
        match self {
            GroupSource::Perm(g) => g.to_group(caps),
            GroupSource::Matrix(m) => m.to_group(caps),
            GroupSource::Named(n) => named_group(n, caps),
        }
    }
}

/// A group given by a file path or a built-in name.
pub fn load_group(arg: &str, caps: &Caps) -> Result<PermGroup> {
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg)?;
        let src: GroupSource = serde_json::from_str(&text)?;
        src.to_group(caps)
    } else {
        named_group(arg, caps)
    }
}

pub fn load_rack(path: &str) -> Result<Rack> {
    let file: RackFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Rack::from_file(file)
}

/// `{ "rack": <rack file>, "m": 2, "exponents": [[…]] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleFile {
    pub rack: RackFile,
    pub m: u64,
    pub exponents: Vec<Vec<u64>>,
}

impl CocycleFile {
    pub fn load(&self) -> Result<(Rack, ScalarCocycle)> {
        let rack = Rack::from_file(self.rack.clone())?;
        let q = ScalarCocycle::new(self.m, self.exponents.clone())?;
        if q.size() != rack.size() {
            return Err(Error::DegreeMismatch(q.size(), rack.size()));
        }
        Ok((rack, q))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaSpec {
    Named(String),
    Conjugator { conjugator: String },
}

/// `{ "L": <group>, "t": 2, "theta": "id" | {"conjugator": "(0 1)"}, "ell": "(0 1 2 3 4)" }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThrSpecFile {
    #[serde(rename = "L")]
    pub group: GroupSource,
    pub t: usize,
    #[serde(default = "default_theta")]
    pub theta: ThetaSpec,
    pub ell: String,
}

fn default_theta() -> ThetaSpec {
    ThetaSpec::Named("id".into())
}

impl ThrSpecFile {
    pub fn to_spec(&self, caps: &Caps) -> Result<ThrSpec> {
        let group = Arc::new(self.group.to_group(caps)?);
        let theta = match &self.theta {
            ThetaSpec::Named(s) if s == "id" => None,
            ThetaSpec::Named(s) => return Err(Error::Parse(format!("unknown automorphism {s:?}"))),
            ThetaSpec::Conjugator { conjugator } => {
                let t = Permutation::parse(conjugator, group.degree())?;
                Some(GroupAutomorphism::from_conjugator(group.clone(), &t)?)
            }
        };
        let ell = Permutation::parse(&self.ell, group.degree())?;
        ThrSpec::new(group, self.t, theta, ell)
    }
}

/// A rack described by how to build it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RackSource {
    Conj { group: String, class: String },
    Affine(AffineSpec),
    Thr(ThrSpecFile),
    File(String),
}

impl RackSource {
    pub fn build(&self, caps: &Caps) -> Result<Rack> {
        match self {
            RackSource::Conj { group, class } => {
                let g = load_group(group, caps)?;
                let x = Permutation::parse(class, g.degree())?;
                from_conjugacy_class(&g, &x, caps)
            }
            RackSource::Affine(spec) => affine(spec, caps),
            RackSource::Thr(spec) => build_thr(&spec.to_spec(caps)?, caps),
            RackSource::File(path) => load_rack(path),
        }
    }
}

/// Parses `const:-1`, `const:e/m`, `chi` or a cocycle file path.
pub fn parse_cocycle(arg: &str, x: &Rack) -> Result<ScalarCocycle> {
    let n = x.size();
    if arg == "chi" {
        let degree = x
            .labels()
            .iter()
            .map(|l| Permutation::parse_infer(l).map(|p| p.degree()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        return chi_cocycle(x, degree);
    }
    if let Some(v) = arg.strip_prefix("const:") {
        let bad = || Error::Parse(format!("bad constant cocycle {arg:?}"));
        if v == "-1" {
            return Ok(ScalarCocycle::constant(n, 2, 1));
        }
        let (e, m) = v.split_once('/').ok_or_else(bad)?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        let e: i64 = e.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        return Ok(ScalarCocycle::constant(n, m, e.rem_euclid(m as i64) as u64));
    }
    let file: CocycleFile = serde_json::from_str(&std::fs::read_to_string(arg)?)?;
    let (rack, q) = file.load()?;
    if rack.table() != x.table() {
        return Err(Error::invalid("cocycle file belongs to a different rack"));
    }
    Ok(q)
}
