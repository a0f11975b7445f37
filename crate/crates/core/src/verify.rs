//! Bundled expectation tables and the checks that compare them with fresh
//! computations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cocycles::cocycle_space;
use crate::error::Result;
use crate::homology::{group_order, h2_dual, rack_homology};
use crate::io::{load_group, parse_cocycle, RackSource};
use crate::nichols::{hilbert_series, quadratic_dims, symmetrizer_dims};
use crate::perm::{CycleType, PermGroup, Permutation};
use crate::rack::RackOps;
use crate::thr::{thr_criteria, ThrRack, ThrSpec};
use crate::typed::{is_type_d_class, is_type_d_homogeneous, is_type_m, verify_witness, ClassRack, Status};

pub const HOMOLOGY: &str = include_str!("../expectations/homology.json");
pub const COHOMOLOGY: &str = include_str!("../expectations/cohomology.json");
pub const NICHOLS: &str = include_str!("../expectations/nichols.json");
pub const TYPED: &str = include_str!("../expectations/typed.json");
pub const THR: &str = include_str!("../expectations/thr.json");

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub table: String,
    pub row: String,
    pub quantity: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    fn new(table: &str, row: &str, quantity: &str, expected: impl ToString, observed: impl ToString, pass: bool) -> Check {
        Check {
            table: table.into(),
            row: row.into(),
            quantity: quantity.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(table: &str, row: &str, quantity: &str, expected: T, observed: T) -> Check {
        let pass = expected == observed;
        Check::new(table, row, quantity, format!("{expected:?}"), format!("{observed:?}"), pass)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        VerifyReport { failed: checks.len() - passed, passed, checks }
    }
}

fn class_rack_source(group: &str, class: &str) -> RackSource {
    RackSource::Conj { group: group.into(), class: class.into() }
}

#[derive(Deserialize)]
struct Rows<T> {
    rows: Vec<T>,
}

#[derive(Deserialize)]
struct HomologyRow {
    group: String,
    class: String,
    size: usize,
    betti: usize,
    torsion: Vec<u64>,
}

/// Caps large enough for every bundled homology row.
pub fn table_caps(caps: &Caps) -> Caps {
    Caps { homology_rack: caps.homology_rack.max(128), chain_basis: caps.chain_basis.max(2_000_000), ..caps.clone() }
}

pub fn verify_homology(caps: &Caps) -> Result<Vec<Check>> {
    let rows: Rows<HomologyRow> = serde_json::from_str(HOMOLOGY)?;
    let mut out = Vec::new();
    for r in rows.rows {
        let name = format!("{} {}", r.group, r.class);
        let x = class_rack_source(&r.group, &r.class).build(caps)?;
        out.push(Check::eq("homology", &name, "size", r.size, x.size()));
        let h = rack_homology(&x, 2, caps)?;
        out.push(Check::eq("homology", &name, "H2", (r.betti, r.torsion), (h.betti, h.torsion)));
    }
    Ok(out)
}

#[derive(Deserialize)]
struct CohomologyTable {
    m_values: Vec<u64>,
    rows: Vec<CohomologyRow>,
}

#[derive(Deserialize)]
struct CohomologyRow {
    group: String,
    class: String,
    torsion: Vec<u64>,
    #[serde(default)]
    homology_only: bool,
}

/// Dual form of the cohomology statements, plus `|H²(X, ℤ/m)|` against
/// `|Hom(H₂, ℤ/m)|` on every homology row.
pub fn verify_cohomology(caps: &Caps) -> Result<Vec<Check>> {
    let table: CohomologyTable = serde_json::from_str(COHOMOLOGY)?;
    let homology: Rows<HomologyRow> = serde_json::from_str(HOMOLOGY)?;
    let mut out = Vec::new();
    for r in &table.rows {
        let name = format!("{} {}", r.group, r.class);
        let x = class_rack_source(&r.group, &r.class).build(caps)?;
        let h = rack_homology(&x, 2, caps)?;
        out.push(Check::eq("cohomology", &name, "torsion of H2", r.torsion.clone(), h.torsion.clone()));
        if r.homology_only {
            continue;
        }
        for &m in &table.m_values {
            let dual = h2_dual(&h, m);
            let expected = h2_dual(&crate::homology::HomologyResult { degree: 2, betti: 1, torsion: r.torsion.clone() }, m);
            out.push(Check::eq("cohomology", &name, &format!("Hom(H2, Z/{m})"), expected, dual));
        }
    }
    for r in &homology.rows {
        let name = format!("{} {}", r.group, r.class);
        let x = class_rack_source(&r.group, &r.class).build(caps)?;
        let h = rack_homology(&x, 2, caps)?;
        for &m in &table.m_values {
            let space = cocycle_space(&x, m, caps)?;
            let dual = group_order(&h2_dual(&h, m));
            out.push(Check::eq("cohomology", &name, &format!("|H2(X, Z/{m})|"), dual, space.h2.order()));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Deserialize)]
pub struct NicholsRow {
    pub name: String,
    pub rack: RackSource,
    pub cocycle: String,
    pub total: u64,
    pub top: usize,
    pub relations: usize,
    pub cover_exceeds_at: Option<usize>,
    pub long: bool,
}

pub fn nichols_rows() -> Result<Vec<NicholsRow>> {
    let rows: Rows<NicholsRow> = serde_json::from_str(NICHOLS)?;
    Ok(rows.rows)
}

/// Degrees compared against the symmetrizer.
pub const SYMMETRIZER_DEGREE: usize = 4;

pub fn verify_nichols_row(row: &NicholsRow, caps: &Caps) -> Result<Vec<Check>> {
    let x = row.rack.build(caps)?;
    let q = parse_cocycle(&row.cocycle, &x)?;
    let r = hilbert_series(&x, &q, caps.nichols_degree, caps)?;
    let t = "nichols";
    let mut out = vec![
        Check::eq(t, &row.name, "total", Some(row.total), r.total),
        Check::eq(t, &row.name, "top", Some(row.top), r.top),
        Check::eq(t, &row.name, "relations in degree 2", row.relations, r.quadratic_relations),
    ];
    let sym = symmetrizer_dims(&x, &q, SYMMETRIZER_DEGREE, caps)?;
    let upto = (SYMMETRIZER_DEGREE + 1).min(r.dims.len());
    out.push(Check::eq(t, &row.name, "symmetrizer ranks", sym[..upto].to_vec(), r.dims[..upto].to_vec()));
    if let Some(d) = row.cover_exceeds_at {
        let cover = quadratic_dims(&x, &q, d, caps)?;
        let first = (0..cover.len()).find(|&k| cover[k] > r.dims.get(k).copied().unwrap_or(0));
        out.push(Check::eq(t, &row.name, "quadratic cover first exceeds", Some(d), first));
    }
    Ok(out)
}

pub fn verify_nichols(caps: &Caps, long: bool) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for row in nichols_rows()? {
        if row.long && !long {
            continue;
        }
        out.extend(verify_nichols_row(&row, caps)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
struct TypedTable {
    symmetric_degrees: Vec<usize>,
    odd_exceptions: Vec<String>,
    even_exceptions: Vec<String>,
    singles: Vec<TypedSingle>,
    m11_not_type_d: Vec<String>,
}

#[derive(Deserialize)]
struct TypedSingle {
    group: String,
    #[serde(default)]
    class: Option<String>,
    #[serde(default)]
    order: Option<u64>,
    status: Status,
    #[serde(default)]
    type_m: Option<bool>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Matches a cycle type against `1^n,2`, `1,p`, `2^2,3` and the like.
pub fn matches_pattern(ty: &CycleType, pattern: &str) -> bool {
    let mut counts = ty.0.clone();
    let mut any_fixed = false;
    for token in pattern.split(',') {
        let (len, mult) = token.split_once('^').unwrap_or((token, "1"));
        if len == "1" && mult == "n" {
            any_fixed = true;
            continue;
        }
        let mult: usize = mult.parse().expect("pattern multiplicity");
        if len == "p" {
            let Some(&p) = counts.keys().find(|&&l| l > 1 && is_prime(l) && counts[&l] == mult) else { return false };
            counts.remove(&p);
            continue;
        }
        let len: usize = len.parse().expect("pattern length");
        if counts.remove(&len) != Some(mult) {
            return false;
        }
    }
    if any_fixed {
        counts.remove(&1);
    }
    counts.is_empty()
}

fn checked_verdict(g: &PermGroup, rep: &Permutation) -> Result<(Status, bool)> {
    let v = is_type_d_class(g, rep)?;
    let ok = match &v.witness {
        Some(w) => verify_witness(&ClassRack::new(g, rep)?, w),
        None => true,
    };
    Ok((v.status, ok))
}

fn push_verdict(out: &mut Vec<Check>, row: &str, expected: Status, g: &PermGroup, rep: &Permutation) -> Result<()> {
    let (status, ok) = checked_verdict(g, rep)?;
    out.push(Check::eq("typed", row, "verdict", expected, status));
    if status == Status::TypeD {
        out.push(Check::eq("typed", row, "witness re-verified", true, ok));
    }
    Ok(())
}

/// Labels classes `8A`, `8B`, … by element order, in representative order.
pub fn class_names(g: &PermGroup) -> Vec<(String, Permutation)> {
    let mut seen = std::collections::BTreeMap::<u64, u8>::new();
    let mut reps = g.class_representatives();
    reps.sort_by_key(|p| p.order());
    reps.into_iter()
        .map(|p| {
            let k = seen.entry(p.order()).or_insert(0);
            let name = format!("{}{}", p.order(), (b'A' + *k) as char);
            *k += 1;
            (name, p)
        })
        .collect()
}

pub fn verify_typed(caps: &Caps) -> Result<Vec<Check>> {
    let table: TypedTable = serde_json::from_str(TYPED)?;
    let mut out = Vec::new();
    for s in &table.singles {
        let g = load_group(&s.group, caps)?;
        let reps: Vec<Permutation> = match (&s.class, s.order) {
            (Some(c), _) => vec![Permutation::parse(c, g.degree())?],
            (None, Some(o)) => g.class_representatives().into_iter().filter(|p| p.order() == o).collect(),
            _ => Vec::new(),
        };
        for rep in reps {
            let row = format!("{} {}", s.group, rep);
            push_verdict(&mut out, &row, s.status, &g, &rep)?;
            if let Some(m) = s.type_m {
                out.push(Check::eq("typed", &row, "type M", m, is_type_m(&ClassRack::new(&g, &rep)?)?));
            }
        }
    }
    for &m in &table.symmetric_degrees {
        for (g, name) in [(crate::perm::symmetric_group(m)?, "S"), (crate::perm::alternating_group(m)?, "A")] {
            for rep in g.class_representatives() {
                if rep.is_identity() {
                    continue;
                }
                let ty = rep.cycle_type();
                let list = if rep.is_even() { &table.even_exceptions } else { &table.odd_exceptions };
                if list.iter().any(|p| matches_pattern(&ty, p)) {
                    continue;
                }
                push_verdict(&mut out, &format!("{name}{m} {ty} {rep}"), Status::TypeD, &g, &rep)?;
            }
        }
    }
    let m11 = crate::perm::mathieu11()?;
    for (name, rep) in class_names(&m11) {
        if rep.is_identity() {
            continue;
        }
        let expected = if table.m11_not_type_d.contains(&name) { Status::NotTypeD } else { Status::TypeD };
        push_verdict(&mut out, &format!("M11 {name}"), expected, &m11, &rep)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Deserialize)]
pub struct ThrRow {
    #[serde(rename = "L")]
    pub group: String,
    pub t: usize,
    pub ell: String,
    /// `TYPE_D`, `NOT_TYPE_D` or `unknown`.
    pub status: String,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub size: Option<usize>,
}

pub fn thr_rows() -> Result<Vec<ThrRow>> {
    let rows: Rows<ThrRow> = serde_json::from_str(THR)?;
    Ok(rows.rows)
}

impl ThrRow {
    pub fn spec(&self, caps: &Caps) -> Result<ThrSpec> {
        let g = Arc::new(load_group(&self.group, caps)?);
        let ell = Permutation::parse(&self.ell, g.degree())?;
        ThrSpec::new(g, self.t, None, ell)
    }

    pub fn name(&self) -> String {
        format!("({}, t={}, {})", self.group, self.t, self.ell)
    }
}

pub fn verify_thr_row(row: &ThrRow, caps: &Caps) -> Result<Vec<Check>> {
    let spec = row.spec(caps)?;
    let v = thr_criteria(&spec, caps)?;
    let name = row.name();
    let t = "thr";
    let mut out = Vec::new();
    if row.status == "unknown" {
        out.push(Check::new(t, &name, "not asserted TYPE_D", "not TYPE_D", v.status, v.status != Status::TypeD));
        return Ok(out);
    }
    let expected: Status = serde_json::from_value(serde_json::Value::String(row.status.clone()))?;
    out.push(Check::eq(t, &name, "verdict", expected, v.status));
    if let Some(m) = &row.method {
        out.push(Check::eq(t, &name, "method", m.as_str(), v.method.as_str()));
    }
    let rack = ThrRack::new(&spec, caps)?;
    if let Some(size) = row.size {
        out.push(Check::eq(t, &name, "size", size, rack.len()));
    }
    if let Some(w) = &v.witness {
        out.push(Check::eq(t, &name, "witness re-verified", true, verify_witness(&rack, w)));
    }
    // Rule-independent scan of the whole rack.
    let generic = is_type_d_homogeneous(&rack, "generic");
    out.push(Check::eq(t, &name, "generic scan", expected, generic.status));
    Ok(out)
}

pub fn verify_thr(caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for row in thr_rows()? {
        out.extend(verify_thr_row(&row, caps)?);
    }
    Ok(out)
}

/// Every bundled table; `long` adds the rows marked long.
pub fn verify_all(caps: &Caps, long: bool) -> Result<VerifyReport> {
    let caps = table_caps(caps);
    let mut checks = verify_homology(&caps)?;
    checks.extend(verify_cohomology(&caps)?);
    checks.extend(verify_typed(&caps)?);
    checks.extend(verify_thr(&caps)?);
    let ncaps = if long { Caps { nichols_dim: caps.nichols_dim.max(200_000), ..caps.clone() } } else { caps.clone() };
    checks.extend(verify_nichols(&ncaps, long)?);
    Ok(VerifyReport::new(checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns() {
        let ty = |s: &str, n: usize| Permutation::parse(s, n).unwrap().cycle_type();
        assert!(matches_pattern(&ty("(0 1)", 6), "1^n,2"));
        assert!(matches_pattern(&ty("(0 1)(2 3 4)", 5), "2,3"));
        assert!(!matches_pattern(&ty("(0 1)(2 3 4)", 6), "2,3"));
        assert!(matches_pattern(&ty("(0 1 2 3 4)", 6), "1,p"));
        assert!(matches_pattern(&ty("(0 1 2 3 4 5 6)", 7), "p"));
        assert!(!matches_pattern(&ty("(0 1 2 3)", 5), "1,p"));
        assert!(matches_pattern(&ty("(0 1)(2 3)", 6), "1^2,2^2"));
    }

    #[test]
    fn tables_parse() {
        assert_eq!(nichols_rows().unwrap().len(), 9);
        assert!(thr_rows().unwrap().iter().any(|r| r.status == "unknown"));
        let _: TypedTable = serde_json::from_str(TYPED).unwrap();
        let _: CohomologyTable = serde_json::from_str(COHOMOLOGY).unwrap();
    }

    #[test]
    fn m11_class_names() {
        let names: Vec<String> = class_names(&crate::perm::mathieu11().unwrap()).into_iter().map(|c| c.0).collect();
        assert_eq!(names, ["1A", "2A", "3A", "4A", "5A", "6A", "8A", "8B", "11A", "11B"]);
    }
}
