//! JSON structure-constant files.
//!
//! ```json
//! {
//!   "field": "Q",                        // or {"p": 5}
//!   "dim": 2,
//!   "basis": ["1", "g"],
//!   "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]],
//!   "unit": ["1", "0"],
//!   "comult": [[0, 0, 0, "1"], [1, 1, 1, "1"]],   // [i, j, k, c]: Δ(e_i) ∋ c e_j⊗e_k
//!   "counit": ["1", "1"],
//!   "antipode": [["1", "0"], ["0", "1"]]           // rows of S
//! }
//! ```
//!
//! `comult`, `counit` and `antipode` are present together (a Hopf algebra) or
//! absent together (an algebra). Optional blocks:
//!
//! - `"actions"`: `[{"side": "left"|"right", "space_dim": d, "entries": [[i, j, k, c], ...]}]`,
//!   actions of the file's algebra: `e_i·m_j ∋ c m_k` (left) or `m_j·e_i ∋ c m_k` (right);
//! - `"coactions"`: `[{"side": ..., "space_dim": d, "entries": [[j, a, k, c], ...]}]`,
//!   coactions of the file's coalgebra: `m_j ↦ c e_a⊗m_k` (left) or `c m_k⊗e_a` (right);
//! - `"module"`: a Hopf bimodule over the dual of the file's Hopf algebra,
//!   `{"dim": d, "left_action", "right_action", "left_coaction", "right_coaction"}`
//!   with entries as above, indexed by the dual basis `e_i*`.
//!
//! Scalars are strings (`"3"`, `"-5/7"`, residues mod p). Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::actions::{ActionData, CoactionData, Side};
use crate::algebra::{Algebra, AlgebraData, CoalgebraData, HopfAlgebraData, StructureTable};
use crate::bimodule::HopfBimoduleData;
use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::scalar::{FieldSpec, Scalar};

pub type Entry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Name(String),
    Prime { p: u32 },
}

impl FieldJson {
    pub fn spec(&self) -> Result<FieldSpec> {
        match self {
            FieldJson::Name(s) if s == "Q" => Ok(FieldSpec::Rationals),
            FieldJson::Name(s) => Err(Error::Parse(format!("unknown field {s:?} (expected \"Q\" or {{\"p\": prime}})"))),
            FieldJson::Prime { p } => FieldSpec::prime(*p),
        }
    }

    pub fn from_spec(f: FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => FieldJson::Name("Q".into()),
            FieldSpec::PrimeField(p) => FieldJson::Prime { p },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideJson {
    Left,
    Right,
}

impl From<SideJson> for Side {
    fn from(s: SideJson) -> Side {
        match s {
            SideJson::Left => Side::Left,
            SideJson::Right => Side::Right,
        }
    }
}

impl From<Side> for SideJson {
    fn from(s: Side) -> SideJson {
        match s {
            Side::Left => SideJson::Left,
            Side::Right => SideJson::Right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub side: SideJson,
    pub space_dim: usize,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub dim: usize,
    pub left_action: Vec<Entry>,
    pub right_action: Vec<Entry>,
    pub left_coaction: Vec<Entry>,
    pub right_coaction: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub field: FieldJson,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Entry>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<ActionJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coactions: Option<Vec<ActionJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleJson>,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn entries<'a>(t: impl Iterator<Item = (usize, usize, usize, &'a Scalar)>) -> Vec<Entry> {
    t.map(|(i, j, k, c)| (i, j, k, c.to_string())).collect()
}

fn parse_vec(field: &FieldSpec, v: &[String], len: usize, what: &str) -> Result<Vec<Scalar>> {
    if v.len() != len {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {len}", v.len())));
    }
    v.iter().map(|s| field.parse(s)).collect()
}

fn parse_entries(field: &FieldSpec, e: &[Entry]) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    e.iter().map(|(i, j, k, s)| Ok((*i, *j, *k, field.parse(s)?))).collect()
}

fn parse_action(field: FieldSpec, side: Side, actor_dim: usize, space_dim: usize, e: &[Entry]) -> Result<ActionData> {
    let table = StructureTable::from_triples(actor_dim, space_dim, space_dim, parse_entries(&field, e)?)?;
    ActionData::new(side, field, table)
}

fn parse_coaction(field: FieldSpec, side: Side, coalgebra_dim: usize, space_dim: usize, e: &[Entry]) -> Result<CoactionData> {
    CoactionData::new(side, field, coalgebra_dim, space_dim, parse_entries(&field, e)?)
}

fn action_entries(a: &ActionData) -> Vec<Entry> {
    entries(a.table.triples())
}

fn coaction_entries(c: &CoactionData) -> Vec<Entry> {
    entries(c.triples())
}

impl HopfFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.spec()
    }

    pub fn from_algebra(a: &AlgebraData) -> Self {
        HopfFile {
            field: FieldJson::from_spec(a.field),
            dim: a.dim(),
            basis: a.labels.clone(),
            mult: entries(a.mult.triples()),
            unit: strings(&a.unit),
            comult: None,
            counit: None,
            antipode: None,
            actions: None,
            coactions: None,
            module: None,
        }
    }

    pub fn from_hopf(h: &HopfAlgebraData) -> Self {
        let mut f = HopfFile::from_algebra(&h.algebra);
        let comult = h
            .coalgebra
            .comult
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.iter().map(move |(j, k, c)| (i, *j, *k, c.to_string())))
            .collect();
        f.comult = Some(comult);
        f.counit = Some(strings(&h.coalgebra.counit));
        f.antipode = Some(h.antipode.rows().map(strings).collect());
        f
    }

    pub fn with_module(mut self, m: &HopfBimoduleData) -> Self {
        self.module = Some(ModuleJson {
            dim: m.dim(),
            left_action: action_entries(&m.left_act),
            right_action: action_entries(&m.right_act),
            left_coaction: coaction_entries(&m.left_co),
            right_coaction: coaction_entries(&m.right_co),
        });
        self
    }

    pub fn with_actions(mut self, acts: &[ActionData]) -> Self {
        self.actions = Some(
            acts.iter()
                .map(|a| ActionJson { side: a.side.into(), space_dim: a.space_dim(), entries: action_entries(a) })
                .collect(),
        );
        self
    }

    pub fn with_coactions(mut self, cos: &[CoactionData]) -> Self {
        self.coactions = Some(
            cos.iter()
                .map(|c| ActionJson { side: c.side.into(), space_dim: c.space_dim, entries: coaction_entries(c) })
                .collect(),
        );
        self
    }

    /// Checks dimensions and indices; does not check any axiom.
    pub fn algebra(&self) -> Result<AlgebraData> {
        let field = self.field_spec()?;
        let n = self.dim;
        if n == 0 {
            return Err(Error::InvalidParameter("dim must be positive".into()));
        }
        if self.basis.len() != n {
            return Err(Error::DimensionMismatch(format!("{} basis labels for dim {n}", self.basis.len())));
        }
        let mult = StructureTable::from_triples(n, n, n, parse_entries(&field, &self.mult)?)?;
        let unit = parse_vec(&field, &self.unit, n, "unit")?;
        AlgebraData::new(field, self.basis.clone(), mult, unit)
    }

    pub fn is_hopf(&self) -> bool {
        self.comult.is_some() || self.counit.is_some() || self.antipode.is_some()
    }

    /// The Hopf algebra, if the file carries coalgebra data; axioms are not checked.
    pub fn hopf(&self) -> Result<Option<HopfAlgebraData>> {
        let (comult, counit, antipode) = match (&self.comult, &self.counit, &self.antipode) {
            (None, None, None) => return Ok(None),
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(Error::Parse("comult, counit and antipode must be given together".into())),
        };
        let algebra = self.algebra()?;
        let field = algebra.field;
        let n = self.dim;
        let triples = parse_entries(&field, comult)?;
        let counit = parse_vec(&field, counit, n, "counit")?;
        let coalgebra = CoalgebraData::new(field, self.basis.clone(), triples, counit)?;
        if antipode.len() != n {
            return Err(Error::DimensionMismatch(format!("antipode has {} rows, expected {n}", antipode.len())));
        }
        let rows = antipode
            .iter()
            .enumerate()
            .map(|(i, r)| parse_vec(&field, r, n, &format!("antipode row {i}")))
            .collect::<Result<Vec<_>>>()?;
        let antipode = LinearMap::from_rows(field, rows)?;
        HopfAlgebraData::new(algebra, coalgebra, antipode).map(Some)
    }

    pub fn require_hopf(&self) -> Result<HopfAlgebraData> {
        self.hopf()?.ok_or_else(|| Error::Parse("file has no comult/counit/antipode".into()))
    }

    pub fn actions(&self) -> Result<Vec<ActionData>> {
        let field = self.field_spec()?;
        self.actions
            .iter()
            .flatten()
            .map(|a| parse_action(field, a.side.into(), self.dim, a.space_dim, &a.entries))
            .collect()
    }

    pub fn coactions(&self) -> Result<Vec<CoactionData>> {
        let field = self.field_spec()?;
        self.coactions
            .iter()
            .flatten()
            .map(|c| parse_coaction(field, c.side.into(), self.dim, c.space_dim, &c.entries))
            .collect()
    }

    /// The Hopf bimodule block; axioms are not checked.
    pub fn module(&self) -> Result<Option<HopfBimoduleData>> {
        let Some(m) = &self.module else { return Ok(None) };
        let field = self.field_spec()?;
        let n = self.dim;
        HopfBimoduleData::new(
            parse_action(field, Side::Left, n, m.dim, &m.left_action)?,
            parse_action(field, Side::Right, n, m.dim, &m.right_action)?,
            parse_coaction(field, Side::Left, n, m.dim, &m.left_coaction)?,
            parse_coaction(field, Side::Right, n, m.dim, &m.right_coaction)?,
        )
        .map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{example_bimodule, ExampleKind};
    use crate::catalog::{catalog_hopf, CatalogSpec};

    fn cat(s: &str) -> HopfAlgebraData {
        catalog_hopf(&CatalogSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn hopf_round_trip() {
        for s in ["cyclic:2", "sweedler4", "taft:3:7", "dual_cyclic:3@5"] {
            let h = cat(s);
            let text = HopfFile::from_hopf(&h).to_json();
            let back = HopfFile::parse(&text).unwrap().require_hopf().unwrap();
            assert!(back.same_structure(&h), "{s}");
            assert_eq!(HopfFile::from_hopf(&back).to_json(), text);
        }
    }

    #[test]
    fn cyclic2_literal() {
        let text = r#"{
            "field": "Q", "dim": 2, "basis": ["1", "g"],
            "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]],
            "unit": ["1", "0"],
            "comult": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
            "counit": ["1", "1"],
            "antipode": [["1", "0"], ["0", "1"]]
        }"#;
        let h = HopfFile::parse(text).unwrap().require_hopf().unwrap();
        assert!(h.same_structure(&cat("cyclic:2")));
    }

    #[test]
    fn prime_field_and_fractions() {
        let text = r#"{"field": {"p": 7}, "dim": 1, "basis": ["1"], "mult": [[0, 0, 0, "1/3"]], "unit": ["3"]}"#;
        let a = HopfFile::parse(text).unwrap().algebra().unwrap();
        assert_eq!(a.field, FieldSpec::PrimeField(7));
        assert_eq!(a.mult.get(0, 0), &vec![(0, FieldSpec::PrimeField(7).from_i64(5))]);
    }

    #[test]
    fn rejects_bad_input() {
        let base = r#"{"field": "Q", "dim": 1, "basis": ["1"], "mult": [[0, 0, 0, "1"]], "unit": ["1"]"#;
        assert!(HopfFile::parse(&format!("{base}}}")).unwrap().algebra().is_ok());
        assert!(matches!(HopfFile::parse(&format!("{base}, \"extra\": 1}}")), Err(Error::Parse(_))));
        let bad_index = base.replace("[[0, 0, 0", "[[0, 0, 3");
        assert!(matches!(HopfFile::parse(&format!("{bad_index}}}")).unwrap().algebra(), Err(Error::IndexOutOfRange(_))));
        let bad_scalar = base.replace("\"unit\": [\"1\"]", "\"unit\": [\"x\"]");
        assert!(HopfFile::parse(&format!("{bad_scalar}}}")).unwrap().algebra().is_err());
        let bad_field = base.replace("\"Q\"", "{\"p\": 8}");
        assert!(matches!(HopfFile::parse(&format!("{bad_field}}}")).unwrap().algebra(), Err(Error::InvalidField(_))));
        let partial = format!("{base}, \"counit\": [\"1\"]}}");
        assert!(HopfFile::parse(&partial).unwrap().hopf().is_err());
    }

    #[test]
    fn module_and_action_blocks_round_trip() {
        let h = cat("sweedler4");
        let m = example_bimodule(&h, ExampleKind::Free(2)).unwrap();
        let (l, r) = crate::actions::regular_actions(&h);
        let file = HopfFile::from_hopf(&h).with_module(&m).with_actions(&[l.clone(), r.clone()]).with_coactions(std::slice::from_ref(&m.left_co));
        let back = HopfFile::parse(&file.to_json()).unwrap();
        assert_eq!(back.module().unwrap().unwrap(), m);
        assert_eq!(back.actions().unwrap(), vec![l, r]);
        assert_eq!(back.coactions().unwrap(), vec![m.left_co.clone()]);
    }

    #[test]
    fn materialized_algebra_round_trip() {
        let ctx = std::sync::Arc::new(crate::actions::HopfContext::new(&cat("cyclic:2")).unwrap());
        let y = crate::crossed::build_xyz(&ctx, crate::crossed::Which::Y).unwrap().materialize(64).unwrap();
        let back = HopfFile::parse(&HopfFile::from_algebra(&y).to_json()).unwrap().algebra().unwrap();
        assert_eq!(back, y);
    }
}
