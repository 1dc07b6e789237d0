//! JSON manifests.
//!
//! ```json
//! {
//!   "kind": "seifert",
//!   "body": { "base_orientable": true, "genus": 0, "boundary_count": 1,
//!             "exceptional": [[2, 1], [3, -1]] },
//!   "classes": { "primitive": ["-3", "2", "1", "6"] },
//!   "options": { "assert_hypothesis": false,
//!                "sampling": { "t_min": "1/2", "t_max": "2", "steps": 16 } }
//! }
//! ```
//!
//! `kind` is one of `seifert`, `graph`, `s1cw`. A class is either a list of
//! values in generator order or an object keyed by generator name, with
//! omitted generators set to zero. Values are integers or `"num/den"`
//! strings; floats are rejected. An `s1cw` manifest has the single
//! generator `k`, the value of the class on an orbit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use fibertorsion::rational::{self, Rat};
use fibertorsion::{
    AbelianPresentation, AssembledManifold, CohomologyClass, PlumbingGraph, S1CWComplex, SeifertInvariants,
};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};

/// An exact rational, written as a JSON integer or a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rat);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
            Float(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Exact(rational::int(n))),
            Raw::Str(s) => rational::parse(&s).map(Exact).map_err(serde::de::Error::custom),
            Raw::Float(x) => Err(serde::de::Error::custom(format!(
                "{x} is a float; write exact values as integers or \"num/den\" strings"
            ))),
        }
    }
}

impl From<Rat> for Exact {
    fn from(r: Rat) -> Self {
        Exact(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Values(Vec<Exact>),
    ByName(BTreeMap<String, Exact>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub t_min: Exact,
    pub t_max: Exact,
    pub steps: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub assert_hypothesis: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Seifert,
    Graph,
    S1cw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct S1cwBody {
    /// `cells[n]` lists the isotropy orders of the `n`-cells.
    cells: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Seifert(SeifertInvariants),
    Graph(PlumbingGraph),
    S1cw(S1CWComplex),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    kind: Kind,
    body: serde_json::Value,
    #[serde(default)]
    classes: BTreeMap<String, ClassSpec>,
    #[serde(default)]
    options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub model: Model,
    pub classes: BTreeMap<String, ClassSpec>,
    pub options: Options,
}

/// The group a class lives on, plus whatever was built to get it.
pub enum Resolved {
    Seifert(SeifertInvariants, AbelianPresentation),
    Graph(Box<AssembledManifold>),
    S1cw(S1CWComplex),
}

impl Resolved {
    pub fn generators(&self) -> Vec<String> {
        match self {
            Resolved::Seifert(_, p) => p.generators().to_vec(),
            Resolved::Graph(a) => a.presentation().generators().to_vec(),
            Resolved::S1cw(_) => vec!["k".into()],
        }
    }

    pub fn presentation(&self) -> Option<&AbelianPresentation> {
        match self {
            Resolved::Seifert(_, p) => Some(p),
            Resolved::Graph(a) => Some(a.presentation()),
            Resolved::S1cw(_) => None,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Manifest(e.to_string())
}

impl Model {
    pub fn kind(&self) -> Kind {
        match self {
            Model::Seifert(_) => Kind::Seifert,
            Model::Graph(_) => Kind::Graph,
            Model::S1cw(_) => Kind::S1cw,
        }
    }

    /// Validates and builds the homology presentation.
    pub fn resolve(&self) -> Result<Resolved> {
        Ok(match self {
            Model::Seifert(s) => Resolved::Seifert(s.clone(), s.abelianized_presentation()?),
            Model::Graph(g) => Resolved::Graph(Box::new(g.assemble()?)),
            Model::S1cw(x) => Resolved::S1cw(x.clone()),
        })
    }
}

impl Manifest {
    pub fn new(model: Model) -> Self {
        Manifest {
            model,
            classes: BTreeMap::new(),
            options: Options::default(),
        }
    }

    pub fn with_class(mut self, name: &str, values: impl IntoIterator<Item = Rat>) -> Self {
        self.classes
            .insert(name.into(), ClassSpec::Values(values.into_iter().map(Exact).collect()));
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawManifest = serde_json::from_str(text).map_err(invalid)?;
        let model = match raw.kind {
            Kind::Seifert => {
                let s: SeifertInvariants = serde_json::from_value(raw.body).map_err(invalid)?;
                s.validate()?;
                Model::Seifert(s)
            }
            Kind::Graph => {
                let g: PlumbingGraph = serde_json::from_value(raw.body).map_err(invalid)?;
                g.validate()?;
                Model::Graph(g)
            }
            Kind::S1cw => {
                let b: S1cwBody = serde_json::from_value(raw.body).map_err(invalid)?;
                Model::S1cw(S1CWComplex::from_dimension_lists(&b.cells)?)
            }
        };
        if let Some(s) = &raw.options.sampling {
            check_grid(&s.t_min.0, &s.t_max.0, s.steps)?;
        }
        Ok(Manifest {
            model,
            classes: raw.classes,
            options: raw.options,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let body = match &self.model {
            Model::Seifert(s) => serde_json::to_value(s),
            Model::Graph(g) => serde_json::to_value(g),
            Model::S1cw(x) => serde_json::to_value(S1cwBody {
                cells: x.to_dimension_lists(),
            }),
        }
        .expect("models serialize to JSON");
        let raw = RawManifest {
            kind: self.model.kind(),
            body,
            classes: self.classes.clone(),
            options: self.options.clone(),
        };
        let mut out = serde_json::to_string_pretty(&raw).expect("manifests serialize to JSON");
        out.push('\n');
        out
    }

    /// Looks up a named class and checks it against the relations.
    pub fn class(&self, resolved: &Resolved, name: &str) -> Result<CohomologyClass> {
        let values = self.class_values(resolved, name)?;
        match resolved.presentation() {
            Some(p) => Ok(CohomologyClass::new(p, values)?),
            None => Err(CliError::Usage(format!(
                "{:?} manifests have no homology presentation",
                self.model.kind()
            ))),
        }
    }

    /// Values of a named class in generator order, checked against the
    /// relations when there is a presentation.
    pub fn class_values(&self, resolved: &Resolved, name: &str) -> Result<Vec<Rat>> {
        let spec = self.classes.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.classes.keys().map(String::as_str).collect();
            CliError::Usage(format!("no class named {name:?}; the manifest defines {known:?}"))
        })?;
        let generators = resolved.generators();
        let values = match spec {
            ClassSpec::Values(v) => {
                if v.len() != generators.len() {
                    return Err(CliError::Manifest(format!(
                        "class {name:?} has {} values but there are {} generators ({})",
                        v.len(),
                        generators.len(),
                        generators.join(", ")
                    )));
                }
                v.iter().map(|x| x.0.clone()).collect()
            }
            ClassSpec::ByName(m) => {
                let mut values = vec![Rat::zero(); generators.len()];
                for (g, x) in m {
                    let i = generators.iter().position(|n| n == g).ok_or_else(|| {
                        CliError::Manifest(format!(
                            "class {name:?}: unknown generator {g:?}; generators are {}",
                            generators.join(", ")
                        ))
                    })?;
                    values[i] = x.0.clone();
                }
                values
            }
        };
        let Some(p) = resolved.presentation() else {
            return Ok(values);
        };
        let violated = p.violated_relations(&values)?;
        if !violated.is_empty() {
            let mut msg = format!("class {name:?} does not vanish on the relations:");
            for r in violated {
                let _ = write!(
                    msg,
                    "\n  relation {r}: {} = {}",
                    relation_text(p, r),
                    rational::format(&evaluate(p, r, &values))
                );
            }
            return Err(CliError::Manifest(msg));
        }
        Ok(values)
    }
}

fn relation_text(p: &AbelianPresentation, r: usize) -> String {
    let mut out = String::new();
    for (c, g) in p.relations().row(r).iter().zip(p.generators()) {
        if c.is_zero() {
            continue;
        }
        let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if abs != 1.into() {
            let _ = write!(out, "{abs}");
        }
        out.push_str(g);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn evaluate(p: &AbelianPresentation, r: usize, values: &[Rat]) -> Rat {
    p.relations()
        .row(r)
        .iter()
        .zip(values)
        .map(|(c, v)| Rat::from_integer(c.clone()) * v)
        .sum()
}

pub fn check_grid(t_min: &Rat, t_max: &Rat, steps: usize) -> Result<()> {
    if !t_min.is_positive() || t_min >= t_max {
        return Err(CliError::Usage(format!(
            "sampling needs 0 < t_min < t_max, got t_min = {}, t_max = {}",
            rational::format(t_min),
            rational::format(t_max)
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!("sampling needs at least 2 steps, got {steps}")));
    }
    Ok(())
}
