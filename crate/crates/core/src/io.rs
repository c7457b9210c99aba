//! Self-describing JSON documents, tagged by `"kind"` and validated on parse.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::FiniteCategory;
use crate::error::{Error, Result};
use crate::model::free::GeneratorMarking;
use crate::model::generators::Generator;
use crate::model::lifting::LiftingProblem;
use crate::scat::{SFunctor, SimplicialCategory};
use crate::sset::{SSetMap, SimplicialSet};

/// Two functors with a common target, `f: B → D` and `h: C → D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cospan {
    pub f: SFunctor,
    pub h: SFunctor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedFunctor {
    pub functor: SFunctor,
    pub marking: GeneratorMarking,
}

/// Input of the H construction: a start category and a functor out of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildInput {
    pub start: Arc<SimplicialCategory>,
    pub target: SFunctor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    SimplicialSet(SimplicialSet),
    SsetMap(SSetMap),
    FiniteCategory(FiniteCategory),
    SimplicialCategory(SimplicialCategory),
    Functor(SFunctor),
    LiftingProblem(LiftingProblem),
    Cospan(Cospan),
    GeneratorSet { generators: Vec<Generator> },
    MarkedFunctor(MarkedFunctor),
    BuildInput(BuildInput),
}

fn check_sset(x: &SimplicialSet, at: &str) -> Result<()> {
    let v = x.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Schema(format!("{at}: {}", Error::InvalidSimplicialSet(v))))
    }
}

fn check_map(m: &SSetMap, at: &str) -> Result<()> {
    check_sset(m.source(), &format!("{at}.source"))?;
    check_sset(m.target(), &format!("{at}.target"))?;
    m.validate().map_err(|e| Error::Schema(format!("{at}: {e}")))
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SimplicialSet(_) => "simplicial_set",
            Document::SsetMap(_) => "sset_map",
            Document::FiniteCategory(_) => "finite_category",
            Document::SimplicialCategory(_) => "simplicial_category",
            Document::Functor(_) => "functor",
            Document::LiftingProblem(_) => "lifting_problem",
            Document::Cospan(_) => "cospan",
            Document::GeneratorSet { .. } => "generator_set",
            Document::MarkedFunctor(_) => "marked_functor",
            Document::BuildInput(_) => "build_input",
        }
    }

    /// Checks that are not already enforced while deserializing.
    pub fn validate(&self) -> Result<()> {
        let wrap = |at: &str, r: Result<()>| r.map_err(|e| Error::Schema(format!("{at}: {e}")));
        match self {
            Document::SimplicialSet(x) => check_sset(x, "$"),
            Document::SsetMap(m) => check_map(m, "$"),
            Document::FiniteCategory(_) | Document::SimplicialCategory(_) | Document::Functor(_) => Ok(()),
            Document::LiftingProblem(p) => wrap("$", p.check()),
            Document::Cospan(c) => {
                if c.f.target() != c.h.target() {
                    return Err(Error::Schema("$.h: target differs from the target of $.f".into()));
                }
                Ok(())
            }
            Document::GeneratorSet { generators } => {
                for (i, g) in generators.iter().enumerate() {
                    let d = g.functor.source().dim_bound();
                    let expected = g.attachment.functor(d).map_err(|e| Error::Schema(format!("$.generators[{i}]: {e}")))?;
                    if expected != g.functor {
                        return Err(Error::Schema(format!("$.generators[{i}].functor: does not match its attachment")));
                    }
                }
                Ok(())
            }
            Document::MarkedFunctor(m) => wrap("$.marking", m.marking.validate(m.functor.target())),
            Document::BuildInput(b) => {
                if b.target.source() != &b.start {
                    return Err(Error::Schema("$.target: source differs from $.start".into()));
                }
                Ok(())
            }
        }
    }
}

/// Parses and validates one document. Errors carry a line/column or a `$`-path.
pub fn parse(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

/// Pretty JSON with a trailing newline; field order is fixed, so output is reproducible.
pub fn to_string(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
