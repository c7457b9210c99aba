//! Three-valued results shared by every checker.
//!
//! `Yes` and `No` carry re-checkable evidence; `Unknown` only says why the
//! search gave up. Aggregation over several sub-checks lets a single `No`
//! dominate, then `Unknown`, then `Yes`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    BudgetExhausted,
    UndecidedGroup,
    DimensionBound,
}

/// Assignment tables of a map of simplicial sets, one vector per dimension.
pub type Assignment = Vec<Vec<usize>>;

/// Object map plus per-pair hom assignments of a functor, without its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorData {
    pub ob_map: Vec<usize>,
    /// Indexed by `a * n + b` for source objects `a`, `b` (n = source object count).
    pub hom_maps: Vec<Assignment>,
}

/// A commutative square of simplicial-set maps against a fixed pair (i, p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsetSquare {
    pub top: Assignment,
    pub bottom: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsetLift {
    /// Horn or boundary `(n, k)` when the lift came from a fibration check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horn: Option<(usize, usize)>,
    pub square: SsetSquare,
    pub diagonal: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSquare {
    pub top: FunctorData,
    pub bottom: FunctorData,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorLift {
    pub generator: usize,
    pub square: FunctorSquare,
    pub diagonal: FunctorData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Coset enumeration closed with a single coset.
    TrivialGroup { cosets: usize },
    /// Nonzero abelianization: free rank plus torsion coefficients.
    Abelianization { free_rank: usize, torsion: Vec<i64> },
    /// Coset enumeration closed with more than one coset.
    FiniteGroup { order: usize },
    Contractible { degrees_checked: usize },
    Components { count: usize },
    ReducedHomology { degree: usize, betti: usize, torsion: Vec<i64> },
    Pi1 { vertex: usize, detail: Box<Evidence> },
    Isomorphism,
    BothContractible,
    HomologyIsomorphism { components: usize, degrees_checked: usize },
    Pi0Mismatch { injective: bool, surjective: bool },
    HomologyMismatch { degree: usize, injective: bool, surjective: bool },
    SsetLifts { checked_dim: Option<usize>, lifts: Vec<SsetLift> },
    SsetUnliftable { horn: Option<(usize, usize)>, square: SsetSquare },
    HomPair { source: usize, target: usize, inner: Box<Evidence> },
    Equivalence { iso_choices: Vec<(usize, usize)> },
    NotEquivalence { reason: String },
    DkEquivalence { pairs_checked: usize },
    Fibration { checked_dim: usize, f2_instances: usize },
    F2Failure { a1: usize, b: usize, e: usize },
    FunctorLifts { squares: usize, lifts: Vec<FunctorLift> },
    UnliftableSquare { generator: usize, square: FunctorSquare },
    Lift { diagonal: FunctorData },
    NoLift { nodes: usize },
    A2Candidate { free_generators: usize },
    A2Failure { condition: String, detail: String },
    Route { name: String, inner: Box<Evidence> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Yes(Evidence),
    No(Evidence),
    Unknown(UnknownReason),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn is_definite(&self) -> bool {
        !self.is_unknown()
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            Verdict::Yes(e) | Verdict::No(e) => Some(e),
            Verdict::Unknown(_) => None,
        }
    }

    /// Ordered reduction: the first `No` wins, else the first `Unknown`, else
    /// `Yes` built from the collected evidence.
    pub fn all<I, F>(items: I, on_yes: F) -> Verdict
    where
        I: IntoIterator<Item = Verdict>,
        F: FnOnce(Vec<Evidence>) -> Evidence,
    {
        let mut unknown = None;
        let mut yes = Vec::new();
        for v in items {
            match v {
                Verdict::No(e) => return Verdict::No(e),
                Verdict::Unknown(r) => {
                    if unknown.is_none() {
                        unknown = Some(r);
                    }
                }
                Verdict::Yes(e) => yes.push(e),
            }
        }
        match unknown {
            Some(r) => Verdict::Unknown(r),
            None => Verdict::Yes(on_yes(yes)),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown(_) => "unknown",
        }
    }

    /// `{"verdict": ..., "qualifier": ..., "witness": ...}`
    pub fn to_document(&self) -> Value {
        match self {
            Verdict::Yes(e) | Verdict::No(e) => json!({
                "verdict": self.label(),
                "qualifier": qualifier(e),
                "witness": serde_json::to_value(e).expect("evidence serializes"),
            }),
            Verdict::Unknown(r) => json!({
                "verdict": "unknown",
                "qualifier": { "reason": r },
                "witness": Value::Null,
            }),
        }
    }
}

fn qualifier(e: &Evidence) -> Value {
    match e {
        Evidence::SsetLifts { checked_dim: Some(d), .. } => json!({ "checked_dim": d }),
        Evidence::Fibration { checked_dim, .. } => json!({ "checked_dim": checked_dim }),
        Evidence::Contractible { degrees_checked } => json!({ "degrees_checked": degrees_checked }),
        Evidence::HomologyIsomorphism { degrees_checked, .. } => {
            json!({ "degrees_checked": degrees_checked })
        }
        Evidence::Route { name, .. } => json!({ "route": name }),
        _ => json!({}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_dominates_unknown_dominates_yes() {
        let yes = Verdict::Yes(Evidence::Isomorphism);
        let no = Verdict::No(Evidence::Components { count: 2 });
        let unk = Verdict::Unknown(UnknownReason::UndecidedGroup);
        let v = Verdict::all([yes.clone(), unk.clone(), no.clone()], |_| Evidence::Isomorphism);
        assert_eq!(v, no);
        let v = Verdict::all([yes.clone(), unk.clone()], |_| Evidence::Isomorphism);
        assert_eq!(v, unk);
        let v = Verdict::all([yes.clone(), yes], |e| {
            assert_eq!(e.len(), 2);
            Evidence::Isomorphism
        });
        assert!(v.is_yes());
    }

    #[test]
    fn document_shape() {
        let doc = Verdict::Unknown(UnknownReason::BudgetExhausted).to_document();
        assert_eq!(doc["verdict"], "unknown");
        assert_eq!(doc["qualifier"]["reason"], "budget-exhausted");
        let doc = Verdict::Yes(Evidence::Contractible { degrees_checked: 3 }).to_document();
        assert_eq!(doc["qualifier"]["degrees_checked"], 3);
        assert_eq!(doc["witness"]["type"], "contractible");
    }
}
