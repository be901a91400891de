//! Law reports with self-certifying counterexamples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coded_tripos::{Connective, PredCode, Subset};
use crate::finite_order::FinMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Which case of the inverse-map lemma a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseCase {
    Bijective,
    Surjective,
    Injective,
}

/// The quantifier identities on `Σ`, each checked over its own index context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantIdentity {
    MergeMeet,
    MergeJoin,
    Distributivity,
    JoinMonotone,
    MeetAntitone,
}

/// The code-transfer identities of the extracted algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferIdentity {
    /// Restricting `s′ ⊇ s` to `s′ = s` inside the implication code.
    SupersetCollapse,
    /// The meet code against `∀` along the membership projection.
    MembershipForall,
}

/// A counterexample. Each variant carries enough data to re-evaluate the
/// violation through the public operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Reflexivity {
        sigma: PredCode,
    },
    Transitivity {
        a: PredCode,
        b: PredCode,
        c: PredCode,
    },
    Quotient {
        ctx_size: usize,
        error: String,
    },
    Connective {
        op: Connective,
        sigma: PredCode,
        tau: PredCode,
    },
    Adjunction {
        quantifier: Quantifier,
        map: FinMap,
        sigma: PredCode,
        tau: PredCode,
    },
    Identity {
        quantifier: Quantifier,
        sigma: PredCode,
    },
    Composition {
        quantifier: Quantifier,
        first: FinMap,
        second: FinMap,
        sigma: PredCode,
    },
    /// `∃f(σ ∨̇ σ′)` / `∀f(σ ∧̇ σ′)`, or the unit case when `other` is absent.
    Preservation {
        quantifier: Quantifier,
        map: FinMap,
        sigma: PredCode,
        other: Option<PredCode>,
    },
    Inverse {
        case: InverseCase,
        quantifier: Quantifier,
        map: FinMap,
        code: PredCode,
    },
    BeckChevalley {
        quantifier: Quantifier,
        left: FinMap,
        right: FinMap,
        sigma: PredCode,
    },
    QuantIdentity {
        identity: QuantIdentity,
        point: Option<Vec<u64>>,
    },

    NotALattice {
        a: usize,
        b: usize,
    },
    Variance {
        a: usize,
        a2: usize,
        b: usize,
        b2: usize,
    },
    MeetDistribution {
        a: usize,
        subset: Subset,
    },
    UpwardClosure {
        a: usize,
        b: usize,
    },
    Combinator {
        name: String,
        value: usize,
    },
    ModusPonens {
        a: usize,
        b: usize,
    },

    Embedding {
        a: Vec<usize>,
        c: Vec<usize>,
    },
    Surjectivity {
        sigma: PredCode,
    },
    Naturality {
        map: FinMap,
        a: Vec<usize>,
    },
    Transfer {
        identity: TransferIdentity,
        point: Option<Vec<u64>>,
    },
    FiberMeet {
        map: FinMap,
        a: Vec<usize>,
    },
    ImplicationTransfer {
        a: Vec<usize>,
        b: Vec<usize>,
    },
    HeytingImplication {
        ctx_size: usize,
        a: Vec<usize>,
        b: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawEntry {
    pub law_id: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub coverage: Coverage,
}

impl LawEntry {
    pub fn pass(law_id: impl Into<String>, coverage: Coverage) -> Self {
        Self {
            law_id: law_id.into(),
            status: Status::Pass,
            witness: None,
            coverage,
        }
    }

    pub fn fail(law_id: impl Into<String>, witness: Witness, coverage: Coverage) -> Self {
        Self {
            law_id: law_id.into(),
            status: Status::Fail,
            witness: Some(witness),
            coverage,
        }
    }

    pub fn skipped(law_id: impl Into<String>, coverage: Coverage) -> Self {
        Self {
            law_id: law_id.into(),
            status: Status::Skipped,
            witness: None,
            coverage,
        }
    }

    /// Pass unless the search produced a witness.
    pub fn from_search(
        law_id: impl Into<String>,
        found: Option<Witness>,
        coverage: Coverage,
    ) -> Self {
        match found {
            Some(w) => Self::fail(law_id, w, coverage),
            None => Self::pass(law_id, coverage),
        }
    }
}

/// An ordered list of law outcomes plus named facts (e.g. classicality).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub status: Status,
    pub entries: Vec<LawEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, serde_json::Value>,
}

impl Default for LawReport {
    fn default() -> Self {
        Self::new()
    }
}

impl LawReport {
    pub fn new() -> Self {
        Self {
            status: Status::Pass,
            entries: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, entry: LawEntry) {
        if entry.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: LawReport) {
        for e in other.entries {
            self.push(e);
        }
        self.facts.extend(other.facts);
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Into<serde_json::Value>) {
        self.facts.insert(key.into(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, law_id: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.law_id == law_id)
    }

    pub fn is_exhaustive(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.coverage == Coverage::Exhaustive)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
