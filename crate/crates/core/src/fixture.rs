//! JSON fixtures: a `kind` discriminator, a `name`, and the table payload.
//! Subsets, filters and separators are integer bitmasks.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coded_tripos::{b4, ch2, ch3, CodedTripos, TriposError, TriposTables};
use crate::finite_order::{lattice_structure, FinPoset};
use crate::implicative::{AlgebraTables, ImpAlgebra, ImpError};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid tripos: {0}")]
    Tripos(#[from] TriposError),
    #[error("invalid algebra: {0}")]
    Algebra(#[from] ImpError),
    #[error("expected a {expected} fixture, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum Payload {
    Tripos(TriposTables),
    Algebra(AlgebraTables),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(flatten)]
    pub payload: Payload,
}

/// A fixture after structural validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loaded {
    Tripos(CodedTripos),
    Algebra(ImpAlgebra),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Tripos(_) => "tripos",
            Loaded::Algebra(_) => "algebra",
        }
    }

    pub fn into_tripos(self) -> Result<CodedTripos, FixtureError> {
        match self {
            Loaded::Tripos(t) => Ok(t),
            other => Err(FixtureError::WrongKind {
                expected: "tripos",
                found: other.kind(),
            }),
        }
    }

    pub fn into_algebra(self) -> Result<ImpAlgebra, FixtureError> {
        match self {
            Loaded::Algebra(a) => Ok(a),
            other => Err(FixtureError::WrongKind {
                expected: "algebra",
                found: other.kind(),
            }),
        }
    }
}

impl Fixture {
    pub fn tripos(name: impl Into<String>, t: &CodedTripos) -> Self {
        Self {
            name: name.into(),
            payload: Payload::Tripos(t.tables()),
        }
    }

    pub fn algebra(name: impl Into<String>, a: &ImpAlgebra) -> Self {
        Self {
            name: name.into(),
            payload: Payload::Algebra(a.tables()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FixtureError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FixtureError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| FixtureError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixtures serialize")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), FixtureError> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|source| FixtureError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Range and shape checks only; no laws.
    pub fn validate(&self) -> Result<Loaded, FixtureError> {
        Ok(match &self.payload {
            Payload::Tripos(t) => Loaded::Tripos(CodedTripos::try_from(t.clone())?),
            Payload::Algebra(a) => Loaded::Algebra(ImpAlgebra::try_from(a.clone())?),
        })
    }
}

/// The bundled fixtures: the forcing presentations of the 2-chain, the
/// 3-chain and the four-element Boolean algebra, and the 2- and 3-chain as
/// implicative algebras with separator `{⊤}`.
pub fn standard_fixtures() -> Vec<Fixture> {
    let chain = |n| ImpAlgebra::heyting(&lattice_structure(&FinPoset::chain(n)).expect("chain"));
    vec![
        Fixture::tripos("ch2", &ch2()),
        Fixture::tripos("ch3", &ch3()),
        Fixture::tripos("b4", &b4()),
        Fixture::algebra("chain2", &chain(2)),
        Fixture::algebra("chain3", &chain(3)),
    ]
}
