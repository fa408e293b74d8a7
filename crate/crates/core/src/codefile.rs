//! JSON code files.
//!
//! ```json
//! {"type":"css","q":2,"n":7,"c1":[[1,0,0,0,1,1,0]],"c2":[]}
//! {"type":"stab","q":2,"n":5,"generators":[[1,0,0,1,0,0,1,1,0,0]]}
//! ```
//!
//! Rows are canonicalized on load; stabilizer rows are `2n` long in `(x | z)`
//! order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codesearch::{IsotropicCode, NestedPair, WitnessCode};
use crate::error::{Error, Result};
use crate::galois::{PrimeField, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeFile {
    Css {
        q: u64,
        n: usize,
        c1: Vec<Vec<u64>>,
        c2: Vec<Vec<u64>>,
    },
    Stab {
        q: u64,
        n: usize,
        generators: Vec<Vec<u64>>,
    },
}

fn to_rows(field: PrimeField, len: usize, rows: &[Vec<u64>], name: &str) -> Result<Subspace> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != len {
            return Err(Error::InputShape(format!(
                "{name} row has length {}, expected {len}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().find(|&&e| e >= field.order()) {
            return Err(Error::InputShape(format!(
                "{name} entry {bad} is not below q = {}",
                field.order()
            )));
        }
        out.push(row.iter().map(|&e| e as u8).collect());
    }
    Subspace::span(field, len, out)
}

fn from_rows(s: &Subspace) -> Vec<Vec<u64>> {
    s.basis()
        .iter()
        .map(|r| r.iter().map(|&e| e as u64).collect())
        .collect()
}

impl CodeFile {
    pub fn into_code(self) -> Result<WitnessCode> {
        match self {
            CodeFile::Css { q, n, c1, c2 } => {
                let field = PrimeField::new(q)?;
                let c1 = to_rows(field, n, &c1, "c1")?;
                let c2 = to_rows(field, n, &c2, "c2")?;
                Ok(WitnessCode::Css(NestedPair::new(c1, c2)?))
            }
            CodeFile::Stab { q, n, generators } => {
                let field = PrimeField::new(q)?;
                let c = to_rows(field, 2 * n, &generators, "generators")?;
                Ok(WitnessCode::Stab(IsotropicCode::new(c)?))
            }
        }
    }

    pub fn from_code(code: &WitnessCode) -> Self {
        match code {
            WitnessCode::Css(pair) => CodeFile::Css {
                q: pair.field().order(),
                n: pair.n(),
                c1: from_rows(pair.c1()),
                c2: from_rows(pair.c2()),
            },
            WitnessCode::Stab(code) => CodeFile::Stab {
                q: code.field().order(),
                n: code.n(),
                generators: from_rows(code.stabilizer()),
            },
        }
    }
}

pub fn parse_code(text: &str) -> Result<WitnessCode> {
    serde_json::from_str::<CodeFile>(text)
        .map_err(|e| Error::Parse(e.to_string()))?
        .into_code()
}

pub fn load_code(path: &Path) -> Result<WitnessCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_code(&text)
}

pub fn code_to_json(code: &WitnessCode) -> String {
    serde_json::to_string(&CodeFile::from_code(code)).expect("plain data serializes")
}
