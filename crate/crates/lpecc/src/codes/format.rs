//! Canonical on-disk representation of codes.
//!
//! A code file is a single JSON object:
//!
//! ```json
//! {
//!   "q": 2, "n": 8, "t": 1, "w": 3, "e": 1, "mode": "lpecc",
//!   "codesets": [[[1,2],[3,4]], ...]
//! }
//! ```
//!
//! Codewords are sorted support lists of 1-based positions for q = 2, and
//! sorted `[position, value]` pairs otherwise. Codewords are sorted
//! lexicographically within each codeset; codeset order is meaningful and
//! preserved. Writing is canonical: parsing a file and writing it back
//! normalizes it, and two equal codes always serialize byte-identically.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Codeset, LpeccCode, LpeccParams, Mode, QaryCodeword};

/// File form of one codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordRepr {
    /// Sorted 1-based support positions (binary codes).
    Support(Vec<u32>),
    /// Sorted (1-based position, value) pairs (q > 2).
    Pairs(Vec<(u32, u32)>),
}

pub fn word_to_repr(x: &QaryCodeword) -> WordRepr {
    if x.q() == 2 {
        WordRepr::Support(x.support())
    } else {
        WordRepr::Pairs(x.support_pairs())
    }
}

fn ascending(positions: impl Iterator<Item = u32>) -> bool {
    let mut prev = 0u32;
    for p in positions {
        if p <= prev {
            return false;
        }
        prev = p;
    }
    true
}

pub fn repr_to_word(repr: &WordRepr, q: u32, n: usize) -> Result<QaryCodeword> {
    match repr {
        WordRepr::Support(s) => {
            // an empty list decodes to the zero word; codeset construction rejects it
            if q != 2 && !s.is_empty() {
                return Err(Error::Parse(format!("q={q} codewords must be [position, value] pair lists")));
            }
            if !ascending(s.iter().copied()) {
                return Err(Error::Parse(format!("support {s:?} is not strictly ascending")));
            }
            if q == 2 {
                QaryCodeword::from_support(n, s).map_err(|e| Error::Parse(e.to_string()))
            } else {
                Ok(QaryCodeword::zero(q, n))
            }
        }
        WordRepr::Pairs(p) => {
            if q == 2 && !p.is_empty() {
                return Err(Error::Parse("q=2 codewords must be support lists".into()));
            }
            if !ascending(p.iter().map(|&(pos, _)| pos)) {
                return Err(Error::Parse(format!("positions in {p:?} are not strictly ascending")));
            }
            QaryCodeword::from_pairs(q, n, p).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeFile {
    pub q: u32,
    pub n: usize,
    pub t: usize,
    pub w: usize,
    pub e: usize,
    pub mode: Mode,
    pub codesets: Vec<Vec<WordRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

pub fn to_code_file(code: &LpeccCode, provenance: Option<serde_json::Value>) -> CodeFile {
    let p = code.params();
    CodeFile {
        q: p.q,
        n: p.n,
        t: p.t,
        w: p.w,
        e: p.e,
        mode: p.mode,
        codesets: code
            .codesets()
            .iter()
            .map(|cs| cs.words().iter().map(word_to_repr).collect())
            .collect(),
        provenance,
    }
}

pub fn from_code_file(file: &CodeFile) -> Result<LpeccCode> {
    let params = LpeccParams::new(file.q, file.n, file.t, file.w, file.e, file.mode)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let mut codesets = Vec::with_capacity(file.codesets.len());
    for reprs in &file.codesets {
        let words = reprs
            .iter()
            .map(|r| repr_to_word(r, file.q, file.n))
            .collect::<Result<Vec<_>>>()?;
        codesets.push(Codeset::new(words).map_err(|e| Error::Parse(e.to_string()))?);
    }
    LpeccCode::new(params, codesets).map_err(|e| Error::Parse(e.to_string()))
}

/// Canonical JSON text of a code (pretty-printed, trailing newline).
pub fn code_to_json(code: &LpeccCode, provenance: Option<serde_json::Value>) -> String {
    let mut s = serde_json::to_string_pretty(&to_code_file(code, provenance)).expect("code serializes");
    s.push('\n');
    s
}

pub fn parse_code_json(text: &str) -> Result<(LpeccCode, Option<serde_json::Value>)> {
    let file: CodeFile = serde_json::from_str(text)?;
    let code = from_code_file(&file)?;
    Ok((code, file.provenance))
}

pub fn write_code_file(
    path: &Path,
    code: &LpeccCode,
    provenance: Option<serde_json::Value>,
) -> Result<()> {
    std::fs::write(path, code_to_json(code, provenance))?;
    Ok(())
}

pub fn read_code_file(path: &Path) -> Result<(LpeccCode, Option<serde_json::Value>)> {
    let text = std::fs::read_to_string(path)?;
    parse_code_json(&text)
}
