//! Canonical on-disk representation of designs: a JSON tagged union.
//!
//! ```json
//! {"type": "packing", "n": 7, "k": 3, "r": 2, "lambda": 1, "blocks": [[1,2,4], ...]}
//! {"type": "frame", "k": 3, "g": 2, "m": 4, "groups": [[1,2], ...],
//!  "classes": [{"hole": 1, "blocks": [[3,5,7], ...]}, ...]}
//! {"type": "cwc", "q": 2, "n": 7, "d": 3, "w": 3, "words": [[1,2,3], ...]}
//! ```
//!
//! All position lists are strictly ascending; constant-weight codewords use
//! the same encoding as code files. Writing is canonical and diffable.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codes::format::{repr_to_word, word_to_repr, WordRepr};
use crate::error::{Error, Result};

use super::{ConstantWeightCode, Frame, FrameClass, Packing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Design {
    Packing(Packing),
    Frame(Frame),
    Cwc(ConstantWeightCode),
}

impl Design {
    pub fn kind(&self) -> &'static str {
        match self {
            Design::Packing(_) => "packing",
            Design::Frame(_) => "frame",
            Design::Cwc(_) => "cwc",
        }
    }

    pub fn into_packing(self) -> Result<Packing> {
        match self {
            Design::Packing(p) => Ok(p),
            other => Err(Error::Parameter(format!("expected a packing design file, got {}", other.kind()))),
        }
    }

    pub fn into_frame(self) -> Result<Frame> {
        match self {
            Design::Frame(f) => Ok(f),
            other => Err(Error::Parameter(format!("expected a frame design file, got {}", other.kind()))),
        }
    }

    pub fn into_cwc(self) -> Result<ConstantWeightCode> {
        match self {
            Design::Cwc(c) => Ok(c),
            other => Err(Error::Parameter(format!("expected a cwc design file, got {}", other.kind()))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassFile {
    pub hole: usize,
    pub blocks: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DesignFile {
    Packing { n: usize, k: usize, r: usize, lambda: usize, blocks: Vec<Vec<u32>> },
    Frame { k: usize, g: usize, m: usize, groups: Vec<Vec<u32>>, classes: Vec<ClassFile> },
    Cwc { q: u32, n: usize, d: usize, w: usize, words: Vec<WordRepr> },
}

fn strictly_ascending(list: &[u32]) -> bool {
    list.windows(2).all(|w| w[0] < w[1])
}

fn checked_blocks(blocks: &[Vec<u32>], what: &str) -> Result<Vec<Vec<u32>>> {
    for b in blocks {
        if !strictly_ascending(b) {
            return Err(Error::Parse(format!("{what} {b:?} is not strictly ascending")));
        }
    }
    Ok(blocks.to_vec())
}

pub fn to_design_file(design: &Design) -> DesignFile {
    match design {
        Design::Packing(p) => DesignFile::Packing {
            n: p.n,
            k: p.k,
            r: p.r,
            lambda: p.lambda,
            blocks: p.blocks().to_vec(),
        },
        Design::Frame(f) => DesignFile::Frame {
            k: f.k,
            g: f.g,
            m: f.m,
            groups: f.groups().to_vec(),
            classes: f
                .classes()
                .iter()
                .map(|c| ClassFile { hole: c.hole, blocks: c.blocks.clone() })
                .collect(),
        },
        Design::Cwc(c) => DesignFile::Cwc {
            q: c.q,
            n: c.n,
            d: c.d,
            w: c.w,
            words: c.words().iter().map(word_to_repr).collect(),
        },
    }
}

pub fn from_design_file(file: &DesignFile) -> Result<Design> {
    match file {
        DesignFile::Packing { n, k, r, lambda, blocks } => {
            let blocks = checked_blocks(blocks, "block")?;
            let p = Packing::new(*n, *k, *r, *lambda, blocks).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Design::Packing(p))
        }
        DesignFile::Frame { k, g, m, groups, classes } => {
            let groups = checked_blocks(groups, "group")?;
            let classes = classes
                .iter()
                .map(|c| Ok(FrameClass { hole: c.hole, blocks: checked_blocks(&c.blocks, "block")? }))
                .collect::<Result<Vec<_>>>()?;
            let f = Frame::new(*k, *g, *m, groups, classes).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Design::Frame(f))
        }
        DesignFile::Cwc { q, n, d, w, words } => {
            let words = words
                .iter()
                .map(|r| repr_to_word(r, *q, *n))
                .collect::<Result<Vec<_>>>()?;
            let c = ConstantWeightCode::new(*q, *n, *d, *w, words).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Design::Cwc(c))
        }
    }
}

/// Canonical JSON text of a design (pretty-printed, trailing newline).
pub fn design_to_json(design: &Design) -> String {
    let mut s = serde_json::to_string_pretty(&to_design_file(design)).expect("design serializes");
    s.push('\n');
    s
}

pub fn parse_design_json(text: &str) -> Result<Design> {
    let file: DesignFile = serde_json::from_str(text)?;
    from_design_file(&file)
}

pub fn write_design_file(path: &Path, design: &Design) -> Result<()> {
    std::fs::write(path, design_to_json(design))?;
    Ok(())
}

pub fn read_design_file(path: &Path) -> Result<Design> {
    let text = std::fs::read_to_string(path)?;
    parse_design_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::QaryCodeword;
    use crate::designs::{brute_max_cwc, search_frame};

    #[test]
    fn packing_round_trip_is_canonical() {
        let p = crate::designs::affine_plane(3).unwrap();
        let text = design_to_json(&Design::Packing(p.clone()));
        let parsed = parse_design_json(&text).unwrap();
        assert_eq!(parsed, Design::Packing(p));
        assert_eq!(design_to_json(&parsed), text);
    }

    #[test]
    fn frame_round_trip_is_canonical() {
        let f = search_frame(3, 2, 4).unwrap();
        let text = design_to_json(&Design::Frame(f.clone()));
        let parsed = parse_design_json(&text).unwrap();
        assert_eq!(parsed, Design::Frame(f));
        assert_eq!(design_to_json(&parsed), text);
    }

    #[test]
    fn cwc_round_trip_keeps_codeword_encoding() {
        let c = brute_max_cwc(3, 4, 3, 2).unwrap();
        let text = design_to_json(&Design::Cwc(c.clone()));
        assert!(text.contains("\"type\": \"cwc\""));
        let parsed = parse_design_json(&text).unwrap();
        assert_eq!(parsed, Design::Cwc(c));
    }

    #[test]
    fn tag_field_selects_the_variant() {
        let text = r#"{"type":"packing","n":4,"k":2,"r":2,"lambda":1,"blocks":[[1,2],[3,4]]}"#;
        let d = parse_design_json(text).unwrap();
        assert_eq!(d.kind(), "packing");
        assert!(d.into_packing().is_ok());
    }

    #[test]
    fn wrong_variant_extraction_fails() {
        let text = r#"{"type":"packing","n":4,"k":2,"r":2,"lambda":1,"blocks":[[1,2]]}"#;
        let d = parse_design_json(text).unwrap();
        assert!(matches!(d.into_frame(), Err(Error::Parameter(_))));
    }

    #[test]
    fn malformed_design_files_are_parse_errors() {
        // unknown tag
        assert!(matches!(parse_design_json(r#"{"type":"bibd","n":4}"#), Err(Error::Parse(_))));
        // unsorted block
        assert!(matches!(
            parse_design_json(r#"{"type":"packing","n":4,"k":2,"r":2,"lambda":1,"blocks":[[2,1]]}"#),
            Err(Error::Parse(_))
        ));
        // point out of range
        assert!(matches!(
            parse_design_json(r#"{"type":"packing","n":4,"k":2,"r":2,"lambda":1,"blocks":[[1,9]]}"#),
            Err(Error::Parse(_))
        ));
        // groups do not partition the points
        assert!(matches!(
            parse_design_json(r#"{"type":"frame","k":3,"g":2,"m":2,"groups":[[1,2],[2,3]],"classes":[]}"#),
            Err(Error::Parse(_))
        ));
        // cwc word with the wrong weight
        assert!(matches!(
            parse_design_json(r#"{"type":"cwc","q":2,"n":4,"d":2,"w":2,"words":[[1,2,3]]}"#),
            Err(Error::Parse(_))
        ));
        // truncated
        assert!(matches!(parse_design_json(r#"{"type":"cwc""#), Err(Error::Parse(_))));
    }

    #[test]
    fn qary_cwc_words_use_pair_encoding() {
        let words = vec![
            QaryCodeword::from_pairs(3, 4, &[(1, 1), (2, 2)]).unwrap(),
            QaryCodeword::from_pairs(3, 4, &[(3, 1), (4, 1)]).unwrap(),
        ];
        let c = ConstantWeightCode::new(3, 4, 4, 2, words).unwrap();
        let text = design_to_json(&Design::Cwc(c));
        assert!(text.contains('['));
        let parsed = parse_design_json(&text).unwrap().into_cwc().unwrap();
        assert_eq!(parsed.size(), 2);
    }
}
