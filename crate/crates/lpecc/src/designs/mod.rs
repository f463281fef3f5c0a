//! Combinatorial designs consumed by the constructions: packings (including
//! BIBDs and planes), frames, and constant-weight codes.

pub mod format;
pub mod generate;

use std::collections::BTreeMap;

use crate::codes::QaryCodeword;
use crate::comb::{binomial, k_subsets, sorted_intersection_size};
use crate::error::{Error, Result};

pub use generate::{affine_plane, brute_max_cwc, brute_max_packing, planar_difference_set, search_frame};

/// A (n, k, lambda) packing of strength r: blocks are k-subsets of 1..=n and
/// every r-subset of points lies in at most lambda blocks. Blocks are stored
/// canonically (each sorted, list sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: usize,
    blocks: Vec<Vec<u32>>,
}

impl Packing {
    pub fn new(n: usize, k: usize, r: usize, lambda: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        if lambda < 1 || r < 1 {
            return Err(Error::Parameter(format!("need lambda >= 1 and r >= 1 (got lambda={lambda}, r={r})")));
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            if let Some(&p) = b.iter().find(|&&p| p == 0 || p as usize > n) {
                return Err(Error::Parameter(format!("point {p} out of range 1..={n}")));
            }
            b.sort_unstable();
            let len = b.len();
            b.dedup();
            if b.len() != len {
                return Err(Error::Parameter("block contains a repeated point".into()));
            }
        }
        blocks.sort();
        Ok(Packing { n, k, r, lambda, blocks })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackingViolation {
    WrongBlockSize { block: Vec<u32> },
    OverCovered { subset: Vec<u32>, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingReport {
    pub valid: bool,
    /// Block count equals C(n,r)/C(k,r) with lambda = 1: every r-subset is
    /// covered exactly once.
    pub steiner: bool,
    pub violation: Option<PackingViolation>,
}

/// Checks block sizes and the r-subset coverage cap; reports the first
/// violation in deterministic order (block order, then subsets lex).
pub fn verify_packing(p: &Packing) -> PackingReport {
    let steiner = |valid: bool| {
        valid && p.lambda == 1 && p.size() as u128 * binomial(p.k as u64, p.r as u64) == binomial(p.n as u64, p.r as u64)
    };
    if let Some(b) = p.blocks.iter().find(|b| b.len() != p.k) {
        return PackingReport {
            valid: false,
            steiner: false,
            violation: Some(PackingViolation::WrongBlockSize { block: b.clone() }),
        };
    }
    let mut coverage: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for b in &p.blocks {
        for sub in k_subsets(b, p.r) {
            *coverage.entry(sub).or_insert(0) += 1;
        }
    }
    if let Some((subset, &count)) = coverage.iter().find(|(_, &c)| c > p.lambda) {
        return PackingReport {
            valid: false,
            steiner: false,
            violation: Some(PackingViolation::OverCovered { subset: subset.clone(), count }),
        };
    }
    PackingReport { valid: true, steiner: steiner(true), violation: None }
}

/// One holey parallel class: blocks partition the points outside the hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameClass {
    /// 1-based index into the group list.
    pub hole: usize,
    pub blocks: Vec<Vec<u32>>,
}

/// A k-frame of type g^m: a group-divisible design on g*m points whose
/// blocks resolve into holey parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub k: usize,
    pub g: usize,
    pub m: usize,
    groups: Vec<Vec<u32>>,
    classes: Vec<FrameClass>,
}

impl Frame {
    pub fn new(k: usize, g: usize, m: usize, groups: Vec<Vec<u32>>, classes: Vec<FrameClass>) -> Result<Self> {
        let n = g * m;
        if groups.len() != m {
            return Err(Error::Parameter(format!("expected {m} groups, got {}", groups.len())));
        }
        let mut seen = vec![false; n + 1];
        for grp in &groups {
            if grp.len() != g {
                return Err(Error::Parameter(format!("group size {} != g={g}", grp.len())));
            }
            for &p in grp {
                if p == 0 || p as usize > n || seen[p as usize] {
                    return Err(Error::Parameter(format!("groups do not partition 1..={n} (point {p})")));
                }
                seen[p as usize] = true;
            }
        }
        for c in &classes {
            if c.hole == 0 || c.hole > m {
                return Err(Error::Parameter(format!("hole index {} out of range 1..={m}", c.hole)));
            }
            for b in &c.blocks {
                if let Some(&p) = b.iter().find(|&&p| p == 0 || p as usize > n) {
                    return Err(Error::Parameter(format!("point {p} out of range 1..={n}")));
                }
            }
        }
        Ok(Frame { k, g, m, groups, classes })
    }

    pub fn groups(&self) -> &[Vec<u32>] {
        &self.groups
    }

    pub fn classes(&self) -> &[FrameClass] {
        &self.classes
    }

    pub fn points(&self) -> usize {
        self.g * self.m
    }

    fn group_of(&self, p: u32) -> usize {
        // constructor guarantees the groups partition the points
        self.groups.iter().position(|g| g.contains(&p)).expect("point belongs to a group") + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameViolation {
    WrongBlockSize { class: usize, block: Vec<u32> },
    /// A class covers `point` `count` times; the requirement is once for
    /// points outside the hole and zero for hole points.
    ClassCoverage { class: usize, point: u32, count: usize },
    /// Pair coverage across groups and blocks is not "exactly one of the
    /// two": `in_group` says whether the pair shares a group.
    PairCoverage { a: u32, b: u32, in_group: bool, block_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameReport {
    pub valid: bool,
    pub violation: Option<FrameViolation>,
}

/// Checks the group-divisible pair condition and the holey-class partition
/// condition. First violation wins: block shapes, class coverage (class
/// order, point order), then pair coverage (pairs lex).
pub fn verify_frame(f: &Frame) -> FrameReport {
    let fail = |v: FrameViolation| FrameReport { valid: false, violation: Some(v) };
    let n = f.points();

    for (ci, class) in f.classes.iter().enumerate() {
        if let Some(b) = class.blocks.iter().find(|b| b.len() != f.k) {
            return fail(FrameViolation::WrongBlockSize { class: ci, block: b.clone() });
        }
        let mut count = vec![0usize; n + 1];
        for b in &class.blocks {
            for &p in b {
                count[p as usize] += 1;
            }
        }
        let hole = &f.groups[class.hole - 1];
        for p in 1..=n as u32 {
            let expected = if hole.contains(&p) { 0 } else { 1 };
            if count[p as usize] != expected {
                return fail(FrameViolation::ClassCoverage { class: ci, point: p, count: count[p as usize] });
            }
        }
    }

    let mut block_count: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for class in &f.classes {
        for b in &class.blocks {
            for pair in k_subsets(b, 2) {
                *block_count.entry((pair[0], pair[1])).or_insert(0) += 1;
            }
        }
    }
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            let in_group = f.group_of(a) == f.group_of(b);
            let bc = block_count.get(&(a, b)).copied().unwrap_or(0);
            let ok = if in_group { bc == 0 } else { bc == 1 };
            if !ok {
                return fail(FrameViolation::PairCoverage { a, b, in_group, block_count: bc });
            }
        }
    }
    FrameReport { valid: true, violation: None }
}

/// An (n, d, w)_q constant-weight code: all words have weight exactly w.
/// Pairwise distance >= d is the consuming construction's responsibility to
/// check (it never trusts the d field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantWeightCode {
    pub q: u32,
    pub n: usize,
    pub d: usize,
    pub w: usize,
    words: Vec<QaryCodeword>,
}

impl ConstantWeightCode {
    pub fn new(q: u32, n: usize, d: usize, w: usize, mut words: Vec<QaryCodeword>) -> Result<Self> {
        for x in &words {
            if x.q() != q || x.n() != n {
                return Err(Error::Dimension(format!(
                    "word over (q={}, n={}) does not match (q={q}, n={n})",
                    x.q(),
                    x.n()
                )));
            }
            if x.weight() != w {
                return Err(Error::Parameter(format!("word weight {} != w={w}", x.weight())));
            }
        }
        words.sort();
        words.dedup();
        Ok(ConstantWeightCode { q, n, d, w, words })
    }

    pub fn words(&self) -> &[QaryCodeword] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }
}

/// |B1 ∩ B2| for sorted blocks — convenience re-export for construction code.
pub fn block_intersection(a: &[u32], b: &[u32]) -> usize {
    sorted_intersection_size(a, b)
}
