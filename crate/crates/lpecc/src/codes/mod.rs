//! Data model and verifiers for low-power error-correcting cooling codes.
//!
//! A code over n wires is a list of codesets P_1..P_b of q-ary codewords.
//! Validity means three properties:
//!
//!   A(t): for every t-set T of hot wires and every codeset, some codeword's
//!         support avoids T;
//!   B(w): every codeword has weight <= w (or exactly w in constant-weight
//!         mode);
//!   C(e): codewords from different codesets are at Hamming distance
//!         >= 2e+1.
//!
//! Codesets of a valid code are pairwise disjoint (C forces it); the
//! constructor deliberately does not enforce that so `verify_code` can
//! report violations found in files instead of refusing to load them.

pub mod format;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::comb::{binomial, k_subsets, sorted_disjoint};
use crate::error::{Error, Result};

pub use format::WordRepr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lpecc,
    Cpecc,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Lpecc => write!(f, "lpecc"),
            Mode::Cpecc => write!(f, "cpecc"),
        }
    }
}

/// A word over {0..q-1} of fixed length n. Positions are 1-based in every
/// external representation; `entries` is indexed 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QaryCodeword {
    q: u32,
    entries: Vec<u32>,
}

impl QaryCodeword {
    pub fn new(q: u32, entries: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Parameter(format!("alphabet size q={q} must be >= 2")));
        }
        if let Some(bad) = entries.iter().find(|&&v| v >= q) {
            return Err(Error::Parameter(format!("entry {bad} out of range for q={q}")));
        }
        Ok(QaryCodeword { q, entries })
    }

    pub fn zero(q: u32, n: usize) -> Self {
        QaryCodeword { q, entries: vec![0; n] }
    }

    /// Binary word with the given 1-based support.
    pub fn from_support(n: usize, support: &[u32]) -> Result<Self> {
        let mut entries = vec![0u32; n];
        for &p in support {
            if p == 0 || p as usize > n {
                return Err(Error::Parameter(format!("position {p} out of range 1..={n}")));
            }
            entries[p as usize - 1] = 1;
        }
        Ok(QaryCodeword { q: 2, entries })
    }

    /// Word with the given (1-based position, nonzero value) pairs.
    pub fn from_pairs(q: u32, n: usize, pairs: &[(u32, u32)]) -> Result<Self> {
        let mut entries = vec![0u32; n];
        for &(p, v) in pairs {
            if p == 0 || p as usize > n {
                return Err(Error::Parameter(format!("position {p} out of range 1..={n}")));
            }
            if v == 0 || v >= q {
                return Err(Error::Parameter(format!("value {v} out of range 1..={}", q - 1)));
            }
            entries[p as usize - 1] = v;
        }
        QaryCodeword::new(q, entries)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&v| v != 0).count()
    }

    /// 1-based positions of nonzero entries, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// (1-based position, value) for each nonzero entry, ascending.
    pub fn support_pairs(&self) -> Vec<(u32, u32)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u32 + 1, v))
            .collect()
    }

    /// x^S: keep entries at the 1-based positions in `keep`, zero the rest.
    pub fn restrict(&self, keep: &[u32]) -> Self {
        let keep: BTreeSet<u32> = keep.iter().copied().collect();
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &v)| if keep.contains(&(i as u32 + 1)) { v } else { 0 })
            .collect();
        QaryCodeword { q: self.q, entries }
    }
}

// Canonical order: lexicographic on the (position, value) support sequence,
// with a strict prefix sorting first. For q = 2 this is lexicographic order
// of support lists, which is also the order of the file representation.
impl Ord for QaryCodeword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support_pairs().cmp(&other.support_pairs())
    }
}

impl PartialOrd for QaryCodeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of positions where x and y differ. Errors unless both words share
/// the same length and alphabet.
pub fn hamming_distance(x: &QaryCodeword, y: &QaryCodeword) -> Result<usize> {
    if x.n() != y.n() {
        return Err(Error::Dimension(format!("word lengths {} and {} differ", x.n(), y.n())));
    }
    if x.q() != y.q() {
        return Err(Error::Dimension(format!("alphabets q={} and q={} differ", x.q(), y.q())));
    }
    Ok(x.entries.iter().zip(&y.entries).filter(|(a, b)| a != b).count())
}

/// A nonempty set of nonzero codewords, stored sorted and deduplicated.
///
/// The zero word is excluded: a codeword must power at least one wire,
/// so codeset members are nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeset {
    words: Vec<QaryCodeword>,
}

impl Codeset {
    pub fn new(mut words: Vec<QaryCodeword>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Parameter("codeset must be nonempty".into()));
        }
        if words.iter().any(|x| x.weight() == 0) {
            return Err(Error::Parameter("the zero codeword cannot belong to a codeset".into()));
        }
        let (q, n) = (words[0].q(), words[0].n());
        if let Some(bad) = words.iter().find(|x| x.q() != q || x.n() != n) {
            return Err(Error::Dimension(format!(
                "codeset mixes (q={q}, n={n}) with (q={}, n={})",
                bad.q(),
                bad.n()
            )));
        }
        words.sort();
        words.dedup();
        Ok(Codeset { words })
    }

    pub fn words(&self) -> &[QaryCodeword] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, x: &QaryCodeword) -> bool {
        self.words.binary_search(x).is_ok()
    }

    /// Some codeword's support avoids every position in `hot` (sorted).
    pub fn avoids(&self, hot: &[u32]) -> bool {
        self.words.iter().any(|x| sorted_disjoint(&x.support(), hot))
    }

    /// Supports of all codewords as sorted position lists.
    pub fn supports(&self) -> Vec<Vec<u32>> {
        self.words.iter().map(|x| x.support()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LpeccParams {
    pub q: u32,
    pub n: usize,
    pub t: usize,
    pub w: usize,
    pub e: usize,
    pub mode: Mode,
}

impl LpeccParams {
    pub fn new(q: u32, n: usize, t: usize, w: usize, e: usize, mode: Mode) -> Result<Self> {
        if q < 2 {
            return Err(Error::Parameter(format!("q={q} must be >= 2")));
        }
        if n < 1 {
            return Err(Error::Parameter("n must be >= 1".into()));
        }
        if t < 1 || t > n {
            return Err(Error::Parameter(format!("t={t} must satisfy 1 <= t <= n={n}")));
        }
        if w < 1 || w > n {
            return Err(Error::Parameter(format!("w={w} must satisfy 1 <= w <= n={n}")));
        }
        Ok(LpeccParams { q, n, t, w, e, mode })
    }

    /// Minimum cross-codeset distance required by property C.
    pub fn min_distance(&self) -> usize {
        2 * self.e + 1
    }
}

/// A code: parameters plus an ordered list of codesets. `b() == 0` is a
/// valid degenerate code and passes verification vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpeccCode {
    params: LpeccParams,
    codesets: Vec<Codeset>,
}

impl LpeccCode {
    pub fn new(params: LpeccParams, codesets: Vec<Codeset>) -> Result<Self> {
        for cs in &codesets {
            let x = &cs.words()[0];
            if x.q() != params.q || x.n() != params.n {
                return Err(Error::Dimension(format!(
                    "codeset over (q={}, n={}) does not match parameters (q={}, n={})",
                    x.q(),
                    x.n(),
                    params.q,
                    params.n
                )));
            }
        }
        Ok(LpeccCode { params, codesets })
    }

    pub fn params(&self) -> &LpeccParams {
        &self.params
    }

    pub fn codesets(&self) -> &[Codeset] {
        &self.codesets
    }

    /// Code size b = number of codesets.
    pub fn b(&self) -> usize {
        self.codesets.len()
    }

    /// Same code without codeset `i`.
    pub fn without_codeset(&self, i: usize) -> LpeccCode {
        let mut codesets = self.codesets.clone();
        codesets.remove(i);
        LpeccCode { params: self.params, codesets }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Witness {
    /// A t-set of hot wires no codeword avoids.
    HotWires(Vec<u32>),
    /// A single offending codeword.
    Word(WordRepr),
    /// A cross-codeset pair of codewords.
    WordPair(WordRepr, WordRepr),
    /// A pair of wire positions.
    PositionPair(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Indices (0-based) of the codesets involved.
    pub codesets: Vec<usize>,
    pub witness: Witness,
    pub clause: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl PropertyCheck {
    fn from_violations(violations: Vec<Violation>) -> Self {
        PropertyCheck { passed: violations.is_empty(), violations }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property_a: PropertyCheck,
    pub property_b: PropertyCheck,
    pub property_c: PropertyCheck,
    pub disjointness: PropertyCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characterization: Option<CharacterizationReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn first_violation(&self) -> Option<&Violation> {
        [&self.property_a, &self.property_b, &self.property_c, &self.disjointness]
            .into_iter()
            .flat_map(|check| check.violations.first())
            .next()
    }
}

fn word_repr(x: &QaryCodeword) -> WordRepr {
    format::word_to_repr(x)
}

/// Property A(t): every t-set of hot wires is avoided by some codeword of
/// every codeset. Reports the lexicographically first failing hot set per
/// failing codeset.
pub fn verify_property_a(code: &LpeccCode) -> PropertyCheck {
    let p = code.params();
    let wires: Vec<u32> = (1..=p.n as u32).collect();
    let hot_sets = k_subsets(&wires, p.t);
    let mut violations = Vec::new();
    for (i, cs) in code.codesets().iter().enumerate() {
        if let Some(hot) = hot_sets.iter().find(|hot| !cs.avoids(hot)) {
            violations.push(Violation {
                codesets: vec![i],
                witness: Witness::HotWires(hot.clone()),
                clause: "no codeword in the codeset avoids this hot-wire set".into(),
            });
        }
    }
    PropertyCheck::from_violations(violations)
}

/// Property B(w): weight <= w, or exactly w in constant-weight mode.
pub fn verify_property_b(code: &LpeccCode) -> PropertyCheck {
    let p = code.params();
    let mut violations = Vec::new();
    for (i, cs) in code.codesets().iter().enumerate() {
        for x in cs.words() {
            let bad = match p.mode {
                Mode::Lpecc => x.weight() > p.w,
                Mode::Cpecc => x.weight() != p.w,
            };
            if bad {
                let clause = match p.mode {
                    Mode::Lpecc => format!("codeword weight {} exceeds w={}", x.weight(), p.w),
                    Mode::Cpecc => {
                        format!("codeword weight {} differs from w={} in constant-weight mode", x.weight(), p.w)
                    }
                };
                violations.push(Violation { codesets: vec![i], witness: Witness::Word(word_repr(x)), clause });
            }
        }
    }
    PropertyCheck::from_violations(violations)
}

/// Property C(e): cross-codeset Hamming distance >= 2e+1. One violation per
/// offending codeset pair, carrying the first offending word pair.
pub fn verify_property_c(code: &LpeccCode) -> PropertyCheck {
    let d_min = code.params().min_distance();
    let mut violations = Vec::new();
    let sets = code.codesets();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            'pair: for x in sets[i].words() {
                for y in sets[j].words() {
                    let d = hamming_distance(x, y).expect("codesets share dimensions");
                    if d < d_min {
                        violations.push(Violation {
                            codesets: vec![i, j],
                            witness: Witness::WordPair(word_repr(x), word_repr(y)),
                            clause: format!("cross-codeset distance {d} < {d_min}"),
                        });
                        break 'pair;
                    }
                }
            }
        }
    }
    PropertyCheck::from_violations(violations)
}

/// Codesets must be pairwise disjoint as sets of codewords. Implied by
/// property C (a shared codeword is a distance-0 pair) but reported
/// separately so edited files fail loudly.
pub fn verify_disjointness(code: &LpeccCode) -> PropertyCheck {
    let sets = code.codesets();
    let mut violations = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if let Some(x) = sets[i].words().iter().find(|x| sets[j].contains(x)) {
                violations.push(Violation {
                    codesets: vec![i, j],
                    witness: Witness::Word(word_repr(x)),
                    clause: "codeword appears in two codesets".into(),
                });
            }
        }
    }
    PropertyCheck::from_violations(violations)
}

/// Full verification: properties A, B, C and codeset disjointness.
pub fn verify_code(code: &LpeccCode) -> VerificationReport {
    let property_a = verify_property_a(code);
    let property_b = verify_property_b(code);
    let property_c = verify_property_c(code);
    let disjointness = verify_disjointness(code);
    let passed = property_a.passed && property_b.passed && property_c.passed && disjointness.passed;
    VerificationReport { property_a, property_b, property_c, disjointness, characterization: None, passed }
}

/// tau(P, r): number of distinct r-subsets of wires covered by at least one
/// codeword support in the codeset.
pub fn tau(cs: &Codeset, r: usize) -> u64 {
    let mut covered: BTreeSet<Vec<u32>> = BTreeSet::new();
    for supp in cs.supports() {
        for sub in k_subsets(&supp, r) {
            covered.insert(sub);
        }
    }
    covered.len() as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    /// Every block size lies in [w-3, w].
    pub block_sizes: PropertyCheck,
    /// No wire pair is covered by blocks of two different codesets.
    pub pair_uniqueness: PropertyCheck,
    /// At most one codeset carries blocks of size <= w-2, and those blocks
    /// meet no block of any other codeset.
    pub small_blocks: PropertyCheck,
    /// Blocks of size w-1 in distinct codesets are disjoint.
    pub w1_disjoint: PropertyCheck,
    pub tau_sum: u64,
    pub pair_budget: u64,
    pub tau_within_budget: bool,
    pub passed: bool,
}

/// Structural characterization of binary codes with e = w-2 and b >= 2:
/// block-size window, per-pair codeset uniqueness, the small-block clause,
/// disjointness of (w-1)-blocks across codesets, and the double-count
/// sum(tau(P_i, 2)) <= C(n, 2).
pub fn check_w_minus_2_structure(code: &LpeccCode) -> Result<CharacterizationReport> {
    let p = code.params();
    if p.q != 2 {
        return Err(Error::Parameter(format!("characterization requires q=2, got q={}", p.q)));
    }
    if p.w < 2 || p.e != p.w - 2 {
        return Err(Error::Parameter(format!("characterization requires e = w-2, got w={}, e={}", p.w, p.e)));
    }
    if code.b() < 2 {
        return Err(Error::Parameter(format!("characterization requires b >= 2, got b={}", code.b())));
    }

    let sets = code.codesets();
    let blocks: Vec<Vec<Vec<u32>>> = sets.iter().map(|cs| cs.supports()).collect();
    let lo = p.w.saturating_sub(3);

    let mut size_violations = Vec::new();
    for (i, cs) in blocks.iter().enumerate() {
        for (k, b) in cs.iter().enumerate() {
            if b.len() < lo || b.len() > p.w {
                size_violations.push(Violation {
                    codesets: vec![i],
                    witness: Witness::Word(word_repr(&sets[i].words()[k])),
                    clause: format!("block size {} outside [{}, {}]", b.len(), lo, p.w),
                });
            }
        }
    }

    // pair -> codesets whose blocks cover it
    let mut coverers: BTreeMap<(u32, u32), BTreeSet<usize>> = BTreeMap::new();
    for (i, cs) in blocks.iter().enumerate() {
        for b in cs {
            for pair in k_subsets(b, 2) {
                coverers.entry((pair[0], pair[1])).or_default().insert(i);
            }
        }
    }
    let mut pair_violations = Vec::new();
    for (&(a, b), who) in &coverers {
        if who.len() > 1 {
            let ids: Vec<usize> = who.iter().copied().collect();
            pair_violations.push(Violation {
                codesets: ids,
                witness: Witness::PositionPair(a, b),
                clause: "wire pair covered by blocks of more than one codeset".into(),
            });
        }
    }

    let mut small_violations = Vec::new();
    let small_owners: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, cs)| cs.iter().any(|b| b.len() + 2 <= p.w))
        .map(|(i, _)| i)
        .collect();
    if small_owners.len() > 1 {
        small_violations.push(Violation {
            codesets: small_owners.clone(),
            witness: Witness::PositionPair(0, 0),
            clause: format!("{} codesets carry blocks of size <= w-2", small_owners.len()),
        });
    }
    for &i in &small_owners {
        for (bi, b) in blocks[i].iter().enumerate() {
            if b.len() + 2 > p.w {
                continue;
            }
            for (j, other) in blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some(cj) = other.iter().position(|c| !sorted_disjoint(b, c)) {
                    small_violations.push(Violation {
                        codesets: vec![i, j],
                        witness: Witness::WordPair(
                            word_repr(&sets[i].words()[bi]),
                            word_repr(&sets[j].words()[cj]),
                        ),
                        clause: "small block meets a block of another codeset".into(),
                    });
                }
            }
        }
    }

    let mut w1_violations = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            'found: for (bi, b) in blocks[i].iter().enumerate() {
                if b.len() + 1 != p.w {
                    continue;
                }
                for (cj, c) in blocks[j].iter().enumerate() {
                    if c.len() + 1 == p.w && !sorted_disjoint(b, c) {
                        w1_violations.push(Violation {
                            codesets: vec![i, j],
                            witness: Witness::WordPair(
                                word_repr(&sets[i].words()[bi]),
                                word_repr(&sets[j].words()[cj]),
                            ),
                            clause: "blocks of size w-1 in distinct codesets intersect".into(),
                        });
                        break 'found;
                    }
                }
            }
        }
    }

    let tau_sum: u64 = sets.iter().map(|cs| tau(cs, 2)).sum();
    let pair_budget = binomial(p.n as u64, 2) as u64;
    let tau_within_budget = tau_sum <= pair_budget;

    let block_sizes = PropertyCheck::from_violations(size_violations);
    let pair_uniqueness = PropertyCheck::from_violations(pair_violations);
    let small_blocks = PropertyCheck::from_violations(small_violations);
    let w1_disjoint = PropertyCheck::from_violations(w1_violations);
    let passed = block_sizes.passed
        && pair_uniqueness.passed
        && small_blocks.passed
        && w1_disjoint.passed
        && tau_within_budget;
    Ok(CharacterizationReport {
        block_sizes,
        pair_uniqueness,
        small_blocks,
        w1_disjoint,
        tau_sum,
        pair_budget,
        tau_within_budget,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(n: usize, support: &[u32]) -> QaryCodeword {
        QaryCodeword::from_support(n, support).unwrap()
    }

    fn binary_code(n: usize, t: usize, w: usize, e: usize, sets: &[&[&[u32]]]) -> LpeccCode {
        let params = LpeccParams::new(2, n, t, w, e, Mode::Lpecc).unwrap();
        let codesets = sets
            .iter()
            .map(|cs| Codeset::new(cs.iter().map(|s| bin(n, s)).collect()).unwrap())
            .collect();
        LpeccCode::new(params, codesets).unwrap()
    }

    #[test]
    fn hamming_distance_counts_disagreements() {
        let x = QaryCodeword::new(3, vec![1, 1, 1, 0]).unwrap();
        let y = QaryCodeword::new(3, vec![0, 2, 2, 2]).unwrap();
        assert_eq!(hamming_distance(&x, &y).unwrap(), 4);
        assert_eq!(hamming_distance(&x, &x).unwrap(), 0);

        let z = QaryCodeword::new(3, vec![0, 0, 0]).unwrap();
        assert!(matches!(hamming_distance(&x, &z), Err(Error::Dimension(_))));
        let w = QaryCodeword::new(4, vec![0, 0, 0, 0]).unwrap();
        assert!(matches!(hamming_distance(&x, &w), Err(Error::Dimension(_))));
    }

    #[test]
    fn codeword_order_matches_support_lists() {
        let n = 4;
        let a = bin(n, &[1, 3]);
        let b = bin(n, &[2]);
        let c = bin(n, &[1, 3, 4]);
        let zero = QaryCodeword::zero(2, n);
        // [1,3] < [1,3,4] < [2]; the zero word sorts first
        assert!(zero < a && a < c && c < b);
    }

    #[test]
    fn property_a_reports_first_failing_hot_set() {
        let code = binary_code(4, 2, 2, 0, &[&[&[1, 2], &[3, 4]]]);
        let check = verify_property_a(&code);
        assert!(!check.passed);
        assert_eq!(check.violations.len(), 1);
        assert_eq!(check.violations[0].codesets, vec![0]);
        assert_eq!(check.violations[0].witness, Witness::HotWires(vec![1, 3]));
    }

    #[test]
    fn codesets_reject_the_zero_word() {
        let words = vec![QaryCodeword::zero(2, 5), bin(5, &[1, 2])];
        assert!(matches!(Codeset::new(words), Err(Error::Parameter(_))));
        assert!(matches!(
            Codeset::new(vec![QaryCodeword::zero(3, 4)]),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn property_b_modes_differ_on_light_words() {
        let params = LpeccParams::new(2, 4, 1, 2, 0, Mode::Cpecc).unwrap();
        let cs = Codeset::new(vec![bin(4, &[1]), bin(4, &[3, 4])]).unwrap();
        let code = LpeccCode::new(params, vec![cs]).unwrap();
        let check = verify_property_b(&code);
        assert!(!check.passed); // weight 1 != 2 in constant-weight mode
        assert_eq!(check.violations.len(), 1);

        let relaxed = binary_code(4, 1, 2, 0, &[&[&[1], &[3, 4]]]);
        assert!(verify_property_b(&relaxed).passed);

        let heavy = binary_code(4, 1, 2, 0, &[&[&[1, 2, 3]]]);
        assert!(!verify_property_b(&heavy).passed);
    }

    #[test]
    fn property_c_thresholds_on_cross_distance() {
        // supports {1,2} vs {2,3}: distance 2
        let ok = binary_code(4, 1, 2, 0, &[&[&[1, 2]], &[&[2, 3]]]);
        assert!(verify_property_c(&ok).passed);

        let tight = binary_code(4, 1, 2, 1, &[&[&[1, 2]], &[&[2, 3]]]);
        let check = verify_property_c(&tight);
        assert!(!check.passed); // needs distance >= 3
        assert_eq!(check.violations[0].codesets, vec![0, 1]);
        assert_eq!(
            check.violations[0].witness,
            Witness::WordPair(WordRepr::Support(vec![1, 2]), WordRepr::Support(vec![2, 3]))
        );

        let far = binary_code(6, 1, 2, 1, &[&[&[1, 2]], &[&[4, 5]]]);
        assert!(verify_property_c(&far).passed);
    }

    #[test]
    fn shared_codeword_fails_disjointness_and_c() {
        let code = binary_code(4, 1, 2, 0, &[&[&[1, 2]], &[&[1, 2], &[3, 4]]]);
        assert!(!verify_disjointness(&code).passed);
        assert!(!verify_property_c(&code).passed); // distance 0 pair
        assert!(!verify_code(&code).passed);
    }

    #[test]
    fn empty_code_passes_vacuously() {
        let params = LpeccParams::new(2, 4, 1, 2, 1, Mode::Lpecc).unwrap();
        let code = LpeccCode::new(params, vec![]).unwrap();
        let report = verify_code(&code);
        assert!(report.passed);
        assert_eq!(code.b(), 0);
    }

    #[test]
    fn tau_counts_distinct_covered_pairs() {
        let cs = Codeset::new(vec![bin(5, &[1, 2, 3]), bin(5, &[3, 4, 5])]).unwrap();
        assert_eq!(tau(&cs, 2), 6); // {12,13,23,34,35,45}
        assert_eq!(tau(&cs, 1), 5);
        assert_eq!(tau(&cs, 3), 2);
        assert_eq!(tau(&cs, 4), 0);
    }

    #[test]
    fn characterization_requires_binary_e_w_minus_2_and_b2() {
        let ternary = LpeccCode::new(
            LpeccParams::new(3, 4, 1, 3, 1, Mode::Lpecc).unwrap(),
            vec![
                Codeset::new(vec![QaryCodeword::from_pairs(3, 4, &[(4, 2)]).unwrap()]).unwrap(),
                Codeset::new(vec![QaryCodeword::from_pairs(3, 4, &[(1, 1), (2, 2), (3, 1)]).unwrap()]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(check_w_minus_2_structure(&ternary), Err(Error::Parameter(_))));

        let wrong_e = binary_code(6, 1, 3, 0, &[&[&[1, 2, 3]], &[&[4, 5, 6]]]);
        assert!(matches!(check_w_minus_2_structure(&wrong_e), Err(Error::Parameter(_))));

        let single = binary_code(6, 1, 3, 1, &[&[&[1, 2, 3], &[4, 5, 6]]]);
        assert!(matches!(check_w_minus_2_structure(&single), Err(Error::Parameter(_))));
    }

    #[test]
    fn characterization_flags_doubly_covered_pair() {
        // both codesets cover the pair {1,2}
        let code = binary_code(8, 1, 3, 1, &[
            &[&[1, 2, 3], &[4, 5, 6]],
            &[&[1, 2, 7], &[3, 4, 8]],
        ]);
        let report = check_w_minus_2_structure(&code).unwrap();
        assert!(!report.pair_uniqueness.passed);
        assert_eq!(report.pair_uniqueness.violations[0].witness, Witness::PositionPair(1, 2));
        assert!(report.block_sizes.passed);
        assert!(!report.passed);
    }

    #[test]
    fn characterization_accepts_disjoint_pair_coverage() {
        let code = binary_code(8, 1, 3, 1, &[
            &[&[1, 2, 3], &[4, 5, 6]],
            &[&[1, 4, 7], &[2, 5, 8]],
        ]);
        let report = check_w_minus_2_structure(&code).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.tau_sum, 12);
        assert_eq!(report.pair_budget, 28);
    }

    #[test]
    fn characterization_small_block_clauses() {
        // w=4: size <= 2 blocks are "small"; two codesets carrying them is a violation
        let two_small = binary_code(9, 1, 4, 2, &[
            &[&[1, 2], &[3, 4, 5, 6]],
            &[&[7, 8], &[1, 3, 7, 9]],
        ]);
        let report = check_w_minus_2_structure(&two_small).unwrap();
        assert!(!report.small_blocks.passed);

        // single small-block codeset, but the small block meets another codeset's block
        let touching = binary_code(9, 1, 4, 2, &[
            &[&[1, 2], &[3, 4, 5, 6]],
            &[&[1, 3, 7, 9]],
        ]);
        let report = check_w_minus_2_structure(&touching).unwrap();
        assert!(!report.small_blocks.passed);
    }

    #[test]
    fn characterization_w1_blocks_must_be_disjoint() {
        // w=3: blocks of size 2 in distinct codesets sharing a wire
        let code = binary_code(8, 1, 3, 1, &[
            &[&[1, 2], &[3, 4, 5]],
            &[&[2, 6], &[7, 8, 3]],
        ]);
        let report = check_w_minus_2_structure(&code).unwrap();
        assert!(!report.w1_disjoint.passed);
    }

    #[test]
    fn deleting_a_codeset_preserves_validity() {
        let code = binary_code(8, 1, 3, 1, &[
            &[&[1, 2, 3], &[4, 5, 6]],
            &[&[1, 4, 7], &[2, 5, 8]],
            &[&[1, 5], &[2, 6], &[3, 7]],
        ]);
        assert!(verify_code(&code).passed);
        for i in 0..code.b() {
            assert!(verify_code(&code.without_codeset(i)).passed);
        }
    }

    #[test]
    fn deleting_a_codeword_only_weakens_property_a() {
        let code = binary_code(8, 1, 3, 1, &[
            &[&[1, 2, 3], &[4, 5, 6]],
            &[&[1, 4, 7], &[2, 5, 8]],
        ]);
        assert!(verify_code(&code).passed);
        for i in 0..code.b() {
            for k in 0..code.codesets()[i].len() {
                let mut words = code.codesets()[i].words().to_vec();
                words.remove(k);
                if words.is_empty() {
                    continue;
                }
                let mut sets = code.codesets().to_vec();
                sets[i] = Codeset::new(words).unwrap();
                let shrunk = LpeccCode::new(*code.params(), sets).unwrap();
                let report = verify_code(&shrunk);
                assert!(report.property_b.passed);
                assert!(report.property_c.passed);
                assert!(report.disjointness.passed);
                // property A must agree with a direct recheck of the shrunk codeset
                let direct = verify_property_a(&shrunk);
                assert_eq!(report.property_a, direct);
            }
        }
    }
}
