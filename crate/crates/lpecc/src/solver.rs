//! Exact values of C(n, t, w, e) at tiny parameters.
//!
//! The reduction: a codeset can always be shrunk to an inclusion-minimal
//! subset that still satisfies Property A(t). Shrinking preserves Property B
//! and every cross-codeset distance constraint (both only lose pairs), so
//! some maximum code consists of minimal codesets exclusively. Enumerate all
//! of them, connect two candidates when every cross distance is >= 2e+1, and
//! the answer is the maximum clique. Two candidates sharing a codeword have a
//! cross pair at distance 0, so cliques are automatically disjoint families.

use std::time::Instant;

use serde::Serialize;

use crate::clique::{max_clique, BitSet, CompatGraph, CostBudget};
use crate::codes::{
    hamming_distance, tau, verify_code, Codeset, LpeccCode, LpeccParams, Mode, QaryCodeword,
};
use crate::comb::{binomial, k_subsets, sorted_disjoint};
use crate::error::{Error, Result};

/// Hard ceiling on admissible codewords; past this the candidate space and
/// the per-word conflict masks (u128) stop being tractable.
pub const WORD_LIMIT: u128 = 128;
/// Hard ceiling on C(n, t), the number of hot-wire sets a codeset must avoid.
pub const TARGET_LIMIT: u128 = 512;

/// All minimal candidate codesets for one parameter set, plus the pairwise
/// compatibility relation used by the clique solver.
#[derive(Debug, Clone)]
pub struct CandidateCodesetIndex {
    codesets: Vec<Codeset>,
    adjacency: CompatGraph,
}

impl CandidateCodesetIndex {
    /// Candidates in lexicographic order of their sorted codeword lists.
    pub fn codesets(&self) -> &[Codeset] {
        &self.codesets
    }

    pub fn len(&self) -> usize {
        self.codesets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codesets.is_empty()
    }

    pub fn adjacency(&self) -> &CompatGraph {
        &self.adjacency
    }

    /// All cross distances between candidates i and j are >= 2e+1.
    pub fn compatible(&self, i: usize, j: usize) -> bool {
        self.adjacency.neighbors(i).contains(j)
    }
}

fn admissible_weights(w: usize, mode: Mode) -> Vec<usize> {
    match mode {
        Mode::Lpecc => (1..=w).collect(),
        Mode::Cpecc => vec![w],
    }
}

fn admissible_word_count(q: u32, n: usize, weights: &[usize]) -> u128 {
    weights
        .iter()
        .map(|&k| {
            binomial(n as u64, k as u64)
                .saturating_mul((q as u128 - 1).saturating_pow(k as u32))
        })
        .fold(0u128, u128::saturating_add)
}

fn admissible_words(q: u32, n: usize, weights: &[usize]) -> Vec<QaryCodeword> {
    let labels: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    for &k in weights {
        for support in k_subsets(&labels, k) {
            let mut values = vec![1u32; k];
            loop {
                let pairs: Vec<(u32, u32)> =
                    support.iter().copied().zip(values.iter().copied()).collect();
                out.push(
                    QaryCodeword::from_pairs(q, n, &pairs).expect("values in range by construction"),
                );
                // odometer over nonzero values
                let mut i = k;
                while i > 0 && values[i - 1] == q - 1 {
                    values[i - 1] = 1;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                values[i - 1] += 1;
            }
        }
    }
    out.sort();
    out
}

/// Depth-first enumeration of minimal covers. At each node the first still
/// uncovered target is selected and every word covering it is branched on;
/// a word tried at one branch is excluded from its later siblings, which
/// makes every minimal cover reachable exactly once. A branch dies as soon
/// as some chosen word loses its last private target (a completion could
/// only be redundant from there on), so exactly the minimal families leak
/// through to the output.
struct CoverEnumeration<'a> {
    avoid: &'a [BitSet],
    target_count: usize,
    found: Vec<Vec<usize>>,
}

impl CoverEnumeration<'_> {
    fn run(&mut self) {
        let mut chosen = Vec::new();
        self.dfs(BitSet::full(self.target_count), &mut chosen, &[], 0);
    }

    fn dfs(&mut self, uncovered: BitSet, chosen: &mut Vec<usize>, privates: &[BitSet], excluded: u128) {
        let Some(target) = uncovered.min() else {
            let mut family = chosen.clone();
            family.sort_unstable();
            self.found.push(family);
            return;
        };
        let mut excluded = excluded;
        for x in 0..self.avoid.len() {
            if !self.avoid[x].contains(target) || excluded & (1 << x) != 0 {
                continue;
            }
            let survivors: Vec<BitSet> =
                privates.iter().map(|p| p.minus(&self.avoid[x])).collect();
            if survivors.iter().all(|p| !p.is_empty()) {
                let mut next = survivors;
                next.push(self.avoid[x].intersect(&uncovered));
                chosen.push(x);
                self.dfs(uncovered.minus(&self.avoid[x]), chosen, &next, excluded);
                chosen.pop();
            }
            excluded |= 1 << x;
        }
    }
}

/// Every inclusion-minimal codeset of admissible words satisfying A(t),
/// in lexicographic order, with the cross-distance compatibility graph.
pub fn enumerate_minimal_codesets(
    q: u32,
    n: usize,
    t: usize,
    w: usize,
    e: usize,
    mode: Mode,
) -> Result<CandidateCodesetIndex> {
    let params = LpeccParams::new(q, n, t, w, e, mode)?;
    let weights = admissible_weights(w, mode);
    let word_count = admissible_word_count(q, n, &weights);
    if word_count > WORD_LIMIT {
        return Err(Error::Resource {
            limit: format!("admissible codewords <= {WORD_LIMIT}"),
            actual: format!("{word_count} codewords"),
        });
    }
    let target_count = binomial(n as u64, t as u64);
    if target_count > TARGET_LIMIT {
        return Err(Error::Resource {
            limit: format!("C(n,t) <= {TARGET_LIMIT}"),
            actual: format!("C({n},{t}) = {target_count}"),
        });
    }
    let target_count = target_count as usize;

    let words = admissible_words(q, n, &weights);
    debug_assert_eq!(words.len() as u128, word_count);
    let labels: Vec<u32> = (1..=n as u32).collect();
    let targets = k_subsets(&labels, t);

    let avoid: Vec<BitSet> = words
        .iter()
        .map(|x| {
            let support = x.support();
            let mut mask = BitSet::empty(target_count);
            for (i, tset) in targets.iter().enumerate() {
                if sorted_disjoint(&support, tset) {
                    mask.insert(i);
                }
            }
            mask
        })
        .collect();

    let mut enumeration = CoverEnumeration { avoid: &avoid, target_count, found: Vec::new() };
    enumeration.run();

    let mut codesets: Vec<(Vec<usize>, Codeset)> = enumeration
        .found
        .into_iter()
        .map(|family| {
            let members: Vec<QaryCodeword> = family.iter().map(|&i| words[i].clone()).collect();
            let cs = Codeset::new(members).expect("minimal covers are nonempty");
            (family, cs)
        })
        .collect();
    codesets.sort_by(|(_, a), (_, b)| a.words().cmp(b.words()));
    codesets.dedup_by(|(_, a), (_, b)| a == b);

    // word-level conflicts: a pair closer than 2e+1 poisons every pair of
    // codesets containing it (a word conflicts with itself, so overlapping
    // codesets come out incompatible for free)
    let min_distance = params.min_distance();
    let conflicts: Vec<u128> = words
        .iter()
        .map(|x| {
            words
                .iter()
                .enumerate()
                .filter(|(_, y)| {
                    hamming_distance(x, y).expect("equal dimensions") < min_distance
                })
                .fold(0u128, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let member_masks: Vec<u128> = codesets
        .iter()
        .map(|(family, _)| family.iter().fold(0u128, |m, &i| m | (1 << i)))
        .collect();
    let conflict_masks: Vec<u128> = codesets
        .iter()
        .map(|(family, _)| family.iter().fold(0u128, |m, &i| m | conflicts[i]))
        .collect();

    let adjacency = CompatGraph::from_predicate(codesets.len(), |i, j| {
        conflict_masks[i] & member_masks[j] == 0
    });
    Ok(CandidateCodesetIndex {
        codesets: codesets.into_iter().map(|(_, cs)| cs).collect(),
        adjacency,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub size: usize,
    pub nodes_expanded: u64,
    pub wall_ms: u64,
    pub bounds_used: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub size: usize,
    /// Lexicographically least maximum code; None when no codeset exists.
    pub code: Option<LpeccCode>,
    pub summary: SolveSummary,
}

/// Maximum code size over the candidate index by branch and bound, plus the
/// canonical witness. For binary codes with e = w-2 the pair-coverage budget
/// sum(tau(P_i, 2)) <= C(n, 2) prunes as well: two codesets covering a common
/// wire pair have a cross pair at distance <= 2w-4 < 2e+1, so compatible
/// codesets cover disjoint pair sets and the budget never cuts an optimum.
pub fn exact_lpecc(
    q: u32,
    n: usize,
    t: usize,
    w: usize,
    e: usize,
    mode: Mode,
    threads: usize,
) -> Result<SolveResult> {
    let start = Instant::now();
    let params = LpeccParams::new(q, n, t, w, e, mode)?;
    let index = enumerate_minimal_codesets(q, n, t, w, e, mode)?;

    let mut bounds_used = vec!["greedy_coloring".to_string()];
    let budget = (q == 2 && e + 2 == w).then(|| CostBudget {
        cost: index.codesets().iter().map(|cs| tau(cs, 2)).collect(),
        limit: binomial(n as u64, 2) as u64,
    });
    if budget.is_some() {
        bounds_used.push("pair_coverage_budget".to_string());
    }

    let outcome = max_clique(index.adjacency(), budget.as_ref(), None, threads.max(1));

    let code = if outcome.size > 0 {
        let chosen: Vec<Codeset> =
            outcome.witness.iter().map(|&i| index.codesets()[i].clone()).collect();
        let code = LpeccCode::new(params, chosen)?;
        let report = verify_code(&code);
        if !report.passed {
            return Err(Error::Internal(format!(
                "solver witness failed verification: {:?}",
                report.first_violation()
            )));
        }
        Some(code)
    } else {
        None
    };

    Ok(SolveResult {
        size: outcome.size,
        code,
        summary: SolveSummary {
            size: outcome.size,
            nodes_expanded: outcome.nodes,
            wall_ms: start.elapsed().as_millis() as u64,
            bounds_used,
        },
    })
}
