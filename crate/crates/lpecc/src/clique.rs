//! Exact maximum-clique search shared by the brute-force design generators
//! and the code solver.
//!
//! Two phases keep the result deterministic under any thread count: phase 1
//! establishes the maximum size (order-independent), phase 2 re-derives the
//! lexicographically least witness of that size single-threaded. Pruning
//! combines greedy coloring, a triangle-free class cap (a clique meets a
//! class with no internal triangle at most twice, and at most once when the
//! class residual is edge-free — much tighter than coloring on dense,
//! locally sparse graphs), an optional caller-supplied independent-set
//! cover, and an optional additive cost budget (used for the pair-coverage
//! double count, where every feasible clique satisfies sum(cost) <= limit).
//! A greedy clique anchors both phases: it seeds the parallel incumbent and
//! fixes the sweep order in the sequential path.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

/// Fixed-capacity bitset over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Elements of self not in other.
    pub fn minus(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect() }
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// |self ∩ other| without materialising the intersection.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Undirected compatibility graph; a clique is a pairwise-compatible set.
#[derive(Debug, Clone)]
pub struct CompatGraph {
    n: usize,
    adj: Vec<BitSet>,
}

impl CompatGraph {
    pub fn new(n: usize) -> Self {
        CompatGraph { n, adj: vec![BitSet::empty(n); n] }
    }

    /// Build from a symmetric predicate evaluated on i < j.
    pub fn from_predicate(n: usize, mut compatible: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = CompatGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if compatible(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert_ne!(i, j);
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }
}

/// Overlapping cover of the vertex set by independent sets: every vertex
/// lies in exactly `multiplicity` parts, and no part contains an edge. A
/// clique hits each part at most once while each of its vertices accounts
/// for `multiplicity` hits, so any clique inside a candidate set is capped
/// by (parts intersecting the set) / multiplicity. Callers that know such
/// structure (e.g. words sharing most of their support and all their values
/// are pairwise too close) pass it in to prune far harder than any bound
/// derivable from the edge list alone.
#[derive(Debug, Clone)]
pub struct OverlapCover {
    pub parts: Vec<BitSet>,
    pub multiplicity: usize,
}

impl OverlapCover {
    /// Floor of hits/multiplicity, stopping early once `stop_at` is sure.
    fn bound(&self, cand: &BitSet, stop_at: usize) -> usize {
        let enough = stop_at * self.multiplicity;
        let mut hits = 0;
        for part in &self.parts {
            if part.intersects(cand) {
                hits += 1;
                if hits >= enough {
                    return stop_at;
                }
            }
        }
        hits / self.multiplicity
    }
}

/// Additive side constraint: every selected clique must satisfy
/// sum of cost[v] <= limit.
#[derive(Debug, Clone)]
pub struct CostBudget {
    pub cost: Vec<u64>,
    pub limit: u64,
}

impl CostBudget {
    /// Most vertices of `cand` that still fit in the remaining budget.
    fn max_fit(&self, cand: &BitSet, spent: u64) -> usize {
        let mut costs: Vec<u64> = cand.iter().map(|v| self.cost[v]).collect();
        costs.sort_unstable();
        let mut left = self.limit.saturating_sub(spent);
        let mut k = 0;
        for c in costs {
            if c > left {
                break;
            }
            left -= c;
            k += 1;
        }
        k
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Lexicographically least maximum clique, ascending vertex indices.
    pub witness: Vec<usize>,
    pub size: usize,
    pub nodes: u64,
}

struct Search<'a> {
    g: &'a CompatGraph,
    budget: Option<&'a CostBudget>,
    cover: Option<&'a OverlapCover>,
    /// Vertex partition where no class contains a triangle.
    classes: Vec<BitSet>,
    best: AtomicUsize,
    nodes: AtomicU64,
}

impl<'a> Search<'a> {
    /// Greedy coloring of `cand`; returns vertices ordered by color class
    /// with their 1-based color numbers ascending. The last color number
    /// bounds the clique size within `cand`.
    fn color_order(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<(BitSet, Vec<usize>)> = Vec::new();
        for v in cand.iter() {
            match classes.iter_mut().find(|(mask, _)| !mask.intersects(self.g.neighbors(v))) {
                Some((mask, members)) => {
                    mask.insert(v);
                    members.push(v);
                }
                None => {
                    let mut mask = BitSet::empty(self.g.len());
                    mask.insert(v);
                    classes.push((mask, vec![v]));
                }
            }
        }
        let mut order = Vec::with_capacity(cand.count());
        let mut colors = Vec::with_capacity(order.capacity());
        for (c, (_, members)) in classes.iter().enumerate() {
            for &v in members {
                order.push(v);
                colors.push(c + 1);
            }
        }
        (order, colors)
    }

    /// Upper bound on a clique inside `cand` from the triangle-free classes.
    fn class_bound(&self, cand: &BitSet, stop_at: usize) -> usize {
        let mut scratch = BitSet::empty(self.g.len());
        class_bound_into(self.g, &self.classes, &mut scratch, cand, stop_at)
    }

    fn expand(&self, mut cand: BitSet, size: usize, spent: u64) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if cand.is_empty() {
            self.best.fetch_max(size, Ordering::SeqCst);
            return;
        }
        if let Some(b) = self.budget {
            if size + b.max_fit(&cand, spent) <= self.best.load(Ordering::SeqCst) {
                return;
            }
        }
        let best_now = self.best.load(Ordering::SeqCst);
        if size + cand.count() <= best_now {
            return;
        }
        let slack = best_now.saturating_sub(size);
        if size + self.class_bound(&cand, slack + 1) <= best_now {
            return;
        }
        if let Some(c) = self.cover {
            if size + c.bound(&cand, slack + 1) <= best_now {
                return;
            }
        }
        let (order, colors) = self.color_order(&cand);
        for i in (0..order.len()).rev() {
            if size + colors[i] <= self.best.load(Ordering::SeqCst) {
                return;
            }
            let v = order[i];
            let vc = self.budget.map_or(0, |b| b.cost[v]);
            if self.budget.is_none() || spent + vc <= self.budget.unwrap().limit {
                self.expand(cand.intersect(self.g.neighbors(v)), size + 1, spent + vc);
            } else {
                self.best.fetch_max(size, Ordering::SeqCst);
            }
            cand.remove(v);
        }
        self.best.fetch_max(size, Ordering::SeqCst);
    }

    /// First (= lexicographically least) clique of exactly `need` more
    /// vertices inside `cand`, all indices greater than anything chosen.
    fn lex_extend(&self, cand: BitSet, chosen: &mut Vec<usize>, need: usize, spent: u64) -> bool {
        if need == 0 {
            return true;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if cand.count() < need {
            return false;
        }
        if self.class_bound(&cand, need) < need {
            return false;
        }
        if let Some(c) = self.cover {
            if c.bound(&cand, need) < need {
                return false;
            }
        }
        let (_, colors) = self.color_order(&cand);
        if colors.last().copied().unwrap_or(0) < need {
            return false;
        }
        if let Some(b) = self.budget {
            if b.max_fit(&cand, spent) < need {
                return false;
            }
        }
        let mut cand = cand;
        while let Some(v) = cand.min() {
            let vc = self.budget.map_or(0, |b| b.cost[v]);
            if self.budget.is_none() || spent + vc <= self.budget.unwrap().limit {
                chosen.push(v);
                if self.lex_extend(cand.intersect(self.g.neighbors(v)), chosen, need - 1, spent + vc) {
                    return true;
                }
                chosen.pop();
            }
            cand.remove(v);
            if cand.count() < need {
                return false;
            }
        }
        false
    }
}

/// Upper bound on a clique inside `cand` from a triangle-free partition:
/// a class residual with an internal edge can contribute two vertices, any
/// other nonempty residual exactly one. Stops counting once the total
/// reaches `stop_at`, past which the exact value cannot matter.
fn class_bound_into(
    g: &CompatGraph,
    classes: &[BitSet],
    scratch: &mut BitSet,
    cand: &BitSet,
    stop_at: usize,
) -> usize {
    let mut bound = 0;
    for class in classes {
        for (r, (c, w)) in scratch.words.iter_mut().zip(class.words.iter().zip(&cand.words)) {
            *r = c & w;
        }
        let m = scratch.count();
        if m == 0 {
            continue;
        }
        bound += if m >= 2 && scratch.iter().any(|u| g.neighbors(u).intersects(scratch)) {
            2
        } else {
            1
        };
        if bound >= stop_at {
            return bound;
        }
    }
    bound
}

/// Single-threaded suffix sweep over vertices in descending index order.
/// After the step for vertex i, caps[i] is exactly the largest feasible
/// clique within {i, ..., n-1}: the incumbent starts at zero and each step
/// extends the suffix by one vertex, so one decision search per step is
/// complete. Plain fields and per-depth candidate buffers keep a node at a
/// handful of word operations — the hard dense instances visit billions of
/// nodes, where one heap allocation per node would dominate the runtime.
struct SuffixSweep<'a> {
    g: &'a CompatGraph,
    budget: Option<&'a CostBudget>,
    cover: Option<&'a OverlapCover>,
    classes: &'a [BitSet],
    caps: Vec<usize>,
    /// Candidate buffer per recursion depth.
    cands: Vec<BitSet>,
    scratch: BitSet,
    /// Per-class scratch for the split bound: residual cap and least index.
    contrib: Vec<(usize, usize)>,
    /// Scratch: least residual index from class j onward.
    tails: Vec<usize>,
    best: usize,
    nodes: u64,
}

impl<'a> SuffixSweep<'a> {
    fn new(
        g: &'a CompatGraph,
        budget: Option<&'a CostBudget>,
        cover: Option<&'a OverlapCover>,
        classes: &'a [BitSet],
    ) -> Self {
        SuffixSweep {
            g,
            budget,
            cover,
            classes,
            caps: vec![0; g.len()],
            cands: vec![BitSet::empty(g.len()); g.len() + 1],
            scratch: BitSet::empty(g.len()),
            contrib: vec![(0, 0); classes.len()],
            tails: vec![0; classes.len() + 1],
            best: 0,
            nodes: 0,
        }
    }

    /// Upper bound on a clique inside cands[depth], minimised over split
    /// points: class residuals before the split add their caps (2 with an
    /// internal edge, else 1), and everything from the split on is capped
    /// by the finished suffix value at its least remaining index — which
    /// prices in the cross-class conflicts an additive cap cannot see.
    fn split_bound(&mut self, depth: usize) -> usize {
        let cand = &self.cands[depth];
        let mut used = 0;
        for class in self.classes {
            for (r, (c, w)) in
                self.scratch.words.iter_mut().zip(class.words.iter().zip(&cand.words))
            {
                *r = c & w;
            }
            let m = self.scratch.count();
            if m == 0 {
                continue;
            }
            let cap = if m >= 2
                && self.scratch.iter().any(|u| self.g.neighbors(u).intersects(&self.scratch))
            {
                2
            } else {
                1
            };
            self.contrib[used] = (cap, self.scratch.min().expect("nonempty residual"));
            used += 1;
        }
        self.tails[used] = usize::MAX;
        for j in (0..used).rev() {
            self.tails[j] = self.contrib[j].1.min(self.tails[j + 1]);
        }
        let mut bound = usize::MAX;
        let mut additive = 0;
        for j in 0..=used {
            let tail = if self.tails[j] == usize::MAX { 0 } else { self.caps[self.tails[j]] };
            bound = bound.min(additive + tail);
            if j < used {
                additive += self.contrib[j].0;
            }
        }
        bound
    }

    fn run(&mut self) {
        let trace = std::env::var_os("CLIQUE_TRACE").is_some();
        for v in (0..self.g.len()).rev() {
            let (step_nodes, step_t) = (self.nodes, std::time::Instant::now());
            if self.budget.is_none_or(|b| b.cost[v] <= b.limit) {
                // cands[0] = N(v) restricted to indices above v
                let shift = (v % 64) as u32 + 1;
                let nv = self.g.neighbors(v);
                for (k, slot) in self.cands[0].words.iter_mut().enumerate() {
                    *slot = match k.cmp(&(v / 64)) {
                        std::cmp::Ordering::Less => 0,
                        std::cmp::Ordering::Equal => {
                            nv.words[k] & u64::MAX.checked_shl(shift).unwrap_or(0)
                        }
                        std::cmp::Ordering::Greater => nv.words[k],
                    };
                }
                self.climb(0, 1, self.budget.map_or(0, |b| b.cost[v]));
            }
            self.caps[v] = self.best;
            if trace && step_t.elapsed().as_millis() > 100 {
                eprintln!(
                    "step {v:4} cap {:3} nodes {:>12} secs {:.2}",
                    self.best,
                    self.nodes - step_nodes,
                    step_t.elapsed().as_secs_f64()
                );
            }
        }
        if trace {
            eprintln!("sweep done: best {} nodes {}", self.best, self.nodes);
        }
    }

    /// Decision search for one clique of size best+1 inside cands[depth];
    /// bumps the incumbent and cascades out as soon as it succeeds.
    /// Candidates are taken in index order: each removal raises the minimum
    /// of the remainder and thereby tightens the suffix cap that prunes the
    /// node, which replaces coloring here.
    fn climb(&mut self, depth: usize, size: usize, spent: u64) -> bool {
        self.nodes += 1;
        if size > self.best {
            self.best = size;
            return true;
        }
        let mut left = self.cands[depth].count();
        if size + left <= self.best {
            return false;
        }
        if let Some(b) = self.budget {
            if size + b.max_fit(&self.cands[depth], spent) <= self.best {
                return false;
            }
        }
        if left >= 8 && size + self.split_bound(depth) <= self.best {
            return false;
        }
        if let Some(c) = self.cover {
            let need = self.best + 1 - size;
            if left >= 4 && c.bound(&self.cands[depth], need) < need {
                return false;
            }
        }
        while let Some(v) = self.cands[depth].min() {
            if size + left <= self.best || size + self.caps[v] <= self.best {
                return false;
            }
            self.cands[depth].remove(v);
            left -= 1;
            let vc = self.budget.map_or(0, |b| b.cost[v]);
            if self.budget.is_some() && spent + vc > self.budget.unwrap().limit {
                continue;
            }
            let (head, tail) = self.cands.split_at_mut(depth + 1);
            let nv = self.g.neighbors(v);
            for (slot, (c, w)) in tail[0].words.iter_mut().zip(head[depth].words.iter().zip(&nv.words))
            {
                *slot = c & w;
            }
            if self.climb(depth + 1, size + 1, spent + vc) {
                return true;
            }
        }
        false
    }
}

/// Greedy partition of the vertices into classes containing no triangle.
/// A vertex joins the first class where its in-class neighbours are pairwise
/// non-adjacent, which preserves the invariant.
fn triangle_free_classes(g: &CompatGraph) -> Vec<BitSet> {
    let mut classes: Vec<BitSet> = Vec::new();
    for v in 0..g.len() {
        let slot = classes.iter_mut().find(|mask| {
            let nb = mask.intersect(g.neighbors(v));
            let independent = nb.iter().all(|u| !g.neighbors(u).intersects(&nb));
            independent
        });
        match slot {
            Some(mask) => mask.insert(v),
            None => {
                let mut mask = BitSet::empty(g.len());
                mask.insert(v);
                classes.push(mask);
            }
        }
    }
    classes
}

/// Budget-feasible clique found greedily from every start vertex, always
/// keeping the candidate that preserves the most options. Its size seeds the
/// parallel search; its members anchor the sweep order.
fn greedy_clique(g: &CompatGraph, budget: Option<&CostBudget>) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for s in 0..g.len() {
        if budget.is_some_and(|b| b.cost[s] > b.limit) {
            continue;
        }
        let mut members = vec![s];
        let mut spent = budget.map_or(0, |b| b.cost[s]);
        let mut cand = g.neighbors(s).clone();
        loop {
            let mut pick = None;
            for u in cand.iter() {
                if budget.is_some_and(|b| spent + b.cost[u] > b.limit) {
                    continue;
                }
                let score = cand.intersection_count(g.neighbors(u));
                if pick.is_none_or(|(_, s)| score > s) {
                    pick = Some((u, score));
                }
            }
            let Some((u, _)) = pick else { break };
            members.push(u);
            spent += budget.map_or(0, |b| b.cost[u]);
            cand = cand.intersect(g.neighbors(u));
        }
        if members.len() > best.len() {
            best = members;
        }
    }
    best
}

/// The instance relabelled so the greedy clique occupies the highest
/// indices. The sweep then grows its caps through the clique first: the
/// incumbent reaches the greedy size within a handful of nodes, and every
/// later step starts against a cap it usually cannot beat. On the dense
/// design graphs this ordering cuts the sweep by several orders of
/// magnitude; caps stay exact because the sweep never depends on how
/// vertices are numbered.
struct CliqueLast {
    graph: CompatGraph,
    budget: Option<CostBudget>,
    cover: Option<OverlapCover>,
}

impl CliqueLast {
    fn new(
        g: &CompatGraph,
        budget: Option<&CostBudget>,
        cover: Option<&OverlapCover>,
        clique: &[usize],
    ) -> Self {
        let n = g.len();
        let inside = {
            let mut s = BitSet::empty(n);
            for &v in clique {
                s.insert(v);
            }
            s
        };
        let old: Vec<usize> =
            (0..n).filter(|&v| !inside.contains(v)).chain(inside.iter()).collect();
        let mut new = vec![0usize; n];
        for (i, &v) in old.iter().enumerate() {
            new[v] = i;
        }
        let remap = |mask: &BitSet| {
            let mut m = BitSet::empty(n);
            for v in mask.iter() {
                m.insert(new[v]);
            }
            m
        };
        let graph = CompatGraph {
            n,
            adj: (0..n).map(|i| remap(g.neighbors(old[i]))).collect(),
        };
        let budget = budget.map(|b| CostBudget {
            cost: old.iter().map(|&v| b.cost[v]).collect(),
            limit: b.limit,
        });
        let cover = cover.map(|c| OverlapCover {
            parts: c.parts.iter().map(&remap).collect(),
            multiplicity: c.multiplicity,
        });
        CliqueLast { graph, budget, cover }
    }
}

/// Exact maximum clique subject to the optional cost budget, with any
/// independent-set cover supplied as an extra bound. The witness is the
/// lexicographically least maximum clique; it is identical for every
/// thread count.
pub fn max_clique(
    g: &CompatGraph,
    budget: Option<&CostBudget>,
    cover: Option<&OverlapCover>,
    threads: usize,
) -> SearchOutcome {
    if let Some(c) = cover {
        for part in &c.parts {
            debug_assert!(
                part.iter().all(|u| !g.neighbors(u).intersects(part)),
                "cover parts must be independent sets"
            );
        }
    }
    let search = Search {
        g,
        budget,
        cover,
        classes: triangle_free_classes(g),
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
    };
    let seed = greedy_clique(g, budget);

    if threads > 1 {
        // independent root subtrees, one per vertex, seeded with the greedy
        // incumbent so pruning bites from the first node
        search.best.store(seed.len(), Ordering::SeqCst);
        let roots: Vec<usize> = (0..g.len())
            .filter(|&v| budget.is_none_or(|b| b.cost[v] <= b.limit))
            .collect();
        let run_root = |&v: &usize| {
            let mut cand = g.neighbors(v).clone();
            for u in 0..=v {
                cand.remove(u);
            }
            search.expand(cand, 1, budget.map_or(0, |b| b.cost[v]));
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| roots.par_iter().for_each(run_root));
    } else {
        let inst = CliqueLast::new(g, budget, cover, &seed);
        let classes = triangle_free_classes(&inst.graph);
        let mut sweep =
            SuffixSweep::new(&inst.graph, inst.budget.as_ref(), inst.cover.as_ref(), &classes);
        sweep.run();
        search.best.store(sweep.best, Ordering::SeqCst);
        search.nodes.store(sweep.nodes, Ordering::SeqCst);
    }

    let size = search.best.load(Ordering::SeqCst);
    let mut witness = Vec::with_capacity(size);
    if size > 0 {
        let cand = BitSet::full(g.len());
        let found = search.lex_extend(cand, &mut witness, size, 0);
        assert!(found, "witness reconstruction must succeed at the proven size");
    }
    SearchOutcome { witness, size, nodes: search.nodes.load(Ordering::Relaxed) }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference implementation: enumerate all subsets.
    fn naive_max_clique(g: &CompatGraph, budget: Option<&CostBudget>) -> (usize, Vec<usize>) {
        let n = g.len();
        assert!(n <= 20);
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let is_clique = members
                .iter()
                .enumerate()
                .all(|(a, &i)| members[a + 1..].iter().all(|&j| g.neighbors(i).contains(j)));
            if !is_clique {
                continue;
            }
            if let Some(b) = budget {
                if members.iter().map(|&i| b.cost[i]).sum::<u64>() > b.limit {
                    continue;
                }
            }
            let better = match &best {
                None => true,
                Some(cur) => {
                    members.len() > cur.len() || (members.len() == cur.len() && members < *cur)
                }
            };
            if better {
                best = Some(members);
            }
        }
        let w = best.unwrap_or_default();
        (w.len(), w)
    }

    fn lcg_graph(n: usize, density_pct: u64, seed: u64) -> CompatGraph {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 100
        };
        CompatGraph::from_predicate(n, |_, _| next() < density_pct)
    }

    #[test]
    fn matches_naive_on_random_graphs() {
        for seed in 0..30 {
            let n = 8 + (seed as usize % 6);
            let g = lcg_graph(n, 30 + seed * 2, seed + 1);
            let (size, witness) = naive_max_clique(&g, None);
            let out = max_clique(&g, None, None, 1);
            assert_eq!(out.size, size, "seed {seed}");
            assert_eq!(out.witness, witness, "seed {seed}");
        }
    }

    #[test]
    fn matches_naive_with_budget() {
        for seed in 0..20 {
            let n = 10;
            let g = lcg_graph(n, 60, seed + 100);
            let cost: Vec<u64> = (0..n as u64).map(|i| (i * 7 + seed) % 5 + 1).collect();
            let budget = CostBudget { cost, limit: 8 };
            let (size, witness) = naive_max_clique(&g, Some(&budget));
            let out = max_clique(&g, Some(&budget), None, 1);
            assert_eq!(out.size, size, "seed {seed}");
            assert_eq!(out.witness, witness, "seed {seed}");
        }
    }

    #[test]
    fn matches_naive_on_dense_graphs() {
        // Dense instances exercise the warm start and the class cap, which
        // prune hardest when coloring is weakest.
        for seed in 0..15 {
            let n = 12 + (seed as usize % 5);
            let g = lcg_graph(n, 85, seed + 300);
            let (size, witness) = naive_max_clique(&g, None);
            let out = max_clique(&g, None, None, 1);
            assert_eq!(out.size, size, "seed {seed}");
            assert_eq!(out.witness, witness, "seed {seed}");
        }
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let g = lcg_graph(14, 50, 7);
        let one = max_clique(&g, None, None, 1);
        let four = max_clique(&g, None, None, 4);
        assert_eq!(one.size, four.size);
        assert_eq!(one.witness, four.witness);
    }

    #[test]
    #[ignore]
    fn probe_global_expand() {
        // temporary measurement harness
        let n: usize = std::env::var("PROBE_N").ok().and_then(|s| s.parse().ok()).unwrap_or(6);
        let w = 4;
        let mut words: Vec<Vec<u32>> = Vec::new();
        fn rec(start: usize, n: usize, w: usize, cur: &mut Vec<usize>, words: &mut Vec<Vec<u32>>) {
            if cur.len() == w {
                let count = 1usize << w;
                for pat in 0..count {
                    let mut word = vec![0u32; n];
                    for (k, &p) in cur.iter().enumerate() {
                        word[p] = 1 + ((pat >> k) & 1) as u32;
                    }
                    words.push(word);
                }
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, w, cur, words);
                cur.pop();
            }
        }
        rec(0, n, w, &mut Vec::new(), &mut words);
        words.sort();
        let dist = |a: &[u32], b: &[u32]| a.iter().zip(b).filter(|(x, y)| x != y).count();
        let g = CompatGraph::from_predicate(words.len(), |i, j| dist(&words[i], &words[j]) >= 3);

        // cover: parts keyed by (w-1)-subsets of support with values
        let mut parts: std::collections::BTreeMap<Vec<(usize, u32)>, BitSet> =
            std::collections::BTreeMap::new();
        for (i, word) in words.iter().enumerate() {
            let pairs: Vec<(usize, u32)> =
                word.iter().enumerate().filter(|(_, &v)| v != 0).map(|(p, &v)| (p, v)).collect();
            for skip in 0..w {
                let mut key = pairs.clone();
                key.remove(skip);
                parts.entry(key).or_insert_with(|| BitSet::empty(words.len())).insert(i);
            }
        }
        let cover = OverlapCover { parts: parts.into_values().collect(), multiplicity: w };

        let search = Search {
            g: &g,
            budget: None,
            cover: Some(&cover),
            classes: triangle_free_classes(&g),
            best: AtomicUsize::new(0),
            nodes: AtomicU64::new(0),
        };
        let seed = greedy_clique(&g, None);
        search.best.store(seed.len(), Ordering::SeqCst);
        eprintln!("n={n} words {} classes {} greedy {}", words.len(), search.classes.len(), seed.len());
        let t = std::time::Instant::now();
        for v in (0..g.len()).rev() {
            let mut cand = g.neighbors(v).clone();
            for u in 0..=v {
                cand.remove(u);
            }
            search.expand(cand, 1, 0);
        }
        eprintln!(
            "n={n} omega {} nodes {} secs {:.2}",
            search.best.load(Ordering::SeqCst),
            search.nodes.load(Ordering::Relaxed),
            t.elapsed().as_secs_f64()
        );
    }

    #[test]
    fn trivial_graphs() {
        let g = CompatGraph::new(0);
        let out = max_clique(&g, None, None, 1);
        assert_eq!(out.size, 0);
        assert!(out.witness.is_empty());

        let g = CompatGraph::new(3); // no edges: any single vertex
        let out = max_clique(&g, None, None, 1);
        assert_eq!(out.size, 1);
        assert_eq!(out.witness, vec![0]);

        let mut g = CompatGraph::new(4); // complete graph
        for i in 0..4 {
            for j in i + 1..4 {
                g.add_edge(i, j);
            }
        }
        let out = max_clique(&g, None, None, 1);
        assert_eq!(out.size, 4);
        assert_eq!(out.witness, vec![0, 1, 2, 3]);
    }
}
