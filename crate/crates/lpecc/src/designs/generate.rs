//! Exhaustive small-scale design generators. Every generator verifies its
//! own output and fails loudly rather than returning an unchecked object.

use std::collections::BTreeMap;

use crate::bounds::{admissible_frame3, admissible_frame4, AdmissibilityStatus};
use crate::clique::{BitSet, CompatGraph, OverlapCover, max_clique};
use crate::codes::{hamming_distance, QaryCodeword};
use crate::comb::{binomial, k_subsets, sorted_intersection_size};
use crate::error::{Error, Result};

use super::{verify_frame, verify_packing, ConstantWeightCode, Frame, FrameClass, Packing};

const SUBSET_LIMIT: u128 = 5000;
const WORD_LIMIT: u128 = 5000;
const DIFFERENCE_SET_MAX_S: u64 = 7;
const FRAME_POINT_LIMIT: usize = 18;

/// Exact maximum (n, k, 1) packing of strength r, found as a maximum clique
/// over k-subsets (compatible = intersection below r). Deterministic:
/// lexicographically least witness.
pub fn brute_max_packing(n: usize, k: usize, r: usize) -> Result<Packing> {
    if r < 1 {
        return Err(Error::Parameter(format!("need r >= 1 (got r={r})")));
    }
    let count = binomial(n as u64, k as u64);
    if count > SUBSET_LIMIT {
        return Err(Error::Resource {
            limit: format!("C(n,k) <= {SUBSET_LIMIT}"),
            actual: format!("C({n},{k}) = {count}"),
        });
    }
    let points: Vec<u32> = (1..=n as u32).collect();
    let candidates = k_subsets(&points, k);
    let g = CompatGraph::from_predicate(candidates.len(), |i, j| {
        sorted_intersection_size(&candidates[i], &candidates[j]) < r
    });
    let outcome = max_clique(&g, None, None, 1);
    let blocks: Vec<Vec<u32>> = outcome.witness.iter().map(|&v| candidates[v].clone()).collect();
    let packing = Packing::new(n, k, r, 1, blocks)?;
    let report = verify_packing(&packing);
    if !report.valid {
        return Err(Error::Internal(format!("brute_max_packing produced an invalid packing: {:?}", report.violation)));
    }
    Ok(packing)
}

/// First (lexicographically) (s+1)-subset of Z_{s^2+s+1} whose nonzero
/// pairwise differences are all distinct, plus its development by
/// translation into a verified (s^2+s+1, s+1, 1)-BIBD.
pub fn planar_difference_set(s: u64) -> Result<(Vec<u64>, Packing)> {
    if s < 1 {
        return Err(Error::Parameter(format!("need s >= 1 (got s={s})")));
    }
    if s > DIFFERENCE_SET_MAX_S {
        return Err(Error::Resource {
            limit: format!("s <= {DIFFERENCE_SET_MAX_S}"),
            actual: format!("s = {s}"),
        });
    }
    let v = s * s + s + 1;
    let k = (s + 1) as usize;

    // The lexicographically least difference set contains 0: translating any
    // set by -min gives another one, so the search can fix 0 up front.
    let mut cur: Vec<u64> = vec![0];
    let mut used = vec![false; v as usize];
    let found = extend_difference_set(&mut cur, &mut used, v, k);
    let set = match found {
        Some(set) => set,
        None => {
            return Err(Error::Existence(format!(
                "no planar difference set of order s={s} exists in Z_{v} (exhaustive search)"
            )))
        }
    };

    let blocks: Vec<Vec<u32>> = (0..v)
        .map(|i| {
            let mut b: Vec<u32> = set.iter().map(|&d| ((d + i) % v) as u32 + 1).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let packing = Packing::new(v as usize, k, 2, 1, blocks)?;
    let report = verify_packing(&packing);
    if !(report.valid && report.steiner) {
        return Err(Error::Internal(format!(
            "development of {set:?} mod {v} is not a ({v},{k},1)-BIBD: {:?}",
            report.violation
        )));
    }
    Ok((set, packing))
}

fn extend_difference_set(cur: &mut Vec<u64>, used: &mut [bool], v: u64, k: usize) -> Option<Vec<u64>> {
    if cur.len() == k {
        return Some(cur.clone());
    }
    let remaining = (k - cur.len()) as u64;
    let start = cur.last().unwrap() + 1;
    for c in start..=v - remaining {
        // v is odd, so the two differences of a pair never coincide
        let mut marked = Vec::with_capacity(2 * cur.len());
        let ok = cur.iter().all(|&y| {
            let d = (c - y) % v;
            for diff in [d, v - d] {
                if used[diff as usize] {
                    return false;
                }
                used[diff as usize] = true;
                marked.push(diff);
            }
            true
        });
        if ok {
            cur.push(c);
            if let Some(hit) = extend_difference_set(cur, used, v, k) {
                return Some(hit);
            }
            cur.pop();
        }
        for diff in marked {
            used[diff as usize] = false;
        }
    }
    None
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The affine plane AG(2,p) for prime p as a verified (p^2, p, 1)-BIBD with
/// p^2 + p blocks. Point (x, y) over Z_p gets label x*p + y + 1.
pub fn affine_plane(p: usize) -> Result<Packing> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("p must be prime (got p={p})")));
    }
    if p > 11 {
        return Err(Error::Parameter(format!("p must be at most 11 (got p={p})")));
    }
    let label = |x: usize, y: usize| (x * p + y) as u32 + 1;
    let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(p * p + p);
    for a in 0..p {
        for b in 0..p {
            blocks.push((0..p).map(|x| label(x, (a * x + b) % p)).collect());
        }
    }
    for c in 0..p {
        blocks.push((0..p).map(|y| label(c, y)).collect());
    }
    let packing = Packing::new(p * p, p, 2, 1, blocks)?;
    let report = verify_packing(&packing);
    if !(report.valid && report.steiner) {
        return Err(Error::Internal(format!("AG(2,{p}) construction is broken: {:?}", report.violation)));
    }
    Ok(packing)
}

/// Backtracking search for a k-frame of type g^m, class by class. Only runs
/// when the existence lemmas say the frame exists; exhaustion is therefore
/// an internal error, not an existence result. Deterministic:
/// lexicographically least solution.
pub fn search_frame(k: usize, g: usize, m: usize) -> Result<Frame> {
    match k {
        3 => {
            if !admissible_frame3(g as u64, m as u64) {
                return Err(Error::Admissibility(format!(
                    "no 3-frame of type {g}^{m}: requires m >= 4, 2 | g, 3 | g(m-1)"
                )));
            }
        }
        4 => {
            let adm = admissible_frame4(g as u64, m as u64);
            if adm.status != AdmissibilityStatus::Exists {
                return Err(Error::Admissibility(format!("no 4-frame of type {g}^{m}: {}", adm.reason)));
            }
        }
        _ => return Err(Error::Parameter(format!("frame block size must be 3 or 4 (got k={k})"))),
    }
    let n = g * m;
    if n > FRAME_POINT_LIMIT {
        return Err(Error::Resource {
            limit: format!("g*m <= {FRAME_POINT_LIMIT}"),
            actual: format!("g*m = {n}"),
        });
    }

    // admissibility makes both counts integral
    let classes_per_group = g / (k - 1);
    let holes: Vec<usize> = (0..m).flat_map(|grp| std::iter::repeat(grp).take(classes_per_group)).collect();

    let mut search = FrameSearch {
        k,
        n,
        g,
        holes,
        avail: cross_pair_masks(n, g),
        classes: Vec::new(),
    };
    if !search.solve(0) {
        return Err(Error::Internal(format!(
            "exhausted the search space for an admissible {k}-frame of type {g}^{m}; the existence lemma guarantees one"
        )));
    }

    let groups: Vec<Vec<u32>> = (0..m).map(|grp| ((grp * g + 1)..=(grp + 1) * g).map(|p| p as u32).collect()).collect();
    let classes: Vec<FrameClass> = search
        .holes
        .iter()
        .zip(&search.classes)
        .map(|(&hole, blocks)| FrameClass {
            hole: hole + 1,
            blocks: blocks.iter().map(|b| b.iter().map(|&p| p as u32 + 1).collect()).collect(),
        })
        .collect();
    let frame = Frame::new(k, g, m, groups, classes)?;
    let report = verify_frame(&frame);
    if !report.valid {
        return Err(Error::Internal(format!("search_frame produced an invalid frame: {:?}", report.violation)));
    }
    Ok(frame)
}

fn cross_pair_masks(n: usize, g: usize) -> Vec<u64> {
    (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| q != p && q / g != p / g)
                .fold(0u64, |mask, q| mask | (1 << q))
        })
        .collect()
}

struct FrameSearch {
    k: usize,
    n: usize,
    g: usize,
    holes: Vec<usize>,
    /// avail[p]: points q such that the cross-group pair {p,q} is unused.
    avail: Vec<u64>,
    classes: Vec<Vec<Vec<usize>>>,
}

impl FrameSearch {
    fn solve(&mut self, ci: usize) -> bool {
        if ci == self.holes.len() {
            return true;
        }
        let hole = self.holes[ci];
        let mut remaining = 0u64;
        for p in 0..self.n {
            if p / self.g != hole {
                remaining |= 1 << p;
            }
        }
        self.classes.push(Vec::new());
        let done = self.fill_class(ci, remaining);
        if !done {
            self.classes.pop();
        }
        done
    }

    fn fill_class(&mut self, ci: usize, remaining: u64) -> bool {
        if remaining == 0 {
            return self.solve(ci + 1);
        }
        // dead-end check: every unplaced point still needs k-1 live partners
        let mut rest = remaining;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.avail[q] & remaining).count_ones() < (self.k - 1) as u32 {
                return false;
            }
        }
        let p = remaining.trailing_zeros() as usize;
        let mut block = vec![p];
        self.place_mates(ci, remaining & !(1 << p), self.avail[p] & remaining, &mut block)
    }

    /// Extends `block` by ascending mates drawn from `cands`, keeping all
    /// pairs inside the block available, then recurses into the rest of the
    /// class. First completion wins.
    fn place_mates(&mut self, ci: usize, remaining: u64, cands: u64, block: &mut Vec<usize>) -> bool {
        if block.len() == self.k {
            let removed = self.take_block(block);
            self.classes[ci].push(block.clone());
            let done = self.fill_class(ci, remaining);
            if !done {
                self.classes[ci].pop();
                self.restore_pairs(removed);
            }
            return done;
        }
        let mut rest = cands;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            block.push(q);
            if self.place_mates(ci, remaining & !(1 << q), rest & self.avail[q], block) {
                return true;
            }
            block.pop();
        }
        false
    }

    fn take_block(&mut self, block: &[usize]) -> Vec<(usize, usize)> {
        let mut removed = Vec::with_capacity(self.k * (self.k - 1) / 2);
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                self.avail[a] &= !(1 << b);
                self.avail[b] &= !(1 << a);
                removed.push((a, b));
            }
        }
        removed
    }

    fn restore_pairs(&mut self, removed: Vec<(usize, usize)>) {
        for (a, b) in removed {
            self.avail[a] |= 1 << b;
            self.avail[b] |= 1 << a;
        }
    }
}

/// Exact A_q(n,d,w) with a witness, as a maximum clique over all weight-w
/// words (compatible = distance >= d). Deterministic: lexicographically
/// least witness in codeword order.
pub fn brute_max_cwc(q: u32, n: usize, d: usize, w: usize) -> Result<ConstantWeightCode> {
    if q < 2 {
        return Err(Error::Parameter(format!("need q >= 2 (got q={q})")));
    }
    let count = (q as u128 - 1).pow(w as u32) * binomial(n as u64, w as u64);
    if count > WORD_LIMIT {
        return Err(Error::Resource {
            limit: format!("(q-1)^w * C(n,w) <= {WORD_LIMIT}"),
            actual: format!("(q-1)^w * C(n,w) = {count}"),
        });
    }
    let positions: Vec<u32> = (1..=n as u32).collect();
    let mut words: Vec<QaryCodeword> = Vec::with_capacity(count as usize);
    for support in k_subsets(&positions, w) {
        let mut values = vec![1u32; w];
        loop {
            let pairs: Vec<(u32, u32)> = support.iter().copied().zip(values.iter().copied()).collect();
            words.push(QaryCodeword::from_pairs(q, n, &pairs)?);
            // odometer over nonzero values
            let mut i = w;
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
    words.sort();

    let g = CompatGraph::from_predicate(words.len(), |i, j| {
        hamming_distance(&words[i], &words[j]).expect("equal dimensions") >= d
    });
    let cover = agreement_cover(&words, d, w);
    let outcome = max_clique(&g, None, cover.as_ref(), 1);
    let chosen: Vec<QaryCodeword> = outcome.witness.iter().map(|&v| words[v].clone()).collect();
    ConstantWeightCode::new(q, n, d, w, chosen)
}

/// Independent-set cover of the weight-w words for d >= 3: two words that
/// agree on w-1 support positions differ in at most two coordinates, so the
/// words sharing a (positions, values) agreement pattern of size w-1 are
/// pairwise incompatible. Each word lies in exactly w such classes, giving
/// the clique search the counting bound (classes hit) / w — the structural
/// ceiling the edge list alone cannot expose.
fn agreement_cover(words: &[QaryCodeword], d: usize, w: usize) -> Option<OverlapCover> {
    if d < 3 || w < 1 {
        return None;
    }
    let mut parts: BTreeMap<Vec<(u32, u32)>, BitSet> = BTreeMap::new();
    for (i, word) in words.iter().enumerate() {
        let pairs = word.support_pairs();
        for skip in 0..w {
            let mut key = pairs.clone();
            key.remove(skip);
            parts.entry(key).or_insert_with(|| BitSet::empty(words.len())).insert(i);
        }
    }
    Some(OverlapCover { parts: parts.into_values().collect(), multiplicity: w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::binomial;

    #[test]
    fn max_packing_known_values() {
        assert_eq!(brute_max_packing(7, 3, 2).unwrap().size(), 7);
        assert_eq!(brute_max_packing(6, 3, 2).unwrap().size(), 4);
        assert_eq!(brute_max_packing(5, 3, 2).unwrap().size(), 2);
    }

    #[test]
    fn max_packing_on_7_3_2_is_a_steiner_triple_system() {
        let p = brute_max_packing(7, 3, 2).unwrap();
        assert!(verify_packing(&p).steiner);
    }

    #[test]
    fn max_packing_respects_counting_bound() {
        for n in 3..=9u64 {
            let p = brute_max_packing(n as usize, 3, 2).unwrap();
            assert!(p.size() as u128 <= binomial(n, 2) / 3, "n={n}");
        }
    }

    #[test]
    fn max_packing_scale_guard() {
        assert!(matches!(brute_max_packing(30, 10, 2), Err(Error::Resource { .. })));
    }

    #[test]
    fn difference_set_order_2_develops_the_fano_plane() {
        let (set, packing) = planar_difference_set(2).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set[0], 0);
        assert_eq!((packing.n, packing.k, packing.size()), (7, 3, 7));
        assert!(verify_packing(&packing).steiner);
    }

    #[test]
    fn difference_set_order_5_develops_a_31_point_plane() {
        let (set, packing) = planar_difference_set(5).unwrap();
        assert_eq!(set.len(), 6);
        assert_eq!((packing.n, packing.k, packing.size()), (31, 6, 31));
        assert!(verify_packing(&packing).steiner);
    }

    #[test]
    fn no_difference_set_of_order_6() {
        assert!(matches!(planar_difference_set(6), Err(Error::Existence(_))));
    }

    #[test]
    fn difference_set_scale_guard() {
        assert!(matches!(planar_difference_set(8), Err(Error::Resource { .. })));
    }

    #[test]
    fn affine_plane_of_order_3() {
        let p = affine_plane(3).unwrap();
        assert_eq!((p.n, p.k, p.size()), (9, 3, 12));
        assert!(verify_packing(&p).steiner);
    }

    #[test]
    fn affine_plane_of_order_7() {
        let p = affine_plane(7).unwrap();
        assert_eq!((p.n, p.k, p.size()), (49, 7, 56));
        assert!(verify_packing(&p).steiner);
    }

    #[test]
    fn affine_plane_rejects_prime_powers_and_large_orders() {
        assert!(matches!(affine_plane(4), Err(Error::Parameter(_))));
        assert!(matches!(affine_plane(9), Err(Error::Parameter(_))));
        assert!(matches!(affine_plane(13), Err(Error::Parameter(_))));
    }

    fn assert_frame_shape(f: &Frame) {
        let blocks_per_class = (f.points() - f.g) / f.k;
        for class in f.classes() {
            assert_eq!(class.blocks.len(), blocks_per_class);
        }
        for grp in 1..=f.m {
            let holed = f.classes().iter().filter(|c| c.hole == grp).count();
            assert_eq!(holed, f.g / (f.k - 1));
        }
    }

    #[test]
    fn frame_3_2_4() {
        let f = search_frame(3, 2, 4).unwrap();
        assert!(verify_frame(&f).valid);
        assert_eq!(f.classes().len(), 4);
        assert_frame_shape(&f);
    }

    #[test]
    fn frame_3_2_7() {
        let f = search_frame(3, 2, 7).unwrap();
        assert!(verify_frame(&f).valid);
        assert_eq!(f.classes().len(), 7);
        assert_frame_shape(&f);
    }

    #[test]
    fn frame_3_4_4() {
        let f = search_frame(3, 4, 4).unwrap();
        assert!(verify_frame(&f).valid);
        assert_eq!(f.classes().len(), 8);
        assert_frame_shape(&f);
    }

    #[test]
    fn frame_4_3_5() {
        let f = search_frame(4, 3, 5).unwrap();
        assert!(verify_frame(&f).valid);
        assert_eq!(f.classes().len(), 5);
        assert_frame_shape(&f);
    }

    #[test]
    fn frame_inadmissible_and_guarded_cases() {
        assert!(matches!(search_frame(3, 2, 5), Err(Error::Admissibility(_))));
        assert!(matches!(search_frame(4, 3, 4), Err(Error::Admissibility(_))));
        assert!(matches!(search_frame(5, 2, 4), Err(Error::Parameter(_))));
        // admissible (2 | g, 3 | g(m-1) = 18, m >= 4) but over the point cap
        assert!(matches!(search_frame(3, 2, 10), Err(Error::Resource { .. })));
    }

    #[test]
    fn frame_search_is_deterministic() {
        assert_eq!(search_frame(3, 2, 4).unwrap(), search_frame(3, 2, 4).unwrap());
    }

    #[test]
    fn max_cwc_known_values() {
        assert_eq!(brute_max_cwc(2, 7, 3, 3).unwrap().size(), 7);
        assert_eq!(brute_max_cwc(2, 6, 3, 3).unwrap().size(), 4);
        assert_eq!(brute_max_cwc(3, 4, 5, 3).unwrap().size(), 1);
    }

    #[test]
    fn max_cwc_monotonicity() {
        let a = |d: usize, n: usize| brute_max_cwc(2, n, d, 3).unwrap().size();
        for d in 2..=5 {
            assert!(a(d, 6) >= a(d + 1, 6), "d={d}");
        }
        for n in 4..=7 {
            assert!(a(3, n) <= a(3, n + 1), "n={n}");
        }
    }

    #[test]
    fn max_cwc_scale_guard() {
        assert!(matches!(brute_max_cwc(2, 20, 3, 10), Err(Error::Resource { .. })));
    }

    #[test]
    fn max_cwc_words_pairwise_far() {
        let c = brute_max_cwc(3, 5, 4, 3).unwrap();
        for (i, x) in c.words().iter().enumerate() {
            for y in &c.words()[i + 1..] {
                assert!(hamming_distance(x, y).unwrap() >= 4);
            }
        }
    }
}
