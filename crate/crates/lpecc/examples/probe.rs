//! Scratch measurement harness for the ternary weight-4 instances.

use lpecc::clique::{BitSet, CompatGraph};

fn main() {
    let n: usize = std::env::var("PROBE_N").map(|s| s.parse().unwrap()).unwrap_or(7);
    let mut words: Vec<Vec<u8>> = Vec::new();
    for support in combinations(n, 4) {
        for pattern in 0u32..16 {
            let mut w = vec![0u8; n];
            for (bit, &pos) in support.iter().enumerate() {
                w[pos] = if pattern & (1 << bit) != 0 { 2 } else { 1 };
            }
            words.push(w);
        }
    }
    let v = words.len();
    let dist = |a: &[u8], b: &[u8]| a.iter().zip(b).filter(|(x, y)| x != y).count();
    let g = CompatGraph::from_predicate(v, |i, j| dist(&words[i], &words[j]) >= 3);

    // multi-start greedy
    let mut best: Vec<usize> = Vec::new();
    for s in 0..v {
        let mut clique = vec![s];
        let mut cand = g.neighbors(s).clone();
        loop {
            let mut pick = None;
            for u in cand.iter() {
                let score = cand.intersection_count(g.neighbors(u));
                if pick.is_none_or(|(_, c)| score > c) {
                    pick = Some((u, score));
                }
            }
            let Some((u, _)) = pick else { break };
            clique.push(u);
            cand = cand.intersect(g.neighbors(u));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    println!("greedy {}", best.len());

    // local search: drop one or two members, try to re-extend greedily by
    // common-candidate count; accept strict improvements, with a seeded
    // perturbation cycle to escape plateaus
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let extend = |clique: &mut Vec<usize>, g: &CompatGraph| {
        let mut cand = BitSet::full(v);
        for &x in clique.iter() {
            cand = cand.intersect(g.neighbors(x));
        }
        loop {
            let mut pick = None;
            for u in cand.iter() {
                let score = cand.intersection_count(g.neighbors(u));
                if pick.is_none_or(|(_, c)| score > c) {
                    pick = Some((u, score));
                }
            }
            let Some((u, _)) = pick else { break };
            clique.push(u);
            cand = cand.intersect(g.neighbors(u));
        }
    };
    let mut cur = best.clone();
    for round in 0..200_000u64 {
        let mut trial = cur.clone();
        let drops = 1 + (rng() % 3) as usize;
        for _ in 0..drops {
            if trial.is_empty() {
                break;
            }
            let k = (rng() % trial.len() as u64) as usize;
            trial.swap_remove(k);
        }
        extend(&mut trial, &g);
        if trial.len() >= cur.len() {
            cur = trial;
            if cur.len() > best.len() {
                best = cur.clone();
                println!("round {round}: improved to {}", best.len());
            }
        }
    }
    println!("final {}", best.len());
    // sanity: verify clique
    let ok = best
        .iter()
        .enumerate()
        .all(|(i, &x)| best[i + 1..].iter().all(|&y| g.neighbors(x).contains(y)));
    println!("clique_ok {ok}");
    // cell usage profile
    let mut per_cell = vec![0usize; v / 16];
    for &x in &best {
        per_cell[x / 16] += 1;
    }
    let doubles = per_cell.iter().filter(|&&c| c == 2).count();
    let singles = per_cell.iter().filter(|&&c| c == 1).count();
    let empty = per_cell.iter().filter(|&&c| c == 0).count();
    println!("cells: {doubles} doubled, {singles} single, {empty} empty");
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
