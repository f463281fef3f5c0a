//! Small exact combinatorics helpers shared across modules.

/// C(n, k) as u128. Exact for everything this crate enumerates; the bounds
/// module has its own big-integer binomial for report arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // multiply before divide keeps this exact: acc * (n-i) is divisible by i+1
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All k-subsets of `items`, in lexicographic order of index tuples.
pub fn k_subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // odometer step
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        if k == 0 {
            return out;
        }
    }
}

/// True when the sorted slices share no element.
pub fn sorted_disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// |a ∩ b| for sorted slices.
pub fn sorted_intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(49, 2), 1176);
        assert_eq!(binomial(52, 26), 495_918_532_948_104);
    }

    #[test]
    fn k_subsets_lex_order() {
        let s = k_subsets(&[1, 2, 3, 4], 2);
        assert_eq!(s, vec![
            vec![1, 2], vec![1, 3], vec![1, 4],
            vec![2, 3], vec![2, 4], vec![3, 4],
        ]);
        assert_eq!(k_subsets(&[1, 2], 0), vec![Vec::<i32>::new()]);
        assert_eq!(k_subsets(&[1, 2], 3), Vec::<Vec<i32>>::new());
    }

    #[test]
    fn sorted_set_helpers() {
        assert!(sorted_disjoint(&[1, 3], &[2, 4]));
        assert!(!sorted_disjoint(&[1, 3], &[3]));
        assert_eq!(sorted_intersection_size(&[1, 2, 5, 9], &[2, 3, 9]), 2);
    }
}
