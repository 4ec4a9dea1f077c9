//! Index bookkeeping for exterior powers of a free module.

/// All `p`-subsets of `0..n`, each sorted, in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut cur, &mut out);
    out
}

/// Sorts an index sequence, returning the permutation sign; `None` if an index repeats.
pub fn sort_with_sign(mut v: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

/// `e_i ^ e_J` as `sign * e_K` with `K` sorted.
pub fn wedge_front(i: usize, j: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = Vec::with_capacity(j.len() + 1);
    v.push(i);
    v.extend_from_slice(j);
    sort_with_sign(v)
}

/// `J` with its `k`-th entry removed.
pub fn omit(j: &[usize], k: usize) -> Vec<usize> {
    j.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &x)| x).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn permutations(k: usize) -> Vec<(i64, Vec<usize>)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(i64, Vec<usize>)>) {
        if cur.len() == k {
            let sign = sort_with_sign(cur.clone()).unwrap().0;
            out.push((sign, cur.clone()));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        for n in 0..6 {
            for p in 0..=n {
                assert_eq!(subsets(n, p).len(), binomial(n, p));
            }
        }
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn signs() {
        assert_eq!(wedge_front(1, &[0]), Some((-1, vec![0, 1])));
        assert_eq!(wedge_front(0, &[0, 2]), None);
        assert_eq!(wedge_front(2, &[0, 1]), Some((1, vec![0, 1, 2])));
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(s, _)| s).sum::<i64>(), 0);
    }
}
