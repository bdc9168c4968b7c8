//! Binomial coefficients and in-place lexicographic subset enumeration.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `visit` once for every `k`-subset of `pool`, in lexicographic order
/// of positions within `pool`. The slice handed to `visit` holds the chosen
/// elements of `pool`. Nothing is visited when `k == 0` or `k > pool.len()`.
pub fn for_each_combination<F>(pool: &[usize], k: usize, mut visit: F)
where
    F: FnMut(&[usize]),
{
    let n = pool.len();
    if k == 0 || k > n {
        return;
    }
    let mut pos: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<usize> = pos.iter().map(|&p| pool[p]).collect();
    loop {
        visit(&chosen);
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && pos[i - 1] == n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        pos[i - 1] += 1;
        chosen[i - 1] = pool[pos[i - 1]];
        for r in i..k {
            pos[r] = pos[r - 1] + 1;
            chosen[r] = pool[pos[r]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(99, 2), 4851);
        assert_eq!(binomial(52, 5), 2_598_960);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn enumerates_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_combination(&[3, 5, 7, 9], 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![3, 5],
                vec![3, 7],
                vec![3, 9],
                vec![5, 7],
                vec![5, 9],
                vec![7, 9]
            ]
        );
    }

    #[test]
    fn count_matches_binomial() {
        for n in 0..9 {
            let pool: Vec<usize> = (0..n).collect();
            for k in 0..=n + 1 {
                let mut count = 0u64;
                for_each_combination(&pool, k, |_| count += 1);
                let expected = if k == 0 { 0 } else { binomial(n, k) };
                assert_eq!(count, expected, "n={n} k={k}");
            }
        }
    }
}
