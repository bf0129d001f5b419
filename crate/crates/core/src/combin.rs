//! k-subsets of `0..n` in lexicographic order, with ranking.

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let left = k - slot - 1;
        loop {
            let with_next = binomial(n - next - 1, left);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// Position of `subset` (ascending) among the k-subsets of `0..n`.
pub fn rank(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut r = 0;
    let mut start = 0;
    for (slot, &x) in subset.iter().enumerate() {
        for skipped in start..x {
            r += binomial(n - skipped - 1, k - slot - 1);
        }
        start = x + 1;
    }
    r
}

/// Advances `c` to the next k-subset of `0..n`; false when exhausted.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterator over all k-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        self.cur = next_combination(&mut next, self.n).then_some(next);
        Some(out)
    }
}
