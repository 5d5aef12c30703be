// Suffix array with Kasai LCP; 0-based throughout.

use crate::text::Symbol;

pub(crate) struct SuffixArray {
    pub sa: Vec<usize>,
    pub rank: Vec<usize>,
    /// `lcp[r]` = LCP of the suffixes at ranks `r - 1` and `r`; `lcp[0] = 0`.
    pub lcp: Vec<usize>,
}

impl SuffixArray {
    /// Prefix doubling, O(n log^2 n).
    pub fn new(t: &[Symbol]) -> Self {
        let n = t.len();
        let mut sa: Vec<usize> = (0..n).collect();
        let mut rank: Vec<usize> = t.iter().map(|&c| c as usize).collect();
        let mut tmp = vec![0usize; n];
        let mut k = 1;
        while n > 1 && k < 2 * n {
            let key = |i: usize, rank: &[usize]| {
                (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 })
            };
            sa.sort_unstable_by_key(|&i| key(i, &rank));
            tmp[sa[0]] = 0;
            for r in 1..n {
                let bump = usize::from(key(sa[r - 1], &rank) != key(sa[r], &rank));
                tmp[sa[r]] = tmp[sa[r - 1]] + bump;
            }
            std::mem::swap(&mut rank, &mut tmp);
            if rank[sa[n - 1]] == n - 1 {
                break;
            }
            k *= 2;
        }
        if n == 1 {
            rank[0] = 0;
        }

        let mut lcp = vec![0usize; n];
        let mut h = 0usize;
        for i in 0..n {
            let r = rank[i];
            if r > 0 {
                let j = sa[r - 1];
                while i + h < n && j + h < n && t[i + h] == t[j + h] {
                    h += 1;
                }
                lcp[r] = h;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        Self { sa, rank, lcp }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    /// Fills `out[s]` with `lcp(T[s..], T[pos..])` for every `s != pos`
    /// sharing at least one symbol with `pos`, and returns the positions
    /// touched so the caller can reset them.
    pub fn lcp_with(&self, pos: usize, out: &mut [usize], touched: &mut Vec<usize>) {
        touched.clear();
        let r = self.rank[pos];
        let mut run = usize::MAX;
        for j in (0..r).rev() {
            run = run.min(self.lcp[j + 1]);
            if run == 0 {
                break;
            }
            out[self.sa[j]] = run;
            touched.push(self.sa[j]);
        }
        run = usize::MAX;
        for j in r + 1..self.len() {
            run = run.min(self.lcp[j]);
            if run == 0 {
                break;
            }
            out[self.sa[j]] = run;
            touched.push(self.sa[j]);
        }
    }

    /// Groups of suffix start positions sharing the same length-`k` prefix,
    /// one group per distinct substring of length `k`.
    pub fn groups_of_length(&self, k: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut open = false;
        for r in 0..n {
            let s = self.sa[r];
            if n - s < k {
                open = false;
                continue;
            }
            if open && self.lcp[r] >= k {
                groups.last_mut().expect("open group").push(s);
            } else {
                groups.push(vec![s]);
                open = true;
            }
        }
        groups
    }

    pub fn distinct_of_length(&self, k: usize) -> usize {
        let n = self.len();
        (0..n)
            .filter(|&r| n - self.sa[r] >= k && (r == 0 || self.lcp[r] < k || n - self.sa[r - 1] < k))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(t: &[Symbol]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..t.len()).collect();
        sa.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
        sa
    }

    #[test]
    fn matches_naive_sort() {
        let mut x: u64 = 7;
        for n in 0..60usize {
            for sigma in [1u32, 2, 3, 7] {
                let t: Vec<Symbol> = (0..n)
                    .map(|_| {
                        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((x >> 33) as u32) % sigma
                    })
                    .collect();
                let idx = SuffixArray::new(&t);
                assert_eq!(idx.sa, naive_sa(&t));
                for r in 1..n {
                    let (a, b) = (idx.sa[r - 1], idx.sa[r]);
                    let h = t[a..].iter().zip(&t[b..]).take_while(|(x, y)| x == y).count();
                    assert_eq!(idx.lcp[r], h);
                }
            }
        }
    }

    #[test]
    fn lcp_sweep() {
        let t: Vec<Symbol> = b"abaababa".iter().map(|&b| b as Symbol).collect();
        let idx = SuffixArray::new(&t);
        let mut out = vec![0; t.len()];
        let mut touched = Vec::new();
        idx.lcp_with(5, &mut out, &mut touched);
        for s in 0..t.len() {
            if s == 5 {
                continue;
            }
            let h = t[s..].iter().zip(&t[5..]).take_while(|(x, y)| x == y).count();
            assert_eq!(out[s], h, "s={s}");
        }
    }
}
