use std::collections::HashSet;

use super::matcher::PrevMatcher;
use super::{nonempty, Factorization, Flavor, Phrase};
use crate::error::{Error, Result};
use crate::limits::{Limits, ENV_LZEND_OPT, HARD_CAP};
use crate::text::SymbolString;

/// Greedy LZ-End: each copy is the longest prefix of the rest of the text
/// that is a suffix of `T[1..e]` for some earlier phrase end `e`.
pub fn lz_end_greedy(text: &SymbolString) -> Result<Factorization> {
    nonempty(text, "LZ-End")?;
    let t = text.as_slice();
    let n = t.len();
    let mut m = PrevMatcher::new(t);
    // Exclusive phrase ends, ascending.
    let mut ends: Vec<usize> = Vec::new();
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < n {
        let mut best: Option<(usize, usize)> = None;
        m.for_each_prev(pos, |s, h| {
            let reach = s + h.min(pos - s);
            // Largest phrase end in (s, reach].
            let k = ends.partition_point(|&e| e <= reach);
            if k == 0 || ends[k - 1] <= s {
                return;
            }
            let len = ends[k - 1] - s;
            match best {
                Some((bl, bs)) if bl > len || (bl == len && bs < s) => {}
                _ => best = Some((len, s)),
            }
        });
        let phrase = match best {
            Some((len, src)) => Phrase::copy(pos + 1, len, src + 1),
            None => Phrase::literal(pos + 1, t[pos]),
        };
        pos += phrase.len;
        ends.push(pos);
        phrases.push(phrase);
    }
    Ok(Factorization::new(Flavor::LzEnd, n, phrases))
}

/// Smallest LZ-End factorization, by exact search under the default limit.
pub fn lz_end_optimal(text: &SymbolString) -> Result<Factorization> {
    lz_end_optimal_with_limit(text, Limits::default().lzend_opt)
}

/// Smallest LZ-End factorization by breadth-first search over sets of phrase
/// ends.
///
/// A state is the set of phrase ends laid down so far; its position is the
/// largest of them. Every state at depth `d` has exactly `d` phrases, so the
/// first depth that reaches `n` is optimal. Among optimal end sets the
/// numerically smallest bitmask wins.
pub fn lz_end_optimal_with_limit(text: &SymbolString, limit: usize) -> Result<Factorization> {
    nonempty(text, "LZ-End")?;
    let t = text.as_slice();
    let n = t.len();
    let cap = limit.min(HARD_CAP);
    if n > cap {
        return Err(Error::Capability { what: "optimal LZ-End", limit: cap, actual: n, env: ENV_LZEND_OPT });
    }

    // copyable[e][pos]: bit L set iff T[e-L..e) == T[pos..pos+L), e <= pos.
    let mut copyable = vec![vec![0u64; n]; n + 1];
    for e in 1..=n {
        for pos in e..n {
            let mut bits = 0u64;
            for len in 1..=e.min(n - pos) {
                if t[e - len..e] == t[pos..pos + len] {
                    bits |= 1 << len;
                }
            }
            copyable[e][pos] = bits;
        }
    }
    let fresh: Vec<bool> = (0..n).map(|p| !t[..p].contains(&t[p])).collect();

    let position = |mask: u64| if mask == 0 { 0 } else { 63 - mask.leading_zeros() as usize };
    let goal = 1u64 << n;
    let mut level: Vec<u64> = vec![0];
    let best_mask = loop {
        let mut next: HashSet<u64> = HashSet::new();
        for &mask in &level {
            let pos = position(mask);
            let mut lens = if fresh[pos] { 1u64 << 1 } else { 0 };
            let mut ends = mask;
            while ends != 0 {
                let e = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                lens |= copyable[e][pos];
            }
            while lens != 0 {
                let len = lens.trailing_zeros() as usize;
                lens &= lens - 1;
                next.insert(mask | (1u64 << (pos + len)));
            }
        }
        if let Some(done) = next.iter().copied().filter(|m| m & goal != 0).min() {
            break done;
        }
        debug_assert!(!next.is_empty(), "every non-fresh symbol has a length-1 source");
        level = next.into_iter().collect();
    };

    let mut phrases = Vec::new();
    let mut start = 0;
    let mut rest = best_mask;
    let mut laid = 0u64;
    while rest != 0 {
        let end = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let len = end - start;
        let phrase = if len == 1 && fresh[start] {
            Phrase::literal(start + 1, t[start])
        } else {
            // Leftmost source: smallest admissible phrase end.
            let mut ends = laid;
            let e = loop {
                let e = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                if copyable[e][start] & (1 << len) != 0 {
                    break e;
                }
            };
            Phrase::copy(start + 1, len, e - len + 1)
        };
        phrases.push(phrase);
        laid |= 1 << end;
        start = end;
    }
    Ok(Factorization::new(Flavor::LzEnd, n, phrases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::verify_factorization;

    #[test]
    fn greedy_examples() {
        let t = SymbolString::from("ababab");
        let f = lz_end_greedy(&t).unwrap();
        let lens: Vec<_> = f.phrases.iter().map(|p| p.len).collect();
        assert_eq!(lens, vec![1, 1, 2, 2]);
        assert!(verify_factorization(&t, &f).is_ok());
        assert_eq!(lz_end_greedy(&SymbolString::new(vec![0])).unwrap().count(), 1);
    }

    #[test]
    fn optimal_limits() {
        let long = SymbolString::new(vec![0; 25]);
        assert!(matches!(lz_end_optimal(&long), Err(Error::Capability { limit: 24, .. })));
        assert_eq!(lz_end_optimal(&SymbolString::new(vec![0])).unwrap().count(), 1);
        assert!(lz_end_optimal_with_limit(&long, 30).is_ok());
    }

    #[test]
    fn optimal_is_valid_and_no_worse() {
        for word in ["ababab", "aaaaaaaaaaaaaaaaaaaaaaaa", "abaababaabaababaababaaba", "mississippi"] {
            let t = SymbolString::from(word);
            let opt = lz_end_optimal(&t).unwrap();
            assert!(verify_factorization(&t, &opt).is_ok(), "{word}");
            assert!(opt.count() <= lz_end_greedy(&t).unwrap().count(), "{word}");
        }
    }
}
