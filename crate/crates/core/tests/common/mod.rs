//! Slow, obviously-correct reference implementations used as oracles.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repsens::{Factorization, Flavor, Phrase, PhraseKind, Symbol, SymbolString};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_text(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> SymbolString {
    SymbolString::new((0..n).map(|_| rng.gen_range(0..sigma)).collect())
}

pub fn all_strings(n: usize, sigma: u32) -> impl Iterator<Item = SymbolString> {
    let total = (sigma as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = (code % sigma as u64) as Symbol;
            code /= sigma as u64;
        }
        SymbolString::new(v)
    })
}

/// Longest earlier match at `pos` and its leftmost source, by brute force.
fn longest_previous(t: &[Symbol], pos: usize, overlap: bool) -> (usize, usize) {
    let n = t.len();
    let mut best = (0, 0);
    for s in 0..pos {
        let mut l = 0;
        while pos + l < n && t[s + l] == t[pos + l] && (overlap || s + l < pos) {
            l += 1;
        }
        if l > best.0 {
            best = (l, s);
        }
    }
    best
}

pub fn naive_lzss(text: &SymbolString, overlap: bool) -> Factorization {
    let t = text.as_slice();
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < t.len() {
        let (l, s) = longest_previous(t, pos, overlap);
        let p = if l == 0 { Phrase::literal(pos + 1, t[pos]) } else { Phrase::copy(pos + 1, l, s + 1) };
        pos += p.len;
        phrases.push(p);
    }
    let flavor = if overlap { Flavor::LzssOverlap } else { Flavor::LzssNonoverlap };
    Factorization::new(flavor, t.len(), phrases)
}

pub fn naive_lz77(text: &SymbolString, overlap: bool) -> Factorization {
    let t = text.as_slice();
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < t.len() {
        let (l, s) = longest_previous(t, pos, overlap);
        let p = if l == 0 {
            Phrase::literal(pos + 1, t[pos])
        } else if pos + l == t.len() {
            Phrase::copy(pos + 1, l, s + 1)
        } else {
            Phrase { start: pos + 1, len: l + 1, kind: PhraseKind::CopyLiteral { source: s + 1 } }
        };
        pos += p.len;
        phrases.push(p);
    }
    let flavor = if overlap { Flavor::Lz77Overlap } else { Flavor::Lz77Nonoverlap };
    Factorization::new(flavor, t.len(), phrases)
}

/// Greedy LZ-End straight from the definition: the longest prefix of the
/// rest that ends some earlier phrase-prefix `T[..e]`.
pub fn naive_lzend(text: &SymbolString) -> Factorization {
    let t = text.as_slice();
    let mut ends: Vec<usize> = Vec::new();
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < t.len() {
        let mut best: Option<(usize, usize)> = None;
        for &e in &ends {
            for l in 1..=e.min(t.len() - pos) {
                if t[e - l..e] == t[pos..pos + l] {
                    let s = e - l;
                    let better = match best {
                        None => true,
                        Some((bl, bs)) => l > bl || (l == bl && s < bs),
                    };
                    if better {
                        best = Some((l, s));
                    }
                }
            }
        }
        let p = match best {
            Some((l, s)) => Phrase::copy(pos + 1, l, s + 1),
            None => Phrase::literal(pos + 1, t[pos]),
        };
        pos += p.len;
        ends.push(pos);
        phrases.push(p);
    }
    Factorization::new(Flavor::LzEnd, t.len(), phrases)
}

/// Fewest LZ-End phrases, by memoized depth-first search over the set of
/// phrase ends laid so far.
pub fn naive_lzend_optimal_count(text: &SymbolString) -> usize {
    fn go(t: &[Symbol], ends: Vec<usize>, memo: &mut HashMap<Vec<usize>, usize>) -> usize {
        let pos = ends.last().copied().unwrap_or(0);
        if pos == t.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&ends) {
            return v;
        }
        let mut lens = HashSet::new();
        if !t[..pos].contains(&t[pos]) {
            lens.insert(1);
        }
        for &e in &ends {
            for l in 1..=e.min(t.len() - pos) {
                if t[e - l..e] == t[pos..pos + l] {
                    lens.insert(l);
                }
            }
        }
        let best = lens
            .into_iter()
            .map(|l| {
                let mut next = ends.clone();
                next.push(pos + l);
                1 + go(t, next, memo)
            })
            .min()
            .expect("some phrase always fits");
        memo.insert(ends, best);
        best
    }
    go(text.as_slice(), Vec::new(), &mut HashMap::new())
}

pub fn naive_lz78(text: &SymbolString) -> Factorization {
    let t = text.as_slice();
    let mut dict: Vec<(Vec<Symbol>, usize)> = Vec::new();
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < t.len() {
        // Longest earlier phrase that prefixes the rest.
        let mut best: Option<&(Vec<Symbol>, usize)> = None;
        for d in &dict {
            if t[pos..].starts_with(&d.0) && best.is_none_or(|b| d.0.len() > b.0.len()) {
                best = Some(d);
            }
        }
        let depth = best.map_or(0, |b| b.0.len());
        let p = if pos + depth == t.len() {
            Phrase::copy(pos + 1, depth, best.expect("non-empty repeat").1)
        } else if depth == 0 {
            Phrase::literal(pos + 1, t[pos])
        } else {
            Phrase { start: pos + 1, len: depth + 1, kind: PhraseKind::CopyLiteral { source: best.unwrap().1 } }
        };
        if pos + depth < t.len() {
            dict.push((t[pos..pos + depth + 1].to_vec(), pos + 1));
        }
        pos += p.len;
        phrases.push(p);
    }
    Factorization::new(Flavor::Lz78, t.len(), phrases)
}

pub fn naive_distinct(t: &[Symbol], k: usize) -> usize {
    t.windows(k).collect::<HashSet<_>>().len()
}

/// Every distinct substring has an occurrence holding a chosen 0-based position.
pub fn naive_is_attractor(t: &[Symbol], gamma: &[usize]) -> bool {
    let n = t.len();
    let mut subs: HashMap<&[Symbol], bool> = HashMap::new();
    for i in 0..n {
        for j in i + 1..=n {
            let hit = gamma.iter().any(|&g| i <= g && g < j);
            *subs.entry(&t[i..j]).or_insert(false) |= hit;
        }
    }
    subs.values().all(|&v| v)
}

/// Smallest attractor size over all subsets, smallest first.
pub fn brute_attractor_size(text: &SymbolString) -> usize {
    let n = text.len();
    (0u32..1 << n)
        .filter(|mask| {
            let g: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            naive_is_attractor(text.as_slice(), &g)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("all positions work")
}

/// Whether every position's reference chain reaches a ground phrase within
/// `n` steps.
pub fn naive_bms_acyclic(n: usize, targets: &[Option<usize>]) -> bool {
    (0..n).all(|x| {
        let mut y = Some(x);
        for _ in 0..=n {
            match y {
                None => return true,
                Some(v) => y = targets[v],
            }
        }
        y.is_none()
    })
}

/// Smallest macro scheme size over every tiling and every source choice.
pub fn brute_bms_size(text: &SymbolString) -> usize {
    let t = text.as_slice();
    let n = t.len();
    let mut best = n;
    for cuts in 0u32..1 << (n - 1) {
        let mut parts = Vec::new();
        let mut start = 0;
        for k in 0..n {
            if k == n - 1 || cuts >> k & 1 == 1 {
                parts.push((start, k + 1 - start));
                start = k + 1;
            }
        }
        if parts.len() >= best {
            continue;
        }
        let choices: Vec<Vec<Option<usize>>> = parts
            .iter()
            .map(|&(s, l)| {
                if l == 1 {
                    vec![None]
                } else {
                    (0..=n - l).filter(|&q| q != s && t[q..q + l] == t[s..s + l]).map(Some).collect()
                }
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; parts.len()];
        'assign: loop {
            let mut targets = vec![None; n];
            for (k, &(s, l)) in parts.iter().enumerate() {
                if let Some(q) = choices[k][idx[k]] {
                    for d in 0..l {
                        targets[s + d] = Some(q + d);
                    }
                }
            }
            if naive_bms_acyclic(n, &targets) {
                best = parts.len();
                break 'assign;
            }
            let mut k = 0;
            loop {
                if k == parts.len() {
                    break 'assign;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    best
}

/// LZSS of the reversed text, mirrored: a valid macro scheme whose sources
/// all point right.
pub fn mirrored_scheme(text: &SymbolString) -> Factorization {
    let n = text.len();
    let rev = SymbolString::new(text.as_slice().iter().rev().copied().collect());
    let f = repsens::factor::lzss_nonoverlapping(&rev).expect("non-empty");
    let mut phrases: Vec<Phrase> = f
        .phrases
        .iter()
        .map(|p| {
            let start = n + 2 - p.start - p.len;
            match p.kind {
                PhraseKind::Copy { source } => Phrase::copy(start, p.len, n + 2 - source - p.len),
                _ => Phrase::literal(start, text.as_slice()[start - 1]),
            }
        })
        .collect();
    phrases.reverse();
    Factorization::new(Flavor::Bms, n, phrases)
}
