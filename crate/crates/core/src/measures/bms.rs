//! Bidirectional macro schemes.
//!
//! A scheme is a [`Factorization`] of flavor [`Flavor::Bms`]: ground phrases
//! are literals, every other phrase copies a substring anywhere in the text.
//! Position `x` of a copy phrase maps to `F(x) = source + (x - start)`;
//! ground positions map to the sink. The scheme is valid when every chain
//! of `F` reaches the sink.

use crate::error::{Error, Result};
use crate::factor::{lzss_overlapping, nonempty, verify_factorization, Factorization, Flavor, Phrase, PhraseKind, Violation};
use crate::limits::{Limits, ENV_BMS};
use crate::text::{Symbol, SymbolString};

/// Full validity check: tiling, contents, and termination of `F`.
pub fn check_bms(text: &SymbolString, scheme: &Factorization) -> Result<(), Violation> {
    verify_factorization(text, &scheme.reinterpret(Flavor::Bms))
}

pub fn bms_is_valid(text: &SymbolString, scheme: &Factorization) -> bool {
    check_bms(text, scheme).is_ok()
}

/// Termination of the reference map; assumes tiling and contents are fine.
pub(crate) fn check_references(n: usize, scheme: &Factorization) -> Result<(), Violation> {
    const SINK: usize = usize::MAX;
    let mut target = vec![SINK; n];
    for p in &scheme.phrases {
        if let PhraseKind::Copy { source } = p.kind {
            for d in 0..p.len {
                target[p.start - 1 + d] = source - 1 + d;
            }
        }
    }
    // 0 unvisited, 1 on the current chain, 2 known to reach the sink.
    let mut state = vec![0u8; n];
    let mut chain = Vec::new();
    for x in 0..n {
        let mut y = x;
        while y != SINK && state[y] == 0 {
            state[y] = 1;
            chain.push(y);
            y = target[y];
        }
        if y != SINK && state[y] == 1 {
            return Err(Violation::Cycle { position: y + 1 });
        }
        for z in chain.drain(..) {
            state[z] = 2;
        }
    }
    Ok(())
}

/// A smallest valid scheme under the default limit.
pub fn smallest_bms(text: &SymbolString) -> Result<Factorization> {
    smallest_bms_with_limit(text, Limits::default().bms)
}

/// A smallest valid scheme, by exhaustive search.
///
/// Phrase counts are tried upward from the alphabet size (every symbol needs
/// a ground phrase). For each count, tilings are enumerated left to right and
/// sources are assigned afterwards, most constrained phrase first, rejecting
/// an assignment as soon as it closes a reference cycle. The overlapping LZSS
/// parse is always a valid scheme and caps the search.
pub fn smallest_bms_with_limit(text: &SymbolString, limit: usize) -> Result<Factorization> {
    nonempty(text, "smallest macro scheme")?;
    let n = text.len();
    if n > limit {
        return Err(Error::Capability { what: "smallest macro scheme", limit, actual: n, env: ENV_BMS });
    }
    let upper = as_scheme(&lzss_overlapping(text)?);
    let search = Search::new(text.as_slice());
    for b in text.alphabet().len()..upper.count() {
        if let Some(s) = search.with_phrases(b) {
            return Ok(s);
        }
    }
    Ok(upper)
}

/// A left-to-right parsing viewed as a macro scheme.
pub(crate) fn as_scheme(f: &Factorization) -> Factorization {
    let phrases = f
        .phrases
        .iter()
        .map(|p| match p.kind {
            PhraseKind::Copy { source } if p.len == 1 => Phrase::literal(p.start, symbol_at(f, source)),
            _ => *p,
        })
        .collect();
    Factorization::new(Flavor::Bms, f.n, phrases)
}

// Only used on parsings whose length-1 copies point at literals or earlier
// copies; resolve through the decoded text.
fn symbol_at(f: &Factorization, pos: usize) -> Symbol {
    f.decode().expect("left-to-right parsing decodes").as_slice()[pos - 1]
}

struct Search<'a> {
    t: &'a [Symbol],
    sigma: usize,
}

struct Part {
    start: usize,
    len: usize,
    sources: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(t: &'a [Symbol]) -> Self {
        let sigma = t.iter().collect::<std::collections::BTreeSet<_>>().len();
        Self { t, sigma }
    }

    fn sources(&self, start: usize, len: usize) -> Vec<usize> {
        let t = self.t;
        (0..=t.len() - len)
            .filter(|&q| q != start && t[q..q + len] == t[start..start + len])
            .collect()
    }

    fn with_phrases(&self, b: usize) -> Option<Factorization> {
        let mut parts = Vec::with_capacity(b);
        let mut grounded = Vec::new();
        self.tile(0, b, &mut parts, &mut grounded)
    }

    fn tile(&self, pos: usize, left: usize, parts: &mut Vec<Part>, grounded: &mut Vec<Symbol>) -> Option<Factorization> {
        let n = self.t.len();
        if pos == n {
            return if grounded.len() == self.sigma { self.assign(parts) } else { None };
        }
        // Symbols still lacking a ground phrase must each get one from here on.
        let missing = self.sigma - grounded.len();
        if left == 0 || missing > left {
            return None;
        }
        let max_len = n - pos - (left - 1);
        for len in (1..=max_len).rev() {
            if len == 1 {
                let c = self.t[pos];
                let new = !grounded.contains(&c);
                if new {
                    grounded.push(c);
                }
                parts.push(Part { start: pos, len: 1, sources: Vec::new() });
                let found = self.tile(pos + 1, left - 1, parts, grounded);
                parts.pop();
                if new {
                    grounded.pop();
                }
                if found.is_some() {
                    return found;
                }
            } else {
                if missing > left - 1 {
                    continue;
                }
                let sources = self.sources(pos, len);
                if sources.is_empty() {
                    continue;
                }
                parts.push(Part { start: pos, len, sources });
                let found = self.tile(pos + len, left - 1, parts, grounded);
                parts.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn assign(&self, parts: &[Part]) -> Option<Factorization> {
        const UNSET: usize = usize::MAX - 1;
        const SINK: usize = usize::MAX;
        let n = self.t.len();
        let mut target = vec![UNSET; n];
        for p in parts.iter().filter(|p| p.len == 1) {
            target[p.start] = SINK;
        }
        let mut order: Vec<usize> = (0..parts.len()).filter(|&k| parts[k].len > 1).collect();
        order.sort_by_key(|&k| parts[k].sources.len());
        let mut chosen = vec![0usize; parts.len()];
        if !self.assign_from(parts, &order, 0, &mut target, &mut chosen) {
            return None;
        }
        let phrases = parts
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if p.len == 1 {
                    Phrase::literal(p.start + 1, self.t[p.start])
                } else {
                    Phrase::copy(p.start + 1, p.len, chosen[k] + 1)
                }
            })
            .collect();
        Some(Factorization::new(Flavor::Bms, n, phrases))
    }

    fn assign_from(&self, parts: &[Part], order: &[usize], at: usize, target: &mut [usize], chosen: &mut [usize]) -> bool {
        let Some(&k) = order.get(at) else {
            return true;
        };
        let part = &parts[k];
        for &q in &part.sources {
            for d in 0..part.len {
                target[part.start + d] = q + d;
            }
            if !closes_cycle(target, part.start, part.len) {
                chosen[k] = q;
                if self.assign_from(parts, order, at + 1, target, chosen) {
                    return true;
                }
            }
        }
        for d in 0..part.len {
            target[part.start + d] = usize::MAX - 1;
        }
        false
    }
}

// Only chains through the freshly assigned positions can be new cycles.
fn closes_cycle(target: &[usize], start: usize, len: usize) -> bool {
    let n = target.len();
    (start..start + len).any(|x| {
        let mut y = x;
        for _ in 0..=n {
            if y >= n {
                return false;
            }
            y = target[y];
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abab() -> SymbolString {
        SymbolString::from("abab")
    }

    #[test]
    fn validity_examples() {
        let (a, b) = (b'a' as Symbol, b'b' as Symbol);
        let good = Factorization::new(Flavor::Bms, 4, vec![Phrase::literal(1, a), Phrase::literal(2, b), Phrase::copy(3, 2, 1)]);
        assert!(bms_is_valid(&abab(), &good));
        let cyclic = Factorization::new(Flavor::Bms, 4, vec![Phrase::copy(1, 2, 3), Phrase::copy(3, 2, 1)]);
        assert!(matches!(check_bms(&abab(), &cyclic), Err(Violation::Cycle { .. })));
        let ground = Factorization::new(Flavor::Bms, 4, vec![
            Phrase::literal(1, a), Phrase::literal(2, b), Phrase::literal(3, a), Phrase::literal(4, b),
        ]);
        assert!(bms_is_valid(&abab(), &ground));
    }

    #[test]
    fn right_pointing_sources_are_fine() {
        // ab copies the ground pair at 3..4.
        let (a, b) = (b'a' as Symbol, b'b' as Symbol);
        let s = Factorization::new(Flavor::Bms, 4, vec![Phrase::copy(1, 2, 3), Phrase::literal(3, a), Phrase::literal(4, b)]);
        assert!(bms_is_valid(&abab(), &s));
    }

    #[test]
    fn smallest_examples() {
        let s = smallest_bms(&abab()).unwrap();
        assert_eq!(s.count(), 3);
        assert!(bms_is_valid(&abab(), &s));
        assert_eq!(smallest_bms(&SymbolString::new(vec![0])).unwrap().count(), 1);
        assert!(matches!(smallest_bms(&SymbolString::new(vec![0; 17])), Err(Error::Capability { limit: 16, .. })));
    }

    #[test]
    fn lzss_is_a_scheme() {
        for w in ["aaaa", "abracadabra", "baaabbaaa"] {
            let t = SymbolString::from(w);
            let s = as_scheme(&lzss_overlapping(&t).unwrap());
            assert!(bms_is_valid(&t, &s), "{w}");
        }
    }
}
