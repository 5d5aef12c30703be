use super::matcher::PrevMatcher;
use super::{nonempty, Factorization, Flavor, Phrase};
use crate::error::Result;
use crate::text::SymbolString;

/// Greedy LZSS where a copy's source may run into the phrase itself.
pub fn lzss_overlapping(text: &SymbolString) -> Result<Factorization> {
    lzss(text, true)
}

/// Greedy LZSS where a copy's source must end before the phrase starts.
pub fn lzss_nonoverlapping(text: &SymbolString) -> Result<Factorization> {
    lzss(text, false)
}

fn lzss(text: &SymbolString, overlap: bool) -> Result<Factorization> {
    nonempty(text, "LZSS")?;
    let t = text.as_slice();
    let mut m = PrevMatcher::new(t);
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < t.len() {
        let phrase = match m.longest(pos, overlap) {
            Some((len, src)) => Phrase::copy(pos + 1, len, src + 1),
            None => Phrase::literal(pos + 1, t[pos]),
        };
        pos += phrase.len;
        phrases.push(phrase);
    }
    let flavor = if overlap { Flavor::LzssOverlap } else { Flavor::LzssNonoverlap };
    Ok(Factorization::new(flavor, t.len(), phrases))
}
