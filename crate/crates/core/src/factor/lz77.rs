use super::matcher::PrevMatcher;
use super::{nonempty, Factorization, Flavor, Phrase, PhraseKind};
use crate::error::Result;
use crate::text::SymbolString;

/// Classic LZ77: longest previous match (source may overlap) plus the next
/// symbol. The last phrase drops the symbol when the text ends inside the
/// match.
pub fn lz77_overlapping(text: &SymbolString) -> Result<Factorization> {
    lz77(text, true)
}

/// Classic LZ77 with sources ending before the phrase.
pub fn lz77_nonoverlapping(text: &SymbolString) -> Result<Factorization> {
    lz77(text, false)
}

fn lz77(text: &SymbolString, overlap: bool) -> Result<Factorization> {
    nonempty(text, "LZ77")?;
    let t = text.as_slice();
    let n = t.len();
    let mut m = PrevMatcher::new(t);
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < n {
        let phrase = match m.longest(pos, overlap) {
            None => Phrase::literal(pos + 1, t[pos]),
            Some((len, src)) if pos + len == n => Phrase::copy(pos + 1, len, src + 1),
            Some((len, src)) => Phrase {
                start: pos + 1,
                len: len + 1,
                kind: PhraseKind::CopyLiteral { source: src + 1 },
            },
        };
        pos += phrase.len;
        phrases.push(phrase);
    }
    let flavor = if overlap { Flavor::Lz77Overlap } else { Flavor::Lz77Nonoverlap };
    Ok(Factorization::new(flavor, n, phrases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let aaaa = SymbolString::from("aaaa");
        let f = lz77_overlapping(&aaaa).unwrap();
        assert_eq!(f.phrases, vec![Phrase::literal(1, b'a' as u32), Phrase::copy(2, 3, 1)]);
        assert_eq!(lz77_overlapping(&SymbolString::new(vec![0, 1])).unwrap().count(), 2);
        let abab = SymbolString::from("abab");
        assert_eq!(lz77_nonoverlapping(&abab).unwrap().count(), 3);
        // a | ab? no: a, then "aab" needs a literal after the one-symbol match.
        let f = lz77_nonoverlapping(&SymbolString::from("aabx")).unwrap();
        assert_eq!(f.phrases[1].kind, PhraseKind::CopyLiteral { source: 1 });
        assert_eq!(f.count(), 3);
    }
}
