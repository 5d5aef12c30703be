use std::collections::HashMap;

use super::{nonempty, Factorization, Flavor, Phrase, PhraseKind};
use crate::error::Result;
use crate::text::{Symbol, SymbolString};

/// LZ78 trie parsing.
///
/// Each phrase is the longest earlier phrase plus one symbol. When the text
/// ends in the middle of such an extension the final phrase repeats an
/// earlier one and is stored as a plain copy of it.
pub fn lz78(text: &SymbolString) -> Result<Factorization> {
    nonempty(text, "LZ78")?;
    let t = text.as_slice();
    let n = t.len();
    // Node 0 is the empty phrase; `starts[v]` is where node v's phrase first
    // appeared.
    let mut children: HashMap<(usize, Symbol), usize> = HashMap::new();
    let mut starts: Vec<usize> = vec![0];
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < n {
        let (mut node, mut depth) = (0, 0);
        while pos + depth < n {
            match children.get(&(node, t[pos + depth])) {
                Some(&child) => {
                    node = child;
                    depth += 1;
                }
                None => break,
            }
        }
        let phrase = if pos + depth == n {
            Phrase::copy(pos + 1, depth, starts[node])
        } else {
            children.insert((node, t[pos + depth]), starts.len());
            starts.push(pos + 1);
            if depth == 0 {
                Phrase::literal(pos + 1, t[pos])
            } else {
                Phrase { start: pos + 1, len: depth + 1, kind: PhraseKind::CopyLiteral { source: starts[node] } }
            }
        };
        pos += phrase.len;
        phrases.push(phrase);
    }
    Ok(Factorization::new(Flavor::Lz78, n, phrases))
}
