//! Symbol strings and single-character edits.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::index::SuffixArray;

pub type Symbol = u32;

/// A string over non-negative integer symbols.
///
/// Integer symbols let witness families use alphabets that grow with the
/// family parameter. Positions in the public API are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymbolString(Vec<Symbol>);

impl SymbolString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    /// One symbol per byte.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self(bytes.iter().map(|&b| Symbol::from(b)).collect())
    }

    /// Whitespace-separated decimal symbols, e.g. `"0 1 0 1"`.
    pub fn parse_symbolic(line: &str) -> Result<Self> {
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<Symbol>().map_err(|e| Error::Parse {
                    line: 1,
                    msg: format!("bad symbol {tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// `T[i]`, 1-based.
    pub fn at(&self, i: usize) -> Option<Symbol> {
        i.checked_sub(1).and_then(|k| self.0.get(k).copied())
    }

    /// `T[i..j]`, 1-based and inclusive; empty when `i > j`.
    ///
    /// # Panics
    /// When `i <= j` and the range leaves `[1, n]`.
    pub fn substring(&self, i: usize, j: usize) -> &[Symbol] {
        if i > j {
            return &[];
        }
        assert!(i >= 1 && j <= self.len(), "T[{i}..{j}] out of range for n = {}", self.len());
        &self.0[i - 1..j]
    }

    /// Symbols occurring in the string.
    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        self.0.iter().copied().collect()
    }

    /// Smallest symbol strictly greater than every symbol of the string.
    pub fn fresh_symbol(&self) -> Symbol {
        self.0.iter().max().map_or(0, |&m| m + 1)
    }

    /// The symbolic text form.
    pub fn to_symbolic(&self) -> String {
        let mut out = String::with_capacity(self.len() * 3);
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&s.to_string());
        }
        out
    }

    /// Relabels symbols in order of first occurrence (0, 1, 2, ...).
    pub fn canonical(&self) -> SymbolString {
        let mut seen: Vec<Symbol> = Vec::new();
        let out = self
            .0
            .iter()
            .map(|s| match seen.iter().position(|x| x == s) {
                Some(k) => k as Symbol,
                None => {
                    seen.push(*s);
                    (seen.len() - 1) as Symbol
                }
            })
            .collect();
        SymbolString(out)
    }
}

impl From<Vec<Symbol>> for SymbolString {
    fn from(v: Vec<Symbol>) -> Self {
        Self(v)
    }
}

impl From<&str> for SymbolString {
    fn from(s: &str) -> Self {
        Self::from_bytes(s.as_bytes())
    }
}

impl AsRef<[Symbol]> for SymbolString {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_symbolic())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EditKind {
    Substitute,
    Insert,
    Delete,
}

impl EditKind {
    pub const ALL: [EditKind; 3] = [EditKind::Substitute, EditKind::Insert, EditKind::Delete];

    pub fn name(self) -> &'static str {
        match self {
            EditKind::Substitute => "sub",
            EditKind::Insert => "ins",
            EditKind::Delete => "del",
        }
    }
}

impl fmt::Display for EditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EditKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sub" | "substitute" => Ok(EditKind::Substitute),
            "ins" | "insert" => Ok(EditKind::Insert),
            "del" | "delete" => Ok(EditKind::Delete),
            _ => input(format!("unknown edit kind {s:?} (expected sub, ins or del)")),
        }
    }
}

/// A single-character edit.
///
/// * `Substitute { position: i, .. }` replaces `T[i]`, `1 <= i <= n`.
/// * `Insert { position: i, .. }` places the symbol right after `T[i]`;
///   `i = 0` prepends, `0 <= i <= n`.
/// * `Delete { position: i }` removes `T[i]`, `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Edit {
    Substitute { position: usize, symbol: Symbol },
    Insert { position: usize, symbol: Symbol },
    Delete { position: usize },
}

impl Edit {
    pub fn kind(&self) -> EditKind {
        match self {
            Edit::Substitute { .. } => EditKind::Substitute,
            Edit::Insert { .. } => EditKind::Insert,
            Edit::Delete { .. } => EditKind::Delete,
        }
    }

    pub fn position(&self) -> usize {
        match *self {
            Edit::Substitute { position, .. }
            | Edit::Insert { position, .. }
            | Edit::Delete { position } => position,
        }
    }

    pub fn symbol(&self) -> Option<Symbol> {
        match *self {
            Edit::Substitute { symbol, .. } | Edit::Insert { symbol, .. } => Some(symbol),
            Edit::Delete { .. } => None,
        }
    }

    /// Checks the position range for a text of length `n`.
    pub fn check(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Edit::Substitute { position, .. } | Edit::Delete { position } => {
                (1..=n).contains(&position)
            }
            Edit::Insert { position, .. } => position <= n,
        };
        if ok {
            Ok(())
        } else {
            input(format!("edit {self} out of range for a text of length {n}"))
        }
    }

    /// Length of the edited text.
    pub fn edited_len(&self, n: usize) -> usize {
        match self.kind() {
            EditKind::Substitute => n,
            EditKind::Insert => n + 1,
            EditKind::Delete => n - 1,
        }
    }

    /// Where an original position (1-based) lands after the edit; `None` for
    /// the deleted position.
    pub fn map_position(&self, x: usize) -> Option<usize> {
        match *self {
            Edit::Substitute { .. } => Some(x),
            Edit::Insert { position, .. } => Some(if x > position { x + 1 } else { x }),
            Edit::Delete { position } => match x.cmp(&position) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            },
        }
    }
}

impl fmt::Display for Edit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Edit::Substitute { position, symbol } => write!(f, "sub:{position}:{symbol}"),
            Edit::Insert { position, symbol } => write!(f, "ins:{position}:{symbol}"),
            Edit::Delete { position } => write!(f, "del:{position}"),
        }
    }
}

impl FromStr for Edit {
    type Err = Error;

    /// `sub:I:SYM`, `ins:I:SYM` or `del:I`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| Error::Input(format!("bad number {t:?} in edit {s:?}: {e}")))
        };
        let kind: EditKind = parts[0].parse()?;
        match (kind, parts.len()) {
            (EditKind::Delete, 2) => Ok(Edit::Delete { position: num(parts[1])? }),
            (EditKind::Substitute, 3) => Ok(Edit::Substitute {
                position: num(parts[1])?,
                symbol: num(parts[2])? as Symbol,
            }),
            (EditKind::Insert, 3) => Ok(Edit::Insert {
                position: num(parts[1])?,
                symbol: num(parts[2])? as Symbol,
            }),
            _ => input(format!("malformed edit {s:?} (expected sub:I:S, ins:I:S or del:I)")),
        }
    }
}

/// Applies `edit` to `text`.
///
/// A substitution by the symbol already at that position is accepted here;
/// the repair procedures reject it separately.
pub fn apply_edit(text: &SymbolString, edit: &Edit) -> Result<SymbolString> {
    edit.check(text.len())?;
    let t = text.as_slice();
    let mut out = Vec::with_capacity(edit.edited_len(t.len()));
    match *edit {
        Edit::Substitute { position, symbol } => {
            out.extend_from_slice(t);
            out[position - 1] = symbol;
        }
        Edit::Insert { position, symbol } => {
            out.extend_from_slice(&t[..position]);
            out.push(symbol);
            out.extend_from_slice(&t[position..]);
        }
        Edit::Delete { position } => {
            out.extend_from_slice(&t[..position - 1]);
            out.extend_from_slice(&t[position..]);
        }
    }
    Ok(SymbolString(out))
}

/// Every single edit of `text` over `alphabet`, ordered by kind, then
/// position, then symbol.
///
/// Substitutions only use symbols that differ from the one replaced.
pub fn enumerate_edits<'a>(
    text: &'a SymbolString,
    alphabet: &'a BTreeSet<Symbol>,
) -> impl Iterator<Item = Edit> + 'a {
    EditKind::ALL
        .into_iter()
        .flat_map(move |kind| edits_of_kind(text, alphabet, kind))
}

/// The slice of [`enumerate_edits`] with the given kind.
pub fn edits_of_kind<'a>(
    text: &'a SymbolString,
    alphabet: &'a BTreeSet<Symbol>,
    kind: EditKind,
) -> Box<dyn Iterator<Item = Edit> + 'a> {
    let n = text.len();
    match kind {
        EditKind::Substitute => Box::new((1..=n).flat_map(move |position| {
            let current = text.as_slice()[position - 1];
            alphabet
                .iter()
                .copied()
                .filter(move |&c| c != current)
                .map(move |symbol| Edit::Substitute { position, symbol })
        })),
        EditKind::Insert => Box::new((0..=n).flat_map(move |position| {
            alphabet
                .iter()
                .map(move |&symbol| Edit::Insert { position, symbol })
        })),
        EditKind::Delete => Box::new((1..=n).map(|position| Edit::Delete { position })),
    }
}

/// Number of distinct substrings of length `k`, `1 <= k <= n`.
pub fn distinct_substrings(text: &SymbolString, k: usize) -> Result<usize> {
    let n = text.len();
    if k == 0 || k > n {
        return input(format!("substring length {k} outside [1, {n}]"));
    }
    Ok(SuffixArray::new(text.as_slice()).distinct_of_length(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[Symbol]) -> SymbolString {
        SymbolString::new(v.to_vec())
    }

    #[test]
    fn apply_edit_examples() {
        let t = s(&[1, 2, 3]);
        let sub = Edit::Substitute { position: 2, symbol: 9 };
        assert_eq!(apply_edit(&t, &sub).unwrap(), s(&[1, 9, 3]));
        let ins = Edit::Insert { position: 0, symbol: 9 };
        assert_eq!(apply_edit(&t, &ins).unwrap(), s(&[9, 1, 2, 3]));
        let del = Edit::Delete { position: 3 };
        assert_eq!(apply_edit(&t, &del).unwrap(), s(&[1, 2]));
    }

    #[test]
    fn apply_edit_rejects_out_of_range() {
        let t = s(&[1, 2, 3]);
        for e in [
            Edit::Substitute { position: 0, symbol: 1 },
            Edit::Substitute { position: 4, symbol: 1 },
            Edit::Insert { position: 4, symbol: 1 },
            Edit::Delete { position: 0 },
            Edit::Delete { position: 4 },
        ] {
            assert!(matches!(apply_edit(&t, &e), Err(Error::Input(_))), "{e}");
        }
        assert!(apply_edit(&s(&[]), &Edit::Insert { position: 0, symbol: 4 }).is_ok());
    }

    #[test]
    fn edit_enumeration_counts() {
        let ab: BTreeSet<Symbol> = [1, 2].into();
        let one = s(&[1]);
        let subs: Vec<_> = edits_of_kind(&one, &ab, EditKind::Substitute).collect();
        assert_eq!(subs, vec![Edit::Substitute { position: 1, symbol: 2 }]);
        assert_eq!(edits_of_kind(&one, &ab, EditKind::Insert).count(), 4);
        assert_eq!(edits_of_kind(&s(&[1, 2]), &ab, EditKind::Delete).count(), 2);
    }

    #[test]
    fn edit_enumeration_is_ordered() {
        let ab: BTreeSet<Symbol> = [0, 1, 2].into();
        let t = s(&[0, 1, 1, 0]);
        let all: Vec<_> = enumerate_edits(&t, &ab).collect();
        let mut sorted = all.clone();
        sorted.sort_by_key(|e| (e.kind(), e.position(), e.symbol()));
        assert_eq!(all, sorted);
        // (|Σ|-1)·n + |Σ|·(n+1) + n
        assert_eq!(all.len(), 2 * 4 + 3 * 5 + 4);
    }

    #[test]
    fn distinct_substring_examples() {
        assert_eq!(distinct_substrings(&s(&[0, 1, 0, 1]), 1).unwrap(), 2);
        assert_eq!(distinct_substrings(&s(&[0, 1, 0, 1]), 2).unwrap(), 2);
        assert_eq!(distinct_substrings(&s(&[0, 0, 0]), 2).unwrap(), 1);
        assert!(distinct_substrings(&s(&[0, 0, 0]), 0).is_err());
        assert!(distinct_substrings(&s(&[0, 0, 0]), 4).is_err());
    }

    #[test]
    fn edit_text_form() {
        for e in [
            Edit::Substitute { position: 5, symbol: 99 },
            Edit::Insert { position: 0, symbol: 3 },
            Edit::Delete { position: 2 },
        ] {
            assert_eq!(e.to_string().parse::<Edit>().unwrap(), e);
        }
        assert!("sub:1".parse::<Edit>().is_err());
        assert!("swap:1:2".parse::<Edit>().is_err());
    }

    #[test]
    fn substring_is_one_based() {
        let t = SymbolString::from("baaaabbaaa");
        assert_eq!(t.substring(5, 7), b"abb".map(Symbol::from).as_slice());
        assert!(t.substring(4, 3).is_empty());
        assert_eq!(t.at(1), Some(Symbol::from(b'b')));
        assert_eq!(t.at(0), None);
    }

    #[test]
    fn canonical_relabels_by_first_occurrence() {
        assert_eq!(s(&[7, 3, 7, 9]).canonical(), s(&[0, 1, 0, 2]));
    }

    #[test]
    fn inverse_edits_restore_binary_strings() {
        for n in 0..=12usize {
            for bits in 0u32..(1 << n) {
                let t: SymbolString = (0..n).map(|k| (bits >> k) & 1).collect::<Vec<_>>().into();
                for i in 1..=n {
                    let c = t.as_slice()[i - 1];
                    let sub = apply_edit(&t, &Edit::Substitute { position: i, symbol: 1 - c }).unwrap();
                    let back = apply_edit(&sub, &Edit::Substitute { position: i, symbol: c }).unwrap();
                    assert_eq!(back, t);
                    let del = apply_edit(&t, &Edit::Delete { position: i }).unwrap();
                    let back = apply_edit(&del, &Edit::Insert { position: i - 1, symbol: c }).unwrap();
                    assert_eq!(back, t);
                }
                for i in 0..=n {
                    let ins = apply_edit(&t, &Edit::Insert { position: i, symbol: 1 }).unwrap();
                    let back = apply_edit(&ins, &Edit::Delete { position: i + 1 }).unwrap();
                    assert_eq!(back, t);
                }
            }
        }
    }
}
