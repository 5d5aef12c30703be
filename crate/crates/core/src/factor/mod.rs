//! LZ-style factorizations and their verifier.
//!
//! Every parser returns a [`Factorization`]: an ordered list of phrases that
//! tile `[1, n]`. A phrase is a literal symbol, a copy of an earlier
//! substring (any other substring for macro schemes), or a copy followed by
//! one explicit symbol (LZ77 and LZ78).
//!
//! Copy sources are always the leftmost admissible occurrence.

mod lz77;
mod lz78;
mod lzend;
mod lzss;
mod matcher;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{input, Error, Result};
use crate::text::{Symbol, SymbolString};

pub use lz77::{lz77_nonoverlapping, lz77_overlapping};
pub use lz78::lz78;
pub use lzend::{lz_end_greedy, lz_end_optimal, lz_end_optimal_with_limit};
pub use lzss::{lzss_nonoverlapping, lzss_overlapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhraseKind {
    /// A single symbol stored verbatim.
    Literal(Symbol),
    /// `T[start..start+len-1]` equals `T[source..source+len-1]`.
    Copy { source: usize },
    /// The first `len - 1` symbols copy `T[source..]`, the last is explicit.
    CopyLiteral { source: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phrase {
    /// 1-based start position.
    pub start: usize,
    pub len: usize,
    pub kind: PhraseKind,
}

impl Phrase {
    pub fn literal(start: usize, symbol: Symbol) -> Self {
        Self { start, len: 1, kind: PhraseKind::Literal(symbol) }
    }

    pub fn copy(start: usize, len: usize, source: usize) -> Self {
        Self { start, len, kind: PhraseKind::Copy { source } }
    }

    /// Last position covered, 1-based.
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }

    pub fn source(&self) -> Option<usize> {
        match self.kind {
            PhraseKind::Literal(_) => None,
            PhraseKind::Copy { source } | PhraseKind::CopyLiteral { source } => Some(source),
        }
    }

    /// Number of symbols taken from the source.
    pub fn copied_len(&self) -> usize {
        match self.kind {
            PhraseKind::Literal(_) => 0,
            PhraseKind::Copy { .. } => self.len,
            PhraseKind::CopyLiteral { .. } => self.len - 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    LzssOverlap,
    LzssNonoverlap,
    Lz77Overlap,
    Lz77Nonoverlap,
    LzEnd,
    Lz78,
    Bms,
}

impl Flavor {
    pub const ALL: [Flavor; 7] = [
        Flavor::LzssOverlap,
        Flavor::LzssNonoverlap,
        Flavor::Lz77Overlap,
        Flavor::Lz77Nonoverlap,
        Flavor::LzEnd,
        Flavor::Lz78,
        Flavor::Bms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::LzssOverlap => "lzss_overlap",
            Flavor::LzssNonoverlap => "lzss_nonoverlap",
            Flavor::Lz77Overlap => "lz77_overlap",
            Flavor::Lz77Nonoverlap => "lz77_nonoverlap",
            Flavor::LzEnd => "lzend",
            Flavor::Lz78 => "lz78",
            Flavor::Bms => "bms",
        }
    }

    fn overlapping(self) -> bool {
        matches!(self, Flavor::LzssOverlap | Flavor::Lz77Overlap)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .map_or_else(|| input(format!("unknown flavor {s:?}")), Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub flavor: Flavor,
    /// Length of the factorized text.
    pub n: usize,
    pub phrases: Vec<Phrase>,
}

impl Factorization {
    pub fn new(flavor: Flavor, n: usize, phrases: Vec<Phrase>) -> Self {
        Self { flavor, n, phrases }
    }

    /// Number of phrases.
    pub fn count(&self) -> usize {
        self.phrases.len()
    }

    /// Same phrases under another flavor's rules.
    pub fn reinterpret(&self, flavor: Flavor) -> Self {
        Self { flavor, ..self.clone() }
    }

    /// Line-based text form: a `flavor n count` header, then one
    /// `k start length kind source` line per phrase. Literal lines carry the
    /// symbol in the last column.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.flavor, self.n, self.count());
        for (k, p) in self.phrases.iter().enumerate() {
            let (kind, last) = match p.kind {
                PhraseKind::Literal(sym) => ("lit", sym as usize),
                PhraseKind::Copy { source } => ("copy", source),
                PhraseKind::CopyLiteral { source } => ("copylit", source),
            };
            out.push_str(&format!("{} {} {} {} {}\n", k + 1, p.start, p.len, kind, last));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(bad(hl, "header must be `flavor n count`"));
        }
        let flavor: Flavor = h[0].parse().map_err(|_| bad(hl, "unknown flavor"))?;
        let num = |line: usize, s: &str| s.parse::<usize>().map_err(|_| bad(line, "expected a number"));
        let n = num(hl, h[1])?;
        let count = num(hl, h[2])?;
        let mut phrases = Vec::with_capacity(count);
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(bad(ln, "phrase line must be `k start length kind source`"));
            }
            if num(ln, f[0])? != phrases.len() + 1 {
                return Err(bad(ln, "phrase numbers must run 1, 2, ..."));
            }
            let (start, len, last) = (num(ln, f[1])?, num(ln, f[2])?, num(ln, f[4])?);
            let kind = match f[3] {
                "lit" => PhraseKind::Literal(Symbol::try_from(last).map_err(|_| bad(ln, "symbol too large"))?),
                "copy" => PhraseKind::Copy { source: last },
                "copylit" => PhraseKind::CopyLiteral { source: last },
                _ => return Err(bad(ln, "kind must be lit, copy or copylit")),
            };
            phrases.push(Phrase { start, len, kind });
        }
        if phrases.len() != count {
            return Err(bad(hl, "phrase count does not match header"));
        }
        Ok(Self { flavor, n, phrases })
    }

    /// Rebuilds the text from the phrases alone, if every reference resolves.
    /// The explicit symbol of a copy-literal phrase is not stored, so any
    /// factorization containing one decodes to `None`.
    pub fn decode(&self) -> Option<SymbolString> {
        let mut out: Vec<Option<Symbol>> = vec![None; self.n];
        // Repeated passes resolve right-pointing macro-scheme sources.
        loop {
            let mut progress = false;
            for p in &self.phrases {
                for t in 0..p.len {
                    let pos = p.start - 1 + t;
                    if pos >= self.n || out[pos].is_some() {
                        continue;
                    }
                    let val = match p.kind {
                        PhraseKind::Literal(sym) => Some(sym),
                        PhraseKind::CopyLiteral { .. } if t == p.len - 1 => None,
                        PhraseKind::Copy { source } | PhraseKind::CopyLiteral { source } => {
                            out.get(source - 1 + t).copied().flatten()
                        }
                    };
                    if val.is_some() {
                        out[pos] = val;
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        out.into_iter().collect::<Option<Vec<_>>>().map(SymbolString::new)
    }
}

/// Why a factorization fails verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("phrases do not tile [1, {n}]: {detail}")]
    Tiling { n: usize, detail: String },
    #[error("phrase {k}: literal does not match the text")]
    LiteralMismatch { k: usize },
    #[error("phrase {k}: literal symbol already occurs to its left")]
    NotFresh { k: usize },
    #[error("phrase {k}: copy does not match its source")]
    CopyMismatch { k: usize },
    #[error("phrase {k}: source violates the {flavor} rule")]
    SourceRule { k: usize, flavor: Flavor },
    #[error("phrase {k}: kind not allowed in {flavor}")]
    KindNotAllowed { k: usize, flavor: Flavor },
    #[error("phrase {k}: LZ78 phrase must extend an earlier phrase and be new")]
    Lz78Rule { k: usize },
    #[error("position {position}: reference chain never reaches a ground phrase")]
    Cycle { position: usize },
}

/// Checks tiling, literal and copy contents, and the flavor's source rule.
pub fn verify_factorization(text: &SymbolString, f: &Factorization) -> Result<(), Violation> {
    let t = text.as_slice();
    check_tiling(t.len(), f)?;
    let last = f.count().saturating_sub(1);
    let mut boundaries = std::collections::HashSet::new();
    for (k, p) in f.phrases.iter().enumerate() {
        let k1 = k + 1;
        let start = p.start - 1;
        match p.kind {
            PhraseKind::Literal(sym) => {
                if p.len != 1 || t[start] != sym {
                    return Err(Violation::LiteralMismatch { k: k1 });
                }
                let needs_fresh = !matches!(f.flavor, Flavor::Lz78 | Flavor::Bms);
                if needs_fresh && t[..start].contains(&sym) {
                    return Err(Violation::NotFresh { k: k1 });
                }
            }
            PhraseKind::Copy { source } | PhraseKind::CopyLiteral { source } => {
                let is_cl = matches!(p.kind, PhraseKind::CopyLiteral { .. });
                let allowed = match f.flavor {
                    Flavor::Lz77Overlap | Flavor::Lz77Nonoverlap | Flavor::Lz78 => is_cl || k == last,
                    _ => !is_cl,
                };
                if !allowed || (is_cl && p.len < 2) {
                    return Err(Violation::KindNotAllowed { k: k1, flavor: f.flavor });
                }
                let clen = p.copied_len();
                if source == 0 || source - 1 + clen > t.len() {
                    return Err(Violation::CopyMismatch { k: k1 });
                }
                let src = source - 1;
                if (0..clen).any(|d| t[src + d] != t[start + d]) {
                    return Err(Violation::CopyMismatch { k: k1 });
                }
                let rule_ok = match f.flavor {
                    Flavor::Bms => true,
                    Flavor::Lz78 => true,
                    _ if f.flavor.overlapping() => src < start,
                    Flavor::LzEnd => src + clen <= start && boundaries.contains(&(src + clen)),
                    _ => src + clen <= start,
                };
                if !rule_ok {
                    return Err(Violation::SourceRule { k: k1, flavor: f.flavor });
                }
            }
        }
        boundaries.insert(start + p.len);
    }
    match f.flavor {
        Flavor::Lz78 => check_lz78(t, f),
        Flavor::Bms => crate::measures::bms::check_references(t.len(), f),
        _ => Ok(()),
    }
}

pub fn is_valid_factorization(text: &SymbolString, f: &Factorization) -> bool {
    verify_factorization(text, f).is_ok()
}

fn check_tiling(n: usize, f: &Factorization) -> Result<(), Violation> {
    let fail = |detail: String| Err(Violation::Tiling { n, detail });
    if f.n != n {
        return fail(format!("factorization is for length {}", f.n));
    }
    let mut next = 1;
    for (k, p) in f.phrases.iter().enumerate() {
        if p.len == 0 {
            return fail(format!("phrase {} is empty", k + 1));
        }
        if p.start != next {
            return fail(format!("phrase {} starts at {}, expected {next}", k + 1, p.start));
        }
        next += p.len;
    }
    if next != n + 1 {
        return fail(format!("phrases cover [1, {}]", next - 1));
    }
    Ok(())
}

// Tiling and copy contents are already checked.
fn check_lz78(t: &[Symbol], f: &Factorization) -> Result<(), Violation> {
    use std::collections::HashMap;
    let mut seen: HashMap<&[Symbol], usize> = HashMap::new();
    let last = f.count() - 1;
    for (k, p) in f.phrases.iter().enumerate() {
        let body = &t[p.start - 1..p.end()];
        let ok = match p.kind {
            PhraseKind::Literal(_) => !seen.contains_key(body),
            PhraseKind::CopyLiteral { source } => {
                let parent = &t[source - 1..source - 1 + p.len - 1];
                seen.get(parent) == Some(&source) && !seen.contains_key(body)
            }
            PhraseKind::Copy { source } => k == last && seen.get(body) == Some(&source),
        };
        if !ok {
            return Err(Violation::Lz78Rule { k: k + 1 });
        }
        seen.entry(body).or_insert(p.start);
    }
    Ok(())
}

pub(crate) fn nonempty(text: &SymbolString, what: &str) -> Result<()> {
    if text.is_empty() {
        input(format!("{what} needs a non-empty text"))
    } else {
        Ok(())
    }
}
