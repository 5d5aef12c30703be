use std::collections::HashMap;

use super::{edited, Repaired, RepairReport, Site};
use crate::error::{input, Result};
use crate::factor::{nonempty, verify_factorization, Factorization, Flavor, Phrase};
use crate::text::{Edit, EditKind, SymbolString};

/// A stretch of `T'` (0-based) and where it copies from, if anywhere.
#[derive(Debug, Clone, Copy)]
struct Piece {
    start: usize,
    len: usize,
    source: Option<usize>,
}

/// Rebuilds an LZ-End parsing of `T` into one of the edited string.
///
/// Phrases left of the edit stay. The phrase holding the edit becomes the
/// part before the edit, cut into pieces that each end on an earlier phrase
/// boundary, then the new symbol, then the part after the edit copied from
/// the tail of the old source. Later phrases whose source is damaged are cut
/// around the damaged position; the others keep their (shifted) source.
///
/// Single-symbol pieces become literals when the symbol is new, and
/// otherwise copy the symbol's first occurrence, which is always a literal.
pub fn lzend_repair(text: &SymbolString, parsing: &Factorization, edit: &Edit) -> Result<Repaired<Factorization>> {
    nonempty(text, "LZ-End repair")?;
    let t2 = edited(text, edit)?;
    let f = parsing.reinterpret(Flavor::LzEnd);
    if let Err(v) = verify_factorization(text, &f) {
        return input(format!("not a valid LZ-End parsing of the text: {v}"));
    }
    let n = text.len();
    let site = Site::of(edit);
    let mut report = RepairReport::new("lzend", *edit, n, f.count());
    report.bound = if edit.kind() == EditKind::Insert { 2 } else { 3 } * f.count();

    let bounds: Vec<(usize, usize)> = f.phrases.iter().map(|p| (p.start - 1, p.end() - 1)).collect();
    let sources: Vec<Option<usize>> = f.phrases.iter().map(|p| p.source().map(|s| s - 1)).collect();
    // The phrase holding the edit, or the one an insertion on a boundary
    // lands in front of (one past the end for an append).
    let edited_at = match site {
        Site::Sub(i) | Site::Del(i) => bounds.iter().position(|&(a, b)| a <= i && i <= b).expect("tiling"),
        Site::Ins(g) => bounds.iter().position(|&(a, b)| site.damages(a, b) || a == g).unwrap_or(f.count()),
    };
    report.edited_index = Some(edited_at + 1);

    let mut pieces: Vec<Piece> = Vec::new();
    for (k, &(a, b)) in bounds.iter().enumerate() {
        let len = b - a + 1;
        if k < edited_at {
            pieces.push(Piece { start: a, len, source: sources[k] });
            report.record("lzend:1", Some(k + 1), 1, String::new());
            continue;
        }
        if k == edited_at {
            let before = pieces.len();
            let on_boundary = matches!(site, Site::Ins(g) if g == a);
            if on_boundary {
                pieces.push(Piece { start: a, len: 1, source: None });
            } else {
                edited_phrase(k, &bounds, &sources, site, &mut pieces);
            }
            report.record("lzend:2", Some(k + 1), pieces.len() - before, show(&pieces[before..]));
            if !on_boundary {
                continue;
            }
        }
        let start = site.map(a).expect("later phrases are intact");
        match sources[k] {
            Some(s) if site.damages(s, s + len - 1) => {
                let before = pieces.len();
                // Length of the undamaged source prefix, whether the old
                // symbol at the damaged spot becomes its own piece, and where
                // the rest of the source continues in T'.
                let (w3, mid, resume) = match site {
                    Site::Sub(i) => (i - s, 1, i + 1),
                    Site::Del(i) => (i - s, 1, i),
                    Site::Ins(g) => (g - s, 0, g + 1),
                };
                pieces.push(Piece { start, len: w3, source: Some(s) });
                if mid == 1 {
                    pieces.push(Piece { start: start + w3, len: 1, source: None });
                }
                pieces.push(Piece { start: start + w3 + mid, len: len - w3 - mid, source: Some(resume) });
                pieces.retain(|p| p.len > 0);
                report.record("lzend:3B", Some(k + 1), pieces.len() - before, show(&pieces[before..]));
            }
            s => {
                pieces.push(Piece { start, len, source: s.and_then(|s| site.map(s)) });
                report.record("lzend:3A", Some(k + 1), 1, String::new());
            }
        }
    }
    if edited_at == f.count() {
        pieces.push(Piece { start: n, len: 1, source: None });
        report.record("lzend:2", None, 1, show(&pieces[pieces.len() - 1..]));
    }

    let output = finish(&t2, &pieces);
    report.output_size = output.count();
    Ok(Repaired { output, report })
}

/// Pieces for the phrase holding the edit, which lies strictly inside it
/// for an insertion.
fn edited_phrase(k: usize, bounds: &[(usize, usize)], sources: &[Option<usize>], site: Site, pieces: &mut Vec<Piece>) {
    let (a, b) = bounds[k];
    let (i, new_symbol, tail_from) = match site {
        Site::Sub(i) => (i, true, i + 1),
        Site::Del(i) => (i, false, i + 1),
        Site::Ins(g) => (g, true, g),
    };
    // A literal phrase has nothing before or after the edit.
    let s = sources[k].unwrap_or(a);
    walk(a, i - a, s, k, bounds, sources, pieces);
    let mut next = i;
    if new_symbol {
        pieces.push(Piece { start: i, len: 1, source: None });
        next += 1;
    }
    if tail_from <= b {
        pieces.push(Piece { start: next, len: b - tail_from + 1, source: Some(s + (tail_from - a)) });
    }
}

/// Covers `T[at..at+len)`, which also occurs at `occ` left of phrase `k`,
/// with pieces whose sources end on boundaries of phrases before `k`.
/// Each step cuts at the rightmost boundary inside the current occurrence,
/// or, when there is none, follows the enclosing phrase to its source.
fn walk(
    at: usize,
    len: usize,
    mut occ: usize,
    k: usize,
    bounds: &[(usize, usize)],
    sources: &[Option<usize>],
    pieces: &mut Vec<Piece>,
) {
    let mut cur = at;
    let mut left = len;
    while left > 0 {
        let last = occ + left - 1;
        match bounds[..k].iter().rev().map(|&(_, e)| e).find(|&e| occ <= e && e <= last) {
            Some(e) => {
                let l = e - occ + 1;
                pieces.push(Piece { start: cur, len: l, source: Some(occ) });
                cur += l;
                left -= l;
                occ = e + 1;
            }
            None => {
                let h = bounds.iter().position(|&(p, e)| p <= occ && occ <= e).expect("tiling");
                let src = sources[h].expect("an occurrence strictly inside a phrase lies in a copy");
                occ = src + (occ - bounds[h].0);
            }
        }
    }
}

fn finish(t2: &SymbolString, pieces: &[Piece]) -> Factorization {
    let t = t2.as_slice();
    let mut first = HashMap::new();
    for (x, &c) in t.iter().enumerate() {
        first.entry(c).or_insert(x);
    }
    let phrases = pieces
        .iter()
        .map(|p| {
            if p.len == 1 {
                let f = first[&t[p.start]];
                if f == p.start {
                    Phrase::literal(p.start + 1, t[p.start])
                } else {
                    Phrase::copy(p.start + 1, 1, f + 1)
                }
            } else {
                Phrase::copy(p.start + 1, p.len, p.source.expect("long pieces copy") + 1)
            }
        })
        .collect();
    Factorization::new(Flavor::LzEnd, t.len(), phrases)
}

fn show(pieces: &[Piece]) -> String {
    let parts: Vec<String> = pieces
        .iter()
        .map(|p| match p.source {
            Some(s) if p.len > 1 => format!("[{}+{}<-{}]", p.start + 1, p.len, s + 1),
            _ => format!("[{}]", p.start + 1),
        })
        .collect();
    parts.join(" ")
}
