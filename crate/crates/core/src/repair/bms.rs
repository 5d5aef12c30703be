use super::{edited, Repaired, RepairReport, Site};
use crate::error::{input, Result};
use crate::factor::{nonempty, Factorization, Flavor, Phrase, PhraseKind};
use crate::measures::check_bms;
use crate::text::{Edit, Symbol, SymbolString};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Ground,
    To(usize),
}

/// Rebuilds a macro scheme of `T` into one of the edited string.
///
/// Every position keeps pointing at the image of its old target unless
/// that target is the edited position, in which case it becomes ground.
/// Each old phrase then falls apart into maximal runs of consecutive
/// targets. A phrase holding the edit yields at most five pieces and one
/// whose source holds it at most three. When the damaged source of such a
/// phrase lies inside the damaged source of another, the phrase is instead
/// copied from the matching stretch of that other phrase and stays whole.
pub fn bms_repair(text: &SymbolString, scheme: &Factorization, edit: &Edit) -> Result<Repaired<Factorization>> {
    nonempty(text, "macro scheme repair")?;
    let t2 = edited(text, edit)?;
    let scheme = scheme.reinterpret(Flavor::Bms);
    if let Err(v) = check_bms(text, &scheme) {
        return input(format!("not a valid macro scheme of the text: {v}"));
    }
    let n = text.len();
    let t2s = t2.as_slice();
    let site = Site::of(edit);
    let mut report = RepairReport::new("bms", *edit, n, scheme.count());
    report.bound = 3 * scheme.count();

    let sources: Vec<Option<(usize, usize)>> = scheme
        .phrases
        .iter()
        .map(|p| match p.kind {
            PhraseKind::Copy { source } => Some((source - 1, source + p.len - 2)),
            _ => None,
        })
        .collect();
    let holds_edit = |k: usize| {
        let p = &scheme.phrases[k];
        site.damages(p.start - 1, p.end() - 1)
    };
    let damaged: Vec<usize> = (0..scheme.count())
        .filter(|&k| !holds_edit(k) && sources[k].is_some_and(|(a, b)| site.damages(a, b)))
        .collect();
    let host = hosts(&damaged, &sources);

    let mut phrases: Vec<Phrase> = Vec::new();
    let push_ground = |phrases: &mut Vec<Phrase>, at: usize| phrases.push(Phrase::literal(at + 1, t2s[at]));
    for (k, p) in scheme.phrases.iter().enumerate() {
        let start = p.start - 1;
        if let Site::Ins(g) = site {
            if g == start {
                push_ground(&mut phrases, g);
                report.edited_index = Some(k + 1);
                report.record("bms:1", None, 1, format!("standalone {}", t2s[g]));
            }
        }
        let before = phrases.len();
        let (case, detail) = if let Some(&b) = host.get(&k) {
            let (qa, _) = sources[k].expect("damaged phrases copy");
            let qb = sources[b].expect("damaged phrases copy").0;
            let from = site.map(scheme.phrases[b].start - 1 + (qa - qb)).expect("host phrase is intact");
            let to = site.map(start).expect("damaged phrase is intact");
            if p.len == 1 {
                push_ground(&mut phrases, to);
            } else {
                phrases.push(Phrase::copy(to + 1, p.len, from + 1));
            }
            ("bms:3", format!("re-sourced into phrase {}", b + 1))
        } else {
            let items = targets(p, start, sources[k], site, edit);
            emit_runs(&items, &mut phrases, t2s);
            let case = if holds_edit(k) {
                report.edited_index = Some(k + 1);
                "bms:1"
            } else if damaged.contains(&k) {
                "bms:3"
            } else {
                "bms:2"
            };
            (case, String::new())
        };
        let pieces = phrases.len() - before;
        let shown: Vec<String> = phrases[before..].iter().map(describe).collect();
        let detail = if detail.is_empty() { shown.join(" ") } else { format!("{} ({detail})", shown.join(" ")) };
        report.record(case, Some(k + 1), pieces, detail);
    }
    if let Site::Ins(g) = site {
        if g == n {
            push_ground(&mut phrases, g);
            report.edited_index = Some(scheme.count() + 1);
            report.record("bms:1", None, 1, format!("standalone {}", t2s[g]));
        }
    }
    let output = Factorization::new(Flavor::Bms, t2.len(), phrases);
    report.output_size = output.count();
    Ok(Repaired { output, report })
}

/// For each damaged phrase whose source nests inside another damaged
/// phrase's source, the phrase that will serve as its new source. Hosts are
/// the phrases with maximal sources; among equal sources the earliest one.
fn hosts(damaged: &[usize], sources: &[Option<(usize, usize)>]) -> std::collections::BTreeMap<usize, usize> {
    let src = |k: usize| sources[k].expect("damaged phrases copy");
    let inside = |a: usize, b: usize| {
        let ((a0, a1), (b0, b1)) = (src(a), src(b));
        b0 <= a0 && a1 <= b1
    };
    let is_host = |k: usize| {
        !damaged
            .iter()
            .any(|&o| o != k && inside(k, o) && (src(o) != src(k) || o < k))
    };
    let hosts: Vec<usize> = damaged.iter().copied().filter(|&k| is_host(k)).collect();
    damaged
        .iter()
        .filter(|&&k| !hosts.contains(&k))
        .map(|&k| (k, *hosts.iter().find(|&&h| inside(k, h)).expect("a maximal source contains it")))
        .collect()
}

/// `(new position, target)` for every surviving position of phrase `p`,
/// plus the inserted symbol if it falls inside.
fn targets(p: &Phrase, start: usize, source: Option<(usize, usize)>, site: Site, edit: &Edit) -> Vec<(usize, Target)> {
    let mut items = Vec::with_capacity(p.len + 1);
    for d in 0..p.len {
        let x = start + d;
        if let Site::Ins(g) = site {
            if x == g && x > start {
                items.push((g, Target::Ground));
            }
        }
        let Some(nx) = site.map(x) else { continue };
        let target = match (source, site) {
            (None, _) => Target::Ground,
            (_, Site::Sub(i)) if x == i => Target::Ground,
            (Some((q, _)), Site::Sub(i) | Site::Del(i)) if q + d == i => Target::Ground,
            (Some((q, _)), _) => Target::To(site.map(q + d).expect("deleted target handled above")),
        };
        items.push((nx, target));
    }
    debug_assert!(matches!(edit, Edit::Insert { .. }) || items.len() <= p.len);
    items
}

fn emit_runs(items: &[(usize, Target)], phrases: &mut Vec<Phrase>, t2: &[Symbol]) {
    let mut k = 0;
    while k < items.len() {
        let (at, target) = items[k];
        let mut len = 1;
        if let Target::To(q) = target {
            while k + len < items.len() && items[k + len].1 == Target::To(q + len) {
                len += 1;
            }
            if len >= 2 {
                phrases.push(Phrase::copy(at + 1, len, q + 1));
                k += len;
                continue;
            }
        }
        phrases.push(Phrase::literal(at + 1, t2[at]));
        k += 1;
    }
}

fn describe(p: &Phrase) -> String {
    match p.kind {
        PhraseKind::Literal(s) => format!("[{}:lit {s}]", p.start),
        PhraseKind::Copy { source } | PhraseKind::CopyLiteral { source } => {
            format!("[{}+{}<-{}]", p.start, p.len, source)
        }
    }
}
