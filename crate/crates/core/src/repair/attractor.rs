use std::collections::BTreeSet;

use super::{edited, Repaired, RepairReport, Site};
use crate::error::{input, Result};
use crate::measures::{is_attractor, AttractorSet};
use crate::text::{Edit, SymbolString};

/// Extends an attractor of `T` to one of the edited string.
///
/// The result is the old attractor shifted into `T'` coordinates, a grid of
/// about `sqrt(m)` evenly spaced positions that stabs every long substring,
/// one position per maximal short damaged substring that still occurs in
/// `T'`, and the edit site itself.
pub fn attractor_repair(text: &SymbolString, gamma: &AttractorSet, edit: &Edit) -> Result<Repaired<AttractorSet>> {
    let t2 = edited(text, edit)?;
    if !is_attractor(text, gamma) {
        return input("the given positions are not an attractor of the text");
    }
    let t = text.as_slice();
    let n = t.len();
    let m = t2.len();
    let site = Site::of(edit);
    let mut report = RepairReport::new("attractor", *edit, n, gamma.len());
    let g = m.isqrt();
    let c = m.isqrt() + usize::from(m.isqrt() * m.isqrt() < m);
    report.bound = gamma.len() + g + c + 2;

    let mut out: BTreeSet<usize> = BTreeSet::new();
    let kept: Vec<usize> = gamma.iter().filter_map(|p| site.map(p - 1)).collect();
    out.extend(&kept);
    report.record("attractor:kept", None, kept.len(), format!("{kept:?}"));
    if m == 0 {
        report.output_size = 0;
        return Ok(Repaired { output: AttractorSet::default(), report });
    }

    let mut grid: BTreeSet<usize> = (1..=g).map(|k| k * g - 1).collect();
    grid.insert((g * g + m) / 2 - 1);
    let added = grid.difference(&out).count();
    out.extend(&grid);
    report.record("attractor:grid", None, added, format!("{:?}", grid.iter().map(|p| p + 1).collect::<Vec<_>>()));

    let short = short_positions(t, t2.as_slice(), site, c);
    let added = short.iter().filter(|p| !out.contains(p)).count();
    out.extend(&short);
    report.record("attractor:short", None, added, format!("{:?}", short.iter().map(|p| p + 1).collect::<Vec<_>>()));

    let at = match site {
        Site::Sub(i) => Some(i),
        Site::Ins(g) => Some(g),
        Site::Del(i) => (i >= 1 && i + 1 < n).then_some(i),
    };
    if let Some(p) = at {
        let added = usize::from(out.insert(p));
        report.record("attractor:site", None, added, format!("[{}]", p + 1));
    }

    let output: AttractorSet = out.into_iter().map(|p| p + 1).collect();
    report.output_size = output.len();
    Ok(Repaired { output, report })
}

/// For each maximal damaged interval of length at most `c` whose content
/// survives somewhere in `T'`, the position of its leftmost surviving
/// occurrence that lines up with the edit.
fn short_positions(t: &[u32], t2: &[u32], site: Site, c: usize) -> BTreeSet<usize> {
    let n = t.len();
    // Index in T that a stabbing position should correspond to.
    let anchor = match site {
        Site::Sub(i) | Site::Del(i) => i,
        Site::Ins(0) => return BTreeSet::new(),
        Site::Ins(g) => g - 1,
    };
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for a in anchor.saturating_sub(c)..=anchor {
        for b in anchor..n.min(a + c) {
            if !site.damages(a, b) {
                continue;
            }
            let s = &t[a..=b];
            if let Some(j) = t2.windows(s.len()).position(|w| w == s) {
                candidates.push((a, b, j));
            }
        }
    }
    candidates
        .iter()
        .filter(|&&(a, b, _)| !candidates.iter().any(|&(a2, b2, _)| (a2, b2) != (a, b) && a2 <= a && b <= b2))
        .map(|&(a, _, j)| j + (anchor - a))
        .collect()
}
