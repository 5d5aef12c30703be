//! Worst-case change of a measure under one edit.
//!
//! For a measure `c`, the additive sensitivity of a string is
//! `max c(T') - c(T)` over the single edits `T'` of `T`, and the
//! multiplicative one is `max c(T') / c(T)`. Sweeps take the maximum over
//! every string of a length (exhaustive), over samples (random), or evaluate
//! the edits a witness family prescribes.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::exec::Exec;
use crate::factor::{
    lz77_nonoverlapping, lz77_overlapping, lz78, lz_end_greedy, lz_end_optimal_with_limit, lzss_nonoverlapping,
    lzss_overlapping,
};
use crate::limits::{Limits, ENV_EXHAUSTIVE};
use crate::measures::{delta, smallest_attractor_with_limit, smallest_bms_with_limit};
use crate::text::{apply_edit, edits_of_kind, Edit, EditKind, Symbol, SymbolString};
use crate::witness::WitnessBundle;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Measure {
    LzssOverlap,
    LzssNonoverlap,
    Lz77Overlap,
    Lz77Nonoverlap,
    LzEnd,
    LzEndOpt,
    Lz78,
    Delta,
    Gamma,
    Bms,
}

impl Measure {
    pub const ALL: [Measure; 10] = [
        Measure::LzssOverlap,
        Measure::LzssNonoverlap,
        Measure::Lz77Overlap,
        Measure::Lz77Nonoverlap,
        Measure::LzEnd,
        Measure::LzEndOpt,
        Measure::Lz78,
        Measure::Delta,
        Measure::Gamma,
        Measure::Bms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::LzssOverlap => "lzss-overlap",
            Measure::LzssNonoverlap => "lzss-nonoverlap",
            Measure::Lz77Overlap => "lz77-overlap",
            Measure::Lz77Nonoverlap => "lz77-nonoverlap",
            Measure::LzEnd => "lzend",
            Measure::LzEndOpt => "lzend-opt",
            Measure::Lz78 => "lz78",
            Measure::Delta => "delta",
            Measure::Gamma => "gamma",
            Measure::Bms => "bms",
        }
    }

    /// Longest text the measure accepts under `limits`, if capped.
    pub fn cap(self, limits: &Limits) -> Option<usize> {
        match self {
            Measure::LzEndOpt => Some(limits.lzend_opt),
            Measure::Gamma => Some(limits.attractor),
            Measure::Bms => Some(limits.bms),
            _ => None,
        }
    }

    /// The measure's value; the empty string measures 0.
    pub fn eval(self, text: &SymbolString, limits: &Limits) -> Result<Rational> {
        if text.is_empty() {
            return Ok(Rational::from_integer(0));
        }
        let count = match self {
            Measure::LzssOverlap => lzss_overlapping(text)?.count(),
            Measure::LzssNonoverlap => lzss_nonoverlapping(text)?.count(),
            Measure::Lz77Overlap => lz77_overlapping(text)?.count(),
            Measure::Lz77Nonoverlap => lz77_nonoverlapping(text)?.count(),
            Measure::LzEnd => lz_end_greedy(text)?.count(),
            Measure::LzEndOpt => lz_end_optimal_with_limit(text, limits.lzend_opt)?.count(),
            Measure::Lz78 => lz78(text)?.count(),
            Measure::Delta => return delta(text),
            Measure::Gamma => smallest_attractor_with_limit(text, limits.attractor)?.len(),
            Measure::Bms => smallest_bms_with_limit(text, limits.bms)?.count(),
        };
        Ok(Rational::from_integer(count as i64))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .map_or_else(|| input(format!("unknown measure {s:?}")), Ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    Exhaustive,
    Witness,
    Random,
    /// A single string supplied by the caller.
    Input,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Exhaustive => "exhaustive",
            Source::Witness => "witness",
            Source::Random => "random",
            Source::Input => "input",
        }
    }
}

/// The largest ratio `c(T') / c(T)` seen, with where it was attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioMax {
    pub ms: Rational,
    pub text: SymbolString,
    pub edit: Edit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityRecord {
    pub measure: Measure,
    /// Measure applied to `T` when it differs from the one applied to `T'`
    /// (witness gaps such as LZSS of `T'` against LZ-End of `T`).
    pub baseline: Option<Measure>,
    pub kind: EditKind,
    pub n: usize,
    pub c_t: Rational,
    /// `None` when there was no edit to try.
    pub c_tprime: Option<Rational>,
    pub edit: Option<Edit>,
    /// The maximizing `T` (exhaustive and random sweeps).
    pub text: Option<SymbolString>,
    /// Largest ratio over the same search, scanned separately.
    pub ms_max: Option<RatioMax>,
    pub source: Source,
}

impl SensitivityRecord {
    /// `c(T') - c(T)` at the additive argmax.
    pub fn additive(&self) -> Option<Rational> {
        self.c_tprime.map(|c| c - self.c_t)
    }

    /// `c(T') / c(T)` at the additive argmax, when `c(T) > 0`.
    pub fn multiplicative(&self) -> Option<Rational> {
        match self.c_tprime {
            Some(c) if self.c_t > Rational::from_integer(0) => Some(c / self.c_t),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self.baseline {
            Some(b) => format!("{}/{}", self.measure, b),
            None => self.measure.to_string(),
        }
    }

    pub const CSV_HEADER: [&'static str; 11] =
        ["measure", "edit_kind", "n", "c_T", "c_Tprime", "AS", "MS_num", "MS_den", "edit_pos", "edit_sym", "source"];

    pub fn csv_fields(&self) -> [String; 11] {
        let opt = |v: Option<Rational>| v.map_or_else(String::new, |r| r.to_string());
        let ms = self.multiplicative();
        [
            self.label(),
            self.kind.name().to_string(),
            self.n.to_string(),
            self.c_t.to_string(),
            opt(self.c_tprime),
            opt(self.additive()),
            ms.map_or_else(String::new, |r| r.numer().to_string()),
            ms.map_or_else(String::new, |r| r.denom().to_string()),
            self.edit.map_or_else(String::new, |e| e.position().to_string()),
            self.edit.and_then(|e| e.symbol()).map_or_else(String::new, |s| s.to_string()),
            self.source.name().to_string(),
        ]
    }
}

/// Writes the header and one row per record.
pub fn write_csv<W: Write>(out: W, records: &[SensitivityRecord]) -> Result<()> {
    let io = |e: csv::Error| Error::Input(format!("writing CSV: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SensitivityRecord::CSV_HEADER).map_err(io)?;
    for r in records {
        w.write_record(r.csv_fields()).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(format!("writing CSV: {e}")))
}

/// `alphabet` plus one symbol absent from both it and the text.
pub fn with_fresh(text: &SymbolString, alphabet: &BTreeSet<Symbol>) -> BTreeSet<Symbol> {
    let top = text.as_slice().iter().chain(alphabet).max().map_or(0, |&m| m + 1);
    let mut out = alphabet.clone();
    out.insert(top);
    out
}

fn check_cap(measure: Measure, len: usize, limits: &Limits) -> Result<()> {
    match measure.cap(limits) {
        Some(cap) if len > cap => Err(Error::Capability {
            what: "sensitivity of a capped measure",
            limit: cap,
            actual: len,
            env: match measure {
                Measure::LzEndOpt => crate::limits::ENV_LZEND_OPT,
                Measure::Gamma => crate::limits::ENV_ATTRACTOR,
                _ => crate::limits::ENV_BMS,
            },
        }),
        _ => Ok(()),
    }
}

/// Worst edit of `kind` for one string, over `alphabet` plus a fresh
/// symbol. Ties keep the first edit in enumeration order.
pub fn sensitivity_of_string(
    measure: Measure,
    text: &SymbolString,
    kind: EditKind,
    alphabet: &BTreeSet<Symbol>,
    limits: &Limits,
) -> Result<SensitivityRecord> {
    check_cap(measure, text.len() + 1, limits)?;
    let c_t = measure.eval(text, limits)?;
    let sigma = with_fresh(text, alphabet);
    let mut best: Option<(Rational, Edit)> = None;
    for e in edits_of_kind(text, &sigma, kind) {
        let c = measure.eval(&apply_edit(text, &e)?, limits)?;
        if best.is_none_or(|(b, _)| c > b) {
            best = Some((c, e));
        }
    }
    let ms_max = match best {
        Some((c, e)) if c_t > Rational::from_integer(0) => {
            Some(RatioMax { ms: c / c_t, text: text.clone(), edit: e })
        }
        _ => None,
    };
    Ok(SensitivityRecord {
        measure,
        baseline: None,
        kind,
        n: text.len(),
        c_t,
        c_tprime: best.map(|(c, _)| c),
        edit: best.map(|(_, e)| e),
        text: Some(text.clone()),
        ms_max,
        source: Source::Input,
    })
}

/// Strings of length `n` over `0..sigma` in which each symbol first appears
/// after all smaller ones, in lexicographic order. Every string is a
/// renaming of exactly one of them.
pub fn canonical_strings(n: usize, sigma: usize) -> Vec<SymbolString> {
    let mut out = Vec::new();
    let mut cur: Vec<Symbol> = Vec::with_capacity(n);
    fn rec(cur: &mut Vec<Symbol>, n: usize, sigma: usize, used: usize, out: &mut Vec<SymbolString>) {
        if cur.len() == n {
            out.push(SymbolString::new(cur.clone()));
            return;
        }
        for c in 0..(used + 1).min(sigma) {
            cur.push(c as Symbol);
            rec(cur, n, sigma, used.max(c + 1), out);
            cur.pop();
        }
    }
    if n > 0 && sigma > 0 {
        rec(&mut cur, n, sigma, 0, &mut out);
    }
    out
}

/// Maximum additive sensitivity over every string of length `n` on `sigma`
/// symbols (one per renaming class), with edits over those symbols plus a
/// fresh one. The multiplicative maximum is tracked separately in
/// [`SensitivityRecord::ms_max`].
pub fn exhaustive_sensitivity(
    measure: Measure,
    n: usize,
    sigma: usize,
    kind: EditKind,
    exec: Exec,
    limits: &Limits,
) -> Result<SensitivityRecord> {
    if n == 0 || sigma == 0 {
        return input("an exhaustive sweep needs n >= 1 and at least one symbol");
    }
    let total = (sigma as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > limits.exhaustive_budget {
        return Err(Error::Capability {
            what: "exhaustive sweep",
            limit: limits.exhaustive_budget as usize,
            actual: total.min(usize::MAX as u64) as usize,
            env: ENV_EXHAUSTIVE,
        });
    }
    check_cap(measure, n + 1, limits)?;
    let strings = canonical_strings(n, sigma);
    check_renaming_invariance(measure, &strings, sigma, limits)?;
    let alphabet: BTreeSet<Symbol> = (0..sigma as Symbol).collect();
    let per_string = exec.map(&strings, |t| sensitivity_of_string(measure, t, kind, &alphabet, limits));
    let mut records = Vec::with_capacity(per_string.len());
    for r in per_string {
        records.push(r?);
    }
    let mut out = reduce(records).expect("at least one string");
    out.source = Source::Exhaustive;
    Ok(out)
}

/// Maximum over `samples` uniformly random strings drawn with a fixed seed.
#[allow(clippy::too_many_arguments)]
pub fn random_sensitivity(
    measure: Measure,
    n: usize,
    sigma: usize,
    kind: EditKind,
    samples: usize,
    seed: u64,
    exec: Exec,
    limits: &Limits,
) -> Result<SensitivityRecord> {
    if n == 0 || sigma == 0 || samples == 0 {
        return input("a random sweep needs n >= 1, a symbol and a sample");
    }
    check_cap(measure, n + 1, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strings: Vec<SymbolString> = (0..samples)
        .map(|_| SymbolString::new((0..n).map(|_| rng.gen_range(0..sigma as Symbol)).collect()))
        .collect();
    let alphabet: BTreeSet<Symbol> = (0..sigma as Symbol).collect();
    let per_string = exec.map(&strings, |t| sensitivity_of_string(measure, t, kind, &alphabet, limits));
    let mut records = Vec::with_capacity(per_string.len());
    for r in per_string {
        records.push(r?);
    }
    let mut out = reduce(records).expect("at least one sample");
    out.source = Source::Random;
    Ok(out)
}

/// Largest additive value; ties go to the smaller string, which also makes
/// the result independent of how the work was split. Ratios are maximized
/// on their own.
fn reduce(records: Vec<SensitivityRecord>) -> Option<SensitivityRecord> {
    let mut ms_best: Option<RatioMax> = None;
    let mut best: Option<SensitivityRecord> = None;
    for r in records {
        if let Some(m) = &r.ms_max {
            let better = match &ms_best {
                None => true,
                Some(b) => m.ms > b.ms || (m.ms == b.ms && m.text.as_slice() < b.text.as_slice()),
            };
            if better {
                ms_best = Some(m.clone());
            }
        }
        let better = match &best {
            None => true,
            Some(b) => match (r.additive(), b.additive()) {
                (Some(x), Some(y)) => x > y || (x == y && r.text < b.text),
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => r.text < b.text,
            },
        };
        if better {
            best = Some(r);
        }
    }
    best.map(|mut b| {
        b.ms_max = ms_best;
        b
    })
}

// The sweeps keep one string per renaming class, which is only sound for
// measures that ignore symbol identities. Check a few reversed renamings.
fn check_renaming_invariance(measure: Measure, strings: &[SymbolString], sigma: usize, limits: &Limits) -> Result<()> {
    let step = (strings.len() / 8).max(1);
    for t in strings.iter().step_by(step).take(8) {
        let renamed = SymbolString::new(t.as_slice().iter().map(|&c| sigma as Symbol - 1 - c).collect());
        if measure.eval(t, limits)? != measure.eval(&renamed, limits)? {
            return input(format!("{measure} is not invariant under renaming on {t}"));
        }
    }
    Ok(())
}

/// The record a witness family prescribes: `measure` on the edited string of
/// `kind` against `baseline` (default: the same measure) on the base string.
pub fn witness_record(
    bundle: &WitnessBundle,
    measure: Measure,
    baseline: Option<Measure>,
    kind: EditKind,
    limits: &Limits,
) -> Result<SensitivityRecord> {
    let (edit, t2) = &bundle.edited[&kind];
    let c_t = baseline.unwrap_or(measure).eval(&bundle.base, limits)?;
    let c = measure.eval(t2, limits)?;
    Ok(SensitivityRecord {
        measure,
        baseline: baseline.filter(|&b| b != measure),
        kind,
        n: bundle.n(),
        c_t,
        c_tprime: Some(c),
        edit: Some(*edit),
        text: None,
        ms_max: None,
        source: Source::Witness,
    })
}

/// Least-squares line through `(ln n, ln AS)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

pub fn growth_fit(records: &[SensitivityRecord]) -> Result<GrowthFit> {
    let mut points = Vec::with_capacity(records.len());
    for r in records {
        let a = r.additive().ok_or_else(|| Error::Input("record without an edit".into()))?;
        points.push((r.n as f64, *a.numer() as f64 / *a.denom() as f64));
    }
    growth_fit_points(&points)
}

pub fn growth_fit_points(points: &[(f64, f64)]) -> Result<GrowthFit> {
    let distinct: BTreeSet<u64> = points.iter().map(|&(n, _)| n.to_bits()).collect();
    if distinct.len() < 4 || distinct.len() != points.len() {
        return input("a growth fit needs at least 4 points with distinct n");
    }
    if points.iter().any(|&(n, a)| n <= 0.0 || a <= 0.0) {
        return input("a growth fit needs positive n and AS");
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, a)| a.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(GrowthFit { slope, intercept, residual: (sse / k).sqrt(), points: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_counts() {
        // Bell-like counts: restricted growth strings with at most two symbols.
        assert_eq!(canonical_strings(4, 2).len(), 8);
        assert_eq!(canonical_strings(3, 3).len(), 5);
        assert_eq!(canonical_strings(1, 5).len(), 1);
    }

    #[test]
    fn unary_delta_substitution() {
        let t = SymbolString::new(vec![0; 5]);
        let alphabet = BTreeSet::from([0]);
        let r = sensitivity_of_string(Measure::Delta, &t, EditKind::Substitute, &alphabet, &Limits::default()).unwrap();
        assert_eq!(r.additive(), Some(Rational::from_integer(1)));
    }

    #[test]
    fn no_edits_means_no_value() {
        let t = SymbolString::new(vec![0]);
        let r = sensitivity_of_string(Measure::Lz78, &t, EditKind::Delete, &BTreeSet::new(), &Limits::default()).unwrap();
        assert!(r.additive().is_some());
        let empty = SymbolString::new(vec![]);
        let r = sensitivity_of_string(Measure::Lz78, &empty, EditKind::Delete, &BTreeSet::new(), &Limits::default()).unwrap();
        assert_eq!(r.additive(), None);
        assert_eq!(r.csv_fields()[5], "");
    }

    #[test]
    fn constant_growth_has_zero_slope() {
        let fit = growth_fit_points(&[(2.0, 3.0), (4.0, 3.0), (8.0, 3.0), (16.0, 3.0)]).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert!(growth_fit_points(&[(2.0, 3.0), (4.0, 3.0), (8.0, 3.0)]).is_err());
        assert!(growth_fit_points(&[(2.0, 3.0), (4.0, 0.0), (8.0, 3.0), (9.0, 1.0)]).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let limits = Limits { exhaustive_budget: 100, ..Limits::default() };
        let r = exhaustive_sensitivity(Measure::Delta, 7, 2, EditKind::Delete, Exec::Sequential, &limits);
        assert!(matches!(r, Err(Error::Capability { .. })));
    }
}
