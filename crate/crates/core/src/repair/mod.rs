//! Turning a structure for `T` into one for an edited `T'`.
//!
//! Each procedure takes a valid attractor, macro scheme or LZ-End parsing of
//! `T` plus one edit, and returns a valid structure for `T'` together with a
//! [`RepairReport`] that records how every input phrase was treated.

mod attractor;
mod bms;
mod lzend;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::text::Edit;

pub use attractor::attractor_repair;
pub use bms::bms_repair;
pub use lzend::lzend_repair;

/// One line of the phrase ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub case: String,
    /// 1-based index of the input phrase, when the entry comes from one.
    pub input: Option<usize>,
    pub pieces: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairReport {
    pub procedure: &'static str,
    pub edit: Edit,
    /// Length of `T`.
    pub n: usize,
    /// Length of `T'`.
    pub m: usize,
    pub input_size: usize,
    pub output_size: usize,
    /// Output phrases (or positions) contributed per case label.
    pub cases: BTreeMap<String, usize>,
    /// Largest contribution of a single input phrase per case label.
    pub max_pieces: BTreeMap<String, usize>,
    /// 1-based index of the input phrase holding the edit, if any.
    pub edited_index: Option<usize>,
    /// The size bound the construction guarantees for this instance.
    pub bound: usize,
    pub trace: Vec<TraceEntry>,
}

impl RepairReport {
    fn new(procedure: &'static str, edit: Edit, n: usize, input_size: usize) -> Self {
        Self {
            procedure,
            edit,
            n,
            m: edit.edited_len(n),
            input_size,
            output_size: 0,
            cases: BTreeMap::new(),
            max_pieces: BTreeMap::new(),
            edited_index: None,
            bound: 0,
            trace: Vec::new(),
        }
    }

    fn record(&mut self, case: &str, input: Option<usize>, pieces: usize, detail: String) {
        *self.cases.entry(case.to_string()).or_default() += pieces;
        let max = self.max_pieces.entry(case.to_string()).or_default();
        *max = (*max).max(pieces);
        self.trace.push(TraceEntry { case: case.to_string(), input, pieces, detail });
    }

    pub fn within_bound(&self) -> bool {
        self.output_size <= self.bound
    }

    /// `(output - input) / sqrt(n)`, the constant of the additive growth.
    pub fn growth_constant(&self) -> f64 {
        (self.output_size as f64 - self.input_size as f64) / (self.n.max(1) as f64).sqrt()
    }

    pub const CSV_HEADER: &'static str = "procedure,edit,n,m,input_size,output_size,bound,cases";

    pub fn csv_row(&self) -> String {
        let cases: Vec<String> = self.cases.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record([
            self.procedure.to_string(),
            self.edit.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.input_size.to_string(),
            self.output_size.to_string(),
            self.bound.to_string(),
            cases.join(";"),
        ])
        .expect("writing to memory");
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv is utf-8")
    }

    pub fn trace_lines(&self) -> Vec<String> {
        self.trace
            .iter()
            .map(|t| {
                let from = t.input.map_or_else(|| "-".to_string(), |k| k.to_string());
                format!("{} {} {} {}", t.case, from, t.pieces, t.detail)
            })
            .collect()
    }
}

/// A repaired structure plus its audit trail.
#[derive(Debug, Clone)]
pub struct Repaired<T> {
    pub output: T,
    pub report: RepairReport,
}

/// Where an edit lands, in the coordinates of both strings (0-based).
#[derive(Debug, Clone, Copy)]
pub(crate) enum Site {
    /// `T[i]` replaced; the same index in `T'`.
    Sub(usize),
    /// A symbol enters `T'` at index `g`, between `T[g-1]` and `T[g]`.
    Ins(usize),
    /// `T[i]` removed.
    Del(usize),
}

impl Site {
    pub(crate) fn of(edit: &Edit) -> Self {
        match *edit {
            Edit::Substitute { position, .. } => Site::Sub(position - 1),
            Edit::Insert { position, .. } => Site::Ins(position),
            Edit::Delete { position } => Site::Del(position - 1),
        }
    }

    /// Old index to new index; `None` for a deleted position.
    pub(crate) fn map(self, x: usize) -> Option<usize> {
        match self {
            Site::Sub(_) => Some(x),
            Site::Ins(g) => Some(if x >= g { x + 1 } else { x }),
            Site::Del(i) => match x.cmp(&i) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            },
        }
    }

    /// Whether the old interval `[a, b]` is damaged: it holds the replaced
    /// or deleted position, or straddles the insertion gap.
    pub(crate) fn damages(self, a: usize, b: usize) -> bool {
        match self {
            Site::Sub(i) | Site::Del(i) => a <= i && i <= b,
            Site::Ins(g) => a < g && g <= b,
        }
    }
}

/// Range check plus the same-symbol substitution rule; returns `T'`.
pub(crate) fn edited(text: &crate::text::SymbolString, edit: &Edit) -> crate::Result<crate::text::SymbolString> {
    edit.check(text.len())?;
    if let Edit::Substitute { position, symbol } = *edit {
        if text.as_slice()[position - 1] == symbol {
            return crate::error::input(format!("{edit} does not change the text"));
        }
    }
    crate::text::apply_edit(text, edit)
}
