//! Parametric strings whose parsings grow sharply after a single edit.
//!
//! Symbols are numbered so that fixtures are stable: with parameter `p`,
//! `a_i = i`, `b_i = p + i`, `c_i = 2p + i`, `x = 3p + 1`, `y = 3p + 2` and
//! `#_i = 3p + 2 + i`. The LZ78 family's single separator `#` is `#_1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{input, Result};
use crate::text::{apply_edit, Edit, EditKind, Symbol, SymbolString};

/// All pairs of `[1, p]^2`, by increasing sum and, within a sum, by
/// increasing first coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSequence {
    pub p: usize,
    pub pairs: Vec<(usize, usize)>,
}

pub fn pair_sequence(p: usize) -> Result<PairSequence> {
    if p < 2 {
        return input(format!("pair sequence needs p >= 2, got {p}"));
    }
    let pairs = (2..=2 * p)
        .flat_map(|k| (1..=p).filter(move |&l| k > l && k - l <= p).map(move |l| (l, k - l)))
        .collect();
    Ok(PairSequence { p, pairs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// Separated blocks `B(l) x A(r)`; blows up every LZSS/LZ-End variant.
    Lz,
    /// Three runs of `c`, `aab` and `abc` blocks; blows up LZ78.
    Lz78,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lz => "lz",
            Family::Lz78 => "lz78",
        }
    }

    pub fn min_p(self) -> usize {
        match self {
            Family::Lz => 2,
            Family::Lz78 => 1,
        }
    }

    pub fn build(self, p: usize) -> Result<WitnessBundle> {
        match self {
            Family::Lz => lz_witness(p),
            Family::Lz78 => lz78_witness(p),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lz" | "lzend" => Ok(Family::Lz),
            "lz78" => Ok(Family::Lz78),
            _ => input(format!("unknown witness family {s:?}")),
        }
    }
}

/// A closed-form expectation for one measured count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expected {
    Exact(usize),
    AtLeast(usize),
}

impl Expected {
    pub fn holds(self, value: usize) -> bool {
        match self {
            Expected::Exact(v) => value == v,
            Expected::AtLeast(v) => value >= v,
        }
    }

    pub fn value(self) -> usize {
        match self {
            Expected::Exact(v) | Expected::AtLeast(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessBundle {
    pub family: Family,
    pub p: usize,
    pub base: SymbolString,
    pub edited: BTreeMap<EditKind, (Edit, SymbolString)>,
    pub symbols: BTreeMap<Symbol, String>,
    /// Keyed `<measure>_T` for the base string and `<measure>_T<kind>` for
    /// an edited one, e.g. `lzend_T` or `lzss_overlap_Tsub`.
    pub expected: BTreeMap<String, Expected>,
}

impl WitnessBundle {
    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn edited_text(&self, kind: EditKind) -> &SymbolString {
        &self.edited[&kind].1
    }

    /// Names in order of the base string, e.g. `b_2 b_1 x a_1 a_2 #_1 ...`.
    pub fn render(&self, s: &SymbolString) -> String {
        let names: Vec<&str> = s.as_slice().iter().map(|c| self.symbols[c].as_str()).collect();
        names.join(" ")
    }
}

struct Alphabet {
    p: usize,
}

impl Alphabet {
    fn a(&self, i: usize) -> Symbol {
        i as Symbol
    }
    fn b(&self, i: usize) -> Symbol {
        (self.p + i) as Symbol
    }
    fn c(&self, i: usize) -> Symbol {
        (2 * self.p + i) as Symbol
    }
    fn x(&self) -> Symbol {
        (3 * self.p + 1) as Symbol
    }
    fn y(&self) -> Symbol {
        (3 * self.p + 2) as Symbol
    }
    fn hash(&self, i: usize) -> Symbol {
        (3 * self.p + 2 + i) as Symbol
    }

    fn table(&self, hashes: usize, with_c: bool, with_xy: bool) -> BTreeMap<Symbol, String> {
        let mut t = BTreeMap::new();
        for i in 1..=self.p {
            t.insert(self.a(i), format!("a_{i}"));
            t.insert(self.b(i), format!("b_{i}"));
            if with_c {
                t.insert(self.c(i), format!("c_{i}"));
            }
        }
        if with_xy {
            t.insert(self.x(), "x".to_string());
            t.insert(self.y(), "y".to_string());
        }
        for i in 1..=hashes {
            let name = if hashes == 1 { "#".to_string() } else { format!("#_{i}") };
            t.insert(self.hash(i), name);
        }
        t
    }
}

fn edits(base: &SymbolString, at: usize, symbol: Symbol) -> Result<BTreeMap<EditKind, (Edit, SymbolString)>> {
    [
        Edit::Substitute { position: at, symbol },
        Edit::Insert { position: at, symbol },
        Edit::Delete { position: at },
    ]
    .into_iter()
    .map(|e| Ok((e.kind(), (e, apply_edit(base, &e)?))))
    .collect()
}

/// `B(p) x A(p)` followed by `#_i B(l_i) x A(r_i)` for every pair of
/// [`pair_sequence`], where `A(i) = a_1..a_i` and `B(i) = b_i..b_1`. The
/// edits hit the first `x`, at position `p + 1`, with the fresh `y`.
pub fn lz_witness(p: usize) -> Result<WitnessBundle> {
    let pairs = pair_sequence(p)?;
    let s = Alphabet { p };
    let big_a = |i: usize| (1..=i).map(|k| s.a(k)).collect::<Vec<_>>();
    let big_b = |i: usize| (1..=i).rev().map(|k| s.b(k)).collect::<Vec<_>>();
    let mut t = big_b(p);
    t.push(s.x());
    t.extend(big_a(p));
    for (k, &(l, r)) in pairs.pairs.iter().enumerate() {
        t.push(s.hash(k + 1));
        t.extend(big_b(l));
        t.push(s.x());
        t.extend(big_a(r));
    }
    let base = SymbolString::new(t);
    let edited = edits(&base, p + 1, s.y())?;
    let expected = BTreeMap::from([
        ("lzend_T".to_string(), Expected::Exact(2 * p * p + 2 * p + 1)),
        ("lzss_overlap_Tsub".to_string(), Expected::Exact(3 * p * p + 2 * p + 2)),
        ("lzss_overlap_Tins".to_string(), Expected::AtLeast(3 * p * p)),
        ("lzss_overlap_Tdel".to_string(), Expected::AtLeast(3 * p * p)),
    ]);
    Ok(WitnessBundle { family: Family::Lz, p, base, edited, symbols: s.table(p * p, false, true), expected })
}

/// `c_1..c_p`, then `a_i a_i b_i` and `a_i b_i c_i` for `i = 1..p`. The
/// edits hit `a_1` at position `4p + 1` with the fresh `#`.
pub fn lz78_witness(p: usize) -> Result<WitnessBundle> {
    if p < 1 {
        return input("the LZ78 witness needs p >= 1");
    }
    let s = Alphabet { p };
    let mut t: Vec<Symbol> = (1..=p).map(|i| s.c(i)).collect();
    for i in 1..=p {
        t.extend([s.a(i), s.a(i), s.b(i)]);
    }
    for i in 1..=p {
        t.extend([s.a(i), s.b(i), s.c(i)]);
    }
    let base = SymbolString::new(t);
    let edited = edits(&base, 4 * p + 1, s.hash(1))?;
    let expected = BTreeMap::from([
        ("lz78_T".to_string(), Expected::Exact(4 * p)),
        ("lz78_Tsub".to_string(), Expected::Exact(5 * p + 1)),
    ]);
    Ok(WitnessBundle { family: Family::Lz78, p, base, edited, symbols: s.table(1, true, false), expected })
}
