mod common;

use std::collections::BTreeSet;

use common::*;
use repsens::sensitivity::*;
use repsens::text::{apply_edit, EditKind};
use repsens::witness::lz78_witness;
use repsens::{Exec, Limits, Rational, SymbolString};

#[test]
fn lz78_witness_gap_at_p2() {
    let w = lz78_witness(2).unwrap();
    let alphabet: BTreeSet<u32> = w.symbols.keys().copied().collect();
    let r = sensitivity_of_string(Measure::Lz78, &w.base, EditKind::Substitute, &alphabet, &Limits::default()).unwrap();
    assert!(r.additive().unwrap() >= Rational::from_integer(3));
}

#[test]
fn unary_delta() {
    // A lone symbol substituted by a fresh one is still a lone symbol.
    let one = SymbolString::new(vec![4]);
    let r = sensitivity_of_string(Measure::Delta, &one, EditKind::Substitute, &BTreeSet::from([4]), &Limits::default()).unwrap();
    assert_eq!(r.additive(), Some(Rational::from_integer(0)));
    for k in 2..6 {
        let t = SymbolString::new(vec![4; k]);
        let r = sensitivity_of_string(Measure::Delta, &t, EditKind::Substitute, &BTreeSet::from([4]), &Limits::default()).unwrap();
        assert_eq!(r.additive(), Some(Rational::from_integer(1)));
    }
}

#[test]
fn argmax_is_reproducible() {
    let limits = Limits::default();
    for m in [Measure::LzssOverlap, Measure::Lz78, Measure::LzEnd, Measure::Delta, Measure::Gamma] {
        for kind in EditKind::ALL {
            let r = exhaustive_sensitivity(m, 7, 2, kind, Exec::Parallel, &limits).unwrap();
            let t = r.text.clone().unwrap();
            let again = m.eval(&apply_edit(&t, &r.edit.unwrap()).unwrap(), &limits).unwrap();
            assert_eq!(Some(again), r.c_tprime);
            assert_eq!(m.eval(&t, &limits).unwrap(), r.c_t);
        }
    }
}

#[test]
fn worker_count_does_not_matter() {
    let limits = Limits::default();
    for kind in EditKind::ALL {
        let a = exhaustive_sensitivity(Measure::LzEnd, 9, 2, kind, Exec::Sequential, &limits).unwrap();
        let b = exhaustive_sensitivity(Measure::LzEnd, 9, 2, kind, Exec::Parallel, &limits).unwrap();
        assert_eq!(a, b);
        let a = random_sensitivity(Measure::Lz78, 20, 3, kind, 50, 0, Exec::Sequential, &limits).unwrap();
        let b = random_sensitivity(Measure::Lz78, 20, 3, kind, 50, 0, Exec::Parallel, &limits).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn witness_never_beats_exhaustive() {
    let limits = Limits::default();
    let w = lz78_witness(1).unwrap();
    for kind in EditKind::ALL {
        let wit = witness_record(&w, Measure::Lz78, None, kind, &limits).unwrap();
        // Seven symbols over an alphabet of three plus a fresh one.
        let ex = exhaustive_sensitivity(Measure::Lz78, 7, 3, kind, Exec::Parallel, &limits).unwrap();
        assert!(wit.additive() <= ex.additive(), "{kind}");
    }
}

#[test]
fn single_symbol_strings() {
    let limits = Limits::default();
    for kind in EditKind::ALL {
        let r = exhaustive_sensitivity(Measure::LzssOverlap, 1, 3, kind, Exec::Sequential, &limits).unwrap();
        assert!(r.additive().unwrap() <= Rational::from_integer(1));
    }
}

#[test]
fn renaming_invariance_on_samples() {
    let limits = Limits::default();
    let mut r = rng(9);
    for _ in 0..50 {
        let t = random_text(&mut r, 9, 3);
        let renamed = SymbolString::new(t.as_slice().iter().map(|&c| (c + 1) % 3 + 10).collect());
        for m in Measure::ALL {
            assert_eq!(m.eval(&t, &limits).unwrap(), m.eval(&renamed, &limits).unwrap(), "{m} {t}");
        }
    }
}

#[test]
fn gamma_substitution_fixture() {
    let limits = Limits::default();
    let r = exhaustive_sensitivity(Measure::Gamma, 10, 2, EditKind::Substitute, Exec::Parallel, &limits).unwrap();
    let t = r.text.clone().unwrap();
    let t2 = apply_edit(&t, &r.edit.unwrap()).unwrap();
    assert_eq!(r.c_t, Rational::from_integer(brute_attractor_size(&t) as i64));
    assert_eq!(r.c_tprime, Some(Rational::from_integer(brute_attractor_size(&t2) as i64)));
    assert_eq!(r.additive(), Some(Rational::from_integer(GAMMA_SUB_AS_10)));
}

// Worst substitution over binary strings of length 10, confirmed above
// against the unpruned attractor search on both ends of the argmax pair.
const GAMMA_SUB_AS_10: i64 = 2;

#[test]
fn csv_layout() {
    let limits = Limits::default();
    let r = exhaustive_sensitivity(Measure::Delta, 5, 2, EditKind::Insert, Exec::Sequential, &limits).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, &[r]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "measure,edit_kind,n,c_T,c_Tprime,AS,MS_num,MS_den,edit_pos,edit_sym,source");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "delta");
    assert_eq!(row[1], "ins");
    assert_eq!(row[5], "1");
    assert_eq!(row[10], "exhaustive");
}
