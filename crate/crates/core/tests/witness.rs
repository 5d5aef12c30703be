use repsens::factor::{lz78, lz_end_greedy, lzss_overlapping};
use repsens::text::{apply_edit, EditKind};
use repsens::witness::*;
use repsens::PhraseKind;

#[test]
fn edited_strings_match_their_edits() {
    for p in 2..=6 {
        for w in [lz_witness(p).unwrap(), lz78_witness(p).unwrap()] {
            for (edit, t2) in w.edited.values() {
                assert_eq!(&apply_edit(&w.base, edit).unwrap(), t2);
            }
        }
    }
}

#[test]
fn lz_family_small_counts() {
    let w = lz_witness(2).unwrap();
    assert_eq!(w.n(), 25);
    assert_eq!(lz_end_greedy(&w.base).unwrap().count(), 13);
    assert_eq!(lzss_overlapping(w.edited_text(EditKind::Substitute)).unwrap().count(), 18);
    for (name, e) in &w.expected {
        assert!(e.value() > 0, "{name}");
    }
}

#[test]
fn lz_family_length_formula() {
    for p in 2..=8 {
        let pairs = pair_sequence(p).unwrap();
        let n = 2 * p + 1 + pairs.pairs.iter().map(|(l, r)| l + r + 2).sum::<usize>();
        assert_eq!(lz_witness(p).unwrap().n(), n);
    }
}

/// Literals for the `2p + 1` opening symbols, then `#_i | B(l_i) x A(r_i)`.
#[test]
fn lz_family_greedy_lzend_shape() {
    for p in 2..=6 {
        let w = lz_witness(p).unwrap();
        let f = lz_end_greedy(&w.base).unwrap();
        let lens: Vec<usize> = f.phrases.iter().map(|ph| ph.len).collect();
        let mut expected = vec![1; 2 * p + 1];
        for &(l, r) in &pair_sequence(p).unwrap().pairs {
            expected.push(1);
            expected.push(l + r + 1);
        }
        assert_eq!(lens, expected, "p={p}");
        for (k, ph) in f.phrases.iter().enumerate().skip(2 * p + 1).step_by(2) {
            assert!(matches!(ph.kind, PhraseKind::Literal(_)), "phrase {k} of p={p}");
        }
    }
}

/// The substituted LZ78 parse contains `c_{i-1} a_i` for every `2 <= i <= p`.
#[test]
fn lz78_family_mixed_phrases() {
    for p in 1..=4 {
        let w = lz78_witness(p).unwrap();
        let t2 = w.edited_text(EditKind::Substitute);
        let f = lz78(t2).unwrap();
        let rendered: Vec<String> = f
            .phrases
            .iter()
            .map(|ph| w.render(&repsens::SymbolString::new(t2.substring(ph.start, ph.end()).to_vec())))
            .collect();
        for i in 2..=p {
            let want = format!("c_{} a_{i}", i - 1);
            assert!(rendered.contains(&want), "p={p}: {rendered:?}");
        }
        assert_eq!(f.count(), 5 * p + 1);
        assert_eq!(lz78(&w.base).unwrap().count(), 4 * p);
    }
}

#[test]
fn family_names_round_trip() {
    for f in [Family::Lz, Family::Lz78] {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
        assert!(f.build(f.min_p() - 1).is_err());
    }
}
