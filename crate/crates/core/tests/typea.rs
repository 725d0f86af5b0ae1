//! The Knuth closure on its own, and against normal forms.

use lsplacto::plactic::RewriteSystem;
use lsplacto::typea_oracle::{all_words, box_to_word, knuth_class, knuth_equiv, reading_finding, word_to_boxes, BoxWord};
use lsplacto::{RootSystem, TypeLabel};

#[test]
fn closure_is_transitive_on_samples() {
    let words = all_words(3, 4);
    for (i, a) in words.iter().enumerate().step_by(7) {
        let class = knuth_class(3, a, 7).unwrap();
        for b in words.iter().skip(i % 5).step_by(11) {
            for c in words.iter().skip(i % 3).step_by(13) {
                if class.contains(b) && knuth_equiv(3, b, c).unwrap() {
                    assert!(knuth_equiv(3, a, c).unwrap(), "{a} {b} {c}");
                }
            }
            assert_eq!(knuth_equiv(3, a, b).unwrap(), knuth_equiv(3, b, a).unwrap());
        }
    }
}

#[test]
fn congruent_words_share_content_up_to_full_columns() {
    for n in [2usize, 3] {
        for a in all_words(n, 4) {
            for b in knuth_class(n, &a, 4 + n).unwrap() {
                let (ca, cb) = (a.content(n), b.content(n));
                let shift = cb[0] as i64 - ca[0] as i64;
                assert!(ca.iter().zip(&cb).all(|(x, y)| *y as i64 - *x as i64 == shift), "{a} {b}");
            }
        }
    }
}

#[test]
fn box_normal_forms_stay_in_the_class() {
    for n in [2usize, 3, 4] {
        let rs = RootSystem::build(TypeLabel::A, n - 1).unwrap();
        let s = RewriteSystem::build(&rs).unwrap();
        for w in all_words(n, if n == 4 { 3 } else { 4 }) {
            let nf = s.normalize(&box_to_word(&rs, s.table(), &w).unwrap()).unwrap();
            if nf.letters().iter().all(|&g| s.table().get(g).shape == 1) {
                let back = word_to_boxes(s.table(), &nf, false);
                assert!(knuth_equiv(n, &w, &back).unwrap(), "{w} -> {back}");
            }
        }
    }
}

#[test]
fn a_consistent_reading_exists() {
    let finding = reading_finding(3, 4).unwrap();
    assert!(!finding.consistent().is_empty(), "{:?}", finding.violations);
    let one = BoxWord::parse("1").unwrap();
    assert!(knuth_equiv(3, &one, &BoxWord::parse("1123").unwrap()).unwrap());
}
