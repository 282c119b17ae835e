mod common;

use common::{expand, load_windows, window_mismatch};
use realk::hz::hz_group_at;
use realk::kr::kr_group_at;
use realk::RODegree;

#[test]
fn kr_chart_matches_enumeration() {
    let w = load_windows();
    let found = window_mismatch(&w.window, &w.kr, |d| kr_group_at(d).unwrap());
    assert!(found.is_none(), "kr mismatch {found:?}");
}

#[test]
fn hz_chart_matches_enumeration() {
    let w = load_windows();
    let found = window_mismatch(&w.window, &w.hz, |d| hz_group_at(d).unwrap());
    assert!(found.is_none(), "hz mismatch {found:?}");
}

#[test]
fn chart_has_expected_landmarks() {
    let w = load_windows();
    let kr = expand(&w.window, &w.kr);
    // the drawn classes a^10, wU^2 and the end of the aU^2 tower
    assert!(kr.contains_key(&(0, -10)));
    assert!(kr.contains_key(&(10, -10)));
    assert!(kr.contains_key(&(8, -12)));
    // aw = 0: nothing directly under w
    assert!(!kr.contains_key(&(2, -3)));
    assert_eq!(kr.len(), w.window.degrees().filter(|d| !kr_group_at(*d).unwrap().is_zero()).count());
}

#[test]
fn negative_p_is_empty() {
    for p in -12..0 {
        for q in -12..=p {
            assert!(kr_group_at(RODegree::new(p, q)).unwrap().is_zero());
            assert!(hz_group_at(RODegree::new(p, q)).unwrap().is_zero());
        }
    }
}
