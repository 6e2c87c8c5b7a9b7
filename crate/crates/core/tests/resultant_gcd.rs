mod common;

use common::*;

#[test]
fn thousand_pairs_resultant_zero_iff_common_factor() {
    let st = iff_campaign(0x5eed, 1000);
    assert_eq!(st.pairs, 1000);
    assert!(st.constructed >= 200, "{st:?}");
    assert!(st.zero_resultants >= st.constructed, "{st:?}");
    assert_eq!(st.disagreements, 0, "{st:?}");
}

#[test]
fn small_resultants() {
    let s = syms();
    let p = |t: &str| polyreplay::parse_poly(t, &s.table).unwrap();
    // x^2 - 1 and x^2 - 4: roots ±1 against ±2
    let r = polyreplay::resultant(&p("x^2 - 1"), &p("x^2 - 4"), s.x).unwrap();
    assert_eq!(r, p("9"));
    let r = polyreplay::resultant(&p("x - y"), &p("x - z"), s.x).unwrap();
    assert_eq!(r, p("y - z"));
    assert!(polyreplay::resultant(&p("y"), &p("z"), s.x).is_err());
}
