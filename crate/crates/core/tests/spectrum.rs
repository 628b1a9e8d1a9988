mod common;

use threefold::forms::rat;
use threefold::singular::{spectrum, SingularityType};

#[test]
fn twice_b11_plus_l11_is_milnor() {
    if let Err(e) = common::b11_l11_sum() {
        panic!("{e}");
    }
}

#[test]
fn sums_of_powers_match_the_monomial_basis() {
    if let Err(e) = common::spectrum_oracle() {
        panic!("{e}");
    }
}

#[test]
fn cusp() {
    let s = spectrum(SingularityType::A(2)).unwrap();
    assert_eq!(s.values, vec![rat(11, 6), rat(13, 6)]);
    assert_eq!((s.b11(), s.l11()), (1, 0));
}

#[test]
fn oracle_sanity() {
    // x³ + y³ + z³ + w²: 8 numbers symmetric about 2.
    let v = common::brieskorn_pham_spectrum([3, 3, 3, 2]);
    assert_eq!(v.len(), 8);
    for (a, b) in v.iter().zip(v.iter().rev()) {
        assert_eq!(a + b, rat(4, 1));
    }
}
