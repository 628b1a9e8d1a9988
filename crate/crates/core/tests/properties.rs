mod common;

fn check(r: common::Check) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn euler_identity() {
    check(common::euler_identity(64));
}

#[test]
fn substitution_round_trip() {
    check(common::substitution_round_trip(48));
}

#[test]
fn parser_round_trip() {
    check(common::parser_round_trip(64));
}
