mod common;

#[test]
fn witness_degree_is_six_at_every_rational_singular_point() {
    if let Err(e) = common::witness_degree_sum() {
        panic!("{e}");
    }
}

#[test]
fn sigma_does_not_depend_on_the_seed() {
    if let Err(e) = common::sigma_seed_independence(&[1, 42, 9001]) {
        panic!("{e}");
    }
}
