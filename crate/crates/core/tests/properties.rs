mod common;

#[test]
fn reflections_are_involutive_isometries() {
    common::prop_reflections(256).unwrap();
}

#[test]
fn foldings_are_involutive_isometries() {
    common::prop_foldings(256).unwrap();
}

#[test]
fn subdiagram_enumeration_matches_brute_force() {
    common::prop_enumeration(256).unwrap();
}

#[test]
fn smith_and_lll_match_oracles() {
    common::prop_linalg(256).unwrap();
}
