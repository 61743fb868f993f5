mod common;

// the acceptance runner repeats these at 1000 cases each
const CASES: u32 = 200;

#[test]
fn conj_involution() {
    common::conj_involution(CASES).unwrap();
}

#[test]
fn field_axioms() {
    common::field_axioms(CASES).unwrap();
}

#[test]
fn incidence_symmetric_degree_10() {
    common::incidence(CASES).unwrap();
}

#[test]
fn equivalence_laws() {
    common::equivalence_laws(CASES).unwrap();
}

#[test]
fn seed_determinism() {
    common::seed_determinism(CASES).unwrap();
}
