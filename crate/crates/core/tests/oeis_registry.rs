//! Cross-checks against the OEIS prefix fixtures in `tests/fixtures/`.

use std::path::PathBuf;

use fixprime::engine::{generate, SequenceSpec, Variant};
use fixprime::oeis::{compare, compare_fixed_points, compare_q, parse_bfile, BFile};

fn fixture(id: &str) -> BFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{id}.b"));
    let text = std::fs::read_to_string(&path).unwrap();
    let b = parse_bfile(&text).unwrap();
    assert_eq!(b.sequence_id.as_deref(), Some(id));
    b
}

#[test]
fn q_sequences_match_their_registry_entries() {
    for (p, id) in [(1, "A000217"), (2, "A002378"), (4, "A046092"), (6, "A028896"), (9, "A027468")] {
        let b = fixture(id);
        assert_eq!(b.offset, 0);
        let run = generate(SequenceSpec::standard(p, 40)).unwrap();
        // q(n) is the fixture's entry n-1
        let r = compare_q(&run, &b, 1).unwrap();
        assert!(r.matches(), "{id}: {r:?}");
        assert_eq!(r.compared_length, b.len());
    }
}

#[test]
fn no_zero_variant_is_a111273() {
    let b = fixture("A111273");
    let run = generate(SequenceSpec::new(Variant::TriangularNoZero, 12)).unwrap();
    let r = compare(&run, &b, 0).unwrap();
    assert!(r.matches());
    assert_eq!(r.compared_length, 12);
}

#[test]
fn shifted_variant_is_a111273_moved_right() {
    let b = fixture("A111273");
    let run = generate(SequenceSpec::new(Variant::TriangularShifted, 13)).unwrap();
    assert!(compare(&run, &b, 1).unwrap().matches());
    let unshifted = compare(&run, &b, 0).unwrap();
    assert_eq!(unshifted.first_mismatch.unwrap().index, 2);
}

#[test]
fn no_zero_fixed_points_are_a113659() {
    let b = fixture("A113659");
    let run = generate(SequenceSpec::new(Variant::TriangularNoZero, 70)).unwrap();
    let r = compare_fixed_points(&run, &b, 0).unwrap();
    assert!(r.matches());
    assert_eq!(r.compared_length, 6);
}

#[test]
fn identity_sequences_for_even_p() {
    let identity = BFile::from_values(None, 1, &(1..=500).collect::<Vec<i128>>());
    for p in [2, 4, 6] {
        let run = generate(SequenceSpec::standard(p, 500)).unwrap();
        assert!(compare(&run, &identity, 0).unwrap().matches(), "A({p})");
    }
}
