use std::collections::BTreeSet;

use borromean::classify::{bfs_elements, classify};
use borromean::error::Error;
use borromean::families::{
    construct_index, g_family_members, group_g, group_h, h_family_members, CanonicalSubgroup, Family,
};
use borromean::isometry::{in_uhat, random_shat, IntIsometry};
use borromean::word::eval_phi;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> Vec<CanonicalSubgroup> {
    let mut out = g_family_members(&[1, 2], &[1, 2], &[1, 3]);
    out.extend(h_family_members(&[1, 3]));
    out
}

#[test]
fn bfs_products_are_members_and_members_are_reached() {
    for h in small() {
        let gens = h.generators();
        let short = bfs_elements(&gens, 10, None);
        for g in &short {
            assert!(h.member(g).unwrap(), "{h}: {g}");
        }
        let window = 6;
        let reached = bfs_elements(&gens, 14, Some(window));
        let (a, b, c) = borromean::isometry::generators_uhat();
        let candidates = bfs_elements(&[a, b, c], 12, Some(window));
        let members: BTreeSet<IntIsometry> =
            candidates.into_iter().filter(|g| h.member(g).unwrap()).collect();
        assert!(members.is_subset(&reached), "{h}");
    }
}

#[test]
fn lifts_map_onto_the_generators() {
    for h in small() {
        let images: Vec<IntIsometry> = h.lift_generators().iter().map(eval_phi).collect();
        for g in &images {
            assert!(h.member(g).unwrap());
        }
        for g in h.generators() {
            assert!(images.contains(&g), "{h}: {g} not an image");
        }
    }
    let lifts: Vec<String> = group_h(1, 1, 1).unwrap().lift_generators().iter().map(|w| w.to_string()).collect();
    assert_eq!(lifts, vec!["a", "b", "c"]);
}

#[test]
fn parity_of_the_index() {
    for n in 1..=64 {
        let h = construct_index(n).unwrap();
        assert_eq!(h.index(), n);
        assert_eq!(h.family() == Family::G, n % 2 == 0);
        assert_eq!(h.cube_orbit_count().orbits as i64, n);
    }
    assert!(matches!(construct_index(0), Err(Error::BadParams(_))));
    assert_eq!(construct_index(2).unwrap(), group_g(1, 1, 1).unwrap());
    assert_eq!(construct_index(5).unwrap().params(), [1, 1, 5]);
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(group_g(1, 1, 2).is_err());
    assert!(group_g(0, 1, 1).is_err());
    assert!(group_h(1, 2, 3).is_err());
    assert!(group_h(3, 1, 1).is_err());
    assert!(group_h(1, 3, 1).is_err());
    assert!(group_h(1, 5, 3).is_ok());
    assert!(group_h(1, 3, 5).is_ok());
    assert!(matches!(group_g(1, 1, 1).unwrap().witness_rotations(), Err(Error::FamilyMismatch { .. })));
}

#[test]
fn json_round_trip() {
    let h = group_h(1, 3, 5).unwrap();
    let s = serde_json::to_string(&h).unwrap();
    assert_eq!(serde_json::from_str::<CanonicalSubgroup>(&s).unwrap(), h);
    let bare: CanonicalSubgroup = serde_json::from_str(r#"{"family":"G","params":[2,1,3]}"#).unwrap();
    assert_eq!(bare, group_g(2, 1, 3).unwrap());
    assert!(serde_json::from_str::<CanonicalSubgroup>(r#"{"family":"H","params":[2,1,3]}"#).is_err());
}

#[test]
fn members_of_conjugated_groups() {
    let h = group_h(1, 1, 3).unwrap();
    let s = IntIsometry::translation_by([4, 0, 0]);
    let moved = h.clone().with_conjugator(s).unwrap();
    for g in moved.generators() {
        assert!(moved.member(&g).unwrap());
        assert!(in_uhat(&g));
    }
    let outside = IntIsometry::translation_by([1, 0, 0]);
    assert!(matches!(h.member(&outside), Err(Error::NotInUhat)));
}

fn family_strategy() -> impl Strategy<Value = CanonicalSubgroup> {
    let g = (1i64..=4, 1i64..=4, 0i64..=2).prop_map(|(m, n, o)| group_g(m, n, 2 * o + 1).unwrap());
    let h = (0i64..=2, 0i64..=2, 0i64..=2).prop_filter_map("ordering", |(p, q, r)| {
        group_h(2 * p + 1, 2 * q + 1, 2 * r + 1).ok()
    });
    prop_oneof![g, h]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_keeps_the_parameters(h in family_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_shat(&mut rng, 12);
        let gens: Vec<IntIsometry> = h.canonical_generators().iter().map(|g| g.conjugate_by(&s)).collect();
        let r = classify(&gens).unwrap();
        prop_assert_eq!(r.canonical().canonical(), h.clone());
        prop_assert_eq!(r.index() % 2 == 0, r.canonical().family() == Family::G);
    }
}
