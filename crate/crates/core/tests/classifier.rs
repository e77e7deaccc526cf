use std::collections::BTreeSet;

use borromean::classify::{
    admissible_planes, axis_points, bfs_elements, check_rectangle, classify, verify_rectangle_in,
    ClassifyOptions, Plane, RotationGroup, Window,
};
use borromean::error::Error;
use borromean::families::{g_family_members, group_g, group_h, h_family_members, CanonicalSubgroup, Family};
use borromean::isometry::{random_shat, rotation_d, Direction, IntIsometry, RotationAxis};
use borromean::lattice::IntegerLattice;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn families_up_to_five() -> Vec<CanonicalSubgroup> {
    let all: Vec<i64> = (1..=5).collect();
    g_family_members(&all, &all, &all)
        .into_iter()
        .chain(h_family_members(&all))
        .collect()
}

#[test]
fn canonical_generators_classify_to_themselves() {
    for h in families_up_to_five() {
        let r = classify(&h.canonical_generators()).unwrap();
        assert_eq!(r.canonical().canonical(), h, "{h}");
        assert_eq!(r.index(), h.index());
    }
    let g = group_g(1, 1, 1).unwrap();
    assert!(classify(&g.canonical_generators()).unwrap().conjugator().is_identity());
}

#[test]
fn conjugated_h113_recovers_parameters() {
    let h = group_h(1, 1, 3).unwrap();
    let s = IntIsometry::translation_by([0, 0, 4]).compose(&rotation_d());
    let gens: Vec<IntIsometry> = h.canonical_generators().iter().map(|g| g.conjugate_by(&s)).collect();
    let r = classify(&gens).unwrap();
    assert_eq!(r.canonical().canonical(), h);
    for g in &gens {
        assert!(h.contains_canonical(&g.conjugate_by(&r.conjugator())));
    }
}

#[test]
fn random_conjugates_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fams = families_up_to_five();
    for i in 0..300 {
        let h = &fams[i * 7919 % fams.len()];
        let s = random_shat(&mut rng, 16);
        let gens: Vec<IntIsometry> = h.canonical_generators().iter().map(|g| g.conjugate_by(&s)).collect();
        let r = classify(&gens).unwrap_or_else(|e| panic!("{h} by {s}: {e}"));
        assert_eq!(r.canonical().canonical(), *h, "conjugator {s}");
        assert_eq!(r.canonical().family() == Family::G, h.index() % 2 == 0);
    }
}

#[test]
fn redundant_generators_still_classify() {
    let h = group_h(1, 3, 5).unwrap();
    let mut gens = h.canonical_generators();
    let extra = gens[0].conjugate_by(&gens[1]);
    gens.push(extra);
    assert_eq!(classify(&gens).unwrap().canonical().canonical(), h);
}

#[test]
fn tiny_bfs_budget_is_inconclusive() {
    let h = group_g(3, 2, 3).unwrap();
    let s = IntIsometry::translation_by([4, 0, 0]);
    let gens: Vec<IntIsometry> = h.canonical_generators().iter().map(|g| g.conjugate_by(&s)).collect();
    let opts = ClassifyOptions { bfs_depth: 0, window: None };
    match borromean::classify::classify_with(&gens, opts) {
        Err(Error::VerificationInconclusive { partial: Some(p), .. }) => {
            assert_eq!(p.canonical().canonical(), h)
        }
        other => panic!("expected inconclusive, got {other:?}"),
    }
}

#[test]
fn lattice_matches_bfs_translations() {
    for h in [group_g(1, 1, 1).unwrap(), group_g(2, 1, 3).unwrap(), group_h(1, 1, 3).unwrap(), group_h(1, 3, 3).unwrap()] {
        let group = RotationGroup::new(&h.canonical_generators()).unwrap();
        let window = 24;
        let from_bfs: Vec<[i64; 3]> = bfs_elements(&h.canonical_generators(), 16, Some(window))
            .into_iter()
            .filter(|g| g.is_translation())
            .map(|g| g.translation())
            .collect();
        for t in &from_bfs {
            assert!(group.translation_lattice().contains(*t));
        }
        assert_eq!(IntegerLattice::from_generators(from_bfs), *group.translation_lattice(), "{h}");
    }
}

#[test]
fn rectangles_pass_for_small_families() {
    for h in families_up_to_five() {
        let group = RotationGroup::new(&h.canonical_generators()).unwrap();
        let planes = admissible_planes(&group, 8);
        assert!(!planes.is_empty(), "{h}");
        for plane in planes {
            let r = verify_rectangle_in(&group, plane, Window::square(8)).unwrap();
            assert!(r.pass, "{h} {plane:?}: {}", r.message);
        }
    }
}

#[test]
fn rectangle_h131_uses_the_triple() {
    // not ordering-normalised, so build the generators directly
    let gens = [
        RotationAxis::new(Direction::X, 0, 1).half_turn(),
        RotationAxis::new(Direction::Y, 1, 0).half_turn(),
        RotationAxis::new(Direction::Z, 0, 3).half_turn(),
    ];
    let group = RotationGroup::new(&gens).unwrap();
    let plane = Plane { normal: Direction::X, offset: 1 };
    let r = verify_rectangle_in(&group, plane, Window::square(8)).unwrap();
    assert!(r.pass, "{}", r.message);
    // x-normal plane: y-spacing 2q, z-spacing 2r
    assert_eq!(r.dimensions, Some([6, 2]));
    let plane = Plane { normal: Direction::Z, offset: 0 };
    let r = verify_rectangle_in(&group, plane, Window::square(8)).unwrap();
    assert!(r.pass, "{}", r.message);
    assert_eq!(r.dimensions, Some([2, 6]));
}

#[test]
fn rectangle_g121_spacing() {
    let gens = group_g(1, 2, 1).unwrap().canonical_generators();
    let set = axis_points(&gens, Plane { normal: Direction::X, offset: 1 }, Window::square(8)).unwrap();
    let ys: BTreeSet<i64> = set.points.iter().map(|p| p[0]).collect();
    let zs: BTreeSet<i64> = set.points.iter().map(|p| p[1]).collect();
    assert_eq!(ys, BTreeSet::from([-8, -4, 0, 4, 8]));
    assert_eq!(zs, BTreeSet::from([-7, -5, -3, -1, 1, 3, 5, 7]));
}

#[test]
fn removing_a_point_fails() {
    let gens = group_g(1, 1, 1).unwrap().canonical_generators();
    let plane = Plane { normal: Direction::X, offset: 1 };
    let mut set = axis_points(&gens, plane, Window::square(8)).unwrap();
    let removed = *set.points.iter().nth(5).unwrap();
    let anchor = *set.points.iter().next().unwrap();
    set.points.remove(&removed);
    let lines = [borromean::classify::InPlaneLine { fixed: 1, value: 0 }];
    let r = check_rectangle(&set, Some(anchor), [2, 2], &lines);
    assert!(!r.pass);
    assert_eq!(r.offending_point, Some(removed));
}

#[test]
fn plane_without_axes_is_rejected() {
    let gens = group_g(1, 1, 1).unwrap().canonical_generators();
    let r = axis_points(&gens, Plane { normal: Direction::Z, offset: 0 }, Window::square(4));
    assert!(matches!(r, Err(Error::EmptyPlane)));
}
