use borromean::error::Error;
use borromean::hyperbolic::axes::patch_axes;
use borromean::hyperbolic::generators::face_pairing_words;
use borromean::hyperbolic::{generators_u, label_axis, tessellate, word_matrix, EisensteinInt};
use borromean::word::{eval_phi, Generator, Letter, Word};
use proptest::prelude::*;

#[test]
fn generators_are_lorentz() {
    for m in generators_u().matrices {
        assert!(m.lorentz_defect() <= 1e-9);
        assert!(m.preserves_upper_sheet());
    }
}

#[test]
fn face_pairings_match_the_cube_moves() {
    // each pairing moves D₀ to a neighbour covering the same or a face-adjacent cube
    for w in face_pairing_words() {
        let c = eval_phi(&w).apply([0, 0, 0]);
        let l1: i64 = c.iter().map(|v| v.abs()).sum();
        assert!(l1 == 0 || (l1 == 2 && c.iter().any(|v| v.abs() == 2)), "{w}: {c:?}");
    }
}

#[test]
fn depth_three_patch_covers_adjacent_cubes() {
    let p = tessellate(3).unwrap();
    for (i, j) in &p.adjacency {
        let (u, v) = (p.cells[*i].cube_center, p.cells[*j].cube_center);
        let d: Vec<i64> = (0..3).map(|k| (u[k] - v[k]).abs()).collect();
        let moved = d.iter().filter(|x| **x != 0).count();
        assert!(moved == 0 || (moved == 1 && d.contains(&2)), "{u:?} {v:?}");
    }
    // four cells around the a-axis, covering two cubes
    let cubes: std::collections::BTreeSet<[i64; 3]> =
        (0..4).map(|k| eval_phi(&Word::generator(Generator::A).pow(k)).apply([0, 0, 0])).collect();
    assert_eq!(cubes.len(), 2);
    assert!(matches!(tessellate(5), Err(Error::DepthTooLarge(5))));
}

#[test]
fn labels_of_a_depth_two_patch() {
    let axes = patch_axes(&tessellate(2).unwrap());
    assert!(axes.iter().all(|a| a.label().is_ok()));
    assert_eq!(label_axis(&Word::empty(), Generator::B).unwrap().to_string(), "1+0*w");
    assert_eq!(label_axis(&Word::empty(), Generator::C).unwrap(), EisensteinInt::OMEGA);
}

#[test]
fn mesh_json_round_trips() {
    let p = tessellate(1).unwrap();
    let s = serde_json::to_string(&p).unwrap();
    let back: borromean::hyperbolic::TessellationPatch = serde_json::from_str(&s).unwrap();
    assert_eq!(back.cells.len(), 13);
    assert_eq!(back.adjacency, p.adjacency);
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..6, 0..=max)
        .prop_map(|ix| Word::from_letters(ix.into_iter().map(|i| Letter::all()[i])))
}

proptest! {
    #[test]
    fn products_stay_lorentz(w in word_strategy(40)) {
        let m = word_matrix(&w);
        prop_assert!(m.relative_lorentz_defect() <= 1e-9);
        prop_assert!(m.preserves_upper_sheet());
    }

    #[test]
    fn word_matrices_are_homomorphic(u in word_strategy(10), v in word_strategy(10)) {
        let lhs = word_matrix(&(&u * &v));
        let rhs = word_matrix(&u) * word_matrix(&v);
        let scale = lhs.matrix().amax().max(1.0);
        prop_assert!(lhs.max_abs_diff(&rhs) / scale <= 1e-9);
    }

    #[test]
    fn kernel_words_fix_labels(u in word_strategy(8), g in 0usize..3, k in 0usize..3) {
        let base = Generator::ALL[g];
        let sq = Word::generator(Generator::ALL[k]).pow(2);
        prop_assert_eq!(label_axis(&(&sq * &u), base).unwrap(), label_axis(&u, base).unwrap());
    }
}
