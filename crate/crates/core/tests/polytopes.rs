use partial_polytopes::gridgraph::{basic_sum_labeling, regions, union_of_basic};
use partial_polytopes::matrices::{enumerate_partial_perms, enumerate_pasms};
use partial_polytopes::oracle::{facet_oracle, poset_isomorphic};
use partial_polytopes::polytopes::{
    decompose_pasm, decompose_pasm_binary, lemma_intersection_check, pasm_contains,
    pasm_face_lattice, pasm_facet_count, pasm_facets, pasm_inequalities, pperm_contains,
    pperm_facet_count, pperm_facets, pperm_inequalities, separates, verify_pasm_face_lattice,
    vertex_vectors, MatrixKind,
};
use partial_polytopes::sampling::sample_points;
use partial_polytopes::{RatMatrix, Rational};
use proptest::prelude::*;

fn rational_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..4, 1usize..4).prop_flat_map(|(m, n)| {
        proptest::collection::vec((-4i64..9, 1i64..5), m * n).prop_map(move |cells| {
            let entries = cells
                .into_iter()
                .map(|(p, q)| Rational::frac(p, 4 * q))
                .collect();
            RatMatrix::new(m, n, entries).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn pasm_is_signmatrix_polytope_cut_by_row_bounds(x in rational_matrix()) {
        prop_assert!(lemma_intersection_check(&x));
    }

    #[test]
    fn membership_agrees_with_inequalities(x in rational_matrix()) {
        let (m, n) = (x.rows(), x.cols());
        let pasm = pasm_inequalities(m, n).iter().all(|h| h.holds(x.entries()));
        let pperm = pperm_inequalities(m, n).iter().all(|h| h.holds(x.entries()));
        prop_assert_eq!(pasm_contains(&x), pasm);
        prop_assert_eq!(pperm_contains(&x), pperm);
        prop_assert!(!pperm || pasm);
    }

    #[test]
    fn decompositions_reconstruct(m in 1usize..4, n in 1usize..4, seed in any::<u64>()) {
        let vertices = enumerate_pasms(m, n);
        for x in sample_points(&vertices, 4, seed) {
            prop_assert!(pasm_contains(&x));
            let d = decompose_pasm(&x).unwrap();
            prop_assert!(d.is_valid_for(&x));
            prop_assert!(d.terms.len() <= 2 * m * n + 1);
        }
    }

    #[test]
    fn binary_splitting_reconstructs(seed in any::<u64>()) {
        let vertices = enumerate_pasms(2, 3);
        for x in sample_points(&vertices, 2, seed) {
            if let Ok(d) = decompose_pasm_binary(&x, 4096) {
                prop_assert!(d.is_valid_for(&x));
            }
        }
    }
}

#[test]
fn partial_permutation_combinations_lie_in_pperm() {
    let vertices = enumerate_partial_perms(3, 3);
    for x in sample_points(&vertices, 200, 7) {
        assert!(pperm_contains(&x));
        assert!(pasm_contains(&x));
    }
}

#[test]
fn points_outside_are_rejected() {
    let x = RatMatrix::from_fracs(&[&[(1, 2), (1, 2)], &[(1, 2), (-1, 1)]]).unwrap();
    assert!(!pasm_contains(&x));
    let y = RatMatrix::from_fracs(&[&[(-1, 2), (1, 1)], &[(1, 2), (0, 1)]]).unwrap();
    assert!(!pasm_contains(&y));
    assert!(decompose_pasm(&y).is_err());
}

#[test]
fn facet_systems_match_the_oracle() {
    for (m, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let pasm = pasm_facets(m, n).unwrap();
        assert_eq!(pasm.len(), pasm_facet_count(m, n));
        let verts = vertex_vectors(MatrixKind::Pasm, m, n);
        assert_eq!(
            facet_oracle(&verts, &pasm_inequalities(m, n)).unwrap(),
            pasm.len(),
            "PASM({m},{n})"
        );
        assert_eq!(facet_oracle(&verts, &pasm).unwrap(), pasm.len());

        let pperm = pperm_facets(m, n).unwrap();
        assert_eq!(pperm.len(), pperm_facet_count(m, n));
        let verts = vertex_vectors(MatrixKind::PPerm, m, n);
        assert_eq!(
            facet_oracle(&verts, &pperm).unwrap(),
            pperm.len(),
            "PPerm({m},{n})"
        );
    }
}

#[test]
fn facet_formulas_need_two_rows_and_columns() {
    assert!(pasm_facets(1, 3).is_err());
    assert!(pperm_facets(3, 1).is_err());
}

#[test]
fn every_pasm_is_separated() {
    for (m, n) in [(2, 4), (3, 3), (4, 2)] {
        let all = enumerate_pasms(m, n);
        for x in &all {
            assert!(separates(x, &all).unwrap(), "{x:?}");
        }
    }
}

#[test]
fn small_face_lattices_match_sum_labelings() {
    for (m, n) in [(1, 1), (1, 2), (1, 3), (1, 4), (3, 2)] {
        let r = verify_pasm_face_lattice(m, n).unwrap();
        assert!(r.pass, "PASM({m},{n}): {r:?}");
    }
    let a = pasm_face_lattice(2, 3).unwrap();
    let b = pasm_face_lattice(3, 2).unwrap();
    assert!(poset_isomorphic(&a.poset, &b.poset));
    assert!(pasm_face_lattice(2, 5).is_err());
}

#[test]
fn vertex_labelings_have_no_regions() {
    let all = enumerate_pasms(2, 3);
    for x in &all {
        assert_eq!(regions(&basic_sum_labeling(x).unwrap()), 0);
    }
    let whole = union_of_basic(&all).unwrap();
    assert_eq!(regions(&whole), 6);
    for x in &all {
        assert!(basic_sum_labeling(x)
            .unwrap()
            .is_contained_in(&whole)
            .unwrap());
    }
}
