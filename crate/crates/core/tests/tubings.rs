use std::collections::BTreeSet;

use partial_polytopes::oracle::poset_isomorphic;
use partial_polytopes::tubings::{
    all_chains, all_tubings, chain_covers, chain_moves, chain_to_tubing, missing_ranks,
    permutohedron_face_lattice, stellohedron_face_lattice, tubing_to_chain, Spine,
};
use partial_polytopes::{Chain, Tube, Tubing};

fn tube_set(t: &Tubing) -> BTreeSet<Tube> {
    t.tubes().iter().copied().collect()
}

/// One move from a chain adds exactly one tube to its tubing, and every
/// such enlargement is a move.
#[test]
fn moves_are_single_tube_refinements() {
    for m in 1..=4 {
        let chains: Vec<Chain> = all_chains(m)
            .unwrap()
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        let tubings: Vec<Tubing> = chains.iter().map(|c| chain_to_tubing(c).unwrap()).collect();
        for (a, ta) in chains.iter().zip(&tubings) {
            for (b, tb) in chains.iter().zip(&tubings) {
                let (sa, sb) = (tube_set(ta), tube_set(tb));
                let refines = sa.is_subset(&sb) && sb.len() == sa.len() + 1;
                assert_eq!(chain_covers(a, b), refines, "m = {m}: {a} -> {b}");
            }
            for b in chain_moves(a) {
                assert_eq!(missing_ranks(&b), missing_ranks(a) - 1);
            }
        }
    }
}

#[test]
fn bijection_and_spines() {
    for m in 1..=4 {
        let tubings = all_tubings(m).unwrap();
        let images: BTreeSet<Chain> = tubings.iter().map(tubing_to_chain).collect();
        assert_eq!(images.len(), tubings.len());
        for t in &tubings {
            let spine = Spine::from_tubing(t);
            assert_eq!(&spine.to_tubing().unwrap(), t);
            assert_eq!(spine.to_chain(), tubing_to_chain(t));
        }
    }
    let empty = Chain::new(3, vec![]).unwrap();
    assert!(chain_to_tubing(&empty).is_err());
    assert_eq!(missing_ranks(&empty), -1);
}

#[test]
fn chain_lattice_of_b4_matches_the_oracle() {
    let (chains, _) = stellohedron_face_lattice(4).unwrap();
    let oracle = permutohedron_face_lattice(4, 4).unwrap();
    assert_eq!(chains.f_vector(), oracle.f_vector());
    assert!(chains.is_graded());
    assert!(chains.euler_relation_holds());
    assert!(poset_isomorphic(&chains, &oracle));
}

#[test]
fn chains_read_from_json() {
    let c: Chain = serde_json::from_str(r#"{"m": 3, "chain": [[2], [1, 2, 3]]}"#).unwrap();
    assert_eq!(c.to_sets(), vec![vec![2], vec![1, 2, 3]]);
    assert_eq!(serde_json::to_string(&c).unwrap(), "[[2],[1,2,3]]");
    assert!(serde_json::from_str::<Chain>(r#"{"m": 2, "chain": [[1], [2]]}"#).is_err());
    assert!(serde_json::from_str::<Chain>(r#"{"m": 2, "chain": [[3]]}"#).is_err());
}
