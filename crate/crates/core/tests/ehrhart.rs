use num_bigint::{BigInt, BigUint};
use partial_polytopes::ehrhart::{
    count_lattice_points, count_lattice_points_brute, count_lattice_points_oriented,
    ehrhart_polynomial, verify_conjectures, verify_volume_theorem_p2n, ConjectureScope,
    PolytopeKind,
};
use partial_polytopes::matrices::{count_partial_perms, count_pasms};
use partial_polytopes::Rational;

const KINDS: [PolytopeKind; 3] = [
    PolytopeKind::PPerm,
    PolytopeKind::Pasm,
    PolytopeKind::Permutohedron,
];

fn frac(coeffs: &[(i64, i64)]) -> Vec<Rational> {
    coeffs.iter().map(|&(p, q)| Rational::frac(p, q)).collect()
}

/// Frozen polynomials, each checked against naive counts past the
/// interpolation nodes.
#[test]
fn frozen_polynomials_agree_with_naive_counts() {
    let cases = [
        (
            PolytopeKind::PPerm,
            2,
            2,
            frac(&[(1, 1), (5, 2), (7, 3), (1, 1), (1, 6)]),
            5,
        ),
        (
            PolytopeKind::Pasm,
            2,
            2,
            frac(&[(1, 1), (8, 3), (11, 4), (4, 3), (1, 4)]),
            5,
        ),
        (
            PolytopeKind::Pasm,
            1,
            3,
            frac(&[(1, 1), (11, 6), (1, 1), (1, 6)]),
            8,
        ),
        (
            PolytopeKind::Permutohedron,
            2,
            2,
            frac(&[(1, 1), (7, 2), (7, 2)]),
            12,
        ),
        (
            PolytopeKind::Permutohedron,
            3,
            3,
            frac(&[(1, 1), (15, 2), (21, 1), (43, 2)]),
            6,
        ),
    ];
    for (kind, m, n, coeffs, tmax) in cases {
        let r = ehrhart_polynomial(kind, m, n).unwrap();
        assert_eq!(r.ehrhart.coeffs(), coeffs.as_slice(), "{kind}({m},{n})");
        for t in 0..=tmax {
            let naive = count_lattice_points_brute(kind, m, n, t).unwrap();
            let value = r.ehrhart.eval(&Rational::from(t as i64));
            assert_eq!(
                value,
                Rational::from_integer(BigInt::from(naive)),
                "{kind}({m},{n}) at t = {t}"
            );
        }
    }
}

#[test]
fn dynamic_programs_match_naive_enumeration() {
    for kind in KINDS {
        for m in 1..=3 {
            for n in 1..=3 {
                for t in 0..=3 {
                    let Ok(naive) = count_lattice_points_brute(kind, m, n, t) else {
                        continue;
                    };
                    assert_eq!(
                        count_lattice_points(kind, m, n, t).unwrap(),
                        naive,
                        "{kind}({m},{n}) t = {t}"
                    );
                }
            }
        }
    }
}

#[test]
fn unit_dilate_counts_vertices() {
    for m in 1..=3 {
        for n in 1..=3 {
            assert_eq!(
                BigInt::from(count_lattice_points(PolytopeKind::Pasm, m, n, 1).unwrap()),
                BigInt::from(count_pasms(m, n))
            );
            assert_eq!(
                BigInt::from(count_lattice_points(PolytopeKind::PPerm, m, n, 1).unwrap()),
                count_partial_perms(m, n)
            );
        }
    }
}

#[test]
fn square_pasm_counts_from_both_counters() {
    let frozen: [u64; 6] = [2, 8, 62, 924, 26394, 1442764];
    for (k, &expected) in frozen.iter().enumerate() {
        let n = k + 1;
        assert_eq!(count_pasms(n, n), expected);
        assert_eq!(
            count_lattice_points(PolytopeKind::Pasm, n, n, 1).unwrap(),
            BigUint::from(expected)
        );
    }
}

#[test]
fn transposes_have_equal_counts() {
    for kind in [PolytopeKind::PPerm, PolytopeKind::Pasm] {
        for m in 1..=3 {
            for n in 1..=3 {
                for t in 0..=4 {
                    assert_eq!(
                        count_lattice_points_oriented(kind, m, n, t).unwrap(),
                        count_lattice_points_oriented(kind, n, m, t).unwrap(),
                        "{kind}({m},{n}) t = {t}"
                    );
                }
            }
        }
    }
}

#[test]
fn polynomials_start_at_one_and_scale_to_integers() {
    for kind in KINDS {
        for (m, n) in [(1, 1), (1, 4), (2, 3), (3, 2)] {
            let r = ehrhart_polynomial(kind, m, n).unwrap();
            assert_eq!(r.ehrhart.coeff(0), Rational::one());
            assert!(r.normalized_volume > BigInt::from(0));
            assert_eq!(r.ehrhart.degree(), Some(r.dimension));
        }
    }
}

#[test]
fn two_dimensional_permutohedra() {
    let r = verify_volume_theorem_p2n(7).unwrap();
    assert!(r.pass, "{r:?}");
    let volumes: Vec<BigInt> = r.checks.iter().map(|c| c.computed.clone()).collect();
    let expected: Vec<BigInt> = [1, 7, 17, 31, 49, 71, 97]
        .into_iter()
        .map(BigInt::from)
        .collect();
    assert_eq!(volumes, expected);
}

#[test]
fn conjectured_formulas() {
    let r = verify_conjectures(ConjectureScope::default()).unwrap();
    assert!(r.pass, "{r:?}");
    let pperm23 = &r.pperm_two_rows.checks[2];
    assert_eq!(pperm23.computed, BigInt::from(17));
    let p52 = &r.permutohedron_two.checks[4];
    assert_eq!(p52.computed, BigInt::from(238));
    assert_eq!(r.permutohedron_two.checks[3].computed, BigInt::from(77));
}
