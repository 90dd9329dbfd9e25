//! The verification targets. Each returns a [`Check`]; a failing check
//! carries the first counterexample found.

use std::collections::BTreeSet;

use anyhow::{anyhow, Result};
use num_bigint::BigInt;
use partial_polytopes::ehrhart::{
    ehrhart_polynomial, verify_conjectures, verify_volume_theorem_p2n, ConjectureScope,
    PolytopeKind, VolumeResult,
};
use partial_polytopes::exact::binomial;
use partial_polytopes::matrices::{enumerate_partial_perms, enumerate_pasms, for_each_pasm};
use partial_polytopes::oracle::{extreme_points, facet_oracle, poset_isomorphic};
use partial_polytopes::permutohedron::{
    permutohedron_all_inequalities, permutohedron_vertices, permutohedron_words, verify_projection,
    vertex_count, word_vector,
};
use partial_polytopes::polytopes::{
    decompose_pasm, first_split, h_polytope_lattice_vertices, pasm_facets, pasm_inequalities,
    pperm_facets, pperm_inequalities, separates, separating_hyperplane, verify_pasm_face_lattice,
    vertex_vectors, MatrixKind,
};
use partial_polytopes::sampling::sample_points;
use partial_polytopes::tubings::{
    conjecture_faces, permutohedron_face_lattice, stellohedron_face_lattice,
};
use partial_polytopes::{RatMatrix, Rational};
use serde::Serialize;
use serde_json::{json, Value};

const PPERM_TABLE: &str = include_str!("../../core/data/pperm_volumes.csv");
const PASM_TABLE: &str = include_str!("../../core/data/pasm_volumes.csv");
const PERMUTOHEDRON_TABLE: &str = include_str!("../../core/data/permutohedron_volumes.csv");

pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_SEED: u64 = 20240521;

#[derive(Debug, Serialize)]
pub struct Check {
    pub check: &'static str,
    pub pass: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub counterexample: Value,
}

impl Check {
    fn pass(check: &'static str, summary: impl Into<String>) -> Check {
        Check {
            check,
            pass: true,
            summary: summary.into(),
            counterexample: Value::Null,
        }
    }

    fn fail(check: &'static str, summary: impl Into<String>, counterexample: Value) -> Check {
        Check {
            check,
            pass: false,
            summary: summary.into(),
            counterexample,
        }
    }
}

#[derive(serde::Deserialize)]
struct TableRow {
    m: usize,
    n: usize,
    normalized_volume: String,
}

fn table(text: &str) -> Result<Vec<(usize, usize, BigInt)>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<TableRow>()
        .map(|row| {
            let row = row?;
            let v = row
                .normalized_volume
                .parse()
                .map_err(|_| anyhow!("bad volume {}", row.normalized_volume))?;
            Ok((row.m, row.n, v))
        })
        .collect()
}

pub fn enumeration(long_running: bool) -> Result<Check> {
    const NAME: &str = "enumeration";
    let pp = enumerate_partial_perms(2, 3).len();
    let pasm = enumerate_pasms(2, 3).len();
    if pp != 13 || pasm != 17 {
        return Ok(Check::fail(
            NAME,
            "small counts differ",
            json!({"pperm_2_3": pp, "pasm_2_3": pasm}),
        ));
    }
    if !long_running {
        return Ok(Check::pass(
            NAME,
            "|P(2,3)| = 13, |PASM(2,3)| = 17; 6x6 needs --long-running",
        ));
    }
    let mut big = 0u64;
    for_each_pasm(6, 6, |_| big += 1);
    if big != 1_442_764 {
        return Ok(Check::fail(
            NAME,
            "6x6 enumeration differs",
            json!({"pasm_6_6": big}),
        ));
    }
    Ok(Check::pass(
        NAME,
        "|P(2,3)| = 13, |PASM(2,3)| = 17, |PASM(6,6)| = 1442764",
    ))
}

/// Facets of `P(m,n)`: `m` coordinate bounds plus one subset inequality per
/// nonempty subset, less the subsets of sizes `n..m`.
fn permutohedron_facet_formula(m: usize, n: usize) -> BigInt {
    let redundant: BigInt = (n..m).map(|k| binomial(m as u64, k as u64)).sum();
    BigInt::from(m) + (BigInt::from(1) << m) - 1 - redundant
}

pub fn facets() -> Result<Check> {
    const NAME: &str = "facets";
    for m in 2..=3 {
        for n in 2..=3 {
            let cases = [
                (
                    MatrixKind::PPerm,
                    pperm_inequalities(m, n),
                    pperm_facets(m, n)?.len(),
                    m * n + m + n,
                ),
                (
                    MatrixKind::Pasm,
                    pasm_inequalities(m, n),
                    pasm_facets(m, n)?.len(),
                    4 * m * n + 5 - 3 * m - 3 * n,
                ),
            ];
            for (kind, candidates, listed, formula) in cases {
                let oracle = facet_oracle(&vertex_vectors(kind, m, n), &candidates)?;
                if oracle != formula || listed != formula {
                    let ce = json!({"kind": format!("{kind:?}"), "m": m, "n": n, "oracle": oracle, "listed": listed, "formula": formula});
                    return Ok(Check::fail(NAME, "facet count mismatch", ce));
                }
            }
        }
    }
    for m in 1..=4 {
        for n in 1..=4 {
            let verts: Vec<_> = permutohedron_vertices(m, n)
                .iter()
                .map(word_vector)
                .collect();
            let oracle = facet_oracle(&verts, &permutohedron_all_inequalities(m, n))?;
            let formula = permutohedron_facet_formula(m, n);
            if BigInt::from(oracle) != formula {
                let ce = json!({"kind": "permutohedron", "m": m, "n": n, "oracle": oracle, "formula": formula.to_string()});
                return Ok(Check::fail(NAME, "facet count mismatch", ce));
            }
        }
    }
    Ok(Check::pass(
        NAME,
        "PPerm and PASM for 2 <= m, n <= 3; permutohedra for m, n <= 4",
    ))
}

pub fn separation() -> Result<Check> {
    const NAME: &str = "separation";
    let mut total = 0;
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let all = enumerate_pasms(m, n);
        for x in &all {
            if !separates(x, &all)? {
                let h = separating_hyperplane(x)?;
                return Ok(Check::fail(
                    NAME,
                    "hyperplane does not separate",
                    json!({"matrix": x, "hyperplane": h}),
                ));
            }
        }
        total += all.len();
    }
    Ok(Check::pass(
        NAME,
        format!("{total} PASMs of sizes 2x2, 2x3, 3x3"),
    ))
}

fn reference_point() -> Result<RatMatrix> {
    Ok(RatMatrix::from_fracs(&[
        &[(1, 5), (2, 5), (3, 10)],
        &[(7, 10), (-3, 10), (-1, 10)],
        &[(0, 1), (1, 2), (-1, 5)],
    ])?)
}

pub fn decomposition(samples: usize, seed: u64) -> Result<Check> {
    const NAME: &str = "decomposition";
    let x = reference_point()?;
    let s = first_split(&x)?.ok_or_else(|| anyhow!("reference point has no trail"))?;
    let expected = [
        Rational::frac(1, 10),
        Rational::frac(3, 10),
        Rational::frac(3, 4),
        Rational::frac(1, 4),
    ];
    let got = [s.l_plus, s.l_minus, s.weight_plus, s.weight_minus];
    if got != expected {
        return Ok(Check::fail(
            NAME,
            "reference point split differs",
            json!({"matrix": x, "split": got}),
        ));
    }
    for (m, n) in [(2, 3), (3, 3)] {
        let verts = enumerate_pasms(m, n);
        for p in sample_points(&verts, samples, seed) {
            let d = decompose_pasm(&p)?;
            if !d.is_valid_for(&p) {
                return Ok(Check::fail(
                    NAME,
                    "invalid decomposition",
                    json!({"point": p, "decomposition": d}),
                ));
            }
        }
    }
    Ok(Check::pass(
        NAME,
        format!("reference point and {samples} points each of PASM(2,3), PASM(3,3)"),
    ))
}

pub fn face_lattice() -> Result<Check> {
    const NAME: &str = "face-lattice";
    for (m, n) in [(1, 1), (2, 2), (2, 3)] {
        let r = verify_pasm_face_lattice(m, n)?;
        if !r.pass {
            return Ok(Check::fail(NAME, format!("PASM({m},{n})"), json!(r)));
        }
    }
    for m in 1..=3 {
        let (chains, _) = stellohedron_face_lattice(m)?;
        if !poset_isomorphic(&chains, &permutohedron_face_lattice(m, m)?) {
            return Ok(Check::fail(NAME, "chain lattice differs", json!({"m": m})));
        }
    }
    for m in 1..=4 {
        for n in 1..=4 {
            let r = conjecture_faces(m, n)?;
            if !r.pass {
                return Ok(Check::fail(NAME, "chain profile differs", json!(r)));
            }
        }
    }
    Ok(Check::pass(
        NAME,
        "PASM(1,1), (2,2), (2,3); chain lattices m <= 3; chain profiles m, n <= 4",
    ))
}

pub fn projection() -> Result<Check> {
    const NAME: &str = "projection";
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let z: Vec<Rational> = (1..=m as i64).rev().map(Rational::from).collect();
        for kind in [MatrixKind::PPerm, MatrixKind::Pasm] {
            let r = verify_projection(kind, m, n, &z)?;
            if !r.pass {
                let ce = json!({"kind": format!("{kind:?}"), "m": m, "n": n, "z": z, "witnesses": r.counterexamples});
                return Ok(Check::fail(NAME, "projection differs", ce));
            }
        }
    }
    Ok(Check::pass(NAME, "PPerm and PASM at (2,2), (2,3), (3,3)"))
}

/// The sizes checked by default; the rest of each table is opt-in.
fn in_default_scope(kind: PolytopeKind, m: usize, n: usize) -> bool {
    match kind {
        PolytopeKind::PPerm | PolytopeKind::Pasm => m.min(n) <= 3,
        PolytopeKind::Permutohedron => true,
    }
}

/// Entries too large for this machine even with `--long-running`.
fn out_of_reach(kind: PolytopeKind, m: usize, n: usize) -> bool {
    kind == PolytopeKind::PPerm && m.min(n) >= 5
}

pub fn volumes(long_running: bool, seen: &mut Vec<VolumeResult>) -> Result<Check> {
    const NAME: &str = "volumes";
    let tables = [
        (PolytopeKind::PPerm, PPERM_TABLE),
        (PolytopeKind::Pasm, PASM_TABLE),
        (PolytopeKind::Permutohedron, PERMUTOHEDRON_TABLE),
    ];
    let mut checked = 0;
    for (kind, text) in tables {
        for (m, n, expected) in table(text)? {
            if out_of_reach(kind, m, n) || !(long_running || in_default_scope(kind, m, n)) {
                continue;
            }
            let r = ehrhart_polynomial(kind, m, n)?;
            let ok = r.normalized_volume == expected;
            if !ok {
                let ce = json!({"kind": kind, "m": m, "n": n, "computed": r.normalized_volume.to_string(), "expected": expected.to_string()});
                return Ok(Check::fail(NAME, "volume differs from table", ce));
            }
            seen.push(r);
            checked += 1;
        }
    }
    let note = if long_running {
        ""
    } else {
        "; larger entries need --long-running"
    };
    Ok(Check::pass(NAME, format!("{checked} table entries{note}")))
}

pub fn theorem_p2n(n_max: usize, seen: &mut Vec<VolumeResult>) -> Result<Check> {
    const NAME: &str = "theorem-p2n";
    let r = verify_volume_theorem_p2n(n_max)?;
    for c in &r.checks {
        seen.push(ehrhart_polynomial(c.kind, c.m, c.n)?);
    }
    if !r.pass {
        return Ok(Check::fail(NAME, "volume differs from 2n^2 - 1", json!(r)));
    }
    Ok(Check::pass(NAME, format!("P(2,n) for n <= {n_max}")))
}

pub fn conjectures(scope: ConjectureScope, seen: &mut Vec<VolumeResult>) -> Result<Check> {
    const NAME: &str = "conjectures";
    let p2n = theorem_p2n(7, seen)?;
    if !p2n.pass {
        return Ok(Check { check: NAME, ..p2n });
    }
    let r = verify_conjectures(scope)?;
    for c in r
        .pperm_two_rows
        .checks
        .iter()
        .chain(&r.permutohedron_two.checks)
    {
        seen.push(ehrhart_polynomial(c.kind, c.m, c.n)?);
    }
    if !r.pass {
        return Ok(Check::fail(NAME, "volume formula fails", json!(r)));
    }
    Ok(Check::pass(
        NAME,
        format!(
            "P(2,n) n <= 7, P(m,2) m <= {}, PPerm(2,n) n <= {}",
            scope.permutohedron_m_max, scope.pperm_n_max
        ),
    ))
}

pub fn positivity(seen: &[VolumeResult]) -> Result<Check> {
    const NAME: &str = "positivity";
    if seen.is_empty() {
        return Ok(Check::fail(
            NAME,
            "no polynomials were computed",
            Value::Null,
        ));
    }
    if let Some(r) = seen.iter().find(|r| !r.has_positive_coefficients()) {
        return Ok(Check::fail(NAME, "nonpositive coefficient", json!(r)));
    }
    Ok(Check::pass(
        NAME,
        format!("{} Ehrhart polynomials", seen.len()),
    ))
}

pub fn vertices() -> Result<Check> {
    const NAME: &str = "vertices";
    for m in 1..=3 {
        for n in 1..=3 {
            let words = permutohedron_words(m, n);
            let pts: Vec<_> = words.iter().map(word_vector).collect();
            let ext: BTreeSet<_> = extreme_points(&pts)?
                .into_iter()
                .map(|k| words[k].clone())
                .collect();
            let listed: BTreeSet<_> = permutohedron_vertices(m, n).into_iter().collect();
            if BigInt::from(ext.len()) != vertex_count(m, n) || ext != listed {
                let ce = json!({"m": m, "n": n, "extreme": ext, "listed": listed});
                return Ok(Check::fail(NAME, "permutohedron vertices differ", ce));
            }
            for kind in [MatrixKind::PPerm, MatrixKind::Pasm] {
                let lattice = h_polytope_lattice_vertices(kind, m, n)?;
                let enumerated = match kind {
                    MatrixKind::PPerm => enumerate_partial_perms(m, n),
                    MatrixKind::Pasm => enumerate_pasms(m, n),
                };
                if lattice != enumerated {
                    let ce = json!({"kind": format!("{kind:?}"), "m": m, "n": n, "lattice_vertices": lattice});
                    return Ok(Check::fail(NAME, "vertex set differs", ce));
                }
            }
        }
    }
    Ok(Check::pass(NAME, "m, n <= 3"))
}
