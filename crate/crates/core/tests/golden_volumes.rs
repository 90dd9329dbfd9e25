//! Normalized volumes against the published tables in `data/`.

use num_bigint::BigInt;
use partial_polytopes::ehrhart::{ehrhart_polynomial, PolytopeKind};

struct Entry {
    m: usize,
    n: usize,
    volume: BigInt,
}

fn table(name: &str) -> Vec<Entry> {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            Entry {
                m: f[0].parse().unwrap(),
                n: f[1].parse().unwrap(),
                volume: f[2].parse().unwrap(),
            }
        })
        .collect()
}

fn check(kind: PolytopeKind, name: &str, include: impl Fn(usize, usize) -> bool) {
    for e in table(name).into_iter().filter(|e| include(e.m, e.n)) {
        let r = ehrhart_polynomial(kind, e.m, e.n).unwrap();
        assert_eq!(r.normalized_volume, e.volume, "{kind}({},{})", e.m, e.n);
        assert!(
            r.has_positive_coefficients(),
            "{kind}({},{}): {}",
            e.m,
            e.n,
            r.ehrhart
        );
    }
}

#[test]
fn pperm_table() {
    check(PolytopeKind::PPerm, "pperm_volumes.csv", |m, n| {
        m.min(n) <= 3 && m.max(n) <= 5
    });
}

#[test]
fn pasm_table() {
    check(PolytopeKind::Pasm, "pasm_volumes.csv", |m, n| m.min(n) <= 3);
}

#[test]
fn permutohedron_table() {
    check(
        PolytopeKind::Permutohedron,
        "permutohedron_volumes.csv",
        |_, _| true,
    );
}

#[test]
#[ignore = "long-running"]
fn pperm_table_four_rows() {
    check(PolytopeKind::PPerm, "pperm_volumes.csv", |m, n| {
        m.min(n) == 4
    });
}

#[test]
#[ignore = "long-running"]
fn pasm_four_by_four() {
    check(PolytopeKind::Pasm, "pasm_volumes.csv", |m, n| {
        m == 4 && n == 4
    });
}
