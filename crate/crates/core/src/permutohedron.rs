//! The partial permutohedron `P(m,n)`, its weighted variant `P_z(m,n)`, and
//! the projection `X -> zX` from the matrix polytopes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, Rational};
use crate::inequality::{LinearInequality, Relation};
use crate::matrices::{enumerate_partial_perms, enumerate_pasms, IntMatrix, Word};
use crate::polytopes::MatrixKind;
use crate::ratmatrix::{RatMatrix, RatVector};

/// `B_k = n + (n-1) + ... + (n - min(k,n) + 1)`: the largest sum of `k`
/// coordinates of a point of `P(m,n)`.
pub fn prefix_bound(n: usize, k: usize) -> i64 {
    (0..k.min(n)).map(|i| (n - i) as i64).sum()
}

/// The dominating vertex `(n, n-1, ..., 1, 0, ..., 0)` of length `m`
/// (truncated when `m < n`).
pub fn top_vertex(m: usize, n: usize) -> RatVector {
    (0..m)
        .map(|i| Rational::from(n.saturating_sub(i) as i64))
        .collect()
}

/// Vertices of `P(m,n)`: words whose nonzero letters are exactly
/// `n, n-1, ..., n-j+1` for some `j <= min(m,n)`. Sorted.
pub fn permutohedron_vertices(m: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for j in 0..=m.min(n) {
        let letters: Vec<u32> = (0..j).map(|i| (n - i) as u32).collect();
        let mut word = vec![0u32; m];
        place(&letters, &mut word, 0, &mut out);
    }
    out.sort();
    out
}

fn place(letters: &[u32], word: &mut [u32], next: usize, out: &mut Vec<Word>) {
    if next == letters.len() {
        out.push(Word(word.to_vec()));
        return;
    }
    for p in 0..word.len() {
        if word[p] == 0 {
            word[p] = letters[next];
            place(letters, word, next + 1, out);
            word[p] = 0;
        }
    }
}

/// `sum_{k = max(m-n,0)}^{m} m!/k!`.
pub fn vertex_count(m: usize, n: usize) -> BigInt {
    let mf = factorial(m as u64);
    (m.saturating_sub(n)..=m)
        .map(|k| &mf / factorial(k as u64))
        .sum()
}

/// All words of length `m` over `{0,...,n}` with distinct nonzero letters:
/// the lattice points generating `P(m,n)`. Sorted.
pub fn permutohedron_words(m: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut word = vec![0u32; m];
    let mut used = vec![false; n + 1];
    fill_words(&mut word, 0, &mut used, &mut out);
    out.sort();
    out
}

fn fill_words(word: &mut [u32], pos: usize, used: &mut [bool], out: &mut Vec<Word>) {
    if pos == word.len() {
        out.push(Word(word.to_vec()));
        return;
    }
    for letter in 0..used.len() {
        if letter > 0 && used[letter] {
            continue;
        }
        used[letter] = letter > 0;
        word[pos] = letter as u32;
        fill_words(word, pos + 1, used, out);
        used[letter] = false;
    }
}

pub fn word_vector(w: &Word) -> RatVector {
    w.letters()
        .iter()
        .map(|&l| Rational::from(l as i64))
        .collect()
}

fn sorted_desc(u: &[Rational]) -> Vec<Rational> {
    let mut s = u.to_vec();
    s.sort_by(|a, b| b.cmp(a));
    s
}

/// `u <_w v`: every prefix sum of `u` sorted decreasingly is at most the
/// matching prefix sum of `v` sorted decreasingly.
pub fn weakly_majorizes(u: &[Rational], v: &[Rational]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "majorization of vectors of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let (su, sv) = (sorted_desc(u), sorted_desc(v));
    let mut pu = Rational::zero();
    let mut pv = Rational::zero();
    for (a, b) in su.iter().zip(&sv) {
        pu += a;
        pv += b;
        if pu > pv {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_len(u: &[Rational], m: usize) -> Result<()> {
    if u.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "point has length {}, expected {m}",
            u.len()
        )));
    }
    Ok(())
}

/// `u >= 0` and the `k` largest coordinates sum to at most `B_k`.
pub fn permutohedron_contains(u: &[Rational], m: usize, n: usize) -> Result<bool> {
    check_len(u, m)?;
    if u.iter().any(Rational::is_negative) {
        return Ok(false);
    }
    let mut acc = Rational::zero();
    for (k, x) in sorted_desc(u).iter().enumerate() {
        acc += x;
        if acc > prefix_bound(n, k + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same membership test over all `2^m - 1` subset inequalities.
pub fn permutohedron_contains_subset_form(u: &[Rational], m: usize, n: usize) -> Result<bool> {
    check_len(u, m)?;
    if m > 20 {
        return Err(Error::SizeLimit(format!(
            "subset form needs m <= 20, got {m}"
        )));
    }
    if u.iter().any(Rational::is_negative) {
        return Ok(false);
    }
    Ok((1u32..1 << m).all(|s| {
        let sum: Rational = (0..m).filter(|i| s >> i & 1 == 1).map(|i| &u[i]).sum();
        sum <= prefix_bound(n, s.count_ones() as usize)
    }))
}

/// Point set with optional weights: `P(m,n)` without `z`, `P_z(m, |z|)` with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutohedronSpec {
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<RatVector>,
}

impl PermutohedronSpec {
    pub fn new(m: usize, n: usize) -> Self {
        PermutohedronSpec { m, n, z: None }
    }

    pub fn weighted(m: usize, z: RatVector) -> Result<Self> {
        check_weights(&z)?;
        Ok(PermutohedronSpec {
            m,
            n: z.len(),
            z: Some(z),
        })
    }

    pub fn contains(&self, u: &[Rational]) -> Result<bool> {
        match &self.z {
            None => permutohedron_contains(u, self.m, self.n),
            Some(z) => weighted_contains(u, z),
        }
    }
}

/// Nonempty, distinct, strictly positive.
pub fn check_weights(z: &[Rational]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::InvalidWeights("weight vector is empty".into()));
    }
    if let Some(bad) = z.iter().find(|x| !x.is_positive()) {
        return Err(Error::InvalidWeights(format!(
            "entry {bad} is not positive"
        )));
    }
    if z.iter().collect::<BTreeSet<_>>().len() != z.len() {
        return Err(Error::InvalidWeights("entries are not distinct".into()));
    }
    Ok(())
}

/// `z` sorted decreasingly, padded with zeros or cut to length `len`.
pub fn z_hat(z: &[Rational], len: usize) -> RatVector {
    let mut s = sorted_desc(z);
    s.resize(len, Rational::zero());
    s
}

/// `u >= 0` and `u <_w z_hat`.
pub fn weighted_contains(u: &[Rational], z: &[Rational]) -> Result<bool> {
    check_weights(z)?;
    if u.iter().any(Rational::is_negative) {
        return Ok(false);
    }
    weakly_majorizes(u, &z_hat(z, u.len()))
}

/// All words of length `m` over `{0, z_1, ..., z_n}` with distinct nonzero
/// letters. Sorted.
pub fn weighted_vertices(z: &[Rational], m: usize) -> Result<Vec<RatVector>> {
    if z.is_empty() || z.iter().any(Rational::is_zero) {
        return Err(Error::InvalidWeights("weights must be nonzero".into()));
    }
    if z.iter().collect::<BTreeSet<_>>().len() != z.len() {
        return Err(Error::InvalidWeights("entries are not distinct".into()));
    }
    let mut out: Vec<RatVector> = permutohedron_words(m, z.len())
        .iter()
        .map(|w| {
            w.letters()
                .iter()
                .map(|&l| {
                    if l == 0 {
                        Rational::zero()
                    } else {
                        z[l as usize - 1].clone()
                    }
                })
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Nonnegativity plus the irredundant subset inequalities: all subsets when
/// `m <= n`, otherwise subsets of size below `n` and the full set.
pub fn permutohedron_facets(m: usize, n: usize) -> Result<Vec<LinearInequality>> {
    if m > 20 {
        return Err(Error::SizeLimit(format!(
            "facet list needs m <= 20, got {m}"
        )));
    }
    let mut out: Vec<LinearInequality> = (0..m)
        .map(|i| LinearInequality::indicator(m, [i], Relation::Ge, 0))
        .collect();
    let mut subsets: Vec<u32> = (1u32..1 << m)
        .filter(|s| {
            let k = s.count_ones() as usize;
            m <= n || k < n || k == m
        })
        .collect();
    subsets.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
    out.extend(subsets.into_iter().map(|s| {
        LinearInequality::indicator(
            m,
            (0..m).filter(|i| s >> i & 1 == 1),
            Relation::Le,
            prefix_bound(n, s.count_ones() as usize),
        )
    }));
    Ok(out)
}

/// Nonnegativity plus all `2^m - 1` subset inequalities.
pub fn permutohedron_all_inequalities(m: usize, n: usize) -> Vec<LinearInequality> {
    let mut out: Vec<LinearInequality> = (0..m)
        .map(|i| LinearInequality::indicator(m, [i], Relation::Ge, 0))
        .collect();
    out.extend((1u32..1 << m).map(|s| {
        LinearInequality::indicator(
            m,
            (0..m).filter(|i| s >> i & 1 == 1),
            Relation::Le,
            prefix_bound(n, s.count_ones() as usize),
        )
    }));
    out
}

/// `m + 2^m - 1 - sum_{r=1}^{m-n} C(m, m-r)`.
pub fn permutohedron_facet_count(m: usize, n: usize) -> BigInt {
    let total = BigInt::from(m) + (BigInt::from(1) << m) - 1;
    let redundant: BigInt = (1..=m.saturating_sub(n))
        .map(|r| binomial(m as u64, (m - r) as u64))
        .sum();
    total - redundant
}

/// `zX`, with `z` indexed by the rows of `X`.
pub fn project(z: &[Rational], x: &RatMatrix) -> Result<RatVector> {
    if z.len() != x.rows() {
        return Err(Error::DimensionMismatch(format!(
            "weight vector of length {} against a matrix with {} rows",
            z.len(),
            x.rows()
        )));
    }
    Ok((0..x.cols())
        .map(|j| {
            z.iter()
                .enumerate()
                .filter(|(_, zi)| !zi.is_zero())
                .map(|(i, zi)| zi * x.get(i, j))
                .sum()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<IntMatrix>,
    pub image: RatVector,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub pass: bool,
    pub vertices_checked: usize,
    pub words_checked: usize,
    pub counterexamples: Vec<ProjectionWitness>,
}

/// Checks that every vertex of `PPerm(m,n)` or `PASM(m,n)` maps into
/// `P_z(n,m)` and that every generating word of `P_z(n,m)` is the image of
/// a vertex. For `PPerm` the image set must equal the word set.
pub fn verify_projection(
    kind: MatrixKind,
    m: usize,
    n: usize,
    z: &[Rational],
) -> Result<ProjectionReport> {
    check_weights(z)?;
    if z.len() != m {
        return Err(Error::InvalidWeights(format!(
            "need {m} weights, got {}",
            z.len()
        )));
    }
    if kind == MatrixKind::Pasm && z.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidWeights(
            "PASM projection needs strictly decreasing weights".into(),
        ));
    }
    let vertices = match kind {
        MatrixKind::PPerm => enumerate_partial_perms(m, n),
        MatrixKind::Pasm => enumerate_pasms(m, n),
    };
    let results: Vec<(RatVector, Option<ProjectionWitness>)> = vertices
        .par_iter()
        .map(|v| {
            let image = project(z, &RatMatrix::from(v)).expect("lengths checked");
            let inside = weighted_contains(&image, z).expect("weights checked");
            let witness = (!inside).then(|| ProjectionWitness {
                matrix: Some(v.clone()),
                image: image.clone(),
                reason: "image is not weakly majorized by z_hat or has a negative entry".into(),
            });
            (image, witness)
        })
        .collect();
    let mut counterexamples: Vec<ProjectionWitness> = Vec::new();
    let mut images = BTreeSet::new();
    for (image, witness) in results {
        counterexamples.extend(witness);
        images.insert(image);
    }
    let words = weighted_vertices(z, n)?;
    for w in &words {
        if !images.contains(w) {
            counterexamples.push(ProjectionWitness {
                matrix: None,
                image: w.clone(),
                reason: "word is not the image of any vertex".into(),
            });
        }
    }
    if kind == MatrixKind::PPerm && images.len() != words.len() {
        for image in images.iter().filter(|i| words.binary_search(i).is_err()) {
            counterexamples.push(ProjectionWitness {
                matrix: None,
                image: image.clone(),
                reason: "vertex image is not a generating word".into(),
            });
        }
    }
    Ok(ProjectionReport {
        pass: counterexamples.is_empty(),
        vertices_checked: vertices.len(),
        words_checked: words.len(),
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{extreme_points, facet_oracle};

    fn v(xs: &[i64]) -> RatVector {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    fn words(ws: &[&[u32]]) -> Vec<Word> {
        let mut out: Vec<Word> = ws.iter().map(|w| Word(w.to_vec())).collect();
        out.sort();
        out
    }

    #[test]
    fn vertices_of_small_cases() {
        assert_eq!(
            permutohedron_vertices(2, 2),
            words(&[&[0, 0], &[2, 0], &[0, 2], &[2, 1], &[1, 2]])
        );
        assert_eq!(vertex_count(2, 2), BigInt::from(5));
        assert_eq!(permutohedron_vertices(3, 3).len(), 16);
        assert_eq!(vertex_count(3, 3), BigInt::from(16));
        assert_eq!(permutohedron_vertices(1, 4), words(&[&[0], &[4]]));
        assert_eq!(permutohedron_words(3, 3).len(), 34);
        for (m, n) in [(1, 1), (2, 5), (4, 2), (5, 3), (4, 4)] {
            assert_eq!(
                BigInt::from(permutohedron_vertices(m, n).len()),
                vertex_count(m, n)
            );
        }
    }

    #[test]
    fn majorization_examples() {
        let u = v(&[3, 1, 2]);
        assert!(weakly_majorizes(&u, &u).unwrap());
        assert!(weakly_majorizes(&v(&[1, 1, 0]), &v(&[2, 1, 0])).unwrap());
        assert!(!weakly_majorizes(&v(&[3, 0]), &v(&[2, 1])).unwrap());
        assert!(weakly_majorizes(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn membership_examples() {
        for w in permutohedron_vertices(2, 2) {
            assert!(permutohedron_contains(&word_vector(&w), 2, 2).unwrap());
        }
        for n in 1..6 {
            let nn = v(&[n, n]);
            assert!(!permutohedron_contains(&nn, 2, n as usize).unwrap());
            assert!(!permutohedron_contains_subset_form(&nn, 2, n as usize).unwrap());
        }
        assert!(permutohedron_contains(&v(&[1, 1, 0]), 3, 2).unwrap());
        assert!(!permutohedron_contains(&v(&[-1, 0]), 2, 2).unwrap());
        assert!(permutohedron_contains(&v(&[1]), 2, 2).is_err());
    }

    #[test]
    fn facet_counts_match_oracle() {
        assert_eq!(permutohedron_facet_count(2, 2), BigInt::from(5));
        assert_eq!(permutohedron_facet_count(3, 2), BigInt::from(7));
        assert_eq!(permutohedron_facet_count(2, 3), BigInt::from(5));
        for m in 1..=4 {
            for n in 1..=4 {
                let verts: Vec<RatVector> = permutohedron_vertices(m, n)
                    .iter()
                    .map(word_vector)
                    .collect();
                let oracle = facet_oracle(&verts, &permutohedron_all_inequalities(m, n)).unwrap();
                assert_eq!(
                    BigInt::from(oracle),
                    permutohedron_facet_count(m, n),
                    "({m},{n})"
                );
                let listed = permutohedron_facets(m, n).unwrap();
                assert_eq!(BigInt::from(listed.len()), permutohedron_facet_count(m, n));
                assert_eq!(
                    facet_oracle(&verts, &listed).unwrap(),
                    listed.len(),
                    "({m},{n})"
                );
            }
        }
    }

    #[test]
    fn vertices_are_the_extreme_words() {
        for m in 1..=3 {
            for n in 1..=3 {
                let all = permutohedron_words(m, n);
                let pts: Vec<RatVector> = all.iter().map(word_vector).collect();
                let ext: Vec<Word> = extreme_points(&pts)
                    .unwrap()
                    .into_iter()
                    .map(|k| all[k].clone())
                    .collect();
                assert_eq!(ext, permutohedron_vertices(m, n), "({m},{n})");
            }
        }
    }

    #[test]
    fn weighted_words() {
        assert_eq!(weighted_vertices(&v(&[2, 1]), 3).unwrap().len(), 13);
        assert_eq!(
            weighted_vertices(&v(&[5]), 1).unwrap(),
            vec![v(&[0]), v(&[5])]
        );
        let plain: Vec<RatVector> = permutohedron_words(3, 3).iter().map(word_vector).collect();
        let mut plain = plain;
        plain.sort();
        assert_eq!(weighted_vertices(&v(&[3, 2, 1]), 3).unwrap(), plain);
        assert!(weighted_vertices(&v(&[1, 1]), 2).is_err());
        assert!(weighted_vertices(&v(&[0, 1]), 2).is_err());
    }

    #[test]
    fn projection_examples() {
        let m8 = RatMatrix::from(&IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
        let m14 = RatMatrix::from(&IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, -1, 0]]).unwrap());
        let z = v(&[2, 1]);
        assert_eq!(project(&z, &m8).unwrap(), v(&[2, 1, 0]));
        let img = project(&z, &m14).unwrap();
        assert_eq!(img, v(&[1, 1, 0]));
        assert!(weighted_contains(&img, &z).unwrap());
        assert_eq!(z_hat(&z, 3), v(&[2, 1, 0]));
        assert_eq!(project(&z, &RatMatrix::zero(2, 3)).unwrap(), v(&[0, 0, 0]));
        assert!(project(&v(&[1]), &m8).is_err());
    }

    #[test]
    fn projection_reports() {
        assert!(
            verify_projection(MatrixKind::PPerm, 2, 3, &v(&[2, 1]))
                .unwrap()
                .pass
        );
        let r = verify_projection(MatrixKind::Pasm, 2, 3, &v(&[2, 1])).unwrap();
        assert!(r.pass);
        assert_eq!(r.vertices_checked, 17);
        assert!(
            verify_projection(MatrixKind::Pasm, 3, 3, &v(&[3, 2, 1]))
                .unwrap()
                .pass
        );
        assert!(verify_projection(MatrixKind::Pasm, 2, 3, &v(&[1, 2])).is_err());
        assert!(verify_projection(MatrixKind::PPerm, 2, 3, &v(&[2, -1])).is_err());
        // increasing weights break the PASM bound
        let r = verify_projection_unchecked_pasm(&v(&[1, 2]));
        assert!(!r.is_empty());
    }

    fn verify_projection_unchecked_pasm(z: &[Rational]) -> Vec<RatVector> {
        enumerate_pasms(2, 3)
            .iter()
            .map(|p| project(z, &RatMatrix::from(p)).unwrap())
            .filter(|img| !weighted_contains(img, z).unwrap())
            .collect()
    }
}
