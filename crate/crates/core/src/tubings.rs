//! Tubings of the star graph `K_{1,m}`, their spines, chains in the
//! Boolean lattice `B_m`, and the face lattice of the stellohedron.
//!
//! Tubes are bit masks over `{*, x_1, ..., x_m}` with bit 0 for `*` and bit
//! `i` for `x_i`. Chain subsets are bit masks over `[m]` with bit `i - 1`
//! for element `i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracle::{faces_from_vh, GradedPoset};
use crate::permutohedron::{permutohedron_all_inequalities, permutohedron_vertices, word_vector};
use crate::ratmatrix::RatVector;

pub const MAX_STAR_SIZE: usize = 4;
const STAR: u32 = 1;

fn full_star(m: usize) -> u32 {
    (1u32 << (m + 1)) - 1
}

fn ground(m: usize) -> u32 {
    (1u32 << m) - 1
}

fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}

/// A proper nonempty connected vertex set of `K_{1,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tube(pub u32);

impl Tube {
    pub fn new(mask: u32, m: usize) -> Result<Tube> {
        if mask == 0 || mask & !full_star(m) != 0 {
            return Err(Error::InvalidTubing(format!(
                "{mask:#b} is not a nonempty subset of K_1,{m}"
            )));
        }
        if mask == full_star(m) {
            return Err(Error::InvalidTubing(
                "a tube must be a proper subset".into(),
            ));
        }
        if mask & STAR == 0 && mask.count_ones() != 1 {
            return Err(Error::InvalidTubing(format!(
                "{} is disconnected",
                Tube(mask)
            )));
        }
        Ok(Tube(mask))
    }

    pub fn star_with(outer: &[usize]) -> Tube {
        Tube(outer.iter().fold(STAR, |acc, &i| acc | 1 << i))
    }

    pub fn outer(i: usize) -> Tube {
        Tube(1 << i)
    }

    pub fn contains_star(self) -> bool {
        self.0 & STAR != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Outer vertices as a chain-style mask over `[m]`.
    fn outer_set(self) -> u32 {
        self.0 >> 1
    }
}

impl fmt::Display for Tube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = elements(self.0)
            .map(|b| {
                if b == 0 {
                    "*".to_string()
                } else {
                    format!("x{b}")
                }
            })
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Nested, or disjoint and not adjacent.
pub fn is_compatible(a: Tube, b: Tube) -> bool {
    if a.0 & b.0 == a.0 || a.0 & b.0 == b.0 {
        return true;
    }
    if a.0 & b.0 != 0 {
        return false;
    }
    // disjoint: adjacent unless both are outer vertices
    !a.contains_star() && !b.contains_star()
}

/// A set of pairwise compatible tubes, sorted by size then mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing {
    pub m: usize,
    tubes: Vec<Tube>,
}

impl Tubing {
    pub fn new(m: usize, tubes: impl IntoIterator<Item = Tube>) -> Result<Tubing> {
        let mut tubes: Vec<Tube> = tubes.into_iter().collect();
        for t in &tubes {
            Tube::new(t.0, m)?;
        }
        tubes.sort_by_key(|t| (t.len(), t.0));
        tubes.dedup();
        for (k, a) in tubes.iter().enumerate() {
            if let Some(b) = tubes[k + 1..].iter().find(|b| !is_compatible(*a, **b)) {
                return Err(Error::InvalidTubing(format!(
                    "tubes {a} and {b} are incompatible"
                )));
            }
        }
        Ok(Tubing { m, tubes })
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    /// A tubing with `m` tubes.
    pub fn is_maximal(&self) -> bool {
        self.tubes.len() == self.m
    }

    /// For a maximal tubing, `(|t_1| - 1, ..., |t_m| - 1)` where `t_i` is the
    /// smallest tube containing `x_i`, the whole graph if no tube does.
    pub fn vertex_coordinates(&self) -> Option<Vec<u32>> {
        if !self.is_maximal() {
            return None;
        }
        let coords = (1..=self.m).map(|i| {
            self.tubes
                .iter()
                .find(|t| t.0 >> i & 1 == 1)
                .map_or(self.m as u32, |t| t.len() as u32 - 1)
        });
        Some(coords.collect())
    }
}

impl fmt::Display for Tubing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tubes.iter().map(Tube::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Every tubing of `K_{1,m}`, sorted.
pub fn all_tubings(m: usize) -> Result<Vec<Tubing>> {
    check_size(m)?;
    let tubes: Vec<Tube> = (1..full_star(m))
        .filter_map(|mask| Tube::new(mask, m).ok())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_tubings(&tubes, 0, &mut current, m, &mut out);
    out.sort();
    Ok(out)
}

fn extend_tubings(
    tubes: &[Tube],
    from: usize,
    current: &mut Vec<Tube>,
    m: usize,
    out: &mut Vec<Tubing>,
) {
    out.push(Tubing::new(m, current.iter().copied()).expect("compatible by construction"));
    for k in from..tubes.len() {
        if current.iter().all(|t| is_compatible(*t, tubes[k])) {
            current.push(tubes[k]);
            extend_tubings(tubes, k + 1, current, m, out);
            current.pop();
        }
    }
}

fn check_size(m: usize) -> Result<()> {
    if m == 0 || m > MAX_STAR_SIZE {
        return Err(Error::SizeLimit(format!(
            "star graphs need 1 <= m <= {MAX_STAR_SIZE}, got {m}"
        )));
    }
    Ok(())
}

/// A strictly increasing sequence of subsets of `[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub m: usize,
    subsets: Vec<u32>,
}

impl Chain {
    pub fn new(m: usize, mut subsets: Vec<u32>) -> Result<Chain> {
        if m > 31 {
            return Err(Error::InvalidChain(format!("m = {m} is too large")));
        }
        subsets.sort_by_key(|s| s.count_ones());
        if let Some(s) = subsets.iter().find(|s| **s & !ground(m) != 0) {
            return Err(Error::InvalidChain(format!(
                "{s:#b} is not a subset of [{m}]"
            )));
        }
        if subsets
            .windows(2)
            .any(|w| w[0] & !w[1] != 0 || w[0] == w[1])
        {
            return Err(Error::InvalidChain(
                "subsets are not strictly nested".into(),
            ));
        }
        Ok(Chain { m, subsets })
    }

    /// Chain from 1-based element lists.
    pub fn from_sets(m: usize, sets: &[&[usize]]) -> Result<Chain> {
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut mask = 0u32;
            for &e in *s {
                if e == 0 || e > m {
                    return Err(Error::InvalidChain(format!("element {e} outside [{m}]")));
                }
                mask |= 1 << (e - 1);
            }
            masks.push(mask);
        }
        Chain::new(m, masks)
    }

    pub fn subsets(&self) -> &[u32] {
        &self.subsets
    }

    pub fn to_sets(&self) -> Vec<Vec<usize>> {
        self.subsets
            .iter()
            .map(|&s| elements(s).map(|b| b + 1).collect())
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.subsets.last().copied()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.subsets.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self
            .to_sets()
            .iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(usize::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        f.write_str(&parts.join(" < "))
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_sets().serialize(serializer)
    }
}

/// Deserializes `{"m": .., "chain": [[..], ..]}`.
impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: usize,
            chain: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let sets: Vec<&[usize]> = raw.chain.iter().map(Vec::as_slice).collect();
        Chain::from_sets(raw.m, &sets).map_err(serde::de::Error::custom)
    }
}

/// Every chain of `B_m`, the empty chain included, sorted.
pub fn all_chains(m: usize) -> Result<Vec<Chain>> {
    check_size(m)?;
    let mut out = vec![Chain { m, subsets: vec![] }];
    let mut current = Vec::new();
    for s in 0..=ground(m) {
        current.push(s);
        extend_chains(m, &mut current, &mut out);
        current.pop();
    }
    out.sort();
    Ok(out)
}

fn extend_chains(m: usize, current: &mut Vec<u32>, out: &mut Vec<Chain>) {
    out.push(Chain {
        m,
        subsets: current.clone(),
    });
    let top = *current.last().expect("nonempty");
    for s in 0..=ground(m) {
        if s != top && s & top == top {
            current.push(s);
            extend_chains(m, current, out);
            current.pop();
        }
    }
}

/// Tubes containing `*` give the lower subsets (minus `*` and the outer
/// singletons); the chain ends with everything outside the singletons.
pub fn tubing_to_chain(t: &Tubing) -> Chain {
    let singles: u32 = t
        .tubes
        .iter()
        .filter(|x| !x.contains_star())
        .map(|x| x.outer_set())
        .fold(0, |a, b| a | b);
    let mut subsets: Vec<u32> = t
        .tubes
        .iter()
        .filter(|x| x.contains_star())
        .map(|x| x.outer_set() & !singles)
        .collect();
    subsets.push(ground(t.m) & !singles);
    Chain::new(t.m, subsets).expect("tubing yields a chain")
}

/// Inverse of [`tubing_to_chain`] on nonempty chains.
pub fn chain_to_tubing(c: &Chain) -> Result<Tubing> {
    let Some(max) = c.max() else {
        return Err(Error::InvalidChain(
            "the empty chain is the empty face and has no tubing".into(),
        ));
    };
    let singles = ground(c.m) & !max;
    let mut tubes: Vec<Tube> = elements(singles).map(|b| Tube::outer(b + 1)).collect();
    tubes.extend(
        c.subsets[..c.subsets.len() - 1]
            .iter()
            .map(|&s| Tube(STAR | (s | singles) << 1)),
    );
    Tubing::new(c.m, tubes)
}

/// Ranks `j` with no subset of size `j` but some larger subset present;
/// `-1` for the empty chain.
pub fn missing_ranks(c: &Chain) -> i64 {
    match c.max() {
        None => -1,
        Some(max) => max.count_ones() as i64 + 1 - c.subsets.len() as i64,
    }
}

/// Chains obtained from `c` by one move: adding a subset properly inside
/// the maximum, or removing an element lying in every subset.
pub fn chain_moves(c: &Chain) -> Vec<Chain> {
    let Some(max) = c.max() else {
        return vec![];
    };
    let mut out = Vec::new();
    for s in 0..max {
        if s & max != s || c.subsets.contains(&s) {
            continue;
        }
        let comparable = c.subsets.iter().all(|&t| s & t == s || s & t == t);
        if comparable {
            let mut subsets = c.subsets.clone();
            subsets.push(s);
            out.push(Chain::new(c.m, subsets).expect("comparable subsets form a chain"));
        }
    }
    for e in elements(c.subsets[0]) {
        let subsets = c.subsets.iter().map(|s| s & !(1 << e)).collect();
        out.push(Chain::new(c.m, subsets).expect("removal keeps strict nesting"));
    }
    out.sort();
    out
}

/// Whether `lower` is obtained from `upper` by exactly one move.
pub fn chain_covers(upper: &Chain, lower: &Chain) -> bool {
    upper.m == lower.m && chain_moves(upper).contains(lower)
}

/// One node of a spine: the vertices a tube adds to the tubes below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpineNode {
    /// Labels: `0` stands for `*`, `i` for `x_i`.
    pub label: Vec<usize>,
    pub parent: Option<usize>,
}

/// The tubes of a tubing and the whole graph ordered by inclusion, each
/// labelled by its new vertices. Nodes are listed by increasing tube size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spine {
    pub m: usize,
    pub nodes: Vec<SpineNode>,
}

impl Spine {
    pub fn from_tubing(t: &Tubing) -> Spine {
        let mut sets: Vec<u32> = t.tubes.iter().map(|x| x.0).collect();
        sets.push(full_star(t.m));
        let nodes = (0..sets.len())
            .map(|k| {
                let inside: u32 = sets[..k]
                    .iter()
                    .filter(|&&s| s & sets[k] == s)
                    .fold(0, |a, &s| a | s);
                let parent = (k + 1..sets.len()).find(|&p| sets[k] & sets[p] == sets[k]);
                SpineNode {
                    label: elements(sets[k] & !inside).collect(),
                    parent,
                }
            })
            .collect();
        Spine { m: t.m, nodes }
    }

    fn tube_of(&self, k: usize) -> u32 {
        (0..self.nodes.len())
            .filter(|&d| self.is_below(d, k))
            .flat_map(|d| self.nodes[d].label.iter().map(|&b| 1u32 << b))
            .fold(0, |a, b| a | b)
    }

    fn is_below(&self, d: usize, k: usize) -> bool {
        let mut cur = Some(d);
        while let Some(c) = cur {
            if c == k {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    pub fn to_tubing(&self) -> Result<Tubing> {
        let root = self.nodes.len() - 1;
        Tubing::new(self.m, (0..root).map(|k| Tube(self.tube_of(k))))
    }

    /// Reads the chain off the levels: the first subset is whatever shares
    /// a node with `*`, and each node above it adds its label.
    pub fn to_chain(&self) -> Chain {
        let star = self
            .nodes
            .iter()
            .position(|n| n.label.contains(&0))
            .expect("some node carries *");
        let mut subsets = Vec::new();
        let mut acc = 0u32;
        let mut cur = Some(star);
        while let Some(k) = cur {
            acc |= self.nodes[k]
                .label
                .iter()
                .filter(|&&b| b > 0)
                .fold(0, |a, &b| a | 1 << (b - 1));
            subsets.push(acc);
            cur = self.nodes[k].parent;
        }
        Chain::new(self.m, subsets).expect("levels nest")
    }
}

/// The chain poset of `B_m` ordered by the moves, graded by missing ranks,
/// with the empty chain as the empty face. Elements follow [`all_chains`].
pub fn stellohedron_face_lattice(m: usize) -> Result<(GradedPoset, Vec<Chain>)> {
    let chains = all_chains(m)?;
    let index: HashMap<&Chain, usize> = chains.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let dims: Vec<i64> = chains.iter().map(missing_ranks).collect();
    let mut covers = Vec::new();
    for (k, c) in chains.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        if dims[k] == 0 {
            covers.push((0, k));
        }
        for lower in chain_moves(c) {
            covers.push((index[&lower], k));
        }
    }
    covers.sort_unstable();
    Ok((GradedPoset::from_covers(dims, covers), chains))
}

/// The oracle face lattice of `P(m,n)` built from its vertices and all
/// subset inequalities.
pub fn permutohedron_face_lattice(m: usize, n: usize) -> Result<GradedPoset> {
    let verts: Vec<RatVector> = permutohedron_vertices(m, n)
        .iter()
        .map(word_vector)
        .collect();
    faces_from_vh(&verts, &permutohedron_all_inequalities(m, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub m: usize,
    pub n: usize,
    pub chains: BTreeMap<i64, usize>,
    pub faces: BTreeMap<i64, usize>,
    pub pass: bool,
}

/// Counts chains of `B_m` whose largest and smallest nonempty subsets
/// differ in size by at most `n - 1`, per missing-rank count, against the
/// faces of `P(m,n)` per dimension.
pub fn conjecture_faces(m: usize, n: usize) -> Result<ConjectureReport> {
    if n == 0 || n > MAX_STAR_SIZE {
        return Err(Error::SizeLimit(format!(
            "need 1 <= n <= {MAX_STAR_SIZE}, got {n}"
        )));
    }
    let mut chains = BTreeMap::new();
    for c in all_chains(m)? {
        let nonempty: Vec<u32> = c.subsets.iter().copied().filter(|&s| s != 0).collect();
        let gap = match (nonempty.first(), nonempty.last()) {
            (Some(lo), Some(hi)) => (hi.count_ones() - lo.count_ones()) as usize,
            _ => 0,
        };
        if gap < n {
            *chains.entry(missing_ranks(&c)).or_insert(0) += 1;
        }
    }
    let faces = permutohedron_face_lattice(m, n)?.f_vector();
    Ok(ConjectureReport {
        m,
        n,
        pass: chains == faces,
        chains,
        faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::poset_isomorphic;

    fn sample_pairs() -> Vec<(Tubing, Chain)> {
        vec![
            (
                Tubing::new(
                    4,
                    [
                        Tube::outer(2),
                        Tube::star_with(&[2]),
                        Tube::star_with(&[1, 2, 4]),
                    ],
                )
                .unwrap(),
                Chain::from_sets(4, &[&[], &[1, 4], &[1, 3, 4]]).unwrap(),
            ),
            (
                Tubing::new(4, (1..=4).map(Tube::outer)).unwrap(),
                Chain::from_sets(4, &[&[]]).unwrap(),
            ),
            (
                Tubing::new(4, [Tube::star_with(&[3])]).unwrap(),
                Chain::from_sets(4, &[&[3], &[1, 2, 3, 4]]).unwrap(),
            ),
        ]
    }

    #[test]
    fn compatibility_cases() {
        assert!(!is_compatible(Tube::outer(1), Tube::star_with(&[])));
        assert!(is_compatible(Tube::outer(1), Tube::star_with(&[1, 2])));
        assert!(!is_compatible(Tube::star_with(&[1]), Tube::star_with(&[2])));
        assert!(is_compatible(Tube::outer(1), Tube::outer(2)));
        assert!(Tube::new(0b110, 2).is_err());
        assert!(Tube::new(0b111, 2).is_err());
    }

    #[test]
    fn sample_bijection() {
        for (t, c) in sample_pairs() {
            assert_eq!(tubing_to_chain(&t), c, "{t}");
            assert_eq!(chain_to_tubing(&c).unwrap(), t, "{c}");
            let spine = Spine::from_tubing(&t);
            assert_eq!(spine.to_chain(), c);
            assert_eq!(spine.to_tubing().unwrap(), t);
        }
        let (_, c) = &sample_pairs()[0];
        assert_eq!(missing_ranks(c), 1);
    }

    #[test]
    fn extreme_tubings() {
        let empty = Tubing::new(3, []).unwrap();
        assert_eq!(
            tubing_to_chain(&empty),
            Chain::from_sets(3, &[&[1, 2, 3]]).unwrap()
        );
        let singles = Tubing::new(3, (1..=3).map(Tube::outer)).unwrap();
        assert_eq!(
            tubing_to_chain(&singles),
            Chain::from_sets(3, &[&[]]).unwrap()
        );
        assert!(chain_to_tubing(&Chain::new(3, vec![]).unwrap()).is_err());
    }

    #[test]
    fn missing_rank_examples() {
        let full = Chain::from_sets(3, &[&[], &[1], &[1, 2], &[1, 2, 3]]).unwrap();
        assert_eq!(missing_ranks(&full), 0);
        let top = Chain::from_sets(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(missing_ranks(&top), 3);
        assert_eq!(missing_ranks(&Chain::new(3, vec![]).unwrap()), -1);
    }

    #[test]
    fn cover_moves() {
        let c = Chain::from_sets(2, &[&[], &[1, 2]]).unwrap();
        let d = Chain::from_sets(2, &[&[], &[1], &[1, 2]]).unwrap();
        assert!(chain_covers(&c, &d));
        let c = Chain::from_sets(2, &[&[1], &[1, 2]]).unwrap();
        let d = Chain::from_sets(2, &[&[], &[2]]).unwrap();
        assert!(chain_covers(&c, &d));
        // the maximum cannot be added
        let c = Chain::from_sets(2, &[&[1]]).unwrap();
        let d = Chain::from_sets(2, &[&[1], &[1, 2]]).unwrap();
        assert!(!chain_covers(&c, &d));
    }

    #[test]
    fn bijection_is_exhaustive() {
        for m in 1..=4 {
            let tubings = all_tubings(m).unwrap();
            let chains = all_chains(m).unwrap();
            assert_eq!(tubings.len() + 1, chains.len(), "m = {m}");
            for t in &tubings {
                let c = tubing_to_chain(t);
                assert_eq!(&chain_to_tubing(&c).unwrap(), t);
                assert_eq!(missing_ranks(&c), (m - t.len()) as i64);
                assert_eq!(Spine::from_tubing(t).to_chain(), c);
            }
        }
    }

    #[test]
    fn small_lattices() {
        let (p, _) = stellohedron_face_lattice(1).unwrap();
        assert_eq!(p.len(), 4);
        let (p, _) = stellohedron_face_lattice(2).unwrap();
        assert_eq!(p.len(), 12);
        assert_eq!(
            p.f_vector(),
            BTreeMap::from([(-1, 1), (0, 5), (1, 5), (2, 1)])
        );
        assert!(p.is_graded());
        assert!(poset_isomorphic(
            &p,
            &permutohedron_face_lattice(2, 2).unwrap()
        ));
    }

    #[test]
    fn maximal_tubings_hit_the_vertices() {
        for m in 1..=4 {
            let mut coords: Vec<Vec<u32>> = all_tubings(m)
                .unwrap()
                .iter()
                .filter_map(Tubing::vertex_coordinates)
                .collect();
            coords.sort();
            let verts: Vec<Vec<u32>> = permutohedron_vertices(m, m)
                .into_iter()
                .map(|w| w.0)
                .collect();
            assert_eq!(coords, verts, "m = {m}");
        }
    }

    #[test]
    fn conjecture_small_cases() {
        assert!(conjecture_faces(2, 1).unwrap().pass);
        assert!(conjecture_faces(3, 2).unwrap().pass);
    }
}
