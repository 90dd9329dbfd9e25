//! Brute-force face lattices from a vertex list and a list of valid
//! inequalities, facet counting, convex-hull extremality, and isomorphism of
//! graded posets. These are the reference implementations every closed-form
//! count in the crate is checked against.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{affine_dimension, rank, Rational};
use crate::inequality::{dot, LinearInequality};
use crate::ratmatrix::RatVector;

pub const MAX_AMBIENT_DIM: usize = 9;
pub const MAX_VERTICES: usize = 200;

/// A face given by the indices of the vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub dim: i64,
    pub vertices: Vec<usize>,
}

/// A finite graded poset stored as elements plus cover pairs `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoset {
    pub faces: Vec<Face>,
    pub covers: Vec<(usize, usize)>,
}

impl Serialize for GradedPoset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let covers: Vec<[usize; 2]> = self.covers.iter().map(|&(a, b)| [a, b]).collect();
        let mut s = serializer.serialize_struct("GradedPoset", 2)?;
        s.serialize_field("faces", &self.faces)?;
        s.serialize_field("covers", &covers)?;
        s.end()
    }
}

impl GradedPoset {
    /// Builds a poset from ranks and covers; each element's `vertices` lists
    /// the rank-0 elements below it, numbered in element order.
    pub fn from_covers(dims: Vec<i64>, covers: Vec<(usize, usize)>) -> GradedPoset {
        let atoms: Vec<usize> = (0..dims.len()).filter(|&k| dims[k] == 0).collect();
        let atom_index: HashMap<usize, usize> =
            atoms.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        let mut down = vec![Vec::new(); dims.len()];
        for &(lo, hi) in &covers {
            down[hi].push(lo);
        }
        let faces = (0..dims.len())
            .map(|k| {
                let mut seen = vec![false; dims.len()];
                let mut stack = vec![k];
                let mut below = BTreeSet::new();
                while let Some(v) = stack.pop() {
                    if std::mem::replace(&mut seen[v], true) {
                        continue;
                    }
                    if let Some(&a) = atom_index.get(&v) {
                        below.insert(a);
                    }
                    stack.extend(&down[v]);
                }
                Face {
                    dim: dims[k],
                    vertices: below.into_iter().collect(),
                }
            })
            .collect();
        GradedPoset { faces, covers }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn top_dim(&self) -> i64 {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(-1)
    }

    /// `f[d]` = number of elements of dimension `d`, for `d = -1 ..= top`.
    pub fn f_vector(&self) -> BTreeMap<i64, usize> {
        let mut f = BTreeMap::new();
        for face in &self.faces {
            *f.entry(face.dim).or_insert(0) += 1;
        }
        f
    }

    /// Every cover raises the dimension by exactly one, and there is a
    /// unique minimum and a unique maximum.
    pub fn is_graded(&self) -> bool {
        let covers_ok = self
            .covers
            .iter()
            .all(|&(a, b)| self.faces[b].dim == self.faces[a].dim + 1);
        let f = self.f_vector();
        let ends_ok = f.first_key_value().is_some_and(|(_, &c)| c == 1)
            && f.last_key_value().is_some_and(|(_, &c)| c == 1);
        covers_ok && ends_ok
    }

    /// `sum_{d >= 0} (-1)^d f_d = 1`, the polytope itself included.
    pub fn euler_relation_holds(&self) -> bool {
        let total: i64 = self
            .f_vector()
            .iter()
            .filter(|(&d, _)| d >= 0)
            .map(|(&d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        total == 1
    }

    fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut up = vec![Vec::new(); self.len()];
        let mut down = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            up[a].push(b);
            down[b].push(a);
        }
        (up, down)
    }

    /// Reflexive-transitive order `a <= b`, as a dense boolean table.
    pub fn order_table(&self) -> Vec<Vec<bool>> {
        let (up, _) = self.adjacency();
        (0..self.len())
            .map(|a| {
                let mut reach = vec![false; self.len()];
                let mut stack = vec![a];
                while let Some(v) = stack.pop() {
                    if std::mem::replace(&mut reach[v], true) {
                        continue;
                    }
                    stack.extend(&up[v]);
                }
                reach
            })
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct VertexSet(Vec<u64>);

impl VertexSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        VertexSet(words)
    }

    fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for k in idx {
            words[k / 64] |= 1 << (k % 64);
        }
        VertexSet(words)
    }

    fn meet(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }
}

fn check_input(vertices: &[RatVector], inequalities: &[LinearInequality]) -> Result<usize> {
    let Some(first) = vertices.first() else {
        return Err(Error::DimensionMismatch("no vertices".into()));
    };
    let d = first.len();
    if vertices.iter().any(|v| v.len() != d) || inequalities.iter().any(|f| f.dim() != d) {
        return Err(Error::DimensionMismatch(
            "vertices and inequalities must share one ambient dimension".into(),
        ));
    }
    for (vi, v) in vertices.iter().enumerate() {
        if let Some(fi) = inequalities.iter().position(|f| !f.holds(v)) {
            return Err(Error::InconsistentInput {
                vertex: vi,
                inequality: fi,
            });
        }
    }
    Ok(d)
}

fn tight_sets(vertices: &[RatVector], inequalities: &[LinearInequality]) -> Vec<VertexSet> {
    inequalities
        .iter()
        .map(|f| {
            VertexSet::from_indices(
                vertices.len(),
                (0..vertices.len()).filter(|&k| f.is_tight(&vertices[k])),
            )
        })
        .collect()
}

fn dimension_of(vertices: &[RatVector], set: &VertexSet) -> i64 {
    let pts: Vec<RatVector> = set
        .indices()
        .into_iter()
        .map(|k| vertices[k].clone())
        .collect();
    affine_dimension(&pts)
}

/// All faces of `conv(vertices)` as intersections of the tight sets of the
/// given valid inequalities, together with their cover relations.
///
/// Faces are sorted by `(dim, vertex list)`; the empty face is always first.
pub fn faces_from_vh(
    vertices: &[RatVector],
    inequalities: &[LinearInequality],
) -> Result<GradedPoset> {
    let d = check_input(vertices, inequalities)?;
    if d > MAX_AMBIENT_DIM || vertices.len() > MAX_VERTICES {
        return Err(Error::SizeLimit(format!(
            "face enumeration supports ambient dimension <= {MAX_AMBIENT_DIM} and <= {MAX_VERTICES} vertices, got {d} and {}",
            vertices.len()
        )));
    }
    let n = vertices.len();
    let tight = tight_sets(vertices, inequalities);
    let full = VertexSet::full(n);
    let empty = VertexSet::from_indices(n, []);

    let mut seen: BTreeSet<VertexSet> = BTreeSet::from([full.clone(), empty]);
    let mut queue = VecDeque::from([full]);
    while let Some(face) = queue.pop_front() {
        for t in &tight {
            let g = face.meet(t);
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }

    let mut faces: Vec<(i64, Vec<usize>, VertexSet)> = seen
        .into_iter()
        .map(|s| (dimension_of(vertices, &s), s.indices(), s))
        .collect();
    faces.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let index: HashMap<VertexSet, usize> = faces
        .iter()
        .enumerate()
        .map(|(k, f)| (f.2.clone(), k))
        .collect();

    let mut covers = BTreeSet::new();
    for (hi, (dim, _, set)) in faces.iter().enumerate() {
        if *dim < 0 {
            continue;
        }
        for t in &tight {
            let g = set.meet(t);
            let lo = index[&g];
            if faces[lo].0 == dim - 1 {
                covers.insert((lo, hi));
            }
        }
    }
    Ok(GradedPoset {
        faces: faces
            .into_iter()
            .map(|(dim, vertices, _)| Face { dim, vertices })
            .collect(),
        covers: covers.into_iter().collect(),
    })
}

/// Indices of the candidates that define facets of `conv(vertices)`, one
/// per distinct facet (the first candidate with that tight set).
pub fn facet_indices(
    vertices: &[RatVector],
    candidates: &[LinearInequality],
) -> Result<Vec<usize>> {
    let d = check_input(vertices, candidates)?;
    let got = affine_dimension(vertices);
    if got != d as i64 {
        return Err(Error::NotFullDimensional {
            expected: d,
            got: got.max(0) as usize,
        });
    }
    let tight = tight_sets(vertices, candidates);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (k, t) in tight.iter().enumerate() {
        if dimension_of(vertices, t) == d as i64 - 1 && seen.insert(t.clone()) {
            out.push(k);
        }
    }
    Ok(out)
}

/// Number of distinct facets of `conv(vertices)` among `candidates`.
pub fn facet_oracle(vertices: &[RatVector], candidates: &[LinearInequality]) -> Result<usize> {
    facet_indices(vertices, candidates).map(|v| v.len())
}

/// Points of `{lo..=hi}^d` satisfying every inequality whose tight normals
/// have full rank, i.e. the lattice points that are vertices of the
/// H-polytope.
pub fn lattice_vertices(
    d: usize,
    lo: i64,
    hi: i64,
    inequalities: &[LinearInequality],
) -> Result<Vec<Vec<i64>>> {
    let width = (hi - lo + 1) as u128;
    if d > 12 || width.checked_pow(d as u32).is_none_or(|c| c > 20_000_000) {
        return Err(Error::SizeLimit(format!(
            "lattice scan over {width}^{d} points"
        )));
    }
    let mut out = Vec::new();
    let mut point = vec![lo; d];
    loop {
        let x: RatVector = point.iter().map(|&v| Rational::from(v)).collect();
        if inequalities.iter().all(|f| f.holds(&x)) {
            let normals: Vec<RatVector> = inequalities
                .iter()
                .filter(|f| f.is_tight(&x))
                .map(|f| f.coeffs.clone())
                .collect();
            if rank(&normals) == d {
                out.push(point.clone());
            }
        }
        let Some(k) = (0..d).rev().find(|&k| point[k] < hi) else {
            break;
        };
        point[k] += 1;
        for v in point.iter_mut().skip(k + 1) {
            *v = lo;
        }
    }
    Ok(out)
}

/// Indices of the points that are vertices of their convex hull.
///
/// The hull must be full-dimensional. Every hyperplane through `d`
/// affinely independent points that has all points on one side is a facet
/// hyperplane; a point is a vertex iff the normals of the facets through it
/// span `R^d`. Repeated points are never vertices.
pub fn extreme_points(points: &[RatVector]) -> Result<Vec<usize>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch(
            "points of different length".into(),
        ));
    }
    let got = affine_dimension(points);
    if got != d as i64 {
        return Err(Error::NotFullDimensional {
            expected: d,
            got: got.max(0) as usize,
        });
    }
    if d > 4 || points.len() > 400 {
        return Err(Error::SizeLimit(format!(
            "extremality oracle supports d <= 4 and <= 400 points, got {d} and {}",
            points.len()
        )));
    }
    let mut unique: BTreeMap<&RatVector, Vec<usize>> = BTreeMap::new();
    for (k, p) in points.iter().enumerate() {
        unique.entry(p).or_default().push(k);
    }
    let reps: Vec<&RatVector> = unique.keys().copied().collect();
    let mut facet_normals: Vec<Vec<RatVector>> = vec![Vec::new(); reps.len()];

    let mut subset: Vec<usize> = (0..d).collect();
    if d <= reps.len() {
        loop {
            if let Some(normal) =
                hyperplane_normal(&subset.iter().map(|&k| reps[k]).collect::<Vec<_>>())
            {
                let b = dot(&normal, reps[subset[0]]);
                let mut above = false;
                let mut below = false;
                let mut on = Vec::new();
                for (k, p) in reps.iter().enumerate() {
                    let v = dot(&normal, p);
                    match v.cmp(&b) {
                        std::cmp::Ordering::Greater => above = true,
                        std::cmp::Ordering::Less => below = true,
                        std::cmp::Ordering::Equal => on.push(k),
                    }
                }
                if !(above && below) {
                    for k in on {
                        facet_normals[k].push(normal.clone());
                    }
                }
            }
            // next d-subset in lexicographic order
            let Some(pos) = (0..d).rev().find(|&p| subset[p] < reps.len() - d + p) else {
                break;
            };
            subset[pos] += 1;
            for p in pos + 1..d {
                subset[p] = subset[p - 1] + 1;
            }
        }
    }
    let mut out: Vec<usize> = reps
        .iter()
        .enumerate()
        .filter(|(k, p)| unique[*p].len() == 1 && rank(&facet_normals[*k]) == d)
        .map(|(_, p)| unique[p][0])
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// A normal of the hyperplane through `d` points of `R^d`, or `None` when
/// they are affinely dependent. Computed as the generalized cross product
/// of the difference vectors.
fn hyperplane_normal(pts: &[&RatVector]) -> Option<RatVector> {
    let d = pts[0].len();
    let diffs: Vec<RatVector> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    let normal: RatVector = (0..d)
        .map(|k| {
            let minor: Vec<RatVector> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != k)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let det = determinant(minor);
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    normal.iter().any(|c| !c.is_zero()).then_some(normal)
}

fn determinant(mut a: Vec<RatVector>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &(y * &factor);
            }
        }
    }
    det
}

/// Whether there is a rank-preserving order isomorphism between `a` and `b`.
///
/// Colour refinement on the joint cover graph (colour, sorted up-cover
/// colours, sorted down-cover colours), followed by individualization of
/// the smallest ambiguous class with backtracking. A discrete colouring is
/// accepted only after checking that it maps covers onto covers.
pub fn poset_isomorphic(a: &GradedPoset, b: &GradedPoset) -> bool {
    if a.len() != b.len() || a.covers.len() != b.covers.len() || a.f_vector() != b.f_vector() {
        return false;
    }
    let n = a.len();
    let mut up = vec![Vec::new(); 2 * n];
    let mut down = vec![Vec::new(); 2 * n];
    for (offset, p) in [(0, a), (n, b)] {
        for &(lo, hi) in &p.covers {
            up[lo + offset].push(hi + offset);
            down[hi + offset].push(lo + offset);
        }
    }
    let dims: Vec<i64> = a.faces.iter().chain(&b.faces).map(|f| f.dim).collect();
    let dim_ids: BTreeMap<i64, usize> = dims
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(k, d)| (d, k))
        .collect();
    let colours: Vec<usize> = dims.iter().map(|d| dim_ids[d]).collect();
    let b_covers: BTreeSet<(usize, usize)> = b.covers.iter().copied().collect();
    let graph = JointGraph {
        n,
        up,
        down,
        a_covers: &a.covers,
        b_covers,
    };
    graph.search(colours)
}

struct JointGraph<'a> {
    n: usize,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    a_covers: &'a [(usize, usize)],
    b_covers: BTreeSet<(usize, usize)>,
}

impl JointGraph<'_> {
    fn refine(&self, mut colours: Vec<usize>) -> Vec<usize> {
        let mut classes = colours.iter().collect::<BTreeSet<_>>().len();
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..colours.len())
                .map(|v| {
                    let mut u: Vec<usize> = self.up[v].iter().map(|&w| colours[w]).collect();
                    let mut d: Vec<usize> = self.down[v].iter().map(|&w| colours[w]).collect();
                    u.sort_unstable();
                    d.sort_unstable();
                    (colours[v], u, d)
                })
                .collect();
            let ids: BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = sigs
                .iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .enumerate()
                .map(|(k, s)| (s, k))
                .collect();
            colours = sigs.iter().map(|s| ids[s]).collect();
            if ids.len() == classes {
                return colours;
            }
            classes = ids.len();
        }
    }

    fn search(&self, colours: Vec<usize>) -> bool {
        let colours = self.refine(colours);
        let n = self.n;
        let mut count_a: BTreeMap<usize, usize> = BTreeMap::new();
        let mut count_b: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..n {
            *count_a.entry(colours[v]).or_insert(0) += 1;
            *count_b.entry(colours[v + n]).or_insert(0) += 1;
        }
        if count_a != count_b {
            return false;
        }
        let ambiguous = count_a
            .iter()
            .filter(|(_, &c)| c > 1)
            .min_by_key(|(&col, &c)| (c, col))
            .map(|(&col, _)| col);
        let Some(class) = ambiguous else {
            let mut image = vec![0; n];
            let by_colour: HashMap<usize, usize> =
                (n..2 * n).map(|w| (colours[w], w - n)).collect();
            for v in 0..n {
                image[v] = by_colour[&colours[v]];
            }
            return self
                .a_covers
                .iter()
                .all(|&(lo, hi)| self.b_covers.contains(&(image[lo], image[hi])));
        };
        let x = (0..n).find(|&v| colours[v] == class).unwrap();
        let fresh = colours.iter().max().unwrap() + 1;
        (n..2 * n).filter(|&w| colours[w] == class).any(|y| {
            let mut next = colours.clone();
            next[x] = fresh;
            next[y] = fresh;
            self.search(next)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::Relation;

    fn pt(xs: &[i64]) -> RatVector {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    fn ineq(coeffs: &[i64], rel: Relation, rhs: i64) -> LinearInequality {
        LinearInequality::new(pt(coeffs), rel, Rational::from(rhs)).unwrap()
    }

    fn segment() -> GradedPoset {
        faces_from_vh(
            &[pt(&[0]), pt(&[1])],
            &[ineq(&[1], Relation::Ge, 0), ineq(&[1], Relation::Le, 1)],
        )
        .unwrap()
    }

    fn square() -> GradedPoset {
        let v = [pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let h = [
            ineq(&[1, 0], Relation::Ge, 0),
            ineq(&[0, 1], Relation::Ge, 0),
            ineq(&[1, 0], Relation::Le, 1),
            ineq(&[0, 1], Relation::Le, 1),
        ];
        faces_from_vh(&v, &h).unwrap()
    }

    fn pentagon() -> GradedPoset {
        let v = [
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[2, 1]),
            pt(&[1, 2]),
        ];
        let h = [
            ineq(&[1, 0], Relation::Ge, 0),
            ineq(&[0, 1], Relation::Ge, 0),
            ineq(&[1, 0], Relation::Le, 2),
            ineq(&[0, 1], Relation::Le, 2),
            ineq(&[1, 1], Relation::Le, 3),
        ];
        faces_from_vh(&v, &h).unwrap()
    }

    #[test]
    fn segment_lattice() {
        let p = segment();
        assert_eq!(p.len(), 4);
        assert_eq!(p.f_vector(), BTreeMap::from([(-1, 1), (0, 2), (1, 1)]));
        assert_eq!(p.covers.len(), 4);
        assert!(p.is_graded());
        assert!(p.euler_relation_holds());
        assert_eq!(
            p.faces[0],
            Face {
                dim: -1,
                vertices: vec![]
            }
        );
    }

    #[test]
    fn pentagon_and_square() {
        let p = pentagon();
        assert_eq!(
            p.f_vector(),
            BTreeMap::from([(-1, 1), (0, 5), (1, 5), (2, 1)])
        );
        assert!(p.euler_relation_holds());
        let s = square();
        assert_eq!(
            s.f_vector(),
            BTreeMap::from([(-1, 1), (0, 4), (1, 4), (2, 1)])
        );
        assert!(poset_isomorphic(&p, &p));
        assert!(poset_isomorphic(&s, &s));
        assert!(!poset_isomorphic(&p, &s));
    }

    #[test]
    fn redundant_and_duplicate_inequalities_are_tolerated() {
        let v = [pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let h = [
            ineq(&[1, 0], Relation::Ge, 0),
            ineq(&[1, 0], Relation::Ge, 0),
            ineq(&[0, 1], Relation::Ge, 0),
            ineq(&[1, 0], Relation::Le, 1),
            ineq(&[0, 1], Relation::Le, 1),
            ineq(&[1, 1], Relation::Le, 5),
        ];
        assert_eq!(faces_from_vh(&v, &h).unwrap(), square());
    }

    #[test]
    fn inconsistent_input_is_reported() {
        let err = faces_from_vh(&[pt(&[0]), pt(&[2])], &[ineq(&[1], Relation::Le, 1)]).unwrap_err();
        assert_eq!(
            err,
            Error::InconsistentInput {
                vertex: 1,
                inequality: 0
            }
        );
    }

    #[test]
    fn facet_oracle_counts() {
        let h = [ineq(&[1], Relation::Ge, 0), ineq(&[1], Relation::Le, 1)];
        assert_eq!(facet_oracle(&[pt(&[0]), pt(&[1])], &h).unwrap(), 2);
        let v = [
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[2, 1]),
            pt(&[1, 2]),
        ];
        let h = [
            ineq(&[1, 0], Relation::Ge, 0),
            ineq(&[0, 1], Relation::Ge, 0),
            ineq(&[1, 0], Relation::Le, 2),
            ineq(&[0, 1], Relation::Le, 2),
            ineq(&[1, 1], Relation::Le, 3),
            ineq(&[1, 1], Relation::Le, 4),
            ineq(&[2, 0], Relation::Le, 4),
        ];
        assert_eq!(facet_oracle(&v, &h).unwrap(), 5);
        assert_eq!(facet_indices(&v, &h).unwrap(), vec![0, 1, 2, 3, 4]);
        let flat = [pt(&[0, 0]), pt(&[1, 0])];
        assert!(matches!(
            facet_oracle(&flat, &[ineq(&[1, 0], Relation::Ge, 0)]),
            Err(Error::NotFullDimensional {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn extreme_points_of_pentagon_with_interior_points() {
        let pts = [
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[2, 1]),
            pt(&[1, 2]),
            pt(&[1, 1]),
            pt(&[1, 0]),
            pt(&[2, 1]),
        ];
        // (2,1) is repeated, so it is reported nowhere
        assert_eq!(extreme_points(&pts).unwrap(), vec![0, 1, 2, 4]);
        assert_eq!(extreme_points(&pts[..5]).unwrap(), vec![0, 1, 2, 3, 4]);
        let cube: Vec<RatVector> = (0..8)
            .map(|k| pt(&[k & 1, (k >> 1) & 1, (k >> 2) & 1]))
            .chain([pt(&[1, 1, 0])
                .iter()
                .map(|x| x / &Rational::from(2))
                .collect()])
            .collect();
        assert_eq!(extreme_points(&cube).unwrap(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn lattice_vertices_of_square() {
        let h = [
            ineq(&[1, 0], Relation::Ge, 0),
            ineq(&[0, 1], Relation::Ge, 0),
            ineq(&[1, 1], Relation::Le, 1),
        ];
        assert_eq!(
            lattice_vertices(2, -1, 1, &h).unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn isomorphism_ignores_labelling_order() {
        let p = pentagon();
        // relabel elements in reverse order
        let n = p.len();
        let dims: Vec<i64> = p.faces.iter().rev().map(|f| f.dim).collect();
        let covers = p
            .covers
            .iter()
            .map(|&(a, b)| (n - 1 - a, n - 1 - b))
            .collect();
        let q = GradedPoset::from_covers(dims, covers);
        assert!(poset_isomorphic(&p, &q));
        // same f-vector, different covers: a "bowtie" is not a pentagon
        let mut broken = p.clone();
        let slot = broken
            .covers
            .iter()
            .position(|&(lo, _)| broken.faces[lo].dim == 0)
            .unwrap();
        let (lo, hi) = broken.covers[slot];
        let other_hi = (0..n)
            .find(|&k| {
                k != hi
                    && broken.faces[k].dim == broken.faces[hi].dim
                    && !broken.covers.contains(&(lo, k))
            })
            .unwrap();
        broken.covers[slot] = (lo, other_hi);
        assert!(!poset_isomorphic(&p, &broken));
    }

    #[test]
    fn atoms_below_are_recorded() {
        let p = pentagon();
        let q = GradedPoset::from_covers(p.faces.iter().map(|f| f.dim).collect(), p.covers.clone());
        assert_eq!(q.faces, p.faces);
        let table = p.order_table();
        assert!(table[0].iter().all(|&b| b));
        assert!(table.iter().all(|row| row[n_last(&p)]));
    }

    fn n_last(p: &GradedPoset) -> usize {
        p.len() - 1
    }

    #[test]
    fn serializes_faces_and_covers() {
        let json = serde_json::to_string(&segment()).unwrap();
        assert_eq!(
            json,
            r#"{"faces":[{"dim":-1,"vertices":[]},{"dim":0,"vertices":[0]},{"dim":0,"vertices":[1]},{"dim":1,"vertices":[0,1]}],"covers":[[0,1],[0,2],[1,3],[2,3]]}"#
        );
    }
}
