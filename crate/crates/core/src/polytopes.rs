//! The partial permutation polytope `PPerm(m,n)` and the partial
//! alternating sign matrix polytope `PASM(m,n)`: membership, inequality
//! systems, separating hyperplanes, decomposition into vertices, and the
//! sum-labeling description of the PASM face lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gridgraph::{
    basic_sum_labeling, hat, regions, Edge, EdgeLabel, GridGraph, Node, SumLabeling,
};
use crate::inequality::{Hyperplane, LinearInequality, Relation};
use crate::matrices::{enumerate_partial_perms, enumerate_pasms, is_pasm, IntMatrix};
use crate::oracle::{faces_from_vh, lattice_vertices, poset_isomorphic, GradedPoset};
use crate::ratmatrix::{RatMatrix, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixKind {
    PPerm,
    Pasm,
}

pub fn pperm_contains(x: &RatMatrix) -> bool {
    let (m, n) = (x.rows(), x.cols());
    let nonneg = x.entries().iter().all(|e| !e.is_negative());
    let r = x.row_prefix_sums();
    let c = x.column_prefix_sums();
    let rows_ok = (0..m).all(|i| r[i * n + n - 1] <= 1);
    let cols_ok = (0..n).all(|j| c[(m - 1) * n + j] <= 1);
    nonneg && rows_ok && cols_ok
}

fn in_unit_interval(v: &Rational) -> bool {
    !v.is_negative() && *v <= 1
}

pub fn pasm_contains(x: &RatMatrix) -> bool {
    x.row_prefix_sums().iter().all(in_unit_interval)
        && x.column_prefix_sums().iter().all(in_unit_interval)
}

/// Membership in the sign-matrix polytope: column partial sums in `[0,1]`,
/// row partial sums `>= 0` with no upper bound.
pub fn signmatrix_contains(x: &RatMatrix) -> bool {
    x.column_prefix_sums().iter().all(in_unit_interval)
        && x.row_prefix_sums().iter().all(|v| !v.is_negative())
}

/// `PASM(m,n)` equals the sign-matrix polytope cut by the row partial sum
/// bounds `<= 1`. Returns whether both sides agree on `x`.
pub fn lemma_intersection_check(x: &RatMatrix) -> bool {
    let cut = signmatrix_contains(x) && x.row_prefix_sums().iter().all(|v| *v <= 1);
    pasm_contains(x) == cut
}

fn cell_ineq(
    m: usize,
    n: usize,
    cells: impl IntoIterator<Item = (usize, usize)>,
    rel: Relation,
    rhs: i64,
) -> LinearInequality {
    LinearInequality::indicator(m * n, cells.into_iter().map(|(i, j)| i * n + j), rel, rhs)
}

fn row_prefix(m: usize, n: usize, i: usize, j: usize, rel: Relation, rhs: i64) -> LinearInequality {
    cell_ineq(m, n, (0..=j).map(|jj| (i, jj)), rel, rhs)
}

fn col_prefix(m: usize, n: usize, i: usize, j: usize, rel: Relation, rhs: i64) -> LinearInequality {
    cell_ineq(m, n, (0..=i).map(|ii| (ii, j)), rel, rhs)
}

/// `X >= 0`, row sums `<= 1`, column sums `<= 1`.
pub fn pperm_inequalities(m: usize, n: usize) -> Vec<LinearInequality> {
    let mut out: Vec<_> = (0..m * n)
        .map(|k| cell_ineq(m, n, [(k / n, k % n)], Relation::Ge, 0))
        .collect();
    out.extend((0..m).map(|i| row_prefix(m, n, i, n - 1, Relation::Le, 1)));
    out.extend((0..n).map(|j| col_prefix(m, n, m - 1, j, Relation::Le, 1)));
    out
}

/// All `4mn` partial sum bounds: column partial sums in `[0,1]`, then row
/// partial sums in `[0,1]`.
pub fn pasm_inequalities(m: usize, n: usize) -> Vec<LinearInequality> {
    let mut out = Vec::with_capacity(4 * m * n);
    for i in 0..m {
        for j in 0..n {
            out.push(col_prefix(m, n, i, j, Relation::Ge, 0));
            out.push(col_prefix(m, n, i, j, Relation::Le, 1));
        }
    }
    for i in 0..m {
        for j in 0..n {
            out.push(row_prefix(m, n, i, j, Relation::Ge, 0));
            out.push(row_prefix(m, n, i, j, Relation::Le, 1));
        }
    }
    out
}

fn require_nondegenerate(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::DegenerateSize { m, n });
    }
    Ok(())
}

/// The `mn + m + n` facets of `PPerm(m,n)`.
pub fn pperm_facets(m: usize, n: usize) -> Result<Vec<LinearInequality>> {
    require_nondegenerate(m, n)?;
    Ok(pperm_inequalities(m, n))
}

/// The `4mn - 3m - 3n + 5` facets of `PASM(m,n)` (1-based indices in the
/// comments):
/// row partial sums `>= 0` for `i >= 2`; row partial sums `<= 1` for
/// `i, j >= 2`; column partial sums `>= 0` for `j >= 2`; column partial
/// sums `<= 1` for `i, j >= 2`; the full first column sum `<= 1`; the full
/// first row sum `<= 1`; `X11 >= 0`.
pub fn pasm_facets(m: usize, n: usize) -> Result<Vec<LinearInequality>> {
    require_nondegenerate(m, n)?;
    let mut out = Vec::new();
    for i in 1..m {
        for j in 0..n {
            out.push(row_prefix(m, n, i, j, Relation::Ge, 0));
        }
    }
    for i in 1..m {
        for j in 1..n {
            out.push(row_prefix(m, n, i, j, Relation::Le, 1));
        }
    }
    for i in 0..m {
        for j in 1..n {
            out.push(col_prefix(m, n, i, j, Relation::Ge, 0));
        }
    }
    for i in 1..m {
        for j in 1..n {
            out.push(col_prefix(m, n, i, j, Relation::Le, 1));
        }
    }
    out.push(col_prefix(m, n, m - 1, 0, Relation::Le, 1));
    out.push(row_prefix(m, n, 0, n - 1, Relation::Le, 1));
    out.push(cell_ineq(m, n, [(0, 0)], Relation::Ge, 0));
    Ok(out)
}

pub fn pperm_facet_count(m: usize, n: usize) -> usize {
    m * n + m + n
}

pub fn pasm_facet_count(m: usize, n: usize) -> usize {
    4 * m * n + 5 - 3 * m - 3 * n
}

/// Vertices as flat row-major vectors, in enumeration order.
pub fn vertex_vectors(kind: MatrixKind, m: usize, n: usize) -> Vec<RatVector> {
    let mats = match kind {
        MatrixKind::PPerm => enumerate_partial_perms(m, n),
        MatrixKind::Pasm => enumerate_pasms(m, n),
    };
    mats.iter()
        .map(|x| RatMatrix::from(x).into_entries())
        .collect()
}

/// The vertices of the H-polytope among the lattice points of
/// `{-1,0,1}^{mn}`, as matrices in enumeration order.
pub fn h_polytope_lattice_vertices(kind: MatrixKind, m: usize, n: usize) -> Result<Vec<IntMatrix>> {
    let ineqs = match kind {
        MatrixKind::PPerm => pperm_inequalities(m, n),
        MatrixKind::Pasm => pasm_inequalities(m, n),
    };
    lattice_vertices(m * n, -1, 1, &ineqs)?
        .into_iter()
        .map(|e| IntMatrix::new(m, n, e))
        .collect()
}

/// The set `C_M` of cells whose column partial sum equals 1, and the
/// hyperplane `sum_{C_M} c_ij(X) - sum_{not C_M} c_ij(X) = |C_M| - 1/2`
/// written in the coordinates `X_ij`.
pub fn separating_hyperplane(mat: &IntMatrix) -> Result<Hyperplane> {
    if !is_pasm(mat) {
        return Err(Error::NotPasm);
    }
    let (m, n) = (mat.rows(), mat.cols());
    let c = mat.column_prefix_sums();
    let sign = |k: usize| if c[k] == 1 { 1i64 } else { -1 };
    let in_c = c.iter().filter(|&&v| v == 1).count() as i64;
    // coefficient of X[i'][j] collects the signs of all c[i][j] with i >= i'
    let mut coeffs = vec![Rational::zero(); m * n];
    for j in 0..n {
        let mut acc = 0i64;
        for i in (0..m).rev() {
            acc += sign(i * n + j);
            coeffs[i * n + j] = Rational::from(acc);
        }
    }
    Hyperplane::new(coeffs, Rational::from(in_c) - Rational::frac(1, 2))
}

/// Whether the hyperplane of `mat` puts `mat` strictly above and every
/// other PASM of the same size strictly below.
pub fn separates(mat: &IntMatrix, others: &[IntMatrix]) -> Result<bool> {
    let h = separating_hyperplane(mat)?;
    let val = |x: &IntMatrix| h.value(RatMatrix::from(x).entries());
    Ok(val(mat) > h.rhs && others.iter().filter(|o| *o != mat).all(|o| val(o) < h.rhs))
}

/// A convex combination `sum lambda_k M_k` with distinct vertices listed in
/// increasing matrix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexDecomposition {
    pub terms: Vec<(Rational, IntMatrix)>,
}

impl ConvexDecomposition {
    pub fn reconstruct(&self) -> Option<RatMatrix> {
        let (_, first) = self.terms.first()?;
        let mut acc = RatMatrix::zero(first.rows(), first.cols());
        for (lambda, v) in &self.terms {
            acc = acc.add_scaled(&RatMatrix::from(v), lambda);
        }
        Some(acc)
    }

    /// Positive weights summing to one, PASM vertices, exact reconstruction.
    pub fn is_valid_for(&self, x: &RatMatrix) -> bool {
        let weights_ok = self.terms.iter().all(|(l, _)| l.is_positive())
            && self.terms.iter().map(|(l, _)| l).sum::<Rational>() == Rational::one();
        let vertices_ok = self.terms.iter().all(|(_, v)| is_pasm(v));
        weights_ok && vertices_ok && self.reconstruct().as_ref() == Some(x)
    }

    fn from_map(map: BTreeMap<IntMatrix, Rational>) -> Self {
        ConvexDecomposition {
            terms: map.into_iter().map(|(v, l)| (l, v)).collect(),
        }
    }
}

impl Serialize for ConvexDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            lambda: &'a Rational,
            vertex: &'a IntMatrix,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(lambda, vertex)| Term { lambda, vertex })
            .collect();
        let mut s = serializer.serialize_struct("ConvexDecomposition", 1)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// One step of the decomposition: `X = w+ X+ + w- X-` with
/// `X+ = X + l+ D`, `X- = X - l- D`, `w+ = l-/(l+ + l-)`, `w- = l+/(l+ + l-)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    /// 0-based corner cells in trail order.
    pub corners: Vec<(usize, usize)>,
    /// `+1` or `-1` per corner; the first is `+1`.
    pub signs: Vec<i64>,
    pub l_plus: Rational,
    pub l_minus: Rational,
    pub x_plus: RatMatrix,
    pub x_minus: RatMatrix,
    pub weight_plus: Rational,
    pub weight_minus: Rational,
}

/// A trail of inner-labelled edges: a path between two boundary edges or a
/// simple cycle, as its edge sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trail {
    pub edges: Vec<Edge>,
    pub closed: bool,
}

fn other_end(grid: &GridGraph, e: Edge, from: (usize, usize)) -> Node {
    let (a, b) = grid.endpoints(e);
    if a == Node::Internal(from.0, from.1) {
        b
    } else {
        a
    }
}

/// Builds the trail used to split `x`, or `None` when no edge label is inner.
///
/// Starts at the first inner right boundary edge (by row), else the first
/// inner bottom boundary edge (by column), else the first internal vertex in
/// row-major order with an inner edge. At each vertex the walk leaves by the
/// first inner edge in the order right, down, left, up other than the edge
/// it arrived by, and stops on reaching the exterior or a visited vertex.
pub fn find_trail(x: &RatMatrix) -> Result<Option<Trail>> {
    let labels = hat(x);
    let grid = labels.base;
    let (m, n) = (grid.m, grid.n);
    let inner = |e: Edge| labels.label(e).is_inner();

    let mut edges: Vec<Edge> = Vec::new();
    let mut visited: HashMap<(usize, usize), usize> = HashMap::new();
    let boundary_start = (0..m)
        .map(|i| (Edge::Horizontal(i, n - 1), (i, n - 1)))
        .chain((0..n).map(|j| (Edge::Vertical(m - 1, j), (m - 1, j))))
        .find(|&(e, _)| inner(e));
    let mut current = match boundary_start {
        Some((e, v)) => {
            edges.push(e);
            v
        }
        None => {
            let Some(v) = (0..m * n)
                .map(|k| (k / n, k % n))
                .find(|&(i, j)| grid.incident(i, j).into_iter().any(inner))
            else {
                return Ok(None);
            };
            v
        }
    };
    visited.insert(current, edges.len());
    loop {
        let last = edges.last().copied();
        let Some(out) = grid
            .incident(current.0, current.1)
            .into_iter()
            .find(|&e| inner(e) && Some(e) != last)
        else {
            return Err(Error::Invariant(format!(
                "trail stuck at vertex {current:?}: partial sum identity violated"
            )));
        };
        edges.push(out);
        match other_end(&grid, out, current) {
            Node::Exterior => {
                return Ok(Some(Trail {
                    edges,
                    closed: false,
                }))
            }
            Node::Internal(i, j) => {
                if let Some(&pos) = visited.get(&(i, j)) {
                    return Ok(Some(Trail {
                        edges: edges[pos..].to_vec(),
                        closed: true,
                    }));
                }
                visited.insert((i, j), edges.len());
                current = (i, j);
            }
        }
    }
}

/// Role of edge `e` at internal vertex `v`: `(is_horizontal, sign)` with
/// sign `+1` for the right/down edge and `-1` for the left/up edge.
fn role(e: Edge, v: (usize, usize)) -> (bool, i64) {
    match e {
        Edge::Horizontal(i, j) => (true, if (i, j) == v { 1 } else { -1 }),
        Edge::Vertical(i, j) => (false, if (i, j) == v { 1 } else { -1 }),
    }
}

fn shared_vertex(grid: &GridGraph, a: Edge, b: Edge) -> Option<(usize, usize)> {
    let (a0, a1) = grid.endpoints(a);
    let (b0, b1) = grid.endpoints(b);
    [a0, a1]
        .into_iter()
        .filter(|p| *p == b0 || *p == b1)
        .find_map(|p| match p {
            Node::Internal(i, j) => Some((i, j)),
            Node::Exterior => None,
        })
}

/// Corner cells of a trail with the entry changes that move every trail
/// label by the same magnitude and leave every other label fixed. The first
/// corner gets `+1`.
pub fn trail_corners(grid: &GridGraph, trail: &Trail) -> Result<Vec<((usize, usize), i64)>> {
    let k = trail.edges.len();
    let pairs = if trail.closed { k } else { k - 1 };
    let mut delta = 1i64;
    let mut corners = Vec::new();
    for t in 0..pairs {
        let (a, b) = (trail.edges[t], trail.edges[(t + 1) % k]);
        let v = shared_vertex(grid, a, b)
            .ok_or_else(|| Error::Invariant("consecutive trail edges do not meet".into()))?;
        let (ha, sa) = role(a, v);
        let (hb, sb) = role(b, v);
        if ha != hb {
            // entry change equals sign(in) * delta(in) = sign(out) * delta(out)
            let dx = sa * delta;
            delta = dx * sb;
            corners.push((v, dx));
        }
    }
    if trail.closed && delta != 1 {
        return Err(Error::Invariant(
            "cycle perturbation does not close up".into(),
        ));
    }
    if corners.is_empty() {
        return Err(Error::Invariant("trail without corners".into()));
    }
    if corners.windows(2).any(|w| w[0].1 == w[1].1) || corners.len() % 2 == 1 && trail.closed {
        return Err(Error::Invariant("corner signs do not alternate".into()));
    }
    if corners[0].1 < 0 {
        for c in corners.iter_mut() {
            c.1 = -c.1;
        }
    }
    Ok(corners)
}

/// Largest `l` with every partial sum of `x + l * d` in `[0,1]`, over the
/// partial sums that `d` changes. `None` when `d` changes nothing.
fn max_step(x: &RatMatrix, d: &RatMatrix) -> Option<Rational> {
    let xs = x
        .row_prefix_sums()
        .into_iter()
        .chain(x.column_prefix_sums());
    let ds = d
        .row_prefix_sums()
        .into_iter()
        .chain(d.column_prefix_sums());
    xs.zip(ds)
        .filter(|(_, dv)| !dv.is_zero())
        .map(|(p, dv)| {
            if dv.is_positive() {
                (Rational::one() - p) / dv
            } else {
                p / (-dv)
            }
        })
        .min()
}

fn split_from_delta(x: &RatMatrix, corners: Vec<((usize, usize), i64)>) -> Result<Split> {
    let mut d = RatMatrix::zero(x.rows(), x.cols());
    for &((i, j), s) in &corners {
        d.set(i, j, Rational::from(s));
    }
    let l_plus = max_step(x, &d)
        .ok_or_else(|| Error::Invariant("perturbation changes no partial sum".into()))?;
    let l_minus = max_step(x, &d.scale(&Rational::from(-1)))
        .ok_or_else(|| Error::Invariant("perturbation changes no partial sum".into()))?;
    if !l_plus.is_positive() || !l_minus.is_positive() {
        return Err(Error::Invariant(format!(
            "degenerate split: l+ = {l_plus}, l- = {l_minus}"
        )));
    }
    let total = &l_plus + &l_minus;
    Ok(Split {
        corners: corners.iter().map(|c| c.0).collect(),
        signs: corners.iter().map(|c| c.1).collect(),
        x_plus: x.add_scaled(&d, &l_plus),
        x_minus: x.add_scaled(&d, &-&l_minus),
        weight_plus: &l_minus / &total,
        weight_minus: &l_plus / &total,
        l_plus,
        l_minus,
    })
}

/// The split along the trail chosen by [`find_trail`]; `None` when `x` is
/// already a PASM.
pub fn first_split(x: &RatMatrix) -> Result<Option<Split>> {
    if !pasm_contains(x) {
        return Err(Error::OutsidePolytope);
    }
    let Some(trail) = find_trail(x)? else {
        return Ok(None);
    };
    let grid = GridGraph::new(x.rows(), x.cols());
    let corners = trail_corners(&grid, &trail)?;
    split_from_delta(x, corners).map(Some)
}

/// The split obtained by signing the given corner cells alternately,
/// starting with `+`.
pub fn split_with_corners(x: &RatMatrix, corners: &[(usize, usize)]) -> Result<Split> {
    if !pasm_contains(x) {
        return Err(Error::OutsidePolytope);
    }
    if let Some(&(i, j)) = corners
        .iter()
        .find(|&&(i, j)| i >= x.rows() || j >= x.cols())
    {
        return Err(Error::DimensionMismatch(format!(
            "corner ({i},{j}) outside the matrix"
        )));
    }
    let signed = corners
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, if k % 2 == 0 { 1 } else { -1 }))
        .collect();
    split_from_delta(x, signed)
}

fn non_inner_count(x: &RatMatrix) -> usize {
    x.row_prefix_sums()
        .iter()
        .chain(&x.column_prefix_sums())
        .filter(|v| !v.is_inner())
        .count()
}

fn as_vertex(x: &RatMatrix) -> Result<IntMatrix> {
    x.to_int_matrix()
        .filter(is_pasm)
        .ok_or_else(|| Error::Invariant("split terminated at a non-PASM point".into()))
}

/// Follows `X+` until no label is inner. Each step fixes at least one more
/// partial sum and keeps every fixed one, so at most `2mn` steps are taken.
fn descend_to_vertex(x: &RatMatrix) -> Result<IntMatrix> {
    let limit = 2 * x.rows() * x.cols();
    let mut current = x.clone();
    for _ in 0..=limit {
        let Some(split) = first_split(&current)? else {
            return as_vertex(&current);
        };
        if non_inner_count(&split.x_plus) <= non_inner_count(&current) {
            return Err(Error::Invariant("split made no progress".into()));
        }
        current = split.x_plus;
    }
    Err(Error::Invariant("descent exceeded 2mn steps".into()))
}

/// Writes `x` as a convex combination of PASMs.
///
/// Repeatedly descends along `X+` splits to a vertex `V` of the smallest
/// face containing the current point `Y`, then removes `V` with the largest
/// weight `t` keeping `(Y - tV)/(1 - t)` in the polytope. Every round fixes
/// one more partial sum, so there are at most `2mn + 1` terms.
pub fn decompose_pasm(x: &RatMatrix) -> Result<ConvexDecomposition> {
    if !pasm_contains(x) {
        return Err(Error::OutsidePolytope);
    }
    let limit = 2 * x.rows() * x.cols() + 1;
    let mut acc: BTreeMap<IntMatrix, Rational> = BTreeMap::new();
    let mut remaining = Rational::one();
    let mut current = x.clone();
    for _ in 0..limit {
        if find_trail(&current)?.is_none() {
            *acc.entry(as_vertex(&current)?)
                .or_insert_with(Rational::zero) += &remaining;
            return Ok(ConvexDecomposition::from_map(acc));
        }
        let v = descend_to_vertex(&current)?;
        let vr = RatMatrix::from(&v);
        let sums = |a: &RatMatrix| {
            a.row_prefix_sums()
                .into_iter()
                .chain(a.column_prefix_sums())
        };
        let t = sums(&current)
            .zip(sums(&vr))
            .filter(|(p, _)| p.is_inner())
            .map(|(p, pv)| if pv.is_zero() { Rational::one() - p } else { p })
            .min()
            .ok_or_else(|| Error::Invariant("no inner label to bound the peel".into()))?;
        *acc.entry(v).or_insert_with(Rational::zero) += &(&remaining * &t);
        let rest = Rational::one() - &t;
        current = current
            .add_scaled(&vr, &-&t)
            .scale(&(Rational::one() / &rest));
        remaining *= &rest;
    }
    Err(Error::Invariant(
        "decomposition exceeded 2mn + 1 rounds".into(),
    ))
}

/// The two-branch recursion `X = w+ X+ + w- X-` applied to both children.
/// Its cost is exponential in the number of inner labels, so the recursion
/// refuses to grow beyond `max_leaves` leaves.
pub fn decompose_pasm_binary(x: &RatMatrix, max_leaves: usize) -> Result<ConvexDecomposition> {
    if !pasm_contains(x) {
        return Err(Error::OutsidePolytope);
    }
    let mut acc = BTreeMap::new();
    let mut leaves = 0usize;
    let mut stack = vec![(x.clone(), Rational::one(), 0usize)];
    let depth_limit = 2 * x.rows() * x.cols();
    while let Some((y, w, depth)) = stack.pop() {
        if depth > depth_limit {
            return Err(Error::Invariant("recursion deeper than 2mn".into()));
        }
        match first_split(&y)? {
            None => {
                leaves += 1;
                if leaves > max_leaves {
                    return Err(Error::SizeLimit(format!("more than {max_leaves} leaves")));
                }
                *acc.entry(as_vertex(&y)?).or_insert_with(Rational::zero) += &w;
            }
            Some(s) => {
                stack.push((s.x_minus, &w * &s.weight_minus, depth + 1));
                stack.push((s.x_plus, &w * &s.weight_plus, depth + 1));
            }
        }
    }
    Ok(ConvexDecomposition::from_map(acc))
}

/// The face lattice of `PASM(m,n)` with each face labelled by the union of
/// the basic sum-labelings of its vertices.
#[derive(Clone, Debug, Serialize)]
pub struct PasmFaceLattice {
    pub m: usize,
    pub n: usize,
    pub poset: GradedPoset,
    pub labels: Vec<SumLabeling>,
    pub regions: Vec<i64>,
}

/// Outcome of comparing the oracle lattice with the sum-labeling poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceLatticeReport {
    pub faces: usize,
    pub sum_labelings: usize,
    pub labels_injective: bool,
    pub order_preserved: bool,
    pub dims_match_regions: bool,
    pub labels_are_all_sum_labelings: bool,
    pub isomorphic: bool,
    pub pass: bool,
}

pub const MAX_FACE_LATTICE_CELLS: usize = 9;

pub fn pasm_face_lattice(m: usize, n: usize) -> Result<PasmFaceLattice> {
    if m * n > MAX_FACE_LATTICE_CELLS {
        return Err(Error::SizeLimit(format!(
            "face lattice of PASM({m},{n}) needs m*n <= {MAX_FACE_LATTICE_CELLS}"
        )));
    }
    let verts = enumerate_pasms(m, n);
    let points: Vec<RatVector> = verts
        .iter()
        .map(|v| RatMatrix::from(v).into_entries())
        .collect();
    let poset = faces_from_vh(&points, &pasm_inequalities(m, n))?;
    let labels = poset
        .faces
        .iter()
        .map(|f| crate::gridgraph::union_of_basic(f.vertices.iter().map(|&k| &verts[k])))
        .collect::<Result<Vec<_>>>()?;
    let regions = labels.iter().map(regions).collect();
    Ok(PasmFaceLattice {
        m,
        n,
        poset,
        labels,
        regions,
    })
}

/// Labelings packed as two bit masks: edges whose label contains 0, and
/// edges whose label contains 1. `None` is the empty labelling.
fn pack(l: &SumLabeling, grid: &GridGraph) -> Option<(u64, u64)> {
    if l.is_empty() {
        return None;
    }
    let mut zero = 0u64;
    let mut one = 0u64;
    for (k, e) in grid.edges().enumerate() {
        let lab = l.label(e).expect("nonempty labelling");
        if lab.contains(EdgeLabel::ZERO) {
            zero |= 1 << k;
        }
        if lab.contains(EdgeLabel::ONE) {
            one |= 1 << k;
        }
    }
    Some((zero, one))
}

fn packed_le(a: Option<(u64, u64)>, b: Option<(u64, u64)>) -> bool {
    match (a, b) {
        (None, _) => true,
        (_, None) => false,
        (Some(a), Some(b)) => a.0 & !b.0 == 0 && a.1 & !b.1 == 0,
    }
}

/// All sum-labelings of the `m x n` grid (unions of nonempty sets of basic
/// labelings) plus the empty labelling, ordered by containment, graded by
/// region count.
pub fn sum_labeling_poset(m: usize, n: usize) -> Result<(GradedPoset, Vec<SumLabeling>)> {
    if m * n > MAX_FACE_LATTICE_CELLS {
        return Err(Error::SizeLimit(format!(
            "sum-labeling poset of {m}x{n} needs m*n <= {MAX_FACE_LATTICE_CELLS}"
        )));
    }
    let basics: Vec<SumLabeling> = enumerate_pasms(m, n)
        .iter()
        .map(basic_sum_labeling)
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<SumLabeling> = basics.iter().cloned().collect();
    let mut queue: VecDeque<SumLabeling> = basics.iter().cloned().collect();
    while let Some(l) = queue.pop_front() {
        for b in &basics {
            let u = l.union(b)?;
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    let mut all: Vec<SumLabeling> = std::iter::once(SumLabeling::Empty).chain(seen).collect();
    all.sort_by_key(|l| (regions(l), l.clone()));
    let grid = GridGraph::new(m, n);
    let packed: Vec<Option<(u64, u64)>> = all.iter().map(|l| pack(l, &grid)).collect();
    let strict = |a: usize, b: usize| a != b && packed_le(packed[a], packed[b]);
    let mut covers = Vec::new();
    for a in 0..all.len() {
        let above: Vec<usize> = (0..all.len()).filter(|&b| strict(a, b)).collect();
        for &b in &above {
            if !above.iter().any(|&c| strict(c, b)) {
                covers.push((a, b));
            }
        }
    }
    let dims = all.iter().map(regions).collect();
    Ok((GradedPoset::from_covers(dims, covers), all))
}

/// Checks that face -> union of vertex labelings is an order isomorphism
/// onto the sum-labelings with dimension equal to region count.
pub fn verify_pasm_face_lattice(m: usize, n: usize) -> Result<FaceLatticeReport> {
    let lattice = pasm_face_lattice(m, n)?;
    let (label_poset, all_labels) = sum_labeling_poset(m, n)?;
    let faces = &lattice.poset.faces;
    let distinct: BTreeSet<&SumLabeling> = lattice.labels.iter().collect();
    let labels_injective = distinct.len() == faces.len();
    let labels_are_all_sum_labelings =
        distinct.len() == all_labels.len() && all_labels.iter().all(|l| distinct.contains(l));
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut order_preserved = true;
    for (a, fa) in faces.iter().enumerate() {
        for (b, fb) in faces.iter().enumerate() {
            let by_faces = subset(&fa.vertices, &fb.vertices);
            let by_labels = lattice.labels[a].is_contained_in(&lattice.labels[b])?;
            order_preserved &= by_faces == by_labels;
        }
    }
    let dims_match_regions = faces.iter().zip(&lattice.regions).all(|(f, &r)| f.dim == r);
    let isomorphic = poset_isomorphic(&lattice.poset, &label_poset);
    let pass = labels_injective
        && order_preserved
        && dims_match_regions
        && labels_are_all_sum_labelings
        && isomorphic;
    Ok(FaceLatticeReport {
        faces: faces.len(),
        sum_labelings: all_labels.len(),
        labels_injective,
        order_preserved,
        dims_match_regions,
        labels_are_all_sum_labelings,
        isomorphic,
        pass,
    })
}
