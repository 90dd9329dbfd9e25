//! The grid graph of an `m x n` matrix, its partial-sum labelling, and
//! sum-labelings with their region counts.
//!
//! Internal vertex `(i, j)` (0-based) carries `X[i][j]`. It has a right edge
//! `H(i, j)` labelled by the row partial sum `r[i][j]` and a down edge
//! `V(i, j)` labelled by the column partial sum `c[i][j]`. The edges
//! `H(i, n-1)` and `V(m-1, j)` end at boundary vertices.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::matrices::{is_pasm, IntMatrix};
use crate::ratmatrix::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridGraph {
    pub m: usize,
    pub n: usize,
}

/// An edge of the grid graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    /// From `(i, j)` to `(i, j+1)`, or to the boundary when `j = n-1`.
    Horizontal(usize, usize),
    /// From `(i, j)` to `(i+1, j)`, or to the boundary when `i = m-1`.
    Vertical(usize, usize),
}

/// An endpoint of an edge: an internal vertex or the common exterior point
/// that all right and bottom boundary vertices are identified with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Internal(usize, usize),
    Exterior,
}

impl GridGraph {
    pub fn new(m: usize, n: usize) -> Self {
        assert!(m > 0 && n > 0, "grid dimensions must be positive");
        GridGraph { m, n }
    }

    pub fn edge_count(&self) -> usize {
        2 * self.m * self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let (m, n) = (self.m, self.n);
        (0..m * n)
            .map(move |k| Edge::Horizontal(k / n, k % n))
            .chain((0..m * n).map(move |k| Edge::Vertical(k / n, k % n)))
    }

    pub fn is_boundary(&self, e: Edge) -> bool {
        match e {
            Edge::Horizontal(_, j) => j + 1 == self.n,
            Edge::Vertical(i, _) => i + 1 == self.m,
        }
    }

    pub fn endpoints(&self, e: Edge) -> (Node, Node) {
        match e {
            Edge::Horizontal(i, j) if j + 1 == self.n => (Node::Internal(i, j), Node::Exterior),
            Edge::Horizontal(i, j) => (Node::Internal(i, j), Node::Internal(i, j + 1)),
            Edge::Vertical(i, j) if i + 1 == self.m => (Node::Internal(i, j), Node::Exterior),
            Edge::Vertical(i, j) => (Node::Internal(i, j), Node::Internal(i + 1, j)),
        }
    }

    /// Edges at `(i, j)` in the order right, down, left, up.
    pub fn incident(&self, i: usize, j: usize) -> Vec<Edge> {
        let mut out = vec![Edge::Horizontal(i, j), Edge::Vertical(i, j)];
        if j > 0 {
            out.push(Edge::Horizontal(i, j - 1));
        }
        if i > 0 {
            out.push(Edge::Vertical(i - 1, j));
        }
        out
    }

    /// Flat index into the row-major label arrays.
    pub fn cell(&self, e: Edge) -> usize {
        match e {
            Edge::Horizontal(i, j) | Edge::Vertical(i, j) => i * self.n + j,
        }
    }
}

/// The labelled graph of a rational matrix: entries on vertices, row
/// partial sums on horizontal edges and column partial sums on vertical ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGrid {
    pub base: GridGraph,
    pub vertex: Vec<Rational>,
    pub horiz: Vec<Rational>,
    pub vert: Vec<Rational>,
}

impl LabeledGrid {
    pub fn label(&self, e: Edge) -> &Rational {
        match e {
            Edge::Horizontal(..) => &self.horiz[self.base.cell(e)],
            Edge::Vertical(..) => &self.vert[self.base.cell(e)],
        }
    }

    /// Checks `r[i][j] + c[i-1][j] = c[i][j] + r[i][j-1]` at every internal
    /// vertex, with `r[i][-1] = c[-1][j] = 0`.
    pub fn local_identity_holds(&self) -> bool {
        let n = self.base.n;
        (0..self.base.m).all(|i| {
            (0..n).all(|j| {
                let zero = Rational::zero();
                let left = if j > 0 {
                    &self.horiz[i * n + j - 1]
                } else {
                    &zero
                };
                let up = if i > 0 {
                    &self.vert[(i - 1) * n + j]
                } else {
                    &zero
                };
                &self.horiz[i * n + j] + up == &self.vert[i * n + j] + left
            })
        })
    }
}

pub fn hat(x: &RatMatrix) -> LabeledGrid {
    LabeledGrid {
        base: GridGraph::new(x.rows(), x.cols()),
        vertex: x.entries().to_vec(),
        horiz: x.row_prefix_sums(),
        vert: x.column_prefix_sums(),
    }
}

/// A nonempty subset of {0, 1}, stored as a two-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel(u8);

impl EdgeLabel {
    pub const ZERO: EdgeLabel = EdgeLabel(0b01);
    pub const ONE: EdgeLabel = EdgeLabel(0b10);
    pub const BOTH: EdgeLabel = EdgeLabel(0b11);

    pub fn singleton(value: i64) -> Option<EdgeLabel> {
        match value {
            0 => Some(EdgeLabel::ZERO),
            1 => Some(EdgeLabel::ONE),
            _ => None,
        }
    }

    pub fn is_both(self) -> bool {
        self == EdgeLabel::BOTH
    }

    pub fn contains(self, other: EdgeLabel) -> bool {
        self.0 & other.0 == other.0
    }

    fn as_str(self) -> &'static str {
        match self.0 {
            0b01 => "0",
            0b10 => "1",
            _ => "01",
        }
    }

    fn parse(s: &str) -> Option<EdgeLabel> {
        match s {
            "0" => Some(EdgeLabel::ZERO),
            "1" => Some(EdgeLabel::ONE),
            "01" | "10" => Some(EdgeLabel::BOTH),
            _ => None,
        }
    }
}

impl fmt::Debug for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A labelling of every edge by {0}, {1} or {0,1}, or the distinguished
/// empty labelling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumLabeling {
    Empty,
    Labels {
        m: usize,
        n: usize,
        horiz: Vec<EdgeLabel>,
        vert: Vec<EdgeLabel>,
    },
}

impl SumLabeling {
    pub fn uniform(m: usize, n: usize, label: EdgeLabel) -> SumLabeling {
        SumLabeling::Labels {
            m,
            n,
            horiz: vec![label; m * n],
            vert: vec![label; m * n],
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SumLabeling::Empty)
    }

    pub fn label(&self, e: Edge) -> Option<EdgeLabel> {
        match self {
            SumLabeling::Empty => None,
            SumLabeling::Labels { n, horiz, vert, .. } => Some(match e {
                Edge::Horizontal(i, j) => horiz[i * n + j],
                Edge::Vertical(i, j) => vert[i * n + j],
            }),
        }
    }

    fn dims(&self) -> Option<(usize, usize)> {
        match self {
            SumLabeling::Empty => None,
            SumLabeling::Labels { m, n, .. } => Some((*m, *n)),
        }
    }

    fn check_same_grid(&self, other: &SumLabeling) -> Result<()> {
        match (self.dims(), other.dims()) {
            (Some(a), Some(b)) if a != b => Err(Error::DimensionMismatch(format!(
                "labelings of {}x{} and {}x{} grids",
                a.0, a.1, b.0, b.1
            ))),
            _ => Ok(()),
        }
    }

    /// Edgewise union; the empty labelling is the identity.
    pub fn union(&self, other: &SumLabeling) -> Result<SumLabeling> {
        self.check_same_grid(other)?;
        Ok(match (self, other) {
            (SumLabeling::Empty, x) | (x, SumLabeling::Empty) => x.clone(),
            (
                SumLabeling::Labels { m, n, horiz, vert },
                SumLabeling::Labels {
                    horiz: h2,
                    vert: v2,
                    ..
                },
            ) => SumLabeling::Labels {
                m: *m,
                n: *n,
                horiz: horiz
                    .iter()
                    .zip(h2)
                    .map(|(a, b)| EdgeLabel(a.0 | b.0))
                    .collect(),
                vert: vert
                    .iter()
                    .zip(v2)
                    .map(|(a, b)| EdgeLabel(a.0 | b.0))
                    .collect(),
            },
        })
    }

    /// Edgewise intersection. An edge whose labels are disjoint makes the
    /// whole result the empty labelling.
    pub fn intersection(&self, other: &SumLabeling) -> Result<SumLabeling> {
        self.check_same_grid(other)?;
        Ok(match (self, other) {
            (SumLabeling::Empty, _) | (_, SumLabeling::Empty) => SumLabeling::Empty,
            (
                SumLabeling::Labels { m, n, horiz, vert },
                SumLabeling::Labels {
                    horiz: h2,
                    vert: v2,
                    ..
                },
            ) => {
                let meet = |a: &[EdgeLabel], b: &[EdgeLabel]| -> Option<Vec<EdgeLabel>> {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| {
                            let bits = x.0 & y.0;
                            (bits != 0).then_some(EdgeLabel(bits))
                        })
                        .collect()
                };
                match (meet(horiz, h2), meet(vert, v2)) {
                    (Some(horiz), Some(vert)) => SumLabeling::Labels {
                        m: *m,
                        n: *n,
                        horiz,
                        vert,
                    },
                    _ => SumLabeling::Empty,
                }
            }
        })
    }

    /// Edgewise containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &SumLabeling) -> Result<bool> {
        self.check_same_grid(other)?;
        Ok(match (self, other) {
            (SumLabeling::Empty, _) => true,
            (_, SumLabeling::Empty) => false,
            (
                SumLabeling::Labels { horiz, vert, .. },
                SumLabeling::Labels {
                    horiz: h2,
                    vert: v2,
                    ..
                },
            ) => {
                horiz.iter().zip(h2).all(|(a, b)| b.contains(*a))
                    && vert.iter().zip(v2).all(|(a, b)| b.contains(*a))
            }
        })
    }

    /// The PASM whose basic labelling this is, if every label is a singleton.
    pub fn to_matrix(&self) -> Option<IntMatrix> {
        let SumLabeling::Labels { m, n, vert, .. } = self else {
            return None;
        };
        let value = |l: EdgeLabel| match l {
            EdgeLabel::ZERO => Some(0i64),
            EdgeLabel::ONE => Some(1),
            _ => None,
        };
        let mut entries = Vec::with_capacity(m * n);
        for i in 0..*m {
            for j in 0..*n {
                let c = value(vert[i * n + j])?;
                let above = if i > 0 {
                    value(vert[(i - 1) * n + j])?
                } else {
                    0
                };
                entries.push(c - above);
            }
        }
        let matrix = IntMatrix::new(*m, *n, entries).ok()?;
        (is_pasm(&matrix) && basic_sum_labeling(&matrix).ok().as_ref() == Some(self))
            .then_some(matrix)
    }
}

impl fmt::Debug for SumLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumLabeling::Empty => f.write_str("EMPTY"),
            SumLabeling::Labels { horiz, vert, .. } => {
                write!(f, "H{horiz:?} V{vert:?}")
            }
        }
    }
}

pub fn basic_sum_labeling(m: &IntMatrix) -> Result<SumLabeling> {
    if !is_pasm(m) {
        return Err(Error::NotPasm);
    }
    let to_labels = |sums: Vec<i64>| -> Vec<EdgeLabel> {
        sums.into_iter()
            .map(|s| EdgeLabel::singleton(s).expect("PASM partial sums lie in {0,1}"))
            .collect()
    };
    Ok(SumLabeling::Labels {
        m: m.rows(),
        n: m.cols(),
        horiz: to_labels(m.row_prefix_sums()),
        vert: to_labels(m.column_prefix_sums()),
    })
}

/// `g(M_1) ∪ ... ∪ g(M_r)`; the empty collection gives the empty labelling.
pub fn union_of_basic<'a>(
    matrices: impl IntoIterator<Item = &'a IntMatrix>,
) -> Result<SumLabeling> {
    let mut acc = SumLabeling::Empty;
    for m in matrices {
        acc = acc.union(&basic_sum_labeling(m)?)?;
    }
    Ok(acc)
}

/// Bounded regions of the subgraph of {0,1}-labelled edges, with every
/// boundary edge ending at one shared exterior point: the cyclomatic number
/// `E - V + C` of that subgraph. The empty labelling has `-1` regions.
pub fn regions(delta: &SumLabeling) -> i64 {
    let SumLabeling::Labels { m, n, .. } = delta else {
        return -1;
    };
    let grid = GridGraph::new(*m, *n);
    let exterior = m * n;
    let mut dsu = Dsu::new(m * n + 1);
    let mut touched = vec![false; m * n + 1];
    let mut edges = 0i64;
    for e in grid.edges() {
        if !delta.label(e).is_some_and(EdgeLabel::is_both) {
            continue;
        }
        edges += 1;
        let id = |node: Node| match node {
            Node::Internal(i, j) => i * n + j,
            Node::Exterior => exterior,
        };
        let (a, b) = grid.endpoints(e);
        let (a, b) = (id(a), id(b));
        touched[a] = true;
        touched[b] = true;
        dsu.union(a, b);
    }
    let vertices = touched.iter().filter(|&&t| t).count() as i64;
    let components = (0..=exterior)
        .filter(|&v| touched[v] && dsu.find(v) == v)
        .count() as i64;
    edges - vertices + components
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(size: usize) -> Self {
        Dsu {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Serialize for SumLabeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SumLabeling::Empty => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("empty", &true)?;
                map.end()
            }
            SumLabeling::Labels { m, n, horiz, vert } => {
                let grid = |labels: &[EdgeLabel]| -> Vec<Vec<&'static str>> {
                    labels
                        .chunks(*n)
                        .map(|row| row.iter().map(|l| l.as_str()).collect())
                        .collect()
                };
                let mut map = serializer.serialize_map(Some(4))?;
                map.serialize_entry("m", m)?;
                map.serialize_entry("n", n)?;
                map.serialize_entry("horiz", &grid(horiz))?;
                map.serialize_entry("vert", &grid(vert))?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for SumLabeling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            empty: bool,
            m: Option<usize>,
            n: Option<usize>,
            horiz: Option<Vec<Vec<String>>>,
            vert: Option<Vec<Vec<String>>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.empty {
            return Ok(SumLabeling::Empty);
        }
        let (Some(m), Some(n), Some(horiz), Some(vert)) = (raw.m, raw.n, raw.horiz, raw.vert)
        else {
            return Err(de::Error::custom(
                "expected {\"empty\":true} or m, n, horiz, vert",
            ));
        };
        let flatten = |rows: Vec<Vec<String>>| -> std::result::Result<Vec<EdgeLabel>, D::Error> {
            if rows.len() != m || rows.iter().any(|r| r.len() != n) {
                return Err(de::Error::custom("label grid does not match m x n"));
            }
            rows.into_iter()
                .flatten()
                .map(|s| {
                    EdgeLabel::parse(&s)
                        .ok_or_else(|| de::Error::custom(format!("bad edge label `{s}`")))
                })
                .collect()
        };
        Ok(SumLabeling::Labels {
            m,
            n,
            horiz: flatten(horiz)?,
            vert: flatten(vert)?,
        })
    }
}
