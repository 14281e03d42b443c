use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::{quotient, FGGroup, VectorList};
use crate::error::{Error, Result};
use crate::ranked::{check_ground_size, SubsetMask, MAX_GROUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: u64,
    #[serde(default)]
    pub dotted: bool,
}

/// Loopless multigraph with positive edge labels; edges are regular or dotted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct LabeledGraph {
    #[serde(rename = "n")]
    n_vertices: usize,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for LabeledGraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        LabeledGraph::new(raw.n, raw.edges)
    }
}

impl LabeledGraph {
    pub fn new(n_vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::arg("a graph needs at least one vertex"));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n_vertices || e.v >= n_vertices {
                return Err(Error::arg(format!("edge {i} has an endpoint outside 0..{n_vertices}")));
            }
            if e.u == e.v {
                return Err(Error::arg(format!("edge {i} is a loop")));
            }
            if e.label == 0 {
                return Err(Error::arg(format!("edge {i} has label 0; labels must be positive")));
            }
        }
        Ok(LabeledGraph { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of regular edges, in order; these are the ground set.
    pub fn regular(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| !self.edges[i].dotted).collect()
    }

    pub fn dotted(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].dotted).collect()
    }

    /// `-ℓ` at the tail, `+ℓ` at the head. The default orientation runs from
    /// the lower vertex index to the higher; `flip[i]` reverses edge `i`.
    fn edge_vector(&self, i: usize, flip: bool) -> Vec<BigInt> {
        let e = &self.edges[i];
        let (mut tail, mut head) = (e.u.min(e.v), e.u.max(e.v));
        if flip {
            std::mem::swap(&mut tail, &mut head);
        }
        let mut x = vec![BigInt::zero(); self.n_vertices];
        x[tail] = -BigInt::from(e.label);
        x[head] = BigInt::from(e.label);
        x
    }
}

/// Regular-edge vectors projected into `Z^n / ⟨dotted-edge vectors⟩`.
///
/// `orientation`, if given, has one flag per edge (regular and dotted); a set
/// flag reverses that edge relative to the default.
pub fn graph_to_vectorlist(g: &LabeledGraph, orientation: Option<&[bool]>) -> Result<VectorList> {
    if let Some(o) = orientation {
        if o.len() != g.edges.len() {
            return Err(Error::arg("orientation needs one flag per edge"));
        }
    }
    let flip = |i: usize| orientation.is_some_and(|o| o[i]);
    let dotted: Vec<Vec<BigInt>> = g.dotted().into_iter().map(|i| g.edge_vector(i, flip(i))).collect();
    let (group, proj) = quotient(&FGGroup::free(g.n_vertices), &dotted)?;
    let regular = g.regular();
    let vectors = regular.iter().map(|&i| proj.apply(&g.edge_vector(i, flip(i)))).collect();
    let labels = regular.iter().map(|i| format!("e{}", i + 1)).collect();
    VectorList::with_labels(group, vectors, labels)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Size of a spanning forest of the given edges.
fn forest_rank(g: &LabeledGraph, edges: &[usize]) -> usize {
    let mut uf = UnionFind::new(g.n_vertices);
    edges.iter().filter(|&&i| uf.union(g.edges[i].u, g.edges[i].v)).count()
}

/// `gcd { ∏_{e∈T} ℓ(e) : T a maximal forest of A ∪ D }`, with `A` a subset of
/// the regular edges indexed in the order of [`LabeledGraph::regular`].
pub fn graph_multiplicity_formula(g: &LabeledGraph, a: SubsetMask) -> Result<BigInt> {
    let regular = g.regular();
    if !a.is_subset_of(SubsetMask::full(regular.len())) {
        return Err(Error::arg("subset outside the regular edges"));
    }
    let mut pool: Vec<usize> = a.elements().map(|i| regular[i]).collect();
    pool.extend(g.dotted());
    check_ground_size(pool.len(), MAX_GROUND)?;
    let r = forest_rank(g, &pool);
    let mut acc = BigInt::zero();
    for t in SubsetMask::full(pool.len()).subsets().filter(|t| t.len() == r) {
        let edges: Vec<usize> = t.elements().map(|i| pool[i]).collect();
        if forest_rank(g, &edges) == r {
            let prod: BigInt = edges.iter().map(|&i| BigInt::from(g.edges[i].label)).product();
            acc = acc.gcd(&prod);
        }
    }
    Ok(acc)
}
