//! Seeded random inputs for verification runs.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{build_arithmetic_matroid, FGGroup, IntMatrix, VectorList};
use crate::builders::{DeltaMatroid, Edge, LabeledGraph};
use crate::error::Result;
use crate::poly::HalfInt;
use crate::ranked::{RankedSet, SubsetMask};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `X = ((2,0), (−1,1), (1,1))` in `Z²`.
pub fn worked_example() -> VectorList {
    VectorList::free(2, &[vec![2, 0], vec![-1, 1], vec![1, 1]]).expect("valid list")
}

fn random_rational(rng: &mut CorpusRng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4)))
}

/// Arbitrary integer ranks with `rank(∅) = 0` and rational multiplicities.
pub fn random_ranked_set(rng: &mut CorpusRng, max_n: usize) -> RankedSet {
    let n = rng.gen_range(0..=max_n);
    let rank = (0..1u32 << n)
        .map(|a| if a == 0 { HalfInt::ZERO } else { HalfInt::from_int(rng.gen_range(-2..=4)) })
        .collect();
    let mult = (0..1u32 << n).map(|_| random_rational(rng)).collect();
    RankedSet::new(RankedSet::default_labels(n), rank, mult).expect("valid ranked set")
}

/// Same ranks as `m`, fresh random multiplicities.
pub fn with_random_mult(rng: &mut CorpusRng, m: &RankedSet) -> RankedSet {
    let mult = (0..1u32 << m.len()).map(|_| random_rational(rng)).collect();
    m.with_mult(mult).expect("same size")
}

pub fn random_entries(rng: &mut CorpusRng, len: usize, bound: i64) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

/// `N` vectors in `Z^d` with `1 ≤ d ≤ max_d`, `0 ≤ N ≤ max_n`, entries in `[−bound, bound]`.
pub fn random_lattice_list(rng: &mut CorpusRng, max_d: usize, max_n: usize, bound: i64) -> VectorList {
    let d = rng.gen_range(1..=max_d);
    let n = rng.gen_range(0..=max_n);
    let vectors = (0..n).map(|_| random_entries(rng, d, bound)).collect();
    VectorList::new(FGGroup::free(d), vectors).expect("valid list")
}

/// Lists in `Z^r ⊕ T` with `r ≤ max_free`, invariant factors of `T` at most
/// 4, and at most `max_n` elements.
pub fn random_torsion_list(rng: &mut CorpusRng, max_free: usize, max_n: usize) -> VectorList {
    const CHAINS: [&[i64]; 6] = [&[], &[2], &[3], &[4], &[2, 2], &[2, 4]];
    let free = rng.gen_range(0..=max_free);
    let chain: Vec<BigInt> = CHAINS[rng.gen_range(0..CHAINS.len())].iter().map(|&x| BigInt::from(x)).collect();
    let group = FGGroup::new(free, chain.clone()).expect("valid chain");
    let n = rng.gen_range(0..=max_n);
    let vectors = (0..n)
        .map(|_| {
            let mut v = random_entries(rng, free, 3);
            v.extend(chain.iter().map(|t| BigInt::from(rng.gen_range(0..t.try_into().unwrap_or(2i64)))));
            v
        })
        .collect();
    VectorList::new(group, vectors).expect("valid list")
}

/// Each vector multiplied by a random factor in `1..=3`; the underlying
/// matroid is unchanged.
pub fn rescaled(rng: &mut CorpusRng, x: &VectorList) -> VectorList {
    let vectors = x
        .vectors()
        .iter()
        .map(|v| {
            let c = rng.gen_range(1i64..=3);
            v.iter().map(|e| e * c).collect()
        })
        .collect();
    VectorList::with_labels(x.group().clone(), vectors, x.labels().to_vec()).expect("same shape")
}

pub fn random_matrix(rng: &mut CorpusRng, max_rows: usize, max_cols: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let data: Vec<Vec<BigInt>> = (0..rows).map(|_| random_entries(rng, cols, bound)).collect();
    IntMatrix::from_rows(&data)
}

/// Determinant over GF(2) of a principal submatrix of a 0/1 matrix.
fn gf2_nonsingular(adj: &[u32], a: SubsetMask) -> bool {
    let idx: Vec<usize> = a.elements().collect();
    let mut rows: Vec<u32> =
        idx.iter().map(|&i| SubsetMask(adj[i]).intersection(a).compress(a).bits()).collect();
    let k = rows.len();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| rows[r] >> c & 1 == 1) else { return false };
        rows.swap(c, p);
        for r in 0..k {
            if r != c && rows[r] >> c & 1 == 1 {
                rows[r] ^= rows[c];
            }
        }
    }
    true
}

/// Even delta-matroid: either the nonsingular principal minors of a random
/// zero-diagonal symmetric GF(2) matrix twisted by a random set, or the bases
/// of a random represented matroid.
pub fn random_even_delta(rng: &mut CorpusRng, max_n: usize) -> DeltaMatroid {
    let n = rng.gen_range(1..=max_n);
    let labels = RankedSet::default_labels(n);
    if rng.gen_bool(0.7) {
        let mut adj = vec![0u32; n];
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let twist = SubsetMask(rng.gen_range(0..1u32 << n));
        let feasible =
            SubsetMask::full(n).subsets().filter(|&a| gf2_nonsingular(&adj, a)).map(|a| a.symmetric_difference(twist));
        DeltaMatroid::new(labels, feasible.collect()).expect("principal minors form a delta-matroid")
    } else {
        let d = rng.gen_range(1..=3);
        let vectors = (0..n).map(|_| random_entries(rng, d, 2)).collect();
        let x = VectorList::new(FGGroup::free(d), vectors).expect("valid list");
        DeltaMatroid::from_matroid_bases(&build_arithmetic_matroid(&x).expect("small")).expect("bases")
    }
}

/// Graphs with `≤ max_v` vertices, `≤ max_e` edges, labels `≤ max_label`,
/// and at most `max_dotted` dotted edges.
pub fn random_graph(rng: &mut CorpusRng, max_v: usize, max_e: usize, max_label: u64, max_dotted: usize) -> LabeledGraph {
    let n = rng.gen_range(2..=max_v);
    let m = rng.gen_range(1..=max_e);
    let mut dotted = 0;
    let edges = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            let is_dotted = dotted < max_dotted && rng.gen_bool(0.3);
            dotted += usize::from(is_dotted);
            Edge { u, v, label: rng.gen_range(1..=max_label), dotted: is_dotted }
        })
        .collect();
    LabeledGraph::new(n, edges).expect("valid graph")
}

/// Ranks from a random lattice list, so the rank function is a matroid's.
pub fn random_matroid(rng: &mut CorpusRng, max_n: usize) -> Result<RankedSet> {
    let x = random_lattice_list(rng, 3, max_n, 2);
    Ok(build_arithmetic_matroid(&x)?.with_unit())
}
