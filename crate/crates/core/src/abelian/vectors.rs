use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::group::{quotient, FGGroup};
use super::snf::{invariant_factors, IntMatrix};
use crate::error::{Error, Result};
use crate::poly::HalfInt;
use crate::ranked::{check_ground_size, RankedSet, SubsetMask, MAX_GROUND};

/// A finite list of elements of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorList {
    group: FGGroup,
    vectors: Vec<Vec<BigInt>>,
    labels: Vec<String>,
}

impl VectorList {
    /// Torsion coordinates are reduced on entry.
    pub fn new(group: FGGroup, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let labels = RankedSet::default_labels(vectors.len());
        Self::with_labels(group, vectors, labels)
    }

    pub fn with_labels(group: FGGroup, vectors: Vec<Vec<BigInt>>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != vectors.len() {
            return Err(Error::arg("one label per vector required"));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::arg(format!("duplicate label {l}")));
        }
        let vectors = vectors.iter().map(|v| group.reduce(v)).collect::<Result<_>>()?;
        Ok(VectorList { group, vectors, labels })
    }

    /// Vectors in `Z^d`.
    pub fn free<T: Into<BigInt> + Clone>(dim: usize, vectors: &[Vec<T>]) -> Result<Self> {
        Self::new(FGGroup::free(dim), vectors.iter().map(|v| v.iter().cloned().map(Into::into).collect()).collect())
    }

    /// Elements of `Z^d ⊕ ⊕ Z/oᵢ` for arbitrary orders; the group is rewritten
    /// in invariant factor form and the vectors carried along.
    pub fn from_orders(free_rank: usize, orders: &[BigInt], vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = free_rank + orders.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::arg(format!("element has length {}, group needs {dim}", v.len())));
        }
        let (group, proj) = FGGroup::from_orders(free_rank, orders)?;
        Self::new(group, vectors.iter().map(|v| proj.apply(v)).collect())
    }

    pub fn group(&self) -> &FGGroup {
        &self.group
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn select(&self, a: SubsetMask) -> Vec<Vec<BigInt>> {
        a.elements().map(|i| self.vectors[i].clone()).collect()
    }

    fn check_mask(&self, a: SubsetMask) -> Result<()> {
        if !a.is_subset_of(SubsetMask::full(self.len())) {
            return Err(Error::arg("subset outside the list"));
        }
        Ok(())
    }

    /// Invariant factors `≠ 1` of `G/⟨A⟩`, zeros for free summands.
    fn quotient_factors(&self, a: SubsetMask) -> Vec<BigInt> {
        let dim = self.group.dim();
        let mut cols = self.group.relations();
        cols.extend(self.select(a));
        let mut diag = invariant_factors(&IntMatrix::from_columns(dim, &cols));
        diag.resize(dim, BigInt::zero());
        diag.retain(|d| !d.is_one());
        diag
    }

    /// `(rank(A), m(A))` from a single Smith normal form.
    pub fn rank_and_multiplicity(&self, a: SubsetMask) -> Result<(usize, BigInt)> {
        self.check_mask(a)?;
        let factors = self.quotient_factors(a);
        let free = factors.iter().filter(|d| d.is_zero()).count();
        let m = factors.iter().filter(|d| !d.is_zero()).product();
        Ok((self.group.free_rank() - free, m))
    }

    /// Rank of `A`: `rank G − rank G/⟨A⟩`.
    pub fn rank_of(&self, a: SubsetMask) -> Result<usize> {
        Ok(self.rank_and_multiplicity(a)?.0)
    }

    /// `m(A) = |torsion of G/⟨A⟩|`.
    pub fn multiplicity(&self, a: SubsetMask) -> Result<BigInt> {
        Ok(self.rank_and_multiplicity(a)?.1)
    }

    pub fn is_independent(&self, a: SubsetMask) -> Result<bool> {
        Ok(self.rank_of(a)? == a.len())
    }

    /// For an independent `A` in a lattice: gcd of all maximal minors of the
    /// matrix with columns `A`.
    pub fn gcd_minors(&self, a: SubsetMask) -> Result<BigInt> {
        if !self.group.is_torsion_free() {
            return Err(Error::Unsupported("gcd of minors needs a torsion-free group".into()));
        }
        if !self.is_independent(a)? {
            return Err(Error::Precondition("gcd of minors needs an independent set".into()));
        }
        let cols = self.select(a);
        let k = cols.len();
        let d = self.group.dim();
        let mut g = BigInt::zero();
        for rows in SubsetMask::full(d).subsets().filter(|s| s.len() == k) {
            let sub: Vec<Vec<BigInt>> =
                rows.elements().map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            let det = if k == 0 { BigInt::one() } else { IntMatrix::from_rows(&sub).determinant() };
            g = g.gcd(&det);
        }
        Ok(g)
    }

    /// `gcd { m(B) : B ⊆ A a basis of A }`. Agrees with `m(A)` for lists in a
    /// lattice; with torsion the two can differ.
    pub fn multiplicity_via_bases(&self, a: SubsetMask) -> Result<BigInt> {
        let r = self.rank_of(a)?;
        let mut g = BigInt::zero();
        for b in a.subsets().filter(|b| b.len() == r) {
            let (rb, mb) = self.rank_and_multiplicity(b)?;
            if rb == r {
                g = g.gcd(&mb);
            }
        }
        Ok(g)
    }

    /// `X|_A`: the sublist, same group.
    pub fn restrict_list(&self, a: SubsetMask) -> Result<VectorList> {
        self.check_mask(a)?;
        Ok(VectorList {
            group: self.group.clone(),
            vectors: self.select(a),
            labels: a.elements().map(|i| self.labels[i].clone()).collect(),
        })
    }

    /// `X/A`: the remaining vectors projected to `G/⟨A⟩`.
    pub fn contract_list(&self, a: SubsetMask) -> Result<VectorList> {
        self.check_mask(a)?;
        let (group, proj) = quotient(&self.group, &self.select(a))?;
        let rest = SubsetMask::full(self.len()).difference(a);
        Ok(VectorList {
            group,
            vectors: rest.elements().map(|i| proj.apply(&self.vectors[i])).collect(),
            labels: rest.elements().map(|i| self.labels[i].clone()).collect(),
        })
    }

    /// Least common multiple of all multiplicities.
    pub fn multiplicity_lcm(&self) -> Result<BigInt> {
        Ok(self.multiplicity_table()?.into_iter().fold(BigInt::one(), |acc, (_, m)| acc.lcm(&m)))
    }

    fn multiplicity_table(&self) -> Result<Vec<(usize, BigInt)>> {
        check_ground_size(self.len(), MAX_GROUND)?;
        let n = self.len();
        (0..1u32 << n)
            .into_par_iter()
            .map(|bits| self.rank_and_multiplicity(SubsetMask(bits)))
            .collect()
    }
}

/// The arithmetic matroid `(rank, m)` of a list, labelled by the list's labels.
pub fn build_arithmetic_matroid(x: &VectorList) -> Result<RankedSet> {
    let table = x.multiplicity_table()?;
    let (rank, mult) = table
        .into_iter()
        .map(|(r, m)| (HalfInt::from_int(r as i64), BigRational::from_integer(m)))
        .unzip();
    RankedSet::new(x.labels.clone(), rank, mult)
}

/// `G_A`: the torsion subgroup of `G/⟨A⟩`, as invariant factors.
pub fn torsion_of_quotient(x: &VectorList, a: SubsetMask) -> Result<Vec<BigInt>> {
    x.check_mask(a)?;
    Ok(x.quotient_factors(a).into_iter().filter(|d| d.is_positive()).collect())
}
