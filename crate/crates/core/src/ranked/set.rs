use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mask::{SubsetMask, MAX_GROUND};
use crate::error::{Error, Result};
use crate::poly::HalfInt;

/// A finite ground set with a rank and a multiplicity value on every subset.
///
/// Both maps are stored densely, indexed by [`SubsetMask`]. The only
/// structural requirement is `rank(∅) = 0`; matroid, polymatroid and
/// arithmetic axioms are checked separately in [`crate::axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedSet {
    labels: Vec<String>,
    rank: Vec<HalfInt>,
    mult: Vec<BigRational>,
}

pub(crate) fn check_ground_size(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MAX_GROUND) {
        return Err(Error::Resource(format!(
            "ground set of size {n} exceeds the power-set cap of {}",
            cap.min(MAX_GROUND)
        )));
    }
    Ok(())
}

impl RankedSet {
    pub fn new(labels: Vec<String>, rank: Vec<HalfInt>, mult: Vec<BigRational>) -> Result<Self> {
        let m = Self::new_lenient(labels, rank, mult)?;
        if m.rank[0] != HalfInt::ZERO {
            return Err(Error::arg(format!("rank of the empty set is {}, expected 0", m.rank[0])));
        }
        Ok(m)
    }

    /// Like [`new`](Self::new) but accepts `rank(∅) ≠ 0`, so that the axiom
    /// validators can report it. Nothing else in the crate assumes such
    /// inputs are meaningful.
    pub fn new_lenient(labels: Vec<String>, rank: Vec<HalfInt>, mult: Vec<BigRational>) -> Result<Self> {
        let n = labels.len();
        check_ground_size(n, MAX_GROUND)?;
        let size = 1usize << n;
        if rank.len() != size || mult.len() != size {
            return Err(Error::arg(format!(
                "power-set maps must have {size} entries, got rank {} and mult {}",
                rank.len(),
                mult.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::arg(format!("duplicate element label `{l}`")));
            }
        }
        Ok(RankedSet { labels, rank, mult })
    }

    /// Builds both maps by calling the given functions on every subset.
    pub fn from_fn(
        labels: Vec<String>,
        mut rank: impl FnMut(SubsetMask) -> HalfInt,
        mut mult: impl FnMut(SubsetMask) -> BigRational,
    ) -> Result<Self> {
        check_ground_size(labels.len(), MAX_GROUND)?;
        let full = SubsetMask::full(labels.len());
        let rank_v = full.subsets().map(&mut rank).collect();
        let mult_v = full.subsets().map(&mut mult).collect();
        Self::new(labels, rank_v, mult_v)
    }

    /// Multiplicity identically one.
    pub fn with_unit_mult(labels: Vec<String>, rank: Vec<HalfInt>) -> Result<Self> {
        let mult = vec![BigRational::one(); rank.len()];
        Self::new(labels, rank, mult)
    }

    pub fn empty(mult: BigRational) -> Self {
        RankedSet { labels: Vec::new(), rank: vec![HalfInt::ZERO], mult: vec![mult] }
    }

    /// Default labels `e1, e2, …`.
    pub fn default_labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn rank(&self, a: SubsetMask) -> HalfInt {
        self.rank[a.index()]
    }

    pub fn mult(&self, a: SubsetMask) -> &BigRational {
        &self.mult[a.index()]
    }

    pub fn total_rank(&self) -> HalfInt {
        self.rank(self.ground())
    }

    pub fn ranks(&self) -> &[HalfInt] {
        &self.rank
    }

    pub fn mults(&self) -> &[BigRational] {
        &self.mult
    }

    pub fn label_set(&self, a: SubsetMask) -> Vec<String> {
        a.elements().map(|i| self.labels[i].clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut m = SubsetMask::EMPTY;
        for l in labels {
            let l = l.as_ref();
            let i = self.index_of(l).ok_or_else(|| Error::arg(format!("unknown element `{l}`")))?;
            m = m.with(i);
        }
        Ok(m)
    }

    fn check_subset(&self, a: SubsetMask) -> Result<()> {
        if !a.is_subset_of(self.ground()) {
            return Err(Error::arg(format!("{a:?} is not a subset of the ground set")));
        }
        Ok(())
    }

    /// `M|_A`: ground `A`, both maps restricted.
    pub fn restrict(&self, a: SubsetMask) -> Result<RankedSet> {
        self.check_subset(a)?;
        let labels = a.elements().map(|i| self.labels[i].clone()).collect();
        let local = SubsetMask::full(a.len());
        Ok(RankedSet {
            labels,
            rank: local.subsets().map(|b| self.rank(b.expand(a))).collect(),
            mult: local.subsets().map(|b| self.mult(b.expand(a)).clone()).collect(),
        })
    }

    /// `M/A`: ground `M∖A`, `rank(B) = rank(B∪A) − rank(A)`, `m(B) = m(B∪A)`.
    pub fn contract(&self, a: SubsetMask) -> Result<RankedSet> {
        self.check_subset(a)?;
        let rest = self.ground().difference(a);
        let labels = rest.elements().map(|i| self.labels[i].clone()).collect();
        let local = SubsetMask::full(rest.len());
        let base = self.rank(a);
        Ok(RankedSet {
            labels,
            rank: local.subsets().map(|b| self.rank(b.expand(rest).union(a)) - base).collect(),
            mult: local.subsets().map(|b| self.mult(b.expand(rest).union(a)).clone()).collect(),
        })
    }

    /// Dual: `rank*(A) = |A| − rank(M) + rank(M∖A)`, `m*(A) = m(M∖A)`.
    pub fn dualize(&self) -> RankedSet {
        let full = self.ground();
        let total = self.total_rank();
        RankedSet {
            labels: self.labels.clone(),
            rank: full
                .subsets()
                .map(|a| HalfInt::from_int(a.len() as i64) - total + self.rank(full.difference(a)))
                .collect(),
            mult: full.subsets().map(|a| self.mult(full.difference(a)).clone()).collect(),
        }
    }

    /// Same ground and rank, multiplicity replaced.
    pub fn with_mult(&self, mult: Vec<BigRational>) -> Result<RankedSet> {
        Self::new(self.labels.clone(), self.rank.clone(), mult)
    }

    pub fn with_unit(&self) -> RankedSet {
        RankedSet { labels: self.labels.clone(), rank: self.rank.clone(), mult: vec![BigRational::one(); self.rank.len()] }
    }

    pub(crate) fn check_same_rank(&self, other: &RankedSet) -> Result<()> {
        if self.labels != other.labels || self.rank != other.rank {
            return Err(Error::arg("ranked sets do not share ground set and rank function"));
        }
        Ok(())
    }

    /// Pointwise product of the multiplicity maps over a shared rank function.
    pub fn product_mult(&self, other: &RankedSet) -> Result<RankedSet> {
        self.check_same_rank(other)?;
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a * b).collect();
        Ok(RankedSet { labels: self.labels.clone(), rank: self.rank.clone(), mult })
    }

    /// Relabels by a permutation: element `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<RankedSet> {
        let n = self.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::arg("not a permutation of the ground set"));
        }
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        let image = |a: SubsetMask| SubsetMask::from_indices(a.elements().map(|i| perm[i]));
        let mut rank = vec![HalfInt::ZERO; self.rank.len()];
        let mut mult = vec![BigRational::zero(); self.mult.len()];
        for a in self.ground().subsets() {
            let b = image(a);
            rank[b.index()] = self.rank(a);
            mult[b.index()] = self.mult(a).clone();
        }
        Ok(RankedSet { labels, rank, mult })
    }

    /// True when every multiplicity is a positive integer.
    pub fn has_positive_integer_mult(&self) -> bool {
        self.mult.iter().all(|m| m.is_integer() && m > &BigRational::zero())
    }

    /// True when every rank value is an integer.
    pub fn has_integer_rank(&self) -> bool {
        self.rank.iter().all(|r| r.is_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn sample() -> RankedSet {
        // uniform rank 2 on 3 elements, m(A) = 1 + |A| + bits
        RankedSet::from_fn(
            RankedSet::default_labels(3),
            |a| h(a.len().min(2) as i64),
            |a| int(1 + a.len() as i64 + a.bits() as i64),
        )
        .unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(RankedSet::new(vec!["a".into()], vec![h(1), h(1)], vec![int(1), int(1)]).is_err());
        assert!(RankedSet::new(vec!["a".into()], vec![h(0)], vec![int(1)]).is_err());
        assert!(RankedSet::new(vec!["a".into(), "a".into()], vec![h(0); 4], vec![int(1); 4]).is_err());
        assert!(matches!(
            RankedSet::from_fn(RankedSet::default_labels(25), |_| h(0), |_| int(1)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn restrict_edges() {
        let m = sample();
        assert_eq!(m.restrict(m.ground()).unwrap(), m);
        let e = m.restrict(SubsetMask::EMPTY).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.mult(SubsetMask::EMPTY), m.mult(SubsetMask::EMPTY));
        assert!(m.restrict(SubsetMask(0b1000)).is_err());
    }

    #[test]
    fn contract_edges() {
        let m = sample();
        assert_eq!(m.contract(SubsetMask::EMPTY).unwrap(), m);
        let e = m.contract(m.ground()).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.mult(SubsetMask::EMPTY), m.mult(m.ground()));
        let c = m.contract(SubsetMask(0b001)).unwrap();
        assert_eq!(c.labels(), &["e2".to_string(), "e3".to_string()]);
        assert_eq!(c.rank(SubsetMask(0b01)), h(1));
        assert_eq!(c.rank(SubsetMask(0b11)), h(1));
        assert_eq!(c.mult(SubsetMask(0b10)), m.mult(SubsetMask(0b101)));
    }

    #[test]
    fn dual_of_coloop_is_loop() {
        let coloop = RankedSet::with_unit_mult(vec!["e".into()], vec![h(0), h(1)]).unwrap();
        let d = coloop.dualize();
        assert_eq!(d.rank(SubsetMask(1)), h(0));
        assert_eq!(d.dualize(), coloop);
        let m = sample();
        assert_eq!(m.dualize().mult(SubsetMask::EMPTY), m.mult(m.ground()));
        assert_eq!(m.dualize().dualize(), m);
    }

    #[test]
    fn product_requires_same_rank() {
        let m = sample();
        assert_eq!(m.product_mult(&m.with_unit()).unwrap(), m);
        let other = RankedSet::from_fn(RankedSet::default_labels(3), |a| h(a.len() as i64), |_| int(1)).unwrap();
        assert!(m.product_mult(&other).is_err());
    }

    #[test]
    fn permutation_moves_values() {
        let m = sample();
        let p = m.permute(&[2, 0, 1]).unwrap();
        assert_eq!(p.labels(), &["e2".to_string(), "e3".to_string(), "e1".to_string()]);
        assert_eq!(p.mult(SubsetMask(0b100)), m.mult(SubsetMask(0b001)));
        assert!(m.permute(&[0, 0, 1]).is_err());
    }
}
