use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::mask::SubsetMask;
use super::set::RankedSet;
use crate::error::Result;
use crate::poly::{int, BiLaurent, HalfInt};

/// A minor `(M|_S)/C` of a root ranked set, addressed by masks of the root.
///
/// Restriction and contraction of a minor are again minors of the same
/// root, so nested convolutions never materialize intermediate sets.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Minor<'a> {
    pub(crate) root: &'a RankedSet,
    ground: SubsetMask,
    contracted: SubsetMask,
}

impl<'a> Minor<'a> {
    pub(crate) fn whole(root: &'a RankedSet) -> Self {
        Minor { root, ground: root.ground(), contracted: SubsetMask::EMPTY }
    }

    pub(crate) fn key(&self) -> (u32, u32) {
        (self.ground.bits(), self.contracted.bits())
    }

    pub(crate) fn elements(&self) -> SubsetMask {
        self.ground.difference(self.contracted)
    }

    pub(crate) fn size(&self) -> usize {
        self.elements().len()
    }

    pub(crate) fn rank(&self, b: SubsetMask) -> HalfInt {
        self.root.rank(b.union(self.contracted)) - self.root.rank(self.contracted)
    }

    pub(crate) fn mult(&self, b: SubsetMask) -> &'a BigRational {
        self.root.mult(b.union(self.contracted))
    }

    pub(crate) fn total_rank(&self) -> HalfInt {
        self.rank(self.elements())
    }

    pub(crate) fn restrict(&self, a: SubsetMask) -> Minor<'a> {
        debug_assert!(a.is_subset_of(self.elements()));
        Minor { root: self.root, ground: self.contracted.union(a), contracted: self.contracted }
    }

    pub(crate) fn contract(&self, a: SubsetMask) -> Minor<'a> {
        debug_assert!(a.is_subset_of(self.elements()));
        Minor { root: self.root, ground: self.ground, contracted: self.contracted.union(a) }
    }

    /// `Σ_B w(B) x^{r(E)−r(B)} y^{|B|−r(B)}`, i.e. the (arithmetic) Tutte
    /// function in shifted variables.
    pub(crate) fn rank_generating(&self, weighted: bool) -> BiLaurent {
        let elems = self.elements();
        let total = self.total_rank();
        let mut out = BiLaurent::zero();
        for b in elems.subsets() {
            let r = self.rank(b);
            let c = if weighted { self.mult(b).clone() } else { BigRational::one() };
            out.add_term(total - r, HalfInt::from_int(b.len() as i64) - r, c);
        }
        out
    }
}

/// A Tutte-type function of a ranked set.
///
/// For general rank functions `T_M(x, y)` is only a rational function; what
/// is always a Laurent polynomial is `T_M(x+1, y+1)`, which is what gets
/// stored. [`expanded`](Self::expanded) recovers `T_M(x, y)` in the
/// standard variables whenever it is a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteFunction {
    shifted: BiLaurent,
}

impl TutteFunction {
    pub fn from_shifted(shifted: BiLaurent) -> Self {
        TutteFunction { shifted }
    }

    /// `T(x+1, y+1)`.
    pub fn shifted(&self) -> &BiLaurent {
        &self.shifted
    }

    pub fn into_shifted(self) -> BiLaurent {
        self.shifted
    }

    pub fn is_polynomial(&self) -> bool {
        self.shifted.is_polynomial()
    }

    /// `T(x, y)` in the standard variables.
    pub fn expanded(&self) -> Result<BiLaurent> {
        self.shifted.translate(&int(-1), &int(-1))
    }

    /// Exact value at `(x0, y0)`.
    pub fn eval(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational> {
        let one = BigRational::one();
        self.shifted.eval(&(x0 - &one), &(y0 - &one))
    }

    /// `T(x0, y+1)` as a Laurent polynomial in `y`.
    pub fn at_x(&self, x0: &BigRational) -> Result<BiLaurent> {
        self.shifted.eval_x(&(x0 - BigRational::one()))
    }

    /// `T(x+1, y0)` as a Laurent polynomial in `x`.
    pub fn at_y(&self, y0: &BigRational) -> Result<BiLaurent> {
        self.shifted.eval_y(&(y0 - BigRational::one()))
    }
}

impl Serialize for TutteFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serde_json::Map::new();
        match self.expanded() {
            Ok(p) => {
                map.insert("terms".into(), p.to_term_json());
            }
            Err(_) => {
                map.insert("shifted".into(), true.into());
                map.insert("terms".into(), self.shifted.to_term_json());
            }
        }
        serde_json::Value::Object(map).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TutteFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let terms = v.get("terms").ok_or_else(|| D::Error::custom("missing `terms`"))?;
        let p = BiLaurent::from_term_json(terms).map_err(D::Error::custom)?;
        if v.get("shifted").and_then(|s| s.as_bool()).unwrap_or(false) {
            Ok(TutteFunction::from_shifted(p))
        } else {
            let shifted = p.translate(&int(1), &int(1)).map_err(D::Error::custom)?;
            Ok(TutteFunction::from_shifted(shifted))
        }
    }
}

/// `T_M(x,y) = Σ_A (x−1)^{rk(M)−rk(A)} (y−1)^{|A|−rk(A)}`.
pub fn tutte(m: &RankedSet) -> TutteFunction {
    TutteFunction::from_shifted(Minor::whole(m).rank_generating(false))
}

/// `𝔗_M(x,y) = Σ_A m(A) (x−1)^{rk(M)−rk(A)} (y−1)^{|A|−rk(A)}`.
pub fn aritutte(m: &RankedSet) -> TutteFunction {
    TutteFunction::from_shifted(Minor::whole(m).rank_generating(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn uniform(r: usize, n: usize) -> RankedSet {
        RankedSet::from_fn(RankedSet::default_labels(n), |a| h(a.len().min(r) as i64), |_| int(1)).unwrap()
    }

    #[test]
    fn empty_set_is_one() {
        let e = RankedSet::empty(int(1));
        assert_eq!(tutte(&e).expanded().unwrap(), BiLaurent::one());
        let e3 = RankedSet::empty(int(3));
        assert_eq!(aritutte(&e3).expanded().unwrap(), BiLaurent::from_int(3));
    }

    #[test]
    fn coloop_is_x() {
        let coloop = RankedSet::with_unit_mult(vec!["e".into()], vec![h(0), h(1)]).unwrap();
        assert_eq!(tutte(&coloop).expanded().unwrap(), BiLaurent::x());
        let lp = coloop.dualize();
        assert_eq!(tutte(&lp).expanded().unwrap(), BiLaurent::y());
    }

    #[test]
    fn uniform_2_4_counts_bases() {
        // brute force: number of 2-subsets of a 4-set with rank 2
        let m = uniform(2, 4);
        let bases = m.ground().subsets().filter(|a| a.len() == 2 && m.rank(*a) == h(2)).count();
        assert_eq!(bases, 6);
        assert_eq!(tutte(&m).eval(&int(1), &int(1)).unwrap(), int(bases as i64));
        // x^2 + 2x + 2y + y^2
        let t = tutte(&m).expanded().unwrap();
        let expected = &(&(&BiLaurent::x().pow_int(2) + &BiLaurent::x().scale(&int(2)))
            + &BiLaurent::y().scale(&int(2)))
            + &BiLaurent::y().pow_int(2);
        assert_eq!(t, expected);
    }

    #[test]
    fn unit_mult_collapses_to_tutte() {
        let m = RankedSet::from_fn(RankedSet::default_labels(3), |a| h(a.len().min(2) as i64), |a| int(a.bits() as i64 + 1))
            .unwrap();
        assert_eq!(aritutte(&m.with_unit()), tutte(&m));
        assert_ne!(aritutte(&m), tutte(&m));
    }

    #[test]
    fn non_polynomial_stays_shifted() {
        // rank({e}) = 2 > |{e}|: exponent |A| − rk(A) = −1
        let m = RankedSet::with_unit_mult(vec!["e".into()], vec![h(0), h(2)]).unwrap();
        let t = tutte(&m);
        assert!(!t.is_polynomial());
        assert!(t.expanded().is_err());
        assert_eq!(t.eval(&int(3), &int(2)).unwrap(), int(4 + 1));
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"shifted\":true"));
        assert_eq!(serde_json::from_str::<TutteFunction>(&json).unwrap(), t);
    }

    #[test]
    fn json_uses_standard_variables_for_polynomials() {
        let t = tutte(&uniform(1, 2));
        let json = serde_json::to_string(&t).unwrap();
        assert!(!json.contains("shifted"));
        assert_eq!(serde_json::from_str::<TutteFunction>(&json).unwrap(), t);
    }
}
