//! The convolution algebra on ranked sets with multiplicities.
//!
//! `(f∘g)(M) = Σ_{A⊆M} f(M|_A) g(M/A)`. Functionals take values in
//! Laurent polynomials; the Tutte-type functionals are always expressed in
//! shifted variables, so `Tutte` with both coordinates free is
//! `T_M(x+1, y+1)`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::set::RankedSet;
use super::tutte::{aritutte, Minor};
use crate::error::{Error, Result};
use crate::poly::{BiLaurent, HalfInt};

/// Which coordinates of a Tutte-type functional are pinned to a value.
///
/// A pinned coordinate is substituted as-is (standard coordinates); a free
/// coordinate is the shifted variable, `x+1` or `y+1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pin {
    pub x: Option<BigRational>,
    pub y: Option<BigRational>,
}

impl Pin {
    pub fn free() -> Self {
        Pin::default()
    }

    pub fn x(x0: BigRational) -> Self {
        Pin { x: Some(x0), y: None }
    }

    pub fn y(y0: BigRational) -> Self {
        Pin { x: None, y: Some(y0) }
    }
}

/// An isomorphism-invariant map from ranked sets to Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvFunctional {
    /// 1 on the empty ground set, 0 otherwise.
    Delta,
    /// `x^{rk(M)} y^{|M|−rk(M)}`.
    Zeta(BiLaurent, BiLaurent),
    /// `m(M) x^{rk(M)} y^{|M|−rk(M)}`.
    Xi(BiLaurent, BiLaurent),
    /// `m(∅) x^{rk(M)} y^{|M|−rk(M)}`.
    XiStar(BiLaurent, BiLaurent),
    Tutte(Pin),
    Aritutte(Pin),
    Convolution(Box<ConvFunctional>, Box<ConvFunctional>),
}

type Cache = HashMap<(usize, usize, u32, u32), BiLaurent>;

impl ConvFunctional {
    /// Looks a functional up by name.
    ///
    /// `delta`, `zeta`, `xi` and `xi_star` take the arguments verbatim.
    /// For `tutte` and `aritutte` an argument equal to its own formal
    /// variable (`x` for the first, `y` for the second) leaves that
    /// coordinate free and a constant argument pins it.
    pub fn named(name: &str, xa: &BiLaurent, ya: &BiLaurent) -> Result<Self> {
        let pin = |arg: &BiLaurent, var: &BiLaurent| -> Result<Option<BigRational>> {
            if arg == var {
                return Ok(None);
            }
            arg.as_constant()
                .map(Some)
                .ok_or_else(|| Error::arg(format!("`{arg}` must be a constant or the formal variable")))
        };
        Ok(match name {
            "delta" => ConvFunctional::Delta,
            "zeta" => ConvFunctional::Zeta(xa.clone(), ya.clone()),
            "xi" => ConvFunctional::Xi(xa.clone(), ya.clone()),
            "xi_star" => ConvFunctional::XiStar(xa.clone(), ya.clone()),
            "tutte" | "aritutte" => {
                let p = Pin { x: pin(xa, &BiLaurent::x())?, y: pin(ya, &BiLaurent::y())? };
                if name == "tutte" {
                    ConvFunctional::Tutte(p)
                } else {
                    ConvFunctional::Aritutte(p)
                }
            }
            other => return Err(Error::arg(format!("unknown functional `{other}`"))),
        })
    }

    pub fn zeta(x: BiLaurent, y: BiLaurent) -> Self {
        ConvFunctional::Zeta(x, y)
    }

    pub fn xi(x: BiLaurent, y: BiLaurent) -> Self {
        ConvFunctional::Xi(x, y)
    }

    pub fn xi_star(x: BiLaurent, y: BiLaurent) -> Self {
        ConvFunctional::XiStar(x, y)
    }

    /// `self ∘ other`.
    pub fn then(self, other: ConvFunctional) -> Self {
        ConvFunctional::Convolution(Box::new(self), Box::new(other))
    }

    pub fn evaluate(&self, m: &RankedSet) -> Result<BiLaurent> {
        let mut cache = Cache::new();
        self.eval(&Minor::whole(m), &mut cache)
    }

    fn monomial_part(x: &BiLaurent, y: &BiLaurent, minor: &Minor) -> Result<BiLaurent> {
        let r = minor.total_rank();
        let n = HalfInt::from_int(minor.size() as i64);
        Ok(&x.pow(r)? * &y.pow(n - r)?)
    }

    fn eval(&self, minor: &Minor, cache: &mut Cache) -> Result<BiLaurent> {
        match self {
            ConvFunctional::Delta => {
                Ok(if minor.size() == 0 { BiLaurent::one() } else { BiLaurent::zero() })
            }
            ConvFunctional::Zeta(x, y) => Self::monomial_part(x, y, minor),
            ConvFunctional::Xi(x, y) => {
                Ok(Self::monomial_part(x, y, minor)?.scale(minor.mult(minor.elements())))
            }
            ConvFunctional::XiStar(x, y) => {
                Ok(Self::monomial_part(x, y, minor)?.scale(minor.mult(Default::default())))
            }
            ConvFunctional::Tutte(pin) => pinned(minor.rank_generating(false), pin),
            ConvFunctional::Aritutte(pin) => pinned(minor.rank_generating(true), pin),
            ConvFunctional::Convolution(f, g) => {
                let (ground, contracted) = minor.key();
                let key = (self as *const _ as usize, minor.root as *const _ as usize, ground, contracted);
                if let Some(v) = cache.get(&key) {
                    return Ok(v.clone());
                }
                let v = convolve_minor(f, minor, g, minor, cache)?;
                cache.insert(key, v.clone());
                Ok(v)
            }
        }
    }
}

fn pinned(shifted: BiLaurent, pin: &Pin) -> Result<BiLaurent> {
    let one = BigRational::one();
    let p = match &pin.x {
        Some(x0) => shifted.eval_x(&(x0 - &one))?,
        None => shifted,
    };
    match &pin.y {
        Some(y0) => p.eval_y(&(y0 - &one)),
        None => Ok(p),
    }
}

/// `Σ_A f(left|_A) g(right/A)` where both minors share elements and rank.
fn convolve_minor(
    f: &ConvFunctional,
    left: &Minor,
    g: &ConvFunctional,
    right: &Minor,
    cache: &mut Cache,
) -> Result<BiLaurent> {
    let mut acc = BiLaurent::zero();
    for a in left.elements().subsets() {
        let fa = f.eval(&left.restrict(a), cache)?;
        if fa.is_zero() {
            continue;
        }
        let gb = g.eval(&right.contract(a), cache)?;
        acc += &(&fa * &gb);
    }
    Ok(acc)
}

/// `(f∘g)(M)` by literal summation over all subsets.
pub fn convolve(f: &ConvFunctional, g: &ConvFunctional, m: &RankedSet) -> Result<BiLaurent> {
    let whole = Minor::whole(m);
    convolve_minor(f, &whole, g, &whole, &mut Cache::new())
}

/// `Σ_A f(M₁|_A) g(M₂/A)` for two ranked sets over the same rank function.
pub fn convolve_pair(f: &ConvFunctional, m1: &RankedSet, g: &ConvFunctional, m2: &RankedSet) -> Result<BiLaurent> {
    m1.check_same_rank(m2)?;
    convolve_minor(f, &Minor::whole(m1), g, &Minor::whole(m2), &mut Cache::new())
}

/// Outcome of checking the two-sided convolution formula.
///
/// All polynomials are in shifted variables: `lhs` is `𝔗_M(x+1, y+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionReport {
    pub identity: &'static str,
    pub coordinates: &'static str,
    pub lhs: BiLaurent,
    pub rhs_form1: BiLaurent,
    pub rhs_form2: BiLaurent,
    pub equal: bool,
}

fn zero_x() -> Pin {
    Pin::x(BigRational::zero())
}

fn zero_y() -> Pin {
    Pin::y(BigRational::zero())
}

/// Checks `𝔗_M(x,y) = Σ_A 𝔗_{M|A}(0,y) T_{M/A}(x,0) = Σ_A T_{M|A}(0,y) 𝔗_{M/A}(x,0)`.
///
/// Fails with `Unsupported` when a pinned evaluation would need a
/// fractional power of `−1`, i.e. for rank functions with non-integral
/// differences.
pub fn verify_theorem1(m: &RankedSet) -> Result<ConvolutionReport> {
    let lhs = aritutte(m).into_shifted();
    let form1 = convolve(&ConvFunctional::Aritutte(zero_x()), &ConvFunctional::Tutte(zero_y()), m)?;
    let form2 = convolve(&ConvFunctional::Tutte(zero_x()), &ConvFunctional::Aritutte(zero_y()), m)?;
    let equal = lhs == form1 && lhs == form2;
    Ok(ConvolutionReport { identity: "theorem1", coordinates: "shifted", lhs, rhs_form1: form1, rhs_form2: form2, equal })
}

/// Checks `𝔗_{m₁m₂}(x,y) = Σ_A 𝔗_{(M,m₁)|A}(0,y) 𝔗_{(M,m₂)/A}(x,0)`.
///
/// `rhs_form2` is the mirrored sum with the roles of `m₁` and `m₂`
/// exchanged, which must agree as well since the product is commutative.
pub fn verify_theorem2(m1: &RankedSet, m2: &RankedSet) -> Result<ConvolutionReport> {
    let product = m1.product_mult(m2)?;
    let lhs = aritutte(&product).into_shifted();
    let form1 = convolve_pair(&ConvFunctional::Aritutte(zero_x()), m1, &ConvFunctional::Aritutte(zero_y()), m2)?;
    let form2 = convolve_pair(&ConvFunctional::Aritutte(zero_x()), m2, &ConvFunctional::Aritutte(zero_y()), m1)?;
    let equal = lhs == form1 && lhs == form2;
    Ok(ConvolutionReport { identity: "theorem2", coordinates: "shifted", lhs, rhs_form1: form1, rhs_form2: form2, equal })
}

/// A single-sided identity `lhs = rhs` between Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub lhs: BiLaurent,
    pub rhs: BiLaurent,
    pub equal: bool,
}

impl IdentityReport {
    fn new(identity: &'static str, lhs: BiLaurent, rhs: BiLaurent) -> Self {
        let equal = lhs == rhs;
        IdentityReport { identity, lhs, rhs, equal }
    }
}

fn var_x() -> BiLaurent {
    BiLaurent::x()
}

fn var_y() -> BiLaurent {
    BiLaurent::y()
}

/// `(ζ(x,y) ∘ ζ(−x,−y))(M) = δ(M)`.
pub fn verify_zeta_inverse(m: &RankedSet) -> Result<IdentityReport> {
    let lhs = convolve(&ConvFunctional::zeta(var_x(), var_y()), &ConvFunctional::zeta(-var_x(), -var_y()), m)?;
    let rhs = ConvFunctional::Delta.evaluate(m)?;
    Ok(IdentityReport::new("zeta-inverse", lhs, rhs))
}

/// `((f∘g)∘h)(M) = (f∘(g∘h))(M)`.
pub fn verify_associativity(
    f: &ConvFunctional,
    g: &ConvFunctional,
    h: &ConvFunctional,
    m: &RankedSet,
) -> Result<IdentityReport> {
    let left = f.clone().then(g.clone()).then(h.clone()).evaluate(m)?;
    let right = f.clone().then(g.clone().then(h.clone())).evaluate(m)?;
    Ok(IdentityReport::new("associativity", left, right))
}

/// The weighted functionals `{δ, ζ(x,y), ξ(x,y), ξ*(x,y)}` with symbolic arguments.
pub fn standard_functionals() -> Vec<ConvFunctional> {
    vec![
        ConvFunctional::Delta,
        ConvFunctional::zeta(var_x(), var_y()),
        ConvFunctional::xi(var_x(), var_y()),
        ConvFunctional::xi_star(var_x(), var_y()),
    ]
}

/// Runs associativity over every ordered triple of [`standard_functionals`].
pub fn verify_associativity_all(m: &RankedSet) -> Result<IdentityReport> {
    let fs = standard_functionals();
    for f in &fs {
        for g in &fs {
            for h in &fs {
                let r = verify_associativity(f, g, h, m)?;
                if !r.equal {
                    return Ok(r);
                }
            }
        }
    }
    let v = ConvFunctional::zeta(var_x(), var_y()).evaluate(m)?;
    Ok(IdentityReport::new("associativity", v.clone(), v))
}

/// `(ξ(1,y)∘ζ(x,1))(M) = 𝔗_M(x+1,y+1)`; with `dual_form`, the left side is
/// `(ζ(1,y)∘ξ*(x,1))(M)` instead.
pub fn verify_lemma13(m: &RankedSet, dual_form: bool) -> Result<IdentityReport> {
    let one = BiLaurent::one();
    let lhs = if dual_form {
        convolve(&ConvFunctional::zeta(one.clone(), var_y()), &ConvFunctional::xi_star(var_x(), one), m)?
    } else {
        convolve(&ConvFunctional::xi(one.clone(), var_y()), &ConvFunctional::zeta(var_x(), one), m)?
    };
    Ok(IdentityReport::new(if dual_form { "lemma13-dual" } else { "lemma13" }, lhs, aritutte(m).into_shifted()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::ranked::{tutte, SubsetMask};

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn sample() -> RankedSet {
        RankedSet::from_fn(
            RankedSet::default_labels(3),
            |a| h([0, 1, 1, 2, 0, 1, 1, 1][a.index()]),
            |a| int([2, 1, 3, 5, 7, 1, 2, 4][a.index()]),
        )
        .unwrap()
    }

    #[test]
    fn delta_is_identity() {
        let m = sample();
        for f in standard_functionals() {
            let direct = f.evaluate(&m).unwrap();
            assert_eq!(convolve(&ConvFunctional::Delta, &f, &m).unwrap(), direct);
            assert_eq!(convolve(&f, &ConvFunctional::Delta, &m).unwrap(), direct);
        }
    }

    #[test]
    fn zeta_one_one_is_one() {
        let one = BiLaurent::one();
        assert_eq!(ConvFunctional::zeta(one.clone(), one).evaluate(&sample()).unwrap(), BiLaurent::one());
    }

    #[test]
    fn xi_star_on_contraction_carries_mult() {
        let m = sample();
        let a = SubsetMask(0b001);
        let minor = m.contract(a).unwrap();
        let v = ConvFunctional::xi_star(var_x(), BiLaurent::one()).evaluate(&minor).unwrap();
        let r = m.total_rank() - m.rank(a);
        assert_eq!(v, BiLaurent::monomial(m.mult(a).clone(), r, HalfInt::ZERO));
    }

    #[test]
    fn lemma12_zeta_convolution_is_shifted_tutte() {
        let m = sample();
        let lhs =
            convolve(&ConvFunctional::zeta(BiLaurent::one(), var_y()), &ConvFunctional::zeta(var_x(), BiLaurent::one()), &m)
                .unwrap();
        assert_eq!(&lhs, tutte(&m).shifted());
    }

    #[test]
    fn lemmas_on_sample() {
        let m = sample();
        assert!(verify_zeta_inverse(&m).unwrap().equal);
        assert!(verify_lemma13(&m, false).unwrap().equal);
        assert!(verify_lemma13(&m, true).unwrap().equal);
        assert!(verify_associativity_all(&m).unwrap().equal);
        assert!(verify_theorem1(&m).unwrap().equal);
    }

    #[test]
    fn theorem1_on_empty_set() {
        let e = RankedSet::empty(int(5));
        let r = verify_theorem1(&e).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, BiLaurent::from_int(5));
    }

    #[test]
    fn theorem2_reduces_to_theorem1() {
        let m = sample();
        let t1 = verify_theorem1(&m).unwrap();
        let t2 = verify_theorem2(&m, &m.with_unit()).unwrap();
        assert!(t2.equal);
        assert_eq!(t2.rhs_form1, t1.rhs_form1);
        let t2b = verify_theorem2(&m.with_unit(), &m).unwrap();
        assert_eq!(t2b.rhs_form1, t1.rhs_form2);
        assert!(verify_theorem2(&m, &m).unwrap().equal);
    }

    #[test]
    fn named_lookup() {
        let x = BiLaurent::x();
        let y = BiLaurent::y();
        assert_eq!(ConvFunctional::named("delta", &x, &y).unwrap(), ConvFunctional::Delta);
        assert_eq!(
            ConvFunctional::named("aritutte", &BiLaurent::zero(), &y).unwrap(),
            ConvFunctional::Aritutte(Pin::x(BigRational::zero()))
        );
        assert!(ConvFunctional::named("tutte", &(&x + &y), &y).is_err());
        assert!(ConvFunctional::named("nope", &x, &y).is_err());
    }

    #[test]
    fn half_integer_rank_theorem1_is_unsupported() {
        let m = RankedSet::with_unit_mult(vec!["a".into()], vec![h(0), HalfInt::from_doubled(1)]).unwrap();
        assert!(matches!(verify_theorem1(&m), Err(Error::Unsupported(_))));
    }
}
