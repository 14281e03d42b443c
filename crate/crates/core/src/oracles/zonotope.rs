use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{build_arithmetic_matroid, VectorList};
use crate::error::{Error, Result};
use crate::poly::{int, rational_to_string};
use crate::ranked::{aritutte, tutte, SubsetMask};

/// Largest bounding box (in lattice points) that will be enumerated.
pub const MAX_BOX: u64 = 10_000_000;

/// `lo ≤ η·p ≤ hi` for a primitive integer normal `η` inside the span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    #[serde(serialize_with = "ser_ints")]
    pub normal: Vec<BigInt>,
    #[serde(serialize_with = "ser_int")]
    pub lo: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub hi: BigInt,
}

/// Exact H-representation of `Z(X) = {Σ λᵢ xᵢ : 0 ≤ λᵢ ≤ 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZonotopeHRep {
    pub dim: usize,
    pub rank: usize,
    /// Integer basis of the orthogonal complement of the span.
    #[serde(serialize_with = "ser_rows")]
    pub span_perp: Vec<Vec<BigInt>>,
    pub facets: Vec<Facet>,
    /// Per-coordinate bounding box.
    #[serde(serialize_with = "ser_pairs")]
    pub bounds: Vec<(BigInt, BigInt)>,
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_rows<S: serde::Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn ser_pairs<S: serde::Serializer>(v: &[(BigInt, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(a, b)| [a.to_string(), b.to_string()]))
}

/// Basis of `{v : row·v = 0 for every row}` over the rationals.
pub(crate) fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators and divides out the content; first nonzero entry positive.
pub(crate) fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = out.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in out.iter_mut() {
            *x /= &g;
        }
    }
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn require_lattice(x: &VectorList) -> Result<()> {
    if !x.group().is_torsion_free() {
        return Err(Error::Unsupported("zonotopes need a torsion-free group".into()));
    }
    Ok(())
}

pub fn zonotope_hrep(x: &VectorList) -> Result<ZonotopeHRep> {
    require_lattice(x)?;
    let d = x.group().dim();
    let n = x.len();
    let vecs = x.vectors();
    let rank = x.rank_of(SubsetMask::full(n))?;
    let rows: Vec<Vec<BigRational>> = vecs.iter().map(|v| to_rational(v)).collect();
    let span_perp: Vec<Vec<BigInt>> = nullspace(&rows, d).iter().map(|v| primitive(v)).collect();
    let mut normals = BTreeSet::new();
    if rank > 0 {
        for s in SubsetMask::full(n).subsets().filter(|s| s.len() == rank - 1) {
            if x.rank_of(s)? != rank - 1 {
                continue;
            }
            let mut m: Vec<Vec<BigRational>> = s.elements().map(|i| to_rational(&vecs[i])).collect();
            m.extend(span_perp.iter().map(|w| to_rational(w)));
            let ns = nullspace(&m, d);
            debug_assert_eq!(ns.len(), 1);
            normals.insert(primitive(&ns[0]));
        }
    }
    let facets = normals
        .into_iter()
        .map(|eta| {
            let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
            for v in vecs {
                let t = dot(&eta, v);
                if t.is_negative() {
                    lo += t;
                } else {
                    hi += t;
                }
            }
            Facet { normal: eta, lo, hi }
        })
        .collect();
    let bounds = (0..d)
        .map(|j| {
            let lo = vecs.iter().map(|v| v[j].clone()).filter(|t| t.is_negative()).sum();
            let hi = vecs.iter().map(|v| v[j].clone()).filter(|t| t.is_positive()).sum();
            (lo, hi)
        })
        .collect();
    Ok(ZonotopeHRep { dim: d, rank, span_perp, facets, bounds })
}

impl ZonotopeHRep {
    /// Membership; `interior` asks for the relative interior.
    pub fn contains(&self, p: &[BigInt], interior: bool) -> bool {
        if self.span_perp.iter().any(|w| !dot(w, p).is_zero()) {
            return false;
        }
        if self.rank == 0 {
            return p.iter().all(Zero::is_zero);
        }
        self.facets.iter().all(|f| {
            let t = dot(&f.normal, p);
            if interior {
                f.lo < t && t < f.hi
            } else {
                f.lo <= t && t <= f.hi
            }
        })
    }

    fn box_size(&self) -> Option<u64> {
        self.bounds.iter().try_fold(1u64, |acc, (lo, hi)| acc.checked_mul((hi - lo + 1u32).to_u64()?))
    }
}

/// Lattice points of `Z(X)` (or of its relative interior), by enumerating the
/// bounding box.
pub fn count_lattice_points(x: &VectorList, interior: bool) -> Result<BigInt> {
    let h = zonotope_hrep(x)?;
    let size = h.box_size().filter(|&s| s <= MAX_BOX).ok_or_else(|| {
        Error::Resource(format!("bounding box exceeds {MAX_BOX} lattice points"))
    })?;
    let lows: Vec<BigInt> = h.bounds.iter().map(|b| b.0.clone()).collect();
    let widths: Vec<u64> = h.bounds.iter().map(|(lo, hi)| (hi - lo + 1u32).to_u64().expect("bounded")).collect();
    let count = (0..size)
        .into_par_iter()
        .filter(|&idx| {
            let mut rest = idx;
            let p: Vec<BigInt> = lows
                .iter()
                .zip(&widths)
                .map(|(lo, &w)| {
                    let c = rest % w;
                    rest /= w;
                    lo + c
                })
                .collect();
            h.contains(&p, interior)
        })
        .count();
    Ok(BigInt::from(count))
}

/// The list with every vector multiplied by `q`.
pub fn scale_list(x: &VectorList, q: i64) -> Result<VectorList> {
    let vectors = x.vectors().iter().map(|v| v.iter().map(|c| c * q).collect()).collect();
    VectorList::with_labels(x.group().clone(), vectors, x.labels().to_vec())
}

/// `E_X(q) = Σ_{A independent} m(A) q^{|A|}`, as coefficients of `q⁰, q¹, …`.
pub fn ehrhart(x: &VectorList) -> Result<Vec<BigRational>> {
    require_lattice(x)?;
    let m = build_arithmetic_matroid(x)?;
    let mut coeffs = vec![BigRational::zero(); x.len() + 1];
    for a in m.ground().subsets() {
        if m.rank(a).to_int() == Some(a.len() as i64) {
            coeffs[a.len()] += m.mult(a);
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

pub fn eval_univariate(coeffs: &[BigRational], q: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + c)
}

/// `q^k · 𝔗_X(1 + 1/q, 1)`, the closed form tied to the Ehrhart polynomial.
pub fn ehrhart_via_aritutte(x: &VectorList, q: i64, k: u32) -> Result<BigRational> {
    let t = aritutte(&build_arithmetic_matroid(x)?);
    let qr = int(q);
    let v = t.eval(&(int(1) + qr.recip()), &int(1))?;
    Ok(v * num_traits::pow(qr, k as usize))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatContribution {
    pub flat: Vec<String>,
    /// `𝔗_{M|A}(0,1) · T_{M/A}(2,0)`
    pub contribution: String,
    /// `𝔗_{M|A}(0,1)`
    pub relint_formula: String,
    /// Lattice points in the relative interior of `Z(X|_A)`.
    pub relint_count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceDecompositionReport {
    pub aritutte_2_1: String,
    pub sum_all_subsets: String,
    pub sum_flats: String,
    pub lattice_points: String,
    pub flats: Vec<FlatContribution>,
    pub equal: bool,
}

/// Checks `𝔗(2,1) = Σ_A 𝔗_{M|A}(0,1) T_{M/A}(2,0)`, that the sum is carried
/// by flats, that it equals the lattice point count, and that each flat's
/// `𝔗_{M|A}(0,1)` counts the relative interior points of its face.
pub fn verify_face_decomposition(x: &VectorList) -> Result<FaceDecompositionReport> {
    require_lattice(x)?;
    let m = build_arithmetic_matroid(x)?;
    let (zero, one, two) = (int(0), int(1), int(2));
    let total = aritutte(&m).eval(&two, &one)?;
    let mut all = BigRational::zero();
    let mut flats_sum = BigRational::zero();
    let mut flats = Vec::new();
    let mut relint_ok = true;
    for a in m.ground().subsets() {
        let restricted = aritutte(&m.restrict(a)?).eval(&zero, &one)?;
        let term = &restricted * tutte(&m.contract(a)?).eval(&two, &zero)?;
        all += &term;
        let is_flat = m.ground().difference(a).elements().all(|e| m.rank(a.with(e)) != m.rank(a));
        if is_flat {
            flats_sum += &term;
            let count = BigRational::from_integer(count_lattice_points(&x.restrict_list(a)?, true)?);
            relint_ok &= count == restricted;
            flats.push(FlatContribution {
                flat: m.label_set(a),
                contribution: rational_to_string(&term),
                relint_formula: rational_to_string(&restricted),
                relint_count: rational_to_string(&count),
            });
        }
    }
    let points = BigRational::from_integer(count_lattice_points(x, false)?);
    let equal = total == all && all == flats_sum && flats_sum == points && relint_ok;
    Ok(FaceDecompositionReport {
        aritutte_2_1: rational_to_string(&total),
        sum_all_subsets: rational_to_string(&all),
        sum_flats: rational_to_string(&flats_sum),
        lattice_points: rational_to_string(&points),
        flats,
        equal,
    })
}
