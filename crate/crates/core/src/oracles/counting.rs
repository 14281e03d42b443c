use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{torsion_of_quotient, VectorList};
use crate::error::{Error, Result};
use crate::ranked::SubsetMask;

/// Largest number of homomorphisms or flow assignments that will be enumerated.
pub const MAX_ENUMERATION: u64 = 10_000_000;

/// `lcm(X)` and the torsion groups `G_B` of the bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSets {
    pub lcm: BigInt,
    /// `(basis, invariant factors of G_B)`
    pub basis_groups: Vec<(SubsetMask, Vec<BigInt>)>,
}

impl QSets {
    /// `gcd(q, lcm(X)) = 1`
    pub fn in_zm(&self, q: u64) -> bool {
        q > 0 && BigInt::from(q).gcd(&self.lcm).is_one()
    }

    /// `q G_B = 0` for every basis `B`.
    pub fn in_za(&self, q: u64) -> bool {
        let q = BigInt::from(q);
        q > BigInt::from(0u32)
            && self.basis_groups.iter().all(|(_, t)| t.last().is_none_or(|e| q.is_multiple_of(e)))
    }

    /// Class labels for `q`: any of `"Z_A"`, `"Z_M"`.
    pub fn classes(&self, q: u64) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.in_za(q) {
            out.push("Z_A");
        }
        if self.in_zm(q) {
            out.push("Z_M");
        }
        out
    }
}

impl Serialize for QSets {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Basis {
            basis: Vec<usize>,
            torsion: Vec<String>,
        }
        #[derive(Serialize)]
        struct Out {
            lcm: String,
            bases: Vec<Basis>,
        }
        Out {
            lcm: self.lcm.to_string(),
            bases: self
                .basis_groups
                .iter()
                .map(|(b, t)| Basis { basis: b.elements().collect(), torsion: t.iter().map(|x| x.to_string()).collect() })
                .collect(),
        }
        .serialize(s)
    }
}

pub fn qsets(x: &VectorList) -> Result<QSets> {
    let full = SubsetMask::full(x.len());
    let r = x.rank_of(full)?;
    let mut lcm = BigInt::one();
    let mut basis_groups = Vec::new();
    for b in full.subsets().filter(|b| b.len() == r) {
        if x.rank_of(b)? != r {
            continue;
        }
        let t = torsion_of_quotient(x, b)?;
        lcm = lcm.lcm(&t.iter().product());
        basis_groups.push((b, t));
    }
    Ok(QSets { lcm, basis_groups })
}

fn check_q(q: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::arg("q must be a positive integer"));
    }
    Ok(())
}

fn residues(v: &[BigInt], q: u64) -> Vec<u64> {
    let q = BigInt::from(q);
    v.iter().map(|c| c.mod_floor(&q).to_u64().expect("residue fits")).collect()
}

/// Decodes `idx` in the mixed radix `radices`.
fn digits(mut idx: u64, radices: &[u64]) -> Vec<u64> {
    radices
        .iter()
        .map(|&r| {
            let d = idx % r;
            idx /= r;
            d
        })
        .collect()
}

fn enumeration_size(radices: &[u64], what: &str) -> Result<u64> {
    radices
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r))
        .filter(|&n| n <= MAX_ENUMERATION)
        .ok_or_else(|| Error::Resource(format!("{what} enumeration exceeds {MAX_ENUMERATION}")))
}

/// `χ_X(q)`: homomorphisms `φ: G → Z_q` with `φ(x) ≠ 0` for every `x ∈ X`.
///
/// A free generator may go anywhere; a torsion generator of order `n` goes to
/// one of the `gcd(n, q)` multiples of `q / gcd(n, q)`.
pub fn count_colorings(x: &VectorList, q: u64) -> Result<BigInt> {
    check_q(q)?;
    let g = x.group();
    let mut radices = vec![q; g.free_rank()];
    let mut steps = vec![1u64; g.free_rank()];
    for n in g.torsion() {
        let gcd = n.gcd(&BigInt::from(q)).to_u64().expect("gcd below q");
        radices.push(gcd);
        steps.push(q / gcd);
    }
    let total = enumeration_size(&radices, "homomorphism")?;
    let vecs: Vec<Vec<u64>> = x.vectors().iter().map(|v| residues(v, q)).collect();
    let q128 = q as u128;
    let count = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let images: Vec<u128> =
                digits(idx, &radices).iter().zip(&steps).map(|(&d, &s)| (d * s) as u128).collect();
            vecs.iter().all(|v| v.iter().zip(&images).map(|(&c, &a)| c as u128 * a % q128).sum::<u128>() % q128 != 0)
        })
        .count();
    Ok(BigInt::from(count))
}

/// `χ*_X(q)`: maps `ψ: X → Z_q ∖ {0}` with `Σ ψ(x) x = 0` in `G / qG`.
pub fn count_flows(x: &VectorList, q: u64) -> Result<BigInt> {
    check_q(q)?;
    let g = x.group();
    let radices = vec![q - 1; x.len()];
    let total = enumeration_size(&radices, "flow")?;
    let moduli: Vec<u64> = std::iter::repeat_n(q, g.free_rank())
        .chain(g.torsion().iter().map(|n| n.gcd(&BigInt::from(q)).to_u64().expect("gcd below q")))
        .collect();
    let vecs: Vec<Vec<u64>> = x.vectors().iter().map(|v| residues(v, q)).collect();
    let count = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let psi = digits(idx, &radices);
            moduli.iter().enumerate().all(|(j, &m)| {
                let s: u128 = vecs.iter().zip(&psi).map(|(v, &p)| v[j] as u128 * (p + 1) as u128).sum();
                s.is_multiple_of(m as u128)
            })
        })
        .count();
    Ok(BigInt::from(count))
}
