use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::{snf, IntMatrix};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^d ⊕ Z/n₁ ⊕ … ⊕ Z/n_t` in invariant
/// factor form: every `nᵢ ≥ 2` and `nᵢ | nᵢ₊₁`.
///
/// Elements are vectors of length `d + t`; the last `t` coordinates are read
/// modulo the corresponding `nᵢ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FGGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FGGroup {
    /// Validates the invariant factor chain.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, n) in torsion.iter().enumerate() {
            if *n < BigInt::from(2) {
                return Err(Error::arg(format!("torsion order {n} must be at least 2")));
            }
            if i > 0 && !n.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::arg(format!(
                    "torsion orders must form a divisibility chain ({} does not divide {n})",
                    torsion[i - 1]
                )));
            }
        }
        Ok(FGGroup { free_rank, torsion })
    }

    pub fn free(free_rank: usize) -> Self {
        FGGroup { free_rank, torsion: Vec::new() }
    }

    /// `Z^d ⊕ ⊕ Z/oᵢ` for arbitrary orders `oᵢ ≥ 1`, normalised to invariant
    /// factor form. The returned projection carries old coordinates to new.
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Result<(Self, Projection)> {
        if let Some(o) = orders.iter().find(|o| !o.is_positive()) {
            return Err(Error::arg(format!("cyclic order {o} must be positive")));
        }
        let g = free_rank + orders.len();
        let relations: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let mut col = vec![BigInt::zero(); g];
                col[free_rank + i] = o.clone();
                col
            })
            .collect();
        Ok(presentation_quotient(g, &relations))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Length of element vectors.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Exponent of the torsion subgroup (1 if trivial).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Canonical representative: torsion coordinates reduced into `[0, n)`.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.dim() {
            return Err(Error::arg(format!("element has length {}, group needs {}", v.len(), self.dim())));
        }
        let mut out = v.to_vec();
        for (i, n) in self.torsion.iter().enumerate() {
            out[self.free_rank + i] = out[self.free_rank + i].mod_floor(n);
        }
        Ok(out)
    }

    /// Relation columns of the standard presentation `Z^dim / ⟨nᵢ eᵢ⟩`.
    pub(crate) fn relations(&self) -> Vec<Vec<BigInt>> {
        (0..self.torsion.len())
            .map(|i| {
                let mut col = vec![BigInt::zero(); self.dim()];
                col[self.free_rank + i] = self.torsion[i].clone();
                col
            })
            .collect()
    }
}

impl fmt::Debug for FGGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FGGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Group homomorphism onto a quotient, in the quotient's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    rows: Vec<Vec<BigInt>>,
    moduli: Vec<Option<BigInt>>,
}

impl Projection {
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, modulus)| {
                let x: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                match modulus {
                    Some(n) => x.mod_floor(n),
                    None => x,
                }
            })
            .collect()
    }
}

/// `Z^g / ⟨relations⟩` in invariant factor form, with the projection.
fn presentation_quotient(g: usize, relations: &[Vec<BigInt>]) -> (FGGroup, Projection) {
    let a = IntMatrix::from_columns(g, relations);
    let r = snf(&a);
    let diag = r.diagonal();
    let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
    let mut rows = Vec::new();
    let mut moduli = Vec::new();
    for i in nonzero..g {
        rows.push(r.u.row(i).to_vec());
        moduli.push(None);
    }
    let mut torsion = Vec::new();
    for (i, d) in diag.iter().enumerate().take(nonzero) {
        if d.is_one() {
            continue;
        }
        rows.push(r.u.row(i).to_vec());
        moduli.push(Some(d.clone()));
        torsion.push(d.clone());
    }
    (FGGroup { free_rank: g - nonzero, torsion }, Projection { rows, moduli })
}

/// `G / ⟨a₁, …, a_k⟩` and the projection `G → G/⟨A⟩`.
pub fn quotient(group: &FGGroup, elements: &[Vec<BigInt>]) -> Result<(FGGroup, Projection)> {
    let mut relations = group.relations();
    for e in elements {
        relations.push(group.reduce(e)?);
    }
    Ok(presentation_quotient(group.dim(), &relations))
}
