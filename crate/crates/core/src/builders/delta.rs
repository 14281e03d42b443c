use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};

use crate::axioms::{AxiomReport, Violation, MAX_WITNESSES};
use crate::error::{Error, Result};
use crate::poly::HalfInt;
use crate::ranked::{check_ground_size, tutte, RankedSet, SubsetMask, TutteFunction, MAX_GROUND};

/// A set system `(E, ℱ)` with `ℱ` nonempty. Values built with
/// [`DeltaMatroid::new`] also satisfy symmetric exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatroid {
    ground: Vec<String>,
    feasible: Vec<SubsetMask>,
}

impl DeltaMatroid {
    /// Validated constructor; fails with `Precondition` if exchange fails.
    pub fn new(ground: Vec<String>, feasible: Vec<SubsetMask>) -> Result<Self> {
        let d = Self::new_unchecked(ground, feasible)?;
        let report = check_symmetric_exchange(&d);
        if let Some(v) = report.violations.first() {
            return Err(Error::Precondition(format!("not a delta-matroid: {}", v.detail)));
        }
        Ok(d)
    }

    /// Structural checks only; the exchange axiom is left to
    /// [`check_symmetric_exchange`].
    pub fn new_unchecked(ground: Vec<String>, feasible: Vec<SubsetMask>) -> Result<Self> {
        check_ground_size(ground.len(), MAX_GROUND)?;
        let mut seen = BTreeSet::new();
        if let Some(l) = ground.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::arg(format!("duplicate ground element {l}")));
        }
        if feasible.is_empty() {
            return Err(Error::arg("the feasible family must be nonempty"));
        }
        let full = SubsetMask::full(ground.len());
        if feasible.iter().any(|f| !f.is_subset_of(full)) {
            return Err(Error::arg("feasible set outside the ground set"));
        }
        let feasible: BTreeSet<SubsetMask> = feasible.into_iter().collect();
        Ok(DeltaMatroid { ground, feasible: feasible.into_iter().collect() })
    }

    /// Feasible sets given by labels.
    pub fn from_labels(ground: Vec<String>, feasible: &[Vec<String>], validate: bool) -> Result<Self> {
        let masks = feasible
            .iter()
            .map(|f| {
                f.iter().try_fold(SubsetMask::EMPTY, |acc, l| {
                    let i = ground
                        .iter()
                        .position(|g| g == l)
                        .ok_or_else(|| Error::arg(format!("unknown element {l} in feasible set")))?;
                    Ok(acc.with(i))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if validate {
            Self::new(ground, masks)
        } else {
            Self::new_unchecked(ground, masks)
        }
    }

    /// The bases of a matroid given as a ranked set.
    pub fn from_matroid_bases(m: &RankedSet) -> Result<Self> {
        let r = m.total_rank();
        let bases = m.ground().subsets().filter(|&a| m.rank(a) == r && HalfInt::from_int(a.len() as i64) == r).collect();
        Self::new(m.labels().to_vec(), bases)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn feasible(&self) -> &[SubsetMask] {
        &self.feasible
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Feasible family of `D|_A`, by deleting the elements outside `A` one at
    /// a time: deleting `e` keeps the feasible sets avoiding `e` if there are
    /// any, and otherwise removes `e` from every feasible set.
    pub fn restricted_family(&self, a: SubsetMask) -> Vec<SubsetMask> {
        let mut family: BTreeSet<SubsetMask> = self.feasible.iter().copied().collect();
        for e in SubsetMask::full(self.len()).difference(a).elements() {
            let avoiding: BTreeSet<SubsetMask> = family.iter().copied().filter(|f| !f.contains(e)).collect();
            family = if avoiding.is_empty() { family.iter().map(|f| f.without(e)).collect() } else { avoiding };
        }
        family.into_iter().collect()
    }

    fn label_set(&self, a: SubsetMask) -> Vec<String> {
        a.elements().map(|i| self.ground[i].clone()).collect()
    }
}

impl Serialize for DeltaMatroid {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            ground: &'a [String],
            feasible: Vec<Vec<String>>,
        }
        Out { ground: &self.ground, feasible: self.feasible.iter().map(|&f| self.label_set(f)).collect() }.serialize(s)
    }
}

/// JSON shape `{"ground": [...], "feasible": [[...], ...]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaMatroidJson {
    pub ground: Vec<String>,
    pub feasible: Vec<Vec<String>>,
}

/// Exhaustive check: for feasible `S, T` and `u ∈ S △ T` some `v ∈ S △ T`
/// has `S △ {u, v}` feasible.
pub fn check_symmetric_exchange(d: &DeltaMatroid) -> AxiomReport {
    let family: BTreeSet<SubsetMask> = d.feasible.iter().copied().collect();
    let mut out = Vec::new();
    'outer: for &s in &d.feasible {
        for &t in &d.feasible {
            let diff = s.symmetric_difference(t);
            for u in diff.elements() {
                let ok = diff.elements().any(|v| family.contains(&s.symmetric_difference(SubsetMask::EMPTY.with(u).with(v))));
                if !ok {
                    out.push(Violation {
                        axiom: "symmetric-exchange".into(),
                        sets: vec![("S".into(), d.label_set(s)), ("T".into(), d.label_set(t))],
                        element: Some(d.ground[u].clone()),
                        detail: format!(
                            "no v in S△T with S△{{{}, v}} feasible for S = {:?}, T = {:?}",
                            d.ground[u],
                            d.label_set(s),
                            d.label_set(t)
                        ),
                    });
                    if out.len() >= MAX_WITNESSES {
                        break 'outer;
                    }
                }
            }
        }
    }
    AxiomReport::from_violations(out)
}

/// All feasible sets have the same parity.
pub fn is_even(d: &DeltaMatroid) -> bool {
    let p = d.feasible[0].len() % 2;
    d.feasible.iter().all(|f| f.len() % 2 == p)
}

/// `ρ(A) = ½ (max |F| + min |F|)` over the feasible sets of `D|_A`.
pub fn delta_rank(d: &DeltaMatroid, a: SubsetMask) -> HalfInt {
    let family = d.restricted_family(a);
    let max = family.iter().map(|f| f.len()).max().unwrap_or(0);
    let min = family.iter().map(|f| f.len()).min().unwrap_or(0);
    HalfInt::from_doubled((max + min) as i64)
}

/// The ranked set `(E, ρ, 1)`.
pub fn to_ranked_set(d: &DeltaMatroid) -> Result<RankedSet> {
    let rank = SubsetMask::full(d.len()).subsets().map(|a| delta_rank(d, a)).collect();
    let mult = vec![BigRational::one(); 1 << d.len()];
    RankedSet::new(d.ground.clone(), rank, mult)
}

/// `R̃_D(x, y) = Σ_A (x−1)^{ρ(E)−ρ(A)} (y−1)^{|A|−ρ(A)}`. Half-integer
/// exponents leave it in shifted form.
pub fn bollobas_riordan(d: &DeltaMatroid) -> Result<TutteFunction> {
    Ok(tutte(&to_ranked_set(d)?))
}
