//! Validators for polymatroid, matroid and arithmetic-matroid axioms, the
//! molecule machinery behind them, and the activity partition of `2^M`
//! into molecules.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::HalfInt;
use crate::ranked::{RankedSet, SubsetMask};

/// Upper bound on recorded witnesses per report; `passed` is unaffected.
pub const MAX_WITNESSES: usize = 64;

/// One failed instance of an axiom, with the subsets that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub sets: Vec<(String, Vec<String>)>,
    pub element: Option<String>,
    pub detail: String,
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("axiom", &self.axiom)?;
        for (name, set) in &self.sets {
            map.serialize_entry(name, set)?;
        }
        if let Some(e) = &self.element {
            map.serialize_entry("e", e)?;
        }
        map.serialize_entry("detail", &self.detail)?;
        map.end()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub(crate) fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.truncate(MAX_WITNESSES);
        AxiomReport { passed: violations.is_empty(), violations }
    }

    pub fn merge(mut self, other: AxiomReport) -> Self {
        self.violations.extend(other.violations);
        self.violations.truncate(MAX_WITNESSES);
        self.passed = self.violations.is_empty();
        self
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

struct Collector<'a> {
    m: &'a RankedSet,
    out: Vec<Violation>,
}

impl<'a> Collector<'a> {
    fn new(m: &'a RankedSet) -> Self {
        Collector { m, out: Vec::new() }
    }

    fn full(&self) -> bool {
        self.out.len() >= MAX_WITNESSES
    }

    fn push(&mut self, axiom: &str, sets: &[(&str, SubsetMask)], element: Option<usize>, detail: String) {
        if self.full() {
            return;
        }
        self.out.push(Violation {
            axiom: axiom.to_string(),
            sets: sets.iter().map(|(n, s)| (n.to_string(), self.m.label_set(*s))).collect(),
            element: element.map(|e| self.m.labels()[e].clone()),
            detail,
        });
    }

    fn finish(self) -> AxiomReport {
        AxiomReport::from_violations(self.out)
    }
}

fn polymatroid_violations(c: &mut Collector) {
    let m = c.m;
    let ground = m.ground();
    let r0 = m.rank(SubsetMask::EMPTY);
    if r0 != HalfInt::ZERO {
        c.push("rank-empty", &[("A", SubsetMask::EMPTY)], None, format!("rank of the empty set is {r0}"));
    }
    for a in ground.subsets() {
        let r = m.rank(a);
        if !r.is_integer() {
            c.push("integral", &[("A", a)], None, format!("rank {r} is not an integer"));
        }
        if r.is_negative() {
            c.push("nonnegative", &[("A", a)], None, format!("rank {r} is negative"));
        }
        for e in ground.difference(a).elements() {
            let re = m.rank(a.with(e));
            if re < r {
                c.push("monotone", &[("A", a)], Some(e), format!("rank drops from {r} to {re}"));
            }
        }
    }
    let pairs_exhaustive = m.len() <= 12;
    if pairs_exhaustive {
        for a in ground.subsets() {
            for b in ground.subsets().filter(|b| b.bits() > a.bits()) {
                let lhs = m.rank(a.union(b)) + m.rank(a.intersection(b));
                let rhs = m.rank(a) + m.rank(b);
                if lhs > rhs {
                    c.push(
                        "submodular",
                        &[("A", a), ("B", b)],
                        None,
                        format!("rank(A∪B) + rank(A∩B) = {lhs} > {rhs} = rank(A) + rank(B)"),
                    );
                }
            }
            if c.full() {
                return;
            }
        }
    } else {
        // equivalent local form: r(A+e) + r(A+f) ≥ r(A+e+f) + r(A)
        for a in ground.subsets() {
            let rest = ground.difference(a);
            for e in rest.elements() {
                for f in rest.elements().filter(|&f| f > e) {
                    let lhs = m.rank(a.with(e).with(f)) + m.rank(a);
                    let rhs = m.rank(a.with(e)) + m.rank(a.with(f));
                    if lhs > rhs {
                        c.push(
                            "submodular",
                            &[("A", a.with(e)), ("B", a.with(f))],
                            None,
                            format!("rank(A∪B) + rank(A∩B) = {lhs} > {rhs} = rank(A) + rank(B)"),
                        );
                    }
                }
            }
        }
    }
}

/// Rank of the empty set, integrality, nonnegativity, monotonicity and
/// submodularity.
pub fn check_polymatroid(m: &RankedSet) -> AxiomReport {
    let mut c = Collector::new(m);
    polymatroid_violations(&mut c);
    c.finish()
}

/// Polymatroid axioms plus `rank(A ∪ {a}) ≤ rank(A) + 1`.
pub fn check_matroid(m: &RankedSet) -> AxiomReport {
    let mut c = Collector::new(m);
    polymatroid_violations(&mut c);
    let ground = m.ground();
    for a in ground.subsets() {
        let r = m.rank(a);
        for e in ground.difference(a).elements() {
            let re = m.rank(a.with(e));
            if re > r + HalfInt::ONE {
                c.push("unit-increase", &[("A", a)], Some(e), format!("rank jumps from {r} to {re}"));
            }
        }
    }
    c.finish()
}

/// An interval `[R, S]` on which `rank(A) = rank(R) + |A ∩ F|`, where
/// `S∖R = F ⊔ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Molecule {
    pub r: SubsetMask,
    pub s: SubsetMask,
    pub f: SubsetMask,
    pub t: SubsetMask,
}

impl Molecule {
    pub fn len(&self) -> usize {
        1 << self.s.difference(self.r).len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: SubsetMask) -> bool {
        self.r.is_subset_of(a) && a.is_subset_of(self.s)
    }

    pub fn members(&self) -> impl Iterator<Item = SubsetMask> {
        let r = self.r;
        self.s.difference(self.r).subsets().map(move |d| d.union(r))
    }
}

/// Returns the molecule on `[R, S]` if there is one.
///
/// The split is forced: `F` must be the elements raising the rank of `R`,
/// so the only work is verifying the rank condition on the whole interval.
pub fn find_molecule(m: &RankedSet, r: SubsetMask, s: SubsetMask) -> Result<Option<Molecule>> {
    if !r.is_subset_of(s) {
        return Err(Error::arg(format!("{r:?} is not a subset of {s:?}")));
    }
    if !s.is_subset_of(m.ground()) {
        return Err(Error::arg(format!("{s:?} is not a subset of the ground set")));
    }
    Ok(molecule_unchecked(m, r, s))
}

fn molecule_unchecked(m: &RankedSet, r: SubsetMask, s: SubsetMask) -> Option<Molecule> {
    let base = m.rank(r);
    let diff = s.difference(r);
    let f = SubsetMask::from_indices(diff.elements().filter(|&e| m.rank(r.with(e)) == base + HalfInt::ONE));
    let t = diff.difference(f);
    let mol = Molecule { r, s, f, t };
    mol.members()
        .all(|a| m.rank(a) == base + HalfInt::from_int(a.intersection(f).len() as i64))
        .then_some(mol)
}

/// `ρ(R,S) = (−1)^{|T|} Σ_{A∈[R,S]} (−1)^{|S|−|A|} m(A)`.
pub fn rho(m: &RankedSet, mol: &Molecule) -> BigRational {
    let mut acc = BigRational::zero();
    let s_len = mol.s.len();
    for a in mol.members() {
        if (s_len - a.len()).is_multiple_of(2) {
            acc += m.mult(a);
        } else {
            acc -= m.mult(a);
        }
    }
    if mol.t.len() % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// Every molecule of `m`, by exhaustive interval scan.
pub fn molecules(m: &RankedSet) -> Vec<Molecule> {
    let mut out = Vec::new();
    for s in m.ground().subsets() {
        for r in s.subsets() {
            if let Some(mol) = molecule_unchecked(m, r, s) {
                out.push(mol);
            }
        }
    }
    out
}

fn require_matroid(m: &RankedSet) -> Result<()> {
    let rep = check_matroid(m);
    if !rep.passed {
        let v = &rep.violations[0];
        return Err(Error::Precondition(format!("rank function is not a matroid ({}: {})", v.axiom, v.detail)));
    }
    Ok(())
}

fn molecule_sets(mol: &Molecule) -> [(&'static str, SubsetMask); 2] {
    [("R", mol.r), ("S", mol.s)]
}

/// Positivity axiom: `ρ(R,S) ≥ 0` on every molecule.
pub fn check_p(m: &RankedSet) -> Result<AxiomReport> {
    require_matroid(m)?;
    let mut c = Collector::new(m);
    for mol in molecules(m) {
        let value = rho(m, &mol);
        if value.is_negative() {
            c.push("P", &molecule_sets(&mol), None, format!("rho(R,S) = {value} < 0"));
        }
    }
    Ok(c.finish())
}

fn integer_mults(m: &RankedSet) -> Result<Vec<BigInt>> {
    if !m.has_positive_integer_mult() {
        return Err(Error::Precondition("multiplicities must be positive integers".into()));
    }
    Ok(m.mults().iter().map(|v| v.to_integer()).collect())
}

/// Divisibility: `m(A∪e) | m(A)` when `e` is dependent on `A`,
/// `m(A) | m(A∪e)` otherwise.
pub fn check_a1(m: &RankedSet) -> Result<AxiomReport> {
    let mult = integer_mults(m)?;
    let ground = m.ground();
    let mut c = Collector::new(m);
    for a in ground.subsets() {
        for e in ground.difference(a).elements() {
            let ae = a.with(e);
            let (small, big) = if m.rank(ae) == m.rank(a) {
                (&mult[ae.index()], &mult[a.index()])
            } else {
                (&mult[a.index()], &mult[ae.index()])
            };
            if !big.is_multiple_of(small) {
                c.push("A1", &[("A", a)], Some(e), format!("{small} does not divide {big}"));
            }
        }
    }
    Ok(c.finish())
}

/// Multiplicativity: `m(R)m(S) = m(R∪F)m(R∪T)` on every molecule.
pub fn check_a2(m: &RankedSet) -> Result<AxiomReport> {
    let mult = integer_mults(m)?;
    let mut c = Collector::new(m);
    for mol in molecules(m) {
        let lhs = &mult[mol.r.index()] * &mult[mol.s.index()];
        let rhs = &mult[mol.r.union(mol.f).index()] * &mult[mol.r.union(mol.t).index()];
        if lhs != rhs {
            c.push("A2", &molecule_sets(&mol), None, format!("m(R)m(S) = {lhs} but m(R∪F)m(R∪T) = {rhs}"));
        }
    }
    Ok(c.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatroidClass {
    Arithmetic,
    PseudoArithmetic,
    QuasiArithmetic,
}

/// Which of the arithmetic, pseudo-arithmetic and quasi-arithmetic classes
/// contain `m`. Empty when the rank function is not a matroid.
pub fn classify(m: &RankedSet) -> BTreeSet<MatroidClass> {
    let mut out = BTreeSet::new();
    if !check_matroid(m).passed {
        return out;
    }
    let pseudo = check_p(m).map(|r| r.passed).unwrap_or(false);
    let quasi = m.has_positive_integer_mult()
        && check_a1(m).map(|r| r.passed).unwrap_or(false)
        && check_a2(m).map(|r| r.passed).unwrap_or(false);
    if pseudo {
        out.insert(MatroidClass::PseudoArithmetic);
    }
    if quasi {
        out.insert(MatroidClass::QuasiArithmetic);
    }
    if pseudo && quasi {
        out.insert(MatroidClass::Arithmetic);
    }
    out
}

/// Partitions `2^M` into the intervals `[B∖IA(B), B∪EA(B)]`, one per basis,
/// with internal/external activity taken relative to `order` (elements
/// listed from smallest to largest).
pub fn molecule_partition(m: &RankedSet, order: &[usize]) -> Result<Vec<Molecule>> {
    require_matroid(m)?;
    let n = m.len();
    let mut pos = vec![usize::MAX; n];
    for (k, &e) in order.iter().enumerate() {
        if e >= n || pos[e] != usize::MAX {
            return Err(Error::arg("order must be a permutation of the ground set"));
        }
        pos[e] = k;
    }
    if order.len() != n {
        return Err(Error::arg("order must be a permutation of the ground set"));
    }
    let ground = m.ground();
    let full_rank = m.total_rank();
    let is_basis = |b: SubsetMask| m.rank(b) == full_rank && HalfInt::from_int(b.len() as i64) == full_rank;
    let minimal = |e: usize, set: SubsetMask| set.elements().all(|f| pos[e] <= pos[f]);

    let mut out = Vec::new();
    for b in ground.subsets().filter(|&b| is_basis(b)) {
        let outside = ground.difference(b);
        let internal = SubsetMask::from_indices(b.elements().filter(|&e| {
            let cocircuit = SubsetMask::from_indices(outside.elements().filter(|&f| is_basis(b.without(e).with(f))));
            minimal(e, cocircuit.with(e))
        }));
        let external = SubsetMask::from_indices(outside.elements().filter(|&e| {
            let circuit = SubsetMask::from_indices(b.elements().filter(|&f| is_basis(b.without(f).with(e))));
            minimal(e, circuit.with(e))
        }));
        let r = b.difference(internal);
        let s = b.union(external);
        let mol = molecule_unchecked(m, r, s)
            .ok_or_else(|| Error::Precondition(format!("activity interval [{r:?}, {s:?}] is not a molecule")))?;
        out.push(mol);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::ranked::aritutte;

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn uniform(r: usize, n: usize) -> RankedSet {
        RankedSet::from_fn(RankedSet::default_labels(n), |a| h(a.len().min(r) as i64), |_| int(1)).unwrap()
    }

    fn m_set(n: usize, rank: impl Fn(SubsetMask) -> i64, mult: impl Fn(SubsetMask) -> i64) -> RankedSet {
        RankedSet::from_fn(RankedSet::default_labels(n), |a| h(rank(a)), |a| int(mult(a))).unwrap()
    }

    #[test]
    fn cardinality_rank_is_matroid() {
        let m = m_set(3, |a| a.len() as i64, |_| 1);
        assert!(check_polymatroid(&m).passed);
        assert!(check_matroid(&m).passed);
        assert!(check_matroid(&uniform(2, 4)).passed);
    }

    #[test]
    fn capped_doubling_is_polymatroid_only() {
        let m = m_set(3, |a| (2 * a.len() as i64).min(3), |_| 1);
        assert!(check_polymatroid(&m).passed);
        let rep = check_matroid(&m);
        assert!(!rep.passed);
        assert!(rep.has("unit-increase"));
        assert!(rep.violations.iter().all(|v| v.axiom == "unit-increase"));
    }

    #[test]
    fn nonzero_empty_rank_is_reported() {
        let m = RankedSet::new_lenient(vec!["a".into()], vec![h(1), h(1)], vec![int(1), int(1)]).unwrap();
        let rep = check_polymatroid(&m);
        assert!(!rep.passed);
        assert_eq!(rep.violations[0].axiom, "rank-empty");
        assert_eq!(rep.violations[0].sets, vec![("A".to_string(), Vec::<String>::new())]);
    }

    #[test]
    fn submodularity_violation_has_witness() {
        let m = m_set(2, |a| [0, 1, 1, 3][a.index()], |_| 1);
        let rep = check_polymatroid(&m);
        assert!(!rep.passed);
        let v = rep.violations.iter().find(|v| v.axiom == "submodular").unwrap();
        assert_eq!(v.sets, vec![("A".to_string(), vec!["e1".to_string()]), ("B".to_string(), vec!["e2".to_string()])]);
    }

    #[test]
    fn trivial_molecules() {
        let m = uniform(2, 3);
        let a = SubsetMask(0b011);
        let mol = find_molecule(&m, a, a).unwrap().unwrap();
        assert_eq!((mol.f, mol.t), (SubsetMask::EMPTY, SubsetMask::EMPTY));
        assert_eq!(rho(&m, &mol), int(1));
        assert!(find_molecule(&m, SubsetMask(0b100), SubsetMask(0b011)).is_err());

        let lp = m_set(1, |_| 0, |a| 3 + a.len() as i64);
        let mol = find_molecule(&lp, SubsetMask::EMPTY, SubsetMask(1)).unwrap().unwrap();
        assert_eq!(mol.t, SubsetMask(1));
        // −(m({loop}) − m(∅))
        assert_eq!(rho(&lp, &mol), int(-1));
    }

    #[test]
    fn unit_mult_rho_vanishes_off_diagonal() {
        let m = uniform(1, 3);
        for mol in molecules(&m) {
            let direct = rho(&m, &mol);
            if mol.r == mol.s {
                assert_eq!(direct, int(1));
            } else {
                assert_eq!(direct, int(0), "{mol:?}");
            }
        }
        assert!(check_p(&m).unwrap().passed);
    }

    #[test]
    fn a1_loop_divisibility() {
        let m = m_set(1, |_| 0, |a| if a.is_empty() { 2 } else { 3 });
        let rep = check_a1(&m).unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.violations[0].detail, "3 does not divide 2");
        assert_eq!(rep.violations[0].element.as_deref(), Some("e1"));
        let constant = m_set(3, |a| a.len().min(2) as i64, |_| 5);
        assert!(check_a1(&constant).unwrap().passed);
        let frac = uniform(2, 3).with_mult(vec![BigRational::new(1.into(), 2.into()); 8]).unwrap();
        assert!(matches!(check_a1(&frac), Err(Error::Precondition(_))));
    }

    #[test]
    fn a2_perturbation_detected() {
        // e1 independent, e2 a loop; m(e1e2) = 2 would be forced by A2
        let m = m_set(2, |a| [0, 1, 0, 1][a.index()], |a| [1, 2, 1, 1][a.index()]);
        assert!(check_a1(&m).unwrap().passed);
        let rep = check_a2(&m).unwrap();
        assert!(!rep.passed);
        assert!(rep.violations.iter().any(|v| v.sets[0].1.is_empty() && v.sets[1].1.len() == 2));
    }

    #[test]
    fn p_requires_matroid() {
        let m = m_set(3, |a| (2 * a.len() as i64).min(3), |_| 1);
        assert!(matches!(check_p(&m), Err(Error::Precondition(_))));
    }

    #[test]
    fn classify_examples() {
        let all: BTreeSet<_> =
            [MatroidClass::Arithmetic, MatroidClass::PseudoArithmetic, MatroidClass::QuasiArithmetic].into();
        assert_eq!(classify(&uniform(2, 4)), all);
        let half = BigRational::new(1.into(), 2.into());
        let coloop = m_set(1, |a| a.len() as i64, |_| 1).with_mult(vec![half.clone(), half]).unwrap();
        assert_eq!(classify(&coloop), [MatroidClass::PseudoArithmetic].into());
        let poly = m_set(3, |a| (2 * a.len() as i64).min(3), |_| 1);
        assert!(classify(&poly).is_empty());
    }

    #[test]
    fn partition_of_coloop_and_uniform() {
        let coloop = m_set(1, |a| a.len() as i64, |_| 1);
        let p = molecule_partition(&coloop, &[0]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].r, p[0].s), (SubsetMask::EMPTY, SubsetMask(1)));
        // the coloop is internally active, so R = ∅ and F = {e}
        assert_eq!(p[0].f, SubsetMask(1));

        let m = uniform(2, 3);
        let parts = molecule_partition(&m, &[0, 1, 2]).unwrap();
        assert_eq!(parts.len(), 3);
        let mut seen = [0; 8];
        for mol in &parts {
            for a in mol.members() {
                seen[a.index()] += 1;
            }
            assert_eq!(m.rank(mol.r), h(mol.r.len() as i64));
            assert_eq!(m.rank(mol.s), m.total_rank());
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn partition_sum_of_rho_is_constant_term() {
        let m = m_set(3, |a| a.len().min(2) as i64, |a| [1, 2, 1, 2, 1, 2, 1, 2][a.index()]);
        let parts = molecule_partition(&m, &[2, 0, 1]).unwrap();
        let total: BigRational = parts.iter().map(|mol| rho(&m, mol)).sum();
        assert_eq!(total, aritutte(&m).eval(&int(0), &int(0)).unwrap());
    }

    #[test]
    fn report_json_shape() {
        let m = m_set(2, |_| 0, |a| [2, 3, 1, 1][a.index()]);
        let rep = check_a1(&m).unwrap();
        let json = serde_json::to_string(&rep.violations[0]).unwrap();
        assert_eq!(json, r#"{"axiom":"A1","A":[],"e":"e1","detail":"3 does not divide 2"}"#);
    }
}
