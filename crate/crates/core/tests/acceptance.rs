//! Acceptance suite: nine criteria, each checked exactly and reported on one
//! `PASS`/`FAIL` line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use arith_tutte::abelian::{build_arithmetic_matroid, snf, IntMatrix, VectorList};
use arith_tutte::axioms::{check_a1, check_a2, check_p, check_polymatroid, molecule_partition, molecules, rho};
use arith_tutte::builders::{
    check_symmetric_exchange, graph_multiplicity_formula, graph_to_vectorlist, to_ranked_set, DeltaMatroid,
};
use arith_tutte::corpus::{self, CorpusRng};
use arith_tutte::oracles::{
    count_colorings, count_flows, count_lattice_points, ehrhart, eval_univariate, qsets, scale_list,
    verify_corollary7, verify_corollary8, verify_face_decomposition, verify_theorem6,
};
use arith_tutte::ranked::{
    convolve, standard_functionals, verify_associativity_all, verify_lemma13, verify_theorem1, verify_theorem2,
    verify_zeta_inverse, ConvFunctional,
};
use arith_tutte::{aritutte, tutte, BiLaurent, HalfInt, RankedSet, SubsetMask};

type Check = Result<String, String>;

fn report(n: usize, title: &str, outcome: Check) {
    match outcome {
        Ok(summary) => println!("PASS criterion {n} ({title}): {summary}"),
        Err(why) => {
            println!("FAIL criterion {n} ({title}): {why}");
            panic!("criterion {n} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

/// Corpus (b): 50 lists in `Z^d`, `d ≤ 4`, `N ≤ 7`, entries in `[−5, 5]`.
fn corpus_b() -> Vec<VectorList> {
    let mut rng = corpus::rng(0xB0B);
    (0..50).map(|_| corpus::random_lattice_list(&mut rng, 4, 7, 5)).collect()
}

/// `Σ_A m(A) (x−1)^{r(M)−r(A)} (y−1)^{|A|−r(A)}` evaluated directly.
fn direct_aritutte(m: &RankedSet, x: &BigRational, y: &BigRational, weighted: bool) -> BigRational {
    let pow = |b: &BigRational, e: HalfInt| -> BigRational {
        let k = e.to_int().expect("integer exponent");
        if k >= 0 {
            num_traits::pow(b.clone(), k as usize)
        } else {
            num_traits::pow(b.recip(), (-k) as usize)
        }
    };
    let (xm, ym) = (x - int(1), y - int(1));
    let top = m.total_rank();
    m.ground()
        .subsets()
        .map(|a| {
            let w = if weighted { m.mult(a).clone() } else { int(1) };
            let r = m.rank(a);
            w * pow(&xm, top - r) * pow(&ym, HalfInt::from_int(a.len() as i64) - r)
        })
        .sum()
}

// ---------------------------------------------------------------------------

fn example_criterion() -> Check {
    let x = corpus::worked_example();
    let sets = ok(qsets(&x))?;
    ensure(sets.lcm == big(2), || format!("lcm {}", sets.lcm))?;
    for q in 1..=12u64 {
        ensure(sets.in_zm(q) == (q % 2 == 1), || format!("Z_M membership of {q}"))?;
        ensure(sets.in_za(q) == (q % 2 == 0), || format!("Z_A membership of {q}"))?;
    }
    for q in [2i64, 4, 6] {
        let chi = ok(count_colorings(&x, q as u64))?;
        let flows = ok(count_flows(&x, q as u64))?;
        ensure(chi == big(q * q - 4 * q + 4), || format!("χ({q}) = {chi}"))?;
        ensure(flows == big(2 * q - 3), || format!("χ*({q}) = {flows}"))?;
    }
    for q in [1i64, 3, 5, 7] {
        let chi = ok(count_colorings(&x, q as u64))?;
        let flows = ok(count_flows(&x, q as u64))?;
        ensure(chi == big(q * q - 3 * q + 2), || format!("χ({q}) = {chi}"))?;
        ensure(flows == big(q - 1), || format!("χ*({q}) = {flows}"))?;
    }
    // explicit enumeration over Z_3² and {1,2}³
    let vecs = [(2i64, 0i64), (-1, 1), (1, 1)];
    let colorings: Vec<(i64, i64)> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&(a, b)| vecs.iter().all(|&(u, v)| (a * u + b * v).rem_euclid(3) != 0))
        .collect();
    ensure(colorings == vec![(1, 0), (2, 0)], || format!("3-colorings {colorings:?}"))?;
    let mut flows = Vec::new();
    for p in 1..3i64 {
        for q in 1..3i64 {
            for r in 1..3i64 {
                let s = [p, q, r];
                let ok0 = vecs.iter().zip(&s).map(|(v, c)| v.0 * c).sum::<i64>().rem_euclid(3) == 0;
                let ok1 = vecs.iter().zip(&s).map(|(v, c)| v.1 * c).sum::<i64>().rem_euclid(3) == 0;
                if ok0 && ok1 {
                    flows.push(s);
                }
            }
        }
    }
    ensure(flows == vec![[1, 1, 2], [2, 2, 1]], || format!("3-flows {flows:?}"))?;
    // 𝔗 = (x−1)² + 4(x−1) + 6 + 2(y−1), T = (x−1)² + 3(x−1) + 3 + (y−1)
    let m = ok(build_arithmetic_matroid(&x))?;
    let xm = &BiLaurent::x() - &BiLaurent::one();
    let ym = &BiLaurent::y() - &BiLaurent::one();
    let t_ari = &(&(&xm * &xm) + &(&xm * &BiLaurent::from_int(4))) + &(&BiLaurent::from_int(6) + &(&ym * &BiLaurent::from_int(2)));
    let t_ord = &(&(&xm * &xm) + &(&xm * &BiLaurent::from_int(3))) + &(&BiLaurent::from_int(3) + &ym);
    ensure(ok(aritutte(&m).expanded())? == t_ari, || "arithmetic Tutte polynomial".into())?;
    ensure(ok(tutte(&m).expanded())? == t_ord, || "Tutte polynomial".into())?;
    Ok("lcm 2, Z_M odd, Z_A even, χ/χ* on both classes, colorings [1,0],[2,0], flows [1,1,2],[2,2,1]".into())
}

#[test]
fn criterion_1_worked_example() {
    report(1, "worked example", example_criterion());
}

// ---------------------------------------------------------------------------

fn convolution_criterion() -> Check {
    let mut rng = corpus::rng(0xA11);
    let (x0, y0) = (int(3), BigRational::new(big(7), big(2)));
    for i in 0..200 {
        let m = corpus::random_ranked_set(&mut rng, 8);
        let rep = ok(verify_theorem1(&m))?;
        ensure(rep.equal, || format!("random ranked set #{i} (n = {})", m.len()))?;
        let value = ok(aritutte(&m).eval(&x0, &y0))?;
        ensure(value == direct_aritutte(&m, &x0, &y0, true), || format!("direct sum disagrees on #{i}"))?;
    }
    let lists = corpus_b();
    for (i, x) in lists.iter().enumerate() {
        let rep = ok(verify_theorem1(&ok(build_arithmetic_matroid(x))?))?;
        ensure(rep.equal, || format!("matrix #{i}"))?;
    }
    let mut rng = corpus::rng(0xDE17A);
    for i in 0..20 {
        let d = corpus::random_even_delta(&mut rng, 6);
        let m = ok(to_ranked_set(&d))?;
        let rep = ok(verify_theorem1(&m))?;
        ensure(rep.equal, || format!("even delta-matroid #{i}"))?;
    }
    Ok("200 ranked sets, 50 represented arithmetic matroids, 20 even delta-matroids; both forms".into())
}

#[test]
fn criterion_2_convolution_formula() {
    report(2, "convolution formula", convolution_criterion());
}

// ---------------------------------------------------------------------------

fn product_criterion() -> Check {
    let mut rng = corpus::rng(0x2222);
    for i in 0..50 {
        let m1 = corpus::random_ranked_set(&mut rng, 7);
        let m2 = corpus::with_random_mult(&mut rng, &m1);
        let rep = ok(verify_theorem2(&m1, &m2))?;
        ensure(rep.equal, || format!("pair #{i}"))?;
    }
    let x = ok(VectorList::free(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]))?;
    let m = ok(build_arithmetic_matroid(&x))?;
    let bases: Vec<BigRational> = m
        .ground()
        .subsets()
        .filter(|a| a.len() == 2 && m.rank(*a) == HalfInt::from_int(2))
        .map(|a| m.mult(a).clone())
        .collect();
    ensure(bases == vec![int(1), int(1), int(1), int(1), int(1), int(2)], || format!("basis multiplicities {bases:?}"))?;
    let squared = ok(m.product_mult(&m))?;
    let ones = squared.ground().subsets().filter(|a| a.len() == 2 && *squared.mult(*a) == int(1)).count();
    ensure(ones == 5, || format!("m² equals one on {ones} bases"))?;
    ensure(ok(verify_theorem2(&m, &m))?.equal, || "squared multiplicity".into())?;
    Ok("50 random pairs and m² of ((1,0),(0,1),(1,1),(1,−1)) with basis multiplicities (1,1,1,1,1,2)".into())
}

#[test]
fn criterion_3_product_formula() {
    report(3, "product formula", product_criterion());
}

// ---------------------------------------------------------------------------

fn positivity_criterion() -> Check {
    let lists = corpus_b();
    let mut rng = corpus::rng(0x9051);
    let mut molecule_count = 0;
    for (i, x) in lists.iter().enumerate() {
        let m = ok(build_arithmetic_matroid(x))?;
        let t = ok(aritutte(&m).expanded())?;
        for (_, _, c) in t.terms() {
            ensure(c.is_integer() && !c.is_negative(), || format!("list #{i}: coefficient {c}"))?;
        }
        for mol in molecules(&m) {
            molecule_count += 1;
            ensure(!rho(&m, &mol).is_negative(), || format!("list #{i}: negative ρ on {mol:?}"))?;
        }
        let order: Vec<usize> = (0..m.len()).rev().collect();
        let parts = ok(molecule_partition(&m, &order))?;
        let mut seen = vec![0u32; 1 << m.len()];
        let mut sum = BigRational::zero();
        for mol in &parts {
            for a in mol.members() {
                seen[a.index()] += 1;
            }
            sum += rho(&m, mol);
        }
        ensure(seen.iter().all(|&c| c == 1), || format!("list #{i}: partition does not cover 2^M exactly once"))?;
        let t00 = ok(aritutte(&m).eval(&int(0), &int(0)))?;
        ensure(sum == t00, || format!("list #{i}: Σρ = {sum}, 𝔗(0,0) = {t00}"))?;
        // rescaling keeps the matroid, so both multiplicities live on it
        let other = ok(build_arithmetic_matroid(&corpus::rescaled(&mut rng, x)))?;
        ensure(ok(check_p(&other))?.passed, || format!("list #{i}: rescaled list fails (P)"))?;
        let product = ok(m.product_mult(&other))?;
        ensure(ok(check_p(&product))?.passed, || format!("list #{i}: product fails (P)"))?;
    }
    Ok(format!("50 arithmetic matroids, {molecule_count} molecules with ρ ≥ 0, partitions sum to 𝔗(0,0), products pass (P)"))
}

#[test]
fn criterion_4_positivity() {
    report(4, "positivity", positivity_criterion());
}

// ---------------------------------------------------------------------------

fn zonotope_criterion() -> Check {
    let mut rng = corpus::rng(0x2070);
    for i in 0..30 {
        let x = corpus::random_lattice_list(&mut rng, 3, 6, 3);
        let m = ok(build_arithmetic_matroid(&x))?;
        let t = aritutte(&m);
        let closed = BigRational::from_integer(ok(count_lattice_points(&x, false))?);
        let open = BigRational::from_integer(ok(count_lattice_points(&x, true))?);
        ensure(closed == ok(t.eval(&int(2), &int(1)))?, || format!("list #{i}: lattice points {closed}"))?;
        ensure(open == ok(t.eval(&int(0), &int(1)))?, || format!("list #{i}: interior points {open}"))?;
        let faces = ok(verify_face_decomposition(&x))?;
        ensure(faces.equal, || format!("list #{i}: face decomposition {faces:?}"))?;
        let e = ok(ehrhart(&x))?;
        for q in 1..=3 {
            let count = BigRational::from_integer(ok(count_lattice_points(&ok(scale_list(&x, q))?, false))?);
            ensure(eval_univariate(&e, &int(q)) == count, || format!("list #{i}: Ehrhart at {q}"))?;
        }
    }
    Ok("30 lists: closed and relative-interior counts, flat sums, Ehrhart dilates 1..3 with prefactor q^rank".into())
}

#[test]
fn criterion_5_zonotopes() {
    report(5, "zonotopes", zonotope_criterion());
}

// ---------------------------------------------------------------------------

fn unimodular(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

fn linear_algebra_criterion() -> Check {
    let mut rng: CorpusRng = corpus::rng(0x5AF);
    for i in 0..100 {
        let a = corpus::random_matrix(&mut rng, 5, 5, 9);
        let r = snf(&a);
        ensure(r.u.mul(&a).mul(&r.v) == r.d, || format!("matrix #{i}: UAV ≠ D"))?;
        ensure(unimodular(&r.u) && unimodular(&r.v), || format!("matrix #{i}: transforms not unimodular"))?;
        for row in 0..a.rows() {
            for col in 0..a.cols() {
                ensure(row == col || r.d[(row, col)].is_zero(), || format!("matrix #{i}: off-diagonal entry"))?;
            }
        }
        let diag = r.diagonal();
        ensure(diag.iter().all(|d| !d.is_negative()), || format!("matrix #{i}: negative invariant factor"))?;
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            ensure(divides, || format!("matrix #{i}: chain broken at {} | {}", w[0], w[1]))?;
        }
    }
    let mut independent = 0;
    for (i, x) in corpus_b().iter().enumerate() {
        for a in SubsetMask::full(x.len()).subsets() {
            let m = ok(x.multiplicity(a))?;
            if ok(x.is_independent(a))? {
                independent += 1;
                ensure(ok(x.gcd_minors(a))? == m, || format!("list #{i}: gcd of minors on {a:?}"))?;
            }
            ensure(ok(x.multiplicity_via_bases(a))? == m, || format!("list #{i}: bases formula on {a:?}"))?;
        }
    }
    let mut rng = corpus::rng(0x6A);
    for i in 0..20 {
        let g = corpus::random_graph(&mut rng, 5, 6, 4, 2);
        let x = ok(graph_to_vectorlist(&g, None))?;
        for a in SubsetMask::full(x.len()).subsets() {
            ensure(ok(x.multiplicity(a))? == ok(graph_multiplicity_formula(&g, a))?, || {
                format!("graph #{i}: subset {a:?}")
            })?;
        }
    }
    Ok(format!("100 Smith forms, {independent} independent sets by minors, all subsets by bases, 20 labeled graphs"))
}

#[test]
fn criterion_6_exact_linear_algebra() {
    report(6, "exact linear algebra", linear_algebra_criterion());
}

// ---------------------------------------------------------------------------

fn algebra_criterion() -> Check {
    let mut rng = corpus::rng(0x1E77);
    for i in 0..20 {
        let m = corpus::random_ranked_set(&mut rng, 6);
        for f in standard_functionals() {
            let value = ok(f.evaluate(&m))?;
            ensure(ok(convolve(&ConvFunctional::Delta, &f, &m))? == value, || format!("#{i}: δ∘f ≠ f"))?;
            ensure(ok(convolve(&f, &ConvFunctional::Delta, &m))? == value, || format!("#{i}: f∘δ ≠ f"))?;
        }
        ensure(ok(verify_associativity_all(&m))?.equal, || format!("#{i}: associativity"))?;
        ensure(ok(verify_zeta_inverse(&m))?.equal, || format!("#{i}: ζ(x,y)∘ζ(−x,−y) ≠ δ"))?;
        ensure(ok(verify_lemma13(&m, false))?.equal, || format!("#{i}: first interchange identity"))?;
        ensure(ok(verify_lemma13(&m, true))?.equal, || format!("#{i}: second interchange identity"))?;
    }
    Ok("20 ranked sets: δ unit, associativity over {δ, ζ, ξ, ξ*}, ζ inverse, both interchange identities".into())
}

#[test]
fn criterion_7_convolution_algebra() {
    report(7, "convolution algebra", algebra_criterion());
}

// ---------------------------------------------------------------------------

fn flows_colorings_criterion() -> Check {
    let mut rng = corpus::rng(0xF10);
    let mut lists: Vec<VectorList> = (0..25).map(|_| corpus::random_torsion_list(&mut rng, 2, 4)).collect();
    lists.push(corpus::worked_example());
    let (mut t6, mut c7, mut c8, mut normalized) = (0, 0, 0, 0);
    let mut tally = |rep: &arith_tutte::oracles::OracleReport| normalized += usize::from(rep.detail.is_some());
    for (i, x) in lists.iter().enumerate() {
        let sets = ok(qsets(x))?;
        for q in 1..=8u64 {
            if sets.in_za(q) || sets.in_zm(q) {
                for rep in ok(verify_theorem6(x, q))? {
                    ensure(rep.equal, || format!("list #{i} ({}), q = {q}: {rep:?}", x.group()))?;
                    tally(&rep);
                    t6 += 1;
                }
            }
        }
        for p in 1..=8u64 {
            for q in 1..=8u64 {
                if sets.in_za(p) && sets.in_za(q) {
                    let rep = ok(verify_corollary7(x, p, q))?;
                    ensure(rep.is_applicable() && rep.equal, || format!("list #{i}: {rep:?}"))?;
                    tally(&rep);
                    c7 += 1;
                }
                if (sets.in_za(p) && sets.in_zm(q)) || (sets.in_zm(p) && sets.in_za(q)) {
                    let rep = ok(verify_corollary8(x, p, q))?;
                    ensure(rep.is_applicable() && rep.equal, || format!("list #{i}: {rep:?}"))?;
                    tally(&rep);
                    c8 += 1;
                }
            }
        }
    }
    let x = corpus::worked_example();
    for (p, q, class) in [(2, 3, "p:Z_A,q:Z_M"), (3, 2, "p:Z_M,q:Z_A")] {
        let rep = ok(verify_corollary8(&x, p, q))?;
        ensure(rep.equal && rep.class == class && rep.detail.is_none(), || {
            format!("worked example (p, q) = ({p}, {q}): {rep:?}")
        })?;
    }
    Ok(format!(
        "{t6} coloring/flow checks, {c7} squared-multiplicity checks, {c8} mixed checks incl. (2,3) and (3,2); \
         {normalized} of them use the |tor G| flow normalization or the p^(rank X - rank G) prefactor"
    ))
}

#[test]
fn criterion_8_flows_and_colorings() {
    report(8, "flows and colorings", flows_colorings_criterion());
}

// ---------------------------------------------------------------------------

fn negative_controls() -> Check {
    let labels = RankedSet::default_labels;
    let h = HalfInt::from_int;
    // a loop e1 with m(∅) = 2, m({e1}) = 3: 3 does not divide 2
    let a1 = ok(RankedSet::new(labels(1), vec![h(0), h(0)], vec![int(2), int(3)]))?;
    let rep = ok(check_a1(&a1))?;
    ensure(!rep.passed && rep.has("A1"), || "A1 violation missed".into())?;
    let w = &rep.violations[0];
    ensure(w.element.is_some(), || "A1 witness lacks an element".into())?;
    // e1 independent, e2 a loop; molecule [∅, {e1,e2}] needs m(∅)m(E) = m(e1)m(e2)
    let a2 = ok(RankedSet::new(labels(2), vec![h(0), h(1), h(0), h(1)], vec![int(1), int(2), int(1), int(1)]))?;
    ensure(ok(check_a1(&a2))?.passed, || "A2 control should satisfy A1".into())?;
    let rep = ok(check_a2(&a2))?;
    ensure(!rep.passed && rep.has("A2") && !rep.violations[0].sets.is_empty(), || "A2 violation missed".into())?;
    // r(a) + r(b) = 2 < r(ab) + r(∅) = 3
    let sub = ok(RankedSet::with_unit_mult(labels(2), vec![h(0), h(1), h(1), h(3)]))?;
    let rep = check_polymatroid(&sub);
    let v = rep.violations.iter().find(|v| v.axiom == "submodular").ok_or("submodularity violation missed")?;
    ensure(v.sets.len() == 2, || format!("submodularity witness {v:?}"))?;
    let fam = vec![vec!["a".to_string()], vec!["b".to_string(), "c".to_string()]];
    let d = ok(DeltaMatroid::from_labels(vec!["a".into(), "b".into(), "c".into()], &fam, false))?;
    let rep = check_symmetric_exchange(&d);
    ensure(!rep.passed && rep.violations[0].element.is_some(), || "exchange violation missed".into())?;
    Ok("A1, A2, submodularity and symmetric exchange violations each reported with a witness".into())
}

#[test]
fn criterion_9_negative_controls() {
    report(9, "negative controls", negative_controls());
}

/// The flow and convolution identities in their literal form (no `|tor G|`
/// division, prefactor `p^{rank G − rank X}`) hold only for torsion-free `G`
/// with `rank X = rank G`. Concrete failures outside that range.
#[test]
fn literal_flow_forms_need_normalization() {
    use arith_tutte::abelian::FGGroup;
    // G = Z/4, X = (1, 1), q = 4: three flows, but 𝔗(0, −3) = 12
    let g = FGGroup::new(0, vec![big(4)]).unwrap();
    let x = VectorList::new(g, vec![vec![big(1)], vec![big(1)]]).unwrap();
    let t = aritutte(&build_arithmetic_matroid(&x).unwrap());
    assert_eq!(count_flows(&x, 4).unwrap(), big(3));
    assert_eq!(t.eval(&int(0), &int(-3)).unwrap(), int(12));
    // empty list in Z², p = q = 2: 𝔗 = 1, Σ = χ_∅(2) = 4, literal prefactor gives 16
    let x = VectorList::free(2, &[] as &[Vec<i64>]).unwrap();
    let colorings = count_colorings(&x, 2).unwrap();
    assert_eq!(colorings, big(4));
    assert_ne!(BigRational::from_integer(colorings * big(4)), int(1));
    let rep = verify_corollary7(&x, 2, 2).unwrap();
    assert!(rep.equal && rep.detail.is_some());
}
