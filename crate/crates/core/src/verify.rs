//! Identity suites over a built-in zoo of (G, H) pairs. Failures are
//! reported with a serialized counterexample instead of aborting.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::charring::{
    anti_invariant_decompose, divide_by_weyl_denominator, euler_class, euler_class_relative,
    irreducible_restriction, weyl_dimension, GroupElement, TorusElement, TwistClass,
};
use crate::error::{Error, Result};
use crate::induction::{unit_input, ClassicalKind, InductionProblem};
use crate::multiplets::{alternating_dimension_sum, gkrs_identity_check, multiplet};
use crate::random::Sampler;
use crate::rational::RationalWeight;
use crate::rootdata::{
    subgroup_character_lattice, RootDatum, SubgroupDatum, DEFAULT_WEYL_ORDER_CAP,
};
use crate::spinc::{classify, nu};
use crate::weyl::{
    apply_antisymmetrizer, to_dominant_chamber, Antisymmetrizer, Chamber, Reflector, WeylGroup,
};

/// `(group label, subgroup preset)` pairs every suite runs over.
pub const ZOO: &[(&str, &str)] = &[
    ("A1", "g"),
    ("A1", "t"),
    ("A2", "t"),
    ("A2", "levi:1"),
    ("A1xA1", "t"),
    ("B2", "t"),
    ("G2", "a2long"),
    ("B3:spin", "so3xso4"),
    ("C2", "a1xa1"),
    ("F4", "b4"),
];

/// Chains `T ⊂ H ⊂ G` used for induction in stages.
pub const CHAINS: &[(&str, &str)] = &[
    ("A2", "levi:1"),
    ("G2", "a2long"),
    ("B3:spin", "so3xso4"),
    ("C2", "a1xa1"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    Weyl,
    Charring,
    Induction,
    Multiplets,
    Spinc,
    AppendixB,
    AppendixC,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Weyl,
        Suite::Charring,
        Suite::Induction,
        Suite::Multiplets,
        Suite::Spinc,
        Suite::AppendixB,
        Suite::AppendixC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Charring => "charring",
            Suite::Induction => "induction",
            Suite::Multiplets => "multiplets",
            Suite::Spinc => "spinc",
            Suite::AppendixB => "appendixB",
            Suite::AppendixC => "appendixC",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub case: String,
    pub trials: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

fn mix(seed: u64, tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Runs `f` for each trial; `Ok(Some(text))` marks a counterexample.
fn run_trials(
    name: &str,
    case: &str,
    trials: usize,
    mut f: impl FnMut(usize) -> Result<Option<String>>,
) -> Check {
    let mut counterexample = None;
    for t in 0..trials {
        match f(t) {
            Ok(None) => {}
            Ok(Some(c)) => {
                counterexample = Some(format!("trial {t}: {c}"));
                break;
            }
            Err(e) => {
                counterexample = Some(format!("trial {t}: error {}: {e}", e.code()));
                break;
            }
        }
    }
    Check {
        name: name.into(),
        case: case.into(),
        trials,
        passed: counterexample.is_none(),
        counterexample,
    }
}

fn single(name: &str, case: &str, f: impl FnOnce() -> Result<Option<String>>) -> Check {
    let mut f = Some(f);
    run_trials(name, case, 1, |_| (f.take().expect("single trial"))())
}

fn expect_eq<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T) -> Option<String> {
    (lhs != rhs).then(|| format!("lhs:\n{lhs}rhs:\n{rhs}"))
}

pub struct Case {
    pub label: String,
    pub problem: InductionProblem,
}

impl Case {
    pub fn new(group: &str, sub: &str) -> Result<Case> {
        let d = Arc::new(RootDatum::from_label(group)?);
        let h = SubgroupDatum::preset(&d, sub)?;
        Ok(Case {
            label: format!("{group}/{sub}"),
            problem: InductionProblem::for_pair(&h)?,
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.problem.big().datum()
    }

    pub fn is_proper(&self) -> bool {
        self.problem.small() != self.problem.big()
    }
}

pub fn zoo() -> Result<Vec<Case>> {
    ZOO.iter().map(|(g, h)| Case::new(g, h)).collect()
}

/// Distinct data of the zoo, paired with their full-group problem.
fn data() -> Result<Vec<Case>> {
    let mut seen: Vec<&str> = Vec::new();
    let mut out = Vec::new();
    for (g, _) in ZOO {
        if !seen.contains(g) {
            seen.push(g);
            out.push(Case::new(g, "g")?);
        }
    }
    Ok(out)
}

pub fn run(suites: &[Suite], seed: u64) -> VerifyReport {
    let mut list = suites.to_vec();
    list.sort();
    list.dedup();
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = list
            .iter()
            .map(|&suite| s.spawn(move || run_suite(suite, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread"))
            .collect()
    });
    VerifyReport {
        seed,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let seed = mix(seed, suite.name());
    let checks = match suite {
        Suite::Weyl => weyl_suite(seed),
        Suite::Charring => charring_suite(seed),
        Suite::Induction => induction_suite(seed),
        Suite::Multiplets => multiplets_suite(seed),
        Suite::Spinc => spinc_suite(seed),
        Suite::AppendixB => appendix_b_suite(),
        Suite::AppendixC => appendix_c_suite(seed),
    };
    let checks = checks.unwrap_or_else(|e| {
        vec![Check {
            name: "setup".into(),
            case: suite.name().into(),
            trials: 0,
            passed: false,
            counterexample: Some(format!("error {}: {e}", e.code())),
        }]
    });
    SuiteReport {
        suite,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn weyl_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in zoo()? {
        let p = &case.problem;
        let wg = p.weyl_big();
        let wh = p.weyl_small();
        out.push(single("group_order", &case.label, || {
            Ok((wg.order() as u128 != case.datum().weyl_order())
                .then(|| format!("|W| = {}", wg.order())))
        }));
        out.push(single("coset_factorization", &case.label, || {
            let mut hits = vec![0usize; wg.order()];
            let d = case.datum();
            let levi = p.small().is_levi();
            for &u in p.coset_reps().indices() {
                let moves_positive = p.small().positive().iter().all(|&i| {
                    d.root_index(&wg.element(u).apply(&d.root(i).weight))
                        .is_some_and(|j| d.is_positive(j))
                });
                if !moves_positive {
                    return Ok(Some(format!(
                        "rep {u} sends a positive H-root to a negative root"
                    )));
                }
                for v in 0..wh.order() {
                    let vg = wg.index_of(wh.element(v)).ok_or(Error::NotASubgroup)?;
                    let k = wg.multiply(u, vg);
                    if levi
                        && wg.element(k).length()
                            != wg.element(u).length() + wg.element(vg).length()
                    {
                        return Ok(Some(format!("lengths do not add for rep {u} and {v}")));
                    }
                    hits[k] += 1;
                }
            }
            Ok(hits
                .iter()
                .position(|&h| h != 1)
                .map(|k| format!("element {k} factors {} times", hits[k])))
        }));
        let mut s = Sampler::for_datum(mix(seed, &case.label), case.datum());
        let g = p.big().clone();
        let refl = Reflector::new(&g);
        out.push(run_trials("chamber_uniqueness", &case.label, 50, |_| {
            let mu = s.weight(case.datum(), &TwistClass::zero(case.datum().rank()));
            let strict: Vec<usize> = (0..wg.order())
                .filter(|&k| {
                    let x = wg.element(k).apply(mu.num());
                    (0..refl.simple_count()).all(|j| refl.pairing(j, &x) > 0)
                })
                .collect();
            Ok(match to_dominant_chamber(&g, &mu) {
                Chamber::Singular => {
                    (!strict.is_empty()).then(|| format!("{mu} reported singular"))
                }
                Chamber::Regular { w, image } => {
                    let ok = strict.len() == 1
                        && wg.element(strict[0]) == &w
                        && w.apply_rational(&mu) == image;
                    (!ok).then(|| format!("{mu}: {} strict images", strict.len()))
                }
            })
        }));
        let tw = TwistClass::of(case.datum().rho());
        out.push(run_trials(
            "antisymmetrizer_factorization",
            &case.label,
            30,
            |_| {
                let a = s.torus_element(case.datum(), &tw);
                let reps = p.coset_reps();
                let jg = apply_antisymmetrizer(Antisymmetrizer::G, wg, wh, reps, &a)?;
                let jh = apply_antisymmetrizer(Antisymmetrizer::H, wg, wh, reps, &a)?;
                let jm_jh = apply_antisymmetrizer(Antisymmetrizer::M, wg, wh, reps, &jh)?;
                let jmop = apply_antisymmetrizer(Antisymmetrizer::MOp, wg, wh, reps, &a)?;
                let jh_jmop = apply_antisymmetrizer(Antisymmetrizer::H, wg, wh, reps, &jmop)?;
                Ok(expect_eq(&jg, &jm_jh)
                    .or_else(|| expect_eq(&jg, &jh_jmop))
                    .map(|c| format!("a = {a}\n{c}")))
            },
        ));
    }
    Ok(out)
}

fn charring_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in data()? {
        let p = &case.problem;
        let g = p.big().clone();
        let d = case.datum().clone();
        let mut s = Sampler::for_datum(mix(seed, &case.label), &d);
        let zero = TwistClass::zero(d.rank());
        let dg = p.weyl_denominator(crate::induction::Scope::G).clone();
        out.push(run_trials(
            "weyl_character_formula",
            &case.label,
            50,
            |_| {
                let lam = s.dominant_weight(&g, &zero)?;
                let chi = irreducible_restriction(&g, &lam)?;
                let lhs = &dg * &chi;
                let rhs = p
                    .weyl_big()
                    .antisymmetrize(&TorusElement::monomial(&(&lam + d.rho()), 1))?;
                Ok(expect_eq(&lhs, &rhs).map(|c| format!("λ = {lam}\n{c}")))
            },
        ));
        out.push(run_trials("dimension_formula", &case.label, 20, |_| {
            let lam = s.dominant_weight(&g, &zero)?;
            let chi = irreducible_restriction(&g, &lam)?;
            let dim = weyl_dimension(&g, &lam)?;
            Ok((chi.augmentation() != dim)
                .then(|| format!("λ = {lam}: {} vs {dim}", chi.augmentation())))
        }));
        let tw = TwistClass::of(d.rho());
        out.push(run_trials("dual_antihomomorphism", &case.label, 20, |_| {
            let a = s.torus_element(&d, &tw);
            let b = s.torus_element(&d, &zero);
            let ok =
                a.dualize().dualize() == a && (&a * &b).dualize() == &a.dualize() * &b.dualize();
            Ok((!ok).then(|| format!("a = {a}b = {b}")))
        }));
    }
    for case in zoo()? {
        if !case.is_proper() {
            continue;
        }
        out.push(single("euler_class_augmentation", &case.label, || {
            let e = euler_class(case.problem.small());
            Ok((e.augmentation() != 0).then(|| e.to_string()))
        }));
    }
    for (group, sub) in CHAINS {
        let label = format!("{group}/{sub}");
        out.push(single("euler_class_multiplicativity", &label, || {
            let d = Arc::new(RootDatum::from_label(group)?);
            let g = SubgroupDatum::full(&d);
            let h = SubgroupDatum::preset(&d, sub)?;
            let t = SubgroupDatum::torus(&d);
            let lhs = euler_class_relative(&g, &t);
            let rhs = &euler_class_relative(&g, &h) * &euler_class_relative(&h, &t);
            Ok(expect_eq(&lhs, &rhs))
        }));
    }
    Ok(out)
}

fn appendix_c_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in data()? {
        let p = &case.problem;
        let d = case.datum().clone();
        let mut s = Sampler::for_datum(mix(seed, &case.label), &d);
        let tw = TwistClass::of(d.rho());
        out.push(run_trials(
            "anti_invariant_divisible",
            &case.label,
            100,
            |_| {
                let a = s.torus_element(&d, &tw);
                let j = p.weyl_big().antisymmetrize(&a)?;
                let q = divide_by_weyl_denominator(p.big(), &j)?;
                if !q.is_invariant_under(p.weyl_big().generators())? {
                    return Ok(Some(format!("quotient of J({a}) is not invariant")));
                }
                let back = p.weyl_denominator(crate::induction::Scope::G).try_mul(&q)?;
                Ok(expect_eq(&back, &j))
            },
        ));
        let zero = TwistClass::zero(d.rank());
        out.push(run_trials("anti_invariant_basis", &case.label, 20, |_| {
            let b = s.group_element(p.big(), &zero)?;
            let prod = p
                .weyl_denominator(crate::induction::Scope::G)
                .try_mul(&b.expand()?)?;
            let coeffs = anti_invariant_decompose(p.big(), &prod)?;
            let mut again = GroupElement::zero(p.big(), zero.clone());
            for (e, c) in coeffs {
                again.add_term(&(&e - d.rho()), c)?;
            }
            Ok(expect_eq(&again, &b))
        }));
    }
    Ok(out)
}

fn induction_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in zoo()? {
        let p = &case.problem;
        let d = case.datum().clone();
        let trivial = GroupElement::trivial(p.big());
        out.push(single("unit_induction", &case.label, || {
            Ok(expect_eq(
                &p.induce_twisted_spinc(&unit_input(p)?, true)?,
                &trivial,
            ))
        }));
        out.push(single("euler_characteristic", &case.label, || {
            let got = p.induce_twisted_spinc(&p.hodge_de_rham_input(), true)?;
            Ok(expect_eq(&got, &trivial.scale(p.coset_reps().len() as i64)))
        }));
        let mut s = Sampler::for_datum(mix(seed, &case.label), &d);
        let tw = p.input_twist();
        out.push(run_trials("bwb_agreement", &case.label, 100, |_| {
            let mu = s.dominant_weight(p.small(), &tw)?;
            let lhs = p.induce_twisted_spinc(&irreducible_restriction(p.small(), &mu)?, false)?;
            Ok(expect_eq(&lhs, &p.bwb_irreducible(&mu)?).map(|c| format!("μ = {mu}\n{c}")))
        }));
        let zero = TwistClass::zero(d.rank());
        let linear_trials = if d.semisimple_rank() >= 4 { 5 } else { 20 };
        out.push(run_trials(
            "r_g_linearity",
            &case.label,
            linear_trials,
            |_| {
                let b = s.group_element(p.big(), &zero)?.expand()?;
                let a = s.group_element(p.small(), &tw)?.expand()?;
                let lhs = p.induce_twisted_spinc(&b.try_mul(&a)?, false)?.expand()?;
                let rhs = b.try_mul(&p.induce_twisted_spinc(&a, false)?.expand()?)?;
                Ok(expect_eq(&lhs, &rhs))
            },
        ));
        out.push(run_trials(
            "branch_restricts",
            &case.label,
            linear_trials,
            |_| {
                let b = s.group_element(p.big(), &zero)?;
                let r = p.branch(&b)?;
                Ok((r.dimension()? != b.dimension()?).then(|| format!("{b} restricts to {r}")))
            },
        ));
        if p.small().is_levi() {
            out.push(run_trials(
                "holomorphic_is_spinc_2rho",
                &case.label,
                10,
                |_| {
                    let a = s.group_element(p.small(), &zero)?.expand()?;
                    let gamma = p.rho_m().scale(2);
                    let gamma = gamma
                        .as_integral()
                        .ok_or_else(|| Error::InternalInconsistency("2ρ_M".into()))?;
                    let hol = p.induce_classical(&ClassicalKind::Holomorphic, &a)?;
                    let spc = p.induce_classical(&ClassicalKind::SpincWith(gamma.to_vec()), &a)?;
                    Ok(expect_eq(&hol, &spc))
                },
            ));
        }
        out.push(single("lefschetz", &case.label, || {
            let unit = unit_input(p)?;
            let r = p.lefschetz_check(p.euler_class(), &unit, 20, mix(seed, "lefschetz"))?;
            let h = p.lefschetz_check(
                &p.hodge_de_rham_euler(),
                &TorusElement::one(d.rank()),
                20,
                mix(seed, "hdr"),
            )?;
            let worst = r.max_relative_error.max(h.max_relative_error);
            Ok((worst > 1e-8).then(|| format!("max relative error {worst:e}")))
        }));
    }
    for (group, sub) in CHAINS {
        let label = format!("T/{sub}/{group}");
        let d = Arc::new(RootDatum::from_label(group)?);
        let h = SubgroupDatum::preset(&d, sub)?;
        let t = SubgroupDatum::torus(&d);
        let gt = InductionProblem::for_pair(&t)?;
        let gh = InductionProblem::for_pair(&h)?;
        let ht = InductionProblem::with_scopes(
            &h,
            &t,
            TwistClass::of(gh.rho_m()),
            DEFAULT_WEYL_ORDER_CAP,
        )?;
        let mut s = Sampler::for_datum(mix(seed, &label), &d);
        let tw = TwistClass::of(d.rho());
        out.push(run_trials("functoriality", &label, 50, |_| {
            let a = s.torus_element(&d, &tw);
            let direct = gt.induce_twisted_spinc(&a, true)?;
            let staged = gh.induce_group(&ht.induce_twisted_spinc(&a, true)?)?;
            Ok(expect_eq(&direct, &staged).map(|c| format!("a = {a}\n{c}")))
        }));
    }
    for group in ["A1", "A2"] {
        let case = Case::new(group, "t")?;
        let p = &case.problem;
        for tau in [
            TwistClass::zero(p.rho_m().rank()),
            TwistClass::of(p.rho_m()),
        ] {
            out.push(single(
                "pairing_unit",
                &format!("{} τ={tau}", case.label),
                || {
                    let (a, b) = p.steinberg_pairing_bases(&tau)?;
                    let r = p.pairing_report(&tau, &a, &b)?;
                    if !r.is_unit {
                        return Ok(Some(format!("determinant {}", r.determinant_character)));
                    }
                    let swapped = p.pairing_report(&p.input_twist().sub(&tau), &b, &a)?;
                    let n = a.len();
                    let transposed =
                        (0..n).all(|i| (0..n).all(|j| r.gram[i][j] == swapped.gram[j][i]));
                    Ok((!transposed)
                        .then(|| "swapped Gram matrix is not the transpose".to_string()))
                },
            ));
        }
    }
    Ok(out)
}

fn multiplets_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in zoo()? {
        let p = &case.problem;
        let d = case.datum().clone();
        let tw = TwistClass::of(d.rho());
        let mut s = Sampler::for_datum(mix(seed, &case.label), &d);
        if !case.is_proper() {
            out.push(single("single_member", &case.label, || {
                let m = multiplet(p, &TorusElement::monomial(d.rho(), 1))?;
                let ok =
                    m.len() == 1 && m.members[0].sign == 1 && alternating_dimension_sum(&m)? == 1;
                Ok((!ok).then(|| format!("{} members", m.len())))
            }));
            continue;
        }
        out.push(run_trials(
            "alternating_sum_vanishes",
            &case.label,
            100,
            |_| {
                let a = s.torus_element(&d, &tw);
                let m = multiplet(p, &a)?;
                let sum = alternating_dimension_sum(&m)?;
                Ok((sum != 0 || m.len() != p.coset_reps().len())
                    .then(|| format!("a = {a}sum = {sum}")))
            },
        ));
        out.push(run_trials("gkrs_identity", &case.label, 50, |_| {
            let a = s.torus_element(&d, &tw);
            Ok((!gkrs_identity_check(p, &a)?).then(|| format!("a = {a}")))
        }));
        let g = p.big().clone();
        let zero = TwistClass::zero(d.rank());
        out.push(run_trials(
            "strictly_dominant_distinct",
            &case.label,
            20,
            |_| {
                let lam = &s.dominant_weight(&g, &zero)? + d.rho();
                let m = multiplet(p, &TorusElement::monomial(&lam, 1))?;
                let mut seen = Vec::new();
                for x in &m.members {
                    if x.element.len() != 1 {
                        return Ok(Some(format!("λ = {lam}: member {}", x.element)));
                    }
                    let hw = x.element.terms().next().map(|(w, _)| w);
                    if seen.contains(&hw) {
                        return Ok(Some(format!("λ = {lam}: repeated member")));
                    }
                    seen.push(hw);
                }
                Ok(None)
            },
        ));
        out.push(single("trivial_source", &case.label, || {
            let m = multiplet(p, &TorusElement::monomial(d.rho(), 1))?;
            let mut sum = 0;
            for x in &m.members {
                for (w, c) in x.element.terms() {
                    sum += x.sign * c * weyl_dimension(p.small(), &w)?;
                }
            }
            Ok((sum != 0 || m.len() != p.coset_reps().len())
                .then(|| format!("{} members, sum {sum}", m.len())))
        }));
    }
    Ok(out)
}

fn spinc_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in data()? {
        out.push(single("torus_is_c_spinorial", &case.label, || {
            let t = SubgroupDatum::torus(case.datum());
            let c = classify(&InductionProblem::for_pair(&t)?)?;
            Ok((!c.is_c_spinorial).then(|| "flag variety reported non-Spin^c".to_string()))
        }));
    }
    out.push(single("oriented_three_planes", "B3:spin/so3xso4", || {
        let c = classify(&Case::new("B3:spin", "so3xso4")?.problem)?;
        Ok(c.is_c_spinorial.then(|| "reported c-spinorial".to_string()))
    }));
    for case in zoo()? {
        let p = &case.problem;
        let c = classify(p);
        out.push(single("classification_consistent", &case.label, || {
            let c = c.clone()?;
            let xh = subgroup_character_lattice(p.small());
            if xh.rank() == 0 && c.is_c_spinorial != c.is_spin {
                return Ok(Some("X(H) = 0 but Spin and Spin^c disagree".into()));
            }
            if c.is_spin && !c.is_c_spinorial {
                return Ok(Some("Spin without Spin^c".into()));
            }
            if p.small().is_levi() && !c.nu.as_ref().is_some_and(RationalWeight::is_zero) {
                return Ok(Some(format!("Levi subgroup with ν = {:?}", c.nu)));
            }
            Ok(None)
        }));
        let Ok(c) = c else { continue };
        let Some(gamma) = c.gamma.clone() else {
            continue;
        };
        out.push(single("torsor_law", &case.label, || {
            let xh = subgroup_character_lattice(p.small());
            for chi in xh.basis() {
                let g2: Vec<i64> = gamma.iter().zip(chi).map(|(a, b)| a + 2 * b).collect();
                let v = nu(p, &g2)?;
                if v != &nu(p, &gamma)? + &RationalWeight::integral(chi.clone()) || !v.is_integral()
                {
                    return Ok(Some(format!("γ + 2χ with χ = {chi:?}")));
                }
            }
            Ok(None)
        }));
        let d = case.datum().clone();
        let mut s = Sampler::for_datum(mix(seed, &case.label), &d);
        let half = RationalWeight::integral(gamma.clone()).half();
        let tw = TwistClass::of(p.rho_m());
        out.push(run_trials("versus_generator", &case.label, 100, |_| {
            let a = s.torus_element(&d, &tw);
            let down = a.try_mul(&TorusElement::monomial(&-&half, 1))?;
            if !down.twist().is_zero() {
                return Ok(Some(format!(
                    "twist {} after dividing by e^(γ/2)",
                    down.twist()
                )));
            }
            Ok(expect_eq(
                &down.try_mul(&TorusElement::monomial(&half, 1))?,
                &a,
            ))
        }));
    }
    Ok(out)
}

/// SO(4) = (SU(2) × SU(2)) / ±1 with `x_i` the defining characters of the
/// two factors.
pub struct AppendixB {
    pub group: SubgroupDatum,
    pub x1: TorusElement,
    pub x2: TorusElement,
}

impl AppendixB {
    pub fn new() -> Result<AppendixB> {
        let d = Arc::new(RootDatum::from_label("D2:so")?);
        let x = |w: &RationalWeight| {
            TorusElement::monomial(w, 1).try_add(&TorusElement::monomial(&-w, 1))
        };
        Ok(AppendixB {
            x1: x(d.fundamental_weight(0))?,
            x2: x(d.fundamental_weight(1))?,
            group: SubgroupDatum::full(&d),
        })
    }

    pub fn monomial(&self, r1: u32, r2: u32) -> TorusElement {
        let mut m = TorusElement::one(2);
        for _ in 0..r1 {
            m = &m * &self.x1;
        }
        for _ in 0..r2 {
            m = &m * &self.x2;
        }
        m
    }

    /// Highest-weight expansion of a W-invariant element.
    pub fn decompose(&self, a: &TorusElement) -> Result<GroupElement> {
        let d = self.group.datum();
        let prod = crate::charring::weyl_denominator(&self.group).try_mul(a)?;
        let mut out = GroupElement::zero(&self.group, a.twist().clone());
        for (e, c) in anti_invariant_decompose(&self.group, &prod)? {
            out.add_term(&(&e - d.rho()), c)?;
        }
        Ok(out)
    }

    pub fn highest(&self, a: i64, b: i64) -> RationalWeight {
        let d = self.group.datum();
        &d.fundamental_weight(0).scale(a) + &d.fundamental_weight(1).scale(b)
    }
}

fn appendix_b_suite() -> Result<Vec<Check>> {
    let b = AppendixB::new()?;
    let case = "D2:so";
    let (x1, x2) = (&b.x1, &b.x2);
    let y1 = x1 * x1;
    let y2 = x2 * x2;
    let y3 = x1 * x2;
    let mut out = vec![
        single("ring_relation", case, || {
            Ok(expect_eq(&(&y1 * &y2), &(&y3 * &y3)))
        }),
        single("module_relation", case, || {
            Ok(expect_eq(&(&y3 * x1), &(&y1 * x2)).or_else(|| expect_eq(&(&y3 * x2), &(&y2 * x1))))
        }),
        single("levels", case, || {
            let ok = !x1.twist().is_zero()
                && x1.twist() == x2.twist()
                && [&y1, &y2, &y3].iter().all(|y| y.twist().is_zero());
            Ok((!ok).then(|| format!("x1 twist {}, x2 twist {}", x1.twist(), x2.twist())))
        }),
    ];
    let w = WeylGroup::generate(&b.group)?;
    out.push(single("parity_split", case, || {
        for r1 in 0..=4u32 {
            for r2 in 0..=(4 - r1) {
                let m = b.monomial(r1, r2);
                if m.twist().is_zero() != ((r1 + r2) % 2 == 0) {
                    return Ok(Some(format!("x1^{r1} x2^{r2} has twist {}", m.twist())));
                }
                if !m.is_invariant_under(w.generators())? {
                    return Ok(Some(format!("x1^{r1} x2^{r2} is not invariant")));
                }
                let dec = b.decompose(&m)?;
                if dec.coefficient(&b.highest(r1.into(), r2.into())) != 1 {
                    return Ok(Some(format!(
                        "leading coefficient of x1^{r1} x2^{r2}: {dec}"
                    )));
                }
            }
        }
        Ok(None)
    }));
    out.push(single("invariant_collection_basis", case, || {
        // V(aϖ1 + bϖ2) = x1^a x2^b minus lower irreducibles of the same level.
        let mut known: Vec<((i64, i64), TorusElement)> = Vec::new();
        for total in 0..=4i64 {
            for a in 0..=total {
                let bb = total - a;
                let m = b.monomial(a as u32, bb as u32);
                let mut expr = m.clone();
                for (hw, c) in b.decompose(&m)?.terms() {
                    if hw == b.highest(a, bb) {
                        continue;
                    }
                    let Some((_, v)) = known.iter().find(|((p, q), _)| b.highest(*p, *q) == hw)
                    else {
                        return Ok(Some(format!(
                            "lower weight {hw} of x1^{a} x2^{bb} is not triangular"
                        )));
                    };
                    if TwistClass::of(&hw) != *m.twist() {
                        return Ok(Some(format!("x1^{a} x2^{bb} mixes levels")));
                    }
                    expr.add_scaled_in_place(v, -c)?;
                }
                let target = irreducible_restriction(&b.group, &b.highest(a, bb))?;
                if let Some(c) = expect_eq(&expr, &target) {
                    return Ok(Some(format!("V({a},{bb}):\n{c}")));
                }
                known.push(((a, bb), expr));
            }
        }
        Ok(None)
    }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), 7);
        assert!(Suite::parse_list("bogus").is_err());
    }

    #[test]
    fn appendix_b_passes() {
        let r = run_suite(Suite::AppendixB, 0);
        assert!(r.passed, "{:#?}", r.checks);
    }

    #[test]
    fn mix_is_deterministic() {
        assert_eq!(mix(7, "a"), mix(7, "a"));
        assert_ne!(mix(7, "a"), mix(8, "a"));
    }
}
