//! The reproduction suite: one check per structural claim, each returning a
//! pass/fail verdict with a JSON payload.

use std::error::Error;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    block_decomposition, center, commutator_and_radical_checks, kronecker, quiver_algebra,
    smash_product, split_semisimple, symmetric_form_search, trivial_extension,
    truncated_polynomial, u0_borel, Algebra, QuiverPresentation, SmashDescriptor,
};
use crate::hochschild::{
    bracket, hh1_seeded, named_inner, named_outer, outer_laws_on_generator, p_power, smash_hh1,
    verify_complement, Derivation, HH1Presentation,
};
use crate::lie::{
    adjoint_irreducibility, derived_subalgebra, fingerprint, gl2, greedy_maximal_torus, is_simple,
    is_trigonalizable, nilpotent_ideal_witness, same_fingerprint, series_and_predicates, sl2, witt,
    Irreducibility, MaximalityStatus, RestrictedLie,
};
use crate::linalg::{Fp, Mat, Subspace};

type CheckOutcome = Result<(bool, Value), Box<dyn Error>>;

/// Check ids in report order.
pub const CHECK_IDS: &[&str] = &[
    "lemma-2.1",
    "prop-2.2",
    "prop-2.3",
    "lemma-3.1",
    "lemma-3.2",
    "lemma-3.3",
    "lemma-3.4",
    "lemma-3.5",
    "lemma-3.6",
    "lemma-3.7",
    "thm-3.8",
    "lemma-3.9",
    "cor-3.10",
    "lemma-4.1",
    "thm-4.2-mu",
    "blocks",
    "properties",
];

/// Primes the suite has parameter sets for.
pub const SUITE_PRIMES: &[u32] = &[3, 5];

pub const PROPERTY_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub p: u32,
    pub seed: u64,
    /// Flip one structure constant of the smash product before checking its
    /// multiplication rules (negative control).
    pub inject_fault: bool,
}

impl SuiteConfig {
    pub fn new(p: u32, seed: u64) -> Self {
        SuiteConfig {
            p,
            seed,
            inject_fault: false,
        }
    }

    fn field(&self) -> Result<Fp, Box<dyn Error>> {
        Ok(Fp::new(self.p)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u64,
}

/// Expected complexity of the block or group algebra behind each case,
/// compared against the computed maximal toral rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    Smash { n: u32, r: u32 },
    Truncated { exponents: &'static [u32] },
    TrivialExtensionKronecker,
    BorelBlock,
}

impl Case {
    pub fn expected_complexity(&self) -> usize {
        match self {
            Case::Smash { .. } => 1,
            Case::Truncated { exponents } => exponents.len(),
            Case::TrivialExtensionKronecker => 2,
            Case::BorelBlock => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Case::Smash { n, r } => format!("smash(n={n}, r={r})"),
            Case::Truncated { exponents } => format!("trunc{exponents:?}"),
            Case::TrivialExtensionKronecker => "T(Kr)".into(),
            Case::BorelBlock => "u0_borel(n=1) block".into(),
        }
    }
}

/// `(n, r)` for the smash product multiplication rules.
pub fn multiplication_cases(_p: u32) -> Vec<(u32, u32)> {
    vec![(1, 1), (2, 1), (1, 2), (2, 2)]
}

/// `(n, r)` for the inner derivation formulas.
pub fn inner_formula_cases(p: u32) -> Vec<(u32, u32)> {
    match p {
        3 => vec![(1, 1), (2, 1), (1, 2), (2, 2)],
        _ => vec![(1, 1), (2, 1), (1, 2)],
    }
}

/// `(n, r)` for the complement, bracket and torus checks.
pub fn smash_cases(p: u32) -> Vec<(u32, u32)> {
    match p {
        3 => vec![(1, 1), (2, 1), (1, 2)],
        _ => vec![(1, 1), (2, 1)],
    }
}

/// `(n, r)` for the bracket and p-map laws evaluated on the generator.
pub fn generator_law_cases(p: u32) -> Vec<(u32, u32)> {
    match p {
        3 => vec![(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2)],
        _ => vec![(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)],
    }
}

/// Exponent vectors with some `a_i ≥ 2`.
pub fn mixed_exponents(p: u32) -> Vec<&'static [u32]> {
    match p {
        3 => vec![&[2], &[1, 2]],
        _ => vec![&[2]],
    }
}

/// Numbers of variables for the Witt algebras.
pub fn witt_ranks(p: u32) -> Vec<usize> {
    match p {
        3 => vec![1, 2],
        _ => vec![1],
    }
}

/// Local algebras for the commutator and symmetric form checks.
pub fn local_exponents(p: u32) -> Vec<&'static [u32]> {
    match p {
        3 => vec![&[1], &[2], &[3], &[1, 1], &[1, 2]],
        _ => vec![&[1], &[2], &[1, 1]],
    }
}

pub fn complexity_cases(p: u32) -> Vec<Case> {
    let mut out: Vec<Case> = smash_cases(p)
        .into_iter()
        .map(|(n, r)| Case::Smash { n, r })
        .collect();
    for e in mixed_exponents(p) {
        out.push(Case::Truncated { exponents: e });
    }
    out.push(Case::TrivialExtensionKronecker);
    out.push(Case::BorelBlock);
    out
}

pub fn run_check(id: &str, cfg: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let outcome: Option<CheckOutcome> = match id {
        "lemma-2.1" => Some(local_symmetric(cfg)),
        "prop-2.2" => Some(nilpotent_ideal(cfg)),
        "prop-2.3" => Some(witt_simplicity(cfg)),
        "lemma-3.1" => Some(multiplication_rules(cfg)),
        "lemma-3.2" => Some(inner_formulas(cfg)),
        "lemma-3.3" => Some(weight_normalization(cfg)),
        "lemma-3.4" => Some(outer_derivations(cfg)),
        "lemma-3.5" => Some(complement(cfg)),
        "lemma-3.6" => Some(bracket_table(cfg)),
        "lemma-3.7" => Some(pmap_table(cfg)),
        "thm-3.8" => Some(trigonalizable_torus(cfg)),
        "lemma-3.9" => Some(truncated_line(cfg)),
        "cor-3.10" => Some(solvability_dichotomy(cfg)),
        "lemma-4.1" => Some(trivial_extension_gl2(cfg)),
        "thm-4.2-mu" => Some(complexity_constants(cfg)),
        "blocks" => Some(blocks(cfg)),
        "properties" => Some(properties(cfg)),
        _ => None,
    };
    let (status, details) = match outcome {
        None => (Status::Skipped, json!({ "reason": "unknown check id" })),
        Some(Ok((true, d))) => (Status::Pass, d),
        Some(Ok((false, d))) => (Status::Fail, d),
        Some(Err(e)) => (Status::Fail, json!({ "error": e.to_string() })),
    };
    CheckResult {
        check_id: id.to_string(),
        status,
        details,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Every registered check, in `CHECK_IDS` order.
pub fn reproduce(cfg: &SuiteConfig) -> Vec<CheckResult> {
    CHECK_IDS.iter().map(|id| run_check(id, cfg)).collect()
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.status == Status::Pass)
}

pub fn markdown_table(p: u32, results: &[CheckResult]) -> String {
    let mut out = format!("| check (p = {p}) | status | ms |\n|---|---|---|\n");
    for r in results {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            r.check_id, status, r.elapsed_ms
        ));
    }
    out
}

fn smash(cfg: &SuiteConfig, n: u32, r: u32) -> Result<(Algebra, SmashDescriptor), Box<dyn Error>> {
    Ok(smash_product(cfg.field()?, n, r)?)
}

fn smash_lie(
    cfg: &SuiteConfig,
    n: u32,
    r: u32,
) -> Result<(HH1Presentation, RestrictedLie), Box<dyn Error>> {
    let (a, d) = smash(cfg, n, r)?;
    let h = smash_hh1(&a, &d, cfg.seed)?;
    let l = RestrictedLie::from_hh1(&h)?;
    Ok((h, l))
}

fn lie_of(a: &Algebra, seed: u64) -> Result<(HH1Presentation, RestrictedLie), Box<dyn Error>> {
    let h = hh1_seeded(a, seed)?;
    let l = RestrictedLie::from_hh1(&h)?;
    Ok((h, l))
}

fn trivial_extension_kronecker(f: Fp) -> Result<Algebra, Box<dyn Error>> {
    Ok(trivial_extension(&kronecker(f)?)?)
}

fn borel_block(f: Fp) -> Result<Algebra, Box<dyn Error>> {
    let blocks = block_decomposition(&u0_borel(f, 1)?)?;
    if blocks.len() != 1 {
        return Err(format!("expected one block, found {}", blocks.len()).into());
    }
    Ok(blocks.into_iter().next().expect("one block").algebra)
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn local_symmetric(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let mut cases = Vec::new();
    let mut ok = true;
    for e in local_exponents(cfg.p) {
        let a = truncated_polynomial(f, e)?;
        let rad = commutator_and_radical_checks(&a)?;
        let form = symmetric_form_search(&a, 64, cfg.seed);
        let nondegenerate = form.as_ref().is_some_and(|s| s.is_nondegenerate());
        let local = rad.simple_count == 1;
        ok &= local && rad.commutator_in_j_squared && nondegenerate;
        cases.push(json!({
            "exponents": e,
            "dim": a.dim(),
            "local": local,
            "commutator_in_j_squared": rad.commutator_in_j_squared,
            "symmetric_form_found": nondegenerate,
            "tau": form.map(|s| s.tau),
        }));
    }
    Ok((ok, json!({ "cases": cases })))
}

fn nilpotent_ideal(cfg: &SuiteConfig) -> CheckOutcome {
    let p = cfg.p as usize;
    let mut cases = Vec::new();
    let mut ok = true;
    for e in mixed_exponents(cfg.p) {
        let w = nilpotent_ideal_witness(cfg.p, e)?;
        let nvars = e.len();
        let total: u32 = e.iter().sum();
        let expect_dim = nvars * p.pow(total);
        let expect_ideal = nvars * (p.pow(total) - p.pow(nvars as u32));
        let mu = greedy_maximal_torus(&w.lie, cfg.seed)?;
        let pass = w.lie.dim() == expect_dim
            && w.n_ideal.dim() == expect_ideal
            && w.is_ideal
            && w.is_p_nilpotent
            && w.toral_free
            && w.ideal_mu == 0
            && w.quotient_matches_witt
            && mu.mu() == nvars;
        ok &= pass;
        cases.push(json!({
            "exponents": e,
            "dim_l": w.lie.dim(),
            "expected_dim_l": expect_dim,
            "dim_ideal": w.n_ideal.dim(),
            "expected_dim_ideal": expect_ideal,
            "is_ideal": w.is_ideal,
            "p_nilpotent": w.is_p_nilpotent,
            "toral_free": w.toral_free,
            "toral_free_exhaustive": w.toral_free_exhaustive,
            "mu_ideal": w.ideal_mu,
            "quotient_matches_witt": w.quotient_matches_witt,
            "mu": mu.mu(),
            "mu_status": mu.maximality_status,
        }));
    }
    Ok((ok, json!({ "cases": cases })))
}

fn witt_simplicity(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let p = cfg.p as usize;
    let mut simple_cases = Vec::new();
    let mut ok = true;
    for n in witt_ranks(cfg.p) {
        let l = witt(f, n)?;
        let simple = is_simple(&l)?;
        let expect = n * p.pow(n as u32);
        ok &= simple && l.dim() == expect;
        simple_cases
            .push(json!({ "n": n, "dim": l.dim(), "expected_dim": expect, "is_simple": simple }));
    }
    let mut mixed_cases = Vec::new();
    for e in mixed_exponents(cfg.p) {
        let (_, l) = lie_of(&truncated_polynomial(f, e)?, cfg.seed)?;
        let simple = is_simple(&l)?;
        let witness = match adjoint_irreducibility(&l, cfg.seed)? {
            Irreducibility::Reducible(s) => Some(s),
            Irreducibility::Irreducible => None,
        };
        let witness_ok = witness
            .as_ref()
            .is_some_and(|s| !s.is_zero() && s.dim() < l.dim() && l.is_ideal(s));
        ok &= !simple && witness_ok;
        mixed_cases.push(json!({
            "exponents": e,
            "dim": l.dim(),
            "is_simple": simple,
            "witness_dim": witness.as_ref().map(Subspace::dim),
            "witness_is_proper_ideal": witness_ok,
        }));
    }
    Ok((
        ok,
        json!({ "elementary_abelian": simple_cases, "mixed": mixed_cases }),
    ))
}

fn multiplication_rules(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let mut checked = Vec::new();
    for (case, (n, r)) in multiplication_cases(cfg.p).into_iter().enumerate() {
        let (mut a, d) = smash(cfg, n, r)?;
        if cfg.inject_fault && case == 0 {
            // u_1 · u_0 x should vanish
            a.inject_fault(d.index(1, 0), d.index(0, 1), d.index(1, 1), 1);
        }
        let x = d.x_power(1);
        let q = d.chars as i64;
        let alpha = d.alpha as i64;
        for lambda in 0..q {
            let ul = d.monomial(lambda, 0);
            let ulx = a.mul(&ul, &x);
            let shifted = a.mul(&x, &d.monomial(lambda - alpha, 0));
            if ulx != shifted {
                return Ok((
                    false,
                    json!({ "counterexample": {
                        "n": n, "r": r, "rule": "u_l x = x u_(l-alpha)", "lambda": lambda,
                        "lhs": ulx, "rhs": shifted,
                    }}),
                ));
            }
            for mu in 0..q {
                let um = d.monomial(mu, 0);
                let lhs = a.mul(&ulx, &um);
                let rhs = if lambda.rem_euclid(q) == (mu + alpha).rem_euclid(q) {
                    a.mul(&x, &um)
                } else {
                    a.zero()
                };
                if lhs != rhs {
                    return Ok((
                        false,
                        json!({ "counterexample": {
                            "n": n, "r": r, "rule": "u_l x u_m = delta(l, m+alpha) x u_m",
                            "lambda": lambda, "mu": mu, "lhs": lhs, "rhs": rhs,
                        }}),
                    ));
                }
            }
        }
        checked.push(json!({ "n": n, "r": r, "dim": a.dim(), "pairs": q * q }));
    }
    let _ = f;
    Ok((true, json!({ "cases": checked })))
}

fn inner_formulas(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let mut checked = Vec::new();
    for (n, r) in inner_formula_cases(cfg.p) {
        let (a, d) = smash(cfg, n, r)?;
        let q = d.chars as i64;
        let top = d.x_order;
        let x = d.x_power(1);
        let mut count = 0usize;
        for lambda in 0..q {
            for j in 0..top {
                let inner = named_inner(&a, &d, lambda, j)?;
                let m = d.monomial(lambda, j);
                let fail = |what: &str| -> CheckOutcome {
                    Ok((
                        false,
                        json!({ "counterexample": { "n": n, "r": r, "lambda": lambda, "j": j, "formula": what } }),
                    ))
                };
                for k in 0..a.dim() {
                    let e = a.basis_vec(k);
                    if inner.apply(&e) != a.commutator(&m, &e) {
                        return fail("entrywise ad(u_l x^j)");
                    }
                }
                for mu in 0..q {
                    let c = (i64::from((mu + j as i64).rem_euclid(q) == lambda)
                        - i64::from(mu == lambda))
                    .rem_euclid(f.p() as i64);
                    let expect = a.scale(c as u32, &m);
                    let got = inner.apply(&d.monomial(mu, 0));
                    if got != expect {
                        return fail("d(u_mu)");
                    }
                    if j % d.chars == 0 && !is_zero(&got) {
                        return fail("d(u_mu) = 0 when p^r | j");
                    }
                }
                let dx = inner.apply(&x);
                let expect = a.sub(
                    &d.monomial(lambda, j + 1),
                    &d.monomial(lambda + d.alpha as i64, j + 1),
                );
                if dx != expect {
                    return fail("d(x)");
                }
                if is_zero(&dx) != (j == top - 1) {
                    return fail("d(x) = 0 iff j = p^n - 1");
                }
                count += 1;
            }
        }
        checked.push(json!({ "n": n, "r": r, "inner_derivations": count }));
    }
    Ok((true, json!({ "cases": checked })))
}

fn weight_normalization(cfg: &SuiteConfig) -> CheckOutcome {
    let mut cases = Vec::new();
    let mut ok = true;
    for (n, r) in smash_cases(cfg.p) {
        let (a, d) = smash(cfg, n, r)?;
        let rep = verify_complement(&a, &d)?;
        ok &= rep.zero_sum_combinations_inner && rep.spans_der_with_ider;
        cases.push(json!({
            "n": n, "r": r,
            "zero_sum_combinations_inner": rep.zero_sum_combinations_inner,
            "outer_family_plus_inner_spans_der": rep.spans_der_with_ider,
        }));
    }
    Ok((ok, json!({ "cases": cases })))
}

fn outer_derivations(cfg: &SuiteConfig) -> CheckOutcome {
    let mut cases = Vec::new();
    for (n, r) in smash_cases(cfg.p) {
        let (a, d) = smash(cfg, n, r)?;
        let x = d.x_power(1);
        let mut count = 0;
        for lambda in 0..d.chars as i64 {
            for j in 0..d.outer_index_count() {
                // full Leibniz validation happens inside named_outer
                let g = named_outer(&a, &d, lambda, j)?;
                let kills_u = (0..d.chars as i64).all(|mu| is_zero(&g.apply(&d.monomial(mu, 0))));
                if !kills_u || g.apply(&x) != d.monomial(lambda, j * d.chars + 1) {
                    return Ok((
                        false,
                        json!({ "counterexample": { "n": n, "r": r, "lambda": lambda, "j": j } }),
                    ));
                }
                count += 1;
            }
        }
        cases.push(json!({ "n": n, "r": r, "validated": count }));
    }
    Ok((true, json!({ "cases": cases })))
}

fn complement(cfg: &SuiteConfig) -> CheckOutcome {
    let p = cfg.p as usize;
    let mut cases = Vec::new();
    let mut ok = true;
    for (n, r) in smash_cases(cfg.p) {
        let (a, d) = smash(cfg, n, r)?;
        let rep = verify_complement(&a, &d)?;
        let expect_h = if n >= r { p.pow(n - r) } else { 1 };
        let pass =
            rep.holds() && rep.h_size == expect_h && rep.dim_der == rep.dim_ider + rep.h_size;
        ok &= pass;
        cases.push(json!({ "n": n, "r": r, "expected_h": expect_h, "report": rep }));
    }
    Ok((ok, json!({ "cases": cases })))
}

fn expected_bracket(f: Fp, h: usize, i: usize, j: usize) -> Vec<u32> {
    let mut v = vec![0; h];
    if i + j < h {
        v[i + j] = f.reduce(j as i64 - i as i64);
    }
    v
}

fn bracket_table(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let (h, _) = smash_lie(cfg, 2, 1)?;
    let dim = h.dim();
    let mut mismatches = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if h.bracket_table()[i][j] != expected_bracket(f, dim, i, j) {
                mismatches.push(json!({ "i": i, "j": j, "got": h.bracket_table()[i][j] }));
            }
        }
    }
    let mut law_cases = Vec::new();
    let mut laws_ok = true;
    for (n, r) in generator_law_cases(cfg.p) {
        let (a, d) = smash(cfg, n, r)?;
        let rep = outer_laws_on_generator(&a, &d)?;
        laws_ok &= rep.bracket_failures.is_empty();
        law_cases.push(json!({ "n": n, "r": r, "bracket_failures": rep.bracket_failures }));
    }
    Ok((
        mismatches.is_empty() && laws_ok,
        json!({
            "table_case": { "n": 2, "r": 1, "labels": h.complement_labels(), "table": h.bracket_table() },
            "mismatches": mismatches,
            "generator_level": law_cases,
        }),
    ))
}

fn pmap_table(cfg: &SuiteConfig) -> CheckOutcome {
    let (h, _) = smash_lie(cfg, 2, 1)?;
    let dim = h.dim();
    let expected: Vec<Vec<u32>> = (0..dim)
        .map(|j| {
            let mut v = vec![0; dim];
            if j == 0 {
                v[0] = 1;
            }
            v
        })
        .collect();
    let mut law_cases = Vec::new();
    let mut laws_ok = true;
    for (n, r) in generator_law_cases(cfg.p) {
        let (a, d) = smash(cfg, n, r)?;
        let rep = outer_laws_on_generator(&a, &d)?;
        laws_ok &= rep.pmap_failures.is_empty();
        law_cases.push(json!({ "n": n, "r": r, "pmap_failures": rep.pmap_failures }));
    }
    Ok((
        h.pmap_table() == &expected && laws_ok,
        json!({ "table": h.pmap_table(), "expected": expected, "generator_level": law_cases }),
    ))
}

fn trigonalizable_torus(cfg: &SuiteConfig) -> CheckOutcome {
    let mut cases = Vec::new();
    let mut ok = true;
    for (n, r) in smash_cases(cfg.p) {
        let (_, l) = smash_lie(cfg, n, r)?;
        let trig = is_trigonalizable(&l);
        let torus = greedy_maximal_torus(&l, cfg.seed)?;
        let g00 = Subspace::from_spanning(l.field(), l.dim(), &[l.basis_vec(0)]);
        let span = Subspace::from_spanning(l.field(), l.dim(), &torus.torus_basis);
        let positive = Subspace::from_spanning(
            l.field(),
            l.dim(),
            &(1..l.dim()).map(|i| l.basis_vec(i)).collect::<Vec<_>>(),
        );
        let grading = l.is_ideal(&positive);
        let pass = trig
            && torus.dim == 1
            && torus.maximality_status == MaximalityStatus::ExhaustivelyCertified
            && span == g00
            && grading;
        ok &= pass;
        cases.push(json!({
            "n": n, "r": r, "dim_l": l.dim(), "trigonalizable": trig,
            "torus": torus, "torus_is_g00": span == g00, "positive_part_is_ideal": grading,
        }));
    }
    Ok((ok, json!({ "cases": cases })))
}

fn truncated_line(cfg: &SuiteConfig) -> CheckOutcome {
    let p = cfg.p as usize;
    let w = nilpotent_ideal_witness(cfg.p, &[2])?;
    let mu = greedy_maximal_torus(&w.lie, cfg.seed)?;
    let pass = w.lie.dim() == p * p
        && w.n_ideal.dim() == p * p - p
        && w.is_ideal
        && w.is_p_nilpotent
        && w.ideal_mu == 0
        && w.quotient_matches_witt
        && mu.mu() == 1;
    Ok((
        pass,
        json!({
            "dim_l": w.lie.dim(), "dim_ideal": w.n_ideal.dim(), "is_ideal": w.is_ideal,
            "p_nilpotent": w.is_p_nilpotent, "mu_ideal": w.ideal_mu,
            "quotient_fingerprint": fingerprint(&w.quotient)?,
            "quotient_matches_witt": w.quotient_matches_witt, "mu": mu.mu(), "mu_status": mu.maximality_status,
        }),
    ))
}

fn solvability_dichotomy(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let (_, block_l) = lie_of(&borel_block(f)?, cfg.seed)?;
    let block_series = series_and_predicates(&block_l);
    let block_mu = greedy_maximal_torus(&block_l, cfg.seed)?;
    let (_, nil_l) = lie_of(&truncated_polynomial(f, &[2])?, cfg.seed)?;
    let nil_series = series_and_predicates(&nil_l);
    let nil_mu = greedy_maximal_torus(&nil_l, cfg.seed)?;
    let pass = block_series.is_solvable
        && block_mu.mu() == 1
        && !nil_series.is_solvable
        && nil_mu.mu() == 1;
    Ok((
        pass,
        json!({
            "non_nilpotent": { "dim_l": block_l.dim(), "solvable": block_series.is_solvable, "mu": block_mu.mu() },
            "nilpotent": { "dim_l": nil_l.dim(), "solvable": nil_series.is_solvable, "mu": nil_mu.mu() },
        }),
    ))
}

/// `T(Kr) → kQ/I` on the basis `e1, e2, a, b, e1*, e2*, a*, b*`.
fn trivial_extension_to_quiver(t: &Algebra, q: &Algebra) -> Result<Mat, Box<dyn Error>> {
    let idx = |a: &Algebra, l: &str| -> Result<usize, Box<dyn Error>> {
        a.labels()
            .iter()
            .position(|s| s == l)
            .ok_or_else(|| format!("no basis element {l}").into())
    };
    let v = |l: &str| -> Result<Vec<u32>, Box<dyn Error>> { Ok(q.basis_vec(idx(q, l)?)) };
    let images: Vec<(&str, Vec<u32>)> = vec![
        ("e1", v("e1")?),
        ("e2", v("e2")?),
        ("a", v("x1")?),
        ("b", v("y1")?),
        ("a*", v("y2")?),
        ("b*", v("x2")?),
        ("e1*", q.mul(&v("x1")?, &v("y2")?)),
        ("e2*", q.mul(&v("y2")?, &v("x1")?)),
    ];
    let n = t.dim();
    let mut cols = vec![vec![0u32; n]; n];
    for (label, img) in images {
        cols[idx(t, label)?] = img;
    }
    Ok(Mat::from_fn(t.field(), n, n, |r, c| cols[c][r]))
}

fn trivial_extension_gl2(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let t = trivial_extension_kronecker(f)?;
    let (h, l) = lie_of(&t, cfg.seed)?;
    let s = series_and_predicates(&l);
    let derived = derived_subalgebra(&l);
    let derived_simple = is_simple(&l.subalgebra(&derived)?)?;
    let torus = greedy_maximal_torus(&l, cfg.seed)?;
    // projection onto the dual half
    let n = t.dim();
    let half = n / 2;
    let proj = Mat::from_fn(f, n, n, |r, c| u32::from(r == c && r >= half));
    let d = Derivation::from_matrix(&t, proj)?;
    let d_outer = !h.is_inner(&d);
    let d_class = h.class_of(&d)?;
    let d_toral = l.p_power(&d_class) == d_class;
    let gl2_match = same_fingerprint(&l, &gl2(f)?)?;
    let (_, kr) = lie_of(&kronecker(f)?, cfg.seed)?;
    let kr_match = same_fingerprint(&kr, &sl2(f)?)?;
    let q = quiver_algebra(f, &QuiverPresentation::trivial_extension_kronecker())?;
    let iso = t.is_isomorphism(&q, &trivial_extension_to_quiver(&t, &q)?);
    let (_, ql) = lie_of(&q, cfg.seed)?;
    let quiver_match = same_fingerprint(&l, &ql)?;
    let pass = l.dim() == 4
        && s.center.dim() == 1
        && derived.dim() == 3
        && derived_simple
        && torus.mu() == 2
        && torus.maximality_status == MaximalityStatus::ExhaustivelyCertified
        && d_outer
        && d_toral
        && gl2_match
        && kr.dim() == 3
        && kr_match
        && iso
        && quiver_match;
    Ok((
        pass,
        json!({
            "dim_hh1": l.dim(), "labels": l.labels(), "center_dim": s.center.dim(), "center_dim_algebra": center(&t).dim(),
            "derived_dim": derived.dim(), "derived_simple": derived_simple, "torus": torus,
            "projection_outer": d_outer, "projection_class": d_class, "projection_toral": d_toral,
            "fingerprint": fingerprint(&l)?, "matches_gl2": gl2_match,
            "kronecker_dim_hh1": kr.dim(), "kronecker_matches_sl2": kr_match,
            "quiver_isomorphism": iso, "quiver_fingerprint_matches": quiver_match,
        }),
    ))
}

fn case_mu(cfg: &SuiteConfig, case: Case) -> Result<(usize, MaximalityStatus), Box<dyn Error>> {
    let f = cfg.field()?;
    let l = match case {
        Case::Smash { n, r } => smash_lie(cfg, n, r)?.1,
        Case::Truncated { exponents } => lie_of(&truncated_polynomial(f, exponents)?, cfg.seed)?.1,
        Case::TrivialExtensionKronecker => lie_of(&trivial_extension_kronecker(f)?, cfg.seed)?.1,
        Case::BorelBlock => lie_of(&borel_block(f)?, cfg.seed)?.1,
    };
    let t = greedy_maximal_torus(&l, cfg.seed)?;
    Ok((t.mu(), t.maximality_status))
}

fn complexity_constants(cfg: &SuiteConfig) -> CheckOutcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for case in complexity_cases(cfg.p) {
        let (mu, status) = case_mu(cfg, case)?;
        let expected = case.expected_complexity();
        ok &= mu == expected;
        rows.push(json!({ "case": case.name(), "expected_complexity": expected, "mu": mu, "mu_status": status }));
    }
    Ok((
        ok,
        json!({ "cases": rows, "note": "complexities are stored constants; only mu is computed" }),
    ))
}

fn idempotents_ok(a: &Algebra, es: &[Vec<u32>]) -> bool {
    let mut sum = a.zero();
    for (i, e) in es.iter().enumerate() {
        if a.mul(e, e) != *e || is_zero(e) {
            return false;
        }
        for (j, g) in es.iter().enumerate() {
            if i != j && !is_zero(&a.mul(e, g)) {
                return false;
            }
        }
        if (0..a.dim()).any(|k| !is_zero(&a.commutator(e, &a.basis_vec(k)))) {
            return false;
        }
        sum = a.add(&sum, e);
    }
    sum == a.unit()
}

fn blocks(cfg: &SuiteConfig) -> CheckOutcome {
    let f = cfg.field()?;
    let borel = u0_borel(f, 1)?;
    let bb = block_decomposition(&borel)?;
    let borel_idems: Vec<Vec<u32>> = bb.iter().map(|b| b.idempotent.clone()).collect();
    let borel_ok = idempotents_ok(&borel, &borel_idems);
    let (_, block_l) = lie_of(&bb[0].algebra, cfg.seed)?;
    let (_, smash_l) = smash_lie(cfg, 1, 1)?;
    let matches = same_fingerprint(&block_l, &smash_l)?;
    let split = split_semisimple(f, 3)?;
    let sb = block_decomposition(&split)?;
    let split_idems: Vec<Vec<u32>> = sb.iter().map(|b| b.idempotent.clone()).collect();
    let split_ok = idempotents_ok(&split, &split_idems);
    let pass = bb.len() == 1
        && bb[0].algebra.dim() == smash(cfg, 1, 1)?.0.dim()
        && matches
        && borel_ok
        && sb.len() == 3
        && split_ok;
    Ok((
        pass,
        json!({
            "u0_borel_blocks": bb.len(), "block_dim": bb[0].algebra.dim(),
            "block_fingerprint_matches_smash": matches, "u0_borel_idempotents_ok": borel_ok,
            "split_blocks": sb.len(), "split_idempotents_ok": split_ok,
        }),
    ))
}

fn random_vec(rng: &mut impl rand::Rng, p: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

fn random_derivation(rng: &mut impl rand::Rng, a: &Algebra, basis: &[Derivation]) -> Derivation {
    let mut d = Derivation::zero(a);
    for b in basis {
        d = d.add(&b.scale(rng.gen_range(0..a.p())));
    }
    d
}

/// Seeded trials of the structural identities on a few algebras.
fn properties(cfg: &SuiteConfig) -> CheckOutcome {
    use rand::SeedableRng;
    let f = cfg.field()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let algebras = vec![
        smash(cfg, 1, 1)?.0,
        smash(cfg, 2, 1)?.0,
        truncated_polynomial(f, &[1])?,
        trivial_extension_kronecker(f)?,
    ];
    let mut failures: Vec<Value> = Vec::new();
    let mut lies = Vec::new();
    for a in &algebras {
        let h = hh1_seeded(a, cfg.seed)?;
        let l = RestrictedLie::from_hh1(&h)?;
        let der = h.der_basis();
        let small = a.dim() <= 30;
        for t in 0..PROPERTY_TRIALS {
            let d1 = random_derivation(&mut rng, a, &der);
            let d2 = random_derivation(&mut rng, a, &der);
            let x = random_vec(&mut rng, f.p(), a.dim());
            if small || t < 10 {
                let br = bracket(&d1, &d2)?;
                if !br.is_derivation_of(a) || !p_power(&d1).is_derivation_of(a) {
                    failures
                        .push(json!({ "algebra": a.name(), "trial": t, "property": "closure" }));
                }
                let lhs = bracket(&d1, &Derivation::inner(a, &x))?;
                if lhs != Derivation::inner(a, &d1.apply(&x)) {
                    failures.push(json!({ "algebra": a.name(), "trial": t, "property": "[f, ad a] = ad f(a)" }));
                }
            }
            if h.dim() > 0 {
                let c = random_vec(&mut rng, f.p(), h.dim());
                let via_composition = h.class_of(&p_power(&h.representative(&c)))?;
                if l.p_power(&c) != via_composition {
                    failures.push(json!({ "algebra": a.name(), "trial": t, "property": "jacobson vs composition" }));
                }
            }
        }
        let rounds = if small { PROPERTY_TRIALS } else { 5 };
        if let Err(e) = h.check_representative_independence(cfg.seed ^ 0xabcd, rounds) {
            failures.push(json!({ "algebra": a.name(), "property": "representative independence", "error": e.to_string() }));
        }
        lies.push(l);
    }
    lies.push(sl2(f)?);
    lies.push(gl2(f)?);
    lies.push(witt(f, 1)?);
    for l in &lies {
        if let Err(e) = l.validate() {
            failures.push(json!({ "property": "restricted Lie axioms", "error": e.to_string() }));
        }
    }
    Ok((
        failures.is_empty(),
        json!({ "trials": PROPERTY_TRIALS, "algebras": algebras.iter().map(Algebra::name).collect::<Vec<_>>(),
                "lie_algebras_validated": lies.len(), "failures": failures }),
    ))
}
