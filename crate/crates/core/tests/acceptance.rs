//! The thirteen acceptance criteria, one pass/fail line each.

use std::process::ExitCode;

use hh1_core::algebra::{
    block_decomposition, commutator_and_radical_checks, kronecker, smash_product, split_semisimple,
    symmetric_form_search, trivial_extension, truncated_polynomial, u0_borel, Algebra,
    SmashDescriptor,
};
use hh1_core::hochschild::{
    derivation_space, hh1, inner_derivations, leibniz_violation, named_inner, named_outer,
    smash_hh1, Derivation, DEFAULT_SEED,
};
use hh1_core::lie::{
    adjoint_irreducibility, derived_subalgebra, fingerprint, greedy_maximal_torus, is_simple,
    is_trigonalizable, nilpotent_ideal_witness, series_and_predicates, sl2, witt, Irreducibility,
    MaximalityStatus, RestrictedLie,
};
use hh1_core::linalg::{Fp, Mat, Subspace};
use hh1_core::suite::{run_check, Status, SuiteConfig};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u32) -> Fp {
    Fp::new(p).unwrap()
}

fn smash(p: u32, n: u32, r: u32) -> (Algebra, SmashDescriptor) {
    smash_product(field(p), n, r).unwrap()
}

fn lie(a: &Algebra) -> RestrictedLie {
    RestrictedLie::from_hh1(&hh1(a).unwrap()).unwrap()
}

fn zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn span_dim(f: Fp, ds: &[Derivation]) -> usize {
    let rows: Vec<Vec<u32>> = ds.iter().map(|d| d.matrix().data().to_vec()).collect();
    let width = rows.first().map_or(0, Vec::len);
    Subspace::from_spanning(f, width, &rows).dim()
}

fn smash_multiplication() -> Outcome {
    for p in [3, 5] {
        for n in 1..=2 {
            for r in 1..=2 {
                let (a, d) = smash(p, n, r);
                let x = d.x_power(1);
                let q = d.chars as i64;
                for l in 0..q {
                    let ulx = a.mul(&d.monomial(l, 0), &x);
                    ensure(ulx == a.mul(&x, &d.monomial(l - 1, 0)), || {
                        format!("u_l x != x u_(l-1) at p={p} n={n} r={r} l={l}")
                    })?;
                    for m in 0..q {
                        let um = d.monomial(m, 0);
                        let expect = if l == (m + 1) % q {
                            a.mul(&x, &um)
                        } else {
                            a.zero()
                        };
                        ensure(a.mul(&ulx, &um) == expect, || {
                            format!("u_l x u_m at p={p} n={n} r={r} l={l} m={m}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn inner_formulas() -> Outcome {
    for n in 1..=2 {
        for r in 1..=2 {
            let (a, d) = smash(3, n, r);
            let x = d.x_power(1);
            for l in 0..d.chars as i64 {
                for j in 0..d.x_order {
                    let inner = named_inner(&a, &d, l, j).map_err(|e| e.to_string())?;
                    let m = d.monomial(l, j);
                    for k in 0..a.dim() {
                        let e = a.basis_vec(k);
                        ensure(inner.apply(&e) == a.commutator(&m, &e), || {
                            format!("named_inner != ad at n={n} r={r} l={l} j={j} k={k}")
                        })?;
                    }
                    ensure(zero(&inner.apply(&x)) == (j == d.x_order - 1), || {
                        format!("d(x) vanishing at n={n} r={r} l={l} j={j}")
                    })?;
                    if j % d.chars == 0 {
                        for mu in 0..d.chars as i64 {
                            ensure(zero(&inner.apply(&d.monomial(mu, 0))), || {
                                format!("d(u_mu) != 0 at n={n} r={r} l={l} j={j} mu={mu}")
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn outer_and_complement() -> Outcome {
    for (p, n, r) in [(3, 1, 1), (3, 2, 1), (3, 1, 2), (5, 1, 1), (5, 2, 1)] {
        let (a, d) = smash(p, n, r);
        let f = a.field();
        for l in 0..d.chars as i64 {
            for j in 0..d.outer_index_count() {
                let g = named_outer(&a, &d, l, j).map_err(|e| e.to_string())?;
                ensure(leibniz_violation(&a, g.matrix()).is_none(), || {
                    format!("g_(l,j) not a derivation at p={p} n={n} r={r} l={l} j={j}")
                })?;
            }
        }
        let der = span_dim(f, &derivation_space(&a).map_err(|e| e.to_string())?);
        let ider_basis = inner_derivations(&a);
        let ider = span_dim(f, &ider_basis);
        let h: Vec<Derivation> = (0..d.outer_index_count())
            .map(|j| named_outer(&a, &d, 0, j).unwrap())
            .collect();
        let expect_h = if n >= r { (p as usize).pow(n - r) } else { 1 };
        let mut joint = ider_basis.clone();
        joint.extend(h.iter().cloned());
        ensure(h.len() == expect_h, || {
            format!("|H| = {} at p={p} n={n} r={r}", h.len())
        })?;
        ensure(der == ider + h.len(), || {
            format!("dim Der {der} != {ider} + {} at p={p} n={n} r={r}", h.len())
        })?;
        ensure(span_dim(f, &joint) == ider + h.len(), || {
            format!("span(H) meets IDer at p={p} n={n} r={r}")
        })?;
    }
    Ok(())
}

fn bracket_and_pmap_tables() -> Outcome {
    let f = field(3);
    let (a, d) = smash(3, 2, 1);
    let h = smash_hh1(&a, &d, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let m = d.outer_index_count();
    ensure(h.dim() == m, || format!("dim HH1 {} != {m}", h.dim()))?;
    for i in 0..m {
        for j in 0..m {
            let mut expect = vec![0u32; m];
            if i + j < m {
                expect[i + j] = f.reduce(j as i64 - i as i64);
            }
            ensure(h.bracket_table()[i][j] == expect, || {
                format!("[g0,{i}, g0,{j}]")
            })?;
        }
        let mut expect = vec![0u32; m];
        if i == 0 {
            expect[0] = 1;
        }
        ensure(h.pmap_table()[i] == expect, || format!("g0,{i}^[p]"))?;
    }
    Ok(())
}

fn trigonalizable_torus() -> Outcome {
    for (p, n, r) in [(3, 1, 1), (3, 2, 1), (3, 1, 2), (5, 1, 1), (5, 2, 1)] {
        let (a, d) = smash(p, n, r);
        let l = RestrictedLie::from_hh1(&smash_hh1(&a, &d, DEFAULT_SEED).unwrap()).unwrap();
        ensure((p as u64).pow(l.dim() as u32) <= 1_000_000, || {
            "enumeration bound".into()
        })?;
        ensure(is_trigonalizable(&l), || {
            format!("not trigonalizable at p={p} n={n} r={r}")
        })?;
        let t = greedy_maximal_torus(&l, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(t.dim == 1, || {
            format!("torus dim {} at p={p} n={n} r={r}", t.dim)
        })?;
        ensure(
            t.maximality_status == MaximalityStatus::ExhaustivelyCertified,
            || "torus not certified".into(),
        )?;
        ensure(l.labels()[0] == "g0,0", || "first label is not g0,0".into())?;
        let g00 = Subspace::from_spanning(l.field(), l.dim(), &[l.basis_vec(0)]);
        ensure(
            Subspace::from_spanning(l.field(), l.dim(), &t.torus_basis) == g00,
            || format!("torus is not the class of g0,0 at p={p} n={n} r={r}"),
        )?;
    }
    Ok(())
}

fn truncated_nine() -> Outcome {
    let w = nilpotent_ideal_witness(3, &[2]).map_err(|e| e.to_string())?;
    ensure(w.lie.dim() == 9, || format!("dim HH1 {}", w.lie.dim()))?;
    ensure(w.n_ideal.dim() == 6, || {
        format!("dim n {}", w.n_ideal.dim())
    })?;
    ensure(w.lie.is_ideal(&w.n_ideal), || "n is not an ideal".into())?;
    ensure(w.is_p_nilpotent, || "n is not p-nilpotent".into())?;
    let n_lie = w.lie.subalgebra(&w.n_ideal).map_err(|e| e.to_string())?;
    let mu_n = greedy_maximal_torus(&n_lie, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(mu_n.mu() == 0, || format!("mu(n) = {}", mu_n.mu()))?;
    let fq = fingerprint(&w.quotient).map_err(|e| e.to_string())?;
    let fw = fingerprint(&witt(field(3), 1).unwrap()).map_err(|e| e.to_string())?;
    ensure(fq == fw, || format!("quotient {fq:?} != W1 {fw:?}"))?;
    let mu = greedy_maximal_torus(&w.lie, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(mu.mu() == 1, || format!("mu(L) = {}", mu.mu()))
}

fn elementary_abelian() -> Outcome {
    for (p, n) in [(3u32, 1usize), (3, 2), (5, 1)] {
        let l = witt(field(p), n).map_err(|e| e.to_string())?;
        ensure(l.dim() == n * (p as usize).pow(n as u32), || {
            format!("dim W{n} at p={p}")
        })?;
        ensure(is_simple(&l).map_err(|e| e.to_string())?, || {
            format!("W{n} not simple at p={p}")
        })?;
    }
    let mixed: [(u32, &[u32]); 3] = [(3, &[2]), (3, &[1, 2]), (5, &[2])];
    for (p, e) in mixed {
        let l = lie(&truncated_polynomial(field(p), e).unwrap());
        ensure(!is_simple(&l).map_err(|e| e.to_string())?, || {
            format!("{e:?} simple at p={p}")
        })?;
        match adjoint_irreducibility(&l, DEFAULT_SEED).map_err(|e| e.to_string())? {
            Irreducibility::Reducible(s) => {
                ensure(s.dim() > 0 && s.dim() < l.dim() && l.is_ideal(&s), || {
                    format!("bad ideal witness for {e:?} at p={p}")
                })?
            }
            Irreducibility::Irreducible => return Err(format!("no witness for {e:?} at p={p}")),
        }
    }
    Ok(())
}

fn local_algebras() -> Outcome {
    let cases: [(u32, &[u32]); 8] = [
        (3, &[1]),
        (3, &[2]),
        (3, &[3]),
        (3, &[1, 1]),
        (3, &[1, 2]),
        (5, &[1]),
        (5, &[2]),
        (5, &[1, 1]),
    ];
    for (p, e) in cases {
        let a = truncated_polynomial(field(p), e).unwrap();
        let rad = commutator_and_radical_checks(&a).map_err(|e| e.to_string())?;
        ensure(rad.commutator_in_j_squared, || {
            format!("[A,A] not in J^2 for {e:?} at p={p}")
        })?;
        let form = symmetric_form_search(&a, 64, DEFAULT_SEED);
        ensure(form.is_some_and(|s| s.is_nondegenerate()), || {
            format!("no symmetric form for {e:?} at p={p}")
        })?;
    }
    Ok(())
}

fn trivial_extension_kronecker() -> Outcome {
    for p in [3, 5] {
        let f = field(p);
        let t = trivial_extension(&kronecker(f).unwrap()).unwrap();
        let h = hh1(&t).map_err(|e| e.to_string())?;
        let l = RestrictedLie::from_hh1(&h).unwrap();
        ensure(l.dim() == 4, || {
            format!("dim HH1(T(Kr)) = {} at p={p}", l.dim())
        })?;
        ensure(series_and_predicates(&l).center.dim() == 1, || {
            "center dim".into()
        })?;
        let der = derived_subalgebra(&l);
        ensure(der.dim() == 3, || format!("derived dim {}", der.dim()))?;
        ensure(is_simple(&l.subalgebra(&der).unwrap()).unwrap(), || {
            "derived not simple".into()
        })?;
        let t_rep = greedy_maximal_torus(&l, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(t_rep.mu() == 2, || format!("mu = {}", t_rep.mu()))?;
        if p == 3 {
            ensure(
                t_rep.maximality_status == MaximalityStatus::ExhaustivelyCertified,
                || "mu not certified".into(),
            )?;
        }
        let n = t.dim();
        let proj = Mat::from_fn(f, n, n, |r, c| u32::from(r == c && r >= n / 2));
        let d = Derivation::from_matrix(&t, proj).map_err(|e| e.to_string())?;
        let c = h.class_of(&d).map_err(|e| e.to_string())?;
        ensure(!zero(&c), || "projection is inner".into())?;
        ensure(l.p_power(&c) == c, || {
            "projection class is not toral".into()
        })?;
        let kr = lie(&kronecker(f).unwrap());
        ensure(kr.dim() == 3, || format!("dim HH1(Kr) = {}", kr.dim()))?;
        ensure(
            fingerprint(&kr).unwrap() == fingerprint(&sl2(f).unwrap()).unwrap(),
            || "HH1(Kr) fingerprint differs from sl2".into(),
        )?;
    }
    Ok(())
}

fn borel_block(f: Fp) -> Algebra {
    let mut b = block_decomposition(&u0_borel(f, 1).unwrap()).unwrap();
    assert_eq!(b.len(), 1);
    b.remove(0).algebra
}

fn solvability_dichotomy() -> Outcome {
    let f = field(3);
    let l = lie(&borel_block(f));
    ensure(series_and_predicates(&l).is_solvable, || {
        "block HH1 not solvable".into()
    })?;
    let mu = greedy_maximal_torus(&l, DEFAULT_SEED).unwrap().mu();
    ensure(mu == 1, || format!("block mu = {mu}"))?;
    let l = lie(&truncated_polynomial(f, &[2]).unwrap());
    ensure(!series_and_predicates(&l).is_solvable, || {
        "k[X]/(X^9) HH1 solvable".into()
    })?;
    let mu = greedy_maximal_torus(&l, DEFAULT_SEED).unwrap().mu();
    ensure(mu == 1, || format!("k[X]/(X^9) mu = {mu}"))
}

fn idempotents_hold(a: &Algebra, es: &[Vec<u32>]) -> bool {
    let mut sum = a.zero();
    for (i, e) in es.iter().enumerate() {
        let central = (0..a.dim()).all(|k| zero(&a.commutator(e, &a.basis_vec(k))));
        let orthogonal = es.iter().enumerate().all(|(j, g)| {
            if i == j {
                a.mul(e, g) == *e
            } else {
                zero(&a.mul(e, g))
            }
        });
        if !central || !orthogonal {
            return false;
        }
        sum = a.add(&sum, e);
    }
    sum == a.one()
}

fn blocks() -> Outcome {
    let f = field(3);
    let u = u0_borel(f, 1).unwrap();
    let b = block_decomposition(&u).map_err(|e| e.to_string())?;
    ensure(b.len() == 1, || format!("{} blocks in u0_borel", b.len()))?;
    let idems: Vec<Vec<u32>> = b.iter().map(|x| x.idempotent.clone()).collect();
    ensure(idempotents_hold(&u, &idems), || {
        "u0_borel idempotents".into()
    })?;
    let fb = fingerprint(&lie(&b[0].algebra)).unwrap();
    let (a, d) = smash(3, 1, 1);
    let fs =
        fingerprint(&RestrictedLie::from_hh1(&smash_hh1(&a, &d, DEFAULT_SEED).unwrap()).unwrap())
            .unwrap();
    ensure(fb == fs, || format!("block {fb:?} != smash {fs:?}"))?;
    let s = split_semisimple(f, 3).unwrap();
    let sb = block_decomposition(&s).map_err(|e| e.to_string())?;
    ensure(sb.len() == 3, || format!("{} blocks in GF(3)^3", sb.len()))?;
    let idems: Vec<Vec<u32>> = sb.iter().map(|x| x.idempotent.clone()).collect();
    ensure(idempotents_hold(&s, &idems), || {
        "GF(3)^3 idempotents".into()
    })
}

fn suite_check(id: &str) -> Outcome {
    for p in [3, 5] {
        let r = run_check(id, &SuiteConfig::new(p, DEFAULT_SEED));
        ensure(r.status == Status::Pass, || {
            format!("{id} at p={p}: {}", r.details)
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("smash multiplication rules", smash_multiplication),
        ("inner derivation formulas", inner_formulas),
        ("outer derivations and complement", outer_and_complement),
        (
            "bracket and p-map tables of A(2,1)",
            bracket_and_pmap_tables,
        ),
        (
            "trigonalizable with certified one-dimensional torus",
            trigonalizable_torus,
        ),
        (
            "k[X]/(X^9): nilpotent ideal and Witt quotient",
            truncated_nine,
        ),
        (
            "Witt algebras simple, mixed exponents not",
            elementary_abelian,
        ),
        (
            "local algebras: commutators and symmetric forms",
            local_algebras,
        ),
        (
            "trivial extension of the Kronecker algebra",
            trivial_extension_kronecker,
        ),
        (
            "solvable vs non-solvable with mu = 1",
            solvability_dichotomy,
        ),
        ("block decomposition", blocks),
        ("property suites", || suite_check("properties")),
        ("stored complexities equal computed mu", || {
            suite_check("thm-4.2-mu")
        }),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:2} pass  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
