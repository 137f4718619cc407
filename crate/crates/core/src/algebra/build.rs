use super::{make_algebra, make_presented_algebra, Algebra, AlgebraError, Element, Presentation};
use crate::linalg::Fp;

const MAX_DIM: usize = 4096;

fn checked_pow(p: u32, e: u32) -> Result<usize, AlgebraError> {
    (p as usize)
        .checked_pow(e)
        .filter(|&d| d <= MAX_DIM)
        .ok_or_else(|| {
            AlgebraError::InvalidParameters(format!(
                "{p}^{e} exceeds the supported dimension {MAX_DIM}"
            ))
        })
}

/// `GF(p)[x_1, …, x_n] / (x_1^{p^{a_1}}, …, x_n^{p^{a_n}})`.
///
/// Basis: monomials in mixed radix with the last variable fastest. The
/// algebra is local, with counit evaluation at zero and radical generated by
/// the variables.
pub fn truncated_polynomial(field: Fp, exponents: &[u32]) -> Result<Algebra, AlgebraError> {
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(AlgebraError::InvalidParameters(
            "need at least one variable and every exponent >= 1".into(),
        ));
    }
    let p = field.p();
    let bounds: Vec<usize> = exponents
        .iter()
        .map(|&a| checked_pow(p, a))
        .collect::<Result<_, _>>()?;
    let dim = bounds
        .iter()
        .try_fold(1usize, |acc, &b| {
            acc.checked_mul(b).filter(|&d| d <= MAX_DIM)
        })
        .ok_or_else(|| AlgebraError::InvalidParameters("dimension too large".into()))?;
    let nvars = bounds.len();
    let mut strides = vec![1usize; nvars];
    for v in (0..nvars.saturating_sub(1)).rev() {
        strides[v] = strides[v + 1] * bounds[v + 1];
    }
    let exps_of =
        |idx: usize| -> Vec<usize> { (0..nvars).map(|v| (idx / strides[v]) % bounds[v]).collect() };
    let var_name = |v: usize| {
        if nvars == 1 {
            "x".to_string()
        } else {
            format!("x{}", v + 1)
        }
    };
    let labels: Vec<String> = (0..dim)
        .map(|idx| {
            let e = exps_of(idx);
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        var_name(v)
                    } else {
                        format!("{}^{}", var_name(v), k)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut mult = Vec::new();
    for i in 0..dim {
        let ei = exps_of(i);
        for j in 0..dim {
            let ej = exps_of(j);
            if (0..nvars).all(|v| ei[v] + ej[v] < bounds[v]) {
                let k: usize = (0..nvars).map(|v| (ei[v] + ej[v]) * strides[v]).sum();
                mult.push((i, j, k, 1));
            }
        }
    }
    let mut unit = vec![0; dim];
    unit[0] = 1;
    let mut counit = vec![0; dim];
    counit[0] = 1;
    let gens: Vec<Element> = (0..nvars)
        .map(|v| {
            let mut g = vec![0; dim];
            g[strides[v]] = 1;
            g
        })
        .collect();
    let mut relations = Vec::new();
    for a in 0..nvars {
        for b in a + 1..nvars {
            relations.push(vec![(1, vec![a, b]), (p - 1, vec![b, a])]);
        }
        relations.push(vec![(1, vec![a; bounds[a]])]);
    }
    let basis_words = (0..dim)
        .map(|idx| {
            exps_of(idx)
                .iter()
                .enumerate()
                .flat_map(|(v, &k)| std::iter::repeat_n(v, k))
                .collect()
        })
        .collect();
    let name = format!(
        "trunc(p={p}, exps=[{}])",
        exponents
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let pres = Presentation {
        generators: gens.clone(),
        generator_labels: (0..nvars).map(var_name).collect(),
        relations,
        basis_words,
    };
    make_presented_algebra(field, labels, &mult, unit, pres)?
        .with_name(name)
        .with_radical_gens(gens)?
        .with_counit(counit)
}

/// Index data for the smash product basis `u_λ x^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmashDescriptor {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    /// Number of characters `p^r`.
    pub chars: usize,
    /// Nilpotency index of `x`, `p^n`.
    pub x_order: usize,
    /// Position of `x` among the presentation generators.
    pub x_generator: usize,
    /// The distinguished character, fixed to the residue 1.
    pub alpha: usize,
}

impl SmashDescriptor {
    pub fn dim(&self) -> usize {
        self.chars * self.x_order
    }

    /// Basis index of `u_λ x^j`, with λ taken mod `p^r`.
    pub fn index(&self, lambda: i64, j: usize) -> usize {
        assert!(j < self.x_order, "x exponent {j} out of range");
        let l = lambda.rem_euclid(self.chars as i64) as usize;
        l * self.x_order + j
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.x_order, idx % self.x_order)
    }

    pub fn label(&self, lambda: usize, j: usize) -> String {
        match j {
            0 => format!("u{lambda}"),
            1 => format!("u{lambda}x"),
            _ => format!("u{lambda}x^{j}"),
        }
    }

    /// Element `u_λ x^j`, or zero when `j ≥ p^n`.
    pub fn monomial(&self, lambda: i64, j: usize) -> Element {
        let mut v = vec![0; self.dim()];
        if j < self.x_order {
            v[self.index(lambda, j)] = 1;
        }
        v
    }

    /// `x^j = Σ_λ u_λ x^j`.
    pub fn x_power(&self, j: usize) -> Element {
        let mut v = vec![0; self.dim()];
        if j < self.x_order {
            for l in 0..self.chars {
                v[self.index(l as i64, j)] = 1;
            }
        }
        v
    }

    /// Largest `j` with `j p^r + 1 ≤ p^n − 1`; the outer derivations are
    /// `g_{λ,0..=max}`.
    pub fn outer_index_count(&self) -> usize {
        (self.x_order - 2) / self.chars + 1
    }
}

/// Smash product `GF(p)[x]/(x^{p^n}) # GF(p)^{Z/p^r}` with orthogonal
/// idempotents `u_λ` and `u_λ x = x u_{λ−α}`, α = 1.
pub fn smash_product(
    field: Fp,
    n: u32,
    r: u32,
) -> Result<(Algebra, SmashDescriptor), AlgebraError> {
    if n == 0 || r == 0 {
        return Err(AlgebraError::InvalidParameters(
            "need n >= 1 and r >= 1".into(),
        ));
    }
    let p = field.p();
    let chars = checked_pow(p, r)?;
    let x_order = checked_pow(p, n)?;
    if chars * x_order > MAX_DIM {
        return Err(AlgebraError::InvalidParameters(
            "dimension too large".into(),
        ));
    }
    let desc = SmashDescriptor {
        p,
        n,
        r,
        chars,
        x_order,
        x_generator: chars,
        alpha: 1,
    };
    let dim = desc.dim();
    let labels = (0..dim)
        .map(|idx| {
            let (l, j) = desc.split(idx);
            desc.label(l, j)
        })
        .collect();
    // (u_λ x^i)(u_μ x^j) = u_λ u_{μ+iα} x^{i+j}
    let mut mult = Vec::new();
    for lam in 0..chars {
        for i in 0..x_order {
            for mu in 0..chars {
                if (mu + i * desc.alpha) % chars != lam {
                    continue;
                }
                for j in 0..x_order - i {
                    mult.push((
                        desc.index(lam as i64, i),
                        desc.index(mu as i64, j),
                        desc.index(lam as i64, i + j),
                        1,
                    ));
                }
            }
        }
    }
    let unit = desc.x_power(0);
    let radical_gens: Vec<Element> = (0..chars).map(|l| desc.monomial(l as i64, 1)).collect();

    let mut gens: Vec<Element> = (0..chars).map(|l| desc.monomial(l as i64, 0)).collect();
    gens.push(desc.x_power(1));
    let x = desc.x_generator;
    let mut relations = Vec::new();
    for l in 0..chars {
        for m in 0..chars {
            let mut rel = vec![(1, vec![l, m])];
            if l == m {
                rel.push((p - 1, vec![l]));
            }
            relations.push(rel);
        }
    }
    let mut sum_rel: Vec<(u32, Vec<usize>)> = (0..chars).map(|l| (1, vec![l])).collect();
    sum_rel.push((p - 1, vec![]));
    relations.push(sum_rel);
    for l in 0..chars {
        let shifted = (l + chars - desc.alpha) % chars;
        relations.push(vec![(1, vec![l, x]), (p - 1, vec![x, shifted])]);
    }
    relations.push(vec![(1, vec![x; x_order])]);
    let basis_words = (0..dim)
        .map(|idx| {
            let (l, j) = desc.split(idx);
            let mut w = vec![l];
            w.extend(std::iter::repeat_n(x, j));
            w
        })
        .collect();
    let mut gen_labels: Vec<String> = (0..chars).map(|l| format!("u{l}")).collect();
    gen_labels.push("x".into());

    let pres = Presentation {
        generators: gens,
        generator_labels: gen_labels,
        relations,
        basis_words,
    };
    let alg = make_presented_algebra(field, labels, &mult, unit, pres)?
        .with_name(format!("smash(p={p}, n={n}, r={r})"))
        .with_radical_gens(radical_gens)?;
    Ok((alg, desc))
}

/// Restricted enveloping algebra of `kt ⊕ (kx)_p` with `[t, x] = x`,
/// `t^{[p]} = t`, `x^{[p]^n} = 0`. Basis `x^b t^a`, `b < p^n`, `a < p`.
pub fn u0_borel(field: Fp, n: u32) -> Result<Algebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidParameters("need n >= 1".into()));
    }
    let p = field.p();
    let pu = p as usize;
    let x_order = checked_pow(p, n)?;
    let dim = x_order * pu;
    if dim > MAX_DIM {
        return Err(AlgebraError::InvalidParameters(
            "dimension too large".into(),
        ));
    }
    let idx = |b: usize, a: usize| b * pu + a;
    let labels = (0..dim)
        .map(|i| {
            let (b, a) = (i / pu, i % pu);
            let xs = match b {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{b}"),
            };
            let ts = match a {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{a}"),
            };
            match (xs.is_empty(), ts.is_empty()) {
                (true, true) => "1".into(),
                (false, true) => xs,
                (true, false) => ts,
                (false, false) => format!("{xs}*{ts}"),
            }
        })
        .collect();
    // t^e with t^p = t folded back into 0..p
    let fold = |e: usize| -> usize {
        let mut e = e;
        while e >= pu {
            e -= pu - 1;
        }
        e
    };
    // (x^b t^a)(x^c t^d) = x^{b+c} (t + c)^a t^d
    let mut mult = Vec::new();
    for b in 0..x_order {
        for a in 0..pu {
            for c in 0..x_order - b {
                for d in 0..pu {
                    let cc = field.reduce(c as i64);
                    let mut coeffs = vec![0u32; pu];
                    for k in 0..=a {
                        let coef = field.mul(
                            field.binomial(a as u64, k as u64),
                            field.pow(cc, (a - k) as u64),
                        );
                        if coef != 0 {
                            let e = fold(k + d);
                            coeffs[e] = field.add(coeffs[e], coef);
                        }
                    }
                    for (e, &v) in coeffs.iter().enumerate() {
                        if v != 0 {
                            mult.push((idx(b, a), idx(c, d), idx(b + c, e), v as i64));
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![0; dim];
    unit[0] = 1;
    let basis = |i: usize| {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    };
    let x = basis(idx(1, 0));
    let t = basis(idx(0, 1));
    let relations = vec![
        vec![(1, vec![1, 0]), (p - 1, vec![0, 1]), (p - 1, vec![0])],
        vec![(1, vec![0; x_order])],
        vec![(1, vec![1; pu]), (p - 1, vec![1])],
    ];
    let basis_words = (0..dim)
        .map(|i| {
            let (b, a) = (i / pu, i % pu);
            let mut w = vec![0; b];
            w.extend(std::iter::repeat_n(1, a));
            w
        })
        .collect();
    let pres = Presentation {
        generators: vec![x.clone(), t],
        generator_labels: vec!["x".into(), "t".into()],
        relations,
        basis_words,
    };
    make_presented_algebra(field, labels, &mult, unit, pres)?
        .with_name(format!("u0_borel(p={p}, n={n})"))
        .with_radical_gens(vec![x])
}

/// `GF(p)^m` with coordinatewise product.
pub fn split_semisimple(field: Fp, m: usize) -> Result<Algebra, AlgebraError> {
    if m == 0 || m > MAX_DIM {
        return Err(AlgebraError::InvalidParameters("need 1 <= m".into()));
    }
    let labels = (0..m).map(|i| format!("e{}", i + 1)).collect();
    let mult: Vec<_> = (0..m).map(|i| (i, i, i, 1)).collect();
    make_algebra(field, labels, &mult, vec![1; m])?
        .with_name(format!("split(p={}, m={m})", field.p()))
        .with_radical_gens(Vec::new())
}

/// Path algebra of the Kronecker quiver `1 ⇉ 2` (arrows `a`, `b`).
pub fn kronecker(field: Fp) -> Result<Algebra, AlgebraError> {
    let a = super::quiver_algebra(field, &super::QuiverPresentation::kronecker())?;
    Ok(a.with_name(format!("Kr(p={})", field.p())))
}

/// Trivial extension `A ⋉ A*` with `(a, f)(b, g) = (ab, a·g + f·b)`, where
/// `(a·g)(c) = g(ca)` and `(f·b)(c) = f(bc)`.
///
/// Basis: the basis of `A` followed by its dual basis (labels suffixed `*`).
pub fn trivial_extension(a: &Algebra) -> Result<Algebra, AlgebraError> {
    let n = a.dim();
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend(a.labels().iter().map(|l| format!("{l}*")));
    let mut mult: Vec<(usize, usize, usize, i64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in a.mul_basis(i, j) {
                let k = k as usize;
                mult.push((i, j, k, c as i64));
                // e_j · e_k* = Σ_i c_{ij}^k e_i*
                mult.push((j, n + k, n + i, c as i64));
                // e_k* · e_i = Σ_j c_{ij}^k e_j*
                mult.push((n + k, i, n + j, c as i64));
            }
        }
    }
    let mut unit = a.unit().to_vec();
    unit.extend(std::iter::repeat_n(0, n));
    let mut alg =
        make_algebra(a.field(), labels, &mult, unit)?.with_name(format!("T({})", a.name()));
    if let Some(gens) = a.radical_gens() {
        let mut g: Vec<Element> = gens
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.extend(std::iter::repeat_n(0, n));
                w
            })
            .collect();
        for k in 0..n {
            let mut w = vec![0; 2 * n];
            w[n + k] = 1;
            g.push(w);
        }
        alg = alg.with_radical_gens(g)?;
    }
    if let Some(eps) = a.counit() {
        let mut e = eps.to_vec();
        e.extend(std::iter::repeat_n(0, n));
        alg = alg.with_counit(e)?;
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn truncated_dimensions() {
        assert_eq!(truncated_polynomial(f(3), &[1]).unwrap().dim(), 3);
        let b2 = truncated_polynomial(f(3), &[1, 1]).unwrap();
        assert_eq!(b2.dim(), 9);
        assert!(b2.is_commutative());
        assert_eq!(truncated_polynomial(f(3), &[2]).unwrap().dim(), 9);
        assert!(truncated_polynomial(f(3), &[]).is_err());
        assert!(truncated_polynomial(f(3), &[0]).is_err());
    }

    #[test]
    fn truncated_x_power_vanishes() {
        let a = truncated_polynomial(f(3), &[2]).unwrap();
        let x = a.basis_vec(1);
        assert!(a.pow(&x, 8).iter().any(|&c| c != 0));
        assert!(a.pow(&x, 9).iter().all(|&c| c == 0));
    }

    #[test]
    fn smash_multiplication_example() {
        let (a, d) = smash_product(f(3), 1, 1).unwrap();
        assert_eq!(a.dim(), 9);
        // (u_1 x)(u_0 x) = x^2 u_{-1} = u_1 x^2
        let lhs = a.mul(&d.monomial(1, 1), &d.monomial(0, 1));
        assert_eq!(lhs, d.monomial(1, 2));
        let rhs = a.mul(&d.x_power(2), &d.monomial(-1, 0));
        assert_eq!(lhs, rhs);
        for l in 0..3 {
            let u = d.monomial(l, 0);
            assert_eq!(a.mul(&u, &u), u);
        }
    }

    #[test]
    fn smash_x_nilpotency() {
        let (a, d) = smash_product(f(3), 2, 1).unwrap();
        let x = d.x_power(1);
        let mut acc = a.one();
        for k in 1..=9 {
            acc = a.mul(&acc, &x);
            if k == 8 {
                assert!(acc.iter().any(|&c| c != 0), "x^8 must be nonzero");
            }
        }
        assert!(acc.iter().all(|&c| c == 0), "x^9 must vanish");
    }

    #[test]
    fn u0_borel_relations() {
        let a = u0_borel(f(3), 1).unwrap();
        assert_eq!(a.dim(), 9);
        let x = a.basis_vec(3);
        let t = a.basis_vec(1);
        assert_eq!(a.commutator(&t, &x), x);
        assert_eq!(a.pow(&t, 3), t);
    }

    #[test]
    fn trivial_extension_of_field() {
        let k = split_semisimple(f(3), 1).unwrap();
        let t = trivial_extension(&k).unwrap();
        assert_eq!(t.dim(), 2);
        let eps = t.basis_vec(1);
        assert_eq!(t.mul(&eps, &eps), t.zero());
        assert!(t.is_commutative());
    }

    #[test]
    fn trivial_extension_dual_part_squares_to_zero() {
        let kr = kronecker(f(3)).unwrap();
        let t = trivial_extension(&kr).unwrap();
        assert_eq!(t.dim(), 8);
        for i in 4..8 {
            for j in 4..8 {
                assert!(t.mul_basis(i, j).is_empty());
            }
        }
    }

    #[test]
    fn parameters_rejected() {
        assert!(smash_product(f(3), 0, 1).is_err());
        assert!(smash_product(f(3), 1, 0).is_err());
        assert!(u0_borel(f(3), 0).is_err());
    }
}
