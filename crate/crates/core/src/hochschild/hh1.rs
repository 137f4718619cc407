use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::derivation::{bracket, p_power, DerSystem, Derivation};
use super::HochschildError;
use crate::algebra::{center, Algebra};
use crate::linalg::{SpanSolver, Subspace};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Basis of `Der(A)`, deterministic via RREF in derivation coordinates.
/// Uses the presentation when the algebra has one and checks every basis
/// derivation against the Leibniz rule on all pairs.
pub fn derivation_space(a: &Algebra) -> Result<Vec<Derivation>, HochschildError> {
    let sys = DerSystem::new(a);
    let space = sys.solve(a);
    space
        .basis()
        .iter()
        .map(|v| Derivation::from_matrix(a, sys.matrix_of_coords(a, v)))
        .collect()
}

/// Dense `dim²`-unknown solve, ignoring any presentation.
pub fn dense_derivation_space(a: &Algebra) -> Vec<Derivation> {
    let sys = DerSystem::dense(a);
    sys.solve(a)
        .basis()
        .iter()
        .map(|v| Derivation::unchecked(sys.matrix_of_coords(a, v)))
        .collect()
}

/// Basis of `IDer(A) = span{ad e_i}`.
pub fn inner_derivations(a: &Algebra) -> Vec<Derivation> {
    let sys = DerSystem::new(a);
    inner_space(a, &sys)
        .basis()
        .iter()
        .map(|v| Derivation::unchecked(sys.matrix_of_coords(a, v)))
        .collect()
}

fn inner_space(a: &Algebra, sys: &DerSystem) -> Subspace {
    let rows: Vec<Vec<u32>> = (0..a.dim())
        .map(|i| sys.inner_coords(a, &a.basis_vec(i)))
        .collect();
    Subspace::from_spanning(a.field(), sys.coord_len(), &rows)
}

pub type BracketTable = Vec<Vec<Vec<u32>>>;
pub type PmapTable = Vec<Vec<u32>>;

/// `HH¹(A, A)` with a chosen complement of `IDer` in `Der`.
#[derive(Clone, Debug)]
pub struct HH1Presentation {
    algebra: Algebra,
    sys: DerSystem,
    der: Subspace,
    ider: Subspace,
    complement: Vec<Derivation>,
    labels: Vec<String>,
    solver: SpanSolver,
    bracket_table: BracketTable,
    pmap_table: PmapTable,
}

/// `HH¹` with the pivot-chosen complement, tables verified against one round
/// of inner perturbations under the default seed.
pub fn hh1(a: &Algebra) -> Result<HH1Presentation, HochschildError> {
    hh1_seeded(a, DEFAULT_SEED)
}

pub fn hh1_seeded(a: &Algebra, seed: u64) -> Result<HH1Presentation, HochschildError> {
    let sys = DerSystem::new(a);
    let der = sys.solve(a);
    let ider = inner_space(a, &sys);
    let reps = der.quotient_basis(&ider)?;
    let labels = reps.iter().map(|v| pivot_label(a, &sys, v)).collect();
    let complement = reps
        .iter()
        .map(|v| Derivation::from_matrix(a, sys.matrix_of_coords(a, v)))
        .collect::<Result<Vec<_>, _>>()?;
    build(a, sys, der, ider, complement, labels, seed)
}

/// `HH¹` with caller-supplied complement representatives, which must be
/// derivations spanning a complement of `IDer`.
pub fn hh1_with_complement(
    a: &Algebra,
    complement: Vec<Derivation>,
    labels: Vec<String>,
    seed: u64,
) -> Result<HH1Presentation, HochschildError> {
    let sys = DerSystem::new(a);
    let der = sys.solve(a);
    let ider = inner_space(a, &sys);
    for d in &complement {
        if !d.is_derivation_of(a) {
            return Err(HochschildError::NotADerivation);
        }
    }
    build(a, sys, der, ider, complement, labels, seed)
}

fn pivot_label(a: &Algebra, sys: &DerSystem, v: &[u32]) -> String {
    let n = a.dim();
    let lead = v.iter().position(|&c| c != 0).unwrap_or(0);
    format!("{}->{}", sys.gen_labels()[lead / n], a.labels()[lead % n])
}

fn build(
    a: &Algebra,
    sys: DerSystem,
    der: Subspace,
    ider: Subspace,
    complement: Vec<Derivation>,
    labels: Vec<String>,
    seed: u64,
) -> Result<HH1Presentation, HochschildError> {
    let f = a.field();
    let h = der.dim() - ider.dim();
    if complement.len() != h || labels.len() != h {
        return Err(HochschildError::NotAComplement(format!(
            "{} representatives for a quotient of dimension {h}",
            complement.len()
        )));
    }
    let expected_ider = a.dim() - center(a).dim();
    if ider.dim() != expected_ider {
        return Err(HochschildError::NotAComplement(format!(
            "IDer has dimension {} but dim A - dim Z = {expected_ider}",
            ider.dim()
        )));
    }
    let mut rows: Vec<Vec<u32>> = complement.iter().map(|d| sys.coords(d)).collect();
    rows.extend(ider.basis().iter().cloned());
    let solver = SpanSolver::new(f, sys.coord_len(), &rows);
    if solver.rank() != rows.len() || rows.len() != der.dim() {
        return Err(HochschildError::NotAComplement(
            "representatives are dependent modulo IDer".into(),
        ));
    }
    let mut out = HH1Presentation {
        algebra: a.clone(),
        sys,
        der,
        ider,
        complement,
        labels,
        solver,
        bracket_table: Vec::new(),
        pmap_table: Vec::new(),
    };
    let (bt, pt) = out.tables_for(&out.complement)?;
    out.bracket_table = bt;
    out.pmap_table = pt;
    out.check_representative_independence(seed, 1)?;
    Ok(out)
}

impl HH1Presentation {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn dim_der(&self) -> usize {
        self.der.dim()
    }

    pub fn dim_ider(&self) -> usize {
        self.ider.dim()
    }

    pub fn complement(&self) -> &[Derivation] {
        &self.complement
    }

    pub fn complement_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_table(&self) -> &BracketTable {
        &self.bracket_table
    }

    pub fn pmap_table(&self) -> &PmapTable {
        &self.pmap_table
    }

    pub fn system(&self) -> &DerSystem {
        &self.sys
    }

    /// `Der` and `IDer` as subspaces of derivation coordinates.
    pub fn der_space(&self) -> &Subspace {
        &self.der
    }

    pub fn ider_space(&self) -> &Subspace {
        &self.ider
    }

    pub fn der_basis(&self) -> Vec<Derivation> {
        self.der
            .basis()
            .iter()
            .map(|v| Derivation::unchecked(self.sys.matrix_of_coords(&self.algebra, v)))
            .collect()
    }

    pub fn ider_basis(&self) -> Vec<Derivation> {
        self.ider
            .basis()
            .iter()
            .map(|v| Derivation::unchecked(self.sys.matrix_of_coords(&self.algebra, v)))
            .collect()
    }

    /// Class in `HH¹` coordinates of a derivation given by its coordinates.
    pub fn class_of_coords(&self, coords: &[u32]) -> Result<Vec<u32>, HochschildError> {
        let sol = self
            .solver
            .solve(coords)
            .ok_or(HochschildError::NotADerivation)?;
        Ok(sol[..self.dim()].to_vec())
    }

    pub fn class_of(&self, d: &Derivation) -> Result<Vec<u32>, HochschildError> {
        self.class_of_coords(&self.sys.coords(d))
    }

    /// Whether `d` is inner.
    pub fn is_inner(&self, d: &Derivation) -> bool {
        self.ider.contains(&self.sys.coords(d))
    }

    /// `Σ c_u rep_u`.
    pub fn representative(&self, coeffs: &[u32]) -> Derivation {
        let mut acc = Derivation::zero(&self.algebra);
        for (c, d) in coeffs.iter().zip(&self.complement) {
            if *c != 0 {
                acc = acc.add(&d.scale(*c));
            }
        }
        acc
    }

    /// Bracket and p-map tables computed from arbitrary representatives.
    pub fn tables_for(
        &self,
        reps: &[Derivation],
    ) -> Result<(BracketTable, PmapTable), HochschildError> {
        let h = reps.len();
        let mut bt = vec![vec![Vec::new(); h]; h];
        for u in 0..h {
            bt[u][u] = vec![0; self.dim()];
            for v in u + 1..h {
                let c = self.class_of(&bracket(&reps[u], &reps[v])?)?;
                bt[v][u] = c.iter().map(|&x| self.algebra.field().neg(x)).collect();
                bt[u][v] = c;
            }
        }
        let pt = reps
            .iter()
            .map(|r| self.class_of(&p_power(r)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((bt, pt))
    }

    /// Recomputes both tables from `rep + ad(a)` for seeded random `a` and
    /// compares with the stored tables.
    pub fn check_representative_independence(
        &self,
        seed: u64,
        rounds: usize,
    ) -> Result<(), HochschildError> {
        let f = self.algebra.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for round in 0..rounds {
            let perturbed: Vec<Derivation> = self
                .complement
                .iter()
                .map(|d| {
                    let x: Vec<u32> = (0..self.algebra.dim())
                        .map(|_| rng.gen_range(0..f.p()))
                        .collect();
                    d.add(&Derivation::inner(&self.algebra, &x))
                })
                .collect();
            let (bt, pt) = self.tables_for(&perturbed)?;
            if bt != self.bracket_table || pt != self.pmap_table {
                return Err(HochschildError::RepresentativeDependence(format!(
                    "tables changed under inner perturbation (round {round})"
                )));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> Hh1Report {
        Hh1Report {
            algebra: self.algebra.name().to_string(),
            dim_der: self.dim_der(),
            dim_ider: self.dim_ider(),
            dim_hh1: self.dim(),
            bracket_table: self.bracket_table.clone(),
            pmap_table: self.pmap_table.clone(),
            complement_labels: self.labels.clone(),
        }
    }
}

/// Serialized summary of an `HH¹` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hh1Report {
    pub algebra: String,
    pub dim_der: usize,
    pub dim_ider: usize,
    pub dim_hh1: usize,
    pub bracket_table: BracketTable,
    pub pmap_table: PmapTable,
    pub complement_labels: Vec<String>,
}
