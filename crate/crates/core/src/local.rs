//! Finite certificates for local and 2-local derivations.
//!
//! A local derivation is checked on a finite probe set: the maps `T` with
//! `T(x) ∈ {D(x) : D ∈ Der}` for every probe `x` form a subspace, and the
//! certificate is equality of that subspace with `Der`. A 2-local map is
//! represented by its values on a probe set; every pair of probes must be
//! matched by a single derivation, and the values must then come from one
//! derivation globally.

use crate::algebra::{AlgebraElement, StructureConstants};
use crate::derivation::{derivation_space, DerivationBasis, LinearMap};
use crate::error::{Error, Result};
use crate::linalg::{self, column_space, nullspace, Matrix, Solver, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A non-empty ordered list of elements of one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeSet {
    elements: Vec<AlgebraElement>,
}

impl ProbeSet {
    pub fn new(field: FieldSpec, elements: Vec<AlgebraElement>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::EmptyProbeSet);
        };
        let dim = first.dim();
        for x in &elements {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: x.dim(),
                });
            }
            linalg::check_field(field, x.coords())?;
        }
        Ok(ProbeSet { elements })
    }

    /// `e_0, …, e_{n-1}`.
    pub fn basis(field: FieldSpec, n: usize) -> Result<Self> {
        ProbeSet::new(
            field,
            (0..n).map(|i| AlgebraElement::basis(field, n, i)).collect(),
        )
    }

    /// `e_0, …, e_{n-1}` followed by `e_i + e_j` for `1 ≤ i < j < n`.
    pub fn basis_and_pair_sums(field: FieldSpec, n: usize) -> Result<Self> {
        let mut elements: Vec<AlgebraElement> =
            (0..n).map(|i| AlgebraElement::basis(field, n, i)).collect();
        for i in 1..n {
            for j in i + 1..n {
                elements.push(elements[i].add(&elements[j]));
            }
        }
        ProbeSet::new(field, elements)
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn position(&self, x: &AlgebraElement) -> Option<usize> {
        self.elements.iter().position(|p| p == x)
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.position(x).is_some()
    }

    /// The union, keeping first occurrences in order.
    pub fn union(&self, other: &ProbeSet) -> ProbeSet {
        let mut elements = self.elements.clone();
        for x in &other.elements {
            if !elements.contains(x) {
                elements.push(x.clone());
            }
        }
        ProbeSet { elements }
    }
}

/// The 29 octonion probes: basis vectors and all sums `e_i + e_j`, `1 ≤ i < j ≤ 7`.
pub fn standard_probe_set(field: FieldSpec) -> ProbeSet {
    ProbeSet::basis_and_pair_sums(field, 8).expect("non-empty")
}

/// Values `Δ(x)` of a possibly nonlinear map on a probe set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLocalTable {
    probes: ProbeSet,
    values: Vec<AlgebraElement>,
}

impl TwoLocalTable {
    pub fn new(probes: ProbeSet, values: Vec<AlgebraElement>) -> Result<Self> {
        if values.len() != probes.len() {
            return Err(Error::DimensionMismatch {
                expected: probes.len(),
                actual: values.len(),
            });
        }
        let dim = probes.dim();
        if let Some(v) = values.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.dim(),
            });
        }
        Ok(TwoLocalTable { probes, values })
    }

    /// The table `x ↦ t(x)`.
    pub fn from_map(probes: ProbeSet, t: &LinearMap) -> Result<Self> {
        let values = probes
            .elements()
            .iter()
            .map(|x| t.apply(x))
            .collect::<Result<_>>()?;
        TwoLocalTable::new(probes, values)
    }

    pub fn probes(&self) -> &ProbeSet {
        &self.probes
    }

    pub fn values(&self) -> &[AlgebraElement] {
        &self.values
    }

    pub fn value(&self, x: &AlgebraElement) -> Option<&AlgebraElement> {
        self.probes.position(x).map(|i| &self.values[i])
    }

    /// Replaces the value at probe index `i`.
    pub fn with_value(&self, i: usize, value: AlgebraElement) -> Result<Self> {
        let mut values = self.values.clone();
        *values.get_mut(i).ok_or(Error::MissingProbe)? = value;
        TwoLocalTable::new(self.probes.clone(), values)
    }
}

// n × d matrix whose k-th column is B_k(x).
fn orbit_matrix(db: &DerivationBasis, x: &AlgebraElement) -> Result<Matrix> {
    let field = db.algebra().field();
    let n = db.algebra().dim();
    let columns: Vec<Vec<Scalar>> = db
        .maps()
        .iter()
        .map(|b| b.apply(x).map(AlgebraElement::into_coords))
        .collect::<Result<_>>()?;
    if columns.is_empty() {
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.dim(),
            });
        }
        return Ok(Matrix::zeros(field, n, 0));
    }
    Matrix::from_columns(field, n, &columns)
}

/// `{D(x) : D ∈ span(db)}`.
pub fn evaluation_orbit(db: &DerivationBasis, x: &AlgebraElement) -> Result<Subspace> {
    Ok(column_space(&orbit_matrix(db, x)?))
}

/// Vectorized maps `T` with `T(x)` in the orbit of `x` for every probe `x`.
pub fn local_space(db: &DerivationBasis, probes: &ProbeSet) -> Result<Subspace> {
    let field = db.algebra().field();
    let n = db.algebra().dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in probes.elements() {
        let orbit = evaluation_orbit(db, x)?;
        // f(T x) = Σ_r f_r Σ_c T[r][c] x_c, so the coefficient of T[r][c] is f_r x_c.
        for f in orbit.annihilator().basis_vectors() {
            let mut row = vec![field.zero(); n * n];
            for (r, fr) in f.iter().enumerate() {
                if fr.is_zero() {
                    continue;
                }
                for (c, xc) in x.coords().iter().enumerate() {
                    if !xc.is_zero() {
                        row[r * n + c] = fr * xc;
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(nullspace(&Matrix::from_rows(field, n * n, &rows)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalReport {
    /// `dim local_space` with probes `e_0, …, e_{n-1}` only.
    pub local_dim_basis_only: usize,
    /// `dim local_space` with basis vectors and pair sums.
    pub local_dim_full: usize,
    pub derivation_dim: usize,
    pub equal_to_der: bool,
}

pub fn verify_local(sc: &StructureConstants) -> Result<LocalReport> {
    let db = derivation_space(sc);
    verify_local_with(&db)
}

pub fn verify_local_with(db: &DerivationBasis) -> Result<LocalReport> {
    let field = db.algebra().field();
    let n = db.algebra().dim();
    let basis_only = local_space(db, &ProbeSet::basis(field, n)?)?;
    let full = local_space(db, &ProbeSet::basis_and_pair_sums(field, n)?)?;
    Ok(LocalReport {
        local_dim_basis_only: basis_only.dim(),
        local_dim_full: full.dim(),
        derivation_dim: db.as_subspace().dim(),
        equal_to_der: full.equals(db.as_subspace())?,
    })
}

/// A derivation `D` with `D(x) = t(x)`, if one exists.
pub fn pointwise_witness(
    db: &DerivationBasis,
    t: &LinearMap,
    x: &AlgebraElement,
) -> Result<Option<LinearMap>> {
    let target = t.apply(x)?;
    let a = orbit_matrix(db, x)?;
    match linalg::solve(&a, target.coords())? {
        Some(coeffs) => Ok(Some(db.combination(&coeffs)?)),
        None => Ok(None),
    }
}

/// A derivation `D` with `D(x) = Δ(x)` and `D(y) = Δ(y)`, if one exists.
pub fn two_local_witness(
    db: &DerivationBasis,
    table: &TwoLocalTable,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<Option<LinearMap>> {
    let dx = table.value(x).ok_or(Error::MissingProbe)?;
    let dy = table.value(y).ok_or(Error::MissingProbe)?;
    let a = orbit_matrix(db, x)?.vstack(&orbit_matrix(db, y)?)?;
    let mut b = dx.coords().to_vec();
    b.extend_from_slice(dy.coords());
    match linalg::solve(&a, &b)? {
        Some(coeffs) => Ok(Some(db.combination(&coeffs)?)),
        None => Ok(None),
    }
}

/// The derivation taking the tabulated values on `e_0, …, e_{n-1}`, if it
/// exists. A linear map is determined by its basis images, so it is unique.
pub fn reconstruct_derivation(
    db: &DerivationBasis,
    table: &TwoLocalTable,
) -> Result<Option<LinearMap>> {
    let field = db.algebra().field();
    let n = db.algebra().dim();
    let mut a: Option<Matrix> = None;
    let mut b = Vec::with_capacity(n * n);
    for i in 0..n {
        let e = AlgebraElement::basis(field, n, i);
        let value = table.value(&e).ok_or(Error::MissingProbe)?;
        b.extend_from_slice(value.coords());
        let block = orbit_matrix(db, &e)?;
        a = Some(match a {
            None => block,
            Some(acc) => acc.vstack(&block)?,
        });
    }
    let a = a.unwrap_or_else(|| Matrix::zeros(field, 0, db.dim()));
    match linalg::solve(&a, &b)? {
        Some(coeffs) => Ok(Some(db.combination(&coeffs)?)),
        None => Ok(None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLocalReport {
    pub pairs_checked: usize,
    pub all_pairs_witnessed: bool,
    /// Probe indices of the first pair without a witness.
    pub first_unwitnessed: Option<(usize, usize)>,
    pub reconstructed: Option<LinearMap>,
    pub agrees_on_probes: bool,
}

pub fn verify_two_local(sc: &StructureConstants, table: &TwoLocalTable) -> Result<TwoLocalReport> {
    let db = derivation_space(sc);
    TwoLocalVerifier::new(&db, table.probes().clone())?.verify(table)
}

/// Pair and reconstruction systems for a fixed probe set, reduced once so
/// that many tables can be checked.
#[derive(Debug, Clone)]
pub struct TwoLocalVerifier<'a> {
    db: &'a DerivationBasis,
    probes: ProbeSet,
    pairs: Vec<(usize, usize, Solver)>,
    basis_rows: Vec<usize>,
    reconstruct: Solver,
}

impl<'a> TwoLocalVerifier<'a> {
    pub fn new(db: &'a DerivationBasis, probes: ProbeSet) -> Result<Self> {
        let field = db.algebra().field();
        let n = db.algebra().dim();
        if probes.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: probes.dim(),
            });
        }
        let blocks: Vec<Matrix> = probes
            .elements()
            .iter()
            .map(|x| orbit_matrix(db, x))
            .collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        for i in 0..probes.len() {
            for j in i + 1..probes.len() {
                pairs.push((i, j, Solver::new(&blocks[i].vstack(&blocks[j])?)));
            }
        }
        let basis_rows = (0..n)
            .map(|i| {
                probes
                    .position(&AlgebraElement::basis(field, n, i))
                    .ok_or(Error::MissingProbe)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut stacked = Matrix::zeros(field, 0, db.dim());
        for &row in &basis_rows {
            stacked = stacked.vstack(&blocks[row])?;
        }
        Ok(TwoLocalVerifier {
            db,
            probes,
            pairs,
            basis_rows,
            reconstruct: Solver::new(&stacked),
        })
    }

    pub fn probes(&self) -> &ProbeSet {
        &self.probes
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    fn check_table(&self, table: &TwoLocalTable) -> Result<()> {
        if table.probes() != &self.probes {
            return Err(Error::MissingProbe);
        }
        Ok(())
    }

    /// Runs every pair solve, handing each witness found to `on_witness`
    /// with the pair's probe indices. Stops early at the first pair without
    /// a witness.
    pub fn verify_with(
        &self,
        table: &TwoLocalTable,
        mut on_witness: impl FnMut(usize, usize, &LinearMap),
    ) -> Result<TwoLocalReport> {
        self.check_table(table)?;
        let values = table.values();
        let mut checked = 0;
        for (i, j, solver) in &self.pairs {
            checked += 1;
            let mut b = values[*i].coords().to_vec();
            b.extend_from_slice(values[*j].coords());
            match solver.solve(&b)? {
                Some(coeffs) => on_witness(*i, *j, &self.db.combination(&coeffs)?),
                None => {
                    return Ok(TwoLocalReport {
                        pairs_checked: checked,
                        all_pairs_witnessed: false,
                        first_unwitnessed: Some((*i, *j)),
                        reconstructed: None,
                        agrees_on_probes: false,
                    })
                }
            }
        }
        let reconstructed = self.reconstruct_from(table)?;
        let agrees_on_probes = match &reconstructed {
            Some(d) => self
                .probes
                .elements()
                .iter()
                .zip(values)
                .map(|(x, v)| d.apply(x).map(|dx| dx == *v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok),
            None => false,
        };
        Ok(TwoLocalReport {
            pairs_checked: checked,
            all_pairs_witnessed: true,
            first_unwitnessed: None,
            reconstructed,
            agrees_on_probes,
        })
    }

    pub fn verify(&self, table: &TwoLocalTable) -> Result<TwoLocalReport> {
        self.verify_with(table, |_, _, _| {})
    }

    /// Witness for the probe pair `(i, j)`.
    pub fn witness(&self, table: &TwoLocalTable, i: usize, j: usize) -> Result<Option<LinearMap>> {
        self.check_table(table)?;
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let Some((_, _, solver)) = self.pairs.iter().find(|(a, b, _)| (*a, *b) == (i, j)) else {
            return Err(Error::MissingProbe);
        };
        let mut b = table.values()[i].coords().to_vec();
        b.extend_from_slice(table.values()[j].coords());
        match solver.solve(&b)? {
            Some(coeffs) => Ok(Some(self.db.combination(&coeffs)?)),
            None => Ok(None),
        }
    }

    pub fn reconstruct_from(&self, table: &TwoLocalTable) -> Result<Option<LinearMap>> {
        self.check_table(table)?;
        let mut b = Vec::new();
        for &row in &self.basis_rows {
            b.extend_from_slice(table.values()[row].coords());
        }
        match self.reconstruct.solve(&b)? {
            Some(coeffs) => Ok(Some(self.db.combination(&coeffs)?)),
            None => Ok(None),
        }
    }
}
