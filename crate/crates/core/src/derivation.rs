//! Derivation algebras: the Leibniz constraint system, its solution space,
//! the hard-coded 14-parameter octonion pattern and Lie-structure probes.

use crate::algebra::{AlgebraElement, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Matrix, Solver, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A linear map of an `n`-dimensional algebra. Column `j` of the matrix is the
/// image of `e_j`, so `map(x) = matrix · x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                actual: matrix.cols(),
            });
        }
        Ok(LinearMap { matrix })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        LinearMap {
            matrix: Matrix::zeros(field, n, n),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(field, n),
        }
    }

    /// Inverse of [`LinearMap::vectorize`]: row-major, length `n²`.
    pub fn from_vectorized(field: FieldSpec, n: usize, v: &[Scalar]) -> Result<Self> {
        Ok(LinearMap {
            matrix: Matrix::new(field, n, n, v.to_vec())?,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        self.matrix.get(row, col)
    }

    pub fn vectorize(&self) -> Vec<Scalar> {
        self.matrix.data().to_vec()
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        AlgebraElement::new(self.field(), self.matrix.mul_vec(x.coords())?)
    }

    /// Image of `e_j`.
    pub fn image_of_basis(&self, j: usize) -> AlgebraElement {
        AlgebraElement::new(self.field(), self.matrix.column(j)).expect("same field")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        LinearMap::new(self.matrix.mul(&other.matrix)?)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        LinearMap::new(self.matrix.add(&other.matrix)?)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        LinearMap::new(self.matrix.sub(&other.matrix)?)
    }

    pub fn scale(&self, s: &Scalar) -> Result<LinearMap> {
        LinearMap::new(self.matrix.scale(s)?)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field().zero();
        for i in 0..self.dim() {
            acc = &acc + self.entry(i, i);
        }
        acc
    }
}

/// `t1 ∘ t2 - t2 ∘ t1`.
pub fn commutator_map(t1: &LinearMap, t2: &LinearMap) -> Result<LinearMap> {
    t1.compose(t2)?.sub(&t2.compose(t1)?)
}

/// An ordered list of derivations together with the canonical form of their
/// span (vectorized, ambient dimension `n²`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationBasis {
    algebra: StructureConstants,
    maps: Vec<LinearMap>,
    subspace: Subspace,
}

impl DerivationBasis {
    /// Checks that every map is a derivation and that the maps are
    /// independent.
    pub fn new(algebra: StructureConstants, maps: Vec<LinearMap>) -> Result<Self> {
        if let Some(index) = maps.iter().position(|t| !is_derivation(&algebra, t)) {
            return Err(Error::NotADerivation { index });
        }
        let db = DerivationBasis::from_maps_unchecked(algebra, maps)?;
        if db.subspace.dim() != db.maps.len() {
            return Err(Error::DependentMaps {
                span: db.subspace.dim(),
                count: db.maps.len(),
            });
        }
        Ok(db)
    }

    /// Skips the derivation and independence checks. Useful for probing the
    /// structural checks with deliberately invalid families.
    pub fn from_maps_unchecked(algebra: StructureConstants, maps: Vec<LinearMap>) -> Result<Self> {
        let n = algebra.dim();
        let field = algebra.field();
        for t in &maps {
            if t.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: t.dim(),
                });
            }
            if t.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: t.field(),
                });
            }
        }
        let vectors: Vec<Vec<Scalar>> = maps.iter().map(LinearMap::vectorize).collect();
        let subspace = Subspace::span(field, n * n, &vectors)?;
        Ok(DerivationBasis {
            algebra,
            maps,
            subspace,
        })
    }

    pub fn algebra(&self) -> &StructureConstants {
        &self.algebra
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn as_subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// `Σ_k coeffs[k] · maps[k]`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Result<LinearMap> {
        if coeffs.len() != self.maps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.maps.len(),
                actual: coeffs.len(),
            });
        }
        let n = self.algebra.dim();
        let field = self.algebra.field();
        let mut data = vec![field.zero(); n * n];
        for (c, t) in coeffs.iter().zip(&self.maps) {
            if c.is_zero() {
                continue;
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
            for (slot, v) in data.iter_mut().zip(t.matrix.data()) {
                if !v.is_zero() {
                    *slot = &*slot + &(c * v);
                }
            }
        }
        LinearMap::from_vectorized(field, n, &data)
    }

    pub fn contains(&self, t: &LinearMap) -> Result<bool> {
        self.subspace.contains(&t.vectorize())
    }
}

/// One row per `(i, j, k)`, one column per matrix entry `(r, c)` (row-major):
/// the `k`-th coordinate of `T(e_i e_j) - T(e_i) e_j - e_i T(e_j)`.
pub fn leibniz_system(sc: &StructureConstants) -> Matrix {
    let n = sc.dim();
    let field = sc.field();
    let mut m = Matrix::zeros(field, n * n * n, n * n);
    let mut bump = |row: usize, var: usize, v: &Scalar| {
        let cur = m.get(row, var).clone();
        m.set(row, var, &cur + v);
    };
    for i in 0..n {
        for j in 0..n {
            let base = (i * n + j) * n;
            // T(e_i e_j)_k = Σ_m c_ijm T[k][m]
            for (mm, c) in sc.product_terms(i, j) {
                for k in 0..n {
                    bump(base + k, k * n + mm, c);
                }
            }
            // (T(e_i) e_j)_k = Σ_m T[m][i] c_mjk
            for mm in 0..n {
                for (k, c) in sc.product_terms(mm, j) {
                    bump(base + k, mm * n + i, &-c);
                }
            }
            // (e_i T(e_j))_k = Σ_m T[m][j] c_imk
            for mm in 0..n {
                for (k, c) in sc.product_terms(i, mm) {
                    bump(base + k, mm * n + j, &-c);
                }
            }
        }
    }
    m
}

/// `Der(sc)` as the nullspace of [`leibniz_system`]. The maps are the
/// canonical basis rows of that nullspace.
pub fn derivation_space(sc: &StructureConstants) -> DerivationBasis {
    let n = sc.dim();
    let field = sc.field();
    let subspace = nullspace(&leibniz_system(sc));
    let maps = subspace
        .basis_vectors()
        .map(|v| LinearMap::from_vectorized(field, n, v).expect("n² entries"))
        .collect();
    DerivationBasis {
        algebra: sc.clone(),
        maps,
        subspace,
    }
}

/// Leibniz rule on all basis pairs. Maps of the wrong shape or field are not
/// derivations.
pub fn is_derivation(sc: &StructureConstants, t: &LinearMap) -> bool {
    let n = sc.dim();
    if t.dim() != n || t.field() != sc.field() {
        return false;
    }
    let field = sc.field();
    let columns: Vec<Vec<(usize, Scalar)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter_map(|r| {
                    let v = t.entry(r, j);
                    (!v.is_zero()).then(|| (r, v.clone()))
                })
                .collect()
        })
        .collect();
    let mut residual = vec![field.zero(); n];
    for i in 0..n {
        for j in 0..n {
            residual.iter_mut().for_each(|r| *r = field.zero());
            for (m, c) in sc.product_terms(i, j) {
                for (k, v) in &columns[*m] {
                    residual[*k] = &residual[*k] + &(c * v);
                }
            }
            for (m, v) in &columns[i] {
                for (k, c) in sc.product_terms(*m, j) {
                    residual[*k] = &residual[*k] - &(v * c);
                }
            }
            for (m, v) in &columns[j] {
                for (k, c) in sc.product_terms(i, *m) {
                    residual[*k] = &residual[*k] - &(v * c);
                }
            }
            if !residual.iter().all(Scalar::is_zero) {
                return false;
            }
        }
    }
    true
}

/// Names of the free parameters of the octonion derivation matrix, in the
/// order used for basis listings.
pub const PATTERN_PARAMETERS: [&str; 14] = [
    "a12", "a13", "a14", "a15", "a16", "a17", "a23", "a24", "a25", "a26", "a27", "a45", "a46",
    "a47",
];

const A12: usize = 0;
const A13: usize = 1;
const A14: usize = 2;
const A15: usize = 3;
const A16: usize = 4;
const A17: usize = 5;
const A23: usize = 6;
const A24: usize = 7;
const A25: usize = 8;
const A26: usize = 9;
const A27: usize = 10;
const A45: usize = 11;
const A46: usize = 12;
const A47: usize = 13;

type Entry = &'static [(i64, usize)];

const ZERO: Entry = &[];

// The general octonion derivation as an 8×8 matrix whose entries are signed
// sums of parameters; entry (row, col) is the e_row coefficient of D(e_col).
#[rustfmt::skip]
const PATTERN: [[Entry; 8]; 8] = [
    [ZERO; 8],
    [ZERO, ZERO, &[(1, A12)], &[(1, A13)], &[(1, A14)], &[(1, A15)], &[(1, A16)], &[(1, A17)]],
    [ZERO, &[(-1, A12)], ZERO, &[(1, A23)], &[(1, A24)], &[(1, A25)], &[(1, A26)], &[(1, A27)]],
    [ZERO, &[(-1, A13)], &[(-1, A23)], ZERO,
        &[(1, A16), (-1, A25)], &[(1, A17), (1, A24)], &[(-1, A14), (1, A27)], &[(-1, A15), (-1, A26)]],
    [ZERO, &[(-1, A14)], &[(-1, A24)], &[(-1, A16), (1, A25)], ZERO, &[(1, A45)], &[(1, A46)], &[(1, A47)]],
    [ZERO, &[(-1, A15)], &[(-1, A25)], &[(-1, A17), (-1, A24)], &[(-1, A45)], ZERO,
        &[(1, A12), (1, A47)], &[(1, A13), (-1, A46)]],
    [ZERO, &[(-1, A16)], &[(-1, A26)], &[(1, A14), (-1, A27)], &[(-1, A46)], &[(-1, A12), (-1, A47)], ZERO,
        &[(1, A23), (1, A45)]],
    [ZERO, &[(-1, A17)], &[(-1, A27)], &[(1, A15), (1, A26)], &[(-1, A47)], &[(-1, A13), (1, A46)],
        &[(-1, A23), (-1, A45)], ZERO],
];

/// Instantiates the octonion derivation pattern at the given parameter values
/// (ordered as [`PATTERN_PARAMETERS`]).
pub fn pattern_map(field: FieldSpec, params: &[Scalar; 14]) -> LinearMap {
    let mut m = Matrix::zeros(field, 8, 8);
    for (r, row) in PATTERN.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            let mut acc = field.zero();
            for &(sign, p) in entry.iter() {
                acc = &acc + &(&field.from_i64(sign) * &params[p]);
            }
            m.set(r, c, acc);
        }
    }
    LinearMap { matrix: m }
}

/// The pattern map with one parameter set to 1 and the rest 0.
pub fn pattern_unit_map(field: FieldSpec, parameter: usize) -> LinearMap {
    let params = std::array::from_fn(|p| {
        if p == parameter {
            field.one()
        } else {
            field.zero()
        }
    });
    pattern_map(field, &params)
}

/// Span of the 14 unit pattern maps, built without the Leibniz solver.
pub fn pattern_space(field: FieldSpec) -> Subspace {
    let vectors: Vec<Vec<Scalar>> = (0..PATTERN_PARAMETERS.len())
        .map(|p| pattern_unit_map(field, p).vectorize())
        .collect();
    Subspace::span(field, 64, &vectors).expect("64-entry vectors")
}

/// Computed `Der(sc)` equals the hard-coded pattern space.
pub fn verify_pattern(sc: &StructureConstants) -> bool {
    sc.dim() == 8 && *derivation_space(sc).as_subspace() == pattern_space(sc.field())
}

/// Every commutator of basis maps lies in the span.
pub fn lie_closure_check(db: &DerivationBasis) -> bool {
    first_closure_violation(db).is_none()
}

fn first_closure_violation(db: &DerivationBasis) -> Option<(usize, usize)> {
    let maps = db.maps();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let bracket = commutator_map(&maps[i], &maps[j]).expect("maps share shape");
            if !db.contains(&bracket).expect("maps share shape") {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rank of `K[i][j] = trace(ad B_i ∘ ad B_j)`, with `ad` taken in the listed
/// basis.
pub fn killing_form_rank(db: &DerivationBasis) -> Result<usize> {
    Ok(killing_form(db)?.rank())
}

pub fn killing_form(db: &DerivationBasis) -> Result<Matrix> {
    if let Some((left, right)) = first_closure_violation(db) {
        return Err(Error::ClosureViolation { left, right });
    }
    let field = db.algebra().field();
    let d = db.dim();
    let n2 = db.algebra().dim().pow(2);
    let columns: Vec<Vec<Scalar>> = db.maps().iter().map(LinearMap::vectorize).collect();
    let solver = Solver::new(&Matrix::from_columns(field, n2, &columns)?);
    let ad: Vec<Matrix> = db
        .maps()
        .iter()
        .map(|bi| {
            let coords: Vec<Vec<Scalar>> = db
                .maps()
                .iter()
                .map(|bj| {
                    let bracket = commutator_map(bi, bj).expect("maps share shape");
                    solver
                        .solve(&bracket.vectorize())
                        .expect("vector length n²")
                        .expect("closure checked above")
                })
                .collect();
            Matrix::from_columns(field, d, &coords)
        })
        .collect::<Result<_>>()?;
    let mut k = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in 0..d {
            let product = LinearMap::new(ad[i].mul(&ad[j])?)?;
            k.set(i, j, product.trace());
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_octonion;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn unit_algebra() -> StructureConstants {
        let mut sc = StructureConstants::zero("unit", Q, 1);
        sc.set(0, 0, 0, Q.one());
        sc
    }

    #[test]
    fn leibniz_system_shape() {
        let o = build_octonion(Q);
        let m = leibniz_system(&o);
        assert_eq!((m.rows(), m.cols()), (512, 64));
        assert_eq!(nullspace(&leibniz_system(&unit_algebra())).dim(), 0);
        let zero2 = StructureConstants::zero("zero", Q, 2);
        assert_eq!(nullspace(&leibniz_system(&zero2)).dim(), 4);
    }

    #[test]
    fn octonion_derivation_dimension() {
        assert_eq!(derivation_space(&build_octonion(Q)).dim(), 14);
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(derivation_space(&build_octonion(gf5)).dim(), 14);
        assert_eq!(
            derivation_space(&StructureConstants::zero("z", Q, 2)).dim(),
            4
        );
    }

    #[test]
    fn derivation_membership() {
        let o = build_octonion(Q);
        assert!(is_derivation(&o, &LinearMap::zero(Q, 8)));
        assert!(!is_derivation(&o, &LinearMap::identity(Q, 8)));
        assert!(!is_derivation(&o, &LinearMap::zero(Q, 3)));
        let db = derivation_space(&o);
        assert!(db.maps().iter().all(|t| is_derivation(&o, t)));
    }

    #[test]
    fn basis_follows_parameter_order() {
        let db = derivation_space(&build_octonion(Q));
        for (p, t) in db.maps().iter().enumerate() {
            assert_eq!(
                *t,
                pattern_unit_map(Q, p),
                "parameter {}",
                PATTERN_PARAMETERS[p]
            );
        }
    }

    #[test]
    fn pattern_unit_a12() {
        let t = pattern_unit_map(Q, A12);
        let minus = Q.from_i64(-1);
        for r in 0..8 {
            for c in 0..8 {
                let expected = match (r, c) {
                    (1, 2) | (5, 6) => Q.one(),
                    (2, 1) | (6, 5) => minus.clone(),
                    _ => Q.zero(),
                };
                assert_eq!(*t.entry(r, c), expected, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn pattern_space_shape() {
        let s = pattern_space(Q);
        assert_eq!(s.dim(), 14);
        for p in 0..14 {
            let t = pattern_unit_map(Q, p);
            assert!((0..8).all(|i| t.entry(0, i).is_zero() && t.entry(i, 0).is_zero()));
        }
    }

    #[test]
    fn pattern_holds_and_detects_perturbation() {
        assert!(verify_pattern(&build_octonion(Q)));
        assert!(verify_pattern(&build_octonion(
            FieldSpec::prime(7).unwrap()
        )));
        let mut perturbed = build_octonion(Q);
        perturbed.set(1, 2, 3, Q.from_i64(-1));
        assert!(!verify_pattern(&perturbed));
    }

    #[test]
    fn commutators() {
        let db = derivation_space(&build_octonion(Q));
        let t = &db.maps()[3];
        assert!(commutator_map(t, t).unwrap().is_zero());
        assert!(commutator_map(t, &LinearMap::zero(Q, 8)).unwrap().is_zero());
        let bracket = commutator_map(&db.maps()[0], &db.maps()[1]).unwrap();
        assert!(!bracket.is_zero());
        assert!(db.contains(&bracket).unwrap());
    }

    #[test]
    fn closure_checks() {
        let o = build_octonion(Q);
        assert!(lie_closure_check(&derivation_space(&o)));
        let zero_only =
            DerivationBasis::from_maps_unchecked(o.clone(), vec![LinearMap::zero(Q, 8)]).unwrap();
        assert!(lie_closure_check(&zero_only));
    }

    #[test]
    fn closure_fails_for_non_derivation_extension() {
        let o = build_octonion(Q);
        let mut maps = derivation_space(&o).maps().to_vec();
        let diag: Vec<Scalar> = (0..64)
            .map(|idx| {
                if idx / 8 == idx % 8 {
                    Q.from_i64((idx / 8) as i64)
                } else {
                    Q.zero()
                }
            })
            .collect();
        maps.push(LinearMap::from_vectorized(Q, 8, &diag).unwrap());
        let extended = DerivationBasis::from_maps_unchecked(o.clone(), maps).unwrap();
        assert!(!lie_closure_check(&extended));
        assert!(matches!(
            killing_form_rank(&extended),
            Err(Error::ClosureViolation { .. })
        ));
    }

    #[test]
    fn identity_extension_is_still_closed() {
        // The identity is central, so adjoining it keeps the span closed even
        // though it is not a derivation.
        let o = build_octonion(Q);
        let mut maps = derivation_space(&o).maps().to_vec();
        maps.push(LinearMap::identity(Q, 8));
        assert!(matches!(
            DerivationBasis::new(o.clone(), maps.clone()),
            Err(Error::NotADerivation { index: 14 })
        ));
        let extended = DerivationBasis::from_maps_unchecked(o, maps).unwrap();
        assert!(lie_closure_check(&extended));
    }

    #[test]
    fn killing_ranks() {
        assert_eq!(
            killing_form_rank(&derivation_space(&build_octonion(Q))).unwrap(),
            14
        );
        // commuting diagonal derivations of the zero-product plane
        let zero2 = StructureConstants::zero("zero", Q, 2);
        let diag =
            |a, b| LinearMap::new(Matrix::from_i64(Q, 2, 2, &[a, 0, 0, b]).unwrap()).unwrap();
        let abelian = DerivationBasis::new(zero2.clone(), vec![diag(1, 0), diag(0, 1)]).unwrap();
        assert_eq!(killing_form_rank(&abelian).unwrap(), 0);
        let one_dim = derivation_space(&StructureConstants::zero("line", Q, 1));
        assert_eq!(one_dim.dim(), 1);
        assert_eq!(killing_form_rank(&one_dim).unwrap(), 0);
        // Der of the zero-product plane is gl(2): K(X, Y) = 4 tr(XY) - 2 tr X tr Y,
        // whose radical is the centre, so the rank is 3.
        assert_eq!(killing_form_rank(&derivation_space(&zero2)).unwrap(), 3);
    }

    #[test]
    fn new_rejects_dependent_maps() {
        let zero2 = StructureConstants::zero("zero", Q, 2);
        let t = LinearMap::identity(Q, 2);
        assert!(matches!(
            DerivationBasis::new(zero2, vec![t.clone(), t]),
            Err(Error::DependentMaps { span: 1, count: 2 })
        ));
    }
}
