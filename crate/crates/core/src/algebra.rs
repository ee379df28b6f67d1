//! Finite-dimensional algebras given by structure constants, and the octonion
//! instance `e_i e_j = -δ_ij e_0 + ε_ijk e_k` with unit `e_0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::check_field;
use crate::scalar::{FieldSpec, Scalar};

/// `e_i e_j = Σ_k c[i][j][k] e_k` over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    name: String,
    dim: usize,
    field: FieldSpec,
    c: Vec<Scalar>,
    // Nonzero (k, c[i][j][k]) per (i, j), kept in sync with `c`.
    terms: Vec<Vec<(usize, Scalar)>>,
}

impl StructureConstants {
    /// The algebra of dimension `dim` with all products zero.
    pub fn zero(name: impl Into<String>, field: FieldSpec, dim: usize) -> Self {
        StructureConstants {
            name: name.into(),
            dim,
            field,
            c: vec![field.zero(); dim * dim * dim],
            terms: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds from a flat tensor indexed `(i * dim + j) * dim + k`.
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        dim: usize,
        c: Vec<Scalar>,
    ) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                actual: c.len(),
            });
        }
        check_field(field, &c)?;
        let mut sc = StructureConstants::zero(name, field, dim);
        sc.c = c;
        for ij in 0..dim * dim {
            sc.refresh_terms(ij);
        }
        Ok(sc)
    }

    fn refresh_terms(&mut self, ij: usize) {
        let n = self.dim;
        self.terms[ij] = (0..n)
            .filter_map(|k| {
                let v = &self.c[ij * n + k];
                (!v.is_zero()).then(|| (k, v.clone()))
            })
            .collect();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim;
        assert!(
            i < n && j < n && k < n,
            "structure constant index out of range"
        );
        &self.c[(i * n + j) * n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let n = self.dim;
        assert!(
            i < n && j < n && k < n,
            "structure constant index out of range"
        );
        assert_eq!(value.field(), self.field, "field mismatch");
        self.c[(i * n + j) * n + k] = value;
        self.refresh_terms(i * n + j);
    }

    /// Nonzero terms `(k, c[i][j][k])` of the product `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.terms[i * self.dim + j]
    }

    /// `e_i e_j` as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> AlgebraElement {
        let mut coords = vec![self.field.zero(); self.dim];
        for (k, v) in self.product_terms(i, j) {
            coords[*k] = v.clone();
        }
        AlgebraElement(coords)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.field, self.dim, i)
    }

    fn check_element(&self, a: &AlgebraElement) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: a.dim(),
            });
        }
        check_field(self.field, &a.0)
    }

    /// `(ab)_k = Σ_ij a_i b_j c[i][j][k]`.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.multiply_unchecked(&a.0, &b.0))
    }

    pub(crate) fn multiply_unchecked(&self, a: &[Scalar], b: &[Scalar]) -> AlgebraElement {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in self.product_terms(i, j) {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        AlgebraElement(out)
    }

    /// `(ab)c - a(bc)`.
    pub fn associator(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
        c: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let left = self.multiply(&self.multiply(a, b)?, c)?;
        let right = self.multiply(a, &self.multiply(b, c)?)?;
        Ok(left.sub(&right))
    }

    fn basis_associator(&self, i: usize, j: usize, k: usize) -> AlgebraElement {
        let left = self.multiply_unchecked(&self.basis_product(i, j).0, &self.basis(k).0);
        let right = self.multiply_unchecked(&self.basis(i).0, &self.basis_product(j, k).0);
        left.sub(&right)
    }

    /// Left and right alternative laws on basis elements together with their
    /// linearizations, which extend the laws to all elements when the
    /// characteristic is not 2.
    pub fn check_alternative(&self) -> bool {
        let n = self.dim;
        let assoc: Vec<AlgebraElement> = (0..n * n * n)
            .map(|idx| self.basis_associator(idx / (n * n), (idx / n) % n, idx % n))
            .collect();
        let at = |i: usize, j: usize, k: usize| &assoc[(i * n + j) * n + k];
        for i in 0..n {
            for j in 0..n {
                if !at(i, i, j).is_zero() || !at(i, j, j).is_zero() {
                    return false;
                }
                for k in 0..n {
                    if !at(i, j, k).add(at(j, i, k)).is_zero()
                        || !at(i, j, k).add(at(i, k, j)).is_zero()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `e_i e_j = -e_j e_i` for all distinct `1 ≤ i, j < dim`.
    pub fn check_anticommutative_imaginaries(&self) -> bool {
        let n = self.dim;
        (1..n).all(|i| {
            (1..n)
                .filter(|&j| j != i)
                .all(|j| (0..n).all(|k| *self.get(i, j, k) == -self.get(j, i, k)))
        })
    }
}

/// Coordinates of an element in the basis `e_0, …, e_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement(Vec<Scalar>);

impl AlgebraElement {
    pub fn new(field: FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        check_field(field, &coords)?;
        Ok(AlgebraElement(coords))
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        AlgebraElement(vec![field.zero(); dim])
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut coords = vec![field.zero(); dim];
        coords[i] = field.one();
        AlgebraElement(coords)
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Self {
        AlgebraElement(coords.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Panics if the dimensions differ.
    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        AlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Panics if the dimensions differ.
    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        AlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        AlgebraElement(self.0.iter().map(|a| a * s).collect())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("e{i}")
                } else {
                    format!("({c})e{i}")
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Ordered triples `ijk` with `ε_ijk = +1`.
pub const EPSILON_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// Octonion product table, transcribed row by row: entry `[i][j] = (s, k)`
/// means `e_i e_j = s·e_k`. Kept independent of [`EPSILON_TRIPLES`].
pub const OCTONION_TABLE: [[(i8, usize); 8]; 8] = [
    [
        (1, 0),
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (1, 6),
        (1, 7),
    ],
    [
        (1, 1),
        (-1, 0),
        (1, 3),
        (-1, 2),
        (1, 5),
        (-1, 4),
        (-1, 7),
        (1, 6),
    ],
    [
        (1, 2),
        (-1, 3),
        (-1, 0),
        (1, 1),
        (1, 6),
        (1, 7),
        (-1, 4),
        (-1, 5),
    ],
    [
        (1, 3),
        (1, 2),
        (-1, 1),
        (-1, 0),
        (1, 7),
        (-1, 6),
        (1, 5),
        (-1, 4),
    ],
    [
        (1, 4),
        (-1, 5),
        (-1, 6),
        (-1, 7),
        (-1, 0),
        (1, 1),
        (1, 2),
        (1, 3),
    ],
    [
        (1, 5),
        (1, 4),
        (-1, 7),
        (1, 6),
        (-1, 1),
        (-1, 0),
        (-1, 3),
        (1, 2),
    ],
    [
        (1, 6),
        (1, 7),
        (1, 4),
        (-1, 5),
        (-1, 2),
        (1, 3),
        (-1, 0),
        (-1, 1),
    ],
    [
        (1, 7),
        (-1, 6),
        (1, 5),
        (1, 4),
        (-1, 3),
        (-1, 2),
        (1, 1),
        (-1, 0),
    ],
];

const PERMUTATIONS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

/// The octonion algebra built from the closed formula: `e_0` is a two-sided
/// unit, `e_i e_i = -e_0`, and `ε` is the total antisymmetrization of
/// [`EPSILON_TRIPLES`].
pub fn build_octonion(field: FieldSpec) -> StructureConstants {
    let mut sc = StructureConstants::zero("octonion", field, 8);
    for j in 0..8 {
        sc.set(0, j, j, field.one());
        sc.set(j, 0, j, field.one());
    }
    for i in 1..8 {
        sc.set(i, i, 0, field.from_i64(-1));
    }
    for triple in EPSILON_TRIPLES {
        for (perm, sign) in PERMUTATIONS {
            let [i, j, k] = perm.map(|p| triple[p]);
            sc.set(i, j, k, field.from_i64(sign));
        }
    }
    sc
}

/// Compares `sc` entry by entry against [`OCTONION_TABLE`].
pub fn table_consistency_check(sc: &StructureConstants) -> bool {
    if sc.dim() != 8 {
        return false;
    }
    let field = sc.field();
    OCTONION_TABLE.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, &(sign, k))| {
            (0..8).all(|m| {
                let expected = if m == k {
                    field.from_i64(i64::from(sign))
                } else {
                    field.zero()
                };
                *sc.get(i, j, m) == expected
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn e(i: usize) -> AlgebraElement {
        AlgebraElement::basis(Q, 8, i)
    }

    fn complex(field: FieldSpec) -> StructureConstants {
        let mut sc = StructureConstants::zero("complex", field, 2);
        sc.set(0, 0, 0, field.one());
        sc.set(0, 1, 1, field.one());
        sc.set(1, 0, 1, field.one());
        sc.set(1, 1, 0, field.from_i64(-1));
        sc
    }

    #[test]
    fn formula_entries() {
        let o = build_octonion(Q);
        assert!(o.get(1, 2, 3).is_one());
        assert!(o.get(5, 3, 6).is_one());
        for i in 1..8 {
            assert_eq!(*o.get(i, i, 0), Q.from_i64(-1));
        }
        for j in 0..8 {
            assert!(o.get(0, j, j).is_one());
            assert!(o.get(j, 0, j).is_one());
        }
        let nonzero: usize = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .map(|(i, j)| o.product_terms(i, j).len())
            .sum();
        assert_eq!(nonzero, 64);
    }

    #[test]
    fn table_consistency() {
        for field in [Q, FieldSpec::prime(5).unwrap()] {
            assert!(table_consistency_check(&build_octonion(field)));
        }
        let mut broken = build_octonion(Q);
        broken.set(1, 2, 3, Q.from_i64(-1));
        assert!(!table_consistency_check(&broken));
        assert!(!table_consistency_check(&complex(Q)));
    }

    #[test]
    fn products() {
        let o = build_octonion(Q);
        assert_eq!(o.multiply(&e(1), &e(2)).unwrap(), e(3));
        assert_eq!(
            o.multiply(&e(1).add(&e(2)), &e(4)).unwrap(),
            e(5).add(&e(6))
        );
        let x = AlgebraElement::from_i64(Q, &[3, -1, 4, 1, -5, 9, 2, -6]);
        assert_eq!(o.multiply(&e(0), &x).unwrap(), x);
        assert!(matches!(
            o.multiply(&x, &AlgebraElement::basis(Q, 2, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
        let gf5 = AlgebraElement::basis(FieldSpec::prime(5).unwrap(), 8, 1);
        assert!(matches!(
            o.multiply(&x, &gf5),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn associators() {
        let o = build_octonion(Q);
        assert!(o.associator(&e(1), &e(1), &e(2)).unwrap().is_zero());
        assert_eq!(
            o.associator(&e(1), &e(2), &e(4)).unwrap(),
            e(7).scale(&Q.from_i64(2))
        );
        let a = AlgebraElement::from_i64(Q, &[1, 2, 0, -1, 3, 0, 0, 5]);
        let b = AlgebraElement::from_i64(Q, &[0, 1, 1, 1, -2, 4, 0, 1]);
        assert!(o.associator(&e(0), &a, &b).unwrap().is_zero());
    }

    #[test]
    fn alternativity() {
        assert!(build_octonion(Q).check_alternative());
        let mut perturbed = build_octonion(Q);
        perturbed.set(1, 2, 3, Q.from_i64(2));
        assert!(!perturbed.check_alternative());
        assert!(complex(Q).check_alternative());
    }

    #[test]
    fn anticommutativity() {
        assert!(build_octonion(Q).check_anticommutative_imaginaries());
        let mut broken = build_octonion(Q);
        broken.set(2, 1, 3, Q.one());
        assert!(!broken.check_anticommutative_imaginaries());
        // the diagonal is excluded: e_i e_i = -e_0 is not anti-commutative
        let o = build_octonion(Q);
        assert_eq!(
            o.multiply(&e(3), &e(3)).unwrap(),
            e(0).scale(&Q.from_i64(-1))
        );
    }

    #[test]
    fn degenerate_algebras() {
        for dim in [0, 1] {
            let sc = StructureConstants::zero("tiny", Q, dim);
            assert!(sc.check_alternative());
            assert!(sc.check_anticommutative_imaginaries());
        }
    }

    #[test]
    fn element_display() {
        let x = AlgebraElement::from_i64(Q, &[0, 1, 0, -2, 0, 0, 0, 0]);
        assert_eq!(x.to_string(), "e1 + (-2)e3");
        assert_eq!(AlgebraElement::zero(Q, 3).to_string(), "0");
    }
}
