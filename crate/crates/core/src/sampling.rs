//! Random derivations, elements and corrupted 2-local tables for trials.

use std::ops::RangeInclusive;

use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::derivation::{DerivationBasis, LinearMap};
use crate::error::Result;
use crate::local::{evaluation_orbit, TwoLocalTable};
use crate::scalar::{FieldSpec, Scalar};

pub fn random_scalar<R: Rng + ?Sized>(
    field: FieldSpec,
    rng: &mut R,
    range: RangeInclusive<i64>,
) -> Scalar {
    field.from_i64(rng.random_range(range))
}

pub fn random_element<R: Rng + ?Sized>(
    field: FieldSpec,
    dim: usize,
    rng: &mut R,
    range: RangeInclusive<i64>,
) -> AlgebraElement {
    let coords: Vec<i64> = (0..dim).map(|_| rng.random_range(range.clone())).collect();
    AlgebraElement::from_i64(field, &coords)
}

pub fn random_linear_map<R: Rng + ?Sized>(
    field: FieldSpec,
    dim: usize,
    rng: &mut R,
    range: RangeInclusive<i64>,
) -> LinearMap {
    let entries: Vec<Scalar> = (0..dim * dim)
        .map(|_| random_scalar(field, rng, range.clone()))
        .collect();
    LinearMap::from_vectorized(field, dim, &entries).expect("dim² entries")
}

/// A combination of the basis derivations with integer coefficients drawn
/// from `range`.
pub fn random_derivation<R: Rng + ?Sized>(
    db: &DerivationBasis,
    rng: &mut R,
    range: RangeInclusive<i64>,
) -> LinearMap {
    let field = db.algebra().field();
    let coeffs: Vec<Scalar> = (0..db.dim())
        .map(|_| random_scalar(field, rng, range.clone()))
        .collect();
    db.combination(&coeffs).expect("one coefficient per map")
}

/// Replaces the value at a random probe by one outside that probe's orbit.
/// Returns the corrupted probe index and the new table, or `None` when every
/// probe's orbit is the whole space.
pub fn corrupt_table<R: Rng + ?Sized>(
    db: &DerivationBasis,
    table: &TwoLocalTable,
    rng: &mut R,
) -> Result<Option<(usize, TwoLocalTable)>> {
    let field = db.algebra().field();
    let n = db.algebra().dim();
    let len = table.probes().len();
    let start = rng.random_range(0..len);
    for offset in 0..len {
        let i = (start + offset) % len;
        let orbit = evaluation_orbit(db, &table.probes().elements()[i])?;
        if orbit.dim() == n {
            continue;
        }
        // Nonzero random vectors rarely land in a proper subspace; fall back
        // to a basis vector outside it.
        let shift = (0..16)
            .map(|_| random_element(field, n, rng, -9..=9))
            .find(|v| !orbit.contains(v.coords()).unwrap_or(true))
            .or_else(|| {
                (0..n)
                    .map(|k| AlgebraElement::basis(field, n, k))
                    .find(|v| !orbit.contains(v.coords()).unwrap_or(true))
            })
            .expect("a proper subspace misses some basis vector");
        let value = table.values()[i].add(&shift);
        return Ok(Some((i, table.with_value(i, value)?)));
    }
    Ok(None)
}
