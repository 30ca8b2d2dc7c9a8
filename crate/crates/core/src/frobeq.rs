//! The Frobenius equation `v^q = γ(v)`: solution sets and the factorization
//! shape of `x^q(cx + d) − (ax + b)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{invalid, violation, Result};
use crate::ff::{EmbeddingMap, FieldCtx, FieldElem};
use crate::pgl2::{centralizer, Pgl2};
use crate::poly::{Poly, ProjPoint};

/// Degree profile of the solutions of `v^q = γ(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobShape {
    /// Degree of the irrational solutions.
    pub t: u64,
    /// Number of irreducible factors of degree `t`.
    pub count_t: u64,
    /// Rational solutions, counting `∞` when `c = 0`.
    pub count_linear: u64,
    pub kappa: i64,
}

/// `x^q(cx + d) − (ax + b)`.
pub fn frobenius_poly(f: &Arc<FieldCtx>, g: &Pgl2) -> Poly {
    let [a, b, c, d] = g.entries();
    Poly::new(f, vec![d, c]).mul(&Poly::monomial(f, FieldElem::ONE, f.order() as usize)).sub(&Poly::new(f, vec![b, a]))
}

/// The shape predicted from `ι(γ) − 2 = ζ + 1/ζ`.
pub fn predict_factor_shape(f: &Arc<FieldCtx>, g: &Pgl2) -> Result<FrobShape> {
    if g.is_identity() {
        return invalid("the identity has no factor shape");
    }
    let q = f.order();
    let ext = f.extension(2)?;
    let big = ext.dst();
    let s = ext.apply(f.sub(g.iota(f), f.from_int(2)));
    let zeta = *Poly::new(big, vec![FieldElem::ONE, big.neg(s), FieldElem::ONE])
        .roots()?
        .iter()
        .min()
        .ok_or_else(|| crate::Error::Violation("iota - 2 is not zeta + 1/zeta".into()))?;
    let (t, kappa) = if zeta == big.one() {
        (f.p(), 0)
    } else if zeta == big.neg(big.one()) {
        let chi = f.quadratic_character(f.neg(g.det(f)))? as i64;
        (2, -chi)
    } else {
        let t = big.mult_order(zeta)?;
        let kappa = if big.pow(zeta, (q - 1) as u128) == big.one() { -1 } else { 1 };
        (t, kappa)
    };
    let count_t = (q as i64 + kappa) as u64 / t;
    Ok(FrobShape { t, count_t, count_linear: (1 - kappa) as u64, kappa })
}

/// The shape read off a distinct-degree factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorShapeReport {
    pub predicted: FrobShape,
    /// Factor counts by degree, with `∞` added to degree 1 when `c = 0`.
    pub actual: BTreeMap<u64, u64>,
    pub squarefree: bool,
}

impl FactorShapeReport {
    pub fn agree(&self) -> bool {
        let p = &self.predicted;
        let mut expect = BTreeMap::new();
        if p.count_linear > 0 {
            expect.insert(1, p.count_linear);
        }
        *expect.entry(p.t).or_insert(0) += p.count_t;
        self.squarefree && self.actual == expect
    }
}

pub fn verify_factor_shape(f: &Arc<FieldCtx>, g: &Pgl2) -> Result<FactorShapeReport> {
    let predicted = predict_factor_shape(f, g)?;
    let poly = frobenius_poly(f, g);
    let squarefree = poly.is_squarefree();
    let mut actual = BTreeMap::new();
    for (d, part) in poly.ddf()? {
        if part.deg() > 0 {
            *actual.entry(d as u64).or_insert(0) += (part.deg() / d) as u64;
        }
    }
    if g.entries()[2].is_zero() {
        *actual.entry(1).or_insert(0) += 1;
    }
    Ok(FactorShapeReport { predicted, actual, squarefree })
}

/// Solutions of `v^q = γ(v)` split by degree.
#[derive(Clone, Debug)]
pub struct SolutionSets {
    pub rational: Vec<ProjPoint>,
    /// The degree-`t` solutions, as elements of `F_{q^t}`.
    pub irrational: Vec<FieldElem>,
    pub t: u64,
    pub ext: EmbeddingMap,
}

/// Explicit roots of the Frobenius equation in `F_{q^t}`, `t = ord(γ)`.
pub fn s_gamma(f: &Arc<FieldCtx>, g: &Pgl2, field_bound: u64) -> Result<SolutionSets> {
    if g.is_identity() {
        return invalid("the identity has no Frobenius solution set");
    }
    let t = g.order(f);
    match f.order().checked_pow(t as u32) {
        Some(o) if o <= field_bound => {}
        _ => return Err(crate::Error::SearchBound(format!("F_(q^{t}) exceeds the field bound"))),
    }
    let ext = f.extension(t as u32)?;
    let roots = frobenius_poly(f, g).embed(&ext).roots()?;
    let mut rational: Vec<ProjPoint> = Vec::new();
    let mut irrational = Vec::new();
    for v in roots {
        match ext.preimage(v) {
            Some(r) => rational.push(ProjPoint::Finite(r)),
            None => irrational.push(v),
        }
    }
    if g.entries()[2].is_zero() {
        rational.push(ProjPoint::Infinity);
    }
    rational.sort();
    irrational.sort();
    Ok(SolutionSets { rational, irrational, t, ext })
}

/// Whether the degree-`t` solutions form one orbit of the centralizer of `γ`.
pub fn single_centralizer_orbit(f: &Arc<FieldCtx>, g: &Pgl2, sets: &SolutionSets) -> Result<bool> {
    let Some(&v) = sets.irrational.first() else {
        return violation("no irrational solutions");
    };
    let z = centralizer(g, f)?;
    let big = sets.ext.dst();
    let mut orbit: Vec<FieldElem> = z
        .elements()
        .iter()
        .filter_map(|a| a.embed(&sets.ext).act(ProjPoint::Finite(v), big).finite())
        .collect();
    orbit.sort();
    orbit.dedup();
    Ok(orbit == sets.irrational)
}
