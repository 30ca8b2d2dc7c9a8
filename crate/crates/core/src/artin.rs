//! The Artin invariant `inv_Q(τ)`: the general gcd engine, the closed forms
//! for each named family, the tripartite symbol, censuses and the transport
//! rules.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::addpoly::reciprocity_pair;
use crate::error::{invalid, violation, Error, Result};
use crate::ff::{EmbeddingMap, FieldCtx, FieldElem};
use crate::pgl2::{dickson_classify, e_zeta_lambda, least_irrational, pgl2_elements, DicksonForm, Pgl2};
use crate::poly::{Poly, ProjPoint, RatFunc};
use crate::quotient::{conjugate_quotient, conjugate_value_map, cyclic_model, named_quotient, QuotientMap};
use crate::subgroup::{subfield_of_order, ConjClass, GroupLabel, Subgroup};

/// Default cap on `q` for the exhaustive `PGL2` bijection.
pub const BIJECTION_Q_BOUND: u64 = 9;

/// The value of `inv_Q(τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArtinResult {
    Irregular,
    Regular(ConjClass),
}

impl ArtinResult {
    pub fn is_regular(&self) -> bool {
        matches!(self, ArtinResult::Regular(_))
    }

    pub fn class(&self) -> Option<&ConjClass> {
        match self {
            ArtinResult::Regular(c) => Some(c),
            ArtinResult::Irregular => None,
        }
    }
}

/// `[τ/q] ∈ Z/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolValue(u8);

impl SymbolValue {
    pub fn new(ell: i64) -> SymbolValue {
        SymbolValue(ell.rem_euclid(3) as u8)
    }

    pub fn ell(self) -> u8 {
        self.0
    }

}

impl std::ops::Neg for SymbolValue {
    type Output = SymbolValue;

    fn neg(self) -> SymbolValue {
        SymbolValue::new(-(self.0 as i64))
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn class_in(group: &Subgroup, g: &Pgl2) -> Result<ArtinResult> {
    group
        .class_of(g)
        .cloned()
        .map(ArtinResult::Regular)
        .ok_or_else(|| Error::Violation(format!("{} is not in the group", g.format(group.ctx()))))
}

fn infinity_invariant(group: &Subgroup) -> Result<ArtinResult> {
    if group.orbit(ProjPoint::Infinity).len() == group.len() {
        class_in(group, &Pgl2::IDENTITY)
    } else {
        Ok(ArtinResult::Irregular)
    }
}

/// The class matched by the Frobenius twist `x^q ≡ γ(x)` modulo `f − τg`.
pub fn inv_general(q: &QuotientMap, tau: ProjPoint) -> Result<ArtinResult> {
    let group = q.group();
    let f = group.ctx();
    let ProjPoint::Finite(t) = tau else {
        return infinity_invariant(group);
    };
    let h = q.map().num().sub(&q.map().den().scale(t));
    if h.deg() != group.len() || !h.is_squarefree() {
        return Ok(ArtinResult::Irregular);
    }
    let r = Poly::x(f).pow_mod(f.order() as u128, &h)?;
    let twist = |g: &Pgl2| -> Result<Poly> {
        let [a, b, c, d] = g.entries();
        Poly::new(f, vec![d, c]).mul(&r).sub(&Poly::new(f, vec![b, a])).rem(&h)
    };
    let mut found: Option<&ConjClass> = None;
    for class in group.conjugacy_classes() {
        let rem = twist(&class.rep())?;
        let hit = if group.is_abelian() { rem.is_zero() } else { h.gcd(&rem).deg() > 0 || rem.is_zero() };
        if hit {
            if found.is_some() {
                return violation(format!("two classes match at tau = {}", tau.format(f)));
            }
            found = Some(class);
        }
    }
    found
        .cloned()
        .map(ArtinResult::Regular)
        .ok_or_else(|| Error::Violation(format!("no class matches at regular tau = {}", tau.format(f))))
}

/// Root-based oracle: a root `v` of `f − τg` in `F_{q^t}` and the `γ` with `v^q = γ(v)`.
pub fn inv_brute(q: &QuotientMap, tau: ProjPoint) -> Result<ArtinResult> {
    let group = q.group();
    let f = group.ctx();
    let ProjPoint::Finite(t) = tau else {
        return infinity_invariant(group);
    };
    let h = q.map().num().sub(&q.map().den().scale(t));
    let mut degrees: Vec<u32> = group.elements().iter().map(|g| g.order(f) as u32).collect();
    degrees.push(2);
    degrees.sort_unstable();
    degrees.dedup();
    for k in degrees {
        let ext = f.extension(k)?;
        let big = ext.dst();
        let Some(&v) = h.embed(&ext).roots()?.first() else { continue };
        let pv = ProjPoint::Finite(v);
        if group.orbit_in(pv, &ext).len() != group.len() {
            return Ok(ArtinResult::Irregular);
        }
        let vq = ProjPoint::Finite(big.pow(v, f.order() as u128));
        let gamma = group
            .elements()
            .iter()
            .find(|g| g.embed(&ext).act(pv, big) == vq)
            .ok_or_else(|| Error::Violation("v^q is outside the orbit of v".into()))?;
        return class_in(group, gamma);
    }
    violation(format!("no root of f - tau g found at tau = {}", tau.format(f)))
}

/// `[τ/q]` with the canonical `ω`; see [`tripartite_symbol_with`].
pub fn tripartite_symbol(f: &Arc<FieldCtx>, tau: FieldElem) -> Result<SymbolValue> {
    tripartite_symbol_with(f, tau, false)
}

/// `[τ/q]`: `Tr(1/τ)` in characteristic 3, otherwise the exponent `ℓ` with
/// `((τ + 3ω²)/(τ + 3ω))^{(q²−1)/3} = ω^ℓ`, using `ω²` in place of `ω` when asked.
pub fn tripartite_symbol_with(f: &Arc<FieldCtx>, tau: FieldElem, swap_omega: bool) -> Result<SymbolValue> {
    if f.p() == 3 {
        if tau.is_zero() {
            return invalid("tau = 0 is irregular for the order-3 group");
        }
        let tr = f.trace_over(f.inv(tau), 1)?;
        return Ok(SymbolValue::new(tr.index() as i64));
    }
    let ext = f.extension(2)?;
    let big = ext.dst();
    let mut omega = big.primitive_cube_root()?;
    if swap_omega {
        omega = big.mul(omega, omega);
    }
    let t = ext.apply(tau);
    let three = big.from_int(3);
    let num = big.add(t, big.mul(three, big.mul(omega, omega)));
    let den = big.add(t, big.mul(three, omega));
    if num.is_zero() || den.is_zero() {
        return invalid("tau^2 - 3 tau + 9 = 0: irregular");
    }
    let q2 = (f.order() as u128).pow(2);
    let w = big.pow(big.div(num, den), (q2 - 1) / 3);
    (0..3)
        .find(|&l| big.pow(omega, l as u128) == w)
        .map(|l| SymbolValue::new(l as i64))
        .ok_or_else(|| Error::Violation("the power is not a cube root of unity".into()))
}

fn legendre(f: &FieldCtx, a: FieldElem) -> Result<i8> {
    f.quadratic_character(a)
}

/// The closed-form invariant for the group's named quotient map.
pub fn closed_form(group: &Arc<Subgroup>, tau: ProjPoint) -> Result<ArtinResult> {
    let f = group.ctx();
    let ProjPoint::Finite(t) = tau else {
        return infinity_invariant(group);
    };
    let gamma = match group.label() {
        GroupLabel::Kummer(n) => {
            if t.is_zero() {
                return Ok(ArtinResult::Irregular);
            }
            Pgl2::diag(f, f.pow(t, ((f.order() - 1) / n) as u128))?
        }
        GroupLabel::Order2(c) => {
            let flip = Pgl2::new(f, [FieldElem::ZERO, *c, FieldElem::ONE, FieldElem::ZERO])?;
            if f.p() == 2 {
                if t.is_zero() {
                    return Ok(ArtinResult::Irregular);
                }
                let j = f.trace_over(f.div(*c, f.mul(t, t)), 1)?;
                if j.is_zero() {
                    Pgl2::IDENTITY
                } else {
                    flip
                }
            } else {
                let disc = f.sub(f.mul(t, t), f.mul(f.from_int(4), *c));
                match legendre(f, disc)? {
                    0 => return Ok(ArtinResult::Irregular),
                    1 => Pgl2::IDENTITY,
                    _ => flip,
                }
            }
        }
        GroupLabel::Klein(b) => {
            let a_sym = legendre(f, t)?;
            let b_sym = legendre(f, f.sub(t, *b))?;
            if a_sym == 0 || b_sym == 0 {
                return Ok(ArtinResult::Irregular);
            }
            let mut g = Pgl2::diag(f, f.from_int(a_sym as i64))?;
            if a_sym * b_sym == -1 {
                g = g.mul(&Pgl2::new(f, [FieldElem::ZERO, *b, FieldElem::ONE, FieldElem::ZERO])?, f);
            }
            g
        }
        GroupLabel::G3 => match g3_regular(f, t) {
            false => return Ok(ArtinResult::Irregular),
            true => Subgroup::beta(f).pow(tripartite_symbol(f, t)?.ell() as u64, f),
        },
        GroupLabel::G6 => return g6_closed_form(group, t),
        GroupLabel::Borel => {
            if t.is_zero() {
                // for q = 2 the map is x² + x, separable at 0
                return if f.order() == 2 { class_in(group, &Pgl2::IDENTITY) } else { Ok(ArtinResult::Irregular) };
            }
            if t == f.one() {
                Pgl2::translation(f, f.one())
            } else {
                Pgl2::diag(f, t)?
            }
        }
        GroupLabel::BorelSub(sub_order) => {
            if t.is_zero() && *sub_order != 2 {
                return Ok(ArtinResult::Irregular);
            }
            borel_sub_closed_form(f, *sub_order, t)?
        }
        GroupLabel::Unipotent(w) => {
            let pair = reciprocity_pair(w)?;
            Pgl2::translation(f, pair.q_y.eval(t))
        }
        GroupLabel::Cyclic(g) => return cyclic_closed_form(group, g, tau),
        GroupLabel::Pgl2 => match pgl2_closed_form(f, t)? {
            Some(g) => g,
            None => return Ok(ArtinResult::Irregular),
        },
        GroupLabel::Psl2 if f.p() == 2 => match pgl2_closed_form(f, t)? {
            Some(g) => g,
            None => return Ok(ArtinResult::Irregular),
        },
        GroupLabel::Psl2 => match psl2_closed_form(f, t)? {
            Some(g) => g,
            None => return Ok(ArtinResult::Irregular),
        },
        GroupLabel::Custom => return invalid("custom groups have no closed form"),
    };
    class_in(group, &gamma)
}

fn g3_regular(f: &FieldCtx, t: FieldElem) -> bool {
    if f.p() == 3 {
        return !t.is_zero();
    }
    let v = f.add(f.sub(f.mul(t, t), f.mul(f.from_int(3), t)), f.from_int(9));
    !v.is_zero()
}

fn g6_closed_form(group: &Subgroup, t: FieldElem) -> Result<ArtinResult> {
    let f = group.ctx();
    let irregular = match f.p() {
        2 => t == f.one(),
        3 => t.is_zero(),
        _ => t == f.from_int(-9) || t == f.div(f.from_int(-9), f.from_int(4)),
    };
    if irregular {
        return Ok(ArtinResult::Irregular);
    }
    let h = Poly::new(f, vec![f.neg(t), f.from_int(-3), FieldElem::ONE]);
    match h.roots()?.first() {
        Some(&z) => {
            let ell = tripartite_symbol(f, z)?.ell();
            class_in(group, &Subgroup::beta(f).pow(ell as u64, f))
        }
        None => class_in(group, &Subgroup::rho(f)),
    }
}

fn borel_sub_closed_form(f: &Arc<FieldCtx>, sub_order: u64, t: FieldElem) -> Result<Pgl2> {
    let sub = subfield_of_order(f, sub_order)?;
    let k = sub.src().n();
    if sub_order == 2 {
        return Ok(if f.trace_over(t, k)?.is_zero() { Pgl2::IDENTITY } else { Pgl2::translation(f, f.one()) });
    }
    let norm = f.norm_over(t, k)?;
    if norm != f.one() {
        return Pgl2::diag(f, norm);
    }
    let s = f
        .units()
        .find(|&s| f.pow(s, (sub_order - 1) as u128) == t)
        .ok_or_else(|| Error::Violation("norm 1 without a (P-1)-th root".into()))?;
    Ok(if f.trace_over(s, k)?.is_zero() { Pgl2::IDENTITY } else { Pgl2::translation(f, f.one()) })
}

/// Roots of `z² − s z + 1` in `F_{q²}`, least first.
fn zeta_roots(ext: &EmbeddingMap, s: FieldElem) -> Result<Vec<FieldElem>> {
    let big = ext.dst();
    let poly = Poly::new(big, vec![FieldElem::ONE, big.neg(ext.apply(s)), FieldElem::ONE]);
    let mut roots = poly.roots()?;
    if roots.is_empty() {
        return violation("z^2 - s z + 1 has no root in F_(q^2)");
    }
    roots.sort();
    Ok(roots)
}

/// The `PGL2` invariant from `τ − 2 = ζ + 1/ζ`; `None` when irregular.
pub fn pgl2_closed_form(f: &Arc<FieldCtx>, t: FieldElem) -> Result<Option<Pgl2>> {
    if t.is_zero() {
        return Ok(None);
    }
    let ext = f.extension(2)?;
    let roots = zeta_roots(&ext, f.sub(t, f.from_int(2)))?;
    let forms: Vec<Pgl2> = roots.iter().map(|&z| pgl2_from_zeta(f, &ext, z)).collect::<Result<_>>()?;
    let g = forms[0];
    let group_elems = pgl2_elements(f);
    for other in &forms[1..] {
        let conj = group_elems.iter().any(|a| other.conj(a, f) == g);
        if !conj {
            return violation("zeta and 1/zeta give different classes");
        }
    }
    Ok(Some(g))
}

fn pgl2_from_zeta(f: &Arc<FieldCtx>, ext: &EmbeddingMap, zeta: FieldElem) -> Result<Pgl2> {
    let big = ext.dst();
    if zeta == big.one() {
        return Ok(Pgl2::translation(f, f.one()));
    }
    if let Some(z) = ext.preimage(zeta) {
        return Pgl2::diag(f, z);
    }
    e_zeta_lambda(zeta, least_irrational(ext), ext)
}

/// The `PSL2` invariant for odd `q`; `None` when irregular.
pub fn psl2_closed_form(f: &Arc<FieldCtx>, t: FieldElem) -> Result<Option<Pgl2>> {
    if t.is_zero() {
        return Ok(None);
    }
    let two = f.from_int(2);
    if t == two {
        return Ok(Some(Pgl2::translation(f, two)));
    }
    if t == f.neg(two) {
        let u = f.least_nonsquare()?;
        return Ok(Some(Pgl2::translation(f, f.mul(two, u))));
    }
    let ext = f.extension(2)?;
    let zeta = zeta_roots(&ext, t)?[0];
    if let Some(a) = ext.preimage(zeta) {
        return Ok(Some(Pgl2::new(f, [a, FieldElem::ZERO, FieldElem::ZERO, f.inv(a)])?));
    }
    let big = ext.dst();
    Ok(Some(e_zeta_lambda(big.mul(zeta, zeta), least_irrational(&ext), &ext)?))
}

fn cyclic_closed_form(group: &Arc<Subgroup>, g: &Pgl2, tau: ProjPoint) -> Result<ArtinResult> {
    let f = group.ctx();
    let ext = f.extension(2)?;
    match dickson_classify(g, &ext)? {
        DicksonForm::CaseC { lambda, .. } => {
            let ProjPoint::Finite(t) = tau else { return infinity_invariant(group) };
            let big = ext.dst();
            let ell = g.order(f);
            let tb = ext.apply(t);
            let lq = crate::pgl2::conj_q(lambda, &ext);
            let ratio = big.div(big.sub(tb, lambda), big.sub(tb, lq));
            let zeta = big.pow(ratio, ((f.order() + 1) / ell) as u128);
            class_in(group, &e_zeta_lambda(zeta, lambda, &ext)?)
        }
        form => {
            let model = cyclic_model(group, g)?;
            let beta = conjugate_value_map(&model.model, &model.conjugator);
            let model_tau = beta.inv(f).act(tau, f);
            let ProjPoint::Finite(s) = model_tau else { return Ok(ArtinResult::Irregular) };
            let model_gamma = match form {
                DicksonForm::CaseA { b, .. } => {
                    let p = f.p() as u128;
                    let tr = f.trace_over(f.div(s, f.pow(b, p)), 1)?;
                    Pgl2::translation(f, f.mul(b, tr))
                }
                DicksonForm::CaseB { a, .. } => {
                    if s.is_zero() {
                        return Ok(ArtinResult::Irregular);
                    }
                    let n = f.mult_order(a)?;
                    Pgl2::diag(f, f.pow(s, ((f.order() - 1) / n) as u128))?
                }
                DicksonForm::CaseC { .. } => unreachable!(),
            };
            let alpha = model.conjugator;
            class_in(group, &model_gamma.conj(&alpha, f))
        }
    }
}

/// Per-class counts of regular `τ ∈ F_q ∪ {∞}`.
#[derive(Clone, Debug)]
pub struct Census {
    pub counts: Vec<(ConjClass, usize)>,
    pub irregular: Vec<ProjPoint>,
    pub infinity: ArtinResult,
}

impl Census {
    pub fn count_of(&self, g: &Pgl2) -> usize {
        self.counts.iter().find(|(c, _)| c.contains(g)).map_or(0, |(_, n)| *n)
    }

    pub fn regular_total(&self) -> usize {
        self.counts.iter().map(|(_, n)| n).sum()
    }
}

/// Runs [`inv_general`] over every `τ ∈ F_q ∪ {∞}`.
pub fn census(q: &QuotientMap) -> Result<Census> {
    let group = q.group();
    let f = group.ctx();
    let mut counts: BTreeMap<Pgl2, (ConjClass, usize)> =
        group.conjugacy_classes().iter().map(|c| (c.rep(), (c.clone(), 0))).collect();
    let mut irregular = Vec::new();
    let mut infinity = ArtinResult::Irregular;
    for tau in f.elements().map(ProjPoint::Finite).chain([ProjPoint::Infinity]) {
        let r = inv_general(q, tau)?;
        match &r {
            ArtinResult::Regular(c) => counts.get_mut(&c.rep()).expect("class of the group").1 += 1,
            ArtinResult::Irregular => irregular.push(tau),
        }
        if tau.is_infinity() {
            infinity = r;
        }
    }
    Ok(Census { counts: counts.into_values().collect(), irregular, infinity })
}

/// `inv_{aQ+b}(aτ+b)` against `inv_Q(τ)`.
pub fn affine_transport(q: &QuotientMap, a: FieldElem, b: FieldElem, tau: ProjPoint) -> Result<(ArtinResult, ArtinResult)> {
    let f = q.ctx();
    let moved = q.affine(a, b)?;
    let tau2 = match tau {
        ProjPoint::Finite(t) => ProjPoint::Finite(f.add(f.mul(a, t), b)),
        ProjPoint::Infinity => ProjPoint::Infinity,
    };
    let lhs = inv_general(q, tau)?;
    let rhs = inv_general(&moved, tau2)?;
    if lhs != rhs {
        return violation("inv_(aQ+b)(a tau + b) != inv_Q(tau)");
    }
    Ok((lhs, rhs))
}

/// `inv_{Q₂}(β(τ))` against `α inv_{Q₁}(τ) α⁻¹` for every `τ`.
pub fn conjugation_transport(q1: &QuotientMap, alpha: &Pgl2) -> Result<usize> {
    let f = q1.ctx();
    let q2 = conjugate_quotient(q1, alpha)?;
    let beta = conjugate_value_map(q1, alpha);
    let mut checked = 0;
    for tau in f.elements().map(ProjPoint::Finite).chain([ProjPoint::Infinity]) {
        let lhs = inv_general(q1, tau)?;
        let rhs = inv_general(&q2, beta.act(tau, f))?;
        match (lhs, rhs) {
            (ArtinResult::Irregular, ArtinResult::Irregular) => {}
            (ArtinResult::Regular(c1), ArtinResult::Regular(c2)) => {
                if !c2.contains(&c1.rep().conj(alpha, f)) {
                    return violation(format!("conjugation transport fails at tau = {}", tau.format(f)));
                }
                checked += 1;
            }
            _ => return violation(format!("regularity differs under conjugation at tau = {}", tau.format(f))),
        }
    }
    Ok(checked)
}

/// A common `δ ∈ H` whose `H`-class is `inv_{Q_H}(τ)` and whose `G`-class is `inv_{Q_G}(h(τ))`.
pub fn subgroup_transport(q_h: &QuotientMap, q_g: &QuotientMap, h: &RatFunc, tau: ProjPoint) -> Result<Pgl2> {
    let inv_h = inv_general(q_h, tau)?;
    let ht = h.eval_proj(tau);
    let inv_g = inv_general(q_g, ht)?;
    let (Some(ch), Some(cg)) = (inv_h.class(), inv_g.class()) else {
        return invalid("tau must be regular for Q_H and h(tau) regular for Q_G");
    };
    ch.members()
        .iter()
        .find(|d| cg.contains(d))
        .copied()
        .ok_or_else(|| Error::Violation("no common delta for the subgroup relation".into()))
}

/// Outcome of the `h(τ) = ι(γ)` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaVerdict {
    pub h_value: ProjPoint,
    pub expected: ProjPoint,
}

impl IotaVerdict {
    pub fn holds(&self) -> bool {
        self.h_value == self.expected
    }
}

/// `h(τ)` against `∞` (identity class) or `ι(γ)`, where `Q_G = h ∘ Q_H`.
pub fn iota_theorem_check(q_h: &QuotientMap, h: &RatFunc, tau: ProjPoint) -> Result<IotaVerdict> {
    let f = q_h.ctx();
    let inv = inv_general(q_h, tau)?;
    let Some(c) = inv.class() else { return invalid("tau is irregular for Q_H") };
    let g = c.rep();
    let expected = if g.is_identity() { ProjPoint::Infinity } else { ProjPoint::Finite(g.iota(f)) };
    Ok(IotaVerdict { h_value: h.eval_proj(tau), expected })
}

/// One row of the `ι ↔ inv` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionRow {
    pub tau: FieldElem,
    pub class_rep: Pgl2,
    pub class_size: usize,
    pub order: u64,
}

/// The `ι`/`inv` bijection between classes of order `≥ 3` and `F_q^×`, verified both ways.
pub fn pgl2_bijection(f: &Arc<FieldCtx>, q_bound: u64) -> Result<Vec<BijectionRow>> {
    if f.order() > q_bound {
        return Err(Error::SearchBound(format!("q = {} exceeds the bijection bound {q_bound}", f.order())));
    }
    let group = Arc::new(Subgroup::pgl2_full(f)?);
    let q = named_quotient(&group)?;
    let mut by_iota: BTreeMap<FieldElem, &ConjClass> = BTreeMap::new();
    for c in group.conjugacy_classes() {
        let rep = c.rep();
        if rep.order(f) < 3 {
            continue;
        }
        let i = rep.iota(f);
        if i.is_zero() || by_iota.insert(i, c).is_some() {
            return violation("iota is not injective on classes of order >= 3");
        }
    }
    if by_iota.len() as u64 != f.order() - 1 {
        return violation("iota is not onto F_q^x");
    }
    let mut rows = Vec::new();
    for tau in f.units() {
        let inv = inv_general(&q, ProjPoint::Finite(tau))?;
        let Some(c) = inv.class() else { return violation("nonzero tau is irregular for PGL2") };
        if c.rep().order(f) < 3 || by_iota.get(&tau).map(|x| x.rep()) != Some(c.rep()) {
            return violation(format!("inv_Q({}) is not the class with iota = tau", f.format_elem(tau)));
        }
        rows.push(BijectionRow { tau, class_rep: c.rep(), class_size: c.len(), order: c.rep().order(f) });
    }
    Ok(rows)
}

/// Checks `v^{q−AB} = A` and `v ∈ μ_{2(q−1)} ∪ μ_{2(q+1)}` for every `v` with `(v + 1/v)²/4 = τ`.
pub fn klein_theorem_check(f: &Arc<FieldCtx>, t: FieldElem) -> Result<bool> {
    if f.p() == 2 {
        return invalid("the Klein theorem needs odd q");
    }
    let ext = f.extension(2)?;
    let big = ext.dst();
    let tb = ext.apply(t);
    // (x² + 1)² − 4τx²
    let poly = Poly::new(
        big,
        vec![big.one(), FieldElem::ZERO, big.sub(big.from_int(2), big.mul(big.from_int(4), tb)), FieldElem::ZERO, big.one()],
    );
    let roots = poly.roots()?;
    if roots.is_empty() {
        return Ok(false);
    }
    let q = f.order() as u128;
    let in_mu = |v: FieldElem| big.pow(v, 2 * (q - 1)) == big.one() || big.pow(v, 2 * (q + 1)) == big.one();
    if !roots.iter().all(|&v| in_mu(v)) {
        return Ok(false);
    }
    if t.is_zero() || t == f.one() {
        return Ok(true);
    }
    let a = legendre(f, t)? as i64;
    let b = legendre(f, f.sub(t, f.one()))? as i64;
    let a_elem = big.from_int(a);
    Ok(roots.iter().all(|&v| {
        let vq = big.pow(v, q);
        let rhs = if a * b == 1 { big.mul(a_elem, v) } else { big.div(a_elem, v) };
        vq == rhs
    }))
}
