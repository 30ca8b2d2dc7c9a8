//! Quotient maps `Q = f/g` for finite subgroups: the orbit construction,
//! the named closed forms, the invariance verifier and the `Q_G = h ∘ Q_H`
//! relator.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::addpoly::qw_from_subspace;
use crate::error::{invalid, violation, Error, Result};
use crate::ff::{EmbeddingMap, FieldCtx, FieldElem};
use crate::pgl2::{c_lambda, conj_q, dickson_classify, DicksonForm, Pgl2};
use crate::poly::{rat_interpolate, Poly, ProjPoint, RatFunc};
use crate::subgroup::{GroupLabel, Orbit, Subgroup};

/// Above this `|G|·deg²`, invariance is checked on a generating set only.
const FULL_INVARIANCE_BUDGET: u64 = 20_000_000;
/// Largest extension field used for sampling and orbit searches.
const SEARCH_FIELD_LIMIT: u64 = 1 << 23;

/// A verified quotient map together with its irregular values.
#[derive(Clone)]
pub struct QuotientMap {
    group: Arc<Subgroup>,
    map: RatFunc,
    irregular: Vec<ProjPoint>,
    ext2: EmbeddingMap,
}

impl fmt::Debug for QuotientMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientMap({:?}, {})", self.group, self.map)
    }
}

impl QuotientMap {
    /// Checks `map` against the group and computes its irregular values.
    pub fn new(group: Arc<Subgroup>, map: RatFunc) -> Result<QuotientMap> {
        let cert = verify_quotient(&group, &map)?;
        if let Some(fail) = cert.failure {
            return Err(Error::Violation(format!("not a quotient map: {fail}")));
        }
        QuotientMap::trusted(group, map)
    }

    fn trusted(group: Arc<Subgroup>, map: RatFunc) -> Result<QuotientMap> {
        let ext2 = group.ctx().extension(2)?;
        let shorts = group.short_orbits(&ext2)?;
        let big = map.embed(&ext2);
        let mut irregular: Vec<ProjPoint> = shorts.iter().map(|o| big.eval_proj(o.points[0])).collect();
        irregular.sort();
        irregular.dedup();
        Ok(QuotientMap { group, map, irregular, ext2 })
    }

    pub fn group(&self) -> &Arc<Subgroup> {
        &self.group
    }

    pub fn map(&self) -> &RatFunc {
        &self.map
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.group.ctx()
    }

    /// Images of the short orbits, as points over `F_{q²}`.
    pub fn irregular(&self) -> &[ProjPoint] {
        &self.irregular
    }

    /// The embedding `F_q → F_{q²}` used for [`Self::irregular`].
    pub fn ext2(&self) -> &EmbeddingMap {
        &self.ext2
    }

    /// Whether a value in `P¹(F_q)` is regular.
    pub fn is_regular(&self, tau: ProjPoint) -> bool {
        !self.irregular.contains(&tau.embed(&self.ext2))
    }

    /// `a·Q + b` for the same group.
    pub fn affine(&self, a: FieldElem, b: FieldElem) -> Result<QuotientMap> {
        if a.is_zero() {
            return invalid("affine change needs a != 0");
        }
        QuotientMap::trusted(self.group.clone(), self.map.affine(a, b))
    }
}

/// Why a rational function failed to be a quotient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientFailure {
    Degree { num: usize, den: usize, order: usize },
    InfinityNotFixed,
    NotInvariant(Pgl2),
    ProductIdentity { x: FieldElem, y: FieldElem },
}

impl fmt::Display for QuotientFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientFailure::Degree { num, den, order } => {
                write!(f, "degree mismatch: deg num {num}, deg den {den}, |G| {order}")
            }
            QuotientFailure::InfinityNotFixed => write!(f, "Q(inf) != inf"),
            QuotientFailure::NotInvariant(g) => write!(f, "Q o gamma != Q for gamma = {g:?}"),
            QuotientFailure::ProductIdentity { .. } => write!(f, "f(y) - Q(x) g(y) != prod (y - gamma(x)) at a sample"),
        }
    }
}

/// What [`verify_quotient`] checked.
#[derive(Clone, Debug)]
pub struct QuotientCertificate {
    /// Elements `γ` for which `R∘γ = R` was checked exactly.
    pub invariance_checked: usize,
    /// Whether those elements were the whole group (else a generating set).
    pub whole_group: bool,
    pub product_samples: usize,
    pub failure: Option<QuotientFailure>,
}

impl QuotientCertificate {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the degree conditions, `R(∞) = ∞`, exact invariance, and the
/// product identity at `3|G|` seeded samples over an extension field.
pub fn verify_quotient(group: &Subgroup, r: &RatFunc) -> Result<QuotientCertificate> {
    let order = group.len();
    let num = r.num().deg();
    let den = r.den().deg();
    let mut cert = QuotientCertificate { invariance_checked: 0, whole_group: false, product_samples: 0, failure: None };
    if num != order || den >= num || r.num().is_zero() {
        cert.failure = Some(QuotientFailure::Degree { num, den, order });
        return Ok(cert);
    }
    if r.eval_proj(ProjPoint::Infinity) != ProjPoint::Infinity {
        cert.failure = Some(QuotientFailure::InfinityNotFixed);
        return Ok(cert);
    }
    let f = group.ctx();
    let whole = (order as u64) * (num as u64).pow(2) <= FULL_INVARIANCE_BUDGET;
    let to_check = if whole { group.elements().to_vec() } else { generating_set(group) };
    cert.whole_group = whole;
    for g in &to_check {
        if r.compose(&RatFunc::mobius(f, g.entries())) != *r {
            cert.failure = Some(QuotientFailure::NotInvariant(*g));
            return Ok(cert);
        }
        cert.invariance_checked += 1;
    }
    product_identity(group, r, &mut cert)?;
    Ok(cert)
}

/// A greedy generating set: each element not in the span of the previous ones.
pub fn generating_set(group: &Subgroup) -> Vec<Pgl2> {
    let f = group.ctx();
    let mut gens: Vec<Pgl2> = Vec::new();
    let mut span = vec![Pgl2::IDENTITY];
    for g in group.elements() {
        if span.binary_search(g).is_ok() {
            continue;
        }
        gens.push(*g);
        span = Subgroup::generate(f, &gens).expect("inside a finite group").elements().to_vec();
        if span.len() == group.len() {
            break;
        }
    }
    gens
}

fn sampling_extension(f: &Arc<FieldCtx>, min_order: u64) -> Result<EmbeddingMap> {
    let mut k = 2u32;
    while f.order().checked_pow(k).is_some_and(|o| o < min_order) {
        k += 1;
    }
    match f.order().checked_pow(k) {
        Some(o) if o <= SEARCH_FIELD_LIMIT => f.extension(k),
        _ => f.extension(2),
    }
}

fn product_identity(group: &Subgroup, r: &RatFunc, cert: &mut QuotientCertificate) -> Result<()> {
    let f = group.ctx();
    let ext = sampling_extension(f, 4 * group.len() as u64)?;
    let big = ext.dst().clone();
    let rb = r.embed(&ext);
    let lc = rb.num().lc();
    let mats: Vec<Pgl2> = group.elements().iter().map(|g| g.embed(&ext)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let samples = 3 * group.len();
    let mut done = 0;
    while done < samples {
        let x = big.elem(rng.gen_range(0..big.order()))?;
        let y = big.elem(rng.gen_range(0..big.order()))?;
        if ext.contains(x) {
            continue;
        }
        let ProjPoint::Finite(qx) = rb.eval_proj(ProjPoint::Finite(x)) else { continue };
        let lhs = big.div(big.sub(rb.num().eval(y), big.mul(qx, rb.den().eval(y))), lc);
        let rhs = mats.iter().fold(FieldElem::ONE, |acc, g| match g.act(ProjPoint::Finite(x), &big) {
            ProjPoint::Finite(gx) => big.mul(acc, big.sub(y, gx)),
            ProjPoint::Infinity => unreachable!("irrational points have finite images"),
        });
        if lhs != rhs {
            cert.failure = Some(QuotientFailure::ProductIdentity { x, y });
            return Ok(());
        }
        done += 1;
    }
    cert.product_samples = done;
    Ok(())
}

/// `∏_{v ∈ O_∞, v ≠ ∞} (x − v)^{mult(O_∞)}`.
pub fn infinity_denominator(group: &Subgroup) -> Poly {
    let o = group.orbit(ProjPoint::Infinity);
    let roots = o.points.iter().filter_map(|p| p.finite());
    Poly::from_roots(group.ctx(), roots).pow(o.multiplicity as u64)
}

fn orbit_numerator(o: &Orbit, ctx: &Arc<FieldCtx>) -> Poly {
    Poly::from_roots(ctx, o.points.iter().filter_map(|p| p.finite())).pow(o.multiplicity as u64)
}

/// The orbit construction `f_O / g` with a deterministically chosen orbit.
pub fn build_quotient(group: &Arc<Subgroup>) -> Result<QuotientMap> {
    if group.len() < 2 {
        return invalid("quotient maps are built for groups of order at least 2");
    }
    let f = group.ctx();
    let g = infinity_denominator(group);
    let o_inf = group.orbit(ProjPoint::Infinity);
    for v in f.elements().map(ProjPoint::Finite) {
        if !o_inf.contains(&v) && group.orbit(v).len() == group.len() {
            let num = orbit_numerator(&group.orbit(v), f);
            return QuotientMap::new(group.clone(), RatFunc::new(num, g)?);
        }
    }
    if let Some(num) = twisted_stable_orbit(group)? {
        return QuotientMap::new(group.clone(), RatFunc::new(num, g)?);
    }
    let ext = f.extension(2)?;
    let q_exp = f.n();
    for o in group.short_orbits(&ext)? {
        let stable = o.points.iter().all(|p| match p {
            ProjPoint::Finite(v) => o.contains(&ProjPoint::Finite(ext.dst().frob(*v, q_exp))),
            ProjPoint::Infinity => false,
        });
        if stable {
            let num = orbit_numerator(&o, ext.dst()).descend(&ext)?;
            return QuotientMap::new(group.clone(), RatFunc::new(num, g)?);
        }
    }
    Err(Error::SearchBound("no Frobenius-stable orbit found".into()))
}

/// Least full orbit outside `F_q` that is stable under `v ↦ v^q`.
///
/// Such an orbit contains `v` with `v^q = γ(v)` for a class representative
/// `γ`, and then `v` lies in `F_{q^m}` with `m` the order of `γ`.
fn twisted_stable_orbit(group: &Subgroup) -> Result<Option<Poly>> {
    let f = group.ctx();
    let q = f.order() as usize;
    let mut reps: Vec<(u64, Pgl2)> =
        group.conjugacy_classes().iter().map(|c| (c.rep().order(f), c.rep())).filter(|(m, _)| *m > 1).collect();
    reps.sort();
    let mut m_prev = 0;
    let mut best: Option<(ProjPoint, Orbit, EmbeddingMap)> = None;
    for &(m, rep) in &reps {
        if m != m_prev && best.is_some() {
            break;
        }
        m_prev = m;
        if f.order().checked_pow(m as u32).is_none_or(|o| o > SEARCH_FIELD_LIMIT) {
            break;
        }
        let ext = f.extension(m as u32)?;
        let big = ext.dst();
        let [a, b, c, d] = rep.embed(&ext).entries();
        let twisted = Poly::new(big, vec![d, c])
            .mul(&Poly::monomial(big, FieldElem::ONE, q))
            .sub(&Poly::new(big, vec![b, a]));
        for v in twisted.roots()? {
            let o = group.orbit_in(ProjPoint::Finite(v), &ext);
            if o.len() != group.len() {
                continue;
            }
            let least = o.points[0];
            if best.as_ref().is_none_or(|(l, ..)| least < *l) {
                best = Some((least, o, ext.clone()));
            }
        }
    }
    match best {
        Some((_, o, ext)) => Ok(Some(orbit_numerator(&o, ext.dst()).descend(&ext)?)),
        None => Ok(None),
    }
}

/// `Some((a, b))` with `r2 = a·r1 + b`.
pub fn equivalent_up_to_affine(r1: &RatFunc, r2: &RatFunc) -> Option<(FieldElem, FieldElem)> {
    let f = r1.ctx();
    if !f.same_field(r2.ctx()) || r1.den() != r2.den() || r1.num().deg() <= r1.den().deg() {
        return None;
    }
    let a = f.div(r2.num().lc(), r1.num().lc());
    let rest = r2.num().sub(&r1.num().scale(a));
    let (quo, rem) = rest.divmod(r1.den()).ok()?;
    if !rem.is_zero() || quo.deg() > 0 {
        return None;
    }
    Some((a, quo.coeff(0)))
}

/// `h` with `Q_G = h ∘ Q_H`, by rational reconstruction over an extension
/// field, checked exactly over `F_q`.
pub fn relate(q_h: &QuotientMap, q_g: &QuotientMap) -> Result<RatFunc> {
    let h_order = q_h.group().len();
    let g_order = q_g.group().len();
    if !q_h.group().is_subgroup_of(q_g.group()) {
        return invalid("relate needs H inside G");
    }
    let d = g_order / h_order;
    let f = q_h.ctx();
    if d == 1 {
        let (a, b) = equivalent_up_to_affine(q_h.map(), q_g.map())
            .ok_or_else(|| Error::Violation("quotient maps of one group differ by more than a x + b".into()))?;
        return Ok(RatFunc::x(f).affine(a, b));
    }
    let needed = 2 * d + 8;
    let ext = sampling_extension(f, (needed * h_order + 2 * g_order) as u64 + 16)?;
    let big = ext.dst();
    let qh = q_h.map().embed(&ext);
    let qg = q_g.map().embed(&ext);
    let mut samples: Vec<(ProjPoint, ProjPoint)> = Vec::with_capacity(needed);
    let mut used: std::collections::HashSet<FieldElem> = std::collections::HashSet::new();
    for v in big.elements() {
        let (ProjPoint::Finite(a), ProjPoint::Finite(b)) =
            (qh.eval_proj(ProjPoint::Finite(v)), qg.eval_proj(ProjPoint::Finite(v)))
        else {
            continue;
        };
        if used.insert(a) {
            samples.push((ProjPoint::Finite(a), ProjPoint::Finite(b)));
            if samples.len() == needed {
                break;
            }
        }
    }
    let h = rat_interpolate(big, &samples, d, d - 1)?.descend(&ext)?;
    if h.compose(q_h.map()) != *q_g.map() {
        return violation("Q_G != h o Q_H");
    }
    Ok(h)
}

/// `β ∘ Q ∘ α⁻¹` for the group `αGα⁻¹`, with `β = 1/(x − k)` when `k = Q(α⁻¹(∞))` is finite.
pub fn conjugate_quotient(q1: &QuotientMap, alpha: &Pgl2) -> Result<QuotientMap> {
    let f = q1.ctx();
    let shifted = q1.map().compose(&RatFunc::mobius(f, alpha.inv(f).entries()));
    let map = match shifted.eval_proj(ProjPoint::Infinity) {
        ProjPoint::Infinity => shifted,
        ProjPoint::Finite(k) => {
            RatFunc::mobius(f, [FieldElem::ZERO, FieldElem::ONE, FieldElem::ONE, f.neg(k)]).compose(&shifted)
        }
    };
    QuotientMap::new(Arc::new(q1.group().conjugate(alpha)), map)
}

/// The Möbius map `β` used by [`conjugate_quotient`] on values.
pub fn conjugate_value_map(q1: &QuotientMap, alpha: &Pgl2) -> Pgl2 {
    let f = q1.ctx();
    let shifted = q1.map().compose(&RatFunc::mobius(f, alpha.inv(f).entries()));
    match shifted.eval_proj(ProjPoint::Infinity) {
        ProjPoint::Infinity => Pgl2::IDENTITY,
        ProjPoint::Finite(k) => Pgl2::new(f, [FieldElem::ZERO, FieldElem::ONE, FieldElem::ONE, f.neg(k)]).expect("det -1"),
    }
}

fn ratfunc(f: &Arc<FieldCtx>, num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(f, num), Poly::from_ints(f, den)).expect("nonzero denominator")
}

/// `(x³ − 3x + 1)/(x(x − 1))`.
pub fn q3_map(f: &Arc<FieldCtx>) -> RatFunc {
    ratfunc(f, &[1, -3, 0, 1], &[0, -1, 1])
}

/// `(x³ − 3x + 1)(x³ − 3x² + 1)/(x²(x − 1)²)`.
pub fn q6_map(f: &Arc<FieldCtx>) -> RatFunc {
    let num = Poly::from_ints(f, &[1, -3, 0, 1]).mul(&Poly::from_ints(f, &[1, 0, -3, 1]));
    let den = Poly::from_ints(f, &[0, -1, 1]).pow(2);
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// `xⁿ`.
pub fn kummer_map(f: &Arc<FieldCtx>, n: u64) -> RatFunc {
    RatFunc::from_poly(Poly::monomial(f, FieldElem::ONE, n as usize))
}

/// `x + c/x`.
pub fn order2_map(f: &Arc<FieldCtx>, c: FieldElem) -> RatFunc {
    RatFunc::new(Poly::new(f, vec![c, FieldElem::ZERO, FieldElem::ONE]), Poly::x(f)).expect("nonzero denominator")
}

/// `(x + b/x)²/4`.
pub fn klein_map(f: &Arc<FieldCtx>, b: FieldElem) -> RatFunc {
    let inner = Poly::new(f, vec![b, FieldElem::ZERO, FieldElem::ONE]);
    let num = inner.pow(2).scale(f.inv(f.from_int(4)));
    RatFunc::new(num, Poly::monomial(f, FieldElem::ONE, 2)).expect("nonzero denominator")
}

/// `(x^P − x)^{P−1}` for the subfield of order `P` (`P = q` gives the Borel map).
pub fn borel_map(f: &Arc<FieldCtx>, sub_order: u64) -> RatFunc {
    let xp = Poly::monomial(f, FieldElem::ONE, sub_order as usize).sub(&Poly::x(f));
    RatFunc::from_poly(xp.pow(sub_order - 1))
}

/// `(x^{q²} − x)^{k}/(x^q − x)^{kq+…}` reduced: the `PGL2` map for `k = q+1`,
/// the `PSL2` map for `k = (q+1)/2`.
fn full_group_map(f: &Arc<FieldCtx>, exponent: u64) -> RatFunc {
    let q = f.order() as usize;
    let x = Poly::x(f);
    let xq = Poly::monomial(f, FieldElem::ONE, q).sub(&x);
    let xq2 = Poly::monomial(f, FieldElem::ONE, q * q).sub(&x);
    let ratio = xq2.div_exact(&xq).expect("x^q - x divides x^(q^2) - x");
    // (x^{q²}−x)^k/(x^q−x)^{(q²+1)k/(q+1)} has den exponent k(q²+1)/(q+1) − k = k(q² − q)/(q + 1)
    let den_exp = exponent * (q as u64 * q as u64 - q as u64) / (q as u64 + 1);
    RatFunc::new(ratio.pow(exponent), xq.pow(den_exp)).expect("nonzero denominator")
}

/// `(x^{q²} − x)^{q+1}/(x^q − x)^{q²+1}`.
pub fn pgl2_map(f: &Arc<FieldCtx>) -> RatFunc {
    full_group_map(f, f.order() + 1)
}

/// `(x^{q³} − x)/(x^q − x)^{q² − q + 1}`, the direct orbit form.
pub fn pgl2_cubic_map(f: &Arc<FieldCtx>) -> RatFunc {
    let q = f.order() as usize;
    let x = Poly::x(f);
    let xq = Poly::monomial(f, FieldElem::ONE, q).sub(&x);
    let xq3 = Poly::monomial(f, FieldElem::ONE, q * q * q).sub(&x);
    RatFunc::new(xq3.div_exact(&xq).expect("divides"), xq.pow((q * q - q) as u64)).expect("nonzero denominator")
}

/// `(x^{q²} − x)^{(q+1)/2}/(x^q − x)^{(q²+1)/2}` for odd `q`.
pub fn psl2_map(f: &Arc<FieldCtx>) -> Result<RatFunc> {
    if f.p() == 2 {
        return invalid("the PSL2 map needs odd q");
    }
    Ok(full_group_map(f, f.order().div_ceil(2)))
}

/// `(λ(x − λ^q)^ℓ − λ^q(x − λ)^ℓ)/((x − λ^q)^ℓ − (x − λ)^ℓ)`, descended to `F_q`.
pub fn qell_map(ext: &EmbeddingMap, lambda: FieldElem, ell: u64) -> Result<RatFunc> {
    let big = ext.dst();
    let lq = conj_q(lambda, ext);
    if lq == lambda {
        return invalid("λ must lie outside F_q");
    }
    let a = Poly::linear(big, lq).pow(ell);
    let b = Poly::linear(big, lambda).pow(ell);
    let num = a.scale(lambda).sub(&b.scale(lq));
    RatFunc::new(num, a.sub(&b))?.descend(ext)
}

/// The named closed-form quotient map for a labelled group.
pub fn named_quotient(group: &Arc<Subgroup>) -> Result<QuotientMap> {
    let f = group.ctx();
    let map = match group.label() {
        GroupLabel::Kummer(n) => kummer_map(f, *n),
        GroupLabel::Order2(c) => order2_map(f, *c),
        GroupLabel::Klein(b) => klein_map(f, *b),
        GroupLabel::G3 => q3_map(f),
        GroupLabel::G6 => q6_map(f),
        GroupLabel::Borel => borel_map(f, f.order()),
        GroupLabel::BorelSub(p) => borel_map(f, *p),
        GroupLabel::Unipotent(w) => RatFunc::from_poly(qw_from_subspace(w)?.to_poly()),
        GroupLabel::Pgl2 => pgl2_map(f),
        GroupLabel::Psl2 if f.p() == 2 => pgl2_map(f),
        GroupLabel::Psl2 => psl2_map(f)?,
        GroupLabel::Cyclic(g) => return cyclic_quotient(group, g),
        GroupLabel::Custom => return build_quotient(group),
    };
    QuotientMap::new(group.clone(), map)
}

/// Normal form of a cyclic group: the model generator, its model quotient
/// map, and the conjugator taking the model group to the given one.
pub struct CyclicModel {
    pub model: QuotientMap,
    pub conjugator: Pgl2,
}

/// Model for `⟨γ⟩`: `xⁿ` or `x^p − b^{p−1}x` conjugated into place, or `Q_ℓ` directly.
pub fn cyclic_model(group: &Arc<Subgroup>, g: &Pgl2) -> Result<CyclicModel> {
    let f = group.ctx();
    if g.is_identity() {
        return invalid("the trivial group has no quotient map here");
    }
    let ext = f.extension(2)?;
    match dickson_classify(g, &ext)? {
        DicksonForm::CaseA { b, conjugator } => {
            let model_group = Arc::new(Subgroup::cyclic(f, Pgl2::translation(f, b))?);
            let p = f.p();
            let map = Poly::monomial(f, FieldElem::ONE, p as usize)
                .sub(&Poly::monomial(f, f.pow(b, p as u128 - 1), 1));
            Ok(CyclicModel { model: QuotientMap::new(model_group, RatFunc::from_poly(map))?, conjugator })
        }
        DicksonForm::CaseB { a, conjugator } => {
            let n = f.mult_order(a)?;
            let model_group = Arc::new(Subgroup::kummer(f, n)?);
            Ok(CyclicModel { model: QuotientMap::new(model_group, kummer_map(f, n))?, conjugator })
        }
        DicksonForm::CaseC { lambda, .. } => {
            let ell = g.order(f);
            let map = qell_map(&ext, lambda, ell)?;
            Ok(CyclicModel { model: QuotientMap::new(group.clone(), map)?, conjugator: Pgl2::IDENTITY })
        }
    }
}

fn cyclic_quotient(group: &Arc<Subgroup>, g: &Pgl2) -> Result<QuotientMap> {
    let model = cyclic_model(group, g)?;
    if model.conjugator.is_identity() {
        return Ok(QuotientMap { group: group.clone(), ..model.model });
    }
    let q = conjugate_quotient(&model.model, &model.conjugator)?;
    debug_assert_eq!(q.group().elements(), group.elements());
    Ok(QuotientMap { group: group.clone(), ..q })
}

/// `C_λ` as used by [`qell_map`], exposed for closed forms.
pub fn qell_frame(ext: &EmbeddingMap, lambda: FieldElem) -> Result<Pgl2> {
    c_lambda(lambda, ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_of_order, make_field};
    use crate::pgl2::{e_zeta_lambda, least_irrational};

    fn arc(g: Subgroup) -> Arc<Subgroup> {
        Arc::new(g)
    }

    #[test]
    fn verify_examples() {
        let f7 = make_field(7, 1).unwrap();
        let g3 = Subgroup::g3(&f7).unwrap();
        let cert = verify_quotient(&g3, &q3_map(&f7)).unwrap();
        assert!(cert.ok() && cert.whole_group && cert.product_samples == 9);
        let k2 = Subgroup::kummer(&f7, 2).unwrap();
        let cert = verify_quotient(&k2, &kummer_map(&f7, 3)).unwrap();
        assert!(matches!(cert.failure, Some(QuotientFailure::Degree { .. })));
        let g6 = Subgroup::g6(&f7).unwrap();
        let inv_x = RatFunc::mobius(&f7, [FieldElem::ZERO, f7.one(), f7.one(), FieldElem::ZERO]);
        let q3 = q3_map(&f7);
        let alt = q3.mul(&q3.compose(&inv_x)).neg();
        assert_eq!(alt, q6_map(&f7));
        assert!(verify_quotient(&g6, &alt).unwrap().ok());
        assert!(matches!(verify_quotient(&g6, &q3.mul(&q3)).unwrap().failure, Some(QuotientFailure::NotInvariant(_))));
    }

    #[test]
    fn build_matches_named_forms() {
        let f7 = make_field(7, 1).unwrap();
        let g3 = arc(Subgroup::g3(&f7).unwrap());
        let built = build_quotient(&g3).unwrap();
        assert!(equivalent_up_to_affine(&q3_map(&f7), built.map()).is_some());
        let k2 = arc(Subgroup::kummer(&f7, 2).unwrap());
        let built = build_quotient(&k2).unwrap();
        assert!(equivalent_up_to_affine(&kummer_map(&f7, 2), built.map()).is_some());
        for q in [2u64, 3, 4, 5] {
            let f = field_of_order(q).unwrap();
            let g = arc(Subgroup::pgl2_full(&f).unwrap());
            let built = build_quotient(&g).unwrap();
            assert!(equivalent_up_to_affine(&pgl2_map(&f), built.map()).is_some());
        }
    }

    #[test]
    fn pgl2_identity_and_affine_examples() {
        for q in [2u64, 3, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            assert_eq!(equivalent_up_to_affine(&pgl2_cubic_map(&f), &pgl2_map(&f)), Some((f.one(), f.one())));
        }
        let f7 = make_field(7, 1).unwrap();
        let q3 = q3_map(&f7);
        assert_eq!(equivalent_up_to_affine(&q3, &q3), Some((f7.one(), FieldElem::ZERO)));
        let shifted = q3.affine(f7.from_int(2), f7.from_int(5));
        assert_eq!(equivalent_up_to_affine(&q3, &shifted), Some((f7.from_int(2), f7.from_int(5))));
        assert_eq!(equivalent_up_to_affine(&q3, &q6_map(&f7)), None);
    }

    #[test]
    fn q3_reflection() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let f = field_of_order(q).unwrap();
            let inv_x = RatFunc::mobius(&f, [FieldElem::ZERO, f.one(), f.one(), FieldElem::ZERO]);
            let q3 = q3_map(&f);
            assert_eq!(q3.compose(&inv_x), q3.affine(f.neg(f.one()), f.from_int(3)));
        }
    }

    #[test]
    fn irregular_examples() {
        let f7 = make_field(7, 1).unwrap();
        let g6 = named_quotient(&arc(Subgroup::g6(&f7).unwrap())).unwrap();
        let e = g6.ext2();
        let mut expect = vec![
            ProjPoint::Finite(e.apply(f7.from_int(-9))),
            ProjPoint::Finite(e.apply(f7.div(f7.from_int(-9), f7.from_int(4)))),
            ProjPoint::Infinity,
        ];
        expect.sort();
        assert_eq!(g6.irregular(), expect.as_slice());
        let g3 = named_quotient(&arc(Subgroup::g3(&f7).unwrap())).unwrap();
        let big = g3.ext2().dst();
        let finite: Vec<FieldElem> = g3.irregular().iter().filter_map(|p| p.finite()).collect();
        assert_eq!(finite.len(), 2);
        for t in finite {
            assert!(big.add(big.sub(big.mul(t, t), big.mul(big.from_int(3), t)), big.from_int(9)).is_zero());
        }
        let f5 = make_field(5, 1).unwrap();
        let ext = f5.extension(2).unwrap();
        let lambda = least_irrational(&ext);
        let zeta = ext.dst().primitive_cube_root().unwrap();
        let g = e_zeta_lambda(zeta, lambda, &ext).unwrap();
        let cyc = named_quotient(&arc(Subgroup::cyclic(&f5, g).unwrap())).unwrap();
        let mut expect = vec![ProjPoint::Finite(lambda), ProjPoint::Finite(conj_q(lambda, &ext))];
        expect.sort();
        assert_eq!(cyc.irregular(), expect.as_slice());
    }

    #[test]
    fn named_quotients_verify() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            let mut groups = vec![
                Subgroup::g3(&f).unwrap(),
                Subgroup::g6(&f).unwrap(),
                Subgroup::borel(&f).unwrap(),
                Subgroup::pgl2_full(&f).unwrap(),
                Subgroup::psl2(&f).unwrap(),
                Subgroup::order2(&f, f.primitive_element()).unwrap(),
                Subgroup::kummer(&f, q - 1).unwrap(),
            ];
            if q % 2 == 1 {
                groups.push(Subgroup::klein(&f, f.one()).unwrap());
            }
            for g in f.units().step_by(2).filter_map(|a| Pgl2::new(&f, [a, f.one(), f.one(), FieldElem::ZERO]).ok()) {
                groups.push(Subgroup::cyclic(&f, g).unwrap());
            }
            for g in groups {
                let g = arc(g);
                let named = named_quotient(&g).unwrap_or_else(|e| panic!("{g:?}: {e}"));
                let built = build_quotient(&g).unwrap_or_else(|e| panic!("{g:?}: {e}"));
                assert!(equivalent_up_to_affine(named.map(), built.map()).is_some(), "{g:?}");
            }
        }
    }

    #[test]
    fn preimages_are_orbits() {
        for q in [3u64, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            let ext = f.extension(2).unwrap();
            let big = ext.dst();
            let mut groups = vec![Subgroup::g3(&f).unwrap(), Subgroup::g6(&f).unwrap(), Subgroup::borel(&f).unwrap()];
            if q % 2 == 1 {
                groups.push(Subgroup::klein(&f, f.one()).unwrap());
            }
            for g in groups {
                let qm = named_quotient(&arc(g)).unwrap();
                let map = qm.map().embed(&ext);
                let gr = qm.group();
                // Q⁻¹(w) over F_{q²} is contained in one orbit: points of equal value are related
                let pts: Vec<ProjPoint> = big.elements().map(ProjPoint::Finite).chain([ProjPoint::Infinity]).collect();
                let mut by_value: std::collections::BTreeMap<ProjPoint, Vec<ProjPoint>> = Default::default();
                for &v in &pts {
                    by_value.entry(map.eval_proj(v)).or_default().push(v);
                }
                for (w, vs) in by_value {
                    let o = gr.orbit_in(vs[0], &ext);
                    assert!(vs.iter().all(|v| o.contains(v)));
                    if let ProjPoint::Finite(w) = w {
                        let h = map.num().sub(&map.den().scale(w));
                        let expect = Poly::from_roots(big, o.points.iter().filter_map(|p| p.finite()))
                            .pow(o.multiplicity as u64)
                            .scale(map.num().lc());
                        assert_eq!(h, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn relate_examples() {
        let f7 = make_field(7, 1).unwrap();
        let g3 = named_quotient(&arc(Subgroup::g3(&f7).unwrap())).unwrap();
        let g6 = named_quotient(&arc(Subgroup::g6(&f7).unwrap())).unwrap();
        let h = relate(&g3, &g6).unwrap();
        assert_eq!(h, RatFunc::from_poly(Poly::from_ints(&f7, &[0, -3, 1])));
        assert_eq!(relate(&g3, &g3).unwrap(), RatFunc::x(&f7));
        let f9 = field_of_order(9).unwrap();
        let sub = named_quotient(&arc(Subgroup::borel_sub(&f9, 3).unwrap())).unwrap();
        let full = named_quotient(&arc(Subgroup::borel(&f9).unwrap())).unwrap();
        let h = relate(&sub, &full).unwrap();
        assert_eq!(h.degree(), 12);
        let pgl = named_quotient(&arc(Subgroup::pgl2_full(&f9).unwrap())).unwrap();
        let g3_9 = named_quotient(&arc(Subgroup::g3(&f9).unwrap())).unwrap();
        assert_eq!(relate(&g3_9, &pgl).unwrap().degree(), 240);
    }

    #[test]
    fn conjugate_examples() {
        let f7 = make_field(7, 1).unwrap();
        let k2 = named_quotient(&arc(Subgroup::kummer(&f7, 2).unwrap())).unwrap();
        let same = conjugate_quotient(&k2, &Pgl2::IDENTITY).unwrap();
        assert_eq!(same.map(), k2.map());
        let t = Pgl2::translation(&f7, f7.one());
        let moved = conjugate_quotient(&k2, &t).unwrap();
        let shifted = RatFunc::from_poly(Poly::from_ints(&f7, &[-1, 1]).pow(2));
        assert!(equivalent_up_to_affine(&shifted, moved.map()).is_some());
        let kl = named_quotient(&arc(Subgroup::klein(&f7, f7.one()).unwrap())).unwrap();
        let rho = Subgroup::rho(&f7);
        let kl2 = conjugate_quotient(&kl, &rho).unwrap();
        assert_eq!(kl2.group().elements(), kl.group().elements());
        assert!(equivalent_up_to_affine(kl.map(), kl2.map()).is_some());
    }

    #[test]
    fn psl2_square_relation() {
        for q in [3u64, 5, 7, 9] {
            let f = field_of_order(q).unwrap();
            let s = psl2_map(&f).unwrap();
            assert_eq!(s.mul(&s), pgl2_map(&f));
        }
    }
}
