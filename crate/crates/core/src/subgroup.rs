//! Finite subgroups of `PGL2(F_q)` stored as explicit sorted element sets,
//! with orbits on the projective line and conjugacy classes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::addpoly::Subspace;
use crate::encoding::{parse_elem_list, split_top_level};
use crate::error::{invalid, Error, Result};
use crate::ff::{EmbeddingMap, FieldCtx, FieldElem};
use crate::pgl2::{fixed_points, pgl2_elements, Pgl2};
use crate::poly::ProjPoint;

/// Default cap on the number of elements of a subgroup.
pub const DEFAULT_GROUP_BOUND: usize = 100_000;

/// Which family a subgroup was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupLabel {
    Kummer(u64),
    Order2(FieldElem),
    Klein(FieldElem),
    G3,
    G6,
    Borel,
    BorelSub(u64),
    Unipotent(Subspace),
    Cyclic(Pgl2),
    Pgl2,
    Psl2,
    Custom,
}

/// A conjugacy class inside a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    rep: Pgl2,
    members: Arc<[Pgl2]>,
}

impl ConjClass {
    /// The least member.
    pub fn rep(&self) -> Pgl2 {
        self.rep
    }

    pub fn members(&self) -> &[Pgl2] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Pgl2) -> bool {
        self.members.binary_search(g).is_ok()
    }
}

/// An orbit on the projective line over some extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<ProjPoint>,
    pub multiplicity: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &ProjPoint) -> bool {
        self.points.binary_search(v).is_ok()
    }
}

#[derive(Clone, Debug)]
struct ClassData {
    classes: Vec<ConjClass>,
    index: HashMap<Pgl2, usize>,
}

/// A finite subgroup of `PGL2(F_q)`.
#[derive(Clone)]
pub struct Subgroup {
    ctx: Arc<FieldCtx>,
    elements: Vec<Pgl2>,
    label: GroupLabel,
    classes: OnceLock<ClassData>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({:?}, order {} over {})", self.label, self.elements.len(), self.ctx)
    }
}

impl Subgroup {
    /// Wraps an element set, checking closure.
    pub fn from_elements(ctx: &Arc<FieldCtx>, mut elements: Vec<Pgl2>, label: GroupLabel) -> Result<Subgroup> {
        elements.sort();
        elements.dedup();
        let g = Subgroup { ctx: ctx.clone(), elements, label, classes: OnceLock::new() };
        if !g.contains(&Pgl2::IDENTITY) {
            return invalid("a subgroup contains the identity");
        }
        for a in &g.elements {
            if !g.contains(&a.inv(ctx)) {
                return invalid("element set is not closed under inverses");
            }
        }
        if g.elements.len() <= 2_000 {
            for a in &g.elements {
                for b in &g.elements {
                    if !g.contains(&a.mul(b, ctx)) {
                        return invalid("element set is not closed under multiplication");
                    }
                }
            }
        }
        Ok(g)
    }

    fn trusted(ctx: &Arc<FieldCtx>, mut elements: Vec<Pgl2>, label: GroupLabel) -> Subgroup {
        elements.sort();
        Subgroup { ctx: ctx.clone(), elements, label, classes: OnceLock::new() }
    }

    /// Closure of a generating set.
    pub fn generate(ctx: &Arc<FieldCtx>, gens: &[Pgl2]) -> Result<Subgroup> {
        Subgroup::generate_labeled(ctx, gens, GroupLabel::Custom)
    }

    fn generate_labeled(ctx: &Arc<FieldCtx>, gens: &[Pgl2], label: GroupLabel) -> Result<Subgroup> {
        let mut seen: BTreeSet<Pgl2> = BTreeSet::from([Pgl2::IDENTITY]);
        let mut frontier = vec![Pgl2::IDENTITY];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g, ctx);
                if seen.insert(y) {
                    if seen.len() > DEFAULT_GROUP_BOUND {
                        return Err(Error::SearchBound(format!("group exceeds {DEFAULT_GROUP_BOUND} elements")));
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup::trusted(ctx, seen.into_iter().collect(), label))
    }

    /// `{diag(ζ, 1) : ζⁿ = 1}`.
    pub fn kummer(ctx: &Arc<FieldCtx>, n: u64) -> Result<Subgroup> {
        if n == 0 || !(ctx.order() - 1).is_multiple_of(n) {
            return invalid(format!("kummer group needs n | q-1, got n={n}"));
        }
        let elems = ctx.nth_roots_of_unity(n)?.into_iter().map(|z| Pgl2::diag(ctx, z)).collect::<Result<_>>()?;
        Ok(Subgroup::trusted(ctx, elems, GroupLabel::Kummer(n)))
    }

    /// `{1, (0 c; 1 0)}`.
    pub fn order2(ctx: &Arc<FieldCtx>, c: FieldElem) -> Result<Subgroup> {
        if c.is_zero() {
            return invalid("order-2 group needs c != 0");
        }
        let s = Pgl2::new(ctx, [FieldElem::ZERO, c, FieldElem::ONE, FieldElem::ZERO])?;
        Ok(Subgroup::trusted(ctx, vec![Pgl2::IDENTITY, s], GroupLabel::Order2(c)))
    }

    /// `{1, diag(−1,1), (0 b; 1 0), (0 −b; 1 0)}` for odd `q`.
    pub fn klein(ctx: &Arc<FieldCtx>, b: FieldElem) -> Result<Subgroup> {
        if ctx.p() == 2 || b.is_zero() {
            return invalid("klein group needs odd q and b != 0");
        }
        let z = FieldElem::ZERO;
        let one = FieldElem::ONE;
        let elems = vec![
            Pgl2::IDENTITY,
            Pgl2::diag(ctx, ctx.neg(one))?,
            Pgl2::new(ctx, [z, b, one, z])?,
            Pgl2::new(ctx, [z, ctx.neg(b), one, z])?,
        ];
        Ok(Subgroup::trusted(ctx, elems, GroupLabel::Klein(b)))
    }

    /// `β = (1 −1; 1 0)`.
    pub fn beta(ctx: &FieldCtx) -> Pgl2 {
        Pgl2::from_ints(ctx, [1, -1, 1, 0]).expect("det 1")
    }

    /// `ρ = (0 1; 1 0)`.
    pub fn rho(ctx: &FieldCtx) -> Pgl2 {
        Pgl2::from_ints(ctx, [0, 1, 1, 0]).expect("det -1")
    }

    pub fn g3(ctx: &Arc<FieldCtx>) -> Result<Subgroup> {
        Subgroup::generate_labeled(ctx, &[Subgroup::beta(ctx)], GroupLabel::G3)
    }

    pub fn g6(ctx: &Arc<FieldCtx>) -> Result<Subgroup> {
        Subgroup::generate_labeled(ctx, &[Subgroup::beta(ctx), Subgroup::rho(ctx)], GroupLabel::G6)
    }

    /// `{(a b; 0 1)}`, the stabilizer of `∞`.
    pub fn borel(ctx: &Arc<FieldCtx>) -> Result<Subgroup> {
        Subgroup::affine_group(ctx, ctx.units().collect(), ctx.elements().collect(), GroupLabel::Borel)
    }

    /// `{(a b; 0 1) : a ∈ F_P^×, b ∈ F_P}` for a subfield of order `P`.
    pub fn borel_sub(ctx: &Arc<FieldCtx>, sub_order: u64) -> Result<Subgroup> {
        let emb = subfield_of_order(ctx, sub_order)?;
        let sub: Vec<FieldElem> = emb.src().elements().map(|e| emb.apply(e)).collect();
        let units = sub.iter().copied().filter(|e| !e.is_zero()).collect();
        Subgroup::affine_group(ctx, units, sub, GroupLabel::BorelSub(sub_order))
    }

    fn affine_group(ctx: &Arc<FieldCtx>, scales: Vec<FieldElem>, shifts: Vec<FieldElem>, label: GroupLabel) -> Result<Subgroup> {
        let mut elems = Vec::with_capacity(scales.len() * shifts.len());
        for &a in &scales {
            for &b in &shifts {
                elems.push(Pgl2::new(ctx, [a, b, FieldElem::ZERO, FieldElem::ONE])?);
            }
        }
        Ok(Subgroup::trusted(ctx, elems, label))
    }

    /// `{(1 w; 0 1) : w ∈ W}`.
    pub fn unipotent(ctx: &Arc<FieldCtx>, w: &Subspace) -> Result<Subgroup> {
        if !w.ambient().same_field(ctx) {
            return invalid("subspace lives in a different field");
        }
        let elems = w.elements().iter().map(|&v| Pgl2::translation(ctx, v)).collect();
        Ok(Subgroup::trusted(ctx, elems, GroupLabel::Unipotent(w.clone())))
    }

    /// The cyclic group generated by `γ`.
    pub fn cyclic(ctx: &Arc<FieldCtx>, g: Pgl2) -> Result<Subgroup> {
        Subgroup::generate_labeled(ctx, &[g], GroupLabel::Cyclic(g))
    }

    pub fn pgl2_full(ctx: &Arc<FieldCtx>) -> Result<Subgroup> {
        check_full_group_size(ctx)?;
        Ok(Subgroup::trusted(ctx, pgl2_elements(ctx), GroupLabel::Pgl2))
    }

    /// Elements with square determinant; equal to `PGL2` in characteristic 2.
    pub fn psl2(ctx: &Arc<FieldCtx>) -> Result<Subgroup> {
        check_full_group_size(ctx)?;
        let elems = pgl2_elements(ctx).into_iter().filter(|g| g.det_is_square(ctx)).collect();
        Ok(Subgroup::trusted(ctx, elems, GroupLabel::Psl2))
    }

    /// Parses a group spec such as `kummer:3`, `klein:1`, `g3`, `borelP:3`,
    /// `unipotent:basis=[..]`, `unipotent:P=3;basis=[..]`, `cyclic:a,b,c,d`,
    /// `order2:c`, `pgl2`, `psl2`.
    pub fn from_spec(ctx: &Arc<FieldCtx>, spec: &str) -> Result<Subgroup> {
        let spec = spec.trim();
        let (name, arg) = spec.split_once(':').map_or((spec, ""), |(n, a)| (n.trim(), a.trim()));
        let int_arg = || arg.parse::<u64>().map_err(|_| Error::Invalid(format!("bad integer in group spec {spec:?}")));
        match name {
            "kummer" => Subgroup::kummer(ctx, int_arg()?),
            "order2" => Subgroup::order2(ctx, ctx.parse_elem(arg)?),
            "klein" => Subgroup::klein(ctx, ctx.parse_elem(arg)?),
            "g3" => Subgroup::g3(ctx),
            "g6" => Subgroup::g6(ctx),
            "borel" => Subgroup::borel(ctx),
            "borelP" | "borel_sub" => Subgroup::borel_sub(ctx, int_arg()?),
            "unipotent" => {
                let mut sub_order = ctx.p();
                let mut basis = Vec::new();
                for part in arg.split(';') {
                    match part.split_once('=') {
                        Some(("P", v)) => {
                            sub_order = v.trim().parse().map_err(|_| Error::Invalid(format!("bad P in {spec:?}")))?
                        }
                        Some(("basis", v)) => basis = parse_elem_list(ctx, v)?,
                        _ => return invalid(format!("bad unipotent spec {spec:?}")),
                    }
                }
                Subgroup::unipotent(ctx, &Subspace::new(ctx, sub_order, &basis)?)
            }
            "cyclic" => Subgroup::cyclic(ctx, Pgl2::parse(ctx, arg)?),
            "pgl2" => Subgroup::pgl2_full(ctx),
            "psl2" => Subgroup::psl2(ctx),
            "custom" => {
                let gens = split_matrix_list(arg)?.iter().map(|m| Pgl2::parse(ctx, m)).collect::<Result<Vec<_>>>()?;
                Subgroup::generate(ctx, &gens)
            }
            _ => invalid(format!("unknown group spec {spec:?}")),
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn elements(&self) -> &[Pgl2] {
        &self.elements
    }

    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Pgl2) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ctx.same_field(&other.ctx) && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.conjugacy_classes().len() == self.len()
    }

    /// `αGα⁻¹`.
    pub fn conjugate(&self, alpha: &Pgl2) -> Subgroup {
        let elems = self.elements.iter().map(|g| g.conj(alpha, &self.ctx)).collect();
        Subgroup::trusted(&self.ctx, elems, GroupLabel::Custom)
    }

    /// Orbit of a point of `P¹(F_q)`.
    pub fn orbit(&self, v: ProjPoint) -> Orbit {
        self.collect_orbit(self.elements.iter().map(|g| g.act(v, &self.ctx)))
    }

    /// Orbit of a point of `P¹` over the target of `ext`.
    pub fn orbit_in(&self, v: ProjPoint, ext: &EmbeddingMap) -> Orbit {
        if ext.is_identity() {
            return self.orbit(v);
        }
        let big = ext.dst();
        self.collect_orbit(self.elements.iter().map(|g| g.embed(ext).act(v, big)))
    }

    fn collect_orbit(&self, pts: impl Iterator<Item = ProjPoint>) -> Orbit {
        let mut points: Vec<ProjPoint> = pts.collect();
        points.sort();
        points.dedup();
        Orbit { multiplicity: self.len() / points.len(), points }
    }

    /// All orbits of size below `|G|`, as points of `P¹(F_{q²})`, sorted.
    pub fn short_orbits(&self, ext: &EmbeddingMap) -> Result<Vec<Orbit>> {
        let mut out: Vec<Orbit> = Vec::new();
        for g in self.elements.iter().filter(|g| !g.is_identity()) {
            for v in fixed_points(g, ext)? {
                if !out.iter().any(|o| o.contains(&v)) {
                    out.push(self.orbit_in(v, ext));
                }
            }
        }
        out.sort_by(|a, b| a.points.cmp(&b.points));
        Ok(out)
    }

    /// All conjugacy classes, sorted by representative.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    /// The class containing `g`.
    pub fn class_of(&self, g: &Pgl2) -> Option<&ConjClass> {
        let data = self.class_data();
        data.index.get(g).map(|&i| &data.classes[i])
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let f = &self.ctx;
            let inverses: Vec<Pgl2> = self.elements.iter().map(|a| a.inv(f)).collect();
            let mut index = HashMap::with_capacity(self.len());
            let mut classes = Vec::new();
            for g in &self.elements {
                if index.contains_key(g) {
                    continue;
                }
                let mut members: Vec<Pgl2> =
                    self.elements.iter().zip(&inverses).map(|(a, ai)| a.mul(g, f).mul(ai, f)).collect();
                members.sort();
                members.dedup();
                for m in &members {
                    index.insert(*m, classes.len());
                }
                classes.push(ConjClass { rep: members[0], members: members.into() });
            }
            ClassData { classes, index }
        })
    }
}

fn check_full_group_size(ctx: &FieldCtx) -> Result<()> {
    let q = ctx.order();
    if (q + 1) * q * (q - 1) > DEFAULT_GROUP_BOUND as u64 {
        return Err(Error::SearchBound(format!("PGL2(F_{q}) exceeds the group bound")));
    }
    Ok(())
}

/// The subfield of the given order, as an embedding into `ctx`.
pub fn subfield_of_order(ctx: &Arc<FieldCtx>, sub_order: u64) -> Result<EmbeddingMap> {
    let k = ctx.log_p(sub_order)?;
    if k == 0 || !ctx.n().is_multiple_of(k) {
        return invalid(format!("F_{sub_order} is not a subfield of {ctx}"));
    }
    ctx.subfield(k)
}

/// Splits `a,b,c,d;a,b,c,d;...` into matrices.
fn split_matrix_list(s: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = s.split(';').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect();
    for p in &parts {
        if split_top_level(p)?.len() != 4 {
            return invalid(format!("bad matrix {p:?}"));
        }
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_of_order, make_field};

    fn pt(f: &FieldCtx, k: i64) -> ProjPoint {
        ProjPoint::Finite(f.from_int(k))
    }

    #[test]
    fn generate_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(Subgroup::generate(&f5, &[]).unwrap().len(), 1);
        let g3 = Subgroup::generate(&f5, &[Subgroup::beta(&f5)]).unwrap();
        assert_eq!(g3.len(), 3);
        assert_eq!(g3.elements(), Subgroup::g3(&f5).unwrap().elements());
        let g6 = Subgroup::g6(&f5).unwrap();
        assert_eq!(g6.len(), 6);
        assert!(!g6.is_abelian());
    }

    #[test]
    fn named_cardinalities() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(Subgroup::pgl2_full(&f5).unwrap().len(), 120);
        assert_eq!(Subgroup::psl2(&f5).unwrap().len(), 60);
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(Subgroup::borel(&f7).unwrap().len(), 42);
        assert_eq!(Subgroup::kummer(&f7, 3).unwrap().len(), 3);
        assert!(Subgroup::kummer(&f7, 4).is_err());
        assert_eq!(Subgroup::klein(&f7, f7.one()).unwrap().len(), 4);
        let f9 = field_of_order(9).unwrap();
        assert_eq!(Subgroup::borel_sub(&f9, 3).unwrap().len(), 6);
        let f4 = field_of_order(4).unwrap();
        assert!(Subgroup::klein(&f4, f4.one()).is_err());
        assert_eq!(Subgroup::psl2(&f4).unwrap().len(), 60);
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            for g in [
                Subgroup::g3(&f).unwrap(),
                Subgroup::g6(&f).unwrap(),
                Subgroup::borel(&f).unwrap(),
                Subgroup::psl2(&f).unwrap(),
            ] {
                Subgroup::from_elements(&f, g.elements().to_vec(), GroupLabel::Custom).unwrap();
            }
        }
    }

    #[test]
    fn specs_parse() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(Subgroup::from_spec(&f7, "kummer:6").unwrap().len(), 6);
        assert_eq!(Subgroup::from_spec(&f7, "klein:1").unwrap().len(), 4);
        assert_eq!(Subgroup::from_spec(&f7, "cyclic:1,1,0,1").unwrap().len(), 7);
        assert_eq!(Subgroup::from_spec(&f7, "order2:3").unwrap().len(), 2);
        assert_eq!(Subgroup::from_spec(&f7, "custom:1,-1,1,0;0,1,1,0").unwrap().len(), 6);
        let f9 = field_of_order(9).unwrap();
        assert_eq!(Subgroup::from_spec(&f9, "unipotent:basis=[[1,0]]").unwrap().len(), 3);
        assert_eq!(Subgroup::from_spec(&f9, "unipotent:P=9;basis=[[1,0]]").unwrap().len(), 9);
        assert_eq!(Subgroup::from_spec(&f9, "borelP:3").unwrap().len(), 6);
        assert!(Subgroup::from_spec(&f7, "nonsense").is_err());
        assert!(Subgroup::from_spec(&f7, "borelP:2").is_err());
    }

    #[test]
    fn orbit_examples() {
        let f7 = make_field(7, 1).unwrap();
        let g3 = Subgroup::g3(&f7).unwrap();
        let o = g3.orbit(ProjPoint::Infinity);
        assert_eq!(o.points, vec![pt(&f7, 0), pt(&f7, 1), ProjPoint::Infinity]);
        assert_eq!(o.multiplicity, 1);
        let f9 = field_of_order(9).unwrap();
        let ext = f9.extension(2).unwrap();
        let shorts = Subgroup::g3(&f9).unwrap().short_orbits(&ext).unwrap();
        assert_eq!(shorts.len(), 1);
        assert_eq!(shorts[0].points, vec![ProjPoint::Finite(ext.apply(f9.from_int(-1)))]);
        assert_eq!(shorts[0].multiplicity, 3);
    }

    #[test]
    fn pgl2_short_orbits() {
        for q in [3u64, 4, 5] {
            let f = field_of_order(q).unwrap();
            let ext = f.extension(2).unwrap();
            let shorts = Subgroup::pgl2_full(&f).unwrap().short_orbits(&ext).unwrap();
            assert_eq!(shorts.len(), 2);
            let sizes: BTreeSet<usize> = shorts.iter().map(Orbit::len).collect();
            assert_eq!(sizes, BTreeSet::from([(q + 1) as usize, (q * q - q) as usize]));
            for o in &shorts {
                let rational = o.points.iter().all(|p| p.finite().is_none_or(|z| ext.contains(z)));
                let irrational = o.points.iter().all(|p| p.finite().is_some_and(|z| !ext.contains(z)));
                assert!(rational || irrational);
            }
        }
    }

    #[test]
    fn orbit_sizes_divide_and_short_union_is_bounded() {
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
            let f = field_of_order(q).unwrap();
            let ext = f.extension(2).unwrap();
            let mut groups = vec![Subgroup::g3(&f).unwrap(), Subgroup::g6(&f).unwrap(), Subgroup::borel(&f).unwrap()];
            if q % 2 == 1 {
                groups.push(Subgroup::klein(&f, f.one()).unwrap());
            }
            for g in &groups {
                let shorts = g.short_orbits(&ext).unwrap();
                let total: usize = shorts.iter().map(Orbit::len).sum();
                assert!(total <= 2 * (g.len() - 1));
                for o in &shorts {
                    assert!(o.len() < g.len());
                    assert_eq!(o.len() * o.multiplicity, g.len());
                }
                for v in f.elements() {
                    let o = g.orbit(ProjPoint::Finite(v));
                    assert_eq!(o.len() * o.multiplicity, g.len());
                }
            }
        }
    }

    #[test]
    fn unipotent_only_short_orbit_is_infinity() {
        let f9 = field_of_order(9).unwrap();
        let ext = f9.extension(2).unwrap();
        let w = Subspace::new(&f9, 3, &[f9.one()]).unwrap();
        let g = Subgroup::unipotent(&f9, &w).unwrap();
        assert_eq!(g.short_orbits(&ext).unwrap(), vec![Orbit { points: vec![ProjPoint::Infinity], multiplicity: 3 }]);
    }

    #[test]
    fn class_examples() {
        let f7 = make_field(7, 1).unwrap();
        let g6 = Subgroup::g6(&f7).unwrap();
        let b = Subgroup::beta(&f7);
        let r = Subgroup::rho(&f7);
        let sizes: Vec<usize> = g6.conjugacy_classes().iter().map(ConjClass::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        let cb = g6.class_of(&b).unwrap();
        assert_eq!(cb.len(), 2);
        assert!(cb.contains(&b.mul(&b, &f7)));
        let cr = g6.class_of(&r).unwrap();
        assert_eq!(cr.len(), 3);
        assert!(cr.contains(&r.mul(&b, &f7)) && cr.contains(&r.mul(&b.mul(&b, &f7), &f7)));
        assert!(Subgroup::kummer(&f7, 6).unwrap().conjugacy_classes().iter().all(|c| c.len() == 1));
        let borel = Subgroup::borel(&f7).unwrap();
        let classes = borel.conjugacy_classes();
        assert_eq!(classes.len(), 7);
        for a in f7.units() {
            assert!(borel.class_of(&Pgl2::diag(&f7, a).unwrap()).is_some());
        }
        assert_eq!(borel.class_of(&Pgl2::translation(&f7, f7.one())).unwrap().len(), 6);
        for c in classes {
            assert_eq!(c.rep(), c.members()[0]);
        }
    }
}
