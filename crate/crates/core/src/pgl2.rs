//! `PGL2` over a finite field: canonical matrices, the Möbius action,
//! orders, the invariant `ι = (a+d)²/(ad−bc)`, fixed points and the
//! three-way classification of non-identity elements.

use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::ff::{EmbeddingMap, FieldCtx, FieldElem};
use crate::poly::{Poly, ProjPoint};
use crate::subgroup::Subgroup;

/// A raw 2×2 matrix `(a b; c d)`, row-major.
pub type Mat2 = [FieldElem; 4];

pub fn mat_mul(f: &FieldCtx, x: &Mat2, y: &Mat2) -> Mat2 {
    let [a, b, c, d] = *x;
    let [e, g, h, k] = *y;
    [
        f.add(f.mul(a, e), f.mul(b, h)),
        f.add(f.mul(a, g), f.mul(b, k)),
        f.add(f.mul(c, e), f.mul(d, h)),
        f.add(f.mul(c, g), f.mul(d, k)),
    ]
}

pub fn mat_det(f: &FieldCtx, m: &Mat2) -> FieldElem {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

/// Adjugate, i.e. the inverse up to the determinant.
pub fn mat_adj(f: &FieldCtx, m: &Mat2) -> Mat2 {
    [m[3], f.neg(m[1]), f.neg(m[2]), m[0]]
}

/// A nonsingular matrix modulo scalars, scaled so the first nonzero entry is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pgl2(Mat2);

impl Pgl2 {
    pub const IDENTITY: Pgl2 = Pgl2([FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE]);

    pub fn new(f: &FieldCtx, m: Mat2) -> Result<Pgl2> {
        if mat_det(f, &m).is_zero() {
            return invalid("singular matrix");
        }
        Ok(Pgl2::canon(f, m))
    }

    pub fn from_ints(f: &FieldCtx, m: [i64; 4]) -> Result<Pgl2> {
        Pgl2::new(f, m.map(|v| f.from_int(v)))
    }

    /// `diag(a, 1)`.
    pub fn diag(f: &FieldCtx, a: FieldElem) -> Result<Pgl2> {
        Pgl2::new(f, [a, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE])
    }

    /// `(1 b; 0 1)`.
    pub fn translation(f: &FieldCtx, b: FieldElem) -> Pgl2 {
        Pgl2::new(f, [FieldElem::ONE, b, FieldElem::ZERO, FieldElem::ONE]).expect("unipotent")
    }

    fn canon(f: &FieldCtx, m: Mat2) -> Pgl2 {
        let lead = m.iter().copied().find(|e| !e.is_zero()).expect("nonsingular");
        if lead == FieldElem::ONE {
            return Pgl2(m);
        }
        let k = f.inv(lead);
        Pgl2(m.map(|e| f.mul(e, k)))
    }

    pub fn entries(&self) -> Mat2 {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        *self == Pgl2::IDENTITY
    }

    pub fn mul(&self, other: &Pgl2, f: &FieldCtx) -> Pgl2 {
        Pgl2::canon(f, mat_mul(f, &self.0, &other.0))
    }

    pub fn inv(&self, f: &FieldCtx) -> Pgl2 {
        Pgl2::canon(f, mat_adj(f, &self.0))
    }

    pub fn pow(&self, k: u64, f: &FieldCtx) -> Pgl2 {
        (0..k).fold(Pgl2::IDENTITY, |acc, _| acc.mul(self, f))
    }

    /// `by · self · by⁻¹`.
    pub fn conj(&self, by: &Pgl2, f: &FieldCtx) -> Pgl2 {
        by.mul(self, f).mul(&by.inv(f), f)
    }

    /// Determinant of the canonical representative.
    pub fn det(&self, f: &FieldCtx) -> FieldElem {
        mat_det(f, &self.0)
    }

    /// Whether the determinant is a square (well defined on the class).
    pub fn det_is_square(&self, f: &FieldCtx) -> bool {
        f.is_square(self.det(f))
    }

    /// `(a+d)²/(ad−bc)`.
    pub fn iota(&self, f: &FieldCtx) -> FieldElem {
        let [a, _, _, d] = self.0;
        let t = f.add(a, d);
        f.div(f.mul(t, t), self.det(f))
    }

    /// Projective order.
    pub fn order(&self, f: &FieldCtx) -> u64 {
        let mut cur = *self;
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.mul(self, f);
            k += 1;
        }
        k
    }

    /// Möbius action `(av+b)/(cv+d)` with `a/0 = ∞` and `∞ ↦ a/c`.
    pub fn act(&self, v: ProjPoint, f: &FieldCtx) -> ProjPoint {
        let [a, b, c, d] = self.0;
        match v {
            ProjPoint::Infinity => {
                if c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.div(a, c))
                }
            }
            ProjPoint::Finite(v) => {
                let den = f.add(f.mul(c, v), d);
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.div(f.add(f.mul(a, v), b), den))
                }
            }
        }
    }

    /// Image under a field embedding.
    pub fn embed(&self, emb: &EmbeddingMap) -> Pgl2 {
        Pgl2(self.0.map(|e| emb.apply(e)))
    }

    /// Pulls a canonical matrix back to the embedding source.
    pub fn descend(&self, emb: &EmbeddingMap) -> Result<Pgl2> {
        let mut out = [FieldElem::ZERO; 4];
        for (o, &e) in out.iter_mut().zip(&self.0) {
            *o = emb
                .preimage(e)
                .ok_or_else(|| Error::Violation(format!("matrix entry outside {}", emb.src())))?;
        }
        Ok(Pgl2(out))
    }

    /// Text form `a,b,c,d`.
    pub fn format(&self, f: &FieldCtx) -> String {
        self.0.iter().map(|&e| f.format_elem(e)).collect::<Vec<_>>().join(",")
    }

    /// Parses `a,b,c,d`, `[a,b,c,d]` or `[[a,b],[c,d]]`.
    pub fn parse(f: &FieldCtx, s: &str) -> Result<Pgl2> {
        use crate::encoding::{list_items, split_top_level};
        let mut parts = split_top_level(s)?;
        if parts.len() == 1 {
            parts = list_items(s)?;
        }
        if parts.len() == 2 {
            parts = parts.iter().map(|row| list_items(row)).collect::<Result<Vec<_>>>()?.concat();
        }
        let [a, b, c, d] = parts.as_slice() else {
            return invalid(format!("expected four matrix entries in {s:?}"));
        };
        Pgl2::new(f, [f.parse_elem(a)?, f.parse_elem(b)?, f.parse_elem(c)?, f.parse_elem(d)?])
    }
}

/// Every element of `PGL2(F_q)`, sorted.
pub fn pgl2_elements(f: &FieldCtx) -> Vec<Pgl2> {
    let mut out = Vec::with_capacity(((f.order() + 1) * f.order() * (f.order() - 1)) as usize);
    for c in f.units() {
        for d in f.elements() {
            out.push(Pgl2([FieldElem::ZERO, FieldElem::ONE, c, d]));
        }
    }
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                if d != f.mul(b, c) {
                    out.push(Pgl2([FieldElem::ONE, b, c, d]));
                }
            }
        }
    }
    out.sort();
    out
}

/// The element taking `(∞, 0, 1)` to the distinct points `(a, b, c)`.
pub fn three_point_map(f: &FieldCtx, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> Result<Pgl2> {
    use ProjPoint::{Finite, Infinity};
    if a == b || b == c || a == c {
        return invalid("three-point map needs distinct points");
    }
    let one = FieldElem::ONE;
    let zero = FieldElem::ZERO;
    let m = match (a, b, c) {
        (Finite(a), Finite(b), Finite(c)) => {
            [f.mul(a, f.sub(b, c)), f.mul(b, f.sub(c, a)), f.sub(b, c), f.sub(c, a)]
        }
        (Infinity, Finite(b), Finite(c)) => [f.sub(c, b), b, zero, one],
        (Finite(a), Infinity, Finite(c)) => [a, f.sub(c, a), one, zero],
        (Finite(a), Finite(b), Infinity) => [a, f.neg(b), one, f.neg(one)],
        _ => unreachable!("points are distinct"),
    };
    Pgl2::new(f, m)
}

/// Fixed points in `P¹(F_{q²})`, sorted; `ext` embeds `F_q` into `F_{q²}`.
pub fn fixed_points(g: &Pgl2, ext: &EmbeddingMap) -> Result<Vec<ProjPoint>> {
    if g.is_identity() {
        return invalid("the identity fixes every point");
    }
    let big = ext.dst();
    let [a, b, c, d] = g.embed(ext).entries();
    let mut pts = Vec::new();
    if c.is_zero() {
        pts.push(ProjPoint::Infinity);
        let diff = big.sub(d, a);
        if !diff.is_zero() {
            pts.push(ProjPoint::Finite(big.div(b, diff)));
        }
    } else {
        // c z² + (d − a) z − b = 0
        let quad = Poly::new(big, vec![big.neg(b), big.sub(d, a), c]);
        pts.extend(quad.roots()?.into_iter().map(ProjPoint::Finite));
    }
    pts.sort();
    Ok(pts)
}

/// The three conjugacy types of a non-identity element.
#[derive(Clone, Debug)]
pub enum DicksonForm {
    /// One rational fixed point; `γ = α (1 b; 0 1) α⁻¹`.
    CaseA { b: FieldElem, conjugator: Pgl2 },
    /// Two rational fixed points; `γ = α diag(a, 1) α⁻¹`.
    CaseB { a: FieldElem, conjugator: Pgl2 },
    /// Conjugate fixed points `λ, λ^q` in `F_{q²}`; `γ = C_λ diag(ζ, 1) C_λ⁻¹`
    /// with `ζ^{q+1} = 1`. `zeta`, `lambda` and `conjugator` live in `F_{q²}`.
    CaseC { zeta: FieldElem, lambda: FieldElem, conjugator: Pgl2 },
}

impl DicksonForm {
    /// `κ`: −1, 0 or 1 for two, one or zero rational fixed points.
    pub fn kappa(&self) -> i64 {
        match self {
            DicksonForm::CaseA { .. } => 0,
            DicksonForm::CaseB { .. } => -1,
            DicksonForm::CaseC { .. } => 1,
        }
    }
}

/// Classifies `γ ≠ 1` by its fixed points, with an explicit conjugator.
pub fn dickson_classify(g: &Pgl2, ext: &EmbeddingMap) -> Result<DicksonForm> {
    let f = ext.src();
    let big = ext.dst();
    let pts = fixed_points(g, ext)?;
    let rational: Vec<ProjPoint> = pts
        .iter()
        .map(|&v| match v {
            ProjPoint::Infinity => Some(ProjPoint::Infinity),
            ProjPoint::Finite(z) => ext.preimage(z).map(ProjPoint::Finite),
        })
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    let normal = |alpha: &Pgl2| g.conj(&alpha.inv(f), f).entries();
    match (pts.len(), rational.as_slice()) {
        (1, [z]) => {
            let alpha = match *z {
                ProjPoint::Infinity => Pgl2::IDENTITY,
                ProjPoint::Finite(z) => Pgl2::new(f, [z, FieldElem::ONE, FieldElem::ONE, FieldElem::ZERO])?,
            };
            let [a, b, c, d] = normal(&alpha);
            debug_assert!(c.is_zero() && a == d);
            Ok(DicksonForm::CaseA { b: f.div(b, a), conjugator: alpha })
        }
        (2, [z1, z2]) => {
            // send ∞ ↦ z_hi and 0 ↦ z_lo, with ∞ sorting last
            let alpha = match (*z2, *z1) {
                (ProjPoint::Infinity, ProjPoint::Finite(lo)) => Pgl2::new(f, [FieldElem::ONE, lo, FieldElem::ZERO, FieldElem::ONE])?,
                (ProjPoint::Finite(hi), ProjPoint::Finite(lo)) => Pgl2::new(f, [hi, lo, FieldElem::ONE, FieldElem::ONE])?,
                _ => unreachable!("sorted fixed points"),
            };
            let [a, _, _, d] = normal(&alpha);
            Ok(DicksonForm::CaseB { a: f.div(a, d), conjugator: alpha })
        }
        (2, _) => {
            let lambda = pts.iter().filter_map(|v| v.finite()).min().expect("finite conjugate pair");
            let cl = c_lambda(lambda, ext)?;
            let gb = g.embed(ext);
            let [a, _, _, d] = cl.inv(big).mul(&gb, big).mul(&cl, big).entries();
            Ok(DicksonForm::CaseC { zeta: big.div(a, d), lambda, conjugator: cl })
        }
        _ => invalid("a nonscalar matrix has one or two fixed points"),
    }
}

/// `C_λ = (λ −λ^q; 1 −1)` as an element of `PGL2(F_{q²})`.
pub fn c_lambda(lambda: FieldElem, ext: &EmbeddingMap) -> Result<Pgl2> {
    let big = ext.dst();
    if ext.contains(lambda) {
        return invalid("λ must lie outside F_q");
    }
    let lq = conj_q(lambda, ext);
    Pgl2::new(big, [lambda, big.neg(lq), FieldElem::ONE, big.neg(FieldElem::ONE)])
}

/// `λ^q` for `λ ∈ F_{q²}`.
pub fn conj_q(lambda: FieldElem, ext: &EmbeddingMap) -> FieldElem {
    ext.dst().frob(lambda, ext.src().n())
}

/// `C_λ diag(x, y) C_λ⁻¹`, pulled back to `F_q`.
fn frame_diag(x: FieldElem, y: FieldElem, lambda: FieldElem, ext: &EmbeddingMap) -> Result<Pgl2> {
    let big = ext.dst();
    let cl = c_lambda(lambda, ext)?;
    let m = mat_mul(big, &mat_mul(big, &cl.entries(), &[x, FieldElem::ZERO, FieldElem::ZERO, y]), &mat_adj(big, &cl.entries()));
    Pgl2::new(big, m)?.descend(ext)
}

/// `D_{δ,λ} = C_λ diag(δ^q, δ) C_λ⁻¹` for `δ, λ ∈ F_{q²} ∖ F_q`.
pub fn d_delta_lambda(delta: FieldElem, lambda: FieldElem, ext: &EmbeddingMap) -> Result<Pgl2> {
    if ext.contains(delta) {
        return invalid("δ must lie outside F_q");
    }
    frame_diag(conj_q(delta, ext), delta, lambda, ext)
}

/// `E_{ζ,λ} = C_λ diag(ζ, 1) C_λ⁻¹` for `ζ^{q+1} = 1`.
pub fn e_zeta_lambda(zeta: FieldElem, lambda: FieldElem, ext: &EmbeddingMap) -> Result<Pgl2> {
    let big = ext.dst();
    let q = ext.src().order();
    if zeta.is_zero() || big.pow(zeta, q as u128 + 1) != FieldElem::ONE {
        return invalid("ζ must satisfy ζ^(q+1) = 1");
    }
    frame_diag(zeta, FieldElem::ONE, lambda, ext)
}

/// `δ` (least discrete log against the primitive element) with `δ^{q−1} = ζ`.
pub fn delta_for_zeta(zeta: FieldElem, ext: &EmbeddingMap) -> Result<FieldElem> {
    let big = ext.dst();
    let q = ext.src().order();
    let g = big.primitive_element();
    let base = big.pow(g, q as u128 - 1);
    let k = big
        .dlog_small(base, zeta)?
        .ok_or_else(|| Error::Violation("ζ^(q+1) = 1 must be a (q−1)-th power".into()))?;
    Ok(big.pow(g, k as u128))
}

/// The canonically least element of `F_{q²} ∖ F_q`.
pub fn least_irrational(ext: &EmbeddingMap) -> FieldElem {
    ext.dst().elements().find(|&v| !ext.contains(v)).expect("proper extension")
}

/// `Z_γ = {α : αγ = γα}` in `PGL2(F_q)`.
pub fn centralizer(g: &Pgl2, f: &Arc<FieldCtx>) -> Result<Subgroup> {
    if g.is_identity() {
        return invalid("centralizer of the identity is the whole group");
    }
    let elems = pgl2_elements(f).into_iter().filter(|a| a.mul(g, f) == g.mul(a, f)).collect();
    Subgroup::from_elements(f, elems, crate::subgroup::GroupLabel::Custom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_of_order, make_field};

    fn m(f: &FieldCtx, e: [i64; 4]) -> Pgl2 {
        Pgl2::from_ints(f, e).unwrap()
    }

    #[test]
    fn action_examples() {
        let f5 = make_field(5, 1).unwrap();
        let beta = m(&f5, [1, -1, 1, 0]);
        assert_eq!(beta.act(ProjPoint::Finite(f5.from_int(2)), &f5), ProjPoint::Finite(f5.from_int(3)));
        let a = f5.from_int(3);
        let g = Pgl2::new(&f5, [a, f5.one(), f5.one(), f5.zero()]).unwrap();
        assert_eq!(g.act(ProjPoint::Infinity, &f5), ProjPoint::Finite(a));
        for v in f5.elements() {
            assert_eq!(Pgl2::IDENTITY.act(ProjPoint::Finite(v), &f5), ProjPoint::Finite(v));
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let f = field_of_order(4).unwrap();
        let all = pgl2_elements(&f);
        let pts: Vec<ProjPoint> = f.elements().map(ProjPoint::Finite).chain([ProjPoint::Infinity]).collect();
        for g in all.iter().step_by(7) {
            for h in all.iter().step_by(5) {
                for &v in &pts {
                    assert_eq!(g.mul(h, &f).act(v, &f), g.act(h.act(v, &f), &f));
                }
            }
        }
    }

    #[test]
    fn orders() {
        for q in [5u64, 7, 9, 8] {
            let f = field_of_order(q).unwrap();
            assert_eq!(m(&f, [1, 1, 0, 1]).order(&f), f.p());
            assert_eq!(m(&f, [1, -1, 1, 0]).order(&f), 3);
        }
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(m(&f5, [2, 0, 0, 1]).order(&f5), 4);
        assert_eq!(Pgl2::IDENTITY.order(&f5), 1);
    }

    #[test]
    fn iota_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(m(&f7, [1, 1, 0, 1]).iota(&f7), f7.from_int(4));
        assert_eq!(m(&f7, [1, 0, 0, -1]).iota(&f7), f7.zero());
        for z in f7.units().filter(|&z| z != f7.one()) {
            let expect = f7.div(f7.pow(f7.add(z, f7.one()), 2), z);
            assert_eq!(Pgl2::diag(&f7, z).unwrap().iota(&f7), expect);
        }
    }

    #[test]
    fn canonicalization_ignores_scalars() {
        for q in [2u64, 3, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            for g in pgl2_elements(&f) {
                for k in f.units() {
                    assert_eq!(Pgl2::new(&f, g.entries().map(|e| f.mul(e, k))).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn group_order_and_triple_transitivity() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            assert_eq!(pgl2_elements(&f).len() as u64, (q + 1) * q * (q - 1));
            let pts: Vec<ProjPoint> = f.elements().map(ProjPoint::Finite).chain([ProjPoint::Infinity]).collect();
            for &a in &pts {
                for &b in &pts {
                    for &c in &pts {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        let g = three_point_map(&f, a, b, c).unwrap();
                        assert_eq!(g.act(ProjPoint::Infinity, &f), a);
                        assert_eq!(g.act(ProjPoint::Finite(f.zero()), &f), b);
                        assert_eq!(g.act(ProjPoint::Finite(f.one()), &f), c);
                    }
                }
            }
        }
    }

    #[test]
    fn iota_and_order_properties() {
        for q in [3u64, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            let all = pgl2_elements(&f);
            for g in &all {
                if q <= 5 {
                    for h in &all {
                        assert_eq!(g.conj(h, &f).iota(&f), g.iota(&f));
                    }
                }
                if g.is_identity() {
                    continue;
                }
                assert_eq!(g.order(&f) == 2, g.iota(&f).is_zero());
                assert_eq!(g.order(&f) == f.p(), g.iota(&f) == f.from_int(4));
            }
        }
    }

    #[test]
    fn equal_nonzero_iota_means_conjugate() {
        for q in [3u64, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            let all = pgl2_elements(&f);
            let nontrivial: Vec<&Pgl2> = all.iter().filter(|g| !g.is_identity() && !g.iota(&f).is_zero()).collect();
            for g in &nontrivial {
                let class: std::collections::HashSet<Pgl2> = all.iter().map(|h| g.conj(h, &f)).collect();
                for h in &nontrivial {
                    if h.iota(&f) == g.iota(&f) {
                        assert!(class.contains(h));
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_points_examples() {
        let f5 = make_field(5, 1).unwrap();
        let e5 = f5.extension(2).unwrap();
        assert_eq!(fixed_points(&m(&f5, [1, 1, 0, 1]), &e5).unwrap(), vec![ProjPoint::Infinity]);
        assert_eq!(
            fixed_points(&m(&f5, [2, 0, 0, 1]), &e5).unwrap(),
            vec![ProjPoint::Finite(FieldElem::ZERO), ProjPoint::Infinity]
        );
        let f3 = make_field(3, 1).unwrap();
        let e3 = f3.extension(2).unwrap();
        let pts = fixed_points(&m(&f3, [0, -1, 1, 0]), &e3).unwrap();
        assert_eq!(pts.len(), 2);
        for p in pts {
            let z = p.finite().unwrap();
            assert!(!e3.contains(z));
            assert_eq!(e3.dst().mul(z, z), e3.dst().from_int(-1));
        }
        assert!(fixed_points(&Pgl2::IDENTITY, &e3).is_err());
    }

    #[test]
    fn dickson_examples() {
        let f5 = make_field(5, 1).unwrap();
        let e5 = f5.extension(2).unwrap();
        match dickson_classify(&m(&f5, [1, 1, 0, 1]), &e5).unwrap() {
            DicksonForm::CaseA { b, conjugator } => {
                assert_eq!(b, f5.one());
                assert!(conjugator.is_identity());
            }
            other => panic!("{other:?}"),
        }
        match dickson_classify(&m(&f5, [2, 0, 0, 1]), &e5).unwrap() {
            DicksonForm::CaseB { a, conjugator } => {
                assert_eq!(a, f5.from_int(2));
                assert!(conjugator.is_identity());
            }
            other => panic!("{other:?}"),
        }
        let f3 = make_field(3, 1).unwrap();
        let e3 = f3.extension(2).unwrap();
        match dickson_classify(&m(&f3, [0, -1, 1, 0]), &e3).unwrap() {
            DicksonForm::CaseC { zeta, lambda, .. } => {
                let big = e3.dst();
                assert_eq!(zeta, big.from_int(-1));
                let least_root = big.elements().find(|&v| big.mul(v, v) == big.from_int(-1)).unwrap();
                assert_eq!(lambda, least_root);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dickson_conjugators_reconstruct_every_element() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let f = field_of_order(q).unwrap();
            let ext = f.extension(2).unwrap();
            let big = ext.dst().clone();
            for g in pgl2_elements(&f).into_iter().filter(|g| !g.is_identity()) {
                let form = dickson_classify(&g, &ext).unwrap();
                let rebuilt = match &form {
                    DicksonForm::CaseA { b, conjugator } => Pgl2::translation(&f, *b).conj(conjugator, &f),
                    DicksonForm::CaseB { a, conjugator } => Pgl2::diag(&f, *a).unwrap().conj(conjugator, &f),
                    DicksonForm::CaseC { zeta, lambda, conjugator } => {
                        assert_eq!(big.pow(*zeta, q as u128 + 1), big.one());
                        assert_eq!(big.mult_order(*zeta).unwrap(), g.order(&f));
                        let e = Pgl2::diag(&big, *zeta).unwrap().conj(conjugator, &big).descend(&ext).unwrap();
                        assert_eq!(e, e_zeta_lambda(*zeta, *lambda, &ext).unwrap());
                        e
                    }
                };
                assert_eq!(rebuilt, g);
                let fixed = fixed_points(&g, &ext).unwrap();
                let rational = fixed.iter().filter(|p| p.finite().is_none_or(|z| ext.contains(z))).count();
                let expect = match rational {
                    2 => -1,
                    1 if fixed.len() == 1 => 0,
                    _ => 1,
                };
                assert_eq!(form.kappa(), expect);
            }
        }
    }


    #[test]
    fn e_and_d_constructions() {
        let f5 = make_field(5, 1).unwrap();
        let ext = f5.extension(2).unwrap();
        let big = ext.dst();
        let lambda = least_irrational(&ext);
        assert!(e_zeta_lambda(big.one(), lambda, &ext).unwrap().is_identity());
        let omega = big.primitive_cube_root().unwrap();
        let e = e_zeta_lambda(omega, lambda, &ext).unwrap();
        assert_eq!(e.order(&f5), 3);
        let fixed = fixed_points(&e, &ext).unwrap();
        assert_eq!(fixed, {
            let mut v = vec![ProjPoint::Finite(lambda), ProjPoint::Finite(conj_q(lambda, &ext))];
            v.sort();
            v
        });
        let delta = delta_for_zeta(omega, &ext).unwrap();
        assert_eq!(big.pow(delta, 4), omega);
        assert_eq!(d_delta_lambda(delta, lambda, &ext).unwrap(), e);
        assert!(e_zeta_lambda(big.from_int(2), lambda, &ext).is_err());
        assert!(c_lambda(big.one(), &ext).is_err());
    }

    #[test]
    fn centralizer_examples() {
        let f5 = make_field(5, 1).unwrap();
        let z = centralizer(&m(&f5, [1, 1, 0, 1]), &f5).unwrap();
        let expect: Vec<Pgl2> = f5.elements().map(|e| Pgl2::translation(&f5, e)).collect();
        assert_eq!(z.elements(), expect.as_slice());
        let z = centralizer(&m(&f5, [2, 0, 0, 1]), &f5).unwrap();
        assert_eq!(z.len(), 4);
        assert!(z.elements().iter().all(|g| { let [_, b, c, _] = g.entries(); b.is_zero() && c.is_zero() }));
        let ext = f5.extension(2).unwrap();
        let lambda = least_irrational(&ext);
        let omega = ext.dst().primitive_cube_root().unwrap();
        let e = e_zeta_lambda(omega, lambda, &ext).unwrap();
        let z = centralizer(&e, &f5).unwrap();
        let mut expect: Vec<Pgl2> = ext
            .dst()
            .units()
            .filter(|&x| ext.dst().pow(x, 6) == FieldElem::ONE)
            .map(|x| e_zeta_lambda(x, lambda, &ext).unwrap())
            .collect();
        expect.sort();
        assert_eq!(z.elements(), expect.as_slice());
    }

    #[test]
    fn centralizer_sizes_match_kappa() {
        for q in [3u64, 4, 5] {
            let f = field_of_order(q).unwrap();
            let ext = f.extension(2).unwrap();
            for g in pgl2_elements(&f).into_iter().filter(|g| !g.is_identity()).step_by(3) {
                let kappa = dickson_classify(&g, &ext).unwrap().kappa();
                // odd-q involutions also commute projectively with a swap of their fixed points
                let factor = if g.order(&f) == 2 && q % 2 == 1 { 2 } else { 1 };
                assert_eq!(centralizer(&g, &f).unwrap().len() as i64, factor * (q as i64 + kappa));
            }
        }
    }

    #[test]
    fn matrix_encoding_round_trip() {
        let f9 = field_of_order(9).unwrap();
        let g = Pgl2::new(&f9, [f9.one(), FieldElem::ZERO, f9.primitive_element(), f9.one()]).unwrap();
        assert_eq!(Pgl2::parse(&f9, &g.format(&f9)).unwrap(), g);
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(Pgl2::parse(&f7, "1,1,0,1").unwrap(), m(&f7, [1, 1, 0, 1]));
        assert!(Pgl2::parse(&f7, "1,1,1,1").is_err());
        assert!(Pgl2::parse(&f7, "1,1,0").is_err());
        assert_eq!(Pgl2::parse(&f7, "[[1,1],[0,1]]").unwrap(), m(&f7, [1, 1, 0, 1]));
        assert_eq!(Pgl2::parse(&f7, "[2,2,0,2]").unwrap(), m(&f7, [1, 1, 0, 1]));
        assert_eq!(Pgl2::parse(&f9, "[[[1,1],0],[0,1]]").unwrap(), Pgl2::parse(&f9, "[1,1],0,0,1").unwrap());
        assert!(Pgl2::parse(&f7, "[[1,1],[0]]").is_err());
    }
}
