//! `F_P`-additive polynomials over `F_q` and `F_P`-subspaces of `F_q`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, violation, Error, Result};
use crate::ff::{brute_bound, FieldCtx, FieldElem};
use crate::poly::Poly;
use crate::subgroup::subfield_of_order;

/// `log_p P` for a subfield order `P` of `ctx`, checking divisibility.
fn sub_degree(ctx: &FieldCtx, sub_order: u64) -> Result<u32> {
    let k = ctx.log_p(sub_order)?;
    if k == 0 || !ctx.n().is_multiple_of(k) {
        return invalid(format!("F_{sub_order} is not a subfield of {ctx}"));
    }
    Ok(k)
}

/// An `F_P`-subspace of `F_q`, stored with its full element set.
#[derive(Clone)]
pub struct Subspace {
    ambient: Arc<FieldCtx>,
    base_order: u64,
    basis: Vec<FieldElem>,
    elements: Vec<FieldElem>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.same_field(&other.ambient) && self.base_order == other.base_order && self.elements == other.elements
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} over F_{} in {})", self.dim(), self.base_order, self.ambient)
    }
}

impl Subspace {
    /// The span of linearly independent generators.
    pub fn new(ambient: &Arc<FieldCtx>, base_order: u64, basis: &[FieldElem]) -> Result<Subspace> {
        let s = Subspace::span(ambient, base_order, basis)?;
        if s.dim() != basis.len() {
            return invalid("basis vectors are linearly dependent");
        }
        Ok(s)
    }

    /// The span of arbitrary generators.
    pub fn span(ambient: &Arc<FieldCtx>, base_order: u64, gens: &[FieldElem]) -> Result<Subspace> {
        let scalars = scalars(ambient, base_order)?;
        let mut elements = vec![FieldElem::ZERO];
        for &g in gens {
            if elements.contains(&g) {
                continue;
            }
            if (elements.len() as u64).saturating_mul(base_order) > brute_bound() {
                return Err(Error::SearchBound("subspace too large to enumerate".into()));
            }
            elements = extend(ambient, &scalars, &elements, g);
        }
        Ok(Subspace::from_span_set(ambient, base_order, &scalars, elements))
    }

    /// The whole of `F_q`.
    pub fn full(ambient: &Arc<FieldCtx>, base_order: u64) -> Result<Subspace> {
        sub_degree(ambient, base_order)?;
        Subspace::span(ambient, base_order, &ambient.elements().collect::<Vec<_>>())
    }

    fn from_span_set(ambient: &Arc<FieldCtx>, base_order: u64, scalars: &[FieldElem], mut elements: Vec<FieldElem>) -> Subspace {
        elements.sort();
        // greedy canonical basis: least elements not yet spanned
        let mut basis = Vec::new();
        let mut spanned = vec![FieldElem::ZERO];
        for &e in &elements {
            if spanned.len() == elements.len() {
                break;
            }
            if !spanned.contains(&e) {
                basis.push(e);
                spanned = extend(ambient, scalars, &spanned, e);
            }
        }
        Subspace { ambient: ambient.clone(), base_order, basis, elements }
    }

    pub fn ambient(&self) -> &Arc<FieldCtx> {
        &self.ambient
    }

    pub fn base_order(&self) -> u64 {
        self.base_order
    }

    /// Canonical basis: greedily the least elements not yet spanned.
    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    /// All elements, sorted.
    pub fn elements(&self) -> &[FieldElem] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: FieldElem) -> bool {
        self.elements.binary_search(&v).is_ok()
    }
}

fn scalars(ambient: &Arc<FieldCtx>, base_order: u64) -> Result<Vec<FieldElem>> {
    let emb = subfield_of_order(ambient, base_order)?;
    Ok(emb.src().elements().map(|c| emb.apply(c)).collect())
}

fn extend(f: &FieldCtx, scalars: &[FieldElem], span: &[FieldElem], g: FieldElem) -> Vec<FieldElem> {
    let mut out = Vec::with_capacity(span.len() * scalars.len());
    for &c in scalars {
        let shift = f.mul(c, g);
        out.extend(span.iter().map(|&s| f.add(s, shift)));
    }
    out
}

/// Every `F_P`-subspace of `F_q`, sorted by dimension then element set.
pub fn all_subspaces(ambient: &Arc<FieldCtx>, base_order: u64) -> Result<Vec<Subspace>> {
    let scalars = scalars(ambient, base_order)?;
    let mut seen: HashSet<Vec<FieldElem>> = HashSet::new();
    let mut layer = vec![vec![FieldElem::ZERO]];
    seen.insert(layer[0].clone());
    let mut out = Vec::new();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for v in ambient.elements() {
                if s.binary_search(&v).is_ok() {
                    continue;
                }
                let mut t = extend(ambient, &scalars, s, v);
                t.sort();
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        for s in std::mem::replace(&mut layer, next) {
            out.push(Subspace::from_span_set(ambient, base_order, &scalars, s));
        }
        layer.sort();
    }
    Ok(out)
}

/// `Σ a_i x^{P^i}` over `F_q`, monic.
#[derive(Clone)]
pub struct AdditivePoly {
    ctx: Arc<FieldCtx>,
    base_order: u64,
    step: u32,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for AdditivePoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.base_order == other.base_order && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AdditivePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AdditivePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let mono = match i {
                    0 => "x".to_string(),
                    _ => format!("x^{}", self.base_order.pow(i as u32)),
                };
                if c == FieldElem::ONE {
                    mono
                } else {
                    format!("{}*{}", self.ctx.format_elem(c), mono)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl AdditivePoly {
    /// From coefficients `a_0, …, a_d` of `x^{P^i}`; `a_d` must be 1.
    pub fn new(ctx: &Arc<FieldCtx>, base_order: u64, mut coeffs: Vec<FieldElem>) -> Result<AdditivePoly> {
        let step = sub_degree(ctx, base_order)?;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.last() != Some(&FieldElem::ONE) {
            return invalid("additive polynomials here are monic");
        }
        Ok(AdditivePoly { ctx: ctx.clone(), base_order, step, coeffs })
    }

    /// `x^{P^k}`.
    pub fn monomial(ctx: &Arc<FieldCtx>, base_order: u64, k: usize) -> Result<AdditivePoly> {
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = FieldElem::ONE;
        AdditivePoly::new(ctx, base_order, coeffs)
    }

    /// `x^q − x`.
    pub fn frobenius_minus_identity(ctx: &Arc<FieldCtx>, base_order: u64) -> Result<AdditivePoly> {
        let e = (ctx.n() / sub_degree(ctx, base_order)?) as usize;
        let mut coeffs = vec![FieldElem::ZERO; e + 1];
        coeffs[0] = ctx.neg(FieldElem::ONE);
        coeffs[e] = FieldElem::ONE;
        AdditivePoly::new(ctx, base_order, coeffs)
    }

    /// Reads an additive polynomial off a dense one; fails on other exponents.
    pub fn from_poly(p: &Poly, base_order: u64) -> Result<AdditivePoly> {
        let ctx = p.ctx();
        let mut coeffs = Vec::new();
        let mut power = 1usize;
        for (i, &c) in p.coeffs().iter().enumerate() {
            if i == power {
                coeffs.push(c);
                power *= base_order as usize;
            } else if !c.is_zero() {
                return violation(format!("x^{i} is not a power of {base_order}"));
            }
        }
        AdditivePoly::new(ctx, base_order, coeffs)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn base_order(&self) -> u64 {
        self.base_order
    }

    /// Coefficients `a_i` of `x^{P^i}`.
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// `d` with leading term `x^{P^d}`.
    pub fn p_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `e` with `q = P^e`.
    pub fn field_p_degree(&self) -> usize {
        (self.ctx.n() / self.step) as usize
    }

    /// `v^{P^i}`.
    fn twist(&self, v: FieldElem, i: usize) -> FieldElem {
        let e = self.field_p_degree();
        self.ctx.frob(v, self.step * (i % e) as u32)
    }

    pub fn eval(&self, v: FieldElem) -> FieldElem {
        let f = &self.ctx;
        let mut acc = FieldElem::ZERO;
        let mut pw = v;
        for &a in &self.coeffs {
            acc = f.add(acc, f.mul(a, pw));
            pw = f.frob(pw, self.step);
        }
        acc
    }

    /// `self ∘ inner`, by the twisted product `Σ b_i a_j^{P^i} x^{P^{i+j}}`.
    pub fn compose(&self, inner: &AdditivePoly) -> AdditivePoly {
        assert!(self.ctx.same_field(&inner.ctx) && self.base_order == inner.base_order, "mixed additive contexts");
        let f = &self.ctx;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + inner.coeffs.len() - 1];
        for (i, &b) in self.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            for (j, &a) in inner.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(b, self.twist(a, i)));
            }
        }
        AdditivePoly::new(f, self.base_order, out).expect("monic composition")
    }

    /// The dense polynomial of degree `P^d`.
    pub fn to_poly(&self) -> Poly {
        let deg = self.base_order.pow(self.p_degree() as u32) as usize;
        let mut dense = vec![FieldElem::ZERO; deg + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            dense[self.base_order.pow(i as u32) as usize] = a;
        }
        Poly::new(&self.ctx, dense)
    }

    /// Roots in `F_q`, sorted, by exhaustive evaluation.
    pub fn kernel(&self) -> Result<Vec<FieldElem>> {
        if self.ctx.order() > brute_bound() {
            return Err(Error::SearchBound(format!("kernel scan of {}", self.ctx)));
        }
        Ok(self.ctx.elements().filter(|&v| self.eval(v).is_zero()).collect())
    }

    /// `L(F_q)` as a subspace.
    pub fn image_subspace(&self) -> Result<Subspace> {
        let full = Subspace::full(&self.ctx, self.base_order)?;
        let images: Vec<FieldElem> = full.basis().iter().map(|&v| self.eval(v)).collect();
        Subspace::span(&self.ctx, self.base_order, &images)
    }
}

/// `Q_W = ∏_{w ∈ W} (x − w)`, checked to be additive.
pub fn qw_from_subspace(w: &Subspace) -> Result<AdditivePoly> {
    let dense = Poly::from_roots(w.ambient(), w.elements().iter().copied());
    AdditivePoly::from_poly(&dense, w.base_order())
}

/// The verified duality between `W` and `Y = Q_W(F_q)`.
#[derive(Clone, Debug)]
pub struct ReciprocityPair {
    pub w: Subspace,
    pub y: Subspace,
    pub q_w: AdditivePoly,
    pub q_y: AdditivePoly,
}

/// Builds `Q_W`, `Y = Q_W(F_q)` and `Q_Y`, and checks that both composites
/// are `x^q − x` and that `Q_Y(F_q) = W`.
pub fn reciprocity_pair(w: &Subspace) -> Result<ReciprocityPair> {
    let q_w = qw_from_subspace(w)?;
    let y = q_w.image_subspace()?;
    let q_y = qw_from_subspace(&y)?;
    let target = AdditivePoly::frobenius_minus_identity(w.ambient(), w.base_order())?;
    if q_y.compose(&q_w) != target {
        return violation("Q_Y o Q_W != x^q - x");
    }
    if q_w.compose(&q_y) != target {
        return violation("Q_W o Q_Y != x^q - x");
    }
    if q_y.image_subspace()? != *w {
        return violation("Q_Y(F_q) != W");
    }
    if y.dim() + w.dim() != q_w.field_p_degree() {
        return violation("dim W + dim Y != [F_q : F_P]");
    }
    Ok(ReciprocityPair { w: w.clone(), y, q_w, q_y })
}

/// Solves `M ∘ L = x^q − x` for monic additive `M`; `Some(M)` iff `L`
/// splits in `F_q`. A found `M` is also checked against `L ∘ M = x^q − x`.
pub fn split_test(l: &AdditivePoly) -> Result<Option<AdditivePoly>> {
    let f = l.ctx();
    let a = l.coeffs();
    if a[0].is_zero() {
        return invalid("split test needs a nonzero coefficient of x");
    }
    let d = l.p_degree();
    let e = l.field_p_degree();
    if d > e {
        return Ok(None);
    }
    let m_deg = e - d;
    let mut b = vec![FieldElem::ZERO; m_deg + 1];
    b[m_deg] = FieldElem::ONE;
    // coefficient of x^{P^k} in M∘L is Σ_{i+j=k} b_i a_j^{P^i}; top-down, b_{k−d} is pinned
    let coeff_without = |b: &[FieldElem], k: usize, skip: Option<usize>| {
        let mut acc = FieldElem::ZERO;
        for i in k.saturating_sub(d)..=k.min(m_deg) {
            if Some(i) != skip {
                acc = f.add(acc, f.mul(b[i], l.twist(a[k - i], i)));
            }
        }
        acc
    };
    for k in (d..e).rev() {
        let i = k - d;
        b[i] = f.neg(coeff_without(&b, k, Some(i)));
    }
    for k in 0..d {
        let want = if k == 0 { f.neg(FieldElem::ONE) } else { FieldElem::ZERO };
        if coeff_without(&b, k, None) != want {
            return Ok(None);
        }
    }
    let m = AdditivePoly::new(f, l.base_order(), b)?;
    let target = AdditivePoly::frobenius_minus_identity(f, l.base_order())?;
    if m.compose(l) != target {
        return violation("solved M does not satisfy M o L = x^q - x");
    }
    if l.compose(&m) != target {
        return violation("L o M != x^q - x although M o L = x^q - x");
    }
    Ok(Some(m))
}

/// The companion-matrix criterion: `L` splits iff `C_L C_L^{(P)} ⋯ C_L^{(P^{e−1})} = I`.
pub fn matrix_criterion_oracle(l: &AdditivePoly) -> bool {
    let f = l.ctx();
    let d = l.p_degree();
    let e = l.field_p_degree();
    let companion = |shift: usize| -> Vec<Vec<FieldElem>> {
        let mut c = vec![vec![FieldElem::ZERO; d]; d];
        for (r, row) in c.iter_mut().enumerate() {
            if r > 0 {
                row[r - 1] = FieldElem::ONE;
            }
            row[d - 1] = f.neg(l.twist(l.coeffs()[r], shift));
        }
        c
    };
    let mut acc: Vec<Vec<FieldElem>> =
        (0..d).map(|r| (0..d).map(|c| if r == c { FieldElem::ONE } else { FieldElem::ZERO }).collect()).collect();
    for s in 0..e {
        let c = companion(s);
        acc = (0..d)
            .map(|r| (0..d).map(|col| (0..d).fold(FieldElem::ZERO, |t, k| f.add(t, f.mul(acc[r][k], c[k][col])))).collect())
            .collect();
    }
    acc.iter().enumerate().all(|(r, row)| row.iter().enumerate().all(|(c, &v)| v == if r == c { FieldElem::ONE } else { FieldElem::ZERO }))
}

/// Verdicts for `L = x^{P³} − b x^P − a x` over `F_{P⁷}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deg3Verdict {
    /// `P` even, `N(b) = 1` and `a = b^{−P⁴−P²}`.
    pub predicted: bool,
    pub split_test: bool,
    pub matrix_oracle: bool,
}

impl Deg3Verdict {
    pub fn agree(&self) -> bool {
        self.predicted == self.split_test && self.split_test == self.matrix_oracle
    }
}

pub fn analyze_deg3_special(ctx: &Arc<FieldCtx>, base_order: u64, a: FieldElem, b: FieldElem) -> Result<Deg3Verdict> {
    let step = sub_degree(ctx, base_order)?;
    if ctx.n() != 7 * step {
        return invalid(format!("expected F_(P^7) with P = {base_order}, got {ctx}"));
    }
    if a.is_zero() {
        return invalid("a must be nonzero");
    }
    let l = AdditivePoly::new(ctx, base_order, vec![ctx.neg(a), ctx.neg(b), FieldElem::ZERO, FieldElem::ONE])?;
    let big = base_order as u128;
    let predicted = base_order.is_multiple_of(2)
        && !b.is_zero()
        && ctx.norm_over(b, step)? == FieldElem::ONE
        && a == ctx.inv(ctx.pow(b, big.pow(4) + big.pow(2)));
    Ok(Deg3Verdict { predicted, split_test: split_test(&l)?.is_some(), matrix_oracle: matrix_criterion_oracle(&l) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_of_order;

    #[test]
    fn qw_examples() {
        let f9 = field_of_order(9).unwrap();
        let zero = Subspace::span(&f9, 3, &[]).unwrap();
        assert_eq!(qw_from_subspace(&zero).unwrap(), AdditivePoly::monomial(&f9, 3, 0).unwrap());
        let f3 = Subspace::new(&f9, 3, &[f9.one()]).unwrap();
        let q = qw_from_subspace(&f3).unwrap();
        assert_eq!(q.coeffs(), &[f9.from_int(-1), f9.one()]);
        for c in f9.units() {
            let w = Subspace::new(&f9, 3, &[c]).unwrap();
            assert_eq!(qw_from_subspace(&w).unwrap().coeffs(), &[f9.neg(f9.pow(c, 2)), f9.one()]);
        }
    }

    #[test]
    fn subspace_basics() {
        let f16 = field_of_order(16).unwrap();
        let g = f16.primitive_element();
        assert!(Subspace::new(&f16, 2, &[g, g]).is_err());
        let w = Subspace::new(&f16, 2, &[g, f16.one()]).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.basis(), &[f16.one(), g]);
        let w4 = Subspace::new(&f16, 4, &[g]).unwrap();
        assert_eq!(w4.len(), 4);
        assert_eq!(Subspace::full(&f16, 2).unwrap().dim(), 4);
        assert_eq!(Subspace::full(&f16, 4).unwrap().dim(), 2);
        assert!(Subspace::new(&f16, 8, &[g]).is_err());
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomial totals
        let cases = [(4u64, 2u64, 5usize), (8, 2, 16), (9, 3, 6), (16, 2, 67), (16, 4, 7), (27, 3, 28), (81, 3, 212), (81, 9, 12)];
        for (q, p, count) in cases {
            let f = field_of_order(q).unwrap();
            assert_eq!(all_subspaces(&f, p).unwrap().len(), count, "q={q} P={p}");
        }
    }

    #[test]
    fn image_examples() {
        let f9 = field_of_order(9).unwrap();
        let l = AdditivePoly::new(&f9, 3, vec![f9.from_int(-1), f9.one()]).unwrap();
        assert_eq!(l.image_subspace().unwrap().dim(), 1);
        assert_eq!(AdditivePoly::monomial(&f9, 3, 0).unwrap().image_subspace().unwrap().dim(), 2);
        assert_eq!(AdditivePoly::frobenius_minus_identity(&f9, 3).unwrap().image_subspace().unwrap().dim(), 0);
    }

    #[test]
    fn reciprocity_examples() {
        let f9 = field_of_order(9).unwrap();
        let w = Subspace::new(&f9, 3, &[f9.one()]).unwrap();
        let pair = reciprocity_pair(&w).unwrap();
        // Y = {y : y² = −1} ∪ {0}, so Q_Y = x³ + x
        assert_eq!(pair.q_y.coeffs(), &[f9.one(), f9.one()]);
        assert_eq!(pair.y.elements().iter().filter(|&&y| f9.mul(y, y) == f9.from_int(-1)).count(), 2);
        let pair = reciprocity_pair(&Subspace::span(&f9, 3, &[]).unwrap()).unwrap();
        assert_eq!(pair.q_y, AdditivePoly::frobenius_minus_identity(&f9, 3).unwrap());
        let pair = reciprocity_pair(&Subspace::full(&f9, 3).unwrap()).unwrap();
        assert_eq!(pair.q_y, AdditivePoly::monomial(&f9, 3, 0).unwrap());
    }

    #[test]
    fn twisted_composition_matches_dense() {
        let f16 = field_of_order(16).unwrap();
        let g = f16.primitive_element();
        let l = AdditivePoly::new(&f16, 2, vec![g, f16.one(), f16.one()]).unwrap();
        let m = AdditivePoly::new(&f16, 2, vec![f16.pow(g, 3), f16.one()]).unwrap();
        assert_eq!(m.compose(&l).to_poly(), m.to_poly().compose(&l.to_poly()));
        assert_eq!(l.compose(&m).to_poly(), l.to_poly().compose(&m.to_poly()));
        for v in f16.elements() {
            assert_eq!(l.eval(v), l.to_poly().eval(v));
        }
    }

    #[test]
    fn split_examples() {
        let f9 = field_of_order(9).unwrap();
        let l = AdditivePoly::new(&f9, 3, vec![f9.from_int(-1), f9.one()]).unwrap();
        let m = split_test(&l).unwrap().unwrap();
        assert_eq!(m.coeffs(), &[f9.one(), f9.one()]);
        let f4 = field_of_order(4).unwrap();
        let g = f4.primitive_element();
        let l = AdditivePoly::new(&f4, 2, vec![g, f4.one()]).unwrap();
        let m = split_test(&l).unwrap().unwrap();
        assert_eq!(m.compose(&l), AdditivePoly::frobenius_minus_identity(&f4, 2).unwrap());
        let g9 = f9.primitive_element();
        let l = AdditivePoly::new(&f9, 3, vec![f9.neg(g9), f9.one()]).unwrap();
        assert!(split_test(&l).unwrap().is_none());
        assert!(!matrix_criterion_oracle(&l));
        let zero_a0 = AdditivePoly::new(&f9, 3, vec![FieldElem::ZERO, f9.one()]).unwrap();
        assert!(split_test(&zero_a0).is_err());
    }

    #[test]
    fn split_test_agrees_with_brute_and_matrix_oracle() {
        for (q, p) in [(4u64, 2u64), (8, 2), (9, 3), (16, 2), (16, 4), (27, 3)] {
            let f = field_of_order(q).unwrap();
            let e = (f.n() / f.log_p(p).unwrap()) as usize;
            for d in 1..=e.min(2) {
                let total = (q as usize).pow(d as u32);
                for idx in 0..total {
                    let mut coeffs: Vec<FieldElem> =
                        (0..d).map(|i| f.elem((idx / (q as usize).pow(i as u32)) as u64 % q).unwrap()).collect();
                    if coeffs[0].is_zero() {
                        continue;
                    }
                    coeffs.push(f.one());
                    let l = AdditivePoly::new(&f, p, coeffs).unwrap();
                    let brute = l.kernel().unwrap().len() as u64 == p.pow(d as u32);
                    let solved = split_test(&l).unwrap();
                    assert_eq!(solved.is_some(), brute, "{l} over F_{q}");
                    assert_eq!(matrix_criterion_oracle(&l), brute, "{l} over F_{q}");
                    if let Some(m) = solved {
                        let y = l.image_subspace().unwrap();
                        assert_eq!(m, qw_from_subspace(&y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn degree_three_family_over_f128() {
        let f = field_of_order(128).unwrap();
        let mut splits = 0;
        for b in f.units() {
            let a = f.inv(f.pow(b, 20));
            let v = analyze_deg3_special(&f, 2, a, b).unwrap();
            assert!(v.agree(), "b={b:?}");
            if v.split_test {
                splits += 1;
                let l = AdditivePoly::new(&f, 2, vec![a, b, FieldElem::ZERO, f.one()]).unwrap();
                assert_eq!(l.kernel().unwrap().len(), 8);
            }
            let other = f.add(a, f.one());
            if !other.is_zero() {
                let v = analyze_deg3_special(&f, 2, other, b).unwrap();
                assert!(v.agree() && !v.split_test);
            }
        }
        assert!(splits > 0);
        assert!(analyze_deg3_special(&field_of_order(64).unwrap(), 2, f.one(), f.one()).is_err());
    }

    #[test]
    fn codimension_one_structure() {
        for (q, p) in [(9u64, 3u64), (16, 2), (27, 3), (81, 3), (64, 4)] {
            let f = field_of_order(q).unwrap();
            let k = f.log_p(p).unwrap();
            let e = f.n() / k;
            for w in all_subspaces(&f, p).unwrap().into_iter().filter(|w| w.dim() == 1) {
                let pair = reciprocity_pair(&w).unwrap();
                assert_eq!(pair.y.dim() as u32, e - 1);
                let c = w.basis()[0];
                // Q_Y(τ) = c·Tr(τ/c^P)
                for tau in f.elements() {
                    let tr = f.trace_over(f.div(tau, f.pow(c, p as u128)), k).unwrap();
                    assert_eq!(pair.q_y.eval(tau), f.mul(c, tr));
                }
                let a0 = pair.y.elements().iter().filter(|y| !y.is_zero()).fold(f.one(), |acc, &y| f.mul(acc, y));
                assert_eq!(pair.q_w.coeffs()[0], f.neg(f.pow(c, p as u128 - 1)));
                assert_eq!(pair.q_y.coeffs()[0], a0);
            }
        }
    }
}
