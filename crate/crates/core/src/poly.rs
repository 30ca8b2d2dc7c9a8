//! Dense polynomials and reduced rational functions over a [`FieldCtx`].

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::ff::{brute_bound, EmbeddingMap, FieldCtx, FieldElem};

/// A point of the projective line over some field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Finite(FieldElem),
    Infinity,
}

impl ProjPoint {
    pub fn finite(self) -> Option<FieldElem> {
        match self {
            ProjPoint::Finite(v) => Some(v),
            ProjPoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        self == ProjPoint::Infinity
    }

    /// Image under a field embedding.
    pub fn embed(self, emb: &EmbeddingMap) -> ProjPoint {
        match self {
            ProjPoint::Finite(v) => ProjPoint::Finite(emb.apply(v)),
            ProjPoint::Infinity => ProjPoint::Infinity,
        }
    }

    /// Text form: `inf` or the element encoding.
    pub fn format(self, ctx: &FieldCtx) -> String {
        match self {
            ProjPoint::Finite(v) => ctx.format_elem(v),
            ProjPoint::Infinity => "inf".into(),
        }
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<ProjPoint> {
        match s.trim() {
            "inf" | "oo" | "infinity" => Ok(ProjPoint::Infinity),
            t => ctx.parse_elem(t).map(ProjPoint::Finite),
        }
    }
}

/// A polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if self.ctx.is_prime_field() { c.index().to_string() } else { self.ctx.format_elem(c) };
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c == FieldElem::ONE, i) {
                (_, 0) => coef,
                (true, _) => mono,
                (false, _) => format!("{coef}*{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn trim(v: &mut Vec<FieldElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    pub fn new(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FieldElem>) -> Poly {
        trim(&mut coeffs);
        Poly { ctx: ctx.clone(), coeffs }
    }

    /// Polynomial with prime-field integer coefficients, ascending.
    pub fn from_ints(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> Poly {
        Poly::new(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: FieldElem) -> Poly {
        Poly::new(ctx, vec![c])
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::constant(ctx, FieldElem::ONE)
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::monomial(ctx, FieldElem::ONE, 1)
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, c: FieldElem, k: usize) -> Poly {
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(ctx, coeffs)
    }

    /// `x - v`.
    pub fn linear(ctx: &Arc<FieldCtx>, v: FieldElem) -> Poly {
        Poly::new(ctx, vec![ctx.neg(v), FieldElem::ONE])
    }

    /// `prod (x - v)` over the given roots.
    pub fn from_roots(ctx: &Arc<FieldCtx>, roots: impl IntoIterator<Item = FieldElem>) -> Poly {
        let mut coeffs = vec![FieldElem::ONE];
        for v in roots {
            let nv = ctx.neg(v);
            coeffs.push(FieldElem::ZERO);
            for i in (0..coeffs.len()).rev() {
                let lower = if i > 0 { coeffs[i - 1] } else { FieldElem::ZERO };
                coeffs[i] = ctx.add(lower, ctx.mul(nv, coeffs[i]));
            }
        }
        Poly::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElem::ONE]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`; for size comparisons only.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FieldElem::ONE
    }

    fn check(&self, other: &Poly) {
        assert!(self.ctx.same_field(&other.ctx), "polynomials over {} and {} mixed", self.ctx, other.ctx);
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.ctx, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.ctx, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }

    pub fn scale(&self, k: FieldElem) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|&c| self.ctx.mul(c, k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let f = &*self.ctx;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out[i..].iter_mut().zip(&other.coeffs) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        Poly::new(&self.ctx, out)
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.ctx.inv(self.lc()))
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.ctx;
        let dm = divisor.coeffs.len() - 1;
        let inv = f.inv(divisor.lc());
        let mut r = self.coeffs.clone();
        if r.len() <= dm {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; r.len() - dm];
        for k in (dm..r.len()).rev() {
            let c = f.mul(r[k], inv);
            quot[k - dm] = c;
            if !c.is_zero() {
                for (j, &m) in divisor.coeffs[..dm].iter().enumerate() {
                    r[k - dm + j] = f.sub(r[k - dm + j], f.mul(c, m));
                }
            }
            r[k] = FieldElem::ZERO;
        }
        r.truncate(dm);
        Ok((Poly::new(&self.ctx, quot), Poly::new(&self.ctx, r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return invalid("inexact polynomial division");
        }
        Ok(q)
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: u128, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.ctx).rem(m)?;
        let mut base = self.rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.ctx;
        Poly::new(
            &self.ctx,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int((i as u64 % f.p()) as i64), c)).collect(),
        )
    }

    pub fn eval(&self, v: FieldElem) -> FieldElem {
        let f = &*self.ctx;
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, v), c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.check(inner);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.ctx), |acc, &c| acc.mul(inner).add(&Poly::constant(&self.ctx, c)))
    }

    /// Coefficients mapped into a larger field.
    pub fn embed(&self, emb: &EmbeddingMap) -> Poly {
        assert!(self.ctx.same_field(emb.src()), "embedding source mismatch");
        Poly::new(emb.dst(), self.coeffs.iter().map(|&c| emb.apply(c)).collect())
    }

    /// Coefficients pulled back to the embedding source; errors when some coefficient is outside it.
    pub fn descend(&self, emb: &EmbeddingMap) -> Result<Poly> {
        assert!(self.ctx.same_field(emb.dst()), "embedding target mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                emb.preimage(c)
                    .ok_or_else(|| Error::Violation(format!("coefficient outside {}", emb.src())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(emb.src(), coeffs))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                // a vanishing derivative means a p-th power
                !d.is_zero() && self.gcd(&d).is_one()
            }
        }
    }

    /// Ben-Or irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let q = self.ctx.order() as u128;
        let x = Poly::x(&self.ctx);
        let mut w = x.clone();
        for _ in 1..=d / 2 {
            w = w.pow_mod(q, self).expect("nonzero modulus");
            if !self.gcd(&w.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    /// `x^{q^d} mod self` where `q` is a power of the characteristic.
    pub fn frob_power_mod(&self, q: u64, d: u32) -> Result<Poly> {
        if self.degree().unwrap_or(0) == 0 {
            return invalid("modulus must be nonconstant");
        }
        self.ctx.log_p(q)?;
        let mut r = Poly::x(&self.ctx).rem(self)?;
        for _ in 0..d {
            r = r.pow_mod(q as u128, self)?;
        }
        Ok(r)
    }

    /// Distinct-degree factorization over the coefficient field: `(d, product of degree-d factors)`.
    pub fn ddf(&self) -> Result<Vec<(usize, Poly)>> {
        if !self.is_squarefree() {
            return invalid("ddf needs a squarefree polynomial");
        }
        let q = self.ctx.order() as u128;
        let x = Poly::x(&self.ctx);
        let mut f = self.monic();
        let mut w = x.clone();
        let mut parts = Vec::new();
        let mut i = 1;
        while f.deg() >= 2 * i {
            w = w.pow_mod(q, &f)?;
            let g = f.gcd(&w.sub(&x));
            if !g.is_one() {
                f = f.div_exact(&g)?;
                w = w.rem(&f)?;
                parts.push((i, g));
            }
            i += 1;
        }
        if f.deg() > 0 {
            parts.push((f.deg(), f));
        }
        Ok(parts)
    }

    /// All roots in the coefficient field, sorted.
    pub fn roots(&self) -> Result<Vec<FieldElem>> {
        if self.is_zero() {
            return invalid("the zero polynomial has every element as a root");
        }
        if self.deg() == 0 {
            return Ok(Vec::new());
        }
        let x = Poly::x(&self.ctx);
        let xq = x.pow_mod(self.ctx.order() as u128, self)?;
        let split = self.gcd(&xq.sub(&x));
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        split_roots(&split, &mut rng, &mut out);
        out.sort();
        Ok(out)
    }

    /// Roots lying in the target of an embedding of the coefficient field.
    pub fn roots_in(&self, emb: &EmbeddingMap) -> Result<Vec<FieldElem>> {
        self.embed(emb).roots()
    }

    /// Roots by exhaustive evaluation; bounded by [`brute_bound`].
    pub fn roots_by_scan(&self) -> Result<Vec<FieldElem>> {
        if self.ctx.order() > brute_bound() {
            return Err(Error::SearchBound(format!("scan of {} elements", self.ctx.order())));
        }
        Ok(self.ctx.elements().filter(|&v| self.eval(v).is_zero()).collect())
    }
}

fn split_roots(g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElem>) {
    let ctx = g.ctx.clone();
    match g.deg() {
        0 => {}
        1 => out.push(ctx.neg(ctx.div(g.coeff(0), g.coeff(1)))),
        d => loop {
            let a = FieldElem::from_random(&ctx, rng);
            let w = if ctx.p() == 2 {
                let ax = Poly::monomial(&ctx, a, 1).rem(g).expect("nonzero");
                let mut t = ax.clone();
                let mut acc = ax;
                for _ in 1..ctx.n() {
                    t = t.mul_mod(&t, g).expect("nonzero");
                    acc = acc.add(&t);
                }
                acc
            } else {
                let lin = Poly::new(&ctx, vec![a, FieldElem::ONE]);
                lin.pow_mod(((ctx.order() - 1) / 2) as u128, g).expect("nonzero").sub(&Poly::one(&ctx))
            };
            let h = g.gcd(&w);
            if h.deg() > 0 && h.deg() < d {
                let rest = g.div_exact(&h).expect("factor");
                split_roots(&h, rng, out);
                split_roots(&rest, rng, out);
                return;
            }
        },
    }
}

impl FieldElem {
    fn from_random(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
        ctx.elem(rng.gen_range(0..ctx.order())).expect("in range")
    }
}

/// A reduced rational function `num/den` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl RatFunc {
    /// Reduces `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        num.check(&den);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() || num.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        if num.is_zero() {
            den = Poly::one(den.ctx());
        }
        if !den.is_monic() {
            let k = den.ctx().inv(den.lc());
            num = num.scale(k);
            den = den.scale(k);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let den = Poly::one(p.ctx());
        RatFunc { num: p, den }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: FieldElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(ctx, c))
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> RatFunc {
        RatFunc::from_poly(Poly::x(ctx))
    }

    /// The Möbius map `(a x + b)/(c x + d)`.
    pub fn mobius(ctx: &Arc<FieldCtx>, [a, b, c, d]: [FieldElem; 4]) -> RatFunc {
        RatFunc::new(Poly::new(ctx, vec![b, a]), Poly::new(ctx, vec![d, c])).expect("nonsingular")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.num.ctx()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den)).expect("nonzero")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero")
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// `a * self + b`.
    pub fn affine(&self, a: FieldElem, b: FieldElem) -> RatFunc {
        let num = self.num.scale(a).add(&self.den.scale(b));
        RatFunc { num, den: self.den.clone() }
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let m = self.degree();
        let (nh, dh) = homogeneous_pair(&self.num, &self.den, m, &inner.num, &inner.den);
        RatFunc::new(nh, dh).expect("composition of reduced maps has a nonzero denominator")
    }

    /// Value at a point of the projective line over the coefficient field.
    pub fn eval_proj(&self, v: ProjPoint) -> ProjPoint {
        let f = self.ctx();
        match v {
            ProjPoint::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.deg());
                match dn {
                    Some(dn) if dn > dd => ProjPoint::Infinity,
                    Some(dn) if dn == dd => ProjPoint::Finite(f.div(self.num.lc(), self.den.lc())),
                    _ => ProjPoint::Finite(FieldElem::ZERO),
                }
            }
            ProjPoint::Finite(v) => {
                let dv = self.den.eval(v);
                if dv.is_zero() {
                    debug_assert!(!self.num.eval(v).is_zero(), "reduced functions have no 0/0 points");
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.div(self.num.eval(v), dv))
                }
            }
        }
    }

    /// Value at a point over the target of `emb`.
    pub fn eval_proj_in(&self, v: ProjPoint, emb: &EmbeddingMap) -> ProjPoint {
        if emb.is_identity() {
            return self.eval_proj(v);
        }
        self.embed(emb).eval_proj(v)
    }

    pub fn embed(&self, emb: &EmbeddingMap) -> RatFunc {
        RatFunc { num: self.num.embed(emb), den: self.den.embed(emb) }
    }

    pub fn descend(&self, emb: &EmbeddingMap) -> Result<RatFunc> {
        Ok(RatFunc { num: self.num.descend(emb)?, den: self.den.descend(emb)? })
    }
}

/// `(sum n_i f^i g^{m-i}, sum d_i f^i g^{m-i})`.
fn homogeneous_pair(num: &Poly, den: &Poly, m: usize, f: &Poly, g: &Poly) -> (Poly, Poly) {
    let ctx = num.ctx();
    let mut nh = Poly::constant(ctx, num.coeff(m));
    let mut dh = Poly::constant(ctx, den.coeff(m));
    let mut gp = Poly::one(ctx);
    for k in (0..m).rev() {
        gp = gp.mul(g);
        nh = nh.mul(f).add(&gp.scale(num.coeff(k)));
        dh = dh.mul(f).add(&gp.scale(den.coeff(k)));
    }
    (nh, dh)
}

/// The reduced rational function of bounded degrees through finite samples `(x_i, y_i)`.
///
/// Uses the first `num_deg + den_deg + 1` samples for reconstruction and the
/// rest as checks.
pub fn rat_interpolate(
    ctx: &Arc<FieldCtx>,
    samples: &[(ProjPoint, ProjPoint)],
    num_deg: usize,
    den_deg: usize,
) -> Result<RatFunc> {
    let pts = samples
        .iter()
        .map(|&(x, y)| match (x, y) {
            (ProjPoint::Finite(x), ProjPoint::Finite(y)) => Ok((x, y)),
            _ => invalid("interpolation samples must be finite"),
        })
        .collect::<Result<Vec<_>>>()?;
    let m = num_deg + den_deg + 1;
    if pts.len() < m + 1 {
        return invalid(format!("{} samples given, at least {} needed", pts.len(), m + 1));
    }
    let fit = &pts[..m];
    let mut xs: Vec<FieldElem> = fit.iter().map(|p| p.0).collect();
    xs.sort();
    xs.dedup();
    if xs.len() != m {
        return invalid("interpolation nodes must be distinct");
    }
    let interp = lagrange(ctx, fit)?;
    let modulus = Poly::from_roots(ctx, fit.iter().map(|p| p.0));
    // extended Euclid on (modulus, interp), stopping once the remainder fits num_deg
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
    while !r1.is_zero() && r1.deg() > num_deg {
        let (q, r) = r0.divmod(&r1)?;
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    if t1.is_zero() || t1.deg() > den_deg {
        return invalid("no rational function of the requested degrees fits the samples");
    }
    let out = RatFunc::new(r1, t1)?;
    for &(x, y) in pts.iter() {
        if out.eval_proj(ProjPoint::Finite(x)) != ProjPoint::Finite(y) {
            return invalid("interpolation samples are inconsistent");
        }
    }
    Ok(out)
}

/// Newton-form interpolation, expanded.
fn lagrange(ctx: &Arc<FieldCtx>, pts: &[(FieldElem, FieldElem)]) -> Result<Poly> {
    let f = &**ctx;
    let n = pts.len();
    let mut dd: Vec<FieldElem> = pts.iter().map(|p| p.1).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let denom = f.sub(pts[i].0, pts[i - j].0);
            dd[i] = f.mul(f.sub(dd[i], dd[i - 1]), f.try_inv(denom)?);
        }
    }
    let mut acc = Poly::constant(ctx, dd[n - 1]);
    for i in (0..n - 1).rev() {
        acc = acc.mul(&Poly::linear(ctx, pts[i].0)).add(&Poly::constant(ctx, dd[i]));
    }
    Ok(acc)
}
