//! Finite fields `F_{p^n}` with a canonical modulus.
//!
//! Elements are stored as the integer `c0 + c1 p + ... + c_{n-1} p^{n-1}` of
//! their coefficient vector over the canonical polynomial basis, so the
//! derived ordering on [`FieldElem`] is the canonical element ordering.
//! Arithmetic always goes through the owning [`FieldCtx`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{invalid, Error, Result};
use crate::poly::Poly;

/// Default upper bound on `p^n`.
pub const DEFAULT_ORDER_BOUND: u64 = 1 << 40;
/// Fields up to this order get log/antilog/Zech tables.
const TABLE_LIMIT: u64 = 1 << 23;
/// Embeddings from sources up to this order are tabulated in both directions.
const EMBED_TABLE_LIMIT: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

/// Cap for exhaustive scans over field elements (`ARTIN_BRUTE_BOUND` overrides).
pub fn brute_bound() -> u64 {
    env_bound().unwrap_or(10_000_000)
}

/// Cap on the subgroup order for brute-force discrete logarithms.
pub fn dlog_bound() -> u64 {
    env_bound().unwrap_or(1_000_000)
}

fn env_bound() -> Option<u64> {
    std::env::var("ARTIN_BRUTE_BOUND").ok()?.trim().parse().ok()
}

/// A field element, meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The packed coefficient index.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

enum Arith {
    Prime,
    Table(Tables),
    Slow,
}

type ExtensionEntry = (Arc<FieldCtx>, Arc<EmbedData>);

/// The field `F_{p^n}`.
pub struct FieldCtx {
    p: u64,
    n: u32,
    order: u64,
    modulus: Vec<u64>,
    arith: Arith,
    unit_primes: Vec<u64>,
    primitive: FieldElem,
    extensions: Mutex<BTreeMap<u32, ExtensionEntry>>,
    subfields: Mutex<BTreeMap<u32, Arc<EmbedData>>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({}^{})", self.p, self.n)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.n)
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13] {
        if m.is_multiple_of(d) {
            return m == d;
        }
    }
    let mut d = 17u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Writes `q` as `p^n`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, n)] => Some((*p, *n)),
        _ => None,
    }
}

/// The canonical field of order `p^n` with the default order bound.
pub fn make_field(p: u64, n: u32) -> Result<Arc<FieldCtx>> {
    make_field_bounded(p, n, DEFAULT_ORDER_BOUND)
}

/// The canonical field of order `q` (a prime power).
pub fn field_of_order(q: u64) -> Result<Arc<FieldCtx>> {
    let (p, n) = prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
    make_field(p, n)
}

pub fn make_field_bounded(p: u64, n: u32, bound: u64) -> Result<Arc<FieldCtx>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return invalid("extension degree must be at least 1");
    }
    let order = p
        .checked_pow(n)
        .filter(|&o| o <= bound)
        .ok_or(Error::OrderBound { p, n, bound })?;
    if n == 1 {
        return Ok(Arc::new(FieldCtx::assemble(p, 1, order, vec![0, 1])));
    }
    let modulus = canonical_modulus(p, n);
    Ok(Arc::new(FieldCtx::assemble(p, n, order, modulus)))
}

/// Least monic irreducible of degree `n` over `F_p`, constant term varying fastest.
fn canonical_modulus(p: u64, n: u32) -> Vec<u64> {
    let fp = Arc::new(FieldCtx::assemble(p, 1, p, vec![0, 1]));
    let count = p.pow(n);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut rest = idx;
        for _ in 0..n {
            coeffs.push(rest % p);
            rest /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let poly = Poly::new(&fp, coeffs.iter().map(|&c| FieldElem(c)).collect());
        if poly.is_irreducible() {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    fn assemble(p: u64, n: u32, order: u64, modulus: Vec<u64>) -> FieldCtx {
        let mut ctx = FieldCtx {
            p,
            n,
            order,
            modulus,
            arith: if n == 1 { Arith::Prime } else { Arith::Slow },
            unit_primes: factorize(order - 1).into_iter().map(|(r, _)| r).collect(),
            primitive: FieldElem::ONE,
            extensions: Mutex::new(BTreeMap::new()),
            subfields: Mutex::new(BTreeMap::new()),
        };
        ctx.primitive = ctx.find_primitive();
        if n > 1 && order <= TABLE_LIMIT {
            ctx.arith = Arith::Table(ctx.build_tables());
        }
        ctx
    }

    fn find_primitive(&self) -> FieldElem {
        if self.order == 2 {
            return FieldElem::ONE;
        }
        (1..self.order)
            .map(FieldElem)
            .find(|&g| self.unit_primes.iter().all(|&r| self.pow(g, ((self.order - 1) / r) as u128) != FieldElem::ONE))
            .expect("the unit group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q1 = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * q1];
        let mut log = vec![NO_LOG; self.order as usize];
        let mut cur = FieldElem::ONE;
        for i in 0..q1 {
            exp[i] = cur.0 as u32;
            exp[i + q1] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.slow_mul(cur, self.primitive);
        }
        let mut zech = vec![NO_LOG; q1];
        for (d, z) in zech.iter_mut().enumerate() {
            let v = exp[d] as u64;
            let c0 = v % self.p;
            let w = v - c0 + (c0 + 1) % self.p;
            if w != 0 {
                *z = log[w as usize];
            }
        }
        Tables { exp, log, zech }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Same characteristic and degree; such contexts share one representation.
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.n == other.n
    }

    pub fn is_prime_field(&self) -> bool {
        self.n == 1
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.p as i64) as u64)
    }

    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index < self.order {
            Ok(FieldElem(index))
        } else {
            invalid(format!("element index {index} outside a field of order {}", self.order))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(FieldElem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.order).map(FieldElem)
    }

    /// The canonically least generator of the unit group.
    pub fn primitive_element(&self) -> FieldElem {
        self.primitive
    }

    pub fn digits(&self, a: FieldElem) -> Vec<u64> {
        let mut rest = a.0;
        (0..self.n)
            .map(|_| {
                let d = rest % self.p;
                rest /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<FieldElem> {
        if digits.len() > self.n as usize {
            return invalid(format!("{} coefficients for a degree-{} field", digits.len(), self.n));
        }
        let mut idx = 0u64;
        for &d in digits.iter().rev() {
            idx = idx * self.p + d % self.p;
        }
        Ok(FieldElem(idx))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.arith {
            Arith::Prime => {
                let s = a.0 + b.0;
                FieldElem(if s >= self.p { s - self.p } else { s })
            }
            _ if self.p == 2 => FieldElem(a.0 ^ b.0),
            Arith::Table(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let q1 = (self.order - 1) as u32;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + q1 - la };
                match t.zech[d as usize] {
                    NO_LOG => FieldElem::ZERO,
                    z => FieldElem(t.exp[(la + z) as usize] as u64),
                }
            }
            Arith::Slow => self.digitwise(a, b, |x, y| (x + y) % self.p),
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        match &self.arith {
            Arith::Prime => FieldElem(self.p - a.0),
            Arith::Table(t) => {
                let half = ((self.order - 1) / 2) as u32;
                FieldElem(t.exp[(t.log[a.0 as usize] + half) as usize] as u64)
            }
            Arith::Slow => self.digitwise(a, FieldElem::ZERO, |x, _| (self.p - x) % self.p),
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.arith {
            Arith::Prime => FieldElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 }),
            _ => self.add(a, self.neg(b)),
        }
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        match &self.arith {
            Arith::Prime => FieldElem(if self.p < (1 << 32) {
                a.0 * b.0 % self.p
            } else {
                (a.0 as u128 * b.0 as u128 % self.p as u128) as u64
            }),
            Arith::Table(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            Arith::Slow => self.slow_mul(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn try_inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.arith {
            Arith::Prime => {
                let (mut r0, mut r1) = (self.p as i128, a.0 as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let k = r0 / r1;
                    (r0, r1) = (r1, r0 - k * r1);
                    (t0, t1) = (t1, t0 - k * t1);
                }
                FieldElem(t0.rem_euclid(self.p as i128) as u64)
            }
            Arith::Table(t) => {
                let q1 = (self.order - 1) as u32;
                let l = t.log[a.0 as usize];
                FieldElem(t.exp[if l == 0 { 0 } else { (q1 - l) as usize }] as u64)
            }
            Arith::Slow => self.pow(a, (self.order - 2) as u128),
        })
    }

    /// `a / b`; panics when `b` is zero.
    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElem, e: u128) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Arith::Table(t) = &self.arith {
            let q1 = (self.order - 1) as u128;
            let l = t.log[a.0 as usize] as u128 * (e % q1) % q1;
            return FieldElem(t.exp[l as usize] as u64);
        }
        let mut base = a;
        let mut e = e;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^{p^k}`.
    pub fn frob(&self, a: FieldElem, k: u32) -> FieldElem {
        let k = k % self.n;
        if k == 0 || self.n == 1 {
            return a;
        }
        self.pow(a, (self.p as u128).pow(k))
    }

    /// `a^{q^e}` where `q` is a power of the characteristic.
    pub fn frobenius(&self, a: FieldElem, base_order: u64, e: u32) -> Result<FieldElem> {
        let k = self.log_p(base_order)?;
        Ok(self.frob(a, ((k as u64 * e as u64) % self.n as u64) as u32))
    }

    /// The exponent `k` with `p^k = q`.
    pub fn log_p(&self, q: u64) -> Result<u32> {
        let mut k = 0;
        let mut m = 1u64;
        while m < q {
            m = m.saturating_mul(self.p);
            k += 1;
        }
        if m == q && q > 1 {
            Ok(k)
        } else {
            invalid(format!("{q} is not a power of {}", self.p))
        }
    }

    /// `sum_{i < n/k} a^{p^{k i}}`: the trace down to `F_{p^k}`, as an element of this field.
    pub fn trace_over(&self, a: FieldElem, k: u32) -> Result<FieldElem> {
        self.check_subdegree(k)?;
        let mut acc = FieldElem::ZERO;
        let mut cur = a;
        for _ in 0..self.n / k {
            acc = self.add(acc, cur);
            cur = self.frob(cur, k);
        }
        Ok(acc)
    }

    /// `a^{(p^n - 1)/(p^k - 1)}`: the norm down to `F_{p^k}`, as an element of this field.
    pub fn norm_over(&self, a: FieldElem, k: u32) -> Result<FieldElem> {
        self.check_subdegree(k)?;
        let sub = self.p.pow(k);
        Ok(self.pow(a, ((self.order - 1) / (sub - 1)) as u128))
    }

    fn check_subdegree(&self, k: u32) -> Result<()> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return invalid(format!("F_{}^{} is not a subfield of {}", self.p, k, self));
        }
        Ok(())
    }

    /// Whether `a` lies in the subfield of order `p^k`.
    pub fn in_subfield(&self, a: FieldElem, k: u32) -> bool {
        self.frob(a, k) == a
    }

    /// Euler's criterion; defined for odd characteristic only.
    pub fn quadratic_character(&self, a: FieldElem) -> Result<i8> {
        if self.p == 2 {
            return invalid("quadratic character needs odd characteristic");
        }
        Ok(self.chi(a))
    }

    /// Quadratic character for odd `q`; 1 on every unit when `q` is even.
    pub(crate) fn chi(&self, a: FieldElem) -> i8 {
        if a.0 == 0 {
            0
        } else if self.p == 2 || self.pow(a, ((self.order - 1) / 2) as u128) == FieldElem::ONE {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        self.chi(a) >= 0
    }

    /// The canonically least square root, if any.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return Some(a);
        }
        if self.p == 2 {
            return Some(self.pow(a, (self.order / 2) as u128));
        }
        if !self.is_square(a) {
            return None;
        }
        let q1 = self.order - 1;
        let root = if let Arith::Table(t) = &self.arith {
            FieldElem(t.exp[(t.log[a.0 as usize] / 2) as usize] as u64)
        } else {
            // Tonelli-Shanks.
            let s = q1.trailing_zeros();
            let odd = q1 >> s;
            let z = self.units().find(|&z| !self.is_square(z)).expect("odd fields have nonsquares");
            let mut m = s;
            let mut c = self.pow(z, odd as u128);
            let mut t = self.pow(a, odd as u128);
            let mut r = self.pow(a, (odd as u128).div_ceil(2));
            while t != FieldElem::ONE {
                let mut i = 0;
                let mut tt = t;
                while tt != FieldElem::ONE {
                    tt = self.mul(tt, tt);
                    i += 1;
                }
                let b = self.pow(c, 1u128 << (m - i - 1));
                m = i;
                c = self.mul(b, b);
                t = self.mul(t, c);
                r = self.mul(r, b);
            }
            r
        };
        Some(root.min(self.neg(root)))
    }

    /// The canonically least nonsquare (odd `q`).
    pub fn least_nonsquare(&self) -> Result<FieldElem> {
        if self.p == 2 {
            return invalid("every element is a square in characteristic 2");
        }
        Ok(self.units().find(|&u| !self.is_square(u)).expect("odd fields have nonsquares"))
    }

    /// Multiplicative order of a unit.
    pub fn mult_order(&self, a: FieldElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order - 1;
        for &r in &self.unit_primes {
            while ord.is_multiple_of(r) && self.pow(a, (ord / r) as u128) == FieldElem::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// The `n`-th roots of unity in this field, sorted; requires `n | q - 1`.
    pub fn nth_roots_of_unity(&self, n: u64) -> Result<Vec<FieldElem>> {
        if n == 0 || !(self.order - 1).is_multiple_of(n) {
            return invalid(format!("{n} does not divide {}", self.order - 1));
        }
        let step = self.pow(self.primitive, ((self.order - 1) / n) as u128);
        let mut out: Vec<FieldElem> = std::iter::successors(Some(FieldElem::ONE), |&z| Some(self.mul(z, step)))
            .take(n as usize)
            .collect();
        out.sort();
        Ok(out)
    }

    /// The canonically least element of exact multiplicative order `n`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldElem> {
        let roots = self.nth_roots_of_unity(n)?;
        Ok(*roots
            .iter()
            .find(|&&z| self.mult_order(z).ok() == Some(n))
            .expect("cyclic groups have generators"))
    }

    /// The least primitive cube root of unity; needs `3 | q - 1`.
    pub fn primitive_cube_root(&self) -> Result<FieldElem> {
        self.primitive_root_of_unity(3)
    }

    /// Least `k` with `base^k = target`, scanning at most `ord(base)` powers.
    pub fn dlog_small(&self, base: FieldElem, target: FieldElem) -> Result<Option<u64>> {
        let ord = self.mult_order(base)?;
        if ord > dlog_bound() {
            return Err(Error::SearchBound(format!("discrete log in a subgroup of order {ord}")));
        }
        let mut cur = FieldElem::ONE;
        for k in 0..ord {
            if cur == target {
                return Ok(Some(k));
            }
            cur = self.mul(cur, base);
        }
        Ok(None)
    }

    /// Text encoding `[c0,c1,...]`.
    pub fn format_elem(&self, a: FieldElem) -> String {
        let digits: Vec<String> = self.digits(a).iter().map(u64::to_string).collect();
        format!("[{}]", digits.join(","))
    }

    /// Parses `[c0,c1,...]` (missing high coefficients are zero) or a bare integer.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let body = match s.strip_prefix('[') {
            Some(rest) => rest
                .strip_suffix(']')
                .ok_or_else(|| Error::Invalid(format!("unbalanced brackets in {s:?}")))?,
            None => s,
        };
        if body.trim().is_empty() {
            return Ok(FieldElem::ZERO);
        }
        let coeffs = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map(|v| v.rem_euclid(self.p as i64) as u64)
                    .map_err(|_| Error::Invalid(format!("bad coefficient {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        self.from_digits(&coeffs)
    }

    fn digitwise(&self, a: FieldElem, b: FieldElem, op: impl Fn(u64, u64) -> u64) -> FieldElem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElem(out)
    }

    fn slow_mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let n = self.n as usize;
        if self.p == 2 {
            let mut acc = 0u128;
            for i in 0..n {
                if (b.0 >> i) & 1 == 1 {
                    acc ^= (a.0 as u128) << i;
                }
            }
            let m: u128 = self.modulus.iter().enumerate().map(|(i, &c)| (c as u128) << i).sum();
            for k in (n..2 * n).rev() {
                if (acc >> k) & 1 == 1 {
                    acc ^= m << (k - n);
                }
            }
            return FieldElem(acc as u64);
        }
        let p = self.p as u128;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &x) in da.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in db.iter().enumerate().filter(|(_, &y)| y != 0) {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c != 0 {
                for (j, &m) in self.modulus[..n].iter().enumerate() {
                    prod[k - n + j] = (prod[k - n + j] + (p - c) * m as u128) % p;
                }
            }
        }
        let digits: Vec<u64> = prod[..n].iter().map(|&c| c as u64).collect();
        self.from_digits(&digits).expect("n digits")
    }

    /// `F_{q^t}` together with the canonical embedding of this field into it.
    pub fn extension(self: &Arc<Self>, t: u32) -> Result<EmbeddingMap> {
        if t == 0 {
            return invalid("extension degree must be positive");
        }
        if t == 1 {
            return Ok(EmbeddingMap::identity(self));
        }
        let cached = self.extensions.lock().expect("poisoned").get(&t).cloned();
        let (dst, data) = match cached {
            Some(entry) => entry,
            None => {
                let degree = self
                    .n
                    .checked_mul(t)
                    .ok_or(Error::OrderBound { p: self.p, n: u32::MAX, bound: DEFAULT_ORDER_BOUND })?;
                let dst = make_field(self.p, degree)?;
                let data = Arc::new(EmbedData::compute(self, &dst)?);
                self.extensions.lock().expect("poisoned").insert(t, (dst.clone(), data.clone()));
                (dst, data)
            }
        };
        Ok(EmbeddingMap { src: self.clone(), dst, data })
    }

    /// The subfield `F_{p^k}` and its canonical embedding into this field.
    pub fn subfield(self: &Arc<Self>, k: u32) -> Result<EmbeddingMap> {
        self.check_subdegree(k)?;
        if k == self.n {
            return Ok(EmbeddingMap::identity(self));
        }
        let src = make_field(self.p, k)?;
        let cached = self.subfields.lock().expect("poisoned").get(&k).cloned();
        let data = match cached {
            Some(d) => d,
            None => {
                let d = Arc::new(EmbedData::compute(&src, self)?);
                self.subfields.lock().expect("poisoned").insert(k, d.clone());
                d
            }
        };
        Ok(EmbeddingMap { src, dst: self.clone(), data })
    }

    /// Trace onto a subfield, returned as an element of that subfield.
    pub fn trace_to(self: &Arc<Self>, a: FieldElem, sub: &FieldCtx) -> Result<FieldElem> {
        let t = self.trace_over(a, sub.n)?;
        self.descend_to(t, sub)
    }

    /// Norm onto a subfield, returned as an element of that subfield.
    pub fn norm_to(self: &Arc<Self>, a: FieldElem, sub: &FieldCtx) -> Result<FieldElem> {
        let t = self.norm_over(a, sub.n)?;
        self.descend_to(t, sub)
    }

    fn descend_to(self: &Arc<Self>, a: FieldElem, sub: &FieldCtx) -> Result<FieldElem> {
        if sub.p != self.p {
            return Err(Error::FieldMismatch(format!("{sub} is not a subfield of {self}")));
        }
        let emb = self.subfield(sub.n)?;
        emb.preimage(a)
            .ok_or_else(|| Error::Violation(format!("{} does not lie in the subfield {sub}", self.format_elem(a))))
    }
}

struct EmbedData {
    generator_image: FieldElem,
    powers: Vec<FieldElem>,
    table: Option<Vec<FieldElem>>,
    inverse: Option<HashMap<FieldElem, FieldElem>>,
}

impl EmbedData {
    fn compute(src: &Arc<FieldCtx>, dst: &Arc<FieldCtx>) -> Result<EmbedData> {
        if src.p != dst.p || !dst.n.is_multiple_of(src.n) {
            return Err(Error::FieldMismatch(format!("{src} does not embed in {dst}")));
        }
        let generator_image = if src.n == 1 {
            FieldElem::ZERO
        } else {
            let modulus = Poly::new(dst, src.modulus.iter().map(|&c| dst.from_int(c as i64)).collect());
            modulus.roots()?[0]
        };
        let powers: Vec<FieldElem> = std::iter::successors(Some(FieldElem::ONE), |&x| Some(dst.mul(x, generator_image)))
            .take(src.n as usize)
            .collect();
        let mut data = EmbedData { generator_image, powers, table: None, inverse: None };
        if src.order <= EMBED_TABLE_LIMIT {
            let table: Vec<FieldElem> = src.elements().map(|a| data.apply(src, dst, a)).collect();
            data.inverse = Some(table.iter().enumerate().map(|(i, &b)| (b, FieldElem(i as u64))).collect());
            data.table = Some(table);
        }
        Ok(data)
    }

    fn apply(&self, src: &FieldCtx, dst: &FieldCtx, a: FieldElem) -> FieldElem {
        if let Some(t) = &self.table {
            return t[a.0 as usize];
        }
        src.digits(a)
            .iter()
            .zip(&self.powers)
            .fold(FieldElem::ZERO, |acc, (&d, &pw)| dst.add(acc, dst.mul(dst.from_int(d as i64), pw)))
    }
}

/// A field embedding `src -> dst` sending the generator to the least root of `src`'s modulus.
#[derive(Clone)]
pub struct EmbeddingMap {
    src: Arc<FieldCtx>,
    dst: Arc<FieldCtx>,
    data: Arc<EmbedData>,
}

impl fmt::Debug for EmbeddingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({} -> {})", self.src, self.dst)
    }
}

/// The canonical embedding of `src` into `dst` (computed afresh).
pub fn embed(src: &Arc<FieldCtx>, dst: &Arc<FieldCtx>) -> Result<EmbeddingMap> {
    if src.same_field(dst) {
        return Ok(EmbeddingMap { src: src.clone(), dst: dst.clone(), data: Arc::new(EmbedData::identity(src)) });
    }
    Ok(EmbeddingMap { src: src.clone(), dst: dst.clone(), data: Arc::new(EmbedData::compute(src, dst)?) })
}

impl EmbedData {
    fn identity(ctx: &FieldCtx) -> EmbedData {
        let generator_image = if ctx.n == 1 { FieldElem::ZERO } else { FieldElem(ctx.p) };
        let powers = std::iter::successors(Some(FieldElem::ONE), |&x| Some(ctx.mul(x, generator_image)))
            .take(ctx.n as usize)
            .collect();
        EmbedData { generator_image, powers, table: None, inverse: None }
    }
}

impl EmbeddingMap {
    fn identity(ctx: &Arc<FieldCtx>) -> EmbeddingMap {
        EmbeddingMap { src: ctx.clone(), dst: ctx.clone(), data: Arc::new(EmbedData::identity(ctx)) }
    }

    pub fn src(&self) -> &Arc<FieldCtx> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FieldCtx> {
        &self.dst
    }

    pub fn image_of_generator(&self) -> FieldElem {
        self.data.generator_image
    }

    /// Degree of `dst` over `src`.
    pub fn degree(&self) -> u32 {
        self.dst.n / self.src.n
    }

    pub fn is_identity(&self) -> bool {
        self.src.same_field(&self.dst)
    }

    pub fn apply(&self, a: FieldElem) -> FieldElem {
        if self.is_identity() {
            return a;
        }
        self.data.apply(&self.src, &self.dst, a)
    }

    /// The element of `src` mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: FieldElem) -> Option<FieldElem> {
        if self.is_identity() {
            return Some(b);
        }
        match &self.data.inverse {
            Some(inv) => inv.get(&b).copied(),
            None => self.src.elements().find(|&a| self.apply(a) == b),
        }
    }

    /// Whether `b` lies in the image of `src`.
    pub fn contains(&self, b: FieldElem) -> bool {
        self.dst.frob(b, self.src.n) == b
    }
}
