//! JSON and text encodings shared by the subcommands.

use artin_core::ff::{FieldCtx, FieldElem};
use artin_core::pgl2::Pgl2;
use artin_core::poly::{Poly, ProjPoint};
use serde_json::{json, Value};

/// An element: an integer over a prime field, else its digit list.
pub fn elem(f: &FieldCtx, e: FieldElem) -> Value {
    if f.is_prime_field() {
        json!(e.index())
    } else {
        json!(f.digits(e))
    }
}

pub fn point(f: &FieldCtx, v: ProjPoint) -> Value {
    match v {
        ProjPoint::Finite(e) => elem(f, e),
        ProjPoint::Infinity => json!("inf"),
    }
}

/// `[[a, b], [c, d]]`.
pub fn matrix(f: &FieldCtx, g: &Pgl2) -> Value {
    let [a, b, c, d] = g.entries();
    json!([[elem(f, a), elem(f, b)], [elem(f, c), elem(f, d)]])
}

/// Ascending coefficients.
pub fn poly(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| elem(p.ctx(), c)).collect())
}

pub fn elems(f: &FieldCtx, items: &[FieldElem]) -> Value {
    Value::Array(items.iter().map(|&e| elem(f, e)).collect())
}

pub fn elem_text(f: &FieldCtx, e: FieldElem) -> String {
    if f.is_prime_field() {
        e.index().to_string()
    } else {
        f.format_elem(e)
    }
}

pub fn point_text(f: &FieldCtx, v: ProjPoint) -> String {
    match v {
        ProjPoint::Finite(e) => elem_text(f, e),
        ProjPoint::Infinity => "inf".into(),
    }
}

/// A 2×2 block with aligned columns.
pub fn matrix_text(f: &FieldCtx, g: &Pgl2, indent: &str) -> String {
    let [a, b, c, d] = g.entries().map(|e| elem_text(f, e));
    let w0 = a.len().max(c.len());
    let w1 = b.len().max(d.len());
    format!("{indent}[{a:>w0$} {b:>w1$}]\n{indent}[{c:>w0$} {d:>w1$}]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use artin_core::ff::field_of_order;

    #[test]
    fn encodings() {
        let f7 = field_of_order(7).unwrap();
        let g = Pgl2::from_ints(&f7, [1, 0, 0, 1]).unwrap();
        assert_eq!(matrix(&f7, &g).to_string(), "[[1,0],[0,1]]");
        assert_eq!(matrix_text(&f7, &Pgl2::from_ints(&f7, [10, 2, 0, 1]).unwrap(), ""), "[1 3]\n[0 5]");
        let f9 = field_of_order(9).unwrap();
        assert_eq!(elem(&f9, f9.primitive_element()).to_string(), "[1,1]");
        assert_eq!(point(&f9, ProjPoint::Infinity).to_string(), "\"inf\"");
    }
}
