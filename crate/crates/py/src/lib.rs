//! Python bindings. Field elements cross the boundary as their canonical
//! index `Σ c_i p^i` (so prime-field elements are plain residues); the
//! point at infinity is `None`.

use std::sync::Arc;

use artin_core::addpoly::{reciprocity_pair, split_test as core_split_test, AdditivePoly, Subspace};
use artin_core::artin::{self as inv_mod, ArtinResult};
use artin_core::checks::{run_criterion, CRITERIA};
use artin_core::ff::{field_of_order, make_field, FieldCtx, FieldElem};
use artin_core::frobeq::verify_factor_shape;
use artin_core::pgl2::{dickson_classify, DicksonForm, Pgl2};
use artin_core::poly::{Poly, ProjPoint};
use artin_core::quotient::{self as quot, build_quotient, named_quotient, relate, verify_quotient};
use artin_core::subgroup::Subgroup;
use artin_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(artin, TheoremViolation, PyException, "A checked identity failed.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Violation(msg) => TheoremViolation::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for artin_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// The finite field `F_q`.
#[pyclass(frozen, from_py_object, module = "artin")]
#[derive(Clone)]
struct Field {
    ctx: Arc<FieldCtx>,
}

impl Field {
    fn elem(&self, index: u64) -> PyResult<FieldElem> {
        self.ctx.elem(index).py()
    }

    fn point(&self, v: Option<u64>) -> PyResult<ProjPoint> {
        v.map_or(Ok(ProjPoint::Infinity), |i| self.elem(i).map(ProjPoint::Finite))
    }

    fn elems(&self, items: &[u64]) -> PyResult<Vec<FieldElem>> {
        items.iter().map(|&i| self.elem(i)).collect()
    }
}

fn indices(items: &[FieldElem]) -> Vec<u64> {
    items.iter().map(|e| e.index()).collect()
}

#[pymethods]
impl Field {
    /// `Field(9)`, or `Field(3, 2)` for `p, n`.
    #[new]
    #[pyo3(signature = (q, n = None))]
    fn new(q: u64, n: Option<u32>) -> PyResult<Field> {
        let ctx = match n {
            Some(n) => make_field(q, n),
            None => field_of_order(q),
        }
        .py()?;
        Ok(Field { ctx })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.ctx.p()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.ctx.n()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.ctx.order()
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.ctx.modulus().to_vec()
    }

    fn primitive_element(&self) -> u64 {
        self.ctx.primitive_element().index()
    }

    fn elements(&self) -> Vec<u64> {
        self.ctx.elements().map(FieldElem::index).collect()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.ctx.add(self.elem(a)?, self.elem(b)?).index())
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.ctx.sub(self.elem(a)?, self.elem(b)?).index())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.ctx.mul(self.elem(a)?, self.elem(b)?).index())
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        Ok(self.ctx.try_inv(self.elem(a)?).py()?.index())
    }

    fn pow(&self, a: u64, e: u128) -> PyResult<u64> {
        Ok(self.ctx.pow(self.elem(a)?, e).index())
    }

    fn quadratic_character(&self, a: u64) -> PyResult<i8> {
        self.ctx.quadratic_character(self.elem(a)?).py()
    }

    /// The text encoding `[c0,c1,...]`.
    fn format(&self, a: u64) -> PyResult<String> {
        Ok(self.ctx.format_elem(self.elem(a)?))
    }

    fn parse(&self, s: &str) -> PyResult<u64> {
        Ok(self.ctx.parse_elem(s).py()?.index())
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.ctx.order())
    }
}

/// An element of `PGL2(F_q)`, normalized.
#[pyclass(frozen, from_py_object, module = "artin")]
#[derive(Clone)]
struct Matrix {
    field: Field,
    g: Pgl2,
}

#[pymethods]
impl Matrix {
    #[new]
    fn new(field: Field, entries: [u64; 4]) -> PyResult<Matrix> {
        let e = [field.elem(entries[0])?, field.elem(entries[1])?, field.elem(entries[2])?, field.elem(entries[3])?];
        let g = Pgl2::new(&field.ctx, e).py()?;
        Ok(Matrix { field, g })
    }

    /// From the text form `a,b,c,d`.
    #[staticmethod]
    fn parse(field: Field, s: &str) -> PyResult<Matrix> {
        let g = Pgl2::parse(&field.ctx, s).py()?;
        Ok(Matrix { field, g })
    }

    #[getter]
    fn entries(&self) -> [u64; 4] {
        self.g.entries().map(FieldElem::index)
    }

    fn order(&self) -> u64 {
        self.g.order(&self.field.ctx)
    }

    fn iota(&self) -> u64 {
        self.g.iota(&self.field.ctx).index()
    }

    fn det_is_square(&self) -> bool {
        self.g.det_is_square(&self.field.ctx)
    }

    fn is_identity(&self) -> bool {
        self.g.is_identity()
    }

    fn inverse(&self) -> Matrix {
        Matrix { field: self.field.clone(), g: self.g.inv(&self.field.ctx) }
    }

    fn __mul__(&self, other: &Matrix) -> Matrix {
        Matrix { field: self.field.clone(), g: self.g.mul(&other.g, &self.field.ctx) }
    }

    /// `γ(v)`, with `None` for infinity.
    fn act(&self, v: Option<u64>) -> PyResult<Option<u64>> {
        Ok(self.g.act(self.field.point(v)?, &self.field.ctx).finite().map(FieldElem::index))
    }

    /// Dickson form: `{"form", "kappa", ...}`.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let ext = self.field.ctx.extension(2).py()?;
        let d = PyDict::new(py);
        let form = dickson_classify(&self.g, &ext).py()?;
        d.set_item("kappa", form.kappa())?;
        match form {
            DicksonForm::CaseA { b, .. } => {
                d.set_item("form", "unipotent")?;
                d.set_item("b", b.index())?;
            }
            DicksonForm::CaseB { a, .. } => {
                d.set_item("form", "split")?;
                d.set_item("a", a.index())?;
            }
            DicksonForm::CaseC { zeta, lambda, .. } => {
                d.set_item("form", "nonsplit")?;
                d.set_item("zeta_in_q2", zeta.index())?;
                d.set_item("lambda_in_q2", lambda.index())?;
            }
        }
        Ok(d)
    }

    /// Predicted and factored shape of `x^q(cx+d) − (ax+b)`.
    fn factor_shape<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = verify_factor_shape(&self.field.ctx, &self.g).py()?;
        let d = PyDict::new(py);
        d.set_item("t", r.predicted.t)?;
        d.set_item("count_t", r.predicted.count_t)?;
        d.set_item("linear", r.predicted.count_linear)?;
        d.set_item("kappa", r.predicted.kappa)?;
        d.set_item("verified", r.agree())?;
        Ok(d)
    }

    fn __eq__(&self, other: &Matrix) -> bool {
        self.field.ctx.same_field(&other.field.ctx) && self.g == other.g
    }

    fn __hash__(&self) -> u64 {
        self.g.entries().iter().fold(0u64, |h, e| h.wrapping_mul(1_000_003).wrapping_add(e.index()))
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", self.g.format(&self.field.ctx))
    }
}

/// A finite subgroup, from a spec such as `g3`, `kummer:3` or `cyclic:1,1,0,1`.
#[pyclass(frozen, from_py_object, module = "artin")]
#[derive(Clone)]
struct Group {
    field: Field,
    group: Arc<Subgroup>,
}

impl Group {
    fn wrap(&self, g: Pgl2) -> Matrix {
        Matrix { field: self.field.clone(), g }
    }
}

#[pymethods]
impl Group {
    #[new]
    fn new(field: Field, spec: &str) -> PyResult<Group> {
        let group = Arc::new(Subgroup::from_spec(&field.ctx, spec).py()?);
        Ok(Group { field, group })
    }

    fn __len__(&self) -> usize {
        self.group.len()
    }

    fn elements(&self) -> Vec<Matrix> {
        self.group.elements().iter().map(|&g| self.wrap(g)).collect()
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    fn __contains__(&self, m: &Matrix) -> bool {
        self.group.contains(&m.g)
    }

    /// `(representative, size)` per conjugacy class.
    fn classes(&self) -> Vec<(Matrix, usize)> {
        self.group.conjugacy_classes().iter().map(|c| (self.wrap(c.rep()), c.len())).collect()
    }

    fn __repr__(&self) -> String {
        format!("Group(order {} over F_{})", self.group.len(), self.field.ctx.order())
    }
}

/// A verified quotient map for a group.
#[pyclass(frozen, module = "artin")]
struct QuotientMap {
    group: Group,
    q: quot::QuotientMap,
}

impl QuotientMap {
    fn result(&self, r: ArtinResult) -> Option<(Matrix, usize)> {
        r.class().map(|c| (self.group.wrap(c.rep()), c.len()))
    }
}

#[pymethods]
impl QuotientMap {
    /// The closed-form map for a named group.
    #[staticmethod]
    fn named(group: Group) -> PyResult<QuotientMap> {
        let q = named_quotient(&group.group).py()?;
        Ok(QuotientMap { group, q })
    }

    /// The map built from a Frobenius-stable orbit.
    #[staticmethod]
    fn build(group: Group) -> PyResult<QuotientMap> {
        let q = build_quotient(&group.group).py()?;
        Ok(QuotientMap { group, q })
    }

    #[getter]
    fn num(&self) -> Vec<u64> {
        indices(self.q.map().num().coeffs())
    }

    #[getter]
    fn den(&self) -> Vec<u64> {
        indices(self.q.map().den().coeffs())
    }

    /// Irregular values as indices in `F_{q²}` (`None` for infinity).
    fn irregular(&self) -> Vec<Option<u64>> {
        self.q.irregular().iter().map(|v| v.finite().map(FieldElem::index)).collect()
    }

    fn is_regular(&self, tau: Option<u64>) -> PyResult<bool> {
        Ok(self.q.is_regular(self.group.field.point(tau)?))
    }

    fn verify(&self) -> PyResult<bool> {
        Ok(verify_quotient(&self.group.group, self.q.map()).py()?.ok())
    }

    /// `(class representative, class size)`, or `None` when `τ` is irregular.
    /// `method` is `general`, `formula` or `brute`.
    #[pyo3(signature = (tau, method = "general"))]
    fn inv(&self, tau: Option<u64>, method: &str) -> PyResult<Option<(Matrix, usize)>> {
        let t = self.group.field.point(tau)?;
        let r = match method {
            "general" => inv_mod::inv_general(&self.q, t),
            "formula" => inv_mod::closed_form(&self.group.group, t),
            "brute" => inv_mod::inv_brute(&self.q, t),
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        }
        .py()?;
        Ok(self.result(r))
    }

    /// `(representative, size, count)` per class over `F_q ∪ {∞}`.
    fn census(&self) -> PyResult<Vec<(Matrix, usize, usize)>> {
        let c = inv_mod::census(&self.q).py()?;
        Ok(c.counts.iter().map(|(cl, n)| (self.group.wrap(cl.rep()), cl.len(), *n)).collect())
    }

    /// `(num, den)` of `h` with `other = h ∘ self`.
    fn relate(&self, other: &QuotientMap) -> PyResult<(Vec<u64>, Vec<u64>)> {
        let h = relate(&self.q, &other.q).py()?;
        Ok((indices(h.num().coeffs()), indices(h.den().coeffs())))
    }
}

/// `[τ/q] ∈ {0, 1, 2}`.
#[pyfunction]
#[pyo3(signature = (field, tau, swap_omega = false))]
fn tripartite_symbol(field: &Field, tau: u64, swap_omega: bool) -> PyResult<u8> {
    Ok(inv_mod::tripartite_symbol_with(&field.ctx, field.elem(tau)?, swap_omega).py()?.ell())
}

/// `M` with `M ∘ L = x^q − x` for `L = Σ a_i x^{P^i}`, or `None`.
#[pyfunction]
#[pyo3(signature = (field, coeffs, base_order = None))]
fn split_test(field: &Field, coeffs: Vec<u64>, base_order: Option<u64>) -> PyResult<Option<Vec<u64>>> {
    let l = AdditivePoly::new(&field.ctx, base_order.unwrap_or(field.ctx.p()), field.elems(&coeffs)?).py()?;
    Ok(core_split_test(&l).py()?.map(|m| indices(m.coeffs())))
}

/// `(Q_W, Q_Y, basis of Y)` for the `F_P`-span `W` of `basis`.
#[pyfunction]
#[pyo3(signature = (field, basis, base_order = None))]
fn reciprocity(field: &Field, basis: Vec<u64>, base_order: Option<u64>) -> PyResult<(Vec<u64>, Vec<u64>, Vec<u64>)> {
    let w = Subspace::new(&field.ctx, base_order.unwrap_or(field.ctx.p()), &field.elems(&basis)?).py()?;
    let pair = reciprocity_pair(&w).py()?;
    Ok((indices(pair.q_w.coeffs()), indices(pair.q_y.coeffs()), indices(pair.y.basis())))
}

/// `(τ, representative, class size, order)` for classes of order `≥ 3` in `PGL2(F_q)`.
#[pyfunction]
fn pgl2_bijection(field: &Field) -> PyResult<Vec<(u64, Matrix, usize, u64)>> {
    let rows = inv_mod::pgl2_bijection(&field.ctx, inv_mod::BIJECTION_Q_BOUND).py()?;
    Ok(rows.into_iter().map(|r| (r.tau.index(), Matrix { field: field.clone(), g: r.class_rep }, r.class_size, r.order)).collect())
}

/// Roots in `F_q` of the polynomial with ascending coefficients.
#[pyfunction]
fn roots(field: &Field, coeffs: Vec<u64>) -> PyResult<Vec<u64>> {
    Ok(indices(&Poly::new(&field.ctx, field.elems(&coeffs)?).roots().py()?))
}

/// `(id, name, passed, cases, failures)` for one acceptance suite.
#[pyfunction]
#[pyo3(signature = (criterion, qmax = 9))]
fn run_check(criterion: u8, qmax: u64) -> PyResult<(u8, &'static str, bool, usize, Vec<String>)> {
    let r = run_criterion(criterion, qmax).py()?;
    Ok((r.id, r.name, r.passed(), r.cases, r.failures.clone()))
}

#[pyfunction]
fn criteria() -> Vec<(u8, &'static str)> {
    CRITERIA.to_vec()
}

#[pymodule]
fn artin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Matrix>()?;
    m.add_class::<Group>()?;
    m.add_class::<QuotientMap>()?;
    m.add_function(wrap_pyfunction!(tripartite_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(split_test, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocity, m)?)?;
    m.add_function(wrap_pyfunction!(pgl2_bijection, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(criteria, m)?)?;
    m.add("TheoremViolation", m.py().get_type::<TheoremViolation>())?;
    Ok(())
}
