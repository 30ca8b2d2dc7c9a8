//! Subcommand handlers. Each returns a JSON value and a text rendering.

use std::sync::Arc;

use artin_core::addpoly::{reciprocity_pair, split_test, AdditivePoly, Subspace};
use artin_core::artin::{census, closed_form, inv_general, pgl2_bijection, tripartite_symbol_with, ArtinResult, BIJECTION_Q_BOUND};
use artin_core::checks::{run_criterion, CriterionReport, CRITERIA};
use artin_core::encoding::parse_elem_list;
use artin_core::ff::FieldCtx;
use artin_core::frobeq::verify_factor_shape;
use artin_core::pgl2::{dickson_classify, DicksonForm, Pgl2};
use artin_core::poly::{Poly, ProjPoint, RatFunc};
use artin_core::quotient::{named_quotient, relate, verify_quotient};
use artin_core::subgroup::Subgroup;
use artin_core::{Error, Result};
use serde_json::{json, Value};

use crate::render;

pub struct Output {
    pub json: Value,
    pub text: String,
}

pub fn field_info(f: &Arc<FieldCtx>) -> Result<Output> {
    let g = f.primitive_element();
    let json = json!({
        "p": f.p(),
        "n": f.n(),
        "q": f.order(),
        "modulus": f.modulus(),
        "primitive_element": render::elem(f, g),
    });
    let fp = prime_field(f)?;
    let modulus = Poly::new(&fp, f.modulus().iter().map(|&c| fp.from_int(c as i64)).collect());
    let text = format!(
        "F_{} = F_{}^{}\nmodulus: {modulus}\nprimitive element: {}",
        f.order(),
        f.p(),
        f.n(),
        render::elem_text(f, g)
    );
    Ok(Output { json, text })
}

fn prime_field(f: &FieldCtx) -> Result<Arc<FieldCtx>> {
    artin_core::ff::make_field(f.p(), 1)
}

fn group(f: &Arc<FieldCtx>, spec: &str) -> Result<Arc<Subgroup>> {
    Subgroup::from_spec(f, spec).map(Arc::new)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    General,
    Formula,
    Both,
}

pub fn inv(f: &Arc<FieldCtx>, spec: &str, tau: &str, method: Method) -> Result<Output> {
    let g = group(f, spec)?;
    let tau = ProjPoint::parse(f, tau)?;
    let general = match method {
        Method::Formula => None,
        _ => Some(inv_general(&named_quotient(&g)?, tau)?),
    };
    let formula = match method {
        Method::General => None,
        _ => Some(closed_form(&g, tau)?),
    };
    let agree = match (&general, &formula) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let result = general.or(formula).expect("at least one method runs");
    let (class_rep, class_size) = match result.class() {
        Some(c) => (render::matrix(f, &c.rep()), c.len()),
        None => (Value::Null, 0),
    };
    let json = json!({
        "regular": result.is_regular(),
        "class_rep": class_rep,
        "class_size": class_size,
        "agree": agree,
    });
    let mut text = match result.class() {
        Some(c) => format!("regular; class of size {}, representative\n{}", c.len(), render::matrix_text(f, &c.rep(), "  ")),
        None => "irregular".to_string(),
    };
    if let Some(a) = agree {
        text.push_str(&format!("\nmethods agree: {a}"));
    }
    if agree == Some(false) {
        return Err(Error::Violation(format!("general engine and closed form disagree\n{text}")));
    }
    Ok(Output { json, text })
}

pub fn symbol(f: &Arc<FieldCtx>, tau: &str, swap_omega: bool) -> Result<Output> {
    let s = tripartite_symbol_with(f, f.parse_elem(tau)?, swap_omega)?;
    Ok(Output { json: json!({ "ell": s.ell() }), text: format!("[tau/q] = {s}") })
}

fn irregular_json(ext_field: &FieldCtx, pts: &[ProjPoint]) -> Value {
    Value::Array(pts.iter().map(|&v| render::point(ext_field, v)).collect())
}

pub fn quotient(f: &Arc<FieldCtx>, spec: &str) -> Result<Output> {
    let qm = named_quotient(&group(f, spec)?)?;
    let big = qm.ext2().dst();
    let json = json!({
        "num": render::poly(qm.map().num()),
        "den": render::poly(qm.map().den()),
        "irregular": irregular_json(big, qm.irregular()),
    });
    let irr: Vec<String> = qm.irregular().iter().map(|&v| render::point_text(big, v)).collect();
    let text = format!("Q = {}\nirregular values (in F_{}): {}", qm.map(), big.order(), irr.join(", "));
    Ok(Output { json, text })
}

pub fn verify(f: &Arc<FieldCtx>, spec: &str, num: Option<&str>, den: Option<&str>) -> Result<Output> {
    let g = group(f, spec)?;
    let user_map = num.is_some() || den.is_some();
    let map = match (num, den) {
        (None, None) => named_quotient(&g)?.map().clone(),
        (Some(n), d) => {
            let den = match d {
                Some(d) => Poly::new(f, parse_elem_list(f, d)?),
                None => Poly::one(f),
            };
            RatFunc::new(Poly::new(f, parse_elem_list(f, n)?), den)?
        }
        (None, Some(_)) => return Err(Error::Invalid("--den needs --num".into())),
    };
    let cert = verify_quotient(&g, &map)?;
    let failure = cert.failure.as_ref().map(ToString::to_string);
    let json = json!({
        "ok": cert.ok(),
        "invariance_checked": cert.invariance_checked,
        "whole_group": cert.whole_group,
        "product_samples": cert.product_samples,
        "failure": failure,
    });
    let text = match &failure {
        None => format!(
            "quotient map verified: invariance under {} elements ({}), {} product-identity samples",
            cert.invariance_checked,
            if cert.whole_group { "whole group" } else { "generating set" },
            cert.product_samples
        ),
        Some(why) => format!("not a quotient map: {why}"),
    };
    if !cert.ok() && !user_map {
        return Err(Error::Violation(format!("the named quotient map fails verification: {}", failure.unwrap_or_default())));
    }
    Ok(Output { json, text })
}

pub fn relate_maps(f: &Arc<FieldCtx>, sub: &str, over: &str) -> Result<Output> {
    let q_h = named_quotient(&group(f, sub)?)?;
    let q_g = named_quotient(&group(f, over)?)?;
    let h = relate(&q_h, &q_g)?;
    let json = json!({ "num": render::poly(h.num()), "den": render::poly(h.den()), "degree": h.degree() });
    Ok(Output { json, text: format!("Q_G = h o Q_H with h = {h}") })
}

pub fn orbits(f: &Arc<FieldCtx>, spec: &str, point: Option<&str>) -> Result<Output> {
    let g = group(f, spec)?;
    let (field, list) = match point {
        Some(p) => (f.clone(), vec![g.orbit(ProjPoint::parse(f, p)?)]),
        None => {
            let ext = f.extension(2)?;
            (ext.dst().clone(), g.short_orbits(&ext)?)
        }
    };
    let json = json!({
        "field": format!("{}^{}", field.p(), field.n()),
        "orbits": list.iter().map(|o| json!({
            "points": o.points.iter().map(|&v| render::point(&field, v)).collect::<Vec<_>>(),
            "size": o.len(),
            "multiplicity": o.multiplicity,
        })).collect::<Vec<_>>(),
    });
    let lines: Vec<String> = list
        .iter()
        .map(|o| {
            let pts: Vec<String> = o.points.iter().map(|&v| render::point_text(&field, v)).collect();
            format!("size {:>3}, multiplicity {:>3}: {{{}}}", o.len(), o.multiplicity, pts.join(", "))
        })
        .collect();
    let head = if point.is_some() { "orbit".to_string() } else { format!("short orbits over F_{}", field.order()) };
    Ok(Output { json, text: format!("{head}\n{}", lines.join("\n")) })
}

pub fn census_table(f: &Arc<FieldCtx>, spec: &str) -> Result<Output> {
    let qm = named_quotient(&group(f, spec)?)?;
    let c = census(&qm)?;
    let rows: Vec<Value> = c
        .counts
        .iter()
        .map(|(class, n)| {
            json!({
                "class_rep": render::matrix(f, &class.rep()),
                "class_size": class.len(),
                "order": class.rep().order(f),
                "count": n,
            })
        })
        .collect();
    let infinity = match &c.infinity {
        ArtinResult::Regular(cl) => render::matrix(f, &cl.rep()),
        ArtinResult::Irregular => json!("irregular"),
    };
    let json = json!({
        "classes": rows,
        "irregular": c.irregular.iter().map(|&v| render::point(f, v)).collect::<Vec<_>>(),
        "infinity": infinity,
    });
    let mut text = format!("{:>6} {:>5} {:>6}  representative\n", "order", "size", "count");
    for (class, n) in &c.counts {
        let rep = class.rep();
        let block = render::matrix_text(f, &rep, "");
        let mut lines = block.lines();
        text.push_str(&format!("{:>6} {:>5} {:>6}  {}\n", rep.order(f), class.len(), n, lines.next().unwrap_or("")));
        for l in lines {
            text.push_str(&format!("{:>21}{l}\n", ""));
        }
    }
    let irr: Vec<String> = c.irregular.iter().map(|&v| render::point_text(f, v)).collect();
    text.push_str(&format!("irregular: {{{}}}", irr.join(", ")));
    Ok(Output { json, text })
}

fn base_order(f: &FieldCtx, big_p: Option<u64>) -> u64 {
    big_p.unwrap_or(f.p())
}

pub fn split(f: &Arc<FieldCtx>, big_p: Option<u64>, coeffs: &str) -> Result<Output> {
    let l = AdditivePoly::new(f, base_order(f, big_p), parse_elem_list(f, coeffs)?)?;
    let m = split_test(&l)?;
    let json = json!({
        "splits": m.is_some(),
        "M": m.as_ref().map(|m| render::elems(f, m.coeffs())),
    });
    let text = match &m {
        Some(m) => format!("L = {l} splits in F_{}; M = {m} with M o L = x^q - x", f.order()),
        None => format!("L = {l} does not split in F_{}", f.order()),
    };
    Ok(Output { json, text })
}

pub fn reciprocity(f: &Arc<FieldCtx>, big_p: Option<u64>, basis: &str) -> Result<Output> {
    let w = Subspace::new(f, base_order(f, big_p), &parse_elem_list(f, basis)?)?;
    let pair = reciprocity_pair(&w)?;
    let json = json!({
        "W": render::elems(f, pair.w.basis()),
        "Y": render::elems(f, pair.y.basis()),
        "Q_W": render::elems(f, pair.q_w.coeffs()),
        "Q_Y": render::elems(f, pair.q_y.coeffs()),
    });
    let text = format!(
        "Q_W = {}\nQ_Y = {}\nQ_Y o Q_W = Q_W o Q_Y = x^q - x; dim W = {}, dim Y = {}",
        pair.q_w,
        pair.q_y,
        pair.w.dim(),
        pair.y.dim()
    );
    Ok(Output { json, text })
}

pub fn factor_shape(f: &Arc<FieldCtx>, matrix: &str) -> Result<Output> {
    let g = Pgl2::parse(f, matrix)?;
    let r = verify_factor_shape(f, &g)?;
    let s = r.predicted;
    let json = json!({
        "t": s.t,
        "count_t": s.count_t,
        "linear": s.count_linear,
        "kappa": s.kappa,
        "verified": r.agree(),
    });
    let text = format!(
        "x^q(cx+d) - (ax+b): {} factors of degree {}, {} rational roots (with inf), kappa = {}; ddf agrees: {}",
        s.count_t,
        s.t,
        s.count_linear,
        s.kappa,
        r.agree()
    );
    if !r.agree() {
        return Err(Error::Violation(format!("predicted factor shape differs from the factorization: {:?}", r.actual)));
    }
    Ok(Output { json, text })
}

pub fn classify(f: &Arc<FieldCtx>, matrix: &str) -> Result<Output> {
    let g = Pgl2::parse(f, matrix)?;
    if g.is_identity() {
        return Err(Error::Invalid("the identity has no Dickson form".into()));
    }
    let ext = f.extension(2)?;
    let big = ext.dst();
    let form = dickson_classify(&g, &ext)?;
    let (name, params, conj, conj_field): (&str, Value, &Pgl2, &FieldCtx) = match &form {
        DicksonForm::CaseA { b, conjugator } => ("unipotent", json!({ "b": render::elem(f, *b) }), conjugator, f),
        DicksonForm::CaseB { a, conjugator } => ("split", json!({ "a": render::elem(f, *a) }), conjugator, f),
        DicksonForm::CaseC { zeta, lambda, conjugator } => (
            "nonsplit",
            json!({ "zeta": render::elem(big, *zeta), "lambda": render::elem(big, *lambda) }),
            conjugator,
            big,
        ),
    };
    let json = json!({
        "form": name,
        "params": params,
        "conjugator": render::matrix(conj_field, conj),
        "iota": render::elem(f, g.iota(f)),
        "order": g.order(f),
        "kappa": form.kappa(),
    });
    let text = format!(
        "{name} (kappa = {}), order {}, iota = {}\nparameters: {params}\nconjugator:\n{}",
        form.kappa(),
        g.order(f),
        render::elem_text(f, g.iota(f)),
        render::matrix_text(conj_field, conj, "  ")
    );
    Ok(Output { json, text })
}

pub fn bijection(f: &Arc<FieldCtx>) -> Result<Output> {
    let rows = pgl2_bijection(f, BIJECTION_Q_BOUND)?;
    let json = Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "tau": render::elem(f, r.tau),
                    "class_rep": render::matrix(f, &r.class_rep),
                    "class_size": r.class_size,
                    "order": r.order,
                })
            })
            .collect(),
    );
    let mut text = format!("{:>6} {:>6} {:>5}  representative\n", "tau", "order", "size");
    for r in &rows {
        let block = render::matrix_text(f, &r.class_rep, "");
        let mut lines = block.lines();
        text.push_str(&format!("{:>6} {:>6} {:>5}  {}\n", render::elem_text(f, r.tau), r.order, r.class_size, lines.next().unwrap_or("")));
        for l in lines {
            text.push_str(&format!("{:>21}{l}\n", ""));
        }
    }
    Ok(Output { json, text: text.trim_end().to_string() })
}

/// Resolves a suite name: `all`, a number, or a criterion name with `-` or `_` for spaces.
fn suite_ids(suite: &str) -> Result<Vec<u8>> {
    let key = suite.trim().to_lowercase().replace(['-', '_'], " ");
    if key == "all" {
        return Ok(CRITERIA.iter().map(|(id, _)| *id).collect());
    }
    if let Ok(id) = key.parse::<u8>() {
        if CRITERIA.iter().any(|(i, _)| *i == id) {
            return Ok(vec![id]);
        }
    }
    CRITERIA
        .iter()
        .find(|(_, name)| name.to_lowercase().replace('/', " ") == key.replace('/', " "))
        .map(|(id, _)| vec![*id])
        .ok_or_else(|| Error::Invalid(format!("unknown suite {suite:?}")))
}

pub fn check(suite: &str, qmax: u64) -> Result<Output> {
    let reports: Vec<CriterionReport> = suite_ids(suite)?.into_iter().map(|id| run_criterion(id, qmax)).collect::<Result<_>>()?;
    let passed = reports.iter().all(CriterionReport::passed);
    let json = json!({
        "passed": passed,
        "qmax": qmax,
        "criteria": reports.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed(),
            "cases": r.cases,
            "skipped": r.skipped,
            "failures": r.failure_count,
            "first_failures": r.failures,
        })).collect::<Vec<_>>(),
    });
    let text: Vec<String> = reports.iter().map(CriterionReport::summary_line).collect();
    let text = text.join("\n");
    if !passed {
        let names: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
        return Err(Error::Violation(format!("violated: {}\n{text}", names.join(", "))));
    }
    Ok(Output { json, text })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(suite_ids("all").unwrap().len(), 11);
        assert_eq!(suite_ids("7").unwrap(), vec![7]);
        assert_eq!(suite_ids("klein-theorem").unwrap(), vec![5]);
        assert_eq!(suite_ids("engine/formula-agreement").unwrap(), vec![2]);
        assert!(suite_ids("12").is_err());
    }
}
