//! Helpers for the bracketed text encodings of elements, lists and matrices.

use crate::error::{invalid, Result};
use crate::ff::{FieldCtx, FieldElem};

/// Splits on commas that are not nested inside brackets.
pub fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.trim().chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return invalid(format!("unbalanced brackets in {s:?}"));
        }
        if ch == ',' && depth == 0 {
            parts.push(std::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return invalid(format!("unbalanced brackets in {s:?}"));
    }
    if !cur.trim().is_empty() || !parts.is_empty() {
        parts.push(cur.trim().to_string());
    }
    Ok(parts)
}

/// Items of a bracketed list `[x, y, ...]`.
pub fn list_items(s: &str) -> Result<Vec<String>> {
    let t = s.trim();
    let Some(body) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
        return invalid(format!("expected a bracketed list, got {s:?}"));
    };
    split_top_level(body)
}

/// A list of field elements, each in element encoding.
pub fn parse_elem_list(f: &FieldCtx, s: &str) -> Result<Vec<FieldElem>> {
    list_items(s)?.iter().map(|item| f.parse_elem(item)).collect()
}

pub fn format_elem_list(f: &FieldCtx, items: &[FieldElem]) -> String {
    let parts: Vec<String> = items.iter().map(|&e| f.format_elem(e)).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_of_order;

    #[test]
    fn splitting() {
        assert_eq!(split_top_level("1,2,3").unwrap(), vec!["1", "2", "3"]);
        assert_eq!(split_top_level("[1,0],[0,1]").unwrap(), vec!["[1,0]", "[0,1]"]);
        assert!(split_top_level("").unwrap().is_empty());
        assert!(split_top_level("[1,2").is_err());
        assert!(list_items("1,2").is_err());
        assert!(list_items("[]").unwrap().is_empty());
    }

    #[test]
    fn element_lists_round_trip() {
        let f9 = field_of_order(9).unwrap();
        let items: Vec<FieldElem> = f9.elements().collect();
        let text = format_elem_list(&f9, &items);
        assert_eq!(parse_elem_list(&f9, &text).unwrap(), items);
        let f7 = field_of_order(7).unwrap();
        assert_eq!(parse_elem_list(&f7, "[1,-1,9]").unwrap(), vec![f7.one(), f7.from_int(6), f7.from_int(2)]);
    }
}
