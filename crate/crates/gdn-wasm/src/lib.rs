//! Browser bindings for the calculator: three entry points, each returning a
//! JSON string so the page stays a plain static file.

use wasm_bindgen::prelude::*;

use gdn::checks::count_bases;
use gdn::embed::{enumerate_tableaux, nf_embed, phi};
use gdn::parse::{parse_element, print_term};
use gdn::rewrite::Rewriter;
use gdn::{Alphabet, GdnElement};

fn err(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn element_json(e: &GdnElement, alphabet: &Alphabet) -> serde_json::Value {
    serde_json::Value::Array(
        e.iter()
            .map(|(t, c)| {
                serde_json::json!({
                    "coeff": c.to_string(),
                    "term": print_term(t, alphabet),
                })
            })
            .collect(),
    )
}

/// Normal form of an expression. `method` is "rewrite", "embed" or "both";
/// the result carries rendered text plus the coefficient/term array, and for
/// "both" a comparison verdict.
#[wasm_bindgen]
pub fn normal_form(alphabet: &str, expr: &str, method: &str) -> String {
    let alphabet = match Alphabet::parse(alphabet) {
        Ok(a) => a,
        Err(e) => return err(e),
    };
    let element = match parse_element(expr, &alphabet) {
        Ok(e) => e,
        Err(e) => return err(e),
    };
    let rewrite = (method != "embed").then(|| Rewriter::new().nf(&element));
    let embed = (method != "rewrite").then(|| nf_embed(&element));
    let mut obj = serde_json::Map::new();
    if let Some(r) = &rewrite {
        obj.insert("rewrite".into(), element_json(r, &alphabet));
        obj.insert("rewrite_text".into(), r.display(&alphabet).into());
    }
    if let Some(m) = &embed {
        obj.insert("embed".into(), element_json(m, &alphabet));
        obj.insert("embed_text".into(), m.display(&alphabet).into());
    }
    if let (Some(r), Some(m)) = (&rewrite, &embed) {
        obj.insert("match".into(), (r == m).into());
    }
    serde_json::Value::Object(obj).to_string()
}

/// Image of an expression in the differential algebra, rendered and as a
/// coefficient/monomial array.
#[wasm_bindgen]
pub fn phi_image(alphabet: &str, expr: &str) -> String {
    let alphabet = match Alphabet::parse(alphabet) {
        Ok(a) => a,
        Err(e) => return err(e),
    };
    let element = match parse_element(expr, &alphabet) {
        Ok(e) => e,
        Err(e) => return err(e),
    };
    let image = phi(&element);
    let monomials: Vec<serde_json::Value> = image
        .monomials()
        .iter()
        .rev()
        .map(|(m, c)| {
            serde_json::json!({
                "coeff": c.to_string(),
                "monomial": m.display(&alphabet),
            })
        })
        .collect();
    serde_json::json!({
        "text": image.display(&alphabet),
        "monomials": monomials,
    })
    .to_string()
}

/// Basis table up to `max_len`: per length the tableau and weight-0 monomial
/// counts, plus the tableaux themselves for lengths small enough to list.
#[wasm_bindgen]
pub fn basis_table(alphabet: &str, max_len: u32) -> String {
    let alphabet = match Alphabet::parse(alphabet) {
        Ok(a) => a,
        Err(e) => return err(e),
    };
    if max_len == 0 || max_len > 9 {
        return err("length must be between 1 and 9");
    }
    let rows: Vec<serde_json::Value> = count_bases(&alphabet, max_len)
        .into_iter()
        .map(|(n, tabs, weight0)| {
            let listing: Vec<String> = if tabs <= 64 {
                enumerate_tableaux(&alphabet, n)
                    .iter()
                    .map(|t| print_term(&t.to_term(), &alphabet))
                    .collect()
            } else {
                Vec::new()
            };
            serde_json::json!({
                "length": n,
                "tableaux": tabs,
                "weight0": weight0,
                "basis": listing,
            })
        })
        .collect();
    serde_json::Value::Array(rows).to_string()
}
