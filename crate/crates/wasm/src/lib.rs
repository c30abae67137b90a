//! wasm-bindgen surface for the demo page. Every export returns a JSON string;
//! failures come back as `{"error": ...}` rather than exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use turan::construct::extremal_graph_with_family;
use turan::detect::{find_double_star, DoubleStar};
use turan::formulas::ex_formula;
use turan::io::{from_edge_list, from_graph6, to_graph6_string};
use turan::Graph;

/// Largest order the page will lay out and ship back edge by edge.
pub const MAX_DRAW_N: u32 = 400;

fn error(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => error(e),
    }
}

/// `ex(n, S_{a,b})` with its regime and decomposition.
#[wasm_bindgen]
pub fn formula(n: u32, a: u32, b: u32) -> String {
    respond(
        ex_formula(n as u64, a as u64, b as u64)
            .map(|f| {
                json!({
                    "n": n,
                    "value": f.value,
                    "regime": f.regime.as_str(),
                    "p": f.decomposition.p,
                    "q": f.decomposition.q,
                    "modulus": f.decomposition.modulus,
                })
            })
            .map_err(|e| e.to_string()),
    )
}

/// `ex(n, S_{a,b})` for `n = 1..=n_max`, skipping orders without a closed
/// form, next to the trivial bound `⌊(a+b)n/2⌋` for plotting.
#[wasm_bindgen]
pub fn formula_curve(a: u32, b: u32, n_max: u32) -> String {
    if n_max > 10_000 {
        return error("n_max is limited to 10000");
    }
    let points: Vec<Value> = (1..=n_max)
        .filter_map(|n| {
            let f = ex_formula(n as u64, a as u64, b as u64).ok()?;
            Some(json!({
                "n": n,
                "value": f.value,
                "regime": f.regime.as_str(),
                "degree_bound": (a as u64 + b as u64) * n as u64 / 2,
            }))
        })
        .collect();
    json!({ "a": a, "b": b, "points": points }).to_string()
}

fn describe(g: &Graph) -> Result<Value, String> {
    Ok(json!({
        "n": g.n(),
        "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "degrees": g.degrees(),
        "max_degree": g.max_degree().unwrap_or(0),
        "g6": to_graph6_string(g).map_err(|e| e.to_string())?,
    }))
}

/// The extremal graph for `(n, a, b)` with its edge list and degrees.
#[wasm_bindgen]
pub fn construct(n: u32, a: u32, b: u32) -> String {
    if n > MAX_DRAW_N {
        return error(format!("the demo draws at most {MAX_DRAW_N} vertices"));
    }
    respond((|| {
        let (g, family) = extremal_graph_with_family(n as usize, a as usize, b as usize).map_err(|e| e.to_string())?;
        let mut v = describe(&g)?;
        v["family"] = json!(family.as_str());
        v["edge_count"] = json!(g.edge_count());
        Ok(v)
    })())
}

/// Parses a graph6 line or a `u v` edge list and looks for `S_{a,b}`.
#[wasm_bindgen]
pub fn check(a: u32, b: u32, text: &str) -> String {
    respond((|| {
        let pat = DoubleStar::new(a as usize, b as usize).map_err(|e| e.to_string())?;
        let body = text.trim();
        let g = if body.contains(char::is_whitespace) || body.is_empty() {
            from_edge_list(body, None)
        } else {
            from_graph6(body.as_bytes())
        }
        .map_err(|e| e.to_string())?;
        if g.n() > MAX_DRAW_N as usize {
            return Err(format!("the demo draws at most {MAX_DRAW_N} vertices"));
        }
        let mut v = describe(&g)?;
        let w = find_double_star(&g, pat);
        v["free"] = json!(w.is_none());
        if let Some(w) = w {
            v["witness"] = json!({
                "center_u": w.center_u,
                "center_v": w.center_v,
                "leaves_u": w.leaves_u,
                "leaves_v": w.leaves_v,
            });
        }
        Ok(v)
    })())
}
