//! Browser bindings: spectral-curve Newton polygons, a bracket calculator
//! and the axiom sweep. Every export returns a JSON string.
//!
//! The `*_json` functions hold the logic and run natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::json;
use wasm_bindgen::prelude::*;

use ncpoisson::dbracket::{builtins, verify_axioms, BracketDef, JacobiC};
use ncpoisson::integrable::{genus_target, spectral_curve};
use ncpoisson::ncalg::{cyclic_project, NCPoly};
use ncpoisson::text::{parse_element, DefinitionFile};

/// Sweeps in the browser run on the main thread; keep them short.
const MAX_SKEW_LEN: usize = 4;
const MAX_JACOBI_LEN: usize = 3;
const MAX_DIM: usize = 4;

/// `source` is a built-in name or the text of a definition file.
fn bracket_from(source: &str) -> Result<(BracketDef, Option<DefinitionFile>), String> {
    if let Some(db) = builtins::by_name(source.trim()) {
        return Ok((db, None));
    }
    let f = DefinitionFile::parse(source).map_err(|e| e.to_string())?;
    let db = f.bracket(None).map_err(|e| e.to_string())?.clone();
    Ok((db, Some(f)))
}

fn element(db: &BracketDef, file: Option<&DefinitionFile>, s: &str) -> Result<NCPoly, String> {
    if let Some(p) = file.and_then(|f| f.elements.get(s.trim())) {
        return Ok(p.clone());
    }
    parse_element(s, db.sig()).map_err(|e| e.to_string())
}

pub fn newton_polygon_json(dim: usize, seed: u64) -> Result<String, String> {
    if dim == 0 || dim > MAX_DIM {
        return Err(format!("dimension must be between 1 and {MAX_DIM}"));
    }
    let c = spectral_curve(dim, seed).map_err(|e| e.to_string())?;
    let support: Vec<[u32; 2]> = c
        .curve
        .terms()
        .map(|(m, _)| [m.exponents()[0], m.exponents()[1]])
        .collect();
    let verts = c.polygon.vertices();
    let (xmax, ymax) = verts.iter().fold((0, 0), |(x, y), v| (x.max(v[0]), y.max(v[1])));
    let mut interior = Vec::new();
    for x in 0..=xmax {
        for y in 0..=ymax {
            if c.polygon.contains_strictly([x, y]) {
                interior.push([x, y]);
            }
        }
    }
    let v = json!({
        "n": dim,
        "seed": seed,
        "degree": c.degree,
        "clearing_exponent": c.clearing_exponent,
        "vertices": verts,
        "support": support,
        "interior": interior,
        "interior_points": c.interior_points,
        "genus_target": genus_target(dim),
        "terms": c.curve.len(),
    });
    Ok(v.to_string())
}

pub fn bracket_json(source: &str, a: &str, b: &str) -> Result<String, String> {
    let (db, file) = bracket_from(source)?;
    let pa = element(&db, file.as_ref(), a)?;
    let pb = element(&db, file.as_ref(), b)?;
    let double = db.extend_double(&pa, &pb).map_err(|e| e.to_string())?;
    let loday = double.mu();
    let v = json!({
        "a": pa.to_string(),
        "b": pb.to_string(),
        "double": double.to_string(),
        "loday": loday.to_string(),
        "cyclic": cyclic_project(&loday).to_string(),
    });
    Ok(v.to_string())
}

pub fn verify_json(source: &str, skew_len: usize, jacobi_len: usize) -> Result<String, String> {
    if skew_len > MAX_SKEW_LEN || jacobi_len > MAX_JACOBI_LEN {
        return Err(format!(
            "in the browser lengths are capped at {MAX_SKEW_LEN} (skew) and {MAX_JACOBI_LEN} (Jacobi)"
        ));
    }
    let (db, _) = bracket_from(source)?;
    Ok(verify_axioms(&db, skew_len, jacobi_len, jacobi_len, JacobiC::Generators).to_json())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn newton_polygon(dim: u32, seed: u32) -> Result<String, JsValue> {
    js(newton_polygon_json(dim as usize, seed as u64))
}

#[wasm_bindgen]
pub fn bracket(source: &str, a: &str, b: &str) -> Result<String, JsValue> {
    js(bracket_json(source, a, b))
}

#[wasm_bindgen]
pub fn verify(source: &str, skew_len: u32, jacobi_len: u32) -> Result<String, JsValue> {
    js(verify_json(source, skew_len as usize, jacobi_len as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn polygon_for_two() {
        let v = parse(&newton_polygon_json(2, 1).unwrap());
        assert_eq!(v["degree"], 6);
        assert_eq!(v["interior"].as_array().unwrap().len() as u64, v["interior_points"].as_u64().unwrap());
        assert!(newton_polygon_json(0, 1).is_err());
    }

    #[test]
    fn calculator() {
        let v = parse(&bracket_json("kontsevich", "u", "v").unwrap());
        assert_eq!(v["double"], "-v*u (x) 1");
        assert_eq!(v["loday"], "-v*u");
        let src = include_str!("../../core/data/kontsevich.ncb");
        let v = parse(&bracket_json(src, "h", "c").unwrap());
        assert_eq!(v["cyclic"], "0");
        assert!(bracket_json("kontsevich", "u", "w").is_err());
    }

    #[test]
    fn verify_small() {
        let v = parse(&verify_json("kontsevich", 2, 1).unwrap());
        assert_eq!(v["failures"], json!([]));
        let v = parse(&verify_json("skew_counterexample", 2, 1).unwrap());
        assert!(v["failures_total"].as_u64().unwrap() > 0);
        assert!(verify_json("kontsevich", 9, 1).is_err());
    }
}
