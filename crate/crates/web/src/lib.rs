//! Browser bindings for the demo page in `www/`. Every export takes and
//! returns JSON strings; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use superint::classify::RealForm;
use superint::enumerate::rng;
use superint::pluecker::wedge;
use superint::potential::{prolongation_residual, series_match, Expr};
use superint::report::{classify, default_base, ClassifyInput, ClassifyOptions};
use superint::svg::arrangement_svg;
use superint::tables::TABLE_BOX;
use superint::{Error, PlueckerPoint, SpecialConformalKillingTensor};

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn tensor(s: &str) -> Result<SpecialConformalKillingTensor, Error> {
    Ok(serde_json::from_str(s)?)
}

fn point_or_pair(s: &str) -> Result<ClassifyInput, Error> {
    let v: Value = serde_json::from_str(s)?;
    if let Value::Array(items) = &v {
        if items.len() == 2 {
            let t = [serde_json::from_value(items[0].clone())?, serde_json::from_value(items[1].clone())?];
            return Ok(ClassifyInput::Pair { tensors: t });
        }
    }
    Ok(ClassifyInput::Point { point: serde_json::from_value(v)? })
}

/// Plücker point of two tensors given as `{"A_zz": .., "b_z": .., "c": .., "b_w": .., "A_ww": ..}`.
#[wasm_bindgen]
pub fn wedge_json(t1: &str, t2: &str) -> String {
    respond((|| {
        let p = wedge(&tensor(t1)?, &tensor(t2)?)?.canonical()?;
        let t = p.extract();
        Ok(json!({ "point": p, "D": t.d.to_string(), "A_z": t.a.to_string(), "B_w": t.b.to_string() }))
    })())
}

/// Classification report plus an SVG of the real slice.
#[wasm_bindgen]
pub fn classify_json(input: &str, euclidean: bool) -> String {
    respond((|| {
        let r = classify(point_or_pair(input)?, ClassifyOptions { normal_form: true, fibre_order: Some(6) })?;
        let which = if euclidean { RealForm::Euclidean } else { RealForm::Minkowski };
        let title = r.class.as_ref().map(|c| format!("{c} {}", r.e_label.as_deref().unwrap_or(""))).unwrap_or_else(|| "off variety".into());
        let svg = arrangement_svg(r.arrangement().as_ref(), which, &title);
        Ok(json!({ "report": r, "text": r.to_text(), "svg": svg }))
    })())
}

/// Prolongation residual and series agreement of a potential (prefix form)
/// for a point.
#[wasm_bindgen]
pub fn check_potential(point: &str, potential: &str, seed: u32) -> String {
    respond((|| {
        let p: PlueckerPoint = serde_json::from_str(point)?;
        let t = p.extract();
        let v: Expr = potential.parse()?;
        let samples = TABLE_BOX.samples(20, &mut rng(seed.into()));
        let residual = prolongation_residual(&t, &v, &samples)?;
        let base = default_base(&p).ok_or(Error::SingularBase)?;
        let m = series_match(&t, |z, w| v.eval(z, w), (base[0].to_c64(), base[1].to_c64()), 6, 0.1)?;
        Ok(json!({
            "potential": v.to_string(),
            "residual": residual,
            "series_rel_diff": m.max_rel_diff,
            "in_fibre": residual < superint::DEFAULT_TOL && m.max_rel_diff < 1e-8,
        }))
    })())
}
