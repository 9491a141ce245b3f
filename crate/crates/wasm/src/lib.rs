//! Browser bindings: list the catalog, verify an entry, enumerate a family.
//! Every function returns JSON text.

use qcap::identities::{self, registry, Axis, Params};
use qcap::partitions::{self, Family};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn fail(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// The catalog as `[{id, kind, range, anchor}]`.
#[wasm_bindgen]
pub fn list_identities() -> String {
    let rows: Vec<_> = registry()
        .iter()
        .map(|s| json!({ "id": s.id, "kind": s.kind.name(), "range": s.range_text(), "anchor": s.anchor }))
        .collect();
    serde_json::Value::from(rows).to_string()
}

/// Verification reports for `id`. Without `value` a ranged entry is swept
/// over its whole range; `order` overrides the truncation of a series.
#[wasm_bindgen]
pub fn verify_identity(id: &str, value: Option<i32>, order: Option<i32>) -> Result<String, JsError> {
    let spec = identities::lookup(id).map_err(fail)?;
    let points = match (spec.range, value) {
        (Some(_), Some(v)) => vec![Some(v as i64)],
        _ => spec.points(),
    };
    let mut reports = Vec::new();
    for p in points {
        let mut params = Params { t: order.map(i64::from), ..Params::default() };
        match spec.range.map(|r| r.axis) {
            Some(Axis::N) => params.n = p,
            Some(Axis::M) => params.big_m = p,
            Some(Axis::Nu) => params.nu = p,
            None => {}
        }
        reports.push(identities::verify(id, &params).map_err(fail)?);
    }
    serde_json::to_string(&reports).map_err(fail)
}

/// `{family, n, count, partitions}` for a family name such as `C1` or `dualC2`.
#[wasm_bindgen]
pub fn enumerate_family(family: &str, n: u32) -> Result<String, JsError> {
    let fam: Family = family.parse().map_err(fail)?;
    let list = partitions::enumerate(&fam, n).map_err(fail)?;
    Ok(json!({ "family": fam.name(), "n": n, "count": list.len(), "partitions": list }).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_return_json() {
        let list: serde_json::Value = serde_json::from_str(&list_identities()).unwrap();
        assert_eq!(list.as_array().unwrap().len(), registry().len());
        let r: serde_json::Value = serde_json::from_str(&verify_identity("thm1.4-eq1", Some(3), None).unwrap()).unwrap();
        assert_eq!(r[0]["status"], "pass");
        let swept: serde_json::Value = serde_json::from_str(&verify_identity("table-5.1", None, None).unwrap()).unwrap();
        assert_eq!(swept.as_array().unwrap().len(), 1);
        let e: serde_json::Value = serde_json::from_str(&enumerate_family("D1", 6).unwrap()).unwrap();
        assert_eq!(e["count"], 2);
    }
}
