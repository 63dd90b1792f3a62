//! Canonical JSON form of a map: `{"alpha", "darts", "meta", "sigma"}` with
//! sorted keys and no whitespace.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::map::{CombinatorialMap, MapError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid map: {0}")]
    Validation(#[from] MapError),
}

/// The map as a JSON object. Set `meta.multi_component` to `true` to allow
/// several components on reading.
pub fn map_to_value(map: &CombinatorialMap) -> Value {
    json!({
        "alpha": map.alpha_perm(),
        "darts": map.dart_count(),
        "meta": Value::Object(map.meta.clone().into_iter().collect()),
        "sigma": map.sigma_perm(),
    })
}

fn index_array(obj: &Map<String, Value>, key: &str) -> Result<Vec<usize>, IoError> {
    let arr = obj
        .get(key)
        .ok_or_else(|| IoError::Parse(format!("missing {key:?}")))?
        .as_array()
        .ok_or_else(|| IoError::Parse(format!("{key:?} is not an array")))?;
    arr.iter()
        .map(|v| {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| IoError::Parse(format!("{key:?} holds a non-index value {v}")))
        })
        .collect()
}

pub fn map_from_value(v: &Value) -> Result<CombinatorialMap, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse("expected a JSON object".to_string()))?;
    let alpha = index_array(obj, "alpha")?;
    let sigma = index_array(obj, "sigma")?;
    let darts = match obj.get("darts") {
        Some(d) => d
            .as_u64()
            .ok_or_else(|| IoError::Parse("\"darts\" is not an integer".to_string()))?
            as usize,
        None => alpha.len(),
    };
    let meta = match obj.get("meta") {
        None | Some(Value::Null) => Default::default(),
        Some(Value::Object(m)) => m.clone().into_iter().collect(),
        Some(_) => return Err(IoError::Parse("\"meta\" is not an object".to_string())),
    };
    let multi = obj
        .get("meta")
        .and_then(|m| m.get("multi_component"))
        .and_then(Value::as_bool)
        .unwrap_or(false);
    let mut m = if multi {
        CombinatorialMap::with_components(darts, alpha, sigma)?
    } else {
        crate::map::build_map(darts, alpha, sigma)?
    };
    m.meta = meta;
    Ok(m)
}

/// Canonical bytes of a map.
pub fn write_map(map: &CombinatorialMap) -> Vec<u8> {
    map_to_value(map).to_string().into_bytes()
}

pub fn read_map(bytes: &[u8]) -> Result<CombinatorialMap, IoError> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| IoError::Parse(e.to_string()))?;
    map_from_value(&v)
}
