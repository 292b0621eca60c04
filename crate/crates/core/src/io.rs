//! JSON file loading. A file reference inside a JSON document is a path
//! relative to the directory of the document that contains it.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::field_from_spec;
use crate::fourier::RepresentationBundle;
use crate::function::FunctionOnX;
use crate::group::{Group, GroupSpec};
use crate::gset::{ActionSpec, GSet};

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))
}

fn base_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.join(reference)
}

/// A group given inline, as a file reference, or as a catalog name
/// (`"S3"`, `"Z2xZ4"`, ...) when no such file exists.
pub fn group_from_value(v: &Value, base: &Path) -> Result<Group> {
    match v {
        Value::String(s) => {
            let path = resolve(base, s);
            if path.is_file() {
                load_group(&path)
            } else if let Some(g) = Group::by_name(s) {
                Ok(g)
            } else {
                Err(Error::InputError(format!("{s:?} is neither a group file nor a catalog name")))
            }
        }
        Value::Object(_) => {
            let spec: GroupSpec =
                serde_json::from_value(v.clone()).map_err(|e| Error::ParseError(format!("group spec: {e}")))?;
            Group::load(&spec)
        }
        _ => Err(Error::ParseError("group must be a file reference, name or object".into())),
    }
}

pub fn load_group(path: &Path) -> Result<Group> {
    let v = read_json(path)?;
    group_from_value(&v, &base_of(path))
}

pub fn action_from_value(v: &Value, base: &Path) -> Result<GSet> {
    match v {
        Value::String(s) => load_action(&resolve(base, s)),
        Value::Object(o) => {
            let g = group_from_value(o.get("group").ok_or_else(|| Error::ParseError("action needs \"group\"".into()))?, base)?;
            let spec: ActionSpec =
                serde_json::from_value(v.clone()).map_err(|e| Error::ParseError(format!("action spec: {e}")))?;
            GSet::build(Arc::new(g), &spec)
        }
        _ => Err(Error::ParseError("action must be a file reference or object".into())),
    }
}

pub fn load_action(path: &Path) -> Result<GSet> {
    let v = read_json(path)?;
    action_from_value(&v, &base_of(path))
}

pub fn function_from_value(v: &Value, base: &Path) -> Result<FunctionOnX> {
    let action = v.get("action").ok_or_else(|| Error::ParseError("function needs \"action\"".into()))?;
    let xs = Arc::new(action_from_value(action, base)?);
    let field = field_from_spec(
        v.get("field").and_then(Value::as_str).ok_or_else(|| Error::ParseError("function needs \"field\"".into()))?,
    )?;
    let values = v
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::ParseError("function needs \"values\"".into()))?
        .iter()
        .map(|x| field.parse_value(x))
        .collect::<Result<Vec<_>>>()?;
    FunctionOnX::new(xs, field, values)
}

pub fn load_function(path: &Path) -> Result<FunctionOnX> {
    let v = read_json(path)?;
    function_from_value(&v, &base_of(path))
}

/// The bundle's own group reference is loaded and must equal `group` when
/// one is given.
pub fn load_bundle(path: &Path, group: Option<&Arc<Group>>) -> Result<RepresentationBundle> {
    let v = read_json(path)?;
    let own = group_from_value(
        v.get("group").ok_or_else(|| Error::ParseError("bundle needs \"group\"".into()))?,
        &base_of(path),
    )?;
    let g = match group {
        Some(g) if g.as_ref() == &own => g.clone(),
        Some(_) => return Err(Error::MismatchedContext("bundle group differs from the function's group".into())),
        None => Arc::new(own),
    };
    RepresentationBundle::from_json(g, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
    }

    #[test]
    fn fixtures_load() {
        let a = load_group(&fixture("s3_cayley.json")).unwrap();
        let b = load_group(&fixture("s3_perm.json")).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.cayley(), b.cayley());
        let f = load_function(&fixture("remark39.json")).unwrap();
        assert_eq!(f.support(), vec![0, 1]);
        assert_eq!(f.gset().size(), 3);
        let bundle = load_bundle(&fixture("s3_bundle.json"), Some(f.gset().group_arc())).unwrap();
        assert_eq!(bundle.degrees(), vec![1, 1, 2]);
        assert_eq!(load_action(&fixture("s3_regular.json")).unwrap().size(), 6);
    }

    #[test]
    fn inline_and_catalog() {
        let v: Value = serde_json::from_str(r#"{"action":{"group":"Z4","kind":"regular"},"field":"GF(5)","values":["1","0","4","0"]}"#).unwrap();
        let f = function_from_value(&v, Path::new(".")).unwrap();
        assert_eq!(f.support(), vec![0, 2]);
        let v: Value = serde_json::from_str(r#"{"group":{"name":"Z2","cayley":[[0,1],[1,0]]},"kind":"coset","subgroup":[0]}"#).unwrap();
        assert_eq!(action_from_value(&v, Path::new(".")).unwrap().size(), 2);
        assert!(matches!(group_from_value(&Value::from("nope"), Path::new(".")), Err(Error::InputError(_))));
        assert!(matches!(load_function(Path::new("/nonexistent.json")), Err(Error::InputError(_))));
        let bad: Value = serde_json::from_str(r#"{"action":{"group":"Z2","kind":"regular"},"field":"Q","values":["1"]}"#).unwrap();
        assert!(function_from_value(&bad, Path::new(".")).is_err());
    }
}
