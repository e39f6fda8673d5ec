//! Vendored reference curves with known reduction type and torsion.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::io::{AnyModel, AnyPoint};

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureCurve {
    pub label: String,
    pub ainv: [String; 5],
    pub prime: u64,
    pub expected_type: String,
    pub torsion_point: serde_json::Value,
    pub torsion_order: u64,
    pub provenance: String,
}

impl FixtureCurve {
    pub fn model(&self) -> Result<AnyModel> {
        AnyModel::from_json(&json!({"base": {"kind": "rational"}, "ainv": self.ainv}))
    }

    pub fn point(&self, model: &AnyModel) -> Result<AnyPoint> {
        model.point_from_json(&self.torsion_point)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureFile {
    pub source: String,
    pub curves: Vec<FixtureCurve>,
}

impl FixtureFile {
    pub fn get(&self, label: &str) -> Option<&FixtureCurve> {
        self.curves.iter().find(|c| c.label == label)
    }
}

/// Location of the bundled fixture file in the source tree.
pub fn default_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/cremona.json")
}

pub fn load(path: &Path) -> Result<FixtureFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

/// The bundled fixtures, or `None` if the file is absent.
pub fn load_default() -> Option<FixtureFile> {
    let path = default_path();
    if !path.exists() {
        return None;
    }
    Some(load(&path).expect("bundled fixture file is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::LocalContext;

    #[test]
    fn fixtures_classify_as_recorded() {
        let Some(file) = load_default() else {
            eprintln!("warning: fixture file missing, skipping");
            return;
        };
        assert_eq!(file.curves.len(), 4);
        for c in &file.curves {
            let m = c.model().unwrap();
            let rec = m.classify(&LocalContext::new(c.prime, 1).unwrap()).unwrap();
            assert_eq!(rec.kodaira_type.to_string(), c.expected_type, "{}", c.label);
            let pt = c.point(&m).unwrap();
            assert_eq!(m.point_order(&pt, 200).unwrap(), Some(c.torsion_order), "{}", c.label);
        }
    }
}
