use std::io::Read;
use std::path::Path;

use lattice_opoly::classify::{reconstruct, Classification};
use lattice_opoly::pearson::to_centered;
use lattice_opoly::recurrence::StructureConstants;
use lattice_opoly::{Form, PearsonPair};

fn read_text(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Parses a pair or a `classify` result and converts it to centered form.
pub fn parse_pair(text: &str) -> Result<PearsonPair, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let pair = if value.get("class").is_some() {
        let classification: Classification =
            serde_json::from_value(value).map_err(|e| format!("invalid classification: {e}"))?;
        reconstruct(&classification).map_err(|e| e.to_string())?
    } else {
        PearsonPair::from_json(text).map_err(|e| e.to_string())?
    };
    match pair.form() {
        Form::Centered => Ok(pair),
        _ => to_centered(&pair).map_err(|e| e.to_string()),
    }
}

pub fn load_pair(path: &Path) -> Result<PearsonPair, String> {
    parse_pair(&read_text(path)?)
}

pub fn constants_of(pair: &PearsonPair) -> Result<StructureConstants, String> {
    StructureConstants::from_pair(pair).map_err(|e| e.to_string())
}
