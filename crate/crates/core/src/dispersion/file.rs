//! Model files.
//!
//! A model file is TOML:
//!
//! ```toml
//! name = "N-BK7"
//! kind = "sellmeier"            # constant | cauchy | sellmeier | tabulated
//! coefficients = [1.03961212, 0.231792344, 1.01046945,
//!                 0.00600069867, 0.0200179144, 103.560653]
//! band_nm = [300.0, 2500.0]
//! ```
//!
//! Coefficient layouts: constant `[n]`; cauchy `[A, B]` or `[A, B, C]`
//! (λ in µm); sellmeier `[B1, B2, B3, C1, C2, C3]` (C in µm²). A tabulated
//! model names a two-column CSV (`lambda_nm,n`) via `table`, resolved
//! relative to the model file; a bare `.csv` path is also accepted.

use std::path::Path;

use serde::Deserialize;

use super::DispersionModel;
use crate::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: Option<String>,
    pub kind: String,
    #[serde(default)]
    pub coefficients: Vec<f64>,
    pub band_nm: Option<[f64; 2]>,
    pub table: Option<String>,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Loads a model from a `.toml` model file or a `lambda_nm,n` CSV table.
pub fn load_model(path: &Path) -> Result<DispersionModel> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let is_csv = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("csv"))
        .unwrap_or(false);
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    if is_csv {
        let rows = parse_table_csv(&text)?;
        return Ok(DispersionModel::tabulated(&rows)?.with_name(stem));
    }
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let f: ModelFile = toml::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let name = f.name.clone().unwrap_or(stem);
    Ok(build(f, base)?.with_name(name))
}

/// Parses TOML model text; `base_dir` resolves a relative `table` path.
pub fn parse_model_toml(text: &str, base_dir: &Path) -> Result<DispersionModel> {
    let f: ModelFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    build(f, base_dir)
}

fn build(f: ModelFile, base_dir: &Path) -> Result<DispersionModel> {
    let c = &f.coefficients;
    let need_band = || {
        f.band_nm
            .ok_or_else(|| Error::InvalidModel(format!("`{}` models need band_nm", f.kind)))
    };
    let model = match f.kind.to_ascii_lowercase().as_str() {
        "constant" => {
            let [n] = c.as_slice() else {
                return Err(Error::InvalidModel("constant model takes exactly one coefficient".into()));
            };
            let m = DispersionModel::constant(*n)?;
            match f.band_nm {
                Some(b) => m.restrict_band_nm(b)?,
                None => m,
            }
        }
        "cauchy" => match c.as_slice() {
            [a, b] => DispersionModel::cauchy(*a, *b, 0.0, need_band()?)?,
            [a, b, cc] => DispersionModel::cauchy(*a, *b, *cc, need_band()?)?,
            _ => return Err(Error::InvalidModel("cauchy model takes 2 or 3 coefficients".into())),
        },
        "sellmeier" => {
            let [b1, b2, b3, c1, c2, c3] = c.as_slice() else {
                return Err(Error::InvalidModel("sellmeier model takes 6 coefficients".into()));
            };
            DispersionModel::sellmeier([*b1, *b2, *b3], [*c1, *c2, *c3], need_band()?)?
        }
        "tabulated" => {
            let rel = f
                .table
                .as_deref()
                .ok_or_else(|| Error::InvalidModel("tabulated model needs `table`".into()))?;
            let path = base_dir.join(rel);
            let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            let m = DispersionModel::tabulated(&parse_table_csv(&text)?)?;
            match f.band_nm {
                Some(b) => m.restrict_band_nm(b)?,
                None => m,
            }
        }
        other => return Err(Error::InvalidModel(format!("unknown model kind `{other}`"))),
    };
    Ok(match f.name {
        Some(n) => model.with_name(n),
        None => model,
    })
}

/// Parses `lambda_nm,n` rows. A header row is optional.
pub fn parse_table_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!("row {}: expected 2 columns, got {}", i + 1, rec.len())));
        }
        let parsed = (rec[0].parse::<f64>(), rec[1].parse::<f64>());
        match parsed {
            (Ok(l), Ok(n)) => rows.push((l, n)),
            _ if i == 0 => continue,
            _ => return Err(Error::Parse(format!("row {}: not numeric", i + 1))),
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::ModelKind;

    #[test]
    fn sellmeier_file_matches_builtin() {
        let text = r#"
            name = "N-BK7"
            kind = "sellmeier"
            coefficients = [1.03961212, 0.231792344, 1.01046945, 0.00600069867, 0.0200179144, 103.560653]
            band_nm = [300.0, 2500.0]
        "#;
        let m = parse_model_toml(text, Path::new(".")).unwrap();
        assert_eq!(m.name(), "N-BK7");
        assert_eq!(m.kind(), ModelKind::Sellmeier);
        let w = crate::constants::omega_from_lambda_nm(700.0);
        assert_eq!(m.n(w).unwrap(), DispersionModel::bk7().n(w).unwrap());
    }

    #[test]
    fn bad_files() {
        let base = Path::new(".");
        assert!(parse_model_toml("kind = \"cauchy\"\ncoefficients = [1.5, 0.004]", base).is_err());
        assert!(parse_model_toml("kind = \"prism\"", base).is_err());
        assert!(parse_model_toml("kind = \"constant\"\ncoefficients = [1.0, 2.0]", base).is_err());
        assert!(parse_model_toml("kind = 3", base).is_err());
    }

    #[test]
    fn csv_with_and_without_header() {
        let a = parse_table_csv("lambda_nm,n\n500,1.5\n600, 1.49\n").unwrap();
        let b = parse_table_csv("500,1.5\n600,1.49\n").unwrap();
        assert_eq!(a, b);
        assert!(parse_table_csv("500,1.5\nfoo,1.49\n").is_err());
    }

    #[test]
    fn tabulated_file_on_disk() {
        let dir = std::env::temp_dir().join(format!("dm-table-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("water.csv"), "lambda_nm,n\n400,1.339\n500,1.335\n600,1.332\n700,1.331\n")
            .unwrap();
        std::fs::write(dir.join("water.toml"), "kind = \"tabulated\"\ntable = \"water.csv\"\n").unwrap();
        let m = load_model(&dir.join("water.toml")).unwrap();
        assert_eq!(m.kind(), ModelKind::Tabulated);
        assert_eq!(m.name(), "water");
        let direct = load_model(&dir.join("water.csv")).unwrap();
        let w = crate::constants::omega_from_lambda_nm(550.0);
        assert_eq!(m.n(w).unwrap(), direct.n(w).unwrap());
        assert!(matches!(load_model(&dir.join("missing.toml")), Err(Error::Io { .. })));
        std::fs::remove_dir_all(&dir).ok();
    }
}
