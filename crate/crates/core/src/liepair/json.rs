//! Model files:
//! `{"name", "n", "r", "rprime", "rho": [[poly]], "c": [[i, j, k, poly]]}`
//! with one-based bracket indices.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::model::LiePairModel;
use crate::error::{Error, Result};
use crate::exactalg::parse::parse_poly;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default)]
    pub name: Option<String>,
    pub n: usize,
    pub r: usize,
    pub rprime: usize,
    pub rho: Vec<Vec<String>>,
    #[serde(default)]
    pub c: Vec<(usize, usize, usize, String)>,
}

impl ModelFile {
    pub fn into_model(self) -> Result<LiePairModel<BigRational>> {
        let m = self.r + self.rprime;
        let mut rho = Vec::with_capacity(self.rho.len());
        for (i, row) in self.rho.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, s) in row.iter().enumerate() {
                out.push(parse_poly(s, self.n).map_err(|e| Error::ModelFile(format!("rho[{}][{}]: {}", i, j, e)))?);
            }
            rho.push(out);
        }
        let mut c = Vec::with_capacity(self.c.len());
        for (t, (i, j, k, s)) in self.c.iter().enumerate() {
            for idx in [i, j, k] {
                if *idx == 0 || *idx > m {
                    return Err(Error::ModelFile(format!("c[{}]: index {} out of range 1..={}", t, idx, m)));
                }
            }
            let p = parse_poly(s, self.n).map_err(|e| Error::ModelFile(format!("c[{}][3]: {}", t, e)))?;
            c.push((i - 1, j - 1, k - 1, p));
        }
        let name = self.name.unwrap_or_else(|| "unnamed".to_string());
        LiePairModel::new(name, self.n, self.r, self.rprime, rho, c).map_err(|e| Error::ModelFile(e.to_string()))
    }

    pub fn from_model(model: &LiePairModel<BigRational>) -> Self {
        ModelFile {
            name: Some(model.name.clone()),
            n: model.n(),
            r: model.r(),
            rprime: model.rprime(),
            rho: (0..model.m()).map(|i| model.rho(i).iter().map(|p| p.to_string()).collect()).collect(),
            c: model.structure().into_iter().map(|(i, j, k, p)| (i + 1, j + 1, k + 1, p.to_string())).collect(),
        }
    }
}

/// Parse a model file; syntax errors carry serde's line and column.
pub fn parse_model(text: &str) -> Result<LiePairModel<BigRational>> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::ModelFile(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    file.into_model()
}

pub fn to_json(model: &LiePairModel<BigRational>) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(model)).expect("model serializes")
}
