//! `harmvol eval`: κ_ν, κ′_ν and the other engines on a tensor from a file.

use std::path::Path;

use harmvol_core::homology::HTensor;
use serde::Serialize;

use crate::config::{Common, Format, RunConfig};
use crate::engines::{Evaluator, Values};
use crate::render::{value_cells, value_headers, Grid};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct EvalRow {
    pub nu: usize,
    #[serde(flatten)]
    pub values: Values,
}

#[derive(Debug, Serialize)]
pub struct EvalReport<'a> {
    pub version: u32,
    pub config: &'a RunConfig,
    pub tensor: String,
    pub values: Vec<EvalRow>,
}

/// Reads and checks the tensor, then fixes g from it.
pub fn load(file: &Path, common: &Common) -> Result<(HTensor, RunConfig), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let a = HTensor::from_json_str(&text, 3)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    if let Some(g) = common.g {
        if g != a.genus() {
            return Err(CliError::Usage(format!(
                "--g {g} disagrees with g = {} in {}",
                a.genus(),
                file.display()
            )));
        }
    }
    if a.degree() != 3 {
        return Err(CliError::Input(format!(
            "{}: expected a tensor of degree 3, got degree {}",
            file.display(),
            a.degree()
        )));
    }
    a.check_in_k_tensor_h()?;
    let cfg = RunConfig::new("eval", common, a.genus(), None, Format::Markdown)?;
    Ok((a, cfg))
}

pub fn build(cfg: &RunConfig, a: &HTensor) -> Result<Vec<EvalRow>, CliError> {
    let ev = Evaluator::new(cfg)?;
    cfg.nu
        .iter()
        .map(|&nu| {
            Ok(EvalRow {
                nu,
                values: ev.values(a, nu, true)?,
            })
        })
        .collect()
}

pub fn render(cfg: &RunConfig, a: &HTensor, rows: Vec<EvalRow>) -> Result<String, CliError> {
    if cfg.format == Format::Json {
        let r = EvalReport {
            version: 1,
            config: cfg,
            tensor: a.to_string(),
            values: rows,
        };
        return Ok(serde_json::to_string_pretty(&r)? + "\n");
    }
    let mut g = Grid::new(["nu"]);
    if let Some(r) = rows.first() {
        g.headers.extend(value_headers(&r.values).into_iter().map(String::from));
    }
    for r in &rows {
        let mut cells = vec![r.nu.to_string()];
        cells.extend(value_cells(&r.values));
        g.push(cells);
    }
    match cfg.format {
        Format::Csv => g.csv(),
        _ => Ok(format!("A = {a}  (g = {})\n\n{}", cfg.g, g.markdown())),
    }
}
