//! `harmvol table`: I_ν on every canonical basis element of K⊗H.

use harmvol_core::homology::Gen;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::engines::{Evaluator, Values};
use crate::render::{value_cells, value_headers, Grid};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct Row {
    pub index: usize,
    pub case: u8,
    pub element: String,
    #[serde(flatten)]
    pub values: Values,
}

#[derive(Debug, Serialize)]
pub struct NuTable {
    pub nu: usize,
    pub disagreements: usize,
    pub rows: Vec<Row>,
}

#[derive(Debug, Serialize)]
pub struct TableReport<'a> {
    pub version: u32,
    pub config: &'a RunConfig,
    pub tables: Vec<NuTable>,
}

pub fn build(cfg: &RunConfig) -> Result<Vec<NuTable>, CliError> {
    let ev = Evaluator::new(cfg)?;
    let g = cfg.g;
    let mut tables = Vec::with_capacity(cfg.nu.len());
    for &nu in &cfg.nu {
        let mut rows = Vec::new();
        for e in ev.kb.elements() {
            for third in Gen::all(g) {
                let a = e.tensor.tensor_gen(third);
                rows.push(Row {
                    index: rows.len() + 1,
                    case: e.case.case_number(),
                    element: format!("{}⊗{third}", e.case),
                    values: ev.values(&a, nu, false)?,
                });
            }
        }
        let disagreements = rows.iter().filter(|r| !r.values.agree).count();
        tables.push(NuTable {
            nu,
            disagreements,
            rows,
        });
    }
    Ok(tables)
}

pub fn render(cfg: &RunConfig, tables: Vec<NuTable>) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            let r = TableReport {
                version: 1,
                config: cfg,
                tables,
            };
            Ok(serde_json::to_string_pretty(&r)? + "\n")
        }
        Format::Markdown => {
            let mut s = String::new();
            for t in &tables {
                s.push_str(&format!("## g = {}, ν = {}\n\n", cfg.g, t.nu));
                s.push_str(&grid(&t.rows).markdown());
                s.push_str(&format!("\n{} rows, {} disagreements\n\n", t.rows.len(), t.disagreements));
            }
            Ok(s)
        }
        Format::Csv => {
            let mut all = Vec::new();
            for t in &tables {
                all.extend(t.rows.iter().map(|r| (t.nu, r)));
            }
            let Some((_, first)) = all.first() else {
                return Ok(String::new());
            };
            let mut g = Grid::new(["nu", "index", "case", "element"]);
            g.headers.extend(value_headers(&first.values).into_iter().map(String::from));
            for (nu, r) in all {
                let mut cells = vec![nu.to_string()];
                cells.extend(row_cells(r));
                g.push(cells);
            }
            g.csv()
        }
    }
}

fn row_cells(r: &Row) -> Vec<String> {
    let mut c = vec![r.index.to_string(), r.case.to_string(), r.element.clone()];
    c.extend(value_cells(&r.values));
    c
}

fn grid(rows: &[Row]) -> Grid {
    let mut g = Grid::new(["#", "case", "element"]);
    if let Some(r) = rows.first() {
        g.headers.extend(value_headers(&r.values).into_iter().map(String::from));
    }
    for r in rows {
        g.push(row_cells(r));
    }
    g
}
