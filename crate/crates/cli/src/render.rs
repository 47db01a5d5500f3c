//! Markdown and CSV grids shared by the three commands.

use crate::engines::Values;
use crate::CliError;

pub struct Grid {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn markdown(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        let mut s = line(&self.headers);
        s.push_str(&line(&vec!["---".to_string(); self.headers.len()]));
        for r in &self.rows {
            s.push_str(&line(r));
        }
        s
    }

    pub fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Column names for the engine values that are present.
pub fn value_headers(v: &Values) -> Vec<&'static str> {
    let mut h = Vec::new();
    if v.combinatorial.is_some() {
        h.push("combinatorial");
    }
    if v.kappa_prime.is_some() {
        h.push("kappa_prime");
    }
    if v.composed.is_some() {
        h.push("composed");
    }
    if v.table.is_some() {
        h.push("table");
    }
    if v.numeric.is_some() {
        h.extend(["numeric", "lattice_distance"]);
    }
    h.push("agree");
    h
}

pub fn value_cells(v: &Values) -> Vec<String> {
    let mut c: Vec<String> = [&v.combinatorial, &v.kappa_prime, &v.composed, &v.table]
        .into_iter()
        .flatten()
        .cloned()
        .collect();
    if let Some(n) = &v.numeric {
        c.push(format!("{:.12}", n.value));
        c.push(format!("{:.1e}", n.lattice_distance));
    }
    c.push(if v.agree { "yes" } else { "NO" }.to_string());
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_render_in_both_formats() {
        let mut g = Grid::new(["a", "b"]);
        g.push(vec!["1".into(), "x, y".into()]);
        assert_eq!(g.markdown(), "| a | b |\n| --- | --- |\n| 1 | x, y |\n");
        assert_eq!(g.csv().unwrap(), "a,b\n1,\"x, y\"\n");
    }
}
