//! Coefficient matrices as CSV.
//!
//! The first line is a `#` header with the group name, its order, the
//! conductor and the mode. Then comes a header row of column labels and one
//! row per element, both in canonical element order. Exact cells hold the
//! scalar text form; complex mode writes two decimal columns per element.

use std::str::FromStr;
use std::sync::Arc;

use super::rank::coefficient_matrix;
use super::tensor::Tensor2;
use crate::cyclo::CycScalar;
use crate::error::{Error, Result};
use crate::grp::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportMode {
    Exact,
    Complex,
}

impl FromStr for ExportMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ExportMode::Exact),
            "complex" => Ok(ExportMode::Complex),
            _ => Err(Error::Parse(format!("unknown export mode `{s}`"))),
        }
    }
}

impl ExportMode {
    fn name(self) -> &'static str {
        match self {
            ExportMode::Exact => "exact",
            ExportMode::Complex => "complex",
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

pub fn to_csv(t: &Tensor2, mode: ExportMode) -> Result<String> {
    let g = t.group();
    let n = g.order();
    let mut out = format!("# group={} order={} conductor={} mode={}\n", g.describe(), n, t.conductor(), mode.name());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["".to_string()];
    for h in 0..n {
        match mode {
            ExportMode::Exact => head.push(g.label(h)),
            ExportMode::Complex => {
                head.push(format!("{}.re", g.label(h)));
                head.push(format!("{}.im", g.label(h)));
            }
        }
    }
    w.write_record(&head).map_err(csv_err)?;
    for (i, row) in coefficient_matrix(t).iter().enumerate() {
        let mut rec = vec![g.label(i)];
        for c in row {
            match mode {
                ExportMode::Exact => rec.push(c.to_string()),
                ExportMode::Complex => {
                    let z = c.to_complex();
                    rec.push(format!("{:.15e}", z.re));
                    rec.push(format!("{:.15e}", z.im));
                }
            }
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
    Ok(out)
}

fn header_field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.split_whitespace().find_map(|w| w.strip_prefix(key)?.strip_prefix('='))
}

/// Reads back an exact-mode export over `group`.
pub fn from_csv(text: &str, group: Arc<FiniteGroup>) -> Result<Tensor2> {
    let first = text.lines().next().unwrap_or_default();
    let bad = |m: &str| Error::Parse(format!("export header: {m}"));
    if !first.starts_with('#') {
        return Err(bad("missing `#` line"));
    }
    if header_field(first, "mode") != Some("exact") {
        return Err(bad("only exact exports can be read back"));
    }
    let conductor: u32 = header_field(first, "conductor").and_then(|c| c.parse().ok()).ok_or_else(|| bad("conductor"))?;
    let order: usize = header_field(first, "order").and_then(|c| c.parse().ok()).ok_or_else(|| bad("order"))?;
    if order != group.order() {
        return Err(Error::GroupMismatch);
    }
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).has_headers(true).from_reader(text.as_bytes());
    let cols: Vec<usize> = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .skip(1)
        .map(|l| group.parse_element(l))
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let g = group.parse_element(rec.get(0).unwrap_or_default())?;
        for (cell, &h) in rec.iter().skip(1).zip(&cols) {
            let c: CycScalar = cell.parse()?;
            if !c.is_zero() {
                terms.push(([g as u32, h as u32], c));
            }
        }
    }
    Tensor2::from_terms(group, conductor, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_of_unity;
    use crate::grp::AbelianGroup;

    #[test]
    fn unit_exports_one_cell() {
        let g = Arc::new(FiniteGroup::abelian(&AbelianGroup::new(vec![3, 3]).unwrap()));
        let csv = to_csv(&Tensor2::unit(Arc::clone(&g), 3), ExportMode::Exact).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# group=Z3xZ3 order=9 conductor=3 mode=exact");
        assert_eq!(lines.len(), 11);
        let ones = csv.matches("1 (N=3)").count();
        assert_eq!(ones, 1);
        assert!(lines[2].contains("1 (N=3)"));
    }

    #[test]
    fn exact_round_trip() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = Tensor2::from_terms(
            Arc::clone(&g),
            6,
            [([1, 2], root_of_unity(6, 1)), ([5, 0], CycScalar::from_integer(6, -3))],
        )
        .unwrap();
        let csv = to_csv(&t, ExportMode::Exact).unwrap();
        assert_eq!(from_csv(&csv, g).unwrap(), t);
    }

    #[test]
    fn complex_cells() {
        let g = Arc::new(FiniteGroup::abelian(&AbelianGroup::cyclic(2).unwrap()));
        let t = Tensor2::basis(Arc::clone(&g), 4, [1, 1]).scale(&root_of_unity(4, 1));
        let csv = to_csv(&t, ExportMode::Complex).unwrap();
        let last = csv.lines().last().unwrap();
        let cells: Vec<f64> = last.split(',').skip(1).map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 4);
        assert!((cells[3] - 1.0).abs() < 1e-12 && cells[2].abs() < 1e-12);
        assert!(from_csv(&csv, g).is_err());
    }
}
