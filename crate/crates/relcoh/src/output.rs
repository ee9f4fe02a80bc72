//! JSON, CSV and plain-text rendering of command results.

use clap::ValueEnum;
use relcoh_core::classes::{ClassReport, FortuityReport};
use relcoh_core::schemes::RestrictionReport;
use serde::Serialize;

use crate::engine::{Comparison, LevelTable, SectorReport};
use crate::repro::Summary;
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

/// A result that can be flattened into a table for CSV and plain-text output.
pub trait Tabular: Serialize {
    fn headers(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn render<T: Tabular>(value: &T, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(value.headers())?;
            for row in value.rows() {
                w.write_record(&row)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Pretty => Ok(pretty(&value.headers(), &value.rows())),
    }
}

fn pretty(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn primes(p: &[u64]) -> String {
    p.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

const SECTOR_HEADERS: [&str; 13] = [
    "g", "p", "n", "level", "charge", "dim_cochain", "dim_invariant", "rank_d_out", "rank_d_in", "dim_H", "method", "primes", "wall_time",
];

fn sector_row(r: &SectorReport) -> Vec<String> {
    vec![
        r.spec.to_string(),
        r.p.to_string(),
        r.n.to_string(),
        r.level.to_string(),
        r.charge.to_string(),
        r.dim_cochain.to_string(),
        r.dim_invariant.to_string(),
        r.rank_d_out.to_string(),
        r.rank_d_in.to_string(),
        r.dim_h.to_string(),
        format!("{:?}", r.method).to_lowercase(),
        primes(&r.primes),
        opt(&r.wall_time),
    ]
}

impl Tabular for SectorReport {
    fn headers(&self) -> Vec<&'static str> {
        SECTOR_HEADERS.to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![sector_row(self)]
    }
}

impl Tabular for LevelTable {
    fn headers(&self) -> Vec<&'static str> {
        SECTOR_HEADERS.to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.sectors.iter().map(sector_row).collect()
    }
}

/// Several level tables, for `table --lmax`.
#[derive(Serialize)]
#[serde(transparent)]
pub struct Tables(pub Vec<LevelTable>);

impl Tabular for Tables {
    fn headers(&self) -> Vec<&'static str> {
        SECTOR_HEADERS.to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.0.iter().flat_map(|t| t.rows()).collect()
    }
}

impl Tabular for Comparison {
    fn headers(&self) -> Vec<&'static str> {
        vec!["a", "b", "level", "p", "n", "dim_H_a", "dim_H_b", "difference"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.mismatches
            .iter()
            .map(|m| {
                vec![
                    self.a.to_string(),
                    self.b.to_string(),
                    m.level.to_string(),
                    m.p.to_string(),
                    m.n.to_string(),
                    m.dim_h_a.to_string(),
                    m.dim_h_b.to_string(),
                    m.difference.to_string(),
                ]
            })
            .collect()
    }
}

impl Tabular for RestrictionReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["g", "n", "dim_scheme_invariants", "dim_cartan_invariants", "rank_restriction", "dim_kernel", "method", "primes"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.g.clone(),
            self.n.to_string(),
            self.dim_scheme_invariants.to_string(),
            self.dim_cartan_invariants.to_string(),
            self.rank_restriction.to_string(),
            self.dim_kernel.to_string(),
            self.method.clone(),
            primes(&self.primes),
        ]]
    }
}

impl Tabular for ClassReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["g", "p", "n", "closed", "exact", "fortuitous", "cartan_restriction_zero", "certified", "method", "primes"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.g.clone(),
            self.p.to_string(),
            self.n.to_string(),
            self.closed.to_string(),
            self.exact.to_string(),
            self.fortuitous.to_string(),
            opt(&self.cartan_restriction_zero),
            self.certified.to_string(),
            self.method.clone(),
            primes(&self.primes),
        ]]
    }
}

impl Tabular for FortuityReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["g", "p", "n", "dim_H", "graviton_products", "graviton_span", "fortuitous_dim", "method", "primes"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.g.clone(),
            self.p.to_string(),
            self.n.to_string(),
            self.dim_h.to_string(),
            self.graviton_products.to_string(),
            self.graviton_span.to_string(),
            self.fortuitous_dim.to_string(),
            self.method.clone(),
            primes(&self.primes),
        ]]
    }
}

impl Tabular for Summary {
    fn headers(&self) -> Vec<&'static str> {
        vec!["criterion", "status", "seconds", "detail"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.criteria
            .iter()
            .map(|c| vec![format!("{} {}", c.id, c.name), c.status().into(), format!("{:.1}", c.seconds), c.detail.clone()])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Engine, EngineConfig};
    use relcoh_core::MultiDegree;

    #[test]
    fn formats() {
        let g = Engine::algebra("sl2".parse().unwrap()).unwrap();
        let r = Engine::new(EngineConfig::default(), None).dim_h(&g, 2, MultiDegree([0, 0, 1, 1, 0])).unwrap();
        let json: serde_json::Value = serde_json::from_str(&render(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(json["dim_H"], 1);
        assert_eq!(json["charge"], serde_json::json!(["0", "0", "1", "1", "0"]));
        let csv = render(&r, Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().next().unwrap().starts_with("g,p,n,level"));
        let text = render(&r, Format::Pretty).unwrap();
        assert!(text.contains("dim_H"));
    }
}
