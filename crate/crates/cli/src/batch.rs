//! Corpus runs: one CSV row per manifest entry, in manifest order.

use fim_core::extremal::{self, InstanceSpec};
use fim_core::rational::{self, int, ratio};
use fim_core::{local_ratio, lp, oracle, subcubic, Graph};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Default, Serialize)]
pub struct BatchRow {
    pub index: usize,
    pub family: String,
    pub delta: String,
    pub n: String,
    pub seed: String,
    pub vertices: String,
    pub edges: String,
    pub max_degree: String,
    pub nu_s: String,
    pub nu_s_star: String,
    pub gap: String,
    pub gap_bound: String,
    pub gap_within_bound: String,
    pub subcubic_size: String,
    pub subcubic_ok: String,
    pub localratio_size: String,
    pub localratio_ok: String,
    pub error: String,
}

/// Parses a manifest: a JSON array whose entries are decoded one at a time,
/// so a malformed entry only spoils its own row.
pub fn parse_manifest(text: &str) -> Result<Vec<Result<InstanceSpec, String>>, CliError> {
    let entries: Vec<Value> = serde_json::from_str(text)?;
    Ok(entries
        .into_iter()
        .map(|v| serde_json::from_value::<InstanceSpec>(v).map_err(|e| format!("malformed instance: {e}")))
        .collect())
}

fn fill(row: &mut BatchRow, g: &Graph, cap: usize) -> fim_core::Result<()> {
    row.vertices = g.n().to_string();
    row.edges = g.m().to_string();
    row.max_degree = g.max_degree().to_string();
    let nu_s_star = lp::solve_primal(g)?.objective;
    row.nu_s_star = rational::format(&nu_s_star);

    let nu_s = match oracle::exact_nu_s(g, cap) {
        Ok((size, _)) => Some(size),
        Err(fim_core::Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(nu_s) = nu_s {
        row.nu_s = nu_s.to_string();
        if nu_s > 0 {
            let gap = &nu_s_star / int(nu_s as i64);
            row.gap = rational::format(&gap);
            if g.max_degree() >= 2 {
                let bound = extremal::conjecture_gap_bound(g.max_degree())?;
                row.gap_within_bound = (gap <= bound).to_string();
                row.gap_bound = rational::format(&bound);
            }
        }
    }

    match subcubic::subcubic_primal_dual(g) {
        Ok(cert) => {
            row.subcubic_size = cert.matching.size().to_string();
            let ok = cert.ratio_ok && ratio(7, 3) * int(cert.matching.size() as i64) >= nu_s_star;
            row.subcubic_ok = ok.to_string();
        }
        Err(fim_core::Error::Precondition(_)) => {}
        Err(e) => return Err(e),
    }

    if g.m() > 0 {
        let cert = local_ratio::approximate_fim(g, g.max_degree().max(3))?;
        row.localratio_size = cert.matching.size().to_string();
        row.localratio_ok = cert.ratio_ok.to_string();
    }
    Ok(())
}

fn run_one(index: usize, spec: &Result<InstanceSpec, String>, cap: usize) -> BatchRow {
    let mut row = BatchRow {
        index,
        ..BatchRow::default()
    };
    let spec = match spec {
        Ok(spec) => spec,
        Err(why) => {
            row.error = why.clone();
            return row;
        }
    };
    row.family = spec.family.name().to_string();
    row.delta = spec.delta.to_string();
    row.n = spec.n.to_string();
    row.seed = spec.seed.to_string();
    if let Err(e) = spec.generate().and_then(|g| fill(&mut row, &g, cap)) {
        row.error = e.to_string();
    }
    row
}

/// Runs every instance, at most `jobs` at a time, and returns the rows in
/// manifest order.
pub fn run(specs: &[Result<InstanceSpec, String>], jobs: usize, cap: usize) -> Result<Vec<BatchRow>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        specs
            .par_iter()
            .enumerate()
            .map(|(i, spec)| run_one(i, spec, cap))
            .collect()
    }))
}

pub fn to_csv(rows: &[BatchRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    // Written by hand so an empty batch still gets its header line.
    w.write_record([
        "index",
        "family",
        "delta",
        "n",
        "seed",
        "vertices",
        "edges",
        "max_degree",
        "nu_s",
        "nu_s_star",
        "gap",
        "gap_bound",
        "gap_within_bound",
        "subcubic_size",
        "subcubic_ok",
        "localratio_size",
        "localratio_ok",
        "error",
    ])
    .map_err(csv_error)?;
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Input(format!("csv: {e}"))
}

/// Manifest text to CSV text.
pub fn batch(manifest: &str, jobs: usize, cap: usize) -> Result<String, CliError> {
    let specs = parse_manifest(manifest)?;
    to_csv(&run(&specs, jobs, cap)?)
}
