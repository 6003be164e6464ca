//! CSV output for campaign results and plot-ready geometry.
//!
//! Numbers are written as the shortest decimal that parses back to the same
//! `f64`, with a dot separator and no locale handling.

use std::io::Write;

use super::{AdversarialRun, AverageCampaign, CampaignSummary, MatrixCampaign};
use crate::instance::assign;
use crate::solvers::SolverKind;
use crate::{Instance, Result, Solution};

pub type CsvResult<T> = std::result::Result<T, csv::Error>;

pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

pub const RECORD_HEADER: [&str; 7] = [
    "instance_id",
    "setup_label",
    "challenger",
    "challenged",
    "d_challenger",
    "d_challenged",
    "delta_d",
];

/// One row per comparison record.
pub fn write_records<W: Write>(out: W, campaigns: &[AverageCampaign]) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in campaigns.iter().flat_map(|c| &c.records) {
        w.write_record([
            r.instance_id.as_str(),
            r.setup_label.as_str(),
            r.challenger.name(),
            r.challenged.name(),
            &fmt_f64(r.d_challenger),
            &fmt_f64(r.d_challenged),
            &fmt_f64(r.delta_d),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Mean `ΔD` per setup (rows) and challenger (columns).
pub fn write_summary<W: Write>(out: W, summaries: &[CampaignSummary]) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let challengers: Vec<SolverKind> = summaries
        .first()
        .map(|s| s.stats.iter().map(|c| c.challenger).collect())
        .unwrap_or_default();
    let mut header = vec![
        "setup".to_string(),
        "customers".into(),
        "centers".into(),
        "challenged".into(),
        "instances".into(),
    ];
    header.extend(challengers.iter().map(|k| k.name().to_string()));
    w.write_record(&header)?;
    for s in summaries {
        let count = s.stats.first().map_or(0, |c| c.count);
        let mut row = vec![
            s.setup.label.clone(),
            s.setup.customers.to_string(),
            s.setup.centers.to_string(),
            s.challenged.name().to_string(),
            count.to_string(),
        ];
        row.extend(challengers.iter().map(|&k| {
            s.stats_for(k)
                .map_or(String::new(), |c| fmt_f64(c.mean_delta))
        }));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per adversarial run, pointing at its persisted instance file.
pub fn write_adversarial<W: Write>(out: W, runs: &[AdversarialRun]) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "setup_label",
        "challenger",
        "challenged",
        "seed",
        "challenger_seed",
        "challenged_seed",
        "best_delta",
        "instance_file",
    ])?;
    for r in runs {
        w.write_record([
            r.setup_label.as_str(),
            r.challenger.kind.name(),
            r.challenged.kind.name(),
            &r.seed.to_string(),
            &r.challenger.seed.to_string(),
            &r.challenged.seed.to_string(),
            &fmt_f64(r.best_delta),
            &format!("{}.json", r.file_stem()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Best fitness per generation for every run, in long format.
pub fn write_histories<W: Write>(out: W, runs: &[AdversarialRun]) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "challenger",
        "challenged",
        "seed",
        "generation",
        "best_fitness",
    ])?;
    for r in runs {
        for (g, f) in r.fitness_history.iter().enumerate() {
            w.write_record([
                r.challenger.kind.name(),
                r.challenged.kind.name(),
                &r.seed.to_string(),
                &g.to_string(),
                &fmt_f64(*f),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Challengers as rows, challenged as columns, empty diagonal.
pub fn write_matrix<W: Write>(out: W, m: &MatrixCampaign) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["challenger".to_string()];
    header.extend(m.kinds.iter().map(|k| k.name().to_string()));
    w.write_record(&header)?;
    for (i, row) in m.cells.iter().enumerate() {
        let mut rec = vec![m.kinds[i].name().to_string()];
        rec.extend(row.iter().map(|c| c.map_or(String::new(), fmt_f64)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub const GEOMETRY_HEADER: [&str; 8] = ["kind", "index", "owner", "x", "y", "x2", "y2", "length"];

/// Customers, centers, and one customer-to-owner segment per customer.
/// Segment lengths are the assignment distances, so the longest equals `D`.
pub fn write_geometry<W: Write>(out: W, inst: &Instance, solution: &Solution) -> Result<()> {
    let a = assign(inst, solution.centers())?;
    let mut w = csv::Writer::from_writer(out);
    let mut rows: Vec<[String; 8]> = Vec::with_capacity(2 * inst.len() + inst.k());
    for (i, p) in inst.customers().iter().enumerate() {
        rows.push(point_row("customer", i, a.owner[i], p.x, p.y));
    }
    for &c in solution.centers() {
        let p = inst.customer(c);
        rows.push(point_row("center", c, c, p.x, p.y));
    }
    for (i, p) in inst.customers().iter().enumerate() {
        let q = inst.customer(a.owner[i]);
        rows.push([
            "segment".into(),
            i.to_string(),
            a.owner[i].to_string(),
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(q.x),
            fmt_f64(q.y),
            fmt_f64(a.dist[i]),
        ]);
    }
    let csv_err = |e: csv::Error| crate::Error::InvalidConfig(format!("writing geometry: {e}"));
    w.write_record(GEOMETRY_HEADER).map_err(csv_err)?;
    for row in &rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush()
        .map_err(|e| crate::Error::InvalidConfig(format!("writing geometry: {e}")))?;
    Ok(())
}

fn point_row(kind: &str, index: usize, owner: usize, x: f64, y: f64) -> [String; 8] {
    [
        kind.into(),
        index.to_string(),
        owner.to_string(),
        fmt_f64(x),
        fmt_f64(y),
        String::new(),
        String::new(),
        String::new(),
    ]
}
