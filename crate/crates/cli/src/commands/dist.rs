use std::path::PathBuf;

use clap::Args;

use polyflip::flip::{approx_distance, distance_bounds, exact_distance, DistanceReport, SearchOptions};
use polyflip::hypergraph::{is_acyclic_orientation, max_codegree, Hypergraph, Orientation};
use polyflip::Error;

use crate::error::CliResult;
use crate::files::{load_hypergraph, load_orientation, HypergraphFile, Strictness};
use crate::report::Report;
use crate::Status;

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub hypergraph: PathBuf,
    #[arg(long)]
    pub from: PathBuf,
    #[arg(long)]
    pub to: PathBuf,
    /// Print the flip sequence.
    #[arg(long)]
    pub show_sequence: bool,
}

struct Loaded {
    file: HypergraphFile,
    h1: Orientation,
    h2: Orientation,
}

impl Loaded {
    fn hypergraph(&self) -> &Hypergraph {
        &self.file.hypergraph
    }
}

fn load(pair: &Pair, strictness: Strictness) -> CliResult<Loaded> {
    let file = load_hypergraph(&pair.hypergraph, strictness)?;
    let h1 = load_orientation(&pair.from, &file, strictness)?;
    let h2 = load_orientation(&pair.to, &file, strictness)?;
    Ok(Loaded { file, h1, h2 })
}

fn describe(loaded: &Loaded, result: &DistanceReport, show_sequence: bool) -> CliResult<Report> {
    let h = loaded.hypergraph();
    let (_, diff) = distance_bounds(h, &loaded.h1, &loaded.h2)?;
    let mut report = Report::new();
    report
        .push("method", result.method.as_str())
        .push("length", result.length)
        .push("lower_bound", result.lower_bound)
        .push("diff", diff)
        .push("delta2", max_codegree(h));
    if show_sequence {
        let names = &loaded.file.vertices;
        let flips: Vec<String> = result
            .sequence
            .flips
            .iter()
            .map(|f| format!("{}->{}", names.name(f.from), names.name(f.to)))
            .collect();
        report.push("sequence", flips);
    }
    Ok(report)
}

pub fn exact(pair: &Pair, forbid: &[String], max_states: usize, strictness: Strictness) -> CliResult<(Report, Status)> {
    let loaded = load(pair, strictness)?;
    let mut opts = SearchOptions::default().with_max_states(max_states);
    for v in forbid {
        opts = opts.forbid(loaded.file.vertices.parse_arg(v)?);
    }
    let result = exact_distance(loaded.hypergraph(), &loaded.h1, &loaded.h2, &opts)?;
    let mut report = describe(&loaded, &result, pair.show_sequence)?;
    if !forbid.is_empty() {
        report.push("forbidden", forbid);
    }
    Ok((report, Status::Ok))
}

pub fn approx(pair: &Pair, strictness: Strictness) -> CliResult<(Report, Status)> {
    let loaded = load(pair, strictness)?;
    let result = approx_distance(loaded.hypergraph(), &loaded.h1, &loaded.h2)?;
    Ok((describe(&loaded, &result, pair.show_sequence)?, Status::Ok))
}

pub fn bounds(pair: &Pair, strictness: Strictness) -> CliResult<(Report, Status)> {
    let loaded = load(pair, strictness)?;
    let h = loaded.hypergraph();
    if !is_acyclic_orientation(h, &loaded.h1)? || !is_acyclic_orientation(h, &loaded.h2)? {
        return Err(Error::NotAcyclic.into());
    }
    let (lower, upper) = distance_bounds(h, &loaded.h1, &loaded.h2)?;
    let mut report = Report::new();
    report
        .push("lower_bound", lower)
        .push("upper_bound", upper)
        .push("diff", upper)
        .push("delta2", max_codegree(h))
        .push("linear", h.is_linear());
    Ok((report, Status::Ok))
}
