use std::path::Path;

use clap::ValueEnum;

use polyflip::box_polytope::box_submodular;
use polyflip::hypergraph::{enumerate_hypergraphs, induced_digraph, Hypergraph};
use polyflip::polymatroid::{
    check_correspondence, check_submodular_with, elements_of, f_hypergraphic, graph_associahedron_oracle, CheckMode,
    SubmodularOracle, MAX_EXHAUSTIVE_N,
};
use polyflip::special_cases::incidence_oracle;

use crate::error::{CliError, CliResult};
use crate::files::{load, load_hypergraph, load_orientation, set_function_oracle, Instance, Strictness};
use crate::report::Report;
use crate::Status;

/// Set function derived from a graph file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphOracle {
    /// Number of edges meeting a vertex set.
    Incidence,
    /// Connected subsets meeting a vertex set.
    BuildingSet,
}

fn pass_fail(ok: bool) -> (&'static str, Status) {
    if ok {
        ("PASS", Status::Ok)
    } else {
        ("FAIL", Status::CheckFailed)
    }
}

pub fn submodular(
    path: &Path,
    graph_oracle: GraphOracle,
    seed: Option<u64>,
    samples: u64,
    strictness: Strictness,
) -> CliResult<(Report, Status)> {
    let oracle: SubmodularOracle = match load(path, strictness)? {
        Instance::Hypergraph(h) => f_hypergraphic(&h.hypergraph)?,
        Instance::Graph(g) => match graph_oracle {
            GraphOracle::Incidence => incidence_oracle(&g.graph)?,
            GraphOracle::BuildingSet => graph_associahedron_oracle(&g.graph)?,
        },
        Instance::Box(b) => box_submodular(&b)?,
        Instance::SetFunction { n, values } => set_function_oracle(n, values)?,
        other => {
            return Err(CliError::input(format!(
                "{}: no set function is attached to {} files",
                path.display(),
                other.kind()
            )))
        }
    };
    let mode = if oracle.n() <= MAX_EXHAUSTIVE_N {
        CheckMode::Exhaustive
    } else {
        let seed = seed.ok_or_else(|| {
            CliError::input(format!(
                "ground set of size {} is too large to enumerate; pass --seed for a sampled check",
                oracle.n()
            ))
        })?;
        CheckMode::Sampled { samples, seed }
    };
    let result = check_submodular_with(&oracle, mode)?;
    let (verdict, status) = pass_fail(result.is_submodular());
    let mut report = Report::new();
    report
        .push("oracle", oracle.label().unwrap_or("set function"))
        .push("n", oracle.n())
        .push("mode", if result.exhaustive { "exhaustive" } else { "sampled" })
        .push("pairs_checked", result.pairs_checked)
        .push("result", verdict);
    if let Some(v) = result.violation {
        report
            .push("witness_t", elements_of(v.t))
            .push("witness_u", elements_of(v.u))
            .push("f(T)+f(U)", v.lhs)
            .push("f(T&U)+f(T|U)", v.rhs);
    }
    Ok((report, status))
}

pub fn acyclic(hypergraph: &Path, orientation: &Path, strictness: Strictness) -> CliResult<(Report, Status)> {
    let file = load_hypergraph(hypergraph, strictness)?;
    let o = load_orientation(orientation, &file, strictness)?;
    let digraph = induced_digraph(&file.hypergraph, &o)?;
    let cycle = digraph.find_cycle();
    let (verdict, status) = pass_fail(cycle.is_none());
    let mut report = Report::new();
    report.push("arcs", digraph.num_arcs()).push("result", verdict);
    if let Some(cycle) = cycle {
        let names: Vec<String> = cycle.iter().map(|&v| file.vertices.name(v)).collect();
        report.push("cycle", names);
    }
    Ok((report, status))
}

pub fn correspondence(
    hypergraph: Option<&Path>,
    all_up_to: Option<usize>,
    max_edges: usize,
    max_size: usize,
    strictness: Strictness,
) -> CliResult<(Report, Status)> {
    let instances: Vec<Hypergraph> = match (hypergraph, all_up_to) {
        (Some(path), None) => vec![load_hypergraph(path, strictness)?.hypergraph],
        (None, Some(n)) => {
            const LIMIT: usize = 6;
            if n > LIMIT {
                return Err(polyflip::Error::Capacity {
                    what: "exhaustive correspondence vertex count".into(),
                    limit: LIMIT,
                }
                .into());
            }
            (1..=n).flat_map(|k| enumerate_hypergraphs(k, max_edges, max_size)).collect()
        }
        _ => return Err(CliError::input("pass exactly one of --hypergraph and --all-up-to")),
    };
    let mut failures = Vec::new();
    let mut orientations = 0;
    for h in &instances {
        let r = check_correspondence(h)?;
        orientations += r.acyclic_orientations;
        if !r.holds() {
            failures.push(format!("n={} edges={:?}", h.n(), h.edges()));
        }
    }
    let (verdict, status) = pass_fail(failures.is_empty());
    let mut report = Report::new();
    report
        .push("hypergraphs", instances.len())
        .push("acyclic_orientations", orientations)
        .push("failures", failures.len())
        .push("result", verdict);
    if let Some(first) = failures.first() {
        report.push("first_failure", first);
    }
    Ok((report, status))
}
