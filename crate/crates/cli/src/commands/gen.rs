use std::fs;
use std::path::{Path, PathBuf};

use clap::Subcommand;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use polyflip::box_polytope::BoxInstance;
use polyflip::flip::diff_count;
use polyflip::graph::Graph;
use polyflip::hardness::{build_reduction, build_star_gadget, distance_formula, min_vertex_cover};
use polyflip::hypergraph::{max_codegree, Hypergraph, Orientation};
use polyflip::polymatroid::{building_set_hypergraph, interval_hypergraph};

use crate::error::{CliError, CliResult};
use crate::files::{
    box_document, graph_document, hypergraph_document, load_graph, meta_document, orientation_document,
    write_document, Strictness,
};
use crate::report::Report;
use crate::Status;

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Vertex-cover reduction instance for a graph file.
    Hardness {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// The star gadget with its two broom orientations.
    StarGadget {
        #[arg(long)]
        out: PathBuf,
    },
    /// All intervals of `0..n` with at least two elements.
    Interval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connected vertex subsets of a graph file.
    BuildingSet {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random hypergraph with two random acyclic orientations.
    RandomHypergraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random simple graph, each pair present with probability `p`.
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random box instance with entries in `0..=max-entry`.
    RandomBox {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_entry: i64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Every hyperedge headed at its latest vertex in `order`.
fn orientation_from_order(h: &Hypergraph, order: &[usize]) -> Orientation {
    let mut rank = vec![0; h.n()];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let heads = h.edges().iter().map(|e| *e.iter().max_by_key(|&&v| rank[v]).unwrap()).collect();
    Orientation::new(h, heads).expect("heads lie in their edges")
}

fn opposite_orientations(h: &Hypergraph) -> (Orientation, Orientation) {
    let order: Vec<usize> = (0..h.n()).collect();
    let reversed: Vec<usize> = order.iter().rev().copied().collect();
    (orientation_from_order(h, &order), orientation_from_order(h, &reversed))
}

struct Output<'a> {
    dir: &'a Path,
    written: Vec<String>,
}

impl<'a> Output<'a> {
    fn new(dir: &'a Path) -> CliResult<Self> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(Output { dir, written: Vec::new() })
    }

    fn write(&mut self, name: &str, doc: &Value) -> CliResult<()> {
        let path = self.dir.join(name);
        write_document(&path, doc)?;
        self.written.push(path.display().to_string());
        Ok(())
    }
}

/// Writes hypergraph, orientation and metadata files and returns the
/// metadata fields.
fn write_hypergraph_instance(
    out: &mut Output,
    generator: &str,
    h: &Hypergraph,
    names: Option<&[String]>,
    h1: &Orientation,
    h2: &Orientation,
    extra: Value,
) -> CliResult<Value> {
    out.write("hypergraph.json", &hypergraph_document(h, names))?;
    out.write("h1.json", &orientation_document(h1))?;
    out.write("h2.json", &orientation_document(h2))?;
    let mut meta = json!({
        "generator": generator,
        "n": h.n(),
        "m": h.num_edges(),
        "delta2": max_codegree(h),
        "diff": diff_count(h, h1, h2)?,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    out.write("meta.json", &meta_document(meta.clone()))?;
    Ok(meta)
}

pub fn run(generator: Generator, strictness: Strictness) -> CliResult<(Report, Status)> {
    let (meta, written) = match generator {
        Generator::Hardness { graph, out } => {
            let g = load_graph(&graph, strictness)?.graph;
            let inst = build_reduction(&g);
            let mut extra = json!({ "graph_n": g.n(), "graph_m": g.num_edges() });
            match min_vertex_cover(&g) {
                Ok(cover) => {
                    extra["min_vertex_cover"] = json!(cover.len());
                    extra["predicted_distance"] = json!(distance_formula(cover.len(), g.num_edges()));
                }
                Err(e) if e.is_capacity() => {
                    eprintln!("warning: {e}; the predicted distance is omitted");
                }
                Err(e) => return Err(e.into()),
            }
            let mut o = Output::new(&out)?;
            let names = inst.vertex_names();
            let meta = write_hypergraph_instance(&mut o, "hardness", &inst.hypergraph, Some(&names), &inst.h1, &inst.h2, extra)?;
            (meta, o.written)
        }
        Generator::StarGadget { out } => {
            let gadget = build_star_gadget();
            let names: Vec<String> = std::iter::once("c".to_string())
                .chain((1..gadget.hypergraph.n()).map(|i| format!("l{i}")))
                .collect();
            let mut o = Output::new(&out)?;
            let meta = write_hypergraph_instance(
                &mut o,
                "star-gadget",
                &gadget.hypergraph,
                Some(&names),
                &gadget.h1,
                &gadget.h2,
                json!({}),
            )?;
            (meta, o.written)
        }
        Generator::Interval { n, out } => {
            let h = interval_hypergraph(n);
            let (h1, h2) = opposite_orientations(&h);
            let mut o = Output::new(&out)?;
            let meta = write_hypergraph_instance(&mut o, "interval", &h, None, &h1, &h2, json!({}))?;
            (meta, o.written)
        }
        Generator::BuildingSet { graph, out } => {
            let g = load_graph(&graph, strictness)?.graph;
            let h = building_set_hypergraph(&g)?;
            let (h1, h2) = opposite_orientations(&h);
            let mut o = Output::new(&out)?;
            let meta = write_hypergraph_instance(&mut o, "building-set", &h, None, &h1, &h2, json!({}))?;
            (meta, o.written)
        }
        Generator::RandomHypergraph {
            n,
            edges,
            max_size,
            seed,
            out,
        } => {
            if n == 0 || max_size == 0 {
                return Err(CliError::input("--n and --max-size must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let largest = max_size.min(n);
            let smallest = largest.min(2);
            let list = (0..edges)
                .map(|_| {
                    let size = rng.gen_range(smallest..=largest);
                    index::sample(&mut rng, n, size).into_vec()
                })
                .collect();
            let h = Hypergraph::new(n, list)?;
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let h1 = orientation_from_order(&h, &order);
            order.shuffle(&mut rng);
            let h2 = orientation_from_order(&h, &order);
            let mut o = Output::new(&out)?;
            let meta = write_hypergraph_instance(&mut o, "random-hypergraph", &h, None, &h1, &h2, json!({ "seed": seed }))?;
            (meta, o.written)
        }
        Generator::RandomGraph { n, p, seed, out } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::input("--p must lie in [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let g = Graph::new(n, pairs.into_iter().filter(|_| rng.gen_bool(p)))?;
            let mut o = Output::new(&out)?;
            o.write("graph.json", &graph_document(&g))?;
            (json!({ "generator": "random-graph", "n": n, "m": g.num_edges(), "seed": seed }), o.written)
        }
        Generator::RandomBox {
            n,
            max_entry,
            seed,
            out,
        } => {
            if max_entry < 0 {
                return Err(CliError::input("--max-entry must be nonnegative"));
            }
            let inst = random_box(n, max_entry, &mut ChaCha8Rng::seed_from_u64(seed));
            let mut o = Output::new(&out)?;
            o.write("box.json", &box_document(&inst))?;
            (json!({ "generator": "random-box", "n": n, "total": inst.total(), "seed": seed }), o.written)
        }
    };
    let mut report = Report::new();
    if let Value::Object(fields) = meta {
        for (k, v) in fields {
            report.push(&k, v);
        }
    }
    report.push("files", written);
    Ok((report, Status::Ok))
}

/// `a` uniform in `0..=max_entry`; `b` spreads the same total one unit at a
/// time over coordinates that still have room.
pub fn random_box(n: usize, max_entry: i64, rng: &mut impl Rng) -> BoxInstance {
    let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_entry)).collect();
    let mut b = vec![0; n];
    for _ in 0..a.iter().sum::<i64>() {
        let open: Vec<usize> = (0..n).filter(|&i| b[i] < max_entry).collect();
        b[*open.choose(rng).expect("room remains while total ≤ n·max_entry")] += 1;
    }
    BoxInstance::new(a, b).expect("sums agree")
}
