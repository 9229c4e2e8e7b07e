//! Acceptance suite. Runs every criterion, prints one `PASS`/`FAIL` line
//! each, and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyflip::box_polytope::{
    bfs_box_distance, bfs_box_path, box_submodular, max_same_sum_partition, partition_from_path,
    path_from_partition, pcfct_solution_from_partition, BoxInstance,
};
use polyflip::flip::{
    approx_distance, distance_bounds, exact_distance, exact_distances_from, find_flippable_difference,
    SearchOptions, DEFAULT_MAX_STATES,
};
use polyflip::graph::Graph;
use polyflip::hardness::{
    broom_of, build_reduction, build_star_gadget, distance_formula, min_vertex_cover, witness_sequence,
};
use polyflip::hypergraph::{
    enumerate_acyclic_orientations, enumerate_hypergraphs, max_codegree, Hypergraph, Orientation,
};
use polyflip::polymatroid::{
    associahedron_oracle, check_correspondence, check_submodular_with, f_hypergraphic, full_mask,
    graph_associahedron_oracle, interval_hypergraph, CheckMode, SubmodularOracle,
};
use polyflip::special_cases::{enumerate_bases, graphic_matroid, matroid_exchange_path, uniform_matroid};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every hyperedge headed at its latest vertex in `order`.
fn orientation_from_order(h: &Hypergraph, order: &[usize]) -> Orientation {
    let mut rank = vec![0; h.n()];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let heads = h.edges().iter().map(|e| *e.iter().max_by_key(|&&v| rank[v]).unwrap()).collect();
    Orientation::new(h, heads).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, pairs.into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

/// `a` uniform in `0..=6`; `b` spreads the same total over coordinates
/// with room left.
fn random_box(rng: &mut ChaCha8Rng, n: usize) -> BoxInstance {
    let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
    let mut b = vec![0; n];
    for _ in 0..a.iter().sum::<i64>() {
        let open: Vec<usize> = (0..n).filter(|&i| b[i] < 6).collect();
        b[*open.choose(rng).unwrap()] += 1;
    }
    BoxInstance::new(a, b).unwrap()
}

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, edges: usize) -> Hypergraph {
    let list = (0..edges)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            index::sample(rng, n, size).into_vec()
        })
        .collect();
    Hypergraph::new(n, list).unwrap()
}

fn star_gadget() -> Outcome {
    let g = build_star_gadget();
    let all = exact_distances_from(&g.hypergraph, &g.h1, &SearchOptions::default()).map_err(e2s)?;
    ensure(all.len() == 1957, || format!("{} acyclic orientations, expected 1957", all.len()))?;
    ensure(all.iter().all(|(o, _)| broom_of(o).is_some()), || "an acyclic orientation is not a broom".into())?;

    let start = Instant::now();
    let free = exact_distance(&g.hypergraph, &g.h1, &g.h2, &SearchOptions::default()).map_err(e2s)?;
    let restricted =
        exact_distance(&g.hypergraph, &g.h1, &g.h2, &SearchOptions::default().forbid(0)).map_err(e2s)?;
    let elapsed = start.elapsed();
    ensure(free.length == 12, || format!("distance {} instead of 12", free.length))?;
    ensure(restricted.length == 15, || format!("center-free distance {} instead of 15", restricted.length))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    free.sequence.replay(&g.hypergraph).map_err(e2s)?;
    restricted.sequence.replay(&g.hypergraph).map_err(e2s)?;
    Ok(format!("distance 12, center forbidden 15, 1957 brooms, {elapsed:.2?}"))
}

fn k2_reduction() -> Outcome {
    let k2 = Graph::complete(2);
    let inst = build_reduction(&k2);
    let (n, m) = (inst.hypergraph.n(), inst.hypergraph.num_edges());
    ensure(n == 11 && m == 31, || format!("instance has {n} vertices and {m} hyperedges"))?;
    let cover = min_vertex_cover(&k2).map_err(e2s)?;
    let predicted = distance_formula(cover.len(), k2.num_edges());
    ensure(predicted == 14, || format!("formula gives {predicted}"))?;

    let start = Instant::now();
    let opts = SearchOptions::default().with_max_states(DEFAULT_MAX_STATES);
    match exact_distance(&inst.hypergraph, &inst.h1, &inst.h2, &opts) {
        Ok(r) => {
            let elapsed = start.elapsed();
            r.sequence.replay(&inst.hypergraph).map_err(e2s)?;
            ensure(r.length == 14, || format!("exact distance {} instead of 14", r.length))?;
            ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
            Ok(format!("exact distance 14 = 2*1 + 12*1 on 11 vertices / 31 hyperedges, {elapsed:.2?}"))
        }
        Err(e) if e.is_capacity() => {
            let witness = witness_sequence(&inst, &cover).map_err(e2s)?;
            witness.replay(&inst.hypergraph).map_err(e2s)?;
            ensure(witness.len() == 14, || format!("witness has length {}", witness.len()))?;
            Ok("state cap reached; witness of length 14 replays, certified lower bound 12 + 2".into())
        }
        Err(e) => Err(e.to_string()),
    }
}

fn sandwich_exhaustive() -> Outcome {
    let start = Instant::now();
    let (mut hypergraphs, mut pairs) = (0usize, 0usize);
    for n in 1..=4 {
        for h in enumerate_hypergraphs(n, 4, 3) {
            hypergraphs += 1;
            let all = enumerate_acyclic_orientations(&h, 1 << 20).map_err(e2s)?;
            let d2 = max_codegree(&h).max(1);
            for a in &all {
                let dist = exact_distances_from(&h, a, &SearchOptions::default()).map_err(e2s)?;
                ensure(dist.len() == all.len(), || format!("{:?}: flip graph is disconnected", h.edges()))?;
                for (b, exact) in dist {
                    if &b == a {
                        continue;
                    }
                    pairs += 1;
                    let ctx = || format!("{:?}: {:?} -> {:?}", h.edges(), a.heads(), b.heads());
                    let found = find_flippable_difference(&h, a, &b).map_err(e2s)?;
                    ensure(found.is_some(), || format!("no flippable difference for {}", ctx()))?;
                    let approx = approx_distance(&h, a, &b).map_err(e2s)?;
                    let (lower, diff) = distance_bounds(&h, a, &b).map_err(e2s)?;
                    let ok = lower <= exact && exact <= approx.length && approx.length <= diff && approx.length <= d2 * exact;
                    ensure(ok, || {
                        format!("{}: lower {lower}, exact {exact}, approx {}, diff {diff}", ctx(), approx.length)
                    })?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{hypergraphs} hypergraphs, {pairs} ordered pairs, 0 violations, {elapsed:.2?}"))
}

fn linear_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..500 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n, 0.5);
        let h = g.to_hypergraph();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let a = orientation_from_order(&h, &order);
        order.shuffle(&mut rng);
        let b = orientation_from_order(&h, &order);
        let exact = exact_distance(&h, &a, &b, &SearchOptions::default()).map_err(e2s)?.length;
        let approx = approx_distance(&h, &a, &b).map_err(e2s)?.length;
        let diff = a.heads().iter().zip(b.heads()).filter(|(x, y)| x != y).count();
        ensure(exact == approx && approx == diff, || {
            format!("trial {trial}: exact {exact}, approx {approx}, |A delta B| {diff}")
        })?;
    }
    Ok("500 graphs: approx = exact = |A delta B|".into())
}

fn box_instances() -> Vec<BoxInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..500)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            random_box(&mut rng, n)
        })
        .collect()
}

fn box_equivalence(instances: &[BoxInstance]) -> Outcome {
    let mut steps = 0;
    for (k, inst) in instances.iter().enumerate() {
        let p = inst.pcfct();
        let partition = max_same_sum_partition(&p).map_err(e2s)?;
        // the construction checks its five tracking invariants after every step
        let path = path_from_partition(inst, &partition).map_err(|e| format!("instance {k}: {e}"))?;
        path.validate(inst).map_err(e2s)?;
        let bfs = bfs_box_distance(inst, 1 << 22).map_err(e2s)?;
        let value = p.size() - partition.size();
        ensure(path.len() == bfs && bfs == value, || {
            format!("instance {k} ({:?} -> {:?}): path {}, bfs {bfs}, |S|+|T|-m {value}", inst.a(), inst.b(), path.len())
        })?;
        steps += path.len() + 1;
    }
    Ok(format!("500 boxes: path = BFS = |S|+|T|-m, invariants held at {steps} steps"))
}

fn pcfct_identity(instances: &[BoxInstance]) -> Outcome {
    for (k, inst) in instances.iter().enumerate() {
        let p = inst.pcfct();
        let partition = max_same_sum_partition(&p).map_err(e2s)?;
        let solution = pcfct_solution_from_partition(&p, &partition).map_err(e2s)?;
        let value = p.size() - partition.size();
        ensure(solution.nonzeros == value, || format!("instance {k}: {} nonzeros, value {value}", solution.nonzeros))?;
        let bfs = bfs_box_path(inst, 1 << 22).map_err(e2s)?;
        let recovered = partition_from_path(inst, &bfs).map_err(e2s)?;
        ensure(recovered.size() == partition.size(), || {
            format!("instance {k}: BFS path gives {} parts, m = {}", recovered.size(), partition.size())
        })?;
    }
    Ok("500 boxes: nonzeros = |S|+|T|-m, BFS paths recover partitions of size m".into())
}

fn oracle_builders() -> Outcome {
    let pairs = std::cell::Cell::new(0u64);
    let check = |f: &SubmodularOracle, what: &str| -> Result<(), String> {
        let r = check_submodular_with(f, CheckMode::Exhaustive).map_err(e2s)?;
        pairs.set(pairs.get() + r.pairs_checked);
        ensure(r.is_submodular(), || format!("{what} violates submodularity: {:?}", r.violation))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for n in 1..=8 {
        let interval = associahedron_oracle(n).map_err(e2s)?;
        check(&interval, &format!("associahedron n={n}"))?;
        let via_h = f_hypergraphic(&interval_hypergraph(n)).map_err(e2s)?;
        ensure((0..=full_mask(n)).all(|m| interval.eval(m) == via_h.eval(m)), || {
            format!("interval oracle and f_H of the intervals differ at n={n}")
        })?;
        checked += 1;
        for _ in 0..10 {
            let edges = rng.gen_range(0..=2 * n);
            check(&f_hypergraphic(&random_hypergraph(&mut rng, n, edges)).map_err(e2s)?, "f_H")?;
            check(&box_submodular(&random_box(&mut rng, n)).map_err(e2s)?, "box")?;
            check(&graph_associahedron_oracle(&random_graph(&mut rng, n, 0.4)).map_err(e2s)?, "building set")?;
            checked += 3;
        }
    }
    for n in 1..=4 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::new(n, (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i])).unwrap();
            check(&graph_associahedron_oracle(&g).map_err(e2s)?, "building set")?;
            checked += 1;
        }
    }
    Ok(format!("{checked} oracles submodular over {} pairs, exhaustive up to n = 8", pairs.get()))
}

fn correspondence() -> Outcome {
    let mut hypergraphs = 0;
    for n in 1..=5 {
        for h in enumerate_hypergraphs(n, 4, n) {
            let r = check_correspondence(&h).map_err(e2s)?;
            ensure(r.holds(), || format!("{:?} on {n} vertices: {r:?}", h.edges()))?;
            hypergraphs += 1;
        }
    }
    Ok(format!("{hypergraphs} hypergraphs: greedy vertices = head-count vectors, injective"))
}

fn matroid_paths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for pair in 0..200 {
        let (oracle, what) = if pair % 2 == 0 {
            let n = rng.gen_range(1..=8);
            (uniform_matroid(rng.gen_range(0..=n), n).map_err(e2s)?, "uniform")
        } else {
            let g = loop {
                let n = rng.gen_range(2..=5);
                let g = random_graph(&mut rng, n, 0.6);
                if g.num_edges() <= 8 {
                    break g;
                }
            };
            (graphic_matroid(&g).map_err(e2s)?, "graphic")
        };
        let bases: BTreeSet<Vec<usize>> = enumerate_bases(&oracle).map_err(e2s)?.into_iter().collect();
        let list: Vec<&Vec<usize>> = bases.iter().collect();
        let a = list[rng.gen_range(0..list.len())];
        let b = list[rng.gen_range(0..list.len())];
        let path = matroid_exchange_path(&oracle, a, b).map_err(e2s)?;
        let diff = a.iter().filter(|e| !b.contains(e)).count();
        ensure(path.len() - 1 == diff, || format!("pair {pair} ({what}): length {} vs {diff}", path.len() - 1))?;
        ensure(path.iter().all(|p| bases.contains(p)), || format!("pair {pair}: a step leaves the bases"))?;
    }
    Ok("200 base pairs: length = |A \\ B|".into())
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(e2s)?;
    let out = |name: &str| -> PathBuf { dir.path().join(name) };
    let p = |path: PathBuf| path.display().to_string();
    let star = out("star");
    let gens: Vec<Vec<String>> = vec![
        vec!["gen".into(), "star-gadget".into(), "--out".into(), p(out("star"))],
        vec!["gen".into(), "hardness".into(), "--graph".into(), fixture("k2.json"), "--out".into(), p(out("k2"))],
        vec!["gen".into(), "interval".into(), "--n".into(), "5".into(), "--out".into(), p(out("int"))],
        vec!["gen".into(), "building-set".into(), "--graph".into(), fixture("triangle.json"), "--out".into(), p(out("bs"))],
        vec!["gen".into(), "random-hypergraph".into(), "--n".into(), "6".into(), "--edges".into(), "6".into(), "--seed".into(), "3".into(), "--out".into(), p(out("rh"))],
        vec!["gen".into(), "random-graph".into(), "--n".into(), "6".into(), "--seed".into(), "3".into(), "--out".into(), p(out("rg"))],
        vec!["gen".into(), "random-box".into(), "--n".into(), "6".into(), "--seed".into(), "3".into(), "--out".into(), p(out("rb"))],
    ];
    let pair = |dir: &Path| -> Vec<String> {
        vec![
            "--hypergraph".into(),
            p(dir.join("hypergraph.json")),
            "--from".into(),
            p(dir.join("h1.json")),
            "--to".into(),
            p(dir.join("h2.json")),
            "--show-sequence".into(),
        ]
    };
    let mut commands = gens.clone();
    for mode in ["exact", "approx", "bounds"] {
        for d in [star.clone(), out("k2"), out("rh")] {
            let mut c: Vec<String> = vec!["dist".into(), mode.into()];
            c.extend(pair(&d));
            commands.push(c);
        }
    }
    let mut forbid: Vec<String> = vec!["dist".into(), "exact".into()];
    forbid.extend(pair(&star));
    forbid.extend(["--forbid-vertex".into(), "c".into()]);
    commands.push(forbid);
    for args in [
        vec!["box", "--instance", &fixture("box_example.json"), "--verify"],
        vec!["box", "--instance", &fixture("box_equal.json")],
        vec!["pcfct", "--instance", &fixture("pcfct_pairs.json"), "--verify"],
        vec!["pcfct", "--instance", &fixture("pcfct_large.json")],
        vec!["check", "submodular", "--instance", &fixture("corrupted_oracle.json")],
        vec!["check", "submodular", "--instance", &fixture("triangle.json"), "--oracle", "building-set"],
        vec!["check", "acyclic", "--hypergraph", &fixture("linear.json"), "--orientation", &fixture("cyclic.json")],
        vec!["check", "correspondence", "--all-up-to", "3"],
        vec!["check", "correspondence", "--hypergraph", &fixture("linear.json")],
        vec!["matroid", "--instance", &fixture("uniform_2_4.json")],
    ] {
        commands.push(args.into_iter().map(String::from).collect());
    }
    commands.push(vec!["box".into(), "--instance".into(), p(out("rb").join("box.json")), "--verify".into()]);

    let run = |args: &[String]| {
        Command::new(env!("CARGO_BIN_EXE_polyflip")).args(args).env_remove("POLYFLIP_MAX_STATES").output()
    };
    let snapshot = || -> Result<Vec<(String, Vec<u8>)>, String> {
        let mut files = Vec::new();
        let mut stack = vec![dir.path().to_path_buf()];
        while let Some(d) = stack.pop() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(&d).map_err(e2s)?.map(|e| e.unwrap().path()).collect();
            entries.sort();
            for e in entries {
                if e.is_dir() {
                    stack.push(e);
                } else {
                    files.push((e.display().to_string(), std::fs::read(&e).map_err(e2s)?));
                }
            }
        }
        files.sort();
        Ok(files)
    };

    let mut first_files = None;
    for round in 0..2 {
        let mut results = Vec::new();
        for args in &commands {
            let o = run(args).map_err(e2s)?;
            results.push((o.status.code(), o.stdout, o.stderr));
        }
        let files = snapshot()?;
        if round == 0 {
            first_files = Some((results, files));
        } else {
            let (prev, prev_files) = first_files.take().unwrap();
            for ((args, a), b) in commands.iter().zip(&prev).zip(&results) {
                ensure(a == b, || format!("`polyflip {}` differs between runs", args.join(" ")))?;
            }
            ensure(prev_files == files, || "generated files differ between runs".into())?;
            return Ok(format!("{} commands and {} generated files byte-identical across runs", commands.len(), files.len()));
        }
    }
    unreachable!()
}

fn main() -> ExitCode {
    let boxes = box_instances();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("star gadget distances", Box::new(star_gadget)),
        ("K2 reduction formula", Box::new(k2_reduction)),
        ("exhaustive approximation sandwich", Box::new(sandwich_exhaustive)),
        ("linear hypergraph exactness", Box::new(linear_exactness)),
        ("box / PCFCT path equivalence", Box::new(|| box_equivalence(&boxes))),
        ("PCFCT value identity", Box::new(|| pcfct_identity(&boxes))),
        ("oracle builders submodular", Box::new(oracle_builders)),
        ("hypergraphic correspondence", Box::new(correspondence)),
        ("matroid exchange paths", Box::new(matroid_paths)),
        ("CLI determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}: {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
