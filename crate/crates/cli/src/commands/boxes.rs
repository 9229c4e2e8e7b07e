use std::path::Path;

use polyflip::box_polytope::{
    bfs_box_path, max_same_sum_partition, partition_from_path, pcfct_solution_from_partition, shortest_box_path,
    BoxInstance, PcfctInstance, SameSumPartition,
};

use crate::error::{CliError, CliResult};
use crate::files::{load, Instance, Strictness};
use crate::report::Report;
use crate::Status;

fn block_text(ss: &[usize], ts: &[usize]) -> String {
    let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    format!("{} | {}", join(ss), join(ts))
}

/// Partition blocks in box coordinates, as `supplies | demands`.
fn blocks_in_coordinates(inst: &BoxInstance, partition: &SameSumPartition) -> Vec<String> {
    let (s, t) = (inst.s_indices(), inst.active_t_indices());
    partition
        .parts
        .iter()
        .map(|(ss, ts)| {
            let ss: Vec<usize> = ss.iter().map(|&i| s[i]).collect();
            let ts: Vec<usize> = ts.iter().map(|&j| t[j]).collect();
            block_text(&ss, &ts)
        })
        .collect()
}

pub fn run_box(path: &Path, verify: bool, max_states: usize, strictness: Strictness) -> CliResult<(Report, Status)> {
    let inst = match load(path, strictness)? {
        Instance::Box(b) => b,
        other => return Err(CliError::input(format!("{}: expected a box file, found {}", path.display(), other.kind()))),
    };
    let partition = max_same_sum_partition(&inst.pcfct())?;
    let path = shortest_box_path(&inst)?;
    let mut report = Report::new();
    report
        .push("n", inst.n())
        .push("s", inst.s_indices())
        .push("t", inst.active_t_indices())
        .push("frozen", inst.frozen_indices())
        .push("length", path.len())
        .push("m", partition.size())
        .push("partition", blocks_in_coordinates(&inst, &partition))
        .push(
            "flips",
            path.flips.iter().map(|f| format!("{}->{}:{}", f.from, f.to, f.delta)).collect::<Vec<_>>(),
        )
        .push("vertices", &path.vertices);
    let mut status = Status::Ok;
    if verify {
        let bfs = bfs_box_path(&inst, max_states)?;
        let recovered = partition_from_path(&inst, &bfs)?;
        let ok = bfs.len() == path.len() && recovered.size() == partition.size();
        report
            .push("bfs_length", bfs.len())
            .push("bfs_partition_size", recovered.size())
            .push("verified", ok);
        if !ok {
            status = Status::CheckFailed;
        }
    }
    Ok((report, status))
}

pub fn run_pcfct(path: &Path, verify: bool, max_states: usize, strictness: Strictness) -> CliResult<(Report, Status)> {
    let p: PcfctInstance = match load(path, strictness)? {
        Instance::Pcfct(p) => p,
        other => {
            return Err(CliError::input(format!("{}: expected a pcfct file, found {}", path.display(), other.kind())))
        }
    };
    let partition = max_same_sum_partition(&p)?;
    let solution = pcfct_solution_from_partition(&p, &partition)?;
    let value = p.size() - partition.size();
    let mut report = Report::new();
    report
        .push("value", value)
        .push("m", partition.size())
        .push("partition", partition.parts.iter().map(|(s, t)| block_text(s, t)).collect::<Vec<_>>())
        .push("nonzeros", solution.nonzeros)
        .push("flows", &solution.flows);
    let mut status = Status::Ok;
    if verify {
        let inst = BoxInstance::from_pcfct(&p);
        let bfs = bfs_box_path(&inst, max_states)?;
        let ok = bfs.len() == value && solution.nonzeros == value;
        report.push("bfs_length", bfs.len()).push("verified", ok);
        if !ok {
            status = Status::CheckFailed;
        }
    }
    Ok((report, status))
}
