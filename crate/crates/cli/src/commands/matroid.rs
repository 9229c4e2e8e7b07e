use std::path::Path;

use polyflip::special_cases::{graphic_matroid, matroid_exchange_path, uniform_matroid};

use crate::error::{CliError, CliResult};
use crate::files::{load, Instance, MatroidFamily, Strictness};
use crate::report::Report;
use crate::Status;

pub fn run(path: &Path, strictness: Strictness) -> CliResult<(Report, Status)> {
    let test = match load(path, strictness)? {
        Instance::MatroidTest(t) => t,
        other => {
            return Err(CliError::input(format!(
                "{}: expected a matroid-test file, found {}",
                path.display(),
                other.kind()
            )))
        }
    };
    let oracle = match &test.family {
        MatroidFamily::Uniform { k, n } => uniform_matroid(*k, *n)?,
        MatroidFamily::Graphic(g) => graphic_matroid(g)?,
    };
    let bases = matroid_exchange_path(&oracle, &test.a, &test.b)?;
    let difference = test.a.iter().filter(|e| !test.b.contains(e)).count();
    let mut report = Report::new();
    report
        .push("family", oracle.label().unwrap_or("matroid"))
        .push("rank", oracle.ground_value())
        .push("length", bases.len() - 1)
        .push("difference", difference)
        .push("bases", bases);
    Ok((report, Status::Ok))
}
