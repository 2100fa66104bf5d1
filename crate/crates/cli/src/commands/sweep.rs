use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;

use cyclic_qm::operators::{commutator, continuum_deviation, CanonicalSet};

use crate::report::{self, Failure, Output};

/// Deviations this small are rounding noise in double precision; two of
/// them in a row count as a decrease.
pub const NOISE_FLOOR: f64 = 1e-14;

#[derive(Serialize)]
struct Row {
    n: usize,
    deviation: f64,
}

pub fn run(out: &Output, dims: &[usize]) -> Result<ExitCode, Failure> {
    let mut ns = dims.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rep = out.report("commutator-sweep");
    let mut rows = Vec::with_capacity(ns.len());
    let mut worst_trace = 0.0_f64;
    for &n in &ns {
        let dim = report::dim(n)?;
        let set = CanonicalSet::symmetric(dim);
        rep.scale(set.scales());
        worst_trace = worst_trace.max(commutator(set.x(), set.p())?.trace().norm());
        rows.push(Row {
            n,
            deviation: continuum_deviation(dim)?,
        });
    }
    rep.at_most("commutator_trace", worst_trace, 1e-10);
    if rows.len() > 1 {
        let violations = rows
            .windows(2)
            .filter(|w| {
                let (a, b) = (w[0].deviation, w[1].deviation);
                !(b < a || (a <= NOISE_FLOOR && b <= NOISE_FLOOR))
            })
            .count();
        rep.at_most("non_decreasing_steps", violations as f64, 0.0);
    }
    out.emit_csv(&rows, false)?;
    let table: Vec<_> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "deviation": r.deviation }))
        .collect();
    out.emit_report(&rep.finish(json!({ "rows": table, "noise_floor": NOISE_FLOOR })))
}
