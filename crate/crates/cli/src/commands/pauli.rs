use std::process::ExitCode;

use serde::Serialize;

use cyclic_qm::pauli::{compatible, reconstruct, PauliData};

use crate::report::{self, Failure, Output};

pub fn run(out: &Output, rho_sq: f64, varpi_sq: f64) -> Result<ExitCode, Failure> {
    let data = PauliData::new(rho_sq, varpi_sq)?;
    let rec = reconstruct(&data);
    out.emit_json(&rec)?;
    Ok(report::exit_for(rec.compatible))
}

#[derive(Serialize)]
struct Row {
    rho_sq: f64,
    varpi_sq: f64,
    compatible: bool,
}

pub fn sweep(out: &Output, k: usize) -> Result<ExitCode, Failure> {
    if k < 2 {
        return Err(Failure::usage(format!(
            "--sweep needs at least 2 points per axis, got {k}"
        )));
    }
    let step = 1.0 / (k - 1) as f64;
    let mut rows = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let (rho_sq, varpi_sq) = (i as f64 * step, j as f64 * step);
            let data = PauliData::new(rho_sq, varpi_sq)?;
            rows.push(Row {
                rho_sq,
                varpi_sq,
                compatible: compatible(&data),
            });
        }
    }
    out.emit_csv(&rows, true)?;
    Ok(ExitCode::SUCCESS)
}
