use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;

use cyclic_qm::dynamics::{evolve_momentum, evolve_position, revival_period, EvolutionConfig};
use cyclic_qm::fourier::{dft_forward, dft_inverse};
use cyclic_qm::operators::gaussian_probe;
use cyclic_qm::{Dim, State, C64};

use crate::report::{self, Failure, Output};
use crate::Preset;

pub enum Input {
    Preset(Preset),
    File(PathBuf),
}

pub enum Grid {
    /// Evenly spaced from 0 to the revival period, this many intervals.
    Revival(usize),
    /// Explicit times in units of τ.
    Times(Vec<f64>),
}

#[derive(Serialize)]
struct Row {
    t: f64,
    x: f64,
    probability: f64,
}

pub fn initial_state(dim: Dim, input: &Input) -> Result<State, Failure> {
    match input {
        Input::Preset(Preset::Delta) => Ok(State::basis_vector(dim.index_at(dim.n() / 2)?)),
        Input::Preset(Preset::GaussianProbe) => Ok(gaussian_probe(dim)),
        Input::Preset(Preset::Uniform) => {
            Ok(State::from_fn(dim, |_| C64::new(1.0, 0.0)).normalize()?)
        }
        Input::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let state: State = serde_json::from_str(&text).map_err(|e| {
                Failure::usage(format!("malformed state file {}: {e}", path.display()))
            })?;
            if state.dim() != dim {
                return Err(Failure::usage(format!(
                    "state file has {} amplitudes, expected {}",
                    state.dim().n(),
                    dim.n()
                )));
            }
            state
                .normalize()
                .map_err(|e| Failure::usage(format!("state file: {e}")))
        }
    }
}

pub fn run(
    out: &Output,
    n: usize,
    scale_a: Option<f64>,
    mass: f64,
    input: Input,
    grid: Grid,
) -> Result<ExitCode, Failure> {
    let dim = report::dim(n)?;
    let scales = report::scales(dim, scale_a)?;
    let cfg = EvolutionConfig::new(scales, mass)?;
    let psi = initial_state(dim, &input)?;
    let period = revival_period(&cfg);
    let (times, ends_at_revival) = match grid {
        Grid::Revival(0) => return Err(Failure::usage("--steps must be at least 1")),
        Grid::Revival(k) => (
            (0..=k)
                .map(|i| period * i as f64 / k as f64)
                .collect::<Vec<_>>(),
            true,
        ),
        Grid::Times(ts) => {
            if let Some(bad) = ts.iter().find(|t| !t.is_finite()) {
                return Err(Failure::usage(format!("--times: non-finite value {bad}")));
            }
            (ts.iter().map(|t| t * cfg.tau()).collect(), false)
        }
    };

    let mut rep = out.report("evolve");
    rep.scale(&scales);
    let d0 = dft_forward(&psi);
    let mut rows = Vec::with_capacity(times.len() * n);
    let (mut norm_dev, mut route_dev) = (0.0_f64, 0.0_f64);
    let mut last = psi.clone();
    for &t in &times {
        let state = evolve_position(&cfg, &psi, t)?;
        let other = dft_inverse(&evolve_momentum(&cfg, &d0, t)?);
        norm_dev = norm_dev.max((state.norm() - 1.0).abs());
        route_dev = route_dev.max(state.distance(&other)?);
        for (x, p) in dim.labels().zip(state.probabilities()) {
            rows.push(Row {
                t,
                x,
                probability: p,
            });
        }
        last = state;
    }
    rep.at_most("norm_preservation", norm_dev, 1e-11);
    rep.at_most("position_vs_momentum_route", route_dev, 1e-10);
    if ends_at_revival {
        rep.at_most("revival", last.distance(&psi)?, 1e-9);
    }
    out.emit_csv(&rows, true)?;
    let report = rep.finish(json!({ "tau": cfg.tau(), "mass": mass, "revival_period": period }));
    out.emit_json_file(&report)?;
    Ok(report::exit_for(report.pass))
}
