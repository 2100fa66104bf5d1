use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use cyclic_qm::fourier::{in_guard_band, SumQuery, SumVariant};
use cyclic_qm::Error;

use crate::report::{self, Failure, Output};

#[derive(Serialize)]
struct Row {
    variant: SumVariant,
    r: f64,
    closed_re: Option<f64>,
    closed_im: Option<f64>,
    direct_re: f64,
    direct_im: f64,
    residual: Option<f64>,
    status: String,
}

pub fn run(out: &Output, n: usize, seed: u64, random: usize) -> Result<ExitCode, Failure> {
    let dim = report::dim(n)?;
    let mut rep = out.report("sums");
    rep.dim(n);
    let lim = 2 * n as i64;
    let mut rs: Vec<f64> = (-lim..=lim).map(|r| r as f64).collect();
    rs.extend((-lim..lim).map(|r| r as f64 + 0.5));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rs.extend((0..random).map(|_| rng.random_range(-(lim as f64)..lim as f64)));

    let mut rows = Vec::new();
    let (mut worst, mut skipped) = (0.0_f64, 0usize);
    for &r in &rs {
        let half_integral = (2.0 * r).fract() == 0.0;
        for variant in SumVariant::ALL {
            if variant == SumVariant::OmegaCases && !half_integral {
                continue;
            }
            let q = SumQuery::new(dim, r, variant)?;
            let direct = q.direct()?;
            let (closed, residual, status) = match q.closed_form() {
                Ok(c) => {
                    let res = (c - direct).norm();
                    worst = worst.max(res);
                    (Some(c), Some(res), "ok".to_string())
                }
                Err(Error::Singular(_)) if in_guard_band(dim, r) => {
                    skipped += 1;
                    (None, None, "skipped: exact-case route".to_string())
                }
                Err(e) => return Err(e.into()),
            };
            rows.push(Row {
                variant,
                r,
                closed_re: closed.map(|c| c.re),
                closed_im: closed.map(|c| c.im),
                direct_re: direct.re,
                direct_im: direct.im,
                residual,
                status,
            });
        }
    }
    rep.at_most("closed_vs_direct", worst, 1e-9);
    out.emit_csv(&rows, false)?;
    let details = json!({ "evaluations": rows.len(), "skipped": skipped, "rows": rows });
    out.emit_report(&rep.finish(details))
}
