use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;

use cyclic_qm::linalg::{omega_pow, op_exp};
use cyclic_qm::mub::{
    build_s, build_shift, eta_basis_momentum, eta_basis_position, gauss_identity_check,
    unbiasedness, valid_gauss_parameter, weyl_swap_check, xp_difference_unbiasedness,
    UnbiasednessReport,
};
use cyclic_qm::operators::CanonicalSet;
use cyclic_qm::{Dim, C64};

use super::ops::spectrum_error;
use crate::report::{self, Failure, Output};

#[derive(Serialize)]
struct GridRow<'a> {
    pair: &'a str,
    r: f64,
    s: f64,
    overlap: f64,
}

/// Valid `b` in `[−N, N]`: integers for even `N`, half-odd for odd `N`.
fn gauss_parameters(dim: Dim) -> Vec<f64> {
    let n = dim.n() as f64;
    (0..=(4 * dim.n()))
        .map(|i| i as f64 * 0.5 - n)
        .filter(|&b| valid_gauss_parameter(dim, b))
        .collect()
}

pub fn run(out: &Output, n: usize, scale_a: Option<f64>) -> Result<ExitCode, Failure> {
    let dim = report::dim(n)?;
    let scales = report::scales(dim, scale_a)?;
    let set = CanonicalSet::new(scales);
    let mut rep = out.report("mub");
    rep.scale(&scales);

    let eta = eta_basis_position(dim);
    let pairs: [(&str, UnbiasednessReport); 3] = [
        (
            "position_momentum",
            unbiasedness(set.position_basis(), set.momentum_basis())?,
        ),
        ("position_eta", unbiasedness(set.position_basis(), &eta)?),
        ("momentum_eta", unbiasedness(set.momentum_basis(), &eta)?),
    ];
    for (name, r) in &pairs {
        rep.at_most(format!("unbiased_{name}"), r.max_deviation, 1e-10);
        rep.at_most(
            format!("completeness_{name}"),
            r.completeness_defect(),
            1e-10,
        );
    }

    let tb = build_shift(dim);
    rep.at_most(
        "tb_spectrum",
        spectrum_error(&tb, |s| omega_pow(dim, s).expect("finite label"))?,
        1e-10,
    );
    let mut eigen_residual = 0.0_f64;
    for (s, v) in dim.labels().zip(eta.vectors()) {
        let lam = omega_pow(dim, s)?;
        eigen_residual = eigen_residual.max(tb.apply(v)?.distance(&v.scale(lam))?);
    }
    rep.at_most("eta_eigen_residual", eigen_residual, 1e-10);

    let phases = gauss_parameters(dim)
        .into_iter()
        .map(|b| gauss_identity_check(dim, b))
        .collect::<Result<Vec<_>, _>>()?;
    let gauss_worst = phases.iter().map(|p| p.residual).fold(0.0, f64::max);
    rep.at_most("gauss_identity_residual", gauss_worst, 1e-10);

    // momentum-built η_s relative to position-built η_s
    let eta_mom = eta_basis_momentum(dim);
    let eta_phases: Vec<_> = dim
        .labels()
        .zip(eta.vectors().iter().zip(eta_mom.vectors()))
        .map(|(s, (vp, vm))| {
            let ratio: C64 = vm.vector().dotc(vp.vector());
            json!({ "s": s, "phase": ratio })
        })
        .collect();

    let s_op = build_s(&scales);
    rep.at_most(
        "exp_is_equals_tb",
        op_exp(&s_op, C64::i())?.max_abs_diff(&tb)?,
        1e-10,
    );
    rep.at_most("weyl_swap", weyl_swap_check(&set)?, 1e-11);
    let xp = xp_difference_unbiasedness(&set)?;
    rep.exceeds("xp_difference_bias", xp.max_deviation(), 1e-3);

    let mut grid = Vec::new();
    for (name, r) in &pairs {
        for (i, a) in dim.labels().enumerate() {
            for (k, b) in dim.labels().enumerate() {
                grid.push(GridRow {
                    pair: name,
                    r: a,
                    s: b,
                    overlap: r.overlap(i, k),
                });
            }
        }
    }
    out.emit_csv(&grid, false)?;

    let details = json!({
        "gauss_phases": phases,
        "eta_momentum_phases": eta_phases,
        "xp_difference": {
            "position_deviation": xp.position.max_deviation,
            "momentum_deviation": xp.momentum.max_deviation,
            "min_gap": xp.min_gap,
            "degenerate": xp.degenerate,
        },
    });
    out.emit_report(&rep.finish(details))
}
