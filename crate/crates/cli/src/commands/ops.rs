use std::process::ExitCode;

use serde_json::json;

use cyclic_qm::linalg::{eig_normal, omega_pow};
use cyclic_qm::operators::{
    check_exponential_forms, commutator, continuum_deviation, CanonicalSet,
};
use cyclic_qm::{Dim, Op, C64};

use crate::report::{self, Failure, Output};

/// Worst `|λ − expected(label)|` after label matching.
pub fn spectrum_error(op: &Op, expected: impl Fn(f64) -> C64) -> Result<f64, Failure> {
    let es = eig_normal(op)?;
    let order = es.match_labels(&expected)?;
    let values = es.values();
    Ok(op
        .dim()
        .labels()
        .zip(order)
        .map(|(k, i)| (values[i] - expected(k)).norm())
        .fold(0.0, f64::max))
}

pub fn run(out: &Output, n: usize, scale_a: Option<f64>) -> Result<ExitCode, Failure> {
    let dim = report::dim(n)?;
    let scales = report::scales(dim, scale_a)?;
    let set = CanonicalSet::new(scales);
    let mut rep = out.report("ops");
    rep.scale(&scales);

    let w = |t: f64| omega_pow(dim, t).expect("finite label");
    rep.at_most("t_unitarity", set.t().unitarity_defect(), 1e-12);
    rep.at_most("b_unitarity", set.b().unitarity_defect(), 1e-12);
    rep.at_most("x_hermiticity", set.x().hermiticity_defect(), 1e-12);
    rep.at_most("p_hermiticity", set.p().hermiticity_defect(), 1e-12);
    rep.at_most("t_spectrum", spectrum_error(set.t(), |p| w(-p))?, 1e-10);
    rep.at_most("b_spectrum", spectrum_error(set.b(), w)?, 1e-10);
    let exp = check_exponential_forms(&set)?;
    rep.at_most("t_from_p_exponential", exp.translation, 1e-11);
    rep.at_most("b_from_x_exponential", exp.boost, 1e-11);
    let xp = commutator(set.x(), set.p())?;
    rep.at_most("commutator_trace", xp.trace().norm(), 1e-10);

    let details = json!({
        "t": set.t(),
        "commutator_identity_distance": xp.max_abs_diff(&Op::identity(dim).scale(C64::i()))?,
        "probe_deviation_symmetric_scales": continuum_deviation(Dim::new(n)?)?,
    });
    out.emit_report(&rep.finish(details))
}
