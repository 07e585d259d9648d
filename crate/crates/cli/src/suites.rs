//! Reproduction suites: the named instance lists behind `reproduce`.

use circumfeas_core::experiments::{Family, InstanceSpec, PhiSpec};

use crate::error::CliError;

pub struct SuiteRow {
    pub slug: &'static str,
    pub spec: InstanceSpec,
}

fn row(slug: &'static str, spec: InstanceSpec) -> SuiteRow {
    SuiteRow { slug, spec }
}

fn family1_rows() -> Vec<SuiteRow> {
    let mut rows = Vec::new();

    let mut ball1 = InstanceSpec::new(Family::BallTangent);
    ball1.n = Some(1);
    rows.push(row("ball_tangent_n1", ball1));

    let mut ball3 = InstanceSpec::new(Family::BallTangent);
    ball3.n = Some(3);
    rows.push(row("ball_tangent_n3", ball3));

    let mut quartic = InstanceSpec::new(Family::Family1Radial);
    quartic.phi = Some(PhiSpec::Power { alpha: 4.0 });
    rows.push(row("power4", quartic));

    rows.push(row("flat", InstanceSpec::new(Family::Flat)));

    let mut aniso = InstanceSpec::new(Family::Family1Smooth);
    aniso.quad_diag = Some(vec![1.0, 4.0]);
    aniso.x0 = Some(vec![3.0, 1.0, 0.0]);
    rows.push(row("aniso_quadratic", aniso));

    rows
}

fn family2_rows() -> Vec<SuiteRow> {
    let mut rows = Vec::new();

    let mut shifted = InstanceSpec::new(Family::Family2Radial);
    shifted.phi = Some(PhiSpec::ShiftedPower { alpha: 2.0, c: 1.0 });
    rows.push(row("shifted_square", shifted));

    let mut cosh = InstanceSpec::new(Family::Family2Radial);
    cosh.phi = Some(PhiSpec::CoshShift { c: 2.0 });
    rows.push(row("cosh_shift", cosh));

    rows
}

fn errorbound_rows() -> Vec<SuiteRow> {
    let mut lines = InstanceSpec::new(Family::TwoLines);
    lines.theta = Some(std::f64::consts::FRAC_PI_6);
    lines.x0 = Some(vec![1.0, 0.0]);
    vec![row("two_lines_30deg", lines)]
}

/// Resolves a suite name to its instance rows.
pub fn suite(name: &str) -> Result<Vec<SuiteRow>, CliError> {
    Ok(match name {
        "family1" => family1_rows(),
        "family2" => family2_rows(),
        "errorbound" => errorbound_rows(),
        "all" => {
            let mut rows = errorbound_rows();
            rows.extend(family1_rows());
            rows.extend(family2_rows());
            rows
        }
        other => {
            return Err(CliError::Config(format!(
                "suite: unknown suite '{other}' (expected family1, family2, errorbound or all)"
            )))
        }
    })
}
