//! One function per subcommand. Each returns a JSON document or a table.

use qcpower_core::geometry::{geometric_measure, nearest_cc_state, oracle_nearest_cc, CaseTag};
use qcpower_core::measures::{self, classical_correlation, quantum_correlation};
use qcpower_core::power::{correlating_power, power_ad_closed_form, SphereScheme};
use qcpower_core::states::DensityMatrix;
use qcpower_core::{channels, CCState, PureQCState, QCState, Tolerances, Vec3};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::schema::{affine_json, CcSpec, Channel, ChannelSpec, CreateSpec, State, StateSpec};

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Json(Value),
    Table { header: Vec<&'static str>, rows: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub order: usize,
    pub mc_samples: Option<usize>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { order: 64, mc_samples: None, seed: 0, tol: 1e-8 }
    }
}

impl Settings {
    pub fn scheme(&self) -> SphereScheme {
        match self.mc_samples {
            Some(samples) => SphereScheme::MonteCarlo { samples, seed: self.seed },
            None => SphereScheme::GaussProduct { order: self.order },
        }
    }
}

fn scheme_json(s: SphereScheme) -> Value {
    match s {
        SphereScheme::GaussProduct { order } => json!({ "type": "gauss_product", "order": order }),
        SphereScheme::MonteCarlo { samples, seed } => {
            json!({ "type": "monte_carlo", "samples": samples, "seed": seed })
        }
    }
}

fn case_name(c: CaseTag) -> &'static str {
    match c {
        CaseTag::Aligned => "aligned",
        CaseTag::Anti => "anti",
    }
}

fn cc_json(c: &CCState) -> Value {
    json!({ "cc": CcSpec::from_state(c) })
}

pub fn classify(spec: &ChannelSpec, s: &Settings) -> CliResult<Output> {
    let ch = spec.parse()?;
    let a = ch.affine()?;
    let report = a.validate_cptp();
    let trace_residual = match &ch {
        Channel::Kraus(k) => k.trace_residual(),
        Channel::Affine(_) => 0.0,
    };
    let canonical = a.canonical_form();
    Ok(Output::Json(json!({
        "command": "classify",
        "channel": spec.echo(),
        "tol": s.tol,
        "unital": a.is_unital(s.tol),
        "semiclassical": a.is_semiclassical(s.tol),
        "cptp": report.valid,
        "min_choi_eigenvalue": report.min_choi_eigenvalue,
        "trace_residual": trace_residual,
        "affine": affine_json(&a.lambda, a.t),
        "canonical_lambda": canonical.lambda_d,
        "t_c": canonical.t_c.to_array(),
    })))
}

pub fn measure(spec: &StateSpec, s: &Settings) -> CliResult<Output> {
    let mut out = json!({ "command": "measure", "state": spec, "tol": s.tol });
    match spec.parse()? {
        State::Qc(q) => {
            let r = measures::report_qc(&q);
            let (p0, r0, p1, r1) = q.bloch_form();
            out["q"] = json!(r.q_value);
            out["q_bloch"] = json!(measures::quantum_correlation_bloch(p0, p1, r0, r1));
        }
        State::Cc(c) => {
            let r = measures::report_cc(&c)?;
            out["q"] = json!(r.q_value);
            out["c"] = json!(r.c_value);
        }
    }
    Ok(Output::Json(out))
}

/// Created correlation from the affine formula, and independently as
/// `Q` of the assembled output `(ℰ ⊗ I)σ` read off in the B basis of `σ`.
pub fn create(spec: &CreateSpec, s: &Settings) -> CliResult<Output> {
    let ch = spec.channel.parse()?;
    let a = ch.affine()?;
    let cc = spec.state.cc_state()?;
    let created = measures::created_correlation(&a, &cc)?;
    let image = DensityMatrix::new(ch.apply_on_a(cc.assemble().matrix()))?;
    let tol = Tolerances { classical_block: s.tol, ..Tolerances::DEFAULT };
    let q_output = quantum_correlation(&QCState::from_density(&image, cc.v_axis, &tol)?);
    Ok(Output::Json(json!({
        "command": "create",
        "channel": spec.channel.echo(),
        "state": spec.state,
        "tol": s.tol,
        "created_correlation": created,
        "q_output": q_output,
        "classical_correlation": classical_correlation(&cc),
    })))
}

pub fn power(spec: &ChannelSpec, s: &Settings) -> CliResult<Output> {
    let a = spec.parse()?.affine()?;
    let r = correlating_power(&a, s.scheme())?;
    Ok(Output::Json(json!({
        "command": "power",
        "channel": spec.echo(),
        "tol": s.tol,
        "value": r.value,
        "estimated_error": r.estimated_error,
        "scheme": scheme_json(r.scheme),
    })))
}

pub fn qmax(spec: &ChannelSpec, s: &Settings) -> CliResult<Output> {
    let a = spec.parse()?.affine()?;
    a.ensure_cptp()?;
    let r = measures::q_max(&a);
    Ok(Output::Json(json!({
        "command": "qmax",
        "channel": spec.echo(),
        "tol": s.tol,
        "value": r.value,
        "argmax": r.argmax.to_array(),
        "formula_value": r.formula_value,
    })))
}

pub fn nearest_cc(spec: &StateSpec, s: &Settings, oracle_budget: Option<usize>) -> CliResult<Output> {
    let state = spec.pure_qc()?;
    let r = nearest_cc_state(&state)?;
    let mut out = json!({
        "command": "nearest-cc",
        "state": spec,
        "tol": s.tol,
        "f_max": r.f_max,
        "q_geometric": r.q_geometric,
        "case": case_name(r.case_tag),
        "xi": r.xi,
        "theta": r.theta,
        "alpha": r.alpha,
        "s0": r.s0.to_array(),
        "s1": r.s1.to_array(),
        "cc_state": cc_json(&r.to_cc_state()),
    });
    if let Some(budget) = oracle_budget {
        let o = oracle_nearest_cc(&state, budget)?;
        out["oracle"] = json!({
            "budget": budget,
            "fidelity": o.fidelity,
            "evaluations": o.evaluations,
            "tie_count": o.tie_count,
            "cc_state": cc_json(&o.cc_state),
        });
    }
    Ok(Output::Json(out))
}

pub fn scan_ad(gamma_min: f64, gamma_max: f64, steps: usize, s: &Settings) -> CliResult<Output> {
    if !(0.0 <= gamma_min && gamma_min <= gamma_max && gamma_max <= 1.0) {
        return Err(CliError::Domain(format!("need 0 <= gamma_min <= gamma_max <= 1, got [{gamma_min}, {gamma_max}]")));
    }
    if steps < 2 {
        return Err(CliError::Domain(format!("steps must be at least 2, got {steps}")));
    }
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let gamma = gamma_min + (gamma_max - gamma_min) * k as f64 / (steps - 1) as f64;
        let a = channels::amplitude_damping(gamma)?.affine()?;
        let p = correlating_power(&a, s.scheme())?.value;
        rows.push(vec![gamma, p, power_ad_closed_form(gamma)?]);
    }
    Ok(Output::Table { header: vec!["gamma", "p_quadrature", "p_closed_form"], rows })
}

/// `n₀ = ẑ`, `n₁` in the xz-plane with `n₀·n₁ = x` swept over `[−1, 1]`.
pub fn compare_geometric(p0: f64, steps: usize) -> CliResult<Output> {
    if steps < 3 {
        return Err(CliError::Domain(format!("steps must be at least 3, got {steps}")));
    }
    let p1 = 1.0 - p0;
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let x = if 2 * k + 1 == steps { 0.0 } else { -1.0 + 2.0 * k as f64 / (steps - 1) as f64 };
        let n1 = Vec3::new((1.0 - x * x).max(0.0).sqrt(), 0.0, x);
        let state = PureQCState::new(p0, Vec3::Z, p1, n1)?;
        let q = quantum_correlation(&state.to_qc());
        rows.push(vec![x, q, geometric_measure(p0, p1, Vec3::Z, n1)?]);
    }
    Ok(Output::Table { header: vec!["n0_dot_n1", "q", "q_geometric"], rows })
}
