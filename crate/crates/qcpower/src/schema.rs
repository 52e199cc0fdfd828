//! JSON input schemas for channels and states.
//!
//! Channel: `{"kraus": [K, ...]}` with each `K` a 2×2 row-major matrix of
//! `[re, im]` pairs (nested or flat), or `{"affine": {"lambda": 3×3 (nested
//! or flat 9), "t": [3]}}`; optional `"name"`.
//!
//! State: `{"qc": {"p0", "n0": [3], "p1", "n1": [3]}}` or
//! `{"cc": {"p": [[2], [2]], "u_axis": [3], "v_axis": [3]}}`.

use num_complex::Complex64;
use qcpower_core::{AffineChannel, CCState, KrausChannel, Mat3, PureQCState, QCState, Vec3};
use qcpower_core::{CMatrix, QubitChannel};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Pair([f64; 2]),
    Real(f64),
}

impl Entry {
    fn value(self) -> Complex64 {
        match self {
            Entry::Pair([re, im]) => Complex64::new(re, im),
            Entry::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Nested([[Entry; 2]; 2]),
    Flat([Entry; 4]),
}

impl OperatorSpec {
    fn matrix(&self) -> CMatrix<2> {
        let e = match self {
            OperatorSpec::Nested([[a, b], [c, d]]) => [*a, *b, *c, *d],
            OperatorSpec::Flat(f) => *f,
        };
        CMatrix::from_rows([[e[0].value(), e[1].value()], [e[2].value(), e[3].value()]])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Matrix3Spec {
    Nested([[f64; 3]; 3]),
    Flat([f64; 9]),
}

impl Matrix3Spec {
    fn matrix(&self) -> Mat3 {
        match self {
            Matrix3Spec::Nested(m) => Mat3(*m),
            Matrix3Spec::Flat(f) => Mat3([[f[0], f[1], f[2]], [f[3], f[4], f[5]], [f[6], f[7], f[8]]]),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineSpec {
    pub lambda: Matrix3Spec,
    pub t: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<OperatorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineSpec>,
}

/// A parsed channel in whichever form it was given.
#[derive(Debug, Clone)]
pub enum Channel {
    Kraus(KrausChannel),
    Affine(AffineChannel),
}

impl Channel {
    pub fn affine(&self) -> CliResult<AffineChannel> {
        match self {
            Channel::Kraus(k) => Ok(k.affine()?),
            Channel::Affine(a) => Ok(*a),
        }
    }

    pub fn apply_on_a(&self, m: &CMatrix<4>) -> CMatrix<4> {
        match self {
            Channel::Kraus(k) => k.apply_on_a(m),
            Channel::Affine(a) => a.apply_on_a(m),
        }
    }
}

impl ChannelSpec {
    pub fn parse(&self) -> CliResult<Channel> {
        match (&self.kraus, &self.affine) {
            (Some(ops), None) => {
                let ops = ops.iter().map(OperatorSpec::matrix).collect();
                Ok(Channel::Kraus(KrausChannel::new(ops).map_err(|e| CliError::Parse(e.to_string()))?))
            }
            (None, Some(a)) => {
                let ch = AffineChannel::new(a.lambda.matrix(), Vec3::from_array(a.t))
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(Channel::Affine(ch))
            }
            _ => Err(CliError::Parse("channel needs exactly one of \"kraus\" or \"affine\"".into())),
        }
    }

    /// Canonical (nested) re-serialization of the input.
    pub fn echo(&self) -> Value {
        let mut v = serde_json::Map::new();
        if let Some(name) = &self.name {
            v.insert("name".into(), json!(name));
        }
        if let Some(ops) = &self.kraus {
            let ops: Vec<Value> = ops.iter().map(|k| complex_matrix_json(&k.matrix())).collect();
            v.insert("kraus".into(), Value::Array(ops));
        }
        if let Some(a) = &self.affine {
            v.insert("affine".into(), affine_json(&a.lambda.matrix(), Vec3::from_array(a.t)));
        }
        Value::Object(v)
    }
}

pub fn complex_matrix_json<const N: usize>(m: &CMatrix<N>) -> Value {
    let rows: Vec<Value> = m.rows().iter().map(|r| json!(r.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())).collect();
    Value::Array(rows)
}

pub fn affine_json(lambda: &Mat3, t: Vec3) -> Value {
    json!({ "lambda": lambda.0, "t": t.to_array() })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QcSpec {
    pub p0: f64,
    pub n0: [f64; 3],
    pub p1: f64,
    pub n1: [f64; 3],
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CcSpec {
    pub p: [[f64; 2]; 2],
    pub u_axis: [f64; 3],
    pub v_axis: [f64; 3],
}

impl CcSpec {
    pub fn from_state(c: &CCState) -> Self {
        CcSpec { p: c.p, u_axis: c.u_axis.to_array(), v_axis: c.v_axis.to_array() }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qc: Option<QcSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cc: Option<CcSpec>,
}

pub enum State {
    Qc(QCState),
    Cc(CCState),
}

impl StateSpec {
    pub fn parse(&self) -> CliResult<State> {
        match (self.qc, self.cc) {
            (Some(q), None) => Ok(State::Qc(QCState::from_bloch(
                q.p0,
                Vec3::from_array(q.n0),
                q.p1,
                Vec3::from_array(q.n1),
            )?)),
            (None, Some(c)) => Ok(State::Cc(CCState::new(
                c.p,
                Vec3::from_array(c.u_axis),
                Vec3::from_array(c.v_axis),
            )?)),
            _ => Err(CliError::Parse("state needs exactly one of \"qc\" or \"cc\"".into())),
        }
    }

    pub fn pure_qc(&self) -> CliResult<PureQCState> {
        let q = self.qc.ok_or_else(|| CliError::Domain("a \"qc\" state with unit n0, n1 is required".into()))?;
        Ok(PureQCState::new(q.p0, Vec3::from_array(q.n0), q.p1, Vec3::from_array(q.n1))?)
    }

    pub fn cc_state(&self) -> CliResult<CCState> {
        match self.parse()? {
            State::Cc(c) => Ok(c),
            State::Qc(_) => Err(CliError::Domain("a \"cc\" state is required".into())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSpec {
    pub channel: ChannelSpec,
    pub state: StateSpec,
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kraus_forms_agree() {
        let nested: ChannelSpec = parse_json(r#"{"kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#).unwrap();
        let flat: ChannelSpec = parse_json(r#"{"kraus": [[[1,0],[0,0],[0,0],[1,0]]]}"#).unwrap();
        let a = nested.parse().unwrap().affine().unwrap();
        let b = flat.parse().unwrap().affine().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, AffineChannel::identity());
    }

    #[test]
    fn rejects_ambiguous_channel() {
        let both: ChannelSpec =
            parse_json(r#"{"kraus": [[[1,0],[0,0],[0,0],[1,0]]], "affine": {"lambda": [1,0,0,0,1,0,0,0,1], "t": [0,0,0]}}"#)
                .unwrap();
        assert!(matches!(both.parse(), Err(CliError::Parse(_))));
        assert!(parse_json::<ChannelSpec>(r#"{"kraus": 3}"#).is_err());
    }

    #[test]
    fn echo_reparses() {
        let spec: ChannelSpec = parse_json(r#"{"name": "x", "affine": {"lambda": [1,0,0,0,1,0,0,0,1], "t": [0,0,0]}}"#).unwrap();
        let again: ChannelSpec = serde_json::from_value(spec.echo()).unwrap();
        assert_eq!(again.parse().unwrap().affine().unwrap(), AffineChannel::identity());
    }
}
