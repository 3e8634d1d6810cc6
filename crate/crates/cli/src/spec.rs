//! The JSON problem envelope read by `nbar run`.

use nbar::{MatrixSpec, Mode, Scalar, SequenceSpec, Space, TruncationConfig, WeightPair};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Transform,
    Invert,
    Norm,
    DualNorm,
    BetaDual,
    ClassCheck,
    Compose,
    Mnc,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Transform => "transform",
            Task::Invert => "invert",
            Task::Norm => "norm",
            Task::DualNorm => "dual-norm",
            Task::BetaDual => "beta-dual",
            Task::ClassCheck => "class-check",
            Task::Compose => "compose",
            Task::Mnc => "mnc",
        }
    }

    fn wants_matrix(self) -> bool {
        matches!(self, Task::ClassCheck | Task::Compose | Task::Mnc)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
pub struct WeightsSpec<T> {
    pub p: SequenceSpec<T>,
    pub q: SequenceSpec<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", rename_all = "snake_case", deny_unknown_fields)]
pub enum Subject<T> {
    Sequence(SequenceSpec<T>),
    Matrix(MatrixSpec<T>),
}

/// Task-specific arguments; each task reads only the fields it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Indices to report for `transform`, `invert` and `compose`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    /// Prefix length of each composed row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<Space>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<Space>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<Space>,
    /// Row at which `dual-norm` also builds the attaining sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attain_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
pub struct ProblemSpec<T> {
    #[serde(default)]
    pub mode: Mode,
    pub weights: WeightsSpec<T>,
    pub subject: Subject<T>,
    pub task: Task,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub config: TruncationConfig<T>,
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub depth: Option<usize>,
    pub window: Option<usize>,
    pub tol: Option<String>,
    pub mode: Option<Mode>,
}

/// The numeric mode a spec asks for, after the `--mode` override.
pub fn resolve_mode(raw: &serde_json::Value, ov: &Overrides) -> Result<Mode, CliError> {
    if let Some(m) = ov.mode {
        return Ok(m);
    }
    match raw.get("mode") {
        None => Ok(Mode::default()),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| CliError::Spec(format!("mode: {e}"))),
    }
}

impl<T: Scalar> ProblemSpec<T> {
    pub fn from_value(mut raw: serde_json::Value, ov: &Overrides) -> Result<Self, CliError> {
        if let (Some(m), Some(obj)) = (ov.mode, raw.as_object_mut()) {
            obj.insert("mode".into(), serde_json::to_value(m).expect("mode serializes"));
        }
        let mut spec: Self = serde_json::from_value(raw).map_err(|e| CliError::Spec(e.to_string()))?;
        if let Some(d) = ov.depth {
            spec.config.depth = d;
        }
        if let Some(w) = ov.window {
            spec.config.window = w;
        }
        if let Some(t) = &ov.tol {
            spec.config.tol = T::parse(t)?;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.config.validate()?;
        if self.mode != T::MODE {
            return Err(CliError::Spec(format!("spec mode {} read as {}", self.mode, T::MODE)));
        }
        match (&self.subject, self.task.wants_matrix()) {
            (Subject::Matrix(_), false) => Err(CliError::Spec(format!(
                "task {} takes a sequence subject",
                self.task.as_str()
            ))),
            (Subject::Sequence(_), true) => Err(CliError::Spec(format!(
                "task {} takes a matrix subject",
                self.task.as_str()
            ))),
            _ => Ok(()),
        }
    }

    pub fn weights(&self) -> WeightPair<T> {
        WeightPair::new(self.weights.p.clone(), self.weights.q.clone())
    }
}
