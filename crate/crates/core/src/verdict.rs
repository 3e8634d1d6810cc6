//! Tri-state outcomes of truncated checks.

use serde::{Deserialize, Serialize};

use crate::config::TruncationConfig;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    /// Conjunction: any failure fails, otherwise any doubt is doubt.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Holds, Status::Holds) => Status::Holds,
            _ => Status::Inconclusive,
        }
    }
}

/// A concrete index (or index pair) and the value observed there.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct Witness<T> {
    pub index: Vec<usize>,
    #[serde(with = "crate::scalar::serde_scalar")]
    pub value: T,
    pub note: String,
}

impl<T> Witness<T> {
    pub fn new(index: Vec<usize>, value: T, note: impl Into<String>) -> Self {
        Witness {
            index,
            value,
            note: note.into(),
        }
    }
}

/// Result of a truncated check, with the numbers that support it.
///
/// `evidence` is the headline value (an achieved supremum, a limit estimate),
/// `trace` the per-index values it came from. A `Fails` verdict always has a
/// witness. Compound checks keep their parts in `conditions`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ConditionVerdict<T> {
    pub name: String,
    pub status: Status,
    #[serde(with = "crate::scalar::serde_scalar::option")]
    pub evidence: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness<T>>,
    #[serde(with = "crate::scalar::serde_scalar::vec")]
    pub trace: Vec<T>,
    pub config: TruncationConfig<T>,
    pub diagnostics: Vec<String>,
    pub interpretation_flags: Vec<String>,
    pub conditions: Vec<ConditionVerdict<T>>,
}

impl<T: Scalar> ConditionVerdict<T> {
    pub fn new(name: impl Into<String>, status: Status, cfg: &TruncationConfig<T>) -> Self {
        ConditionVerdict {
            name: name.into(),
            status,
            evidence: None,
            witness: None,
            trace: Vec::new(),
            config: cfg.clone(),
            diagnostics: Vec::new(),
            interpretation_flags: Vec::new(),
            conditions: Vec::new(),
        }
    }

    pub fn holds(name: impl Into<String>, cfg: &TruncationConfig<T>) -> Self {
        Self::new(name, Status::Holds, cfg)
    }

    pub fn inconclusive(name: impl Into<String>, cfg: &TruncationConfig<T>) -> Self {
        Self::new(name, Status::Inconclusive, cfg)
    }

    pub fn fails(name: impl Into<String>, witness: Witness<T>, cfg: &TruncationConfig<T>) -> Self {
        let mut v = Self::new(name, Status::Fails, cfg);
        v.witness = Some(witness);
        v
    }

    pub fn with_evidence(mut self, value: T) -> Self {
        self.evidence = Some(value);
        self
    }

    pub fn with_trace(mut self, trace: Vec<T>) -> Self {
        self.trace = trace;
        self
    }

    pub fn with_diagnostic(mut self, msg: impl Into<String>) -> Self {
        self.diagnostics.push(msg.into());
        self
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.interpretation_flags.push(flag.into());
        self
    }

    /// Conjunction of sub-conditions. The status is the `and` of the parts;
    /// a failing compound borrows the witness of its first failing part.
    pub fn all(name: impl Into<String>, parts: Vec<ConditionVerdict<T>>, cfg: &TruncationConfig<T>) -> Self {
        let status = parts.iter().fold(Status::Holds, |acc, p| acc.and(p.status));
        let mut v = Self::new(name, status, cfg);
        if status == Status::Fails {
            let first = parts.iter().find(|p| p.status == Status::Fails).expect("a part failed");
            let w = first.witness.clone().expect("failing verdicts carry witnesses");
            v.witness = Some(Witness::new(w.index, w.value, format!("{}: {}", first.name, w.note)));
        }
        for p in &parts {
            for f in &p.interpretation_flags {
                if !v.interpretation_flags.contains(f) {
                    v.interpretation_flags.push(f.clone());
                }
            }
        }
        v.conditions = parts;
        v
    }

    /// Finds a sub-condition by name, searching depth-first.
    pub fn condition(&self, name: &str) -> Option<&ConditionVerdict<T>> {
        self.conditions
            .iter()
            .find_map(|c| if c.name == name { Some(c) } else { c.condition(name) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_conjunction() {
        use Status::*;
        assert_eq!(Holds.and(Holds), Holds);
        assert_eq!(Holds.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Fails), Fails);
        assert_eq!(Fails.and(Holds), Fails);
    }

    #[test]
    fn compound_takes_first_failing_witness() {
        let cfg = TruncationConfig::<f64>::default();
        let a = ConditionVerdict::holds("a", &cfg);
        let b = ConditionVerdict::fails("b", Witness::new(vec![3], 2.0, "too big"), &cfg);
        let all = ConditionVerdict::all("both", vec![a, b], &cfg);
        assert_eq!(all.status, Status::Fails);
        assert_eq!(all.witness.as_ref().unwrap().index, vec![3]);
        assert!(all.condition("b").is_some());
    }
}
