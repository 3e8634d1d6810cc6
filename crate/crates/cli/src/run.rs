use nbar::classes::{compose_row_prefix, domain_target_check};
use nbar::weighted_mean::{forward_transform, inverse_transform, space_norm};
use nbar::{
    attainment_witness, beta_dual_membership, class_check, dual_norm, mnc_estimate, ClassQuery, MatrixSpec, Scalar,
    SequenceSpec, Space, TruncationConfig,
};

use crate::report::{AttainmentReport, ComposedRow, Indexed, Outcome, Report, ReproReport};
use crate::spec::{Params, ProblemSpec, Subject, Task, WeightsSpec};
use crate::CliError;

fn missing(task: Task, field: &str) -> CliError {
    CliError::Spec(format!("task {} needs params.{field}", task.as_str()))
}

fn sequence<T>(spec: &ProblemSpec<T>) -> &SequenceSpec<T> {
    match &spec.subject {
        Subject::Sequence(s) => s,
        Subject::Matrix(_) => unreachable!("validated"),
    }
}

fn matrix<T>(spec: &ProblemSpec<T>) -> &MatrixSpec<T> {
    match &spec.subject {
        Subject::Matrix(m) => m,
        Subject::Sequence(_) => unreachable!("validated"),
    }
}

fn pair(spec: &ProblemSpec<impl Scalar>) -> Result<(Space, Space), CliError> {
    let from = spec.params.from.ok_or_else(|| missing(spec.task, "from"))?;
    let to = spec.params.to.ok_or_else(|| missing(spec.task, "to"))?;
    Ok((from, to))
}

pub fn run<T: Scalar>(spec: &ProblemSpec<T>) -> Result<Report<T>, CliError> {
    let w = spec.weights();
    let cfg = &spec.config;
    let p = &spec.params;
    let all_indices = || (0..=cfg.depth).collect::<Vec<_>>();
    let result = match spec.task {
        Task::Transform | Task::Invert => {
            let x = sequence(spec);
            let indices = p.indices.clone().unwrap_or_else(all_indices);
            let values = indices
                .into_iter()
                .map(|index| {
                    let value = if spec.task == Task::Transform {
                        forward_transform(&w, x, index)?
                    } else {
                        inverse_transform(&w, x, index)?
                    };
                    Ok(Indexed { index, value })
                })
                .collect::<Result<_, CliError>>()?;
            let name = if spec.task == Task::Transform { "tau" } else { "x" };
            Outcome::Values {
                name: name.into(),
                values,
            }
        }
        Task::Norm => Outcome::Verdict {
            verdict: space_norm(&w, sequence(spec), cfg)?,
            attainment: None,
        },
        Task::DualNorm => {
            let a = sequence(spec);
            let attainment = match p.attain_at {
                Some(row) => {
                    let att = attainment_witness(&w, a, row)?;
                    Some(AttainmentReport {
                        row,
                        value: att.value,
                        row_abs_sum: att.row_abs_sum,
                        signs: att.signs,
                        x: att.x.prefix(row + 1),
                    })
                }
                None => None,
            };
            Outcome::Verdict {
                verdict: dual_norm(&w, a, cfg)?,
                attainment,
            }
        }
        Task::BetaDual => {
            let space = p.space.ok_or_else(|| missing(spec.task, "space"))?;
            Outcome::Verdict {
                verdict: beta_dual_membership(&w, sequence(spec), space, cfg)?,
                attainment: None,
            }
        }
        Task::ClassCheck => {
            let (from, to) = pair(spec)?;
            let query = ClassQuery::new(matrix(spec).clone(), from, to, w, cfg.clone())?;
            Outcome::Verdict {
                verdict: class_check(&query)?,
                attainment: None,
            }
        }
        Task::Compose => {
            let a = matrix(spec);
            let width = p.width.unwrap_or(8);
            let indices = p.indices.clone().unwrap_or_else(|| (0..=cfg.depth.min(7)).collect());
            let rows = indices
                .into_iter()
                .map(|row| {
                    Ok(ComposedRow {
                        row,
                        values: compose_row_prefix(a, &w, row, width)?,
                    })
                })
                .collect::<Result<_, CliError>>()?;
            let verdict = match (p.from, p.to) {
                (Some(from), Some(to)) => Some(domain_target_check(a, from, to, &w, cfg)?),
                (None, None) => None,
                _ => return Err(missing(spec.task, "from and params.to together")),
            };
            Outcome::Composed { rows, verdict }
        }
        Task::Mnc => {
            let (from, to) = pair(spec)?;
            Outcome::Mnc {
                report: mnc_estimate(matrix(spec), &w, from, to, cfg)?,
            }
        }
    };
    Ok(Report {
        task: spec.task.as_str().into(),
        mode: spec.mode,
        params: spec.params.clone(),
        config: cfg.clone(),
        result,
    })
}

/// The worked example: `p = (1, 1, 0, ...)`, `q_n = 3^n` and every row of
/// `A` equal to `e^(1)`. `A` is bounded from `Ninf` into `linf`, the tail
/// norms settle at a positive constant, and `A` has rank one.
pub fn repro<T: Scalar>(cfg: &TruncationConfig<T>) -> Result<Report<T>, CliError> {
    let weights = WeightsSpec {
        p: SequenceSpec::literal(vec![T::one(), T::one()]),
        q: SequenceSpec::Geometric(T::from_usize_exact(3)),
    };
    let a = MatrixSpec::ConstantRows {
        row: SequenceSpec::Unit(1),
    };
    let w = nbar::WeightPair::new(weights.p.clone(), weights.q.clone());
    let query = ClassQuery::new(a.clone(), Space::Ninf, Space::Linf, w.clone(), cfg.clone())?;
    let verdict = class_check(&query)?;
    let mnc = mnc_estimate(&a, &w, Space::Ninf, Space::Linf, cfg)?;
    let computed_limit = mnc.limit_estimate.clone();
    Ok(Report {
        task: "repro".into(),
        mode: T::MODE,
        params: Params {
            from: Some(Space::Ninf),
            to: Some(Space::Linf),
            ..Params::default()
        },
        config: cfg.clone(),
        result: Outcome::Repro(Box::new(ReproReport {
            weights,
            matrix: a,
            class_check: verdict,
            mnc,
            reported_limit: "2".into(),
            reported_tail_formula: "2 - 1/(2*3^s)".into(),
            computed_limit,
        })),
    })
}
