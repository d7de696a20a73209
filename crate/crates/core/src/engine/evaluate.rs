use std::fmt;

use serde::Serialize;

use super::session::SessionTranscript;
use super::setspec::set_equal;
use crate::codec::PolyCode;
use crate::families::IndexedFamily;
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    /// Polynomial run-time: ticks before convergence.
    Prt,
    /// Polynomial size dataset: distinct data before convergence.
    Psd,
    /// Polynomial mind changes.
    Pmc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FailReason {
    NonConverged(String),
    BadHypothesis(String),
    WrongHypothesis { hypothesis: Nat },
    Bound { measure: String, value: Nat, limit: Nat },
    Size { sample: usize, limit: Nat },
    Counterexample { prefix: Vec<Nat>, hypothesis: Option<Nat> },
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::NonConverged(why) => write!(f, "non-converged ({why})"),
            FailReason::BadHypothesis(why) => write!(f, "bad hypothesis: {why}"),
            FailReason::WrongHypothesis { hypothesis } => {
                write!(f, "hypothesis {hypothesis} names a different set")
            }
            FailReason::Bound { measure, value, limit } => {
                write!(f, "{measure} = {value} exceeds bound {limit}")
            }
            FailReason::Size { sample, limit } => {
                write!(f, "sample size {sample} is not below {limit}")
            }
            FailReason::Counterexample { prefix, hypothesis } => {
                write!(f, "prefix {prefix:?} yields {hypothesis:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail(FailReason),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        *self == Verdict::Pass
    }
}

fn over(measure: &str, value: Nat, limit: Nat, strict: bool) -> Option<Verdict> {
    let bad = if strict { value >= limit } else { value > limit };
    bad.then(|| {
        Verdict::Fail(FailReason::Bound {
            measure: measure.to_string(),
            value,
            limit,
        })
    })
}

/// Judges a transcript against `criterion` with bound `poly` at the target's
/// minimal index.
pub fn evaluate_run(
    transcript: &SessionTranscript,
    family: &dyn IndexedFamily,
    target_index: Nat,
    poly: PolyCode,
    criterion: Criterion,
) -> Verdict {
    let fail = |r| Verdict::Fail(r);
    if !transcript.converged {
        return fail(FailReason::NonConverged(format!("{:?}", transcript.termination)));
    }
    let (Some(h), Some(conv)) = (transcript.final_hypothesis(), transcript.convergence.as_ref()) else {
        return fail(FailReason::NonConverged("no hypothesis".into()));
    };

    let target = match family.member(target_index) {
        Ok(t) => t,
        Err(e) => return fail(FailReason::BadHypothesis(format!("target: {e}"))),
    };
    let guess = match family.member(h) {
        Ok(g) => g,
        Err(e) => return fail(FailReason::BadHypothesis(e.to_string())),
    };
    let bound = match family.separation_bound(&[h, target_index]) {
        Ok(u) => u,
        Err(e) => return fail(FailReason::BadHypothesis(e.to_string())),
    };
    if !set_equal(&guess, &target, bound) {
        return fail(FailReason::WrongHypothesis { hypothesis: h });
    }

    let limit = match family
        .min_index(target_index)
        .and_then(|mi| poly.eval(mi))
    {
        Ok(l) => l,
        Err(e) => return fail(FailReason::BadHypothesis(e.to_string())),
    };
    let queries = transcript.ledger.oracle_queries as Nat;
    let verdict = match criterion {
        Criterion::Prt => over("ticks at convergence", conv.ledger.ticks as Nat, limit, true)
            .or_else(|| over("oracle queries", queries, limit, false)),
        Criterion::Psd => over(
            "distinct data at convergence",
            conv.ledger.distinct_data as Nat,
            limit,
            true,
        )
        .or_else(|| over("oracle queries", queries, limit, false)),
        Criterion::Pmc => over("mind changes", transcript.ledger.mind_changes as Nat, limit, false),
    };
    verdict.unwrap_or(Verdict::Pass)
}
