//! Sessions: texts, agents, oracle, metering, and the verdicts computed on
//! the resulting transcripts.

mod agent;
mod charsample;
mod compose;
mod evaluate;
mod session;
mod setspec;
mod text;

pub use agent::{
    Action, AgentSpec, DatumRule, IdentityTeacher, Learner, Outcome, Reaction, RuleLearner, Teacher,
};
pub use charsample::{check_characteristic_sample, SampleBounds, SampleVerdict};
pub use compose::{compose_pair, ComposedLearner};
pub(crate) use compose::{Sim, SimStep};
pub use evaluate::{evaluate_run, Criterion, FailReason, Verdict};
pub use session::{
    run_session, Budget, Convergence, Event, EventKind, MembershipOracle, ResourceLedger,
    SessionAgents, SessionTranscript, Termination, SKIP_COST,
};
pub use setspec::{set_equal, set_subset, SetSpec, StagedSet, SCAN_LIMIT};
pub use text::{make_text, Text, TextKind, TextStream};
