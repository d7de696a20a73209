use std::collections::BTreeMap;

use serde::Serialize;

use crate::Nat;

/// What a learner wants to do next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Action {
    ReadNext,
    SkipNext,
    Query(Nat),
    Emit(Nat),
    /// The learner is finished; its last emission stands forever.
    Idle,
}

/// Result delivered back to the learner for the actions that produce one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Datum(Nat),
    Skipped,
    Answer(bool),
}

/// Name, construction parameters and declared per-primitive tick costs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AgentSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub costs: BTreeMap<String, u64>,
}

impl AgentSpec {
    pub fn new(name: impl Into<String>) -> Self {
        AgentSpec {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn cost(mut self, primitive: &str, units: u64) -> Self {
        self.costs.insert(primitive.to_string(), units);
        self
    }
}

/// A deterministic learning machine driven one action at a time.
///
/// The session calls [`Learner::next_action`], carries the action out and, for
/// reads, skips and queries, reports the result through [`Learner::observe`].
/// Emissions and idling need no reply.
pub trait Learner: Send {
    fn spec(&self) -> AgentSpec;
    fn next_action(&mut self) -> Action;
    fn observe(&mut self, outcome: Outcome);
    /// Internal work units spent since the last call, charged as extra ticks.
    fn drain_work(&mut self) -> u64 {
        0
    }
}

/// A prefix-monotone stream transducer sitting between the text and the learner.
pub trait Teacher: Send {
    fn spec(&self) -> AgentSpec;
    /// Receives the next raw datum and returns the extension of its output.
    fn on_input(&mut self, datum: Nat) -> Vec<Nat>;
    fn on_query_response(&mut self, _x: Nat, _answer: bool) {}
}

/// Forwards every datum unchanged.
#[derive(Debug, Clone, Default)]
pub struct IdentityTeacher;

impl Teacher for IdentityTeacher {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("identity_teacher")
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        vec![datum]
    }
}

/// What a [`DatumRule`] does with a datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reaction {
    Nothing,
    Emit(Nat),
    EmitThenIdle(Nat),
}

/// The common shape of text-only learners: look at each datum, maybe emit.
pub trait DatumRule: Send {
    fn spec(&self) -> AgentSpec;
    fn initial(&mut self) -> Option<Nat> {
        None
    }
    fn on_datum(&mut self, x: Nat) -> Reaction;
    /// Work units the last `on_datum` call performed.
    fn work(&mut self) -> u64 {
        0
    }
}

/// Adapts a [`DatumRule`] into a [`Learner`] that reads, reacts, repeats.
pub struct RuleLearner<R> {
    rule: R,
    started: bool,
    pending: Option<Nat>,
    idle_after_emit: bool,
    idle: bool,
    work: u64,
}

impl<R: DatumRule> RuleLearner<R> {
    pub fn new(rule: R) -> Self {
        RuleLearner {
            rule,
            started: false,
            pending: None,
            idle_after_emit: false,
            idle: false,
            work: 0,
        }
    }

    pub fn rule(&self) -> &R {
        &self.rule
    }
}

impl<R: DatumRule> Learner for RuleLearner<R> {
    fn spec(&self) -> AgentSpec {
        self.rule.spec()
    }

    fn next_action(&mut self) -> Action {
        if !self.started {
            self.started = true;
            self.pending = self.rule.initial();
        }
        if let Some(h) = self.pending.take() {
            if self.idle_after_emit {
                self.idle = true;
            }
            return Action::Emit(h);
        }
        if self.idle {
            return Action::Idle;
        }
        Action::ReadNext
    }

    fn observe(&mut self, outcome: Outcome) {
        if let Outcome::Datum(x) = outcome {
            match self.rule.on_datum(x) {
                Reaction::Nothing => {}
                Reaction::Emit(h) => self.pending = Some(h),
                Reaction::EmitThenIdle(h) => {
                    self.pending = Some(h);
                    self.idle_after_emit = true;
                }
            }
            self.work += self.rule.work();
        }
    }

    fn drain_work(&mut self) -> u64 {
        std::mem::take(&mut self.work)
    }
}
