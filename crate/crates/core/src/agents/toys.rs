//! Small scripted learners used as adversary targets.

use super::teachers::interval_level;
use crate::engine::{Action, AgentSpec, Learner, Outcome};
use crate::Nat;

/// Emits `h` and idles.
#[derive(Debug, Clone)]
pub struct ConstantLearner {
    h: Nat,
    done: bool,
}

impl ConstantLearner {
    pub fn new(h: Nat) -> Self {
        ConstantLearner { h, done: false }
    }
}

impl Learner for ConstantLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("constant").param("h", self.h)
    }

    fn next_action(&mut self) -> Action {
        if self.done {
            return Action::Idle;
        }
        self.done = true;
        Action::Emit(self.h)
    }

    fn observe(&mut self, _: Outcome) {}
}

/// Emits 0, then after its `t`-th datum queries `3t`.
#[derive(Debug, Clone, Default)]
pub struct QueryThreeT {
    started: bool,
    t: Nat,
    asking: bool,
}

impl Learner for QueryThreeT {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("query_three_t").cost("query", 1)
    }

    fn next_action(&mut self) -> Action {
        if !self.started {
            self.started = true;
            return Action::Emit(0);
        }
        if self.asking {
            return Action::Query(3 * self.t);
        }
        Action::ReadNext
    }

    fn observe(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Datum(_) => {
                self.t += 1;
                self.asking = true;
            }
            Outcome::Answer(_) => self.asking = false,
            Outcome::Skipped => {}
        }
    }
}

/// Guesses from the interval `[2^{2k+1}+1, 2^{2k+2}]` holding the largest
/// datum: always `2k` (`odd = false`) or always `2k+1`. With `query`, it
/// first asks about the datum's successor inside the interval.
#[derive(Debug, Clone)]
pub struct PcsToyLearner {
    odd: bool,
    query: bool,
    max: Option<Nat>,
    ask: Option<Nat>,
    out: Option<Nat>,
}

impl PcsToyLearner {
    pub fn new(odd: bool, query: bool) -> Self {
        PcsToyLearner {
            odd,
            query,
            max: None,
            ask: None,
            out: None,
        }
    }

    fn guess(&self) -> Nat {
        match self.max.and_then(interval_level) {
            Some(k) => 2 * k + self.odd as Nat,
            None => 0,
        }
    }
}

impl Learner for PcsToyLearner {
    fn spec(&self) -> AgentSpec {
        let name = match (self.odd, self.query) {
            (true, _) => "pcs_toy_odd",
            (false, true) => "pcs_toy_query",
            (false, false) => "pcs_toy_even",
        };
        AgentSpec::new(name).cost("query", self.query as u64)
    }

    fn next_action(&mut self) -> Action {
        if let Some(x) = self.ask {
            return Action::Query(x);
        }
        if let Some(h) = self.out.take() {
            return Action::Emit(h);
        }
        Action::ReadNext
    }

    fn observe(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Datum(x) => {
                self.max = Some(self.max.map_or(x, |m| m.max(x)));
                let next = x + 1;
                if self.query && interval_level(next).is_some() && interval_level(next) == interval_level(x) {
                    self.ask = Some(next);
                } else {
                    self.out = Some(self.guess());
                }
            }
            Outcome::Answer(_) => {
                self.ask = None;
                self.out = Some(self.guess());
            }
            Outcome::Skipped => {}
        }
    }
}
