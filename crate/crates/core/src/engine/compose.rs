use std::collections::{BTreeSet, VecDeque};

use super::agent::{Action, AgentSpec, Learner, Outcome, Teacher};
use crate::Nat;

/// What an inner simulated learner did on one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SimStep {
    /// A pending read or skip was served from the queue.
    Served,
    Emitted(Nat),
    Query(Nat),
    /// The learner wants input and the queue is empty.
    Blocked,
    Idle,
}

/// Runs a learner over an internal input queue.
pub(crate) struct Sim {
    pub inner: Box<dyn Learner>,
    pub queue: VecDeque<Nat>,
    pending: Option<Action>,
    pub current: Option<Nat>,
    pub idle: bool,
}

impl Sim {
    pub fn new(inner: Box<dyn Learner>) -> Self {
        Sim {
            inner,
            queue: VecDeque::new(),
            pending: None,
            current: None,
            idle: false,
        }
    }

    pub fn step(&mut self) -> SimStep {
        if self.idle {
            return SimStep::Idle;
        }
        if let Some(p) = self.pending {
            let Some(x) = self.queue.pop_front() else {
                return SimStep::Blocked;
            };
            self.pending = None;
            self.inner.observe(if p == Action::SkipNext {
                Outcome::Skipped
            } else {
                Outcome::Datum(x)
            });
            return SimStep::Served;
        }
        match self.inner.next_action() {
            a @ (Action::ReadNext | Action::SkipNext) => {
                self.pending = Some(a);
                self.step()
            }
            Action::Query(x) => SimStep::Query(x),
            Action::Emit(h) => {
                self.current = Some(h);
                SimStep::Emitted(h)
            }
            Action::Idle => {
                self.idle = true;
                SimStep::Idle
            }
        }
    }

    pub fn answer(&mut self, b: bool) {
        self.inner.observe(Outcome::Answer(b));
    }

    pub fn drain_work(&mut self) -> u64 {
        self.inner.drain_work()
    }
}

/// A single learner that runs `teacher` on its raw input and `learner` on the
/// teacher's output.
pub struct ComposedLearner {
    sim: Sim,
    teacher: Box<dyn Teacher>,
    seen: BTreeSet<Nat>,
    awaiting: Option<Nat>,
    broken: bool,
    work: u64,
}

pub fn compose_pair(learner: Box<dyn Learner>, teacher: Box<dyn Teacher>) -> ComposedLearner {
    ComposedLearner {
        sim: Sim::new(learner),
        teacher,
        seen: BTreeSet::new(),
        awaiting: None,
        broken: false,
        work: 0,
    }
}

impl Learner for ComposedLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("composed")
            .param("learner", self.sim.inner.spec().name)
            .param("teacher", self.teacher.spec().name)
            .cost("internal_delivery", 1)
    }

    fn next_action(&mut self) -> Action {
        if self.broken {
            return Action::Idle;
        }
        loop {
            match self.sim.step() {
                SimStep::Served => {
                    self.work += 1 + self.sim.drain_work();
                }
                SimStep::Emitted(h) => return Action::Emit(h),
                SimStep::Query(x) => {
                    self.awaiting = Some(x);
                    return Action::Query(x);
                }
                SimStep::Blocked => return Action::ReadNext,
                SimStep::Idle => return Action::Idle,
            }
        }
    }

    fn observe(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Datum(x) => {
                self.seen.insert(x);
                let out = self.teacher.on_input(x);
                if out.iter().any(|y| !self.seen.contains(y)) {
                    self.broken = true;
                }
                self.sim.queue.extend(out);
            }
            Outcome::Answer(b) => {
                if let Some(x) = self.awaiting.take() {
                    self.teacher.on_query_response(x, b);
                }
                self.sim.answer(b);
            }
            Outcome::Skipped => {}
        }
    }

    fn drain_work(&mut self) -> u64 {
        std::mem::take(&mut self.work) + self.sim.drain_work()
    }
}
