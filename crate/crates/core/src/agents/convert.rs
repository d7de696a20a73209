//! Conversions between teacher-assisted dataset bounds and mind-change bounds.

use crate::codec::{pair, unpair};
use crate::engine::{Action, AgentSpec, DatumRule, Learner, Outcome, Reaction, RuleLearner, Sim, SimStep, Teacher};
use crate::Nat;

/// `M*` built from a learner and its teacher: runs the pair on the raw text
/// and re-emits the pair's hypothesis only after raw items on which the
/// teacher extended its output, repeating its last emission otherwise.
pub struct PsdTToPmc {
    sim: Sim,
    teacher: Box<dyn Teacher>,
    started: bool,
    running: bool,
    extended: bool,
    last: Option<Nat>,
    pending: Option<Nat>,
    awaiting: Option<Nat>,
    extensions: u64,
    work: u64,
}

#[allow(non_snake_case)]
pub fn convert_psdT_to_pmc(learner: Box<dyn Learner>, teacher: Box<dyn Teacher>) -> PsdTToPmc {
    PsdTToPmc {
        sim: Sim::new(learner),
        teacher,
        started: false,
        running: false,
        extended: false,
        last: None,
        pending: None,
        awaiting: None,
        extensions: 0,
        work: 0,
    }
}

impl PsdTToPmc {
    /// Raw items on which the teacher produced output so far.
    pub fn extensions(&self) -> u64 {
        self.extensions
    }
}

impl Learner for PsdTToPmc {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("psdT_to_pmc")
            .param("learner", self.sim.inner.spec().name)
            .param("teacher", self.teacher.spec().name)
            .cost("internal_delivery", 1)
    }

    fn next_action(&mut self) -> Action {
        if !self.started {
            // The empty input counts as an extension.
            self.started = true;
            self.running = true;
            self.extended = true;
        }
        loop {
            if self.running {
                match self.sim.step() {
                    SimStep::Served => self.work += 1 + self.sim.drain_work(),
                    SimStep::Emitted(_) => {}
                    SimStep::Query(x) => {
                        self.awaiting = Some(x);
                        return Action::Query(x);
                    }
                    SimStep::Blocked | SimStep::Idle => {
                        self.running = false;
                        if std::mem::take(&mut self.extended) {
                            self.pending = self.sim.current.or(self.last);
                        }
                    }
                }
                continue;
            }
            if let Some(h) = self.pending.take() {
                self.last = Some(h);
                return Action::Emit(h);
            }
            return Action::ReadNext;
        }
    }

    fn observe(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Datum(x) => {
                let out = self.teacher.on_input(x);
                if out.is_empty() {
                    self.pending = self.last;
                } else {
                    self.extensions += 1;
                    self.sim.queue.extend(out);
                    self.running = true;
                    self.extended = true;
                }
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
        std::mem::take(&mut self.work)
    }
}

/// Teacher that simulates a learner on the raw text and, whenever the
/// simulated hypothesis changes to `h`, sends copies of one fixed element
/// until its running count `C` is the least value above the previous one
/// with `unpair(C).1 = h`.
pub struct CountEncodingTeacher {
    sim: Sim,
    least: Option<Nat>,
    x0: Option<Nat>,
    count: Nat,
    last: Option<Nat>,
}

/// Decodes the running count of its input as `unpair(count).1`.
#[derive(Debug, Clone, Default)]
pub struct CountDecodingRule {
    count: Nat,
}

impl DatumRule for CountDecodingRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("count_decoding_learner")
    }

    fn on_datum(&mut self, _: Nat) -> Reaction {
        self.count += 1;
        Reaction::Emit(unpair(self.count).1)
    }
}

/// Least `c > after` with `unpair(c).1 == h`.
fn next_count(after: Nat, h: Nat) -> Nat {
    let mut a: Nat = 0;
    loop {
        match pair(a, h) {
            Ok(c) if c > after => return c,
            Ok(_) => a += 1,
            Err(_) => return Nat::MAX,
        }
    }
}

impl Teacher for CountEncodingTeacher {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("count_encoding_teacher").param("learner", self.sim.inner.spec().name)
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        self.least = Some(self.least.map_or(datum, |m| m.min(datum)));
        self.sim.queue.push_back(datum);
        // Queries cannot be answered from inside a teacher; a querying
        // learner simply stalls here.
        while let SimStep::Served | SimStep::Emitted(_) = self.sim.step() {}
        let Some(h) = self.sim.current else { return Vec::new() };
        if self.last == Some(h) {
            return Vec::new();
        }
        self.last = Some(h);
        let x0 = *self.x0.get_or_insert(self.least.expect("a datum arrived"));
        let target = next_count(self.count, h);
        let copies = target - self.count;
        self.count = target;
        vec![x0; usize::try_from(copies).unwrap_or(usize::MAX)]
    }
}

#[allow(non_snake_case)]
pub fn convert_pmc_to_psdT(learner: Box<dyn Learner>) -> (RuleLearner<CountDecodingRule>, CountEncodingTeacher) {
    let teacher = CountEncodingTeacher {
        sim: Sim::new(learner),
        least: None,
        x0: None,
        count: 0,
        last: None,
    };
    (RuleLearner::new(CountDecodingRule::default()), teacher)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_codes_follow_hypotheses() {
        let mut c = 0;
        for h in [3, 1, 4, 1, 5, 0] {
            let next = next_count(c, h);
            assert!(next > c);
            assert_eq!(unpair(next).1, h);
            assert!((c + 1..next).all(|v| unpair(v).1 != h));
            c = next;
        }
    }
}
