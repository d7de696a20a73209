use std::collections::{BTreeSet, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::agent::{Action, Learner, Outcome, Teacher};
use super::setspec::SetSpec;
use super::text::Text;
use crate::Nat;

/// Cost of one `SkipNext`.
pub const SKIP_COST: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_ticks: u64,
    /// Raw text elements available to the session.
    pub horizon: usize,
    /// Raw elements that must pass after the last mind change for a run that
    /// did not idle to count as converged.
    pub window: usize,
}

impl Budget {
    pub fn new(max_ticks: u64, horizon: usize, window: usize) -> Self {
        Budget {
            max_ticks,
            horizon,
            window,
        }
    }

    /// A budget sized for a finite target of `size` elements.
    pub fn for_size(size: usize) -> Self {
        Budget {
            max_ticks: 1_000_000 + 200 * size as u64,
            horizon: 3 * size + 64,
            window: size + 16,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(1_000_000, 256, 32)
    }
}

/// Answers membership in a fixed target and counts every query.
#[derive(Debug, Clone)]
pub struct MembershipOracle {
    pub target: SetSpec,
    pub queries: u64,
}

impl MembershipOracle {
    pub fn new(target: SetSpec) -> Self {
        MembershipOracle { target, queries: 0 }
    }

    pub fn ask(&mut self, x: Nat) -> bool {
        self.queries += 1;
        self.target.contains(x)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResourceLedger {
    pub ticks: u64,
    pub distinct_data: u64,
    pub mind_changes: u64,
    pub oracle_queries: u64,
    pub skips: u64,
    pub reads: u64,
    pub emissions: u64,
    pub teacher_items: u64,
    pub raw_consumed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum EventKind {
    Datum { value: Nat },
    Skip {},
    Query { x: Nat, answer: bool },
    Emit { hypothesis: Nat },
    TeacherEmit { input: Nat, output: Vec<Nat> },
    Idle {},
    End { reason: String },
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::Datum { .. } => "datum",
            EventKind::Skip {} => "skip",
            EventKind::Query { .. } => "query",
            EventKind::Emit { .. } => "emit",
            EventKind::TeacherEmit { .. } => "teacher_emit",
            EventKind::Idle {} => "idle",
            EventKind::End { .. } => "end",
        }
    }
}

/// One transcript line; `step` is the tick count when the event happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub step: u64,
    pub kind: EventKind,
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Event", 3)?;
        st.serialize_field("step", &self.step)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("payload", &self.kind)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Termination {
    Idle,
    InputExhausted,
    TickBudget,
    ContractViolation(String),
}

/// Ledger snapshot at the emission that established the final hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Convergence {
    pub hypothesis: Nat,
    pub event_index: usize,
    pub ledger: ResourceLedger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SessionTranscript {
    pub events: Vec<Event>,
    pub ledger: ResourceLedger,
    pub hypotheses: Vec<Nat>,
    /// Entry `i` is the hypothesis in force after the first `i` raw elements.
    pub prefix_hypotheses: Vec<Option<Nat>>,
    pub convergence: Option<Convergence>,
    pub termination: Termination,
    pub converged: bool,
}

impl SessionTranscript {
    pub fn final_hypothesis(&self) -> Option<Nat> {
        self.hypotheses.last().copied()
    }

    /// Hypothesis after the first `len` raw elements, if the run got that far
    /// or stopped for good earlier.
    pub fn hypothesis_on_prefix(&self, len: usize) -> Option<Nat> {
        match self.prefix_hypotheses.get(len) {
            Some(h) => *h,
            None if self.termination == Termination::Idle => self.final_hypothesis(),
            None => None,
        }
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }

    pub fn ledger_json(&self) -> String {
        serde_json::to_string(&self.ledger).expect("ledger serializes")
    }
}

struct Run<'a> {
    events: Vec<Event>,
    ledger: ResourceLedger,
    hypotheses: Vec<Nat>,
    prefix_hypotheses: Vec<Option<Nat>>,
    convergence: Option<Convergence>,
    conv_raw: u64,
    seen_data: BTreeSet<Nat>,
    raw: Box<dyn Iterator<Item = Nat> + 'a>,
    horizon: u64,
}

impl Run<'_> {
    fn log(&mut self, kind: EventKind) {
        self.events.push(Event {
            step: self.ledger.ticks,
            kind,
        });
    }

    fn current(&self) -> Option<Nat> {
        self.hypotheses.last().copied()
    }

    fn pull_raw(&mut self) -> Option<Nat> {
        if self.ledger.raw_consumed >= self.horizon {
            return None;
        }
        let x = self.raw.next()?;
        self.ledger.raw_consumed += 1;
        self.prefix_hypotheses.push(self.current());
        Some(x)
    }
}

/// Drives a learner against a text (through an optional teacher) and an
/// optional membership oracle, metering every action.
pub fn run_session(
    learner: &mut dyn Learner,
    mut teacher: Option<&mut dyn Teacher>,
    oracle: Option<&SetSpec>,
    text: &Text,
    budget: &Budget,
) -> SessionTranscript {
    let mut oracle = oracle.cloned().map(MembershipOracle::new);
    let mut run = Run {
        events: Vec::new(),
        ledger: ResourceLedger::default(),
        hypotheses: Vec::new(),
        // Hypothesis on the empty prefix is pushed when the first raw element is pulled.
        prefix_hypotheses: Vec::new(),
        convergence: None,
        conv_raw: 0,
        seen_data: BTreeSet::new(),
        raw: Box::new(text.stream()),
        horizon: budget.horizon as u64,
    };
    let mut teacher_seen: BTreeSet<Nat> = BTreeSet::new();
    let mut queue: VecDeque<Nat> = VecDeque::new();

    let termination = 'outer: loop {
        if run.ledger.ticks >= budget.max_ticks {
            break Termination::TickBudget;
        }
        let action = learner.next_action();
        let datum = match action {
            Action::ReadNext | Action::SkipNext => {
                let next = match teacher.as_deref_mut() {
                    None => run.pull_raw(),
                    Some(t) => loop {
                        if let Some(x) = queue.pop_front() {
                            break Some(x);
                        }
                        let Some(raw) = run.pull_raw() else { break None };
                        teacher_seen.insert(raw);
                        let out = t.on_input(raw);
                        if out.is_empty() {
                            continue;
                        }
                        if let Some(bad) = out.iter().find(|x| !teacher_seen.contains(x)) {
                            let msg = format!("teacher emitted {bad} before it appeared in the input");
                            run.log(EventKind::TeacherEmit { input: raw, output: out });
                            break 'outer Termination::ContractViolation(msg);
                        }
                        run.ledger.teacher_items += out.len() as u64;
                        queue.extend(out.iter().copied());
                        run.log(EventKind::TeacherEmit { input: raw, output: out });
                    },
                };
                match next {
                    Some(x) => Some(x),
                    None => break Termination::InputExhausted,
                }
            }
            _ => None,
        };
        match action {
            Action::ReadNext => {
                let x = datum.expect("read resolved");
                run.ledger.reads += 1;
                if run.seen_data.insert(x) {
                    run.ledger.distinct_data += 1;
                }
                run.log(EventKind::Datum { value: x });
                run.ledger.ticks += 1;
                learner.observe(Outcome::Datum(x));
            }
            Action::SkipNext => {
                run.ledger.skips += 1;
                run.log(EventKind::Skip {});
                run.ledger.ticks += SKIP_COST;
                learner.observe(Outcome::Skipped);
            }
            Action::Query(x) => {
                let Some(o) = oracle.as_mut() else {
                    break Termination::ContractViolation("query without an oracle".into());
                };
                let answer = o.ask(x);
                run.ledger.oracle_queries = o.queries;
                run.log(EventKind::Query { x, answer });
                run.ledger.ticks += 1;
                if let Some(t) = teacher.as_deref_mut() {
                    t.on_query_response(x, answer);
                }
                learner.observe(Outcome::Answer(answer));
            }
            Action::Emit(h) => {
                let changed = run.current().is_some_and(|prev| prev != h);
                let first = run.current().is_none();
                if changed {
                    run.ledger.mind_changes += 1;
                }
                run.ledger.emissions += 1;
                run.log(EventKind::Emit { hypothesis: h });
                run.ledger.ticks += 1;
                run.hypotheses.push(h);
                if changed || first {
                    run.conv_raw = run.ledger.raw_consumed;
                    run.convergence = Some(Convergence {
                        hypothesis: h,
                        event_index: run.events.len() - 1,
                        ledger: run.ledger.clone(),
                    });
                }
            }
            Action::Idle => {
                run.log(EventKind::Idle {});
                break Termination::Idle;
            }
        }
        run.ledger.ticks += learner.drain_work();
    };

    run.prefix_hypotheses.push(run.current());
    let reason = match &termination {
        Termination::Idle => "idle".to_string(),
        Termination::InputExhausted => "input_exhausted".to_string(),
        Termination::TickBudget => "tick_budget".to_string(),
        Termination::ContractViolation(m) => format!("contract_violation: {m}"),
    };
    run.log(EventKind::End { reason });
    let converged = run.convergence.is_some()
        && match termination {
            Termination::Idle => true,
            Termination::InputExhausted => {
                run.ledger.raw_consumed - run.conv_raw >= budget.window as u64
            }
            _ => false,
        };
    SessionTranscript {
        events: run.events,
        ledger: run.ledger,
        hypotheses: run.hypotheses,
        prefix_hypotheses: run.prefix_hypotheses,
        convergence: run.convergence,
        termination,
        converged,
    }
}

/// A learner with its optional teacher, owned together.
pub struct SessionAgents {
    pub learner: Box<dyn Learner>,
    pub teacher: Option<Box<dyn Teacher>>,
}

impl SessionAgents {
    pub fn bare(learner: Box<dyn Learner>) -> Self {
        SessionAgents { learner, teacher: None }
    }

    pub fn with_teacher(learner: Box<dyn Learner>, teacher: Box<dyn Teacher>) -> Self {
        SessionAgents {
            learner,
            teacher: Some(teacher),
        }
    }

    pub fn run(&mut self, oracle: Option<&SetSpec>, text: &Text, budget: &Budget) -> SessionTranscript {
        let teacher = self.teacher.as_deref_mut().map(|t| t as &mut dyn Teacher);
        run_session(self.learner.as_mut(), teacher, oracle, text, budget)
    }
}
