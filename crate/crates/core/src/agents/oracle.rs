//! Learners that work from membership queries alone.

use super::search::ExpSearch;
use crate::codec::{floor_log2, pair};
use crate::engine::{Action, AgentSpec, Learner, Outcome};
use crate::families::CsdFamily;
use crate::Nat;

/// Emits `h` (when set) and then idles.
#[derive(Debug, Clone, Default)]
struct Finish {
    out: Option<Nat>,
    done: bool,
}

impl Finish {
    fn next(&mut self) -> Option<Action> {
        if let Some(h) = self.out.take() {
            return Some(Action::Emit(h));
        }
        self.done.then_some(Action::Idle)
    }

    fn set(&mut self, h: Nat) {
        self.out = Some(h);
        self.done = true;
    }
}

/// `[n, ∞)`: queries 0, 1, 2, … and emits the first member.
#[derive(Debug, Clone, Default)]
pub struct UpIntervalOracleLearner {
    x: Nat,
    finish: Finish,
}

impl Learner for UpIntervalOracleLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("up_interval_oracle").cost("query", 1)
    }

    fn next_action(&mut self) -> Action {
        self.finish.next().unwrap_or(Action::Query(self.x))
    }

    fn observe(&mut self, outcome: Outcome) {
        if let Outcome::Answer(b) = outcome {
            if b {
                self.finish.set(self.x);
            } else {
                self.x += 1;
            }
        }
    }
}

#[derive(Debug, Clone)]
enum PairPhase {
    Scan(Nat),
    Double { m: Nat, j: u32 },
    Bisect { m: Nat, lo: Nat, hi: Nat },
}

/// `[m, n]`: linear scan for `m`, then doubling probes `m + 2^j` and
/// bisection for `n`.
#[derive(Debug, Clone)]
pub struct PairIntervalOracleLearner {
    phase: PairPhase,
    finish: Finish,
}

impl Default for PairIntervalOracleLearner {
    fn default() -> Self {
        PairIntervalOracleLearner {
            phase: PairPhase::Scan(0),
            finish: Finish::default(),
        }
    }
}

impl PairIntervalOracleLearner {
    fn probe(&self) -> Nat {
        match self.phase {
            PairPhase::Scan(x) => x,
            PairPhase::Double { m, j } => m + (1 << j),
            PairPhase::Bisect { lo, hi, .. } => lo + (hi - lo) / 2,
        }
    }

    fn settle(&mut self, m: Nat, lo: Nat, hi: Nat) {
        if hi - lo <= 1 {
            self.finish.set(pair(m, lo).unwrap_or(0));
        } else {
            self.phase = PairPhase::Bisect { m, lo, hi };
        }
    }
}

impl Learner for PairIntervalOracleLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pair_interval_oracle").cost("query", 1)
    }

    fn next_action(&mut self) -> Action {
        self.finish.next().unwrap_or(Action::Query(self.probe()))
    }

    fn observe(&mut self, outcome: Outcome) {
        let Outcome::Answer(b) = outcome else { return };
        let x = self.probe();
        match self.phase {
            PairPhase::Scan(_) if b => self.phase = PairPhase::Double { m: x, j: 0 },
            PairPhase::Scan(_) => self.phase = PairPhase::Scan(x + 1),
            PairPhase::Double { m, j } if b => self.phase = PairPhase::Double { m, j: j + 1 },
            PairPhase::Double { m, j } => {
                let lo = if j == 0 { m } else { m + (1 << (j - 1)) };
                self.settle(m, lo, x);
            }
            PairPhase::Bisect { m, lo, hi } => {
                if b {
                    self.settle(m, x, hi);
                } else {
                    self.settle(m, lo, x);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
enum CsdPhase {
    Column(ExpSearch),
    Scan { column: Nat, x: Nat },
}

/// Finds the highest nonempty column by exponential search on `⟨0, j⟩`,
/// then scans `⟨1, j*⟩, ⟨2, j*⟩, …` for that column's greatest element, and
/// emits the index the family assigns to that shape.
#[derive(Debug, Clone)]
pub struct CsdOracleLearner {
    table: CsdFamily,
    phase: CsdPhase,
    finish: Finish,
}

impl CsdOracleLearner {
    pub fn new(table: CsdFamily) -> Self {
        CsdOracleLearner {
            table,
            phase: CsdPhase::Column(ExpSearch::new(2)),
            finish: Finish::default(),
        }
    }

    fn probe(&self) -> Nat {
        match &self.phase {
            CsdPhase::Column(s) => pair(0, s.probe().expect("search open")).unwrap_or(Nat::MAX),
            CsdPhase::Scan { column, x } => pair(*x, *column).unwrap_or(Nat::MAX),
        }
    }
}

impl Learner for CsdOracleLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("csd_oracle_learner")
            .param("scale", self.table.scale)
            .cost("query", 1)
    }

    fn next_action(&mut self) -> Action {
        self.finish.next().unwrap_or(Action::Query(self.probe()))
    }

    fn observe(&mut self, outcome: Outcome) {
        let Outcome::Answer(b) = outcome else { return };
        match &mut self.phase {
            CsdPhase::Column(s) => {
                s.answer(b);
                if let Some(column) = s.result() {
                    self.phase = CsdPhase::Scan { column, x: 1 };
                }
            }
            CsdPhase::Scan { column, x } => {
                if b {
                    *x += 1;
                } else {
                    let h = self.table.index_of_top(*column, *x - 1).unwrap_or(0);
                    self.finish.set(h);
                }
            }
        }
    }
}

/// `[0, 2^n]`: exponential search for the right endpoint, then its log.
#[derive(Debug, Clone)]
pub struct Pow2OracleLearner {
    search: ExpSearch,
    finish: Finish,
}

impl Default for Pow2OracleLearner {
    fn default() -> Self {
        Pow2OracleLearner {
            search: ExpSearch::new(2),
            finish: Finish::default(),
        }
    }
}

impl Learner for Pow2OracleLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pow2_oracle_learner").param("base", 2).cost("query", 1)
    }

    fn next_action(&mut self) -> Action {
        if let Some(a) = self.finish.next() {
            return a;
        }
        Action::Query(self.search.probe().expect("search open"))
    }

    fn observe(&mut self, outcome: Outcome) {
        if let Outcome::Answer(b) = outcome {
            self.search.answer(b);
            if let Some(top) = self.search.result() {
                self.finish.set(floor_log2(top).unwrap_or(0));
            }
        }
    }
}

/// `G_0 = ℕ`, `G_n = [0, n]`: after each datum asks whether `max + 1` is a
/// member.
#[derive(Debug, Clone, Default)]
pub struct PcsGOracleLearner {
    max: Option<Nat>,
    asking: bool,
    out: Option<Nat>,
}

impl Learner for PcsGOracleLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pcsG_oracle_learner").cost("query", 1)
    }

    fn next_action(&mut self) -> Action {
        if let Some(h) = self.out.take() {
            return Action::Emit(h);
        }
        match (self.asking, self.max) {
            (true, Some(m)) => Action::Query(m + 1),
            _ => Action::ReadNext,
        }
    }

    fn observe(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Datum(x) => {
                self.max = Some(self.max.map_or(x, |m| m.max(x)));
                self.asking = true;
            }
            Outcome::Answer(b) => {
                self.asking = false;
                self.out = Some(if b { 0 } else { self.max.unwrap_or(0) });
            }
            Outcome::Skipped => {}
        }
    }
}

/// Passes every action through, rewriting emitted hypotheses.
pub struct MapLearner {
    pub inner: Box<dyn Learner>,
    pub map: fn(Nat) -> Nat,
    pub label: &'static str,
}

impl Learner for MapLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new(self.label).param("inner", self.inner.spec().name)
    }

    fn next_action(&mut self) -> Action {
        match self.inner.next_action() {
            Action::Emit(h) => Action::Emit((self.map)(h)),
            a => a,
        }
    }

    fn observe(&mut self, outcome: Outcome) {
        self.inner.observe(outcome)
    }

    fn drain_work(&mut self) -> u64 {
        self.inner.drain_work()
    }
}

/// Asks whether 0 is in the target; runs the column learner (hypotheses
/// doubled) if so, else the marked-self-description pair (doubled plus one).
pub struct MergedLearner {
    csd: CsdFamily,
    inner: Option<MapLearner>,
}

impl MergedLearner {
    pub fn new(csd: CsdFamily) -> Self {
        MergedLearner { csd, inner: None }
    }
}

impl Learner for MergedLearner {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("merged_learner").cost("query", 1).cost("internal_delivery", 1)
    }

    fn next_action(&mut self) -> Action {
        match self.inner.as_mut() {
            None => Action::Query(0),
            Some(l) => l.next_action(),
        }
    }

    fn observe(&mut self, outcome: Outcome) {
        match (self.inner.as_mut(), outcome) {
            (None, Outcome::Answer(has_zero)) => {
                self.inner = Some(if has_zero {
                    MapLearner {
                        inner: Box::new(CsdOracleLearner::new(self.csd.clone())),
                        map: |h| 2 * h,
                        label: "even_half",
                    }
                } else {
                    MapLearner {
                        inner: Box::new(super::msd_composed()),
                        map: |h| 2 * h + 1,
                        label: "odd_half",
                    }
                });
            }
            (Some(l), o) => l.observe(o),
            _ => {}
        }
    }

    fn drain_work(&mut self) -> u64 {
        self.inner.as_mut().map_or(0, |l| l.drain_work())
    }
}
