//! Learners that look only at the text.

use std::collections::BTreeSet;

use crate::codec::{canonical_encode, ceil_log2, floor_log2, pair, pow2};
use crate::descriptor::{Recognizer, Status};
use crate::engine::{AgentSpec, DatumRule, Reaction, RuleLearner};
use crate::families::{tower_index, CsdFamily, IndexedFamily};
use crate::Nat;

/// Emits `⟨|content|, canonical code of content⟩` after each datum.
#[derive(Debug, Clone, Default)]
pub struct FinitePsdRule {
    content: BTreeSet<Nat>,
}

impl DatumRule for FinitePsdRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("finite_psd_learner")
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        self.content.insert(x);
        match canonical_encode(&self.content).and_then(|e| pair(self.content.len() as Nat, e.0)) {
            Ok(h) => Reaction::Emit(h),
            Err(_) => Reaction::Nothing,
        }
    }
}

/// Emits `n` once the content is exactly `[0, 2^n]`.
#[derive(Debug, Clone, Default)]
pub struct Pow2PlainRule {
    content: BTreeSet<Nat>,
}

impl DatumRule for Pow2PlainRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pow2_plain_learner")
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        self.content.insert(x);
        let max = *self.content.last().expect("nonempty");
        if max.is_power_of_two() && self.content.len() as Nat == max + 1 {
            Reaction::Emit(floor_log2(max).expect("positive"))
        } else {
            Reaction::Nothing
        }
    }
}

/// `⌈log₂ max⌉` after each datum.
#[derive(Debug, Clone, Default)]
pub struct Pow2PmcRule {
    max: Nat,
}

impl DatumRule for Pow2PmcRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pow2_pmc_learner")
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        self.max = self.max.max(x);
        Reaction::Emit(ceil_log2(self.max))
    }
}

/// Waits for a complete descriptor on column 0 and emits what it describes.
#[derive(Debug, Clone)]
pub struct PmcMsdRule {
    recognizer: Recognizer,
}

impl Default for PmcMsdRule {
    fn default() -> Self {
        PmcMsdRule {
            recognizer: Recognizer::new(0),
        }
    }
}

impl DatumRule for PmcMsdRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pmc_msd_learner").cost("recognizer_step", 1)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        match self.recognizer.push(x) {
            Status::Complete(n) => Reaction::EmitThenIdle(n),
            _ => Reaction::Nothing,
        }
    }

    fn work(&mut self) -> u64 {
        1
    }
}

/// On `{n} ⊕ [0, 2^n]`-style sets: with least even `2n` and greatest odd
/// `2m+1`, emits `2n` if `m = 2^n`, else `2(m + 2^n) + 1`; 0 until both
/// parities have appeared.
#[derive(Debug, Clone, Default)]
pub struct Thm64PcsRule {
    least_even: Option<Nat>,
    greatest_odd: Option<Nat>,
}

impl DatumRule for Thm64PcsRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("thm64_pcs_learner")
    }

    fn initial(&mut self) -> Option<Nat> {
        Some(0)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        if x % 2 == 0 {
            self.least_even = Some(self.least_even.map_or(x, |e| e.min(x)));
        } else {
            self.greatest_odd = Some(self.greatest_odd.map_or(x, |o| o.max(x)));
        }
        let (Some(e), Some(o)) = (self.least_even, self.greatest_odd) else {
            return Reaction::Emit(0);
        };
        let (n, m) = (e / 2, o / 2);
        let h = match pow2(n) {
            Ok(p) if p == m => Some(2 * n),
            Ok(p) => m.checked_add(p).and_then(|k| k.checked_mul(2)).map(|k| k + 1),
            Err(_) => None,
        };
        h.map_or(Reaction::Nothing, Reaction::Emit)
    }
}

/// Starts at 6; `2i` alone gives `2i+1`, and any odd `2i+1` gives `2^{2^i}`.
#[derive(Debug, Clone, Default)]
pub struct HaltingPsdRule;

impl DatumRule for HaltingPsdRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("halting_psd_learner")
    }

    fn initial(&mut self) -> Option<Nat> {
        Some(6)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        if x % 2 == 0 {
            // A later odd datum overrides this; an even datum never follows one.
            return Reaction::Emit(x + 1);
        }
        match tower_index(x / 2) {
            Ok(h) => Reaction::EmitThenIdle(h),
            Err(_) => Reaction::Nothing,
        }
    }
}

/// On `{n} ⊕ ℕ`: half of the least even number seen.
#[derive(Debug, Clone, Default)]
pub struct JoinRule {
    least_even: Option<Nat>,
}

impl DatumRule for JoinRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("join_singleton_learner")
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        if x % 2 == 1 {
            return Reaction::Nothing;
        }
        let e = self.least_even.map_or(x, |e| e.min(x));
        self.least_even = Some(e);
        Reaction::Emit(e / 2)
    }
}

/// Column self-describing text learner: emits the smallest tabulated member
/// containing the content (ties broken by index).
#[derive(Debug, Clone)]
pub struct CsdContentRule {
    members: Vec<(Nat, BTreeSet<Nat>)>,
    content: BTreeSet<Nat>,
    work: u64,
}

impl CsdContentRule {
    /// Tabulates every member with block number below `blocks`.
    pub fn new(family: &CsdFamily, blocks: usize) -> Self {
        let end = family.blocks.get(blocks).map_or(0, |b| b.a);
        let mut members: Vec<(Nat, BTreeSet<Nat>)> = Vec::new();
        for n in 0..end {
            let mi = family.min_index(n).expect("tabulated");
            if mi == n {
                let els = family.member(n).expect("tabulated").finite_elements().expect("finite");
                members.push((n, els));
            }
        }
        members.sort_by_key(|(n, s)| (s.len(), *n));
        CsdContentRule {
            members,
            content: BTreeSet::new(),
            work: 0,
        }
    }
}

impl DatumRule for CsdContentRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("csd_content_learner")
            .param("members", self.members.len())
            .cost("member_check", 1)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        self.content.insert(x);
        for (k, (n, s)) in self.members.iter().enumerate() {
            if self.content.is_subset(s) {
                self.work = k as u64 + 1;
                return Reaction::Emit(*n);
            }
        }
        self.work = self.members.len() as u64;
        Reaction::Nothing
    }

    fn work(&mut self) -> u64 {
        std::mem::take(&mut self.work)
    }
}

/// Counts the leading run of its input: emits 0 first, then the run length
/// after every item of that run.
///
/// Against the marked self-description teacher the run is `min(D)^n`;
/// against the power-of-two teacher it is `a_0^n`.
#[derive(Debug, Clone, Default)]
pub struct LeadCountRule {
    first: Option<Nat>,
    run: Nat,
    broken: bool,
}

impl DatumRule for LeadCountRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("lead_count_learner")
    }

    fn initial(&mut self) -> Option<Nat> {
        Some(0)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        let first = *self.first.get_or_insert(x);
        if x == first && !self.broken {
            self.run += 1;
        } else {
            self.broken = true;
        }
        Reaction::Emit(self.run)
    }
}

/// Records the `k+1` distinct values it is handed and emits their tuple code.
#[derive(Debug, Clone)]
pub struct TupleRule {
    k: usize,
    values: Vec<Nat>,
}

impl TupleRule {
    pub fn new(k: usize) -> Self {
        TupleRule { k, values: Vec::new() }
    }
}

impl DatumRule for TupleRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("tuple_learner").param("k", self.k)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        if !self.values.contains(&x) {
            self.values.push(x);
        }
        if self.values.len() == self.k + 1 {
            match crate::codec::tuple(&self.values) {
                Ok(h) => return Reaction::EmitThenIdle(h),
                Err(_) => return Reaction::Nothing,
            }
        }
        Reaction::Nothing
    }
}

pub fn rule<R: DatumRule + 'static>(r: R) -> Box<RuleLearner<R>> {
    Box::new(RuleLearner::new(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_session, Budget, SetSpec, Text};

    fn hypotheses(r: impl DatumRule + 'static, seq: &[Nat]) -> Vec<Nat> {
        let mut l = rule(r);
        let target = SetSpec::explicit(seq.iter().copied().chain([0]));
        let text = Text::prefixed(seq.to_vec(), crate::engine::TextKind::CanonicalIncreasing, target).unwrap();
        run_session(l.as_mut(), None, None, &text, &Budget::new(10_000, seq.len(), 0)).hypotheses
    }

    #[test]
    fn finite_psd_example() {
        let h = hypotheses(FinitePsdRule::default(), &[3, 3, 1]);
        assert_eq!(h, vec![pair(1, 8).unwrap(), pair(1, 8).unwrap(), pair(2, 10).unwrap()]);
    }

    #[test]
    fn thm64_examples() {
        assert_eq!(hypotheses(Thm64PcsRule::default(), &[6, 17]).last(), Some(&6));
        assert_eq!(hypotheses(Thm64PcsRule::default(), &[6, 5]).last(), Some(&21));
        assert_eq!(hypotheses(Thm64PcsRule::default(), &[1, 3, 5]), vec![0, 0, 0, 0]);
    }

    #[test]
    fn halting_examples() {
        assert_eq!(hypotheses(HaltingPsdRule, &[4, 4, 4]).last(), Some(&5));
        assert_eq!(hypotheses(HaltingPsdRule, &[4, 5]).last(), Some(&16));
        assert_eq!(hypotheses(HaltingPsdRule, &[]).first(), Some(&6));
    }

    #[test]
    fn tuple_learner_waits_for_distinct_values() {
        assert_eq!(hypotheses(TupleRule::new(1), &[7, 7, 3]), vec![pair(7, 3).unwrap()]);
        assert_eq!(hypotheses(TupleRule::new(0), &[5, 5, 5]), vec![5]);
    }
}
