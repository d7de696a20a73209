//! Teachers and the learners paired with them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::codec::floor_log2;
use crate::descriptor::{Recognizer, Status};
use crate::engine::{AgentSpec, DatumRule, Reaction, Teacher};
use crate::error::Result;
use crate::families::PcsFFamily;
use crate::Nat;

/// Forwards the first occurrence of each datum.
#[derive(Debug, Clone, Default)]
pub struct DedupTeacher {
    seen: BTreeSet<Nat>,
}

impl Teacher for DedupTeacher {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("dedup_teacher")
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        if self.seen.insert(datum) {
            vec![datum]
        } else {
            Vec::new()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum MsdStage {
    Collecting,
    /// `min(D)` copies still owed.
    Repeating { min: Nat, left: Nat },
    /// Remaining elements in increasing order, handed out from the back.
    Descending(Vec<Nat>),
    Silent,
}

/// Recognizes the target's descriptor, then hands out `min(D)` once per
/// input item until `n` copies have gone out, then the rest of `D` in
/// decreasing order.
#[derive(Debug, Clone)]
pub struct MsdTeacher {
    recognizer: Recognizer,
    stage: MsdStage,
}

impl Default for MsdTeacher {
    fn default() -> Self {
        MsdTeacher {
            recognizer: Recognizer::new(0),
            stage: MsdStage::Collecting,
        }
    }
}

impl MsdTeacher {
    fn tail(&self) -> MsdStage {
        MsdStage::Descending(self.recognizer.elements().iter().skip(1).copied().collect())
    }
}

impl Teacher for MsdTeacher {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("msd_teacher")
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        if self.stage == MsdStage::Collecting {
            match self.recognizer.push(datum) {
                Status::Complete(0) => self.stage = MsdStage::Silent,
                Status::Complete(n) => {
                    let min = *self.recognizer.elements().first().expect("complete");
                    self.stage = MsdStage::Repeating { min, left: n };
                }
                Status::Corrupt => self.stage = MsdStage::Silent,
                _ => {}
            }
            return Vec::new();
        }
        if self.recognizer.push(datum) == Status::Corrupt {
            self.stage = MsdStage::Silent;
        }
        match &mut self.stage {
            MsdStage::Repeating { min, left } => {
                let out = vec![*min];
                *left -= 1;
                if *left == 0 {
                    self.stage = self.tail();
                }
                out
            }
            MsdStage::Descending(rest) => match rest.pop() {
                Some(x) => vec![x],
                None => {
                    self.stage = MsdStage::Silent;
                    Vec::new()
                }
            },
            _ => Vec::new(),
        }
    }
}

/// Remembers the first datum `a_0` and keeps the count of `a_0` copies it
/// has sent equal to `⌊log₂ max⌋`.
#[derive(Debug, Clone, Default)]
pub struct Pow2Teacher {
    first: Option<Nat>,
    max: Nat,
    sent: Nat,
}

impl Teacher for Pow2Teacher {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pow2_teacher")
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        let a0 = *self.first.get_or_insert(datum);
        self.max = self.max.max(datum);
        let want = floor_log2(self.max).unwrap_or(0);
        let extra = want.saturating_sub(self.sent);
        self.sent += extra;
        vec![a0; extra as usize]
    }
}

/// `k` with `x = 2^{2k+1} + 1`, if `x` has that form.
pub fn trap_level(x: Nat) -> Option<Nat> {
    let e = x.checked_sub(1).filter(|v| v.is_power_of_two())?.trailing_zeros() as Nat;
    (e % 2 == 1).then_some((e - 1) / 2)
}

/// Interval index `k` with `x ∈ [2^{2k+1}+1, 2^{2k+2}]`.
pub fn interval_level(x: Nat) -> Option<Nat> {
    let e = floor_log2(x.checked_sub(1)?)?;
    (e % 2 == 1).then_some((e - 1) / 2)
}

/// Emits the left endpoint `L = 2^{2k+1}+1` when it appears, and later the
/// least interval element outside `D_k ∪ {L}` once that has appeared too.
pub struct PcsFTeacher {
    family: Arc<PcsFFamily>,
    seen: BTreeSet<Nat>,
    level: Option<Nat>,
    witness: Option<Nat>,
    sent: u8,
}

impl PcsFTeacher {
    pub fn new(family: Arc<PcsFFamily>) -> Result<Self> {
        family.d_set(family.k)?;
        Ok(PcsFTeacher {
            family,
            seen: BTreeSet::new(),
            level: None,
            witness: None,
            sent: 0,
        })
    }
}

impl Teacher for PcsFTeacher {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pcsF_teacher").param("k", self.family.k)
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        self.seen.insert(datum);
        let mut out = Vec::new();
        if self.sent == 0 {
            if let Some(k) = trap_level(datum) {
                self.level = Some(k);
                let d = self.family.d_set(k).unwrap_or_default();
                let (lo, hi) = crate::families::trap_interval(k).expect("level from a datum");
                self.witness = (lo + 1..=hi).find(|x| !d.contains(x));
                out.push(datum);
                self.sent = 1;
            }
        }
        if self.sent == 1 {
            if let Some(w) = self.witness.filter(|w| self.seen.contains(w)) {
                out.push(w);
                self.sent = 2;
            }
        }
        out
    }
}

/// Pairs with [`PcsFTeacher`]: `2k+1` after one item, `2k` after two.
#[derive(Debug, Clone, Default)]
pub struct PcsFPairRule {
    level: Option<Nat>,
    items: u8,
}

impl DatumRule for PcsFPairRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pcsF_pair_learner")
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        self.items = self.items.saturating_add(1);
        let k = *self.level.get_or_insert_with(|| trap_level(x).unwrap_or(0));
        if self.items == 1 {
            Reaction::Emit(2 * k + 1)
        } else {
            Reaction::EmitThenIdle(2 * k)
        }
    }
}

/// Three-phase ladder: 0, then `2k+1` while the data stay inside
/// `D_k ∪ {L}`, then `2k`.
pub struct PcsFPmcRule {
    family: Arc<PcsFFamily>,
    level: Option<(Nat, BTreeSet<Nat>)>,
    pending: Vec<Nat>,
    escaped: bool,
}

impl PcsFPmcRule {
    pub fn new(family: Arc<PcsFFamily>) -> Result<Self> {
        family.d_set(family.k)?;
        Ok(PcsFPmcRule {
            family,
            level: None,
            pending: Vec::new(),
            escaped: false,
        })
    }
}

impl DatumRule for PcsFPmcRule {
    fn spec(&self) -> AgentSpec {
        AgentSpec::new("pcsF_pmc_learner")
    }

    fn initial(&mut self) -> Option<Nat> {
        Some(0)
    }

    fn on_datum(&mut self, x: Nat) -> Reaction {
        if self.level.is_none() {
            self.pending.push(x);
            let Some(k) = trap_level(x) else { return Reaction::Emit(0) };
            let mut allowed = self.family.d_set(k).unwrap_or_default();
            allowed.insert(x);
            self.escaped = self.pending.iter().any(|y| !allowed.contains(y));
            self.level = Some((k, allowed));
        } else if let Some((_, allowed)) = &self.level {
            self.escaped |= !allowed.contains(&x);
        }
        let k = self.level.as_ref().expect("set above").0;
        Reaction::Emit(if self.escaped { 2 * k } else { 2 * k + 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels() {
        assert_eq!(trap_level(3), Some(0));
        assert_eq!(trap_level(9), Some(1));
        assert_eq!(trap_level(5), None);
        assert_eq!(interval_level(3), Some(0));
        assert_eq!(interval_level(4), Some(0));
        assert_eq!(interval_level(16), Some(1));
        assert_eq!(interval_level(17), None);
    }

    #[test]
    fn msd_teacher_suffix() {
        let markers = crate::families::single_marker_set();
        let d = crate::descriptor::build_descriptor(2, 0, 0, &markers).unwrap();
        let mut t = MsdTeacher::default();
        let mut out = Vec::new();
        let els: Vec<Nat> = d.elements.iter().copied().collect();
        for &x in els.iter().chain(els.iter()).chain(els.iter()) {
            out.extend(t.on_input(x));
        }
        let min = els[0];
        assert_eq!(out, vec![min, min, els[2], els[1]]);
    }

    #[test]
    fn pow2_teacher_counts_thresholds() {
        let mut t = Pow2Teacher::default();
        let out: Vec<Nat> = [5, 0, 1, 2, 8, 3, 4].iter().flat_map(|&x| t.on_input(x)).collect();
        assert_eq!(out, vec![5, 5, 5]);
    }
}
