use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::evaluate::FailReason;
use super::session::{Budget, SessionAgents};
use super::setspec::set_equal;
use super::text::{Text, TextKind};
use crate::codec::PolyCode;
use crate::error::Result;
use crate::families::IndexedFamily;
use crate::Nat;

/// Exhaustive enumeration is used up to this many arrangements.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;
/// Texts drawn when the arrangement space is larger.
pub const SAMPLE_COUNT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleBounds {
    pub max_text_len: usize,
    pub max_universe: Nat,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleVerdict {
    pub passed: bool,
    pub exhaustive: bool,
    pub texts_checked: u64,
    pub universe: Vec<Nat>,
    pub fixed_index: Option<Nat>,
    pub failure: Option<FailReason>,
    pub bounds: SampleBounds,
}

/// Checks that `sample` locks the learner onto one fixed correct index on
/// every bounded text of the target whose content covers it.
///
/// Texts are all sequences of length `max_text_len` over the target's members
/// up to `max_universe` (plus the sample itself); every prefix of each is
/// inspected, so shorter texts are covered too.
#[allow(clippy::too_many_arguments)]
pub fn check_characteristic_sample(
    agents: &dyn Fn() -> SessionAgents,
    use_oracle: bool,
    family: &dyn IndexedFamily,
    target_index: Nat,
    sample_set: &BTreeSet<Nat>,
    poly: PolyCode,
    bounds: SampleBounds,
) -> Result<SampleVerdict> {
    let target = family.member(target_index)?;
    let mut universe: BTreeSet<Nat> = target.members_upto(bounds.max_universe);
    universe.extend(sample_set.iter().copied());
    let universe: Vec<Nat> = universe.into_iter().collect();
    let mut verdict = SampleVerdict {
        passed: false,
        exhaustive: true,
        texts_checked: 0,
        universe: universe.clone(),
        fixed_index: None,
        failure: None,
        bounds,
    };

    if let Some(&x) = sample_set.iter().find(|&&x| !target.contains(x)) {
        verdict.failure = Some(FailReason::BadHypothesis(format!("sample element {x} is not in the target")));
        return Ok(verdict);
    }
    let limit = poly.eval(family.min_index(target_index)?)?;
    if sample_set.len() as Nat >= limit {
        verdict.failure = Some(FailReason::Size {
            sample: sample_set.len(),
            limit,
        });
        return Ok(verdict);
    }

    let len = bounds.max_text_len;
    let oracle = use_oracle.then_some(&target);
    let budget = Budget::new(1_000_000, len, 0);
    let mut fixed: Option<Nat> = None;

    let check = |seq: &[Nat], fixed: &mut Option<Nat>| -> Result<Option<FailReason>> {
        let text = Text::prefixed(seq.to_vec(), TextKind::CanonicalIncreasing, target.clone())?;
        let t = agents().run(oracle, &text, &budget);
        let mut content = BTreeSet::new();
        for i in 0..=seq.len() {
            if i > 0 {
                content.insert(seq[i - 1]);
            }
            if !sample_set.is_subset(&content) {
                continue;
            }
            let h = t.hypothesis_on_prefix(i);
            let bad = || FailReason::Counterexample {
                prefix: seq[..i].to_vec(),
                hypothesis: h,
            };
            match (h, *fixed) {
                (None, _) => return Ok(Some(bad())),
                (Some(h), Some(f)) if h != f => return Ok(Some(bad())),
                (Some(h), None) => {
                    let ok = family
                        .member(h)
                        .and_then(|g| Ok(set_equal(&g, &target, family.separation_bound(&[h, target_index])?)))
                        .unwrap_or(false);
                    if !ok {
                        return Ok(Some(bad()));
                    }
                    *fixed = Some(h);
                }
                _ => {}
            }
        }
        Ok(None)
    };

    let u = universe.len();
    let arrangements = (u as u64).checked_pow(len as u32);
    if u == 0 {
        verdict.failure = Some(FailReason::BadHypothesis("empty universe".into()));
        return Ok(verdict);
    }
    match arrangements {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {
            let mut digits = vec![0usize; len];
            for _ in 0..total {
                let seq: Vec<Nat> = digits.iter().map(|&d| universe[d]).collect();
                verdict.texts_checked += 1;
                if let Some(f) = check(&seq, &mut fixed)? {
                    verdict.failure = Some(f);
                    return Ok(verdict);
                }
                for d in digits.iter_mut().rev() {
                    *d += 1;
                    if *d < u {
                        break;
                    }
                    *d = 0;
                }
            }
        }
        _ => {
            verdict.exhaustive = false;
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
            let h: Vec<Nat> = sample_set.iter().copied().collect();
            for _ in 0..SAMPLE_COUNT {
                let mut seq: Vec<Nat> = (0..len).map(|_| universe[rng.gen_range(0..u)]).collect();
                if h.len() <= len {
                    for (slot, &x) in sample(&mut rng, len, h.len()).iter().zip(&h) {
                        seq[slot] = x;
                    }
                }
                verdict.texts_checked += 1;
                if let Some(f) = check(&seq, &mut fixed)? {
                    verdict.failure = Some(f);
                    return Ok(verdict);
                }
            }
        }
    }
    verdict.fixed_index = fixed;
    verdict.passed = true;
    Ok(verdict)
}
