//! Lower-bound constructions: shared-prefix texts, mind-change forcing along
//! a chain, the query bound behind marked self-description, and the trap
//! sets of the characteristic-sample family.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codec::{tuple, PolyCode};
use crate::engine::{
    run_session, Budget, Event, EventKind, SessionAgents, SessionTranscript, SetSpec, Termination, Text,
    TextKind,
};
use crate::error::{Error, Result};
use crate::families::registry::LearnerRegistry;
use crate::families::{make_msd, trap_interval, IndexedFamily, MarkerVariant, PcsSearchBudget};
use crate::Nat;

/// Tick allowance per raw element when simulating a registered learner.
const TICKS_PER_ITEM: u64 = 1_000;
const BASE_TICKS: u64 = 100_000;

fn sim_budget(len: usize) -> Budget {
    Budget::new(BASE_TICKS + TICKS_PER_ITEM * len as u64, len, 0)
}

fn max_query(t: &SessionTranscript) -> Nat {
    t.events
        .iter()
        .filter_map(|e| match e.kind {
            EventKind::Query { x, .. } => Some(x),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// Texts for members `a` and `b` that both open with `x^{p(a*)+p(b*)}`,
/// `a*` and `b*` being the minimal indices.
pub fn repeat_prefix_texts(
    family: &dyn IndexedFamily,
    a: Nat,
    b: Nat,
    x: Nat,
    poly: PolyCode,
) -> Result<(Text, Text)> {
    let (sa, sb) = (family.member(a)?, family.member(b)?);
    if !sa.contains(x) || !sb.contains(x) {
        return Err(Error::InvalidArgument(format!("{x} is not in both targets")));
    }
    if family.same_set(a, b)? {
        return Err(Error::InvalidArgument(format!("indices {a} and {b} name the same set")));
    }
    let len = poly
        .eval(family.min_index(a)?)?
        .checked_add(poly.eval(family.min_index(b)?)?)
        .ok_or(Error::Overflow("shared prefix length"))?;
    let len = usize::try_from(len).map_err(|_| Error::Overflow("shared prefix length"))?;
    let ta = Text::repeat_pad(x, len, TextKind::CanonicalIncreasing, sa)?;
    let tb = Text::repeat_pad(x, len, TextKind::CanonicalIncreasing, sb)?;
    Ok((ta, tb))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainBudget {
    /// Longest extension tried per chain member.
    pub max_extension: usize,
    pub max_ticks: u64,
}

impl Default for ChainBudget {
    fn default() -> Self {
        ChainBudget {
            max_extension: 256,
            max_ticks: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChainOutcome {
    /// Mind changes in the ledger when the final prefix is replayed.
    Forced { mind_changes: u64 },
    /// A chain member the pair never named within the extension budget.
    FailureWitness { member: Nat },
    /// The tick budget ran out mid-search.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainForce {
    pub chain: Vec<Nat>,
    pub prefix: Vec<Nat>,
    /// Prefix length at which each chain member was named.
    pub hits: Vec<usize>,
    pub hypotheses: Vec<Option<Nat>>,
    pub outcome: ChainOutcome,
    #[serde(skip)]
    pub transcript: Option<SessionTranscript>,
}

fn run_prefix(agents: &dyn Fn() -> SessionAgents, prefix: &[Nat], target: SetSpec, max_ticks: u64) -> Result<SessionTranscript> {
    let text = Text::prefixed(prefix.to_vec(), TextKind::CanonicalIncreasing, target)?;
    Ok(agents().run(None, &text, &Budget::new(max_ticks, prefix.len(), 0)))
}

/// Extends one text prefix through the members of an increasing chain,
/// stopping on each member as soon as the pair names it.
///
/// Each extension adds the member's missing elements in increasing order and
/// then cycles through the whole member, so every candidate is a prefix of
/// a text for the member.
pub fn chain_force(
    agents: &dyn Fn() -> SessionAgents,
    family: &dyn IndexedFamily,
    chain: &[Nat],
    budget: &ChainBudget,
) -> Result<ChainForce> {
    let sets: Vec<BTreeSet<Nat>> = chain
        .iter()
        .map(|&c| {
            family.member(c)?.finite_elements().ok_or_else(|| {
                Error::InvalidArgument(format!("chain member {c} is not finite"))
            })
        })
        .collect::<Result<_>>()?;
    for w in sets.windows(2) {
        if !(w[0].is_subset(&w[1]) && w[0] != w[1]) {
            return Err(Error::InvalidArgument("chain is not strictly increasing".into()));
        }
    }
    let mut prefix: Vec<Nat> = Vec::new();
    let mut hits = Vec::new();
    let mut hypotheses = Vec::new();
    let mut ticks_left = budget.max_ticks;
    for (&c, set) in chain.iter().zip(&sets) {
        let seen: BTreeSet<Nat> = prefix.iter().copied().collect();
        let ext: Vec<Nat> = set
            .difference(&seen)
            .copied()
            .chain(set.iter().copied().cycle())
            .take(budget.max_extension)
            .collect();
        let base = prefix.len();
        let full: Vec<Nat> = prefix.iter().copied().chain(ext).collect();
        let t = run_prefix(agents, &full, SetSpec::Explicit(set.clone()), ticks_left)?;
        ticks_left = ticks_left.saturating_sub(t.ledger.ticks);
        if t.termination == Termination::TickBudget {
            return Ok(ChainForce {
                chain: chain.to_vec(),
                prefix: full,
                hits,
                hypotheses,
                outcome: ChainOutcome::Inconclusive,
                transcript: Some(t),
            });
        }
        let covered = base + set.difference(&seen).count();
        let hit = (covered.max(base + 1)..=t.prefix_hypotheses.len().saturating_sub(1)).find(|&len| {
            t.hypothesis_on_prefix(len)
                .is_some_and(|h| family.same_set(h, c).unwrap_or(false))
        });
        let Some(len) = hit else {
            return Ok(ChainForce {
                chain: chain.to_vec(),
                prefix: full,
                hits,
                hypotheses,
                outcome: ChainOutcome::FailureWitness { member: c },
                transcript: Some(t),
            });
        };
        hits.push(len);
        hypotheses.push(t.hypothesis_on_prefix(len));
        prefix = full[..len].to_vec();
    }
    let last = sets.last().cloned().unwrap_or_default();
    let replay = run_prefix(agents, &prefix, SetSpec::Explicit(last), budget.max_ticks)?;
    Ok(ChainForce {
        chain: chain.to_vec(),
        prefix,
        hits,
        hypotheses,
        outcome: ChainOutcome::Forced {
            mind_changes: replay.ledger.mind_changes,
        },
        transcript: Some(replay),
    })
}

/// Greatest value the learner queries while reading `prefix` online against
/// the marker-set oracle; 0 without queries.
pub fn compute_q(registry: &LearnerRegistry, learner_id: u64, prefix: &[Nat], markers: &BTreeSet<Nat>) -> Result<Nat> {
    let mut learner = registry.make(learner_id)?;
    let target = SetSpec::Explicit(markers.clone());
    let text = Text::prefixed(prefix.to_vec(), TextKind::CanonicalIncreasing, target.clone())?;
    let t = run_session(learner.as_mut(), None, Some(&target), &text, &sim_budget(prefix.len()));
    let q = max_query(&t);
    match t.termination {
        Termination::TickBudget => Err(Error::BudgetExceeded(format!(
            "learner {learner_id} ran out of ticks on the marker prefix after {} items (q so far {q})",
            t.ledger.raw_consumed
        ))),
        Termination::ContractViolation(m) => Err(Error::ContractViolation(m)),
        _ => Ok(q),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DefeatReport {
    pub learner_id: u64,
    pub learner: String,
    pub poly: Nat,
    pub variant: String,
    pub targets: [Nat; 2],
    pub prefix_len: usize,
    pub q: Nat,
    pub floor: Nat,
    pub identical: bool,
    pub hypothesis: Option<Nat>,
    pub correct: [bool; 2],
    pub defeated: bool,
    pub transcripts: [Vec<Event>; 2],
}

/// Runs the learner with the true oracle of both targeted members on texts
/// that share the marker prefix of length `p(n₁)`.
pub fn msd_defeat(registry: &LearnerRegistry, learner_id: u64, poly: PolyCode, variant: MarkerVariant) -> Result<DefeatReport> {
    let family = make_msd(registry, learner_id, poly, variant)?;
    let prefix = family.shared_prefix()?;
    let [n0, n1] = family.targeted;
    let mut runs = Vec::new();
    for n in [n0, n1] {
        let target = family.member(n)?;
        let text = family.prefixed_text(n)?;
        let mut learner = registry.make(learner_id)?;
        runs.push(run_session(learner.as_mut(), None, Some(&target), &text, &sim_budget(prefix.len())));
    }
    let body = |t: &SessionTranscript| -> Vec<Event> {
        t.events
            .iter()
            .filter(|e| !matches!(e.kind, EventKind::End { .. }))
            .cloned()
            .collect()
    };
    let (e0, e1) = (body(&runs[0]), body(&runs[1]));
    let identical = e0 == e1 && runs[0].termination == runs[1].termination;
    let hypothesis = runs[0].hypothesis_on_prefix(prefix.len());
    let correct = [n0, n1].map(|n| hypothesis.is_some_and(|h| family.same_set(h, n).unwrap_or(false)));
    Ok(DefeatReport {
        learner_id,
        learner: registry.get(learner_id)?.name.to_string(),
        poly: poly.0,
        variant: format!("{variant:?}").to_lowercase(),
        targets: [n0, n1],
        prefix_len: prefix.len(),
        q: family.q,
        floor: family.floor,
        identical,
        hypothesis,
        correct,
        defeated: identical && !(correct[0] && correct[1]),
        transcripts: [e0, e1],
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TrapSets {
    pub e: BTreeSet<Nat>,
    pub d: BTreeSet<Nat>,
    /// False when the candidate budget ran out before a verdict.
    pub resolved: bool,
    /// Every arrangement of the accepted candidate was checked.
    pub exhaustive: bool,
    pub candidates_checked: usize,
    pub arrangements_checked: u64,
}

/// Next `r`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn factorial_capped(n: usize, cap: u64) -> u64 {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k).filter(|&v| v <= cap)).unwrap_or(u64::MAX)
}

fn next_permutation(v: &mut [Nat]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Searches for `E_k`: a `(P+1)`-subset of the interval containing its left
/// endpoint, `P = p(2k+1)`, such that the learner, given the interval's
/// oracle, emits `2k` once it has read the whole of `E_k` in any order.
/// Then `D_k` is `E_k`, the first `P` interval members the learner queries
/// reading `E_k` in increasing order, and the least unused interval
/// elements up to `2P+1` in all.
pub fn search_trap_sets(
    registry: &LearnerRegistry,
    learner_id: u64,
    poly: PolyCode,
    k: Nat,
    budget: &PcsSearchBudget,
) -> Result<TrapSets> {
    registry.get(learner_id)?;
    let (lo, hi) = trap_interval(k)?;
    let p = usize::try_from(poly.eval(2 * k + 1)?).map_err(|_| Error::Overflow("trap size"))?;
    let width = hi - lo + 1;
    let mut out = TrapSets::default();
    if (2 * p + 1) as Nat > width {
        out.resolved = true;
        return Ok(out);
    }
    let interval = SetSpec::interval(lo, hi);
    let want = 2 * k;
    let ends_on = |text: &[Nat]| -> Result<Option<SessionTranscript>> {
        let mut learner = registry.make(learner_id)?;
        let t = Text::prefixed(text.to_vec(), TextKind::CanonicalIncreasing, interval.clone())?;
        let mut b = sim_budget(text.len());
        b.max_ticks = budget.max_ticks;
        let tr = run_session(learner.as_mut(), None, Some(&interval), &t, &b);
        Ok((tr.hypothesis_on_prefix(text.len()) == Some(want)).then_some(tr))
    };
    // Candidate rest-of-E drawn from (lo, lo + pool], enough for any pick.
    let pool = usize::try_from((width - 1).min((budget.max_candidates + p) as Nat)).unwrap_or(usize::MAX);
    let arrangements = factorial_capped(p + 1, budget.exhaustive_limit);
    let exhaustive = arrangements <= budget.exhaustive_limit;
    let mut comb: Vec<usize> = (0..p).collect();
    loop {
        if out.candidates_checked >= budget.max_candidates {
            return Ok(out);
        }
        out.candidates_checked += 1;
        let e: Vec<Nat> = std::iter::once(lo).chain(comb.iter().map(|&i| lo + 1 + i as Nat)).collect();
        let mut ok = true;
        if exhaustive {
            let mut perm = e.clone();
            loop {
                out.arrangements_checked += 1;
                if ends_on(&perm)?.is_none() {
                    ok = false;
                    break;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ out.candidates_checked as u64);
            let mut perm = e.clone();
            for _ in 0..budget.samples {
                perm.shuffle(&mut rng);
                out.arrangements_checked += 1;
                if ends_on(&perm)?.is_none() {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let tr = ends_on(&e)?.expect("increasing order is one of the arrangements");
            let es: BTreeSet<Nat> = e.iter().copied().collect();
            let mut d = es.clone();
            let mut queried = 0;
            for ev in &tr.events {
                if let EventKind::Query { x, .. } = ev.kind {
                    if queried < p && (lo..=hi).contains(&x) && !es.contains(&x) {
                        queried += 1;
                        d.insert(x);
                    }
                }
            }
            let mut fill = lo;
            while d.len() < 2 * p + 1 {
                d.insert(fill);
                fill += 1;
            }
            out.e = es;
            out.d = d;
            out.resolved = true;
            out.exhaustive = exhaustive;
            return Ok(out);
        }
        if p == 0 || !next_combination(&mut comb, pool) {
            out.resolved = true;
            return Ok(out);
        }
    }
}

/// The odd numbers `1, 3, …, 2k+1`.
pub fn alpha_prefix(k: Nat) -> Vec<Nat> {
    (0..=k).map(|j| 2 * j + 1).collect()
}

/// `⟨m, p*, i⟩`, the index shape shared by every targeted construction.
pub fn targeted_index(learner_id: u64, poly: PolyCode, i: Nat) -> Result<Nat> {
    tuple(&[learner_id as Nat, poly.0, i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::registry::ids;
    use crate::families::{make_basic_family, BasicKind};

    #[test]
    fn q_of_scripted_learners() {
        let reg = LearnerRegistry::standard();
        let markers = BTreeSet::from([14]);
        assert_eq!(compute_q(&reg, ids::CONSTANT_ZERO, &[14; 4], &markers).unwrap(), 0);
        assert_eq!(compute_q(&reg, ids::QUERY_THREE_T, &[14; 4], &markers).unwrap(), 12);
        let mut last = 0;
        for l in 0..=50 {
            let q = compute_q(&reg, ids::QUERY_THREE_T, &vec![14; l], &markers).unwrap();
            assert!(q >= last);
            last = q;
        }
    }

    #[test]
    fn shared_prefix_texts() {
        let f = make_basic_family(BasicKind::FiniteCanonical);
        let code = |s: &[Nat]| {
            let set: BTreeSet<Nat> = s.iter().copied().collect();
            let e = crate::codec::canonical_encode(&set).unwrap();
            crate::codec::pair(set.len() as Nat, e.0).unwrap()
        };
        let (a, b) = (code(&[0, 2]), code(&[0, 5]));
        let (ta, tb) = repeat_prefix_texts(&f, a, b, 0, PolyCode(19)).unwrap();
        let len = (a + b + 2) as usize;
        assert_eq!(ta.take(len), vec![0; len]);
        assert_eq!(tb.take(len), vec![0; len]);
        assert!(repeat_prefix_texts(&f, a, a, 0, PolyCode(19)).is_err());
        assert!(repeat_prefix_texts(&f, a, b, 2, PolyCode(19)).is_err());
    }

    #[test]
    fn alpha_prefix_examples() {
        assert_eq!(alpha_prefix(0), vec![1]);
        assert_eq!(alpha_prefix(2), vec![1, 3, 5]);
    }

    #[test]
    fn trap_sets_for_toys() {
        let reg = LearnerRegistry::standard();
        let b = PcsSearchBudget::default();
        // k = ⟨2, 0⟩ = 3 targets the even toy: the first candidate works.
        let t = search_trap_sets(&reg, ids::PCS_TOY_EVEN, PolyCode(0), 3, &b).unwrap();
        assert!(t.resolved);
        assert_eq!(t.candidates_checked, 1);
        let (lo, _) = trap_interval(3).unwrap();
        assert_eq!(t.e, BTreeSet::from([lo]));
        let t = search_trap_sets(&reg, ids::PCS_TOY_ODD, PolyCode(0), 1, &b).unwrap();
        assert!(t.resolved && t.e.is_empty() && t.d.is_empty());
        // One extra slot: |E| = 2, |D| = 3, the query adds its successor probe.
        let t = search_trap_sets(&reg, ids::PCS_TOY_QUERY, PolyCode(2), 5, &b).unwrap();
        assert!(t.resolved);
        assert_eq!(t.e.len(), 2);
        assert_eq!(t.d.len(), 3);
        assert!(t.e.is_subset(&t.d));
        assert_eq!(t, search_trap_sets(&reg, ids::PCS_TOY_QUERY, PolyCode(2), 5, &b).unwrap());
    }
}
