use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::setspec::SetSpec;
use crate::error::{Error, Result};
use crate::Nat;

/// Members of an infinite target are permuted within blocks of this size.
const PERMUTATION_BLOCK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TextKind {
    /// Increasing order; a finite target is then padded with its least member.
    CanonicalIncreasing,
    /// Seeded shuffle; a finite target then repeats the shuffled order.
    SeededPermutation(u64),
    Prefixed {
        prefix: Vec<Nat>,
        continuation: Box<TextKind>,
    },
    RepeatPad {
        element: Nat,
        count: usize,
        continuation: Box<TextKind>,
    },
}

/// An enumeration of a nonempty target set.
#[derive(Debug, Clone)]
pub struct Text {
    pub kind: TextKind,
    pub target: SetSpec,
}

pub fn make_text(kind: TextKind, target: SetSpec) -> Result<Text> {
    if target.is_empty() {
        return Err(Error::InvalidArgument("texts of the empty set do not exist".into()));
    }
    let mut k = &kind;
    loop {
        match k {
            TextKind::Prefixed { prefix, continuation } => {
                if let Some(x) = prefix.iter().find(|&&x| !target.contains(x)) {
                    return Err(Error::ContractViolation(format!(
                        "prefix element {x} is not in the target"
                    )));
                }
                k = continuation;
            }
            TextKind::RepeatPad {
                element,
                continuation,
                ..
            } => {
                if !target.contains(*element) {
                    return Err(Error::ContractViolation(format!(
                        "padding element {element} is not in the target"
                    )));
                }
                k = continuation;
            }
            _ => break,
        }
    }
    Ok(Text { kind, target })
}

impl Text {
    pub fn canonical(target: SetSpec) -> Result<Text> {
        make_text(TextKind::CanonicalIncreasing, target)
    }

    pub fn seeded(target: SetSpec, seed: u64) -> Result<Text> {
        make_text(TextKind::SeededPermutation(seed), target)
    }

    pub fn prefixed(prefix: Vec<Nat>, continuation: TextKind, target: SetSpec) -> Result<Text> {
        make_text(
            TextKind::Prefixed {
                prefix,
                continuation: Box::new(continuation),
            },
            target,
        )
    }

    pub fn repeat_pad(element: Nat, count: usize, continuation: TextKind, target: SetSpec) -> Result<Text> {
        make_text(
            TextKind::RepeatPad {
                element,
                count,
                continuation: Box::new(continuation),
            },
            target,
        )
    }

    pub fn stream(&self) -> TextStream {
        let mut prefix = VecDeque::new();
        let mut k = &self.kind;
        let body = loop {
            match k {
                TextKind::Prefixed { prefix: p, continuation } => {
                    prefix.extend(p.iter().copied());
                    k = continuation;
                }
                TextKind::RepeatPad {
                    element,
                    count,
                    continuation,
                } => {
                    prefix.extend(std::iter::repeat(*element).take(*count));
                    k = continuation;
                }
                TextKind::CanonicalIncreasing => break Body::new(&self.target, None),
                TextKind::SeededPermutation(seed) => break Body::new(&self.target, Some(*seed)),
            }
        };
        TextStream { prefix, body }
    }

    /// The first `len` elements.
    pub fn take(&self, len: usize) -> Vec<Nat> {
        self.stream().take(len).collect()
    }
}

enum Body {
    Finite {
        order: Vec<Nat>,
        pos: usize,
        cycle: bool,
    },
    Infinite {
        target: SetSpec,
        last: Option<Nat>,
        block: VecDeque<Nat>,
        rng: Option<ChaCha8Rng>,
    },
}

impl Body {
    fn new(target: &SetSpec, seed: Option<u64>) -> Body {
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        match target.finite_elements() {
            Some(set) => {
                let mut order: Vec<Nat> = set.into_iter().collect();
                if let Some(rng) = rng.as_mut() {
                    order.shuffle(rng);
                }
                Body::Finite {
                    order,
                    pos: 0,
                    cycle: seed.is_some(),
                }
            }
            None => Body::Infinite {
                target: target.clone(),
                last: None,
                block: VecDeque::new(),
                rng,
            },
        }
    }
}

/// The element stream of a [`Text`]; never ends.
pub struct TextStream {
    prefix: VecDeque<Nat>,
    body: Body,
}

impl Iterator for TextStream {
    type Item = Nat;

    fn next(&mut self) -> Option<Nat> {
        if let Some(x) = self.prefix.pop_front() {
            return Some(x);
        }
        match &mut self.body {
            Body::Finite { order, pos, cycle } => {
                let x = if *pos < order.len() {
                    order[*pos]
                } else if *cycle {
                    order[*pos % order.len()]
                } else {
                    *order.iter().min()?
                };
                *pos += 1;
                Some(x)
            }
            Body::Infinite {
                target,
                last,
                block,
                rng,
            } => {
                if block.is_empty() {
                    let mut fresh = Vec::with_capacity(PERMUTATION_BLOCK);
                    while fresh.len() < PERMUTATION_BLOCK {
                        let Some(x) = target.next_member(*last) else { break };
                        *last = Some(x);
                        fresh.push(x);
                    }
                    if let Some(rng) = rng.as_mut() {
                        fresh.shuffle(rng);
                    }
                    block.extend(fresh);
                }
                block.pop_front()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pads_with_least_member() {
        let t = Text::canonical(SetSpec::interval(0, 3)).unwrap();
        assert_eq!(t.take(7), vec![0, 1, 2, 3, 0, 0, 0]);
    }

    #[test]
    fn repeat_pad_singleton() {
        let t = Text::repeat_pad(9, 4, TextKind::CanonicalIncreasing, SetSpec::explicit([9])).unwrap();
        assert_eq!(t.take(6), vec![9; 6]);
    }

    #[test]
    fn errors() {
        assert!(Text::canonical(SetSpec::explicit([])).is_err());
        let bad = Text::prefixed(vec![5], TextKind::CanonicalIncreasing, SetSpec::interval(0, 3));
        assert!(matches!(bad, Err(Error::ContractViolation(_))));
    }

    #[test]
    fn seeded_is_a_permutation_then_cycles() {
        let target = SetSpec::interval(10, 29);
        let t = Text::seeded(target, 7).unwrap();
        let head = t.take(40);
        let mut first: Vec<Nat> = head[..20].to_vec();
        first.sort();
        assert_eq!(first, (10..30).collect::<Vec<_>>());
        assert_eq!(head[..20], head[20..]);
        assert_eq!(t.take(40), head);
        assert_ne!(Text::seeded(SetSpec::interval(10, 29), 8).unwrap().take(20), head[..20]);
    }

    #[test]
    fn infinite_targets_are_covered() {
        let t = Text::seeded(SetSpec::up_from(5), 3).unwrap();
        let mut head = t.take(128);
        head.sort();
        assert_eq!(head, (5..133).collect::<Vec<_>>());
    }
}
