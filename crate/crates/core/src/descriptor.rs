//! Marked self-description.
//!
//! A descriptor on column `i` is a finite set of codes `⟨x, c, 1, i⟩` whose
//! completion values `signed_int(c)` sum to zero while no nonempty proper
//! subset does. The number it describes is the sum of `signed_int(x)`.
//! Because no partial collection can sum to zero, a streaming recognizer can
//! tell exactly when the last element has arrived.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::codec::{signed_int, signed_int_inv, tuple, unpair};
use crate::error::{Error, Result};
use crate::Nat;

/// Subset checks are exponential in the set size; larger sets are refused.
pub const MAX_VALIDATE_SIZE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub column: Nat,
    pub elements: BTreeSet<Nat>,
    pub described: Nat,
}

/// Decoded `(x, c, 1, column)` element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Element {
    pub x: Nat,
    pub completion: Nat,
}

/// Decodes `code` as a descriptor element of `column`, if it has that shape.
pub fn element_of(code: Nat, column: Nat) -> Option<Element> {
    let (x, rest) = unpair(code);
    let (c, rest) = unpair(rest);
    match unpair(rest) {
        (1, col) if col == column => Some(Element { x, completion: c }),
        _ => None,
    }
}

pub fn element_code(x: Nat, completion: Nat, column: Nat) -> Result<Nat> {
    tuple(&[x, completion, 1, column])
}

/// `⟨2j, 1, 1, 0⟩`, the marker elements used by the self-describing families.
pub fn marker(j: Nat) -> Result<Nat> {
    element_code(2 * j, 1, 0)
}

/// Counts subsets (including the empty one) by completion-value sum.
fn zero_sum_subsets(values: &[i128]) -> u64 {
    let mut counts: HashMap<i128, u64> = HashMap::from([(0, 1)]);
    for &v in values {
        let snapshot: Vec<(i128, u64)> = counts.iter().map(|(&s, &c)| (s, c)).collect();
        for (s, c) in snapshot {
            *counts.entry(s + v).or_default() += c;
        }
    }
    counts.get(&0).copied().unwrap_or(0)
}

/// Checks every descriptor condition for `set` on `column`.
///
/// Condition 2 is checked over all nonempty proper subsets by counting
/// zero-sum subsets: a valid descriptor has exactly two (empty and full).
pub fn validate_descriptor(set: &BTreeSet<Nat>, column: Nat) -> Result<bool> {
    if set.len() > MAX_VALIDATE_SIZE {
        return Err(Error::BudgetExceeded(format!(
            "descriptor subset check over {} elements (limit {MAX_VALIDATE_SIZE})",
            set.len()
        )));
    }
    if set.is_empty() {
        return Ok(false);
    }
    let mut xs = BTreeSet::new();
    let mut completions = Vec::with_capacity(set.len());
    let mut x_sum: i128 = 0;
    for &code in set {
        let Some(e) = element_of(code, column) else {
            return Ok(false);
        };
        if !xs.insert(e.x) {
            return Ok(false);
        }
        completions.push(signed_int(e.completion));
        x_sum += signed_int(e.x);
    }
    if completions.iter().sum::<i128>() != 0 || x_sum < 0 {
        return Ok(false);
    }
    Ok(zero_sum_subsets(&completions) == 2)
}

/// Sum of `signed_int(x)` over the elements, without validation.
fn x_sum(elements: &BTreeSet<Nat>, column: Nat) -> Option<i128> {
    elements
        .iter()
        .map(|&c| element_of(c, column).map(|e| signed_int(e.x)))
        .sum()
}

impl Descriptor {
    pub fn from_set(elements: BTreeSet<Nat>, column: Nat) -> Result<Descriptor> {
        if !validate_descriptor(&elements, column)? {
            return Err(Error::InvalidArgument("not a descriptor".into()));
        }
        let described = x_sum(&elements, column).expect("validated") as Nat;
        Ok(Descriptor {
            column,
            elements,
            described,
        })
    }

    pub fn min(&self) -> Nat {
        *self.elements.first().expect("descriptors are nonempty")
    }
}

pub fn described_number(d: &Descriptor) -> Result<Nat> {
    if d.elements.len() <= MAX_VALIDATE_SIZE && !validate_descriptor(&d.elements, d.column)? {
        return Err(Error::InvalidArgument("not a descriptor".into()));
    }
    match x_sum(&d.elements, d.column) {
        Some(s) if s >= 0 => Ok(s as Nat),
        _ => Err(Error::InvalidArgument("not a descriptor".into())),
    }
}

/// Deterministically completes `markers` into a descriptor on `column`
/// describing `n` whose two added elements both exceed `floor`.
///
/// Every marker must have completion value -1. With `M` markers the extras
/// carry completion values `+(M+1)` and `-1`; any nonempty proper subset
/// then has a nonzero sum, because the positive element outweighs at most
/// `M` of the `M+1` negative ones and without it the sum is negative.
pub fn build_descriptor(
    n: Nat,
    column: Nat,
    floor: Nat,
    markers: &BTreeSet<Nat>,
) -> Result<Descriptor> {
    let mut used_x = BTreeSet::new();
    let mut marker_sum: i128 = 0;
    for &m in markers {
        let e = element_of(m, column)
            .ok_or_else(|| Error::InvalidArgument(format!("marker {m} is not on column {column}")))?;
        if e.completion != 1 {
            return Err(Error::InvalidArgument(format!(
                "marker {m} has completion code {}, expected 1",
                e.completion
            )));
        }
        if !used_x.insert(e.x) {
            return Err(Error::InvalidArgument("marker x-coordinates collide".into()));
        }
        marker_sum += signed_int(e.x);
    }
    let big = |v: Nat| i128::try_from(v).map_err(|_| Error::Overflow("building a descriptor"));
    let count = markers.len() as i128;
    let high_completion = signed_int_inv(count + 1);
    let low_completion = signed_int_inv(-1);

    let mut s = big(floor)? + big(n)? + marker_sum + 1;
    loop {
        let rest = big(n)? - marker_sum - s;
        let x1 = signed_int_inv(s);
        let x2 = signed_int_inv(rest);
        let clear = s > 0
            && rest < 0
            && x1 > floor
            && x2 > floor
            && !used_x.contains(&x1)
            && !used_x.contains(&x2);
        if clear {
            let mut elements = markers.clone();
            elements.insert(element_code(x1, high_completion, column)?);
            elements.insert(element_code(x2, low_completion, column)?);
            return Ok(Descriptor {
                column,
                elements,
                described: n,
            });
        }
        s += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Ignored,
    Partial,
    Complete(Nat),
    Corrupt,
}

/// Streaming recognizer for a single descriptor on one column.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Recognizer {
    column: Nat,
    /// Sorted; descriptors are small, so a vector clones cheaply.
    seen: Vec<Nat>,
    completion_sum: i128,
    x_sum: i128,
    complete: Option<Nat>,
    corrupt: bool,
}

impl Recognizer {
    pub fn new(column: Nat) -> Self {
        Recognizer {
            column,
            ..Default::default()
        }
    }

    pub fn push(&mut self, code: Nat) -> Status {
        let Some(e) = element_of(code, self.column) else {
            return Status::Ignored;
        };
        let Err(at) = self.seen.binary_search(&code) else {
            return Status::Ignored;
        };
        self.seen.insert(at, code);
        if self.corrupt || self.complete.is_some() {
            self.corrupt = true;
            return Status::Corrupt;
        }
        self.completion_sum += signed_int(e.completion);
        self.x_sum += signed_int(e.x);
        if self.completion_sum != 0 {
            return Status::Partial;
        }
        if self.x_sum < 0 {
            self.corrupt = true;
            return Status::Corrupt;
        }
        let n = self.x_sum as Nat;
        self.complete = Some(n);
        Status::Complete(n)
    }

    /// Value-style step: returns the successor state and the status.
    pub fn step(mut self, code: Nat) -> (Recognizer, Status) {
        let status = self.push(code);
        (self, status)
    }

    pub fn complete(&self) -> Option<Nat> {
        self.complete.filter(|_| !self.corrupt)
    }

    pub fn is_corrupt(&self) -> bool {
        self.corrupt
    }

    /// Elements accumulated so far.
    pub fn elements(&self) -> &[Nat] {
        &self.seen
    }
}

pub fn recognizer_step(state: Recognizer, x: Nat) -> (Recognizer, Status) {
    state.step(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(x: Nat, c: Nat) -> Nat {
        element_code(x, c, 0).unwrap()
    }

    fn set(codes: &[Nat]) -> BTreeSet<Nat> {
        codes.iter().copied().collect()
    }

    // Brute-force condition check over every subset, used as an oracle.
    fn brute_valid(s: &BTreeSet<Nat>, column: Nat) -> bool {
        let els: Vec<Element> = match s.iter().map(|&c| element_of(c, column)).collect() {
            Some(v) => v,
            None => return false,
        };
        if els.is_empty() {
            return false;
        }
        let xs: BTreeSet<Nat> = els.iter().map(|e| e.x).collect();
        if xs.len() != els.len() {
            return false;
        }
        let full = (1u32 << els.len()) - 1;
        for mask in 1..=full {
            let sum: i128 = (0..els.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| signed_int(els[i].completion))
                .sum();
            if (mask == full) != (sum == 0) {
                return false;
            }
        }
        els.iter().map(|e| signed_int(e.x)).sum::<i128>() >= 0
    }

    #[test]
    fn validate_examples() {
        assert!(validate_descriptor(&set(&[el(2, 2), el(4, 1)]), 0).unwrap());
        assert!(!validate_descriptor(&set(&[el(0, 1)]), 0).unwrap());
        assert!(!validate_descriptor(&BTreeSet::new(), 0).unwrap());
        let big: BTreeSet<Nat> = (0..21).map(|j| el(2 * j, 1)).collect();
        assert!(validate_descriptor(&big, 0).is_err());
    }

    #[test]
    fn proper_subset_zero_sum_is_rejected() {
        // +1, -1, +1, -1 has zero-sum proper subsets.
        let s = set(&[el(0, 2), el(2, 1), el(4, 2), el(6, 1)]);
        assert!(!validate_descriptor(&s, 0).unwrap());
        assert!(!brute_valid(&s, 0));
    }

    #[test]
    fn described_examples() {
        let d = Descriptor::from_set(set(&[el(2, 2), el(4, 1)]), 0).unwrap();
        assert_eq!(described_number(&d).unwrap(), 3);
        let d = Descriptor::from_set(set(&[el(0, 1), el(2, 2)]), 0).unwrap();
        assert_eq!(described_number(&d).unwrap(), 1);
        let d = Descriptor::from_set(set(&[el(6, 0)]), 0).unwrap();
        assert_eq!(described_number(&d).unwrap(), 3);
        let bogus = Descriptor {
            column: 0,
            elements: set(&[el(0, 1)]),
            described: 0,
        };
        assert!(described_number(&bogus).is_err());
    }

    #[test]
    fn build_examples() {
        let m = set(&[marker(0).unwrap()]);
        let d = build_descriptor(3, 0, 10, &m).unwrap();
        assert_eq!(d.elements.len(), 3);
        assert!(d.elements.contains(&marker(0).unwrap()));
        let completions: BTreeSet<Nat> = d
            .elements
            .iter()
            .filter(|c| !m.contains(c))
            .map(|&c| element_of(c, 0).unwrap().completion)
            .collect();
        assert_eq!(completions, set(&[4, 1]));
        assert!(d.elements.iter().filter(|c| !m.contains(c)).all(|&c| c > 10));
        assert!(brute_valid(&d.elements, 0));
        assert_eq!(described_number(&d).unwrap(), 3);

        let d = build_descriptor(0, 0, 0, &m).unwrap();
        assert_eq!(described_number(&d).unwrap(), 0);

        let d = build_descriptor(7, 1, 100, &BTreeSet::new()).unwrap();
        assert_eq!(d.elements.len(), 2);
        assert!(d.elements.iter().all(|&c| c > 100));
        assert!(validate_descriptor(&d.elements, 1).unwrap());
        assert_eq!(described_number(&d).unwrap(), 7);
    }

    #[test]
    fn build_rejects_bad_markers() {
        assert!(build_descriptor(1, 0, 0, &set(&[el(0, 2)])).is_err());
        assert!(build_descriptor(1, 0, 0, &set(&[17])).is_err());
    }

    #[test]
    fn build_agrees_with_brute_force() {
        for n in 0..40 {
            for markers in 0..6 {
                let m: BTreeSet<Nat> = (0..markers).map(|j| marker(j).unwrap()).collect();
                let d = build_descriptor(n, 0, n * 3, &m).unwrap();
                assert!(brute_valid(&d.elements, 0), "n={n} markers={markers}");
                assert!(validate_descriptor(&d.elements, 0).unwrap());
                assert_eq!(described_number(&d).unwrap(), n);
            }
        }
    }

    #[test]
    fn recognizer_examples() {
        let r = Recognizer::new(0);
        let (r, s1) = recognizer_step(r, el(2, 2));
        assert_eq!(s1, Status::Partial);
        let (r, s2) = recognizer_step(r, el(4, 1));
        assert_eq!(s2, Status::Complete(3));
        let (_, s3) = recognizer_step(r.clone(), el(8, 3));
        assert_eq!(s3, Status::Corrupt);
        let (_, s4) = recognizer_step(r, el(2, 2));
        assert_eq!(s4, Status::Ignored);
        assert_eq!(Recognizer::new(0).push(18), Status::Ignored);
    }

    #[test]
    fn recognizer_fires_on_last_element_in_every_order() {
        let d = build_descriptor(1, 0, 5, &set(&[marker(0).unwrap()])).unwrap();
        let els: Vec<Nat> = d.elements.iter().copied().collect();
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for order in orders {
            let mut r = Recognizer::new(0);
            let statuses: Vec<Status> = order.iter().map(|&i| r.push(els[i])).collect();
            assert_eq!(statuses[..2], [Status::Partial, Status::Partial]);
            assert_eq!(statuses[2], Status::Complete(1));
        }
    }
}
