use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::codec::{pair, unpair};
use crate::descriptor::Descriptor;
use crate::Nat;

/// Upper limit on linear membership scans over infinite shapes.
pub const SCAN_LIMIT: Nat = 1 << 22;

type StageFn = Arc<dyn Fn(u64) -> BTreeSet<Nat> + Send + Sync>;

/// A set given by its finite approximations `W_s`, read at a fixed stage.
#[derive(Clone)]
pub struct StagedSet {
    pub label: String,
    stages: StageFn,
    pub stage: u64,
}

impl StagedSet {
    pub fn new(
        label: impl Into<String>,
        stage: u64,
        stages: impl Fn(u64) -> BTreeSet<Nat> + Send + Sync + 'static,
    ) -> Self {
        StagedSet {
            label: label.into(),
            stages: Arc::new(stages),
            stage,
        }
    }

    pub fn at(&self, s: u64) -> BTreeSet<Nat> {
        (self.stages)(s)
    }

    pub fn current(&self) -> BTreeSet<Nat> {
        self.at(self.stage)
    }
}

impl fmt::Debug for StagedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Staged({}@{})", self.label, self.stage)
    }
}

#[derive(Clone, Debug)]
pub enum SetSpec {
    Explicit(BTreeSet<Nat>),
    /// `[lo, hi]`, or `[lo, ∞)` when `hi` is `None`.
    Interval { lo: Nat, hi: Option<Nat> },
    /// `A ⊗ B = {⟨a,b⟩ : a ∈ A, b ∈ B}`.
    ColumnProduct(Box<SetSpec>, Box<SetSpec>),
    /// `A ⊕ B = {2a : a ∈ A} ∪ {2b+1 : b ∈ B}`.
    Join(Box<SetSpec>, Box<SetSpec>),
    Descriptor(Descriptor),
    Union(Vec<SetSpec>),
    Staged(StagedSet),
}

impl SetSpec {
    pub fn explicit(xs: impl IntoIterator<Item = Nat>) -> SetSpec {
        SetSpec::Explicit(xs.into_iter().collect())
    }

    pub fn interval(lo: Nat, hi: Nat) -> SetSpec {
        SetSpec::Interval { lo, hi: Some(hi) }
    }

    pub fn up_from(lo: Nat) -> SetSpec {
        SetSpec::Interval { lo, hi: None }
    }

    pub fn naturals() -> SetSpec {
        SetSpec::up_from(0)
    }

    pub fn product(a: SetSpec, b: SetSpec) -> SetSpec {
        SetSpec::ColumnProduct(Box::new(a), Box::new(b))
    }

    pub fn join(a: SetSpec, b: SetSpec) -> SetSpec {
        SetSpec::Join(Box::new(a), Box::new(b))
    }

    pub fn contains(&self, x: Nat) -> bool {
        match self {
            SetSpec::Explicit(s) => s.contains(&x),
            SetSpec::Interval { lo, hi } => x >= *lo && hi.map_or(true, |h| x <= h),
            SetSpec::ColumnProduct(a, b) => {
                let (u, v) = unpair(x);
                a.contains(u) && b.contains(v)
            }
            SetSpec::Join(a, b) => {
                if x % 2 == 0 {
                    a.contains(x / 2)
                } else {
                    b.contains(x / 2)
                }
            }
            SetSpec::Descriptor(d) => d.elements.contains(&x),
            SetSpec::Union(parts) => parts.iter().any(|p| p.contains(x)),
            SetSpec::Staged(w) => w.current().contains(&x),
        }
    }

    /// All members, when the shape is finite.
    pub fn finite_elements(&self) -> Option<BTreeSet<Nat>> {
        match self {
            SetSpec::Explicit(s) => Some(s.clone()),
            SetSpec::Interval { lo, hi } => hi.map(|h| (*lo..=h).collect()),
            SetSpec::ColumnProduct(a, b) => {
                let (a, b) = (a.finite_elements()?, b.finite_elements()?);
                let mut out = BTreeSet::new();
                for &u in &a {
                    for &v in &b {
                        out.insert(pair(u, v).ok()?);
                    }
                }
                Some(out)
            }
            SetSpec::Join(a, b) => {
                let (a, b) = (a.finite_elements()?, b.finite_elements()?);
                let evens = a.into_iter().map(|u| u.checked_mul(2));
                let odds = b
                    .into_iter()
                    .map(|v| v.checked_mul(2).and_then(|w| w.checked_add(1)));
                evens.chain(odds).collect()
            }
            SetSpec::Descriptor(d) => Some(d.elements.clone()),
            SetSpec::Union(parts) => {
                let mut out = BTreeSet::new();
                for p in parts {
                    out.extend(p.finite_elements()?);
                }
                Some(out)
            }
            SetSpec::Staged(w) => Some(w.current()),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            SetSpec::Explicit(_) | SetSpec::Descriptor(_) | SetSpec::Staged(_) => true,
            SetSpec::Interval { hi, .. } => hi.is_some(),
            SetSpec::ColumnProduct(a, b) => {
                a.is_empty() || b.is_empty() || (a.is_finite() && b.is_finite())
            }
            SetSpec::Join(a, b) => a.is_finite() && b.is_finite(),
            SetSpec::Union(parts) => parts.iter().all(SetSpec::is_finite),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SetSpec::Interval { lo, hi } => hi.is_some_and(|h| h < *lo),
            SetSpec::ColumnProduct(a, b) => a.is_empty() || b.is_empty(),
            SetSpec::Join(a, b) => a.is_empty() && b.is_empty(),
            SetSpec::Union(parts) => parts.iter().all(SetSpec::is_empty),
            other => other.finite_elements().is_some_and(|s| s.is_empty()),
        }
    }

    /// Least member strictly greater than `after` (or the least member).
    pub fn next_member(&self, after: Option<Nat>) -> Option<Nat> {
        let start = match after {
            Some(a) => a.checked_add(1)?,
            None => 0,
        };
        match self {
            SetSpec::Interval { lo, hi } => {
                let x = start.max(*lo);
                hi.map_or(true, |h| x <= h).then_some(x)
            }
            _ if self.is_finite() => self.finite_elements()?.range(start..).next().copied(),
            _ => (start..start.saturating_add(SCAN_LIMIT)).find(|&x| self.contains(x)),
        }
    }

    /// Members in `[0, bound]`.
    pub fn members_upto(&self, bound: Nat) -> BTreeSet<Nat> {
        match self.finite_elements() {
            Some(s) => s.range(..=bound).copied().collect(),
            None => match self {
                SetSpec::Interval { lo, .. } => (*lo..=bound).collect(),
                _ => (0..=bound.min(SCAN_LIMIT)).filter(|&x| self.contains(x)).collect(),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            SetSpec::Explicit(s) if s.len() <= 8 => format!("{s:?}"),
            SetSpec::Explicit(s) => format!("explicit[{} elements]", s.len()),
            SetSpec::Interval { lo, hi: Some(h) } => format!("[{lo},{h}]"),
            SetSpec::Interval { lo, hi: None } => format!("[{lo},inf)"),
            SetSpec::ColumnProduct(a, b) => format!("{}x{}", a.label(), b.label()),
            SetSpec::Join(a, b) => format!("{}(+){}", a.label(), b.label()),
            SetSpec::Descriptor(d) => format!("descriptor(col {}, n={})", d.column, d.described),
            SetSpec::Union(parts) => parts.iter().map(SetSpec::label).collect::<Vec<_>>().join(" u "),
            SetSpec::Staged(w) => format!("{w:?}"),
        }
    }
}

/// Pointwise equality on `[0, bound]`.
pub fn set_equal(a: &SetSpec, b: &SetSpec, bound: Nat) -> bool {
    if let (SetSpec::Interval { lo: l1, hi: h1 }, SetSpec::Interval { lo: l2, hi: h2 }) = (a, b) {
        let clip = |lo: Nat, hi: Option<Nat>| {
            let hi = hi.map_or(bound, |h| h.min(bound));
            if lo > hi {
                None
            } else {
                Some((lo, hi))
            }
        };
        return clip(*l1, *h1) == clip(*l2, *h2);
    }
    a.members_upto(bound) == b.members_upto(bound)
}

/// Pointwise inclusion `a ⊆ b` on `[0, bound]`.
pub fn set_subset(a: &SetSpec, b: &SetSpec, bound: Nat) -> bool {
    a.members_upto(bound).iter().all(|&x| b.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_examples() {
        assert!(set_equal(&SetSpec::interval(0, 4), &SetSpec::interval(0, 4), 100));
        assert!(!set_equal(&SetSpec::interval(0, 4), &SetSpec::interval(0, 5), 100));
        let join = SetSpec::join(SetSpec::explicit([1]), SetSpec::naturals());
        let truncation = SetSpec::explicit([2, 1, 3, 5, 7, 9]);
        assert!(set_equal(&join, &truncation, 9));
        assert!(!set_equal(&join, &truncation, 11));
    }

    #[test]
    fn shapes() {
        let col = SetSpec::product(SetSpec::interval(0, 2), SetSpec::explicit([1]));
        let els = col.finite_elements().unwrap();
        assert_eq!(els.len(), 3);
        assert!(els.iter().all(|&x| unpair(x).1 == 1));
        assert!(SetSpec::interval(3, 2).is_empty());
        assert!(!SetSpec::up_from(3).is_finite());
        assert_eq!(SetSpec::up_from(3).next_member(Some(7)), Some(8));
        let odd = SetSpec::join(SetSpec::explicit([]), SetSpec::naturals());
        assert_eq!(odd.next_member(Some(4)), Some(5));
        assert!(set_subset(&SetSpec::interval(1, 3), &SetSpec::up_from(0), 10));
    }

    #[test]
    fn staged_reads_current_stage() {
        let w = StagedSet::new("evens<=s", 4, |s| (0..=s as Nat).filter(|x| x % 2 == 0).collect());
        let spec = SetSpec::Staged(w.clone());
        assert!(spec.contains(4));
        assert!(!spec.contains(6));
        assert!(w.at(3).is_subset(&w.at(4)));
    }
}
