use std::collections::BTreeSet;

use super::{FamilyManifest, IndexedFamily};
use crate::codec::pow2;
use crate::engine::{SetSpec, StagedSet};
use crate::error::Result;
use crate::Nat;

/// `F_{2i+1} = {2i} ∪ {2i+1 : i ∈ W}`, `F_{2^{2^i}} = {2i, 2i+1}`, and every
/// other even index names `∅`.
#[derive(Debug, Clone)]
pub struct HaltingFamily {
    pub w: StagedSet,
}

pub fn make_halting_family(w: StagedSet) -> HaltingFamily {
    HaltingFamily { w }
}

impl HaltingFamily {
    /// A family whose `W` is the fixed set `members` from stage 0 on.
    pub fn with_fixed(members: impl IntoIterator<Item = Nat>, stage: u64) -> HaltingFamily {
        let set: BTreeSet<Nat> = members.into_iter().collect();
        let label = format!("{set:?}");
        make_halting_family(StagedSet::new(label, stage, move |_| set.clone()))
    }

    fn in_w(&self, i: Nat) -> bool {
        self.w.current().contains(&i)
    }
}

/// `2^{2^i}`.
pub fn tower_index(i: Nat) -> Result<Nat> {
    pow2(pow2(i)?)
}

/// `Some(i)` when `n = 2^{2^i}`.
fn tower_level(n: Nat) -> Option<Nat> {
    if !n.is_power_of_two() {
        return None;
    }
    let e = n.trailing_zeros();
    (e.is_power_of_two()).then(|| e.trailing_zeros() as Nat)
}

impl IndexedFamily for HaltingFamily {
    fn name(&self) -> String {
        format!("halting(W = {})", self.w.label)
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        if n % 2 == 1 {
            let i = n / 2;
            let w = self.w.clone();
            let staged = StagedSet::new(format!("F_{n}"), self.w.stage, move |s| {
                let mut out = BTreeSet::from([2 * i]);
                if w.at(s).contains(&i) {
                    out.insert(2 * i + 1);
                }
                out
            });
            return Ok(SetSpec::Staged(staged));
        }
        Ok(match tower_level(n) {
            Some(i) => SetSpec::explicit([2 * i, 2 * i + 1]),
            None => SetSpec::explicit([]),
        })
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        if n % 2 == 1 {
            return Ok(n);
        }
        Ok(match tower_level(n) {
            Some(i) if self.in_w(i) => 2 * i + 1,
            Some(_) => n,
            None => 0,
        })
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let top = indices
            .iter()
            .map(|&n| match (n % 2, tower_level(n)) {
                (1, _) => n,
                (_, Some(i)) => 2 * i + 1,
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        Ok(top)
    }

    fn manifest(&self) -> FamilyManifest {
        FamilyManifest::new("halting")
            .param("w", &self.w.label)
            .param("stage", self.w.stage)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::brute_min_index;

    #[test]
    fn examples() {
        let empty = HaltingFamily::with_fixed([], 10);
        assert_eq!(empty.member(3).unwrap().finite_elements().unwrap(), BTreeSet::from([2]));
        let w1 = HaltingFamily::with_fixed([1], 10);
        assert_eq!(w1.member(3).unwrap().finite_elements().unwrap(), BTreeSet::from([2, 3]));
        assert_eq!(w1.member(16).unwrap().finite_elements().unwrap(), BTreeSet::from([4, 5]));
        assert!(w1.member(6).unwrap().is_empty());
        assert_eq!(tower_index(2).unwrap(), 16);
        assert!(tower_index(7).is_err());
    }

    #[test]
    fn min_index_matches_brute_force() {
        let f = HaltingFamily::with_fixed([0, 1, 3], 10);
        for n in 0..300 {
            assert_eq!(f.min_index(n).unwrap(), brute_min_index(&f, n).unwrap(), "{n}");
        }
    }

    #[test]
    fn staged_membership_is_monotone() {
        let w = StagedSet::new("i<=s/2", 6, |s| (0..=(s / 2) as Nat).collect());
        let f = make_halting_family(w.clone());
        for n in (1..20).step_by(2) {
            let SetSpec::Staged(st) = f.member(n).unwrap() else { panic!() };
            for s in 0..10 {
                assert!(st.at(s).is_subset(&st.at(s + 1)));
            }
        }
    }
}
