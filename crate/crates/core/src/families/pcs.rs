use std::collections::BTreeSet;

use serde::Serialize;

use super::registry::LearnerRegistry;
use super::{FamilyManifest, IndexedFamily};
use crate::adversary::{search_trap_sets, TrapSets};
use crate::codec::{floor_log2, pair, pow2, unpair, PolyCode};
use crate::engine::SetSpec;
use crate::error::{Error, Result};
use crate::Nat;

/// `k = ⟨n, p*⟩`: the learner id and polynomial code a trap targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrapParams {
    pub k: Nat,
    pub learner_id: Nat,
    pub poly: PolyCode,
}

impl TrapParams {
    pub fn of(k: Nat) -> TrapParams {
        let (learner_id, p) = unpair(k);
        TrapParams {
            k,
            learner_id,
            poly: PolyCode(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PcsSearchBudget {
    pub max_candidates: usize,
    /// Arrangement checks are exhaustive up to this many per candidate.
    pub exhaustive_limit: u64,
    /// Arrangements drawn per candidate otherwise.
    pub samples: usize,
    pub seed: u64,
    pub max_ticks: u64,
}

impl Default for PcsSearchBudget {
    fn default() -> Self {
        PcsSearchBudget {
            max_candidates: 2_000,
            exhaustive_limit: 100_000,
            samples: 10_000,
            seed: 0,
            max_ticks: 100_000,
        }
    }
}

/// Left endpoint `2^{2k+1}+1` and right endpoint `2^{2k+2}` of `F_{2k}`.
pub fn trap_interval(k: Nat) -> Result<(Nat, Nat)> {
    let lo = pow2(2 * k + 1)? + 1;
    let hi = pow2(2 * k + 2)?;
    Ok((lo, hi))
}

/// `F_{2k} = [2^{2k+1}+1, 2^{2k+2}]`, `F_{2k+1} = D_k ∪ {2^{2k+1}+1}`.
#[derive(Debug, Clone)]
pub struct PcsFFamily {
    pub learner_id: u64,
    pub poly: PolyCode,
    /// The one `k` whose decomposition names this family's learner.
    pub k: Nat,
    pub traps: TrapSets,
}

pub fn make_pcs_f(
    registry: &LearnerRegistry,
    learner_id: u64,
    poly: PolyCode,
    budget: &PcsSearchBudget,
) -> Result<PcsFFamily> {
    let k = pair(learner_id as Nat, poly.0)?;
    let traps = search_trap_sets(registry, learner_id, poly, k, budget)?;
    Ok(PcsFFamily {
        learner_id,
        poly,
        k,
        traps,
    })
}

impl PcsFFamily {
    /// `D_k` (empty unless `k` is the targeted one).
    pub fn d_set(&self, k: Nat) -> Result<BTreeSet<Nat>> {
        if k != self.k {
            return Ok(BTreeSet::new());
        }
        if !self.traps.resolved {
            return Err(Error::Unresolved(2 * k + 1, "pcs-F".into()));
        }
        Ok(self.traps.d.clone())
    }

    fn odd_member(&self, k: Nat) -> Result<BTreeSet<Nat>> {
        let mut s = self.d_set(k)?;
        s.insert(trap_interval(k)?.0);
        Ok(s)
    }
}

impl IndexedFamily for PcsFFamily {
    fn name(&self) -> String {
        format!("pcs-F(learner {}, p {})", self.learner_id, self.poly.0)
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        let k = n / 2;
        if n % 2 == 0 {
            let (lo, hi) = trap_interval(k)?;
            Ok(SetSpec::interval(lo, hi))
        } else {
            Ok(SetSpec::Explicit(self.odd_member(k)?))
        }
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        let k = n / 2;
        if n % 2 == 1 {
            let (lo, hi) = trap_interval(k)?;
            if self.odd_member(k)? == (lo..=hi).collect::<BTreeSet<_>>() {
                return Ok(2 * k);
            }
        }
        Ok(n)
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let k = indices.iter().copied().max().unwrap_or(0) / 2;
        Ok(trap_interval(k)?.1)
    }

    fn manifest(&self) -> FamilyManifest {
        FamilyManifest::new("pcs-F")
            .param("learner_id", self.learner_id)
            .param("poly", self.poly.0)
            .param("k", self.k)
            .param("resolved", self.traps.resolved)
            .param("exhaustive", self.traps.exhaustive)
            .table("E", self.traps.e.iter())
            .table("D", self.traps.d.iter())
    }
}

/// `(i_n, k_n)` with `n = i_n + 2^{k_n}` and `1 ≤ i_n ≤ 2^{k_n}`; none for `n < 2`.
pub fn thm64_decompose(n: Nat) -> Option<(Nat, Nat)> {
    if n < 2 {
        return None;
    }
    let k = floor_log2(n - 1)?;
    Some((n - (1 << k), k))
}

/// `G_{2n} = {n} ⊕ [0, 2^n]`, `G_{2n+1} = {k_n} ⊕ [0, i_n]`.
#[derive(Debug, Clone, Default)]
pub struct Thm64Family;

pub fn make_thm64_g() -> Thm64Family {
    Thm64Family
}

impl Thm64Family {
    /// `(even part, top of the odd interval)`.
    fn shape(&self, n: Nat) -> Result<(Nat, Nat)> {
        let h = n / 2;
        if n % 2 == 0 {
            return Ok((h, pow2(h)?));
        }
        let (i, k) = thm64_decompose(h).ok_or_else(|| Error::UndefinedIndex(n, "thm64-G".into()))?;
        Ok((k, i))
    }
}

impl IndexedFamily for Thm64Family {
    fn name(&self) -> String {
        "thm64-G".into()
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        let (even, top) = self.shape(n)?;
        Ok(SetSpec::join(SetSpec::explicit([even]), SetSpec::interval(0, top)))
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        let (even, top) = self.shape(n)?;
        if n % 2 == 1 && pow2(even).is_ok_and(|e| e == top) {
            return Ok(2 * even);
        }
        Ok(n)
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let mut u = 0;
        for &n in indices {
            let (even, top) = self.shape(n)?;
            u = u.max(2 * even).max(2 * top + 1);
        }
        Ok(u)
    }

    fn same_set(&self, a: Nat, b: Nat) -> Result<bool> {
        Ok(self.shape(a)? == self.shape(b)?)
    }

    fn manifest(&self) -> FamilyManifest {
        FamilyManifest::new("thm64-G")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::brute_min_index;

    #[test]
    fn thm64_examples() {
        let g = make_thm64_g();
        let m6 = g.member(6).unwrap().finite_elements().unwrap();
        let want: BTreeSet<Nat> = std::iter::once(6).chain((0..=8).map(|x| 2 * x + 1)).collect();
        assert_eq!(m6, want);
        assert_eq!(thm64_decompose(6), Some((2, 2)));
        assert!(matches!(g.member(1), Err(Error::UndefinedIndex(1, _))));
        assert!(matches!(g.member(3), Err(Error::UndefinedIndex(3, _))));
        // n = 4 = 2 + 2^1: i = 2 = 2^1 collides with G_2.
        assert_eq!(g.min_index(9).unwrap(), 2);
    }

    #[test]
    fn thm64_min_index_by_comparison() {
        let g = make_thm64_g();
        for n in (0..32).filter(|&n| n != 1 && n != 3) {
            let mi = g.min_index(n).unwrap();
            let brute = (0..=n)
                .filter(|&m| m != 1 && m != 3)
                .find(|&m| {
                    let u = g.separation_bound(&[m, n]).unwrap();
                    crate::engine::set_equal(&g.member(m).unwrap(), &g.member(n).unwrap(), u)
                })
                .unwrap();
            assert_eq!(mi, brute, "{n}");
        }
    }

    #[test]
    fn pcs_f_without_a_match_is_empty() {
        let reg = LearnerRegistry::standard();
        let f = make_pcs_f(&reg, 1, PolyCode(0), &PcsSearchBudget::default()).unwrap();
        assert_eq!(f.member(0).unwrap().finite_elements().unwrap(), BTreeSet::from([3, 4]));
        let other = if f.k == 3 { 4 } else { 3 };
        let (lo, _) = trap_interval(other).unwrap();
        assert_eq!(f.member(2 * other + 1).unwrap().finite_elements().unwrap(), BTreeSet::from([lo]));
        for n in 0..12 {
            assert_eq!(f.min_index(n).unwrap(), brute_min_index(&f, n).unwrap());
        }
    }
}
