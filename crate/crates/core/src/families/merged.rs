use super::csd::CsdFamily;
use super::msd::{make_msd_scaled, MarkerVariant, MsdFamily};
use super::registry::LearnerRegistry;
use super::{FamilyManifest, IndexedFamily};
use crate::codec::PolyCode;
use crate::engine::SetSpec;
use crate::error::Result;
use crate::Nat;

/// `H_{2i} = G_i` (column self-describing, tripled constants) and
/// `H_{2i+1} = F_i` (marked self-describing, tripled marker prefix).
#[derive(Debug, Clone)]
pub struct MergedFamily {
    pub csd: CsdFamily,
    pub msd: MsdFamily,
}

pub fn make_merged(registry: &LearnerRegistry, learner_id: u64, poly: PolyCode) -> Result<MergedFamily> {
    Ok(MergedFamily {
        csd: CsdFamily::with_scale(3),
        msd: make_msd_scaled(registry, learner_id, poly, MarkerVariant::Single, 3)?,
    })
}

impl IndexedFamily for MergedFamily {
    fn name(&self) -> String {
        format!("merged(learner {}, p {})", self.msd.learner_id, self.msd.poly.0)
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        if n % 2 == 0 {
            self.csd.member(n / 2)
        } else {
            self.msd.member(n / 2)
        }
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        if n % 2 == 0 {
            Ok(2 * self.csd.min_index(n / 2)?)
        } else {
            Ok(n)
        }
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let evens: Vec<Nat> = indices.iter().filter(|n| *n % 2 == 0).map(|n| n / 2).collect();
        let odds: Vec<Nat> = indices.iter().filter(|n| *n % 2 == 1).map(|n| n / 2).collect();
        Ok(self.csd.separation_bound(&evens)?.max(self.msd.separation_bound(&odds)?))
    }

    fn same_set(&self, a: Nat, b: Nat) -> Result<bool> {
        Ok(match (a % 2, b % 2) {
            (0, 0) => self.csd.min_index(a / 2)? == self.csd.min_index(b / 2)?,
            (1, 1) => a == b,
            _ => false,
        })
    }

    fn manifest(&self) -> FamilyManifest {
        let mut m = FamilyManifest::new("merged");
        for (k, v) in self.csd.manifest().tables {
            m.tables.insert(format!("even.{k}"), v);
        }
        for (k, v) in self.msd.manifest().params {
            m.params.insert(format!("odd.{k}"), v);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_discriminates_parity() {
        let reg = LearnerRegistry::standard();
        let h = make_merged(&reg, crate::families::registry::ids::CSD_ORACLE, PolyCode(19)).unwrap();
        for i in 0..=10 {
            assert!(h.member(2 * i).unwrap().contains(0));
            assert!(!h.member(2 * i + 1).unwrap().contains(0));
            assert_eq!(h.min_index(2 * i).unwrap(), 2 * h.csd.min_index(i).unwrap());
        }
    }
}
