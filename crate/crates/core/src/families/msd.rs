use std::collections::BTreeSet;

use serde::Serialize;

use super::registry::LearnerRegistry;
use super::{FamilyManifest, IndexedFamily};
use crate::adversary::compute_q;
use crate::codec::{tuple, PolyCode};
use crate::descriptor::{build_descriptor, marker, Descriptor};
use crate::engine::{SetSpec, Text, TextKind};
use crate::error::{Error, Result};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MarkerVariant {
    /// The single marker `⟨0,1,1,0⟩`, repeated.
    Single,
    /// Markers `⟨2j,1,1,0⟩` for `j ≤ p(⟨m,p*,1⟩)`, each seen once.
    Multi,
}

pub fn single_marker_set() -> BTreeSet<Nat> {
    BTreeSet::from([marker(0).expect("small marker")])
}

/// Marked self-describing sets built against one registered learner.
#[derive(Debug, Clone)]
pub struct MsdFamily {
    pub learner_id: u64,
    pub poly: PolyCode,
    pub variant: MarkerVariant,
    pub scale: Nat,
    /// `⟨m, p*, 0⟩` and `⟨m, p*, 1⟩`.
    pub targeted: [Nat; 2],
    /// Length of the marker prefix the learner is simulated on.
    pub ell: Nat,
    pub q: Nat,
    pub floor: Nat,
    pub markers: BTreeSet<Nat>,
    targets: [Descriptor; 2],
}

pub fn make_msd(registry: &LearnerRegistry, learner_id: u64, poly: PolyCode, variant: MarkerVariant) -> Result<MsdFamily> {
    make_msd_scaled(registry, learner_id, poly, variant, 1)
}

/// As [`make_msd`], with the marker prefix length `p(scale·⟨m,p*,1⟩)`.
pub fn make_msd_scaled(
    registry: &LearnerRegistry,
    learner_id: u64,
    poly: PolyCode,
    variant: MarkerVariant,
    scale: Nat,
) -> Result<MsdFamily> {
    registry.get(learner_id)?;
    if !poly.is_increasing() {
        return Err(Error::InvalidArgument(format!("polynomial {} is not increasing", poly.0)));
    }
    let m = learner_id as Nat;
    let n0 = tuple(&[m, poly.0, 0])?;
    let n1 = tuple(&[m, poly.0, 1])?;
    let p_n1 = poly.eval(n1)?;
    let ell = poly.eval(
        scale
            .checked_mul(n1)
            .ok_or(Error::Overflow("scaling the marker prefix"))?,
    )?;
    let markers: BTreeSet<Nat> = match variant {
        MarkerVariant::Single => single_marker_set(),
        MarkerVariant::Multi => (0..=p_n1).map(marker).collect::<Result<_>>()?,
    };
    let prefix = marker_prefix(variant, &markers, ell)?;
    let q = compute_q(registry, learner_id, &prefix, &markers)?;
    // The markers themselves must stay below the floor for formula (1) to hold.
    let floor = q.max(*markers.last().expect("nonempty markers"));
    let targets = [
        build_descriptor(n0, 0, floor, &markers)?,
        build_descriptor(n1, 0, floor, &markers)?,
    ];
    Ok(MsdFamily {
        learner_id,
        poly,
        variant,
        scale,
        targeted: [n0, n1],
        ell,
        q,
        floor,
        markers,
        targets,
    })
}

/// The marker stream of length `ell` the learner sees before the floor.
pub(crate) fn marker_prefix(variant: MarkerVariant, markers: &BTreeSet<Nat>, ell: Nat) -> Result<Vec<Nat>> {
    let len = usize::try_from(ell).map_err(|_| Error::Overflow("marker prefix length"))?;
    Ok(match variant {
        MarkerVariant::Single => vec![*markers.first().expect("nonempty markers"); len],
        MarkerVariant::Multi => {
            let order: Vec<Nat> = markers.iter().copied().collect();
            (0..len).map(|t| order[t % order.len()]).collect()
        }
    })
}

impl MsdFamily {
    pub fn descriptor(&self, n: Nat) -> Result<Descriptor> {
        if let Some(k) = self.targeted.iter().position(|&t| t == n) {
            return Ok(self.targets[k].clone());
        }
        build_descriptor(n, 0, 0, &single_marker_set())
    }

    /// Marker prefix of length `p(⟨m,p*,1⟩)` shared by texts of both targets.
    pub fn shared_prefix(&self) -> Result<Vec<Nat>> {
        marker_prefix(self.variant, &self.markers, self.poly.eval(self.targeted[1])?)
    }

    /// Text of member `n` that starts with the shared marker prefix.
    pub fn prefixed_text(&self, n: Nat) -> Result<Text> {
        Text::prefixed(self.shared_prefix()?, TextKind::CanonicalIncreasing, self.member(n)?)
    }
}

impl IndexedFamily for MsdFamily {
    fn name(&self) -> String {
        format!("msd({:?}, learner {}, p {})", self.variant, self.learner_id, self.poly.0)
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        Ok(SetSpec::Descriptor(self.descriptor(n)?))
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        Ok(n)
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let mut top = 0;
        for &n in indices {
            top = top.max(*self.descriptor(n)?.elements.last().expect("nonempty"));
        }
        Ok(top)
    }

    fn same_set(&self, a: Nat, b: Nat) -> Result<bool> {
        Ok(a == b)
    }

    fn manifest(&self) -> FamilyManifest {
        FamilyManifest::new("msd")
            .param("learner_id", self.learner_id)
            .param("poly", self.poly.0)
            .param("variant", format!("{:?}", self.variant))
            .param("scale", self.scale)
            .param("ell", self.ell)
            .param("q", self.q)
            .param("floor", self.floor)
            .table("targeted", self.targeted)
            .table("marker_count", [self.markers.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{described_number, validate_descriptor};

    fn family(variant: MarkerVariant) -> MsdFamily {
        let reg = LearnerRegistry::standard();
        make_msd(&reg, crate::families::registry::ids::CSD_ORACLE, PolyCode(19), variant).unwrap()
    }

    #[test]
    fn untargeted_members_describe_their_index() {
        let f = family(MarkerVariant::Single);
        for n in 0..=100 {
            let d = f.descriptor(n).unwrap();
            assert!(validate_descriptor(&d.elements, 0).unwrap());
            assert_eq!(described_number(&d).unwrap(), n);
        }
    }

    #[test]
    fn targets_start_with_markers_only() {
        for variant in [MarkerVariant::Single, MarkerVariant::Multi] {
            let f = family(variant);
            for &n in &f.targeted {
                let d = f.descriptor(n).unwrap();
                assert_eq!(d.described, n);
                let low: BTreeSet<Nat> = d.elements.range(..=f.floor).copied().collect();
                assert_eq!(low, f.markers);
                assert!(f.floor >= f.q);
            }
        }
    }

    #[test]
    fn rejects_constant_polynomials() {
        let reg = LearnerRegistry::standard();
        assert!(make_msd(&reg, 3, PolyCode::encode(&[4]).unwrap(), MarkerVariant::Single).is_err());
        assert!(make_msd(&reg, 999, PolyCode(19), MarkerVariant::Single).is_err());
    }
}
