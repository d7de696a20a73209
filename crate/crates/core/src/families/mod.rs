//! Indexed families of target sets, each with exact membership, analytic
//! minimal indices and a separation bound below which distinct members differ.

mod basic;
mod csd;
mod halting;
mod merged;
mod msd;
mod pcs;
pub mod registry;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::engine::{set_equal, SetSpec, Text};
use crate::error::Result;
use crate::Nat;

pub use basic::{make_basic_family, BasicFamily, BasicKind};
pub use csd::{make_csd, CsdBlock, CsdFamily, CsdMember};
pub use halting::{make_halting_family, tower_index, HaltingFamily};
pub use merged::{make_merged, MergedFamily};
pub use msd::{make_msd, make_msd_scaled, single_marker_set, MarkerVariant, MsdFamily};
pub use pcs::{make_pcs_f, make_thm64_g, thm64_decompose, trap_interval, PcsFFamily, PcsSearchBudget, Thm64Family, TrapParams};
pub use registry::{LearnerFactory, LearnerRegistry, RegistryEntry};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FamilyManifest {
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub tables: BTreeMap<String, Vec<String>>,
}

impl FamilyManifest {
    pub fn new(kind: impl Into<String>) -> Self {
        FamilyManifest {
            kind: kind.into(),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn table<T: ToString>(mut self, key: &str, values: impl IntoIterator<Item = T>) -> Self {
        self.tables
            .insert(key.to_string(), values.into_iter().map(|v| v.to_string()).collect());
        self
    }
}

pub trait IndexedFamily: Send + Sync {
    fn name(&self) -> String;
    fn member(&self, n: Nat) -> Result<SetSpec>;

    fn exact_membership(&self, n: Nat, x: Nat) -> Result<bool> {
        Ok(self.member(n)?.contains(x))
    }

    fn min_index(&self, n: Nat) -> Result<Nat>;

    /// A bound `U` such that members with the given indices that agree on
    /// `[0, U]` are equal.
    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let mut bound = 0;
        for &n in indices {
            let m = self.member(n)?;
            let top = match m.finite_elements() {
                Some(s) => s.last().copied().unwrap_or(0),
                None => n.saturating_mul(2).saturating_add(2),
            };
            bound = bound.max(top);
        }
        Ok(bound)
    }

    fn canonical_text(&self, n: Nat) -> Result<Text> {
        Text::canonical(self.member(n)?)
    }

    fn manifest(&self) -> FamilyManifest;

    /// Whether indices `a` and `b` name the same set.
    fn same_set(&self, a: Nat, b: Nat) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        let u = self.separation_bound(&[a, b])?;
        Ok(set_equal(&self.member(a)?, &self.member(b)?, u))
    }
}

/// Least index `<= n` with the same member as `n`, by direct comparison.
pub fn brute_min_index(family: &dyn IndexedFamily, n: Nat) -> Result<Nat> {
    for m in 0..n {
        if let Ok(true) = family.same_set(m, n) {
            return Ok(m);
        }
    }
    Ok(n)
}

/// One instance of every family, for listing.
pub fn catalog() -> Result<Vec<Box<dyn IndexedFamily>>> {
    let reg = LearnerRegistry::standard();
    let mut out: Vec<Box<dyn IndexedFamily>> = [
        BasicKind::UpIntervals,
        BasicKind::PairIntervals,
        BasicKind::TupleContents(1),
        BasicKind::FiniteCanonical,
        BasicKind::Pow2,
        BasicKind::JoinSingletons,
        BasicKind::PcsG,
    ]
    .into_iter()
    .map(|k| Box::new(make_basic_family(k)) as Box<dyn IndexedFamily>)
    .collect();
    out.push(Box::new(make_csd()));
    out.push(Box::new(make_msd(&reg, registry::ids::CSD_ORACLE, crate::codec::PolyCode(19), MarkerVariant::Single)?));
    out.push(Box::new(make_merged(&reg, registry::ids::CSD_ORACLE, crate::codec::PolyCode(19))?));
    out.push(Box::new(HaltingFamily::with_fixed([1, 3], 0)));
    out.push(Box::new(make_thm64_g()));
    out.push(Box::new(make_pcs_f(&reg, registry::ids::PCS_TOY_QUERY, crate::codec::PolyCode(2), &PcsSearchBudget::default())?));
    Ok(out)
}
