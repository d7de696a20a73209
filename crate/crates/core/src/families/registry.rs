//! Closed-world stand-in for a program numbering: the learners that
//! diagonal constructions are built against, by stable id.

use crate::agents::{
    ConstantLearner, CsdOracleLearner, PairIntervalOracleLearner, PcsToyLearner, QueryThreeT,
    UpIntervalOracleLearner,
};
use crate::engine::Learner;
use crate::error::{Error, Result};
use crate::families::make_csd;

pub mod ids {
    pub const PCS_TOY_QUERY: u64 = 0;
    pub const PCS_TOY_ODD: u64 = 1;
    pub const PCS_TOY_EVEN: u64 = 2;
    pub const CSD_ORACLE: u64 = 3;
    pub const CONSTANT_ZERO: u64 = 4;
    pub const QUERY_THREE_T: u64 = 5;
    pub const UP_INTERVAL_ORACLE: u64 = 6;
    pub const PAIR_INTERVAL_ORACLE: u64 = 7;
}

pub type LearnerFactory = fn() -> Box<dyn Learner>;

#[derive(Clone, Copy)]
pub struct RegistryEntry {
    pub id: u64,
    pub name: &'static str,
    pub factory: LearnerFactory,
}

impl std::fmt::Debug for RegistryEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.id, self.name)
    }
}

#[derive(Debug, Clone)]
pub struct LearnerRegistry {
    entries: Vec<RegistryEntry>,
}

impl LearnerRegistry {
    pub fn standard() -> Self {
        use ids::*;
        let entries = vec![
            RegistryEntry {
                id: PCS_TOY_QUERY,
                name: "pcs_toy_query",
                factory: || Box::new(PcsToyLearner::new(false, true)),
            },
            RegistryEntry {
                id: PCS_TOY_ODD,
                name: "pcs_toy_odd",
                factory: || Box::new(PcsToyLearner::new(true, false)),
            },
            RegistryEntry {
                id: PCS_TOY_EVEN,
                name: "pcs_toy_even",
                factory: || Box::new(PcsToyLearner::new(false, false)),
            },
            RegistryEntry {
                id: CSD_ORACLE,
                name: "csd_oracle_learner",
                factory: || Box::new(CsdOracleLearner::new(make_csd())),
            },
            RegistryEntry {
                id: CONSTANT_ZERO,
                name: "constant",
                factory: || Box::new(ConstantLearner::new(0)),
            },
            RegistryEntry {
                id: QUERY_THREE_T,
                name: "query_three_t",
                factory: || Box::new(QueryThreeT::default()),
            },
            RegistryEntry {
                id: UP_INTERVAL_ORACLE,
                name: "up_interval_oracle",
                factory: || Box::new(UpIntervalOracleLearner::default()),
            },
            RegistryEntry {
                id: PAIR_INTERVAL_ORACLE,
                name: "pair_interval_oracle",
                factory: || Box::new(PairIntervalOracleLearner::default()),
            },
        ];
        LearnerRegistry { entries }
    }

    pub fn get(&self, id: u64) -> Result<&RegistryEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or(Error::UnknownLearner(id))
    }

    pub fn by_name(&self, name: &str) -> Result<&RegistryEntry> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::Unknown {
            kind: "learner",
            name: name.to_string(),
        })
    }

    pub fn make(&self, id: u64) -> Result<Box<dyn Learner>> {
        Ok((self.get(id)?.factory)())
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_dense_and_named_uniquely() {
        let reg = LearnerRegistry::standard();
        for (k, e) in reg.entries().iter().enumerate() {
            assert_eq!(e.id, k as u64);
            assert_eq!(reg.by_name(e.name).unwrap().id, e.id);
            assert_eq!(reg.make(e.id).unwrap().spec().name, e.name);
        }
        assert_eq!(reg.get(99).unwrap_err(), Error::UnknownLearner(99));
    }
}
