//! Reference learners and teachers, and the ready-made pairs that the
//! experiments run.

mod convert;
mod oracle;
mod rules;
mod search;
mod teachers;
mod toys;

use std::sync::Arc;

use crate::engine::{compose_pair, AgentSpec, ComposedLearner, IdentityTeacher, Learner, SessionAgents, Teacher};
use crate::error::Result;
use crate::families::{make_csd, PcsFFamily};

pub use convert::{
    convert_pmc_to_psdT, convert_psdT_to_pmc, CountDecodingRule, CountEncodingTeacher, PsdTToPmc,
};
pub use oracle::{
    CsdOracleLearner, MapLearner, MergedLearner, PairIntervalOracleLearner, PcsGOracleLearner,
    Pow2OracleLearner, UpIntervalOracleLearner,
};
pub use rules::{
    rule, CsdContentRule, FinitePsdRule, HaltingPsdRule, JoinRule, LeadCountRule, PmcMsdRule,
    Pow2PlainRule, Pow2PmcRule, Thm64PcsRule, TupleRule,
};
pub use search::{exp_query_search, query_bound, ExpSearch};
pub use teachers::{
    interval_level, trap_level, DedupTeacher, MsdTeacher, PcsFPairRule, PcsFPmcRule, PcsFTeacher,
    Pow2Teacher,
};
pub use toys::{ConstantLearner, PcsToyLearner, QueryThreeT};

/// Tabulated blocks for the content learner used in chain forcing.
pub const CSD_CONTENT_BLOCKS: usize = 9;

/// The marked-self-description learner with its teacher folded in.
pub fn msd_composed() -> ComposedLearner {
    compose_pair(rule(LeadCountRule::default()), Box::new(MsdTeacher::default()))
}

pub fn make_msd_pair() -> SessionAgents {
    SessionAgents::with_teacher(rule(LeadCountRule::default()), Box::new(MsdTeacher::default()))
}

/// Tuple-contents learner behind a teacher that forwards first occurrences.
pub fn make_tuple_teacher_pair(k: usize) -> SessionAgents {
    SessionAgents::with_teacher(rule(TupleRule::new(k)), Box::new(DedupTeacher::default()))
}

pub fn pow2_teacher_pair() -> SessionAgents {
    SessionAgents::with_teacher(rule(LeadCountRule::default()), Box::new(Pow2Teacher::default()))
}

#[allow(non_snake_case)]
pub fn make_pcsF_agents(family: Arc<PcsFFamily>) -> Result<SessionAgents> {
    let teacher = PcsFTeacher::new(family)?;
    Ok(SessionAgents::with_teacher(rule(PcsFPairRule::default()), Box::new(teacher)))
}

#[allow(non_snake_case)]
pub fn make_pcsF_pmc_learner(family: Arc<PcsFFamily>) -> Result<Box<dyn Learner>> {
    Ok(rule(PcsFPmcRule::new(family)?))
}

/// Column learner over the self-description family fed through the
/// identity teacher: the reference pair that chain forcing runs against.
pub fn csd_content_pair() -> ComposedLearner {
    compose_pair(
        rule(CsdContentRule::new(&make_csd(), CSD_CONTENT_BLOCKS)),
        Box::new(IdentityTeacher),
    )
}

/// Specs of every reference agent, for listing.
pub fn catalog() -> Vec<AgentSpec> {
    let csd = make_csd();
    let mut out: Vec<AgentSpec> = vec![
        rule(FinitePsdRule::default()).spec(),
        rule(Pow2PlainRule::default()).spec(),
        rule(Pow2PmcRule::default()).spec(),
        Pow2OracleLearner::default().spec(),
        rule(PmcMsdRule::default()).spec(),
        rule(LeadCountRule::default()).spec(),
        rule(Thm64PcsRule::default()).spec(),
        rule(HaltingPsdRule).spec(),
        rule(JoinRule::default()).spec(),
        rule(TupleRule::new(1)).spec(),
        rule(PcsFPairRule::default()).spec(),
        CsdOracleLearner::new(csd.clone()).spec(),
        MergedLearner::new(crate::families::CsdFamily::with_scale(3)).spec(),
        PcsGOracleLearner::default().spec(),
        UpIntervalOracleLearner::default().spec(),
        PairIntervalOracleLearner::default().spec(),
        QueryThreeT::default().spec(),
        ConstantLearner::new(0).spec(),
        PcsToyLearner::new(false, true).spec(),
        PcsToyLearner::new(true, false).spec(),
        PcsToyLearner::new(false, false).spec(),
        msd_composed().spec(),
        csd_content_pair().spec(),
    ];
    out.extend(
        [
            MsdTeacher::default().spec(),
            Pow2Teacher::default().spec(),
            DedupTeacher::default().spec(),
            IdentityTeacher.spec(),
        ]
        .into_iter(),
    );
    out
}
