//! Executable property suites, one per module, with per-property counts.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adversary::{chain_force, msd_defeat, search_trap_sets, ChainBudget, ChainOutcome};
use crate::agents::{
    convert_pmc_to_psdT, convert_psdT_to_pmc, csd_content_pair, exp_query_search, make_msd_pair,
    make_tuple_teacher_pair, msd_composed, pow2_teacher_pair, query_bound, rule, CsdOracleLearner,
    FinitePsdRule, HaltingPsdRule, LeadCountRule, PairIntervalOracleLearner, Pow2OracleLearner,
    Pow2PmcRule, Pow2Teacher, UpIntervalOracleLearner,
};
use crate::codec::{
    canonical_decode, canonical_encode, decode_tuple, poly_encode, poly_eval, signed_int, signed_int_inv,
    tuple, CanonicalSetCode, PolyCode,
};
use crate::descriptor::{build_descriptor, described_number, marker, validate_descriptor, Recognizer, Status};
use crate::engine::{
    evaluate_run, run_session, set_equal, set_subset, Budget, Criterion, EventKind, Learner, SessionAgents,
    SessionTranscript, SetSpec, StagedSet, Teacher, Termination, Text, TextKind,
};
use crate::error::{Error, Result};
use crate::families::registry::{ids, LearnerRegistry};
use crate::families::{
    make_basic_family, make_csd, make_merged, make_msd, make_pcs_f, make_thm64_g, trap_interval, BasicKind,
    HaltingFamily, IndexedFamily, MarkerVariant, PcsSearchBudget,
};
use crate::Nat;

pub const SUITES: [&str; 6] = ["codec", "descriptor", "engine", "families", "agents", "adversary"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub suite: &'static str,
    pub property: String,
    pub cases: u64,
    pub failures: u64,
    /// The first failing case.
    pub first_failure: Option<String>,
}

impl PropertyCheck {
    fn new(suite: &'static str, property: &str) -> Self {
        PropertyCheck {
            suite,
            property: property.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub checks: Vec<PropertyCheck>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PropertyCheck::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {}::{} ({} cases, {} failures)\n",
                c.suite, c.property, c.cases, c.failures
            ));
            if let Some(f) = &c.first_failure {
                out.push_str(&format!("     first failure: {f}\n"));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!("{} properties, {} failed\n", self.checks.len(), failed));
        out
    }
}

pub fn verify_suite(name: &str) -> Result<SuiteSummary> {
    let checks = match name {
        "codec" => codec()?,
        "descriptor" => descriptor(&DescriptorSweep::default())?,
        "engine" => engine()?,
        "families" => families()?,
        "agents" => agents()?,
        "adversary" => adversary()?,
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(verify_suite(s)?.checks);
            }
            all
        }
        other => {
            return Err(Error::Unknown {
                kind: "suite",
                name: other.to_string(),
            })
        }
    };
    Ok(SuiteSummary { checks })
}

fn codec() -> Result<Vec<PropertyCheck>> {
    let mut out = codec_roundtrips();
    out.extend(codec_polys_and_sets()?);
    Ok(out)
}

/// Tuple and signed-integer roundtrips.
pub fn codec_roundtrips() -> Vec<PropertyCheck> {
    let mut rt = PropertyCheck::new("codec", "tuple roundtrip, n < 10^5, arity 1-4");
    for n in 0..100_000 {
        for k in 1..=4 {
            let xs = decode_tuple(n, k);
            let ok = tuple(&xs).ok() == Some(n) && xs.iter().all(|&x| x <= n);
            rt.case(ok, || format!("n={n} k={k}"));
        }
    }
    let mut si = PropertyCheck::new("codec", "signed_int inverts signed_int_inv on [-10^4, 10^4]");
    for z in -10_000i128..=10_000 {
        si.case(signed_int(signed_int_inv(z)) == z, || format!("z={z}"));
    }
    let mut inj = PropertyCheck::new("codec", "signed_int injective on [0, 2*10^4]");
    let mut seen = BTreeSet::new();
    for n in 0..=20_000 {
        inj.case(seen.insert(signed_int(n)), || format!("n={n}"));
    }
    vec![rt, si, inj]
}

fn codec_polys_and_sets() -> Result<Vec<PropertyCheck>> {
    let mut pe = PropertyCheck::new("codec", "poly_eval matches direct evaluation");
    for deg in 0..4u32 {
        let count = 8usize.pow(deg + 1);
        for idx in 0..count {
            let coeffs: Vec<Nat> = (0..=deg).map(|d| ((idx / 8usize.pow(d)) % 8) as Nat).collect();
            let code = poly_encode(&coeffs)?;
            for x in 0..6 {
                let direct: Nat = coeffs.iter().rev().fold(0, |acc, &c| acc * x + c);
                pe.case(poly_eval(code, x).ok() == Some(direct), || format!("{coeffs:?} at {x}"));
            }
        }
    }
    let mut cc = PropertyCheck::new("codec", "canonical decode(encode(S)) = S, S in [0,20]");
    for mask in 0u32..(1 << 21) {
        let s = canonical_decode(CanonicalSetCode(mask as Nat));
        let bits = s.iter().all(|&b| b < 21 && mask >> b & 1 == 1) && s.len() == mask.count_ones() as usize;
        let ok = bits && canonical_encode(&s).ok() == Some(CanonicalSetCode(mask as Nat));
        cc.case(ok, || format!("mask={mask}"));
    }
    Ok(vec![pe, cc])
}

/// Parameter grid of the descriptor suite.
#[derive(Debug, Clone)]
pub struct DescriptorSweep {
    pub max_n: Nat,
    pub floors: Vec<Nat>,
    /// Marker counts of the multi-marker shape.
    pub marker_counts: Vec<Nat>,
    /// Permutations are exhaustive up to this many elements.
    pub exhaustive_elements: usize,
    pub samples: usize,
}

impl Default for DescriptorSweep {
    fn default() -> Self {
        DescriptorSweep {
            max_n: 200,
            floors: vec![0, 1_000, 10_000],
            marker_counts: vec![1, 2, 4, 6, 10],
            exhaustive_elements: 8,
            samples: 100,
        }
    }
}

/// Feeds `order` to a fresh recognizer; true when it completes with `n`
/// exactly on the last element and never reports completion or corruption
/// before.
fn fires_on_last(order: &[Nat], n: Nat) -> bool {
    let mut r = Recognizer::new(0);
    for (k, &x) in order.iter().enumerate() {
        let s = r.push(x);
        let last = k + 1 == order.len();
        match s {
            Status::Complete(m) if last => return m == n,
            Status::Partial if !last => {}
            _ => return false,
        }
    }
    false
}

pub fn descriptor(sweep: &DescriptorSweep) -> Result<Vec<PropertyCheck>> {
    let mut valid = PropertyCheck::new("descriptor", "built descriptors validate and describe n");
    let mut fire = PropertyCheck::new("descriptor", "recognizer completes exactly on the final element");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut shapes: Vec<(String, BTreeSet<Nat>)> = vec![("single".into(), BTreeSet::from([marker(0)?]))];
    for &m in &sweep.marker_counts {
        shapes.push((format!("multi{m}"), (0..m).map(marker).collect::<Result<_>>()?));
    }
    for (label, markers) in &shapes {
        for &floor in &sweep.floors {
            for n in 0..=sweep.max_n {
                let d = build_descriptor(n, 0, floor, markers)?;
                let ok = validate_descriptor(&d.elements, 0)?
                    && described_number(&d).ok() == Some(n)
                    && d.elements.iter().filter(|x| !markers.contains(x)).all(|&x| x > floor);
                valid.case(ok, || format!("n={n} floor={floor} {label}"));
                let mut els: Vec<Nat> = d.elements.iter().copied().collect();
                if els.len() <= sweep.exhaustive_elements {
                    let mut prefix = Vec::with_capacity(els.len());
                    every_order(&Recognizer::new(0), &mut els, &mut prefix, n, &mut fire);
                } else {
                    for _ in 0..sweep.samples {
                        els.shuffle(&mut rng);
                        fire.case(fires_on_last(&els, n), || format!("n={n} {els:?}"));
                    }
                }
            }
        }
    }
    Ok(vec![valid, fire])
}

/// Every ordering of `rest` after `prefix`, sharing recognizer state along
/// common prefixes. One case per complete ordering.
fn every_order(r: &Recognizer, rest: &mut Vec<Nat>, prefix: &mut Vec<Nat>, n: Nat, check: &mut PropertyCheck) {
    for i in 0..rest.len() {
        let x = rest.swap_remove(i);
        let mut next = r.clone();
        let status = next.push(x);
        prefix.push(x);
        let ok = match status {
            Status::Partial => !rest.is_empty(),
            Status::Complete(m) => rest.is_empty() && m == n,
            _ => false,
        };
        if !ok {
            let orders = (1..=rest.len() as u64).product::<u64>();
            for _ in 0..orders {
                check.case(false, || format!("n={n} prefix {prefix:?}"));
            }
        } else if rest.is_empty() {
            check.case(true, String::new);
        } else {
            every_order(&next, rest, prefix, n, check);
        }
        prefix.pop();
        rest.push(x);
        let last = rest.len() - 1;
        rest.swap(i, last);
    }
}

/// Emits whatever it is told to, seen or not.
struct LeakyTeacher;

impl Teacher for LeakyTeacher {
    fn spec(&self) -> crate::engine::AgentSpec {
        crate::engine::AgentSpec::new("leaky_teacher")
    }

    fn on_input(&mut self, datum: Nat) -> Vec<Nat> {
        vec![datum + 1]
    }
}

fn sample_sessions() -> Result<Vec<(String, SessionTranscript, SetSpec)>> {
    let mut out = Vec::new();
    let pow2 = make_basic_family(BasicKind::Pow2);
    for n in 0..6 {
        let t = pow2.member(n)?;
        let b = Budget::for_size(1 + (1 << n));
        for seed in 0..3 {
            let text = Text::seeded(t.clone(), seed)?;
            out.push((format!("pow2 teacher n={n}"), pow2_teacher_pair().run(None, &text, &b), t.clone()));
            let mut o = Pow2OracleLearner::default();
            out.push((format!("pow2 oracle n={n}"), run_session(&mut o, None, Some(&t), &text, &b), t.clone()));
            let mut p = rule(Pow2PmcRule::default());
            out.push((format!("pow2 pmc n={n}"), run_session(p.as_mut(), None, None, &text, &b), t.clone()));
        }
    }
    let reg = LearnerRegistry::standard();
    let msd = make_msd(&reg, ids::CSD_ORACLE, PolyCode(19), MarkerVariant::Single)?;
    for n in 0..8 {
        let t = msd.member(n)?;
        let b = Budget::new(100_000, 64 + 4 * n as usize, 8 + n as usize);
        for seed in 0..3 {
            let text = Text::seeded(t.clone(), seed)?;
            out.push((format!("msd pair n={n}"), make_msd_pair().run(None, &text, &b), t.clone()));
        }
    }
    Ok(out)
}

fn engine() -> Result<Vec<PropertyCheck>> {
    let sessions = sample_sessions()?;
    let mut det = PropertyCheck::new("engine", "identical runs give identical transcripts");
    let pow2 = make_basic_family(BasicKind::Pow2);
    for n in 0..6 {
        let t = pow2.member(n)?;
        let text = Text::seeded(t.clone(), 7)?;
        let b = Budget::for_size(1 + (1 << n));
        let a = pow2_teacher_pair().run(None, &text, &b).to_jsonl();
        let c = pow2_teacher_pair().run(None, &text, &b).to_jsonl();
        det.case(a == c, || format!("pow2 teacher n={n}"));
    }

    let mut contract = PropertyCheck::new("engine", "teacher output only repeats seen input");
    for (label, t, target) in &sessions {
        let ok = !matches!(t.termination, Termination::ContractViolation(_))
            && t.events.iter().all(|e| match &e.kind {
                EventKind::TeacherEmit { output, .. } => output.iter().all(|&x| target.contains(x)),
                _ => true,
            });
        contract.case(ok, || label.clone());
    }
    let target = SetSpec::interval(0, 10);
    let text = Text::canonical(target.clone())?;
    let mut l = rule(LeadCountRule::default());
    let mut leaky = LeakyTeacher;
    let t = run_session(l.as_mut(), Some(&mut leaky), None, &text, &Budget::new(1000, 20, 0));
    contract.case(matches!(t.termination, Termination::ContractViolation(_)), || {
        "leaky teacher not caught".into()
    });

    let mut ledger = PropertyCheck::new("engine", "ledger matches the event log");
    let mut fidelity = PropertyCheck::new("engine", "logged answers equal exact membership");
    for (label, t, target) in &sessions {
        let queries = t.events.iter().filter(|e| matches!(e.kind, EventKind::Query { .. })).count() as u64;
        let changes = t.hypotheses.windows(2).filter(|w| w[0] != w[1]).count() as u64;
        let ok = t.ledger.distinct_data <= t.ledger.reads
            && t.ledger.mind_changes == changes
            && t.ledger.oracle_queries == queries;
        ledger.case(ok, || label.clone());
        for e in &t.events {
            if let EventKind::Query { x, answer } = e.kind {
                fidelity.case(target.contains(x) == answer, || format!("{label}: query {x}"));
            }
        }
    }

    let mut compose = PropertyCheck::new("engine", "pair and composed learner emit the same stream");
    let reg = LearnerRegistry::standard();
    let msd = make_msd(&reg, ids::CSD_ORACLE, PolyCode(19), MarkerVariant::Single)?;
    for n in 0..10 {
        let t = msd.member(n)?;
        let b = Budget::new(100_000, 64 + 4 * n as usize, 8 + n as usize);
        for seed in 0..3 {
            let text = Text::seeded(t.clone(), seed)?;
            let pair = make_msd_pair().run(None, &text, &b);
            let mut c = msd_composed();
            let comp = run_session(&mut c, None, None, &text, &b);
            compose.case(pair.hypotheses == comp.hypotheses, || format!("msd n={n} seed={seed}"));
        }
    }
    Ok(vec![det, contract, ledger, fidelity, compose])
}

fn min_index_consistent(check: &mut PropertyCheck, family: &dyn IndexedFamily, indices: impl Iterator<Item = Nat>) {
    for n in indices {
        let ok = (|| -> Result<bool> {
            let m = family.min_index(n)?;
            let u = family.separation_bound(&[m, n])?;
            Ok(m <= n && set_equal(&family.member(m)?, &family.member(n)?, u))
        })()
        .unwrap_or(false);
        check.case(ok, || format!("{} n={n}", family.name()));
    }
}

fn families() -> Result<Vec<PropertyCheck>> {
    let mut mi = PropertyCheck::new("families", "member(min_index(n)) equals member(n)");
    for kind in [
        BasicKind::UpIntervals,
        BasicKind::PairIntervals,
        BasicKind::TupleContents(1),
        BasicKind::TupleContents(2),
        BasicKind::FiniteCanonical,
        BasicKind::Pow2,
        BasicKind::JoinSingletons,
        BasicKind::PcsG,
    ] {
        let top = if kind == BasicKind::Pow2 { 16 } else { 120 };
        min_index_consistent(&mut mi, &make_basic_family(kind), 0..top);
    }
    let csd = make_csd();
    min_index_consistent(&mut mi, &csd, 0..csd.a(7)?);
    let csd3 = crate::families::CsdFamily::with_scale(3);
    min_index_consistent(&mut mi, &csd3, 0..csd3.a(6)?);
    for w in [vec![], vec![1, 3], vec![0, 2, 5]] {
        min_index_consistent(&mut mi, &HaltingFamily::with_fixed(w, 0), 0..300);
    }
    min_index_consistent(&mut mi, &make_thm64_g(), (0..32).filter(|&n| n != 1 && n != 3));
    let reg = LearnerRegistry::standard();
    let merged = make_merged(&reg, ids::CSD_ORACLE, PolyCode(19))?;
    min_index_consistent(&mut mi, &merged, 0..40);

    let mut msd_desc = PropertyCheck::new("families", "msd members describe their index");
    let msd = make_msd(&reg, ids::CSD_ORACLE, PolyCode(19), MarkerVariant::Single)?;
    let mut sets = BTreeSet::new();
    let mut indices: Vec<Nat> = (0..=100).collect();
    indices.extend(msd.targeted);
    for n in indices {
        let d = msd.descriptor(n)?;
        let distinct = sets.insert(d.elements.clone());
        msd_desc.case(described_number(&d).ok() == Some(n) && distinct, || format!("n={n}"));
    }

    let mut chains = PropertyCheck::new("families", "csd chains increase strictly");
    for fam in [&csd, &csd3] {
        for i in 0..7 {
            let b = fam.block(i)?;
            if b.p == 0 {
                continue;
            }
            let chain = fam.chain(i)?;
            for w in chain.windows(2) {
                let (a, c) = (fam.member(w[0])?, fam.member(w[1])?);
                let u = fam.separation_bound(&[w[0], w[1]])?;
                chains.case(set_subset(&a, &c, u) && !set_equal(&a, &c, u), || format!("block {i}: {w:?}"));
            }
        }
    }

    let mut traps = PropertyCheck::new("families", "resolved trap sets satisfy their invariants");
    let budget = PcsSearchBudget::default();
    for k in 0..=5 {
        let (id, p) = crate::codec::unpair(k);
        let Ok(id) = u64::try_from(id) else { continue };
        if reg.get(id).is_err() {
            continue;
        }
        let f = make_pcs_f(&reg, id, PolyCode(p), &budget)?;
        let (lo, hi) = trap_interval(k)?;
        let size = PolyCode(p).eval(2 * k + 1)? as usize;
        let t = &f.traps;
        let ok = !t.resolved
            || t.e.is_empty() && t.d.is_empty()
            || t.e.is_subset(&t.d)
                && t.e.contains(&lo)
                && t.e.len() == size + 1
                && t.d.len() == 2 * size + 1
                && t.d.iter().all(|x| (lo..=hi).contains(x));
        traps.case(ok, || format!("k={k}"));
    }

    let mut staged = PropertyCheck::new("families", "staged membership is monotone in the stage");
    let w = StagedSet::new("evens-by-stage", 0, |s| (0..s as Nat).map(|x| 2 * x).collect());
    let fam = crate::families::make_halting_family(w.clone());
    for n in (1..40).step_by(2) {
        let SetSpec::Staged(st) = fam.member(n)? else {
            staged.case(false, || format!("n={n} not staged"));
            continue;
        };
        for s in 0..20 {
            staged.case(st.at(s).is_subset(&st.at(s + 1)), || format!("n={n} s={s}"));
        }
    }
    Ok(vec![mi, msd_desc, chains, traps, staged])
}

type AgentFactory<'a> = &'a dyn Fn() -> SessionAgents;

/// Canonical, 25 seeded, and 5 padded texts.
fn battery(target: &SetSpec) -> Result<Vec<(String, Text)>> {
    let mut out = vec![("canonical".to_string(), Text::canonical(target.clone())?)];
    for s in 0..25 {
        out.push((format!("seed{s}"), Text::seeded(target.clone(), s)?));
    }
    let first = target.next_member(None).expect("nonempty");
    let members = target.members_upto(first.saturating_add(64));
    let last = *members.last().expect("nonempty");
    for (k, (x, count)) in [(first, 1), (first, 7), (last, 3), (last, 20), (first, 50)].into_iter().enumerate() {
        let cont = if k % 2 == 0 {
            TextKind::CanonicalIncreasing
        } else {
            TextKind::SeededPermutation(k as u64)
        };
        out.push((format!("pad{k}"), Text::repeat_pad(x, count, cont, target.clone())?));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn passes_everywhere(
    check: &mut PropertyCheck,
    agents: AgentFactory,
    oracle: bool,
    family: &dyn IndexedFamily,
    indices: &[Nat],
    criterion: Criterion,
    poly: PolyCode,
    budget: &dyn Fn(&SetSpec) -> Budget,
) -> Result<()> {
    for &n in indices {
        let target = family.member(n)?;
        for (label, text) in battery(&target)? {
            let t = agents().run(oracle.then_some(&target), &text, &budget(&target));
            let v = evaluate_run(&t, family, n, poly, criterion);
            check.case(v.passed(), || format!("{} n={n} {label}: {v:?}", family.name()));
        }
    }
    Ok(())
}

fn finite_budget(target: &SetSpec) -> Budget {
    Budget::for_size(target.finite_elements().map_or(64, |s| s.len()))
}

fn agents() -> Result<Vec<PropertyCheck>> {
    let mut pos = PropertyCheck::new("agents", "positive-result agents pass their criterion");
    let linear = PolyCode::encode(&[1, 1])?;
    let plus2 = PolyCode::encode(&[2, 1])?;

    let fin = make_basic_family(BasicKind::FiniteCanonical);
    let idx: Vec<Nat> = (0..120).filter(|&n| !fin.member(n).map(|m| m.is_empty()).unwrap_or(true)).collect();
    passes_everywhere(&mut pos, &|| SessionAgents::bare(rule(FinitePsdRule::default())), false, &fin, &idx, Criterion::Psd, linear, &finite_budget)?;

    let pow2 = make_basic_family(BasicKind::Pow2);
    let idx: Vec<Nat> = (0..8).collect();
    let cube = PolyCode::encode(&[8, 12, 6, 1])?;
    passes_everywhere(&mut pos, &|| SessionAgents::bare(Box::new(Pow2OracleLearner::default())), true, &pow2, &idx, Criterion::Prt, cube, &finite_budget)?;
    passes_everywhere(&mut pos, &pow2_teacher_pair, false, &pow2, &idx, Criterion::Psd, plus2, &finite_budget)?;
    passes_everywhere(&mut pos, &|| SessionAgents::bare(rule(Pow2PmcRule::default())), false, &pow2, &idx, Criterion::Pmc, linear, &finite_budget)?;

    let reg = LearnerRegistry::standard();
    let msd = make_msd(&reg, ids::CSD_ORACLE, PolyCode(19), MarkerVariant::Single)?;
    let idx: Vec<Nat> = (0..16).collect();
    let msd_budget = |t: &SetSpec| {
        let s = t.finite_elements().map_or(0, |e| e.len()) + 64;
        Budget::new(1_000_000, 4 * s + 64, s + 16)
    };
    passes_everywhere(&mut pos, &make_msd_pair, false, &msd, &idx, Criterion::Prt, PolyCode::encode(&[2, 2])?, &msd_budget)?;

    for w in [vec![], vec![1, 3]] {
        let fam = HaltingFamily::with_fixed(w, 0);
        let mut idx: Vec<Nat> = (0..=10).map(|i| 2 * i + 1).collect();
        idx.extend((0..=6).map(|i| crate::families::tower_index(i).expect("fits")));
        passes_everywhere(&mut pos, &|| SessionAgents::bare(rule(HaltingPsdRule)), false, &fam, &idx, Criterion::Psd, linear, &|_| Budget::for_size(2))?;
    }

    let up = make_basic_family(BasicKind::UpIntervals);
    let idx: Vec<Nat> = (0..30).collect();
    passes_everywhere(&mut pos, &|| SessionAgents::bare(Box::new(UpIntervalOracleLearner::default())), true, &up, &idx, Criterion::Prt, PolyCode::encode(&[3, 1])?, &|_| Budget::new(100_000, 64, 0))?;

    let pairs = make_basic_family(BasicKind::PairIntervals);
    let idx: Vec<Nat> = (0..80).filter(|&n| !pairs.member(n).map(|m| m.is_empty()).unwrap_or(true)).collect();
    passes_everywhere(&mut pos, &|| SessionAgents::bare(Box::new(PairIntervalOracleLearner::default())), true, &pairs, &idx, Criterion::Psd, PolyCode::encode(&[8, 2])?, &finite_budget)?;

    let csd = make_csd();
    let idx: Vec<Nat> = (0..csd.a(6)?).collect();
    passes_everywhere(&mut pos, &|| SessionAgents::bare(Box::new(CsdOracleLearner::new(make_csd()))), true, &csd, &idx, Criterion::Psd, PolyCode::encode(&[4, 4])?, &finite_budget)?;

    let tuples = make_basic_family(BasicKind::TupleContents(1));
    let idx: Vec<Nat> = (0..200).filter(|&n| {
        let c = decode_tuple(n, 2);
        c[0] != c[1]
    }).collect();
    passes_everywhere(&mut pos, &|| make_tuple_teacher_pair(1), false, &tuples, &idx, Criterion::Psd, plus2, &finite_budget)?;

    let mut search = PropertyCheck::new("agents", "exponential search within its query bound");
    for base in [2, 3] {
        for n in 0..=4096 {
            let (found, q) = exp_query_search(&mut |x| x <= n, base);
            search.case(found == n && q as Nat <= query_bound(n, base), || format!("n={n} a={base}"));
        }
    }

    let mut msd_stream = PropertyCheck::new("agents", "msd pair counts up to n and stops");
    for n in 0..30 {
        let t = msd.member(n)?;
        let b = msd_budget(&t);
        let text = Text::seeded(t.clone(), n as u64)?;
        let tr = make_msd_pair().run(None, &text, &b);
        let ok = tr.final_hypothesis() == Some(n)
            && tr.ledger.mind_changes as Nat <= n
            && tr.hypotheses.windows(2).all(|w| w[0] <= w[1]);
        msd_stream.case(ok, || format!("n={n}"));
    }

    let mut conv = PropertyCheck::new("agents", "conversions keep their resource shape");
    for n in 0..8 {
        let t = pow2.member(n)?;
        let b = finite_budget(&t);
        for seed in 0..5 {
            let text = Text::seeded(t.clone(), seed)?;
            let mut star = convert_psdT_to_pmc(rule(LeadCountRule::default()), Box::new(Pow2Teacher::default()));
            let tr = run_session(&mut star, None, None, &text, &b);
            conv.case(tr.ledger.mind_changes <= star.extensions(), || format!("psdT_to_pmc n={n} seed={seed}"));
            let (l, teacher) = convert_pmc_to_psdT(rule(Pow2PmcRule::default()));
            let mut l: Box<dyn Learner> = Box::new(l);
            let mut teacher: Box<dyn Teacher> = Box::new(teacher);
            let tr = run_session(l.as_mut(), Some(teacher.as_mut()), None, &text, &b);
            conv.case(tr.ledger.distinct_data <= 2, || format!("pmc_to_psdT n={n} seed={seed}"));
        }
    }
    Ok(vec![pos, search, msd_stream, conv])
}

fn adversary() -> Result<Vec<PropertyCheck>> {
    let reg = LearnerRegistry::standard();
    let mut ident = PropertyCheck::new("adversary", "defeat transcripts identical through p(n1)");
    let mut dominated = PropertyCheck::new("adversary", "q bounds every query on the shared prefix");
    for id in [ids::CSD_ORACLE, ids::UP_INTERVAL_ORACLE, ids::PAIR_INTERVAL_ORACLE, ids::CONSTANT_ZERO, ids::QUERY_THREE_T] {
        let r = msd_defeat(&reg, id, PolyCode(19), MarkerVariant::Single)?;
        ident.case(r.identical && r.defeated, || format!("learner {id}"));
        for events in &r.transcripts {
            let top = events
                .iter()
                .filter_map(|e| match e.kind {
                    EventKind::Query { x, .. } => Some(x),
                    _ => None,
                })
                .max()
                .unwrap_or(0);
            dominated.case(top <= r.q, || format!("learner {id}: query {top} > q {}", r.q));
        }
    }

    let mut replay = PropertyCheck::new("adversary", "forced mind changes replay exactly");
    let csd = make_csd();
    let pair = || SessionAgents::bare(Box::new(csd_content_pair()));
    for i in 0..7 {
        let chain = csd.chain(i)?;
        let r = chain_force(&pair, &csd, &chain, &ChainBudget::default())?;
        if let ChainOutcome::Forced { mind_changes } = r.outcome {
            let last = csd.member(*chain.last().expect("nonempty"))?;
            let text = Text::prefixed(r.prefix.clone(), TextKind::CanonicalIncreasing, last)?;
            let t = pair().run(None, &text, &Budget::new(1_000_000, r.prefix.len(), 0));
            replay.case(t.ledger.mind_changes == mind_changes, || format!("block {i}"));
        }
    }

    let mut repro = PropertyCheck::new("adversary", "trap searches are reproducible");
    let budget = PcsSearchBudget::default();
    for k in 0..=5 {
        let (id, p) = crate::codec::unpair(k);
        let Ok(id) = u64::try_from(id) else { continue };
        if reg.get(id).is_err() {
            continue;
        }
        let a = search_trap_sets(&reg, id, PolyCode(p), k, &budget)?;
        let b = search_trap_sets(&reg, id, PolyCode(p), k, &budget)?;
        repro.case(a == b, || format!("k={k}"));
    }
    Ok(vec![ident, dominated, replay, repro])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_order_counts_orderings() {
        let d = build_descriptor(5, 0, 0, &BTreeSet::from([marker(0).unwrap(), marker(1).unwrap()])).unwrap();
        let mut els: Vec<Nat> = d.elements.iter().copied().collect();
        let mut c = PropertyCheck::new("descriptor", "t");
        every_order(&Recognizer::new(0), &mut els, &mut Vec::new(), 5, &mut c);
        assert_eq!((c.cases, c.failures), (24, 0));
        let mut c = PropertyCheck::new("descriptor", "t");
        every_order(&Recognizer::new(0), &mut els, &mut Vec::new(), 6, &mut c);
        assert_eq!((c.cases, c.failures), (24, 24));
    }

    #[test]
    fn unknown_suite() {
        assert!(verify_suite("nope").is_err());
    }
}
