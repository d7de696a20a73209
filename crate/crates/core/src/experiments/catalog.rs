use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{fit_line, ExperimentConfig, ExperimentOutput, Recorder};
use crate::adversary::{alpha_prefix, chain_force, msd_defeat as defeat, repeat_prefix_texts, ChainBudget, ChainOutcome};
use crate::agents::{
    convert_pmc_to_psdT, convert_psdT_to_pmc, csd_content_pair, make_msd_pair, make_pcsF_agents,
    make_pcsF_pmc_learner, msd_composed, pow2_teacher_pair, rule, CsdOracleLearner, FinitePsdRule,
    HaltingPsdRule, LeadCountRule, MergedLearner, PcsGOracleLearner, Pow2OracleLearner, Pow2PlainRule,
    Pow2PmcRule, Pow2Teacher, Thm64PcsRule,
};
use crate::codec::{pow2, unpair, PolyCode};
use crate::engine::{
    check_characteristic_sample, evaluate_run, run_session, Budget, Criterion, Learner, SampleBounds,
    SessionAgents, SessionTranscript, SetSpec, Text, Verdict,
};
use crate::error::Result;
use crate::families::registry::{ids, LearnerRegistry};
use crate::families::{
    make_basic_family, make_csd, make_merged, make_msd, make_pcs_f, make_thm64_g, tower_index, BasicKind,
    HaltingFamily, IndexedFamily, MarkerVariant, PcsSearchBudget,
};
use crate::Nat;

/// `x + 1`.
const LINEAR: u64 = 19;

fn poly_of(cfg: &ExperimentConfig, default: u64) -> PolyCode {
    PolyCode(cfg.poly.unwrap_or(default) as Nat)
}

fn affine(c0: Nat) -> PolyCode {
    PolyCode::encode(&[c0, 1]).expect("small code")
}

fn size_of(s: &SetSpec) -> usize {
    s.finite_elements().map_or(0, |e| e.len())
}

/// The canonical text, then `extra` seeded permutations, labelled.
fn texts(target: &SetSpec, seed: u64, extra: usize) -> Result<Vec<(String, Text)>> {
    let mut out = vec![("canonical".to_string(), Text::canonical(target.clone())?)];
    for j in 0..extra as u64 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(j);
        out.push((format!("seed{s}"), Text::seeded(target.clone(), s)?));
    }
    Ok(out)
}

fn correct(t: &SessionTranscript, family: &dyn IndexedFamily, n: Nat) -> bool {
    t.converged && t.final_hypothesis().is_some_and(|h| family.same_set(h, n).unwrap_or(false))
}

fn opt(h: Option<Nat>) -> String {
    h.map_or(String::new(), |h| h.to_string())
}

fn run_bare(rec: &mut Recorder, l: &mut dyn Learner, oracle: Option<&SetSpec>, text: &Text, b: Budget) -> SessionTranscript {
    let t = run_session(l, None, oracle, text, &rec.budget(b));
    rec.note(&t);
    t
}

fn run_agents(rec: &mut Recorder, mut a: SessionAgents, oracle: Option<&SetSpec>, text: &Text, b: Budget) -> SessionTranscript {
    let t = a.run(oracle, text, &rec.budget(b));
    rec.note(&t);
    t
}

pub(super) fn pow2_gap(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["n", "plain_distinct", "oracle_queries", "teacher_items"], cfg);
    let fam = make_basic_family(BasicKind::Pow2);
    for n in cfg.range_or(1, 12) {
        let n = n as Nat;
        let target = fam.member(n)?;
        let b = Budget::for_size(size_of(&target));
        let text = Text::canonical(target.clone())?;

        let plain = run_bare(&mut rec, rule(Pow2PlainRule::default()).as_mut(), None, &text, b);
        let oracle = run_bare(&mut rec, &mut Pow2OracleLearner::default(), Some(&target), &text, b);
        let taught = run_agents(&mut rec, pow2_teacher_pair(), None, &text, b);
        for t in [&plain, &oracle, &taught] {
            rec.check("all_correct", correct(t, &fam, n));
        }
        let distinct = plain.convergence.as_ref().map_or(0, |c| c.ledger.distinct_data);
        let queries = oracle.ledger.oracle_queries;
        let items = taught.convergence.as_ref().map_or(0, |c| c.ledger.teacher_items);
        rec.check("plain_distinct_is_2^n+1", distinct as Nat == pow2(n)? + 1);
        rec.check("oracle_queries_within_(n+2)^3", queries as Nat <= (n + 2).pow(3));
        rec.check("teacher_items_within_n+2", items as Nat <= n + 2);
        rec.row(vec![n.to_string(), distinct.to_string(), queries.to_string(), items.to_string()]);
    }
    rec.finish(cfg, json!({"range": cfg.range_or(1, 12)}))
}

pub(super) fn msd_linear(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["n", "text", "ticks", "teacher_items", "hypothesis", "correct"], cfg);
    let reg = LearnerRegistry::standard();
    let id = cfg.learners.as_ref().and_then(|v| v.first().copied()).unwrap_or(ids::CSD_ORACLE);
    let poly = poly_of(cfg, LINEAR);
    let fam = make_msd(&reg, id, poly, MarkerVariant::Single)?;
    let extra = cfg.texts.unwrap_or(10);
    let mut points = Vec::new();
    for n in cfg.range_or(1, 100) {
        let n = n as Nat;
        let target = fam.member(n)?;
        let s = size_of(&target) + n as usize;
        let b = Budget::new(1_000_000, 3 * s + 64, s + 16);
        for (label, text) in texts(&target, cfg.seed, extra)? {
            let t = run_agents(&mut rec, make_msd_pair(), None, &text, b);
            let ok = correct(&t, &fam, n);
            rec.check("final_hypothesis_is_n", ok && t.final_hypothesis() == Some(n));
            let conv = t.convergence.as_ref().map(|c| c.ledger.clone()).unwrap_or_default();
            points.push((n as f64, conv.ticks as f64));
            rec.row(vec![
                n.to_string(),
                label,
                conv.ticks.to_string(),
                conv.teacher_items.to_string(),
                opt(t.final_hypothesis()),
                ok.to_string(),
            ]);
        }
    }
    let (slope, intercept) = fit_line(&points);
    let c = slope.max(intercept).max(1.0).ceil();
    let max_residual = points
        .iter()
        .map(|&(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    rec.check("ticks_within_c*n+c", points.iter().all(|&(x, y)| y <= c * x + c));
    rec.check("max_residual_within_c", max_residual <= c);
    rec.set("fit", json!({"slope": slope, "intercept": intercept, "c": c, "max_residual": max_residual}));
    rec.finish(
        cfg,
        json!({"range": cfg.range_or(1, 100), "learner": id, "poly": poly.0, "texts": extra}),
    )
}

pub(super) fn msd_defeat(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(
        &[
            "learner_id",
            "learner",
            "n0",
            "n1",
            "prefix_len",
            "q",
            "floor",
            "queries",
            "identical",
            "hypothesis",
            "correct_n0",
            "correct_n1",
            "defeated",
        ],
        cfg,
    );
    let reg = LearnerRegistry::standard();
    let default = vec![ids::CSD_ORACLE, ids::UP_INTERVAL_ORACLE, ids::PAIR_INTERVAL_ORACLE, ids::CONSTANT_ZERO];
    let learners = cfg.learners.clone().unwrap_or(default);
    let poly = poly_of(cfg, LINEAR);
    let mut querying_defeats = 0;
    for &id in &learners {
        let r = defeat(&reg, id, poly, MarkerVariant::Single)?;
        let queries = r.transcripts[0]
            .iter()
            .filter(|e| e.kind.name() == "query")
            .count();
        if r.defeated && queries > 0 {
            querying_defeats += 1;
        }
        rec.check("identical_through_shared_prefix", r.identical);
        rec.check("defeated", r.defeated);
        for (k, events) in r.transcripts.iter().enumerate() {
            let body: String = events
                .iter()
                .map(|e| serde_json::to_string(e).expect("events serialize") + "\n")
                .collect();
            rec.file(format!("transcripts/{}_n{}.jsonl", r.learner, k), body);
        }
        rec.row(vec![
            id.to_string(),
            r.learner.clone(),
            r.targets[0].to_string(),
            r.targets[1].to_string(),
            r.prefix_len.to_string(),
            r.q.to_string(),
            r.floor.to_string(),
            queries.to_string(),
            r.identical.to_string(),
            opt(r.hypothesis),
            r.correct[0].to_string(),
            r.correct[1].to_string(),
            r.defeated.to_string(),
        ]);
    }
    rec.check("two_querying_learners_defeated", querying_defeats >= 2);
    rec.set("querying_learners_defeated", json!(querying_defeats));
    rec.finish(cfg, json!({"learners": learners, "poly": poly.0, "variant": "single"}))
}

/// Envelope `c·(m+1)` pinned for the column oracle learner's queries.
pub const CSD_QUERY_FACTOR: u64 = 4;

pub(super) fn csd_chain(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["n", "block", "min_index", "queries", "hypothesis", "correct"], cfg);
    let csd = make_csd();
    let blocks = cfg.range.map_or(5, |(_, hi)| hi as usize);
    let end = csd.a(blocks + 1)?;
    let mut points = Vec::new();
    for n in 0..end {
        let target = csd.member(n)?;
        let text = Text::canonical(target.clone())?;
        let mut l = CsdOracleLearner::new(csd.clone());
        let t = run_bare(&mut rec, &mut l, Some(&target), &text, Budget::for_size(size_of(&target)));
        let ok = correct(&t, &csd, n);
        rec.check("oracle_learner_exact", ok);
        let mi = csd.min_index(n)?;
        let q = t.ledger.oracle_queries;
        points.push((mi as f64, q as f64));
        rec.check(
            "queries_within_envelope",
            q as Nat <= CSD_QUERY_FACTOR as Nat * (mi + 1),
        );
        let block = csd.blocks.iter().rev().find(|b| b.a <= n).map_or(0, |b| b.i);
        rec.row(vec![
            n.to_string(),
            block.to_string(),
            mi.to_string(),
            q.to_string(),
            opt(t.final_hypothesis()),
            ok.to_string(),
        ]);
    }
    let (slope, intercept) = fit_line(&points);
    rec.set("query_fit", json!({"slope": slope, "intercept": intercept, "envelope_factor": CSD_QUERY_FACTOR}));

    let pair = || SessionAgents::bare(Box::new(csd_content_pair()));
    let mut forced = Vec::new();
    for i in [5usize, 0] {
        let chain = csd.chain(i)?;
        let r = chain_force(&pair, &csd, &chain, &ChainBudget::default())?;
        if let Some(t) = &r.transcript {
            rec.note(t);
        }
        let ok = match r.outcome {
            ChainOutcome::Forced { mind_changes } => mind_changes as usize + 1 >= chain.len(),
            ChainOutcome::FailureWitness { .. } => true,
            ChainOutcome::Inconclusive => false,
        };
        rec.check("chain_forced_or_witnessed", ok);
        forced.push(json!({"block": i, "result": r}));
    }
    rec.set("chain_force", Value::Array(forced));
    rec.finish(cfg, json!({"blocks": blocks, "chain_budget": ChainBudget::default()}))
}

pub(super) fn merged_split(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(
        &["n", "half", "component_queries", "merged_queries", "hypothesis", "correct"],
        cfg,
    );
    let reg = LearnerRegistry::standard();
    let id = cfg.learners.as_ref().and_then(|v| v.first().copied()).unwrap_or(ids::CSD_ORACLE);
    let poly = poly_of(cfg, LINEAR);
    let merged = make_merged(&reg, id, poly)?;
    for n in cfg.range_or(0, 41) {
        let n = n as Nat;
        let target = merged.member(n)?;
        let s = size_of(&target) + n as usize;
        let b = Budget::new(1_000_000, 3 * s + 64, s + 16);
        let text = Text::canonical(target.clone())?;
        let mut m = MergedLearner::new(merged.csd.clone());
        let t = run_bare(&mut rec, &mut m, Some(&target), &text, b);
        let (half, component) = if n % 2 == 0 {
            let mut c = CsdOracleLearner::new(merged.csd.clone());
            let ct = run_bare(&mut rec, &mut c, Some(&target), &text, b);
            rec.check("components_correct", correct(&ct, &merged.csd, n / 2));
            ("csd", ct.ledger.oracle_queries)
        } else {
            let mut c = msd_composed();
            let ct = run_bare(&mut rec, &mut c, Some(&target), &text, b);
            rec.check("components_correct", correct(&ct, &merged.msd, n / 2));
            ("msd", ct.ledger.oracle_queries)
        };
        let ok = correct(&t, &merged, n);
        rec.check("merged_correct", ok);
        rec.check("exactly_one_extra_query", t.ledger.oracle_queries == component + 1);
        rec.row(vec![
            n.to_string(),
            half.to_string(),
            component.to_string(),
            t.ledger.oracle_queries.to_string(),
            opt(t.final_hypothesis()),
            ok.to_string(),
        ]);
    }
    rec.finish(cfg, json!({"range": cfg.range_or(0, 41), "learner": id, "poly": poly.0}))
}

pub(super) fn psd_finite(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["n", "size", "text", "distinct", "hypothesis", "verdict"], cfg);
    let fam = make_basic_family(BasicKind::FiniteCanonical);
    let poly = poly_of(cfg, LINEAR);
    let extra = cfg.texts.unwrap_or(3);
    for n in cfg.range_or(0, 300) {
        let n = n as Nat;
        let target = fam.member(n)?;
        if target.is_empty() {
            continue;
        }
        let b = Budget::for_size(size_of(&target));
        for (label, text) in texts(&target, cfg.seed, extra)? {
            let t = run_bare(&mut rec, rule(FinitePsdRule::default()).as_mut(), None, &text, b);
            let v = evaluate_run(&t, &fam, n, poly, Criterion::Psd);
            rec.check("psd_passes", v.passed());
            let distinct = t.convergence.as_ref().map_or(0, |c| c.ledger.distinct_data);
            rec.row(vec![
                n.to_string(),
                size_of(&target).to_string(),
                label,
                distinct.to_string(),
                opt(t.final_hypothesis()),
                verdict_cell(&v),
            ]);
        }
    }

    // Two targets sharing the prefix 0^{p(a)+p(b)}: the learner cannot tell them apart there.
    let code = |s: &[Nat]| -> Result<Nat> {
        let set: BTreeSet<Nat> = s.iter().copied().collect();
        crate::codec::pair(set.len() as Nat, crate::codec::canonical_encode(&set)?.0)
    };
    let (a, b) = (code(&[0, 2])?, code(&[0, 5])?);
    let (ta, tb) = repeat_prefix_texts(&fam, a, b, 0, poly)?;
    let len = (poly.eval(a)? + poly.eval(b)?) as usize;
    let run = |text: &Text| {
        run_session(rule(FinitePsdRule::default()).as_mut(), None, None, text, &Budget::new(1_000_000, len, 0))
    };
    let (ra, rb) = (run(&ta), run(&tb));
    let (ha, hb) = (ra.hypothesis_on_prefix(len), rb.hypothesis_on_prefix(len));
    rec.check("shared_prefix_indistinguishable", ha == hb);
    rec.set(
        "shared_prefix",
        json!({"a": a, "b": b, "prefix_len": len, "hypothesis_a": ha, "hypothesis_b": hb,
               "ticks_a": ra.ledger.ticks, "ticks_b": rb.ledger.ticks}),
    );
    rec.finish(cfg, json!({"range": cfg.range_or(0, 300), "poly": poly.0, "texts": extra}))
}

fn verdict_cell(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail(r) => format!("fail: {r}"),
    }
}

pub(super) fn conversions_roundtrip(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["n", "text", "mode", "mind_changes", "distinct", "verdict"], cfg);
    let fam = make_basic_family(BasicKind::Pow2);
    let poly = affine(2);
    let count = cfg.texts.unwrap_or(50);
    for n in cfg.range_or(0, 10) {
        let n = n as Nat;
        let target = fam.member(n)?;
        let b = Budget::for_size(size_of(&target));
        for j in 0..count as u64 {
            let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(j);
            let text = Text::seeded(target.clone(), seed)?;
            let label = format!("seed{seed}");

            let mut star = convert_psdT_to_pmc(rule(LeadCountRule::default()), Box::new(Pow2Teacher::default()));
            let t = run_bare(&mut rec, &mut star, None, &text, b);
            let v = evaluate_run(&t, &fam, n, poly, Criterion::Pmc);
            rec.check("psdT_to_pmc_passes_pmc", v.passed());
            rec.row(vec![
                n.to_string(),
                label.clone(),
                "psdT_to_pmc".into(),
                t.ledger.mind_changes.to_string(),
                t.ledger.distinct_data.to_string(),
                verdict_cell(&v),
            ]);

            let (learner, teacher) = convert_pmc_to_psdT(rule(Pow2PmcRule::default()));
            let t = run_agents(&mut rec, SessionAgents::with_teacher(Box::new(learner), Box::new(teacher)), None, &text, b);
            let v = evaluate_run(&t, &fam, n, poly, Criterion::Psd);
            let distinct = t.convergence.as_ref().map_or(0, |c| c.ledger.distinct_data);
            rec.check("pmc_to_psdT_passes_psd", v.passed());
            rec.check("pmc_to_psdT_distinct_within_2", distinct <= 2);
            rec.row(vec![
                n.to_string(),
                label,
                "pmc_to_psdT".into(),
                t.ledger.mind_changes.to_string(),
                distinct.to_string(),
                verdict_cell(&v),
            ]);
        }
    }
    rec.finish(cfg, json!({"range": cfg.range_or(0, 10), "poly": poly.0, "texts": count}))
}

pub(super) fn pcs_suite(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["part", "index", "agent", "text", "detail", "passed"], cfg);
    let poly = affine(3);
    let mut parts = serde_json::Map::new();

    let g = make_basic_family(BasicKind::PcsG);
    let bounds = |len, universe| SampleBounds {
        max_text_len: len,
        max_universe: universe,
        seed: cfg.seed,
    };
    let oracle = || SessionAgents::bare(Box::new(PcsGOracleLearner::default()));
    for n in 0..=8 {
        let v = check_characteristic_sample(&oracle, true, &g, n, &BTreeSet::from([n]), poly, bounds(4, 12))?;
        rec.check("pcsG_samples", v.passed);
        rec.row(vec![
            "pcsG".into(),
            n.to_string(),
            "pcsG_oracle_learner".into(),
            if v.exhaustive { "exhaustive" } else { "sampled" }.into(),
            format!("sample {{{n}}}, {} texts", v.texts_checked),
            v.passed.to_string(),
        ]);
    }

    let g64 = make_thm64_g();
    let learner = || SessionAgents::bare(rule(Thm64PcsRule::default()));
    for n in (0..=8).filter(|&n| n != 1 && n != 3) {
        let els = g64.member(n)?.finite_elements().expect("finite");
        let even = els.iter().copied().find(|x| x % 2 == 0).expect("even part");
        let odd = els.iter().copied().filter(|x| x % 2 == 1).max().expect("odd part");
        let sample = BTreeSet::from([even, odd]);
        let v = check_characteristic_sample(&learner, false, &g64, n, &sample, poly, bounds(3, 40))?;
        rec.check("thm64_samples_of_size_2", v.passed && sample.len() <= 2);
        rec.row(vec![
            "thm64".into(),
            n.to_string(),
            "thm64_pcs_learner".into(),
            if v.exhaustive { "exhaustive" } else { "sampled" }.into(),
            format!("sample {sample:?}, {} texts", v.texts_checked),
            v.passed.to_string(),
        ]);
    }

    let reg = LearnerRegistry::standard();
    let budget = PcsSearchBudget {
        seed: cfg.seed,
        ..PcsSearchBudget::default()
    };
    let extra = cfg.texts.unwrap_or(3);
    let mut traps = Vec::new();
    for k in cfg.range_or(0, 5) {
        let (id, p) = unpair(k as Nat);
        let Ok(id) = u64::try_from(id) else { continue };
        if reg.get(id).is_err() {
            continue;
        }
        let fam = Arc::new(make_pcs_f(&reg, id, PolyCode(p), &budget)?);
        traps.push(json!({"k": k, "learner_id": id, "poly": p, "traps": fam.traps}));
        if !fam.traps.resolved {
            rec.row(vec!["pcsF".into(), k.to_string(), String::new(), String::new(), "unresolved".into(), "false".into()]);
            continue;
        }
        for n in [2 * fam.k, 2 * fam.k + 1] {
            let target = fam.member(n)?;
            let b = Budget::for_size(size_of(&target));
            for (label, text) in texts(&target, cfg.seed, extra)? {
                let t = run_agents(&mut rec, make_pcsF_agents(fam.clone())?, None, &text, b);
                let ok = correct(&t, fam.as_ref(), n);
                rec.check("pcsF_pair_correct", ok);
                rec.row(vec![
                    "pcsF".into(),
                    n.to_string(),
                    "pcsF_pair".into(),
                    label.clone(),
                    format!("k {k}, hypothesis {}", opt(t.final_hypothesis())),
                    ok.to_string(),
                ]);
                let t = run_bare(&mut rec, make_pcsF_pmc_learner(fam.clone())?.as_mut(), None, &text, b);
                let ok = correct(&t, fam.as_ref(), n);
                rec.check("pcsF_pmc_correct", ok);
                rec.row(vec![
                    "pcsF".into(),
                    n.to_string(),
                    "pcsF_pmc_learner".into(),
                    label,
                    format!("k {k}, mind changes {}", t.ledger.mind_changes),
                    ok.to_string(),
                ]);
            }
        }
    }
    parts.insert("trap_sets".into(), Value::Array(traps));

    let join = make_basic_family(BasicKind::JoinSingletons);
    let mut contained = true;
    for k in 0..=20 {
        let content = alpha_prefix(k);
        for n in 0..=20 {
            let m = join.member(n)?;
            contained &= content.iter().all(|&x| m.contains(x));
        }
    }
    rec.check("alpha_prefix_in_every_member", contained);
    rec.set("pcs", Value::Object(parts));
    rec.finish(cfg, json!({"poly": poly.0, "pcsF_range": cfg.range_or(0, 5), "search_budget": budget}))
}

pub(super) fn halting_psd(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut rec = Recorder::new(&["w", "index", "text", "distinct", "initial", "hypothesis", "correct"], cfg);
    let poly = poly_of(cfg, LINEAR);
    let extra = cfg.texts.unwrap_or(3);
    for w in [vec![], vec![1, 3]] {
        let fam = HaltingFamily::with_fixed(w.clone(), 0);
        let mut targets = Vec::new();
        for i in cfg.range_or(0, 10) {
            let i = i as Nat;
            targets.push(2 * i + 1);
            if let Ok(t) = tower_index(i) {
                targets.push(t);
            }
        }
        for n in targets {
            let target = fam.member(n)?;
            for (label, text) in texts(&target, cfg.seed, extra)? {
                let t = run_bare(&mut rec, rule(HaltingPsdRule).as_mut(), None, &text, Budget::for_size(2));
                let v = evaluate_run(&t, &fam, n, poly, Criterion::Psd);
                let distinct = t.convergence.as_ref().map_or(0, |c| c.ledger.distinct_data);
                let initial = t.hypotheses.first().copied();
                rec.check("psd_passes", v.passed());
                rec.check("distinct_within_2", distinct <= 2);
                rec.check("initial_is_6", initial == Some(6));
                rec.row(vec![
                    format!("{w:?}"),
                    n.to_string(),
                    label,
                    distinct.to_string(),
                    opt(initial),
                    opt(t.final_hypothesis()),
                    v.passed().to_string(),
                ]);
            }
        }
    }
    rec.finish(cfg, json!({"range": cfg.range_or(0, 10), "poly": poly.0, "texts": extra}))
}
