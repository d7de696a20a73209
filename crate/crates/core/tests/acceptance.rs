//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use txtex_core::agents::exp_query_search;
use txtex_core::experiments::{run_experiment, write_outputs, ExperimentConfig, ExperimentOutput, EXPERIMENTS};
use txtex_core::verify::{codec_roundtrips, descriptor, DescriptorSweep, PropertyCheck};
use txtex_core::Nat;

type Outcome = Result<String, String>;

fn all_pass(checks: &[PropertyCheck]) -> Result<u64, String> {
    match checks.iter().find(|c| !c.passed()) {
        Some(c) => Err(format!("{}: {:?}", c.property, c.first_failure)),
        None => Ok(checks.iter().map(|c| c.cases).sum()),
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(took)
    } else {
        Err(format!("took {took:.1?}, limit {limit:?}"))
    }
}

fn experiment(name: &str) -> Result<ExperimentOutput, String> {
    let out = run_experiment(&ExperimentConfig::named(name)).map_err(|e| e.to_string())?;
    if out.partial {
        return Err(format!("{name}: partial run"));
    }
    if !out.passed {
        return Err(format!("{name}: failing checks {}", out.report["checks"]));
    }
    Ok(out)
}

fn rows(out: &ExperimentOutput) -> Vec<BTreeMap<String, String>> {
    let mut r = csv::Reader::from_reader(out.csv.as_bytes());
    let headers = r.headers().expect("header").clone();
    r.records()
        .map(|rec| {
            let rec = rec.expect("row");
            headers.iter().zip(rec.iter()).map(|(h, v)| (h.to_string(), v.to_string())).collect()
        })
        .collect()
}

fn num(row: &BTreeMap<String, String>, col: &str) -> Nat {
    row[col].parse().unwrap_or_else(|_| panic!("column {col} = {:?}", row[col]))
}

fn codec() -> Outcome {
    let start = Instant::now();
    let cases = all_pass(&codec_roundtrips())?;
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("{cases} cases in {took:.1?}"))
}

fn descriptors() -> Outcome {
    let start = Instant::now();
    let cases = all_pass(&descriptor(&DescriptorSweep::default()).map_err(|e| e.to_string())?)?;
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("{cases} cases in {took:.1?}"))
}

fn exp_search() -> Outcome {
    let mut worst = 0.0f64;
    for a in [2u128, 3] {
        for n in 0..=4096u128 {
            let (found, q) = exp_query_search(&mut |x| x <= n, a);
            // Least m with n < a^m.
            let m = (0..).find(|&m| a.pow(m) > n).expect("exists") as Nat;
            let bound = (m + 1).pow(a as u32 + 1);
            if found != n || q as Nat > bound {
                return Err(format!("a={a} n={n}: found {found}, {q} queries, bound {bound}"));
            }
            worst = worst.max(q as f64 / bound as f64);
        }
    }
    Ok(format!("8194 searches, max queries/bound {worst:.3}"))
}

fn pow2_gap() -> Outcome {
    let start = Instant::now();
    let out = experiment("pow2-gap")?;
    let rows = rows(&out);
    if rows.len() != 12 {
        return Err(format!("{} rows", rows.len()));
    }
    for r in &rows {
        let n = num(r, "n");
        let (plain, q, items) = (num(r, "plain_distinct"), num(r, "oracle_queries"), num(r, "teacher_items"));
        if plain != (1 << n) + 1 || q > (n + 2).pow(3) || items > n + 2 {
            return Err(format!("n={n}: plain {plain}, queries {q}, teacher items {items}"));
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    let last = rows.last().expect("rows");
    Ok(format!(
        "n=12: plain {} vs queries {} vs teacher {}, {took:.1?}",
        last["plain_distinct"], last["oracle_queries"], last["teacher_items"]
    ))
}

fn msd() -> Outcome {
    let lin = experiment("msd-linear")?;
    let fit = &lin.report["summary"]["fit"];
    let c = fit["c"].as_f64().ok_or("no fit")?;
    for r in rows(&lin) {
        let (n, ticks) = (num(&r, "n") as f64, num(&r, "ticks") as f64);
        if ticks > c * n + c {
            return Err(format!("n={n}: {ticks} ticks above {c}n+{c}"));
        }
    }
    let defeat = experiment("msd-defeat")?;
    let defeated = defeat.report["summary"]["querying_learners_defeated"].as_u64().unwrap_or(0);
    if defeated < 2 {
        return Err(format!("{defeated} querying learners defeated"));
    }
    Ok(format!(
        "ticks fit slope {} intercept {} (c={c}, max residual {}); {defeated} querying learners defeated",
        fit["slope"], fit["intercept"], fit["max_residual"]
    ))
}

fn csd() -> Outcome {
    let out = experiment("csd-chain")?;
    let factor = out.report["summary"]["query_fit"]["envelope_factor"].as_u64().ok_or("no factor")? as Nat;
    let mut worst = 0.0f64;
    for r in rows(&out) {
        let (mi, q) = (num(&r, "min_index"), num(&r, "queries"));
        if r["correct"] != "true" || q > factor * (mi + 1) {
            return Err(format!("n={}: {q} queries at min_index {mi}", r["n"]));
        }
        worst = worst.max(q as f64 / (mi + 1) as f64);
    }
    let forced = out.report["summary"]["chain_force"].as_array().ok_or("no chain report")?;
    let long = forced
        .iter()
        .map(|f| &f["result"])
        .find(|r| r["chain"].as_array().is_some_and(|c| c.len() >= 2))
        .ok_or("no chain of length >= 2")?;
    let outcome = &long["outcome"];
    let ok = outcome["Forced"]["mind_changes"].as_u64().is_some_and(|m| m >= 2) || outcome.get("FailureWitness").is_some();
    if !ok {
        return Err(format!("chain {}: {outcome}", long["chain"]));
    }
    Ok(format!("queries <= {factor}(min_index+1) (max ratio {worst:.2}); chain {}: {outcome}", long["chain"]))
}

fn named(name: &str) -> Outcome {
    let out = experiment(name)?;
    Ok(format!("{} rows, checks {}", rows(&out).len(), out.report["checks"]))
}

fn write_all(dir: &Path) -> Result<(), String> {
    for name in EXPERIMENTS {
        let mut cfg = ExperimentConfig::named(name);
        cfg.out = Some(name.to_string());
        let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
        write_outputs(&cfg, &out, &dir.join(name)).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).expect("readable") {
            let p = e.expect("entry").path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).expect("inside").display().to_string();
                out.insert(rel, std::fs::read(&p).expect("readable"));
            }
        }
    }
    out
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    write_all(&a)?;
    write_all(&b)?;
    let (fa, fb) = (files(&a), files(&b));
    if fa.keys().ne(fb.keys()) {
        return Err("different file sets".into());
    }
    if let Some(k) = fa.keys().find(|k| fa[*k] != fb[*k]) {
        return Err(format!("{k} differs"));
    }
    Ok(format!("{} files byte-identical across {} experiments", fa.len(), EXPERIMENTS.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("codec roundtrips", codec),
        ("descriptor suite", descriptors),
        ("exponential query search", exp_search),
        ("pow2 gap table", pow2_gap),
        ("msd linear teaching and defeat", msd),
        ("csd oracle learner and chain forcing", csd),
        ("merged family split", || named("merged-split")),
        ("conversions roundtrip", || named("conversions-roundtrip")),
        ("pcs suite", || named("pcs-suite")),
        ("halting family", || named("halting-psd")),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (status, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {:>2} {name}: {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
