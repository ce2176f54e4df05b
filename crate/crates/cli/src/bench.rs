use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use rayon::prelude::*;

use pkp_core::{dp, exact, oracle};

use crate::{read_instance, ParamArgs};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Directory of instance files (`*.txt`).
    dir: PathBuf,
    #[arg(long, value_enum, default_value_t = BenchAlgorithm::Exact)]
    algorithm: BenchAlgorithm,
    #[command(flatten)]
    params: ParamArgs,
    /// Comma-separated aggregation keys among profit, weight, penalty, tau.
    #[arg(long, default_value = "profit,weight")]
    group_by: String,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the summary here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write one CSV line per instance to this file.
    #[arg(long)]
    instances: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BenchAlgorithm {
    Exact,
    Dp1,
    Brute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Profit,
    Weight,
    Penalty,
    Tau,
}

/// Class labels recovered from a generated file name such as
/// `n1000_R1000_a1_pi3_p5_tau0.5_s7`; `?` where the name does not say.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classes {
    pub profit: String,
    pub weight: String,
    pub penalty: String,
    pub tau: String,
}

impl Classes {
    pub fn from_name(stem: &str) -> Self {
        let mut c = Classes {
            profit: "?".into(),
            weight: "?".into(),
            penalty: "?".into(),
            tau: "?".into(),
        };
        for part in stem.split('_') {
            if part == "a1" || part == "a2" {
                c.weight = part.into();
            } else if let Some(t) = part.strip_prefix("tau") {
                c.tau = t.into();
            } else if part.starts_with("pi") && part[2..].parse::<u32>().is_ok() {
                c.penalty = part.into();
            } else if part.starts_with('p') && part[1..].parse::<u32>().is_ok() {
                c.profit = part.into();
            }
        }
        c
    }

    fn get(&self, key: Key) -> &str {
        match key {
            Key::Profit => &self.profit,
            Key::Weight => &self.weight,
            Key::Penalty => &self.penalty,
            Key::Tau => &self.tau,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Record {
    pub name: String,
    pub classes: Classes,
    pub value: i64,
    pub certified: bool,
    pub step1_only: bool,
    pub time_us: u128,
    pub step1_us: u128,
    pub step2_us: u128,
    pub states_max: usize,
}

fn parse_keys(spec: &str) -> anyhow::Result<Vec<Key>> {
    let mut keys = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        keys.push(match part {
            "profit" => Key::Profit,
            "weight" => Key::Weight,
            "penalty" => Key::Penalty,
            "tau" => Key::Tau,
            other => bail!("unknown group-by key `{other}`"),
        });
    }
    keys.sort();
    keys.dedup();
    Ok(keys)
}

fn instance_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no instance files (*.txt) in {}", dir.display());
    }
    Ok(files)
}

fn solve_file(path: &PathBuf, algorithm: BenchAlgorithm, params: &exact::SolverParams) -> anyhow::Result<Record> {
    let inst = read_instance(path)?;
    let start = Instant::now();
    let (value, certified, step1_only, step1_us, step2_us, states_max) = match algorithm {
        BenchAlgorithm::Exact => {
            let r = exact::solve_with_stats(&inst, params);
            (
                r.solution.value,
                r.solution.certified_optimal,
                r.stats.step1_only(),
                r.stats.step1_time.as_micros(),
                r.stats.step2_time.as_micros(),
                r.stats.states_max,
            )
        }
        BenchAlgorithm::Dp1 => {
            let s = dp::solve_dp1(&inst)?;
            (s.value, true, false, 0, start.elapsed().as_micros(), 0)
        }
        BenchAlgorithm::Brute => {
            let s = oracle::brute_force(&inst)?;
            (s.value, true, false, 0, start.elapsed().as_micros(), 0)
        }
    };
    let time_us = start.elapsed().as_micros();
    Ok(Record {
        name: inst.label.clone(),
        classes: Classes::from_name(&inst.label),
        value,
        certified,
        step1_only,
        time_us,
        step1_us,
        step2_us,
        states_max,
    })
}

pub const HEADER: [&str; 13] = [
    "profit_class",
    "weight_type",
    "penalty_class",
    "tau",
    "avg_time_ms",
    "max_time_ms",
    "n_opt",
    "step1_only_pct",
    "step1_time_pct",
    "step2_time_pct",
    "states_max_avg",
    "states_max_max",
    "instances",
];

fn ms(us: f64) -> String {
    format!("{:.3}", us / 1000.0)
}

fn pct(part: f64, whole: f64) -> String {
    if whole > 0.0 {
        format!("{:.1}", 100.0 * part / whole)
    } else {
        "0.0".into()
    }
}

fn summary_rows(records: &[Record], keys: &[Key]) -> Vec<Vec<String>> {
    let mut groups: BTreeMap<Vec<String>, Vec<&Record>> = BTreeMap::new();
    for r in records {
        let k = keys.iter().map(|&k| r.classes.get(k).to_string()).collect();
        groups.entry(k).or_default().push(r);
    }
    let all = [Key::Profit, Key::Weight, Key::Penalty, Key::Tau];
    groups
        .into_iter()
        .map(|(key, rs)| {
            let count = rs.len() as f64;
            let total_us: f64 = rs.iter().map(|r| r.time_us as f64).sum();
            let max_us = rs.iter().map(|r| r.time_us).max().unwrap_or(0) as f64;
            let s1: f64 = rs.iter().map(|r| r.step1_us as f64).sum();
            let s2: f64 = rs.iter().map(|r| r.step2_us as f64).sum();
            let states: f64 = rs.iter().map(|r| r.states_max as f64).sum();
            let mut row: Vec<String> = all
                .iter()
                .map(|k| match keys.iter().position(|x| x == k) {
                    Some(pos) => key[pos].clone(),
                    None => "*".into(),
                })
                .collect();
            row.extend([
                ms(total_us / count),
                ms(max_us),
                rs.iter().filter(|r| r.certified).count().to_string(),
                pct(rs.iter().filter(|r| r.step1_only).count() as f64, count),
                pct(s1, s1 + s2),
                pct(s2, s1 + s2),
                format!("{:.1}", states / count),
                rs.iter().map(|r| r.states_max).max().unwrap_or(0).to_string(),
                rs.len().to_string(),
            ]);
            row
        })
        .collect()
}

pub fn write_summary<W: Write>(out: W, records: &[Record], group_by: &str) -> anyhow::Result<()> {
    let keys = parse_keys(group_by)?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for row in summary_rows(records, &keys) {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_instances<W: Write>(out: W, records: &[Record]) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record([
        "instance", "value", "certified", "step1_only", "time_ms", "step1_ms", "step2_ms", "states_max",
    ])?;
    for r in records {
        w.write_record([
            r.name.clone(),
            r.value.to_string(),
            r.certified.to_string(),
            r.step1_only.to_string(),
            ms(r.time_us as f64),
            ms(r.step1_us as f64),
            ms(r.step2_us as f64),
            r.states_max.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: &BenchArgs) -> anyhow::Result<()> {
    parse_keys(&args.group_by)?;
    let files = instance_files(&args.dir)?;
    let params = args.params.to_params();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().context("starting worker threads")?;
    let records: Vec<Record> = pool.install(|| {
        files
            .par_iter()
            .map(|f| solve_file(f, args.algorithm, &params))
            .collect::<anyhow::Result<Vec<_>>>()
    })?;

    if let Some(path) = &args.instances {
        let f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_instances(std::io::BufWriter::new(f), &records)?;
    }
    match &args.out {
        Some(path) => {
            let f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_summary(std::io::BufWriter::new(f), &records, &args.group_by)
        }
        None => write_summary(std::io::stdout().lock(), &records, &args.group_by),
    }
}
