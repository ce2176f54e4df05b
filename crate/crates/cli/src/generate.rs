use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use pkp_core::generator::{generate, paper_suite, parse_ratio, GenSpec};

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Full factorial preset; overrides the class flags.
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long = "R", default_value_t = 1000)]
    range: i64,
    #[arg(long, default_value = "a1")]
    weight: String,
    #[arg(long, default_value = "pi1")]
    penalty: String,
    #[arg(long, default_value = "p1")]
    profit: String,
    #[arg(long, default_value = "0.5")]
    tau: String,
    /// Base seed; defaults to $PKP_SEED, then 1.
    #[arg(long)]
    seed: Option<u64>,
    /// Instances per class combination.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Paper1000,
    Paper10000,
}

fn base_seed(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("PKP_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("PKP_SEED `{v}` is not an unsigned integer")),
        Err(_) => Ok(1),
    }
}

pub fn specs(args: &GenerateArgs) -> anyhow::Result<Vec<GenSpec>> {
    let seed = base_seed(args.seed)?;
    if let Some(suite) = args.suite {
        let size = match suite {
            Suite::Paper1000 => 1000,
            Suite::Paper10000 => 10000,
        };
        return Ok(paper_suite(size, size as i64, args.count.unwrap_or(5), seed));
    }
    let count = args.count.unwrap_or(1);
    if count == 0 {
        bail!("--count must be at least 1");
    }
    let spec = GenSpec {
        n: args.n,
        range: args.range,
        weight_type: args.weight.parse()?,
        penalty_class: args.penalty.parse()?,
        profit_class: args.profit.parse()?,
        tau: parse_ratio(&args.tau)?,
        seed,
    };
    spec.validate()?;
    Ok((0..count as u64)
        .map(|k| GenSpec {
            seed: seed.wrapping_add(k),
            ..spec.clone()
        })
        .collect())
}

pub fn run(args: &GenerateArgs) -> anyhow::Result<()> {
    let specs = specs(args)?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for spec in &specs {
        let inst = generate(spec)?;
        let path = args.out_dir.join(format!("{}.txt", spec.tag()));
        std::fs::write(&path, inst.to_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("wrote {} instance(s) to {}", specs.len(), args.out_dir.display());
    Ok(())
}
