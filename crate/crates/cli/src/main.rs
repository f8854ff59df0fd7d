mod commands;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use orbitkit::criteria::{ClassificationTable, RepClass};
use orbitkit::realform::Catalog;

use commands::{Ctx, Scope};
use report::RunReport;

/// Minimal nilpotent orbit tables, coisotropic certificates and
/// multiplicity verdicts for real simple Lie algebras.
#[derive(Parser, Debug)]
#[command(name = "orbitkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Case-insensitive glob on catalog ids or type names.
    #[arg(long, global = true, value_name = "GLOB")]
    filter: Option<String>,
    /// Include slow entries (E-series certificates, E8 forms).
    #[arg(long, global = true)]
    slow: bool,
    /// Real form catalog (JSON); defaults to the built-in one.
    #[arg(long, global = true, value_name = "PATH", env = "ORBITKIT_CATALOG")]
    catalog: Option<PathBuf>,
    /// Also write the JSON run report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Omit per-outcome timings from the report.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute a stored table and diff it against the tabulated values.
    Table {
        #[arg(value_enum)]
        which: Which,
    },
    /// Run coisotropic certificates across the catalog.
    Certify {
        #[arg(value_enum)]
        scope: Scope,
    },
    /// Cross-check the equivalent characterizations of n(g) > n(g_C).
    Audit,
    /// Multiplicity verdict for a pair and a representation class.
    Verdict {
        /// `G:SUBGROUP` or `G|SUBGROUP`; SUBGROUP is `diag`,
        /// `symmetric:<catalog id>` or a sum such as `sp(1,R)+sp(2,R)`.
        #[arg(long)]
        pair: String,
        /// minimal, nc, nr or tensor.
        #[arg(long)]
        rep: String,
    },
    /// Evaluate a stored finite-multiplicity condition.
    Fmult {
        /// sl_so, o_oo or group_manifold.
        example: String,
        params: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Ngc,
    Ng,
}

fn inputs(cli: &Cli) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    match &cli.command {
        Command::Table { which } => {
            m.insert("table".into(), format!("{which:?}").to_lowercase());
        }
        Command::Certify { scope } => {
            m.insert("scope".into(), format!("{scope:?}").to_lowercase());
        }
        Command::Audit => {}
        Command::Verdict { pair, rep } => {
            m.insert("pair".into(), pair.clone());
            m.insert("rep".into(), rep.clone());
        }
        Command::Fmult { example, params } => {
            m.insert("example".into(), example.clone());
            m.insert("params".into(), params.join(","));
        }
    }
    if let Some(f) = &cli.filter {
        m.insert("filter".into(), f.clone());
    }
    m.insert("slow".into(), cli.slow.to_string());
    if let Some(c) = &cli.catalog {
        m.insert("catalog".into(), c.display().to_string());
    }
    m
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Table { .. } => "table",
        Command::Certify { .. } => "certify",
        Command::Audit => "audit",
        Command::Verdict { .. } => "verdict",
        Command::Fmult { .. } => "fmult",
    }
}

fn run(cli: &Cli) -> Result<RunReport> {
    let catalog = match &cli.catalog {
        Some(p) => Catalog::load(p).map_err(|e| anyhow!("{e}"))?,
        None => Catalog::builtin(),
    };
    let ctx = Ctx {
        filter: cli.filter.as_deref().map(commands::parse_filter).transpose()?,
        table: ClassificationTable::builtin(),
        slow: cli.slow,
        timing: !cli.no_timing,
        catalog,
    };
    let mut report = RunReport::new(command_name(&cli.command), inputs(cli), &ctx.catalog.catalog_version);
    let text = match &cli.command {
        Command::Table { which: Which::Ngc } => commands::table_ngc(&ctx, &mut report)?,
        Command::Table { which: Which::Ng } => commands::table_ng(&ctx, &mut report)?,
        Command::Certify { scope } => commands::certify(&ctx, *scope, &mut report)?,
        Command::Audit => commands::audit(&ctx, &mut report)?,
        Command::Verdict { pair, rep } => {
            let rep: RepClass = rep.parse().map_err(|e| anyhow!("{e}"))?;
            commands::verdict_cmd(&ctx, pair, rep, cli.out.as_deref(), &mut report)?
        }
        Command::Fmult { example, params } => commands::fmult(&ctx, example, params, &mut report)?,
    };
    if let Some(out) = &cli.out {
        std::fs::write(out, report.to_json()).with_context(|| format!("writing {}", out.display()))?;
    }
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{text}");
        let failed = report.failures.len();
        println!("{} passed, {failed} failed", report.outcomes.len() - failed);
        for f in &report.failures {
            println!("FAIL {}: {}", f.id, f.diagnostic);
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Err(anyhow!("thread pool: {e}")),
    };
    match result {
        Ok(report) if report.ok() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
