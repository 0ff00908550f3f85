//! Batch front-end: compute tables for the perturbed sextic Freud weight,
//! run the identity verification suite, export machine-readable results.
//!
//! Commands: `gamma` (CSV of recurrence coefficients), `moments` (CSV of
//! even moments by both methods), `zeros` (CSV of zeros, optionally with the
//! electrostatic residual column), `verify` (JSON report per check).
//!
//! Exit codes: 0 all gating checks pass, 1 a gating check failed, 2 usage,
//! configuration or i/o error. Outputs are deterministic: identical
//! configuration produces byte-identical files.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use freud6::{
    check_a_from_b, check_derivative_identity, check_hankel_product, check_lowering, check_m1,
    check_m2prime, check_ode, check_quasi, check_second_order_dde_sweep, check_shift_identity,
    check_string_equation, check_toda_sweep, compute_zeros, electro_residuals,
    electrostatic_residual, gamma_hankel, gamma_stieltjes, gamma_string_recursion,
    interlacing_item, moment_quadrature, moment_series, zero_property_items, GammaMethod,
    PrecisionContext, Real, RecurrenceTable, ReportItem, VerificationReport, WeightParams,
};
use serde::Deserialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const CHECK_NAMES: &[&str] = &[
    "moments", "string", "toda", "dde2", "ladder", "m1", "m2prime", "ode", "quasi", "hankel",
    "zeros", "electro",
];

#[derive(Parser)]
#[command(
    name = "freud6",
    version,
    about = "Moments, recurrence coefficients, polynomials and zeros for the weight |x|^(2s+1) exp(-[c x^6 + t(x^4 - x^2)])"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Recurrence coefficient table (CSV: n,gamma,Gamma_hat)
    Gamma {
        #[command(flatten)]
        common: Common,
    },
    /// Even moment table (CSV: k,eta_series,eta_quadrature)
    Moments {
        #[command(flatten)]
        common: Common,
    },
    /// Zeros of S_n (CSV: j,zero), optionally with electrostatic residuals
    Zeros {
        #[command(flatten)]
        common: Common,
        /// Degree n (default: n-max)
        #[arg(long)]
        n: Option<usize>,
        /// Append the electrostatic equilibrium residual column
        #[arg(long)]
        electrostatic: bool,
    },
    /// Run identity checks and write a JSON report
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated subset of: moments,string,toda,dde2,ladder,m1,m2prime,ode,quasi,hankel,zeros,electro
        #[arg(long)]
        checks: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Leading coefficient c > 0 of the sextic
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Deformation parameter t
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Exponent parameter sigma > -1/2
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Working precision in decimal digits (>= 30)
    #[arg(long)]
    digits: Option<u32>,
    /// Largest recurrence index N
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Gamma table construction: stieltjes | hankel | string
    #[arg(long)]
    method: Option<String>,
    /// TOML config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override tol_identity (decimal string)
    #[arg(long = "tol-identity")]
    tol_identity: Option<String>,
    /// Override tol_quadrature (decimal string)
    #[arg(long = "tol-quadrature")]
    tol_quadrature: Option<String>,
    /// Override tol_electro (decimal string)
    #[arg(long = "tol-electro")]
    tol_electro: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    c: Option<String>,
    t: Option<String>,
    sigma: Option<String>,
    digits: Option<u32>,
    n_max: Option<usize>,
    method: Option<String>,
    checks: Option<Vec<String>>,
    out: Option<String>,
    n: Option<usize>,
    electrostatic: Option<bool>,
    tol_identity: Option<String>,
    tol_quadrature: Option<String>,
    tol_electro: Option<String>,
}

struct RunConfig {
    params: WeightParams,
    n_max: usize,
    method: GammaMethod,
    out: Option<PathBuf>,
}

fn merge_config(common: &Common) -> anyhow::Result<(RunConfig, FileConfig)> {
    let file: FileConfig = match &common.config {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            toml::from_str(&raw).with_context(|| format!("bad config {}", path.display()))?
        }
        None => FileConfig::default(),
    };

    let digits = common.digits.or(file.digits).unwrap_or(60);
    let tol_i = common.tol_identity.clone().or(file.tol_identity.clone());
    let tol_q = common
        .tol_quadrature
        .clone()
        .or(file.tol_quadrature.clone());
    let tol_e = common.tol_electro.clone().or(file.tol_electro.clone());
    let ctx = PrecisionContext::with_tolerances(
        digits,
        tol_i.as_deref(),
        tol_q.as_deref(),
        tol_e.as_deref(),
    )?;

    let c = common
        .c
        .clone()
        .or(file.c.clone())
        .unwrap_or_else(|| "1".into());
    let t = common
        .t
        .clone()
        .or(file.t.clone())
        .unwrap_or_else(|| "0".into());
    let sigma = common
        .sigma
        .clone()
        .or(file.sigma.clone())
        .unwrap_or_else(|| "0".into());
    let params = WeightParams::new(ctx.parse(&c)?, ctx.parse(&t)?, ctx.parse(&sigma)?, ctx)?;
    if params.sigma_warning() {
        eprintln!("warning: sigma <= 0 is outside the usual range sigma > 0; formulas remain valid for sigma > -1/2");
    }

    let n_max = common.n_max.or(file.n_max).unwrap_or(10);
    let method = parse_method(
        common
            .method
            .as_deref()
            .or(file.method.as_deref())
            .unwrap_or("stieltjes"),
    )?;
    let out = common
        .out
        .clone()
        .or_else(|| file.out.as_ref().map(PathBuf::from));
    Ok((
        RunConfig {
            params,
            n_max,
            method,
            out,
        },
        file,
    ))
}

fn parse_method(s: &str) -> anyhow::Result<GammaMethod> {
    match s {
        "stieltjes" => Ok(GammaMethod::Stieltjes),
        "hankel" => Ok(GammaMethod::Hankel),
        "string" => Ok(GammaMethod::String),
        other => bail!("unknown method {other:?} (expected stieltjes | hankel | string)"),
    }
}

fn build_table(cfg: &RunConfig) -> anyhow::Result<RecurrenceTable> {
    let table = match cfg.method {
        GammaMethod::Stieltjes => gamma_stieltjes(&cfg.params, cfg.n_max)?,
        GammaMethod::Hankel => gamma_hankel(&cfg.params, cfg.n_max)?,
        GammaMethod::String => {
            let seeds = gamma_stieltjes(&cfg.params, 2)?;
            gamma_string_recursion(&cfg.params, cfg.n_max, (seeds.gamma(1), seeds.gamma(2)))?
        }
    };
    Ok(table)
}

fn write_output(out: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)
                .with_context(|| format!("cannot write {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Gamma { common } => {
            let (cfg, _) = merge_config(&common)?;
            let table = build_table(&cfg)?;
            let ctx = cfg.params.ctx();
            let mut csv = String::from("n,gamma,Gamma_hat\n");
            for n in 0..=table.n_max() {
                csv.push_str(&format!(
                    "{n},{},{}\n",
                    ctx.format(table.gamma(n)),
                    ctx.format(table.norm(n))
                ));
            }
            write_output(cfg.out.as_deref(), &csv)?;
            Ok(true)
        }
        Cmd::Moments { common } => {
            let (cfg, _) = merge_config(&common)?;
            let ctx = cfg.params.ctx();
            let mut csv = String::from("k,eta_series,eta_quadrature\n");
            for k in 0..=cfg.n_max {
                let a = moment_series(&cfg.params, k, 8)?;
                let b = moment_quadrature(&cfg.params, k)?;
                csv.push_str(&format!("{k},{},{}\n", ctx.format(&a), ctx.format(&b)));
            }
            write_output(cfg.out.as_deref(), &csv)?;
            Ok(true)
        }
        Cmd::Zeros {
            common,
            n,
            electrostatic,
        } => {
            let (cfg, file) = merge_config(&common)?;
            let n = n.or(file.n).unwrap_or(cfg.n_max);
            let electrostatic = electrostatic || file.electrostatic.unwrap_or(false);
            if n > cfg.n_max {
                bail!("zeros: n = {n} exceeds n-max = {}", cfg.n_max);
            }
            let table = build_table(&cfg)?;
            let ctx = cfg.params.ctx();
            let csv = if electrostatic {
                let (zs, residuals, notes) = electro_residuals(&table, n)?;
                for note in notes {
                    eprintln!("note: {note}");
                }
                let mut csv = String::from("j,zero,electro_residual\n");
                for (j, z) in zs.zeros.iter().enumerate() {
                    let r = residuals[j]
                        .as_ref()
                        .map(|r| ctx.format(r))
                        .unwrap_or_default();
                    csv.push_str(&format!("{j},{},{r}\n", ctx.format(z)));
                }
                csv
            } else {
                let zs = compute_zeros(&table, n)?;
                let mut csv = String::from("j,zero\n");
                for (j, z) in zs.zeros.iter().enumerate() {
                    csv.push_str(&format!("{j},{}\n", ctx.format(z)));
                }
                csv
            };
            write_output(cfg.out.as_deref(), &csv)?;
            Ok(true)
        }
        Cmd::Verify { common, checks } => {
            let (cfg, file) = merge_config(&common)?;
            let names: Vec<String> = match checks
                .as_deref()
                .map(|s| {
                    s.split(',')
                        .map(|c| c.trim().to_string())
                        .collect::<Vec<_>>()
                })
                .or(file.checks.clone())
            {
                Some(list) => list,
                None => CHECK_NAMES.iter().map(|s| s.to_string()).collect(),
            };
            for name in &names {
                if !CHECK_NAMES.contains(&name.as_str()) {
                    bail!(
                        "unknown check {name:?} (expected a subset of {})",
                        CHECK_NAMES.join(",")
                    );
                }
            }
            run_verify(&cfg, &names)
        }
    }
}

fn run_verify(cfg: &RunConfig, names: &[String]) -> anyhow::Result<bool> {
    let table = build_table(cfg)?;
    let mut reports = Vec::new();
    let mut all_pass = true;
    for name in names {
        let started = Instant::now();
        let mut rep = run_check(cfg, &table, name)?;
        rep.runtime = started.elapsed();
        eprintln!(
            "{:<10} {} (max residual {}, tolerance {}) [{} ms]",
            name,
            if rep.pass {
                "PASS"
            } else if rep.gating {
                "FAIL"
            } else {
                "INFO"
            },
            freud6::numerics::format_real(&rep.max_residual, 3),
            freud6::numerics::format_real(&rep.tolerance, 3),
            rep.runtime.as_millis()
        );
        if rep.failed_gating() {
            all_pass = false;
        }
        reports.push(rep);
    }

    let json = serde_json::json!({
        "digits": cfg.params.ctx().digits(),
        "method": cfg.method.as_str(),
        "n_max": cfg.n_max,
        "params": {
            "c": cfg.params.ctx().format(cfg.params.c()),
            "t": cfg.params.ctx().format(cfg.params.t()),
            "sigma": cfg.params.ctx().format(cfg.params.sigma()),
        },
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "all_gating_passed": all_pass,
    });
    let mut content = serde_json::to_string_pretty(&json)?;
    content.push('\n');
    write_output(cfg.out.as_deref(), &content)?;
    Ok(all_pass)
}

fn merged(
    name: &str,
    params: &WeightParams,
    tolerance: Real,
    parts: Vec<VerificationReport>,
) -> VerificationReport {
    let mut items: Vec<ReportItem> = Vec::new();
    let mut notes = Vec::new();
    for p in parts {
        items.extend(p.items);
        notes.extend(p.notes);
    }
    VerificationReport::from_items(name, params, tolerance, items, true, notes)
}

fn grid(ctx: &PrecisionContext, xs: &[&str]) -> Vec<Real> {
    xs.iter().map(|s| ctx.parse(s).unwrap()).collect()
}

fn run_check(
    cfg: &RunConfig,
    table: &RecurrenceTable,
    name: &str,
) -> anyhow::Result<VerificationReport> {
    let params = &cfg.params;
    let ctx = params.ctx();
    let n_max = cfg.n_max;
    let h = ctx.fd_step();
    let need = |min_n: usize| -> anyhow::Result<()> {
        if n_max < min_n {
            bail!("check {name:?} needs n-max >= {min_n}, got {n_max}");
        }
        Ok(())
    };

    let rep = match name {
        "moments" => {
            let mut items = Vec::new();
            for k in 0..=8usize {
                let a = moment_series(params, k, 8)?;
                let b = moment_quadrature(params, k)?;
                let rel = ctx.real(&a - &b).abs() / a.clone().abs();
                items.push(ReportItem::new(format!("series vs quadrature k={k}"), rel));
            }
            let mut parts = vec![VerificationReport::from_items(
                "moments",
                params,
                ctx.tol_identity().clone(),
                items,
                true,
                vec![],
            )];
            for k in 0..=6usize {
                parts.push(check_shift_identity(params, k)?);
            }
            for n in 1..=2u32 {
                parts.push(check_derivative_identity(params, n, &h)?);
            }
            merged("moments", params, ctx.tol_identity().clone(), parts)
        }
        "string" => {
            need(3)?;
            let mut parts = Vec::new();
            for n in 1..=n_max - 2 {
                parts.push(check_string_equation(table, n)?);
            }
            merged("string", params, ctx.tol_identity().clone(), parts)
        }
        "toda" => {
            need(3)?;
            check_toda_sweep(params, 1, (n_max - 2).min(15), &h)?
        }
        "dde2" => {
            need(5)?;
            check_second_order_dde_sweep(params, 1, (n_max - 4).min(8), &h)?
        }
        "ladder" => {
            need(3)?;
            let xs = grid(ctx, &["0.3", "-0.3", "0.9", "-0.9", "1.7", "-1.7"]);
            let mut parts = Vec::new();
            for n in 1..=(n_max - 2).min(10) {
                parts.push(check_lowering(table, n, &xs)?);
            }
            // both parities of the A-from-B decomposition
            if n_max >= 5 {
                for n in [2usize, 3] {
                    parts.push(check_a_from_b(table, n, &xs)?);
                }
            }
            merged("ladder", params, ctx.tol_identity().clone(), parts)
        }
        "m1" => {
            need(4)?;
            let mut parts = Vec::new();
            for n in 1..=(n_max - 3).min(15) {
                parts.push(check_m1(table, n)?);
            }
            merged("m1", params, ctx.tol_quadrature().clone(), parts)
        }
        "m2prime" => {
            need(3)?;
            let xs = grid(ctx, &["0.3", "-0.3", "0.9", "-0.9", "1.7", "-1.7"]);
            let mut parts = Vec::new();
            for n in 1..=(n_max - 2).min(10) {
                parts.push(check_m2prime(table, n, &xs)?);
            }
            merged("m2prime", params, ctx.tol_identity().clone(), parts)
        }
        "ode" => {
            need(4)?;
            let xs = grid(ctx, &["0.4", "-0.4", "1.1", "-1.1", "2.0", "-2.0"]);
            let mut parts = Vec::new();
            for n in 2..=(n_max - 2).min(10) {
                parts.push(check_ode(table, n, &xs)?);
            }
            merged("ode", params, ctx.tol_identity().clone(), parts)
        }
        "quasi" => {
            need(10)?;
            let mut parts = Vec::new();
            for n in 6..=(n_max - 4).min(12) {
                parts.push(check_quasi(table, n)?);
            }
            merged("quasi", params, ctx.tol_identity().clone(), parts)
        }
        "hankel" => check_hankel_product(params, 10)?,
        "zeros" => {
            let mut sets = Vec::with_capacity(n_max);
            for n in 1..=n_max {
                sets.push(compute_zeros(table, n)?);
            }
            let mut items = Vec::new();
            for zs in &sets {
                items.extend(zero_property_items(table, zs)?);
            }
            for n in 2..=n_max {
                items.push(interlacing_item(table, &sets[n - 1], &sets[n - 2]));
            }
            VerificationReport::from_items(
                "zeros",
                params,
                ctx.tol_identity().clone(),
                items,
                true,
                vec![],
            )
        }
        "electro" => {
            need(4)?;
            let mut parts = Vec::new();
            for n in 2..=(n_max - 2).min(12) {
                parts.push(electrostatic_residual(table, n)?);
            }
            merged("electro", params, ctx.tol_electro().clone(), parts)
        }
        other => return Err(anyhow!("unknown check {other:?}")),
    };
    Ok(rep)
}
