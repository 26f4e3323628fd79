mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use wmha_core::double::{
    build_double, enumerate_double_modules, enumerate_yd_modules, example_checks, smash_comparison,
    verify_double_integrals, verify_double_seeded, yd_correspondence, DoubleAlgebra,
};
use wmha_core::groupoid::FiniteGroupoid;
use wmha_core::pairing::{verify_pairing, WmhaPairing};
use wmha_core::qt::{canonical_element, drinfeld_element, factorisable_check, verify_qt};
use wmha_core::report::Report;
use wmha_core::wmha::verify_wmha_seeded;

use input::{pairing_json, Input, Loader, Side};

#[derive(Parser)]
#[command(name = "wmha", version, about = "Exact verification of groupoid weak multiplier Hopf algebras and their doubles")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled scans.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Groupoid spec files.
    Groupoid {
        #[command(subcommand)]
        cmd: GroupoidCmd,
    },
    /// Build the function or groupoid algebra, or re-check a dump.
    Wha {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "function")]
        side: Side,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a pairing: a pairing file, or the canonical pairing of a groupoid.
    Pairing {
        path: PathBuf,
        /// Use the dual pairing of this algebra instead of the canonical one.
        #[arg(long, value_enum)]
        dual: Option<Side>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the double of a pairing, or load a double dump.
    Double {
        path: PathBuf,
        #[arg(long, value_enum)]
        dual: Option<Side>,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        qt: bool,
        #[arg(long)]
        integrals: bool,
        /// Compare with the closed forms of the groupoid example (groupoid input only).
        #[arg(long)]
        example: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Match Yetter-Drinfeld modules with modules over the double.
    Yd {
        path: PathBuf,
        /// The algebra whose dual pairing is used.
        #[arg(long, value_enum, default_value = "function")]
        side: Side,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum GroupoidCmd {
    Validate { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                for (k, v) in &report.info {
                    println!("{k} = {v}");
                }
                println!("{report}");
            }
            match report.failures().next() {
                None => ExitCode::SUCCESS,
                Some(c) => {
                    eprintln!("first failure: {} ({})", c.id, c.anchor);
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool")?;
    }
    let mut loader = Loader::default();
    let mut report = match &cli.cmd {
        Cmd::Groupoid { cmd: GroupoidCmd::Validate { path } } => {
            let g = groupoid_of(loader.load(path)?)?;
            let mut r = g.validate();
            r.note("units", g.num_units());
            r.note("arrows", g.num_arrows());
            r
        }
        Cmd::Wha { path, side, verify, out } => {
            let w = match loader.load(path)? {
                Input::Groupoid(g) => side.build(&g),
                Input::Hopf(w) => w,
                other => bail!("wha expects a groupoid or a weak Hopf dump, found a {}", other.kind()),
            };
            if let Some(out) = out {
                write_json(out, &w.to_json())?;
            }
            let mut r = if *verify { verify_wmha_seeded(&w, cli.seed) } else { Report::new() };
            r.note("name", w.name.clone());
            r.note("dim", w.dim());
            r
        }
        Cmd::Pairing { path, dual, out } => {
            let p = pairing_of(loader.load(path)?, *dual)?;
            if let Some(out) = out {
                write_json(out, &pairing_json(&p))?;
            }
            let mut r = verify_pairing(&p);
            r.note("dim_a", p.na());
            r.note("dim_b", p.nb());
            r
        }
        Cmd::Double { path, dual, verify, qt, integrals, example, out } => {
            let input = loader.load(path)?;
            let groupoid = match (&input, dual, example) {
                (_, _, false) => None,
                (Input::Groupoid(g), None, true) => Some(g.clone()),
                _ => bail!("--example needs a groupoid spec and the canonical pairing"),
            };
            let d = match input {
                Input::Double(d) => *d,
                other => build_double(&pairing_of(other, *dual)?)?,
            };
            if let Some(out) = out {
                write_json(out, &d.to_json(pairing_json(&d.pairing)))?;
            }
            double_report(&d, groupoid.as_ref(), *verify, *qt, *integrals, cli.seed)
        }
        Cmd::Yd { path, side, dim } => {
            let p = match loader.load(path)? {
                Input::Groupoid(g) => WmhaPairing::dual_pairing(&side.build(&g))?.transposed(),
                other => pairing_of(other, None)?,
            };
            yd_report(&build_double(&p)?, *dim)?
        }
    };
    report.digests.extend(loader.digests);
    report.seed = cli.seed;
    report.canonicalize();
    Ok(report)
}

fn groupoid_of(input: Input) -> Result<FiniteGroupoid> {
    match input {
        Input::Groupoid(g) => Ok(g),
        other => bail!("expected a groupoid spec, found a {}", other.kind()),
    }
}

fn pairing_of(input: Input, dual: Option<Side>) -> Result<WmhaPairing> {
    match (input, dual) {
        (Input::Groupoid(g), None) => Ok(WmhaPairing::canonical(&g)),
        (Input::Groupoid(g), Some(side)) => Ok(WmhaPairing::dual_pairing(&side.build(&g))?.transposed()),
        (Input::Hopf(w), _) => Ok(WmhaPairing::dual_pairing(&w)?.transposed()),
        (Input::Pairing(p), None) => Ok(p),
        (Input::Double(d), None) => Ok(d.pairing),
        (other, Some(_)) => bail!("--dual applies to groupoid specs, found a {}", other.kind()),
    }
}

fn write_json(path: &Path, v: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn double_report(
    d: &DoubleAlgebra,
    groupoid: Option<&FiniteGroupoid>,
    verify: bool,
    qt: bool,
    integrals: bool,
    seed: u64,
) -> Report {
    let mut r = Report::new();
    r.note("dim_a", d.na());
    r.note("dim_b", d.nb());
    r.note("dim_double", d.dim());
    r.note("e_d_nnz", d.hopf.e.nnz());
    if verify {
        r.merge("", verify_pairing(&d.pairing));
        r.merge("", verify_double_seeded(d, seed));
    }
    if let Some(g) = groupoid {
        r.merge("", example_checks(d, g));
    }
    if qt {
        match canonical_element(d) {
            Ok(c) => {
                r.merge("", c.report);
                r.merge("", verify_qt(&c.qt));
                match drinfeld_element(&c.qt) {
                    Ok(de) => {
                        r.note("drinfeld_u", c.qt.host.show(&de.u));
                        r.merge("", de.report);
                    }
                    Err(e) => r.record("drinfeld.build", "u = Σ S(R₂)R₁ is invertible", Err(e.to_string())),
                }
                r.merge("", factorisable_check(&c.qt));
            }
            Err(e) => r.record("canonical.build", "the canonical element embeds into D⊗D", Err(e.to_string())),
        }
    }
    if integrals {
        r.merge("", verify_double_integrals(d));
    }
    r
}

fn yd_report(d: &DoubleAlgebra, dim: usize) -> Result<Report> {
    let mut r = Report::new();
    match dim {
        0 => {
            let yd = enumerate_yd_modules(d, 0)?;
            let dm = enumerate_double_modules(d, 0)?;
            r.note("yd_count", yd.len());
            r.note("double_count", dm.len());
            r.record("yd.bijection", "Yetter-Drinfeld modules correspond to D-modules", Ok(()));
        }
        1 => {
            let c = yd_correspondence(d)?;
            r.merge("", c.report);
        }
        _ => bail!("enumeration is implemented for --dim 0 and --dim 1 only"),
    }
    r.merge("", smash_comparison(d));
    Ok(r)
}
