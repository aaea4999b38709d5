//! `ringlab`: classify finite rings, produce and check certificates.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringlab_core::classify::{
    certify_element, classify, render_json, render_text, scan, verify_document, ClassifyOptions, Property, ScanJob,
    ScanMode, ScanRange, Verdict,
};
use ringlab_core::dsl::parse_ring_spec;
use ringlab_core::endo::{cr_lift, vs_idempotent, ModMatrix, Subspace};
use ringlab_core::{Error, Limits, Result, Ring};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Exhaustive classification of finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Largest ring realized for per-element work.
    #[arg(long, default_value_t = Limits::default().max_size)]
    max_size: u64,
    /// Largest ring on which whole-ring properties are decided.
    #[arg(long, default_value_t = Limits::default().max_classify_size)]
    max_classify_size: u64,
}

impl Caps {
    fn limits(self) -> Limits {
        Limits {
            max_size: self.max_size,
            max_classify_size: self.max_classify_size,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide every property of a ring and print the report.
    Classify {
        spec: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        caps: Caps,
        /// Report least-index witnesses where the search allows a choice.
        #[arg(long)]
        minimize_index: bool,
        /// Leave per-element witness records out of the JSON report.
        #[arg(long)]
        elide_witnesses: bool,
    },
    /// Certify one property at one element and print the JSON certificate.
    Witness {
        spec: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        property: String,
        #[arg(long)]
        minimize_index: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Decide one property across a parameterized family of rings.
    Scan {
        /// Ring template with variables, e.g. `M(n,Z2)` or `Zm`.
        #[arg(long)]
        family: String,
        /// `var=lo..hi` or `var=v1,v2,…`; repeat for several variables.
        #[arg(long = "range", required = true)]
        ranges: Vec<String>,
        #[arg(long)]
        property: String,
        #[arg(long, value_enum, default_value_t = Mode::Holds)]
        mode: Mode,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        minimize_index: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Build the projection idempotent of a matrix over F_p, or with
    /// `--lift` its lift over Z/p²Z (entries are then read modulo p²).
    EndoIdempotent {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: String,
        /// The prime p.
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        lift: bool,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a certificate, a list of certificates or a full report.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Holds,
    Fails,
}

fn realize(spec: &str, caps: Caps) -> Result<Ring> {
    Ring::realize(&parse_ring_spec(spec)?, caps.limits())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify {
            spec,
            json,
            caps,
            minimize_index,
            elide_witnesses,
        } => {
            let ring = realize(&spec, caps)?;
            let report = classify(
                &ring,
                ClassifyOptions {
                    minimize_index,
                    elide_witnesses,
                },
            )?;
            let out = if json { render_json(&report)? } else { render_text(&report)? };
            print!("{out}");
        }
        Command::Witness {
            spec,
            element,
            property,
            minimize_index,
            caps,
        } => {
            let property: Property = property.parse()?;
            let ring = realize(&spec, caps)?;
            let a = ring.parse_element(&element)?;
            let cert = certify_element(&ring, a, property, minimize_index)?;
            println!("{}", serde_json::to_string_pretty(&cert)?);
        }
        Command::Scan {
            family,
            ranges,
            property,
            mode,
            json,
            minimize_index,
            caps,
        } => {
            let job = ScanJob {
                template: family,
                ranges: ranges.iter().map(|r| r.parse::<ScanRange>()).collect::<Result<_>>()?,
                property: property.parse()?,
                mode: match mode {
                    Mode::Holds => ScanMode::Holds,
                    Mode::Fails => ScanMode::Fails,
                },
                limits: caps.limits(),
                options: ClassifyOptions {
                    minimize_index,
                    elide_witnesses: true,
                },
            };
            let entries = scan(&job)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&entries)?);
            } else {
                for e in &entries {
                    let verdict = match e.verdict {
                        Verdict::Holds => "holds",
                        Verdict::Fails => "fails",
                        Verdict::Skipped => "skipped",
                    };
                    let mut line = format!("{:<24} {:<8}", e.spec, verdict);
                    if let Some(k) = e.index {
                        line += &format!(" index {k}");
                    }
                    if let Some(c) = &e.counterexample {
                        line += &format!(" counterexample {c}");
                    }
                    if let Some(r) = &e.reason {
                        line += &format!(" ({r})");
                    }
                    if e.matches {
                        line += "  *";
                    }
                    println!("{}", line.trim_end());
                }
                let hits = entries.iter().filter(|e| e.matches).count();
                let wanted = match mode {
                    Mode::Holds => "holds",
                    Mode::Fails => "fails",
                };
                println!("{hits} of {} instances: {} {wanted}", entries.len(), job.property);
            }
        }
        Command::EndoIdempotent {
            matrix,
            modulus,
            lift,
            json,
        } => endo(&matrix, modulus, lift, json)?,
        Command::Verify { file, caps } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", file.display())))?;
            let summary = verify_document(&text, caps.limits())?;
            for f in &summary.failures {
                println!("FAIL {f}");
            }
            if !summary.ok() {
                println!("{} failures in {} checks", summary.failures.len(), summary.checked);
                return Ok(ExitCode::from(3));
            }
            println!("ok: {} checks passed", summary.checked);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn basis_json(s: &Subspace) -> serde_json::Value {
    json!(s.basis())
}

fn endo(matrix: &str, p: u64, lift: bool, as_json: bool) -> Result<()> {
    let modulus = if lift { p.checked_mul(p).ok_or(Error::NotPrime(p))? } else { p };
    let a = ModMatrix::parse(matrix, modulus)?;
    if lift {
        let c = cr_lift(&a, p)?;
        if as_json {
            let v = json!({
                "a": c.a.to_string(),
                "modulus": modulus,
                "p": p,
                "r_hat": c.r_hat.to_string(),
                "e0": c.e0.to_string(),
                "b": c.b.to_string(),
                "e_prime": c.e_prime.to_string(),
                "w": c.w.to_string(),
                "index": c.index,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        } else {
            println!("a      = {} over Z{modulus}", c.a);
            println!("r_hat  = {}", c.r_hat);
            println!("e0     = {}", c.e0);
            println!("b      = {}", c.b);
            println!("e'     = {}", c.e_prime);
            println!("w      = {}", c.w);
            println!("index of a(1-e') = {}", c.index);
        }
    } else {
        let d = vs_idempotent(&a, p)?;
        let q = d.defect();
        let index = q.nilpotency_index(2).unwrap_or(0);
        if as_json {
            let v = json!({
                "a": d.a.to_string(),
                "p": p,
                "v1": basis_json(&d.v1),
                "v2": basis_json(&d.v2),
                "v3": basis_json(&d.v3),
                "v4": basis_json(&d.v4),
                "r": d.r.to_string(),
                "e": d.e.to_string(),
                "a_one_minus_e": q.to_string(),
                "index": index,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        } else {
            println!("a  = {} over F{p}", d.a);
            for (name, s) in [("V1", &d.v1), ("V2", &d.v2), ("V3", &d.v3), ("V4", &d.v4)] {
                println!("{name} = span{:?}", s.basis());
            }
            println!("r  = {}", d.r);
            println!("e  = {}", d.e);
            println!("a(1-e) = {q}, index {index}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
