use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use quante2::catalog::{self, Preset};
use quante2::exprio::{format_poly, parse_poly};
use quante2::poisson::{covariant_family_solve, poisson_matrix_rank, PoissonMatrixPoint};
use quante2::report::CheckReport;
use quante2::scalars::GaussRational;
use quante2::suites::{self, Params};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "quante2", version, about = "Exact verification of Poisson and quantum structures on E(2)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Word length bound for confluence and basis enumerations.
    #[arg(long, global = true, default_value_t = suites::DEFAULT_DEGREE_BOUND)]
    degree_bound: usize,
    /// Parameter values, `name=value,...`.
    #[arg(long, global = true)]
    param: Option<String>,
    /// Load the presentation from a file instead of naming a shipped preset.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Check { suite: String },
    /// Poisson bracket of two elements: [PRESET] EXPR EXPR
    Bracket {
        #[arg(required = true, num_args = 2..=3)]
        args: Vec<String>,
    },
    /// Normal form of an element: [PRESET] EXPR
    NormalForm {
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Coproduct of an element: [PRESET] EXPR
    Delta {
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Antipode of an element: [PRESET] EXPR
    Antipode {
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Rank of the Poisson matrix at a point.
    Rank {
        preset: Option<String>,
        /// Generator values, `g=value,...`.
        #[arg(long)]
        at: String,
    },
    /// Covariant bracket family of a coaction preset.
    SolveFamily { preset: Option<String> },
    /// List shipped presets.
    Presets,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn parse_assignments(text: Option<&str>) -> Result<Params, Usage> {
    let mut out = BTreeMap::new();
    for part in text.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Usage(format!("expected name=value, got `{}`", part)))?;
        out.insert(k.trim().to_string(), suites::parse_value(v.trim())?);
    }
    Ok(out)
}

impl Cli {
    /// Resolves the preset (from `--file` or the leading positional) and returns the remaining arguments.
    fn preset<'a>(&self, args: &'a [String], rest: usize) -> Result<(Arc<Preset>, &'a [String]), Usage> {
        match &self.file {
            Some(path) => {
                if args.len() != rest {
                    return Err(Usage(format!("with --file, expected {} argument(s)", rest)));
                }
                let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {}", path.display(), e)))?;
                Ok((Arc::new(catalog::load_preset_str(&text)?), args))
            }
            None => {
                if args.len() != rest + 1 {
                    return Err(Usage(format!("expected a preset and {} argument(s)", rest)));
                }
                Ok((catalog::get_preset(&args[0])?, &args[1..]))
            }
        }
    }

    fn emit(&self, text: &str) -> Result<(), Usage> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Usage(format!("{}: {}", p.display(), e))),
            None => {
                print!("{}", text);
                Ok(())
            }
        }
    }

    fn emit_value(&self, command: &str, preset: &str, inputs: &[String], result: String) -> Result<(), Usage> {
        match self.format {
            Format::Text => self.emit(&format!("{}\n", result)),
            Format::Json => {
                let v = serde_json::json!({"command": command, "preset": preset, "inputs": inputs, "result": result});
                self.emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))
            }
        }
    }

    fn emit_report(&self, rep: &CheckReport) -> Result<u8, Usage> {
        let text = match self.format {
            Format::Json => rep.to_canonical_json(&catalog::digests()),
            Format::Text => rep.to_text(),
        };
        self.emit(&text)?;
        Ok(rep.exit_code() as u8)
    }

    fn run(&self) -> Result<u8, Usage> {
        let params = parse_assignments(self.param.as_deref())?;
        match &self.cmd {
            Cmd::Check { suite } => {
                let rep = suites::run_suite(suite, &params, self.degree_bound)?;
                self.emit_report(&rep)
            }
            Cmd::Bracket { args } => {
                let (pre, rest) = self.preset(args, 2)?;
                let p = pre.poisson.as_ref().ok_or_else(|| Usage(format!("`{}` has no bracket", pre.id)))?;
                let f = pre.parse(&rest[0])?;
                let g = pre.parse(&rest[1])?;
                self.emit_value("bracket", &pre.id, rest, p.fmt(&p.bracket(&f, &g)))?;
                Ok(0)
            }
            Cmd::NormalForm { args } => {
                let (pre, rest) = self.preset(args, 1)?;
                let t = pre.tower()?;
                let x = parse_poly(&rest[0], t)?;
                self.emit_value("normal-form", &pre.id, rest, format_poly(&x, t))?;
                Ok(0)
            }
            Cmd::Delta { args } => {
                let (pre, rest) = self.preset(args, 1)?;
                let h = pre.hopf.as_ref().ok_or_else(|| Usage(format!("`{}` has no coproduct", pre.id)))?;
                let x = pre.parse(&rest[0])?;
                self.emit_value("delta", &pre.id, rest, h.fmt_tensor(&h.coproduct(&x)?))?;
                Ok(0)
            }
            Cmd::Antipode { args } => {
                let (pre, rest) = self.preset(args, 1)?;
                let h = pre.hopf.as_ref().ok_or_else(|| Usage(format!("`{}` has no antipode", pre.id)))?;
                let x = pre.parse(&rest[0])?;
                self.emit_value("antipode", &pre.id, rest, h.fmt(&h.antipode(&x)?))?;
                Ok(0)
            }
            Cmd::Rank { preset, at } => {
                let args: Vec<String> = preset.iter().cloned().collect();
                let (pre, _) = self.preset(&args, 0)?;
                let p = pre.poisson.as_ref().ok_or_else(|| Usage(format!("`{}` has no bracket", pre.id)))?;
                let gens = parse_assignments(Some(at))?;
                let g: Vec<(&str, GaussRational)> = gens.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
                let q: Vec<(&str, GaussRational)> = params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
                let r = poisson_matrix_rank(p, &PoissonMatrixPoint::new(&g, &q))?;
                self.emit_value("rank", &pre.id, std::slice::from_ref(at), r.to_string())?;
                Ok(0)
            }
            Cmd::SolveFamily { preset } => {
                let args: Vec<String> = preset.iter().cloned().collect();
                let (pre, _) = self.preset(&args, 0)?;
                let alpha = pre.morphism.as_ref().ok_or_else(|| Usage(format!("`{}` has no coaction", pre.id)))?;
                let cov = pre.covariance.as_ref().ok_or_else(|| Usage(format!("`{}` has no covariance data", pre.id)))?;
                let g = catalog::get_preset(&cov.group)?;
                let pg = g.poisson.as_ref().ok_or_else(|| Usage(format!("`{}` has no bracket", g.id)))?;
                let fam = covariant_family_solve(alpha, pg, &cov.ansatz)?;
                let t = &alpha.source;
                let result = match fam.particular() {
                    None => "no covariant bracket in the ansatz span".to_string(),
                    Some(p) => {
                        let mut s = format_poly(&p, t);
                        for (i, d) in fam.directions().iter().enumerate() {
                            s.push_str(&format!(" + c{}*({})", i + 1, format_poly(d, t)));
                        }
                        s
                    }
                };
                self.emit_value("solve-family", &pre.id, &[], result)?;
                Ok(0)
            }
            Cmd::Presets => {
                let list = catalog::list_presets();
                let text = match self.format {
                    Format::Json => format!("{}\n", serde_json::to_string_pretty(&list).expect("json")),
                    Format::Text => {
                        let w = list.iter().map(|p| p.id.len()).max().unwrap_or(0);
                        list.iter().map(|p| format!("{:<w$}  {}  [{}]\n", p.id, p.description, p.anchor, w = w)).collect()
                    }
                };
                self.emit(&text)?;
                Ok(0)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    match cli.run() {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(USAGE_ERROR)
        }
    }
}
