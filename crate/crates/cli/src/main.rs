use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use blowup_core::checks::{run_check, CHECK_NAMES};
use blowup_core::hilb::hilb_series;
use blowup_core::lattice::{walls_base, walls_blowup_decompose, DivisorClass, SurfaceLattice, WallClass};
use blowup_core::oracle::{blowup_walls_by_exhaustion, dense_mul_reference, walls_by_exhaustion};
use blowup_core::qseries::{qs_eta_sq, qs_theta, ThetaVariant};
use blowup_core::universal::{
    conjecture_probe, count_u_points, u_poly_at, z1_closed_bracket, z1_conjectured_bracket, z1_from_b_bracket,
    z2_closed,
};
use blowup_core::wallcross::{base_genfun, blowup_genfun, GenfunMode, ModuliProblem};
use blowup_core::{Error, QExp, QSeries};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact q-series for wall-crossing on F1, its blowup, and the universal blowup functions.
#[derive(Parser, Debug)]
#[command(name = "blowup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named series.
    Series {
        #[arg(long, value_enum)]
        target: Target,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Compute the moduli generating functions per n or from the closed form.
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
    },
    /// Run a named exact identity; exits 1 on mismatch.
    Check {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the closed and conjectured z1 brackets (one JSON report per a).
    Probe {
        #[command(flatten)]
        common: Common,
    },
    /// Re-run a brute-force oracle against the fast path; exits 1 on mismatch.
    Oracle {
        #[arg(long, value_enum)]
        name: OracleName,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Instanton number for the wall oracles.
        #[arg(long, default_value_t = 3)]
        n: i64,
        /// Coordinate box radius for the wall oracles.
        #[arg(long = "box", default_value_t = 20)]
        radius: i64,
        /// Prime for the point-count oracle.
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m1: u32,
        #[arg(long, default_value_t = 1)]
        m2: u32,
        /// Operands for the dense product oracle.
        #[arg(long, value_enum, default_value_t = Target::Theta)]
        target: Target,
        #[arg(long = "with", value_enum, default_value_t = Target::EtaSq)]
        with: Target,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// 0 or 1; commands that take both run each when omitted.
    #[arg(long)]
    a: Option<u8>,
    /// Integer q-exponent cap.
    #[arg(long, default_value_t = 4, conflicts_with = "cap_num")]
    order: u32,
    /// Cap as a numerator over 24.
    #[arg(long)]
    cap_num: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    output: Option<String>,
}

impl Common {
    fn cap(&self) -> QExp {
        match self.cap_num {
            Some(k) => QExp(i64::from(k)),
            None => QExp::integer(i64::from(self.order)),
        }
    }
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// First Chern class in the basis (sigma, f).
    #[arg(long, value_parser = parse_class, default_value = "1,0")]
    c1: ClassArg,
    /// Polarization in the basis (sigma, f).
    #[arg(long, value_parser = parse_class, default_value = "1,2")]
    polarization: ClassArg,
}

impl ProblemArgs {
    fn problem(&self) -> Result<ModuliProblem, Error> {
        ModuliProblem::new(
            SurfaceLattice::f1(),
            DivisorClass::new(self.c1.0.clone()),
            DivisorClass::new(self.polarization.0.clone()),
            DivisorClass::new([0, 1]),
        )
    }
}

/// Comma-separated integer coordinates.
#[derive(Clone, Debug)]
struct ClassArg(Vec<i64>);

fn parse_class(s: &str) -> Result<ClassArg, String> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(ClassArg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Theta,
    EtaSq,
    HilbF1,
    HilbBlowup,
    BaseGenfun,
    BlowupGenfun,
    Z2Num,
    Z1Bracket,
    #[value(name = "z1-bracket-from-B")]
    Z1BracketFromB,
    Z1ConjecturedBracket,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    PerN,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleName {
    Walls,
    BlowupWalls,
    Ffield,
    DenseMul,
}

/// A finished command: what to print and whether an identity held.
struct Outcome {
    text: String,
    ok: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}

fn single_a(a: Option<u8>) -> Result<u8, Error> {
    match a.unwrap_or(0) {
        a @ 0..=1 => Ok(a),
        a => Err(usage(format!("--a must be 0 or 1, got {a}"))),
    }
}

fn build_series(target: Target, a: Option<u8>, cap: QExp, problem: &ProblemArgs, mode: Mode) -> Result<QSeries, Error> {
    let mode = match mode {
        Mode::PerN => GenfunMode::PerN,
        Mode::Closed => GenfunMode::Closed,
    };
    let a = single_a(a)?;
    Ok(match target {
        Target::Theta => qs_theta(a, cap, ThetaVariant::Moduli),
        Target::EtaSq => qs_eta_sq(cap),
        Target::HilbF1 => hilb_series(&SurfaceLattice::f1(), cap),
        Target::HilbBlowup => hilb_series(&SurfaceLattice::f1().blowup(), cap),
        Target::BaseGenfun => base_genfun(&problem.problem()?, cap, mode)?,
        Target::BlowupGenfun => blowup_genfun(&problem.problem()?, a, cap, mode)?,
        Target::Z2Num => z2_closed(a, cap)?.numerator.truncate(cap),
        Target::Z1Bracket => z1_closed_bracket(a, cap)?,
        Target::Z1BracketFromB => z1_from_b_bracket(a, cap)?,
        Target::Z1ConjecturedBracket => z1_conjectured_bracket(a, cap)?,
    })
}

fn render_series(s: &QSeries, format: Format) -> String {
    match format {
        Format::Json => s.to_json(),
        Format::Text => s.to_text(),
    }
}

fn render_walls(walls: &[WallClass]) -> String {
    walls
        .iter()
        .map(|w| format!("{}  zeta^2={} zeta.K={} ell={}", w.zeta, w.zeta_sq, w.zeta_dot_k, w.ell))
        .collect::<Vec<_>>()
        .join("\n")
}

fn walls_json(walls: &[WallClass]) -> serde_json::Value {
    serde_json::Value::Array(
        walls
            .iter()
            .map(|w| {
                serde_json::json!({
                    "zeta": w.zeta.coords(),
                    "zeta_sq": w.zeta_sq,
                    "zeta_dot_k": w.zeta_dot_k,
                    "ell": w.ell,
                })
            })
            .collect(),
    )
}

fn run(cli: Cli) -> Result<(Outcome, Option<String>), Error> {
    match cli.command {
        Command::Series { target, common, problem, mode } => {
            let s = build_series(target, common.a, common.cap(), &problem, mode)?;
            Ok((Outcome { text: render_series(&s, common.format), ok: true }, common.output))
        }
        Command::Check { name, common } => {
            let outcomes = run_check(&name, common.a, common.cap())?;
            let ok = outcomes.iter().all(|o| o.passed);
            let text = match common.format {
                Format::Json => serde_json::to_string(&outcomes)?,
                Format::Text => outcomes
                    .iter()
                    .flat_map(|o| std::iter::once(o.summary()).chain(o.detail.iter().map(|d| format!("  {d}"))))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((Outcome { text, ok }, common.output))
        }
        Command::Probe { common } => {
            let order = i64::from(common.order);
            if common.cap_num.is_some() {
                return Err(usage("probe takes --order only"));
            }
            let values = match common.a {
                None => vec![0, 1],
                Some(a) => vec![single_a(Some(a))?],
            };
            let mut lines = Vec::new();
            for a in values {
                let r = conjecture_probe(a, order)?;
                lines.push(match common.format {
                    Format::Json => serde_json::to_string(&r)?,
                    Format::Text => match &r.first_diff {
                        None => format!("a={a} order={order}: agree"),
                        Some(d) => {
                            format!("a={a} order={order}: first difference at q^{}", QExp(d.q))
                        }
                    },
                });
            }
            // a disagreement is a finding, not a failed identity
            Ok((Outcome { text: lines.join("\n"), ok: true }, common.output))
        }
        Command::Oracle { name, common, problem, n, radius, p, m1, m2, target, with } => {
            let json = common.format == Format::Json;
            let outcome = match name {
                OracleName::Walls => {
                    let pr = problem.problem()?;
                    let fast = walls_base(&pr.surface, &pr.c1, &pr.h, &pr.f, n)?;
                    let slow = walls_by_exhaustion(&pr.surface, &pr.c1, &pr.h, &pr.f, n, radius)?;
                    let ok = fast == slow;
                    let text = if json {
                        serde_json::json!({"n": n, "box": radius, "agree": ok, "walls": walls_json(&slow)}).to_string()
                    } else {
                        format!("n={n} box={radius} agree={ok}\n{}", render_walls(&slow))
                    };
                    Outcome { text, ok }
                }
                OracleName::BlowupWalls => {
                    let pr = problem.problem()?;
                    let a = single_a(common.a)?;
                    let mut fast: Vec<WallClass> = walls_blowup_decompose(&pr.surface, &pr.c1, a, n, &pr.h, &pr.f)?
                        .into_iter()
                        .map(|w| w.lifted)
                        .collect();
                    fast.sort_by(|x, y| y.zeta_sq.cmp(&x.zeta_sq).then_with(|| x.zeta.cmp(&y.zeta)));
                    let slow = blowup_walls_by_exhaustion(&pr.surface, &pr.c1, a, n, &pr.h, &pr.f, radius)?;
                    let ok = fast == slow;
                    let text = if json {
                        serde_json::json!({"a": a, "n": n, "box": radius, "agree": ok, "walls": walls_json(&slow)})
                            .to_string()
                    } else {
                        format!("a={a} n={n} box={radius} agree={ok}\n{}", render_walls(&slow))
                    };
                    Outcome { text, ok }
                }
                OracleName::Ffield => {
                    let count = count_u_points(p, m1, m2)?;
                    let expected = u_poly_at(p, m1, m2);
                    let ok = expected == count.into();
                    let text = if json {
                        serde_json::json!({"p": p, "m1": m1, "m2": m2, "count": count, "e_at_p": expected.to_string(), "agree": ok})
                            .to_string()
                    } else {
                        format!("p={p} U({m1},{m2}): count {count}, e(U) at t=p {expected}")
                    };
                    Outcome { text, ok }
                }
                OracleName::DenseMul => {
                    let cap = common.cap();
                    let lhs = build_series(target, common.a, cap, &problem, Mode::Closed)?;
                    let rhs = build_series(with, common.a, cap, &problem, Mode::Closed)?;
                    let fast = lhs.mul(&rhs);
                    let slow = dense_mul_reference(&lhs, &rhs);
                    let ok = fast == slow;
                    let text = if json {
                        format!("{{\"agree\":{ok},\"product\":{}}}", slow.to_json())
                    } else {
                        format!("agree={ok}\n{}", slow.to_text())
                    };
                    Outcome { text, ok }
                }
            };
            Ok((outcome, common.output))
        }
    }
}

fn emit(text: &str, output: Option<&str>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => writeln!(io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, output)) => {
            if let Err(e) = emit(&outcome.text, output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
