use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use boolgeo::algebra::DEFAULT_SEARCH_BOUND;
use boolgeo::classifier::{
    classify, geom_equivalent, quasi_identity_agreement, quasi_identity_counterexample,
    radical_agreement, verify_ek_fixture, GeomVerdict, SampleSpec, Verdict,
};
use boolgeo::normalizer::{alpha_label, canonicalize_system, DEFAULT_BLOWUP_LIMIT};
use boolgeo::solver::{
    canonical_equivalence, count_canonical, enumerate_solutions, radical_member, Equivalence,
    RadicalVerdict, Side, DEFAULT_BUDGET,
};
use boolgeo::source::{load_algebra, load_fixture, load_point, load_system, load_system_over};
use boolgeo::splitting::{split, SplitOrder};
use boolgeo::syntax::{check_constants, parse_equation, parse_quasi_identity};
use boolgeo::{Error, Execution, NormalizerConfig, SolverConfig};
use clap::{Parser, Subcommand};

/// Equations over Boolean algebras with distinguished constants.
#[derive(Parser)]
#[command(name = "boolgeo", version)]
struct Cli {
    /// Largest number of variables a system may have (the canonical form has 2^n coordinates).
    #[arg(long, global = true, default_value_t = DEFAULT_BLOWUP_LIMIT)]
    blowup_limit: usize,
    /// Largest number of points an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print `key<TAB>value` lines.
    #[arg(long, global = true)]
    machine: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical bound form of a system.
    Normalize { system: PathBuf },
    /// Count and list the solutions of a system.
    Solve {
        system: PathBuf,
        /// Print at most this many points.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decide whether an equation holds on every solution of a system.
    Radical {
        system: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
    },
    /// Decide whether two systems have the same solutions.
    Equiv { first: PathBuf, second: PathBuf },
    /// Split a point of Z-space along a linear order of the tuples.
    Split {
        point: PathBuf,
        /// `lex` or a comma-separated list of tuples such as `01,00,11,10`.
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Noetherian-class verdicts for an algebra.
    Classify {
        algebra: PathBuf,
        /// Payload bound for completeness searches.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: usize,
    },
    /// Compare two hosts sharing their subalgebra of constants.
    Geomeq {
        first: PathBuf,
        second: PathBuf,
        /// Sampled systems and quasi-identities compared across the hosts.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Candidate equations per sampled system.
        #[arg(long, default_value_t = 5)]
        candidates: usize,
    },
    /// Evaluate a quasi-identity `p1 & p2 -> c` in a finite algebra.
    Qident {
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        formula: String,
    },
    /// Fixtures with exactly k solutions whose finite parts have infinitely many.
    Ek {
        #[command(subcommand)]
        action: EkAction,
    },
}

#[derive(Subcommand)]
enum EkAction {
    /// Check a built-in (`chain-e1`, `chain-e0`) or file fixture up to a bound.
    Verify {
        fixture: String,
        #[arg(long, default_value_t = 50)]
        bound: usize,
    },
}

/// Output sink: `key: value` lines, bare values, or `key<TAB>value` when machine-readable.
struct Out {
    machine: bool,
    buf: Vec<u8>,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let sep = if self.machine { "\t" } else { ": " };
        let _ = writeln!(self.buf, "{key}{sep}{value}");
    }

    fn raw(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.machine {
            let _ = writeln!(self.buf, "{key}\t{value}");
        } else {
            let _ = writeln!(self.buf, "{value}");
        }
    }
}

enum Failure {
    Usage(String),
}

impl From<boolgeo::source::SourceError> for Failure {
    fn from(e: boolgeo::source::SourceError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn inline(what: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| match e {
        Error::Syntax {
            line,
            column,
            message,
        } => Failure::Usage(format!("{what}:{line}:{column}: {message}")),
        other => Failure::Usage(format!("{what}: {other}")),
    }
}

fn plain(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Exit status 1 marks a negative verdict of a check.
type Outcome = Result<bool, Failure>;

fn run(cli: &Cli, out: &mut Out) -> Outcome {
    let cfg = SolverConfig {
        budget: cli.budget,
        normalizer: NormalizerConfig {
            blowup_limit: cli.blowup_limit,
            exec: if cli.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
        },
    };
    match &cli.command {
        Command::Normalize { system } => {
            let (sys, calg) = load_system(system)?;
            let cs = canonicalize_system(&sys, &calg, &cfg.normalizer).map_err(plain)?;
            out.kv("vars", sys.vars.join(" "));
            for line in cs.lines() {
                out.raw("canonical", line);
            }
            Ok(true)
        }
        Command::Solve { system, limit } => {
            let (sys, calg) = load_system(system)?;
            let enumerated = match enumerate_solutions(&sys, &calg, &cfg) {
                Ok(set) => Some(set),
                Err(Error::BudgetExceeded { .. } | Error::InfiniteAlgebra(_)) => None,
                Err(e) => return Err(plain(e)),
            };
            match enumerated {
                Some(set) => {
                    let points = set.points().unwrap_or_default();
                    out.kv("solutions", points.len());
                    let shown = limit.unwrap_or(points.len()).min(points.len());
                    for p in &points[..shown] {
                        out.raw("point", p);
                    }
                    if shown < points.len() {
                        out.kv("omitted", points.len() - shown);
                    }
                    Ok(!points.is_empty())
                }
                None => {
                    let cs = canonicalize_system(&sys, &calg, &cfg.normalizer).map_err(plain)?;
                    let count = count_canonical(&cs);
                    out.kv(
                        "solutions",
                        count.map_or_else(
                            || "not counted (infinite algebra)".into(),
                            |c| c.to_string(),
                        ),
                    );
                    out.kv("points", "not enumerated; canonical form follows");
                    for line in cs.lines() {
                        out.raw("canonical", line);
                    }
                    Ok(count != Some(0))
                }
            }
        }
        Command::Radical { system, candidate } => {
            let (sys, calg) = load_system(system)?;
            let cand = parse_equation(candidate).map_err(inline("--candidate"))?;
            check_constants(&cand, &calg).map_err(inline("--candidate"))?;
            let verdict = radical_member(&sys, &cand, &calg, &cfg).map_err(plain)?;
            out.kv("verdict", verdict.label());
            match verdict {
                RadicalVerdict::Member => Ok(true),
                RadicalVerdict::Full => Ok(false),
                RadicalVerdict::Nonmember { witness, alpha } => {
                    out.kv("witness", &witness);
                    out.kv("coordinate", alpha_label(witness.vars().len(), alpha));
                    Ok(false)
                }
            }
        }
        Command::Equiv { first, second } => {
            let (s1, calg) = load_system(first)?;
            let s2 = load_system_over(second, &calg)?;
            match canonical_equivalence(&s1, &s2, &calg, &cfg).map_err(plain)? {
                Equivalence::Equivalent => {
                    out.kv("verdict", "equivalent");
                    Ok(true)
                }
                Equivalence::Inequivalent { witness, solves } => {
                    out.kv("verdict", "inequivalent");
                    out.kv("witness", &witness);
                    let (yes, no) = match solves {
                        Side::First => (first, second),
                        Side::Second => (second, first),
                    };
                    out.kv("solves", yes.display());
                    out.kv("violates", no.display());
                    Ok(false)
                }
            }
        }
        Command::Split { point, order } => {
            let (p, _) = load_point(point)?;
            let order = SplitOrder::parse(p.n(), order).map_err(inline("--order"))?;
            let q = split(&p, &order).map_err(plain)?;
            out.kv("order", order.describe());
            for line in q.lines() {
                out.raw("coordinate", line);
            }
            Ok(true)
        }
        Command::Classify { algebra, bound } => {
            let calg = load_algebra(algebra)?;
            let mut all_yes = true;
            for v in classify(&calg, *bound) {
                all_yes &= v.verdict == Verdict::Yes;
                out.kv(
                    &v.class.to_string(),
                    format!("{} ({})", v.verdict, v.evidence),
                );
            }
            Ok(all_yes)
        }
        Command::Geomeq {
            first,
            second,
            samples,
            candidates,
        } => {
            let a1 = load_algebra(first)?;
            let a2 = load_algebra(second)?;
            let verdict = geom_equivalent(&a1, &a2).map_err(plain)?;
            out.kv("verdict", &verdict);
            let mut ok = !matches!(verdict, GeomVerdict::Inequivalent { .. });
            if *samples > 0 && a1.algebra().is_finite() && a2.algebra().is_finite() {
                let r = radical_agreement(
                    &a1,
                    &a2,
                    SampleSpec::systems(*samples, cli.seed),
                    *candidates,
                    &cfg,
                )
                .map_err(plain)?;
                out.kv("radical-trials", r.trials);
                out.kv("radical-mismatches", r.mismatches.len());
                for m in &r.mismatches {
                    out.kv("mismatch", m);
                }
                let q = quasi_identity_agreement(
                    &a1,
                    &a2,
                    SampleSpec::quasi_identities(*samples, cli.seed),
                    &cfg,
                )
                .map_err(plain)?;
                out.kv("quasi-identity-trials", q.trials);
                out.kv("quasi-identity-mismatches", q.mismatches.len());
                for m in &q.mismatches {
                    out.kv("mismatch", m);
                }
                ok &= r.mismatches.is_empty() && q.mismatches.is_empty();
            }
            Ok(ok)
        }
        Command::Qident { algebra, formula } => {
            let calg = load_algebra(algebra)?;
            let qi = parse_quasi_identity(formula).map_err(inline("--formula"))?;
            for e in qi.premises.iter().chain([&qi.conclusion]) {
                check_constants(e, &calg).map_err(inline("--formula"))?;
            }
            match quasi_identity_counterexample(&qi, &calg, &cfg).map_err(plain)? {
                None => {
                    out.kv("holds", "true");
                    Ok(true)
                }
                Some(p) => {
                    out.kv("holds", "false");
                    out.kv("counterexample", p);
                    Ok(false)
                }
            }
        }
        Command::Ek {
            action: EkAction::Verify { fixture, bound },
        } => {
            let f = load_fixture(fixture)?;
            let cert = verify_ek_fixture(&f, *bound).map_err(plain)?;
            out.kv("fixture", &cert.fixture);
            out.kv("k", cert.k);
            out.kv("bound", cert.bound);
            let min = cert
                .prefixes
                .iter()
                .map(|p| p.solutions.len())
                .min()
                .unwrap_or(0);
            let infinite = cert.prefixes.iter().filter(|p| p.infinite).count();
            out.kv(
                "prefixes",
                format!(
                    "{} checked, {infinite} infinite, at least {min} solutions each",
                    cert.prefixes.len()
                ),
            );
            out.kv("equations", cert.equations_checked);
            out.kv("survivors", cert.survivor_count);
            for s in &cert.survivors {
                out.kv("survivor", s);
            }
            for f in &cert.failures {
                out.kv("failure", f);
            }
            out.kv("certificate", if cert.passed() { "pass" } else { "fail" });
            Ok(cert.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        machine: cli.machine,
        buf: Vec::new(),
    };
    let result = run(&cli, &mut out);
    let _ = io::stdout().write_all(&out.buf);
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
