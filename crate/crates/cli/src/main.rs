use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grassmann_kirwan::groebner::{BettiTable, GradedPresentation, GroebnerCache};
use grassmann_kirwan::hypersimplex::{
    chamber_of, enumerate_chambers, hassett_chamber, hyperplanes, orbit_partition, orbit_representative,
    subset_label, Chamber, Point, Sign, WeightVector,
};
use grassmann_kirwan::kirwan::render_paper_names;
use grassmann_kirwan::oracles::{heavy_light_presentation, keel_presentation, polygon, polygon_names, toric_sr, HeavyLightOptions};
use grassmann_kirwan::suites::{self, Case, Reduction};
use grassmann_kirwan::Error;

const SCHEMA: u32 = 1;

const EXIT_FAILURE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Cohomology rings of torus reductions of G(n,2).
///
/// Exit codes: 0 success, 1 internal error or failed verification,
/// 2 domain or regularity error in the input point or weights, 3 usage error.
#[derive(Parser, Debug)]
#[command(name = "kirwan", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Gröbner basis cache directory; overrides KIRWAN_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Print e_i as σi(x1,x2) and h_i as σi(x3,…,xn) in text output.
    #[arg(long, global = true)]
    paper_names: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regularity, chamber, walls and orbit representative of a point.
    Classify {
        /// Point of the hypersimplex slice as exact fractions, e.g. 2/5,2/5,2/5,2/5,2/5.
        #[arg(long)]
        xi: String,
    },
    /// Kirwan kernel presentation and Betti table at a chamber.
    Reduce {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "hassett", required_unless_present = "hassett")]
        xi: Option<String>,
        /// Hassett weights, routed to a chamber by radial projection.
        #[arg(long)]
        hassett: Option<String>,
        #[arg(long)]
        emit_presentation: bool,
    },
    /// Maximal chambers of the hypersimplex.
    Chambers {
        #[command(subcommand)]
        action: ChambersAction,
    },
    /// Independent presentations of the same rings.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
        #[arg(long, global = true)]
        emit_presentation: bool,
    },
    /// Named verification suites.
    Verify {
        #[arg(long, value_parser = parse_case)]
        case: Case,
        /// Worker threads for independent chamber computations.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ChambersAction {
    List {
        #[arg(long)]
        n: usize,
        /// Only one chamber per S_n orbit.
        #[arg(long)]
        orbit_reps: bool,
    },
    Orbits {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleKind {
    /// Keel presentation of M̄_{0,n}.
    Keel {
        #[arg(long)]
        n: usize,
    },
    /// Heavy/light Hassett space with m heavy points.
    Heavylight {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Also use the divisor D^{2..n}.
        #[arg(long)]
        include_full_set: bool,
    },
    /// Stanley–Reisner presentation of a toric surface.
    Toric {
        #[arg(long)]
        polygon: String,
    },
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(Value, String), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cache = match &cli.global.cache_dir {
        Some(dir) => GroebnerCache::new(Some(dir.clone())),
        None => GroebnerCache::from_env(),
    };
    let result = run(&cli, &cache);
    let (payload, text, code) = match result {
        Ok((payload, text)) => (Some(payload), Some(text), 0),
        Err(Failure::Verification) => (None, None, EXIT_FAILURE),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            (None, None, EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                ref e if e.is_domain() => EXIT_DOMAIN,
                Error::Parse(_) | Error::UnknownVariable(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            };
            (None, None, code)
        }
    };
    if let (Some(payload), Some(text)) = (payload, text) {
        emit(&cli.global, payload, &text);
    }
    ExitCode::from(code)
}

fn emit(global: &Global, mut payload: Value, text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = match global.format {
        Format::Json => {
            payload["schema"] = json!(SCHEMA);
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).expect("serializable"))
        }
        Format::Text => write!(out, "{text}"),
    };
}

fn run(cli: &Cli, cache: &GroebnerCache) -> Outcome {
    let names = |text: String, n: usize| if cli.global.paper_names { render_paper_names(&text, n) } else { text };
    match &cli.command {
        Command::Classify { xi } => classify(&xi.parse()?),
        Command::Reduce { n, xi, hassett, emit_presentation } => {
            let (chamber, routed) = match (xi, hassett) {
                (Some(xi), _) => {
                    let xi: Point = xi.parse()?;
                    if let Some(n) = n {
                        if *n != xi.n() {
                            return Err(Failure::Usage(format!("--n {n} does not match a point with {} coordinates", xi.n())));
                        }
                    }
                    (chamber_of(&xi)?, None)
                }
                (None, Some(w)) => {
                    let w: WeightVector = w.parse()?;
                    if let Some(n) = n {
                        if *n != w.weights().len() {
                            return Err(Failure::Usage(format!("--n {n} does not match {} weights", w.weights().len())));
                        }
                    }
                    (hassett_chamber(&w)?, Some(w.slice_point()))
                }
                (None, None) => return Err(Failure::Usage("one of --xi or --hassett is required".into())),
            };
            let reduction = suites::reduce_chamber(&chamber, cache)?;
            Ok(reduce_report(&reduction, routed.as_ref(), *emit_presentation, &names))
        }
        Command::Chambers { action } => chambers(action),
        Command::Oracle { kind, emit_presentation } => {
            let presentation = match kind {
                OracleKind::Keel { n } => keel_presentation(*n)?,
                OracleKind::Heavylight { m, n, include_full_set } => {
                    heavy_light_presentation(*m, *n, HeavyLightOptions { include_full_set: *include_full_set })?
                }
                OracleKind::Toric { polygon: name } => {
                    let p = polygon(name).map_err(|_| {
                        Failure::Usage(format!("unknown polygon `{name}`; known: {}", polygon_names().join(", ")))
                    })?;
                    toric_sr(name, &p.characteristic)?
                }
            };
            let betti = cache.basis(&presentation.table, &presentation.relations)?.betti()?;
            Ok(presentation_report(&presentation, &betti, *emit_presentation))
        }
        Command::Verify { case, jobs } => {
            let report = suites::run(*case, cache, (*jobs).max(1))?;
            let mut text = format!("case {case}\n");
            for check in &report.checks {
                let status = match (check.passed, check.required) {
                    (true, _) => "ok  ",
                    (false, true) => "FAIL",
                    (false, false) => "note",
                };
                let tag = if check.required { "" } else { " (informational)" };
                text.push_str(&format!("{status} {}{tag}: {}\n", check.name, check.detail));
            }
            for r in &report.reports {
                text.push_str(&format!("-- {}\n", r.label));
                for c in &r.checks {
                    text.push_str(&format!("   NF({}) = {}\n", c.label, c.residue));
                }
            }
            text.push_str(if report.passed() { "passed\n" } else { "FAILED\n" });
            let payload = json!({"command": "verify", "report": report.to_json()});
            if report.passed() {
                Ok((payload, text))
            } else {
                emit(&cli.global, payload, &text);
                Err(Failure::Verification)
            }
        }
    }
}

fn relation(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => ">1",
        Sign::Minus => "<1",
    }
}

fn chamber_json(c: &Chamber) -> Value {
    let sums: serde_json::Map<String, Value> = hyperplanes(c.n())
        .iter()
        .zip(c.signs())
        .map(|(s, &g)| (subset_label(s), Value::from(relation(g))))
        .collect();
    json!({
        "signature": c.signature(),
        "subset_sums": sums,
        "walls": c.walls().iter().map(|w| subset_label(w)).collect::<Vec<_>>(),
        "representative": c.representative().to_strings(),
    })
}

fn chamber_text(c: &Chamber) -> String {
    let sums: Vec<String> = hyperplanes(c.n())
        .iter()
        .zip(c.signs())
        .map(|(s, &g)| format!("x{}{}", subset_label(s), relation(g)))
        .collect();
    let walls: Vec<String> = c.walls().iter().map(|w| subset_label(w)).collect();
    format!("subset sums: {}\nwalls: {}\n", sums.join(" "), walls.join(" "))
}

fn classify(xi: &Point) -> Outcome {
    let chamber = chamber_of(xi)?;
    let (rep, sigma) = orbit_representative(&chamber);
    let payload = json!({
        "command": "classify",
        "xi": xi.to_strings(),
        "regular": true,
        "chamber": chamber_json(&chamber),
        "orbit_representative": {"chamber": chamber_json(&rep), "sigma": sigma.to_string()},
    });
    let text = format!(
        "regular\n{}orbit representative: {} (σ = {})\n",
        chamber_text(&chamber),
        rep.signature(),
        sigma
    );
    Ok((payload, text))
}

fn betti_text(b: &BettiTable) -> String {
    let parts: Vec<String> = b.entries().iter().map(|(d, k)| format!("{d}:{k}")).collect();
    format!("betti: {{{}}} (euler characteristic {})\n", parts.join(", "), b.total())
}

fn reduce_report(
    r: &Reduction,
    routed: Option<&Point>,
    emit_presentation: bool,
    names: &dyn Fn(String, usize) -> String,
) -> (Value, String) {
    let n = r.ideal.n;
    let mut payload = json!({
        "command": "reduce",
        "n": n,
        "chamber": chamber_json(&r.ideal.chamber),
        "betti": r.betti.to_json(),
        "euler": r.betti.total(),
        "generators": r.ideal.generators.len(),
        "groebner_basis_size": r.basis.len(),
    });
    let mut text = format!("chamber: {}\n", r.ideal.chamber.signature());
    if let Some(p) = routed {
        payload["routed_point"] = json!(p.to_strings());
        text.push_str(&format!("routed to slice point ({})\n", p));
    }
    text.push_str(&format!("{} generators, Gröbner basis of {}\n", r.ideal.generators.len(), r.basis.len()));
    text.push_str(&betti_text(&r.betti));
    if emit_presentation {
        payload["presentation"] = r.ideal.to_json();
        payload["groebner_basis"] = json!(r.basis.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>());
        text.push_str("relations:\n");
        for g in &r.ideal.generators {
            text.push_str(&format!("  {}\n", names(g.to_string(), n)));
        }
    }
    (payload, text)
}

fn presentation_report(p: &GradedPresentation, betti: &BettiTable, emit_presentation: bool) -> (Value, String) {
    let mut payload = json!({
        "command": "oracle",
        "label": p.label,
        "betti": betti.to_json(),
        "euler": betti.total(),
    });
    let mut text = format!("{}\n{}", p.label, betti_text(betti));
    if emit_presentation {
        payload["presentation"] = p.to_json();
        text.push_str("relations:\n");
        for r in &p.relations {
            text.push_str(&format!("  {r}\n"));
        }
    }
    (payload, text)
}

fn chambers(action: &ChambersAction) -> Outcome {
    match action {
        ChambersAction::List { n, orbit_reps } => {
            let all = enumerate_chambers(*n)?;
            let listed: Vec<&Chamber> = if *orbit_reps {
                orbit_partition(&all, *n).iter().map(|o| &all[o[0]]).collect()
            } else {
                all.iter().collect()
            };
            let mut text = format!("{} chambers\n", listed.len());
            for c in &listed {
                text.push_str(&format!("{}  [{}]\n", c.signature(), c.representative()));
            }
            let payload = json!({
                "command": "chambers list",
                "n": n,
                "count": listed.len(),
                "chambers": listed.iter().map(|c| chamber_json(c)).collect::<Vec<_>>(),
            });
            Ok((payload, text))
        }
        ChambersAction::Orbits { n } => {
            let all = enumerate_chambers(*n)?;
            let orbits = orbit_partition(&all, *n);
            let mut text = format!("{} chambers in {} orbits\n", all.len(), orbits.len());
            for (k, o) in orbits.iter().enumerate() {
                text.push_str(&format!("orbit {} ({} chambers): {}\n", k + 1, o.len(), all[o[0]].signature()));
            }
            let payload = json!({
                "command": "chambers orbits",
                "n": n,
                "chambers": all.len(),
                "orbits": orbits.iter().map(|o| json!({
                    "size": o.len(),
                    "representative": chamber_json(&all[o[0]]),
                    "members": o.iter().map(|&i| all[i].signature()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            Ok((payload, text))
        }
    }
}
