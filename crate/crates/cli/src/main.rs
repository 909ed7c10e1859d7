use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use snakepoly::verify::{run_lifted_sweep, DESK_POLYGON_MAX, DESK_PUNCTURED_MAX};
use snakepoly::{
    check_instance, enumerate_matchings, expand, explain_instance, instance_graph, newton_polytope, run_corpus,
    run_counterexample, CorpusConfig, MarkedSurface, Mode, RawSnakeGraph, Report, SnakeGraph, TaggedArc,
    TaggedTriangulation,
};

/// Snake-graph expansions of type A and D cluster variables and the
/// saturation of their Newton polytopes.
#[derive(Parser)]
#[command(name = "snakepoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the tagged arcs of a surface.
    Arcs {
        #[arg(long)]
        surface: MarkedSurface,
        #[command(flatten)]
        out: Out,
    },
    /// List the tagged triangulations of a surface.
    Triangulations {
        #[arg(long)]
        surface: MarkedSurface,
        #[command(flatten)]
        out: Out,
    },
    /// Print the snake graph of an arc, or parse and normalize a raw graph.
    Snake {
        #[arg(long, required_unless_present = "raw")]
        surface: Option<MarkedSurface>,
        #[arg(long, requires = "surface")]
        triangulation: Option<String>,
        #[arg(long, requires = "triangulation")]
        arc: Option<String>,
        #[arg(long, conflicts_with = "surface")]
        raw: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Laurent expansion of an arc in a seed.
    Expand {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "bd")]
        mode: Mode,
        #[command(flatten)]
        out: Out,
    },
    /// Newton polytope of an expansion: vertices, lattice points, saturation.
    Newton {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "bd")]
        mode: Mode,
        #[command(flatten)]
        out: Out,
    },
    /// Check one instance against the theorems.
    Check {
        #[command(flatten)]
        instance: Instance,
        /// Modes to check (all when omitted).
        #[arg(long)]
        mode: Vec<Mode>,
        #[command(flatten)]
        out: Out,
    },
    /// Sweep every (T, γ) of the given surfaces (desk scale when omitted).
    Verify {
        #[arg(long)]
        surface: Vec<MarkedSurface>,
        #[arg(long)]
        mode: Vec<Mode>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also check the lifted matching polytopes of every snake graph.
        #[arg(long)]
        lifted: bool,
        /// Record per-instance wall time.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Saturation of P(G) for a raw snake graph.
    Counterexample {
        #[arg(long)]
        raw: PathBuf,
        #[arg(long, default_value = "bd")]
        mode: Mode,
        #[command(flatten)]
        out: Out,
    },
    /// Diagnostic dump of one instance.
    Explain {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    surface: MarkedSurface,
    /// JSON array of arcs, as objects or names like "0-2", "r1*".
    #[arg(long)]
    triangulation: String,
    /// JSON arc object or name.
    #[arg(long)]
    arc: String,
}

#[derive(Args)]
struct Out {
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Out {
    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn json(&self, v: &Value) -> anyhow::Result<()> {
        self.write(&format!("{}\n", serde_json::to_string_pretty(v)?))
    }
}

/// Input problems are reported with exit status 2, theorem violations with 1.
enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Internal(e.into())
    }
}

fn usage<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn parse_arc_value(v: &Value) -> anyhow::Result<TaggedArc> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        other => Ok(serde_json::from_value(other.clone())?),
    }
}

fn parse_arc(s: &str) -> anyhow::Result<TaggedArc> {
    match serde_json::from_str::<Value>(s) {
        Ok(v) => parse_arc_value(&v),
        Err(_) => Ok(s.parse()?),
    }
}

fn parse_triangulation(surface: MarkedSurface, s: &str) -> anyhow::Result<TaggedTriangulation> {
    let v: Value = serde_json::from_str(s).context("triangulation must be a JSON array")?;
    let items = v.as_array().ok_or_else(|| anyhow!("triangulation must be a JSON array"))?;
    let arcs = items.iter().map(parse_arc_value).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(TaggedTriangulation::new(surface, arcs)?)
}

impl Instance {
    fn parse(&self) -> anyhow::Result<(TaggedTriangulation, TaggedArc)> {
        let t = parse_triangulation(self.surface, &self.triangulation)?;
        let a = parse_arc(&self.arc)?;
        self.surface.validate_arc(&a)?;
        Ok((t, a))
    }
}

fn read_raw(path: &PathBuf) -> anyhow::Result<RawSnakeGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn lines(items: impl IntoIterator<Item = Value>) -> anyhow::Result<String> {
    let mut s = String::new();
    for i in items {
        s.push_str(&serde_json::to_string(&i)?);
        s.push('\n');
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Arcs { surface, out } => {
            let arcs = surface.tagged_arcs();
            out.write(&lines(arcs.iter().map(|a| json!({ "name": a.to_string(), "arc": a })))?)?;
        }
        Command::Triangulations { surface, out } => {
            let ts = surface.tagged_triangulations();
            out.write(&lines(ts.iter().map(|t| json!(t.arcs().iter().map(|a| a.to_string()).collect::<Vec<_>>())))?)?;
        }
        Command::Snake { surface, triangulation, arc, raw, out } => {
            let g = match (raw, surface) {
                (Some(path), _) => usage(read_raw(&path).and_then(|r| Ok(SnakeGraph::from_raw(&r)?)))?,
                (None, Some(surface)) => {
                    let (Some(t), Some(a)) = (triangulation, arc) else {
                        return Err(Failure::Usage(anyhow!("snake needs --triangulation and --arc")));
                    };
                    let t = usage(parse_triangulation(surface, &t))?;
                    let a = usage(parse_arc(&a))?;
                    match instance_graph(&t, &a)? {
                        Some((_, g)) => g,
                        None => return Err(Failure::Usage(anyhow!("{a} crosses no arc of the triangulation"))),
                    }
                }
                (None, None) => unreachable!("clap requires --surface or --raw"),
            };
            let v = json!({ "graph": g.to_raw(), "matchings": enumerate_matchings(&g).len() });
            out.json(&v)?;
        }
        Command::Expand { instance, mode, out } => {
            let (t, a) = usage(instance.parse())?;
            let l = expand(&t, &a, mode)?;
            out.json(&json!({ "expansion": l.to_string(), "laurent": l.to_json() }))?;
        }
        Command::Newton { instance, mode, out } => {
            let (t, a) = usage(instance.parse())?;
            let l = expand(&t, &a, mode)?;
            let n = newton_polytope(&l)?;
            let missing = n.missing_lattice_points(&l.support())?;
            let vertices: Vec<Vec<String>> =
                n.vertices().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            out.json(&json!({
                "vars": l.vars().iter().map(|v| v.symbol()).collect::<Vec<_>>(),
                "support": l.support(),
                "vertices": vertices,
                "lattice_points": n.lattice_points(),
                "missing": missing,
                "saturated": missing.is_empty(),
                "empty": n.is_empty_polytope(),
            }))?;
        }
        Command::Check { instance, mode, out } => {
            let (t, a) = usage(instance.parse())?;
            let modes = if mode.is_empty() { Mode::ALL.to_vec() } else { mode };
            let report = Report::from_verdicts(modes.iter().map(|&m| check_instance(&t, &a, m, false)).collect());
            out.write(&report.to_jsonl())?;
            return Ok(report.all_pass());
        }
        Command::Verify { surface, mode, jobs, lifted, timings, out } => {
            let mut config = CorpusConfig::desk_scale();
            if !surface.is_empty() {
                config.surfaces = surface;
            }
            if !mode.is_empty() {
                config.modes = mode;
            }
            config.jobs = jobs;
            config.timings = timings;
            for w in config.warnings() {
                eprintln!("warning: {w} (desk scale is polygon:{DESK_POLYGON_MAX}, punctured:{DESK_PUNCTURED_MAX})");
            }
            let report = run_corpus(&config)?;
            let mut text = report.to_jsonl();
            let mut ok = report.all_pass();
            if lifted {
                let verdicts = run_lifted_sweep(&config.surfaces, jobs)?;
                let failed = verdicts.iter().filter(|v| !v.pass).count();
                ok &= failed == 0;
                text.push_str(&lines(verdicts.iter().map(|v| json!(v)))?);
                text.push_str(&format!(
                    "{}\n",
                    json!({ "lifted_summary": { "graphs": verdicts.len(), "failed": failed } })
                ));
            }
            out.write(&text)?;
            return Ok(ok);
        }
        Command::Counterexample { raw, mode, out } => {
            let raw = usage(read_raw(&raw))?;
            let report = usage(run_counterexample(&raw, mode).map_err(Into::into))?;
            out.json(&serde_json::to_value(&report)?)?;
        }
        Command::Explain { instance, out } => {
            let (t, a) = usage(instance.parse())?;
            out.json(&explain_instance(&t, &a)?)?;
        }
    }
    Ok(true)
}

fn status(r: &Result<bool, Failure>) -> u8 {
    match r {
        Ok(true) => 0,
        Ok(false) | Err(Failure::Internal(_)) => 1,
        Err(Failure::Usage(_)) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = run(cli);
    if let Err(Failure::Usage(e) | Failure::Internal(e)) = &r {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(status(&r))
}
