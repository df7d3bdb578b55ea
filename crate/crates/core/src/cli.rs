//! The `stab-lu` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::census::{census, census_from_db, CensusRow, NATIVE_LIMIT};
use crate::error::{Error, Result};
use crate::graphstate::{complete, cycle, kneser, path, star, Graph, VertexSet};
use crate::mls::mls_cover;
use crate::oracle::DEFAULT_GUARD;
use crate::pipeline::{check_lc, check_lu, Certificate, Stage, Verdict};

pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "stab-lu",
    version,
    about = "LU and LC equivalence of graph states"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lu,
    Lc,
    Lcr,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide equivalence of two graph states.
    Check {
        graphs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Lu)]
        mode: Mode,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r_max: Option<u32>,
        /// kneser:k:t1,t2  star:n  ghz-pair
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Print a minimal local set cover.
    Mls { graph: String },
    /// Cut ranks of the given 1-indexed vertex sets such as `2,3`, or of all sets.
    Cutrank { graph: String, sets: Vec<String> },
    /// Count LC orbits and search for LU-equivalent pairs across them.
    Census {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        db: Option<PathBuf>,
    },
    /// Check a certificate against two graphs.
    Verify {
        certificate: PathBuf,
        graph: String,
        graph_prime: String,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        max_n: usize,
    },
    /// Print a named graph.
    Gen {
        /// kneser:k:t1,t2[,hat]  star:n  complete:n  path:n  cycle:n  empty:n  random:n:p
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Reads a graph from a file, or parses the argument as graph6 text.
pub fn load_graph(arg: &str) -> Result<Graph> {
    let p = Path::new(arg);
    if p.is_file() {
        Graph::parse_any(&fs::read_to_string(p)?)
    } else {
        Graph::from_graph6(arg)
    }
}

fn parse_num(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a number, got {s:?}")))
}

fn parse_kneser(rest: &str) -> Result<(usize, Vec<usize>, bool)> {
    let (k, sizes) = rest
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected kneser:k:t1,t2, got {rest:?}")))?;
    let mut hat = false;
    let mut ts = Vec::new();
    for part in sizes.split(',') {
        if part.trim() == "hat" {
            hat = true;
        } else {
            ts.push(parse_num(part)?);
        }
    }
    Ok((parse_num(k)?, ts, hat))
}

/// A single named graph.
pub fn builtin_graph(spec: &str, seed: u64) -> Result<Graph> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "kneser" => {
            let (k, ts, hat) = parse_kneser(rest)?;
            kneser(k, &ts, hat)
        }
        "star" => Ok(star(parse_num(rest)?)),
        "complete" => Ok(complete(parse_num(rest)?)),
        "path" => Ok(path(parse_num(rest)?)),
        "cycle" => Ok(cycle(parse_num(rest)?)),
        "empty" => Ok(Graph::empty(parse_num(rest)?)),
        "random" => {
            let (n, p) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse("expected random:n:p".into()))?;
            let p: f64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad probability {p:?}")))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Parse(format!("probability {p} outside [0, 1]")));
            }
            Ok(Graph::random(
                parse_num(n)?,
                p,
                &mut ChaCha8Rng::seed_from_u64(seed),
            ))
        }
        _ => Err(Error::Parse(format!("unknown graph {spec:?}"))),
    }
}

/// A named pair of graphs for `check`.
pub fn builtin_pair(spec: &str) -> Result<(Graph, Graph)> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "kneser" => {
            let (k, ts, _) = parse_kneser(rest)?;
            Ok((kneser(k, &ts, false)?, kneser(k, &ts, true)?))
        }
        "star" => {
            let n = parse_num(rest)?;
            Ok((star(n), complete(n)))
        }
        "ghz-pair" => Ok((star(3), complete(3))),
        _ => Err(Error::Parse(format!("unknown builtin pair {spec:?}"))),
    }
}

pub fn parse_vertex_set(n: usize, s: &str) -> Result<VertexSet> {
    let mut set = VertexSet::zeros(n);
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let v = parse_num(part)?;
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        set.set(v - 1, true);
    }
    Ok(set)
}

/// Output text and exit status of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn render(format: Format, value: serde_json::Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json value"),
        Format::Text => text,
    }
}

pub fn cmd_check(
    graphs: &[String],
    mode: Mode,
    r_max: Option<u32>,
    builtin: Option<&str>,
    format: Format,
) -> Result<Outcome> {
    let (g, gp) = match (builtin, graphs) {
        (Some(b), []) => builtin_pair(b)?,
        (None, [a, b]) => (load_graph(a)?, load_graph(b)?),
        _ => return Err(Error::Parse("check takes two graphs or --builtin".into())),
    };
    let verdict = match mode {
        Mode::Lu => check_lu(&g, &gp, r_max)?,
        Mode::Lc => check_lc(&g, &gp)?,
        Mode::Lcr => {
            let r = r_max.ok_or_else(|| Error::Parse("--mode lcr needs --r-max".into()))?;
            match check_lu(&g, &gp, Some(r))? {
                Verdict::Equivalent(c) if c.r <= r => Verdict::Equivalent(c),
                Verdict::NotEquivalentUpTo { .. } => Verdict::NotEquivalent {
                    stage: Stage::System,
                    detail: format!("no solution with angles in multiples of 1/2^{r}"),
                },
                v => v,
            }
        }
    };
    let mut text = verdict.to_string();
    if let Some(c) = verdict.certificate() {
        for (q, fs) in c.composed.to_strings().iter().enumerate() {
            text.push_str(&format!("\n  qubit {}: {}", q + 1, fs.join(" ")));
        }
    }
    Ok(Outcome {
        output: render(format, verdict.to_json(), text),
        code: verdict.exit_code(),
    })
}

pub fn cmd_mls(graph: &str, format: Format) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let cover = mls_cover(&g)?;
    let text = cover
        .sets
        .iter()
        .map(|s| {
            format!(
                "{:?} type {} from {:?}",
                crate::mls::one_indexed(&s.m),
                if s.mls_type == crate::mls::MlsType::TypeI {
                    "I"
                } else {
                    "II"
                },
                crate::mls::one_indexed(&s.d)
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        output: render(format, cover.to_json(), text),
        code: 0,
    })
}

pub fn cmd_cutrank(graph: &str, sets: &[String], format: Format) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let n = g.n();
    let chosen: Vec<VertexSet> = if sets.is_empty() {
        if n > 16 {
            return Err(Error::Guard {
                what: "full cut-rank table vertex count",
                limit: 16,
                got: n,
            });
        }
        (0..1u64 << n).map(|m| VertexSet::from_u64(n, m)).collect()
    } else {
        sets.iter()
            .map(|s| parse_vertex_set(n, s))
            .collect::<Result<_>>()?
    };
    let rows: Vec<(Vec<usize>, usize)> = chosen
        .iter()
        .map(|m| (crate::mls::one_indexed(m), g.cut_rank(m)))
        .collect();
    let value = serde_json::Value::Array(
        rows.iter()
            .map(|(s, r)| json!({"set": s, "cut_rank": r}))
            .collect(),
    );
    let text = rows
        .iter()
        .map(|(s, r)| format!("{s:?}\t{r}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        output: render(format, value, text),
        code: 0,
    })
}

pub fn cmd_census(max_n: usize, db: Option<&Path>, format: Format) -> Result<Outcome> {
    let rows: Vec<CensusRow> = match db {
        Some(dir) => census_from_db(dir)?,
        None => {
            if max_n > NATIVE_LIMIT {
                return Err(Error::Guard {
                    what: "native census vertex count (use --db)",
                    limit: NATIVE_LIMIT,
                    got: max_n,
                });
            }
            (2..=max_n).map(census).collect::<Result<_>>()?
        }
    };
    let text = std::iter::once("n\torbits\tcut-rank pairs\tcompatible\tLU pairs".to_string())
        .chain(rows.iter().map(|r| {
            format!(
                "{}\t{}\t{}\t{}\t{}",
                r.n, r.lc_orbits, r.cut_rank_pairs, r.compatible_pairs, r.lu_equivalent_pairs
            )
        }))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        output: render(format, serde_json::to_value(&rows)?, text),
        code: 0,
    })
}

pub fn cmd_verify(
    certificate: &Path,
    graph: &str,
    graph_prime: &str,
    max_n: usize,
    format: Format,
) -> Result<Outcome> {
    let cert = Certificate::from_json(&fs::read_to_string(certificate)?)?;
    let g = load_graph(graph)?;
    let gp = load_graph(graph_prime)?;
    let result = cert.verify(&g, &gp, max_n.min(DEFAULT_GUARD));
    let dense = g.n() <= max_n.min(DEFAULT_GUARD);
    let (ok, reason) = match result {
        Ok(()) => (true, None),
        Err(Error::Certificate(r)) => (false, Some(r)),
        Err(e) => return Err(e),
    };
    let value = json!({"valid": ok, "dense_checked": dense, "reason": reason});
    let text = match &reason {
        None if dense => "certificate valid (symbolic and statevector checks)".to_string(),
        None => "certificate valid (symbolic checks; too large for a statevector)".to_string(),
        Some(r) => format!("certificate invalid: {r}"),
    };
    Ok(Outcome {
        output: render(format, value, text),
        code: if ok { 0 } else { 1 },
    })
}

pub fn cmd_gen(spec: &str, seed: u64, format: Format) -> Result<Outcome> {
    let g = builtin_graph(spec, seed)?;
    let value = serde_json::to_value(g.to_edge_list())?;
    Ok(Outcome {
        output: render(format, value, g.to_graph6()),
        code: 0,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let f = cli.format;
    match &cli.command {
        Command::Check {
            graphs,
            mode,
            r_max,
            builtin,
        } => cmd_check(graphs, *mode, *r_max, builtin.as_deref(), f),
        Command::Mls { graph } => cmd_mls(graph, f),
        Command::Cutrank { graph, sets } => cmd_cutrank(graph, sets, f),
        Command::Census { max_n, db } => cmd_census(*max_n, db.as_deref(), f),
        Command::Verify {
            certificate,
            graph,
            graph_prime,
            max_n,
        } => cmd_verify(certificate, graph, graph_prime, *max_n, f),
        Command::Gen { spec, seed } => cmd_gen(spec, *seed, f),
    }
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", o.output);
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
