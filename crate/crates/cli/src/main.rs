//! `cubeforge`: command-line front end for the cube complex toolkit.
//!
//! Exit status is 0 on success, 1 when the input is well formed but the
//! property asked about fails, and 2 when the input cannot be read.

mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use cubeforge::autos::{automorphisms, criterion_check_with, hyperplane_action, torelli_torsion_check};
use cubeforge::complex::{npc_check, parse, serialize, validate, Preset};
use cubeforge::genus::{genus_exact, genus_oracle};
use cubeforge::homology::{betti_numbers, h1};
use cubeforge::hyperplane::{hyperplanes, specialness, HyperplaneIdx};
use cubeforge::raag::{canonical_salvetti_map, covering_check, local_isometry_check, salvetti};
use cubeforge::surgery::{collapse, collapse_all_separating, genus1_normalize, hierarchy, split, HierarchyStep};
use cubeforge::whitehead::{blowup, enumerate_pairs, enumerate_partitions, WhiteheadPartition};
use cubeforge::{CubeComplex, Error, Integer, SimplicialGraph};

use report::{digest, OutputFormat, Report};

#[derive(Parser)]
#[command(name = "cubeforge", version, about = "Special cube complexes, hyperplanes and Salvetti blow-ups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    format: OutputFormat,
    /// Recorded in structured output; no command consumes randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks of a complex file.
    Validate { input: PathBuf },
    /// Link condition at every vertex.
    Npc { input: PathBuf },
    /// Hyperplanes, their carriers and the crossing graph.
    Hyperplanes { input: PathBuf },
    /// Hyperplane pathologies and the specialness verdict.
    Special { input: PathBuf },
    /// Betti numbers and torsion of H1.
    Homology { input: PathBuf },
    /// Hyperplane genus with a maximum witness.
    Genus {
        input: PathBuf,
        /// Cross-check against exhaustive subset enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Collapse one hyperplane; prints the quotient complex.
    Collapse {
        input: PathBuf,
        /// Hyperplane name (its smallest dual edge) or index.
        #[arg(long)]
        hyperplane: String,
    },
    /// Cut along one hyperplane; prints the cut complex.
    Split {
        input: PathBuf,
        #[arg(long)]
        hyperplane: String,
    },
    /// Collapse separating hyperplanes until none remain.
    Irreducible { input: PathBuf },
    /// Reduce a genus-one complex to a cover of a torus.
    #[command(name = "normalize-genus1")]
    NormalizeGenus1 { input: PathBuf },
    /// Alternate splits and separating collapses down to a point.
    Hierarchy { input: PathBuf },
    /// Salvetti complex of a graph file.
    Salvetti { graph: PathBuf },
    /// Map to the Salvetti complex of the crossing graph.
    #[command(name = "canonical-map")]
    CanonicalMap { input: PathBuf },
    /// Whitehead pairs and partitions of a graph file.
    Whitehead { graph: PathBuf },
    /// Blow-up of the Salvetti complex along partitions `P0,P1,...`.
    Blowup {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        partitions: Vec<String>,
    },
    /// Cubical automorphisms and their action on hyperplanes.
    Autos { input: PathBuf },
    /// Sufficient conditions for automorphisms to act faithfully on H1.
    Criterion { input: PathBuf },
    /// Check that only the identity of a blow-up acts trivially on H1.
    Torelli {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        partitions: Vec<String>,
    },
    /// Emit a preset complex.
    Generate {
        /// interval, rose, cycle, torus, surface, or a full expression like `product(torus,interval)`.
        #[arg(long)]
        preset: String,
        /// Petals, cycle length or genus.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Library(e) => match e {
                Error::Parse { .. }
                | Error::UnknownTargetId(_)
                | Error::DuplicateId(_)
                | Error::Malformed(_)
                | Error::UnknownHyperplane(_)
                | Error::UnknownPreset(_)
                | Error::GraphMismatch(_)
                | Error::InvalidPartition(_) => 2,
                _ => 1,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(path: &PathBuf) -> CliResult<Vec<u8>> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn utf8(bytes: &[u8]) -> CliResult<&str> {
    std::str::from_utf8(bytes).map_err(|e| CliError::Usage(format!("input is not UTF-8: {e}")))
}

fn load_complex(path: &PathBuf) -> CliResult<(CubeComplex, String)> {
    let bytes = read_input(path)?;
    Ok((parse(utf8(&bytes)?)?, digest(&bytes)))
}

fn load_graph(path: &PathBuf) -> CliResult<(SimplicialGraph, String)> {
    let bytes = read_input(path)?;
    Ok((SimplicialGraph::parse(utf8(&bytes)?)?, digest(&bytes)))
}

/// Accepts a hyperplane name or a decimal index.
fn resolve_hyperplane(x: &CubeComplex, id: &str) -> CliResult<HyperplaneIdx> {
    let hs = hyperplanes(x);
    if let Some(h) = hs.iter().find(|h| h.name == id) {
        return Ok(h.index);
    }
    match id.parse::<usize>() {
        Ok(i) if i < hs.len() => Ok(i),
        _ => Err(CliError::Usage(format!("no hyperplane named `{id}`"))),
    }
}

/// Accepts `P3` or `3`, indexing the enumerated partitions.
fn resolve_partitions(g: &SimplicialGraph, ids: &[String]) -> CliResult<Vec<WhiteheadPartition>> {
    let all = enumerate_partitions(g);
    ids.iter()
        .map(|id| {
            let digits = id.strip_prefix('P').unwrap_or(id);
            digits
                .parse::<usize>()
                .ok()
                .and_then(|i| all.get(i).cloned())
                .ok_or_else(|| CliError::Usage(format!("no partition `{id}` ({} enumerated)", all.len())))
        })
        .collect()
}

fn names(x: &CubeComplex, hs: &[HyperplaneIdx]) -> Vec<String> {
    let list = hyperplanes(x);
    hs.iter().map(|h| list.get(*h).map(|p| p.name.clone()).unwrap_or_default()).collect()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library reports are serialisable")
}

fn run(cli: &Cli) -> CliResult<Report> {
    let seed = cli.seed;
    let report = match &cli.command {
        Command::Validate { input } => {
            let (x, d) = load_complex(input)?;
            let v = validate(&x);
            let mut r = Report::new("validate", Some(d), seed);
            r.passed = v.is_valid();
            r.field("valid", v.is_valid()).field("counts", x.counts());
            for e in &v.entries {
                r.field("entry", to_value(e));
            }
            r
        }
        Command::Npc { input } => {
            let (x, d) = load_complex(input)?;
            let v = npc_check(&x);
            let mut r = Report::new("npc", Some(d), seed);
            r.passed = v.passes();
            r.field("npc", if v.passes() { "pass" } else { "fail" });
            for e in &v.violations {
                r.field("violation", to_value(e));
            }
            r
        }
        Command::Hyperplanes { input } => {
            let (x, d) = load_complex(input)?;
            let hs = hyperplanes(&x);
            let mut r = Report::new("hyperplanes", Some(d), seed);
            r.field("hyperplanes", hs.len());
            for h in hs.iter() {
                let dual: Vec<&str> = h.dual_edges.iter().map(|e| x.id(*e)).collect();
                r.field(
                    &hs.vertex_name(h.index),
                    format!(
                        "name={} two_sided={} self_intersecting={} dual_edges=[{}] carrier={}",
                        h.name,
                        h.two_sided,
                        h.self_intersecting,
                        dual.join(","),
                        h.carrier.len()
                    ),
                );
            }
            let g = hs.crossing_graph();
            let crossings: Vec<String> = g.edges().iter().map(|(a, b)| format!("{}-{}", g.name(*a), g.name(*b))).collect();
            r.field("crossings", crossings);
            r
        }
        Command::Special { input } => {
            let (x, d) = load_complex(input)?;
            let s = specialness(&x);
            let mut r = Report::new("special", Some(d), seed);
            r.passed = s.is_special();
            r.field("special", s.is_special())
                .field("one_sided", names(&x, &s.one_sided))
                .field("self_intersecting", names(&x, &s.self_intersecting))
                .field("direct_self_osculation", s.direct_self_osculation.len())
                .field("indirect_self_osculation", s.indirect_self_osculation.len())
                .field("interosculation", s.interosculating.len());
            for o in s.direct_self_osculation.iter().chain(&s.interosculating) {
                r.field("osculation", to_value(o));
            }
            r
        }
        Command::Homology { input } => {
            let (x, d) = load_complex(input)?;
            let s = h1::<Integer>(&x)?;
            let torsion: Vec<String> = s.torsion.iter().map(|t| t.to_string()).collect();
            let mut r = Report::new("homology", Some(d), seed);
            r.field("betti", betti_numbers::<Integer>(&x))
                .field("betti1", s.betti1)
                .field("torsion", torsion)
                .field("euler", x.euler_characteristic());
            r
        }
        Command::Genus { input, oracle } => {
            let (x, d) = load_complex(input)?;
            let g = genus_exact(&x)?;
            let mut r = Report::new("genus", Some(d), seed);
            r.field("genus", g.genus).field("witness", names(&x, &g.witness));
            if *oracle {
                let o = genus_oracle(&x)?;
                r.passed = o == g.genus;
                r.field("oracle", o).field("agree", o == g.genus);
            }
            r
        }
        Command::Collapse { input, hyperplane } => {
            let (x, d) = load_complex(input)?;
            let h = resolve_hyperplane(&x, hyperplane)?;
            let q = collapse(&x, h)?;
            let mut r = Report::new("collapse", Some(d), seed);
            r.field("counts", q.complex.counts())
                .log(format!("collapsed {}", names(&x, &[h])[0]))
                .artifact(serialize(&q.complex));
            r
        }
        Command::Split { input, hyperplane } => {
            let (x, d) = load_complex(input)?;
            let h = resolve_hyperplane(&x, hyperplane)?;
            let s = split(&x, h)?;
            let mut r = Report::new("split", Some(d), seed);
            r.field("counts", s.complex.counts())
                .field("h_minus", s.h_minus.clone())
                .field("h_plus", s.h_plus.clone())
                .log(format!("split {}", names(&x, &[h])[0]))
                .artifact(serialize(&s.complex));
            r
        }
        Command::Irreducible { input } => {
            let (x, d) = load_complex(input)?;
            let (y, collapsed) = collapse_all_separating(&x)?;
            let mut r = Report::new("irreducible", Some(d), seed);
            r.field("counts", y.counts());
            for c in collapsed {
                r.log(format!("collapsed {c}"));
            }
            r.artifact(serialize(&y));
            r
        }
        Command::NormalizeGenus1 { input } => {
            let (x, d) = load_complex(input)?;
            let n = genus1_normalize(&x)?;
            let mut r = Report::new("normalize-genus1", Some(d), seed);
            r.field("counts", n.complex.counts()).field("covering_degree", n.covering_degree);
            for c in &n.log {
                r.log(format!("collapsed {c}"));
            }
            r.artifact(serialize(&n.complex));
            r
        }
        Command::Hierarchy { input } => {
            let (x, d) = load_complex(input)?;
            let h = hierarchy(&x)?;
            let mut r = Report::new("hierarchy", Some(d), seed);
            r.field("root", h.root_counts.clone());
            for (i, level) in h.levels.iter().enumerate() {
                let steps: Vec<String> = level
                    .steps
                    .iter()
                    .map(|s| match s {
                        HierarchyStep::Split { hyperplane } => format!("split {hyperplane}"),
                        HierarchyStep::CollapseSeparating { hyperplanes } => {
                            format!("collapse {} separating", hyperplanes.len())
                        }
                    })
                    .collect();
                r.field(&format!("level {i}"), format!("{} -> {:?}", steps.join("; "), level.counts));
            }
            r.field("leaf", h.leaf_counts().to_vec());
            r
        }
        Command::Salvetti { graph } => {
            let (g, d) = load_graph(graph)?;
            let x = salvetti(&g);
            let mut r = Report::new("salvetti", Some(d), seed);
            r.field("counts", x.counts()).artifact(serialize(&x));
            r
        }
        Command::CanonicalMap { input } => {
            let (x, d) = load_complex(input)?;
            let m = canonical_salvetti_map(&x)?;
            let li = local_isometry_check(&x, &m.salvetti, &m.map);
            let mut r = Report::new("canonical-map", Some(d), seed);
            r.passed = li.passes();
            let edges: Vec<String> = m.graph.edges().iter().map(|(a, b)| format!("{}-{}", m.graph.name(*a), m.graph.name(*b))).collect();
            r.field("graph_vertices", m.graph.names().to_vec())
                .field("graph_edges", edges)
                .field("local_isometry", li.passes())
                .field("covering", covering_check(&x, &m.salvetti, &m.map));
            for v in &li.violations {
                r.field("violation", to_value(v));
            }
            r
        }
        Command::Whitehead { graph } => {
            let (g, d) = load_graph(graph)?;
            let parts = enumerate_partitions(&g);
            let mut r = Report::new("whitehead", Some(d), seed);
            r.field("pairs", enumerate_pairs(&g).len()).field("partitions", parts.len());
            for (i, p) in parts.iter().enumerate() {
                r.field(&format!("P{i}"), p.display(&g));
            }
            r
        }
        Command::Blowup { graph, partitions } => {
            let (g, d) = load_graph(graph)?;
            let pi = resolve_partitions(&g, partitions)?;
            let b = blowup(&g, &pi)?;
            let mut r = Report::new("blowup", Some(d), seed);
            r.field("counts", b.complex.counts())
                .field("regions", b.regions.iter().map(|x| x.label()).collect::<Vec<_>>())
                .artifact(serialize(&b.complex));
            r
        }
        Command::Autos { input } => {
            let (x, d) = load_complex(input)?;
            let autos = automorphisms(&x)?;
            let hs = hyperplanes(&x);
            let mut r = Report::new("autos", Some(d), seed);
            r.field("automorphisms", autos.len());
            for (i, f) in autos.iter().enumerate() {
                let action: Vec<String> = hyperplane_action(&x, f).iter().map(|h| hs.vertex_name(*h)).collect();
                r.field(&format!("f{i}"), action);
            }
            r
        }
        Command::Criterion { input } => {
            let (x, d) = load_complex(input)?;
            let autos = automorphisms(&x)?;
            let c = criterion_check_with(&x, &autos)?;
            let mut r = Report::new("criterion", Some(d), seed);
            r.passed = c.verdict();
            r.field("automorphisms", c.automorphisms)
                .field("condition1", c.condition1())
                .field("condition2", c.condition2())
                .field("condition3_strict", c.condition3_strict())
                .field("condition3_homological", c.condition3_homological())
                .field("verdict", if c.verdict() { "pass" } else { "fail" });
            r
        }
        Command::Torelli { graph, partitions } => {
            let (g, d) = load_graph(graph)?;
            let pi = resolve_partitions(&g, partitions)?;
            let t = torelli_torsion_check(&g, &pi)?;
            let mut r = Report::new("torelli", Some(d), seed);
            r.passed = t.passes();
            let word = if t.passes() { "pass" } else { "fail" };
            r.field(word, format!("{}/{} nontrivial on H1", t.nontrivial, t.automorphisms - 1))
                .field("criterion", if t.criterion.verdict() { "pass" } else { "fail" })
                .field("report", to_value(&t));
            r
        }
        Command::Generate { preset, n } => {
            let expr = match (preset.as_str(), n) {
                ("rose" | "cycle" | "surface", Some(n)) => format!("{preset}:{n}"),
                ("rose" | "cycle" | "surface", None) => {
                    return Err(CliError::Usage(format!("preset `{preset}` needs --n")));
                }
                (other, _) => other.to_string(),
            };
            let x = Preset::parse(&expr)?.build()?;
            let mut r = Report::new("generate", None, seed);
            r.field("preset", expr).field("counts", x.counts()).artifact(serialize(&x));
            r
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
