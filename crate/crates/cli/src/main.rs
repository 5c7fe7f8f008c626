use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use autorel::dot::{automaton_to_dot, relation_slice_to_dot, DotStyle};
use autorel::tm::{self, fixtures as machines};
use autorel::{
    bounded_color_search, decompose, definability_to_separability, fixtures, incompatibility_graph, kprod_definability,
    krec_definability, lift_to_kprod, min_prod, one_prod_separability, reduce_coloring_to_sep, reduce_sep_to_coloring,
    separator_from_coloring, verify_coloring, verify_separator, Alphabet, AutomaticRelation, Automaton,
    ColoringVerdict, Evaluator, PartitionedRecognizable, RecognizableRelation, RegularColoring, StepBudget,
    TuringMachine, Word,
};
use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "autorel", version, about = "Separability, colorability and definability of automatic relations")]
struct Cli {
    /// Largest automaton any construction may build.
    #[arg(long, global = true, value_name = "STATES")]
    state_budget: Option<usize>,
    /// Step limit for searches (rectangle covers, coloring search).
    #[arg(long, global = true, value_name = "STEPS", default_value_t = 50_000_000)]
    steps: u64,
    #[command(subcommand)]
    command: Command,
}

/// Relation arguments are a JSON automaton file, a file holding a relation
/// expression, or an inline expression such as `(fc 1)`.
#[derive(Subcommand)]
enum Command {
    /// Check that a recognizable relation separates R1 from R2.
    SepVerify {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
    },
    /// Decide separability by a single product.
    Sep1prod {
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether R is in kREC; the witness is a partition with index pairs.
    DefinableKrec {
        #[arg(long)]
        r: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether R is a union of at most k products.
    DefinableKprod {
        #[arg(long)]
        r: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least number of products defining R, up to kmax.
    MinProd {
        #[arg(long)]
        r: String,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Incompatibility graph of (R1, R2).
    Incomp {
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reductions between separability, colorability and definability.
    Reduce {
        #[command(subcommand)]
        kind: Reduction,
    },
    /// Check that a coloring is a proper coloring of a graph.
    ColorVerify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Search colorings given by small DFAs. Absence is not a proof.
    ColorSearch {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long = "states")]
        states: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a separator of (R1, R2) from a coloring of their incompatibility graph.
    SeparatorFromColoring {
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend (R1, R2) with fresh symbols for k products; optionally lift a separator.
    LiftKprod {
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_r1: Option<PathBuf>,
        #[arg(long)]
        out_r2: Option<PathBuf>,
        /// A separator of the original pair to lift.
        #[arg(long)]
        s: Option<PathBuf>,
        #[arg(long)]
        out_s: Option<PathBuf>,
    },
    /// Configuration graph of a Turing machine.
    TmCompile {
        /// Machine JSON file or fixture name.
        #[arg(long)]
        tm: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the language of configurations here.
        #[arg(long)]
        configs_out: Option<PathBuf>,
    },
    /// Well-formedness checks; the backward-path check is bounded and advisory.
    TmCheck {
        #[arg(long)]
        tm: String,
        #[arg(long, default_value_t = 32)]
        depth: usize,
        /// Start backward searches from configurations up to this length.
        #[arg(long, default_value_t = 3)]
        sample_len: usize,
    },
    /// The k-colorability gadget graph of a machine.
    TmThm4 {
        #[arg(long)]
        tm: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the coloring built from the reachable configurations (the
        /// machine must halt within --max-steps).
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// The padded machine whose reachable set is never regular by accident.
    TmPad {
        #[arg(long)]
        tm: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded breadth-first search from a word or a machine's initial configuration.
    Reach {
        #[arg(long, conflicts_with = "tm", required_unless_present = "tm")]
        r: Option<String>,
        #[arg(long, requires = "r")]
        start: Option<String>,
        #[arg(long)]
        tm: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 10_000)]
        max_vertices: usize,
    },
    /// Graphviz output of a relation slice or of its automaton.
    ExportDot {
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Fill vertices by color.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Draw this relation's edges dashed.
        #[arg(long)]
        dashed: Option<String>,
        /// Draw the automaton instead of the graph.
        #[arg(long)]
        automaton: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the example instances as files.
    Fixtures {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum Reduction {
    /// (R1, R2) to its incompatibility graph.
    SepToColoring {
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A graph E to the pair (E, Id).
    ColoringToSep {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out_r1: Option<PathBuf>,
        #[arg(long)]
        out_r2: Option<PathBuf>,
    },
    /// R to the pair (R, complement of R).
    Definability {
        #[arg(long)]
        r: String,
        #[arg(long)]
        out_r1: Option<PathBuf>,
        #[arg(long)]
        out_r2: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] autorel::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

enum Verdict {
    Yes,
    No,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = out {
        write(p, text)?;
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn load_relation(spec: &str) -> Result<AutomaticRelation> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        if text.trim_start().starts_with('{') {
            return Ok(AutomaticRelation::new(Automaton::from_json(&text)?)?);
        }
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        return Ok(Evaluator::new(base).eval_str(&text)?);
    }
    if spec.ends_with(".json") || spec.ends_with(".rel") {
        return Err(CliError::Io { path: path.to_path_buf(), source: std::io::ErrorKind::NotFound.into() });
    }
    Ok(Evaluator::default().eval_str(spec)?)
}

/// Either separator format; partitioned witnesses are read as their union of products.
fn load_separator(path: &Path) -> Result<RecognizableRelation> {
    let text = read(path)?;
    match RecognizableRelation::from_json(&text) {
        Ok(s) => Ok(s),
        Err(e) => PartitionedRecognizable::from_json(&text).map(|p| p.to_recognizable()).map_err(|_| e.into()),
    }
}

fn load_machine(spec: &str) -> Result<TuringMachine> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(TuringMachine::from_json(&read(path)?)?);
    }
    machines::machine(spec).ok_or_else(|| {
        CliError::Usage(format!(
            "`{spec}` is neither a file nor a fixture machine ({})",
            machines::MACHINE_NAMES.join(", ")
        ))
    })
}

fn word(a: &Alphabet, w: &Word) -> String {
    a.format_word(w)
}

fn describe(r: &AutomaticRelation) -> String {
    let plural = |n: usize, what: &str| format!("{n} {what}{}", if n == 1 { "" } else { "s" });
    format!("{} over {}", plural(r.automaton().num_states(), "state"), plural(r.alphabet().len(), "symbol"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.state_budget {
        autorel::set_state_budget(n);
    }
    let mut budget = StepBudget::new(cli.steps);
    match run(cli.command, &mut budget) {
        Ok(Verdict::Yes) => ExitCode::from(0),
        Ok(Verdict::No) => ExitCode::from(1),
        Err(CliError::Lib(e)) if e.is_resource_exhaustion() => {
            eprintln!("gave up: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, budget: &mut StepBudget) -> Result<Verdict> {
    match command {
        Command::SepVerify { s, r1, r2 } => {
            let (s, r1, r2) = (load_separator(&s)?, load_relation(&r1)?, load_relation(&r2)?);
            let a = s.alphabet().clone();
            let v = verify_separator(&s, &r1, &r2)?;
            if let Some((u, w)) = &v.containment {
                println!("FAILS_CONTAINMENT ({}, {}) is in R1 but not in S", word(&a, u), word(&a, w));
            }
            if let Some((u, w)) = &v.disjoint {
                println!("FAILS_DISJOINT ({}, {}) is in R2 and in S", word(&a, u), word(&a, w));
            }
            if v.separates() {
                println!("SEPARATES");
                return Ok(Verdict::Yes);
            }
            Ok(Verdict::No)
        }
        Command::Sep1prod { r1, r2, out } => match one_prod_separability(&load_relation(&r1)?, &load_relation(&r2)?)? {
            Some(s) => {
                println!("separable by the product of the projections of R1");
                emit(out.as_ref(), &s.canonical()?.to_json())?;
                Ok(Verdict::Yes)
            }
            None => {
                println!("not separable by a single product");
                Ok(Verdict::No)
            }
        },
        Command::DefinableKrec { r, k, out } => {
            let r = load_relation(&r)?;
            match krec_definability(&r, k)? {
                Some(w) => {
                    println!("in {k}REC with {} classes and {} pairs", w.partition().len(), w.pairs().len());
                    let reps = decompose(&r, k)?.representatives;
                    for (i, rep) in reps.iter().enumerate() {
                        println!("  class {i}: representative {}", word(r.alphabet(), rep));
                    }
                    emit(out.as_ref(), &w.to_json())?;
                    Ok(Verdict::Yes)
                }
                None => {
                    println!("not in {k}REC: more than {k} classes");
                    Ok(Verdict::No)
                }
            }
        }
        Command::DefinableKprod { r, k, out } => match kprod_definability(&load_relation(&r)?, k, budget)? {
            Some(s) => {
                println!("union of {} products", s.len());
                emit(out.as_ref(), &s.canonical()?.to_json())?;
                Ok(Verdict::Yes)
            }
            None => {
                println!("not a union of {k} products");
                Ok(Verdict::No)
            }
        },
        Command::MinProd { r, kmax, out } => match min_prod(&load_relation(&r)?, kmax, budget)? {
            Some((k, s)) => {
                println!("{k}");
                emit(out.as_ref(), &s.canonical()?.to_json())?;
                Ok(Verdict::Yes)
            }
            None => {
                println!("none up to {kmax}");
                Ok(Verdict::No)
            }
        },
        Command::Incomp { r1, r2, out } => {
            let g = incompatibility_graph(&load_relation(&r1)?, &load_relation(&r2)?)?;
            println!("incompatibility graph: {}", describe(&g));
            emit(out.as_ref(), &g.automaton().to_json())?;
            Ok(Verdict::Yes)
        }
        Command::Reduce { kind } => reduce(kind),
        Command::ColorVerify { graph, coloring } => {
            let g = load_relation(&graph)?;
            let c = RegularColoring::from_json(&read(&coloring)?)?;
            let a = c.alphabet().clone();
            match verify_coloring(&g, &c)? {
                ColoringVerdict::Proper => {
                    println!("PROPER with {} colors", c.len());
                    Ok(Verdict::Yes)
                }
                ColoringVerdict::NotPartition(d) => {
                    println!("NOT_PARTITION {}", autorel::coloring::describe_defect(&a, &d));
                    Ok(Verdict::No)
                }
                ColoringVerdict::MonochromeEdge { u, v, color } => {
                    println!("MONOCHROME_EDGE ({}, {}) in color {color}", word(&a, &u), word(&a, &v));
                    Ok(Verdict::No)
                }
            }
        }
        Command::ColorSearch { graph, k, states, out } => {
            match bounded_color_search(&load_relation(&graph)?, k, states, budget)? {
                Some(c) => {
                    println!("found a {k}-coloring from a DFA with at most {states} states");
                    for (i, col) in c.colors().iter().enumerate() {
                        let sample: Vec<String> =
                            col.enumerate(2)?.into_iter().take(6).map(|t| word(c.alphabet(), &t[0])).collect();
                        println!("  color {i}: {} ...", sample.join(" "));
                    }
                    emit(out.as_ref(), &c.to_json())?;
                    Ok(Verdict::Yes)
                }
                None => {
                    println!("no coloring of this shape (not a proof that none exists)");
                    Ok(Verdict::No)
                }
            }
        }
        Command::SeparatorFromColoring { r1, r2, coloring, out } => {
            let c = RegularColoring::from_json(&read(&coloring)?)?;
            let s = separator_from_coloring(&load_relation(&r1)?, &load_relation(&r2)?, &c)?;
            println!("separator with {} products (verified)", s.len());
            emit(out.as_ref(), &s.canonical()?.to_json())?;
            Ok(Verdict::Yes)
        }
        Command::LiftKprod { r1, r2, k, out_r1, out_r2, s, out_s } => {
            let l = lift_to_kprod(&load_relation(&r1)?, &load_relation(&r2)?, k)?;
            let fresh: Vec<String> = l.fresh.iter().map(|(a, b)| format!("{a}/{b}")).collect();
            println!("fresh symbols: {}", if fresh.is_empty() { "none".into() } else { fresh.join(" ") });
            emit(out_r1.as_ref(), &l.r1.automaton().to_json())?;
            emit(out_r2.as_ref(), &l.r2.automaton().to_json())?;
            if let Some(p) = s {
                let lifted = l.lift_separator(&load_separator(&p)?)?;
                let ok = verify_separator(&lifted, &l.r1, &l.r2)?.separates();
                println!(
                    "lifted separator with {} products {}",
                    lifted.len(),
                    if ok { "separates" } else { "does not separate" }
                );
                emit(out_s.as_ref(), &lifted.canonical()?.to_json())?;
                return Ok(if ok { Verdict::Yes } else { Verdict::No });
            }
            Ok(Verdict::Yes)
        }
        Command::TmCompile { tm: spec, out, configs_out } => {
            let t = load_machine(&spec)?;
            let g = tm::config_graph(&t)?;
            println!("configuration graph: {}", describe(&g));
            emit(out.as_ref(), &g.automaton().to_json())?;
            if configs_out.is_some() {
                let c = tm::configs_language(&t, g.alphabet())?.minimize()?;
                emit(configs_out.as_ref(), &c.to_json())?;
            }
            Ok(Verdict::Yes)
        }
        Command::TmCheck { tm: spec, depth, sample_len } => {
            let t = load_machine(&spec)?;
            let r = tm::wf_checks(&t, depth, sample_len)?;
            let a = &r.alphabet;
            let yes = |b: bool| if b { "yes" } else { "no" };
            println!("initial configuration has in-degree 0: {}", yes(r.initial_in_degree_zero));
            match &r.functional_violation {
                None => println!("deterministic (out-degree ≤ 1): yes"),
                Some((c, x, y)) => {
                    println!("deterministic: no, {} → {} and {}", word(a, c), word(a, x), word(a, y))
                }
            }
            match &r.co_functional_violation {
                None => println!("reversible (in-degree ≤ 1): yes"),
                Some((c, x, y)) => println!("reversible: no, {} and {} → {}", word(a, x), word(a, y), word(a, c)),
            }
            let b = &r.backward;
            match &b.cycle {
                Some(cycle) => {
                    let path: Vec<String> = cycle.iter().map(|w| word(a, w)).collect();
                    println!("infinite backward path (cycle): {}", path.join(" → "));
                }
                None => println!(
                    "advisory: no backward cycle within depth {} from {} configurations ({} still open at the depth limit)",
                    b.depth, b.sampled, b.deep
                ),
            }
            Ok(if r.passes() { Verdict::Yes } else { Verdict::No })
        }
        Command::TmThm4 { tm: spec, k, out, coloring_out, max_steps } => {
            let t = load_machine(&spec)?;
            let g = tm::thm4_graph(&t, k)?;
            println!("gadget graph: {}", describe(&g));
            emit(out.as_ref(), &g.automaton().to_json())?;
            if coloring_out.is_some() {
                let a = t.config_alphabet()?;
                let reach = tm::simulated_reach(&t, &a, max_steps)?
                    .ok_or_else(|| CliError::Usage(format!("the machine did not halt within {max_steps} steps")))?;
                println!("{} reachable configurations", reach.len());
                let c = tm::thm4_coloring(&t, k, &Automaton::from_words(&a, &reach)?)?;
                let ok = verify_coloring(&g, &c)?.is_proper();
                println!("reach coloring is {}", if ok { "PROPER" } else { "not proper" });
                emit(coloring_out.as_ref(), &c.to_json())?;
                return Ok(if ok { Verdict::Yes } else { Verdict::No });
            }
            Ok(Verdict::Yes)
        }
        Command::TmPad { tm: spec, out } => {
            let p = tm::pad_transform(&load_machine(&spec)?)?;
            println!("padded machine: {} states, {} tape symbols", p.states().len(), p.tape().len());
            emit(out.as_ref(), &p.to_json())?;
            Ok(Verdict::Yes)
        }
        Command::Reach { r, start, tm: spec, max_len, max_vertices } => {
            let (g, from) = match (r, spec) {
                (Some(r), _) => {
                    let g = load_relation(&r)?;
                    let from = g.alphabet().parse_word(start.as_deref().unwrap_or(""))?;
                    (g, from)
                }
                (None, Some(spec)) => {
                    let t = load_machine(&spec)?;
                    let g = tm::config_graph(&t)?;
                    let from = t.encode(g.alphabet(), &t.initial_config())?;
                    (g, from)
                }
                (None, None) => return Err(CliError::Usage("give --r or --tm".into())),
            };
            let res = tm::reach_bfs(&g, &from, max_len, max_vertices)?;
            for w in &res.words {
                println!("{}", word(g.alphabet(), w));
            }
            println!("{} words{}", res.words.len(), if res.truncated { " (truncated)" } else { "" });
            Ok(Verdict::Yes)
        }
        Command::ExportDot { r, max_len, coloring, dashed, automaton, out } => {
            let g = load_relation(&r)?;
            let text = if automaton {
                automaton_to_dot(g.automaton())
            } else {
                let c = coloring.map(|p| read(&p).and_then(|t| Ok(RegularColoring::from_json(&t)?))).transpose()?;
                let d = dashed.map(|x| load_relation(&x)).transpose()?;
                relation_slice_to_dot(&g, max_len, &DotStyle { coloring: c.as_ref(), dashed: d.as_ref() })?
            };
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(Verdict::Yes)
        }
        Command::Fixtures { dir } => {
            fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
            for (name, text) in fixture_files()? {
                write(&dir.join(&name), &text)?;
                println!("{}", dir.join(&name).display());
            }
            Ok(Verdict::Yes)
        }
    }
}

fn reduce(kind: Reduction) -> Result<Verdict> {
    match kind {
        Reduction::SepToColoring { r1, r2, out } => {
            let g = reduce_sep_to_coloring(&load_relation(&r1)?, &load_relation(&r2)?)?;
            println!("colorability instance: {}", describe(&g));
            emit(out.as_ref(), &g.automaton().to_json())?;
        }
        Reduction::ColoringToSep { graph, out_r1, out_r2 } => {
            let (r1, r2) = reduce_coloring_to_sep(&load_relation(&graph)?)?;
            println!("separability instance: R1 {}, R2 = Id", describe(&r1));
            emit(out_r1.as_ref(), &r1.automaton().to_json())?;
            emit(out_r2.as_ref(), &r2.automaton().to_json())?;
        }
        Reduction::Definability { r, out_r1, out_r2 } => {
            let (r1, r2) = definability_to_separability(&load_relation(&r)?)?;
            println!("separability instance: R1 {}, R2 {}", describe(&r1), describe(&r2));
            emit(out_r1.as_ref(), &r1.automaton().to_json())?;
            emit(out_r2.as_ref(), &r2.automaton().to_json())?;
        }
    }
    Ok(Verdict::Yes)
}

fn fixture_files() -> Result<Vec<(String, String)>> {
    let rel = |r: AutomaticRelation| r.automaton().to_json();
    let mut files = Vec::new();
    for c in 1..=3 {
        files.push((format!("fc{c}.json"), rel(fixtures::fc(c)?)));
        files.push((format!("fc{c}-coloring.json"), fixtures::fc_coloring(c)?.to_json()));
    }
    let (b1, b2) = fixtures::appendix_b()?;
    files.push(("appendixB-incomp.json".into(), rel(incompatibility_graph(&b1, &b2)?)));
    files.push(("appendixB-r1.json".into(), rel(b1)));
    files.push(("appendixB-r2.json".into(), rel(b2)));
    files.push(("appendixB-coloring.json".into(), fixtures::length_parity_coloring(&fixtures::binary())?.to_json()));
    files.push(("example2-r1.json".into(), rel(fixtures::fc(1)?)));
    files.push(("example2-r2.json".into(), rel(fixtures::fc(2)?)));
    files.push(("example2-separator.json".into(), fixtures::example2_separator()?.canonical()?.to_json()));
    files.push((
        "example2-mutated-separator.json".into(),
        fixtures::example2_mutated_separator()?.canonical()?.to_json(),
    ));
    files.push(("tree.json".into(), rel(fixtures::tree()?)));
    files.push(("tree-coloring.json".into(), fixtures::tree_coloring()?.to_json()));
    for name in machines::MACHINE_NAMES {
        let t = machines::machine(name).expect("listed machine");
        files.push((format!("{name}.tm.json"), t.to_json()));
    }
    files.push(("thm4-demo-graph.json".into(), rel(tm::thm4_graph(&machines::thm4_demo(), 2)?)));
    files.sort();
    Ok(files)
}
