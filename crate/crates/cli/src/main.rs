//! `arcwalk`: command-line front end for the arcwalk library.
//!
//! Exit codes: 0 on success or an affirmative verdict, 1 on a negative or
//! refuted verdict, 2 on a usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arcwalk::fibration::covers_at;
use arcwalk::text::{
    parse_document, parse_graph, parse_morphism, parse_raw_graphs, write_dot, write_graph,
    write_morphism, write_morphism_document,
};
use arcwalk::{
    adjacency, apply_block_code, arc_graph_n, basal_of, char_poly, compare_battery, distance,
    find_level_inverse, is_covering, is_epic_covering, validate, walkable_subgraph, zeta_data,
    Error, LevelSearch, RepresentativeChoice, LEVEL_SEARCH_LIMIT,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "arcwalk",
    version,
    about = "Invariants of finite directed multigraphs"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every graph, morphism and walk of a file in canonical form.
    Show { file: PathBuf },
    /// Check a file for dangling references, duplicate ids and bad morphisms.
    Validate { file: PathBuf },
    /// The iterated arc graph A^n of the first graph.
    ArcGraph {
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
        file: PathBuf,
    },
    /// Cycle counts, det(I - uA) and zeta series coefficients.
    Zeta {
        #[arg(long, default_value_t = 8)]
        degree: usize,
        file: PathBuf,
    },
    /// Characteristic polynomial of the adjacency matrix.
    Charpoly { file: PathBuf },
    /// Basal graph of the first graph, then the graph and the basing onto it.
    Basal {
        /// Representative per tree class: first or last in input order.
        #[arg(long, default_value = "first")]
        strategy: RepresentativeChoice,
        file: PathBuf,
    },
    /// Exit 0 iff the last morphism of the file is a covering.
    CoverCheck { file: PathBuf },
    /// Exit 0 iff the last morphism of the file is a well-formed morphism.
    MorphismCheck { file: PathBuf },
    /// Necessary-condition battery for N-equivalence of two graphs.
    Compare {
        #[arg(long, default_value_t = 12)]
        degree: usize,
        x: PathBuf,
        y: PathBuf,
    },
    /// Walkable subgraph; exit 0 iff the whole graph is walkable.
    Walkable { file: PathBuf },
    /// Search for a level-n homotopy inverse of the last morphism.
    LevelInverse {
        #[arg(short = 'n')]
        n: usize,
        /// Largest A^n(Y) searched, in nodes.
        #[arg(long, default_value_t = LEVEL_SEARCH_LIMIT)]
        limit: usize,
        file: PathBuf,
    },
    /// Distance between the two walks of a file.
    WalkDist { file: PathBuf },
    /// Apply the last morphism, a map out of A^n(X), to every walk on X.
    BlockCode {
        #[arg(short = 'n')]
        n: usize,
        file: PathBuf,
    },
    /// DOT export of the first graph.
    Dot { file: PathBuf },
}

struct Outcome {
    text: String,
    affirmative: bool,
}

impl Outcome {
    fn yes(text: String) -> Self {
        Outcome {
            text,
            affirmative: true,
        }
    }

    fn verdict(text: String, affirmative: bool) -> Self {
        Outcome { text, affirmative }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn at(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Show { file } => {
            let doc = parse_document(&read(&file)?).map_err(at(&file))?;
            let mut blocks: Vec<String> = doc.graphs.iter().map(|g| write_graph(g)).collect();
            blocks.extend(
                doc.morphisms
                    .iter()
                    .map(|(name, f)| write_morphism(name, f)),
            );
            let mut text = blocks.join("\n");
            for w in &doc.walks {
                if !text.is_empty() && !text.ends_with("\n\n") {
                    text.push('\n');
                }
                text.push_str(&format!("{w}\n"));
            }
            Ok(Outcome::yes(text))
        }
        Command::Validate { file } => {
            let text = read(&file)?;
            let raws = parse_raw_graphs(&text).map_err(at(&file))?;
            let problems: Vec<String> = raws
                .iter()
                .filter_map(|raw| validate(raw).err().map(|v| (raw, v)))
                .flat_map(|(raw, vs)| {
                    vs.into_iter()
                        .map(move |v| format!("graph {}: {v}", raw.name))
                })
                .collect();
            if !problems.is_empty() {
                return Ok(Outcome::verdict(
                    format!("valid=false\n{}\n", problems.join("\n")),
                    false,
                ));
            }
            match parse_document(&text) {
                Ok(doc) => Ok(Outcome::yes(format!(
                    "valid=true\ngraphs={}\nmorphisms={}\nwalks={}\n",
                    doc.graphs.len(),
                    doc.morphisms.len(),
                    doc.walks.len()
                ))),
                Err(e @ Error::InvalidMorphism(_)) => {
                    Ok(Outcome::verdict(format!("valid=false\n{e}\n"), false))
                }
                Err(e) => Err(at(&file)(e)),
            }
        }
        Command::ArcGraph { n, file } => {
            let g = parse_graph(&read(&file)?).map_err(at(&file))?;
            Ok(Outcome::yes(write_graph(&arc_graph_n(&g, n))))
        }
        Command::Zeta { degree, file } => {
            let g = parse_graph(&read(&file)?).map_err(at(&file))?;
            let z = zeta_data(&g, degree);
            let mut text = String::new();
            for (m, c) in z.cycle_counts.iter().enumerate() {
                text.push_str(&format!("c[{}]={c}\n", m + 1));
            }
            text.push_str(&format!("det={}\n", z.det_poly.display_ascending("u")));
            for (m, c) in z.series.iter().enumerate() {
                text.push_str(&format!("z[{m}]={}/{}\n", c.numer(), c.denom()));
            }
            Ok(Outcome::yes(text))
        }
        Command::Charpoly { file } => {
            let g = parse_graph(&read(&file)?).map_err(at(&file))?;
            let p = char_poly(&adjacency(&g));
            Ok(Outcome::yes(format!(
                "charpoly={}\n",
                p.display_descending("x")
            )))
        }
        Command::Basal { strategy, file } => {
            let g = parse_graph(&read(&file)?).map_err(at(&file))?;
            let b = basal_of(&g, &strategy);
            // base first, so the output reads back as that graph
            let text = format!(
                "{}\n{}\n{}",
                write_graph(b.base()),
                write_graph(&g),
                write_morphism("p", b.morphism())
            );
            Ok(Outcome::yes(text))
        }
        Command::CoverCheck { file } => {
            let (_, f) = parse_morphism(&read(&file)?).map_err(at(&file))?;
            let covering = is_covering(&f);
            let mut text = format!(
                "covering={covering}\nepic_covering={}\n",
                is_epic_covering(&f)
            );
            if let Some(v) = (0..f.domain().node_count()).find(|&v| !covers_at(&f, v)) {
                text.push_str(&format!("fails_at={}\n", f.domain().node_id(v)));
            }
            Ok(Outcome::verdict(text, covering))
        }
        Command::MorphismCheck { file } => match parse_morphism(&read(&file)?) {
            Ok((name, f)) => Ok(Outcome::yes(format!(
                "morphism={name}\nvalid=true\nepic={}\ncovering={}\nisomorphism={}\n",
                f.is_epic(),
                is_covering(&f),
                f.is_isomorphism()
            ))),
            Err(Error::InvalidMorphism(why)) => Ok(Outcome::verdict(
                format!("valid=false\nreason={why}\n"),
                false,
            )),
            Err(e) => Err(at(&file)(e)),
        },
        Command::Compare { degree, x, y } => {
            let gx = parse_graph(&read(&x)?).map_err(at(&x))?;
            let gy = parse_graph(&read(&y)?).map_err(at(&y))?;
            let report = compare_battery(&gx, &gy, degree);
            Ok(Outcome::verdict(report.to_string(), !report.is_refuted()))
        }
        Command::Walkable { file } => {
            let g = parse_graph(&read(&file)?).map_err(at(&file))?;
            let (w, _) = walkable_subgraph(&g);
            let whole = w.node_count() == g.node_count() && w.arc_count() == g.arc_count();
            Ok(Outcome::verdict(
                format!("{}# walkable={whole}\n", write_graph(&w)),
                whole,
            ))
        }
        Command::LevelInverse { n, limit, file } => {
            let (_, f) = parse_morphism(&read(&file)?).map_err(at(&file))?;
            match find_level_inverse(&f, n, limit).map_err(at(&file))? {
                LevelSearch::Witness(q) => Ok(Outcome::yes(format!(
                    "# witness=found\n{}",
                    write_morphism_document("q", &q)
                ))),
                LevelSearch::Refuted => Ok(Outcome::verdict("witness=none\n".into(), false)),
            }
        }
        Command::WalkDist { file } => {
            let doc = parse_document(&read(&file)?).map_err(at(&file))?;
            let [w, v] = &doc.walks[..] else {
                return Err(format!(
                    "{}: expected exactly two walks, found {}",
                    file.display(),
                    doc.walks.len()
                ));
            };
            let d = distance(w, v).map_err(at(&file))?;
            Ok(Outcome::yes(format!("distance={d}\n")))
        }
        Command::BlockCode { n, file } => {
            let doc = parse_document(&read(&file)?).map_err(at(&file))?;
            let (_, f) = doc
                .morphisms
                .last()
                .ok_or_else(|| format!("{}: missing morphism header", file.display()))?;
            let mut text = String::new();
            for w in &doc.walks {
                let image = apply_block_code(f, n, w).map_err(at(&file))?;
                text.push_str(&format!("{}\n", image.normalize()));
            }
            Ok(Outcome::yes(text))
        }
        Command::Dot { file } => {
            let g = parse_graph(&read(&file)?).map_err(at(&file))?;
            Ok(Outcome::yes(write_dot(&g)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(cli.command) {
        Ok(outcome) => outcome,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => {
            fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(message) = written {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    if outcome.affirmative {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
