//! The `rdfkit` command line. [`run`] is the whole program minus process
//! plumbing, so tests can drive it with in-memory streams.
//!
//! Exit codes: 0 success or predicate true, 1 predicate false, 2 usage or
//! parse error, 3 step budget exhausted.

mod config;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use rdfkit::algebra::{
    dataset_isomorphism_with, is_lean_with, isomorphic_with, is_well_behaved, merge, skolemize,
    SkolemPolicy,
};
use rdfkit::model::{Dataset, Graph, Iri, PrefixMap};
use rdfkit::reification::{decode, encode, EncodeOptions, Encoded, FreshIds, Scheme, StarGraph};
use rdfkit::semantics::{apply_rules, entails_with, Regime, RuleSet};
use rdfkit::syntax::{
    parse_dataset, parse_trig_with_prefixes, parse_turtle_star, parse_turtle_with_prefixes,
    serialize_dataset, serialize_turtle_star, Format, ParseError, ParseOptions,
};
use rdfkit::{Budget, BudgetExhausted, TermMapping};

pub use config::{CliConfig, ConfigError, CONFIG_ENV};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rdfkit", version, about = "RDF graphs, entailment and reification from the shell")]
struct Cli {
    /// Step budget for search-based commands; overrides the config file.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Recognized datatype IRI (repeatable); replaces the configured list.
    /// xsd:string and rdf:langString are always recognized.
    #[arg(long = "datatype", global = true, value_name = "IRI")]
    datatypes: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputFormat {
    /// Input format (nt, nq, ttl, trig); inferred from the extension otherwise.
    #[arg(long, value_parser = parse_format)]
    from: Option<Format>,
}

#[derive(Debug, Args)]
struct Output {
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    /// Output format (nt, nq, ttl, trig); inferred from --out otherwise.
    #[arg(long, value_parser = parse_format)]
    to: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Re-serialize a graph or dataset in another format.
    Convert {
        #[command(flatten)]
        input: InputFormat,
        /// Input path, `-` for stdin.
        #[arg(long = "in", default_value = "-")]
        path: String,
        #[command(flatten)]
        output: Output,
    },
    /// Exit 0 iff the two graphs are isomorphic.
    Isomorphic {
        a: String,
        b: String,
        #[command(flatten)]
        input: InputFormat,
        /// Print the blank-node bijection.
        #[arg(long)]
        witness: bool,
    },
    /// Exit 0 iff the two datasets are isomorphic.
    DatasetIsomorphic {
        a: String,
        b: String,
        #[command(flatten)]
        input: InputFormat,
    },
    /// Merge two graphs, keeping their blank nodes apart.
    Merge {
        a: String,
        b: String,
        #[command(flatten)]
        input: InputFormat,
        #[arg(long)]
        out: String,
        #[arg(long, value_parser = parse_format)]
        to: Option<Format>,
    },
    /// Replace blank nodes by IRIs under {base}/.well-known/genid/.
    Skolemize {
        #[arg(long)]
        base: String,
        /// Ids b0, b1, ... in order of first occurrence.
        #[arg(long, conflicts_with = "seed")]
        deterministic: bool,
        /// Seed for reproducible random ids.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(default_value = "-")]
        path: String,
        #[command(flatten)]
        input: InputFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Exit 0 iff the graph is lean.
    Lean {
        path: String,
        #[command(flatten)]
        input: InputFormat,
        /// Print a map onto a proper subgraph when the graph is not lean.
        #[arg(long)]
        witness: bool,
    },
    /// Exit 0 iff the graph is writable as Turtle without blank-node labels.
    Wellbehaved {
        path: String,
        #[command(flatten)]
        input: InputFormat,
    },
    /// Exit 0 iff G entails H under the regime.
    Entails {
        #[arg(long, value_parser = parse_regime)]
        regime: Regime,
        g: String,
        h: String,
        #[command(flatten)]
        input: InputFormat,
        /// Print the blank-node mapping that witnesses entailment.
        #[arg(long)]
        witness: bool,
    },
    /// Write the closure of a graph under the rdf or rdfs rules.
    Closure {
        #[arg(long, value_parser = parse_closure_regime)]
        regime: Regime,
        path: String,
        #[command(flatten)]
        input: InputFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Encode `<< s p o >> q v .` annotations with a reification scheme.
    Reify {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        path: String,
        #[command(flatten)]
        output: Output,
    },
    /// Recover annotations from a scheme's encoding as `<< s p o >> q v .`
    Unreify {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        path: String,
        #[command(flatten)]
        input: InputFormat,
        /// Output path, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::from_name(s).ok_or_else(|| format!("unknown format {s:?} (expected nt, nq, ttl or trig)"))
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    Regime::from_name(s).ok_or_else(|| format!("unknown regime {s:?} (expected simple, rdf or rdfs)"))
}

fn parse_closure_regime(s: &str) -> Result<Regime, String> {
    match parse_regime(s)? {
        Regime::Simple => Err("closure takes rdf or rdfs".into()),
        r => Ok(r),
    }
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    Scheme::from_name(s).ok_or_else(|| format!("unknown scheme {s:?} (expected sr, nr, rdr, sp or ng)"))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{error}")]
    Parse { path: String, error: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("step budget exhausted; the answer is unknown")]
    Budget,
}

impl From<BudgetExhausted> for CliError {
    fn from(_: BudgetExhausted) -> Self {
        CliError::Budget
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name. The config file is
/// read from the path in `RDFKIT_CONFIG` when that variable is set.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_TRUE
            };
        }
    };
    let result = configure(&cli).and_then(|config| {
        let mut session = Session { config, stdin, stdout };
        session.execute(cli.command)
    });
    match result {
        Ok(true) => EXIT_TRUE,
        Ok(false) => EXIT_FALSE,
        Err(e) => {
            let _ = writeln!(stderr, "rdfkit: {e}");
            e.exit_code()
        }
    }
}

fn configure(cli: &Cli) -> Result<CliConfig, CliError> {
    let mut config = match std::env::var_os(CONFIG_ENV) {
        Some(path) if !path.is_empty() => CliConfig::load(Path::new(&path))?,
        _ => CliConfig::default(),
    };
    if let Some(steps) = cli.budget {
        config.step_budget = Some(steps);
    }
    if !cli.datatypes.is_empty() {
        config.recognized_datatypes = config::datatypes(&cli.datatypes).map_err(CliError::Usage)?;
    }
    Ok(config)
}

struct Session<'a> {
    config: CliConfig,
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

/// A parsed input with the prefixes it declared.
struct Loaded {
    dataset: Dataset,
    prefixes: PrefixMap,
    format: Format,
}

fn input_format(flag: &InputFormat, path: &str) -> Result<Format, CliError> {
    flag.from
        .or_else(|| Format::from_extension(path))
        .ok_or_else(|| CliError::Usage(format!("cannot infer the format of {path}; pass --from")))
}

fn output_format(flag: Option<Format>, path: &str, fallback: Format) -> Format {
    flag.or_else(|| Format::from_extension(path)).unwrap_or(fallback)
}

impl Session<'_> {
    fn execute(&mut self, command: Command) -> Result<bool, CliError> {
        match command {
            Command::Convert { input, path, output } => {
                let loaded = self.load(&path, input_format(&input, &path)?)?;
                let to = output.to.or_else(|| Format::from_extension(&output.out)).ok_or_else(|| {
                    CliError::Usage(format!("cannot infer the output format of {}; pass --to", output.out))
                })?;
                let pm = self.prefixes(&loaded.prefixes);
                self.write_dataset(&loaded.dataset, to, &output.out, &pm)?;
                Ok(true)
            }
            Command::Isomorphic { a, b, input, witness } => {
                let g1 = self.load_graph(&a, &input)?.0;
                let g2 = self.load_graph(&b, &input)?.0;
                let found = isomorphic_with(&g1, &g2, &mut self.budget())?;
                if let (true, Some(bijection)) = (witness, &found) {
                    let pairs: Vec<(String, String)> =
                        bijection.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
                    self.print_pairs(&pairs)?;
                }
                Ok(found.is_some())
            }
            Command::DatasetIsomorphic { a, b, input } => {
                let d1 = self.load(&a, input_format(&input, &a)?)?.dataset;
                let d2 = self.load(&b, input_format(&input, &b)?)?.dataset;
                Ok(dataset_isomorphism_with(&d1, &d2, &mut self.budget())?.is_some())
            }
            Command::Merge { a, b, input, out, to } => {
                let (g1, loaded) = self.load_graph(&a, &input)?;
                let g2 = self.load_graph(&b, &input)?.0;
                let pm = self.prefixes(&loaded.prefixes);
                let format = output_format(to, &out, loaded.format);
                self.write_dataset(&Dataset::from_default(merge(&g1, &g2)), format, &out, &pm)?;
                Ok(true)
            }
            Command::Skolemize { base, deterministic, seed, path, input, output } => {
                let base = Iri::new(&base).map_err(|e| CliError::Usage(format!("--base: {e}")))?;
                let policy = match (deterministic, seed) {
                    (true, _) => SkolemPolicy::deterministic(&base),
                    (false, Some(seed)) => SkolemPolicy::seeded(&base, seed),
                    (false, None) => SkolemPolicy::random(&base),
                };
                let (g, loaded) = self.load_graph(&path, &input)?;
                let pm = self.prefixes(&loaded.prefixes);
                let format = output_format(output.to, &output.out, loaded.format);
                self.write_dataset(&Dataset::from_default(skolemize(&g, &policy)), format, &output.out, &pm)?;
                Ok(true)
            }
            Command::Lean { path, input, witness } => {
                let g = self.load_graph(&path, &input)?.0;
                let shrink = is_lean_with(&g, &mut self.budget())?;
                if let (true, Some(nu)) = (witness, &shrink) {
                    self.print_mapping(nu)?;
                }
                Ok(shrink.is_none())
            }
            Command::Wellbehaved { path, input } => Ok(is_well_behaved(&self.load_graph(&path, &input)?.0)),
            Command::Entails { regime, g, h, input, witness } => {
                let premise = self.load_graph(&g, &input)?.0;
                let conclusion = self.load_graph(&h, &input)?.0;
                let d = self.config.recognized_datatypes.clone();
                let (found, _) = entails_with(regime, &premise, &conclusion, &d, &mut self.budget())?;
                if let (true, Some(nu)) = (witness, &found) {
                    self.print_mapping(nu)?;
                }
                Ok(found.is_some())
            }
            Command::Closure { regime, path, input, output } => {
                let (g, loaded) = self.load_graph(&path, &input)?;
                let closed = apply_rules(&g, &RuleSet::standard(regime), &self.config.recognized_datatypes);
                let pm = self.prefixes(&loaded.prefixes);
                let format = output_format(output.to, &output.out, loaded.format);
                self.write_dataset(&Dataset::from_default(closed), format, &output.out, &pm)?;
                Ok(true)
            }
            Command::Reify { scheme, path, output } => self.reify(scheme, &path, &output),
            Command::Unreify { scheme, path, input, out } => self.unreify(scheme, &path, &input, &out),
        }
    }

    fn reify(&mut self, scheme: Scheme, path: &str, output: &Output) -> Result<bool, CliError> {
        let text = self.read(path)?;
        let (star, prefixes) = self.parse_star(path, &text)?;
        let decoded = decode(&Encoded::Star(star), Scheme::Rdr);
        let Encoded::Star(rest) = decoded.residual else {
            unreachable!("rdr decoding keeps the star shape")
        };
        if scheme != Scheme::Rdr && !rest.embedded_objects.is_empty() {
            return Err(CliError::Usage(format!(
                "{path}: embedded triples in object position have no {scheme} encoding"
            )));
        }
        let mut fresh = FreshIds::new();
        fresh.avoid(&rest.asserted);
        let encoded = encode(&decoded.statements, scheme, &mut fresh, &EncodeOptions::default())
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let pm = self.prefixes(&prefixes);
        match encoded {
            Encoded::Graph(g) => {
                let format = output_format(output.to, &output.out, Format::Turtle);
                let all = Dataset::from_default(g.union(&rest.asserted));
                self.write_dataset(&all, format, &output.out, &pm)
            }
            Encoded::Star(mut sg) => {
                sg.asserted = rest.asserted;
                sg.embedded_objects = rest.embedded_objects;
                self.write(&output.out, &serialize_turtle_star(&sg, &pm))
            }
            Encoded::Dataset(mut ds) => {
                ds.default_graph_mut().extend(rest.asserted.iter().cloned());
                let format = output_format(output.to, &output.out, Format::TriG);
                self.write_dataset(&ds, format, &output.out, &pm)
            }
        }?;
        Ok(true)
    }

    fn unreify(&mut self, scheme: Scheme, path: &str, input: &InputFormat, out: &str) -> Result<bool, CliError> {
        let (encoded, prefixes) = match scheme {
            Scheme::Rdr => {
                let text = self.read(path)?;
                let (star, prefixes) = self.parse_star(path, &text)?;
                (Encoded::Star(star), prefixes)
            }
            Scheme::Ng => {
                let loaded = self.load(path, input_format(input, path)?)?;
                (Encoded::Dataset(loaded.dataset), loaded.prefixes)
            }
            _ => {
                let (g, loaded) = self.load_graph(path, input)?;
                (Encoded::Graph(g), loaded.prefixes)
            }
        };
        let decoded = decode(&encoded, scheme);
        let mut star = match encode(&decoded.statements, Scheme::Rdr, &mut FreshIds::new(), &EncodeOptions::default())
            .map_err(|e| CliError::Usage(e.to_string()))?
        {
            Encoded::Star(sg) => sg,
            _ => unreachable!("rdr encodes to a star graph"),
        };
        match decoded.residual {
            Encoded::Graph(g) => star.asserted = g,
            Encoded::Star(rest) => {
                star.asserted = rest.asserted;
                star.annotations.extend(rest.annotations);
                star.embedded_objects = rest.embedded_objects;
            }
            Encoded::Dataset(ds) => {
                let leftover: usize = ds.named_graphs().map(|(_, g)| g.len()).sum();
                if leftover > 0 {
                    return Err(CliError::Usage(format!(
                        "{path}: {leftover} quads in named graphs are not part of any ng pattern and cannot be written as Turtle"
                    )));
                }
                star.asserted = ds.default_graph().clone();
            }
        }
        let pm = self.prefixes(&prefixes);
        self.write(out, &serialize_turtle_star(&star, &pm))?;
        Ok(true)
    }

    fn budget(&self) -> Budget {
        self.config.step_budget.map_or_else(Budget::unlimited, Budget::steps)
    }

    /// Configured prefixes, overridden by those the input declared.
    fn prefixes(&self, declared: &PrefixMap) -> PrefixMap {
        let mut pm = self.config.default_prefixes.clone();
        for (prefix, ns) in declared.iter() {
            pm.bind(prefix, ns.clone());
        }
        pm
    }

    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let io_error = |source| CliError::Io { path: path.to_owned(), source };
        if path == "-" {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(io_error)?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(io_error)
        }
    }

    fn write(&mut self, path: &str, text: &str) -> Result<(), CliError> {
        let io_error = |source| CliError::Io { path: path.to_owned(), source };
        if path == "-" {
            self.stdout.write_all(text.as_bytes()).map_err(io_error)
        } else {
            std::fs::write(path, text).map_err(io_error)
        }
    }

    fn write_dataset(&mut self, ds: &Dataset, format: Format, path: &str, pm: &PrefixMap) -> Result<(), CliError> {
        let text = serialize_dataset(ds, format, pm).ok_or_else(|| {
            CliError::Usage(format!("{path}: named graphs cannot be written as {format}; use nq or trig"))
        })?;
        self.write(path, &text)
    }

    fn load(&mut self, path: &str, format: Format) -> Result<Loaded, CliError> {
        let text = self.read(path)?;
        let opts = ParseOptions::default();
        let parse_error = |error| CliError::Parse { path: path.to_owned(), error };
        let (dataset, prefixes) = match format {
            Format::Turtle => {
                let (g, pm) = parse_turtle_with_prefixes(&text, &opts).map_err(parse_error)?;
                (Dataset::from_default(g), pm)
            }
            Format::TriG => parse_trig_with_prefixes(&text, &opts).map_err(parse_error)?,
            _ => (parse_dataset(&text, format, &opts).map_err(parse_error)?, PrefixMap::new()),
        };
        Ok(Loaded { dataset, prefixes, format })
    }

    fn load_graph(&mut self, path: &str, input: &InputFormat) -> Result<(Graph, Loaded), CliError> {
        let loaded = self.load(path, input_format(input, path)?)?;
        if loaded.dataset.named_graph_count() > 0 {
            return Err(CliError::Usage(format!(
                "{path} has named graphs; this command takes a single graph"
            )));
        }
        Ok((loaded.dataset.default_graph().clone(), loaded))
    }

    fn parse_star(&self, path: &str, text: &str) -> Result<(StarGraph, PrefixMap), CliError> {
        let opts = ParseOptions::default().with_embedded_triples();
        let star = parse_turtle_star(text, &opts).map_err(|error| CliError::Parse { path: path.to_owned(), error })?;
        // parse_turtle_star does not report prefixes; they only shape output
        let prefixes = parse_turtle_with_prefixes(text, &opts).map(|(_, pm)| pm).unwrap_or_default();
        Ok((star, prefixes))
    }

    fn print_mapping(&mut self, nu: &TermMapping) -> Result<(), CliError> {
        let pairs: Vec<(String, String)> = nu.iter().map(|(b, t)| (b.to_string(), t.to_string())).collect();
        self.print_pairs(&pairs)
    }

    fn print_pairs(&mut self, pairs: &[(String, String)]) -> Result<(), CliError> {
        let text: String = pairs.iter().map(|(from, to)| format!("{from} -> {to}\n")).collect();
        self.write("-", &text)
    }
}
