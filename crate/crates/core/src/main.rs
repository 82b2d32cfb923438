use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use legal_competence::hohfeld::{self, Kind, Scope};
use legal_competence::io::{
    action_model_to_json, load_action_model, load_model, model_to_json, LoadError,
};
use legal_competence::iso::isomorphic;
use legal_competence::random::{GeneratorConfig, DEFAULT_SEED};
use legal_competence::reduction::{audit_axiom, translate, AxiomName, Variant};
use legal_competence::scenario::{bundle, bundle_json, run_scenario, ScenarioBundle, SCENARIOS};
use legal_competence::{eval, parse, product, truth_set, ActionModelEnv, Formula};

/// Model checker for a dynamic deontic logic of legal competences.
#[derive(Parser)]
#[command(name = "lcomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at one state; prints `true` or `false`.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
        #[arg(long, num_args = 1..)]
        actions: Vec<PathBuf>,
    },
    /// Print the set of states where a formula holds.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, num_args = 1..)]
        actions: Vec<PathBuf>,
    },
    /// Write the product of a model with one or more action models, applied in order.
    Update {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        actions: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide a Hohfeldian competence regarding a normative position; prints verdict JSON.
    Power {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        actions: PathBuf,
        #[arg(long)]
        position: String,
        /// power, immunity, liability or nopower
        #[arg(long, default_value = "power")]
        kind: Kind,
        /// global or local
        #[arg(long, default_value = "global")]
        scope: Scope,
    },
    /// Rewrite a formula into the static language.
    Translate {
        #[arg(long)]
        formula: String,
        #[arg(long, num_args = 1..)]
        actions: Vec<PathBuf>,
        /// sound or paper
        #[arg(long, default_value = "sound")]
        variant: Variant,
    },
    /// Search random models for a countermodel to an axiom schema.
    Audit {
        #[arg(long)]
        axiom: AxiomName,
        /// sound or paper
        #[arg(long, default_value = "sound")]
        variant: Variant,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Look for an isomorphism between two models; prints the mapping or `none`.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Bundled scenarios.
    Scenario {
        #[command(subcommand)]
        command: ScenarioCommand,
    },
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 5)]
    max_states: usize,
    #[arg(long, default_value_t = 3)]
    max_actions: usize,
    #[arg(long, default_value_t = 3)]
    max_atoms: usize,
    #[arg(long, default_value_t = 2)]
    max_agents: usize,
    #[arg(long, default_value_t = 4)]
    max_depth: usize,
}

impl SuiteArgs {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig {
            seed: self.seed,
            max_states: self.max_states,
            max_actions: self.max_actions,
            max_atoms: self.max_atoms,
            max_agents: self.max_agents,
            max_formula_depth: self.max_depth,
            sample_count: self.samples,
        }
    }
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// Run every check of a bundled scenario (or a bundle file).
    Run { name: String },
    /// Print the JSON of a bundled scenario, or with `--dir` write each of
    /// its models and action models to `<name>.json` there.
    Export {
        name: String,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// List bundled scenarios.
    List,
}

enum Failure {
    /// Bad input: exit status 2.
    Input(String),
    /// A check failed or an unexpected counterexample was found: exit status 1.
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Input(format!("formula: {e}")))
}

fn env(paths: &[PathBuf]) -> Result<ActionModelEnv, Failure> {
    let mut env = ActionModelEnv::new();
    for p in paths {
        env.insert(load_action_model(p)?)?;
    }
    Ok(env)
}

fn load_bundle(name: &str) -> Result<ScenarioBundle, Failure> {
    if let Some(b) = bundle(name) {
        return Ok(b);
    }
    let text = fs::read_to_string(name).map_err(|e| {
        Failure::Input(format!(
            "`{name}` is neither a bundled scenario ({}) nor a readable file: {e}",
            SCENARIOS.join(", ")
        ))
    })?;
    Ok(ScenarioBundle::from_json(&text)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check {
            model,
            state,
            formula: text,
            actions,
        } => {
            let m = load_model(&model)?;
            println!("{}", eval(&m, &state, &formula(&text)?, &env(&actions)?)?);
        }
        Command::Eval {
            model,
            formula: text,
            actions,
        } => {
            let m = load_model(&model)?;
            let states = truth_set(&m, &formula(&text)?, &env(&actions)?)?;
            println!("{{{}}}", states.join(", "));
        }
        Command::Update {
            model,
            actions,
            out,
        } => {
            let mut m = load_model(&model)?;
            for p in &actions {
                m = product(&m, &load_action_model(p)?)?.model;
            }
            fs::write(&out, model_to_json(&m) + "\n").map_err(|source| LoadError::Io {
                path: out.display().to_string(),
                source,
            })?;
        }
        Command::Power {
            model,
            state,
            actions,
            position,
            kind,
            scope,
        } => {
            let m = load_model(&model)?;
            let am = load_action_model(&actions)?;
            let v = hohfeld::verdict(
                kind,
                scope,
                &m,
                &state,
                &am,
                &formula(&position)?,
                &ActionModelEnv::new(),
            )?;
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Command::Translate {
            formula: text,
            actions,
            variant,
        } => {
            println!("{}", translate(&formula(&text)?, &env(&actions)?, variant)?);
        }
        Command::Audit {
            axiom,
            variant,
            suite,
        } => match audit_axiom(axiom, variant, &suite.config())? {
            None => println!("none"),
            Some(r) => {
                println!("{r}");
                if !unsound_as_printed(axiom, variant) {
                    return Err(Failure::Check);
                }
            }
        },
        Command::Iso { a, b } => {
            let (left, right) = (load_model(&a)?, load_model(&b)?);
            match isomorphic(&left, &right)? {
                Some(w) => println!("{}", serde_json::to_string_pretty(&w.mapping)?),
                None => println!("none"),
            }
        }
        Command::Scenario { command } => match command {
            ScenarioCommand::Run { name } => {
                let report = run_scenario(&load_bundle(&name)?);
                println!("{report}");
                if !report.all_passed() {
                    return Err(Failure::Check);
                }
            }
            ScenarioCommand::Export { name, dir: None } => {
                let text = bundle_json(&name)
                    .ok_or_else(|| Failure::Input(format!("no bundled scenario `{name}`")))?;
                print!("{text}");
            }
            ScenarioCommand::Export {
                name,
                dir: Some(dir),
            } => {
                let b = bundle(&name)
                    .ok_or_else(|| Failure::Input(format!("no bundled scenario `{name}`")))?;
                let files = b
                    .models
                    .iter()
                    .map(|(n, m)| (n.clone(), model_to_json(m)))
                    .chain(
                        b.env
                            .models()
                            .map(|am| (am.name().to_owned(), action_model_to_json(am))),
                    );
                for (n, text) in files {
                    let path = dir.join(format!("{n}.json"));
                    fs::write(&path, text + "\n").map_err(|source| LoadError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    println!("{}", path.display());
                }
            }
            ScenarioCommand::List => {
                for name in SCENARIOS {
                    let b = bundle(name).expect("bundled");
                    println!("{name}\t{}", b.description);
                }
            }
        },
    }
    Ok(())
}

/// The single-action universal and agency rules are expected to fail.
fn unsound_as_printed(axiom: AxiomName, variant: Variant) -> bool {
    variant == Variant::Paper && matches!(axiom, AxiomName::UnivRed | AxiomName::DoRed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
