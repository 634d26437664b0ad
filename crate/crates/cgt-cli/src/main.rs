//! Command-line front end: machine simulation, presentation compilation,
//! area and Dehn queries, equalizer experiments and word-family tooling.
//! Every run emits a JSON envelope with the tool version, input digests,
//! budgets and seed, so identical inputs reproduce identical payloads.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use cgt_core::distortion::{heisenberg, EqualizerSpec, Membership, PairElement};
use cgt_core::length_embed::{
    generate_family, product_lower_bound_check, verify_star_star, Lambda, WordFamily,
};
use cgt_core::presentation::{
    compile_gm, compile_gmn, compile_gns, compile_hmn, GroupPresentation, PresentationFile,
    DEFAULT_N,
};
use cgt_core::smachine::{io::MachineFile, Budget, SMachine};
use cgt_core::turing::{TmFile, TmOutcome, TuringMachine};
use cgt_core::word_problem::{
    area_oracle, dehn_sample, triviality_search, verify_certificate, AreaBudget,
    TrivialityCertificate, TrivialitySearch,
};

#[derive(Parser)]
#[command(name = "cgt", version, about = "combinatorial group theory workbench")]
struct Cli {
    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result payload here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct SearchBudget {
    /// Rule applications to explore per branch.
    #[arg(long, env = "CGT_MAX_STEPS", default_value_t = 64)]
    max_steps: usize,
    /// Distinct states to visit.
    #[arg(long, env = "CGT_MAX_VISITED", default_value_t = 100_000)]
    max_visited: usize,
}

#[derive(Args, Clone, Copy)]
struct OracleBudget {
    /// Relator factors to consider.
    #[arg(long, env = "CGT_MAX_AREA", default_value_t = 8)]
    max_area: usize,
    /// Distinct words to visit.
    #[arg(long, env = "CGT_MAX_VISITED", default_value_t = 500_000)]
    max_visited: usize,
}

impl OracleBudget {
    fn to_area(self) -> AreaBudget {
        AreaBudget { max_area: self.max_area, max_visited: self.max_visited }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// S-machine operations.
    Smachine {
        #[command(subcommand)]
        cmd: SmachineCmd,
    },
    /// Turing machine operations.
    Tm {
        #[command(subcommand)]
        cmd: TmCmd,
    },
    /// Presentation compilers.
    Compile {
        #[command(subcommand)]
        cmd: CompileCmd,
    },
    /// Exact area of a word over a presentation.
    Area {
        presentation: PathBuf,
        word: String,
        #[command(flatten)]
        budget: OracleBudget,
    },
    /// Dehn-function sampling table.
    Dehn {
        presentation: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, env = "CGT_MAX_VISITED", default_value_t = 500_000)]
        max_visited: usize,
        /// Cap on intermediate word lengths during the closure walk.
        #[arg(long)]
        length_cap: Option<usize>,
    },
    /// Produce and verify a triviality certificate for a word.
    Certify {
        presentation: PathBuf,
        word: String,
        #[command(flatten)]
        budget: OracleBudget,
        /// Cap on intermediate word lengths for the two-sided search.
        #[arg(long)]
        length_cap: Option<usize>,
    },
    /// Equalizer-subgroup experiments.
    Equalizer {
        #[command(subcommand)]
        cmd: EqualizerCmd,
    },
    /// Central distortion in the discrete Heisenberg group.
    Heisenberg {
        #[arg(long, default_value_t = 2)]
        n_max: u32,
    },
    /// Small-cancellation word families.
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum SmachineCmd {
    /// Report rule-set violations.
    Validate { machine: PathBuf },
    /// Breadth-first acceptance search from an input word.
    Accept {
        machine: PathBuf,
        #[arg(long)]
        input: String,
        #[command(flatten)]
        budget: SearchBudget,
    },
    /// Acceptance search plus time/space/area statistics of the trace.
    Stats {
        machine: PathBuf,
        #[arg(long)]
        input: String,
        #[command(flatten)]
        budget: SearchBudget,
    },
}

#[derive(Subcommand)]
enum TmCmd {
    /// Run the machine on a configuration.
    Run {
        machine: PathBuf,
        #[arg(long, default_value = "")]
        left: String,
        #[arg(long)]
        state: String,
        #[arg(long, default_value = "")]
        right: String,
        #[command(flatten)]
        budget: SearchBudget,
    },
    /// Naive conversion to an S-machine.
    ToSmachine { machine: PathBuf },
}

#[derive(Subcommand)]
enum CompileCmd {
    /// G(M) from a Turing machine.
    Gm {
        machine: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_copies: u32,
    },
    /// G_N(S) from an S-machine.
    Gns {
        machine: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_copies: u32,
    },
    /// The explicit letter-stacking family.
    Gmn {
        #[arg(short)]
        m: u32,
        #[arg(short, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_copies: u32,
    },
    /// Embedding relations over a compiled base.
    Hmn {
        base: PathBuf,
        #[arg(long)]
        b_count: u32,
    },
}

#[derive(Subcommand)]
enum EqualizerCmd {
    /// The generating pairs (x_i, t_i), (s_j, y_j), (1, r_k).
    Gen { spec: PathBuf },
    /// Decide membership of a pair.
    Member {
        spec: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        budget: OracleBudget,
    },
    /// Rewrite a member pair over the generators.
    Express {
        spec: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        budget: OracleBudget,
    },
    /// Exact distortion table.
    Distort {
        spec: PathBuf,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 2_000_000)]
        max_ball: usize,
        #[command(flatten)]
        budget: OracleBudget,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Generate a verified family realizing prescribed lengths.
    Gen {
        /// JSON map of element key to requested length.
        #[arg(long)]
        lengths: PathBuf,
        #[arg(long, default_value = "1/50")]
        lambda: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the small-cancellation condition.
    Verify {
        family: PathBuf,
        #[arg(long, default_value = "1/50")]
        lambda: String,
    },
    /// Check the product length lower bound on random products.
    Bound {
        family: PathBuf,
        #[arg(long, default_value = "1/50")]
        lambda: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    tool: String,
    inputs: Vec<InputDigest>,
    budgets: BTreeMap<String, u64>,
    seed: Option<u64>,
    result: T,
}

/// Run outcome: `Unknown` maps to a distinct exit status so budget
/// exhaustion never looks like success or a hard error.
enum Outcome {
    Complete,
    Unknown,
}

struct Run {
    inputs: Vec<InputDigest>,
    budgets: BTreeMap<String, u64>,
    seed: Option<u64>,
    format: Format,
    output: Option<PathBuf>,
}

impl Run {
    fn new(format: Format, output: Option<PathBuf>) -> Self {
        Run { inputs: Vec::new(), budgets: BTreeMap::new(), seed: None, format, output }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode_slice(&Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn budget(&mut self, name: &str, value: u64) {
        self.budgets.insert(name.to_string(), value);
    }

    fn emit<T: Serialize>(&self, result: T) -> Result<()> {
        let envelope = Envelope {
            tool: format!("cgt {}", env!("CARGO_PKG_VERSION")),
            inputs: self.inputs.iter().map(|d| InputDigest { path: d.path.clone(), sha256: d.sha256.clone() }).collect(),
            budgets: self.budgets.clone(),
            seed: self.seed,
            result,
        };
        let text = serde_json::to_string_pretty(&envelope)? + "\n";
        match &self.output {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    }

    /// CSV goes to the same sink but without the envelope; the envelope
    /// metadata lands on stderr so the table stays machine-readable.
    fn emit_csv(&self, header: &str, rows: Vec<String>) -> Result<()> {
        let mut text = String::from(header);
        text.push('\n');
        for r in rows {
            text.push_str(&r);
            text.push('\n');
        }
        match &self.output {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        for d in &self.inputs {
            eprintln!("# input {} sha256={}", d.path, d.sha256);
        }
        Ok(())
    }
}

mod hex {
    pub fn encode_slice(bytes: &[u8]) -> String {
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn load_presentation(run: &mut Run, path: &Path) -> Result<GroupPresentation> {
    let text = run.read(path)?;
    let file: PresentationFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.to_presentation()?)
}

fn load_smachine(run: &mut Run, path: &Path) -> Result<SMachine> {
    let text = run.read(path)?;
    let file: MachineFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.to_machine()?)
}

fn load_tm(run: &mut Run, path: &Path) -> Result<TuringMachine> {
    let text = run.read(path)?;
    let file: TmFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.to_machine()?)
}

#[derive(serde::Deserialize)]
struct EqualizerSpecFile {
    presentation: PresentationFile,
    phi: BTreeMap<String, String>,
    t: Vec<String>,
    s: Vec<String>,
}

fn load_equalizer(run: &mut Run, path: &Path) -> Result<EqualizerSpec> {
    let text = run.read(path)?;
    let file: EqualizerSpecFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let target = file.presentation.to_presentation()?;
    let x_names: Vec<&str> = file.phi.keys().map(String::as_str).collect();
    let phi = file
        .phi
        .values()
        .map(|w| Ok(target.alphabet.parse_word(w)?))
        .collect::<Result<Vec<_>>>()?;
    let t = file
        .t
        .iter()
        .map(|w| Ok(target.alphabet.parse_word(w)?))
        .collect::<Result<Vec<_>>>()?;
    let x_alphabet = cgt_core::words::Alphabet::from_names(x_names.iter().copied())?;
    let s = file
        .s
        .iter()
        .map(|w| Ok(x_alphabet.parse_word(w)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(EqualizerSpec::new(target, &x_names, phi, t, s)?)
}

fn load_family(run: &mut Run, path: &Path, lambda: Lambda) -> Result<WordFamily> {
    let text = run.read(path)?;
    let map: BTreeMap<String, String> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let alphabet = cgt_core::words::Alphabet::from_names(["b_1", "b_2"]).unwrap();
    let mut keys = Vec::new();
    let mut words = Vec::new();
    for (k, w) in map {
        keys.push(k);
        words.push(alphabet.parse_word(&w)?);
    }
    Ok(WordFamily::new(keys, words, lambda)?)
}

fn family_to_map(f: &WordFamily) -> BTreeMap<String, String> {
    f.keys
        .iter()
        .zip(&f.words)
        .map(|(k, w)| (k.clone(), f.alphabet.display(w).to_string()))
        .collect()
}

fn save_presentation(run: &Run, p: &GroupPresentation) -> Result<()> {
    run.emit(PresentationFile::from_presentation(p))
}

fn certificate_json(p: &GroupPresentation, cert: &TrivialityCertificate) -> serde_json::Value {
    // Alternating u_1, r_1, u_2, r_2, ..., u_{d+1}.
    let mut seq = Vec::new();
    for (i, u) in cert.conjugators.iter().enumerate() {
        seq.push(p.alphabet.display(u).to_string());
        if i < cert.relators.len() {
            seq.push(p.alphabet.display(&cert.relators[i]).to_string());
        }
    }
    serde_json::json!({ "d": cert.d(), "sequence": seq })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = Run::new(cli.format, cli.output.clone());
    match dispatch(cli.cmd, &mut run) {
        Ok(Outcome::Complete) => ExitCode::SUCCESS,
        Ok(Outcome::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cmd: Cmd, run: &mut Run) -> Result<Outcome> {
    match cmd {
        Cmd::Smachine { cmd } => smachine_cmd(cmd, run),
        Cmd::Tm { cmd } => tm_cmd(cmd, run),
        Cmd::Compile { cmd } => compile_cmd(cmd, run),
        Cmd::Area { presentation, word, budget } => {
            run.budget("max_area", budget.max_area as u64);
            run.budget("max_visited", budget.max_visited as u64);
            let p = load_presentation(run, &presentation)?;
            let w = p.alphabet.parse_word(&word)?;
            let res = area_oracle(&p, &w, budget.to_area())?;
            let unknown = res.area.is_none() && !res.exhausted;
            run.emit(serde_json::json!({
                "word": p.alphabet.display(&w).to_string(),
                "area": res.area,
                "exhausted": res.exhausted,
                "visited": res.visited,
                "certificate": res.certificate.as_ref().map(|c| certificate_json(&p, c)),
            }))?;
            Ok(if unknown { Outcome::Unknown } else { Outcome::Complete })
        }
        Cmd::Dehn { presentation, max_len, max_visited, length_cap } => {
            run.budget("max_visited", max_visited as u64);
            let p = load_presentation(run, &presentation)?;
            let table = dehn_sample(&p, max_len, max_visited, length_cap)?;
            if run.format == Format::Csv {
                let rows = table
                    .rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{}",
                            r.len,
                            r.max_area,
                            p.alphabet.display(&r.witness)
                        )
                    })
                    .collect();
                run.emit_csv("len,max_area,witness", rows)?;
            } else {
                run.emit(serde_json::json!({
                    "rows": table.rows.iter().map(|r| serde_json::json!({
                        "len": r.len,
                        "max_area": r.max_area,
                        "witness": p.alphabet.display(&r.witness).to_string(),
                    })).collect::<Vec<_>>(),
                    "length_cap": table.length_cap,
                    "candidates": table.candidates,
                    "truncated": table.truncated,
                }))?;
            }
            Ok(if table.truncated { Outcome::Unknown } else { Outcome::Complete })
        }
        Cmd::Certify { presentation, word, budget, length_cap } => {
            run.budget("max_area", budget.max_area as u64);
            run.budget("max_visited", budget.max_visited as u64);
            let p = load_presentation(run, &presentation)?;
            let w = p.alphabet.parse_word(&word)?;
            // Exact first; fall back to the two-sided upper-bound search.
            let exact = area_oracle(&p, &w, budget.to_area())?;
            let (cert, area, exact_flag, exhausted) = match exact.area {
                Some(a) => (exact.certificate, Some(a), true, false),
                None if exact.exhausted => (None, None, true, true),
                None => match triviality_search(&p, &w, budget.to_area(), length_cap)? {
                    TrivialitySearch::Found { upper_bound, certificate, .. } => {
                        (Some(certificate), Some(upper_bound), false, false)
                    }
                    TrivialitySearch::NotFound { exhausted, .. } => (None, None, false, exhausted),
                },
            };
            let verified = cert
                .as_ref()
                .map(|c| verify_certificate(c, &p, &w, None).is_ok());
            let unknown = cert.is_none() && !exhausted;
            run.emit(serde_json::json!({
                "word": p.alphabet.display(&w).to_string(),
                "factor_count": area,
                "exact": exact_flag,
                "nontrivial_proven": exhausted,
                "verified": verified,
                "certificate": cert.as_ref().map(|c| certificate_json(&p, c)),
            }))?;
            Ok(if unknown { Outcome::Unknown } else { Outcome::Complete })
        }
        Cmd::Equalizer { cmd } => equalizer_cmd(cmd, run),
        Cmd::Heisenberg { n_max } => {
            let rows = heisenberg::demo(n_max)?;
            let p = heisenberg::presentation();
            if run.format == Format::Csv {
                let lines = rows
                    .iter()
                    .map(|r| format!("{},{},{},{}", r.n, r.geodesic, r.bound_4n, r.certificate.d()))
                    .collect();
                run.emit_csv("n,geodesic,bound_4n,certificate_factors", lines)?;
            } else {
                run.emit(serde_json::json!(rows.iter().map(|r| serde_json::json!({
                    "n": r.n,
                    "geodesic": r.geodesic,
                    "bound_4n": r.bound_4n,
                    "certified_word": p.alphabet.display(&r.certified_word).to_string(),
                    "certificate_factors": r.certificate.d(),
                })).collect::<Vec<_>>()))?;
            }
            Ok(Outcome::Complete)
        }
        Cmd::Family { cmd } => family_cmd(cmd, run),
        Cmd::Selftest => {
            let results = cgt_core::acceptance::run_all();
            for r in &results {
                eprintln!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            run.emit(serde_json::json!(results.iter().map(|r| serde_json::json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
            })).collect::<Vec<_>>()))?;
            if failed > 0 {
                bail!("{failed} acceptance criteria failed");
            }
            Ok(Outcome::Complete)
        }
    }
}

fn smachine_cmd(cmd: SmachineCmd, run: &mut Run) -> Result<Outcome> {
    match cmd {
        SmachineCmd::Validate { machine } => {
            let m = load_smachine(run, &machine)?;
            let violations = m.validate();
            run.emit(serde_json::json!({
                "valid": violations.is_empty(),
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }))?;
            Ok(Outcome::Complete)
        }
        SmachineCmd::Accept { machine, input, budget } | SmachineCmd::Stats { machine, input, budget } => {
            run.budget("max_steps", budget.max_steps as u64);
            run.budget("max_visited", budget.max_visited as u64);
            let m = load_smachine(run, &machine)?;
            let w = m
                .parse_admissible(&input, true)
                .map_err(|e| anyhow!("input word: {e}"))?;
            let out = m.accepts(&w, Budget { max_steps: budget.max_steps, max_visited: budget.max_visited })?;
            match out {
                cgt_core::smachine::AcceptOutcome::Accepted(trace) => {
                    let stats = trace.stats();
                    run.emit(serde_json::json!({
                        "outcome": "accepted",
                        "steps": trace.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "words": trace.words.iter().map(|w| m.display_admissible(w)).collect::<Vec<_>>(),
                        "time": stats.time,
                        "space": stats.space,
                        "area": stats.area,
                    }))?;
                    Ok(Outcome::Complete)
                }
                cgt_core::smachine::AcceptOutcome::RejectedExhaustive { visited } => {
                    run.emit(serde_json::json!({
                        "outcome": "rejected_exhaustive",
                        "visited": visited,
                    }))?;
                    Ok(Outcome::Complete)
                }
                cgt_core::smachine::AcceptOutcome::UnknownBudget { visited } => {
                    run.emit(serde_json::json!({
                        "outcome": "unknown_budget",
                        "visited": visited,
                    }))?;
                    Ok(Outcome::Unknown)
                }
            }
        }
    }
}

fn tm_cmd(cmd: TmCmd, run: &mut Run) -> Result<Outcome> {
    match cmd {
        TmCmd::Run { machine, left, state, right, budget } => {
            run.budget("max_steps", budget.max_steps as u64);
            run.budget("max_visited", budget.max_visited as u64);
            let tm = load_tm(run, &machine)?;
            let c = tm.parse_config(&left, &state, &right)?;
            match tm.accepts(&c, budget.max_steps, budget.max_visited)? {
                TmOutcome::Accepted(trace) => {
                    run.emit(serde_json::json!({
                        "outcome": "accepted",
                        "steps": trace.steps,
                        "configurations": trace.configs.iter().map(|c| serde_json::json!({
                            "left": tm.alphabet.display(&c.left).to_string(),
                            "state": tm.states[c.state.0],
                            "right": tm.alphabet.display(&c.right).to_string(),
                        })).collect::<Vec<_>>(),
                    }))?;
                    Ok(Outcome::Complete)
                }
                TmOutcome::RejectedExhaustive { visited } => {
                    run.emit(serde_json::json!({ "outcome": "rejected_exhaustive", "visited": visited }))?;
                    Ok(Outcome::Complete)
                }
                TmOutcome::UnknownBudget { visited } => {
                    run.emit(serde_json::json!({ "outcome": "unknown_budget", "visited": visited }))?;
                    Ok(Outcome::Unknown)
                }
            }
        }
        TmCmd::ToSmachine { machine } => {
            let tm = load_tm(run, &machine)?;
            let s = tm.to_smachine()?;
            run.emit(MachineFile::from_machine(&s))?;
            Ok(Outcome::Complete)
        }
    }
}

fn compile_cmd(cmd: CompileCmd, run: &mut Run) -> Result<Outcome> {
    let p = match cmd {
        CompileCmd::Gm { machine, n_copies } => {
            let tm = load_tm(run, &machine)?;
            compile_gm(&tm, n_copies)?
        }
        CompileCmd::Gns { machine, n_copies } => {
            let m = load_smachine(run, &machine)?;
            compile_gns(&m, n_copies)?
        }
        CompileCmd::Gmn { m, n, n_copies } => compile_gmn(m, n, n_copies)?,
        CompileCmd::Hmn { base, b_count } => {
            let b = load_presentation(run, &base)?;
            compile_hmn(&b, b_count)?
        }
    };
    save_presentation(run, &p)?;
    Ok(Outcome::Complete)
}

fn equalizer_cmd(cmd: EqualizerCmd, run: &mut Run) -> Result<Outcome> {
    match cmd {
        EqualizerCmd::Gen { spec } => {
            let spec = load_equalizer(run, &spec)?;
            let gens = spec.generators(AreaBudget { max_area: 8, max_visited: 200_000 })?;
            run.emit(serde_json::json!(gens.iter().map(|g| serde_json::json!({
                "label": format!("{:?}", g.label),
                "u": spec.x_alphabet.display(&g.pair.u).to_string(),
                "v": spec.target.alphabet.display(&g.pair.v).to_string(),
            })).collect::<Vec<_>>()))?;
            Ok(Outcome::Complete)
        }
        EqualizerCmd::Member { spec, u, v, budget } => {
            run.budget("max_area", budget.max_area as u64);
            run.budget("max_visited", budget.max_visited as u64);
            let spec = load_equalizer(run, &spec)?;
            let pair = PairElement {
                u: spec.x_alphabet.parse_word(&u)?,
                v: spec.target.alphabet.parse_word(&v)?,
            };
            let m = spec.membership(&pair, budget.to_area())?;
            run.emit(serde_json::json!({ "membership": format!("{m:?}").to_lowercase() }))?;
            Ok(if m == Membership::Unknown { Outcome::Unknown } else { Outcome::Complete })
        }
        EqualizerCmd::Express { spec, u, v, budget } => {
            run.budget("max_area", budget.max_area as u64);
            run.budget("max_visited", budget.max_visited as u64);
            let spec = load_equalizer(run, &spec)?;
            let pair = PairElement {
                u: spec.x_alphabet.parse_word(&u)?,
                v: spec.target.alphabet.parse_word(&v)?,
            };
            if spec.membership(&pair, budget.to_area())? != Membership::In {
                bail!("pair is not a member (or membership is unknown at this budget)");
            }
            let gens = spec.generators(budget.to_area())?;
            match spec.express(&pair, &gens, budget.to_area())? {
                Some(e) => {
                    let letters: Vec<String> = e
                        .word
                        .0
                        .iter()
                        .map(|&(i, inv)| format!("g{}{}", i, if inv { "^-1" } else { "" }))
                        .collect();
                    let back = e.word.eval(&gens);
                    run.emit(serde_json::json!({
                        "generator_word": letters,
                        "length": e.word.len(),
                        "mixed_prefix": e.mixed_prefix,
                        "kernel_factors": e.kernel_count,
                        "residual": spec.target.alphabet.display(&e.residual).to_string(),
                        "evaluates_back": back == pair,
                    }))?;
                    Ok(Outcome::Complete)
                }
                None => {
                    run.emit(serde_json::json!({ "outcome": "unknown_budget" }))?;
                    Ok(Outcome::Unknown)
                }
            }
        }
        EqualizerCmd::Distort { spec, n_max, max_ball, budget } => {
            run.budget("max_area", budget.max_area as u64);
            run.budget("max_visited", budget.max_visited as u64);
            run.budget("max_ball", max_ball as u64);
            let spec = load_equalizer(run, &spec)?;
            let gens = spec.generators(budget.to_area())?;
            let table =
                cgt_core::distortion::distortion_sample(&spec, &gens, n_max, budget.to_area(), max_ball)?;
            if run.format == Format::Csv {
                let rows = table
                    .rows
                    .iter()
                    .map(|r| format!("{},{},{}", r.n, r.max_gen_length, r.express_upper))
                    .collect();
                run.emit_csv("n,max_gen_length,express_upper", rows)?;
            } else {
                run.emit(serde_json::json!(table.rows.iter().map(|r| serde_json::json!({
                    "n": r.n,
                    "max_gen_length": r.max_gen_length,
                    "express_upper": r.express_upper,
                    "witness_u": spec.x_alphabet.display(&r.witness.u).to_string(),
                    "witness_v": spec.target.alphabet.display(&r.witness.v).to_string(),
                })).collect::<Vec<_>>()))?;
            }
            Ok(Outcome::Complete)
        }
    }
}

fn family_cmd(cmd: FamilyCmd, run: &mut Run) -> Result<Outcome> {
    match cmd {
        FamilyCmd::Gen { lengths, lambda, seed } => {
            run.seed = Some(seed);
            let lambda = Lambda::parse(&lambda)?;
            let text = run.read(&lengths)?;
            let map: BTreeMap<String, u64> = serde_json::from_str(&text)?;
            let pairs: Vec<(String, u64)> = map.into_iter().collect();
            let out = generate_family(&pairs, lambda, seed)?;
            run.emit(serde_json::json!({
                "stretch": out.stretch,
                "attempts": out.attempts,
                "words": family_to_map(&out.family),
            }))?;
            Ok(Outcome::Complete)
        }
        FamilyCmd::Verify { family, lambda } => {
            let lambda = Lambda::parse(&lambda)?;
            let fam = load_family(run, &family, lambda)?;
            match verify_star_star(&fam, lambda) {
                Ok(()) => {
                    run.emit(serde_json::json!({ "pass": true }))?;
                    Ok(Outcome::Complete)
                }
                Err(f) => {
                    run.emit(serde_json::json!({
                        "pass": false,
                        "word": f.key,
                        "witness": fam.alphabet.display(&f.witness).to_string(),
                        "position": f.position,
                        "site": format!("{:?}", f.site),
                    }))?;
                    Ok(Outcome::Complete)
                }
            }
        }
        FamilyCmd::Bound { family, lambda, trials, seed } => {
            run.seed = Some(seed);
            let lambda = Lambda::parse(&lambda)?;
            let fam = load_family(run, &family, lambda)?;
            let report = product_lower_bound_check(&fam, trials, 6, seed);
            run.emit(serde_json::json!({
                "trials": report.trials,
                "all_pass": report.all_pass,
                "min_ratio": report.min_ratio,
                "floor": 1.0 - 2.0 * lambda.as_f64(),
            }))?;
            Ok(Outcome::Complete)
        }
    }
}
