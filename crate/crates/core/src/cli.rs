//! The `caconj` command line.
//!
//! Exit codes: 0 success or affirmative answer, 1 usage or parse error,
//! 2 negative answer (with a witness where one exists), 3 budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alphabet::{pow_sat, Alphabet, Budget, Sidedness, State};
use crate::blockmap::BlockMap;
use crate::debruijn::{
    avoiding_configuration, inverse_rule, is_injective, is_surjective, nilpotency_within, periodicity_within,
};
use crate::error::Error;
use crate::format::{format_state, format_word, parse_block_map, parse_matrix, parse_rule, parse_state, parse_word, write_matrix, write_rule};
use crate::reduction::{
    and_rule, build_instance, build_phi, chain_rule, count_obstruction, example_021_inverse, example_021_rule,
    product_power, search_strong_conjugacy, verify_certificate, ConjugacyCertificate, ReductionInstance,
};
use crate::render::{random_word, render_spacetime};
use crate::rule::LocalRule;
use crate::sft::{
    graph_subshift, one_sided_conjugate, total_amalgamation_with, trace_sft_approx, AmalgamationConvention,
    SftPresentation,
};
use crate::trace::{entropy_upper, trace_words, TraceTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "caconj", version, about = "Cellular automata: rule algebra, decisions, traces and conjugacies")]
struct Cli {
    /// Largest rule table (entries) any construction may build.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_table: u128,
    /// Largest number of windows any enumeration may visit.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_window: u128,
    /// Largest number of graph or search nodes.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_search: u128,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rule files: validate, print canonically, generate.
    #[command(subcommand)]
    Rule(RuleCmd),
    /// Space-time diagram from a finite word.
    Sim(SimArgs),
    /// Decision procedures.
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Trace words, subword complexity and entropy bounds.
    #[command(subcommand)]
    Trace(TraceCmd),
    /// The nilpotency gadget.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Check a candidate conjugacy.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Bounded search for strong conjugacies.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Subshifts of finite type.
    #[command(subcommand)]
    Sft(SftCmd),
}

#[derive(Subcommand, Debug)]
enum RuleCmd {
    Check { file: PathBuf },
    Show { file: PathBuf },
    /// The permutation automaton on {0,1,2}.
    #[command(name = "gen-example021")]
    GenExample021 {
        /// Emit its inverse instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Its 2k-fold track product.
    #[command(name = "gen-product")]
    GenProduct {
        #[arg(short)]
        k: usize,
    },
    /// AND on {0,1}.
    #[command(name = "gen-and")]
    GenAnd,
    /// The nilpotent chain q <- a <- b on {0,1,2}.
    #[command(name = "gen-chain")]
    GenChain,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Render {
    Text,
    Pgm,
}

#[derive(Args, Debug)]
struct SimArgs {
    rule: PathBuf,
    #[arg(long)]
    steps: usize,
    /// A word, `random` (uses --seed) or `random:SEED`.
    #[arg(long)]
    init: String,
    /// Length of a random initial word.
    #[arg(long, default_value_t = 64)]
    width: usize,
    #[arg(long, value_enum, default_value_t = Render::Text)]
    render: Render,
    /// Write the diagram here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum DecideCmd {
    Inj {
        rule: PathBuf,
    },
    Surj {
        rule: PathBuf,
    },
    Inverse {
        rule: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_width: usize,
    },
    Nilpotent {
        rule: PathBuf,
        #[arg(long)]
        q: String,
        /// Defaults to |A|^width.
        #[arg(long)]
        nmax: Option<usize>,
    },
    Periodic {
        rule: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// A periodic configuration whose orbit avoids a spreading state.
    Avoid {
        rule: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
}

#[derive(Args, Debug)]
struct TraceArgs {
    rule: PathBuf,
    #[arg(short)]
    k: usize,
    #[arg(short = 'L')]
    depth: usize,
}

#[derive(Subcommand, Debug)]
enum TraceCmd {
    Words(TraceArgs),
    Complexity(TraceArgs),
    /// TSV rows for L = 1..=L.
    Entropy(TraceArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long = "H")]
    h: PathBuf,
    #[arg(long)]
    q: String,
    #[arg(short, long, default_value_t = 1)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    Build {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long = "out-F")]
        out_f: PathBuf,
        #[arg(long = "out-G")]
        out_g: PathBuf,
    },
    /// Build the conjugacy candidate; `--n auto` searches for the horizon.
    Phi {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "auto")]
        n: String,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the instance and the candidate, then verify it.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "auto")]
        n: String,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Conj {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long = "F")]
        f: PathBuf,
        #[arg(long = "G")]
        g: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    Conj {
        #[arg(long = "F")]
        f: PathBuf,
        #[arg(long = "G")]
        g: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_width: usize,
        /// Trace depth for the count obstruction reported on failure.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Convention {
    Columns,
    Rows,
}

#[derive(Subcommand, Debug)]
enum SftCmd {
    Amalgamate {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Columns)]
        convention: Convention,
    },
    Conjugate {
        x: PathBuf,
        y: PathBuf,
    },
    Graph {
        #[arg(long)]
        rule: PathBuf,
    },
    #[command(name = "trace-approx")]
    TraceApprox(TraceArgs),
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let budget = Budget {
        max_table: cli.max_table,
        max_window: cli.max_window,
        max_search: cli.max_search,
    };
    let ctx = Ctx {
        budget,
        seed: cli.seed,
    };
    match ctx.dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

struct Ctx {
    budget: Budget,
    seed: u64,
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_rule(path: &Path) -> std::result::Result<LocalRule, Failure> {
    parse_rule(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> std::result::Result<BlockMap, Failure> {
    parse_block_map(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> std::result::Result<SftPresentation, Failure> {
    let m = parse_matrix(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(SftPresentation::from_matrix(Sidedness::OneSided, m)?)
}

fn state_arg(text: &str, alphabet: &Alphabet) -> std::result::Result<State, Failure> {
    parse_state(text, alphabet.size())
        .ok_or_else(|| Failure::Io(format!("{text:?} is not a state of an alphabet of size {}", alphabet.size())))
}

fn answer(yes: bool) -> i32 {
    if yes {
        EXIT_OK
    } else {
        EXIT_NO
    }
}

/// Column words: time steps separated by `|` when more than one cell is
/// observed.
fn format_column(word: &[State], k: usize, alphabet_size: usize) -> String {
    if k == 1 {
        return format_word(word, alphabet_size);
    }
    word.iter()
        .map(|&s| {
            let cells = crate::alphabet::index_word(s as usize, alphabet_size, k);
            format_word(&cells, alphabet_size)
        })
        .collect::<Vec<_>>()
        .join("|")
}

impl Ctx {
    fn dispatch(&self, cmd: Command, out: &mut dyn Write) -> Outcome {
        match cmd {
            Command::Rule(c) => self.rule(c, out),
            Command::Sim(a) => self.sim(a, out),
            Command::Decide(c) => self.decide(c, out),
            Command::Trace(c) => self.trace(c, out),
            Command::Reduce(c) => self.reduce(c, out),
            Command::Verify(VerifyCmd::Conj { phi, f, g }) => {
                let phi = load_map(&phi)?;
                let f = load_rule(&f)?;
                let g = load_rule(&g)?;
                let cert = verify_certificate(&phi, &f, &g, &self.budget)?;
                write_certificate(&cert, out)?;
                Ok(answer(cert.is_valid()))
            }
            Command::Search(SearchCmd::Conj {
                f,
                g,
                max_width,
                depth,
                out: path,
            }) => {
                let f = load_rule(&f)?;
                let g = load_rule(&g)?;
                match search_strong_conjugacy(&f, &g, max_width, &self.budget)? {
                    Some(cert) => {
                        writeln!(out, "found conjugacy of width {}", cert.phi.width())?;
                        write_certificate(&cert, out)?;
                        let text = write_rule(&cert.phi);
                        match path {
                            Some(p) => fs::write(p, text)?,
                            None => out.write_all(text.as_bytes())?,
                        }
                        Ok(EXIT_OK)
                    }
                    None => {
                        writeln!(out, "no strong conjugacy of width <= {max_width}")?;
                        for w in 1..=max_width {
                            for bound in count_obstruction(&f, &g, w, depth, &self.budget)? {
                                writeln!(out, "obstruction: {}", bound.describe())?;
                            }
                        }
                        Ok(EXIT_NO)
                    }
                }
            }
            Command::Sft(c) => self.sft(c, out),
        }
    }

    fn rule(&self, cmd: RuleCmd, out: &mut dyn Write) -> Outcome {
        let emit = |r: &LocalRule, out: &mut dyn Write| -> Outcome {
            out.write_all(write_rule(r.as_block_map()).as_bytes())?;
            Ok(EXIT_OK)
        };
        match cmd {
            RuleCmd::Check { file } => {
                let r = load_map(&file)?;
                let nb = r.neighborhood();
                let sides = match r.sidedness() {
                    Sidedness::OneSided => "one-sided",
                    Sidedness::TwoSided => "two-sided",
                };
                writeln!(
                    out,
                    "ok: {sides}, {} -> {} states, neighborhood [{}, {}], radius {}",
                    r.source().size(),
                    r.target().size(),
                    nb.lo,
                    nb.hi,
                    r.radius()
                )?;
                Ok(EXIT_OK)
            }
            RuleCmd::Show { file } => {
                out.write_all(write_rule(&load_map(&file)?).as_bytes())?;
                Ok(EXIT_OK)
            }
            RuleCmd::GenExample021 { inverse } => {
                emit(&if inverse { example_021_inverse() } else { example_021_rule() }, out)
            }
            RuleCmd::GenProduct { k } => emit(&product_power(k, &self.budget)?, out),
            RuleCmd::GenAnd => emit(&and_rule(), out),
            RuleCmd::GenChain => emit(&chain_rule(), out),
        }
    }

    fn sim(&self, a: SimArgs, out: &mut dyn Write) -> Outcome {
        let rule = load_rule(&a.rule)?;
        let n = rule.alphabet().size();
        let init = if a.init == "random" {
            random_word(n, a.width, self.seed)
        } else if let Some(seed) = a.init.strip_prefix("random:") {
            let seed = seed
                .parse()
                .map_err(|_| Failure::Io(format!("bad seed {seed:?}")))?;
            random_word(n, a.width, seed)
        } else {
            parse_word(&a.init, n)?
        };
        let st = render_spacetime(&rule, &init, a.steps, &self.budget)?;
        let bytes = match a.render {
            Render::Text => st.to_text().into_bytes(),
            Render::Pgm => st.to_pgm(),
        };
        match a.out {
            Some(p) => fs::write(p, bytes)?,
            None => out.write_all(&bytes)?,
        }
        Ok(EXIT_OK)
    }

    fn decide(&self, cmd: DecideCmd, out: &mut dyn Write) -> Outcome {
        match cmd {
            DecideCmd::Inj { rule } => {
                let r = load_rule(&rule)?;
                let d = is_injective(&r, &self.budget)?;
                writeln!(out, "{}", if d.verdict { "injective" } else { "not injective" })?;
                for l in d.witness_lines(r.alphabet().size(), r.alphabet().size()) {
                    writeln!(out, "{l}")?;
                }
                Ok(answer(d.verdict))
            }
            DecideCmd::Surj { rule } => {
                let r = load_rule(&rule)?;
                let d = is_surjective(&r, &self.budget)?;
                writeln!(out, "{}", if d.verdict { "surjective" } else { "not surjective" })?;
                for l in d.witness_lines(r.alphabet().size(), r.alphabet().size()) {
                    writeln!(out, "{l}")?;
                }
                Ok(answer(d.verdict))
            }
            DecideCmd::Inverse { rule, max_width } => {
                let r = load_rule(&rule)?;
                match inverse_rule(&r, max_width, &self.budget)? {
                    Some(inv) => {
                        out.write_all(write_rule(inv.as_block_map()).as_bytes())?;
                        Ok(EXIT_OK)
                    }
                    None => {
                        writeln!(out, "no inverse of width <= {max_width}")?;
                        Ok(EXIT_NO)
                    }
                }
            }
            DecideCmd::Nilpotent { rule, q, nmax } => {
                let r = load_rule(&rule)?;
                let q = state_arg(&q, r.alphabet())?;
                let default = pow_sat(r.alphabet().size(), r.width()).min(usize::MAX as u128) as usize;
                let nmax = nmax.unwrap_or(default);
                match nilpotency_within(&r, q, nmax, &self.budget)? {
                    Some(n) => {
                        writeln!(out, "nilpotent: n = {n}")?;
                        Ok(EXIT_OK)
                    }
                    None => {
                        writeln!(out, "not nilpotent within n <= {nmax}")?;
                        Ok(EXIT_NO)
                    }
                }
            }
            DecideCmd::Periodic { rule, nmax } => {
                let r = load_rule(&rule)?;
                match periodicity_within(&r, nmax, &self.budget)? {
                    Some((n, p)) => {
                        writeln!(out, "periodic: preperiod {n}, period {p}")?;
                        Ok(EXIT_OK)
                    }
                    None => {
                        writeln!(out, "not periodic within n + p <= {nmax}")?;
                        Ok(EXIT_NO)
                    }
                }
            }
            DecideCmd::Avoid { rule, s, max_period } => {
                let r = load_rule(&rule)?;
                let s = state_arg(&s, r.alphabet())?;
                match avoiding_configuration(&r, s, max_period)? {
                    Some(w) => {
                        writeln!(out, "cycle: {}", format_word(&w, r.alphabet().size()))?;
                        Ok(EXIT_OK)
                    }
                    None => {
                        writeln!(out, "no avoiding cycle of period <= {max_period}")?;
                        Ok(EXIT_NO)
                    }
                }
            }
        }
    }

    fn trace_table(&self, a: &TraceArgs) -> std::result::Result<(LocalRule, TraceTable), Failure> {
        let r = load_rule(&a.rule)?;
        let t = trace_words(&r, a.k, a.depth, &self.budget)?;
        Ok((r, t))
    }

    fn trace(&self, cmd: TraceCmd, out: &mut dyn Write) -> Outcome {
        match cmd {
            TraceCmd::Words(a) => {
                let (r, t) = self.trace_table(&a)?;
                for w in t.words() {
                    writeln!(out, "{}", format_column(&w, a.k, r.alphabet().size()))?;
                }
            }
            TraceCmd::Complexity(a) => {
                let (_, t) = self.trace_table(&a)?;
                writeln!(out, "{}", t.count())?;
            }
            TraceCmd::Entropy(a) => {
                let r = load_rule(&a.rule)?;
                let rep = entropy_upper(&r, a.k, a.depth, &self.budget)?;
                out.write_all(rep.to_tsv().as_bytes())?;
            }
        }
        Ok(EXIT_OK)
    }

    fn instance(&self, a: &InstanceArgs, out: &mut dyn Write) -> std::result::Result<ReductionInstance, Failure> {
        let h = load_rule(&a.h)?;
        let q = state_arg(&a.q, h.alphabet())?;
        let inst = build_instance(&h, q, a.k, &self.budget)?;
        for w in &inst.warnings {
            writeln!(out, "warning: {w}")?;
        }
        Ok(inst)
    }

    fn horizon(&self, inst: &ReductionInstance, n: &str, nmax: usize) -> std::result::Result<usize, Failure> {
        if n == "auto" {
            crate::reduction::nilpotency_horizon(inst, nmax, &self.budget)?.ok_or_else(|| {
                Failure::Core(Error::Uncertified {
                    n: nmax,
                    reason: format!("H is not nilpotent within {nmax} steps"),
                })
            })
        } else {
            n.parse().map_err(|_| Failure::Io(format!("bad horizon {n:?}")))
        }
    }

    fn reduce(&self, cmd: ReduceCmd, out: &mut dyn Write) -> Outcome {
        match cmd {
            ReduceCmd::Build { inst, out_f, out_g } => {
                let inst = self.instance(&inst, out)?;
                fs::write(&out_f, write_rule(inst.cal_f.as_block_map()))?;
                fs::write(&out_g, write_rule(inst.cal_g.as_block_map()))?;
                writeln!(
                    out,
                    "built F and G over {} states (A = {}, B = {})",
                    inst.cal_f.alphabet().size(),
                    inst.a_alphabet().size(),
                    inst.b_alphabet().size()
                )?;
                Ok(EXIT_OK)
            }
            ReduceCmd::Phi { inst, n, nmax, out: path } => {
                let inst = self.instance(&inst, out)?;
                let n = self.horizon(&inst, &n, nmax)?;
                let phi = build_phi(&inst, n, &self.budget)?;
                fs::write(&path, write_rule(&phi))?;
                writeln!(out, "phi: horizon n = {n}, width {}", phi.width())?;
                Ok(EXIT_OK)
            }
            ReduceCmd::Verify { inst, n, nmax } => {
                let inst = self.instance(&inst, out)?;
                let n = match self.horizon(&inst, &n, nmax) {
                    Ok(n) => n,
                    Err(Failure::Core(e @ Error::Uncertified { .. })) => {
                        writeln!(out, "{e}")?;
                        return Ok(EXIT_NO);
                    }
                    Err(e) => return Err(e),
                };
                let phi = build_phi(&inst, n, &self.budget)?;
                writeln!(out, "phi: horizon n = {n}, width {}", phi.width())?;
                let cert = verify_certificate(&phi, &inst.cal_f, &inst.cal_g, &self.budget)?;
                write_certificate(&cert, out)?;
                Ok(answer(cert.is_valid()))
            }
        }
    }

    fn sft(&self, cmd: SftCmd, out: &mut dyn Write) -> Outcome {
        match cmd {
            SftCmd::Amalgamate { matrix, convention } => {
                let x = load_matrix(&matrix)?;
                let conv = match convention {
                    Convention::Columns => AmalgamationConvention::Columns,
                    Convention::Rows => AmalgamationConvention::Rows,
                };
                let (a, trace) = total_amalgamation_with(&x, conv)?;
                for (u, v) in &trace.steps {
                    writeln!(out, "# merge {u} {v}")?;
                }
                out.write_all(write_matrix(a.matrix()).as_bytes())?;
                Ok(EXIT_OK)
            }
            SftCmd::Conjugate { x, y } => {
                let yes = one_sided_conjugate(&load_matrix(&x)?, &load_matrix(&y)?)?;
                writeln!(out, "{}", if yes { "conjugate" } else { "not conjugate" })?;
                Ok(answer(yes))
            }
            SftCmd::Graph { rule } => {
                let r = load_rule(&rule)?;
                let n = r.alphabet().size();
                let x = graph_subshift(&r)?;
                let names: Vec<String> = x
                    .labels()
                    .unwrap_or_default()
                    .iter()
                    .map(|w| format!("({},{})", format_state(w[0] / n as State, n), format_state(w[0] % n as State, n)))
                    .collect();
                writeln!(out, "# states: {}", names.join(" "))?;
                out.write_all(write_matrix(x.matrix()).as_bytes())?;
                Ok(EXIT_OK)
            }
            SftCmd::TraceApprox(a) => {
                let r = load_rule(&a.rule)?;
                let (x, exact) = trace_sft_approx(&r, a.k, a.depth, &self.budget)?;
                out.write_all(write_matrix(x.matrix()).as_bytes())?;
                writeln!(out, "# exact: {exact}")?;
                Ok(EXIT_OK)
            }
        }
    }
}

fn write_certificate(cert: &ConjugacyCertificate, out: &mut dyn Write) -> std::io::Result<()> {
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "homomorphism: {}", yn(cert.homomorphism))?;
    if let Some(d) = &cert.residue {
        let n = cert.phi.source().size();
        let m = cert.phi.target().size();
        writeln!(
            out,
            "differs at window {} on [{}, {}]: phi.F gives {}, G.phi gives {}",
            format_word(&d.window, n),
            d.neighborhood.lo,
            d.neighborhood.hi,
            format_state(d.left, m),
            format_state(d.right, m)
        )?;
    }
    let (n, m) = (cert.phi.source().size(), cert.phi.target().size());
    writeln!(out, "injective: {}", yn(cert.injective))?;
    for l in cert.injectivity.witness_lines(n, m) {
        writeln!(out, "  {l}")?;
    }
    writeln!(out, "surjective: {}", yn(cert.surjective))?;
    for l in cert.surjectivity.witness_lines(n, m) {
        writeln!(out, "  {l}")?;
    }
    writeln!(out, "{}", if cert.is_valid() { "VALID" } else { "REFUTED" })
}
