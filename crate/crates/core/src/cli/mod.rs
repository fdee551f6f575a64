//! The `leadrace` command line: argument parsing, dispatch, and output.
//!
//! Exit codes: 0 ok (including warnings), 1 usage, 2 precondition,
//! 3 verification failure.

mod report;
pub mod verify;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub use report::{Report, ReportStatus};

use crate::error::Error;
use crate::exact::{self, Composition, CycleSequence, GenericSet, Path, StepWeights};
use crate::rational::{int, parse_rational, parse_rational_list, to_fraction_string, Rational};
use crate::reference;
use crate::simulate::{self, DistributionSpec, EventSpec, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "leadrace", version, about = "Random races: exact formulas, enumeration, bijections and Monte Carlo")]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Override the enumeration cap of the invoked operation.
    #[arg(long = "max-n", global = true)]
    pub max_n: Option<u64>,

    /// Seed for every random choice; `random` draws one and echoes it.
    #[arg(long, global = true, default_value = "0")]
    pub seed: String,

    /// Report wall-clock time in `elapsed_ms` (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form probabilities and counts.
    Formula {
        #[arg(value_enum)]
        which: FormulaKind,
        #[command(flatten)]
        params: Params,
    },
    /// Exhaustive enumeration and exact oracles.
    Enumerate {
        #[arg(value_enum)]
        which: EnumerateKind,
        #[command(flatten)]
        params: Params,
    },
    /// Constructive bijections.
    Bijection {
        #[arg(value_enum)]
        which: BijectionKind,
        #[command(flatten)]
        params: Params,
    },
    /// Monte Carlo estimate of a race event.
    Simulate {
        #[arg(value_enum)]
        event: SimEvent,
        #[command(flatten)]
        params: Params,
    },
    /// Cross-check closed forms, enumeration, DP and Monte Carlo.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Scope::All)]
        scope: verify::Scope,
        /// Wall-clock budget in seconds; checks that do not fit are skipped.
        #[arg(long, default_value_t = 120.0)]
        budget: f64,
    },
    /// Bundled side-by-side experiments.
    Experiment {
        #[arg(value_enum)]
        which: ExperimentKind,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulaKind {
    Lead,
    BallotCount,
    TiedLead,
    Srw,
    Ballot,
    WalkGivenEnd,
    Motzkin,
    Majorization,
    Alternation,
    Comparable,
    Catalan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Ballot,
    Generic,
    Collisions,
    Majorization,
    Dominance,
    RankOracle,
    Paths,
    MotzkinPaths,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BijectionKind {
    Updown,
    UpdownInverse,
    Motzkin,
    Spitzer,
    Encode,
    Decode,
    Collision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimEvent {
    Lead,
    NeverBehind,
    Alternation,
    Comparable,
    Tied,
    Multiplicative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    Alternation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistName {
    Uniform,
    Exp,
    Normal,
    Lognormal,
    Pow3,
}

impl DistName {
    fn as_str(self) -> &'static str {
        match self {
            DistName::Uniform => "uniform",
            DistName::Exp => "exp",
            DistName::Normal => "normal",
            DistName::Lognormal => "lognormal",
            DistName::Pow3 => "pow3",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    /// Motzkin path length.
    #[arg(long = "L")]
    pub l: Option<u64>,
    /// Comma-separated rationals (`7/2,3,1`) or composition parts.
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// Step string over U, D, H, or a bit string for `decode`.
    #[arg(long)]
    pub path: Option<String>,
    /// Lowered value of the first element for collision walks.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, value_enum)]
    pub dist: Option<DistName>,
    /// Comma-separated distribution parameters.
    #[arg(long = "dist-params", allow_hyphen_values = true)]
    pub dist_params: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
}

impl Params {
    fn echo(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("n", self.n.map(Value::from));
        put("m", self.m.map(Value::from));
        put("a", self.a.map(Value::from));
        put("b", self.b.map(Value::from));
        put("t", self.t.map(Value::from));
        put("L", self.l.map(Value::from));
        put("set", self.set.clone().map(Value::from));
        put("path", self.path.clone().map(Value::from));
        put("target", self.target.clone().map(Value::from));
        put("dist", self.dist.map(|d| Value::from(d.as_str())));
        put("dist_params", self.dist_params.clone().map(Value::from));
        put("trials", self.trials.map(Value::from));
        m
    }
}

/// Failure while serving a request, tagged with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_USAGE,
            Error::Domain(_) | Error::Resource { .. } | Error::Tie(_) => EXIT_PRECONDITION,
            Error::Verification(_) => EXIT_VERIFICATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn need_str<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn frac(r: &Rational) -> Value {
    Value::from(to_fraction_string(r))
}

fn big(n: &BigInt) -> Value {
    match n.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

fn parse_seed(s: &str) -> Result<u64, Failure> {
    if s == "random" {
        use std::hash::{BuildHasher, Hasher};
        let mut h = std::collections::hash_map::RandomState::new().build_hasher();
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos())
            .unwrap_or(0);
        h.write_u128(nanos);
        return Ok(h.finish());
    }
    s.parse().map_err(|_| usage(format!("--seed must be a u64 or `random`, got {s:?}")))
}

fn parse_dist(p: &Params) -> Result<DistributionSpec, Failure> {
    let name = p.dist.unwrap_or(DistName::Uniform);
    let params: Vec<f64> = match &p.dist_params {
        None => Vec::new(),
        Some(s) => s
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| usage(format!("bad --dist-params entry {v:?}"))))
            .collect::<Result<_, _>>()?,
    };
    Ok(DistributionSpec::from_name(name.as_str(), &params)?)
}

/// The outcome of [`dispatch`]: the report plus the process exit code.
#[derive(Debug, Clone)]
pub struct Dispatched {
    pub report: Report,
    pub exit_code: i32,
}

/// Routes a parsed request to the library and builds its report.
pub fn dispatch(request: &CommandRequest) -> Dispatched {
    let start = Instant::now();
    let (name, params) = describe(&request.command);
    let mut report = Report::new(name, params, Value::Null);
    let outcome = parse_seed(&request.seed).and_then(|seed| serve(request, seed, &mut report));
    let exit_code = match outcome {
        Ok(code) => code,
        Err(f) => {
            report.status = ReportStatus::Error;
            report.result = Value::Null;
            report.error = Some(f.message);
            f.code
        }
    };
    if request.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Dispatched { report, exit_code }
}

fn describe(command: &Command) -> (String, BTreeMap<String, Value>) {
    let kebab = |v: &dyn ValueDisplay| v.name();
    match command {
        Command::Formula { which, params } => (format!("formula {}", kebab(which)), params.echo()),
        Command::Enumerate { which, params } => (format!("enumerate {}", kebab(which)), params.echo()),
        Command::Bijection { which, params } => (format!("bijection {}", kebab(which)), params.echo()),
        Command::Simulate { event, params } => (format!("simulate {}", kebab(event)), params.echo()),
        Command::Experiment { which, params } => (format!("experiment {}", kebab(which)), params.echo()),
        Command::Verify { scope, budget } => {
            let mut m = BTreeMap::new();
            m.insert("scope".to_string(), Value::from(kebab(scope)));
            m.insert("budget".to_string(), json!(budget));
            ("verify".to_string(), m)
        }
    }
}

trait ValueDisplay {
    fn name(&self) -> String;
}

impl<T: ValueEnum> ValueDisplay for T {
    fn name(&self) -> String {
        self.to_possible_value()
            .map(|p| p.get_name().to_string())
            .unwrap_or_default()
    }
}

fn serve(request: &CommandRequest, seed: u64, report: &mut Report) -> Result<i32, Failure> {
    let cap = request.max_n;
    match &request.command {
        Command::Formula { which, params } => {
            report.result = formula(*which, params)?;
        }
        Command::Enumerate { which, params } => {
            report.result = enumerate(*which, params, cap)?;
        }
        Command::Bijection { which, params } => {
            report.result = bijection(*which, params)?;
        }
        Command::Simulate { event, params } => {
            simulate_cmd(*event, params, seed, report)?;
        }
        Command::Experiment { which, params } => match which {
            ExperimentKind::Alternation => {
                report.seed = Some(seed);
                report.result = experiment_alternation(params, seed, cap)?;
            }
        },
        Command::Verify { scope, budget } => {
            if !(budget.is_finite() && *budget > 0.0) {
                return Err(Failure::from(Error::domain("--budget must be positive")));
            }
            let summary = verify::run(*scope, std::time::Duration::from_secs_f64(*budget), seed);
            let failed = summary.failed();
            report.result = serde_json::to_value(&summary).expect("summary serializes");
            if failed > 0 {
                report.status = ReportStatus::Error;
                report.error = Some(format!("{failed} check(s) failed"));
                return Ok(EXIT_VERIFICATION);
            }
        }
    }
    Ok(EXIT_OK)
}

fn formula(which: FormulaKind, p: &Params) -> Result<Value, Failure> {
    Ok(match which {
        FormulaKind::Lead => frac(&reference::lead_prob(need(p.n, "n")?)?),
        FormulaKind::BallotCount => big(&reference::ballot_signed_perm_count(need(p.n, "n")?)?),
        FormulaKind::TiedLead => frac(&reference::tied_lead_prob(need(p.m, "m")?)?),
        FormulaKind::Srw => frac(&reference::srw_nonneg_prob(need(p.n, "n")?)?),
        FormulaKind::Ballot => frac(&reference::ballot_never_behind_prob(need(p.a, "a")?, need(p.b, "b")?)?),
        FormulaKind::WalkGivenEnd => frac(&reference::walk_nonneg_given_end_prob(need(p.n, "n")?, need(p.t, "t")?)?),
        FormulaKind::Motzkin => frac(&reference::motzkin_nonneg_prob(need(p.l, "L")?)),
        FormulaKind::Majorization => frac(&reference::composition_majorization_prob(need(p.n, "n")?)?),
        FormulaKind::Alternation => frac(&reference::alternation_exponential_prob(need(p.n, "n")?)?),
        FormulaKind::Comparable => frac(&reference::comparable_vectors_prob(need(p.n, "n")?)?),
        FormulaKind::Catalan => big(&reference::catalan(need(p.n, "n")?)),
    })
}

fn parse_set(p: &Params) -> Result<Vec<Rational>, Failure> {
    Ok(parse_rational_list(need_str(&p.set, "set")?)?)
}

fn enumerate(which: EnumerateKind, p: &Params, cap: Option<u64>) -> Result<Value, Failure> {
    use exact::caps;
    Ok(match which {
        EnumerateKind::Ballot => {
            let set = GenericSet::certify(parse_set(p)?)?;
            big(&exact::count_ballot_signed_perms_capped(&set, cap.unwrap_or(caps::BALLOT))?.into())
        }
        EnumerateKind::Generic => Value::from(exact::is_generic_capped(&parse_set(p)?, cap.unwrap_or(caps::GENERICITY))?),
        EnumerateKind::Collisions => {
            let set = GenericSet::certify(parse_set(p)?)?;
            let target = parse_rational(need_str(&p.target, "target")?)?;
            Value::from(exact::collision_deltas(&set, &target)?.iter().map(frac).collect::<Vec<_>>())
        }
        EnumerateKind::Majorization => frac(&exact::majorization_probability_exact_capped(
            need(p.n, "n")?,
            cap.unwrap_or(caps::MAJORIZATION),
        )?),
        EnumerateKind::Dominance => Value::from(exact::dominance_count(need(p.m, "m")?)?),
        EnumerateKind::RankOracle => frac(&exact::alternation_rank_oracle_capped(
            need(p.n, "n")?,
            cap.unwrap_or(caps::RANK_ORACLE),
        )?),
        EnumerateKind::Paths => {
            let len = need(p.n, "n")?;
            if len > 4096 {
                return Err(Error::Resource { what: "path length", requested: len, cap: 4096 }.into());
            }
            let end = p.t.map(|t| t as i64);
            let count = exact::count_paths_dp(len as usize, &StepWeights::counting_updown(), true, end)?;
            big(count.numer())
        }
        EnumerateKind::MotzkinPaths => {
            let len = need(p.l, "L")?;
            if len > 4096 {
                return Err(Error::Resource { what: "path length", requested: len, cap: 4096 }.into());
            }
            frac(&exact::count_paths_dp(len as usize, &StepWeights::lazy_motzkin(), true, None)?)
        }
    })
}

fn parse_path(p: &Params) -> Result<Path, Failure> {
    Ok(need_str(&p.path, "path")?.parse::<Path>()?)
}

fn bijection(which: BijectionKind, p: &Params) -> Result<Value, Failure> {
    Ok(match which {
        BijectionKind::Updown => Value::from(exact::updown_bijection_to_nonneg(&parse_path(p)?)?.to_string()),
        BijectionKind::UpdownInverse => Value::from(exact::updown_bijection_to_endzero(&parse_path(p)?)?.to_string()),
        BijectionKind::Motzkin => Value::from(exact::contract_to_motzkin(&parse_path(p)?)?.to_string()),
        BijectionKind::Spitzer => {
            let z = CycleSequence::new(parse_set(p)?)?;
            Value::from(exact::spitzer_rotation(&z)?)
        }
        BijectionKind::Encode => {
            let parts = need_str(&p.set, "set")?
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| usage(format!("bad part {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Value::from(exact::bits_to_string(&Composition::new(parts)?.encode()))
        }
        BijectionKind::Decode => {
            let bits = exact::parse_bits(need_str(&p.path, "path")?)?;
            Value::from(Composition::decode(&bits).to_string())
        }
        BijectionKind::Collision => {
            let set = GenericSet::certify(parse_set(p)?)?;
            let target = parse_rational(need_str(&p.target, "target")?)?;
            Value::from(verify::collision_walk_report(&set, &target)?)
        }
    })
}

fn simulate_cmd(event: SimEvent, p: &Params, seed: u64, report: &mut Report) -> Result<(), Failure> {
    let dist = parse_dist(p)?;
    let trials = p.trials.unwrap_or(100_000);
    let estimate = match event {
        SimEvent::Tied => {
            let m = need(p.m, "m")? as usize;
            simulate::estimate_probability(EventSpec::TiedDominance, &dist, m, trials, seed)?
        }
        SimEvent::Multiplicative => {
            let n = need(p.n, "n")? as usize;
            if !matches!(dist, DistributionSpec::LogNormal { .. }) {
                return Err(Error::domain("multiplicative race needs --dist lognormal").into());
            }
            simulate::estimate_trials("multiplicative_race", dist.to_string(), n, trials, seed, |i| {
                simulate::multiplicative_race_trial(&dist, n, seed, i)
            })?
        }
        other => {
            let n = need(p.n, "n")? as usize;
            let ev = match other {
                SimEvent::Lead => EventSpec::LeadAllTheWay,
                SimEvent::NeverBehind => EventSpec::NeverBehind,
                SimEvent::Alternation => EventSpec::Alternation,
                _ => EventSpec::ComparableVectors,
            };
            simulate::estimate_probability(ev, &dist, n, trials, seed)?
        }
    };
    report.result = json!({
        "event": estimate.event,
        "dist": estimate.dist,
        "n": estimate.n,
        "successes": estimate.successes,
        "point": estimate.point,
    });
    report.seed = Some(estimate.seed);
    report.trials = Some(estimate.trials);
    report.ci_low = Some(estimate.ci_low);
    report.ci_high = Some(estimate.ci_high);
    report.ties = Some(estimate.ties);
    if estimate.status == Status::Warning {
        report.status = ReportStatus::Warning;
        report.error = Some(format!("tie rate {:.3e} at or above {:e}", estimate.tie_rate(), simulate::TIE_RATE_LIMIT));
    }
    Ok(())
}

fn experiment_alternation(p: &Params, seed: u64, cap: Option<u64>) -> Result<Value, Failure> {
    let max_n = p.n.unwrap_or(3);
    if max_n == 0 {
        return Err(Error::domain("--n must be at least 1").into());
    }
    let trials = p.trials.unwrap_or(1_000_000);
    let exp = DistributionSpec::Exponential { rate: 1.0 };
    let pow3 = DistributionSpec::PowersOfThree { max_exponent: 40, noise: 0.0 };
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let exact_exp = reference::alternation_exponential_prob(n)?;
        let oracle = exact::alternation_rank_oracle_capped(n, cap.unwrap_or(exact::caps::RANK_ORACLE))?;
        let e = simulate::estimate_probability(EventSpec::Alternation, &exp, n as usize, trials, seed)?;
        let q = simulate::estimate_probability(EventSpec::Alternation, &pow3, n as usize, trials, seed)?;
        let factorial: Rational = int((1..=n).product::<u64>());
        rows.push(json!({
            "n": n,
            "exponential": {"estimate": e.point, "ci_low": e.ci_low, "ci_high": e.ci_high, "ties": e.ties, "exact": frac(&exact_exp)},
            "powers_of_three": {"estimate": q.point, "ci_low": q.ci_low, "ci_high": q.ci_high, "ties": q.ties, "rank_oracle": frac(&oracle)},
            "one_over_n_factorial": frac(&(Rational::from_integer(1.into()) / factorial)),
        }));
    }
    Ok(json!({"trials": trials, "rows": rows}))
}

/// Rendered output of one invocation.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
    /// Usage errors go to stderr; reports, even failing ones, go to stdout.
    pub to_stderr: bool,
}

/// Parses `args`, dispatches, and renders the report.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let request = match CommandRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return Output {
                text: e.to_string().trim_end().to_string(),
                exit_code: if help { EXIT_OK } else { EXIT_USAGE },
                to_stderr: !help,
            };
        }
    };
    let out = dispatch(&request);
    let color = std::env::var_os("NO_COLOR").is_none();
    let text = match request.format {
        Format::Json => out.report.to_json(),
        Format::Csv => out.report.to_csv(),
        Format::Text => out.report.to_text(color),
    };
    Output {
        text,
        exit_code: out.exit_code,
        to_stderr: false,
    }
}
