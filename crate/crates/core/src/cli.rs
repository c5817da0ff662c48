//! Command-line front end. [`run`] returns the exit code and the text for
//! standard output; diagnostics go to the writer passed to [`run_with`].

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::battery;
use crate::error::{Error, Result};
use crate::identity::{self, IdentityReport, Status};
use crate::lfactors::{self, AsaiTwist, ExtraRange, RankinShift, SVar, SatakeDatum};
use crate::orbits::{self, FormFamily, OrbitCountQuery};
use crate::weyl::{CharacterVector, GroupContext, Kind, DEFAULT_MAX_RANK};

pub const PRESETS_ENV: &str = "ZETAFORGE_PRESETS";
pub const DEFAULT_PRESETS: &str = "zetaforge.presets";

#[derive(Parser, Debug)]
#[command(
    name = "zetaforge",
    version,
    about = "Exact unramified L-factor and Weyl-sum calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Plain text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed_ms as 0 so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RANK)]
    max_rank: usize,
}

#[derive(Args, Debug, Clone, Default)]
struct CtxArgs {
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, conflicts_with = "m")]
    mtilde: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    /// Defaults to ell + 1.
    #[arg(long)]
    j: Option<usize>,
    /// Named context from the preset file.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an L-factor or polynomial.
    Lfactor {
        #[arg(value_enum)]
        which: LfactorKind,
        #[command(flatten)]
        ctx: CtxArgs,
        /// Simple reflection index for `gamma`.
        #[arg(long)]
        i: Option<usize>,
        /// Twist exponent for `zeta`.
        #[arg(long, default_value_t = 0)]
        t: u32,
        #[arg(long, value_enum, default_value_t = RangeArg::Tau)]
        extra_range: RangeArg,
    },
    /// Coset and orbit bookkeeping.
    Orbits {
        #[arg(value_enum)]
        which: OrbitsKind,
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long)]
        dim_x: Option<usize>,
        #[arg(long)]
        witt_w: Option<usize>,
        #[arg(long)]
        witt_w0perp: Option<usize>,
        #[arg(long)]
        dim_w: Option<usize>,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
    },
    /// Twisted Jacquet module constituents.
    Jacquet {
        #[arg(value_enum)]
        which: JacquetKind,
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long)]
        l1: Option<usize>,
        #[arg(long)]
        l2: Option<usize>,
        #[arg(long)]
        l3: Option<usize>,
    },
    /// Run one exact identity check.
    Verify {
        #[arg(value_enum)]
        which: VerifyKind,
        #[command(flatten)]
        ctx: CtxArgs,
        /// Simple reflection index for `cstar`.
        #[arg(long)]
        i: Option<usize>,
        /// Comma-separated exponent vector for `vanishing`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        n: Vec<i32>,
        #[arg(long, value_enum, default_value_t = RangeArg::Tau)]
        extra_range: RangeArg,
    },
    /// Run the whole verification battery.
    Suite,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LfactorKind {
    Tensor,
    TensorSigma,
    Asai,
    AsaiXi,
    Rankin,
    Square,
    Zeta,
    D,
    Q,
    Pstar,
    C,
    Gamma,
    Phi0,
    Rhs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrbitsKind {
    Eps,
    Survive,
    Count,
    TopBeta,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum JacquetKind {
    Inert,
    Split,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyKind {
    DeltaAntisym,
    Vanishing,
    Main,
    Cstar,
    QIdentity,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RangeArg {
    Tau,
    Literal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Unitary,
    Orthogonal,
}

/// Parses a preset file: `name = kind=... m=... ell=... j=...`, `#` starts a comment.
pub fn parse_presets(text: &str) -> std::result::Result<BTreeMap<String, GroupContext>, String> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let lineno = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: String| format!("line {lineno}: {why}");
        let (name, body) = line
            .split_once('=')
            .ok_or_else(|| bad("expected `name = key=value ...`".into()))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(bad(format!("bad preset name `{name}`")));
        }
        let mut args = CtxArgs::default();
        for pair in body.split_whitespace() {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got `{pair}`")))?;
            let num = || {
                v.parse::<usize>()
                    .map_err(|_| bad(format!("`{k}` needs a non-negative integer, got `{v}`")))
            };
            match k {
                "kind" => args.kind = Some(v.to_string()),
                "m" => args.m = Some(num()?),
                "mtilde" => args.mtilde = Some(num()?),
                "ell" | "\u{2113}" => args.ell = Some(num()?),
                "j" => args.j = Some(num()?),
                _ => return Err(bad(format!("unknown key `{k}`"))),
            }
        }
        let ctx = context_from(&args).map_err(|e| bad(e.to_string()))?;
        if out.insert(name.to_string(), ctx).is_some() {
            return Err(bad(format!("duplicate preset `{name}`")));
        }
    }
    Ok(out)
}

fn preset_path() -> PathBuf {
    std::env::var_os(PRESETS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_PRESETS))
}

fn load_preset(name: &str) -> std::result::Result<GroupContext, String> {
    let path = preset_path();
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let table = parse_presets(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    table
        .get(name)
        .copied()
        .ok_or_else(|| format!("no preset named `{name}` in {}", path.display()))
}

fn context_from(a: &CtxArgs) -> Result<GroupContext> {
    let kind: Kind = a
        .kind
        .as_deref()
        .ok_or_else(|| Error::InvalidContext("--kind is required".into()))?
        .parse()?;
    let ell = a.ell.unwrap_or(0);
    let j = a.j.unwrap_or(ell + 1);
    match (a.m, a.mtilde) {
        (Some(m), None) => GroupContext::new(kind, m, ell, j),
        (None, Some(mt)) => GroupContext::from_mtilde(kind, mt, ell, j),
        _ => Err(Error::InvalidContext("give exactly one of --m and --mtilde".into())),
    }
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<crate::symalg::SymalgError> for Failure {
    fn from(e: crate::symalg::SymalgError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn resolve(a: &CtxArgs) -> std::result::Result<GroupContext, Failure> {
    match &a.preset {
        Some(name) => {
            let base = load_preset(name).map_err(Failure::Usage)?;
            if a.kind.is_none() && a.m.is_none() && a.mtilde.is_none() && a.ell.is_none() && a.j.is_none() {
                return Ok(base);
            }
            let merged = CtxArgs {
                kind: Some(a.kind.clone().unwrap_or_else(|| base.kind.to_string())),
                m: a.m.or(if a.mtilde.is_some() { None } else { Some(base.m) }),
                mtilde: a.mtilde,
                ell: Some(a.ell.unwrap_or(base.ell)),
                j: Some(a.j.unwrap_or(base.j)),
                preset: None,
            };
            Ok(context_from(&merged)?)
        }
        None => Ok(context_from(a)?),
    }
}

/// What a command produced, before wrapping.
struct Outcome {
    command: String,
    context: Option<GroupContext>,
    result: Value,
    /// Plain-text rendering of the result.
    text: String,
    exit: i32,
}

impl Outcome {
    fn construction(command: String, context: Option<GroupContext>, result: Value, text: String) -> Self {
        Outcome {
            command,
            context,
            result,
            text,
            exit: 0,
        }
    }
}

fn polynomial(command: String, ctx: GroupContext, rendered: String) -> Outcome {
    Outcome::construction(command, Some(ctx), json!({ "polynomial": rendered }), rendered)
}

fn report_outcome(command: String, r: &IdentityReport) -> Outcome {
    let witness = r.witness.to_string();
    let mut result = json!({ "status": r.status.as_str(), "witness": witness });
    if !r.notes.is_empty() {
        result["notes"] = json!(r.notes);
    }
    if let Some(p) = &r.patterns {
        result["patterns"] = json!(p);
    }
    let mut text = format!("status: {}\nwitness: {}", r.status.as_str(), witness);
    for n in &r.notes {
        text.push_str(&format!("\nnote: {n}"));
    }
    Outcome {
        command,
        context: Some(r.ctx),
        result,
        text,
        exit: if r.status.is_acceptable() { 0 } else { 1 },
    }
}

fn entries<T: serde::Serialize>(command: String, ctx: Option<GroupContext>, items: &[T]) -> Outcome {
    let value = json!(items);
    let text = items
        .iter()
        .map(|e| serde_json::to_string(e).unwrap_or_default())
        .collect::<Vec<_>>()
        .join("\n");
    Outcome::construction(command, ctx, json!({ "entries": value }), text)
}

fn range(r: RangeArg) -> ExtraRange {
    match r {
        RangeArg::Tau => ExtraRange::Tau,
        RangeArg::Literal => ExtraRange::Literal,
    }
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn lfactor(
    which: LfactorKind,
    c: GroupContext,
    i: Option<usize>,
    t: u32,
    er: RangeArg,
) -> std::result::Result<Outcome, Failure> {
    use LfactorKind::*;
    let name = format!(
        "lfactor {}",
        which
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    );
    let tau = SatakeDatum::tau(&c);
    let out = match which {
        Tensor => lfactors::tensor_l_with(&tau, &SatakeDatum::pi(&c), &c, SVar::Present, range(er))?.to_string(),
        TensorSigma => lfactors::tensor_sigma_l(&tau, &SatakeDatum::sigma(&c), &c, SVar::Present)?.to_string(),
        Asai => lfactors::asai_l(&tau, &c, AsaiTwist::None)?.to_string(),
        AsaiXi => lfactors::asai_l(&tau, &c, AsaiTwist::XiM)?.to_string(),
        Rankin => {
            if c.j < 2 {
                return Err(Failure::Usage(
                    "rankin splits tau into its first parameter and the rest; needs j >= 2".into(),
                ));
            }
            let blocks = SatakeDatum::tau_blocks(&c, &[1, c.j - 1])?;
            lfactors::gl_rankin_l(&blocks[0], &blocks[1], RankinShift::Unshifted)?.to_string()
        }
        Square => {
            let k = lfactors::square_kind_for(c.kind)
                .ok_or_else(|| Failure::Usage(format!("no square L-factor for {}", c.kind)))?;
            lfactors::so_square_l(&tau, k)?.to_string()
        }
        Zeta => lfactors::zeta_poly(&CharacterVector::for_context(&c).vars, t, &c)?.to_string(),
        D => lfactors::d_factor(&tau, &c, SVar::Present)?.to_string(),
        Q => lfactors::q_poly(&tau, &SatakeDatum::pi(&c), &c)?.to_string(),
        Pstar => lfactors::p_star(&c)?.to_string(),
        C => lfactors::c_function(&c)?.to_string(),
        Gamma => lfactors::gamma_gl(&c, need(i, "i")?)?.to_string(),
        Phi0 => lfactors::phi0_element(&tau, &c)?.to_string(),
        Rhs => lfactors::unramified_rhs(&tau, &SatakeDatum::sigma(&c), &SatakeDatum::pi(&c), &c)?.to_string(),
    };
    Ok(polynomial(name, c, out))
}

#[allow(clippy::too_many_arguments)]
fn orbits_cmd(
    which: OrbitsKind,
    ctx: &CtxArgs,
    dim_x: Option<usize>,
    witt_w: Option<usize>,
    witt_w0perp: Option<usize>,
    dim_w: Option<usize>,
    family: Option<FamilyArg>,
) -> std::result::Result<Outcome, Failure> {
    match which {
        OrbitsKind::Eps => {
            let c = resolve(ctx)?;
            Ok(entries("orbits eps".into(), Some(c), &orbits::enumerate_eps(&c)))
        }
        OrbitsKind::Survive => {
            let c = resolve(ctx)?;
            Ok(entries(
                "orbits survive".into(),
                Some(c),
                &[orbits::surviving_summand(&c)?],
            ))
        }
        OrbitsKind::Count => {
            let q = OrbitCountQuery {
                dim_x: need(dim_x, "dim-x")?,
                witt_w: need(witt_w, "witt-w")?,
                witt_w0perp: need(witt_w0perp, "witt-w0perp")?,
                dim_w: need(dim_w, "dim-w")?,
                family: match need(family, "family")? {
                    FamilyArg::Unitary => FormFamily::Unitary,
                    FamilyArg::Orthogonal => FormFamily::Orthogonal,
                },
            };
            let n = orbits::bessel_orbit_count(&q)?;
            Ok(Outcome::construction(
                "orbits count".into(),
                None,
                json!({ "entries": [{ "query": q, "orbits": n }] }),
                n.to_string(),
            ))
        }
        OrbitsKind::TopBeta => {
            let c = resolve(ctx)?;
            Ok(entries(
                "orbits top-beta".into(),
                Some(c),
                &orbits::classify_top_beta(&c, witt_w0perp)?,
            ))
        }
    }
}

fn verify(
    which: VerifyKind,
    c: GroupContext,
    max_rank: usize,
    i: Option<usize>,
    n: &[i32],
    er: RangeArg,
) -> std::result::Result<Outcome, Failure> {
    Ok(match which {
        VerifyKind::DeltaAntisym => report_outcome(
            "verify delta-antisym".into(),
            &identity::check_delta_antisymmetry(&c, max_rank)?,
        ),
        VerifyKind::Main => report_outcome("verify main".into(), &identity::main_delta_identity(&c, max_rank)?),
        VerifyKind::Cstar => report_outcome("verify cstar".into(), &identity::cstar_ratio_check(&c, need(i, "i")?)?),
        VerifyKind::Vanishing => {
            if n.is_empty() {
                return Err(Failure::Usage("--n is required".into()));
            }
            let sum = identity::vanishing_sum(&c, n, max_rank)?;
            let expected_zero = identity::is_singular(&c, n);
            let ok = sum.is_zero() == expected_zero;
            let status = if ok { Status::Verified } else { Status::Failed };
            let witness = sum.to_string();
            Outcome {
                command: "verify vanishing".into(),
                context: Some(c),
                result: json!({ "status": status.as_str(), "witness": witness, "singular": expected_zero }),
                text: format!(
                    "status: {}\nsingular: {expected_zero}\nwitness: {witness}",
                    status.as_str()
                ),
                exit: if ok { 0 } else { 1 },
            }
        }
        VerifyKind::QIdentity => {
            let out = lfactors::verify_q_identity(&c, range(er))?;
            let status = if out.holds { Status::Verified } else { Status::Failed };
            let witness = out.witness.to_string();
            Outcome {
                command: "verify q-identity".into(),
                context: Some(c),
                result: json!({ "status": status.as_str(), "witness": witness }),
                text: format!("status: {}\nwitness: {witness}", status.as_str()),
                exit: if out.holds { 0 } else { 1 },
            }
        }
    })
}

fn progress(diag: &mut dyn Write, r: &battery::CriterionResult) {
    let verdict = if r.passed { "ok" } else { "FAILED" };
    let _ = writeln!(diag, "[{}/10] {} {verdict} ({:.2?})", r.id, r.name, r.elapsed);
}

fn suite(max_rank: usize, diag: &mut dyn Write) -> Outcome {
    let mut results = Vec::new();
    for check in [
        battery::antisymmetry as fn(usize) -> battery::CriterionResult,
        battery::vanishing,
        battery::main_identity,
    ] {
        let r = check(max_rank);
        progress(diag, &r);
        results.push(r);
    }
    for check in [
        battery::q_consistency as fn() -> battery::CriterionResult,
        battery::cstar_clauses,
        battery::orbit_counts,
        battery::coset_enumeration,
        battery::degenerate_zeta,
        battery::eulerian,
    ] {
        let r = check();
        progress(diag, &r);
        results.push(r);
    }
    let r = battery::symalg_properties(battery::DEFAULT_SEED);
    progress(diag, &r);
    results.push(r);

    let all = results.iter().all(|r| r.passed);
    let status = if all { Status::Verified } else { Status::Failed };
    let text = results
        .iter()
        .map(|r| format!("{} {:>2} {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name))
        .collect::<Vec<_>>()
        .join("\n");
    Outcome {
        command: "suite".into(),
        context: None,
        result: json!({ "status": status.as_str(), "entries": results }),
        text: format!("{text}\nstatus: {}", status.as_str()),
        exit: if all { 0 } else { 1 },
    }
}

fn dispatch(cli: &Cli, diag: &mut dyn Write) -> std::result::Result<Outcome, Failure> {
    let max_rank = cli.opts.max_rank;
    match &cli.command {
        Command::Lfactor {
            which,
            ctx,
            i,
            t,
            extra_range,
        } => lfactor(*which, resolve(ctx)?, *i, *t, *extra_range),
        Command::Orbits {
            which,
            ctx,
            dim_x,
            witt_w,
            witt_w0perp,
            dim_w,
            family,
        } => orbits_cmd(*which, ctx, *dim_x, *witt_w, *witt_w0perp, *dim_w, *family),
        Command::Jacquet { which, ctx, l1, l2, l3 } => match which {
            JacquetKind::Inert => {
                let c = resolve(ctx)?;
                Ok(entries(
                    "jacquet inert".into(),
                    Some(c),
                    &orbits::jacquet_constituents_inert(&c)?,
                ))
            }
            JacquetKind::Split => {
                let j = need(ctx.j, "j")?;
                let list = orbits::jacquet_constituents_split(need(*l1, "l1")?, need(*l2, "l2")?, need(*l3, "l3")?, j)?;
                Ok(entries("jacquet split".into(), None, &list))
            }
        },
        Command::Verify {
            which,
            ctx,
            i,
            n,
            extra_range,
        } => verify(*which, resolve(ctx)?, max_rank, *i, n, *extra_range),
        Command::Suite => Ok(suite(max_rank, diag)),
    }
}

fn error_output(command: &str, msg: &str, text: bool) -> String {
    if text {
        format!("error: {msg}")
    } else {
        let v = json!({ "command": command, "error": msg });
        serde_json::to_string_pretty(&v).unwrap_or_default()
    }
}

/// Runs the tool with `args` (without the program name). Diagnostics are discarded.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::sink())
}

/// Runs the tool with `args`, writing progress lines to `diag`.
pub fn run_with<I, S>(args: I, diag: &mut dyn Write) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("zetaforge")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let detail = e.to_string();
            let _ = writeln!(diag, "{detail}");
            return (2, error_output("", first_line(&detail), false));
        }
    };
    let text = cli.opts.text;
    let start = Instant::now();
    match dispatch(&cli, diag) {
        Ok(out) => {
            let elapsed_ms = if cli.opts.no_timing {
                0
            } else {
                start.elapsed().as_millis() as u64
            };
            let rendered = if text {
                out.text
            } else {
                let v = json!({
                    "command": out.command,
                    "context": out.context,
                    "result": out.result,
                    "elapsed_ms": elapsed_ms,
                });
                serde_json::to_string_pretty(&v).unwrap_or_default()
            };
            (out.exit, rendered)
        }
        Err(Failure::Usage(msg)) => (2, error_output(&command_name(&cli), &msg, text)),
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("").trim_start_matches("error: ")
}

fn command_name(cli: &Cli) -> String {
    match &cli.command {
        Command::Lfactor { .. } => "lfactor",
        Command::Orbits { .. } => "orbits",
        Command::Jacquet { .. } => "jacquet",
        Command::Verify { .. } => "verify",
        Command::Suite => "suite",
    }
    .to_string()
}
