//! Command-line front end. Every subcommand is deterministic for fixed
//! flags: exit 0 on success, 1 on a validation error, 2 when an internal
//! invariant check fails.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use split_spectral::cohomology::{
    build_cover_model, norm_sequence_exact, pullback_split, so_fiber_model, CoverCohomologyModel,
};
use split_spectral::components::{grading_table, maximal_case, Group};
use split_spectral::covers::{
    adjunction_check_mid, adjunction_check_top, build_geometry, hitchin_base_dims,
    residual_base_dims, riemann_hurwitz_check, CurveParams, ResidualIndexConvention,
};
use split_spectral::degrees::{
    degree_profile, dual_twist_degree_check, euler_pushforward_check, milnor_wood,
};
use split_spectral::divisors::{
    count_classes, count_classes_by_m, enumerate_classes, multisection_identity, Divisor,
    DivisorClass,
};
use split_spectral::gf2::BitVector;
use split_spectral::hitchin::{
    all_checks_pass, hitchin_checks, parity_split, sl_twisted_bundle, so_bundle, sp_bundle,
    sp_half_bundle,
};
use split_spectral::ledger::convention_ledger;
use split_spectral::swdata::{sw_classes, sw_classes_spin, w1_is_norm_linear, SpectralDatum};
use std::fmt::Write as _;
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 1;
const EXIT_INVARIANT: u8 = 2;

/// Default guard on the enumeration size; override with the
/// SPLIT_SPECTRAL_MAX_ENUM environment variable.
const DEFAULT_MAX_ENUM: usize = 20;

#[derive(Parser)]
#[command(name = "split-spectral", version, about = "Exact spectral-data calculus for split orthogonal and symplectic Higgs bundles", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sp,
    So,
}

#[derive(Args)]
struct CurveArgs {
    /// Rank parameter of the split group (>= 1)
    #[arg(long)]
    m: i64,
    /// Genus of the base curve (>= 2)
    #[arg(long)]
    g: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Curve-tower profile: genera, dimensions, base dims, convention ledger
    Report {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run every cross-module invariant and print a pass/fail matrix
    Check {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Seed for the randomized probe sweep
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Component grading table for one group
    Grade {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Characteristic classes of a spectral datum
    Sw {
        #[command(flatten)]
        curve: CurveArgs,
        /// Cover-cohomology class as hex:len, e.g. 0x1a:14
        #[arg(long = "F")]
        f: String,
        /// Divisor as a bit string over the ramification points
        #[arg(long = "D")]
        d: String,
        /// Spin-lift flag selecting one of the two fiber copies
        #[arg(long = "w2v", value_parser = parse_bit, action = clap::ArgAction::Set)]
        w2v: bool,
        #[arg(long = "eps-sigma", value_parser = parse_bit, action = clap::ArgAction::Set, default_value = "0")]
        eps_sigma: bool,
        #[arg(long = "eps-sbar", value_parser = parse_bit, action = clap::ArgAction::Set, default_value = "0")]
        eps_sbar: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Degree profile for (m, g, M) with the convention ledger
    Degrees {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "M")]
        m_invariant: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Graded bundles of the distinguished components and their checks
    Hitchin {
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact fiber point count for one component
    FiberCount {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "M")]
        m_invariant: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate all divisor classes over the N ramification points
    Enumerate {
        #[command(flatten)]
        curve: CurveArgs,
        /// Only emit classes with invariant at most this bound
        #[arg(long = "M")]
        max_m: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::validation(e.to_string())
}

fn parse_bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

fn curve(args: &CurveArgs) -> Result<CurveParams, CliError> {
    CurveParams::new(args.m, args.g).map_err(validation)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_VALIDATION,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Report { curve: c, format } => report(curve(&c)?, format),
        Command::Check {
            curve: c,
            format,
            seed,
        } => check(curve(&c)?, format, seed),
        Command::Grade {
            group,
            curve: c,
            format,
        } => grade(group, curve(&c)?, format),
        Command::Sw {
            curve: c,
            f,
            d,
            w2v,
            eps_sigma,
            eps_sbar,
            format,
        } => sw(curve(&c)?, &f, &d, w2v, eps_sigma, eps_sbar, format),
        Command::Degrees {
            curve: c,
            m_invariant,
            format,
        } => degrees(curve(&c)?, m_invariant, format),
        Command::Hitchin { m, format } => hitchin(m, format),
        Command::FiberCount {
            group,
            curve: c,
            m_invariant,
            format,
        } => fiber_count(group, curve(&c)?, m_invariant, format),
        Command::Enumerate {
            curve: c,
            max_m,
            format,
        } => enumerate(curve(&c)?, max_m, format),
    }
}

// ---------------------------------------------------------------- output

fn emit<T: Serialize>(value: &T, format: Format, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable output"),
        Format::Table => table(),
    }
}

fn table_rows(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:width$}  {v}");
    }
    out.trim_end().to_string()
}

// ---------------------------------------------------------------- report

#[derive(Serialize)]
struct Report {
    params: CurveParams,
    geometry: split_spectral::covers::CoverGeometry,
    hitchin_base_dims: Vec<i64>,
    residual_base_dims_up_to_m_minus_one: Vec<i64>,
    residual_base_dims_up_to_two_m_minus_two: Vec<i64>,
    ledger: Vec<split_spectral::ledger::LedgerEntry>,
}

fn report(p: CurveParams, format: Format) -> Result<String, CliError> {
    let r = Report {
        params: p,
        geometry: build_geometry(p),
        hitchin_base_dims: hitchin_base_dims(p),
        residual_base_dims_up_to_m_minus_one: residual_base_dims(
            p,
            ResidualIndexConvention::UpToMMinusOne,
        ),
        residual_base_dims_up_to_two_m_minus_two: residual_base_dims(
            p,
            ResidualIndexConvention::UpToTwoMMinusTwo,
        ),
        ledger: convention_ledger(p.m, p.g),
    };
    Ok(emit(&r, format, || {
        let g = &r.geometry;
        let mut rows = vec![
            ("m", p.m.to_string()),
            ("g", p.g.to_string()),
            ("g_S", g.g_S.to_string()),
            ("g_Sbar", g.g_Sbar.to_string()),
            ("N", g.N.to_string()),
            ("deg_K", g.deg_K.to_string()),
            ("dim_prym", g.dim_prym.to_string()),
            ("dim_hitchin_base", g.dim_hitchin_base.to_string()),
            ("dim_prym2", g.dim_prym2.to_string()),
            ("dim_so_fiber", g.dim_so_fiber.to_string()),
            ("hitchin_base_dims", format!("{:?}", r.hitchin_base_dims)),
            (
                "residual_dims (i<=m-1)",
                format!("{:?}", r.residual_base_dims_up_to_m_minus_one),
            ),
            (
                "residual_dims (i<=2m-2)",
                format!("{:?}", r.residual_base_dims_up_to_two_m_minus_two),
            ),
        ];
        for e in &r.ledger {
            rows.push(("ledger", format!("[{}] {}", e.id, e.adopted)));
        }
        table_rows(
            &rows
                .iter()
                .map(|(k, v)| (*k, v.clone()))
                .collect::<Vec<_>>(),
        )
    }))
}

// ---------------------------------------------------------------- check

#[derive(Serialize)]
struct CheckReport {
    params: CurveParams,
    seed: u64,
    checks: Vec<CheckLine>,
    all_passed: bool,
}

#[derive(Serialize)]
struct CheckLine {
    name: &'static str,
    passed: bool,
}

fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

fn random_vector(dim: usize, state: &mut u64) -> BitVector {
    let mut v = BitVector::zeros(dim);
    for i in 0..dim {
        v.set(i, xorshift(state) & 1 == 1);
    }
    v
}

fn sw_routes_agree(model: &CoverCohomologyModel, seed: u64) -> bool {
    let dim = model.h_sbar().dim();
    let n = model.geometry().N as usize;
    let mut state = seed ^ 0x9e3779b97f4a7c15;
    let class = match DivisorClass::trivial(n) {
        Ok(c) => c,
        Err(_) => return false,
    };
    for w2_total in [false, true] {
        for _ in 0..32 {
            let datum = SpectralDatum {
                f: random_vector(dim, &mut state),
                d: class.clone(),
                w2_total,
            };
            let a = sw_classes(&datum, model);
            let b = sw_classes_spin(&datum, model);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    if a != b || a.w2_Vplus ^ a.w2_Vminus != w2_total {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

fn check(p: CurveParams, format: Format, seed: u64) -> Result<String, CliError> {
    let geo = build_geometry(p);
    let model = build_cover_model(p, false, false);
    let n = geo.N as usize;

    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool| checks.push(CheckLine { name, passed });

    push("riemann_hurwitz", riemann_hurwitz_check(&geo));
    push("adjunction_top", adjunction_check_top(p, &geo));
    push("adjunction_mid", adjunction_check_mid(p, &geo));
    push(
        "hitchin_base_total",
        hitchin_base_dims(p).iter().sum::<i64>() == geo.dim_prym,
    );
    push(
        "euler_pushforward_all_M",
        (0..=geo.N)
            .step_by(2)
            .all(|mi| euler_pushforward_check(p.m, p.g, mi).unwrap_or(false)),
    );
    push(
        "dual_twist_degree_all_M",
        (0..=geo.N)
            .step_by(2)
            .all(|mi| dual_twist_degree_check(p.m, p.g, mi).unwrap_or(false)),
    );
    push(
        "milnor_wood_ladder",
        (0..=geo.N)
            .step_by(2)
            .all(|mi| milnor_wood(p.m, p.g, mi).map(|r| r.within_bound).unwrap_or(false)),
    );
    push(
        "norm_sequence_exact",
        norm_sequence_exact(&model).unwrap_or(false),
    );
    push(
        "pullback_split",
        pullback_split(&model)
            .map(|r| r.is_valid(&model))
            .unwrap_or(false),
    );
    push("w1_linearity", w1_is_norm_linear(&model));
    push(
        "multisection_identity",
        multisection_identity(n).unwrap_or(false),
    );
    let fiber = so_fiber_model(p);
    push("so_fiber_dim", fiber.dim as i64 == geo.N - 2);
    push(
        "so_fiber_count",
        count_classes(n).map(|c| c == fiber.points_per_copy).unwrap_or(false),
    );
    if n <= enum_limit() {
        push(
            "class_enumeration_count",
            enumerate_classes(n, None)
                .map(|it| BigUint::from(it.count()) == fiber.points_per_copy)
                .unwrap_or(false),
        );
    }
    push("sw_routes_agree", sw_routes_agree(&model, seed));
    push("hitchin_structure", all_checks_pass(p.m));
    push(
        "grading_total_so",
        grading_table(Group::SoSplit, p).total == count_classes(n).unwrap_or_default(),
    );
    push(
        "ledger_variant_fails",
        convention_ledger(p.m, p.g)
            .iter()
            .any(|e| e.id == "deg_u" && e.resolved && e.evidence.contains("passes = false")),
    );

    let all_passed = checks.iter().all(|c| c.passed);
    let r = CheckReport {
        params: p,
        seed,
        checks,
        all_passed,
    };
    let out = emit(&r, format, || {
        let mut rows: Vec<(&str, String)> = r
            .checks
            .iter()
            .map(|c| (c.name, if c.passed { "pass" } else { "FAIL" }.to_string()))
            .collect();
        rows.push(("all_passed", r.all_passed.to_string()));
        table_rows(&rows)
    });
    if all_passed {
        Ok(out)
    } else {
        println!("{out}");
        Err(CliError::invariant(format!(
            "invariant check failed for m={} g={}",
            p.m, p.g
        )))
    }
}

// ---------------------------------------------------------------- grade

fn grade(group: GroupArg, p: CurveParams, format: Format) -> Result<String, CliError> {
    let group = match group {
        GroupArg::Sp => Group::SpReal,
        GroupArg::So => Group::SoSplit,
    };
    #[derive(Serialize)]
    struct GradeReport {
        table: split_spectral::components::GradingTable,
        maximal_case: split_spectral::components::MaximalCase,
    }
    let r = GradeReport {
        table: grading_table(group, p),
        maximal_case: maximal_case(p),
    };
    Ok(emit(&r, format, || {
        let mut rows: Vec<(&str, String)> = Vec::new();
        for row in &r.table.rows {
            rows.push((
                "component",
                format!(
                    "M={} sym_dim={} bundle_rank={} count={}",
                    row.m_invariant, row.sym_dim, row.bundle_rank, row.fiber_count_per_point
                ),
            ));
        }
        rows.push(("total", r.table.total.to_string()));
        table_rows(&rows)
    }))
}

// ---------------------------------------------------------------- sw

fn parse_f(spec: &str) -> Result<BitVector, CliError> {
    let (hex, len) = spec
        .rsplit_once(':')
        .ok_or_else(|| CliError::validation(format!("--F expects hex:len, got {spec:?}")))?;
    let len: usize = len
        .parse()
        .map_err(|_| CliError::validation(format!("--F length {len:?} is not an integer")))?;
    BitVector::from_hex(hex, len).map_err(validation)
}

fn sw(
    p: CurveParams,
    f: &str,
    d: &str,
    w2v: bool,
    eps_sigma: bool,
    eps_sbar: bool,
    format: Format,
) -> Result<String, CliError> {
    let model = build_cover_model(p, eps_sigma, eps_sbar);
    let f = parse_f(f)?;
    let divisor = Divisor::from_binary_str(d).map_err(validation)?;
    let class = split_spectral::divisors::canonicalize(&divisor).map_err(validation)?;
    let datum = SpectralDatum {
        f,
        d: class,
        w2_total: w2v,
    };
    let classes = sw_classes(&datum, &model).map_err(validation)?;
    let via_spin = sw_classes_spin(&datum, &model).map_err(validation)?;
    if classes != via_spin {
        return Err(CliError::invariant(
            "the two class computation routes disagree",
        ));
    }
    Ok(emit(&classes, format, || {
        table_rows(&[
            ("w1_Vplus", classes.w1_Vplus.to_binary_string()),
            ("w2_Vplus", (classes.w2_Vplus as u8).to_string()),
            ("w2_Vminus", (classes.w2_Vminus as u8).to_string()),
            ("M", classes.m_invariant.to_string()),
        ])
    }))
}

// ---------------------------------------------------------------- degrees

fn degrees(p: CurveParams, m_invariant: i64, format: Format) -> Result<String, CliError> {
    let profile = degree_profile(p.m, p.g, m_invariant).map_err(validation)?;
    let mw = milnor_wood(p.m, p.g, m_invariant).map_err(validation)?;
    #[derive(Serialize)]
    struct DegreesReport {
        profile: split_spectral::degrees::DegreeProfile,
        milnor_wood: split_spectral::degrees::MilnorWood,
        ledger: Vec<split_spectral::ledger::LedgerEntry>,
    }
    let r = DegreesReport {
        profile,
        milnor_wood: mw,
        ledger: convention_ledger(p.m, p.g),
    };
    Ok(emit(&r, format, || {
        let mut rows = vec![
            ("deg_U", profile.deg_U.to_string()),
            ("deg_U_plus", profile.deg_U_plus.to_string()),
            ("deg_U_minus", profile.deg_U_minus.to_string()),
            ("deg_W", profile.deg_W.to_string()),
            ("toledo", profile.toledo.to_string()),
            ("within_bound", mw.within_bound.to_string()),
        ];
        for e in &r.ledger {
            rows.push(("ledger", format!("[{}] {}", e.id, e.adopted)));
        }
        table_rows(&rows)
    }))
}

// ---------------------------------------------------------------- hitchin

fn hitchin(m: i64, format: Format) -> Result<String, CliError> {
    if m < 1 {
        return Err(CliError::validation(format!(
            "rank parameter m must be >= 1, got {m}"
        )));
    }
    let (plus, minus) = parity_split(m);
    #[derive(Serialize)]
    struct HitchinReport {
        m: i64,
        symplectic: split_spectral::hitchin::GradedBundle,
        orthogonal: split_spectral::hitchin::GradedBundle,
        lagrangian_half: split_spectral::hitchin::GradedBundle,
        parity_plus: split_spectral::hitchin::GradedBundle,
        parity_minus: split_spectral::hitchin::GradedBundle,
        twisted_rank_m: split_spectral::hitchin::GradedBundle,
        checks: split_spectral::hitchin::HitchinChecks,
    }
    let r = HitchinReport {
        m,
        symplectic: sp_bundle(m),
        orthogonal: so_bundle(m),
        lagrangian_half: sp_half_bundle(m),
        parity_plus: plus,
        parity_minus: minus,
        twisted_rank_m: sl_twisted_bundle(m),
        checks: hitchin_checks(m),
    };
    if !all_checks_pass(m) {
        return Err(CliError::invariant(format!(
            "graded-bundle structure checks failed at m={m}"
        )));
    }
    Ok(emit(&r, format, || {
        let half = |b: &split_spectral::hitchin::GradedBundle| {
            let parts: Vec<String> = b
                .half_exponents
                .iter()
                .map(|e| format!("{}/2", e))
                .collect();
            format!("[{}]", parts.join(", "))
        };
        table_rows(&[
            ("symplectic", half(&r.symplectic)),
            ("orthogonal", half(&r.orthogonal)),
            ("lagrangian_half", half(&r.lagrangian_half)),
            ("parity_plus", half(&r.parity_plus)),
            ("parity_minus", half(&r.parity_minus)),
            ("twisted_rank_m", half(&r.twisted_rank_m)),
            ("all_checks", "pass".to_string()),
        ])
    }))
}

// ---------------------------------------------------------------- counts

fn fiber_count(
    group: GroupArg,
    p: CurveParams,
    m_invariant: i64,
    format: Format,
) -> Result<String, CliError> {
    let descriptor = match group {
        GroupArg::Sp => split_spectral::components::sp_component(p, m_invariant),
        GroupArg::So => split_spectral::components::so_component(p, m_invariant),
    }
    .map_err(validation)?;
    Ok(emit(&descriptor, format, || {
        table_rows(&[
            ("M", descriptor.m_invariant.to_string()),
            ("count", descriptor.fiber_count_per_point.to_string()),
            (
                "annotation",
                descriptor.annotation.clone().unwrap_or_default(),
            ),
        ])
    }))
}

fn enum_limit() -> usize {
    std::env::var("SPLIT_SPECTRAL_MAX_ENUM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

fn enumerate(p: CurveParams, max_m: Option<i64>, format: Format) -> Result<String, CliError> {
    let geo = build_geometry(p);
    let n = geo.N as usize;
    let limit = enum_limit();
    if n > limit {
        return Err(CliError::validation(format!(
            "enumeration refused: N={n} exceeds the limit {limit} \
             (raise SPLIT_SPECTRAL_MAX_ENUM to override)"
        )));
    }
    let max_m = match max_m {
        Some(v) if v < 0 => {
            return Err(CliError::validation(format!(
                "--M must be nonnegative, got {v}"
            )))
        }
        Some(v) => Some(v as usize),
        None => None,
    };
    let classes: Vec<DivisorClass> = enumerate_classes(n, max_m)
        .map_err(validation)?
        .collect();
    #[derive(Serialize)]
    struct EnumerationReport {
        #[serde(rename = "N")]
        n: usize,
        count: usize,
        expected_total: String,
        classes: Vec<DivisorClass>,
    }
    let r = EnumerationReport {
        n,
        count: classes.len(),
        expected_total: count_classes_total(n, max_m),
        classes,
    };
    Ok(emit(&r, format, || {
        let mut rows: Vec<(&str, String)> = r
            .classes
            .iter()
            .map(|c| {
                (
                    "class",
                    format!("{} M={}", c.rep().support().to_binary_string(), c.m_invariant()),
                )
            })
            .collect();
        rows.push(("count", r.count.to_string()));
        table_rows(&rows)
    }))
}

fn count_classes_total(n: usize, max_m: Option<usize>) -> String {
    match max_m {
        None => count_classes(n).map(|c| c.to_string()).unwrap_or_default(),
        Some(cap) => {
            let mut sum = BigUint::default();
            let mut mi = 0;
            while mi <= cap.min(n / 2) {
                if let Ok(c) = count_classes_by_m(n, mi) {
                    sum += c;
                }
                mi += 2;
            }
            sum.to_string()
        }
    }
}
