//! Command-line front door: coefficient tables, identity checks, congruence
//! scans, and quasimodular fits, each emitted as text, CSV, or JSON.
//!
//! Exit codes are a stable contract:
//!   0  success / all checks pass
//!   2  mathematical disagreement (failed check, route mismatch, infeasible fit)
//!  64  usage error (bad flags, bad parameter domain, bad spec strings)
//!  65  unknown identity id
//!  66  insufficient truncation order for the requested fit

use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde_json::json;

use crate::identities;
use crate::macmahon::{
    compute_route, scan_congruence_1mod3_mod3, scan_congruence_2mod3, MacParams, Route,
    ScanOutcome,
};
use crate::quasimodular::{
    de2_proposition_check, fit_quasimodular, monomials_up_to_weight, parse_basis, EisensteinId,
    QMExpr, QmError,
};
use crate::rational::rat_to_string;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_UNKNOWN_IDENTITY: i32 = 65;
pub const EXIT_INSUFFICIENT_ORDER: i32 = 66;

#[derive(Parser)]
#[command(
    name = "qdivisor",
    version,
    about = "Exact q-series engine for MacMahon-type sums of divisors U_t(a,q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the nonzero coefficients MO(a,t;n) for n up to the order
    Coeffs(CoeffsArgs),
    /// Check one registered identity by id, or "all"
    Verify(VerifyArgs),
    /// Run the congruence scans over the coefficient tables
    Scan(ScanArgs),
    /// Fit a U-series against a basis of Eisenstein monomials
    Fit(FitArgs),
    /// List every registered identity id with its one-line summary
    ListIdentities(ListArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Direct,
    Product,
    Cheb,
    All,
}

#[derive(Args)]
struct CommonArgs {
    /// Truncation order: series are computed through q^order
    #[arg(long, env = "QDIVISOR_DEFAULT_ORDER", default_value_t = 120)]
    order: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the formatted output to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Trinomial parameter a, one of -2, -1, 0, 1, 2
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    /// Number of summation indices t, >= 0
    #[arg(long)]
    t: i64,
    /// Computation route; "all" cross-checks every route
    #[arg(long, value_enum, default_value_t = RouteArg::All)]
    route: RouteArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id (see list-identities), or "all" for the whole registry
    id: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FitArgs {
    /// Target series spec "U:a:t", e.g. "U:-2:3"
    #[arg(long)]
    target: Option<String>,
    /// Comma-separated Eisenstein generators, e.g. "E2,E2@2"
    #[arg(long)]
    basis: Option<String>,
    /// Largest total weight of basis monomials; defaults to 2t of the target
    #[arg(long, value_name = "W")]
    max_weight: Option<u32>,
    /// Check the partial-E2 recursion for U_t(-2,q) instead of a single fit
    #[arg(long)]
    de2: bool,
    /// Largest t covered by the --de2 recursion check
    #[arg(long, default_value_t = 3)]
    tmax: u32,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ListArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the formatted output to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Fit(args) => cmd_fit(args),
        Command::ListIdentities(args) => cmd_list(args),
    }
}

/// Parses a target spec "U:a:t" into its (a, t) pair.
pub fn parse_target(s: &str) -> Result<(i64, i64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["U", a, t] => {
            let a = a.parse().map_err(|_| format!("bad a in target {s:?}"))?;
            let t = t.parse().map_err(|_| format!("bad t in target {s:?}"))?;
            Ok((a, t))
        }
        _ => Err(format!("bad target spec {s:?}; expected \"U:a:t\" such as \"U:-2:3\"")),
    }
}

fn emit(output: &Option<PathBuf>, body: String) -> Result<(), i32> {
    match output {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => fs::write(path, body).map_err(|e| {
            eprintln!("qdivisor: cannot write {}: {e}", path.display());
            EXIT_USAGE
        }),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_coeffs(args: CoeffsArgs) -> i32 {
    let params = match MacParams::new(args.a, args.t, args.common.order) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qdivisor: {e}");
            return EXIT_USAGE;
        }
    };
    let routes = match args.route {
        RouteArg::Direct => vec![Route::Direct],
        RouteArg::Product => vec![Route::Product],
        RouteArg::Cheb => vec![Route::Cheb],
        RouteArg::All => vec![Route::Direct, Route::Product, Route::Cheb],
    };
    let results: Vec<_> = routes.iter().map(|&r| compute_route(&params, r)).collect();

    let mut disagreement = None;
    for pair in results.windows(2) {
        if let Some((n, l, r)) = pair[0].series.first_mismatch(&pair[1].series) {
            disagreement =
                Some((pair[0].route.name(), pair[1].route.name(), n, rat_to_string(&l), rat_to_string(&r)));
            break;
        }
    }
    if let Some((ra, rb, n, l, r)) = &disagreement {
        eprintln!("qdivisor: routes {ra} and {rb} disagree at q^{n}: {l} vs {r}");
    }

    let series = &results.last().expect("at least one route").series;
    let rows: Vec<(usize, String)> = series
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n, rat_to_string(c)))
        .collect();
    let route_names: Vec<&str> = results.iter().map(|r| r.route.name()).collect();

    let body = match args.common.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# MO({}, {}; n) for n <= {}, route {}\n",
                args.a,
                args.t,
                args.common.order,
                route_names.join("+")
            );
            for (n, v) in &rows {
                out.push_str(&format!("{n}\t{v}\n"));
            }
            if routes.len() > 1 {
                match &disagreement {
                    None => out.push_str("# routes agree\n"),
                    Some((ra, rb, n, l, r)) => {
                        out.push_str(&format!("# DISAGREEMENT {ra} vs {rb} at q^{n}: {l} vs {r}\n"))
                    }
                }
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,value\n");
            for (n, v) in &rows {
                out.push_str(&format!("{n},{}\n", csv_field(v)));
            }
            out
        }
        OutputFormat::Json => {
            let doc = json!({
                "a": args.a,
                "t": args.t,
                "order": args.common.order,
                "routes": route_names,
                "routes_agree": disagreement.is_none(),
                "first_disagreement": disagreement.as_ref().map(|(ra, rb, n, l, r)| json!({
                    "routes": [ra, rb], "n": n, "lhs": l, "rhs": r,
                })),
                "rows": rows.iter().map(|(n, v)| json!({"n": n, "value": v})).collect::<Vec<_>>(),
            });
            format!("{:#}\n", doc)
        }
    };
    if let Err(code) = emit(&args.common.output, body) {
        return code;
    }
    if disagreement.is_some() {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    }
}

fn report_text_line(r: &identities::IdentityReport) -> String {
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    let mut line = format!("{verdict}  {:<22} order {:<5} {:>9.2} ms", r.id, r.order_checked, r.elapsed_ms);
    if let Some(m) = &r.first_mismatch {
        match m.x {
            Some(x) => line.push_str(&format!("  at x^{x} q^{}: {} vs {}", m.n, m.lhs, m.rhs)),
            None => line.push_str(&format!("  at q^{}: {} vs {}", m.n, m.lhs, m.rhs)),
        }
    }
    line.push('\n');
    line
}

fn report_csv_rows(reports: &[identities::IdentityReport]) -> String {
    let mut out = String::from("id,order_checked,verdict,x,n,lhs,rhs,elapsed_ms\n");
    for r in reports {
        let verdict = if r.passed() { "pass" } else { "fail" };
        let (x, n, lhs, rhs) = match &r.first_mismatch {
            Some(m) => (
                m.x.map(|v| v.to_string()).unwrap_or_default(),
                m.n.to_string(),
                csv_field(&m.lhs),
                csv_field(&m.rhs),
            ),
            None => (String::new(), String::new(), String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.3}\n",
            csv_field(&r.id),
            r.order_checked,
            verdict,
            x,
            n,
            lhs,
            rhs,
            r.elapsed_ms
        ));
    }
    out
}

fn cmd_verify(args: VerifyArgs) -> i32 {
    let order = args.common.order;
    let reports = if args.id == "all" {
        identities::check_all(order)
    } else {
        match identities::check(&args.id, order) {
            Ok(r) => vec![r],
            Err(e) => {
                eprintln!("qdivisor: {e}");
                return EXIT_UNKNOWN_IDENTITY;
            }
        }
    };

    let body = match args.common.format {
        OutputFormat::Json => {
            if args.id == "all" {
                format!("{}\n", serde_json::to_string_pretty(&reports).expect("serializable"))
            } else {
                format!("{}\n", serde_json::to_string_pretty(&reports[0]).expect("serializable"))
            }
        }
        OutputFormat::Csv => report_csv_rows(&reports),
        OutputFormat::Text => reports.iter().map(report_text_line).collect(),
    };
    if let Err(code) = emit(&args.common.output, body) {
        return code;
    }
    if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    }
}

fn scan_text_line(o: &ScanOutcome) -> String {
    let mut line = report_text_line(&o.report);
    line.pop();
    line.push_str(&format!("  ({} coefficients checked", o.checked));
    if let Some((t, n, c)) = &o.first_nonzero {
        line.push_str(&format!("; first nonzero MO(1,{t};{n}) = {}", rat_to_string(c)));
    }
    line.push_str(")\n");
    line
}

fn cmd_scan(args: ScanArgs) -> i32 {
    let order = args.common.order;
    let outcomes = [scan_congruence_2mod3(5, order), scan_congruence_1mod3_mod3(order)];

    let body = match args.common.format {
        OutputFormat::Text => outcomes.iter().map(scan_text_line).collect(),
        OutputFormat::Csv => {
            let reports: Vec<_> = outcomes.iter().map(|o| o.report.clone()).collect();
            let mut out = report_csv_rows(&reports);
            out.push_str("# checked,");
            out.push_str(
                &outcomes.iter().map(|o| o.checked.to_string()).collect::<Vec<_>>().join(","),
            );
            out.push('\n');
            out
        }
        OutputFormat::Json => {
            let doc = json!({
                "order": order,
                "scans": outcomes.iter().map(|o| json!({
                    "report": serde_json::to_value(&o.report).expect("serializable"),
                    "checked": o.checked,
                    "first_nonzero": o.first_nonzero.as_ref().map(|(t, n, c)| json!({
                        "t": t, "n": n, "value": rat_to_string(c),
                    })),
                })).collect::<Vec<_>>(),
            });
            format!("{:#}\n", doc)
        }
    };
    if let Err(code) = emit(&args.common.output, body) {
        return code;
    }
    if outcomes.iter().all(|o| o.report.passed()) {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    }
}

/// Human rendering of a fitted expression, e.g. "1/24 - 1/24*E2@3".
fn render_expr(expr: &QMExpr) -> String {
    let mut parts = Vec::new();
    for (exps, c) in expr.monomials() {
        if c.is_zero() {
            continue;
        }
        let mut factors = Vec::new();
        for (gen, &e) in expr.basis().iter().zip(exps) {
            match e {
                0 => {}
                1 => factors.push(gen.to_string()),
                _ => factors.push(format!("{gen}^{e}")),
            }
        }
        let coeff = rat_to_string(c);
        parts.push(if factors.is_empty() {
            coeff
        } else {
            format!("{coeff}*{}", factors.join("*"))
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn cmd_fit(args: FitArgs) -> i32 {
    if args.de2 {
        return cmd_fit_de2(&args);
    }
    let (Some(target_spec), Some(basis_spec)) = (&args.target, &args.basis) else {
        eprintln!("qdivisor: fit needs either --de2 or both --target and --basis");
        return EXIT_USAGE;
    };
    let (a, t) = match parse_target(target_spec) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("qdivisor: {msg}");
            return EXIT_USAGE;
        }
    };
    let basis = match parse_basis(basis_spec) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("qdivisor: {e}");
            return EXIT_USAGE;
        }
    };
    let params = match MacParams::new(a, t, args.common.order) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qdivisor: {e}");
            return EXIT_USAGE;
        }
    };
    let max_weight = args.max_weight.unwrap_or(2 * t as u32);
    let target = crate::macmahon::u_cheb(&params);

    match fit_quasimodular(&target, &basis, max_weight) {
        Ok(expr) => {
            let body = match args.common.format {
                OutputFormat::Json => format!("{}\n", expr.to_json()),
                OutputFormat::Text => format!(
                    "U_{}({},q) == {}   (basis {}, weight <= {}, order {})\n",
                    t,
                    a,
                    render_expr(&expr),
                    basis_spec,
                    max_weight,
                    args.common.order
                ),
                OutputFormat::Csv => {
                    let mut out = String::from("monomial,coefficient\n");
                    for (exps, c) in expr.monomials() {
                        let mono: Vec<String> = expr
                            .basis()
                            .iter()
                            .zip(exps)
                            .filter(|(_, &e)| e > 0)
                            .map(|(g, &e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
                            .collect();
                        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
                        out.push_str(&format!("{},{}\n", csv_field(&mono), csv_field(&rat_to_string(c))));
                    }
                    out
                }
            };
            if let Err(code) = emit(&args.common.output, body) {
                return code;
            }
            EXIT_OK
        }
        Err(QmError::InsufficientOrder { needed, available }) => {
            eprintln!(
                "qdivisor: order too small for this fit: need {needed} coefficients, have {available}"
            );
            EXIT_INSUFFICIENT_ORDER
        }
        Err(QmError::Infeasible) => {
            let body = match args.common.format {
                OutputFormat::Json => format!("{:#}\n", json!({"infeasible": true})),
                _ => "Infeasible\n".to_string(),
            };
            if let Err(code) = emit(&args.common.output, body) {
                return code;
            }
            EXIT_DISAGREEMENT
        }
        Err(e) => {
            eprintln!("qdivisor: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_fit_de2(args: &FitArgs) -> i32 {
    let order = args.common.order;
    if args.tmax < 1 {
        eprintln!("qdivisor: --tmax must be at least 1");
        return EXIT_USAGE;
    }
    let basis: Vec<EisensteinId> = [2u32, 4, 6]
        .iter()
        .map(|&w| EisensteinId::new(w, 1).expect("valid weight"))
        .collect();
    let needed = monomials_up_to_weight(&basis, 2 * args.tmax).len() + 20;
    if order + 1 < needed {
        eprintln!(
            "qdivisor: order too small for --de2 --tmax {}: need {needed} coefficients, have {}",
            args.tmax,
            order + 1
        );
        return EXIT_INSUFFICIENT_ORDER;
    }

    let outcome = de2_proposition_check(args.tmax, order);
    let all_passed = outcome.report.passed();
    let constant_str = outcome.constant.as_ref().map(|c| rat_to_string(c));
    let failed_t = outcome.report.first_mismatch.as_ref().and_then(|m| m.x);
    let last_t = failed_t.unwrap_or(args.tmax as usize);

    let per_t: Vec<(usize, &str)> = (1..=last_t)
        .map(|t| (t, if Some(t) == failed_t { "fail" } else { "pass" }))
        .collect();

    let body = match args.common.format {
        OutputFormat::Text => {
            let mut out = format!(
                "partial-E2 recursion constant: {}\n",
                constant_str.as_deref().unwrap_or("not determined")
            );
            for &(t, verdict) in &per_t {
                if verdict == "pass" {
                    out.push_str(&format!("t={t}: pass, residual 0 (exact through q^{order})\n"));
                } else if let Some(m) = &outcome.report.first_mismatch {
                    out.push_str(&format!("t={t}: FAIL at q^{}: {} vs {}\n", m.n, m.lhs, m.rhs));
                }
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("t,verdict,constant\n");
            for &(t, verdict) in &per_t {
                out.push_str(&format!(
                    "{t},{verdict},{}\n",
                    csv_field(constant_str.as_deref().unwrap_or(""))
                ));
            }
            out
        }
        OutputFormat::Json => {
            let doc = json!({
                "order": order,
                "tmax": args.tmax,
                "constant": constant_str,
                "report": serde_json::to_value(&outcome.report).expect("serializable"),
            });
            format!("{:#}\n", doc)
        }
    };
    if let Err(code) = emit(&args.common.output, body) {
        return code;
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    }
}

fn cmd_list(args: ListArgs) -> i32 {
    let entries = identities::registry();
    let body = match args.format {
        OutputFormat::Text => entries
            .iter()
            .map(|e| format!("{:<22} {}\n", e.id, e.summary))
            .collect(),
        OutputFormat::Csv => {
            let mut out = String::from("id,summary\n");
            for e in entries {
                out.push_str(&format!("{},{}\n", csv_field(e.id), csv_field(e.summary)));
            }
            out
        }
        OutputFormat::Json => {
            let doc: Vec<_> = entries
                .iter()
                .map(|e| json!({"id": e.id, "summary": e.summary}))
                .collect();
            format!("{:#}\n", serde_json::Value::Array(doc))
        }
    };
    if let Err(code) = emit(&args.output, body) {
        return code;
    }
    EXIT_OK
}
