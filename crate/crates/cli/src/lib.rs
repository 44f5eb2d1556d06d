//! The `swu` command line: presentations, θ/ρ expansion, Steenrod squares,
//! Hilbert tables and the verification suites.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use swu_core::algebra::{make_ring, parse_poly, Bidegree, RingSpec};
use swu_core::groebner::{GroebnerError, HilbertSeries, Limits, Verdict};
use swu_core::presentations::{
    bound_indices, present, presentation_hilbert, radical_equal_on_generators_with, topological_comparison,
    verify_chern_relation, verify_mq1_with, verify_tau_sequence, Group, PresentationError,
};
use swu_core::report::{Check, CheckVerdict, Report};
use swu_core::splitting::{all_forms, random_forms, verify_bilinear_regularity_with, verify_seq_theorem_with, SplittingError};
use swu_core::steenrod::{rho, sq, theta, SteenrodError};

/// Exit code for malformed command lines and invalid arguments.
pub const EXIT_USAGE: i32 = 64;
/// Exit code when a computation hit a resource cap.
pub const EXIT_UNRESOLVED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "swu", version, about = "Motivic cohomology of BO_n, BSO_n, BSpin_n and BGamma+_n over F2[tau]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the ring presentation of H(BG_n).
    Present {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Expand theta_j = Sq^{2^{j-1}} ... Sq^2 Sq^1 u_2 in H(BSO_n).
    Theta(ChainArgs),
    /// Expand rho_j, the topological shadow of theta_j, in H_top(BSO_n).
    Rho(ChainArgs),
    /// Apply Sq^m to a polynomial.
    Sq {
        /// Ring family: bo, bso, top-bo, top-bso, s, r or chern.
        #[arg(long, default_value = "bso")]
        ring: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Polynomial such as "u2*u3 + tau*u5".
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert series of H(BG_n) and its coefficients in a box.
    Hilbert {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 16)]
        max_p: u32,
        #[arg(long, default_value_t = 8)]
        max_q: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        opts: VerifyArgs,
    },
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    j: u32,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    /// Regularity of theta_1..theta_{l-1}, membership of theta_l, the k/l dichotomy.
    Mq1,
    /// Regularity of tau, theta_1..theta_{l-1}.
    Tauseq,
    /// The splitting-principle sequence in S_n.
    Seq,
    /// Regularity of twisted sequences of bilinear forms.
    PropReg,
    /// tau theta_j^2 as iterated squares of c_2.
    Chern,
    /// l(n) is k(n) or k(n) + 1.
    Kcasi,
    /// Gamma+ relations against the topological presentation.
    Topcmp,
    /// Radicals of the Chern relations and of the pulled-back ideal.
    Radical,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Mq1 => "mq1",
            Suite::Tauseq => "tauseq",
            Suite::Seq => "seq",
            Suite::PropReg => "prop-reg",
            Suite::Chern => "chern",
            Suite::Kcasi => "kcasi",
            Suite::Topcmp => "topcmp",
            Suite::Radical => "radical",
        }
    }

    fn default_n(self) -> Vec<u32> {
        match self {
            Suite::Mq1 | Suite::Tauseq | Suite::Topcmp => (3..=8).collect(),
            Suite::Seq => (4..=9).collect(),
            Suite::Chern => (4..=10).collect(),
            Suite::Radical => (3..=5).collect(),
            Suite::Kcasi | Suite::PropReg => Vec::new(),
        }
    }

    fn min_n(self) -> u32 {
        match self {
            Suite::Tauseq | Suite::Kcasi => 2,
            _ => 3,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Values of n: "5", "3,5,7", "3..10" or "3-10".
    #[arg(long, value_parser = parse_list)]
    n: Option<List>,
    /// Values of j for the chern suite (default 1..min(3, l-1)).
    #[arg(long, value_parser = parse_list)]
    j: Option<List>,
    /// Form dimensions for prop-reg (default 1..3).
    #[arg(long, value_parser = parse_list)]
    m: Option<List>,
    /// Seed for sampled forms in prop-reg.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample this many forms per dimension instead of enumerating all of them.
    #[arg(long)]
    count: Option<usize>,
    /// Largest n for kcasi when --n is not given.
    #[arg(long, default_value_t = 64)]
    max: u32,
    /// Skip S-pairs above this p-degree; affected regularity checks become unresolved.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Cap on S-pairs per Gröbner computation (default from SWU_RESOURCE_LIMIT).
    #[arg(long)]
    pair_limit: Option<usize>,
    /// Worker threads. Report order does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
    /// Record wall time per check. Off by default so that output is reproducible.
    #[arg(long)]
    timings: bool,
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: PresentationError| e.to_string())
}

/// A comma-separated list of values and ranges.
#[derive(Debug, Clone)]
struct List(Vec<u32>);

fn parse_list(s: &str) -> Result<List, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not a number: {t:?}"));
        let range = part.split_once("..=").or_else(|| part.split_once("..")).or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(List(out))
}

/// Error of a non-verify command, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn is_resource(e: &GroebnerError) -> bool {
    matches!(e, GroebnerError::ResourceLimit { .. } | GroebnerError::DegreeCapExceeded { .. })
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        let code = match &e {
            PresentationError::Groebner(g) if is_resource(g) => EXIT_UNRESOLVED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SteenrodError> for Failure {
    fn from(e: SteenrodError) -> Self {
        Failure::usage(e)
    }
}

/// Runs the command line `argv` (program name first), writing to the given streams.
pub fn run_with(argv: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify { suite, opts } => verify(suite, &opts),
        other => simple(other),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs `argv` against the process's standard streams.
pub fn run(argv: impl IntoIterator<Item = String>) -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    let code = run_with(argv, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn simple(command: Command) -> Result<(String, i32), Failure> {
    let text = match command {
        Command::Present { group, n, json } => {
            let pres = present(group, n)?;
            if json {
                pres.to_json()
            } else {
                format!("{pres}\n")
            }
        }
        Command::Theta(a) => chain_output("theta", &a, theta(a.n, a.j)?.to_string(), "BSO")?,
        Command::Rho(a) => chain_output("rho", &a, rho(a.n, a.j)?.to_string(), "top-BSO")?,
        Command::Sq { ring, n, m, poly, json } => {
            let spec: RingSpec = format!("{ring}:{n}").parse().map_err(Failure::usage)?;
            let r = make_ring(spec).map_err(Failure::usage)?;
            let f = parse_poly(&poly, &r).map_err(Failure::usage)?;
            let value = sq(m, &f)?.to_string();
            if json {
                pretty(&json!({ "ring": r.name(), "m": m, "input": f.to_string(), "value": value }))
            } else {
                format!("{value}\n")
            }
        }
        Command::Hilbert { group, n, max_p, max_q, json } => {
            let pres = present(group, n)?;
            let series = presentation_hilbert(&pres, Bidegree::new(max_p, max_q))?;
            hilbert_output(&pres.to_string(), &series, json)
        }
        Command::Verify { .. } => unreachable!("verify is dispatched separately"),
    };
    Ok((text, 0))
}

fn chain_output(kind: &str, a: &ChainArgs, value: String, ring: &str) -> Result<String, Failure> {
    if a.json {
        Ok(pretty(&json!({ "kind": kind, "ring": format!("{ring}, n={}", a.n), "n": a.n, "j": a.j, "value": value })))
    } else {
        Ok(format!("{value}\n"))
    }
}

fn hilbert_output(algebra: &str, series: &HilbertSeries, json: bool) -> String {
    let bound = series.truncation();
    if json {
        let coefficients: Vec<Value> =
            series.truncated().iter().map(|(&(p, q), &dim)| json!({ "p": p, "q": q, "dim": dim })).collect();
        return pretty(&json!({
            "algebra": algebra,
            "numerator": series.numerator().to_string(),
            "denominator": series.denominator(),
            "truncation": bound,
            "coefficients": coefficients,
        }));
    }
    let mut s = format!("{algebra}\nHS = {series}\n");
    s.push_str("p\\q");
    for q in 0..=bound.q {
        s.push_str(&format!(" {q:>5}"));
    }
    s.push('\n');
    for p in 0..=bound.p {
        s.push_str(&format!("{p:>3}"));
        for q in 0..=bound.q {
            s.push_str(&format!(" {:>5}", series.coefficient(Bidegree::new(p, q)).unwrap_or(0)));
        }
        s.push('\n');
    }
    s
}

type Task<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

fn verify(suite: Suite, opts: &VerifyArgs) -> Result<(String, i32), Failure> {
    let mut limits = Limits::default().with_cap(opts.degree_cap);
    if let Some(p) = opts.pair_limit {
        limits.pair_limit = p;
    }
    let ns = match (&opts.n, suite) {
        (Some(ns), _) => ns.0.clone(),
        (None, Suite::Kcasi) => (2..=opts.max.max(2)).collect(),
        (None, _) => suite.default_n(),
    };
    if let Some(&bad) = ns.iter().find(|&&n| n < suite.min_n()) {
        return Err(Failure::usage(format!("verify {} needs n >= {}, got {bad}", suite.name(), suite.min_n())));
    }
    if opts.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let ms: Vec<u32> = opts.m.clone().map(|l| l.0).unwrap_or_else(|| (1..=3).collect());
    if suite == Suite::PropReg {
        if let Some(&bad) = ms.iter().find(|&&m| !(1..=8).contains(&m)) {
            return Err(Failure::usage(format!("form dimension must be in 1..8, got {bad}")));
        }
        if opts.count.is_none() && ms.iter().any(|&m| m > 3) {
            return Err(Failure::usage("enumerating all forms needs m <= 3; pass --count to sample"));
        }
    }

    let tasks = build_tasks(suite, &ns, &ms, opts, limits);
    let checks = execute(&tasks, opts.jobs, opts.timings);

    let mut parameters = json!({
        "degree_cap": opts.degree_cap,
        "pair_limit": limits.pair_limit,
    });
    let p = parameters.as_object_mut().expect("object");
    match suite {
        Suite::PropReg => {
            p.insert("m".into(), json!(ms));
            p.insert("count".into(), json!(opts.count));
            p.insert("seed".into(), json!(opts.seed));
        }
        _ => {
            p.insert("n".into(), json!(ns));
        }
    }
    if suite == Suite::Chern {
        p.insert("j".into(), json!(opts.j.as_ref().map(|l| &l.0)));
    }
    let report = Report::new(suite.name(), parameters, checks);
    let text = if opts.json {
        pretty(&serde_json::to_value(&report).expect("reports serialize"))
    } else {
        render(&report)
    };
    Ok((text, report.exit_code))
}

fn render(report: &Report) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&format!("{:<10} {}", c.verdict.to_string(), c.id));
        if let Some(ms) = c.wall_time_ms {
            s.push_str(&format!(" [{ms} ms]"));
        }
        if c.verdict != CheckVerdict::Pass {
            s.push_str(&format!("  {}", c.certificate));
        }
        s.push('\n');
    }
    let m = &report.summary;
    s.push_str(&format!("{}: {} pass, {} fail, {} unresolved\n", report.suite, m.pass, m.fail, m.unresolved));
    s
}

/// Runs the tasks on `jobs` threads and concatenates their checks in task order.
fn execute(tasks: &[Task<'_>], jobs: usize, timings: bool) -> Vec<Check> {
    let slots: Vec<Mutex<Vec<Check>>> = tasks.iter().map(|_| Mutex::new(Vec::new())).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(task) = tasks.get(i) else { break };
        let start = Instant::now();
        let mut checks = task();
        if timings {
            let ms = start.elapsed().as_millis() as u64;
            for c in &mut checks {
                c.wall_time_ms = Some(ms);
            }
        }
        *slots[i].lock().expect("no poisoned slots") = checks;
    };
    std::thread::scope(|scope| {
        for _ in 1..jobs.min(tasks.len().max(1)) {
            scope.spawn(work);
        }
        work();
    });
    slots.into_iter().flat_map(|s| s.into_inner().expect("no poisoned slots")).collect()
}

fn or_unresolved<E: std::fmt::Display>(id: String, r: Result<Check, E>) -> Check {
    r.unwrap_or_else(|e| Check::unresolved(id, e))
}

fn build_tasks<'a>(suite: Suite, ns: &'a [u32], ms: &'a [u32], opts: &'a VerifyArgs, limits: Limits) -> Vec<Task<'a>> {
    let mut tasks: Vec<Task<'a>> = Vec::new();
    match suite {
        Suite::PropReg => {
            for &m in ms {
                let forms = match opts.count {
                    Some(count) => random_forms(m as usize, count, opts.seed),
                    None => all_forms(m as usize).collect(),
                };
                for (i, form) in forms.into_iter().enumerate() {
                    tasks.push(Box::new(move || {
                        let id = format!("prop-reg.m={m}.i={i}");
                        vec![or_unresolved(id.clone(), bilinear_check(id, &form, limits))]
                    }));
                }
            }
        }
        Suite::Chern => {
            for &n in ns {
                let js: Vec<u32> = match &opts.j {
                    Some(js) => js.0.clone(),
                    None => {
                        let (_, l) = bound_indices(n).expect("n >= 3");
                        (1..=3.min(l - 1)).collect()
                    }
                };
                for j in js {
                    tasks.push(Box::new(move || {
                        vec![or_unresolved(format!("chern.n={n}.j={j}"), verify_chern_relation(n, j))]
                    }));
                }
            }
        }
        _ => {
            for &n in ns {
                tasks.push(Box::new(move || match suite {
                    Suite::Mq1 => {
                        verify_mq1_with(n, limits).unwrap_or_else(|e| vec![Check::unresolved(format!("mq1.n={n}"), e)])
                    }
                    Suite::Tauseq => vec![or_unresolved(format!("tauseq.n={n}"), verify_tau_sequence(n, limits))],
                    Suite::Seq => vec![or_unresolved(format!("seq.n={n}"), seq_check(n, limits))],
                    Suite::Kcasi => vec![kcasi_check(n)],
                    Suite::Topcmp => vec![or_unresolved(format!("topcmp.n={n}"), topological_comparison(n))],
                    Suite::Radical => {
                        vec![or_unresolved(format!("radical.n={n}"), radical_equal_on_generators_with(n, limits))]
                    }
                    Suite::PropReg | Suite::Chern => unreachable!("handled above"),
                }));
            }
        }
    }
    tasks
}

fn regularity_verdict(v: Verdict, rest_ok: bool) -> CheckVerdict {
    match v {
        Verdict::NotRegular => CheckVerdict::Fail,
        _ if !rest_ok => CheckVerdict::Fail,
        Verdict::Regular => CheckVerdict::Pass,
        Verdict::Undecided => CheckVerdict::Unresolved,
    }
}

fn seq_check(n: u32, limits: Limits) -> Result<Check, SplittingError> {
    let r = verify_seq_theorem_with(n, limits)?;
    let rest_ok = r.closed_form.iter().all(|&b| b) && r.modulo_u1;
    let verdict = regularity_verdict(r.regularity.verdict, rest_ok);
    Ok(Check::new(format!("seq.n={n}"), verdict, serde_json::to_value(&r).expect("reports serialize")))
}

fn bilinear_check(id: String, form: &swu_core::splitting::GramForm, limits: Limits) -> Result<Check, SplittingError> {
    let r = verify_bilinear_regularity_with(form, limits)?;
    let verdict = regularity_verdict(r.certificate.verdict, true);
    Ok(Check::new(id, verdict, serde_json::to_value(&r).expect("reports serialize")))
}

fn kcasi_check(n: u32) -> Check {
    let id = format!("kcasi.n={n}");
    match bound_indices(n) {
        Ok((k, l)) => {
            let case = if l == k { "l = k" } else if l == k + 1 { "l = k + 1" } else { "neither" };
            Check::from_bool(id, l == k || l == k + 1, json!({ "k": k, "l": l, "case": case }))
        }
        Err(e) => Check::unresolved(id, e),
    }
}
