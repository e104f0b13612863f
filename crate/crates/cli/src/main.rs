//! `rackalg`: verification pipelines over JSON inputs. Prints a deterministic
//! JSON report on stdout and a summary on stderr. Exit codes: 0 all checks
//! pass, 1 axiom violation, 2 schema error, 3 budget exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rackalg::deformation::{mu_n_report, Budget, DeformationComplex};
use rackalg::env_hopf::HopfAlgebra;
use rackalg::exact_core::{Scalar, Vector};
use rackalg::fixtures::bundled_inputs;
use rackalg::io::Input;
use rackalg::leibniz::LeibnizAlgebra;
use rackalg::rack_bialg::{rack_group_algebra, uar_formula_product, uar_infinity, ur, AugmentedRackBialgebra, RackBialgebra};
use rackalg::report::{Check, CheckBuilder, Report, Violation};
use rackalg::right_hopf_dialg::{dialgebra_from_augmented, structure_decomposition, HopfDialgebra, RightHopf};
use rackalg::star_product::{exp_identity, selfdist_check, PolyFunction, SeriesVector};
use rackalg::Error;

#[derive(Parser)]
#[command(name = "rackalg", version, about = "Exact verification of rack bialgebra constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Print the verified identities as a LaTeX table instead of the plain summary.
    #[arg(long, global = true)]
    emit_latex: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the left Leibniz identity on all basis triples.
    CheckLeibniz {
        /// JSON file, or `fixture:<name>` for a bundled input.
        input: String,
    },
    /// Build UAR^∞(h)_(k) and verify the rack bialgebra axioms.
    BuildUar {
        input: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, env = "RACKALG_MAX_K", default_value_t = 4)]
        max_k: usize,
    },
    /// Compare e^x ▷ e^y with e^(x▶y) and check self-distributivity mod ℏ^N.
    Star {
        input: String,
        /// Comma-separated rational coordinates, e.g. `1,0,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Third vector for self-distributivity; defaults to x + y.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, env = "RACKALG_MAX_ORDER", default_value_t = 8)]
        max_order: usize,
    },
    /// Decompose a right group or the Hopf dialgebra of an augmented rack.
    Suschkewitsch {
        input: String,
        #[arg(long, env = "RACKALG_MAX_TENSOR_DIM", default_value_t = 64)]
        max_dim: usize,
    },
    /// Verify the deformation complex of UR(h) or K[X] and compute H².
    Deform {
        input: String,
        #[arg(long = "max-degree", default_value_t = 2)]
        max_degree: usize,
        #[arg(long, env = "RACKALG_MAX_DIM", default_value_t = 4)]
        max_dim: usize,
    },
    /// Run every step of a JSON pipeline manifest.
    Run {
        manifest: PathBuf,
    },
    /// List the bundled inputs, or write them as JSON files.
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ErrorOut {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Box<Violation>>,
}

#[derive(Serialize)]
struct Output {
    command: String,
    input: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorOut>,
    reports: Vec<Report>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    data: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    steps: Vec<Output>,
}

/// Budgets shared by all steps of a manifest; every field must be positive.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Budgets {
    #[serde(default = "default_max_k")]
    max_k: usize,
    #[serde(default = "default_max_order")]
    max_order: usize,
    #[serde(default = "default_max_dim")]
    max_dim: usize,
    #[serde(default = "default_max_tensor_dim")]
    max_tensor_dim: usize,
}

fn default_max_k() -> usize {
    4
}
fn default_max_order() -> usize {
    8
}
fn default_max_dim() -> usize {
    4
}
fn default_max_tensor_dim() -> usize {
    64
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_k: 4, max_order: 8, max_dim: 4, max_tensor_dim: 64 }
    }
}

#[derive(Deserialize)]
#[serde(tag = "command", rename_all = "snake_case", deny_unknown_fields)]
enum Step {
    CheckLeibniz { input: String },
    BuildUar { input: String, k: usize },
    Star { input: String, x: Vec<Scalar>, y: Vec<Scalar>, z: Option<Vec<Scalar>>, order: usize },
    Suschkewitsch { input: String },
    Deform { input: String, max_degree: usize },
}

/// Named inputs (paths relative to the manifest, or `fixture:<name>`), an
/// ordered pipeline over them, budgets and an optional output path.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    inputs: BTreeMap<String, String>,
    pipeline: Vec<Step>,
    #[serde(default)]
    budgets: Budgets,
    output: Option<PathBuf>,
}

/// A failed pipeline: schema (2), budget (3) or axiom violation (1).
struct Failure {
    code: u8,
    err: ErrorOut,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (code, kind, witness) = match e {
            Error::Schema(_) | Error::BasisMismatch(_) => (2, "schema", None),
            Error::BudgetExceeded(_) | Error::DegreeCapExceeded { .. } => (3, "budget", None),
            Error::LeibnizViolation(v) | Error::AxiomViolation(v) | Error::GaugeEquivarianceViolation(v) => {
                (1, "axiom", Some(v))
            }
            _ => (1, "axiom", None),
        };
        Failure { code, err: ErrorOut { kind, message, witness } }
    }
}

fn schema(msg: impl Into<String>) -> Failure {
    Error::Schema(msg.into()).into()
}

fn budget(msg: impl Into<String>) -> Failure {
    Error::BudgetExceeded(msg.into()).into()
}

#[derive(Default)]
struct Run {
    reports: Vec<Report>,
    data: BTreeMap<String, Value>,
}

fn load(input: &str) -> Result<Input, Failure> {
    if let Some(name) = input.strip_prefix("fixture:") {
        return bundled_inputs()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| schema(format!("unknown fixture {name}")));
    }
    let text = std::fs::read_to_string(input).map_err(|e| schema(format!("cannot read {input}: {e}")))?;
    Ok(Input::from_json(&text)?)
}

fn leibniz_of(inp: &Input) -> Result<LeibnizAlgebra, Failure> {
    match inp {
        Input::Leibniz(s) => Ok(s.build()?),
        _ => Err(schema("expected an input of kind \"leibniz\"")),
    }
}

fn single(name: &str, checks: Vec<Check>) -> Report {
    let mut r = Report::new(name);
    for c in checks {
        r.push(c);
    }
    r
}

fn monomial_label(m: &rackalg::exact_core::Monomial) -> String {
    if m.degree() == 0 {
        return "1".into();
    }
    m.exponents()
        .into_iter()
        .map(|(i, e)| if e == 1 { format!("a{}", i + 1) } else { format!("a{}^{e}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

fn poly_table(f: &PolyFunction) -> Value {
    Value::Array(
        f.iter()
            .map(|(m, c)| json!({ "monomial": monomial_label(m), "coeffs": c.coeffs() }))
            .collect(),
    )
}

fn series_vector_table(v: &SeriesVector) -> Value {
    Value::Array(v.iter().map(|(i, c)| json!({ "index": i + 1, "coeffs": c.coeffs() })).collect())
}

fn check_leibniz(inp: &Input) -> Result<Run, Failure> {
    let Input::Leibniz(spec) = inp else {
        return Err(schema("expected an input of kind \"leibniz\""));
    };
    let h = spec.build_unchecked()?;
    let mut run = Run::default();
    let check = h.leibniz_check();
    if check.passed {
        run.data.insert("is_lie".into(), json!(h.is_lie()));
        run.data.insert("dim_squares_ideal".into(), json!(h.squares_ideal().dim()));
        run.data.insert("dim_left_center".into(), json!(h.left_center().dim()));
    }
    run.reports.push(single(&spec.name, vec![check]));
    Ok(run)
}

fn uar_reports(h: &LeibnizAlgebra, k: usize) -> Result<(RackBialgebra, Vec<Report>), Failure> {
    let (rb, aug) = uar_infinity(h, k, &h.squares_ideal())?;
    let mut reports = vec![rb.report()];
    let mut extra = Report::new(format!("UAR^∞(h)_({k}) consistency"));
    let (rb_z, _) = uar_infinity(h, k, &h.left_center())?;
    let mut same = CheckBuilder::new("μ identical for z = Q(h) and z = z(h)");
    let formula = uar_formula_product(h, k);
    let mut explicit = CheckBuilder::new("μ agrees with the symmetrized ad^s formula");
    for a in 0..rb.dim() {
        for b in 0..rb.dim() {
            let w = || vec![rb.carrier().label(a), rb.carrier().label(b)];
            same.record(w, rb.op_basis(a, b), rb_z.op_basis(a, b));
            explicit.record(w, rb.op_basis(a, b), formula.get(a, b).expect("total"));
        }
    }
    extra.push(same.finish());
    extra.push(explicit.finish());
    let (lie, prim) = rb.primitive_leibniz()?;
    let f = rackalg::exact_core::LinMap::from_fn(h.dim(), prim.dim(), |i| {
        prim.coordinates(&aug.sym.embed(&Vector::basis(i))).unwrap_or_default()
    });
    let mut iso = CheckBuilder::new("Prim(UAR^∞(h)) ≅ h");
    iso.record(Vec::new, &(prim.dim(), f.rank()), &(h.dim(), h.dim()));
    extra.push(iso.finish());
    extra.push(h.morphism_check(&f, &lie));
    extra.push(rb.yang_baxter_check());
    reports.push(extra);
    Ok((rb, reports))
}

fn build_uar(inp: &Input, k: usize, max_k: usize) -> Result<Run, Failure> {
    if k > max_k {
        return Err(budget(format!("k = {k} exceeds {max_k}")));
    }
    let h = leibniz_of(inp)?;
    let (rb, reports) = uar_reports(&h, k)?;
    let mut run = Run { reports, ..Run::default() };
    run.data.insert("dim".into(), json!(rb.dim()));
    run.data.insert("basis".into(), json!(rb.carrier().labels()));
    Ok(run)
}

fn dense_vector(coords: &[Scalar], dim: usize) -> Result<Vector, Failure> {
    if coords.len() != dim {
        return Err(schema(format!("vector must have {dim} coordinates, got {}", coords.len())));
    }
    Ok(Vector::from_dense(coords))
}

fn parse_coords(s: &str) -> Result<Vec<Scalar>, Failure> {
    s.split(',').map(|t| t.trim().parse::<Scalar>().map_err(|_| schema(format!("bad rational {t:?}")))).collect()
}

/// Vectors are given as coordinate lists; `z` defaults to `x + y`.
fn star(inp: &Input, x: &[Scalar], y: &[Scalar], z: Option<&[Scalar]>, order: usize, max_order: usize) -> Result<Run, Failure> {
    if order == 0 || order > max_order {
        return Err(budget(format!("order {order} outside 1..={max_order}")));
    }
    let h = leibniz_of(inp)?;
    let (xv, yv) = (dense_vector(x, h.dim())?, dense_vector(y, h.dim())?);
    let zv = match z {
        Some(z) => dense_vector(z, h.dim())?,
        None => xv.add(&yv),
    };
    let cmp = exp_identity(&h, &xv, &yv, order);
    let mut run = Run::default();
    run.reports.push(single("e^x ▷_ℏ e^y", vec![cmp.check.clone()]));
    run.reports.push(selfdist_check(&h, &xv, &yv, &zv, order));
    let lifted = |v: &Vector| rackalg::star_product::lift_vector(v, order);
    let xy = rackalg::star_product::lie_rack(&h, &lifted(&xv), &lifted(&yv), order);
    run.data.insert("order".into(), json!(order));
    run.data.insert("window".into(), json!(cmp.window));
    run.data.insert("x_rack_y".into(), series_vector_table(&xy));
    run.data.insert("lhs".into(), poly_table(&cmp.lhs));
    run.data.insert("rhs".into(), poly_table(&cmp.rhs));
    Ok(run)
}

fn suschkewitsch(inp: &Input, max_dim: usize) -> Result<Run, Failure> {
    let mut run = Run::default();
    match inp {
        Input::RightGroup(spec) => {
            let (g, e) = spec.build()?;
            if g.order() * e.len() > max_dim {
                return Err(budget(format!("dimension {} exceeds {max_dim}", g.order() * e.len())));
            }
            let h = RightHopf::right_group(&g, &e)?;
            run.reports.push(h.validate());
            run.reports.push(h.antipode_lemmas());
            let s = h.suschkewitsch()?;
            run.data.insert("dim".into(), json!(h.dim()));
            run.data.insert("dim_h1".into(), json!(s.h1.dim()));
            run.data.insert("dim_e".into(), json!(s.e.dim()));
            run.reports.push(s.report);
        }
        Input::AugmentedRack(spec) => {
            let x = spec.build()?;
            let dim = x.rack.size() * x.group.order();
            if dim > max_dim {
                return Err(budget(format!("dimension {dim} exceeds {max_dim}")));
            }
            let arb = AugmentedRackBialgebra::from_augmented_rack(&x);
            run.reports.push(arb.validate());
            let td = dialgebra_from_augmented(&arb, None)?;
            run.reports.push(td.hd.report());
            run.reports.push(td.hd.rack_module_identities());
            run.reports.push(td.primitive_bracket_check(&arb));
            run.reports.push(single("idempotents of B⊗H", vec![td.idempotent_formula_check(&arb)?]));
            let sd = structure_decomposition(&td.hd)?;
            run.data.insert("dim".into(), json!(td.hd.dim()));
            run.data.insert("dim_e".into(), json!(sd.e.dim()));
            run.data.insert("dim_h".into(), json!(sd.h.dim()));
            run.reports.push(sd.report);
        }
        Input::Group(spec) => {
            let g = spec.build()?;
            if g.order() > max_dim {
                return Err(budget(format!("dimension {} exceeds {max_dim}", g.order())));
            }
            let hd = HopfDialgebra::from_hopf(&spec.name, &HopfAlgebra::group_algebra(&g));
            run.reports.push(hd.report());
            let sd = structure_decomposition(&hd)?;
            run.data.insert("dim_e".into(), json!(sd.e.dim()));
            run.data.insert("dim_h".into(), json!(sd.h.dim()));
            run.reports.push(sd.report);
        }
        _ => return Err(schema("expected a right_group, augmented_rack or group input")),
    }
    Ok(run)
}

fn deform(inp: &Input, max_degree: usize, max_dim: usize) -> Result<Run, Failure> {
    let rb = match inp {
        Input::Leibniz(_) => ur(&leibniz_of(inp)?)?,
        Input::Rack(spec) => rack_group_algebra(&spec.build()?)?,
        _ => return Err(schema("expected a leibniz or rack input")),
    };
    if max_degree == 0 {
        return Err(budget("max degree must be positive"));
    }
    let b = Budget { max_dim, max_n: max_degree };
    let cx = DeformationComplex::new(&rb, &b)?;
    let mut run = Run::default();
    run.reports.push(rb.report());
    run.reports.push(mu_n_report(&rb, max_degree));
    run.reports.push(cx.verify());
    let dims: Vec<usize> = (1..=max_degree + 1).map(|n| cx.dim(n)).collect();
    run.data.insert("dim_R".into(), json!(rb.dim()));
    run.data.insert("cochain_dims".into(), json!(dims));
    if max_degree >= 2 {
        run.data.insert("h2".into(), serde_json::to_value(cx.h2()?).expect("serializable"));
    }
    Ok(run)
}

fn fixtures(out: Option<&PathBuf>) -> anyhow::Result<Run> {
    let mut run = Run::default();
    let inputs = bundled_inputs();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, inp) in &inputs {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, inp.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
        }
    }
    run.data.insert("fixtures".into(), json!(inputs.iter().map(|(n, _)| n).collect::<Vec<_>>()));
    Ok(run)
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('&', "\\&").replace('_', "\\_").replace('^', "\\^{}").replace('{', "\\{").replace('}', "\\}")
}

fn summary(out: &Output, latex: bool) -> String {
    let mut s = String::new();
    if latex {
        s.push_str("\\begin{tabular}{llrl}\n\\hline\nstructure & identity & cases & result \\\\\n\\hline\n");
        for r in &out.reports {
            for c in &r.checks {
                let res = if c.passed { "pass" } else { "fail" };
                s.push_str(&format!("{} & {} & {} & {res} \\\\\n", latex_escape(&r.subject), latex_escape(&c.name), c.cases));
            }
        }
        s.push_str("\\hline\n\\end{tabular}\n");
    } else {
        for r in &out.reports {
            for c in &r.checks {
                let res = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{res} [{}] {} ({} cases)\n", r.subject, c.name, c.cases));
                if let Some(v) = &c.violation {
                    s.push_str(&format!("     witness: {v}\n"));
                }
            }
        }
    }
    if let Some(e) = &out.error {
        s.push_str(&format!("error ({}): {}\n", e.kind, e.message));
    }
    for step in &out.steps {
        let mark = if step.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{mark} step {} {}\n", step.command, step.input));
        s.push_str(&summary(step, latex));
    }
    s
}

fn finish(command: &str, input: &str, result: Result<Run, Failure>) -> (Output, u8) {
    match result {
        Ok(run) => {
            let passed = run.reports.iter().all(Report::all_passed);
            let out = Output { command: command.into(), input: input.into(), passed, error: None, reports: run.reports, data: run.data, steps: Vec::new() };
            (out, if passed { 0 } else { 1 })
        }
        Err(f) => {
            let out = Output {
                command: command.into(),
                input: input.into(),
                passed: false,
                error: Some(f.err),
                reports: Vec::new(),
                data: BTreeMap::new(),
                steps: Vec::new(),
            };
            (out, f.code)
        }
    }
}

/// Schema (2) outranks budget (3), which outranks a failed check (1).
fn worst(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes.into_iter().max_by_key(|c| match c {
        2 => 3,
        3 => 2,
        c => *c,
    })
    .unwrap_or(0)
}

fn run_step(step: &Step, inputs: &BTreeMap<String, (String, Result<Input, String>)>, b: &Budgets) -> (Output, u8) {
    let (command, name) = match step {
        Step::CheckLeibniz { input } => ("check-leibniz", input),
        Step::BuildUar { input, .. } => ("build-uar", input),
        Step::Star { input, .. } => ("star", input),
        Step::Suschkewitsch { input } => ("suschkewitsch", input),
        Step::Deform { input, .. } => ("deform", input),
    };
    let Some((source, loaded)) = inputs.get(name) else {
        return finish(command, name, Err(schema(format!("unknown input {name:?}"))));
    };
    let result = match loaded {
        Err(msg) => Err(schema(msg.clone())),
        Ok(inp) => match step {
            Step::CheckLeibniz { .. } => check_leibniz(inp),
            Step::BuildUar { k, .. } => build_uar(inp, *k, b.max_k),
            Step::Star { x, y, z, order, .. } => star(inp, x, y, z.as_deref(), *order, b.max_order),
            Step::Suschkewitsch { .. } => suschkewitsch(inp, b.max_tensor_dim),
            Step::Deform { max_degree, .. } => deform(inp, *max_degree, b.max_dim),
        },
    };
    finish(command, source, result)
}

fn run_manifest(path: &PathBuf) -> (Output, u8, Option<PathBuf>) {
    let label = path.display().to_string();
    let parsed = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {label}: {e}"))
        .and_then(|t| serde_json::from_str::<Manifest>(&t).map_err(|e| e.to_string()));
    let m = match parsed {
        Ok(m) => m,
        Err(msg) => {
            let (out, code) = finish("run", &label, Err(schema(msg)));
            return (out, code, None);
        }
    };
    let b = &m.budgets;
    if [b.max_k, b.max_order, b.max_dim, b.max_tensor_dim].contains(&0) || m.pipeline.is_empty() {
        let (out, code) = finish("run", &label, Err(schema("budgets must be positive and the pipeline nonempty")));
        return (out, code, None);
    }
    let base = path.parent().map(PathBuf::from).unwrap_or_default();
    let inputs: BTreeMap<String, (String, Result<Input, String>)> = m
        .inputs
        .iter()
        .map(|(name, src)| {
            let resolved = if src.starts_with("fixture:") { src.clone() } else { base.join(src).display().to_string() };
            let loaded = load(&resolved).map_err(|f| f.err.message);
            (name.clone(), (resolved, loaded))
        })
        .collect();
    let (steps, codes): (Vec<Output>, Vec<u8>) = m.pipeline.iter().map(|s| run_step(s, &inputs, b)).unzip();
    let code = worst(codes);
    let out = Output {
        command: "run".into(),
        input: label,
        passed: code == 0,
        error: None,
        reports: Vec::new(),
        data: BTreeMap::new(),
        steps,
    };
    let output = m.output.map(|o| base.join(o));
    (out, code, output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code, manifest_output) = match &cli.command {
        Command::Run { manifest } => run_manifest(manifest),
        Command::Fixtures { out } => {
            let r = fixtures(out.as_ref()).map_err(|e| Failure { code: 2, err: ErrorOut { kind: "io", message: format!("{e:#}"), witness: None } });
            let (o, c) = finish("fixtures", "", r);
            (o, c, None)
        }
        cmd => {
            let (name, input) = match cmd {
                Command::CheckLeibniz { input } => ("check-leibniz", input),
                Command::BuildUar { input, .. } => ("build-uar", input),
                Command::Star { input, .. } => ("star", input),
                Command::Suschkewitsch { input, .. } => ("suschkewitsch", input),
                Command::Deform { input, .. } => ("deform", input),
                Command::Run { .. } | Command::Fixtures { .. } => unreachable!("handled above"),
            };
            let result = load(input).and_then(|inp| match cmd {
                Command::CheckLeibniz { .. } => check_leibniz(&inp),
                Command::BuildUar { k, max_k, .. } => build_uar(&inp, *k, *max_k),
                Command::Star { x, y, z, order, max_order, .. } => {
                    let z = z.as_deref().map(parse_coords).transpose()?;
                    star(&inp, &parse_coords(x)?, &parse_coords(y)?, z.as_deref(), *order, *max_order)
                }
                Command::Suschkewitsch { max_dim, .. } => suschkewitsch(&inp, *max_dim),
                Command::Deform { max_degree, max_dim, .. } => deform(&inp, *max_degree, *max_dim),
                Command::Run { .. } | Command::Fixtures { .. } => unreachable!("handled above"),
            });
            let (o, c) = finish(name, input, result);
            (o, c, None)
        }
    };
    let text = serde_json::to_string_pretty(&out).expect("serializable") + "\n";
    print!("{text}");
    eprint!("{}", summary(&out, cli.emit_latex));
    for path in [cli.report.as_ref(), manifest_output.as_ref()].into_iter().flatten() {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
