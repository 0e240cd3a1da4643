//! Command-line front end. Every run emits one JSON [`RunReport`] on stdout.
//!
//! Exit codes: 0 when all checks pass, 1 on input errors, 2 on a failed check.

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::clifford::{classify_graded, induced_equivalent, GradedPointedCategory};
use crate::cohomology::{cohomology_group, group_ref_json, is_trivial_in_kstar};
use crate::error::{Error, Result};
use crate::extensions::{
    check_equivalence_laws, extension_candidates, extensions_equivalent, partition_by, theta_pullback,
    verify_torsor, z1_cocycles, DegSequence, Orientation, DEFAULT_ENUMERATION_BOUND,
};
use crate::groups::catalog::{self, named_subgroup, small_groups};
use crate::groups::{subgroups, FiniteGroup, Subgroup};
use crate::pointed::{module_classes, modules_equivalent, omega_from_spec, PointedCategory};
use crate::ty::{bicharacters, duality_is_involution, duality_orbits, is_group_theoretical, three_way_agreement, TYCategory};

pub const FORMAT_VERSION: &str = "cliffcat/1";

#[derive(Parser, Debug)]
#[command(name = "cliffcat", version, about = "Module categories over graded pointed and Tambara-Yamagami fusion categories")]
struct Cli {
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = 16)]
    bound: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Indent the JSON report and print a summary table on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H^n(G, k*) with explicit representatives.
    Cohomology { group: String, degree: usize },
    /// Indecomposable module categories over Vec_K^ω.
    ClassifyPointed { category: String },
    /// Clifford data of the module categories over a graded pointed category.
    ClassifyGraded {
        category: String,
        #[arg(long)]
        kernel: String,
        /// Run the additional action and induction checks.
        #[arg(long)]
        check: bool,
    },
    /// Extensions of the regular module category of the trivial component.
    Extensions {
        category: String,
        #[arg(long)]
        kernel: String,
        #[arg(long, value_enum, default_value_t = OrientationArg::Conjugation)]
        orientation: OrientationArg,
    },
    /// Group-theoreticity and module categories of a Tambara-Yamagami category.
    TyCheck { ty: String },
    /// Component classes, G-action, Clifford data and extensions in one run.
    Pipeline {
        #[arg(long)]
        group: String,
        #[arg(long)]
        kernel: String,
        /// zero, generator, cyclic:q, or a cochain in JSON.
        #[arg(long, default_value = "zero")]
        omega: String,
    },
    /// Sweep all small groups and compare every count against the direct oracle.
    OracleCompare {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    TwoTerm,
    TwoTermInverted,
    Conjugation,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::TwoTerm => Orientation::TwoTerm,
            OrientationArg::TwoTermInverted => Orientation::TwoTermInverted,
            OrientationArg::Conjugation => Orientation::Conjugation,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Versions {
    pub tool: String,
    pub format: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub versions: Versions,
}

impl RunReport {
    fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            results: Value::Null,
            checks: vec![],
            versions: Versions {
                tool: format!("cliffcat {}", env!("CARGO_PKG_VERSION")),
                format: FORMAT_VERSION.into(),
            },
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn is_input_error(e: &Error) -> bool {
    !matches!(
        e,
        Error::ConsistencyFailure { .. } | Error::InvariantBroken(_) | Error::LiftDependence(_)
    )
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome {
                code,
                stdout: String::new(),
                stderr: e.to_string(),
            };
        }
    };
    let (name, inputs) = describe(&cli);
    let mut report = RunReport::new(name, inputs);
    let result = dispatch(&cli, &mut report);
    let code = match &result {
        Ok(()) if report.all_pass() => 0,
        Ok(()) => 2,
        Err(e) => {
            report.results = json!({ "error": e.to_string() });
            if is_input_error(e) {
                1
            } else {
                report.check(format!("consistency: {e}"), false);
                2
            }
        }
    };
    let stdout = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    }
    .expect("report serializes")
        + "\n";
    let stderr = if cli.pretty { summary_table(&report) } else { String::new() };
    Outcome { code, stdout, stderr }
}

fn describe(cli: &Cli) -> (&'static str, Value) {
    let globals = json!({ "bound": cli.bound, "seed": cli.seed });
    let (name, mut v) = match &cli.command {
        Command::Cohomology { group, degree } => ("cohomology", json!({ "group": group, "degree": degree })),
        Command::ClassifyPointed { category } => ("classify-pointed", json!({ "category": category })),
        Command::ClassifyGraded { category, kernel, check } => (
            "classify-graded",
            json!({ "category": category, "kernel": kernel, "check": check }),
        ),
        Command::Extensions { category, kernel, orientation } => (
            "extensions",
            json!({ "category": category, "kernel": kernel, "orientation": Orientation::from(*orientation).name() }),
        ),
        Command::TyCheck { ty } => ("ty-check", json!({ "ty": ty })),
        Command::Pipeline { group, kernel, omega } => (
            "pipeline",
            json!({ "group": group, "kernel": kernel, "omega": omega }),
        ),
        Command::OracleCompare { max_order } => ("oracle-compare", json!({ "max_order": max_order })),
    };
    v.as_object_mut().unwrap().insert("globals".into(), globals);
    (name, v)
}

fn summary_table(r: &RunReport) -> String {
    let mut s = format!("{} ({})\n", r.command, r.versions.format);
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        s += &format!("  {:width$}  {}\n", c.name, if c.pass { "pass" } else { "FAIL" });
    }
    if let Some(o) = r.results.as_object() {
        for (k, v) in o {
            if v.is_number() || v.is_boolean() || v.is_string() {
                s += &format!("  {k}: {v}\n");
            }
        }
    }
    s
}

/// A file path, inline JSON, or a bare catalog name.
fn load_json(arg: &str) -> Result<Value> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::Input(format!("{arg}: {e}")));
    }
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        return serde_json::from_str(arg).map_err(|e| Error::Input(format!("malformed JSON: {e}")));
    }
    Ok(Value::String(arg.to_string()))
}

fn check_bound(g: &FiniteGroup, bound: usize) -> Result<()> {
    if g.order() > bound {
        return Err(Error::TooLarge {
            what: "group order",
            size: g.order() as u128,
            bound: bound as u128,
        });
    }
    Ok(())
}

fn load_category(arg: &str, bound: usize) -> Result<Arc<PointedCategory>> {
    let v = match load_json(arg)? {
        Value::String(s) => json!({ "group": s, "omega": "zero" }),
        v => v,
    };
    let c = PointedCategory::from_json(&v)?;
    check_bound(c.group(), bound)?;
    Ok(Arc::new(c))
}

fn dispatch(cli: &Cli, r: &mut RunReport) -> Result<()> {
    match &cli.command {
        Command::Cohomology { group, degree } => {
            let g = catalog::from_json(&load_json(group)?)?;
            check_bound(&g, cli.bound)?;
            cmd_cohomology(&g, *degree, r)
        }
        Command::ClassifyPointed { category } => cmd_classify_pointed(&load_category(category, cli.bound)?, r),
        Command::ClassifyGraded { category, kernel, check } => {
            let c = load_category(category, cli.bound)?;
            let n = named_subgroup(c.group(), kernel)?;
            r.results = graded_results(&c, &n, *check, r)?;
            Ok(())
        }
        Command::Extensions { category, kernel, orientation } => {
            let c = load_category(category, cli.bound)?;
            let n = named_subgroup(c.group(), kernel)?;
            r.results = extension_results(&c, &n, (*orientation).into(), cli.seed, r)?;
            Ok(())
        }
        Command::TyCheck { ty } => {
            let t = TYCategory::from_json(&load_json(ty)?)?;
            check_bound(t.group(), cli.bound)?;
            cmd_ty(&t, r)
        }
        Command::Pipeline { group, kernel, omega } => {
            let g = catalog::from_json(&load_json(group)?)?;
            check_bound(&g, cli.bound)?;
            let spec = load_json(omega)?;
            let w = omega_from_spec(&g, &spec)?;
            let c = Arc::new(PointedCategory::new(&g, w)?);
            let n = named_subgroup(&g, kernel)?;
            cmd_pipeline(&c, &n, cli.seed, r)
        }
        Command::OracleCompare { max_order } => cmd_oracle_compare((*max_order).min(cli.bound), r),
    }
}

fn cmd_cohomology(g: &FiniteGroup, degree: usize, r: &mut RunReport) -> Result<()> {
    let h = cohomology_group(g, degree)?;
    let reps_ok = h.representatives.iter().zip(&h.invariant_factors).all(|(c, &d)| {
        c.is_cocycle()
            && is_trivial_in_kstar(&c.scale(d as i128))
            && (d == 1 || !is_trivial_in_kstar(c))
    });
    r.check("representatives are cocycles of the stated order", reps_ok);
    r.results = json!({
        "group": group_ref_json(g),
        "degree": degree,
        "invariant_factors": h.invariant_factors,
        "order": h.order(),
        "representatives": h.representatives.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    Ok(())
}

fn cmd_classify_pointed(c: &Arc<PointedCategory>, r: &mut RunReport) -> Result<()> {
    let classes = module_classes(c)?;
    r.check("every class satisfies d(psi) = omega on L", classes.iter().all(|m| m.check().is_ok()));
    let mut distinct = true;
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            distinct &= !modules_equivalent(a, b)?;
        }
    }
    r.check("classes pairwise inequivalent", distinct);
    r.results = json!({
        "category": c.to_json(),
        "count": classes.len(),
        "classes": classes.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
    });
    Ok(())
}

fn graded_results(c: &Arc<PointedCategory>, n: &Subgroup, extra: bool, r: &mut RunReport) -> Result<Value> {
    let gc = GradedPointedCategory::new(c, n.clone())?;
    let gcl = classify_graded(&gc)?;
    r.check("restriction pieces form one orbit", true);
    r.check("orbit-stabilizer", true);
    r.check("piece stabilizer equals projection of L", true);
    if extra {
        r.check("G-action laws", gcl.action.verify_action_laws().is_ok());
        let mut ok = true;
        for (i, a) in gcl.classes.iter().enumerate() {
            for (j, b) in gcl.classes.iter().enumerate() {
                ok &= induced_equivalent(&gc, &a.witness, &b.witness)? == (i == j);
            }
        }
        r.check("induction through C_S separates classes", ok);
    }
    Ok(json!({
        "category": c.to_json(),
        "kernel": n.elements(),
        "grading_order": gc.grading_group().order(),
        "component_classes": gcl.action.classes.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        "action": gcl.action.table,
        "orbits": gcl.action.orbits(),
        "count": gcl.classes.len(),
        "classes": gcl.classes.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
    }))
}

fn complement_oracle(c: &Arc<PointedCategory>, n: &Subgroup) -> Result<usize> {
    let k = c.group().order();
    Ok(module_classes(c)?
        .iter()
        .filter(|m| m.subgroup().intersect(n).order() == 1 && m.subgroup().order() * n.order() == k)
        .count())
}

fn extension_results(
    c: &Arc<PointedCategory>,
    n: &Subgroup,
    orientation: Orientation,
    seed: u64,
    r: &mut RunReport,
) -> Result<Value> {
    let notes = json!([
        "1-cocycles satisfy theta(st) = theta(s) * s(theta(t))",
        format!("equivalence uses the {} orientation", orientation.name()),
    ]);
    let seq = DegSequence::new(c.group(), n)?;
    r.check("degree sequence is exact", seq.is_exact());
    let oracle = complement_oracle(c, n)?;
    let Some(ctx) = seq.split(c.omega())? else {
        r.check("extension count matches oracle", oracle == 0);
        return Ok(json!({ "semidirect": false, "classes": [], "count": 0, "notes": notes }));
    };
    let ctx = Arc::new(ctx);
    let z1 = z1_cocycles(&ctx.action)?;
    let mut x_ok = true;
    let mut pull_ok = true;
    let mut torsor_ok = true;
    for t in &z1 {
        x_ok &= ctx.x_theta(t).is_ok();
        pull_ok &= theta_pullback(&ctx, t).is_ok();
        if crate::extensions::theta_obstruction(&ctx, t)?.is_some() {
            torsor_ok &= verify_torsor(&ctx, t, DEFAULT_ENUMERATION_BOUND, 8, seed)?.holds;
        }
    }
    r.check("complements biject with 1-cocycles", z1.len() == crate::groups::complements(c.group(), n)?.len());
    r.check("X_theta is a subgroup", x_ok);
    r.check("theta-pullback of omega is a cocycle", pull_ok);
    r.check("Z2 acts simply transitively on L_omega^theta", torsor_ok);
    let cands = extension_candidates(&ctx)?;
    let rel = |a: &_, b: &_| extensions_equivalent(a, b, orientation);
    r.check("equivalence relation laws", check_equivalence_laws(&cands, rel)?);
    let parts = partition_by(&cands, rel)?;
    r.check("extension count matches oracle", parts.len() == oracle);
    let classes: Vec<Value> = parts
        .iter()
        .map(|p| {
            let d = &cands[p[0]];
            let mut v = d.to_json();
            let x = ctx.x_theta_in_u(&d.theta, c.group()).map(|s| s.elements().to_vec()).unwrap_or_default();
            v.as_object_mut().unwrap().insert("x_theta".into(), json!(x));
            v
        })
        .collect();
    Ok(json!({
        "semidirect": true,
        "complement": ctx.complement.elements(),
        "working_modulus": ctx.working_modulus(),
        "cocycles": z1.len(),
        "count": classes.len(),
        "oracle_count": oracle,
        "classes": classes,
        "notes": notes,
    }))
}

fn cmd_ty(t: &TYCategory, r: &mut RunReport) -> Result<()> {
    let witness = is_group_theoretical(t)?;
    let agreement = three_way_agreement(t)?;
    r.check("Lagrangian, fixed isotropic class and invariant class agree", agreement.agrees());
    r.check("duality is an involution", duality_is_involution(t)?);
    let a = t.group();
    let perp_ok = subgroups(a)?.iter().all(|b| b.order() * t.perp(b).order() == a.order());
    r.check("|B| |B^perp| = |A|", perp_ok);
    let orbits = if witness.is_none() {
        let o = duality_orbits(t)?;
        json!(o
            .iter()
            .map(|orb| orb.iter().map(|m| m.to_json()).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    } else {
        Value::Null
    };
    r.results = json!({
        "ty": t.to_json(),
        "group_theoretical": witness.is_some(),
        "witness": witness.as_ref().map(|w| w.elements().to_vec()),
        "module_orbits": orbits,
        "invariant_classes": agreement.invariant_classes,
        "notes": ["tau is recorded but does not enter these criteria"],
    });
    Ok(())
}

fn cmd_pipeline(c: &Arc<PointedCategory>, n: &Subgroup, seed: u64, r: &mut RunReport) -> Result<()> {
    let graded = graded_results(c, n, true, r)?;
    let ext = extension_results(c, n, Orientation::Conjugation, seed, r)?;
    r.results = json!({
        "category": c.to_json(),
        "kernel": n.elements(),
        "component_classes": graded["component_classes"].as_array().map_or(0, |a| a.len()),
        "orbits": graded["orbits"],
        "classes": graded["count"],
        "clifford": graded["classes"],
        "extensions": { "semidirect": ext["semidirect"], "count": ext["count"], "classes": ext["classes"] },
    });
    Ok(())
}

/// One line of the oracle sweep.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub group: String,
    pub kernel: Vec<usize>,
    pub omega: &'static str,
    pub classes: usize,
    pub extensions: Option<usize>,
    pub oracle_complements: usize,
    pub ok: bool,
}

/// Every group of order up to `max_order`, every normal subgroup, `ω` zero and the
/// first `H³` representative: Clifford clauses and extension counts against the oracle.
pub fn oracle_sweep(max_order: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for g in small_groups(max_order.min(8)) {
        let h3 = cohomology_group(&g, 3)?;
        let mut omegas = vec![("zero", crate::cohomology::Cochain::zero(&g, 3, 1))];
        if let Some(w) = h3.representatives.first() {
            omegas.push(("generator", w.clone()));
        }
        for n in subgroups(&g)?.into_iter().filter(|n| n.is_normal_in(&g)) {
            for (label, w) in &omegas {
                let c = Arc::new(PointedCategory::new(&g, w.clone())?);
                let gc = GradedPointedCategory::new(&c, n.clone())?;
                let (classes, mut ok) = match classify_graded(&gc) {
                    Ok(x) => (x.classes.len(), true),
                    Err(Error::ConsistencyFailure { .. }) => (0, false),
                    Err(e) => return Err(e),
                };
                let oracle = complement_oracle(&c, &n)?;
                let seq = DegSequence::new(&g, &n)?;
                let extensions = match seq.split(w)? {
                    None => Some(0),
                    Some(ctx) => {
                        let ctx = Arc::new(ctx);
                        let cands = extension_candidates(&ctx)?;
                        Some(partition_by(&cands, |a, b| extensions_equivalent(a, b, Orientation::Conjugation))?.len())
                    }
                };
                ok &= extensions == Some(oracle);
                rows.push(SweepRow {
                    group: g.label().to_string(),
                    kernel: n.elements().to_vec(),
                    omega: label,
                    classes,
                    extensions,
                    oracle_complements: oracle,
                    ok,
                });
            }
        }
    }
    Ok(rows)
}

fn cmd_oracle_compare(max_order: usize, r: &mut RunReport) -> Result<()> {
    let rows = oracle_sweep(max_order)?;
    let failures = rows.iter().filter(|x| !x.ok).count();
    r.check("graded sweep matches oracle", failures == 0);
    let mut ty_rows = Vec::new();
    for a in small_groups(max_order.min(8)).into_iter().filter(|g| g.is_abelian()) {
        for t in bicharacters(&a)? {
            let ag = three_way_agreement(&t)?;
            ty_rows.push(json!({
                "A": a.label(),
                "chi": t.to_json()["chi"],
                "group_theoretical": ag.lagrangian.is_some(),
                "agree": ag.agrees(),
            }));
        }
    }
    let ty_ok = ty_rows.iter().all(|v| v["agree"] == json!(true));
    r.check("TY three-way agreement", ty_ok);
    r.results = json!({
        "instances": rows.len(),
        "failures": failures,
        "rows": rows,
        "ty_instances": ty_rows.len(),
        "ty": ty_rows,
    });
    Ok(())
}
