use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use kpclass::classify::{classify_graph, classify_product, FieldSpec, Level};
use kpclass::field::{ExactField, Field, GaloisField, Rationals};
use kpclass::graph::{parse_graph, scc_decompose, Graph};
use kpclass::group::{Group, GroupDocument};
use kpclass::groupoid::{convolve, FiniteGroupoid, GroupoidDocument, SteinbergElement};
use kpclass::matrix::Matrix;
use kpclass::report;
use kpclass::repn::{
    choose_field, chop, clifford_check, corner_simples_check, element_matrices, matrix_amplification_check, regular_module,
    RepnConfig, SplitPolicy,
};
use kpclass::topology::{
    check_condition_m, check_condition_n, orbit_closure, orbit_representatives, oracle_condition, Condition, TopologyVerdict,
};
use serde_json::{json, Map, Value};

use crate::{batch, Command, Common, Format, RepnKind, Split};

/// Exit status when a representation check runs but does not pass.
pub const EXIT_CHECK_FAILED: i32 = 1;

pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn new(stdout: String, code: i32) -> Self {
        Self { stdout, code }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The report object: command name, seed and inputs, followed by `body`'s fields.
pub fn envelope(command: &str, seed: u64, inputs: Value, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("seed".into(), json!(seed));
    map.insert("input".into(), inputs);
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn text_header(command: &str, inputs: &[&Path], seed: u64) -> String {
    let names: Vec<String> = inputs.iter().map(|p| p.display().to_string()).collect();
    format!("kpclass {command} {} (seed {seed})\n", names.join(" "))
}

fn path_value(p: &Path) -> Value {
    json!(p.display().to_string())
}

fn no_dot(command: &str) -> anyhow::Error {
    anyhow::anyhow!("--format dot is not available for {command}")
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Classify { graph, batch: Some(dir), out, jobs, field, common } => {
            debug_assert!(graph.is_empty());
            let out = out.context("--batch needs --out")?;
            if common.format != Format::Json {
                bail!("batch mode writes JSON reports only");
            }
            let field: FieldSpec = field.parse()?;
            batch::classify_dir(&dir, &out, jobs as usize, &field, common.seed)
        }
        Command::Classify { graph, field, common, .. } => classify(&graph, &field.parse()?, &common),
        Command::CheckM { graph, common } => check(&graph, Condition::M, &common),
        Command::CheckN { graph, common } => check(&graph, Condition::N, &common),
        Command::Orbits { graph, common } => orbits(&graph, &common),
        Command::Oracle { graph, condition, depth, common } => oracle(&graph, condition, depth as usize, &common),
        Command::Convolve { groupoid, a, b, field, common } => convolve_cmd(&groupoid, &a, &b, &field, &common),
        Command::RepnCheck { check, group, group_file, field, subgroup, n, split, common } => {
            let (group, input) = match (group, group_file) {
                (Some(name), None) => (Group::preset(&name)?, json!({ "group": name })),
                (None, Some(path)) => {
                    (Group::from_document(&read_json::<GroupDocument>(&path)?)?, json!({ "group_file": path_value(&path) }))
                }
                _ => bail!("give exactly one of --group and --group-file"),
            };
            repn(check, &group, input, &field, &subgroup, n, split, &common)
        }
    }
}

/// Report and exit status for one graph or a product, shared with batch mode.
pub fn classify_report(paths: &[PathBuf], graphs: &[Graph], field: &FieldSpec, common: &Common) -> Result<Output> {
    let inputs = if paths.len() == 1 { path_value(&paths[0]) } else { json!(paths.iter().map(|p| path_value(p)).collect::<Vec<_>>()) };
    if graphs.len() == 1 {
        let g = &graphs[0];
        let v = classify_graph(g, field);
        let code = v.level.exit_code();
        let stdout = match common.format {
            Format::Json => pretty(&envelope("classify", common.seed, inputs, report::verdict_json(g, &v))),
            Format::Text => text_header("classify", &[&paths[0]], common.seed) + &report::verdict_text(g, &v) + "\n",
            Format::Dot => scc_decompose(g).to_dot(g),
        };
        return Ok(Output::new(stdout, code));
    }
    let v = classify_product(graphs, field)?;
    let code = v.level.exit_code();
    let stdout = match common.format {
        Format::Json => pretty(&envelope("classify", common.seed, inputs, report::product_json(graphs, &v))),
        Format::Text => {
            let refs: Vec<&Path> = paths.iter().map(|p| p.as_path()).collect();
            let mut s = text_header("classify", &refs, common.seed) + &format!("level: {}\n", v.level);
            for ((p, g), f) in paths.iter().zip(graphs).zip(&v.factors) {
                s.push_str(&format!("factor {}:\n", p.display()));
                for line in report::verdict_text(g, f).lines() {
                    s.push_str(&format!("  {line}\n"));
                }
            }
            for c in &v.caveats {
                s.push_str(&format!("caveat: {c}\n"));
            }
            s
        }
        Format::Dot => return Err(no_dot("products")),
    };
    Ok(Output::new(stdout, code))
}

fn classify(paths: &[PathBuf], field: &FieldSpec, common: &Common) -> Result<Output> {
    let graphs = paths.iter().map(|p| read_graph(p)).collect::<Result<Vec<_>>>()?;
    classify_report(paths, &graphs, field, common)
}

/// 0 when the condition holds; otherwise the exit status of the level it rules out.
fn condition_code(v: &TopologyVerdict) -> i32 {
    match (v.holds, v.condition) {
        (true, _) => 0,
        (false, Condition::M) => Level::GcrNotCcr.exit_code(),
        (false, Condition::N) => Level::NotGcr.exit_code(),
    }
}

fn verdict_output(command: &str, path: &Path, g: &Graph, v: &TopologyVerdict, common: &Common) -> Output {
    let stdout = match common.format {
        Format::Json => pretty(&envelope(command, common.seed, path_value(path), report::topology_json(g, v))),
        Format::Text => text_header(command, &[path], common.seed) + &report::topology_text(g, v) + "\n",
        Format::Dot => scc_decompose(g).to_dot(g),
    };
    Output::new(stdout, condition_code(v))
}

fn check(path: &Path, condition: Condition, common: &Common) -> Result<Output> {
    let g = read_graph(path)?;
    let (command, v) = match condition {
        Condition::M => ("check-m", check_condition_m(&g)),
        Condition::N => ("check-n", check_condition_n(&g)),
    };
    Ok(verdict_output(command, path, &g, &v, common))
}

fn oracle(path: &Path, condition: Condition, depth: usize, common: &Common) -> Result<Output> {
    let g = read_graph(path)?;
    if common.format == Format::Dot {
        return Err(no_dot("oracle"));
    }
    let v = oracle_condition(&g, condition, depth);
    Ok(verdict_output("oracle", path, &g, &v, common))
}

fn orbits(path: &Path, common: &Common) -> Result<Output> {
    let g = read_graph(path)?;
    let n = check_condition_n(&g);
    if common.format == Format::Dot {
        return Ok(Output::new(scc_decompose(&g).to_dot(&g), condition_code(&n)));
    }
    let closures = if n.holds {
        let reps = orbit_representatives(&g, &scc_decompose(&g));
        Some(reps.iter().map(|x| orbit_closure(&g, x)).collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };
    let stdout = match common.format {
        Format::Json => {
            let body = json!({
                "condition_N": report::topology_json(&g, &n),
                "orbits": closures.as_ref().map(|cs| cs.iter().map(|c| report::closure_json(&g, c)).collect::<Vec<_>>()),
            });
            pretty(&envelope("orbits", common.seed, path_value(path), body))
        }
        _ => {
            let mut s = text_header("orbits", &[path], common.seed);
            match &closures {
                None => s.push_str(&format!("{}\norbit closures need condition N\n", report::topology_text(&g, &n))),
                Some(cs) => {
                    for c in cs {
                        let members: Vec<String> = c.members.iter().map(|m| m.display(&g)).collect();
                        s.push_str(&format!(
                            "{}: {}, {}, closure {{{}}}\n",
                            c.orbit.display(&g),
                            if c.is_closed { "closed" } else { "not closed" },
                            if c.is_locally_closed { "locally closed" } else { "not locally closed" },
                            members.join(", ")
                        ));
                    }
                }
            }
            s
        }
    };
    Ok(Output::new(stdout, condition_code(&n)))
}

/// Coefficient maps accept strings or JSON numbers.
fn read_coefficients(path: &Path) -> Result<BTreeMap<String, String>> {
    let raw: BTreeMap<String, Value> = read_json(path)?;
    raw.into_iter()
        .map(|(k, v)| match v {
            Value::String(s) => Ok((k, s)),
            Value::Number(n) => Ok((k, n.to_string())),
            other => bail!("coefficient of {k} must be a string or number, got {other}"),
        })
        .collect()
}

fn convolve_in<F: Field>(
    f: &F,
    g: &Arc<FiniteGroupoid>,
    a: &BTreeMap<String, String>,
    b: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, String>> {
    let a = SteinbergElement::from_names(f, g, a)?;
    let b = SteinbergElement::from_names(f, g, b)?;
    Ok(convolve(f, &a, &b)?.to_names(f))
}

fn convolve_cmd(groupoid: &Path, a: &Path, b: &Path, field: &str, common: &Common) -> Result<Output> {
    let g = Arc::new(FiniteGroupoid::from_document(&read_json::<GroupoidDocument>(groupoid)?)?);
    let (ca, cb) = (read_coefficients(a)?, read_coefficients(b)?);
    let field = ExactField::parse(field)?;
    let product = match &field {
        ExactField::Rational => convolve_in(&Rationals, &g, &ca, &cb)?,
        ExactField::Finite(f) => convolve_in(f, &g, &ca, &cb)?,
    };
    let stdout = match common.format {
        Format::Json => {
            let inputs = json!({ "groupoid": path_value(groupoid), "a": path_value(a), "b": path_value(b) });
            let body = json!({
                "field": field.name(),
                "objects": g.object_count(),
                "arrows": g.arrow_count(),
                "product": product,
            });
            pretty(&envelope("convolve", common.seed, inputs, body))
        }
        Format::Text => {
            let terms: Vec<String> = product.iter().map(|(k, v)| format!("{v}·[{k}]")).collect();
            let sum = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            text_header("convolve", &[groupoid, a, b], common.seed) + &format!("a∗b = {sum} over {}\n", field.name())
        }
        Format::Dot => return Err(no_dot("convolve")),
    };
    Ok(Output::new(stdout, 0))
}

/// Idempotent averaging over the subgroup `h`.
fn subgroup_average(group: &Group, field: &GaloisField, h: &[usize]) -> Result<Matrix<u32>> {
    let inv = field
        .inv(&field.from_int(h.len() as i64))
        .with_context(|| format!("the characteristic of {} divides the subgroup order {}", field.name(), h.len()))?;
    let elems = element_matrices(group, field);
    let sum = h.iter().fold(Matrix::zeros(field, group.order(), group.order()), |acc, &x| acc.add(field, &elems[x]));
    Ok(sum.scale(field, &inv))
}

#[allow(clippy::too_many_arguments)]
fn repn(kind: RepnKind, group: &Group, input: Value, field: &str, subgroup: &[String], n: usize, split: Split, common: &Common) -> Result<Output> {
    let ExactField::Finite(base) = ExactField::parse(field)? else {
        bail!("representation checks need a finite field GF(q)");
    };
    let policy = match split {
        Split::Ignore => SplitPolicy::Ignore,
        Split::Require => SplitPolicy::Require,
        Split::Extend => SplitPolicy::Extend,
    };
    let field = choose_field(&base, group, policy)?;
    let config = RepnConfig { seed: common.seed, ..RepnConfig::default() };
    let names: Vec<&str> = subgroup.iter().map(|s| s.as_str()).collect();
    let h = if names.is_empty() { None } else { Some(group.closure(&group.subset(&names)?)) };
    let module = regular_module(group, &field, &config)?;
    let (check, passed, body) = match kind {
        RepnKind::Chop => {
            let s = chop(&module, &config)?;
            ("chop", true, json!({ "dim": s.module_dim, "factors": s.summary() }))
        }
        RepnKind::Clifford => {
            let h = h.context("--subgroup is required for the Clifford check")?;
            let r = clifford_check(group, &h, &field, &config)?;
            ("clifford", r.passed, serde_json::to_value(&r)?)
        }
        RepnKind::Amplify => {
            let r = matrix_amplification_check(&module, n, &config)?;
            ("amplify", r.passed, serde_json::to_value(&r)?)
        }
        RepnKind::Corner => {
            let e = match &h {
                Some(h) => subgroup_average(group, &field, h)?,
                None => Matrix::identity(&field, group.order()),
            };
            let r = corner_simples_check(&module, &e, &config)?;
            ("corner", r.passed, serde_json::to_value(&r)?)
        }
    };
    let mut fields = json!({ "check": check, "group": group.name(), "field": field.name(), "passed": passed });
    if let (Value::Object(dst), Value::Object(src)) = (&mut fields, body) {
        for (k, v) in src {
            dst.entry(k).or_insert(v);
        }
    }
    let stdout = match common.format {
        Format::Json => pretty(&envelope("repn-check", common.seed, input, fields)),
        Format::Text => {
            let mut s = format!("kpclass repn-check (seed {})\n", common.seed);
            if let Value::Object(map) = &fields {
                for (k, v) in map {
                    s.push_str(&format!("{k}: {v}\n"));
                }
            }
            s
        }
        Format::Dot => return Err(no_dot("repn-check")),
    };
    Ok(Output::new(stdout, if passed { 0 } else { EXIT_CHECK_FAILED }))
}
