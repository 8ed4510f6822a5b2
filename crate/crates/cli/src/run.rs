//! Task dispatch. Every task yields a JSON report and an exit status.

use derivlab::classify::{Condition, NilpotencyReport};
use derivlab::{
    ad_nilpotence_index, build, classify, deg_delta, fg_lie_nilpotency, nil_membership, run_claims,
    set_locally_nilpotent, unil_lie_membership, Derivation, DerivationLieAlgebra, ExampleId, Field,
    LinearOperator, OperatorSet, ParamRequest, PeriodicSchedule, Polynomial, Ring, StructureAlgebra, Vector,
    Verdict,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::task::{
    AlgebraSpec, BasisRef, ElementSpec, InputError, Scalar, ScheduleSpec, TaskKind, TaskSpec, DEFAULT_DEPTH,
    DEFAULT_DIM, DEFAULT_SAMPLES, SCHEMA,
};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Refuted,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Refuted => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Certified => Status::Certified,
            Verdict::Refuted => Status::Refuted,
            Verdict::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Input(InputError),
    /// A cross-check inside the library disagreed with itself.
    Internal(String),
}

impl From<InputError> for RunError {
    fn from(e: InputError) -> Self {
        RunError::Input(e)
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 3,
            RunError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Input(e) => write!(f, "input error: {e}"),
            RunError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

/// Attach a field path to a library error. Consistency failures are not input errors.
fn at(path: &str) -> impl Fn(derivlab::Error) -> RunError + '_ {
    move |e| match e {
        derivlab::Error::Inconsistent(m) => RunError::Internal(m),
        other => RunError::Input(InputError::new(path, other)),
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub summary: String,
}

impl Outcome {
    /// Pretty JSON with a trailing newline; byte-identical for identical inputs.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report is plain JSON");
        s.push('\n');
        s
    }
}

fn envelope(task: &str, status: Status, bounds: Value, result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "task": task,
        "status": status,
        "bounds": bounds,
        "result": result,
    })
}

fn positive(v: Option<usize>, default: usize, path: &str) -> Result<usize, InputError> {
    match v {
        Some(0) => Err(InputError::new(path, "must be positive")),
        Some(n) => Ok(n),
        None => Ok(default),
    }
}

enum Actors {
    Derivations(OperatorSet<Derivation>),
    Matrices(OperatorSet<LinearOperator>),
}

struct Context {
    field: Field,
    ring: Ring,
    derivations: Vec<(String, Derivation)>,
    operators: Vec<(String, LinearOperator)>,
}

impl Context {
    fn new(spec: &TaskSpec) -> Result<Context, RunError> {
        let field = spec.ring.coefficients.field("ring.coefficients")?;
        let ring = Ring::new(field, spec.ring.variables.iter().cloned()).map_err(at("ring.variables"))?;
        let mut derivations = Vec::new();
        for (name, images) in &spec.derivations {
            let path = format!("derivations.{name}");
            let d = Derivation::from_exprs(&ring, images.iter().map(|(v, e)| (v.as_str(), e.as_str())))
                .map_err(at(&path))?;
            derivations.push((name.clone(), d));
        }
        let mut operators = Vec::new();
        for (name, rows) in &spec.operators {
            let path = format!("operators.{name}");
            operators.push((name.clone(), parse_matrix(field, rows, &path)?));
        }
        Ok(Context {
            field,
            ring,
            derivations,
            operators,
        })
    }

    fn derivation(&self, name: &str, path: &str) -> Result<&Derivation, InputError> {
        self.derivations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| InputError::new(path, format!("no derivation named `{name}`")))
    }

    fn actors(&self, names: &[String], path: &str) -> Result<Actors, RunError> {
        if names.is_empty() {
            return Err(InputError::new(path, "set must name at least one map").into());
        }
        let ds: Option<Vec<Derivation>> = names
            .iter()
            .map(|n| self.derivations.iter().find(|(m, _)| m == n).map(|(_, d)| d.clone()))
            .collect();
        if let Some(ds) = ds {
            return Ok(Actors::Derivations(OperatorSet::new(ds).map_err(at(path))?));
        }
        let ops: Option<Vec<LinearOperator>> = names
            .iter()
            .map(|n| self.operators.iter().find(|(m, _)| m == n).map(|(_, o)| o.clone()))
            .collect();
        if let Some(ops) = ops {
            return Ok(Actors::Matrices(OperatorSet::new(ops).map_err(at(path))?));
        }
        let missing = names
            .iter()
            .find(|n| !self.derivations.iter().any(|(m, _)| m == *n) && !self.operators.iter().any(|(m, _)| m == *n));
        Err(match missing {
            Some(n) => InputError::new(path, format!("no derivation or operator named `{n}`")),
            None => InputError::new(path, "set mixes derivations and operators"),
        }
        .into())
    }

    fn polynomial(&self, e: &ElementSpec, path: &str) -> Result<Polynomial, RunError> {
        match e {
            ElementSpec::Expr(s) => self.ring.parse(s).map_err(at(path)),
            ElementSpec::Vector(_) => Err(InputError::new(path, "expected a polynomial expression").into()),
        }
    }

    fn vector(&self, e: &ElementSpec, dim: usize, path: &str) -> Result<Vector, RunError> {
        match e {
            ElementSpec::Vector(xs) => Ok(parse_vector(self.field, xs, dim, path)?),
            ElementSpec::Expr(_) => Err(InputError::new(path, "expected a coordinate vector").into()),
        }
    }

    fn schedule(&self, s: &ScheduleSpec, set: &[String], path: &str) -> Result<PeriodicSchedule, InputError> {
        let resolve = |names: &[String], field: &str| -> Result<Vec<usize>, InputError> {
            names
                .iter()
                .map(|n| {
                    set.iter()
                        .position(|m| m == n)
                        .ok_or_else(|| InputError::new(format!("{path}.{field}"), format!("`{n}` is not in the set")))
                })
                .collect()
        };
        let period = resolve(&s.period, "period")?;
        if period.is_empty() {
            return Err(InputError::new(format!("{path}.period"), "must be nonempty"));
        }
        Ok(PeriodicSchedule {
            preperiod: resolve(&s.preperiod, "preperiod")?,
            period,
        })
    }
}

fn parse_vector(field: Field, xs: &[Scalar], dim: usize, path: &str) -> Result<Vector, InputError> {
    if xs.len() != dim {
        return Err(InputError::new(path, format!("expected {dim} coordinates, got {}", xs.len())));
    }
    xs.iter()
        .enumerate()
        .map(|(i, x)| x.to_coeff(field, &format!("{path}[{i}]")))
        .collect()
}

fn parse_matrix(field: Field, rows: &[Vec<Scalar>], path: &str) -> Result<LinearOperator, RunError> {
    let dim = rows.len();
    if dim == 0 {
        return Err(InputError::new(path, "matrix needs at least one row").into());
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(field, r, dim, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    LinearOperator::from_rows(field, rows).map_err(at(path))
}

pub fn build_algebra(a: &AlgebraSpec, path: &str) -> Result<StructureAlgebra, RunError> {
    let field = a.coefficients.field(&format!("{path}coefficients"))?;
    let d = a.basis.len();
    if d == 0 {
        return Err(InputError::new(format!("{path}basis"), "must be nonempty").into());
    }
    let resolve = |r: &BasisRef, p: String| -> Result<usize, InputError> {
        match r {
            BasisRef::Index(i) if *i < d => Ok(*i),
            BasisRef::Index(i) => Err(InputError::new(p, format!("index {i} outside basis of size {d}"))),
            BasisRef::Name(n) => a
                .basis
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| InputError::new(p, format!("`{n}` is not a basis element"))),
        }
    };
    let mut entries = Vec::with_capacity(a.table.len());
    for (t, e) in a.table.iter().enumerate() {
        let p = |f: &str| format!("{path}table[{t}].{f}");
        entries.push((
            resolve(&e.i, p("i"))?,
            resolve(&e.j, p("j"))?,
            resolve(&e.k, p("k"))?,
            e.c.to_coeff(field, &p("c"))?,
        ));
    }
    StructureAlgebra::new(a.kind, field, a.basis.clone(), entries).map_err(at(&format!("{path}table")))
}

pub fn run_task(spec: &TaskSpec) -> Result<Outcome, RunError> {
    let ctx = Context::new(spec)?;
    let name = spec.task.name();
    match &spec.task {
        TaskKind::Deg { set, element, depth } => {
            let depth = positive(*depth, DEFAULT_DEPTH, "task.depth")?;
            let cert = match ctx.actors(set, "task.set")? {
                Actors::Derivations(s) => {
                    let x = ctx.polynomial(element, "task.element")?;
                    deg_delta(&s, &x, depth).map_err(at("task.element"))?
                }
                Actors::Matrices(s) => {
                    let x = ctx.vector(element, s.actors()[0].dim(), "task.element")?;
                    deg_delta(&s, &x, depth).map_err(at("task.element"))?
                }
            };
            let status = Status::from(cert.verdict);
            let summary = match cert.certified_degree() {
                Some(d) => format!("deg: certified degree {}", serde_json::to_string(&d).expect("plain")),
                None => format!("deg: inconclusive, some word of length {depth} survives"),
            };
            Ok(Outcome {
                status,
                report: envelope(name, status, json!({ "depth": depth }), json!(cert)),
                summary,
            })
        }
        TaskKind::NilMembership { set, element, schedule, depth } => {
            let depth = positive(*depth, DEFAULT_DEPTH, "task.depth")?;
            let sched = schedule.as_ref().map(|s| ctx.schedule(s, set, "task.schedule")).transpose()?;
            let cert = match ctx.actors(set, "task.set")? {
                Actors::Derivations(s) => {
                    let x = ctx.polynomial(element, "task.element")?;
                    nil_membership(&s, &x, depth, sched.as_ref()).map_err(at("task.schedule"))?
                }
                Actors::Matrices(s) => {
                    let x = ctx.vector(element, s.actors()[0].dim(), "task.element")?;
                    nil_membership(&s, &x, depth, sched.as_ref()).map_err(at("task.schedule"))?
                }
            };
            let status = Status::from(cert.verdict);
            Ok(Outcome {
                status,
                report: envelope(name, status, json!({ "depth": depth }), json!(cert)),
                summary: format!("nil-membership: {}", verdict_word(cert.verdict)),
            })
        }
        TaskKind::SetLnd { set, generators, depth } => {
            let depth = positive(*depth, DEFAULT_DEPTH, "task.depth")?;
            let cert = match ctx.actors(set, "task.set")? {
                Actors::Derivations(s) => {
                    let gens = match generators {
                        Some(g) => g
                            .iter()
                            .enumerate()
                            .map(|(i, e)| ctx.polynomial(e, &format!("task.generators[{i}]")))
                            .collect::<Result<Vec<_>, _>>()?,
                        None => (0..ctx.ring.num_vars()).map(|i| ctx.ring.var(i)).collect(),
                    };
                    set_locally_nilpotent(&s, &gens, depth).map_err(at("task.generators"))?
                }
                Actors::Matrices(s) => {
                    let dim = s.actors()[0].dim();
                    let gens = match generators {
                        Some(g) => g
                            .iter()
                            .enumerate()
                            .map(|(i, e)| ctx.vector(e, dim, &format!("task.generators[{i}]")))
                            .collect::<Result<Vec<_>, _>>()?,
                        None => (0..dim).map(|i| derivlab::operator::basis_vector(ctx.field, dim, i)).collect(),
                    };
                    set_locally_nilpotent(&s, &gens, depth).map_err(at("task.generators"))?
                }
            };
            let status = Status::from(cert.certificate.verdict);
            let summary = match cert.failing_generator {
                Some(g) => format!("set-lnd: {}, generator {g} not certified", verdict_word(cert.certificate.verdict)),
                None => format!("set-lnd: {}", verdict_word(cert.certificate.verdict)),
            };
            Ok(Outcome {
                status,
                report: envelope(name, status, json!({ "depth": depth }), json!(cert)),
                summary,
            })
        }
        TaskKind::LieUnil { set, element, depth } => {
            let depth = positive(*depth, DEFAULT_DEPTH, "task.depth")?;
            let cert = match ctx.actors(set, "task.set")? {
                Actors::Derivations(s) => {
                    let x = ctx.polynomial(element, "task.element")?;
                    unil_lie_membership(&s, &x, depth).map_err(at("task.element"))?
                }
                Actors::Matrices(s) => {
                    let x = ctx.vector(element, s.actors()[0].dim(), "task.element")?;
                    unil_lie_membership(&s, &x, depth).map_err(at("task.element"))?
                }
            };
            let status = Status::from(cert.certificate.verdict);
            Ok(Outcome {
                status,
                report: envelope(name, status, json!({ "depth": depth }), json!(cert)),
                summary: format!("lie-unil: {}", verdict_word(cert.certificate.verdict)),
            })
        }
        TaskKind::Classify { generators, samples, seed, depth } => {
            let a = spec
                .algebra
                .as_ref()
                .ok_or_else(|| InputError::new("algebra", "classify needs an algebra"))?;
            let alg = build_algebra(a, "algebra.")?;
            let gens = match generators {
                Some(g) => g
                    .iter()
                    .enumerate()
                    .map(|(i, v)| parse_vector(alg.field(), v, alg.dim(), &format!("task.generators[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            };
            classify_outcome(
                &alg,
                &gens,
                positive(*samples, DEFAULT_SAMPLES, "task.samples")?,
                positive(*depth, DEFAULT_DEPTH, "task.depth")?,
                seed.unwrap_or(0),
            )
        }
        TaskKind::AdIndex { d, e, separating, depth } => {
            let depth = positive(*depth, DEFAULT_DEPTH, "task.depth")?;
            let dd = ctx.derivation(d, "task.d")?;
            let ee = ctx.derivation(e, "task.e")?;
            let xs = separating_set(&ctx, separating.as_deref())?;
            let idx = ad_nilpotence_index(dd, ee, &xs, depth).map_err(at("task"))?;
            let status = Status::from(idx.verdict);
            let summary = match idx.index {
                Some(i) => format!("ad-index: ad({d})^{i}({e}) = 0, envelope {:?}", idx.envelope),
                None => format!("ad-index: {}", verdict_word(idx.verdict)),
            };
            Ok(Outcome {
                status,
                report: envelope(name, status, json!({ "depth": depth }), json!(idx)),
                summary,
            })
        }
        TaskKind::FgNilpotency { generators, separating, dim, depth } => {
            let depth = positive(*depth, DEFAULT_DEPTH, "task.depth")?;
            let dim = positive(*dim, DEFAULT_DIM, "task.dim")?;
            let gens = generators
                .iter()
                .enumerate()
                .map(|(i, g)| ctx.derivation(g, &format!("task.generators[{i}]")).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let l = match separating {
                None => DerivationLieAlgebra::new(gens),
                Some(_) => DerivationLieAlgebra::with_separating_set(gens, separating_set(&ctx, separating.as_deref())?),
            }
            .map_err(at("task.generators"))?;
            let report = fg_lie_nilpotency(&l, dim, depth).map_err(at("task"))?;
            let status = Status::from(report.verdict);
            Ok(Outcome {
                status,
                report: envelope(name, status, json!({ "depth": depth, "dim": dim }), json!(report)),
                summary: format!("fg-nilpotency: {}", verdict_word(report.verdict)),
            })
        }
        TaskKind::Reproduce { example, n, characteristic, seed, depth } => reproduce(
            example,
            ParamRequest {
                n: *n,
                characteristic: characteristic.unwrap_or(0),
                seed: seed.unwrap_or(0),
            },
            positive(*depth, DEFAULT_DEPTH, "task.depth")?,
        ),
    }
}

fn separating_set(ctx: &Context, exprs: Option<&[String]>) -> Result<Vec<Polynomial>, RunError> {
    match exprs {
        None => Ok((0..ctx.ring.num_vars()).map(|i| ctx.ring.var(i)).collect()),
        Some(xs) => xs
            .iter()
            .enumerate()
            .map(|(i, s)| ctx.ring.parse(s).map_err(at(&format!("task.separating[{i}]"))))
            .collect(),
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Certified => "certified",
        Verdict::Refuted => "refuted",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// Overall status of a classification: certified when the algebra is
/// nilpotent, refuted when it is not.
fn classify_status(r: &NilpotencyReport) -> Status {
    let vs: Vec<Verdict> = Condition::ALL.iter().map(|&c| r.verdict(c)).collect();
    if vs.iter().all(|&v| v == Verdict::Certified) {
        Status::Certified
    } else if vs.contains(&Verdict::Refuted) {
        Status::Refuted
    } else {
        Status::Inconclusive
    }
}

pub fn classify_outcome(
    alg: &StructureAlgebra,
    gens: &[Vector],
    samples: usize,
    depth: usize,
    seed: u64,
) -> Result<Outcome, RunError> {
    let report = classify(alg, gens, samples, depth, seed).map_err(at("algebra"))?;
    let status = classify_status(&report);
    let verdicts: Vec<String> = Condition::ALL
        .iter()
        .map(|&c| format!("({c}) {}", verdict_word(report.verdict(c))))
        .collect();
    Ok(Outcome {
        status,
        report: envelope(
            "classify",
            status,
            json!({ "depth": depth, "samples": samples, "seed": seed }),
            json!(report),
        ),
        summary: format!("classify: {} algebra of dimension {}: {}", alg.kind(), alg.dim(), verdicts.join(", ")),
    })
}

pub fn reproduce(example: &str, req: ParamRequest, depth: usize) -> Result<Outcome, RunError> {
    let id: ExampleId = example
        .parse()
        .map_err(|e: derivlab::Error| InputError::new("example", e))?;
    let inst = build(id, req).map_err(at("params"))?;
    let report = run_claims(&inst, depth).map_err(at("example"))?;
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    let status = if failed.is_empty() { Status::Certified } else { Status::Refuted };
    let summary = if failed.is_empty() {
        format!("reproduce {id}: all {} claims pass", report.claims.len())
    } else {
        format!("reproduce {id}: failing claims: {}", failed.join("; "))
    };
    let mut value = json!(report);
    value["schema"] = json!(SCHEMA);
    value["bounds"] = json!({ "depth": depth });
    Ok(Outcome {
        status,
        report: value,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Result<Outcome, RunError> {
        run_task(&TaskSpec::parse(text).map_err(RunError::Input)?)
    }

    #[test]
    fn deg_of_x_squared() {
        let out = run(r#"{"schema": "derivlab/1", "ring": {"variables": ["x"]},
            "derivations": {"dx": {"x": "1"}},
            "task": {"kind": "deg", "set": ["dx"], "element": "x^2"}}"#)
        .unwrap();
        assert_eq!(out.status, Status::Certified);
        assert_eq!(out.report["result"]["degree"], json!(2));
        assert_eq!(out.report["bounds"]["depth"], json!(16));
    }

    #[test]
    fn matrix_set() {
        let out = run(r#"{"schema": "derivlab/1",
            "operators": {"N": [[0, 1], [0, 0]]},
            "task": {"kind": "deg", "set": ["N"], "element": [0, "1/2"]}}"#)
        .unwrap();
        assert_eq!(out.report["result"]["degree"], json!(1));
    }

    #[test]
    fn bad_expression_names_the_field() {
        let err = run(r#"{"schema": "derivlab/1", "ring": {"variables": ["x"]},
            "derivations": {"dx": {"x": "1"}},
            "task": {"kind": "deg", "set": ["dx"], "element": "x +"}}"#)
        .unwrap_err();
        match err {
            RunError::Input(e) => {
                assert_eq!(e.field, "task.element");
                assert!(e.message.contains("position"), "{e}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_set_member() {
        let err = run(r#"{"schema": "derivlab/1", "task": {"kind": "deg", "set": ["D"], "element": "1"}}"#).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
