//! Command implementations over a loaded workspace.

use crate::expr;
use crate::report::*;
use crate::workspace::{ActionTarget, Caps, ErrorKind, Job, LoadError, Object, Workspace};
use kappa_core::browder::CoalgebraDatum;
use kappa_core::equivariant::{invariants, invariants_commute_with_homology, GroupAction};
use kappa_core::freelie::{self, Derivation, Lie, LieElement};
use kappa_core::linfty::{check_generalized_jacobi, is_maurer_cartan, mc_homotopy_groups};
use kappa_core::mapmodel::{hofixed_homotopy_groups, GCdga};
use kappa_core::qlinalg::{fmt_q, ChainComplex, GradedVectorSpace};
use kappa_core::{Error, LInftyAlgebra, SparseVec};
use std::fmt;
use std::ops::RangeInclusive;

pub const DEFAULT_HOFIXED_DEGREES: (i64, i64) = (0, 12);
pub const DEFAULT_OBSTRUCT_DEGREES: (i64, i64) = (0, 20);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Load(LoadError),
    /// a load error in a named file
    InFile(String, LoadError),
    /// an expression given on the command line
    Expression { option: String, col: usize, message: String },
    Validation(String),
    /// an unknown or ambiguous object name
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Load(e) | CliError::InFile(_, e) if e.kind == ErrorKind::Validation => 1,
            CliError::Validation(_) => 1,
            CliError::Load(_) | CliError::InFile(..) | CliError::Expression { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Load(e) => write!(f, "{e}"),
            CliError::InFile(path, e) => write!(f, "{path}:{e}"),
            CliError::Expression { option, col, message } => write!(f, "{option}:{col}: parse error: {message}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::Load(e)
    }
}

fn core(e: Error) -> CliError {
    CliError::Validation(e.to_string())
}

fn caps_out(c: Caps) -> CapsOut {
    CapsOut { weight_cap: c.weight, arity_cap: c.arity }
}

fn coeffs(space: &GradedVectorSpace, v: &SparseVec) -> Vec<Coeff> {
    v.iter().map(|(i, c)| Coeff { basis: space.label(*i).to_string(), value: fmt_q(c) }).collect()
}

/// Chooses an object: the explicit name, else the job's, else the only one of its kind.
fn pick<'a>(ws: &'a Workspace, explicit: Option<&'a str>, from_job: Option<&'a str>, kinds: &[&str], flag: &str) -> Result<&'a str, CliError> {
    if let Some(n) = explicit.or(from_job) {
        return match ws.get(n) {
            None => Err(CliError::Usage(format!("`{n}` is not declared"))),
            Some(o) if !kinds.contains(&o.kind()) => {
                Err(CliError::Usage(format!("`{n}` is a {}, expected {}", o.kind(), kinds.join(" or "))))
            }
            Some(_) => Ok(n),
        };
    }
    match ws.names_of(kinds).as_slice() {
        [one] => Ok(one),
        [] => Err(CliError::Usage(format!("no {} declared", kinds.join(" or ")))),
        many => Err(CliError::Usage(format!("several candidates ({}); choose one with {flag}", many.join(", ")))),
    }
}

fn job_name(job: Option<&Job>, i: usize) -> Option<&str> {
    job.and_then(|j| j.names.get(i)).map(|s| s.as_str())
}

/// The L∞-algebra behind a `lie` or `linf` object.
fn algebra(ws: &Workspace, name: &str) -> Result<(LInftyAlgebra, Option<Lie>), CliError> {
    match ws.get(name) {
        Some(Object::Lie { lie, differential }) => {
            Ok((LInftyAlgebra::from_free_lie(lie, differential.as_ref(), ws.caps.arity).map_err(core)?, Some(lie.clone())))
        }
        Some(Object::Linf(l)) => Ok((l.clone(), None)),
        _ => unreachable!("checked by pick"),
    }
}

pub fn jacobi_report(target: &str, l: &LInftyAlgebra, caps: Caps) -> Report {
    let mut arities = Vec::new();
    for n in 1..=caps.arity.max(1) {
        let r = check_generalized_jacobi(l, n);
        let violations = r
            .violations
            .iter()
            .map(|v| Violation {
                tuple: v.tuple.iter().map(|i| l.space().label(*i).to_string()).collect(),
                residual: l.space().format_vector(&v.residual),
                residual_terms: coeffs(l.space(), &v.residual),
            })
            .collect();
        arities.push(ArityOut { arity: n, tuples_checked: r.tuples_checked, violations });
    }
    let passed = arities.iter().all(|a| a.violations.is_empty());
    Report::CheckJacobi(JacobiOut { target: target.to_string(), caps: caps_out(caps), dim: l.dim(), arities, passed })
}

pub fn check_jacobi(ws: &Workspace, job: Option<&Job>, target: Option<&str>) -> Result<Report, CliError> {
    let name = pick(ws, target, job_name(job, 0), &["lie", "linf"], "--target")?;
    let (l, _) = algebra(ws, name)?;
    Ok(jacobi_report(name, &l, ws.caps))
}

fn invariants_report(
    action: &str,
    group: &str,
    target: &str,
    act: &GroupAction,
    space: &GradedVectorSpace,
    complex: &ChainComplex,
    caps: Caps,
) -> Result<Report, CliError> {
    let mut degrees = Vec::new();
    for k in space.degrees() {
        let idx = space.indices_in_degree(k);
        let sub = act.restrict(&idx).map_err(core)?;
        let inv = invariants(&sub);
        let basis = inv
            .iter()
            .map(|v| space.format_vector(&v.iter().map(|(j, c)| (idx[*j], c.clone())).collect()))
            .collect();
        degrees.push(InvariantDegree { degree: k, dim: idx.len(), invariant_dim: inv.len(), basis });
    }
    let (equivariant, homology) = match invariants_commute_with_homology(act, complex) {
        Ok(cmp) => (
            true,
            cmp.per_degree
                .iter()
                .map(|(k, (a, b))| HomologyComparison { degree: *k, homology_of_invariants: *a, invariants_of_homology: *b })
                .collect(),
        ),
        Err(Error::NotEquivariant) => (false, Vec::new()),
        Err(e) => return Err(core(e)),
    };
    let passed = equivariant && homology.iter().all(|h: &HomologyComparison| h.homology_of_invariants == h.invariants_of_homology);
    Ok(Report::Invariants(InvariantsOut {
        action: action.to_string(),
        group: group.to_string(),
        group_order: act.group().order(),
        target: target.to_string(),
        caps: caps_out(caps),
        degrees,
        equivariant,
        homology,
        passed,
    }))
}

pub fn invariants_cmd(ws: &Workspace, job: Option<&Job>, group: &str, action: Option<&str>) -> Result<Report, CliError> {
    match ws.get(group) {
        Some(Object::Group(_)) => {}
        Some(o) => return Err(CliError::Usage(format!("`{group}` is a {}, expected group", o.kind()))),
        None => return Err(CliError::Usage(format!("group `{group}` is not declared"))),
    }
    let explicit = action.or(job_name(job, 0));
    let name = match explicit {
        Some(n) => pick(ws, Some(n), None, &["action"], "--action")?,
        None => {
            let cands: Vec<&str> = ws
                .names_of(&["action"])
                .into_iter()
                .filter(|n| matches!(ws.get(n), Some(Object::Action(a)) if a.group == group))
                .collect();
            match cands.as_slice() {
                [one] => *one,
                [] => return Err(CliError::Usage(format!("no action by group `{group}` declared"))),
                many => return Err(CliError::Usage(format!("several actions by `{group}` ({}); choose one with --action", many.join(", ")))),
            }
        }
    };
    let Some(Object::Action(a)) = ws.get(name) else { unreachable!() };
    if a.group != group {
        return Err(CliError::Usage(format!("action `{name}` is by `{}`, not `{group}`", a.group)));
    }
    match &a.action {
        ActionTarget::Lie(la) => {
            let (l, _) = algebra(ws, &a.target)?;
            let full = la.full_action().map_err(core)?;
            invariants_report(name, group, &a.target, &full, l.space(), &l.chain_complex().map_err(core)?, ws.caps)
        }
        ActionTarget::Linf(act) => {
            let (l, _) = algebra(ws, &a.target)?;
            invariants_report(name, group, &a.target, act, l.space(), &l.chain_complex().map_err(core)?, ws.caps)
        }
        ActionTarget::Cdga(g) => {
            invariants_report(name, group, &a.target, &g.action, g.cdga.space(), &g.cdga.chain_complex().map_err(core)?, ws.caps)
        }
    }
}

fn lie_vector(lie: &Lie, e: &LieElement) -> SparseVec {
    let index: std::collections::HashMap<_, _> = lie.basis().iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    e.terms().iter().map(|(m, c)| (index[m], c.clone())).collect()
}

fn flag_expr(option: &str, text: &str) -> Result<expr::Expr, CliError> {
    expr::parse(text, 1).map_err(|e| CliError::Expression { option: option.to_string(), col: e.col, message: e.message })
}

pub fn homotopy_groups(ws: &Workspace, job: Option<&Job>, target: Option<&str>, twist: Option<&str>) -> Result<Report, CliError> {
    let name = pick(ws, target, job_name(job, 0), &["lie", "linf"], "--target")?;
    let (l, lie) = algebra(ws, name)?;
    let twist_text = twist.map(str::to_string).or_else(|| job.and_then(|j| j.twist.clone()));
    let tau = match &twist_text {
        None => SparseVec::new(),
        Some(t) => {
            let e = flag_expr("--twist", t)?;
            let conv = |x: expr::ExprError| CliError::Expression { option: "--twist".into(), col: x.col, message: x.message };
            match &lie {
                Some(lie) => lie_vector(lie, &expr::eval_lie(&e, lie).map_err(conv)?),
                None => expr::eval_vec(&e, l.space()).map_err(conv)?,
            }
        }
    };
    let shown = twist_text.as_ref().map(|_| l.space().format_vector(&tau));
    if !tau.is_empty() {
        let verdict = is_maurer_cartan(&l, &tau).map_err(core)?;
        if !verdict.is_maurer_cartan() {
            return Ok(Report::HomotopyGroups(HomotopyOut {
                target: name.to_string(),
                caps: caps_out(ws.caps),
                twist: shown,
                maurer_cartan: false,
                curvature: Some(l.space().format_vector(&verdict.residual)),
                groups: Vec::new(),
                passed: false,
            }));
        }
    }
    let table = mc_homotopy_groups(&l, &tau).map_err(core)?;
    let groups = table.homology.iter().map(|(k, d)| PiOut { k: k + 1, dim: *d }).collect();
    Ok(Report::HomotopyGroups(HomotopyOut {
        target: name.to_string(),
        caps: caps_out(ws.caps),
        twist: shown,
        maurer_cartan: true,
        curvature: None,
        groups,
        passed: true,
    }))
}

pub fn hofixed_report(
    cdga_name: &str,
    action_name: &str,
    a: &GCdga,
    la: &kappa_core::LieGroupAction,
    d: Option<&Derivation>,
    degrees: (i64, i64),
    caps: Caps,
) -> Result<Report, CliError> {
    let r = hofixed_homotopy_groups(a, la, d, degrees.0..=degrees.1).map_err(core)?;
    let table = r
        .dims
        .iter()
        .map(|(k, n)| HofixedDegree {
            degree: *k,
            dim: *n,
            basis: r.invariant_bases.get(k).map(|b| b.iter().map(|e| e.to_string()).collect()).unwrap_or_default(),
        })
        .collect();
    Ok(Report::Hofixed(HofixedOut {
        cdga: cdga_name.to_string(),
        action: action_name.to_string(),
        caps: caps_out(caps),
        degrees,
        fast_path: r.fast_path,
        table,
        notes: r.notes.clone(),
    }))
}

pub fn hofixed(ws: &Workspace, job: Option<&Job>, cdga: Option<&str>, action: Option<&str>, degrees: Option<(i64, i64)>) -> Result<Report, CliError> {
    let is_cdga_action = |n: &&str| matches!(ws.get(n), Some(Object::Action(a)) if matches!(a.action, ActionTarget::Cdga(_)));
    let is_lie_action = |n: &&str| matches!(ws.get(n), Some(Object::Action(a)) if matches!(a.action, ActionTarget::Lie(_)));
    let cdga_name = match cdga.or(job_name(job, 0)) {
        Some(n) => n,
        None => {
            let mut c: Vec<&str> = ws.names_of(&["sphere"]);
            c.extend(ws.names_of(&["action"]).into_iter().filter(is_cdga_action));
            match c.as_slice() {
                [one] => *one,
                [] => return Err(CliError::Usage("no sphere or cdga action declared".into())),
                many => return Err(CliError::Usage(format!("several candidates ({}); choose one with --cdga", many.join(", ")))),
            }
        }
    };
    let a = match ws.get(cdga_name) {
        Some(Object::Sphere(s)) => s.clone(),
        Some(Object::Action(x)) => match &x.action {
            ActionTarget::Cdga(g) => g.clone(),
            _ => return Err(CliError::Usage(format!("`{cdga_name}` does not act on a cdga"))),
        },
        Some(o) => return Err(CliError::Usage(format!("`{cdga_name}` is a {}, expected sphere or cdga action", o.kind()))),
        None => return Err(CliError::Usage(format!("`{cdga_name}` is not declared"))),
    };
    let action_name = match action.or(job_name(job, 1)) {
        Some(n) => n,
        None => {
            let c: Vec<&str> = ws.names_of(&["action"]).into_iter().filter(is_lie_action).collect();
            match c.as_slice() {
                [one] => *one,
                [] => return Err(CliError::Usage("no action on a lie algebra declared".into())),
                many => return Err(CliError::Usage(format!("several candidates ({}); choose one with --action", many.join(", ")))),
            }
        }
    };
    let Some(Object::Action(x)) = ws.get(action_name) else {
        return Err(CliError::Usage(format!("`{action_name}` is not an action")));
    };
    let ActionTarget::Lie(la) = &x.action else {
        return Err(CliError::Usage(format!("`{action_name}` does not act on a lie algebra")));
    };
    let d = match ws.get(&x.target) {
        Some(Object::Lie { differential, .. }) => differential.clone(),
        _ => None,
    };
    let degrees = degrees.or(job.and_then(|j| j.degrees)).unwrap_or(DEFAULT_HOFIXED_DEGREES);
    hofixed_report(cdga_name, action_name, &a, la, d.as_ref(), degrees, ws.caps)
}

pub fn browder_report(name: &str, d: &CoalgebraDatum, elements: &[LieElement], caps: Caps) -> Result<Report, CliError> {
    let check = d.validate();
    let mut values = Vec::new();
    if check.is_valid() {
        for e in elements {
            let delta = d.delta2(e).map_err(core)?;
            let k = d.kappa(e).map_err(core)?;
            values.push(BrowderValue {
                element: e.to_string(),
                degree: e.degree(),
                delta2: delta.to_string(),
                kappa: if k.is_zero() { "0".into() } else { k.to_string() },
                kappa_degree: k.degree(),
            });
        }
    }
    Ok(Report::Browder(BrowderOut {
        datum: name.to_string(),
        n: d.n(),
        caps: caps_out(caps),
        source: d.source().generators().iter().map(|g| GeneratorOut { name: g.name.clone(), degree: g.degree }).collect(),
        provenance: d.provenance().to_string(),
        valid: check.is_valid(),
        failures: check.failures,
        values,
    }))
}

fn datum<'a>(ws: &'a Workspace, job: Option<&'a Job>, explicit: Option<&'a str>) -> Result<(&'a str, &'a CoalgebraDatum), CliError> {
    let name = pick(ws, explicit, job_name(job, 0), &["datum"], "--datum")?;
    let Some(Object::Datum(d)) = ws.get(name) else { unreachable!() };
    Ok((name, d))
}

pub fn browder(ws: &Workspace, job: Option<&Job>, name: Option<&str>, element: Option<&str>) -> Result<Report, CliError> {
    let (name, d) = datum(ws, job, name)?;
    let text = element.map(str::to_string).or_else(|| job.and_then(|j| j.element.clone()));
    let elements = match text {
        Some(t) => {
            let e = flag_expr("--element", &t)?;
            vec![expr::eval_lie(&e, d.source()).map_err(|x| CliError::Expression { option: "--element".into(), col: x.col, message: x.message })?]
        }
        None => d.source().generators().iter().map(|g| freelie::generator(d.source(), &g.name).expect("declared")).collect(),
    };
    browder_report(name, d, &elements, ws.caps)
}

pub fn obstruct_report(name: &str, d: &CoalgebraDatum, degrees: (i64, i64), caps: Caps) -> Result<Report, CliError> {
    let check = d.validate();
    if !check.is_valid() {
        return Err(CliError::Validation(format!("datum `{name}` is invalid: {}", check.failures.join("; "))));
    }
    let range: RangeInclusive<i64> = degrees.0..=degrees.1;
    let r = d.obstruction_report(range).map_err(core)?;
    Ok(Report::Obstruct(ObstructOut {
        datum: name.to_string(),
        n: r.n,
        caps: caps_out(caps),
        degrees,
        scanned: r.scanned,
        witnesses: r.witnesses.iter().map(|w| WitnessOut { element: w.element.to_string(), kappa: w.value.to_string() }).collect(),
        obstructed: r.obstructed(),
        verdict: r.verdict(),
    }))
}

pub fn obstruct(ws: &Workspace, job: Option<&Job>, name: Option<&str>, degrees: Option<(i64, i64)>) -> Result<Report, CliError> {
    let (name, d) = datum(ws, job, name)?;
    let degrees = degrees.or(job.and_then(|j| j.degrees)).unwrap_or(DEFAULT_OBSTRUCT_DEGREES);
    obstruct_report(name, d, degrees, ws.caps)
}

/// Runs every job line in order.
pub fn run_jobs(ws: &Workspace) -> Result<Vec<Report>, CliError> {
    let mut out = Vec::new();
    for j in &ws.jobs {
        let job = Some(j);
        let r = match j.command.as_str() {
            "check-jacobi" => check_jacobi(ws, job, None)?,
            "invariants" => {
                let action = job_name(job, 0).ok_or_else(|| CliError::Usage(format!("line {}: invariants job needs an action", j.line)))?;
                let Some(Object::Action(a)) = ws.get(action) else {
                    return Err(CliError::Usage(format!("line {}: `{action}` is not an action", j.line)));
                };
                invariants_cmd(ws, job, &a.group, None)?
            }
            "homotopy-groups" => homotopy_groups(ws, job, None, None)?,
            "hofixed" => hofixed(ws, job, None, None, None)?,
            "browder" => browder(ws, job, None, None)?,
            "obstruct" => obstruct(ws, job, None, None)?,
            other => unreachable!("unknown job {other}"),
        };
        out.push(r);
    }
    Ok(out)
}
