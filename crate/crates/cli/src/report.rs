//! Report values with text and JSON renderings.

use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapsOut {
    pub weight_cap: usize,
    pub arity_cap: usize,
}

/// A basis label with an exact coefficient written `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coeff {
    pub basis: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub tuple: Vec<String>,
    pub residual: String,
    pub residual_terms: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArityOut {
    pub arity: usize,
    pub tuples_checked: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiOut {
    pub target: String,
    pub caps: CapsOut,
    pub dim: usize,
    pub arities: Vec<ArityOut>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantDegree {
    pub degree: i64,
    pub dim: usize,
    pub invariant_dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyComparison {
    pub degree: i64,
    pub homology_of_invariants: usize,
    pub invariants_of_homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsOut {
    pub action: String,
    pub group: String,
    pub group_order: usize,
    pub target: String,
    pub caps: CapsOut,
    pub degrees: Vec<InvariantDegree>,
    pub equivariant: bool,
    pub homology: Vec<HomologyComparison>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiOut {
    pub k: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyOut {
    pub target: String,
    pub caps: CapsOut,
    pub twist: Option<String>,
    pub maurer_cartan: bool,
    pub curvature: Option<String>,
    pub groups: Vec<PiOut>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HofixedDegree {
    pub degree: i64,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HofixedOut {
    pub cdga: String,
    pub action: String,
    pub caps: CapsOut,
    pub degrees: (i64, i64),
    pub fast_path: bool,
    pub table: Vec<HofixedDegree>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrowderValue {
    pub element: String,
    pub degree: Option<i64>,
    pub delta2: String,
    pub kappa: String,
    pub kappa_degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorOut {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrowderOut {
    pub datum: String,
    pub n: usize,
    pub caps: CapsOut,
    pub source: Vec<GeneratorOut>,
    pub provenance: String,
    pub valid: bool,
    pub failures: Vec<String>,
    pub values: Vec<BrowderValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOut {
    pub element: String,
    pub kappa: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructOut {
    pub datum: String,
    pub n: usize,
    pub caps: CapsOut,
    pub degrees: (i64, i64),
    pub scanned: usize,
    pub witnesses: Vec<WitnessOut>,
    pub obstructed: bool,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    CheckJacobi(JacobiOut),
    Invariants(InvariantsOut),
    HomotopyGroups(HomotopyOut),
    Hofixed(HofixedOut),
    Browder(BrowderOut),
    Obstruct(ObstructOut),
}

#[derive(Serialize)]
struct Envelope<'a> {
    reports: &'a [Report],
}

/// Subscript digits for indices such as `κ₃`.
pub fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

fn caps_text(c: &CapsOut) -> String {
    format!("weight-cap {}, arity-cap {}", c.weight_cap, c.arity_cap)
}

impl Report {
    /// Whether the report counts as a pass for the exit status.
    pub fn passed(&self) -> bool {
        match self {
            Report::CheckJacobi(r) => r.passed,
            Report::Invariants(r) => r.passed,
            Report::HomotopyGroups(r) => r.passed,
            Report::Browder(r) => r.valid,
            Report::Hofixed(_) | Report::Obstruct(_) => true,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::CheckJacobi(r) => {
                writeln!(s, "check-jacobi {}  [{}]", r.target, caps_text(&r.caps)).unwrap();
                for a in &r.arities {
                    if a.violations.is_empty() {
                        writeln!(s, "  arity {}: {} tuples, pass", a.arity, a.tuples_checked).unwrap();
                    } else {
                        let plural = if a.violations.len() == 1 { "" } else { "s" };
                        writeln!(s, "  arity {}: {} tuples, FAIL ({} violation{plural})", a.arity, a.tuples_checked, a.violations.len()).unwrap();
                        for v in &a.violations {
                            writeln!(s, "    ({}): residual {}", v.tuple.join(", "), v.residual).unwrap();
                        }
                    }
                }
                writeln!(s, "result: {}", if r.passed { "pass" } else { "FAIL" }).unwrap();
            }
            Report::Invariants(r) => {
                writeln!(s, "invariants {} on {} by {} (order {})  [{}]", r.action, r.target, r.group, r.group_order, caps_text(&r.caps)).unwrap();
                for d in &r.degrees {
                    writeln!(s, "  degree {}: dim {}, invariant {}", d.degree, d.dim, d.invariant_dim).unwrap();
                    for b in &d.basis {
                        writeln!(s, "    {b}").unwrap();
                    }
                }
                if r.equivariant {
                    writeln!(s, "  homology: H(C^G) vs H(C)^G").unwrap();
                    for h in &r.homology {
                        writeln!(s, "    degree {}: {} vs {}", h.degree, h.homology_of_invariants, h.invariants_of_homology).unwrap();
                    }
                } else {
                    writeln!(s, "  differential is not equivariant").unwrap();
                }
                writeln!(s, "result: {}", if r.passed { "pass" } else { "FAIL" }).unwrap();
            }
            Report::HomotopyGroups(r) => {
                writeln!(s, "homotopy-groups {}  [{}]", r.target, caps_text(&r.caps)).unwrap();
                match &r.twist {
                    Some(t) => writeln!(s, "  twist: {t}").unwrap(),
                    None => writeln!(s, "  twist: 0").unwrap(),
                }
                if let Some(c) = &r.curvature {
                    writeln!(s, "  not Maurer-Cartan, curvature {c}").unwrap();
                }
                for p in &r.groups {
                    writeln!(s, "  π{} = {}", subscript_signed(p.k), p.dim).unwrap();
                }
            }
            Report::Hofixed(r) => {
                writeln!(s, "hofixed {} with {}  [{}]", r.cdga, r.action, caps_text(&r.caps)).unwrap();
                writeln!(s, "  degrees {}..{}{}", r.degrees.0, r.degrees.1, if r.fast_path { "" } else { " (homology of invariants)" }).unwrap();
                for d in &r.table {
                    writeln!(s, "  degree {}: {}", d.degree, d.dim).unwrap();
                    for b in &d.basis {
                        writeln!(s, "    {b}").unwrap();
                    }
                }
                for n in &r.notes {
                    writeln!(s, "  note: {n}").unwrap();
                }
            }
            Report::Browder(r) => {
                writeln!(s, "browder {}  [n = {}, {}]", r.datum, r.n, caps_text(&r.caps)).unwrap();
                let gens: Vec<String> = r.source.iter().map(|g| format!("|{}| = {}", g.name, g.degree)).collect();
                writeln!(s, "  source: {}", gens.join(", ")).unwrap();
                if !r.provenance.is_empty() {
                    writeln!(s, "  provenance: {}", r.provenance).unwrap();
                }
                if !r.valid {
                    writeln!(s, "  invalid datum:").unwrap();
                    for f in &r.failures {
                        writeln!(s, "    {f}").unwrap();
                    }
                }
                for v in &r.values {
                    writeln!(s, "  Δ₂({}) = {}", v.element, v.delta2).unwrap();
                }
                for v in &r.values {
                    writeln!(s, "  κ{}({}) = {}", subscript(r.n), v.element, v.kappa).unwrap();
                }
            }
            Report::Obstruct(r) => {
                writeln!(s, "obstruct {}  [n = {}, {}]", r.datum, r.n, caps_text(&r.caps)).unwrap();
                writeln!(s, "  degrees {}..{}: {} basis monomials scanned", r.degrees.0, r.degrees.1, r.scanned).unwrap();
                for w in &r.witnesses {
                    writeln!(s, "  κ{}({}) = {}", subscript(r.n), w.element, w.kappa).unwrap();
                }
                if r.witnesses.is_empty() {
                    writeln!(s, "  κ{} vanishes on every scanned monomial", subscript(r.n)).unwrap();
                }
                writeln!(s, "  verdict: {}", r.verdict).unwrap();
            }
        }
        s
    }
}

fn subscript_signed(k: i64) -> String {
    if k < 0 {
        format!("₋{}", subscript(k.unsigned_abs() as usize))
    } else {
        subscript(k as usize)
    }
}

pub fn render_text(reports: &[Report]) -> String {
    reports.iter().map(|r| r.text()).collect()
}

pub fn render_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { reports }).expect("reports serialize");
    s.push('\n');
    s
}
