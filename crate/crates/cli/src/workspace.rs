//! The `.kappa` workspace format; see `docs/file-format.md`.

use crate::expr::{self, ExprError};
use kappa_core::browder::{target_model, CoalgebraDatum};
use kappa_core::equivariant::{FiniteGroup, GroupAction, LieGroupAction};
use kappa_core::freelie::{extend_derivation, free_product, Derivation, FreeGradedLie, Lie};
use kappa_core::mapmodel::{cohomology_sphere_cdga, Cdga, GCdga};
use kappa_core::qlinalg::{GradedVectorSpace, QMatrix};
use kappa_core::LInftyAlgebra;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_WEIGHT_CAP: usize = 6;
pub const DEFAULT_ARITY_CAP: usize = 3;
pub const WEIGHT_CAP_ENV: &str = "KAPPA_WEIGHT_CAP";
pub const ARITY_CAP_ENV: &str = "KAPPA_ARITY_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadError {
    pub kind: ErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ErrorKind::Parse => "parse error",
            ErrorKind::Validation => "validation error",
        };
        write!(f, "{}:{}: {what}: {}", self.line, self.col, self.message)
    }
}

fn parse_err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError { kind: ErrorKind::Parse, line, col, message: message.into() })
}

fn invalid<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError { kind: ErrorKind::Validation, line, col, message: message.into() })
}

fn from_expr(line: usize, e: ExprError) -> LoadError {
    LoadError { kind: ErrorKind::Parse, line, col: e.col, message: e.message }
}

/// Effective caps with the place each came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub weight: usize,
    pub arity: usize,
}

/// Cap overrides from the command line and the environment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CapOverrides {
    pub weight_flag: Option<usize>,
    pub arity_flag: Option<usize>,
    pub weight_env: Option<usize>,
    pub arity_env: Option<usize>,
}

impl CapOverrides {
    /// flag > file > environment > default
    pub fn resolve(&self, file_weight: Option<usize>, file_arity: Option<usize>) -> Caps {
        Caps {
            weight: self.weight_flag.or(file_weight).or(self.weight_env).unwrap_or(DEFAULT_WEIGHT_CAP),
            arity: self.arity_flag.or(file_arity).or(self.arity_env).unwrap_or(DEFAULT_ARITY_CAP),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ActionTarget {
    Lie(LieGroupAction),
    Linf(GroupAction),
    Cdga(GCdga),
}

#[derive(Clone, Debug)]
pub struct Action {
    pub target: String,
    pub group: String,
    pub action: ActionTarget,
}

#[derive(Clone, Debug)]
pub enum Object {
    Lie { lie: Lie, differential: Option<Derivation> },
    Linf(LInftyAlgebra),
    Group(FiniteGroup),
    Cdga(Arc<Cdga>),
    Sphere(GCdga),
    Action(Action),
    Datum(CoalgebraDatum),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Lie { .. } => "lie",
            Object::Linf(_) => "linf",
            Object::Group(_) => "group",
            Object::Cdga(_) => "cdga",
            Object::Sphere(_) => "sphere",
            Object::Action(_) => "action",
            Object::Datum(_) => "datum",
        }
    }
}

/// A `job` line: command, object names, options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub line: usize,
    pub command: String,
    pub names: Vec<String>,
    pub degrees: Option<(i64, i64)>,
    pub element: Option<String>,
    pub twist: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub caps: Caps,
    pub objects: BTreeMap<String, Object>,
    pub order: Vec<String>,
    pub jobs: Vec<Job>,
}

impl Workspace {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    /// Names of objects of the given kinds, in declaration order.
    pub fn names_of(&self, kinds: &[&str]) -> Vec<&str> {
        self.order.iter().filter(|n| kinds.contains(&self.objects[*n].kind())).map(|n| n.as_str()).collect()
    }

    pub fn first_job(&self, command: &str) -> Option<&Job> {
        self.jobs.iter().find(|j| j.command == command)
    }
}

pub const COMMANDS: [&str; 6] = ["check-jacobi", "invariants", "homotopy-groups", "hofixed", "browder", "obstruct"];

/// One non-blank line with comments removed.
#[derive(Clone, Debug)]
struct Line {
    no: usize,
    text: String,
}

impl Line {
    /// Whitespace-separated words with their 1-based columns.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start: Option<usize> = None;
        let mut byte_start = 0;
        for (ci, (bi, c)) in self.text.char_indices().enumerate() {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push((s, &self.text[byte_start..bi]));
                }
            } else if start.is_none() {
                start = Some(ci + 1);
                byte_start = bi;
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[byte_start..]));
        }
        out
    }

    /// Text after the first occurrence of `sep`, with its column.
    fn after(&self, sep: char) -> Option<(usize, &str)> {
        let (ci, (bi, _)) = self.text.char_indices().enumerate().find(|(_, (_, c))| *c == sep)?;
        Some((ci + 2, &self.text[bi + sep.len_utf8()..]))
    }

    fn end_col(&self) -> usize {
        self.text.chars().count() + 1
    }
}

fn strip_comment(s: &str) -> &str {
    let mut prev_space = true;
    for (i, c) in s.char_indices() {
        if c == '#' && prev_space {
            return &s[..i];
        }
        prev_space = c.is_whitespace();
    }
    s
}

struct Block {
    header: Line,
    body: Vec<Line>,
}

enum Item {
    Single(Line),
    Block(Block),
}

const BLOCKS: [&str; 5] = ["lie", "linf", "cdga", "action", "datum"];

fn split(text: &str) -> Result<(Vec<Item>, Option<usize>, Option<usize>), LoadError> {
    let mut items = Vec::new();
    let mut open: Option<Block> = None;
    let mut weight = None;
    let mut arity = None;
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let line = Line { no: i + 1, text: body.trim_end().to_string() };
        let words = line.words();
        let (col, first) = words[0];
        if let Some(b) = open.as_mut() {
            if first == "end" {
                if words.len() > 1 {
                    return parse_err(line.no, words[1].0, "unexpected text after `end`");
                }
                items.push(Item::Block(open.take().unwrap()));
            } else if BLOCKS.contains(&first) && col == 1 {
                return parse_err(line.no, col, format!("`{first}` inside an unfinished `{}` block", b.header.words()[0].1));
            } else {
                b.body.push(line);
            }
            continue;
        }
        match first {
            "weight-cap" | "arity-cap" => {
                if words.len() != 2 {
                    return parse_err(line.no, col, format!("usage: {first} N"));
                }
                let n: usize = words[1].1.parse().map_err(|_| LoadError {
                    kind: ErrorKind::Parse,
                    line: line.no,
                    col: words[1].0,
                    message: "expected a nonnegative integer".into(),
                })?;
                let slot = if first == "weight-cap" { &mut weight } else { &mut arity };
                if slot.is_some() {
                    return parse_err(line.no, col, format!("`{first}` given twice"));
                }
                *slot = Some(n);
            }
            k if BLOCKS.contains(&k) => open = Some(Block { header: line, body: Vec::new() }),
            "group" | "sphere" | "product" | "job" => items.push(Item::Single(line)),
            "end" => return parse_err(line.no, col, "`end` without an open block"),
            other => return parse_err(line.no, col, format!("unknown statement `{other}`")),
        }
    }
    if let Some(b) = open {
        return parse_err(b.header.no, 1, format!("`{}` block is missing `end`", b.header.words()[0].1));
    }
    Ok((items, weight, arity))
}

fn int<T: std::str::FromStr>(line: &Line, w: (usize, &str), what: &str) -> Result<T, LoadError> {
    w.1.parse().map_err(|_| LoadError { kind: ErrorKind::Parse, line: line.no, col: w.0, message: format!("expected {what}, found `{}`", w.1) })
}

fn want_words<'a>(line: &'a Line, n: usize, usage: &str) -> Result<Vec<(usize, &'a str)>, LoadError> {
    let w = line.words();
    if w.len() != n {
        let col = w.get(n).map(|x| x.0).unwrap_or(line.end_col());
        return parse_err(line.no, col, format!("usage: {usage}"));
    }
    Ok(w)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn is_label(s: &str) -> bool {
    is_name(s) || (!s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
}

/// Parses `a..b`.
pub fn parse_degrees(s: &str) -> Option<(i64, i64)> {
    let (a, b) = s.split_once("..")?;
    let (a, b) = (a.parse().ok()?, b.parse().ok()?);
    (a <= b).then_some((a, b))
}

struct Loader {
    caps: Caps,
    objects: BTreeMap<String, Object>,
    order: Vec<String>,
    jobs: Vec<Job>,
}

impl Loader {
    fn declare(&mut self, line: &Line, col: usize, name: &str, obj: Object) -> Result<(), LoadError> {
        if !is_name(name) {
            return parse_err(line.no, col, format!("`{name}` is not a valid name"));
        }
        if self.objects.contains_key(name) {
            return parse_err(line.no, col, format!("`{name}` is already declared"));
        }
        self.objects.insert(name.to_string(), obj);
        self.order.push(name.to_string());
        Ok(())
    }

    fn lookup(&self, line: &Line, w: (usize, &str), kinds: &[&str]) -> Result<&Object, LoadError> {
        match self.objects.get(w.1) {
            None => parse_err(line.no, w.0, format!("`{}` is not declared", w.1)),
            Some(o) if !kinds.contains(&o.kind()) => {
                parse_err(line.no, w.0, format!("`{}` is a {}, expected {}", w.1, o.kind(), kinds.join(" or ")))
            }
            Some(o) => Ok(o),
        }
    }

    fn lie(&self, line: &Line, w: (usize, &str)) -> Result<Lie, LoadError> {
        match self.lookup(line, w, &["lie"])? {
            Object::Lie { lie, .. } => Ok(lie.clone()),
            _ => unreachable!(),
        }
    }

    fn single(&mut self, line: &Line) -> Result<(), LoadError> {
        let words = line.words();
        match words[0].1 {
            "group" => {
                let w = line.words();
                if w.len() < 4 || w[2].1 != "=" {
                    return parse_err(line.no, w.get(2).map(|x| x.0).unwrap_or(line.end_col()), "usage: group NAME = symmetric R | cyclic M | trivial");
                }
                let g = match (w[3].1, w.len()) {
                    ("trivial", 4) => FiniteGroup::trivial(),
                    ("symmetric", 5) => {
                        let r: usize = int(line, w[4], "a group size")?;
                        if !(1..=6).contains(&r) {
                            return invalid(line.no, w[4].0, "symmetric groups are supported on 1 to 6 letters");
                        }
                        FiniteGroup::symmetric(r)
                    }
                    ("cyclic", 5) => {
                        let m: usize = int(line, w[4], "a group order")?;
                        if m == 0 {
                            return invalid(line.no, w[4].0, "group order must be positive");
                        }
                        FiniteGroup::cyclic(m)
                    }
                    _ => return parse_err(line.no, w[3].0, "usage: group NAME = symmetric R | cyclic M | trivial"),
                };
                self.declare(line, w[1].0, w[1].1, Object::Group(g))
            }
            "sphere" => {
                let w = want_words(line, 3, "sphere NAME N")?;
                let n: usize = int(line, w[2], "a positive integer")?;
                if n == 0 {
                    return invalid(line.no, w[2].0, "sphere dimension n must be at least 1");
                }
                let s = cohomology_sphere_cdga(n).map_err(|e| LoadError { kind: ErrorKind::Validation, line: line.no, col: w[2].0, message: e.to_string() })?;
                self.declare(line, w[1].0, w[1].1, Object::Sphere(s))
            }
            "product" => {
                // product NAME = A * B [* C …] tags t1 t2 …
                let w = line.words();
                let usage = "product NAME = A * B tags T1 T2";
                if w.len() < 3 || w[2].1 != "=" {
                    return parse_err(line.no, w.get(2).map(|x| x.0).unwrap_or(line.end_col()), format!("usage: {usage}"));
                }
                let tags_at = w.iter().position(|x| x.1 == "tags").ok_or_else(|| LoadError {
                    kind: ErrorKind::Parse,
                    line: line.no,
                    col: line.end_col(),
                    message: format!("usage: {usage}"),
                })?;
                let mut parts = Vec::new();
                for (i, x) in w[3..tags_at].iter().enumerate() {
                    if i % 2 == 1 {
                        if x.1 != "*" {
                            return parse_err(line.no, x.0, "expected `*`");
                        }
                    } else {
                        parts.push(self.lie(line, *x)?);
                    }
                }
                let tags: Vec<&str> = w[tags_at + 1..].iter().map(|x| x.1).collect();
                if parts.is_empty() || tags.len() != parts.len() {
                    return parse_err(line.no, w[tags_at].0, "one tag per factor required");
                }
                let refs: Vec<&Lie> = parts.iter().collect();
                let lie = free_product(&refs, &tags).map_err(|e| LoadError { kind: ErrorKind::Validation, line: line.no, col: w[tags_at].0, message: e.to_string() })?;
                self.declare(line, w[1].0, w[1].1, Object::Lie { lie, differential: None })
            }
            "job" => self.job(line),
            _ => unreachable!(),
        }
    }

    fn job(&mut self, line: &Line) -> Result<(), LoadError> {
        let w = line.words();
        if w.len() < 2 || !COMMANDS.contains(&w[1].1) {
            let col = w.get(1).map(|x| x.0).unwrap_or(line.end_col());
            return parse_err(line.no, col, format!("job needs one of: {}", COMMANDS.join(", ")));
        }
        let mut job = Job { line: line.no, command: w[1].1.to_string(), names: Vec::new(), degrees: None, element: None, twist: None };
        let mut i = 2;
        while i < w.len() {
            let (col, word) = w[i];
            match word {
                "degrees" => {
                    let v = w.get(i + 1).ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: line.end_col(), message: "expected a range a..b".into() })?;
                    job.degrees = Some(parse_degrees(v.1).ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: v.0, message: "expected a range a..b".into() })?);
                    i += 2;
                }
                "element" | "twist" => {
                    // the rest of the line is the expression
                    let start = w.get(i + 1).ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: line.end_col(), message: format!("expected an expression after `{word}`") })?;
                    let byte = line.text.char_indices().nth(start.0 - 1).map(|(b, _)| b).unwrap();
                    let text = line.text[byte..].to_string();
                    expr::parse(&text, start.0).map_err(|e| from_expr(line.no, e))?;
                    if word == "element" {
                        job.element = Some(text);
                    } else {
                        job.twist = Some(text);
                    }
                    break;
                }
                name => {
                    if job.degrees.is_some() {
                        return parse_err(line.no, col, "object names must come before options");
                    }
                    self.lookup(line, (col, name), &["lie", "linf", "cdga", "sphere", "action", "datum"])?;
                    job.names.push(name.to_string());
                    i += 1;
                }
            }
        }
        self.jobs.push(job);
        Ok(())
    }

    fn block(&mut self, b: &Block) -> Result<(), LoadError> {
        match b.header.words()[0].1 {
            "lie" => self.lie_block(b),
            "linf" => self.linf_block(b),
            "cdga" => self.cdga_block(b),
            "action" => self.action_block(b),
            "datum" => self.datum_block(b),
            _ => unreachable!(),
        }
    }

    fn lie_block(&mut self, b: &Block) -> Result<(), LoadError> {
        let h = want_words(&b.header, 2, "lie NAME")?;
        let mut gens: Vec<(String, i64)> = Vec::new();
        let mut ds = Vec::new();
        for line in &b.body {
            let w = line.words();
            match w[0].1 {
                "gen" => {
                    let w = want_words(line, 3, "gen NAME DEGREE")?;
                    if !is_name(w[1].1) {
                        return parse_err(line.no, w[1].0, format!("`{}` is not a valid name", w[1].1));
                    }
                    if gens.iter().any(|(g, _)| g == w[1].1) {
                        return parse_err(line.no, w[1].0, format!("generator `{}` is already declared", w[1].1));
                    }
                    gens.push((w[1].1.to_string(), int(line, w[2], "an integer degree")?));
                }
                "d" => {
                    if w.len() < 4 || w[2].1 != "=" {
                        return parse_err(line.no, w.get(2).map(|x| x.0).unwrap_or(line.end_col()), "usage: d GENERATOR = EXPRESSION");
                    }
                    let (col, text) = line.after('=').unwrap();
                    ds.push((line.clone(), w[1], expr::parse(text, col).map_err(|e| from_expr(line.no, e))?));
                }
                other => return parse_err(line.no, w[0].0, format!("unknown lie statement `{other}`")),
            }
        }
        if gens.is_empty() {
            return invalid(b.header.no, 1, "a free Lie algebra needs at least one generator");
        }
        let lie = FreeGradedLie::new(&gens, self.caps.weight).map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        let differential = if ds.is_empty() {
            None
        } else {
            let mut images = Vec::new();
            for (line, g, e) in &ds {
                if lie.generator_index(g.1).is_err() {
                    return parse_err(line.no, g.0, format!("unknown generator `{}`", g.1));
                }
                if images.iter().any(|(n, _)| n == g.1) {
                    return parse_err(line.no, g.0, format!("`d {}` given twice", g.1));
                }
                images.push((g.1.to_string(), expr::eval_lie(e, &lie).map_err(|x| from_expr(line.no, x))?));
            }
            Some(extend_derivation(&lie, -1, &images).map_err(|e| LoadError { kind: ErrorKind::Validation, line: ds[0].0.no, col: 1, message: e.to_string() })?)
        };
        self.declare(&b.header, h[1].0, h[1].1, Object::Lie { lie, differential })
    }

    fn basis_line(line: &Line, basis: &mut Vec<(String, i64)>, weights: Option<&mut Vec<usize>>) -> Result<(), LoadError> {
        let w = line.words();
        let ok_len = if weights.is_some() { w.len() == 3 || w.len() == 5 } else { w.len() == 3 };
        if !ok_len || (w.len() == 5 && w[3].1 != "weight") {
            let usage = if weights.is_some() { "basis LABEL DEGREE [weight W]" } else { "basis LABEL DEGREE" };
            return parse_err(line.no, w.get(1).map(|x| x.0).unwrap_or(line.end_col()), format!("usage: {usage}"));
        }
        if !is_label(w[1].1) {
            return parse_err(line.no, w[1].0, format!("`{}` is not a valid label", w[1].1));
        }
        if basis.iter().any(|(l, _)| l == w[1].1) {
            return parse_err(line.no, w[1].0, format!("label `{}` is already declared", w[1].1));
        }
        basis.push((w[1].1.to_string(), int(line, w[2], "an integer degree")?));
        if let Some(ws) = weights {
            let wt = if w.len() == 5 { int(line, w[4], "a positive weight")? } else { 1 };
            if wt == 0 {
                return invalid(line.no, w[4].0, "weights must be positive");
            }
            ws.push(wt);
        }
        Ok(())
    }

    fn linf_block(&mut self, b: &Block) -> Result<(), LoadError> {
        let h = want_words(&b.header, 2, "linf NAME")?;
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        let mut brackets = Vec::new();
        for line in &b.body {
            let w = line.words();
            match w[0].1 {
                "basis" => {
                    if !brackets.is_empty() {
                        return parse_err(line.no, w[0].0, "basis lines must come before brackets");
                    }
                    Self::basis_line(line, &mut basis, Some(&mut weights))?;
                }
                "bracket" => {
                    let Some((col, rhs)) = line.after('=') else {
                        return parse_err(line.no, line.end_col(), "usage: bracket A, B, … = EXPRESSION");
                    };
                    let lhs_start = w[0].0 + "bracket".len();
                    let lhs_end = col - 1;
                    let lhs: String = line.text.chars().skip(lhs_start - 1).take(lhs_end - lhs_start).collect();
                    let mut tuple = Vec::new();
                    let mut offset = lhs_start;
                    for part in lhs.split(',') {
                        let lead = part.chars().take_while(|c| c.is_whitespace()).count();
                        let label = part.trim();
                        if label.is_empty() {
                            return parse_err(line.no, offset + lead, "expected a basis label");
                        }
                        tuple.push((offset + lead, label.to_string()));
                        offset += part.chars().count() + 1;
                    }
                    brackets.push((line.clone(), tuple, expr::parse(rhs, col).map_err(|e| from_expr(line.no, e))?));
                }
                other => return parse_err(line.no, w[0].0, format!("unknown linf statement `{other}`")),
            }
        }
        let space = GradedVectorSpace::new(basis).map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        let mut l = LInftyAlgebra::new(space.clone(), weights, self.caps.arity.max(1))
            .map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (line, tuple, e) in &brackets {
            let mut idx = Vec::new();
            for (col, label) in tuple {
                idx.push(space.index_of(label).ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: *col, message: format!("unknown basis element `{label}`") })?);
            }
            if idx.len() > l.arity_cap() {
                return invalid(line.no, tuple[0].0, format!("bracket of arity {} exceeds the arity cap {}", idx.len(), l.arity_cap()));
            }
            let mut key = idx.clone();
            key.sort_unstable();
            if let Some(prev) = seen.insert(key, line.no) {
                return invalid(line.no, tuple[0].0, format!("bracket on these inputs already given on line {prev}"));
            }
            let v = expr::eval_vec(e, &space).map_err(|x| from_expr(line.no, x))?;
            l.set_bracket(&idx, v).map_err(|x| LoadError { kind: ErrorKind::Validation, line: line.no, col: tuple[0].0, message: x.to_string() })?;
        }
        self.declare(&b.header, h[1].0, h[1].1, Object::Linf(l))
    }

    fn cdga_block(&mut self, b: &Block) -> Result<(), LoadError> {
        let h = want_words(&b.header, 2, "cdga NAME")?;
        let mut basis = Vec::new();
        let mut unit: Option<(usize, String)> = None;
        let mut rest = Vec::new();
        for line in &b.body {
            let w = line.words();
            match w[0].1 {
                "basis" => {
                    if !rest.is_empty() {
                        return parse_err(line.no, w[0].0, "basis lines must come before products and differentials");
                    }
                    Self::basis_line(line, &mut basis, None)?
                }
                "unit" => {
                    let w = want_words(line, 2, "unit LABEL")?;
                    unit = Some((line.no, w[1].1.to_string()));
                }
                "product" | "d" => rest.push(line.clone()),
                other => return parse_err(line.no, w[0].0, format!("unknown cdga statement `{other}`")),
            }
        }
        let Some((unit_line, unit)) = unit else {
            return invalid(b.header.no, 1, "cdga needs a `unit` line");
        };
        let space = GradedVectorSpace::new(basis.clone()).map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        if space.index_of(&unit).is_none() {
            return parse_err(unit_line, 6, format!("unknown basis element `{unit}`"));
        }
        let mut products = Vec::new();
        let mut diff = Vec::new();
        for line in &rest {
            let w = line.words();
            let label = |x: (usize, &str)| -> Result<usize, LoadError> {
                space.index_of(x.1).ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: x.0, message: format!("unknown basis element `{}`", x.1) })
            };
            let (col, rhs) = line.after('=').ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: line.end_col(), message: "expected `=`".into() })?;
            let v = expr::eval_vec(&expr::parse(rhs, col).map_err(|e| from_expr(line.no, e))?, &space).map_err(|e| from_expr(line.no, e))?;
            if w[0].1 == "product" {
                if w.len() < 6 || w[2].1 != "*" || w[4].1 != "=" {
                    return parse_err(line.no, w[0].0, "usage: product A * B = EXPRESSION");
                }
                products.push(((label(w[1])?, label(w[3])?), v));
            } else {
                if w.len() < 4 || w[2].1 != "=" {
                    return parse_err(line.no, w[0].0, "usage: d A = EXPRESSION");
                }
                diff.push((label(w[1])?, v));
            }
        }
        let c = Cdga::new(basis, &unit, products, diff).map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        self.declare(&b.header, h[1].0, h[1].1, Object::Cdga(Arc::new(c)))
    }

    fn action_block(&mut self, b: &Block) -> Result<(), LoadError> {
        let h = want_words(&b.header, 6, "action NAME on TARGET by GROUP")?;
        if h[2].1 != "on" || h[4].1 != "by" {
            return parse_err(b.header.no, h[2].0, "usage: action NAME on TARGET by GROUP");
        }
        let group = match self.lookup(&b.header, h[5], &["group"])? {
            Object::Group(g) => g.clone(),
            _ => unreachable!(),
        };
        let target = self.lookup(&b.header, h[3], &["lie", "linf", "cdga"])?.clone();
        let space = match &target {
            Object::Lie { lie, .. } => GradedVectorSpace::new(lie.generators().iter().map(|g| (g.name.clone(), g.degree))),
            Object::Linf(l) => Ok(l.space().clone()),
            Object::Cdga(c) => Ok(c.space().clone()),
            _ => unreachable!(),
        }
        .map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: h[3].0, message: e.to_string() })?;
        let mut gens = Vec::new();
        for line in &b.body {
            let w = line.words();
            if w[0].1 != "element" {
                return parse_err(line.no, w[0].0, format!("unknown action statement `{}`", w[0].1));
            }
            let Some((col, maps)) = line.after(':') else {
                return parse_err(line.no, line.end_col(), "usage: element NAME: A -> EXPRESSION; B -> EXPRESSION");
            };
            let name: String = line.text.chars().skip(w[0].0 - 1 + "element".len()).take(col - 2 - (w[0].0 - 1 + "element".len())).collect();
            let name = name.trim();
            let g = group.element(name).ok_or_else(|| LoadError {
                kind: ErrorKind::Parse,
                line: line.no,
                col: w.get(1).map(|x| x.0).unwrap_or(col),
                message: format!("`{name}` is not an element of `{}`", h[5].1),
            })?;
            let mut m = QMatrix::identity(space.dim());
            let mut offset = col;
            for part in maps.split(';') {
                let lead = part.chars().take_while(|c| c.is_whitespace()).count();
                let here = offset + lead;
                let Some((src, img)) = part.split_once("->") else {
                    return parse_err(line.no, here, "expected `SOURCE -> EXPRESSION`");
                };
                let src = src.trim();
                let i = space.index_of(src).ok_or_else(|| LoadError { kind: ErrorKind::Parse, line: line.no, col: here, message: format!("unknown basis element `{src}`") })?;
                let img_col = offset + part.find("->").map(|b| part[..b].chars().count()).unwrap() + 2;
                let v = expr::eval_vec(&expr::parse(img, img_col).map_err(|e| from_expr(line.no, e))?, &space).map_err(|e| from_expr(line.no, e))?;
                for r in 0..space.dim() {
                    m.set(r, i, v.get(&r).cloned().unwrap_or_default());
                }
                offset += part.chars().count() + 1;
            }
            gens.push((g, m));
        }
        let bad = |e: kappa_core::Error| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() };
        let act = if gens.is_empty() {
            GroupAction::trivial(group, space.dim())
        } else {
            GroupAction::from_generators(group, space.dim(), &gens).map_err(bad)?
        };
        let action = match target {
            Object::Lie { lie, differential } => {
                let la = LieGroupAction::new(&lie, act).map_err(bad)?;
                if let Some(d) = &differential {
                    for gen in lie.generators() {
                        let x = kappa_core::freelie::generator(&lie, &gen.name).map_err(bad)?;
                        for g in 0..la.group().order() {
                            let lhs = la.apply(g, &d.apply(&x).map_err(bad)?).map_err(bad)?;
                            let rhs = d.apply(&la.apply(g, &x).map_err(bad)?).map_err(bad)?;
                            if lhs.terms() != rhs.terms() {
                                return invalid(b.header.no, 1, format!("action of {} does not commute with d on {}", la.group().name(g), gen.name));
                            }
                        }
                    }
                }
                ActionTarget::Lie(la)
            }
            Object::Linf(_) => ActionTarget::Linf(act),
            Object::Cdga(c) => ActionTarget::Cdga(GCdga::new((*c).clone(), act).map_err(bad)?),
            _ => unreachable!(),
        };
        let a = Action { target: h[3].1.to_string(), group: h[5].1.to_string(), action };
        self.declare(&b.header, h[1].0, h[1].1, Object::Action(a))
    }

    fn datum_block(&mut self, b: &Block) -> Result<(), LoadError> {
        let h = want_words(&b.header, 2, "datum NAME")?;
        let mut n: Option<usize> = None;
        let mut source: Option<Lie> = None;
        let mut images = Vec::new();
        let mut provenance = String::new();
        for line in &b.body {
            let w = line.words();
            match w[0].1 {
                "n" => {
                    let w = want_words(line, 2, "n N")?;
                    let v: usize = int(line, w[1], "a positive integer")?;
                    if v == 0 {
                        return invalid(line.no, w[1].0, "n must be at least 1");
                    }
                    n = Some(v);
                }
                "source" => {
                    let w = want_words(line, 2, "source LIE")?;
                    source = Some(self.lie(line, w[1])?);
                }
                "image" => {
                    if w.len() < 4 || w[2].1 != "=" {
                        return parse_err(line.no, w[0].0, "usage: image GENERATOR = TENSOR");
                    }
                    let (col, rhs) = line.after('=').unwrap();
                    images.push((line.clone(), w[1].0, w[1].1.to_string(), expr::parse(rhs, col).map_err(|e| from_expr(line.no, e))?));
                }
                "provenance" => {
                    provenance = line.text.trim_start()["provenance".len()..].trim().to_string();
                }
                other => return parse_err(line.no, w[0].0, format!("unknown datum statement `{other}`")),
            }
        }
        let (Some(n), Some(source)) = (n, source) else {
            return invalid(b.header.no, 1, "datum needs `n` and `source` lines");
        };
        let model = target_model(&source, n).map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        let mut imgs = Vec::new();
        for (line, col, g, e) in &images {
            if source.generator_index(g).is_err() {
                return parse_err(line.no, *col, format!("unknown generator `{g}`"));
            }
            if imgs.iter().any(|(x, _)| x == g) {
                return parse_err(line.no, *col, format!("image of `{g}` given twice"));
            }
            imgs.push((g.clone(), expr::eval_tensor(e, &model).map_err(|x| from_expr(line.no, x))?));
        }
        let d = CoalgebraDatum::new(n, &source, imgs, &provenance).map_err(|e| LoadError { kind: ErrorKind::Validation, line: b.header.no, col: 1, message: e.to_string() })?;
        self.declare(&b.header, h[1].0, h[1].1, Object::Datum(d))
    }
}

/// Parses and builds a workspace.
pub fn load(text: &str, overrides: &CapOverrides) -> Result<Workspace, LoadError> {
    let (items, weight, arity) = split(text)?;
    let caps = overrides.resolve(weight, arity);
    if caps.weight == 0 || caps.arity == 0 {
        return invalid(1, 1, "caps must be positive");
    }
    let mut l = Loader { caps, objects: BTreeMap::new(), order: Vec::new(), jobs: Vec::new() };
    for item in &items {
        match item {
            Item::Single(line) => l.single(line)?,
            Item::Block(b) => l.block(b)?,
        }
    }
    Ok(Workspace { caps, objects: l.objects, order: l.order, jobs: l.jobs })
}
