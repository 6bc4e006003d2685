//! Built-in worked examples and their workspace export.

use crate::commands::{browder_report, hofixed_report, obstruct_report, CliError, DEFAULT_HOFIXED_DEGREES, DEFAULT_OBSTRUCT_DEGREES};
use crate::report::Report;
use crate::workspace::Caps;
use kappa_core::browder::{doubled, sigma3_cp2_datum, wedge_s5_s7_datum, CoalgebraDatum};
use kappa_core::equivariant::{FiniteGroup, LieGroupAction};
use kappa_core::freelie;
use kappa_core::mapmodel::cohomology_sphere_cdga;
use std::fmt::Write;

pub const DEMOS: [&str; 2] = ["sigma3-cp2", "wedge-s5-s7"];

pub struct Demo {
    pub name: &'static str,
    pub datum: CoalgebraDatum,
}

pub fn build(which: &str, caps: Caps) -> Result<Demo, CliError> {
    let core = |e: kappa_core::Error| CliError::Validation(e.to_string());
    match which {
        "sigma3-cp2" => Ok(Demo { name: "sigma3_cp2", datum: sigma3_cp2_datum(caps.weight).map_err(core)? }),
        "wedge-s5-s7" => Ok(Demo { name: "wedge_s5_s7", datum: wedge_s5_s7_datum(caps.weight).map_err(core)? }),
        other => Err(CliError::Usage(format!("unknown demo `{other}`; available: {}", DEMOS.join(", ")))),
    }
}

/// Browder values, the obstruction scan, and the invariant table of the target.
pub fn reports(demo: &Demo, caps: Caps) -> Result<Vec<Report>, CliError> {
    let core = |e: kappa_core::Error| CliError::Validation(e.to_string());
    let d = &demo.datum;
    let gens: Vec<_> = d.source().generators().iter().map(|g| freelie::generator(d.source(), &g.name).expect("generator")).collect();
    let sphere = cohomology_sphere_cdga(d.n()).map_err(core)?;
    let target = doubled(d.source()).map_err(core)?;
    let k = d.source().generators().len();
    let swap: Vec<usize> = (0..2 * k).map(|i| (i + k) % (2 * k)).collect();
    let act = LieGroupAction::by_generator_permutation(&target, FiniteGroup::symmetric(2), &[(0..2 * k).collect(), swap]).map_err(core)?;
    Ok(vec![
        browder_report(demo.name, d, &gens, caps)?,
        obstruct_report(demo.name, d, DEFAULT_OBSTRUCT_DEGREES, caps)?,
        hofixed_report("S", "swap", &sphere, &act, None, DEFAULT_HOFIXED_DEGREES, caps)?,
    ])
}

/// A workspace file whose jobs reproduce [`reports`].
pub fn export(demo: &Demo, caps: Caps) -> String {
    let d = &demo.datum;
    let mut s = String::new();
    writeln!(s, "# {}", d.provenance()).unwrap();
    writeln!(s, "weight-cap {}", caps.weight).unwrap();
    writeln!(s, "arity-cap {}", caps.arity).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "lie L").unwrap();
    for g in d.source().generators() {
        writeln!(s, "  gen {} {}", g.name, g.degree).unwrap();
    }
    writeln!(s, "end").unwrap();
    writeln!(s).unwrap();
    writeln!(s, "datum {}", demo.name).unwrap();
    writeln!(s, "  n {}", d.n()).unwrap();
    writeln!(s, "  source L").unwrap();
    for (g, img) in d.images() {
        writeln!(s, "  image {g} = {img}").unwrap();
    }
    writeln!(s, "  provenance {}", d.provenance()).unwrap();
    writeln!(s, "end").unwrap();
    writeln!(s).unwrap();
    writeln!(s, "sphere S {}", d.n()).unwrap();
    writeln!(s, "group G = symmetric 2").unwrap();
    writeln!(s, "product LL = L * L tags 1 2").unwrap();
    writeln!(s, "action swap on LL by G").unwrap();
    let maps: Vec<String> = d
        .source()
        .generators()
        .iter()
        .flat_map(|g| [format!("{0}1 -> {0}2", g.name), format!("{0}2 -> {0}1", g.name)])
        .collect();
    writeln!(s, "  element (1 2): {}", maps.join("; ")).unwrap();
    writeln!(s, "end").unwrap();
    writeln!(s).unwrap();
    writeln!(s, "job browder {}", demo.name).unwrap();
    writeln!(s, "job obstruct {} degrees {}..{}", demo.name, DEFAULT_OBSTRUCT_DEGREES.0, DEFAULT_OBSTRUCT_DEGREES.1).unwrap();
    writeln!(s, "job hofixed S swap degrees {}..{}", DEFAULT_HOFIXED_DEGREES.0, DEFAULT_HOFIXED_DEGREES.1).unwrap();
    s
}
