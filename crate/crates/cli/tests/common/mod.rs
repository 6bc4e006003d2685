#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/corpus")
}

/// `kappa` with the cap variables cleared, run from `dir`.
pub fn kappa(dir: &Path) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kappa"));
    c.current_dir(dir).env_remove("KAPPA_WEIGHT_CAP").env_remove("KAPPA_ARITY_CAP");
    c
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}
pub mod oracle;
