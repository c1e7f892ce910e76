//! Run manifests: a two-column CSV recording what was run, on which inputs,
//! and whether the result is complete.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Default)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Vec<String>,
    /// `(path, sha256)` of every file read.
    pub inputs: Vec<(PathBuf, String)>,
    pub threads: u16,
    pub budget: Option<u64>,
    pub wall_time: Duration,
    pub complete: bool,
}

impl RunManifest {
    /// Reads a file and records its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push((path.to_path_buf(), hex::encode(Sha256::digest(&bytes))));
        String::from_utf8(bytes).map_err(|_| CliError::input(path, "not valid UTF-8"))
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        w.write_record(["key", "value"])?;
        w.write_record(["tool", env!("CARGO_PKG_NAME")])?;
        w.write_record(["version", env!("CARGO_PKG_VERSION")])?;
        w.write_record(["subcommand", &self.subcommand])?;
        w.write_record(["params", &self.params.join(" ")])?;
        w.write_record(["threads", &self.threads.to_string()])?;
        let budget = self.budget.map_or_else(|| "default".to_string(), |b| b.to_string());
        w.write_record(["budget", &budget])?;
        for (p, digest) in &self.inputs {
            w.write_record([format!("sha256:{}", p.display()), digest.clone()])?;
        }
        w.write_record(["wall_time_ms", &self.wall_time.as_millis().to_string()])?;
        w.write_record(["complete", &self.complete.to_string()])?;
        w.flush().map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_and_layout() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.txt");
        fs::write(&input, "abc").unwrap();
        let mut m = RunManifest { subcommand: "sieve".into(), threads: 1, complete: true, ..Default::default() };
        assert_eq!(m.read_input(&input).unwrap(), "abc");
        // sha256("abc")
        assert_eq!(m.inputs[0].1, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        let out = dir.path().join("m.csv");
        m.write(&out).unwrap();
        let text = fs::read_to_string(&out).unwrap();
        let keys: Vec<&str> = text.lines().map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(keys[..4], ["key", "tool", "version", "subcommand"]);
        assert!(text.ends_with("complete,true\n"));
    }
}
