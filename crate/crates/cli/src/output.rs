//! File plumbing: atomic writes, run manifests, and the machine-readable
//! error channel.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde::Serialize;

/// Everything needed to reproduce one invocation, written as
/// `manifest.json` next to each output set.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// Subcommand name.
    pub command: String,
    /// Input measure file, if the command read one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_path: Option<String>,
    /// Directory the outputs were written to.
    pub output_dir: String,
    /// Flat flag map, exactly as resolved on the command line.
    pub params: BTreeMap<String, String>,
    /// Version of this binary.
    pub tool_version: String,
    /// Base RNG seed, for seeded commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str, out_dir: &Path) -> Self {
        RunManifest {
            command: command.to_string(),
            input_path: None,
            output_dir: out_dir.display().to_string(),
            params: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
        }
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.input_path = Some(path.display().to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let mut text =
            serde_json::to_string_pretty(self).expect("manifest serialization");
        text.push('\n');
        atomic_write(&dir.join("manifest.json"), text.as_bytes())
            .map_err(CliError::from)
    }
}

/// Write through a sibling temp file and rename, so readers never observe a
/// half-written output.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp: PathBuf = match path.file_name() {
        Some(name) => {
            let mut n = name.to_os_string();
            n.push(format!(".tmp.{}", std::process::id()));
            path.with_file_name(n)
        }
        None => return Err(io::Error::other("output path has no file name")),
    };
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

/// One failure, already classified for the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Library error; numeric kinds exit 3, the rest 2.
    Core(chargesweep_core::Error),
    /// Command-line or file-content problem.
    Input(String),
    /// Filesystem failure.
    Io(io::Error),
}

impl From<chargesweep_core::Error> for CliError {
    fn from(e: chargesweep_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Input(_) => "input_invalid",
            CliError::Io(_) => "io_error",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Input(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }

    /// Exit 3 for numeric failures (quadrature cap, hypothesis violations,
    /// ineligible sweeps), 2 for anything wrong with the inputs.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(e) if e.is_numeric() => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }

    /// Emit the single-line error JSON `{code, message, context}` on stderr.
    pub fn report(&self, command: &str, input: Option<&Path>) {
        #[derive(Serialize)]
        struct ErrorJson<'a> {
            code: &'a str,
            message: String,
            context: BTreeMap<&'a str, String>,
        }
        let mut context = BTreeMap::new();
        context.insert("command", command.to_string());
        if let Some(p) = input {
            context.insert("input", p.display().to_string());
        }
        let json = ErrorJson { code: self.code(), message: self.message(), context };
        eprintln!("{}", serde_json::to_string(&json).expect("error serialization"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_content() {
        let dir = std::env::temp_dir().join(format!("chargesweep-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.txt");
        atomic_write(&path, b"first").unwrap();
        atomic_write(&path, b"second").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"second");
        assert!(fs::read_dir(&dir).unwrap().count() == 1, "temp file left behind");
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn manifest_serializes_deterministically() {
        let m = RunManifest::new("harness", Path::new("out"))
            .seed(7)
            .param("b", 2)
            .param("a", 1);
        let text = serde_json::to_string(&m).unwrap();
        let again = serde_json::to_string(
            &RunManifest::new("harness", Path::new("out"))
                .seed(7)
                .param("a", 1)
                .param("b", 2),
        )
        .unwrap();
        assert_eq!(text, again);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        let numeric = CliError::Core(chargesweep_core::Error::Hypothesis("x".into()));
        assert_eq!(numeric.exit_code(), ExitCode::from(3));
        let input = CliError::Input("bad flag".into());
        assert_eq!(input.exit_code(), ExitCode::from(2));
    }
}
