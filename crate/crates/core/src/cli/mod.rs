//! The `sigma-product run` front end: parse a spec file, run its command,
//! print `key = value` lines.

pub mod lexer;
pub mod parser;
pub mod run;

use std::fmt;

use thiserror::Error;

pub use lexer::Pos;
pub use parser::{parse_spec, SpecDocument};
pub use run::{resolve_fin_set, resolve_measure, resolve_real_set, run_command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{pos}: {msg}")]
    Parse { pos: Pos, msg: String },
    #[error("{pos}: `{name}` is not declared")]
    Name { pos: Pos, name: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] crate::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Name { .. } => "NameError",
            CliError::Io(_) => "IoError",
            CliError::Lib(e) => e.kind(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// What to print and the exit code: 0 on success, 1 when a hypothesis is
/// violated, 2 on errors. Errors belong on stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    pub fn is_error(&self) -> bool {
        self.code == 2
    }
}

struct Rendered<'a>(&'a [(&'static str, String)], Format);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            Format::Text => {
                for (k, v) in self.0 {
                    writeln!(f, "{k} = {v}")?;
                }
                Ok(())
            }
            Format::Json => {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .0
                    .iter()
                    .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                    .collect();
                let text = serde_json::to_string_pretty(&serde_json::Value::Object(map))
                    .map_err(|_| fmt::Error)?;
                writeln!(f, "{text}")
            }
        }
    }
}

pub fn render_error(e: &CliError, format: Format) -> String {
    match format {
        Format::Text => format!("error: {}: {}\n", e.kind(), e),
        Format::Json => {
            let v = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("plain strings")
            )
        }
    }
}

pub fn run_source(text: &str, format: Format) -> Outcome {
    let report = parse_spec(text).and_then(|doc| run_command(&doc));
    match report {
        Ok(r) => Outcome {
            output: Rendered(&r.lines, format).to_string(),
            code: i32::from(r.violated),
        },
        Err(e) => Outcome {
            output: render_error(&e, format),
            code: 2,
        },
    }
}

pub fn run_file(path: &std::path::Path, format: Format) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_source(&text, format),
        Err(e) => Outcome {
            output: render_error(&CliError::Io(format!("{}: {e}", path.display())), format),
            code: 2,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Outcome {
        run_source(text, Format::Text)
    }

    #[test]
    fn product_of_finite_rectangle() {
        let out = run("measure L = lebesgue\nmeasure D = counting\n\
                       rect R = ([0,1] x {0, 1, 2})\ncmd product L D R");
        assert_eq!(out.output, "value = 3\nclass = finite\n");
        assert_eq!(out.code, 0);
    }

    #[test]
    fn fubini_violation_exits_one() {
        let out = run("fn f = ind(({0} x (-inf,inf)))\ncmd fubini lebesgue counting f");
        assert_eq!(
            out.output,
            "product = inf\niterated_sv = 0\niterated_ts = 0\n\
             verdict = hypothesis-violated\nreason = support is not sigma-finite\n"
        );
        assert_eq!(out.code, 1);
    }

    #[test]
    fn counting_on_progression() {
        let out = run("cmd eval counting prog(0,1)");
        assert_eq!(out.output, "value = inf\nclass = sigma-finite\n");
    }

    #[test]
    fn errors_are_single_lines() {
        let out = run("set A = [0,");
        assert_eq!(out.code, 2);
        assert!(out
            .output
            .starts_with("error: ParseError: line 1, column 9: "));
        assert_eq!(out.output.lines().count(), 1);
        let out = run("cmd eval component(counting) [0,1]");
        assert!(
            out.output.starts_with("error: NotMeasurable: "),
            "{}",
            out.output
        );
        let out = run("cmd eval lebesgue A");
        assert!(out.output.starts_with("error: NameError: "));
    }

    #[test]
    fn json_mirrors_text() {
        let out = run_source("cmd eval counting {0, 1, 2}", Format::Json);
        assert_eq!(
            out.output,
            "{\n  \"value\": \"3\",\n  \"class\": \"finite\"\n}\n"
        );
    }

    #[test]
    fn finite_grounds_use_labels() {
        let out = run("measure M = tabulated{a:inf, b:2}\ncmd component M {b}");
        assert_eq!(
            out.output,
            "measure = tabulated{b:2} on {a, b}\nvalue = 2\nclass = finite\n"
        );
        let out = run("measure M = tabulated{a:inf, b:2}\ncmd component M {a}");
        assert_eq!(out.code, 2);
    }
}
