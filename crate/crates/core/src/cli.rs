//! The `opcyl` command line.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cylinder::Cylinder;
use crate::error::{OpError, Result};
use crate::examples::presentations::build;
use crate::expr::{parse_element, parse_label, to_text};
use crate::json::{from_json, to_json};
use crate::latex::{to_latex, Form};
use crate::linear::{doubling, reversing, DoubleCylinder};
use crate::load::load_presentation;
use crate::presentation::{differential, DgOperad};
use crate::suspension::Suspended;
use crate::terms::Element;
use crate::verify::{self, default_presentation, plain_source, Bounds, SUITES};

pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "opcyl", version, about = "Cylinders of pseudo-cellular DG-operads")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Differential of an element.
    Diff(ElementArgs),
    /// Cylinder homotopy of an element of the cylinder.
    Homotopy(ElementArgs),
    /// Cylinder differential of a cylinder generator.
    CylDiff(GenArgs),
    /// Runs a verification suite.
    Verify(VerifyArgs),
    /// Doubling map into the double cylinder.
    Double(ElementArgs),
    /// Reversing map of the cylinder.
    Reverse(ElementArgs),
    /// Writes an element as JSON or LaTeX.
    Export(ElementArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Built-in name, `cyl:<name>`, `double:<name>` or a .json file.
    #[arg(long, short = 'p', default_value = "ainf")]
    pub presentation: String,
    /// Apply the operadic suspension to the named presentation.
    #[arg(long)]
    pub suspended: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// LaTeX layout.
    #[arg(long, value_enum, default_value_t = Layout::Auto)]
    pub layout: Layout,
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    #[command(flatten)]
    pub common: Common,
    /// Element expression.
    #[arg(long, short = 'e', conflicts_with = "json", required_unless_present = "json")]
    pub expr: Option<String>,
    /// Element JSON file, `-` for standard input.
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub common: Common,
    /// Generator, e.g. `sigma mu_3`.
    #[arg(long, short = 'g')]
    pub gen: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    pub suite: String,
    /// Defaults depend on the suite.
    #[arg(long, short = 'p')]
    pub presentation: Option<String>,
    #[arg(long)]
    pub suspended: bool,
    #[arg(long, default_value_t = 4)]
    pub max_arity: usize,
    #[arg(long, default_value_t = 3)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random cases for the randomized suites.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Auto,
    Tree,
    Nested,
}

/// Builds the operad named on the command line. Suspension applies to the
/// innermost presentation.
pub fn operad(name: &str, suspended: bool) -> Result<Arc<dyn DgOperad>> {
    if let Some(rest) = name.strip_prefix("cyl:") {
        return Ok(Arc::new(Cylinder::new(plain_source(operad(rest, suspended)?))));
    }
    if let Some(rest) = name.strip_prefix("double:") {
        return Ok(Arc::new(DoubleCylinder::new(plain_source(operad(rest, suspended)?))));
    }
    let p: Arc<dyn DgOperad> = if name.ends_with(".json") || Path::new(name).is_file() {
        Arc::new(load_presentation(Path::new(name))?)
    } else {
        build(name)?
    };
    Ok(if suspended { Arc::new(Suspended::new(p)) } else { p })
}

fn render(p: &dyn DgOperad, e: &Element, c: &Common) -> String {
    match c.format {
        Format::Text => to_text(p, e),
        Format::Json => to_json(e),
        Format::Latex => {
            let form = match c.layout {
                Layout::Auto => Form::Auto,
                Layout::Tree => Form::Tree,
                Layout::Nested => Form::Nested,
            };
            to_latex(p, e, form)
        }
    }
}

fn read_element(p: &dyn DgOperad, a: &ElementArgs) -> Result<Element> {
    if let Some(s) = &a.expr {
        return parse_element(p, s);
    }
    let path = a.json.as_deref().unwrap_or("-");
    let src = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| OpError::Json(e.to_string()))?
    } else {
        std::fs::read_to_string(path).map_err(|e| OpError::Json(format!("{path}: {e}")))?
    };
    from_json(p, &src)
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(s: String) -> Outcome {
        Outcome { code: 0, stdout: s, stderr: String::new() }
    }
}

/// Parses `argv` (program name first) and runs the verb.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let mut text = e.render().to_string();
            if code != 0 && !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", <Cli as clap::CommandFactory>::command().render_usage()));
            }
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.verb) {
        Ok(o) => o,
        Err(e @ OpError::Parse { .. }) => {
            let usage = <Cli as clap::CommandFactory>::command().render_usage();
            Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n\n{usage}\n") }
        }
        Err(e) => Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(verb: Verb) -> Result<Outcome> {
    let line = |s: String| Outcome::ok(s + "\n");
    match verb {
        Verb::Diff(a) => {
            let p = operad(&a.common.presentation, a.common.suspended)?;
            let e = read_element(&*p, &a)?;
            Ok(line(render(&*p, &differential(&*p, &e)?, &a.common)))
        }
        Verb::Export(a) => {
            let p = operad(&a.common.presentation, a.common.suspended)?;
            let e = read_element(&*p, &a)?;
            Ok(line(render(&*p, &e, &a.common)))
        }
        Verb::Homotopy(a) => {
            let c = Cylinder::new(plain_source(operad(&a.common.presentation, a.common.suspended)?));
            let e = read_element(&c, &a)?;
            Ok(line(render(&c, &c.homotopy(&e)?, &a.common)))
        }
        Verb::CylDiff(a) => {
            let c = Cylinder::new(plain_source(operad(&a.common.presentation, a.common.suspended)?));
            let l = parse_label(&c, &a.gen)?;
            let g = l.cell().ok_or_else(|| OpError::Alphabet(a.gen.clone(), "base labels are cycles".into()))?;
            Ok(line(render(&c, &c.boundary(g)?, &a.common)))
        }
        Verb::Double(a) => {
            let p = plain_source(operad(&a.common.presentation, a.common.suspended)?);
            let c = Cylinder::new(p.clone());
            let e = read_element(&c, &a)?;
            let dc = DoubleCylinder::new(p.clone());
            Ok(line(render(&dc, &doubling(&*p, &e)?, &a.common)))
        }
        Verb::Reverse(a) => {
            let p = plain_source(operad(&a.common.presentation, a.common.suspended)?);
            let c = Cylinder::new(p.clone());
            let e = read_element(&c, &a)?;
            Ok(line(render(&c, &reversing(&*p, &e)?, &a.common)))
        }
        Verb::Verify(a) => {
            let name = a.presentation.clone().unwrap_or_else(|| default_presentation(&a.suite).to_string());
            let p = operad(&name, a.suspended)?;
            let b = Bounds { max_arity: a.max_arity, max_vertices: a.max_vertices, seed: a.seed, samples: a.samples };
            let r = verify::run(&a.suite, p, &b)?;
            let mut out = r.line() + "\n";
            if let Some(f) = &r.failure {
                out.push_str(&format!("counterexample: {}\nresidue: {}\n", f.what, f.residue));
            }
            Ok(Outcome { code: if r.passed() { 0 } else { EXIT_FAILED }, stdout: out, stderr: String::new() })
        }
    }
}
