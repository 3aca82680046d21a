use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fcheaps::coxeter::{enumerate_fc, CoxeterSpec, Family, Word};
use fcheaps::decorated::theta_tilde_with_scalar;
use fcheaps::decoration::dec;
use fcheaps::inverse::invert;
use fcheaps::json::{
    dec_diagram_from_json, diagram_from_json, heap_from_json, DecDiagramJson, DiagramJson, HeapJson,
};
use fcheaps::reduction::reduce;
use fcheaps::render;
use fcheaps::tl::Diagram;
use fcheaps::verify::{self, Suite, VerifyConfig};
use fcheaps::{Error, Heap};

#[derive(Parser)]
#[command(
    name = "fcheaps",
    version,
    about = "Fully commutative heaps and decorated Temperley-Lieb diagrams"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    #[value(name = "A")]
    A,
    #[value(name = "Ctilde")]
    Ctilde,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Svg,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long = "type", value_enum, default_value = "Ctilde")]
    ty: TypeArg,
    #[arg(long)]
    n: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<CoxeterSpec, Error> {
        let family = match self.ty {
            TypeArg::A => Family::TypeA,
            TypeArg::Ctilde => Family::TypeCtilde,
        };
        CoxeterSpec::new(family, self.n)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// List every FC heap up to a length bound, one record per line.
    Enumerate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the family tag of a C~ heap.
    Classify { input: Option<PathBuf> },
    /// Fork-eliminate a heap: the reduced type-A heap and del.
    Reduce { input: Option<PathBuf> },
    /// The decorated diagram dec(H).
    Decorate { input: Option<PathBuf> },
    /// Fold of simple (decorated) diagrams along a word such as "1 2 1".
    Theta {
        word: String,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// The FC heap whose decorated diagram is the input.
    Invert { input: Option<PathBuf> },
    /// Run a property suite, or all suites applicable to the type.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Draw a heap or diagram.
    Render {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long, conflicts_with_all = ["svg", "format"])]
        ascii: bool,
        #[arg(long, conflicts_with_all = ["ascii", "format"])]
        svg: bool,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Resource(_) => (3, "resource"),
            Error::Input(_) | Error::Serde(_) | Error::NotFc(_) | Error::Diagram(_) => (2, "input"),
            Error::NotAdmissible(_) => (1, "not-admissible"),
            Error::Classification(_) | Error::Scalar(_) | Error::Snake(_) => (1, "property"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p)
                .map_err(|e| Error::input(format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::input(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn parse_word(spec: CoxeterSpec, s: &str) -> Result<Word, Error> {
    let letters = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u8>()
                .map_err(|_| Error::input(format!("bad letter {t:?}")))
        })
        .collect::<Result<Vec<u8>, Error>>()?;
    Word::new(spec, letters)
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

enum Drawable {
    Heap(Heap),
    Diagram(Diagram),
    Decorated(fcheaps::decorated::DecDiagram),
}

fn read_drawable(text: &str) -> Result<Drawable, Error> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("vertices").is_some() {
        Ok(Drawable::Heap(heap_from_json(text)?))
    } else if v.get("edges").is_some() {
        Ok(Drawable::Decorated(dec_diagram_from_json(text)?))
    } else {
        Ok(Drawable::Diagram(diagram_from_json(text)?))
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.cmd {
        Cmd::Enumerate {
            spec,
            max_len,
            format,
        } => {
            let spec = spec.spec()?;
            let mut out = String::new();
            for h in enumerate_fc(spec, max_len)? {
                match format {
                    Format::Json => out.push_str(&to_json(&HeapJson::from(&h))),
                    Format::Ascii => out.push_str(&render::heap_ascii(&h)),
                    Format::Svg => out.push_str(&render::heap_svg(&h)?),
                }
                out.push('\n');
            }
            Ok((out, 0))
        }
        Cmd::Classify { input } => {
            let h = heap_from_json(&read_input(&input)?)?;
            Ok((format!("{}\n", h.classify_family()?), 0))
        }
        Cmd::Reduce { input } => {
            let h = heap_from_json(&read_input(&input)?)?;
            let (tau, del) = reduce(&h)?;
            let rec = json!({ "reduced": HeapJson::from(&tau), "del": del });
            Ok((format!("{rec}\n"), 0))
        }
        Cmd::Decorate { input } => {
            let h = heap_from_json(&read_input(&input)?)?;
            Ok((
                format!("{}\n", to_json(&DecDiagramJson::from(&dec(&h)?))),
                0,
            ))
        }
        Cmd::Theta { word, spec } => {
            let spec = spec.spec()?;
            let w = parse_word(spec, &word)?;
            let out = match spec.family {
                Family::TypeA => {
                    to_json(&DiagramJson::from(&Diagram::of_word(spec.k(), &w.letters)))
                }
                Family::TypeCtilde => {
                    let (s, d) = theta_tilde_with_scalar(&w)?;
                    let d = DecDiagramJson::from(&d);
                    if s.is_one() {
                        to_json(&d)
                    } else {
                        json!({ "scalar": s.to_string(), "diagram": d }).to_string()
                    }
                }
            };
            Ok((format!("{out}\n"), 0))
        }
        Cmd::Invert { input } => {
            let d = dec_diagram_from_json(&read_input(&input)?)?;
            Ok((format!("{}\n", to_json(&HeapJson::from(&invert(&d)?))), 0))
        }
        Cmd::Verify {
            spec,
            max_len,
            suite,
            seed,
            bound,
            format,
        } => {
            let spec = spec.spec()?;
            let mut cfg = VerifyConfig::new(spec, max_len);
            cfg.seed = seed;
            if let Some(b) = bound {
                cfg.bound = b;
            }
            let suites: Vec<Suite> = match suite.as_deref() {
                Some(s) => vec![s.parse()?],
                None if spec.family == Family::TypeA => vec![Suite::Relations, Suite::Catalan],
                None => Suite::ALL
                    .into_iter()
                    .filter(|&s| s != Suite::Catalan)
                    .collect(),
            };
            let mut out = String::new();
            let mut pass = true;
            for s in suites {
                let r = verify::run(s, &cfg)?;
                pass &= r.passed();
                match format {
                    Format::Json => out.push_str(&to_json(&r)),
                    _ => out.push_str(&format!(
                        "{} {}",
                        if r.passed() { "PASS" } else { "FAIL" },
                        r
                    )),
                }
                out.push('\n');
            }
            Ok((out, if pass { 0 } else { 1 }))
        }
        Cmd::Render {
            input,
            format,
            ascii,
            svg,
        } => {
            let format = if svg {
                Format::Svg
            } else if ascii {
                Format::Ascii
            } else {
                format
            };
            let item = read_drawable(&read_input(&input)?)?;
            let out = match (item, format) {
                (Drawable::Heap(h), Format::Svg) => render::heap_svg(&h)?,
                (Drawable::Heap(h), _) => render::heap_with_diagram_ascii(&h)?,
                (Drawable::Diagram(d), Format::Svg) => render::diagram_svg(&d),
                (Drawable::Diagram(d), _) => render::diagram_ascii(&d),
                (Drawable::Decorated(d), Format::Svg) => render::dec_diagram_svg(&d),
                (Drawable::Decorated(d), _) => render::dec_diagram_ascii(&d),
            };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!(
                "{}",
                json!({ "error": f.kind, "message": f.message, "exit": f.code })
            );
            ExitCode::from(f.code)
        }
    }
}
