//! The `ualg` command line.
//!
//! Exit status: 0 on success, 1 when the answer is negative (no such map,
//! a counterexample, an unmet theorem precondition), 2 when the input could
//! not be read or validated.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::codec::{self, AlgebraRef, CongruenceDocument, HomDocument};
use crate::congruence::{check_congruence, kernel_congruence, quotient};
use crate::error::Error;
use crate::hom::{check_hom, compose_hom, image_algebra, search_homs, Hom, SearchOptions};
use crate::iso::find_iso;
use crate::signature::{product_algebra, Element, FiniteAlgebra};
use crate::subalg::{
    is_hom_image_of, is_hom_image_of_class, is_subalgebra_of, is_subalgebra_of_class, sg_closure,
    subuniv_algebra,
};
use crate::term::{interpret, parse_term, Environment, VarContext};
use crate::theorems::hom_factor;

#[derive(Parser, Debug)]
#[command(name = "ualg", version, about = "Computations with finite algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct JsonFlag {
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate an algebra and print a summary
    Inspect {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Evaluate a term at an assignment of its variables
    Eval {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, default_value = "")]
        env: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// The subuniverse generated by a set
    Sg {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// The quotient by a congruence
    Quotient {
        #[arg(long)]
        congruence: PathBuf,
    },
    /// The kernel of a homomorphism as a congruence
    Kernel {
        #[arg(long)]
        hom: PathBuf,
    },
    /// Enumerate homomorphisms
    Homs {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        injective: bool,
        #[arg(long)]
        surjective: bool,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Decide isomorphism
    Iso {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// The direct product of the given algebras
    Product {
        #[arg(long = "algebra", required = true)]
        algebras: Vec<PathBuf>,
    },
    /// Factor g through a surjection h: pass `--hom G --hom H`
    Factor {
        #[arg(long = "hom", num_args = 1, required = true)]
        homs: Vec<PathBuf>,
        /// Require g surjective and classify the factor as surjective
        #[arg(long)]
        epi: bool,
    },
    /// Decide whether LEFT is a subalgebra of RIGHT (or of a class member)
    Subalg {
        #[arg(long)]
        left: PathBuf,
        #[arg(long, conflicts_with = "class")]
        right: Option<PathBuf>,
        #[arg(long)]
        class: Option<PathBuf>,
    },
    /// The image of a homomorphism, or whether LEFT is a homomorphic image
    /// of RIGHT (or of a class member)
    Image {
        #[arg(long, conflicts_with_all = ["left", "right", "class"])]
        hom: Option<PathBuf>,
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long, conflicts_with = "class")]
        right: Option<PathBuf>,
        #[arg(long)]
        class: Option<PathBuf>,
    },
    /// Run the law batteries against an algebra
    Verify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Outcome of a command other than plain success.
enum Failure {
    /// A negative answer; the message goes to stdout.
    Negative(String),
    /// A witness-carrying error (exit 1) or an input error (exit 2).
    Error(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Arc<FiniteAlgebra>, Failure> {
    Ok(Arc::new(codec::parse_algebra(&read(path)?)?))
}

fn resolve(r: &AlgebraRef, base: &Path) -> Result<Arc<FiniteAlgebra>, Failure> {
    match r {
        AlgebraRef::Path(p) => load_algebra(&base.join(p)),
        AlgebraRef::Inline(a) => Ok(Arc::new((**a).clone())),
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Loads a hom document and verifies it.
fn load_hom(path: &Path) -> Result<(HomDocument, Hom), Failure> {
    let doc = codec::parse_hom_document(&read(path)?)?;
    let base = base_dir(path);
    let a = resolve(&doc.domain, &base)?;
    let b = resolve(&doc.codomain, &base)?;
    let h = check_hom(&a, &b, doc.map.clone())?;
    Ok((doc, h))
}

fn load_class(path: &Path) -> Result<(Vec<AlgebraRef>, Vec<Arc<FiniteAlgebra>>), Failure> {
    let doc = codec::parse_class_document(&read(path)?)?;
    let base = base_dir(path);
    let algebras = doc
        .algebras
        .iter()
        .map(|r| resolve(r, &base))
        .collect::<Result<_, _>>()?;
    Ok((doc.algebras, algebras))
}

fn parse_list(text: &str) -> Result<Vec<Element>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| {
                Failure::Error(Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("`{s}` is not an element"),
                })
            })
        })
        .collect()
}

fn comma(items: &[Element]) -> String {
    items
        .iter()
        .map(Element::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn json_list(items: &[Element]) -> String {
    format!(
        "[{}]",
        items
            .iter()
            .map(Element::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn path_ref(p: &Path) -> AlgebraRef {
    AlgebraRef::Path(p.display().to_string())
}

fn hom_doc(domain: AlgebraRef, codomain: AlgebraRef, h: &Hom) -> String {
    codec::serialize_hom_document(&HomDocument {
        domain,
        codomain,
        map: h.map().to_vec(),
    })
}

fn execute(cmd: Command) -> CmdResult {
    match cmd {
        Command::Inspect { algebra, out } => {
            let a = load_algebra(&algebra)?;
            if out.json {
                return Ok(codec::serialize_algebra(&a));
            }
            let mut s = String::new();
            if let Some(n) = a.name() {
                s.push_str(&format!("name: {n}\n"));
            }
            s.push_str(&format!("size: {}\n", a.size()));
            let syms: Vec<String> = a
                .signature()
                .symbols()
                .iter()
                .map(|sym| format!("{}/{}", sym.name, sym.arity))
                .collect();
            s.push_str(&format!("symbols: {}\n", syms.join(" ")));
            Ok(s)
        }
        Command::Eval {
            algebra,
            term,
            env,
            out,
        } => {
            let a = load_algebra(&algebra)?;
            let assignment = parse_list(&env)?;
            let t = parse_term(
                &term,
                a.signature(),
                VarContext {
                    nvars: assignment.len(),
                },
            )?;
            let v = interpret(&t, &Environment::new(&a, assignment)?)?;
            Ok(if out.json {
                format!("{{\"value\": {v}}}\n")
            } else {
                format!("{v}\n")
            })
        }
        Command::Sg { algebra, set, out } => {
            let a = load_algebra(&algebra)?;
            let s = sg_closure(&a, &parse_list(&set)?)?;
            Ok(if out.json {
                format!("{{\"members\": {}}}\n", json_list(s.members()))
            } else {
                format!("{}\n", comma(s.members()))
            })
        }
        Command::Quotient { congruence } => {
            let doc = codec::parse_congruence_document(&read(&congruence)?)?;
            let a = resolve(&doc.algebra, &base_dir(&congruence))?;
            let theta = check_congruence(&a, &doc.blocks)?;
            let q = quotient(&a, &theta)?;
            Ok(codec::serialize_algebra(&q.algebra))
        }
        Command::Kernel { hom } => {
            let (doc, h) = load_hom(&hom)?;
            let k = kernel_congruence(&h)?;
            Ok(codec::serialize_congruence_document(&CongruenceDocument {
                algebra: doc.domain,
                blocks: k.blocks(),
            }))
        }
        Command::Homs {
            from,
            to,
            count,
            limit,
            injective,
            surjective,
            out,
        } => {
            let a = load_algebra(&from)?;
            let b = load_algebra(&to)?;
            let opts = SearchOptions {
                limit,
                require_injective: injective,
                require_surjective: surjective,
                ..Default::default()
            };
            let homs = search_homs(&a, &b, &opts)?;
            Ok(match (count, out.json) {
                (true, false) => format!("{}\n", homs.len()),
                (true, true) => format!("{{\"count\": {}}}\n", homs.len()),
                (false, false) => homs
                    .iter()
                    .map(|h| format!("{}\n", comma(h.map())))
                    .collect(),
                (false, true) => {
                    let maps: Vec<String> = homs.iter().map(|h| json_list(h.map())).collect();
                    format!("{{\"maps\": [{}]}}\n", maps.join(", "))
                }
            })
        }
        Command::Iso { left, right } => {
            let a = load_algebra(&left)?;
            let b = load_algebra(&right)?;
            match find_iso(&a, &b) {
                Some(iso) => Ok(hom_doc(path_ref(&left), path_ref(&right), &iso.forward)),
                None => Err(Failure::Negative("none\n".into())),
            }
        }
        Command::Product { algebras } => {
            let family = algebras
                .iter()
                .map(|p| load_algebra(p))
                .collect::<Result<Vec<_>, _>>()?;
            let p = product_algebra(&family)?;
            Ok(codec::serialize_algebra(&p.algebra))
        }
        Command::Factor { homs, epi } => {
            let [g_path, h_path] = homs.as_slice() else {
                return Err(Failure::Io(
                    "factor takes exactly two --hom arguments: g then h".into(),
                ));
            };
            let (g_doc, g) = load_hom(g_path)?;
            let (h_doc, h) = load_hom(h_path)?;
            let phi = hom_factor(&g, &h, epi)?;
            Ok(hom_doc(h_doc.codomain, g_doc.codomain, &phi))
        }
        Command::Subalg { left, right, class } => {
            let b = load_algebra(&left)?;
            match (right, class) {
                (Some(right), _) => {
                    let a = load_algebra(&right)?;
                    match is_subalgebra_of(&b, &a)? {
                        Some(w) => Ok(hom_doc(path_ref(&left), path_ref(&right), &w.embedding)),
                        None => Err(Failure::Negative("none\n".into())),
                    }
                }
                (None, Some(class)) => {
                    let (refs, members) = load_class(&class)?;
                    let q = is_subalgebra_of_class(&b, &members)?;
                    match q.witness {
                        Some(w) => {
                            let (_, inclusion) = subuniv_algebra(&w.subuniverse)?;
                            let emb = compose_hom(&w.iso.forward, &inclusion.embedding)?;
                            Ok(hom_doc(path_ref(&left), refs[w.member_index].clone(), &emb))
                        }
                        None if q.exhaustive => Err(Failure::Negative("none\n".into())),
                        None => Err(Failure::Negative(
                            "none (search not exhaustive for members larger than 4)\n".into(),
                        )),
                    }
                }
                (None, None) => Err(Failure::Io("subalg needs --right or --class".into())),
            }
        }
        Command::Image {
            hom,
            left,
            right,
            class,
        } => match (hom, left, right, class) {
            (Some(hom), ..) => {
                let (_, h) = load_hom(&hom)?;
                let img = image_algebra(&h)?;
                Ok(codec::serialize_algebra(&img.algebra))
            }
            (None, Some(left), Some(right), _) => {
                let b = load_algebra(&left)?;
                let a = load_algebra(&right)?;
                match is_hom_image_of(&b, &a)? {
                    Some(h) => Ok(hom_doc(path_ref(&right), path_ref(&left), &h)),
                    None => Err(Failure::Negative("none\n".into())),
                }
            }
            (None, Some(left), None, Some(class)) => {
                let b = load_algebra(&left)?;
                let (refs, members) = load_class(&class)?;
                match is_hom_image_of_class(&b, &members)? {
                    Some((i, h)) => Ok(hom_doc(refs[i].clone(), path_ref(&left), &h)),
                    None => Err(Failure::Negative("none\n".into())),
                }
            }
            _ => Err(Failure::Io(
                "image needs --hom, or --left with --right or --class".into(),
            )),
        },
        Command::Verify {
            algebra,
            seed,
            samples,
        } => {
            let a = load_algebra(&algebra)?;
            let reports = crate::laws::verify_algebra(&a, seed, samples);
            let mut s = format!("seed: {seed}\n");
            for r in &reports {
                if r.skipped {
                    s.push_str(&format!("SKIP {} (carrier too large)\n", r.name));
                } else if let Some(f) = &r.failure {
                    s.push_str(&format!("FAIL {}: {f}\n", r.name));
                } else {
                    s.push_str(&format!("PASS {} ({} instances)\n", r.name, r.instances));
                }
            }
            if reports.iter().all(|r| r.passed()) {
                Ok(s)
            } else {
                Err(Failure::Negative(s))
            }
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Negative(text)) => {
            let _ = out.write_all(text.as_bytes());
            1
        }
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_witness() {
                1
            } else {
                2
            }
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
