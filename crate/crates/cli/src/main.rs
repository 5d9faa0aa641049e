use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncpoisson::dbracket::{self, builtins, BracketDef, JacobiC, Side};
use ncpoisson::integrable::{self, LaxPair};
use ncpoisson::ncalg::{AlgebraSignature, NCPoly, Word};
use ncpoisson::polyvec::{self, PolyVector};
use ncpoisson::repalg::{self, Coalgebra};
use ncpoisson::repn::{self, GramMethod, ModuliOptions, RepPoint};
use ncpoisson::report::{SweepReport, SCHEMA_VERSION};
use ncpoisson::text::{parse_element, DefinitionFile};
use ncpoisson::{Error, Result};

const THREADS_ENV: &str = "NCPOISSON_THREADS";

#[derive(Parser)]
#[command(name = "ncpoisson", version, about = "Exact checks for modified double Poisson brackets")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write `<PATH>` (JSON) and `<PATH>.txt` (text).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Worker threads; defaults to $NCPOISSON_THREADS, else 1.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Source {
    /// A definition file (.ncb) or a built-in name: kontsevich, free3_I,
    /// free3_II, skew_counterexample.
    #[arg(long, default_value = "kontsevich")]
    bracket: String,
    /// Which `[bracket NAME]` section to use; the first one by default.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum GramArg {
    Contraction,
    Direct,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weak skew-symmetry and the Loday-Jacobi identity on bounded words.
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 4)]
        skew_len: usize,
        /// Length bound for the first two Jacobi arguments.
        #[arg(long, default_value_t = 3)]
        jacobi_len: usize,
        /// Separate bound for the second argument.
        #[arg(long)]
        jacobi_len_b: Option<usize>,
        /// Run the third argument over words up to this length instead of generators.
        #[arg(long)]
        c_len: Option<usize>,
    },
    /// `{w, c} = 0` (right) or `{c, w} = 0` (left) for cyclic words `w`.
    Casimir {
        #[command(flatten)]
        src: Source,
        /// An element name from the file or an expression.
        #[arg(long, default_value = "c")]
        element: String,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// Also check at a random N×N point.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Jacobiator decomposition and the derivation defect of D1.
    Defect {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Partial trace of a bivector against a bracket.
    BivectorCheck {
        #[command(flatten)]
        src: Source,
        /// A `[polyvector NAME]` section; the built-in Kontsevich bivector otherwise.
        #[arg(long)]
        polyvector: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Dimensions of the moduli space, generic symplectic leaves and Casimir level sets.
    Moduli {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        max_word_len: usize,
        #[arg(long, default_value_t = 2)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Casimir element; `c` from the file or built-in when present.
        #[arg(long)]
        casimir: Option<String>,
        #[arg(long, value_enum, default_value = "contraction")]
        gram: GramArg,
        /// Expected `dim_inv,dim_leaf,casimir_codim`; a mismatch fails.
        #[arg(long, value_delimiter = ',')]
        expect: Option<Vec<usize>>,
    },
    /// Brackets `{φ(x)_ij, φ(y)_kl}` of matrix entries at a random point.
    RepBracket {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The N=2 invariant bracket table in trace coordinates t1..t8.
    TTable,
    /// Coalgebra laws for a `[coalgebra]` section or the comatrix coalgebra.
    CoalgebraCheck {
        /// Definition file holding the coalgebra.
        #[arg(long)]
        defs: Option<PathBuf>,
        #[arg(long)]
        coalgebra: Option<String>,
        #[arg(long)]
        comatrix: Option<usize>,
    },
    /// Representation-algebra bracket against matrix-entry brackets.
    CrosscheckRepalg {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The explicit flow against `{h, ·}`.
    FlowCheck {
        #[arg(long, default_value_t = integrable::FLOW_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = integrable::FLOW_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// `dL/dt = [L, M]` for the Lax pair, coefficient by coefficient.
    Lax {
        /// Definition file with a `[lax]` section; the built-in pair otherwise.
        #[arg(long)]
        defs: Option<PathBuf>,
    },
    /// Involutivity and conservation of the trace integrals, commuting flows.
    Commute {
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        flows_max: usize,
    },
    /// Spectral curve at a random N×N point, its Newton polygon and degree.
    Spectral {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the Newton polygon as JSON.
        #[arg(long)]
        emit_polygon: bool,
        /// Print the curve polynomial.
        #[arg(long)]
        emit_curve: bool,
        /// Also check that the coefficients are conserved by the flow.
        #[arg(long)]
        flow_check: bool,
    },
}

/// What a command produced: its JSON and text renderings and whether it passed.
struct Outcome {
    json: String,
    text: String,
    passed: bool,
}

impl Outcome {
    fn sweep(mut r: SweepReport, started: Option<Instant>) -> Self {
        if let Some(t) = started {
            r.set_elapsed(t.elapsed());
        }
        Self {
            json: r.to_json(),
            text: r.to_text(),
            passed: r.passed(),
        }
    }
}

struct Loaded {
    db: BracketDef,
    file: Option<DefinitionFile>,
}

impl Loaded {
    fn sig(&self) -> &Arc<AlgebraSignature> {
        self.db.sig()
    }

    /// A named element from the file, a built-in `h`/`c` on the Kontsevich
    /// algebra, or else an expression.
    fn element(&self, s: &str) -> Result<NCPoly> {
        if let Some(p) = self.file.as_ref().and_then(|f| f.elements.get(s)) {
            return Ok(p.clone());
        }
        if self.sig() == &builtins::kontsevich_sig() {
            match s {
                "h" => return Ok(builtins::kontsevich_h(self.sig())),
                "c" => return Ok(builtins::kontsevich_casimir(self.sig())),
                _ => {}
            }
        }
        parse_element(s, self.sig())
    }

    fn has_element(&self, s: &str) -> bool {
        self.file.as_ref().is_some_and(|f| f.elements.contains_key(s))
            || (self.file.is_none() && self.sig() == &builtins::kontsevich_sig())
    }
}

fn load(src: &Source) -> Result<Loaded> {
    let path = Path::new(&src.bracket);
    if !path.exists() {
        if let Some(db) = builtins::by_name(&src.bracket) {
            return Ok(Loaded { db, file: None });
        }
    }
    let file = DefinitionFile::load(path)?;
    let db = file.bracket(src.name.as_deref())?.clone();
    Ok(Loaded { db, file: Some(file) })
}

fn word(l: &Loaded, s: &str) -> Result<Word> {
    let p = l.element(s)?;
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(w, c)] if c.is_one() => Ok((*w).clone()),
        _ => Err(Error::Invalid(format!("`{s}` is not a single word"))),
    }
}

fn threads(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?,
            Err(_) => 1,
        },
    };
    if n == 0 {
        return Err(Error::Invalid("thread count must be positive".into()));
    }
    Ok(n)
}

fn run(cli: &Cli) -> Result<Outcome> {
    threads(cli.common.threads)?;
    let started = cli.common.timing.then(Instant::now);
    let sweep = |r| Ok(Outcome::sweep(r, started));
    match &cli.cmd {
        Cmd::Verify {
            src,
            skew_len,
            jacobi_len,
            jacobi_len_b,
            c_len,
        } => {
            let l = load(src)?;
            let c = c_len.map_or(JacobiC::Generators, JacobiC::Words);
            let mut r = dbracket::verify_axioms(&l.db, *skew_len, *jacobi_len, jacobi_len_b.unwrap_or(*jacobi_len), c);
            r.set_param("bracket", src.bracket.as_str());
            sweep(r)
        }
        Cmd::Casimir {
            src,
            element,
            max_len,
            side,
            dim,
            seed,
        } => {
            let l = load(src)?;
            let c = l.element(element)?;
            let side = match side {
                SideArg::Right => Side::Right,
                SideArg::Left => Side::Left,
            };
            let mut r = dbracket::casimir_check(&l.db, &c, *max_len, side);
            if let Some(n) = dim {
                let rep = RepPoint::random(l.sig(), *n, *seed, repn::DEFAULT_RANGE);
                r.absorb(repn::casimir_rep_check(&l.db, &rep, &c, *max_len)?);
                r.seed = Some(*seed);
            }
            sweep(r)
        }
        Cmd::Defect { src, max_len } => sweep(dbracket::defect_sweep(&load(src)?.db, *max_len)),
        Cmd::BivectorCheck { src, polyvector, max_len } => {
            let l = load(src)?;
            let p: PolyVector = match polyvector {
                Some(n) => l
                    .file
                    .as_ref()
                    .and_then(|f| f.polyvectors.get(n))
                    .cloned()
                    .ok_or_else(|| Error::Definition(format!("no polyvector named `{n}`")))?,
                None => polyvec::kontsevich_bivector(&builtins::kontsevich_sig()),
            };
            sweep(polyvec::verify_bivector(&p, &l.db, *max_len)?)
        }
        Cmd::Moduli {
            src,
            dim,
            max_word_len,
            samples,
            seed,
            casimir,
            gram,
            expect,
        } => {
            let l = load(src)?;
            let casimir = match casimir {
                Some(s) => Some(l.element(s)?),
                None if l.has_element("c") => Some(l.element("c")?),
                None => None,
            };
            let opts = ModuliOptions {
                max_word_len: *max_word_len,
                samples: *samples,
                seed: *seed,
                casimir,
                gram: match gram {
                    GramArg::Contraction => GramMethod::Contraction,
                    GramArg::Direct => GramMethod::Direct,
                },
                ..ModuliOptions::default()
            };
            let m = repn::moduli_dims(&l.db, *dim, &opts)?;
            let passed = m.stabilized
                && match expect.as_deref() {
                    None => true,
                    Some([a, b]) => (m.dim_inv, m.dim_leaf) == (*a, *b),
                    Some([a, b, c]) => (m.dim_inv, m.dim_leaf, m.casimir_codim) == (*a, *b, Some(*c)),
                    Some(_) => return Err(Error::Invalid("--expect takes two or three numbers".into())),
                };
            Ok(Outcome {
                json: m.to_json(),
                text: m.to_text(),
                passed,
            })
        }
        Cmd::RepBracket { src, dim, x, y, seed } => {
            let l = load(src)?;
            let (wx, wy) = (word(&l, x)?, word(&l, y)?);
            let rep = RepPoint::random(l.sig(), *dim, *seed, repn::DEFAULT_RANGE);
            let n = *dim;
            let mut rows = Vec::new();
            let mut text = format!("{{phi({x})_ij, phi({y})_kl}} at N={n}, seed {seed}\n");
            for i in 0..n {
                for j in 0..n {
                    let mut row = Vec::new();
                    for k in 0..n {
                        for m in 0..n {
                            row.push(repn::induced_bracket_point(&l.db, &rep, &wx, (i, j), &wy, (k, m))?);
                        }
                    }
                    text += &format!(
                        "  ({},{}): {}\n",
                        i + 1,
                        j + 1,
                        row.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
                    );
                    rows.push(row.iter().map(|r| Value::String(r.to_string())).collect::<Vec<_>>());
                }
            }
            let point: Vec<Value> = (0..l.sig().len())
                .map(|g| {
                    let m = rep.matrix(g);
                    json!({
                        "generator": l.sig().name(g),
                        "rows": (0..n).map(|i| (0..n).map(|j| m[(i, j)].to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "n": n,
                "seed": seed,
                "x": x,
                "y": y,
                "index_order": "rows (i,j), columns (k,l), row-major, 1-based in text",
                "brackets": rows,
                "point": point,
            });
            Ok(Outcome {
                json: serde_json::to_string_pretty(&v).expect("serializes"),
                text,
                passed: true,
            })
        }
        Cmd::TTable => sweep(repn::t_table_check()),
        Cmd::CoalgebraCheck { defs, coalgebra, comatrix } => {
            let co: Coalgebra = match (defs, comatrix) {
                (Some(p), None) => DefinitionFile::load(p)?.coalgebra(coalgebra.as_deref())?.clone(),
                (None, Some(n)) => repalg::comatrix_coalgebra(*n)?,
                (None, None) => repalg::comatrix_coalgebra(2)?,
                (Some(_), Some(_)) => return Err(Error::Invalid("use either --defs or --comatrix".into())),
            };
            let r = repalg::check_coalgebra(&co);
            let admissible = repalg::coalgebra_admissible(&r);
            let mut o = Outcome::sweep(r, started);
            let mut v: Value = serde_json::from_str(&o.json).expect("valid JSON");
            v["admissible"] = Value::Bool(admissible);
            o.json = serde_json::to_string_pretty(&v).expect("serializes");
            o.text += &format!("admissible (nu-symmetry in either form): {}\n", if admissible { "yes" } else { "no" });
            o.passed = admissible;
            Ok(o)
        }
        Cmd::CrosscheckRepalg { src, dim, max_len, seed } => {
            let l = load(src)?;
            let rep = RepPoint::random(l.sig(), *dim, *seed, repn::DEFAULT_RANGE);
            sweep(repalg::crosscheck_rep(&l.db, *dim, *max_len, &rep)?)
        }
        Cmd::FlowCheck { samples, max_len, seed } => sweep(integrable::hamiltonian_flow_check(*samples, *max_len, *seed)?),
        Cmd::Lax { defs } => match defs {
            Some(p) => {
                let f = DefinitionFile::load(p)?;
                let pair: &LaxPair = f
                    .lax
                    .as_ref()
                    .ok_or_else(|| Error::Definition("no [lax] section".into()))?;
                sweep(integrable::lax_residual_for(pair)?)
            }
            None => sweep(integrable::lax_residual()?),
        },
        Cmd::Commute { k_max, flows_max } => sweep(integrable::commutation_check(*k_max, *flows_max)?),
        Cmd::Spectral {
            dim,
            seed,
            emit_polygon,
            emit_curve,
            flow_check,
        } => {
            let c = integrable::spectral_curve(*dim, *seed)?;
            let mut v: Value = serde_json::from_str(&c.to_json()).expect("valid JSON");
            let mut text = c.to_text();
            if *emit_curve {
                v["curve"] = Value::String(c.curve_text());
                text += &format!("curve {}\n", c.curve_text());
            }
            if !*emit_polygon {
                if let Some(o) = v.as_object_mut() {
                    o.remove("polygon");
                }
                text = text.lines().filter(|l| !l.starts_with("polygon ")).map(|l| format!("{l}\n")).collect();
            }
            let mut passed = true;
            if *flow_check {
                let r = integrable::spectral_flow_invariance(*dim, *seed)?;
                passed = r.passed();
                text += &r.to_text();
                v["flow_check"] = serde_json::from_str(&r.to_json()).expect("valid JSON");
            }
            if let Some(t) = started {
                v["elapsed_ms"] = json!(t.elapsed().as_millis() as u64);
            }
            Ok(Outcome {
                json: serde_json::to_string_pretty(&v).expect("serializes"),
                text,
                passed,
            })
        }
    }
}

fn error_object(e: &Error) -> String {
    let kind = match e {
        Error::Syntax { .. } => "syntax",
        Error::UnknownIdentifier(_) => "unknown-identifier",
        Error::NonInvertibleInverse(_) => "non-invertible-inverse",
        Error::Definition(_) => "definition",
        _ => "invalid",
    };
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "kind": kind, "message": e.to_string() },
    });
    if let Error::Syntax { line, column, .. } = e {
        v["error"]["line"] = json!(line);
        v["error"]["column"] = json!(column);
    }
    serde_json::to_string_pretty(&v).expect("serializes")
}

fn write_outputs(path: &Path, o: &Outcome) -> std::io::Result<()> {
    std::fs::write(path, format!("{}\n", o.json))?;
    let mut txt = path.as_os_str().to_owned();
    txt.push(".txt");
    std::fs::write(PathBuf::from(txt), &o.text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if let Some(p) = &cli.common.out {
                if let Err(e) = write_outputs(p, &o) {
                    eprintln!("{}", error_object(&Error::Invalid(format!("cannot write {}: {e}", p.display()))));
                    return ExitCode::from(2);
                }
            }
            if cli.common.json {
                println!("{}", o.json);
            } else {
                print!("{}", o.text);
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let obj = error_object(&e);
            if cli.common.json {
                println!("{obj}");
            } else {
                eprintln!("{obj}");
            }
            ExitCode::from(2)
        }
    }
}
