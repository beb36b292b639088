use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tensor_recon::associator::extend;
use tensor_recon::blockmat::BlockMatrix;
use tensor_recon::category::Quadruple;
use tensor_recon::equivalence::{apply_functor, check_eta_equiv, check_tensor_equiv};
use tensor_recon::fusion::format_ring_element;
use tensor_recon::h4::{build_h4, build_vec_z2, build_vec_z2_broken};
use tensor_recon::io;
use tensor_recon::{Error, Field, FieldKind, Fp, Obj, Rational, Report};

/// `println!` that stops quietly when the reader goes away, as in `| head`.
macro_rules! out {
    ($($arg:tt)*) => {
        write_stdout(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn write_stdout(args: std::fmt::Arguments) {
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

#[derive(Parser)]
#[command(
    name = "tensor-recon",
    version,
    about = "Reconstruct and validate finite tensor categories from ring, algebra, φ and associator data"
)]
struct Cli {
    /// Skip the implicit validation of input quadruples.
    #[arg(long, global = true)]
    trust: bool,
    /// Worker threads for check sweeps.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run fusion, algebra, φ and associator checks.
    Validate {
        spec: PathBuf,
        /// Also check the summed pentagon.
        #[arg(long)]
        summed_pentagon: bool,
    },
    /// Tensor product of two objects, e.g. "0,1,0,0" or "e2".
    TensorObj { spec: PathBuf, m: String, s: String },
    /// X ⊗̂ Y of two morphisms (file paths or inline JSON).
    TensorMor { spec: PathBuf, x: String, y: String },
    /// Extended associator for three objects.
    Assoc { spec: PathBuf, m: String, s: String, t: String },
    /// Kernel object and monomorphism of a morphism.
    Kernel { spec: PathBuf, x: String },
    /// Cokernel object and epimorphism of a morphism.
    Cokernel { spec: PathBuf, x: String },
    /// Epi-mono factorization x = x1·x2.
    Factor { spec: PathBuf, x: String },
    /// Evaluate a Green-ring expression such as "(r1+r2)^2".
    GreenRing { spec: PathBuf, expr: String },
    /// Check an η-witness from SOURCE's associator to TARGET's.
    EtaEquiv { target: PathBuf, source: PathBuf, witness: PathBuf },
    /// Check a tensor-equivalence witness from A to B.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        witness: PathBuf,
        /// Morphism of A to push through the functor.
        #[arg(long)]
        apply: Option<String>,
    },
    /// Build a built-in example, self-check it and optionally write it out.
    Example {
        name: ExampleName,
        #[arg(long, value_name = "PATH")]
        emit: Option<PathBuf>,
        /// Work over F_p instead of Q.
        #[arg(long, value_name = "P")]
        prime: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    H4,
    VecZ2,
    VecZ2Sign,
    VecZ2Broken,
}

enum Failure {
    Violations,
    Error(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Malformed(_) | Error::OutOfRange(_) | Error::TypeMismatch(_) | Error::DimensionMismatch(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Argument that is either inline JSON or a path to a JSON file.
fn read_inline(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read(Path::new(arg))
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Command::Example { name, emit, prime } = &cli.command {
        return match prime {
            None => example::<Rational>(*name, emit.as_deref(), FieldKind::Rational),
            Some(p) => {
                let field = FieldKind::Prime { p: *p };
                field.validate()?;
                example::<Fp>(*name, emit.as_deref(), field)
            }
        };
    }
    let primary = match &cli.command {
        Command::Validate { spec, .. }
        | Command::TensorObj { spec, .. }
        | Command::TensorMor { spec, .. }
        | Command::Assoc { spec, .. }
        | Command::Kernel { spec, .. }
        | Command::Cokernel { spec, .. }
        | Command::Factor { spec, .. }
        | Command::GreenRing { spec, .. } => spec,
        Command::EtaEquiv { target, .. } => target,
        Command::Equiv { a, .. } => a,
        Command::Example { .. } => unreachable!(),
    };
    match io::peek_field(&read(primary)?)? {
        FieldKind::Rational => dispatch::<Rational>(cli),
        FieldKind::Prime { .. } => dispatch::<Fp>(cli),
    }
}

fn load<S: Field>(path: &Path) -> Result<Quadruple<S>, Failure> {
    Ok(io::parse_quadruple(&read(path)?)?)
}

fn emit_report(report: &Report) {
    for line in report.json_lines() {
        out!("{line}");
    }
    write_stdout(format_args!("{}", report.summary()));
}

/// Load and, unless trusted, validate a quadruple.
fn load_checked<S: Field>(path: &Path, trust: bool) -> Result<Quadruple<S>, Failure> {
    let q = load::<S>(path)?;
    if !trust {
        let report = q.validate();
        if !report.is_ok() {
            eprintln!("{}: validation failed", path.display());
            emit_report(&report);
            return Err(Failure::Violations);
        }
    }
    Ok(q)
}

fn conclude(report: &Report) -> Outcome {
    emit_report(report);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn print_json(value: serde_json::Value) {
    out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn morphism<S: Field>(q: &Quadruple<S>, arg: &str) -> Result<BlockMatrix<S>, Failure> {
    Ok(io::parse_matrix(&read_inline(arg)?, &q.algebra, &q.field)?)
}

fn dispatch<S: Field>(cli: &Cli) -> Outcome {
    let trust = cli.trust;
    match &cli.command {
        Command::Validate { spec, summed_pentagon } => {
            let q = load::<S>(spec)?;
            conclude(&q.validate_with(tensor_recon::category::ValidateOptions { summed_pentagon: *summed_pentagon }))
        }
        Command::TensorObj { spec, m, s } => {
            let q = load_checked::<S>(spec, trust)?;
            let n = q.rank();
            out!("{}", q.obj_tensor(&Obj::parse(m, n)?, &Obj::parse(s, n)?));
            Ok(())
        }
        Command::TensorMor { spec, x, y } => {
            let q = load_checked::<S>(spec, trust)?;
            let z = q.hat(&morphism(&q, x)?, &morphism(&q, y)?);
            out!("{}", io::write_matrix(&z, &q.field));
            Ok(())
        }
        Command::Assoc { spec, m, s, t } => {
            let q = load_checked::<S>(spec, trust)?;
            let n = q.rank();
            let a = extend(&q, &Obj::parse(m, n)?, &Obj::parse(s, n)?, &Obj::parse(t, n)?);
            out!("{}", io::write_matrix(&a, &q.field));
            Ok(())
        }
        Command::Kernel { spec, x } | Command::Cokernel { spec, x } => {
            let q = load_checked::<S>(spec, trust)?;
            let x = morphism(&q, x)?;
            let (obj, y) = match &cli.command {
                Command::Kernel { .. } => q.kernel(&x)?,
                _ => q.cokernel(&x)?,
            };
            print_json(json!({ "object": obj.0, "morphism": io::matrix_to_json(&y, &q.field) }));
            Ok(())
        }
        Command::Factor { spec, x } => {
            let q = load_checked::<S>(spec, trust)?;
            let (mono, epi) = q.epi_mono(&morphism(&q, x)?)?;
            print_json(json!({
                "epi": io::matrix_to_json(&epi, &q.field),
                "mono": io::matrix_to_json(&mono, &q.field),
                "image": mono.col_type().0,
            }));
            Ok(())
        }
        Command::GreenRing { spec, expr } => {
            let q = load_checked::<S>(spec, trust)?;
            out!("{}", format_ring_element(&q.fusion.eval_expression(expr)?));
            Ok(())
        }
        Command::EtaEquiv { target, source, witness } => {
            let qt = load_checked::<S>(target, trust)?;
            let qs = load_checked::<S>(source, trust)?;
            let w = io::parse_eta(&read(witness)?, &qt)?;
            conclude(&check_eta_equiv(&qt, &qs, &w))
        }
        Command::Equiv { a, b, witness, apply } => {
            let qa = load_checked::<S>(a, trust)?;
            let qb = load_checked::<S>(b, trust)?;
            let w = io::parse_equiv(&read(witness)?, &qa, &qb)?;
            if let Some(x) = apply {
                let y = apply_functor(&qb.algebra, &w, &morphism(&qa, x)?)?;
                out!("{}", io::write_matrix(&y, &qb.field));
                return Ok(());
            }
            conclude(&check_tensor_equiv(&qa, &qb, &w))
        }
        Command::Example { .. } => unreachable!(),
    }
}

fn example<S: Field>(name: ExampleName, emit: Option<&Path>, field: FieldKind) -> Outcome {
    let q: Quadruple<S> = match name {
        ExampleName::H4 => build_h4(&field)?,
        ExampleName::VecZ2 => build_vec_z2(&field, false),
        ExampleName::VecZ2Sign => build_vec_z2(&field, true),
        ExampleName::VecZ2Broken => build_vec_z2_broken(&field),
    };
    let report = q.validate();
    out!("{}", json!({ "rank": q.rank(), "dim": q.algebra.dim(), "semisimple": q.is_semisimple() }));
    if let Some(path) = emit {
        fs::write(path, io::write_quadruple(&q) + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    conclude(&report)
}
