use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use meetdet::closedform::GroundedFunction;
use meetdet::eval::{self, Instance, Method};
use meetdet::hyperdet::{FMap, Hypermatrix};
use meetdet::lattice::{parse_poset, MeetSemilattice, Poset};
use meetdet::numth::{self, ArithmeticFunction, Builtin};
use meetdet::verify::{self, VerifyConfig};
use meetdet::{bench, reproduce, Error, Result, Scalar};

const THREADS_ENV: &str = "MEETDET_THREADS";

#[derive(Parser, Debug)]
#[command(name = "meetdet", version, about = "Exact F-determinants of meet hypermatrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a poset file or print its structure.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Evaluate a determinant by one method.
    Eval(EvalArgs),
    /// Run the seeded cross-method property suite.
    Verify(VerifyArgs),
    /// Recompute the symbolic worked examples.
    PaperExamples,
    /// Time methods on gcd instances and write CSV.
    Bench(BenchArgs),
    /// Evaluate on the divisibility semilattice of an integer set.
    Gcd(GcdArgs),
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Report whether the file is a poset and a meet-semilattice.
    Check { file: PathBuf },
    /// Print covers, labels, a linear extension and optionally μ.
    Info {
        file: PathBuf,
        #[arg(long)]
        mobius: bool,
    },
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_parser = parse_method)]
    method: Method,
    /// Hypermatrix file (`hypermatrix <n> <k>` and n^k scalars).
    #[arg(long, conflicts_with = "gf", required_unless_present = "gf")]
    hypermatrix: Option<PathBuf>,
    /// Grounded function file (`gf <poset-file> <n>`).
    #[arg(long)]
    gf: Option<PathBuf>,
    /// Order of the meet hypermatrix built from --gf.
    #[arg(short, long)]
    k: Option<usize>,
    /// `sign`, `one` or `table:<file>`.
    #[arg(long, default_value = "sign")]
    fmap: String,
    /// Skip the enumeration guard.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=6))]
    nmax: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..=5))]
    kmax: u64,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated `<n>x<k>` pairs.
    #[arg(long, default_value = "4x3")]
    sizes: String,
    /// Comma-separated method names; empty for a header-only file.
    #[arg(long, default_value = "brute,expand,lindstrom,ligen")]
    methods: String,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct GcdArgs {
    /// `1,2,6` or `1..6`.
    #[arg(long)]
    set: String,
    /// Replace the set by its gcd closure first.
    #[arg(long)]
    close: bool,
    #[arg(short, long, default_value_t = 2)]
    k: usize,
    /// id, one, phi, mu, tau or sigma.
    #[arg(long, default_value = "id")]
    function: String,
    #[arg(long, default_value = "lindstrom", value_parser = parse_method)]
    method: Method,
    #[arg(long, default_value = "sign")]
    fmap: String,
    #[arg(long)]
    force: bool,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the CLI and returns the process exit code.
pub fn main(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    let mut out = io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Syntax(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a second build in the same process (tests) keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_out(out: &mut impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Io {
        path: "stdout".into(),
        message: e.to_string(),
    })
}

fn load_poset(path: &Path) -> Result<Poset> {
    parse_poset(&read(path)?)
}

fn load_gf(path: &Path) -> Result<GroundedFunction> {
    let text = read(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    GroundedFunction::parse(&text, |p| load_poset(&dir.join(p)))
}

fn load_fmap(spec: &str) -> Result<FMap> {
    match spec {
        "sign" => Ok(FMap::SignProduct),
        "one" => Ok(FMap::ConstantOne),
        _ => match spec.strip_prefix("table:") {
            Some(path) => FMap::parse_table(&read(Path::new(path))?),
            None => Err(Error::Syntax(format!(
                "--fmap must be sign, one or table:<file>, got {spec:?}"
            ))),
        },
    }
}

fn dispatch(cmd: Command, out: &mut impl Write) -> Result<i32> {
    match cmd {
        Command::Lattice(LatticeCommand::Check { file }) => lattice_check(&file, out),
        Command::Lattice(LatticeCommand::Info { file, mobius }) => lattice_info(&file, mobius, out),
        Command::Eval(a) => eval_cmd(a, out),
        Command::Verify(a) => verify_cmd(a, out),
        Command::PaperExamples => {
            let ex = reproduce::examples()?;
            write_out(out, &reproduce::render(&ex))?;
            Ok(if ex.iter().all(reproduce::Example::matches) {
                0
            } else {
                1
            })
        }
        Command::Bench(a) => bench_cmd(a, out),
        Command::Gcd(a) => gcd_cmd(a, out),
    }
}

fn lattice_check(file: &Path, out: &mut impl Write) -> Result<i32> {
    let poset = match load_poset(file) {
        Ok(p) => p,
        Err(e @ (Error::CycleDetected(_) | Error::NotAPartialOrder(_))) => {
            write_out(out, &format!("poset: no ({e})\n"))?;
            return Ok(0);
        }
        Err(e) => return Err(e),
    };
    let n = poset.len();
    let mut text = format!("poset: yes ({n} elements)\n");
    match MeetSemilattice::new(poset.clone()) {
        Ok(_) => text.push_str(&format!("meet-semilattice: yes ({n} elements)\n")),
        Err(Error::NotAMeetSemilattice(a, b)) => {
            text.push_str(&format!(
                "meet-semilattice: no (witness: {},{})\n",
                poset.label(a),
                poset.label(b)
            ));
        }
        Err(e) => return Err(e),
    }
    write_out(out, &text)?;
    Ok(0)
}

fn lattice_info(file: &Path, mobius: bool, out: &mut impl Write) -> Result<i32> {
    let p = load_poset(file)?;
    let labels: Vec<String> = (0..p.len()).map(|i| p.label(i)).collect();
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", labels[a], labels[b]))
        .collect();
    let ext: Vec<&str> = p.linear_extension().into_iter().map(|i| labels[i].as_str()).collect();
    let mut text = format!(
        "elements: {}\nlabels: {}\ncovers: {}\n",
        p.len(),
        labels.join(" "),
        covers.join(" ")
    );
    text.push_str(&format!(
        "minimum: {}\n",
        p.minimum().map_or_else(|| "none".to_owned(), |m| labels[m].clone())
    ));
    text.push_str(&format!(
        "meet-semilattice: {}\n",
        if MeetSemilattice::new(p.clone()).is_ok() {
            "yes"
        } else {
            "no"
        }
    ));
    text.push_str(&format!("linear extension: {}\n", ext.join(" ")));
    if mobius {
        text.push_str(&format!("mobius:\n{}\n", p.mobius_matrix().to_string().trim_end()));
    }
    write_out(out, &text)?;
    Ok(0)
}

fn eval_cmd(a: EvalArgs, out: &mut impl Write) -> Result<i32> {
    let inst = match (&a.hypermatrix, &a.gf) {
        (Some(path), _) => {
            let m = Hypermatrix::parse(&read(path)?)?;
            if let Some(k) = a.k.filter(|&k| k != m.order()) {
                return Err(Error::DimensionMismatch(format!(
                    "-k {k} given for a hypermatrix of order {}",
                    m.order()
                )));
            }
            Instance::Hyper(m)
        }
        (None, Some(path)) => Instance::Meet {
            gf: load_gf(path)?,
            k: a.k.unwrap_or(2),
        },
        (None, None) => unreachable!("clap requires one input"),
    };
    let f = load_fmap(&a.fmap)?;
    let report = eval::run(a.method, &inst, &f, a.force)?;
    write_out(out, &format!("{report}\n"))?;
    Ok(0)
}

fn verify_cmd(a: VerifyArgs, out: &mut impl Write) -> Result<i32> {
    let config = VerifyConfig {
        seed: a.seed,
        trials: a.trials,
        nmax: a.nmax as usize,
        kmax: a.kmax as usize,
        inject_fault: a.inject_fault,
    };
    if config.trials == 0 {
        eprintln!("warning: --trials 0 runs no properties");
    }
    let report = verify::run(config);
    write_out(out, &report.render())?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn bench_cmd(a: BenchArgs, out: &mut impl Write) -> Result<i32> {
    let sizes = bench::parse_sizes(&a.sizes)?;
    let methods = a
        .methods
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Method>>>()?;
    let rows = bench::run(&sizes, &methods, a.force)?;
    match &a.output {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            bench::write_csv(&rows, file)?;
        }
        None => bench::write_csv(&rows, &mut *out)?,
    }
    let bad = bench::disagreements(&rows);
    for (n, k) in &bad {
        eprintln!("error: value digests disagree at n = {n}, k = {k}");
    }
    Ok(if bad.is_empty() { 0 } else { 1 })
}

fn gcd_cmd(a: GcdArgs, out: &mut impl Write) -> Result<i32> {
    let mut set = numth::parse_int_set(&a.set)?;
    if a.close {
        set = numth::gcd_closure(&set)?;
    }
    let (sl, elems) = numth::divisor_semilattice(&set)?;
    let kind: Builtin = a.function.parse()?;
    let bound = *elems.last().expect("nonempty set");
    let func = ArithmeticFunction::builtin(kind, bound);
    let gf = GroundedFunction::from_fn(sl, (0..elems.len()).collect(), |_, z| {
        func.at(elems[z]).cloned().unwrap_or_else(|_| Scalar::zero())
    })?;
    let f = load_fmap(&a.fmap)?;
    let report = eval::run(a.method, &Instance::Meet { gf, k: a.k }, &f, a.force)?;
    let list: Vec<String> = elems.iter().map(u64::to_string).collect();
    write_out(
        out,
        &format!("set: {}\nfunction: {kind}\nk: {}\n{report}\n", list.join(","), a.k),
    )?;
    Ok(0)
}
