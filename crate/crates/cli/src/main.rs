use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use labclass::classify::{
    coverage_warning, decide_diffeo_with, decide_homotopy_with, DeciderConfig, ThirdCongruence,
    DEFAULT_SCAN_CAP,
};
use labclass::family::{enumerate, EnumerateOptions, FamilyReport};
use labclass::forms::{augment_form, multisignature, LambdaMatrix, MatrixFile, Z2QuadraticForm};
use labclass::rho::rho_table;
use labclass::witness::{theorem5_ii_check, theorem5_witness, Verdict};
use labclass::{BundleSpec, Error, Sign};

const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "labclass",
    version,
    about = "Homotopy and diffeomorphism classification of circle bundles L^{a,b} over S^2 x S^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide homotopy equivalence and diffeomorphism of L^{a,b} and L^{a2,b2}.
    #[command(allow_negative_numbers = true)]
    Classify {
        a: i64,
        b: i64,
        a2: i64,
        b2: i64,
        /// Relative orientation of the second bundle: 1 or -1.
        #[arg(long, default_value = "1", value_parser = parse_sign)]
        flip: Sign,
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        scan_cap: u64,
        /// Reading of the third congruence.
        #[arg(long, value_enum, default_value_t = Third::Symmetric)]
        third: Third,
    },
    /// Enumerate all (a, b) with gcd r and |a|, |b| <= bound and partition them.
    Enumerate {
        r: i64,
        #[arg(long)]
        bound: i64,
        /// Worker threads for the per-member key computation.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Treat (a, b) and (b, a) as one member.
        #[arg(long)]
        identify_swap: bool,
        /// Emit the report as JSON (default).
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit one row per member instead of the JSON report.
        #[arg(long)]
        csv: bool,
        /// Maximum number of members.
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        scan_cap: u64,
    },
    /// Imaginary part of rho(g, L^{a,b}) for g = 1..r-1.
    #[command(allow_negative_numbers = true)]
    Rho { a: i64, b: i64 },
    /// Multisignature of a skew-hermitian matrix over Z[Z/r] (file or stdin).
    Multisig { file: Option<PathBuf> },
    /// Soul witness in line bundles over L^{r, qr}.
    #[command(allow_negative_numbers = true)]
    Theorem5 { r: i64, q: i64 },
    /// No nontrivial cube root of unity mod r and r does not divide q.
    #[command(name = "theorem5-ii", allow_negative_numbers = true)]
    Theorem5Ii { r: i64, q: i64 },
    /// Arf invariant of the augmented form (matrix file with "mu") or of
    /// a symplectic form given by its q-values.
    Arf {
        file: Option<PathBuf>,
        /// q(a_1), q(b_1), q(a_2), ..: skips the matrix.
        #[arg(long, value_delimiter = ',', conflicts_with = "file")]
        values: Option<Vec<u8>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Third {
    Symmetric,
    Literal,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "1" | "+1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(format!("expected 1 or -1, got {s:?}")),
    }
}

/// Failure reported as `{"error": {..}}` on stdout.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::ScanCapExceeded { .. } => (EXIT_CAP, "scan-cap-exceeded"),
            Error::Degenerate(_) => (EXIT_INVALID, "degenerate"),
            Error::Shape(_) | Error::NotSymplectic(_) => (EXIT_INVALID, "malformed-input"),
            _ => (EXIT_INVALID, "precondition"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            kind: "malformed-input",
            message: message.into(),
        }
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::input(e.to_string()))?;
    match writeln!(io::stdout().lock(), "{s}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::input(e.to_string())),
        _ => Ok(()),
    }
}

fn read_input(file: Option<&PathBuf>) -> Result<String, Failure> {
    let mut s = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p)
                .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::input(e.to_string()))?;
        }
    }
    Ok(s)
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn classify(
    l: BundleSpec,
    l2: BundleSpec,
    flip: Sign,
    config: &DeciderConfig,
) -> Result<Value, Failure> {
    let homotopy = decide_homotopy_with(&l, &l2, flip, config)?;
    let diffeo = decide_diffeo_with(&l, &l2, flip, config)?;
    let mut reasons = BTreeMap::new();
    if homotopy.is_none() {
        reasons.insert(
            "homotopy",
            "no (s, s′, ε, ε′, k, k′) satisfies the congruences",
        );
    }
    if diffeo.is_none() {
        let why = if l.ab().abs() != l2.ab().abs() {
            "ab ≠ ±a′b′"
        } else {
            "no (ε, ε′, δ, k, k′) satisfies the conditions"
        };
        reasons.insert("diffeo", why);
    }
    let warnings: Vec<&str> = coverage_warning(&l, &l2).into_iter().collect();
    Ok(json!({
        "homotopy": homotopy,
        "diffeo": diffeo,
        "reasons": reasons,
        "warnings": warnings,
    }))
}

fn write_csv(rep: &FamilyReport) -> Result<(), Failure> {
    let n = rep.members.len();
    let mut hom = vec![0; n];
    let mut dif = vec![0; n];
    let mut fam: Vec<Option<usize>> = vec![None; n];
    for (c, class) in rep.homotopy_classes.iter().enumerate() {
        class.iter().for_each(|&i| hom[i] = c);
    }
    for (c, class) in rep.diffeo_classes.iter().enumerate() {
        class.iter().for_each(|&i| dif[i] = c);
    }
    for (f, family) in rep.theorem1_families.iter().enumerate() {
        family.iter().for_each(|&i| fam[i] = Some(f));
    }
    let write = || -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record([
            "index",
            "a",
            "b",
            "ab",
            "homotopy_class",
            "diffeo_class",
            "family",
        ])?;
        for (i, m) in rep.members.iter().enumerate() {
            w.write_record([
                i.to_string(),
                m.a.to_string(),
                m.b.to_string(),
                (m.a as i128 * m.b as i128).to_string(),
                hom[i].to_string(),
                dif[i].to_string(),
                fam[i].map(|f| f.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    };
    match write() {
        Err(e) => match e.kind() {
            csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            _ => Err(Failure::input(e.to_string())),
        },
        Ok(()) => Ok(()),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Classify {
            a,
            b,
            a2,
            b2,
            flip,
            scan_cap,
            third,
        } => {
            let config = DeciderConfig {
                scan_cap,
                third: match third {
                    Third::Symmetric => ThirdCongruence::Symmetric,
                    Third::Literal => ThirdCongruence::Literal,
                },
            };
            let out = classify(
                BundleSpec::new(a, b)?,
                BundleSpec::new(a2, b2)?,
                flip,
                &config,
            )?;
            print_json(&out)
        }
        Command::Enumerate {
            r,
            bound,
            jobs,
            identify_swap,
            json: _,
            csv,
            scan_cap,
        } => {
            let opts = EnumerateOptions {
                r,
                bound,
                identify_swap,
                member_cap: scan_cap,
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Failure::input(e.to_string()))?;
            let rep = pool.install(|| enumerate(&opts))?;
            if csv {
                write_csv(&rep)
            } else {
                print_json(&rep)
            }
        }
        Command::Rho { a, b } => {
            let l = BundleSpec::new(a, b)?;
            print_json(&rho_table(&l)?)
        }
        Command::Multisig { file } => {
            let text = read_input(file.as_ref())?;
            let mf: MatrixFile =
                serde_json::from_str(&text).map_err(|e| Failure::input(e.to_string()))?;
            let m = LambdaMatrix::try_from(mf)?;
            let ms = multisignature(&m)?;
            let values: Vec<[f64; 2]> = ms
                .values()
                .iter()
                .map(|z| [clean(z.re), clean(z.im)])
                .collect();
            print_json(&json!({ "sigma": ms.sigma, "ms_values": values }))
        }
        Command::Theorem5 { r, q } => {
            let rep = theorem5_witness(r, q)?;
            print_json(&rep)?;
            if rep.verdict == Verdict::PreconditionFailed {
                // the report already names the failed precondition
                return Err(Failure {
                    code: EXIT_INVALID,
                    kind: "",
                    message: String::new(),
                });
            }
            Ok(())
        }
        Command::Theorem5Ii { r, q } => {
            let holds = theorem5_ii_check(r, q)?;
            print_json(&json!({ "r": r, "q": q, "holds": holds }))
        }
        Command::Arf { file, values } => {
            let form = match values {
                Some(v) => {
                    if v.len() % 2 != 0 {
                        return Err(Failure::input("need an even number of q-values"));
                    }
                    let pairs: Vec<(u8, u8)> = v.chunks(2).map(|c| (c[0], c[1])).collect();
                    Z2QuadraticForm::symplectic(&pairs)
                }
                None => {
                    #[derive(serde::Deserialize)]
                    struct ArfFile {
                        #[serde(flatten)]
                        matrix: MatrixFile,
                        mu: Vec<u8>,
                    }
                    let text = read_input(file.as_ref())?;
                    let f: ArfFile =
                        serde_json::from_str(&text).map_err(|e| Failure::input(e.to_string()))?;
                    augment_form(&LambdaMatrix::try_from(f.matrix)?, &f.mu)?
                }
            };
            print_json(&json!({ "arf": form.arf()? }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = print_json(&json!({
                "error": { "kind": "usage", "message": e.kind().to_string(), "detail": e.to_string() }
            }));
            return ExitCode::from(EXIT_INVALID);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.kind.is_empty() {
                let _ = print_json(&json!({ "error": { "kind": f.kind, "message": f.message } }));
            }
            let _ = io::stdout().flush();
            ExitCode::from(f.code)
        }
    }
}
