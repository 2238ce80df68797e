//! `nthilbert` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure (a required
//! inverse does not exist or a verification failed), 3 input validation
//! failure.

mod input;

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use nthilbert::analysis::{
    emit_csv, emit_csv_from, emit_svg, peak_report, preset, FigureId, PeakReport, Series,
};
use nthilbert::classic_dht::{dht_forward, render_scaled, DhtWindowSpec};
use nthilbert::exactlin::to_csv;
use nthilbert::ntdht::{build_nt_matrix, compare_printed_inverse, embedded_forward16};
use nthilbert::pipeline::{
    roundtrip_suite, search_mod_inverse, search_space, NtTransform, DEFAULT_SEED,
};
use nthilbert::{exactlin, Error, NtMatrixSpec, PowerOfTwoModulus, ReductionMode, Signal, Variant};

#[derive(Parser)]
#[command(
    name = "nthilbert",
    version,
    about = "Classical and number-theoretic discrete Hilbert transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a number-theoretic DHT matrix as CSV.
    BuildMatrix {
        #[arg(long)]
        n: usize,
        /// Power of two >= 2.
        #[arg(long)]
        modulus: u64,
        /// paper | odd-diff
        #[arg(long, default_value = "paper")]
        variant: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Transform a signal and recover it with the exact inverse.
    Transform {
        #[command(flatten)]
        source: Source,
        /// Reduce the forward product modulo M.
        #[arg(long)]
        reduce_mod: bool,
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded random round-trip suite; exits 0 iff every residual is zero.
    Roundtrip {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Seed for the random inputs (entries drawn from [0, M)).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Classical DHT of a signal, exact and scaled by 2/pi.
    Classic {
        #[arg(long)]
        input: PathBuf,
        /// Half-width W of the index window [-W, W]; defaults to covering the signal.
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for matrices with an inverse modulo M.
    Search {
        /// Comma-separated matrix sizes.
        #[arg(long, default_value = "2,4,8,16,32")]
        n_list: String,
        /// Range of modulus exponents, lo..hi inclusive.
        #[arg(long, default_value = "1..8")]
        mod_exp: String,
        /// paper | odd-diff | both
        #[arg(long, default_value = "both")]
        variant: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the printed 16-point inverse table against the exact inverse.
    ComparePrinted {
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit original/transformed/recovered series for all four figure presets.
    Figures {
        #[arg(long)]
        out_dir: PathBuf,
        /// Also write an SVG chart per figure.
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// fig1 | fig2 | fig3 | fig4
    #[arg(long)]
    preset: Option<String>,
    /// Signal CSV.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SpecArg {
    /// n,modulus,variant
    #[arg(long = "spec", default_value = "16,16,paper")]
    spec: String,
}

impl SpecArg {
    fn parse(&self) -> Result<NtMatrixSpec, Failure> {
        Ok(self.spec.parse()?)
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numeric(_) => 2,
            Failure::Input(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular | Error::NonInvertible { .. } => Failure::Numeric(e.to_string()),
            Error::Domain(_) | Error::NotAUnit { .. } => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::BuildMatrix {
            n,
            modulus,
            variant,
            out,
        } => {
            let spec =
                NtMatrixSpec::new(n, PowerOfTwoModulus::from_value(modulus)?, variant.parse()?)?;
            write(&out, to_csv(&build_nt_matrix(&spec)))
        }
        Command::Transform {
            source,
            reduce_mod,
            spec,
            out,
        } => transform(source, reduce_mod, spec.parse()?, &out),
        Command::Roundtrip { trials, seed, spec } => {
            let spec = spec.parse()?;
            let suite = roundtrip_suite(&spec, trials, seed)?;
            println!(
                "spec={spec} trials={} exact={} seed={seed}",
                suite.trials, suite.exact
            );
            match suite.first_failure {
                None => Ok(()),
                Some((x, residual)) => Err(Failure::Numeric(format!(
                    "nonzero residual {residual} for input {x:?}"
                ))),
            }
        }
        Command::Classic { input, window, out } => classic(&input, window, &out),
        Command::Search {
            n_list,
            mod_exp,
            variant,
            seed,
            out,
        } => search(&n_list, &mod_exp, &variant, seed, &out),
        Command::ComparePrinted { out } => {
            let inverse = exactlin::rational_inverse(&embedded_forward16())?;
            let report = compare_printed_inverse(&inverse)?;
            println!(
                "compared={} matches={} mismatches={} erratum_rows={:?}",
                report.total_compared,
                report.matches,
                report.mismatches.len(),
                report
                    .erratum_rows
                    .iter()
                    .map(|r| r.row)
                    .collect::<Vec<_>>()
            );
            write(&out, to_json(&report)?)
        }
        Command::Figures { out_dir, svg } => figures(&out_dir, svg),
    }
}

fn transform(
    source: Source,
    reduce_mod: bool,
    spec: NtMatrixSpec,
    out: &Path,
) -> Result<(), Failure> {
    let (samples, note) = match (source.preset, source.input) {
        (Some(id), None) => {
            let p = preset(
                id.parse()
                    .map_err(|e: Error| Failure::Usage(e.to_string()))?,
            );
            (p.samples.to_vec(), p.erratum.map(|_| p.provenance_note()))
        }
        (None, Some(path)) => {
            let raw = input::parse_signal(&read(&path)?).map_err(Failure::Input)?;
            (raw.to_integers().map_err(Failure::Input)?, None)
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --preset or --input".into(),
            ))
        }
    };
    if let Some(note) = note {
        println!("note: {note}");
    }
    let mode = if reduce_mod {
        ReductionMode::ModM
    } else {
        ReductionMode::Plain
    };
    let run = FigureRun::compute(spec, &samples, mode)?;
    print_peaks(&run.peaks);
    write(out, emit_csv(&run.series())?)
}

struct FigureRun {
    original: Vec<i64>,
    transformed: Vec<BigInt>,
    recovered: Option<Vec<nthilbert::BigFraction>>,
    peaks: PeakReport,
}

impl FigureRun {
    fn compute(spec: NtMatrixSpec, x: &[i64], mode: ReductionMode) -> Result<Self, Failure> {
        let t = NtTransform::new(spec);
        let transformed = t.forward(x, mode)?;
        let recovered = match t.inverse_exact(&transformed) {
            Ok(r) => Some(r),
            Err(Error::Singular) => {
                eprintln!("warning: matrix {spec} is singular; no recovered series");
                None
            }
            Err(e) => return Err(e.into()),
        };
        Ok(Self {
            peaks: peak_report(x, &transformed),
            original: x.to_vec(),
            transformed,
            recovered,
        })
    }

    fn series(&self) -> Vec<Series> {
        let mut s = vec![
            Series::from_ints("original", &self.original),
            Series::from_bigints("transformed", &self.transformed),
        ];
        if let Some(r) = &self.recovered {
            s.push(Series::from_fractions("recovered", r));
        }
        s
    }
}

fn print_peaks(p: &PeakReport) {
    let values: Vec<String> = p.peak_values.iter().map(ToString::to_string).collect();
    println!(
        "transitions={} peak_indices={:?} peak_values=[{}]",
        p.transition_count,
        p.peak_indices,
        values.join(", ")
    );
    println!("{}", p.note);
}

fn classic(input: &Path, window: Option<u32>, out: &Path) -> Result<(), Failure> {
    let raw = input::parse_signal(&read(input)?).map_err(Failure::Input)?;
    let f = Signal::new(raw.origin, raw.values)?;
    let w = match window {
        Some(w) => DhtWindowSpec::new(w)?,
        None => DhtWindowSpec::covering(&f),
    };
    let half = i64::from(w.half_width());
    let range = f.origin().min(-half)..=f.end().max(half);
    let g = dht_forward(&f, range, w)?;
    let series = [
        Series::from_fractions("exact", g.samples()),
        Series::from_floats("scaled", &render_scaled(&g)),
    ];
    write(out, emit_csv_from(g.origin(), &series)?)
}

fn search(
    n_list: &str,
    mod_exp: &str,
    variant: &str,
    seed: u64,
    out: &Path,
) -> Result<(), Failure> {
    let sizes = n_list
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad --n-list {n_list:?}: {e}")))?;
    let exponents = parse_exp_range(mod_exp)?;
    let variants = match variant {
        "both" => Variant::ALL.to_vec(),
        v => vec![v.parse()?],
    };
    let specs = search_space(&sizes, exponents, &variants)?;
    let results = search_mod_inverse(&specs, seed);
    let found = results.iter().filter(|r| r.inverse_found).count();
    println!("specs={} inverse_found={found}", results.len());
    write(out, to_json(&results)?)?;
    match results.iter().find(|r| !r.is_coherent()) {
        None => Ok(()),
        Some(r) => Err(Failure::Numeric(format!(
            "verification failed for spec {}",
            r.spec
        ))),
    }
}

fn parse_exp_range(s: &str) -> Result<RangeInclusive<u32>, Failure> {
    let bad = || Failure::Usage(format!("--mod-exp must look like lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn figures(out_dir: &Path, svg: bool) -> Result<(), Failure> {
    fs::create_dir_all(out_dir)
        .map_err(|e| Failure::Input(format!("cannot create {}: {e}", out_dir.display())))?;
    for id in FigureId::ALL {
        let p = preset(id);
        if p.erratum.is_some() {
            println!("{id} note: {}", p.provenance_note());
        }
        let run = FigureRun::compute(NtMatrixSpec::paper16(), &p.samples, ReductionMode::Plain)?;
        print!("{id}: ");
        print_peaks(&run.peaks);
        let series = run.series();
        write(&out_dir.join(format!("{id}.csv")), emit_csv(&series)?)?;
        if svg {
            let title = format!("{id}: input {}", p.printed_caption);
            write(
                &out_dir.join(format!("{id}.svg")),
                emit_svg(&title, &series)?,
            )?;
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Numeric(format!("cannot serialize report: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: String) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}
