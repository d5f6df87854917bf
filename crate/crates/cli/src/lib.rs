//! Command-line front end for `quotset`.
//!
//! `run` parses arguments, dispatches to one library operation and writes
//! the result as text, JSON (`"v": 1`) or CSV. Exit codes: 0 on success, 1 on
//! a usage, parameter or domain error (or a refuted certificate), 2 when a
//! bounded search is exhausted.

pub mod commands;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use quotset::Error;
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "quotset", version, about = "Quotient sets: approximation, density evidence and gap certificates")]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Approximate targets by quotients of a digit-prefix set with powers.
    Approximate(commands::Approximate),
    /// Classify digit-prefix families as dense or not.
    Classify(commands::Classify),
    /// Emit gap certificates and optionally verify them by brute force.
    Gap(commands::Gap),
    /// Verify a textual certificate against given sets.
    Verify(commands::Verify),
    /// Density estimates of a set of positive integers.
    Density(commands::Density),
    /// Find u/v in a window (a, b] with u, v from two sets.
    RatioWindow(commands::RatioWindow),
    /// Primes of a residue class in [lo, hi].
    PrimesInterval(commands::PrimesInterval),
    /// Least prime of a class in each [alpha^n, alpha^(n+1)].
    AlphaIntervals(commands::AlphaIntervals),
    /// Normalised prime counts of a residue class.
    Dirichlet(commands::Dirichlet),
    /// Primes p, q from two classes with c <= p/q <= d.
    PrimeRatio(commands::PrimeRatio),
    /// Norm band of elements of Z[sqrt(-d)].
    BandClassify(commands::BandClassify),
    /// Prime elements with norms in [B^(2n-1), B^(2n)] and their annulus certificates.
    PrimeBands(commands::PrimeBands),
    /// Check that every [x, B x] in a range holds a prime-element norm.
    Bertrand(commands::Bertrand),
    /// Which side of a two-coloring has quotients covering the unit box.
    PartitionCheck(commands::PartitionCheck),
    /// Epsilon-net coverage of targets by a truncated quotient set.
    Coverage(commands::Coverage),
    /// List the truncated quotient set.
    Quotients(commands::Quotients),
    /// Enumerate an ideal of Z[sqrt(-d)] by norm.
    Ideal(commands::Ideal),
    /// Prime elements of Z[sqrt(-d)] up to a norm bound.
    QuadPrimes(commands::QuadPrimes),
    /// Rounded witness triple (s, t, t') for a target gamma/(alpha beta).
    Witness(commands::Witness),
    /// Norm threshold n0 for the witness construction.
    Threshold(commands::Threshold),
    /// Away-from-zero rounding.
    Round(commands::Round),
}

/// Subcommand and the library operation it exposes.
pub const COMMAND_TABLE: &[(&str, &str)] = &[
    ("approximate", "DigitPrefixFamily::approximate"),
    ("classify", "DigitPrefixFamily::classify"),
    ("gap", "gap certificate construction"),
    ("verify", "GapCertificate::verify"),
    ("density", "density_estimate"),
    ("ratio-window", "ratio_in_window"),
    ("primes-interval", "primes_in_interval"),
    ("alpha-intervals", "interval_prime_search"),
    ("dirichlet", "dirichlet_diagnostic"),
    ("prime-ratio", "prime_ratio_in_window"),
    ("band-classify", "NormBandPartition::classify"),
    ("prime-bands", "prime_band_selection"),
    ("bertrand", "bertrand_probe"),
    ("partition-check", "partition_density_check"),
    ("coverage", "coverage_check"),
    ("quotients", "quotient_set"),
    ("ideal", "Ideal::enumerate"),
    ("quad-primes", "quad_primes"),
    ("witness", "witness_construct"),
    ("threshold", "threshold_n0"),
    ("round", "away_round"),
];

fn dispatch(command: &Command) -> quotset::Result<Report> {
    use commands as c;
    match command {
        Command::Approximate(a) => c::approximate(a),
        Command::Classify(a) => c::classify(a),
        Command::Gap(a) => c::gap(a),
        Command::Verify(a) => c::verify(a),
        Command::Density(a) => c::density(a),
        Command::RatioWindow(a) => c::ratio_window(a),
        Command::PrimesInterval(a) => c::primes_interval(a),
        Command::AlphaIntervals(a) => c::alpha_intervals(a),
        Command::Dirichlet(a) => c::dirichlet(a),
        Command::PrimeRatio(a) => c::prime_ratio(a),
        Command::BandClassify(a) => c::band_classify(a),
        Command::PrimeBands(a) => c::prime_bands(a),
        Command::Bertrand(a) => c::bertrand(a),
        Command::PartitionCheck(a) => c::partition_check(a),
        Command::Coverage(a) => c::coverage(a),
        Command::Quotients(a) => c::quotients(a),
        Command::Ideal(a) => c::ideal(a),
        Command::QuadPrimes(a) => c::quad_primes_cmd(a),
        Command::Witness(a) => c::witness(a),
        Command::Threshold(a) => c::threshold(a),
        Command::Round(a) => c::round(a),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SearchExhausted(_) => 2,
        _ => 1,
    }
}

/// Runs one command line (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if shown { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if shown { 0 } else { 1 };
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    match dispatch(&cli.command) {
        Ok(report) => match report.render(format, out) {
            Ok(()) => report.exit,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
