//! One argument struct and one handler per subcommand.

use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};

use quotset::certificate::GapCertificate;
use quotset::density::{density_estimate, finite_denominator_gap, ratio_in_window};
use quotset::primes::{dirichlet_diagnostic, interval_prime_search, prime_ratio_in_window, primes_in_interval, DEFAULT_SIEVE_CEILING};
use quotset::quadratic::{
    bertrand_probe, partition_density_check, prime_band_selection, quad_primes, threshold_n0, witness_construct, Band,
    NormBandPartition,
};
use quotset::quotient::{complex_unit_box, quad_quotient_set, real_grid, Target, Targets};
use quotset::{
    away_round, away_round_quad, coverage_check, quotient_set, DensityMode, Error, NaturalSet, Ratio, Result,
    SetDescriptor, Sieve, Verification,
};

use crate::parse;
use crate::report::{plain, Report, Table};

fn s<T: ToString>(v: T) -> String {
    v.to_string()
}

fn sieve(ceiling: Option<u64>) -> Sieve {
    Sieve::new(ceiling.unwrap_or(DEFAULT_SIEVE_CEILING))
}

fn natural(set: SetDescriptor) -> Result<NaturalSet> {
    match set {
        SetDescriptor::Natural(n) => Ok(n),
        SetDescriptor::Quadratic(_) => Err(Error::param("this command needs a set of positive integers")),
    }
}

#[derive(Args, Serialize, Debug)]
pub struct Approximate {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub c: u64,
    #[arg(long)]
    pub b: u64,
    /// Target ratio; repeat for several.
    #[arg(long, required = true)]
    pub target: Vec<String>,
    #[arg(long)]
    pub eps: String,
}

pub fn approximate(args: &Approximate) -> Result<Report> {
    let fam = quotset::DigitPrefixFamily::new(args.a, args.c, args.b, true)?;
    let eps = parse::ratio(&args.eps)?;
    let mut table = Table::new(&["target", "numerator", "denominator", "value", "error", "shape"]);
    let mut results = Vec::new();
    for t in &args.target {
        let xi = parse::ratio(t)?;
        let r = fam.approximate(&xi, &eps)?;
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["target"] = json!(xi);
        table.push(vec![s(&xi), s(&r.numerator), s(&r.denominator), s(&r.value), s(&r.error), plain(&v["shape"])]);
        results.push(v);
    }
    let result = if results.len() == 1 { results.pop().expect("one result") } else { Value::Array(results) };
    Ok(Report::new("approximate", args, result).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct Classify {
    #[arg(long, required_unless_present = "sweep")]
    pub a: Option<u64>,
    #[arg(long, required_unless_present = "sweep")]
    pub c: Option<u64>,
    #[arg(long, required_unless_present = "sweep")]
    pub b: Option<u64>,
    /// Classify every family with base up to this value instead.
    #[arg(long, conflicts_with_all = ["a", "c", "b"])]
    pub sweep: Option<u64>,
}

pub fn classify(args: &Classify) -> Result<Report> {
    let families = match (args.sweep, args.a, args.c, args.b) {
        (Some(max_b), ..) => {
            let mut v = Vec::new();
            for b in 2..=max_b {
                for c in 2..=b {
                    for a in 1..c {
                        v.push(quotset::DigitPrefixFamily::new(a, c, b, true)?);
                    }
                }
            }
            v
        }
        (None, Some(a), Some(c), Some(b)) => vec![quotset::DigitPrefixFamily::new(a, c, b, true)?],
        _ => return Err(Error::param("give --a, --c and --b, or --sweep")),
    };
    let mut table = Table::new(&["a", "c", "b", "classification", "by_conditions", "gaps"]);
    let mut results = Vec::new();
    for f in &families {
        let gaps: Vec<Value> = f.closure_gaps().iter().map(|(lo, hi)| json!({"lo": lo, "hi": hi})).collect();
        let gap_text: Vec<String> = f.closure_gaps().iter().map(|(lo, hi)| format!("({lo}, {hi})")).collect();
        table.push(vec![
            s(f.a),
            s(f.c),
            s(f.b),
            s(f.classify()),
            s(f.classify_by_conditions()),
            gap_text.join(" "),
        ]);
        results.push(json!({
            "a": f.a, "c": f.c, "b": f.b,
            "classification": f.classify(),
            "by_conditions": f.classify_by_conditions(),
            "dense_condition": f.dense_condition(),
            "sparse_condition": f.sparse_condition(),
            "gaps_per_period": gaps,
        }));
    }
    let result = if args.sweep.is_none() { results.pop().expect("one family") } else { Value::Array(results) };
    let report = Report::new("classify", args, result);
    Ok(if args.sweep.is_some() { report.table(table) } else { report })
}

#[derive(Args, Serialize, Debug)]
pub struct Gap {
    /// Digit-prefix family `a,c,b`; certifies gaps of its quotient set.
    #[arg(long, conflicts_with_all = ["band", "finite_u"])]
    pub family: Option<String>,
    /// Scale index or range `lo..hi` for digit-prefix gaps.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub j: String,
    /// Norm band A, B or C of Z[sqrt(-d)].
    #[arg(long, requires = "d", conflicts_with = "finite_u")]
    pub band: Option<String>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Scale range for band annuli.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    pub l: String,
    #[arg(long, default_value = "field")]
    pub form: String,
    /// Numerator set for a finite-denominator gap (see the set syntax).
    #[arg(long, requires_all = ["v", "t"])]
    pub finite_u: Option<String>,
    /// Denominators `v1,v2,...`.
    #[arg(long)]
    pub v: Option<String>,
    /// Missed target.
    #[arg(long)]
    pub t: Option<String>,
    /// Brute-force verification bound (values, or norms for bands).
    #[arg(long)]
    pub verify_bound: Option<u64>,
}

pub fn gap(args: &Gap) -> Result<Report> {
    // (certificates, numerator set, denominator set) at the verification bound.
    let (certs, sets): (Vec<GapCertificate>, Option<(SetDescriptor, SetDescriptor)>) =
        if let Some(fam) = &args.family {
            let fam = parse::family(fam, false)?;
            let certs = parse::range::<i32>(&args.j)?.map(|j| fam.gap_certificate(j)).collect::<Result<_>>()?;
            let sets = match args.verify_bound {
                Some(bound) => {
                    let set: SetDescriptor = NaturalSet::digit_prefix(fam, bound)?.into();
                    Some((set.clone(), set))
                }
                None => None,
            };
            (certs, sets)
        } else if let Some(band) = &args.band {
            let d = args.d.ok_or_else(|| Error::param("--band needs --d"))?;
            let band: Band = band.parse()?;
            let partition = NormBandPartition::with_form(d, parse::norm_form(&args.form)?)?;
            let certs = partition.gap_certificates(band, parse::range::<i32>(&args.l)?)?;
            let sets = match args.verify_bound {
                Some(bound) => {
                    let desc = format!("band:{d}:{band:?}:{}", args.form);
                    let set = parse::set(&desc, bound)?;
                    Some((set.clone(), set))
                }
                None => None,
            };
            (certs, sets)
        } else if let Some(u) = &args.finite_u {
            let bound = args.verify_bound.unwrap_or(1_000_000);
            let u_set = natural(parse::set(u, bound)?)?;
            let vs: Vec<u64> = parse::list(args.v.as_deref().unwrap_or(""), ',', parse::integer)?;
            let t = parse::ratio(args.t.as_deref().unwrap_or(""))?;
            let cert = finite_denominator_gap(&u_set, &vs, &t)?;
            let sets = match args.verify_bound {
                Some(bound) => Some((u_set.into(), NaturalSet::explicit(vs, bound)?.into())),
                None => None,
            };
            (vec![cert], sets)
        } else {
            return Err(Error::param("give one of --family, --band or --finite-u"));
        };
    let mut table = Table::new(&["certificate", "outcome", "witness"]);
    let mut results = Vec::new();
    let mut refuted = false;
    for cert in certs {
        let (cert, outcome, witness) = match &sets {
            None => (cert, "unchecked", None),
            Some((n, d)) => match cert.verify(n, d)? {
                Verification::Verified { certificate } => (certificate, "verified", None),
                Verification::Refuted { certificate, witness } => {
                    refuted = true;
                    (certificate, "refuted", Some(witness))
                }
            },
        };
        let text = cert.to_text();
        table.push(vec![text.clone(), outcome.into(), witness.as_ref().map(s).unwrap_or_default()]);
        results.push(json!({
            "certificate": text,
            "region": cert.region,
            "outcome": outcome,
            "witness": witness.as_ref().map(s),
        }));
    }
    let mut report = Report::new("gap", args, results).table(table).exit(if refuted { 1 } else { 0 });
    if let Some(b) = args.verify_bound {
        report = report.bound(b);
    }
    Ok(report)
}

#[derive(Args, Serialize, Debug)]
pub struct Verify {
    /// Certificate in `gapcert v1` text form.
    #[arg(long)]
    pub cert: String,
    #[arg(long)]
    pub numer: String,
    /// Defaults to the numerator set.
    #[arg(long)]
    pub denom: Option<String>,
    #[arg(long)]
    pub bound: u64,
}

pub fn verify(args: &Verify) -> Result<Report> {
    let cert = GapCertificate::from_text(&args.cert)?;
    let numer = parse::set(&args.numer, args.bound)?;
    let denom = match &args.denom {
        Some(d) => parse::set(d, args.bound)?,
        None => numer.clone(),
    };
    let (cert, outcome, witness) = match cert.verify(&numer, &denom)? {
        Verification::Verified { certificate } => (certificate, "verified", None),
        Verification::Refuted { certificate, witness } => (certificate, "refuted", Some(witness)),
    };
    let result = json!({
        "certificate": cert.to_text(),
        "outcome": outcome,
        "witness": witness.as_ref().map(s),
    });
    let code = if witness.is_some() { 1 } else { 0 };
    Ok(Report::new("verify", args, result).bound(args.bound).exit(code))
}

#[derive(Args, Serialize, Debug)]
pub struct Density {
    #[arg(long)]
    pub set: String,
    /// natural, lower or relative.
    #[arg(long, default_value = "natural")]
    pub mode: String,
    /// Sample points `x1,x2,...`.
    #[arg(long)]
    pub at: String,
}

pub fn density(args: &Density) -> Result<Report> {
    let at: Vec<u64> = parse::list(&args.at, ',', parse::integer)?;
    let bound = at.iter().copied().max().ok_or_else(|| Error::param("no sample points"))?;
    let set = natural(parse::set(&args.set, bound)?)?;
    let mode: DensityMode = args.mode.parse()?;
    let est = density_estimate(&set, mode, &at)?;
    let mut table = Table::new(&["x", "count", "ratio", "ratio_f64", "running_min"]);
    for i in 0..est.at.len() {
        let rm = est.running_min.as_ref().map(|v| s(&v[i])).unwrap_or_default();
        table.push(vec![s(est.at[i]), s(est.counts[i]), s(&est.ratios[i]), s(est.ratios[i].to_f64()), rm]);
    }
    Ok(Report::new("density", args, &est).bound(bound).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct RatioWindow {
    /// Numerator set.
    #[arg(long)]
    pub u: String,
    /// Denominator set.
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Lower density estimate of the numerator set.
    #[arg(long)]
    pub gamma: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub bound: u64,
}

pub fn ratio_window(args: &RatioWindow) -> Result<Report> {
    let u = natural(parse::set(&args.u, args.bound)?)?;
    let v = natural(parse::set(&args.v, args.bound)?)?;
    let r = ratio_in_window(&u, &v, &parse::ratio(&args.a)?, &parse::ratio(&args.b)?, &parse::ratio(&args.gamma)?)?;
    Ok(Report::new("ratio-window", args, &r).bound(args.bound))
}

#[derive(Args, Serialize, Debug)]
pub struct PrimesInterval {
    /// Residue class `a/m`.
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub lo: u64,
    #[arg(long)]
    pub hi: u64,
}

pub fn primes_interval(args: &PrimesInterval) -> Result<Report> {
    let fam = parse::class(&args.class)?;
    let primes = primes_in_interval(&fam, args.lo, args.hi, &Sieve::new(args.hi))?;
    let mut table = Table::new(&["prime"]);
    primes.iter().for_each(|p| table.push(vec![s(p)]));
    Ok(Report::new("primes-interval", args, json!({"count": primes.len(), "primes": primes})).bound(args.hi).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct AlphaIntervals {
    #[arg(long)]
    pub class: String,
    #[arg(long, default_value = "2")]
    pub alpha: String,
    /// Exponent range `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    #[arg(long)]
    pub ceiling: Option<u64>,
}

pub fn alpha_intervals(args: &AlphaIntervals) -> Result<Report> {
    let fam = parse::class(&args.class)?;
    let sieve = sieve(args.ceiling);
    let rows = interval_prime_search(&fam, &parse::ratio(&args.alpha)?, parse::range::<i64>(&args.n)?, &sieve)?;
    let mut table = Table::new(&["n", "lo", "hi", "least_prime"]);
    for r in &rows {
        table.push(vec![s(r.n), s(&r.lo), s(&r.hi), r.least.map(s).unwrap_or_default()]);
    }
    let empty: Vec<i64> = rows.iter().filter(|r| r.least.is_none()).map(|r| r.n).collect();
    let result = json!({"intervals": rows, "empty": empty});
    Ok(Report::new("alpha-intervals", args, result).bound(sieve.ceiling()).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct Dirichlet {
    #[arg(long)]
    pub class: String,
    /// Evaluation points `x1,x2,...`.
    #[arg(long)]
    pub x: String,
    #[arg(long, default_value = "2")]
    pub alpha: String,
    #[arg(long)]
    pub ceiling: Option<u64>,
}

pub fn dirichlet(args: &Dirichlet) -> Result<Report> {
    let fam = parse::class(&args.class)?;
    let xs: Vec<Ratio> = parse::list(&args.x, ',', parse::ratio)?;
    let sieve = sieve(args.ceiling);
    let rows = dirichlet_diagnostic(&fam, &xs, &parse::ratio(&args.alpha)?, &sieve)?;
    let mut table = Table::new(&["x", "count", "g", "log_alpha_g"]);
    for r in &rows {
        table.push(vec![s(&r.x), s(r.count), s(r.g), r.l.map(s).unwrap_or_default()]);
    }
    Ok(Report::new("dirichlet", args, &rows).bound(sieve.ceiling()).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct PrimeRatio {
    /// Class `a/m` of the numerator prime.
    #[arg(long)]
    pub p_class: String,
    /// Class `b/n` of the denominator prime.
    #[arg(long)]
    pub q_class: String,
    /// Window `c,d` with `c < d`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long)]
    pub ceiling: Option<u64>,
}

pub fn prime_ratio(args: &PrimeRatio) -> Result<Report> {
    let (c, d) = parse::pair(&args.window, parse::ratio)?;
    let sieve = sieve(args.ceiling);
    let r = prime_ratio_in_window(&parse::class(&args.p_class)?, &parse::class(&args.q_class)?, &c, &d, &sieve)?;
    let mut v = serde_json::to_value(&r).expect("serializable");
    v["ratio"] = json!(r.value());
    Ok(Report::new("prime-ratio", args, v).bound(sieve.ceiling()))
}

#[derive(Args, Serialize, Debug)]
pub struct BandClassify {
    #[arg(long)]
    pub d: u64,
    /// Elements `x,y;x,y;...` of Z[sqrt(-d)].
    #[arg(long, allow_hyphen_values = true)]
    pub elements: String,
    #[arg(long, default_value = "field")]
    pub form: String,
}

pub fn band_classify(args: &BandClassify) -> Result<Report> {
    let partition = NormBandPartition::with_form(args.d, parse::norm_form(&args.form)?)?;
    let mut table = Table::new(&["element", "norm", "size", "band"]);
    let mut results = Vec::new();
    for z in parse::quad_list(&args.elements, args.d)? {
        let band = partition.classify(&z);
        let band_s = band.map(|b| format!("{b:?}")).unwrap_or_else(|| "none".into());
        table.push(vec![s(z), s(z.norm()), s(partition.size(&z)), band_s.clone()]);
        results.push(json!({"element": s(z), "norm": z.norm(), "size": partition.size(&z), "band": band}));
    }
    Ok(Report::new("band-classify", args, results).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct PrimeBands {
    #[arg(long)]
    pub d: u64,
    /// Band base `B > 1`.
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub n_max: u32,
}

pub fn prime_bands(args: &PrimeBands) -> Result<Report> {
    let sel = prime_band_selection(args.d, &parse::ratio(&args.base)?, args.n_max)?;
    let mut table = Table::new(&["n", "element", "norm", "band_lo", "band_hi"]);
    for p in &sel.selected {
        table.push(vec![s(p.n), s(p.element), s(p.norm), s(&p.band.0), s(&p.band.1)]);
    }
    let mut v = serde_json::to_value(&sel).expect("serializable");
    v["certificates"] = json!(sel.certificates.iter().map(|c| c.to_text()).collect::<Vec<_>>());
    Ok(Report::new("prime-bands", args, v).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct Bertrand {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub lo: String,
    #[arg(long)]
    pub hi: String,
    #[arg(long)]
    pub ceiling: Option<u64>,
}

pub fn bertrand(args: &Bertrand) -> Result<Report> {
    let probe = bertrand_probe(
        args.d,
        &parse::ratio(&args.base)?,
        &parse::ratio(&args.lo)?,
        &parse::ratio(&args.hi)?,
        &sieve(args.ceiling),
    )?;
    Ok(Report::new("bertrand", args, &probe))
}

#[derive(Args, Serialize, Debug)]
pub struct PartitionCheck {
    #[arg(long, default_value_t = 1)]
    pub d: u64,
    /// Ideal generators `x,y;x,y`; the whole ring when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: Option<String>,
    /// finite:x,y;..  parity  hashed:SEED  residue:M:r,..  table:C|D
    #[arg(long, allow_hyphen_values = true)]
    pub coloring: String,
    /// Grid is `n x n` cell centres of the unit box.
    #[arg(long, default_value_t = 10)]
    pub grid: u32,
    #[arg(long, default_value = "1/10")]
    pub eps: String,
    #[arg(long, default_value_t = 10_000)]
    pub bound: u64,
}

pub fn partition_check(args: &PartitionCheck) -> Result<Report> {
    let ideal = parse::ideal(args.ideal.as_deref(), args.d)?;
    let coloring = parse::coloring(&args.coloring, args.d)?;
    let grid = complex_unit_box(args.grid, args.d)?;
    let rep = partition_density_check(&ideal, &coloring, &grid, &parse::ratio(&args.eps)?, args.bound)?;
    let result = json!({
        "dense_side": rep.dense_side,
        "c_size": rep.c_size,
        "d_size": rep.d_size,
        "c_coverage": rep.c_coverage.coverage,
        "d_coverage": rep.d_coverage.coverage,
    });
    Ok(Report::new("partition-check", args, result).bound(args.bound))
}

#[derive(Args, Serialize, Debug)]
pub struct Coverage {
    #[arg(long)]
    pub numer: String,
    /// Defaults to the numerator set.
    #[arg(long)]
    pub denom: Option<String>,
    #[arg(long)]
    pub bound: u64,
    #[arg(long)]
    pub eps: String,
    /// Real grid `lo,hi,n` of cell centres.
    #[arg(long, conflicts_with_all = ["unit_box", "target"])]
    pub grid: Option<String>,
    /// Complex grid: `n x n` cell centres of the unit box.
    #[arg(long, conflicts_with = "target")]
    pub unit_box: Option<u32>,
    /// Explicit targets: rationals, or `x,y` for complex ones.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Vec<String>,
}

pub fn coverage(args: &Coverage) -> Result<Report> {
    let numer = parse::set(&args.numer, args.bound)?;
    let denom = match &args.denom {
        Some(d) => parse::set(d, args.bound)?,
        None => numer.clone(),
    };
    let d = numer.d().or(denom.d());
    let targets = if let Some(g) = &args.grid {
        let v: Vec<&str> = g.split(',').collect();
        let [lo, hi, n] = v[..] else {
            return Err(Error::param("--grid takes lo,hi,n"));
        };
        Targets::Real(real_grid(&parse::ratio(lo)?, &parse::ratio(hi)?, parse::integer(n)?)?)
    } else if let Some(n) = args.unit_box {
        Targets::Complex(complex_unit_box(n, d.unwrap_or(1))?)
    } else if let Some(d) = d {
        Targets::Complex(args.target.iter().map(|t| parse::quad_rational(t, d)).collect::<Result<_>>()?)
    } else {
        Targets::Real(args.target.iter().map(|t| parse::ratio(t)).collect::<Result<_>>()?)
    };
    if targets.is_empty() {
        return Err(Error::param("give --grid, --unit-box or --target"));
    }
    let rep = coverage_check(&numer, &denom, &targets, &parse::ratio(&args.eps)?)?;
    let mut table = Table::new(&["target", "covered", "best_error_sq", "witness"]);
    for r in &rep.results {
        let best = r.best_error_sq.as_ref().map(s).unwrap_or_default();
        let w = r.witness.as_ref().map(s).unwrap_or_default();
        let target = match &r.target {
            Target::Real(x) => s(x),
            Target::Complex(z) => s(z),
        };
        table.push(vec![target, s(r.covered), best, w]);
    }
    let result = json!({
        "epsilon": rep.epsilon,
        "covered": rep.covered,
        "total": rep.total,
        "coverage": rep.coverage,
        "targets": rep.results,
    });
    Ok(Report::new("coverage", args, result).bound(args.bound).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct Quotients {
    #[arg(long)]
    pub numer: String,
    #[arg(long)]
    pub denom: Option<String>,
    #[arg(long)]
    pub bound: u64,
}

pub fn quotients(args: &Quotients) -> Result<Report> {
    let numer = parse::set(&args.numer, args.bound)?;
    let denom = match &args.denom {
        Some(d) => parse::set(d, args.bound)?,
        None => numer.clone(),
    };
    let values: Vec<String> = if numer.d().is_some() || denom.d().is_some() {
        quad_quotient_set(&numer, &denom)?.iter().map(s).collect()
    } else {
        quotient_set(&numer, &denom)?.iter().map(s).collect()
    };
    let mut table = Table::new(&["quotient"]);
    values.iter().for_each(|v| table.push(vec![v.clone()]));
    let result = json!({"count": values.len(), "quotients": values});
    Ok(Report::new("quotients", args, result).bound(args.bound).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct Ideal {
    #[arg(long)]
    pub d: u64,
    /// Generators `x,y;x,y`; the whole ring when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: Option<String>,
    #[arg(long)]
    pub bound: u64,
}

pub fn ideal(args: &Ideal) -> Result<Report> {
    let ideal = parse::ideal(args.gens.as_deref(), args.d)?;
    let elems = ideal.enumerate(args.bound);
    let mut table = Table::new(&["x", "y", "norm"]);
    elems.iter().for_each(|z| table.push(vec![s(z.x), s(z.y), s(z.norm())]));
    let (g1, t, g2) = ideal.basis();
    let result = json!({
        "basis": [[g1, t], [0, g2]],
        "index": ideal.index(),
        "count": elems.len(),
        "elements": elems.iter().map(s).collect::<Vec<_>>(),
    });
    Ok(Report::new("ideal", args, result).bound(args.bound).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct QuadPrimes {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub bound: u64,
}

pub fn quad_primes_cmd(args: &QuadPrimes) -> Result<Report> {
    let primes = quad_primes(args.d, args.bound)?;
    let mut table = Table::new(&["element", "norm"]);
    primes.iter().for_each(|z| table.push(vec![s(z), s(z.norm())]));
    let result = json!({"count": primes.len(), "primes": primes.iter().map(s).collect::<Vec<_>>()});
    Ok(Report::new("quad-primes", args, result).bound(args.bound).table(table))
}

#[derive(Args, Serialize, Debug)]
pub struct Witness {
    #[arg(long)]
    pub d: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: Option<String>,
    /// `x,y`
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// `x,y` with rational coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

pub fn witness(args: &Witness) -> Result<Report> {
    let ideal = parse::ideal(args.ideal.as_deref(), args.d)?;
    let w = witness_construct(
        &parse::quad_int(&args.gamma, args.d)?,
        &parse::quad_rational(&args.alpha, args.d)?,
        &parse::quad_rational(&args.beta, args.d)?,
        &ideal,
    )?;
    let mut v = serde_json::to_value(&w).expect("serializable");
    v["defects_within_bound"] = json!(w.defects_within_bound());
    Ok(Report::new("witness", args, v))
}

#[derive(Args, Serialize, Debug)]
pub struct Threshold {
    #[arg(long)]
    pub d: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long)]
    pub eps: String,
}

pub fn threshold(args: &Threshold) -> Result<Report> {
    let ideal = parse::ideal(args.ideal.as_deref(), args.d)?;
    let n0 = threshold_n0(
        &parse::quad_rational(&args.alpha, args.d)?,
        &parse::quad_rational(&args.beta, args.d)?,
        &parse::ratio(&args.eps)?,
        &ideal,
    )?;
    Ok(Report::new("threshold", args, json!({"n0": n0})))
}

#[derive(Args, Serialize, Debug)]
pub struct Round {
    /// Rationals to round away from zero.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vec<String>,
    /// Element `x,y` of Q(sqrt(-d)) to round coordinate-wise.
    #[arg(long, requires = "d", allow_hyphen_values = true)]
    pub z: Vec<String>,
    #[arg(long)]
    pub d: Option<u64>,
}

pub fn round(args: &Round) -> Result<Report> {
    let mut table = Table::new(&["input", "rounded"]);
    for x in &args.x {
        let r = parse::ratio(x)?;
        table.push(vec![s(&r), s(away_round(&r))]);
    }
    for z in &args.z {
        let q = parse::quad_rational(z, args.d.unwrap_or(1))?;
        table.push(vec![s(&q), s(away_round_quad(&q)?)]);
    }
    if table.rows.is_empty() {
        return Err(Error::param("give --x or --z"));
    }
    let result: Vec<Value> = table.rows.iter().map(|r| json!({"input": r[0], "rounded": r[1]})).collect();
    Ok(Report::new("round", args, result).table(table))
}
