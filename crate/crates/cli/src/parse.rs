//! Parsers for command-line values. Everything numeric is exact: integers or
//! `p/q` rationals, never decimals.

use std::ops::RangeInclusive;

use quotset::quadratic::{Band, Coloring, Ideal, NormBandPartition, NormForm};
use quotset::{
    ApFamily, DigitPrefixFamily, Error, NaturalKind, NaturalSet, QuadInt, QuadKind, QuadRational, QuadraticSet, Ratio,
    Result, SetDescriptor,
};

pub fn ratio(s: &str) -> Result<Ratio> {
    s.trim().parse()
}

pub fn integer<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::param(format!("expected an integer, found {s:?}")))
}

pub fn list<T>(s: &str, sep: char, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(sep).map(item).collect()
}

/// `a,b` as a pair.
pub fn pair<T>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<(T, T)> {
    match s.split_once(',') {
        Some((a, b)) => Ok((item(a)?, item(b)?)),
        None => Err(Error::param(format!("expected two comma-separated values, found {s:?}"))),
    }
}

/// `lo..hi` (inclusive) or a single value.
pub fn range<T: std::str::FromStr + Copy>(s: &str) -> Result<RangeInclusive<T>> {
    match s.split_once("..") {
        Some((a, b)) => Ok(integer(a)?..=integer(b.trim_start_matches('='))?),
        None => {
            let v = integer(s)?;
            Ok(v..=v)
        }
    }
}

/// Residue class `a/m`, read as `a mod m` (not reduced as a fraction).
pub fn class(s: &str) -> Result<ApFamily> {
    let (a, m) = s
        .split_once('/')
        .or_else(|| s.split_once(':'))
        .ok_or_else(|| Error::param(format!("expected a residue class a/m, found {s:?}")))?;
    ApFamily::new(integer(a)?, integer(m)?)
}

/// `a,c,b`.
pub fn family(s: &str, include_powers: bool) -> Result<DigitPrefixFamily> {
    let v: Vec<u64> = list(s, ',', integer)?;
    match v[..] {
        [a, c, b] => DigitPrefixFamily::new(a, c, b, include_powers),
        _ => Err(Error::param(format!("expected a,c,b, found {s:?}"))),
    }
}

/// `x,y` for `x + y*sqrt(-d)`.
pub fn quad_int(s: &str, d: u64) -> Result<QuadInt> {
    let (x, y) = pair(s, integer::<i64>)?;
    Ok(QuadInt::new(x, y, d))
}

/// `x,y` with rational coordinates.
pub fn quad_rational(s: &str, d: u64) -> Result<QuadRational> {
    let (x, y) = pair(s, ratio)?;
    Ok(QuadRational::new(x, y, d))
}

pub fn quad_list(s: &str, d: u64) -> Result<Vec<QuadInt>> {
    list(s, ';', |t| quad_int(t, d))
}

pub fn norm_form(s: &str) -> Result<NormForm> {
    match s {
        "field" => Ok(NormForm::Field),
        "coordinate" => Ok(NormForm::Coordinate),
        _ => Err(Error::param(format!("unknown norm form {s:?} (field or coordinate)"))),
    }
}

/// Ideal from `x,y;x,y`, or the whole ring when `None`.
pub fn ideal(s: Option<&str>, d: u64) -> Result<Ideal> {
    match s {
        None => Ideal::unit(d),
        Some(s) => match quad_list(s, d)?[..] {
            [a, b] => Ideal::new(a, b),
            [a] => Ideal::new(a, QuadInt::zero(d)),
            _ => Err(Error::param(format!("an ideal takes one or two generators, found {s:?}"))),
        },
    }
}

/// Coloring rules: `finite:x,y;x,y`, `parity`, `hashed:SEED`, `residue:M:r,r`,
/// `table:x,y;..|x,y;..` (C list, then D list).
pub fn coloring(s: &str, d: u64) -> Result<Coloring> {
    let (rule, rest) = s.split_once(':').unwrap_or((s, ""));
    match rule {
        "finite" => Ok(Coloring::FiniteC { c: quad_list(rest, d)? }),
        "parity" => Ok(Coloring::NormParity),
        "hashed" => Ok(Coloring::Hashed { seed: integer(rest)? }),
        "residue" => {
            let (m, rs) = rest.split_once(':').unwrap_or((rest, ""));
            Ok(Coloring::NormResidue { modulus: integer(m)?, c_residues: list(rs, ',', integer)? })
        }
        "table" => {
            let (c, dd) = rest.split_once('|').ok_or_else(|| Error::param("table coloring needs C|D lists"))?;
            Ok(Coloring::Table { c: quad_list(c, d)?, d: quad_list(dd, d)? })
        }
        _ => Err(Error::param(format!("unknown coloring {rule:?}"))),
    }
}

/// Set descriptions.
///
/// Natural sets (bounded by value): `naturals`, `prog:r/m`, `primes:a/m`,
/// `prefix:a,c,b` (without powers), `prefix+:a,c,b` (with powers),
/// `list:1,2,3`.
///
/// Quadratic sets (bounded by norm): `ring:d`, `ideal:d:x,y;x,y`,
/// `band:d:A[:coordinate]`, `elems:d:x,y;x,y`.
pub fn set(s: &str, bound: u64) -> Result<SetDescriptor> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let natural = |k: NaturalKind| -> Result<SetDescriptor> { Ok(NaturalSet::new(k, bound)?.into()) };
    let quad = |k: QuadKind| -> Result<SetDescriptor> { Ok(QuadraticSet::new(k, bound)?.into()) };
    let split_d = |rest: &str| -> Result<(u64, String)> {
        let (d, tail) = rest.split_once(':').unwrap_or((rest, ""));
        Ok((integer(d)?, tail.to_string()))
    };
    match kind {
        "naturals" => natural(NaturalKind::Progression { residue: 0, modulus: 1 }),
        "prog" => {
            let (r, m) = rest.split_once('/').ok_or_else(|| Error::param("prog needs r/m"))?;
            natural(NaturalKind::Progression { residue: integer(r)?, modulus: integer(m)? })
        }
        "primes" => natural(NaturalKind::ApPrimes { family: class(rest)? }),
        "prefix" => natural(NaturalKind::DigitPrefix { family: family(rest, false)? }),
        "prefix+" => natural(NaturalKind::DigitPrefix { family: family(rest, true)? }),
        "list" => natural(NaturalKind::Explicit { elements: list(rest, ',', integer)? }),
        "ring" => {
            let d = integer(rest)?;
            quad(QuadKind::Ideal { ideal: Ideal::unit(d)? })
        }
        "ideal" => {
            let (d, gens) = split_d(rest)?;
            quad(QuadKind::Ideal { ideal: ideal(Some(&gens), d)? })
        }
        "band" => {
            let (d, tail) = split_d(rest)?;
            let (band, form) = tail.split_once(':').unwrap_or((&tail, "field"));
            let band: Band = band.parse()?;
            let partition = NormBandPartition::with_form(d, norm_form(form)?)?;
            quad(QuadKind::NormBand { ideal: Ideal::unit(d)?, partition, band })
        }
        "elems" => {
            let (d, tail) = split_d(rest)?;
            quad(QuadKind::Explicit { d, elements: quad_list(&tail, d)? })
        }
        _ => Err(Error::param(format!("unknown set kind {kind:?}"))),
    }
}
