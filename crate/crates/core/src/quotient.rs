//! Quotient sets of truncated sets, the brute-force gap oracle, and epsilon-net
//! coverage.
//!
//! Every comparison is exact. Floats appear only to size search windows, and
//! those windows carry integer margins on both sides.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Region, Witness};
use crate::error::{Error, Result};
use crate::quad::{QuadInt, QuadRational};
use crate::ratio::{cmp_fractions, Ratio};
use crate::sets::SetDescriptor;

/// Largest number of pairs `quotient_set` will form.
pub const MAX_QUOTIENT_PAIRS: u64 = 4_000_000;

/// Either positive integers or ring elements, as enumerated.
enum Elements {
    Natural(Vec<u64>),
    Quadratic(Vec<QuadInt>),
}

fn elements(s: &SetDescriptor) -> Result<Elements> {
    Ok(match s {
        SetDescriptor::Natural(n) => Elements::Natural(n.enumerate()?),
        SetDescriptor::Quadratic(q) => Elements::Quadratic(q.enumerate()),
    })
}

fn natural_elements(s: &SetDescriptor) -> Result<Vec<u64>> {
    match elements(s)? {
        Elements::Natural(v) => Ok(v),
        Elements::Quadratic(_) => Err(Error::param("expected a set of positive integers")),
    }
}

fn check_pair_count(a: usize, b: usize) -> Result<()> {
    let pairs = (a as u64).saturating_mul(b as u64);
    if pairs > MAX_QUOTIENT_PAIRS {
        return Err(Error::Capacity { requested: pairs, ceiling: MAX_QUOTIENT_PAIRS });
    }
    Ok(())
}

/// All reduced `u/v`, sorted and duplicate-free.
pub fn quotient_set(numer: &SetDescriptor, denom: &SetDescriptor) -> Result<Vec<Ratio>> {
    let us = natural_elements(numer)?;
    let vs = natural_elements(denom)?;
    if us.is_empty() || vs.is_empty() {
        return Err(Error::domain("quotient set of an empty enumeration"));
    }
    if vs.contains(&0) {
        return Err(Error::domain("denominator set contains 0"));
    }
    check_pair_count(us.len(), vs.len())?;
    let mut pairs: Vec<(u64, u64)> = us
        .iter()
        .flat_map(|&u| {
            vs.iter().map(move |&v| {
                let g = u.gcd(&v).max(1);
                (u / g, v / g)
            })
        })
        .collect();
    pairs.sort_unstable_by(|a, b| cmp_fractions(a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128));
    pairs.dedup();
    Ok(pairs.into_iter().map(|(u, v)| Ratio::from_reduced(u, v)).collect())
}

/// All `u/v` for ring elements, sorted by `(|z|^2, x, y)` and duplicate-free.
pub fn quad_quotient_set(numer: &SetDescriptor, denom: &SetDescriptor) -> Result<Vec<QuadRational>> {
    let d = numer.d().or(denom.d()).ok_or_else(|| Error::param("expected sets in Z[sqrt(-d)]"))?;
    let us = ring_elements(numer, d)?;
    let vs = ring_elements(denom, d)?;
    if us.is_empty() || vs.is_empty() {
        return Err(Error::domain("quotient set of an empty enumeration"));
    }
    if vs.iter().any(QuadInt::is_zero) {
        return Err(Error::domain("denominator set contains 0"));
    }
    check_pair_count(us.len(), vs.len())?;
    let mut out: Vec<(Ratio, QuadRational)> = us
        .iter()
        .flat_map(|u| vs.iter().map(move |v| u.to_rational().div(&v.to_rational()).expect("nonzero")))
        .map(|q| (q.norm(), q))
        .collect();
    out.sort_by(|a, b| (&a.0, &a.1.x, &a.1.y).cmp(&(&b.0, &b.1.x, &b.1.y)));
    out.dedup_by(|a, b| a.1 == b.1);
    Ok(out.into_iter().map(|(_, q)| q).collect())
}

/// Elements as ring elements of `Z[sqrt(-d)]`; integers embed on the real axis.
fn ring_elements(s: &SetDescriptor, d: u64) -> Result<Vec<QuadInt>> {
    match elements(s)? {
        Elements::Natural(v) => v
            .into_iter()
            .map(|n| {
                i64::try_from(n).map(|x| QuadInt::new(x, 0, d)).map_err(|_| Error::param("element exceeds i64"))
            })
            .collect(),
        Elements::Quadratic(v) => {
            if s.d() != Some(d) {
                return Err(Error::param("sets lie in different rings"));
            }
            Ok(v)
        }
    }
}

fn ring_member(s: &SetDescriptor, z: &QuadInt) -> bool {
    match s {
        SetDescriptor::Natural(n) => z.y == 0 && z.x > 0 && n.contains(z.x as u64),
        SetDescriptor::Quadratic(q) => q.contains(z),
    }
}

/// First pair `(i, j)` in `denom` order with `lo < numer[i] / denom[j] < hi`.
/// Both slices are ascending; zero denominators are skipped.
fn interval_search(numer: &[u64], denom: &[u64], lo: &Ratio, hi: &Ratio) -> Option<(usize, usize)> {
    match (lo.small_parts(), hi.small_parts()) {
        (Some((ln, ld)), Some((hn, hd))) => denom.par_iter().enumerate().find_map_first(|(j, &v)| {
            if v == 0 {
                return None;
            }
            let v = v as i128;
            // least integer strictly above lo * v
            let u_min = Integer::div_floor(&(ln * v), &ld) + 1;
            let i = numer.partition_point(|&u| (u as i128) < u_min);
            let u = *numer.get(i)? as i128;
            (u * hd < hn * v).then_some((i, j))
        }),
        _ => denom.par_iter().enumerate().find_map_first(|(j, &v)| {
            if v == 0 {
                return None;
            }
            let vb = BigInt::from(v);
            let u_min = (lo.numer() * &vb).div_floor(lo.denom()) + 1;
            let i = numer.partition_point(|&u| BigInt::from(u) < u_min);
            let u = BigInt::from(*numer.get(i)?);
            (u * hi.denom() < hi.numer() * vb).then_some((i, j))
        }),
    }
}

/// Distinct norms with the first element of each, from a norm-sorted list.
fn norm_classes(zs: &[QuadInt]) -> (Vec<u64>, Vec<QuadInt>) {
    let mut norms = Vec::new();
    let mut reps = Vec::new();
    for z in zs {
        let n = z.norm();
        if norms.last() != Some(&n) {
            norms.push(n);
            reps.push(*z);
        }
    }
    (norms, reps)
}

/// Searches the enumerated quotients for one strictly inside `region`.
///
/// Intervals need integer sets. Annuli compare `N(u) / N(v)` with the
/// squared-modulus bounds, embedding integers on the real axis.
pub fn brute_force_gap_check(numer: &SetDescriptor, denom: &SetDescriptor, region: &Region) -> Result<Option<Witness>> {
    let mut out = brute_force_gap_check_all(numer, denom, std::slice::from_ref(region))?;
    Ok(out.pop().flatten())
}

/// `brute_force_gap_check` for several regions over one enumeration.
pub fn brute_force_gap_check_all(
    numer: &SetDescriptor,
    denom: &SetDescriptor,
    regions: &[Region],
) -> Result<Vec<Option<Witness>>> {
    let both_natural = matches!((numer, denom), (SetDescriptor::Natural(_), SetDescriptor::Natural(_)));
    let needs_ring = regions.iter().any(|r| matches!(r, Region::Annulus { .. }));
    let naturals = if both_natural {
        Some((natural_elements(numer)?, natural_elements(denom)?))
    } else {
        None
    };
    let squares = match (&naturals, needs_ring) {
        (Some((us, vs)), true) => {
            let sq = |xs: &[u64]| -> Result<Vec<u64>> {
                xs.iter().map(|x| x.checked_mul(*x).ok_or_else(|| Error::param("element too large to square"))).collect()
            };
            Some((sq(us)?, sq(vs)?))
        }
        _ => None,
    };
    let ring = match (both_natural, needs_ring) {
        (false, true) => {
            let d = numer.d().or(denom.d()).expect("one side is quadratic");
            Some((norm_classes(&ring_elements(numer, d)?), norm_classes(&ring_elements(denom, d)?)))
        }
        _ => None,
    };
    regions
        .iter()
        .map(|region| match region {
            Region::Interval { lo, hi } => {
                let (us, vs) = naturals.as_ref().ok_or_else(|| Error::param("interval regions need sets of positive integers"))?;
                Ok(interval_search(us, vs, lo, hi).map(|(i, j)| Witness::Real { u: us[i], v: vs[j] }))
            }
            Region::Annulus { lo_sq, hi_sq } => {
                if let (Some((us, vs)), Some((nu, nv))) = (&naturals, &squares) {
                    return Ok(interval_search(nu, nv, lo_sq, hi_sq).map(|(i, j)| Witness::Real { u: us[i], v: vs[j] }));
                }
                let ((nu, ru), (nv, rv)) = ring.as_ref().expect("ring elements prepared");
                Ok(interval_search(nu, nv, lo_sq, hi_sq).map(|(i, j)| Witness::Complex { u: ru[i], v: rv[j] }))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "lowercase")]
pub enum Targets {
    Real(Vec<Ratio>),
    Complex(Vec<QuadRational>),
}

impl Targets {
    pub fn len(&self) -> usize {
        match self {
            Targets::Real(v) => v.len(),
            Targets::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Target {
    Real(Ratio),
    Complex(QuadRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetResult {
    pub target: Target,
    /// Least `|target - u/v|^2` found. Complex targets only search within
    /// `epsilon`, so `None` there means no quotient came that close.
    pub best_error_sq: Option<Ratio>,
    pub witness: Option<Witness>,
    pub covered: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageReport {
    pub epsilon: Ratio,
    pub results: Vec<TargetResult>,
    pub covered: usize,
    pub total: usize,
    pub coverage: f64,
}

impl CoverageReport {
    fn from_results(epsilon: &Ratio, results: Vec<TargetResult>) -> Self {
        let covered = results.iter().filter(|r| r.covered).count();
        let total = results.len();
        CoverageReport { epsilon: epsilon.clone(), coverage: covered as f64 / total as f64, results, covered, total }
    }

    /// Every target uncovered, for a side with no elements.
    pub fn empty(targets: &Targets, epsilon: &Ratio) -> Self {
        let results = match targets {
            Targets::Real(v) => v.iter().cloned().map(Target::Real).collect::<Vec<_>>(),
            Targets::Complex(v) => v.iter().cloned().map(Target::Complex).collect(),
        }
        .into_iter()
        .map(|target| TargetResult { target, best_error_sq: None, witness: None, covered: false })
        .collect();
        Self::from_results(epsilon, results)
    }

    pub fn is_full(&self) -> bool {
        self.covered == self.total
    }
}

/// For each target, the nearest enumerated quotient; a target is covered
/// when the distance is below `epsilon`.
pub fn coverage_check(
    numer: &SetDescriptor,
    denom: &SetDescriptor,
    targets: &Targets,
    epsilon: &Ratio,
) -> Result<CoverageReport> {
    if targets.is_empty() {
        return Err(Error::param("empty target grid"));
    }
    if !epsilon.is_positive() {
        return Err(Error::param("epsilon must be positive"));
    }
    let eps_sq = epsilon * epsilon;
    let quadratic = numer.d().or(denom.d());
    match (quadratic, targets) {
        (None, Targets::Real(ts)) => {
            let us = natural_elements(numer)?;
            let vs: Vec<u64> = natural_elements(denom)?.into_iter().filter(|&v| v > 0).collect();
            if us.is_empty() || vs.is_empty() {
                return Err(Error::domain("coverage of an empty enumeration"));
            }
            let results = ts
                .par_iter()
                .map(|t| real_target(t, &us, &vs, &eps_sq))
                .collect::<Result<Vec<_>>>()?;
            Ok(CoverageReport::from_results(epsilon, results))
        }
        (None, Targets::Complex(_)) => Err(Error::param("complex targets need sets in Z[sqrt(-d)]")),
        (Some(d), _) => {
            let ts: Vec<QuadRational> = match targets {
                Targets::Real(v) => v.iter().map(|x| QuadRational::new(x.clone(), Ratio::zero(), d)).collect(),
                Targets::Complex(v) => v.clone(),
            };
            if ts.iter().any(|t| t.d != d) {
                return Err(Error::param(format!("targets must lie in Q(sqrt(-{d}))")));
            }
            let us = ring_elements(numer, d)?;
            let vs: Vec<QuadInt> = ring_elements(denom, d)?.into_iter().filter(|v| !v.is_zero()).collect();
            if us.is_empty() || vs.is_empty() {
                return Err(Error::domain("coverage of an empty enumeration"));
            }
            let (unorms, _) = norm_classes(&us);
            let results = ts
                .par_iter()
                .map(|t| complex_target(t, numer, &unorms, &vs, &eps_sq))
                .collect::<Result<Vec<_>>>()?;
            Ok(CoverageReport::from_results(epsilon, results))
        }
    }
}

fn target_parts(t: &Ratio) -> Result<(i128, i128)> {
    t.small_parts().ok_or_else(|| Error::param(format!("target {t} is too large")))
}

// `a/b < c/d` with positive denominators.
fn less(a: i128, b: i128, c: i128, d: i128) -> bool {
    cmp_fractions(a, b, c, d).is_lt()
}

fn real_target(t: &Ratio, us: &[u64], vs: &[u64], eps_sq: &Ratio) -> Result<TargetResult> {
    let (p, q) = target_parts(t)?;
    // best error as |p v - q u| / (q v)
    let mut best: Option<(i128, i128, u64, u64)> = None;
    for &v in vs {
        let vi = v as i128;
        let pv = p * vi;
        let i = us.partition_point(|&u| q * (u as i128) <= pv);
        for k in [i.wrapping_sub(1), i] {
            let Some(&u) = us.get(k) else { continue };
            let num = (pv - q * u as i128).abs();
            let den = q * vi;
            if best.is_none_or(|(bn, bd, _, _)| less(num, den, bn, bd)) {
                best = Some((num, den, u, v));
            }
        }
        if best.is_some_and(|b| b.0 == 0) {
            break;
        }
    }
    let (num, den, u, v) = best.expect("nonempty sets");
    let err = Ratio::new(num, den)?;
    let err_sq = &err * &err;
    Ok(TargetResult {
        target: Target::Real(t.clone()),
        covered: err_sq < *eps_sq,
        best_error_sq: Some(err_sq),
        witness: Some(Witness::Real { u, v }),
    })
}

fn complex_target(
    t: &QuadRational,
    numer: &SetDescriptor,
    unorms: &[u64],
    vs: &[QuadInt],
    eps_sq: &Ratio,
) -> Result<TargetResult> {
    let d = t.d as i128;
    let (xn, xd) = target_parts(&t.x)?;
    let (yn, yd) = target_parts(&t.y)?;
    let q = xd.lcm(&yd);
    let (px, py) = (xn * (q / xd), yn * (q / yd));
    let (en, ed) = eps_sq.small_parts().ok_or_else(|| Error::param("epsilon is too fine"))?;
    let t_sq = t.norm().to_f64();
    // current cap as a fraction; starts at epsilon^2 and only shrinks
    let (mut cn, mut cd) = (en, ed);
    let mut best: Option<(QuadInt, QuadInt)> = None;
    let overflow = || Error::param("coverage arithmetic exceeds 128 bits");
    for v in vs {
        let nv = v.norm() as i128;
        let (vx, vy) = (v.x as i128, v.y as i128);
        // w = t * v = (wx + wy sqrt(-d)) / q
        let wx = px.checked_mul(vx).zip(py.checked_mul(vy).and_then(|z| z.checked_mul(d)));
        let wx = wx.and_then(|(a, b)| a.checked_sub(b)).ok_or_else(overflow)?;
        let wy = px.checked_mul(vy).zip(py.checked_mul(vx));
        let wy = wy.and_then(|(a, b)| a.checked_add(b)).ok_or_else(overflow)?;

        let cap = cn as f64 / cd as f64;
        let r = (cap * nv as f64).sqrt();
        let w_abs = (t_sq * nv as f64).sqrt();
        let lo = ((w_abs - r).max(0.0).powi(2) * (1.0 - 1e-9) - 1.0).max(0.0) as u64;
        let hi = (w_abs + r).powi(2) * (1.0 + 1e-9) + 1.0;
        let i = unorms.partition_point(|&n| n < lo);
        if unorms.get(i).is_none_or(|&n| n as f64 > hi) {
            continue;
        }

        let (cx, cy) = (wx as f64 / q as f64, wy as f64 / q as f64);
        let rr = r * r;
        let ry = (rr / d as f64).sqrt();
        for uy in (cy - ry).floor() as i64 - 1..=(cy + ry).ceil() as i64 + 1 {
            let dy = cy - uy as f64;
            let rem = rr - d as f64 * dy * dy;
            let rx = if rem > 0.0 { rem.sqrt() } else { 0.0 };
            for ux in (cx - rx).floor() as i64 - 1..=(cx + rx).ceil() as i64 + 1 {
                let u = QuadInt::new(ux, uy, t.d);
                // |w - u|^2 / N(v) = ((wx - q ux)^2 + d (wy - q uy)^2) / (q^2 N(v))
                let ex = wx.checked_sub(q * ux as i128).ok_or_else(overflow)?;
                let ey = wy.checked_sub(q * uy as i128).ok_or_else(overflow)?;
                let num = ex
                    .checked_mul(ex)
                    .zip(ey.checked_mul(ey).and_then(|z| z.checked_mul(d)))
                    .and_then(|(a, b)| a.checked_add(b))
                    .ok_or_else(overflow)?;
                let den = (q * q).checked_mul(nv).ok_or_else(overflow)?;
                if less(num, den, cn, cd) && ring_member(numer, &u) {
                    (cn, cd) = (num, den);
                    best = Some((u, *v));
                }
            }
        }
        if best.is_some() && cn == 0 {
            break;
        }
    }
    let best_error_sq = best.map(|_| Ratio::new(cn, cd)).transpose()?;
    Ok(TargetResult {
        target: Target::Complex(t.clone()),
        covered: best.is_some(),
        best_error_sq,
        witness: best.map(|(u, v)| Witness::Complex { u, v }),
    })
}

/// `n` cell centres of `[lo, hi]`.
pub fn real_grid(lo: &Ratio, hi: &Ratio, n: u32) -> Result<Vec<Ratio>> {
    if n == 0 || lo >= hi {
        return Err(Error::param("grid needs n >= 1 and lo < hi"));
    }
    let step = (hi - lo) / Ratio::from(2 * n as u64);
    Ok((0..n as u64).map(|i| lo + &step * Ratio::from(2 * i + 1)).collect())
}

/// `n x n` cell centres of the box `[x0, x1] x [y0, y1]` in the coordinates of
/// `x + y*sqrt(-d)`.
pub fn complex_box_grid(x0: &Ratio, y0: &Ratio, x1: &Ratio, y1: &Ratio, n: u32, d: u64) -> Result<Vec<QuadRational>> {
    crate::quad::validate_d(d)?;
    let xs = real_grid(x0, x1, n)?;
    let ys = real_grid(y0, y1, n)?;
    Ok(ys
        .iter()
        .flat_map(|y| xs.iter().map(move |x| QuadRational::new(x.clone(), y.clone(), d)))
        .collect())
}

/// `n x n` cell centres of the unit box.
pub fn complex_unit_box(n: u32, d: u64) -> Result<Vec<QuadRational>> {
    complex_box_grid(&Ratio::zero(), &Ratio::zero(), &Ratio::one(), &Ratio::one(), n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digit_prefix::DigitPrefixFamily;
    use crate::quadratic::{Band, Ideal, NormBandPartition};
    use crate::sets::{NaturalSet, QuadKind, QuadraticSet};

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    fn explicit(v: &[u64]) -> SetDescriptor {
        NaturalSet::explicit(v.to_vec(), 1000).unwrap().into()
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_set(&explicit(&[1, 2]), &explicit(&[1, 2])).unwrap(), [r("1/2"), r("1"), r("2")]);
        let got = quotient_set(&explicit(&[1, 10, 11]), &explicit(&[1, 10, 11])).unwrap();
        let want: Vec<Ratio> = ["1/11", "1/10", "10/11", "1", "11/10", "10", "11"].iter().map(|s| r(s)).collect();
        assert_eq!(got, want);
        assert_eq!(quotient_set(&explicit(&[2]), &explicit(&[4])).unwrap(), [r("1/2")]);
        assert!(matches!(quotient_set(&explicit(&[1]), &explicit(&[0, 1])), Err(Error::Domain(_))));
        assert!(matches!(quotient_set(&explicit(&[]), &explicit(&[1])), Err(Error::Domain(_))));
    }

    #[test]
    fn gap_check_examples() {
        let dp: SetDescriptor =
            NaturalSet::digit_prefix(DigitPrefixFamily::new(1, 2, 10, false).unwrap(), 10_000).unwrap().into();
        let region = Region::interval(r("2"), r("5")).unwrap();
        assert_eq!(brute_force_gap_check(&dp, &dp, &region).unwrap(), None);
        let nat: SetDescriptor = NaturalSet::naturals(100).unwrap().into();
        assert_eq!(brute_force_gap_check(&nat, &nat, &region).unwrap(), Some(Witness::Real { u: 3, v: 1 }));

        let band: SetDescriptor = QuadraticSet::new(
            QuadKind::NormBand {
                ideal: Ideal::unit(1).unwrap(),
                partition: NormBandPartition::new(1).unwrap(),
                band: Band::C,
            },
            10_000,
        )
        .unwrap()
        .into();
        let ann = Region::annulus(r("5/3"), r("3")).unwrap();
        assert_eq!(brute_force_gap_check(&band, &band, &ann).unwrap(), None);
        let ring: SetDescriptor = QuadraticSet::ideal(Ideal::unit(1).unwrap(), 100).unwrap().into();
        let w = brute_force_gap_check(&ring, &ring, &ann).unwrap().unwrap();
        let m = w.squared_modulus();
        assert!(m > r("5/3") && m < r("3"));
    }

    #[test]
    fn coverage_examples() {
        let nat: SetDescriptor = NaturalSet::naturals(100).unwrap().into();
        let t = Targets::Real(vec![r("1/2"), r("3/2"), r("5/2")]);
        assert_eq!(coverage_check(&nat, &nat, &t, &r("1/100")).unwrap().coverage, 1.0);
        let dp: SetDescriptor =
            NaturalSet::digit_prefix(DigitPrefixFamily::new(1, 2, 10, false).unwrap(), 10_000).unwrap().into();
        let rep = coverage_check(&dp, &dp, &Targets::Real(vec![r("3")]), &r("2/5")).unwrap();
        assert_eq!(rep.coverage, 0.0);
        assert!(rep.results[0].best_error_sq.clone().unwrap() > r("1"));
        let one = explicit(&[1]);
        assert_eq!(coverage_check(&one, &one, &Targets::Real(vec![r("1")]), &r("1/10")).unwrap().coverage, 1.0);
    }

    #[test]
    fn complex_coverage_matches_naive_scan() {
        let ring: SetDescriptor = QuadraticSet::ideal(Ideal::unit(2).unwrap(), 60).unwrap().into();
        let targets = complex_unit_box(4, 2).unwrap();
        let eps = r("1/5");
        let rep = coverage_check(&ring, &ring, &Targets::Complex(targets.clone()), &eps).unwrap();
        let quotients = quad_quotient_set(&ring, &ring).unwrap();
        for (t, res) in targets.iter().zip(&rep.results) {
            let best = quotients.iter().map(|z| z.sub(t).norm()).min().unwrap();
            let eps_sq = &eps * &eps;
            if best < eps_sq {
                assert_eq!(res.best_error_sq.as_ref(), Some(&best), "{t:?}");
            } else {
                assert_eq!(res.best_error_sq, None);
            }
        }
    }

    #[test]
    fn grids() {
        assert_eq!(real_grid(&r("0"), &r("1"), 2).unwrap(), [r("1/4"), r("3/4")]);
        let g = complex_unit_box(2, 1).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[1], QuadRational::new(r("3/4"), r("1/4"), 1));
        assert!(real_grid(&r("1"), &r("1"), 3).is_err());
    }
}
