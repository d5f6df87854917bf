//! Rounding witnesses `s, t, t'` for two-colorings of an ideal.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{away_round_quad, QuadInt, QuadRational};
use crate::quadratic::Ideal;
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTriple {
    /// Generator used for the decomposition `gamma/(alpha beta) = gamma1 * g`.
    pub generator: QuadInt,
    pub gamma1: QuadRational,
    pub s: QuadInt,
    pub t: QuadInt,
    pub t_prime: QuadInt,
    /// `|s - gamma/(alpha beta)|^2`.
    pub defect_s: Ratio,
    /// `|t - alpha s|^2`.
    pub defect_t: Ratio,
    /// `|t' - beta s|^2`.
    pub defect_t_prime: Ratio,
    /// `(1 + d) N(g)`; every defect is strictly below it.
    pub defect_bound: Ratio,
}

impl WitnessTriple {
    pub fn defects_within_bound(&self) -> bool {
        [&self.defect_s, &self.defect_t, &self.defect_t_prime].iter().all(|e| **e < self.defect_bound)
    }
}

fn same_ring(d: u64, zs: &[&QuadRational]) -> Result<()> {
    if zs.iter().any(|z| z.d != d) {
        return Err(Error::param(format!("all inputs must lie in Q(sqrt(-{d}))")));
    }
    Ok(())
}

// <z / g> * g, an element of the ideal.
fn round_on(z: &QuadRational, g: &QuadInt) -> Result<(QuadInt, QuadRational)> {
    let coeff = z.div(&g.to_rational())?;
    let r = away_round_quad(&coeff)?;
    let out = r.checked_mul(g).ok_or_else(|| Error::domain("witness coordinate exceeds i64"))?;
    Ok((out, coeff))
}

/// Builds `s` from `gamma/(alpha beta)`, then `t` from `alpha s` and `t'` from
/// `beta s`, each by rounding the coefficient of the first nonzero generator.
pub fn witness_construct(
    gamma: &QuadInt,
    alpha: &QuadRational,
    beta: &QuadRational,
    ideal: &Ideal,
) -> Result<WitnessTriple> {
    let d = ideal.d();
    let gamma_q = gamma.to_rational();
    same_ring(d, &[&gamma_q, alpha, beta])?;
    let ab = alpha.mul(beta);
    if ab.is_zero() {
        return Err(Error::param("alpha * beta must be nonzero"));
    }
    let (a, b) = ideal.gens();
    let g = if a.is_zero() { b } else { a };
    let target = gamma_q.div(&ab)?;
    let (s, gamma1) = round_on(&target, &g)?;
    let s_q = s.to_rational();
    let alpha_s = alpha.mul(&s_q);
    let beta_s = beta.mul(&s_q);
    let (t, _) = round_on(&alpha_s, &g)?;
    let (t_prime, _) = round_on(&beta_s, &g)?;
    let defect = |u: &QuadInt, v: &QuadRational| u.to_rational().sub(v).norm();
    Ok(WitnessTriple {
        generator: g,
        gamma1,
        defect_s: defect(&s, &target),
        defect_t: defect(&t, &alpha_s),
        defect_t_prime: defect(&t_prime, &beta_s),
        defect_bound: Ratio::from(1 + d) * Ratio::from(g.norm()),
        s,
        t,
        t_prime,
    })
}

fn modulus_upper(z: &QuadRational) -> Ratio {
    z.norm().sqrt_upper(32)
}

/// Least `n0` meeting both threshold inequalities of the contradiction
/// argument for balls of radius^2 `epsilon` around `alpha` and `beta`.
///
/// Moduli are bounded above by exact rational square roots, so the returned
/// value satisfies the inequalities and may exceed the least one by a hair.
pub fn threshold_n0(alpha: &QuadRational, beta: &QuadRational, epsilon: &Ratio, ideal: &Ideal) -> Result<u64> {
    let d = ideal.d();
    same_ring(d, &[alpha, beta])?;
    if !epsilon.is_positive() {
        return Err(Error::param("epsilon must be positive"));
    }
    let (a, b) = ideal.gens();
    let k_sq = Ratio::from(1 + d) * Ratio::from((a + b).norm());
    let ma = modulus_upper(alpha);
    let mb = modulus_upper(beta);
    let mab = modulus_upper(&alpha.mul(beta));
    let first = Ratio::one() + &mb + &mab;
    let second = &ma + &mab;
    let worst = if first > second { first } else { second };
    let need = &k_sq * &worst * &worst / epsilon;
    let n0: BigInt = need.floor() + 1;
    n0.to_u64().ok_or_else(|| Error::domain("threshold exceeds u64"))
}

/// Whether `gamma` clears the size conditions
/// `|gamma|^2 > n0 |alpha|^2, n0 |beta|^2, n0 |alpha beta|^2`.
pub fn gamma_admissible(gamma: &QuadInt, alpha: &QuadRational, beta: &QuadRational, n0: u64) -> bool {
    let g = Ratio::from(gamma.norm());
    let n0 = Ratio::from(n0);
    [alpha.norm(), beta.norm(), alpha.mul(beta).norm()].iter().all(|m| g > &n0 * m)
}

/// `{gamma ± a, gamma ± b, gamma ± a ± b}`, deduplicated.
pub fn neighbour_set(gamma: &QuadInt, ideal: &Ideal) -> Vec<QuadInt> {
    let (a, b) = ideal.gens();
    let mut out = Vec::new();
    for (i, j) in [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let step = |g: QuadInt, k: i64| QuadInt::new(g.x * k, g.y * k, g.d);
        let z = *gamma + step(a, i) + step(b, j);
        if !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qr(x: &str, y: &str, d: u64) -> QuadRational {
        QuadRational::new(x.parse().unwrap(), y.parse().unwrap(), d)
    }

    #[test]
    fn rounding_fixed_point() {
        let ring = Ideal::unit(1).unwrap();
        let one = qr("1", "0", 1);
        let w = witness_construct(&QuadInt::new(10, 0, 1), &one, &one, &ring).unwrap();
        assert_eq!((w.s, w.t, w.t_prime), (QuadInt::new(10, 0, 1), QuadInt::new(10, 0, 1), QuadInt::new(10, 0, 1)));
        assert!(w.defect_s.is_zero());
    }

    #[test]
    fn exact_division_example() {
        let ring = Ideal::unit(1).unwrap();
        let w = witness_construct(&QuadInt::new(5, 5, 1), &qr("1", "1", 1), &qr("1", "0", 1), &ring).unwrap();
        assert_eq!(w.s, QuadInt::new(5, 0, 1));
        assert_eq!(w.t, QuadInt::new(5, 5, 1));
        assert_eq!(w.t_prime, QuadInt::new(5, 0, 1));
    }

    #[test]
    fn zero_product_rejected() {
        let ring = Ideal::unit(1).unwrap();
        let err = witness_construct(&QuadInt::new(5, 0, 1), &qr("0", "0", 1), &qr("1", "0", 1), &ring);
        assert!(matches!(err, Err(Error::Parameter(_))));
        assert!(Ideal::new(QuadInt::zero(1), QuadInt::zero(1)).is_err());
    }

    #[test]
    fn second_generator_used_when_first_is_zero() {
        let ideal = Ideal::new(QuadInt::zero(1), QuadInt::new(2, 0, 1)).unwrap();
        let w = witness_construct(&QuadInt::new(7, 3, 1), &qr("1", "0", 1), &qr("1", "0", 1), &ideal).unwrap();
        assert_eq!(w.generator, QuadInt::new(2, 0, 1));
        assert_eq!(w.s, QuadInt::new(8, 4, 1));
    }

    #[test]
    fn neighbours_and_threshold() {
        let ring = Ideal::unit(1).unwrap();
        let n = neighbour_set(&QuadInt::new(10, 0, 1), &ring);
        // b = 0 collapses the set to gamma ± 1
        assert_eq!(n, vec![QuadInt::new(11, 0, 1), QuadInt::new(9, 0, 1), QuadInt::new(10, 0, 1)]);
        let one = qr("1", "0", 1);
        // K^2 = 2, factors (1 + 1 + 1)^2 = 9 and (1 + 1)^2 = 4: need n0 > 18/eps
        assert_eq!(threshold_n0(&one, &one, &"1".parse().unwrap(), &ring).unwrap(), 19);
        assert!(gamma_admissible(&QuadInt::new(5, 0, 1), &one, &one, 24));
        assert!(!gamma_admissible(&QuadInt::new(5, 0, 1), &one, &one, 25));
    }

    proptest! {
        #[test]
        fn witnesses_lie_in_ideal(
            d in prop::sample::select(vec![1u64, 2, 3, 5]),
            (ax, ay, bx, by) in (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6),
            (gx, gy) in (-500i64..=500, -500i64..=500),
            (p1, p2, p3, p4) in (-20i64..=20, -20i64..=20, -20i64..=20, -20i64..=20),
            q in 1i64..=7,
        ) {
            let a = QuadInt::new(ax, ay, d);
            let b = QuadInt::new(bx, by, d);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let alpha = QuadRational::new(Ratio::new(p1, q).unwrap(), Ratio::new(p2, q).unwrap(), d);
            let beta = QuadRational::new(Ratio::new(p3, q).unwrap(), Ratio::new(p4, q).unwrap(), d);
            prop_assume!(!alpha.is_zero() && !beta.is_zero());
            let ideal = Ideal::new(a, b).unwrap();
            let w = witness_construct(&QuadInt::new(gx, gy, d), &alpha, &beta, &ideal).unwrap();
            prop_assert!(ideal.contains(&w.s) && ideal.contains(&w.t) && ideal.contains(&w.t_prime));
            prop_assert!(w.defects_within_bound());
        }
    }
}
