//! Nonzero ideals of Z[sqrt(-d)] as rank-2 lattices.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{validate_d, QuadInt};

/// The ideal generated by two elements, stored with a Hermite basis
/// `{(g1, t), (0, g2)}` in `(x, y)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ideal {
    d: u64,
    gens: (QuadInt, QuadInt),
    g1: i64,
    t: i64,
    g2: i64,
}

impl Ideal {
    pub fn new(a: QuadInt, b: QuadInt) -> Result<Self> {
        if a.d != b.d {
            return Err(Error::param("generators lie in different rings"));
        }
        validate_d(a.d)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::param("ideal generators are both zero"));
        }
        let d = a.d as i128;
        // Z-spanning set: a, a*sqrt(-d), b, b*sqrt(-d).
        let mut rows: Vec<(i128, i128)> = [a, b]
            .iter()
            .flat_map(|g| [(g.x as i128, g.y as i128), (-d * g.y as i128, g.x as i128)])
            .filter(|v| *v != (0, 0))
            .collect();
        let (g1, t, g2) = hermite(&mut rows);
        let fit = |v: i128| i64::try_from(v).map_err(|_| Error::param("ideal basis exceeds i64"));
        Ok(Ideal { d: a.d, gens: (a, b), g1: fit(g1)?, t: fit(t)?, g2: fit(g2)? })
    }

    /// The whole ring.
    pub fn unit(d: u64) -> Result<Self> {
        Ideal::new(QuadInt::one(d), QuadInt::zero(d))
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn gens(&self) -> (QuadInt, QuadInt) {
        self.gens
    }

    /// Hermite basis `(g1, t, g2)`.
    pub fn basis(&self) -> (i64, i64, i64) {
        (self.g1, self.t, self.g2)
    }

    /// Index of the ideal in the ring, i.e. its norm.
    pub fn index(&self) -> u64 {
        (self.g1 as u64) * (self.g2 as u64)
    }

    pub fn contains(&self, z: &QuadInt) -> bool {
        if z.d != self.d || z.x % self.g1 != 0 {
            return false;
        }
        let i = (z.x / self.g1) as i128;
        (z.y as i128 - i * self.t as i128).rem_euclid(self.g2 as i128) == 0
    }

    /// Every element with norm `<= bound`, zero included, sorted by `(norm, x, y)`.
    pub fn enumerate(&self, bound: u64) -> Vec<QuadInt> {
        let mut out: Vec<(u64, QuadInt)> = Vec::new();
        let d = self.d as u128;
        let xmax = bound.isqrt() as i64;
        let imax = xmax / self.g1;
        for i in -imax..=imax {
            let x = i * self.g1;
            let rem = bound as u128 - (x as i128 * x as i128) as u128;
            let ymax = ((rem / d) as u64).isqrt() as i64;
            // y ≡ i*t (mod g2)
            let r = (i as i128 * self.t as i128).rem_euclid(self.g2 as i128) as i64;
            let mut y = -ymax + (r - -ymax).rem_euclid(self.g2);
            while y <= ymax {
                let z = QuadInt::new(x, y, self.d);
                out.push((z.norm(), z));
                y += self.g2;
            }
        }
        out.sort_unstable_by_key(|(n, z)| (*n, z.x, z.y));
        out.into_iter().map(|(_, z)| z).collect()
    }
}

// Row-reduces a spanning set of a full-rank lattice in Z^2 to Hermite form.
fn hermite(rows: &mut [(i128, i128)]) -> (i128, i128, i128) {
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.0 != 0)
            .min_by_key(|(_, r)| r.0.abs())
            .map(|(i, _)| i)
            .expect("nonzero ideal has a row with x != 0");
        let p = rows[pivot];
        let mut done = true;
        for (i, r) in rows.iter_mut().enumerate() {
            if i != pivot && r.0 != 0 {
                let q = Integer::div_floor(&r.0, &p.0);
                *r = (r.0 - q * p.0, r.1 - q * p.1);
                if r.0 != 0 {
                    done = false;
                }
            }
        }
        if done {
            let (mut g1, mut t) = rows[pivot];
            if g1 < 0 {
                g1 = -g1;
                t = -t;
            }
            let g2 = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != pivot)
                .fold(0i128, |acc, (_, r)| acc.gcd(&r.1));
            assert!(g2 > 0, "ideal lattice must have rank 2");
            return (g1, t.rem_euclid(g2), g2);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn q(x: i64, y: i64, d: u64) -> QuadInt {
        QuadInt::new(x, y, d)
    }

    // u*a + v*b over a box of coefficients, filtered by norm.
    fn naive(ideal: &Ideal, bound: u64, coeff: i64) -> BTreeSet<(u64, i64, i64)> {
        let (a, b) = ideal.gens();
        let d = ideal.d();
        let mut out = BTreeSet::new();
        for ux in -coeff..=coeff {
            for uy in -coeff..=coeff {
                for vx in -coeff..=coeff {
                    for vy in -coeff..=coeff {
                        let z = q(ux, uy, d) * a + q(vx, vy, d) * b;
                        if z.norm() <= bound {
                            out.insert((z.norm(), z.x, z.y));
                        }
                    }
                }
            }
        }
        out
    }

    fn fast(ideal: &Ideal, bound: u64) -> BTreeSet<(u64, i64, i64)> {
        ideal.enumerate(bound).into_iter().map(|z| (z.norm(), z.x, z.y)).collect()
    }

    #[test]
    fn whole_ring_small_bound() {
        let ring = Ideal::unit(1).unwrap();
        let els = ring.enumerate(2);
        assert_eq!(els.len(), 9);
        assert_eq!(els[0], q(0, 0, 1));
        assert!(els[1..5].iter().all(|z| z.norm() == 1));
        assert!(els[5..].iter().all(|z| z.norm() == 2));
    }

    #[test]
    fn one_plus_i_ideal_is_even_norms() {
        let ideal = Ideal::new(q(1, 1, 1), q(0, 0, 1)).unwrap();
        assert_eq!(ideal.index(), 2);
        let els = ideal.enumerate(4);
        assert!(els.iter().all(|z| z.norm() % 2 == 0));
        let ring_even: Vec<_> = Ideal::unit(1).unwrap().enumerate(4).into_iter().filter(|z| z.norm() % 2 == 0).collect();
        assert_eq!(els, ring_even);
        assert_eq!(els.len(), 1 + 4 + 4);
    }

    #[test]
    fn zero_generators_rejected() {
        assert!(Ideal::new(q(0, 0, 2), q(0, 0, 2)).is_err());
        assert!(Ideal::new(q(1, 0, 4), q(0, 0, 4)).is_err());
    }

    #[test]
    fn matches_naive_combinations() {
        let cases = [
            (q(2, 0, 1), q(1, 1, 1)),
            (q(3, 0, 5), q(1, 1, 5)),
            (q(2, 0, 2), q(0, 1, 2)),
            (q(4, 2, 3), q(0, 0, 3)),
            (q(6, 0, 1), q(3, 3, 1)),
        ];
        for (a, b) in cases {
            let ideal = Ideal::new(a, b).unwrap();
            assert_eq!(fast(&ideal, 60), naive(&ideal, 60, 6), "{a} {b}");
            for z in ideal.enumerate(60) {
                assert!(ideal.contains(&z));
            }
        }
    }
}
