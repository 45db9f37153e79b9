//! Shells of D4, design tests on them, Gram and distance-distribution
//! machinery, derived codes, and level analysis of 4-dimensional lattices.

mod derived;
mod design;
mod distance;
mod gram;
mod level;

pub use derived::{
    cube_c8, cube_profile, derived_code_profile, octahedron_c6, octahedron_profile,
    reconstruction_check, DerivedCode,
};
pub use design::{
    balanced_half_set, design_deficit, half_set, harmonic_strength, p6_sum, power_sums,
    HarmonicStrength,
};
pub use distance::{
    distance_distribution, moments, solve_distance_distribution, DistanceDistribution,
};
pub use gram::{gegenbauer_design_test, gram_equivalence, gram_matrix, gram_profile, GramProfile};
pub use level::{analyze_lattice, LatticeAnalysis, LatticeDescription};

use std::io::{BufRead, Write};

use num_integer::Roots;

use crate::exact::IntVector4;
use crate::{config, Error, Result};

/// The 2m-shell of D4: all integer points with squared norm 2m, sorted
/// lexicographically. (Every such point has even coordinate sum.)
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shell {
    m: u64,
    points: Vec<IntVector4>,
}

impl Shell {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn norm(&self) -> i128 {
        2 * self.m as i128
    }

    pub fn points(&self) -> &[IntVector4] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &IntVector4) -> bool {
        self.points.binary_search(x).is_ok()
    }

    /// One point per line, four space-separated integers, in shell order.
    pub fn write_points<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for p in &self.points {
            writeln!(w, "{p}")?;
        }
        Ok(())
    }
}

/// Reads the point format written by [`Shell::write_points`].
pub fn read_points<R: BufRead>(r: R) -> Result<Vec<IntVector4>> {
    let mut out = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let coords: Vec<i64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", lineno + 1)))?;
        let [a, b, c, d] = coords[..] else {
            return Err(Error::InvalidArgument(format!(
                "line {}: expected 4 integers, got {}",
                lineno + 1,
                coords.len()
            )));
        };
        out.push(IntVector4::new(a, b, c, d));
    }
    Ok(out)
}

/// |(D4)_{2m}| = 24 · Σ_{d | 2m, d odd} d.
pub fn jacobi_count(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("shell index m must be >= 1".into()));
    }
    Ok(24 * odd_divisor_sum(m))
}

/// Σ of the odd divisors of n (equivalently, of 2n).
pub fn odd_divisor_sum(n: u64) -> u64 {
    let mut odd = n;
    while odd.is_multiple_of(2) {
        odd /= 2;
    }
    let mut s = 0;
    let mut d = 1;
    while d * d <= odd {
        if odd.is_multiple_of(d) {
            s += d;
            if d * d != odd {
                s += odd / d;
            }
        }
        d += 1;
    }
    s
}

/// All integer solutions of x1² + x2² + x3² + x4² = 2m.
///
/// Sorted representatives a ≥ b ≥ c ≥ d ≥ 0 are found first, then expanded
/// by distinct permutations and signs of the nonzero entries.
pub fn enumerate_shell(m: u64) -> Result<Shell> {
    if m == 0 {
        return Err(Error::InvalidArgument("shell index m must be >= 1".into()));
    }
    config::check_shell(m)?;
    let n = 2 * m as i64;
    let mut points = Vec::new();
    let isqrt = |v: i64| -> i64 { v.sqrt() };
    let amax = isqrt(n);
    for a in (0..=amax).rev() {
        let ra = n - a * a;
        for b in (0..=a.min(isqrt(ra))).rev() {
            let rb = ra - b * b;
            for c in (0..=b.min(isqrt(rb))).rev() {
                let rc = rb - c * c;
                let d = isqrt(rc);
                if d * d == rc && d <= c {
                    expand_representative([a, b, c, d], &mut points);
                }
            }
        }
    }
    points.sort_unstable();
    Ok(Shell { m, points })
}

fn expand_representative(rep: [i64; 4], out: &mut Vec<IntVector4>) {
    let mut perms: Vec<[i64; 4]> = Vec::new();
    let mut cur = rep;
    cur.sort_unstable();
    // Distinct permutations by next_permutation over the sorted multiset.
    loop {
        perms.push(cur);
        if !next_permutation(&mut cur) {
            break;
        }
    }
    for p in perms {
        let nz: Vec<usize> = (0..4).filter(|&i| p[i] != 0).collect();
        for mask in 0u32..(1 << nz.len()) {
            let mut v = p;
            for (bit, &i) in nz.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    v[i] = -v[i];
                }
            }
            out.push(IntVector4(v));
        }
    }
}

fn next_permutation(a: &mut [i64; 4]) -> bool {
    let Some(i) = (0..3).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..4).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
