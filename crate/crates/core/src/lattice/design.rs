use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::Shell;
use crate::exact::{IntVector4, Monomial, MultiPoly4};
use crate::harmonic::{harm_basis, p6};
use crate::Result;

/// Σ_{x∈points} x^a for every monomial a of degree `l`.
///
/// Accumulates in `i128` while that is exact and falls back to big integers
/// for a monomial as soon as a term or partial sum would overflow.
pub fn power_sums(points: &[IntVector4], l: u32) -> HashMap<Monomial, BigInt> {
    Monomial::all_of_degree(l)
        .into_par_iter()
        .map(|m| {
            let mut acc: i128 = 0;
            let mut big: Option<BigInt> = None;
            for x in points {
                match (&mut big, m.eval_i128(x)) {
                    (None, Some(v)) => match acc.checked_add(v) {
                        Some(s) => acc = s,
                        None => big = Some(BigInt::from(acc) + v),
                    },
                    (None, None) => big = Some(BigInt::from(acc) + m.eval_big(x)),
                    (Some(b), Some(v)) => *b += v,
                    (Some(b), None) => *b += m.eval_big(x),
                }
            }
            (m, big.unwrap_or_else(|| BigInt::from(acc)))
        })
        .collect()
}

/// Σ_x P(x) from precomputed power sums of P's (homogeneous) degree.
pub(crate) fn poly_sum(p: &MultiPoly4, sums: &HashMap<Monomial, BigInt>) -> BigRational {
    let (coeffs, den) = p.integer_form();
    let total: BigInt = coeffs.iter().map(|(m, c)| c * &sums[m]).sum();
    BigRational::new(total, den)
}

/// (Σ_{x} P_i(x))_i over the harmonic basis of degree `l`, evaluated on the
/// unnormalized integer points.
///
/// All entries vanish exactly when the normalized shell is a spherical
/// {l}-design, since each P_i is homogeneous of degree `l`.
pub fn design_deficit(shell: &Shell, l: u32) -> Result<Vec<BigInt>> {
    deficit_of_points(shell.points(), l)
}

pub(crate) fn deficit_of_points(points: &[IntVector4], l: u32) -> Result<Vec<BigInt>> {
    let basis = harm_basis(l)?;
    let sums = power_sums(points, l);
    // Basis members have integer coefficients.
    Ok(basis
        .polys
        .iter()
        .map(|p| poly_sum(p, &sums).to_integer())
        .collect())
}

/// Σ_{x∈points} P_6(x).
pub fn p6_sum(points: &[IntVector4]) -> BigInt {
    poly_sum(&p6(), &power_sums(points, 6)).to_integer()
}

/// Degrees ℓ ≤ L for which a shell is a spherical {ℓ}-design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicStrength {
    pub max_degree: u32,
    /// Even degrees 1 ≤ ℓ ≤ L whose deficit vanishes.
    pub even: BTreeSet<u32>,
    pub antipodal: bool,
}

impl HarmonicStrength {
    /// Odd degrees hold for antipodal sets because odd polynomials cancel in
    /// ±x pairs.
    pub fn contains(&self, l: u32) -> bool {
        if l == 0 || l > self.max_degree {
            return false;
        }
        if l % 2 == 1 {
            self.antipodal
        } else {
            self.even.contains(&l)
        }
    }
}

pub fn harmonic_strength(shell: &Shell, max_degree: u32) -> Result<HarmonicStrength> {
    crate::config::check_degree(max_degree)?;
    let antipodal = shell.points().iter().all(|p| shell.contains(&-*p));
    let degrees: Vec<u32> = (2..=max_degree).step_by(2).collect();
    let results: Vec<(u32, bool)> = degrees
        .par_iter()
        .map(|&l| Ok((l, design_deficit(shell, l)?.iter().all(Zero::is_zero))))
        .collect::<Result<_>>()?;
    Ok(HarmonicStrength {
        max_degree,
        even: results
            .into_iter()
            .filter(|(_, z)| *z)
            .map(|(l, _)| l)
            .collect(),
        antipodal,
    })
}

/// One representative per antipodal pair: the member whose first nonzero
/// coordinate is positive.
pub fn half_set(shell: &Shell) -> Vec<IntVector4> {
    shell
        .points()
        .iter()
        .copied()
        .filter(IntVector4::is_positive)
        .collect()
}

/// A half set whose points sum to zero, i.e. one that is also a {1}-design.
///
/// Tries every sign pattern on [`half_set`] in increasing binary order, so
/// the result is deterministic. Shells with more than 40 points are refused.
pub fn balanced_half_set(shell: &Shell) -> Result<Option<Vec<IntVector4>>> {
    let base = half_set(shell);
    let n = base.len();
    if n > 20 {
        return Err(crate::Error::InvalidArgument(format!(
            "balanced half-set search over 2^{n} sign patterns is too large"
        )));
    }
    for mask in 0u32..1 << n {
        let mut sum = [0i64; 4];
        for (i, p) in base.iter().enumerate() {
            let s = if mask >> i & 1 == 1 { -1 } else { 1 };
            for (acc, c) in sum.iter_mut().zip(p.0) {
                *acc += s * c;
            }
        }
        if sum == [0; 4] {
            return Ok(Some(
                base.iter()
                    .enumerate()
                    .map(|(i, p)| if mask >> i & 1 == 1 { -*p } else { *p })
                    .collect(),
            ));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_shell;

    #[test]
    fn root_system_is_a_10_4_2_design() {
        let s = enumerate_shell(1).unwrap();
        for l in [2, 4, 10] {
            assert!(
                design_deficit(&s, l).unwrap().iter().all(Zero::is_zero),
                "l = {l}"
            );
        }
        let d6 = design_deficit(&s, 6).unwrap();
        assert!(d6.iter().any(|v| !v.is_zero()));
        assert_eq!(p6_sum(s.points()), BigInt::from(-192));
    }

    #[test]
    fn strength_of_first_shells() {
        for m in [1, 2] {
            let st = harmonic_strength(&enumerate_shell(m).unwrap(), 12).unwrap();
            assert_eq!(st.even, [2, 4, 10].into_iter().collect(), "m = {m}");
            assert!(st.antipodal);
            for l in [1, 3, 5, 7, 9, 11] {
                assert!(st.contains(l));
            }
            assert!(!st.contains(6) && !st.contains(8) && !st.contains(12));
        }
        let st = harmonic_strength(&enumerate_shell(1).unwrap(), 2).unwrap();
        assert_eq!(st.even, [2].into_iter().collect());
    }

    #[test]
    fn power_sums_match_rational_evaluation() {
        let s = enumerate_shell(5).unwrap();
        let p = p6();
        let direct: BigRational = s.points().iter().map(|x| p.eval_int(x)).sum();
        assert_eq!(direct, BigRational::from_integer(p6_sum(s.points())));
    }

    #[test]
    fn big_coordinates_fall_back_exactly() {
        let x = IntVector4::new(1 << 40, 3, 0, 0);
        let pts = vec![x, x, x];
        let sums = power_sums(&pts, 4);
        let expect = BigInt::from(3) * BigInt::from(1i64 << 40).pow(4);
        assert_eq!(sums[&Monomial([4, 0, 0, 0])], expect);
    }

    #[test]
    fn half_sets() {
        let s = enumerate_shell(1).unwrap();
        let h = half_set(&s);
        assert_eq!(h.len(), 12);
        let mut both: Vec<IntVector4> = h.iter().copied().chain(h.iter().map(|p| -*p)).collect();
        both.sort();
        assert_eq!(both, s.points());
        // Deficit of the half set is half the shell's at even degrees.
        for l in [2, 4, 6, 8] {
            let full = design_deficit(&s, l).unwrap();
            let half = deficit_of_points(&h, l).unwrap();
            for (f, hv) in full.iter().zip(&half) {
                assert_eq!(f, &(hv * 2));
            }
        }
        assert!(deficit_of_points(&h, 2).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn balanced_half_set_of_roots() {
        let s = enumerate_shell(1).unwrap();
        let h = balanced_half_set(&s)
            .unwrap()
            .expect("a balanced half set exists");
        assert_eq!(h.len(), 12);
        for l in [1, 2, 4, 10] {
            assert!(
                deficit_of_points(&h, l).unwrap().iter().all(Zero::is_zero),
                "ℓ = {l}"
            );
        }
        // Not antipodal, and not a 3-design.
        assert!(h.iter().any(|p| !h.contains(&-*p)));
        assert!(!deficit_of_points(&h, 3).unwrap().iter().all(Zero::is_zero));
        assert!(balanced_half_set(&enumerate_shell(3).unwrap()).is_err());
    }
}
