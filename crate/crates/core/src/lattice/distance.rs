use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{fmt_rational, solve_square, IntVector4};
use crate::{Error, Result};

/// Counts A_α of points at normalized inner product α from a base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDistribution {
    pub base: String,
    pub counts: BTreeMap<BigRational, u64>,
}

impl DistanceDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, alpha: &BigRational) -> u64 {
        self.counts.get(alpha).copied().unwrap_or(0)
    }

    /// Counts in ascending α order.
    pub fn count_vector(&self) -> Vec<u64> {
        self.counts.values().copied().collect()
    }
}

/// Directly counted distance distribution of `points` from `points[base]`.
pub fn distance_distribution(
    points: &[IntVector4],
    norm: i128,
    base: usize,
) -> Result<DistanceDistribution> {
    let y = points
        .get(base)
        .ok_or_else(|| Error::InvalidArgument(format!("base index {base} out of range")))?;
    let mut counts = BTreeMap::new();
    for x in points {
        *counts
            .entry(BigRational::new(x.inner(y).into(), norm.into()))
            .or_insert(0) += 1;
    }
    Ok(DistanceDistribution {
        base: y.to_string(),
        counts,
    })
}

/// Sphere moments a_j on S^{d−1}: a_{2i} = (2i−1)!! / (d(d+2)⋯(d+2i−2)),
/// a_{2i+1} = 0.
pub fn moments(d: u32, j: u32) -> BigRational {
    if j % 2 == 1 {
        return BigRational::zero();
    }
    let mut v = BigRational::one();
    for k in 0..j / 2 {
        v *= BigRational::new(BigInt::from(2 * k + 1), BigInt::from(d + 2 * k));
    }
    v
}

/// Distance distribution of an N-point spherical t-design in R^d whose inner
/// products lie in `values`, from the Vandermonde system
/// Σ_α A_α α^j = a_j N, j = 0, 1, ….
///
/// With `base_in_set`, 1 must be among `values` and A_1 is fixed to 1. The
/// first k equations (k = number of unknowns) determine the solution; the
/// remaining ones up to j = t are then checked, and the solution must consist
/// of nonnegative integers.
pub fn solve_distance_distribution(
    d: u32,
    n: u64,
    t: u32,
    values: &[BigRational],
    base_in_set: bool,
) -> Result<DistanceDistribution> {
    let mut vals: Vec<BigRational> = values.to_vec();
    vals.sort();
    if vals.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(
            "inner-product values must be distinct".into(),
        ));
    }
    if let Some(v) = vals.iter().find(|v| v.abs() > BigRational::one()) {
        return Err(Error::InvalidArgument(format!(
            "value {} outside [-1, 1]",
            fmt_rational(v)
        )));
    }
    let one = BigRational::one();
    if base_in_set {
        if !vals.contains(&one) {
            return Err(Error::InvalidArgument(
                "base point in set requires 1 among the values".into(),
            ));
        }
        vals.retain(|v| v != &one);
    }
    let k = vals.len();
    let equations = t as usize + 1;
    if k > equations {
        return Err(Error::Underdetermined {
            unknowns: k,
            equations,
        });
    }

    let nq = BigRational::from_integer(n.into());
    let rhs = |j: u32| -> BigRational {
        let r = moments(d, j) * &nq;
        if base_in_set {
            r - &one
        } else {
            r
        }
    };
    let power = |a: &BigRational, j: u32| num_traits::pow(a.clone(), j as usize);

    let a: Vec<Vec<BigRational>> = (0..k as u32)
        .map(|j| vals.iter().map(|v| power(v, j)).collect())
        .collect();
    let b: Vec<BigRational> = (0..k as u32).map(rhs).collect();
    let sol = solve_square(&a, &b).expect("Vandermonde matrix of distinct values is invertible");

    for j in k as u32..=t {
        let lhs: BigRational = vals.iter().zip(&sol).map(|(v, c)| power(v, j) * c).sum();
        if lhs != rhs(j) {
            return Err(Error::NonCombinatorial(format!(
                "moment equation j = {j} fails: {} != {}",
                fmt_rational(&lhs),
                fmt_rational(&rhs(j))
            )));
        }
    }

    let mut counts = BTreeMap::new();
    for (v, c) in vals.into_iter().zip(sol) {
        if c.is_negative() || !c.is_integer() {
            return Err(Error::NonCombinatorial(format!(
                "A_{} = {}",
                fmt_rational(&v),
                fmt_rational(&c)
            )));
        }
        counts.insert(v, c.to_integer().to_u64().expect("count fits in u64"));
    }
    if base_in_set {
        counts.insert(one, 1);
    }
    Ok(DistanceDistribution {
        base: if base_in_set {
            "in set".into()
        } else {
            "external".into()
        },
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::lattice::enumerate_shell;

    fn vals(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn moment_values() {
        assert_eq!(moments(4, 3), rat(0, 1));
        assert_eq!(moments(4, 2), rat(1, 4));
        assert_eq!(moments(4, 4), rat(1, 8));
        assert_eq!(moments(4, 0), rat(1, 1));
        assert_eq!(moments(3, 2), rat(1, 3));
    }

    #[test]
    fn root_system_distribution() {
        let v = vals(&[(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)]);
        let dd = solve_distance_distribution(4, 24, 5, &v, true).unwrap();
        assert_eq!(dd.count_vector(), vec![1, 8, 6, 8, 1]);
    }

    #[test]
    fn cube_distribution() {
        let v = vals(&[(-1, 1), (-1, 3), (1, 3), (1, 1)]);
        let dd = solve_distance_distribution(3, 8, 3, &v, false).unwrap();
        assert_eq!(dd.count_vector(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn octahedron_distribution() {
        let v = vals(&[(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)]);
        let dd = solve_distance_distribution(3, 6, 3, &v, true).unwrap();
        assert_eq!(dd.count_vector(), vec![1, 0, 4, 0, 1]);
        assert_eq!(dd.get(&rat(-1, 2)), 0);
        assert_eq!(dd.get(&rat(0, 1)), 4);
    }

    #[test]
    fn error_paths() {
        let v = vals(&[(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)]);
        assert!(matches!(
            solve_distance_distribution(4, 24, 2, &v, true),
            Err(Error::Underdetermined {
                unknowns: 4,
                equations: 3
            })
        ));
        // 25 points cannot carry the root-system moments.
        assert!(matches!(
            solve_distance_distribution(4, 25, 5, &v, true),
            Err(Error::NonCombinatorial(_))
        ));
        assert!(solve_distance_distribution(4, 24, 5, &vals(&[(1, 2), (1, 2)]), false).is_err());
        assert!(solve_distance_distribution(4, 24, 5, &vals(&[(3, 2)]), false).is_err());
        assert!(solve_distance_distribution(4, 24, 5, &vals(&[(1, 2)]), true).is_err());
    }

    #[test]
    fn solver_reproduces_direct_counts() {
        // The shells are antipodal {2,4}-designs, hence 5-designs. Whenever the
        // number of distinct inner products fits the system, the solution
        // must equal the directly counted distribution.
        let mut solved = 0;
        for m in 1..=20 {
            let s = enumerate_shell(m).unwrap();
            let direct = distance_distribution(s.points(), s.norm(), 0).unwrap();
            let values: Vec<BigRational> = direct.counts.keys().cloned().collect();
            match solve_distance_distribution(4, s.len() as u64, 5, &values, true) {
                Ok(dd) => {
                    assert_eq!(dd.counts, direct.counts, "m = {m}");
                    solved += 1;
                }
                Err(Error::Underdetermined { unknowns, .. }) => assert!(unknowns > 6),
                Err(e) => panic!("m = {m}: {e}"),
            }
        }
        assert!(solved >= 2);
    }
}
