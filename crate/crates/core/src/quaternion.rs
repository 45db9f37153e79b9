//! Hurwitz quaternions, their 24-element unit group, and the decomposition
//! of D4 shells into right cosets x·H^×.
//!
//! Coordinates are stored doubled, so x = (a + bi + cj + dk)/2 with a, b, c, d
//! all even (Lipschitz part) or all odd.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Mul, Neg};

use rayon::prelude::*;

use crate::exact::{rat, IntVector4};
use crate::harmonic::{MatrixGroup, OrthogonalMatrix4};
use crate::lattice::{enumerate_shell, gram_profile, GramProfile, Shell};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzQuaternion {
    doubled: [i64; 4],
}

impl fmt::Debug for HurwitzQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.doubled;
        write!(f, "({a} + {b}i + {c}j + {d}k)/2")
    }
}

impl HurwitzQuaternion {
    /// From doubled coordinates; `None` unless all four share a parity.
    pub fn from_doubled(doubled: [i64; 4]) -> Option<Self> {
        let p = doubled[0].rem_euclid(2);
        doubled
            .iter()
            .all(|c| c.rem_euclid(2) == p)
            .then_some(HurwitzQuaternion { doubled })
    }

    pub fn from_integer_point(x: &IntVector4) -> Self {
        HurwitzQuaternion {
            doubled: x.0.map(|c| 2 * c),
        }
    }

    pub fn one() -> Self {
        Self::from_doubled([2, 0, 0, 0]).unwrap()
    }

    pub fn i() -> Self {
        Self::from_doubled([0, 2, 0, 0]).unwrap()
    }

    pub fn j() -> Self {
        Self::from_doubled([0, 0, 2, 0]).unwrap()
    }

    pub fn k() -> Self {
        Self::from_doubled([0, 0, 0, 2]).unwrap()
    }

    pub fn doubled(&self) -> [i64; 4] {
        self.doubled
    }

    /// The point of Z⁴ if every coordinate is an integer.
    pub fn to_integer_point(&self) -> Option<IntVector4> {
        self.doubled
            .iter()
            .all(|c| c % 2 == 0)
            .then(|| IntVector4(self.doubled.map(|c| c / 2)))
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.doubled;
        HurwitzQuaternion {
            doubled: [a, -b, -c, -d],
        }
    }

    /// x1² + x2² + x3² + x4², always an integer for Hurwitz quaternions.
    pub fn norm(&self) -> i64 {
        let s: i64 = self.doubled.iter().map(|c| c * c).sum();
        debug_assert_eq!(s % 4, 0);
        s / 4
    }
}

impl Mul for HurwitzQuaternion {
    type Output = HurwitzQuaternion;

    fn mul(self, rhs: HurwitzQuaternion) -> HurwitzQuaternion {
        let [a1, b1, c1, d1] = self.doubled;
        let [a2, b2, c2, d2] = rhs.doubled;
        // Hamilton product of the doubled coordinates is 4·(xy); halve once
        // to get doubled coordinates of xy.
        let p = [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ];
        debug_assert!(p.iter().all(|v| v % 2 == 0));
        HurwitzQuaternion::from_doubled(p.map(|v| v / 2)).expect("Hurwitz order is a ring")
    }
}

impl Neg for HurwitzQuaternion {
    type Output = HurwitzQuaternion;
    fn neg(self) -> HurwitzQuaternion {
        HurwitzQuaternion {
            doubled: self.doubled.map(|c| -c),
        }
    }
}

/// The 24 units ±1, ±i, ±j, ±k, (±1 ± i ± j ± k)/2.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    units: Vec<HurwitzQuaternion>,
}

impl UnitGroup {
    pub fn units(&self) -> &[HurwitzQuaternion] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, q: &HurwitzQuaternion) -> bool {
        self.units.binary_search(q).is_ok()
    }
}

/// All norm-1 Hurwitz quaternions, found by search over doubled coordinates
/// in [−2, 2], with the group axioms checked.
pub fn hurwitz_units() -> Result<UnitGroup> {
    let mut units = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    if let Some(q) = HurwitzQuaternion::from_doubled([a, b, c, d]) {
                        if q.norm() == 1 {
                            units.push(q);
                        }
                    }
                }
            }
        }
    }
    units.sort();
    let g = UnitGroup { units };
    if g.len() != 24 {
        return Err(Error::identity("|H^×| = 24", g.len().to_string()));
    }
    for &u in g.units() {
        if !g.contains(&u.conj()) || (u * u.conj()) != HurwitzQuaternion::one() {
            return Err(Error::identity("unit inverses", format!("{u:?}")));
        }
        for &v in g.units() {
            if !g.contains(&(u * v)) {
                return Err(Error::identity("unit closure", format!("{u:?}·{v:?}")));
            }
        }
    }
    Ok(g)
}

/// Right cosets x·H^× partitioning a shell.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub m: u64,
    /// Each orbit sorted; orbits ordered by their least member.
    pub orbits: Vec<Vec<IntVector4>>,
}

impl OrbitDecomposition {
    /// The canonical representatives S_m: the least member of each orbit.
    pub fn representatives(&self) -> Vec<IntVector4> {
        self.orbits.iter().map(|o| o[0]).collect()
    }
}

/// Splits the 2m-shell into orbits of right multiplication by the units.
/// Every orbit must have exactly 24 points (the action is free away from 0).
pub fn orbit_decomposition(shell: &Shell) -> Result<OrbitDecomposition> {
    let units = hurwitz_units()?;
    let mut seen: HashSet<IntVector4> = HashSet::with_capacity(shell.len());
    let mut orbits = Vec::new();
    for x in shell.points() {
        if seen.contains(x) {
            continue;
        }
        let q = HurwitzQuaternion::from_integer_point(x);
        let mut orbit: Vec<IntVector4> = Vec::with_capacity(24);
        for &u in units.units() {
            let y = (q * u)
                .to_integer_point()
                .ok_or_else(|| Error::identity("orbit stays integral", format!("{x}·{u:?}")))?;
            if !shell.contains(&y) {
                return Err(Error::identity("orbit stays in the shell", y.to_string()));
            }
            orbit.push(y);
        }
        orbit.sort();
        orbit.dedup();
        if orbit.len() != 24 {
            return Err(Error::identity(
                "orbit size 24",
                format!("orbit of {x} has {} points", orbit.len()),
            ));
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    // Shell order guarantees the orbits already come sorted by least member.
    debug_assert!(orbits.windows(2).all(|w| w[0][0] < w[1][0]));
    Ok(OrbitDecomposition {
        m: shell.m(),
        orbits,
    })
}

/// Checks that an orbit is antipodal and has the normalized Gram profile of
/// the root system, i.e. it is an isometric copy of the roots scaled by √m.
pub fn certify_orbit_is_root_copy(
    orbit: &[IntVector4],
    m: u64,
    roots: &GramProfile,
) -> Result<bool> {
    let set: HashSet<&IntVector4> = orbit.iter().collect();
    if let Some(x) = orbit.iter().find(|x| !set.contains(&-**x)) {
        return Err(Error::identity(
            "orbit antipodal",
            format!("-({x}) missing"),
        ));
    }
    let p = gram_profile(orbit, 2 * m as i128)?;
    if &p != roots {
        return Err(Error::identity(
            "orbit Gram profile = root system",
            format!("{:?} vs {:?}", p.counts, roots.counts),
        ));
    }
    Ok(true)
}

/// Gram profile of the normalized root system, the reference for
/// [`certify_orbit_is_root_copy`].
pub fn root_profile() -> Result<GramProfile> {
    gram_profile(enumerate_shell(1)?.points(), 2)
}

/// Decomposes the 2m-shell and certifies every orbit in parallel. Returns the
/// decomposition; fails on the first orbit that is not a root-system copy.
pub fn decompose_and_certify(m: u64) -> Result<OrbitDecomposition> {
    let shell = enumerate_shell(m)?;
    let dec = orbit_decomposition(&shell)?;
    let roots = root_profile()?;
    dec.orbits
        .par_iter()
        .try_for_each(|o| certify_orbit_is_root_copy(o, m, &roots).map(|_| ()))?;
    Ok(dec)
}

/// Matrix of x ↦ x·u on coordinate vectors.
pub fn right_multiplication_matrix(u: &HurwitzQuaternion) -> Result<OrthogonalMatrix4> {
    // Column j is the image of the j-th basis quaternion, halved back from
    // doubled coordinates.
    let basis = [
        HurwitzQuaternion::one(),
        HurwitzQuaternion::i(),
        HurwitzQuaternion::j(),
        HurwitzQuaternion::k(),
    ];
    let cols: Vec<[i64; 4]> = basis.iter().map(|b| (*b * *u).doubled()).collect();
    let rows = std::array::from_fn(|i| std::array::from_fn(|j| rat(cols[j][i], 2)));
    OrthogonalMatrix4::new(rows)
}

/// The 24 right-multiplication matrices of the units, as a matrix group.
pub fn subgroup_n_matrices() -> MatrixGroup {
    let units = hurwitz_units().expect("unit group");
    let mats = units
        .units()
        .iter()
        .map(|u| right_multiplication_matrix(u).expect("units act orthogonally"))
        .collect();
    MatrixGroup::new(mats).expect("right multiplication by units is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::molien_harmonic_dims;
    use crate::lattice::{jacobi_count, odd_divisor_sum};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn quaternion_relations() {
        let (one, i, j, k) = (
            HurwitzQuaternion::one(),
            HurwitzQuaternion::i(),
            HurwitzQuaternion::j(),
            HurwitzQuaternion::k(),
        );
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(i * i, -one);
        assert_eq!(j * j, -one);
        assert_eq!(k * k, -one);
        let q = HurwitzQuaternion::from_doubled([3, -1, 5, 7]).unwrap();
        assert_eq!(q * one, q);
        assert_eq!(
            HurwitzQuaternion::from_doubled([1, 1, 1, 1])
                .unwrap()
                .norm(),
            1
        );
        assert!(HurwitzQuaternion::from_doubled([1, 2, 1, 1]).is_none());
    }

    #[test]
    fn unit_group() {
        let g = hurwitz_units().unwrap();
        assert_eq!(g.len(), 24);
        assert!(g.contains(&-HurwitzQuaternion::one()));
        for &u in g.units() {
            for &v in g.units() {
                assert!(g.contains(&(u * v)));
            }
        }
    }

    #[test]
    fn orbit_counts() {
        for (m, n) in [(1, 1), (2, 1), (3, 4), (25, 31)] {
            let d = decompose_and_certify(m).unwrap();
            assert_eq!(d.orbits.len(), n, "m = {m}");
            assert_eq!(d.representatives().len() as u64, odd_divisor_sum(m));
            assert!(d.orbits.iter().all(|o| o.len() == 24));
        }
    }

    #[test]
    fn single_orbit_of_roots_is_roots() {
        let s = enumerate_shell(1).unwrap();
        let d = orbit_decomposition(&s).unwrap();
        assert_eq!(d.orbits[0], s.points());
    }

    #[test]
    fn even_norm_hurwitz_elements_are_integral() {
        for m in 1..=50i64 {
            let n = 2 * m;
            // Doubled coordinates satisfy a² ≤ 4n.
            let r = num_integer::Roots::sqrt(&(4 * n));
            let mut found = Vec::new();
            for a in -r..=r {
                for b in -r..=r {
                    for c in -r..=r {
                        for d in -r..=r {
                            if let Some(q) = HurwitzQuaternion::from_doubled([a, b, c, d]) {
                                if q.norm() == n {
                                    if let Some(x) = q.to_integer_point() {
                                        found.push(x);
                                    }
                                    // Half-integral elements of even norm would break H_{2m} = shell.
                                    assert!(a % 2 == 0, "half-integral element of norm {n}");
                                }
                            }
                        }
                    }
                }
            }
            found.sort();
            assert_eq!(
                found,
                enumerate_shell(m as u64).unwrap().points(),
                "m = {m}"
            );
            assert_eq!(found.len() as u64, jacobi_count(m as u64).unwrap());
        }
    }

    #[test]
    fn subgroup_n() {
        let n = subgroup_n_matrices();
        assert_eq!(n.order(), 24);
        assert!(n.contains(&OrthogonalMatrix4::neg_identity()));
        let dims = molien_harmonic_dims(&n, 12).unwrap();
        assert_eq!(dims[0], BigInt::from(1));
        assert_eq!(dims[6], BigInt::from(7));
        assert_eq!(dims[8], BigInt::from(9));
        assert_eq!(dims[12], BigInt::from(26));
        for l in [2, 4, 10] {
            assert_eq!(dims[l], BigInt::from(0));
        }
    }

    #[test]
    fn right_multiplication_preserves_shells() {
        let n = subgroup_n_matrices();
        let s = enumerate_shell(3).unwrap();
        for g in n.elements() {
            for p in s.points() {
                assert!(s.contains(&g.apply_int(p).unwrap()));
            }
        }
    }

    fn hq() -> impl Strategy<Value = HurwitzQuaternion> {
        (prop::array::uniform4(-50i64..50), prop::bool::ANY).prop_map(|(v, half)| {
            let d = if half {
                v.map(|c| 2 * c + 1)
            } else {
                v.map(|c| 2 * c)
            };
            HurwitzQuaternion::from_doubled(d).unwrap()
        })
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(q in hq(), r in hq()) {
            prop_assert_eq!((q * r).norm(), q.norm() * r.norm());
            prop_assert_eq!((q * r).conj(), r.conj() * q.conj());
        }
    }
}
