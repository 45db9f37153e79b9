//! Derived codes of the root system and the reconstruction of the root
//! system from them, all at the level of rational inner products.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::enumerate_shell;
use super::gram::{gram_equivalence, gram_matrix, gram_profile, GramProfile};
use crate::exact::{fmt_rational, rat, rational_sqrt, IntVector4};
use crate::{Error, Result};

/// A derived code X_α: the points at inner product α from a base point,
/// projected to the unit sphere of the orthogonal complement.
#[derive(Clone, Debug)]
pub struct DerivedCode {
    pub alpha: BigRational,
    pub size: usize,
    pub profile: GramProfile,
}

/// Gram profile of the derived code X_α of `points` (common squared norm
/// `norm`) with respect to `points[base]`.
///
/// Two points x, x' of X_α with normalized inner product β project to unit
/// vectors with inner product (β − α²)/(1 − α²), so no coordinates of the
/// projection are ever needed.
pub fn derived_code_profile(
    points: &[IntVector4],
    norm: i128,
    base: usize,
    alpha: &BigRational,
) -> Result<DerivedCode> {
    let one = BigRational::one();
    if alpha == &one || alpha == &-one.clone() {
        return Err(Error::InvalidArgument(
            "derived codes need alpha != ±1".into(),
        ));
    }
    let y = points
        .get(base)
        .ok_or_else(|| Error::InvalidArgument(format!("base index {base} out of range")))?;
    let nq = BigRational::from_integer(norm.into());
    let layer: Vec<&IntVector4> = points
        .iter()
        .filter(|x| &(BigRational::from_integer(x.inner(y).into()) / &nq) == alpha)
        .collect();
    if layer.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no point at inner product {} from the base",
            fmt_rational(alpha)
        )));
    }
    let a2 = alpha * alpha;
    let denom = &one - &a2;
    let mut counts = BTreeMap::new();
    for x in &layer {
        for z in &layer {
            let beta = BigRational::from_integer(x.inner(z).into()) / &nq;
            *counts.entry((beta - &a2) / &denom).or_insert(0) += 1;
        }
    }
    Ok(DerivedCode {
        alpha: alpha.clone(),
        size: layer.len(),
        profile: GramProfile::from_counts(layer.len(), counts),
    })
}

/// The octahedron C_6 = {±e_i} in R³ (stored with a zero fourth coordinate).
pub fn octahedron_c6() -> Vec<IntVector4> {
    let mut v = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut c = [0i64; 4];
            c[i] = s;
            v.push(IntVector4(c));
        }
    }
    v
}

/// The cube C_8 = {(±1, ±1, ±1)} in R³, unnormalized (squared norm 3).
pub fn cube_c8() -> Vec<IntVector4> {
    let mut v = Vec::new();
    for a in [1, -1] {
        for b in [1, -1] {
            for c in [1, -1] {
                v.push(IntVector4::new(a, b, c, 0));
            }
        }
    }
    v
}

/// q_α(u) = α·e + √(1 − α²)·u/|u| for u in the complement of e = e_1, as a
/// rational vector. Fails if the scale factor is irrational.
fn lift(alpha: &BigRational, u: &IntVector4) -> Result<[BigRational; 4]> {
    let u2 = BigRational::from_integer(u.norm2().into());
    let r2 = (BigRational::one() - alpha * alpha) / u2;
    let r = rational_sqrt(&r2).ok_or_else(|| {
        Error::identity(
            "rational lift",
            format!("scale² {} is not a square", fmt_rational(&r2)),
        )
    })?;
    Ok([
        alpha.clone(),
        &r * rat(u.0[0], 1),
        &r * rat(u.0[1], 1),
        &r * rat(u.0[2], 1),
    ])
}

/// Assembles {±e} ∪ q_0(C_6) ∪ q_{1/2}(C_8) ∪ q_{−1/2}(C_8) and checks that
/// its Gram matrix equals that of the normalized root system up to
/// relabeling.
pub fn reconstruction_check() -> Result<bool> {
    let mut pts: Vec<[BigRational; 4]> = Vec::with_capacity(24);
    let e = IntVector4::new(1, 0, 0, 0);
    for s in [1, -1] {
        pts.push(std::array::from_fn(|i| rat(e.0[i] * s, 1)));
    }
    for u in octahedron_c6() {
        pts.push(lift(&BigRational::zero(), &u)?);
    }
    for alpha in [rat(1, 2), rat(-1, 2)] {
        for u in cube_c8() {
            pts.push(lift(&alpha, &u)?);
        }
    }
    if pts.len() != 24 {
        return Err(Error::identity("assembled size", pts.len().to_string()));
    }
    let assembled: Vec<Vec<BigRational>> = pts
        .iter()
        .map(|x| {
            pts.iter()
                .map(|y| (0..4).fold(BigRational::zero(), |acc, i| acc + &x[i] * &y[i]))
                .collect()
        })
        .collect();
    for (i, row) in assembled.iter().enumerate() {
        if !row[i].is_one() {
            return Err(Error::identity("unit norm", format!("point {i}")));
        }
    }
    let roots = enumerate_shell(1)?;
    let target = gram_matrix(roots.points(), 2);
    gram_equivalence(&assembled, &target)
        .map(|_| true)
        .map_err(|detail| Error::identity("reconstruction Gram equivalence", detail))
}

/// Gram profile of the octahedron, for comparison with X_0.
pub fn octahedron_profile() -> GramProfile {
    gram_profile(&octahedron_c6(), 1).expect("unit vectors")
}

/// Gram profile of the cube, for comparison with X_{±1/2}.
pub fn cube_profile() -> GramProfile {
    gram_profile(&cube_c8(), 3).expect("common norm 3")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gegenbauer_design_test;

    fn roots() -> Vec<IntVector4> {
        enumerate_shell(1).unwrap().points().to_vec()
    }

    fn base() -> usize {
        roots()
            .iter()
            .position(|p| *p == IntVector4::new(1, 1, 0, 0))
            .unwrap()
    }

    #[test]
    fn octahedron_layer() {
        let d = derived_code_profile(&roots(), 2, base(), &rat(0, 1)).unwrap();
        assert_eq!(d.size, 6);
        assert_eq!(d.profile.values(), vec![rat(-1, 1), rat(0, 1)]);
        assert_eq!(d.profile, octahedron_profile());
        assert!(gegenbauer_design_test(&d.profile, 3, 3).unwrap().is_zero());
    }

    #[test]
    fn cube_layers() {
        let pos = derived_code_profile(&roots(), 2, base(), &rat(1, 2)).unwrap();
        let neg = derived_code_profile(&roots(), 2, base(), &rat(-1, 2)).unwrap();
        assert_eq!(pos.size, 8);
        assert_eq!(
            pos.profile.values(),
            vec![rat(-1, 1), rat(-1, 3), rat(1, 3)]
        );
        assert_eq!(pos.profile, neg.profile);
        assert_eq!(pos.profile, cube_profile());
        for l in 1..=3 {
            assert!(gegenbauer_design_test(&pos.profile, 3, l)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn every_base_point_gives_the_same_layers() {
        let r = roots();
        for b in 0..24 {
            let d = derived_code_profile(&r, 2, b, &rat(1, 2)).unwrap();
            assert_eq!(d.profile, cube_profile());
        }
    }

    #[test]
    fn alpha_one_rejected() {
        assert!(derived_code_profile(&roots(), 2, 0, &rat(1, 1)).is_err());
        assert!(derived_code_profile(&roots(), 2, 0, &rat(-1, 1)).is_err());
        assert!(derived_code_profile(&roots(), 2, 0, &rat(1, 3)).is_err());
    }

    #[test]
    fn reconstruction() {
        assert!(reconstruction_check().unwrap());
    }

    #[test]
    fn irrational_lift_is_reported() {
        // A cube vertex at α = 0 would need the scale 1/√3.
        assert!(lift(&rat(0, 1), &IntVector4::new(1, 1, 1, 0)).is_err());
    }
}
