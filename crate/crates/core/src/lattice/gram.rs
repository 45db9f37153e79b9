use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::IntVector4;
use crate::gegenbauer::GegenbauerTable;
use crate::{Error, Result};

/// Multiset of normalized inner products over all ordered pairs of a point
/// set, self-pairs included.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GramProfile {
    /// Number of points.
    pub size: usize,
    pub counts: BTreeMap<BigRational, u64>,
}

impl GramProfile {
    pub fn from_counts(size: usize, counts: BTreeMap<BigRational, u64>) -> Self {
        GramProfile { size, counts }
    }

    /// The profile with the `size` self-pairs removed from the value 1.
    pub fn off_diagonal(&self) -> BTreeMap<BigRational, u64> {
        let mut c = self.counts.clone();
        let one = BigRational::one();
        if let Some(v) = c.get_mut(&one) {
            *v -= self.size as u64;
            if *v == 0 {
                c.remove(&one);
            }
        }
        c
    }

    /// Distinct inner products between distinct points.
    pub fn values(&self) -> Vec<BigRational> {
        self.off_diagonal().into_keys().collect()
    }

    pub fn total_pairs(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Gram profile of points sharing the squared norm `norm`.
pub fn gram_profile(points: &[IntVector4], norm: i128) -> Result<GramProfile> {
    if norm <= 0 {
        return Err(Error::InvalidArgument(format!(
            "norm must be positive, got {norm}"
        )));
    }
    if let Some(p) = points.iter().find(|p| p.norm2() != norm) {
        return Err(Error::InvalidArgument(format!(
            "mixed norms: {p} has squared norm {}, expected {norm}",
            p.norm2()
        )));
    }
    let mut raw: HashMap<i128, u64> = HashMap::new();
    for x in points {
        for y in points {
            *raw.entry(x.inner(y)).or_default() += 1;
        }
    }
    let counts = raw
        .into_iter()
        .map(|(k, c)| (BigRational::new(k.into(), norm.into()), c))
        .collect();
    Ok(GramProfile {
        size: points.len(),
        counts,
    })
}

/// Σ over ordered pairs of Q_{d,ℓ}(⟨ξ,η⟩) = ‖ᵗH_ℓ H_0‖.
///
/// Always ≥ 0, and 0 exactly when the set is a spherical {ℓ}-design.
pub fn gegenbauer_design_test(profile: &GramProfile, d: u32, l: u32) -> Result<BigRational> {
    let table = GegenbauerTable::new(d, l)?;
    let q = table.get(l);
    Ok(profile
        .counts
        .iter()
        .map(|(a, &c)| q.eval(a) * BigRational::from_integer(c.into()))
        .fold(BigRational::zero(), |acc, v| acc + v))
}

/// Normalized Gram matrix ⟨x_i, x_j⟩ / norm.
pub fn gram_matrix(points: &[IntVector4], norm: i128) -> Vec<Vec<BigRational>> {
    points
        .iter()
        .map(|x| {
            points
                .iter()
                .map(|y| BigRational::new(x.inner(y).into(), norm.into()))
                .collect()
        })
        .collect()
}

/// A relabeling π with `a[i][j] == b[π(i)][π(j)]` for all i, j, if one exists.
///
/// Sorted row multisets are compared first, then a backtracking search
/// assigns points one at a time, only trying targets with the same row
/// multiset and consistent entries against everything assigned so far.
pub fn gram_equivalence(
    a: &[Vec<BigRational>],
    b: &[Vec<BigRational>],
) -> std::result::Result<Vec<usize>, String> {
    let n = a.len();
    if b.len() != n {
        return Err(format!("sizes differ: {} vs {}", n, b.len()));
    }
    let sig = |m: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        m.iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort();
                r
            })
            .collect()
    };
    let (sa, sb) = (sig(a), sig(b));
    let mut ca = sa.clone();
    let mut cb = sb.clone();
    ca.sort();
    cb.sort();
    if let Some(i) = (0..n).find(|&i| ca[i] != cb[i]) {
        return Err(format!(
            "canonical row {i} differs: {:?} vs {:?}",
            ca[i], cb[i]
        ));
    }

    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(a, b, &sa, &sb, 0, &mut assign, &mut used) {
        Ok(assign)
    } else {
        Err("row multisets agree but no relabeling exists".into())
    }
}

fn search(
    a: &[Vec<BigRational>],
    b: &[Vec<BigRational>],
    sa: &[Vec<BigRational>],
    sb: &[Vec<BigRational>],
    i: usize,
    assign: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.len();
    if i == n {
        return true;
    }
    for t in 0..n {
        if used[t] || sa[i] != sb[t] || a[i][i] != b[t][t] {
            continue;
        }
        if (0..i).all(|k| a[i][k] == b[t][assign[k]]) {
            assign[i] = t;
            used[t] = true;
            if search(a, b, sa, sb, i + 1, assign, used) {
                return true;
            }
            used[t] = false;
        }
    }
    assign[i] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::lattice::{design_deficit, enumerate_shell};

    #[test]
    fn root_system_profile() {
        let s = enumerate_shell(1).unwrap();
        let p = gram_profile(s.points(), 2).unwrap();
        assert_eq!(
            p.values(),
            vec![rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2)]
        );
        assert_eq!(p.total_pairs(), 576);
        let off = p.off_diagonal();
        assert_eq!(off[&rat(-1, 1)], 24);
        assert_eq!(off[&rat(1, 2)], 24 * 8);
        assert_eq!(off[&rat(0, 1)], 24 * 6);
    }

    #[test]
    fn second_shell_profile() {
        let s = enumerate_shell(2).unwrap();
        let p = gram_profile(s.points(), 4).unwrap();
        assert_eq!(
            p.values(),
            vec![rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2)]
        );
    }

    #[test]
    fn singleton_and_mixed_norms() {
        let p = gram_profile(&[IntVector4::new(1, 1, 0, 0)], 2).unwrap();
        assert_eq!(p.counts.len(), 1);
        assert_eq!(p.counts[&rat(1, 1)], 1);
        assert!(p.values().is_empty());
        let bad = [IntVector4::new(1, 1, 0, 0), IntVector4::new(2, 0, 0, 0)];
        assert!(gram_profile(&bad, 2).is_err());
    }

    #[test]
    fn design_test_root_system() {
        let s = enumerate_shell(1).unwrap();
        let p = gram_profile(s.points(), 2).unwrap();
        assert!(gegenbauer_design_test(&p, 4, 2).unwrap().is_zero());
        assert!(gegenbauer_design_test(&p, 4, 6).unwrap() > BigRational::zero());
    }

    #[test]
    fn octahedron_is_a_3_design() {
        let pts: Vec<IntVector4> = [
            (1, 0, 0),
            (-1, 0, 0),
            (0, 1, 0),
            (0, -1, 0),
            (0, 0, 1),
            (0, 0, -1),
        ]
        .iter()
        .map(|&(a, b, c)| IntVector4::new(a, b, c, 0))
        .collect();
        let p = gram_profile(&pts, 1).unwrap();
        assert!(gegenbauer_design_test(&p, 3, 3).unwrap().is_zero());
        assert!(gegenbauer_design_test(&p, 3, 2).unwrap().is_zero());
        assert!(!gegenbauer_design_test(&p, 3, 4).unwrap().is_zero());
    }

    #[test]
    fn design_test_vanishes_with_deficit() {
        for m in 1..=20 {
            let s = enumerate_shell(m).unwrap();
            let p = gram_profile(s.points(), s.norm()).unwrap();
            for l in 1..=10 {
                let v = gegenbauer_design_test(&p, 4, l).unwrap();
                assert!(v >= BigRational::zero());
                let zero_deficit = design_deficit(&s, l).unwrap().iter().all(Zero::is_zero);
                assert_eq!(v.is_zero(), zero_deficit, "m = {m}, l = {l}");
            }
        }
    }

    #[test]
    fn equivalence_finds_a_relabeling() {
        let s = enumerate_shell(1).unwrap();
        let a = gram_matrix(s.points(), 2);
        let mut rev: Vec<IntVector4> = s.points().to_vec();
        rev.reverse();
        let b = gram_matrix(&rev, 2);
        let pi = gram_equivalence(&a, &b).unwrap();
        for i in 0..24 {
            for j in 0..24 {
                assert_eq!(a[i][j], b[pi[i]][pi[j]]);
            }
        }
        let mut bad = b.clone();
        bad[0][1] = rat(0, 1);
        bad[1][0] = rat(0, 1);
        assert!(gram_equivalence(&a, &bad).is_err());
    }
}
