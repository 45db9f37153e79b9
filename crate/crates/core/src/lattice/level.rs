// Elimination and small matrix loops read more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enumerate_shell;
use super::gram::gram_equivalence;
use crate::exact::{rat, solve_square};
use crate::{Error, Result};

/// A full-rank lattice {n·B : n ∈ Z⁴} given by its basis rows.
#[derive(Clone, Debug)]
pub struct LatticeDescription {
    basis: [[BigRational; 4]; 4],
    gram: Vec<Vec<BigRational>>,
    dual_gram: Vec<Vec<BigRational>>,
}

impl LatticeDescription {
    pub fn new(basis: [[BigRational; 4]; 4]) -> Result<Self> {
        let gram: Vec<Vec<BigRational>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        (0..4).fold(BigRational::zero(), |a, k| a + &basis[i][k] * &basis[j][k])
                    })
                    .collect()
            })
            .collect();
        let mut dual_gram = vec![vec![BigRational::zero(); 4]; 4];
        for k in 0..4 {
            let e: Vec<BigRational> = (0..4)
                .map(|i| if i == k { rat(1, 1) } else { rat(0, 1) })
                .collect();
            let col = solve_square(&gram, &e)
                .ok_or_else(|| Error::InvalidArgument("singular lattice basis".into()))?;
            for i in 0..4 {
                dual_gram[i][k] = col[i].clone();
            }
        }
        Ok(LatticeDescription {
            basis,
            gram,
            dual_gram,
        })
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Result<Self> {
        Self::new(rows.map(|r| r.map(|v| rat(v, 1))))
    }

    /// Basis rows (1,−1,0,0), (0,1,−1,0), (0,0,1,−1), (0,0,1,1).
    pub fn d4() -> Self {
        Self::from_ints([[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]])
            .expect("D4 basis is nonsingular")
    }

    pub fn basis(&self) -> &[[BigRational; 4]; 4] {
        &self.basis
    }

    /// B·Bᵀ.
    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    /// Gram matrix of the dual basis, (B·Bᵀ)⁻¹.
    pub fn dual_gram(&self) -> &[Vec<BigRational>] {
        &self.dual_gram
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAnalysis {
    pub integral: bool,
    pub even: bool,
    /// Least N with N·⟨y,y⟩ ∈ 2Z for every dual vector y.
    pub level: BigInt,
    /// Number of lattice vectors of each squared norm up to the bound.
    pub shell_sizes: BTreeMap<BigRational, u64>,
    /// Whether the norm-2 vectors are, up to relabeling, Gram-equivalent to
    /// the D4 root system.
    pub norm2_is_root_system: bool,
}

/// Integrality, evenness and level from the Gram matrices, plus shell sizes
/// for squared norms up to `max_norm` by bounded enumeration.
pub fn analyze_lattice(lat: &LatticeDescription, max_norm: u32) -> Result<LatticeAnalysis> {
    let g = lat.gram();
    let integral = g.iter().flatten().all(BigRational::is_integer);
    let even = integral && (0..4).all(|i| g[i][i].to_integer().is_even());

    // ⟨y,y⟩ = Σ h_ii n_i² + 2 Σ_{i<j} h_ij n_i n_j for y = n·B*, so the
    // condition is N·h_ii/2 ∈ Z and N·h_ij ∈ Z.
    let h = lat.dual_gram();
    let mut level = BigInt::one();
    for i in 0..4 {
        for j in i..4 {
            let v = if i == j {
                &h[i][i] / rat(2, 1)
            } else {
                h[i][j].clone()
            };
            level = level.lcm(v.denom());
        }
    }

    let shell_sizes = enumerate_by_norm(lat, max_norm)?;
    let norm2_is_root_system = if max_norm >= 2 {
        norm2_matches_roots(lat)?
    } else {
        false
    };

    Ok(LatticeAnalysis {
        integral,
        even,
        level,
        shell_sizes,
        norm2_is_root_system,
    })
}

/// Coefficient vectors n with n·G·nᵀ ≤ max_norm. For x = n·B one has
/// n_i = ⟨x, b*_i⟩, so n_i² ≤ max_norm · (G⁻¹)_ii bounds the search box.
fn vectors_up_to(lat: &LatticeDescription, max_norm: u32) -> Vec<([i64; 4], BigRational)> {
    let h = lat.dual_gram();
    let bound: Vec<i64> = (0..4)
        .map(|i| {
            let b = (&h[i][i] * rat(max_norm as i64, 1)).floor().to_integer();
            b.to_i64().expect("search box fits in i64").sqrt()
        })
        .collect();
    let g = lat.gram();
    let limit = rat(max_norm as i64, 1);
    let mut out = Vec::new();
    let mut n = [0i64; 4];
    for a in -bound[0]..=bound[0] {
        n[0] = a;
        for b in -bound[1]..=bound[1] {
            n[1] = b;
            for c in -bound[2]..=bound[2] {
                n[2] = c;
                for d in -bound[3]..=bound[3] {
                    n[3] = d;
                    let mut q = BigRational::zero();
                    for i in 0..4 {
                        for j in 0..4 {
                            if n[i] != 0 && n[j] != 0 {
                                q += &g[i][j] * rat(n[i] * n[j], 1);
                            }
                        }
                    }
                    if q <= limit {
                        out.push((n, q));
                    }
                }
            }
        }
    }
    out
}

fn enumerate_by_norm(
    lat: &LatticeDescription,
    max_norm: u32,
) -> Result<BTreeMap<BigRational, u64>> {
    let mut sizes = BTreeMap::new();
    for (_, q) in vectors_up_to(lat, max_norm) {
        if q.is_negative() {
            return Err(Error::identity("positive definite", "negative norm"));
        }
        *sizes.entry(q).or_insert(0) += 1;
    }
    Ok(sizes)
}

fn norm2_matches_roots(lat: &LatticeDescription) -> Result<bool> {
    let two = rat(2, 1);
    let g = lat.gram();
    let coeffs: Vec<[i64; 4]> = vectors_up_to(lat, 2)
        .into_iter()
        .filter(|(_, q)| q == &two)
        .map(|(n, _)| n)
        .collect();
    if coeffs.len() != 24 {
        return Ok(false);
    }
    let inner = |a: &[i64; 4], b: &[i64; 4]| -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..4 {
            for j in 0..4 {
                if a[i] != 0 && b[j] != 0 {
                    s += &g[i][j] * rat(a[i] * b[j], 1);
                }
            }
        }
        s / &two
    };
    let gm: Vec<Vec<BigRational>> = coeffs
        .iter()
        .map(|a| coeffs.iter().map(|b| inner(a, b)).collect())
        .collect();
    let roots = enumerate_shell(1)?;
    let target = super::gram_matrix(roots.points(), 2);
    Ok(gram_equivalence(&gm, &target).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_is_even_of_level_two() {
        let a = analyze_lattice(&LatticeDescription::d4(), 4).unwrap();
        assert!(a.integral && a.even);
        assert_eq!(a.level, BigInt::from(2));
        assert_eq!(a.shell_sizes[&rat(2, 1)], 24);
        assert_eq!(a.shell_sizes[&rat(4, 1)], 24);
        assert_eq!(a.shell_sizes[&rat(0, 1)], 1);
        assert!(a.norm2_is_root_system);
    }

    #[test]
    fn z4_is_odd() {
        let z4 =
            LatticeDescription::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
                .unwrap();
        let a = analyze_lattice(&z4, 2).unwrap();
        assert!(a.integral);
        assert!(!a.even);
        assert_eq!(a.shell_sizes[&rat(1, 1)], 8);
        assert_eq!(a.shell_sizes[&rat(2, 1)], 24);
        // Z⁴ contains D4, and its norm-2 vectors are exactly ±e_i ± e_j.
        assert!(a.norm2_is_root_system);
    }

    #[test]
    fn scaled_z4_has_level_four() {
        // Basis √2·I is irrational; Gram 2·I is realised by the lattice
        // spanned by (1,1,0,0), (1,-1,0,0), (0,0,1,1), (0,0,1,-1).
        let l = LatticeDescription::from_ints([
            [1, 1, 0, 0],
            [1, -1, 0, 0],
            [0, 0, 1, 1],
            [0, 0, 1, -1],
        ])
        .unwrap();
        assert_eq!(l.gram()[0][0], rat(2, 1));
        assert_eq!(l.gram()[0][1], rat(0, 1));
        let a = analyze_lattice(&l, 2).unwrap();
        assert!(a.even);
        assert_eq!(a.level, BigInt::from(4));
        assert_eq!(a.shell_sizes[&rat(2, 1)], 8);
        assert!(!a.norm2_is_root_system);
    }

    #[test]
    fn singular_basis_rejected() {
        assert!(LatticeDescription::from_ints([
            [1, 0, 0, 0],
            [2, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1]
        ])
        .is_err());
    }

    #[test]
    fn rotated_d4_still_recognised() {
        // D4 in the Hurwitz-style basis: the same lattice, different basis.
        let l =
            LatticeDescription::from_ints([[2, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]])
                .unwrap();
        let a = analyze_lattice(&l, 2).unwrap();
        assert!(a.even);
        assert_eq!(a.level, BigInt::from(2));
        assert!(a.norm2_is_root_system);
    }
}
