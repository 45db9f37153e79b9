use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact::{rat, solve_square, IntVector4};
use crate::lattice::enumerate_shell;
use crate::{Error, Result};

/// A 4×4 rational matrix acting on column vectors, with Mᵀ M = I checked at
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthogonalMatrix4 {
    rows: [[BigRational; 4]; 4],
}

impl fmt::Debug for OrthogonalMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(crate::exact::fmt_rational).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl OrthogonalMatrix4 {
    pub fn new(rows: [[BigRational; 4]; 4]) -> Result<Self> {
        let m = OrthogonalMatrix4 { rows };
        if !m.transpose().mul(&m).is_identity() {
            return Err(Error::identity("orthogonality", format!("{m:?}")));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self::scalar(1)
    }

    pub fn neg_identity() -> Self {
        Self::scalar(-1)
    }

    fn scalar(s: i64) -> Self {
        OrthogonalMatrix4 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { rat(s, 1) } else { rat(0, 1) })
            }),
        }
    }

    /// The map x ↦ (s_0 x_{p_0}, …, s_3 x_{p_3}).
    pub fn signed_permutation(perm: [usize; 4], signs: [i64; 4]) -> Self {
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if perm[i] == j {
                    rat(signs[i], 1)
                } else {
                    rat(0, 1)
                }
            })
        });
        OrthogonalMatrix4 { rows }
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[[BigRational; 4]; 4] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        OrthogonalMatrix4 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| self.rows[j][i].clone())),
        }
    }

    /// Matrix product `self · other`, i.e. apply `other` first.
    pub fn mul(&self, other: &Self) -> Self {
        OrthogonalMatrix4 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(BigRational::zero(), |acc, k| {
                        acc + &self.rows[i][k] * &other.rows[k][j]
                    })
                })
            }),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, x: &IntVector4) -> [BigRational; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(BigRational::zero(), |acc, j| {
                acc + &self.rows[i][j] * BigRational::from_integer(x.0[j].into())
            })
        })
    }

    /// Image of an integer point, if it is again integral.
    pub fn apply_int(&self, x: &IntVector4) -> Option<IntVector4> {
        let y = self.apply(x);
        let mut out = [0i64; 4];
        for (o, v) in out.iter_mut().zip(y.iter()) {
            if !v.is_integer() {
                return None;
            }
            *o = v.to_integer().to_i64()?;
        }
        Some(IntVector4(out))
    }

    /// `(D, A)` with `self = A / D`, `A` integral and `D` the least common
    /// denominator.
    pub fn integer_scaled(&self) -> (i64, [[i64; 4]; 4]) {
        let den = self
            .rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let a = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (&self.rows[i][j] * BigRational::from_integer(den.clone()))
                    .to_integer()
                    .to_i64()
                    .expect("orthogonal entries are bounded by 1")
            })
        });
        (den.to_i64().expect("small denominator"), a)
    }
}

/// A finite group of orthogonal matrices in a fixed, sorted order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<OrthogonalMatrix4>,
    denom: i64,
    scaled: Vec<[[i64; 4]; 4]>,
}

impl MatrixGroup {
    /// Validates closure under products and inverses, and the identity.
    pub fn new(mut elements: Vec<OrthogonalMatrix4>) -> Result<Self> {
        let denom = elements
            .iter()
            .map(|m| m.integer_scaled().0)
            .fold(1i64, |a, b| a.lcm(&b));
        let scaled_of = |m: &OrthogonalMatrix4| -> [[i64; 4]; 4] {
            let (d, a) = m.integer_scaled();
            let f = denom / d;
            a.map(|r| r.map(|v| v * f))
        };
        elements.sort_by_key(|m| scaled_of(m));
        elements.dedup();
        let scaled: Vec<[[i64; 4]; 4]> = elements.iter().map(scaled_of).collect();
        let set: HashSet<[[i64; 4]; 4]> = scaled.iter().copied().collect();

        let id = scaled_of(&OrthogonalMatrix4::identity());
        if !set.contains(&id) {
            return Err(Error::identity("group identity", "identity missing"));
        }
        let closed = scaled.par_iter().all(|a| {
            // Orthogonal, so the inverse is the transpose.
            let at: [[i64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]));
            set.contains(&at)
                && scaled.iter().all(|b| {
                    let mut p = [[0i64; 4]; 4];
                    for i in 0..4 {
                        for j in 0..4 {
                            let s: i64 = (0..4).map(|k| a[i][k] * b[k][j]).sum();
                            if s % denom != 0 {
                                return false;
                            }
                            p[i][j] = s / denom;
                        }
                    }
                    set.contains(&p)
                })
        });
        if !closed {
            return Err(Error::identity(
                "group closure",
                "not closed under products or inverses",
            ));
        }
        Ok(MatrixGroup {
            elements,
            denom,
            scaled,
        })
    }

    pub fn trivial() -> Self {
        Self::new(vec![OrthogonalMatrix4::identity()]).expect("trivial group")
    }

    pub fn plus_minus_identity() -> Self {
        Self::new(vec![
            OrthogonalMatrix4::identity(),
            OrthogonalMatrix4::neg_identity(),
        ])
        .expect("{±I}")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[OrthogonalMatrix4] {
        &self.elements
    }

    pub fn contains(&self, m: &OrthogonalMatrix4) -> bool {
        self.elements.contains(m)
    }

    /// Common denominator `D` and the integer matrices `D · g`.
    pub fn scaled(&self) -> (i64, &[[[i64; 4]; 4]]) {
        (self.denom, &self.scaled)
    }
}

/// Aut of the D4 root system: every orthogonal map permuting the 24 roots.
///
/// Images of the simple roots e1−e2, e2−e3, e3−e4, e3+e4 are chosen by
/// backtracking among the roots so that all pairwise inner products are
/// preserved; the linear extension is then kept if it maps the root set onto
/// itself. The order must come out as 1152.
pub fn aut_group_of_root_system() -> Result<MatrixGroup> {
    let roots: Vec<IntVector4> = enumerate_shell(1)?.points().to_vec();
    let root_set: HashSet<IntVector4> = roots.iter().copied().collect();
    let basis = [
        IntVector4::new(1, -1, 0, 0),
        IntVector4::new(0, 1, -1, 0),
        IntVector4::new(0, 0, 1, -1),
        IntVector4::new(0, 0, 1, 1),
    ];
    let gram: [[i128; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| basis[i].inner(&basis[j])));

    // σ = R·B⁻¹ with B, R having the basis and image vectors as columns.
    let b_cols: Vec<Vec<BigRational>> = (0..4)
        .map(|i| (0..4).map(|j| rat(basis[j].0[i], 1)).collect())
        .collect();
    let b_inv: Vec<Vec<BigRational>> = {
        let cols: Vec<Vec<BigRational>> = (0..4)
            .map(|k| {
                let e: Vec<BigRational> = (0..4)
                    .map(|i| if i == k { rat(1, 1) } else { rat(0, 1) })
                    .collect();
                solve_square(&b_cols, &e).expect("simple roots are independent")
            })
            .collect();
        (0..4)
            .map(|i| (0..4).map(|j| cols[j][i].clone()).collect())
            .collect()
    };

    let mut tuples: Vec<[IntVector4; 4]> = roots
        .par_iter()
        .flat_map_iter(|&r0| {
            let mut found = Vec::new();
            let mut chosen = vec![r0];
            extend_images(&roots, &gram, &mut chosen, &mut found);
            found
        })
        .collect();
    tuples.sort();

    let elements: Vec<OrthogonalMatrix4> = tuples
        .par_iter()
        .filter_map(|imgs| {
            let rows = std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(BigRational::zero(), |acc, k| {
                        acc + rat(imgs[k].0[i], 1) * &b_inv[k][j]
                    })
                })
            });
            let m = OrthogonalMatrix4::new(rows).ok()?;
            roots
                .iter()
                .all(|r| m.apply_int(r).is_some_and(|y| root_set.contains(&y)))
                .then_some(m)
        })
        .collect();

    if elements.len() != 1152 {
        return Err(Error::identity(
            "|Aut(D4 roots)| = 1152",
            format!("found {} elements", elements.len()),
        ));
    }
    MatrixGroup::new(elements)
}

fn extend_images(
    roots: &[IntVector4],
    gram: &[[i128; 4]; 4],
    chosen: &mut Vec<IntVector4>,
    out: &mut Vec<[IntVector4; 4]>,
) {
    let k = chosen.len();
    if k == 4 {
        out.push([chosen[0], chosen[1], chosen[2], chosen[3]]);
        return;
    }
    for r in roots {
        if (0..k).all(|i| chosen[i].inner(r) == gram[i][k]) {
            chosen.push(*r);
            extend_images(roots, gram, chosen, out);
            chosen.pop();
        }
    }
}
