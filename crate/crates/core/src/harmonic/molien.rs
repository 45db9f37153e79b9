use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{harm_basis, MatrixGroup, OrthogonalMatrix4};
use crate::exact::{integer_rank, rat, Monomial, UniPoly};
use crate::{Error, Result};

/// det(I − t·w) as a polynomial in t.
fn det_i_minus_tw(w: &OrthogonalMatrix4) -> UniPoly {
    let entry = |i: usize, j: usize| -> UniPoly {
        let c = -w.entry(i, j).clone();
        let mut p = UniPoly::monomial(1, c);
        if i == j {
            p = &p + &UniPoly::one();
        }
        p
    };
    let mut det = UniPoly::zero();
    for perm in permutations4() {
        let mut term = UniPoly::constant(rat(parity(&perm), 1));
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &entry(i, j);
        }
        det = &det + &term;
    }
    det
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn parity(p: &[usize; 4]) -> i64 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Power series of `num / den` to order `n` (inclusive); `den(0)` must be 1.
fn series_quotient(num: &UniPoly, den: &UniPoly, n: usize) -> Vec<BigRational> {
    debug_assert!(den.coeff(0).is_one());
    let mut out = vec![BigRational::zero(); n + 1];
    for k in 0..=n {
        let mut v = num.coeff(k);
        for j in 1..=k.min(den.degree().unwrap_or(0)) {
            v -= den.coeff(j) * &out[k - j];
        }
        out[k] = v;
    }
    out
}

/// dim Harm_ℓ(R⁴)^G for ℓ = 0..=max_degree from the averaged harmonic Molien
/// series (1/|G|) Σ_w (1 − t²) / det(I − t·w).
pub fn molien_harmonic_dims(g: &MatrixGroup, max_degree: u32) -> Result<Vec<BigInt>> {
    let n = max_degree as usize;
    // Elements sharing a characteristic polynomial contribute equally.
    let mut classes: HashMap<Vec<BigRational>, usize> = HashMap::new();
    let dets: Vec<UniPoly> = g.elements().par_iter().map(det_i_minus_tw).collect();
    for d in dets {
        *classes.entry(d.coeffs().to_vec()).or_default() += 1;
    }
    let num = UniPoly::from_ints(&[1, 0, -1]);
    let mut total = vec![BigRational::zero(); n + 1];
    let mut keys: Vec<_> = classes.into_iter().collect();
    keys.sort();
    for (coeffs, count) in keys {
        let series = series_quotient(&num, &UniPoly::new(coeffs), n);
        let c = BigRational::from_integer(count.into());
        for (t, s) in total.iter_mut().zip(series) {
            *t += s * &c;
        }
    }
    let order = BigRational::from_integer(g.order().into());
    total
        .into_iter()
        .enumerate()
        .map(|(l, v)| {
            let v = v / &order;
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::identity(
                    "Molien coefficient integrality",
                    format!("degree {l}: {v}"),
                ))
            }
        })
        .collect()
}

/// Rank of the averaging operator P ↦ Σ_{σ∈G} σ*P on Harm_ℓ.
///
/// Each σ is scaled to the integer matrix D·σ, so the pullback acts on
/// degree-ℓ monomials through integer matrices and the rank is computed
/// exactly by fraction-free elimination. Scaling does not change the rank.
pub fn invariant_dim_by_projection(g: &MatrixGroup, l: u32) -> Result<usize> {
    let basis = harm_basis(l)?;
    let (_, scaled) = g.scaled();
    let monos = Monomial::all_of_degree(l);
    let n = monos.len();

    let sum = scaled.par_iter().map(|a| pullback_matrix(a, l)).reduce(
        || vec![vec![0i64; n]; n],
        |mut acc, m| {
            for (ra, rm) in acc.iter_mut().zip(m) {
                for (x, y) in ra.iter_mut().zip(rm) {
                    *x += y;
                }
            }
            acc
        },
    );

    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // Column j of `sum` is the averaged image of monomial j; apply it to each
    // basis member to get the rows of the image matrix.
    let rows: Vec<Vec<BigInt>> = basis
        .polys
        .par_iter()
        .map(|p| {
            let mut v = vec![BigInt::zero(); n];
            for (m, c) in p.terms() {
                let j = index[m];
                let c = c.to_integer();
                for (i, vi) in v.iter_mut().enumerate() {
                    let s = sum[i][j];
                    if s != 0 {
                        *vi += &c * s;
                    }
                }
            }
            v
        })
        .collect();
    Ok(integer_rank(&rows))
}

/// Matrix of P ↦ P(A·x) on degree-`l` monomials, columns indexed by source
/// monomial.
fn pullback_matrix(a: &[[i64; 4]; 4], l: u32) -> Vec<Vec<i64>> {
    let mut levels: Vec<Vec<Monomial>> = Vec::new();
    let mut index: Vec<HashMap<Monomial, usize>> = Vec::new();
    for k in 0..=l {
        let ms = Monomial::all_of_degree(k);
        index.push(ms.iter().enumerate().map(|(i, m)| (*m, i)).collect());
        levels.push(ms);
    }
    // images[k][i]: dense image of monomial i of degree k
    let mut images: Vec<Vec<Vec<i64>>> = vec![vec![vec![1]]];
    for k in 1..=l as usize {
        let mut cur = Vec::with_capacity(levels[k].len());
        for m in &levels[k] {
            let v = m.0.iter().position(|&e| e > 0).unwrap();
            let mut prev = *m;
            prev.0[v] -= 1;
            let src = &images[k - 1][index[k - 1][&prev]];
            let mut img = vec![0i64; levels[k].len()];
            for (u, &c) in src.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let base = levels[k - 1][u];
                for j in 0..4 {
                    let f = a[v][j];
                    if f != 0 {
                        img[index[k][&base.times(&Monomial::var(j))]] += c * f;
                    }
                }
            }
            cur.push(img);
        }
        images.push(cur);
    }
    let top = &images[l as usize];
    let n = top.len();
    (0..n)
        .map(|i| (0..n).map(|j| top[j][i]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::MultiPoly4;
    use crate::harmonic::{aut_group_of_root_system, pullback};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trivial_group_sees_everything() {
        let g = MatrixGroup::trivial();
        let dims = molien_harmonic_dims(&g, 6).unwrap();
        assert_eq!(dims, ints(&[1, 4, 9, 16, 25, 36, 49]));
        assert_eq!(invariant_dim_by_projection(&g, 2).unwrap(), 9);
    }

    #[test]
    fn plus_minus_identity_kills_odd_degrees() {
        let g = MatrixGroup::plus_minus_identity();
        assert_eq!(invariant_dim_by_projection(&g, 3).unwrap(), 0);
        assert_eq!(invariant_dim_by_projection(&g, 4).unwrap(), 25);
        assert_eq!(
            molien_harmonic_dims(&g, 5).unwrap(),
            ints(&[1, 0, 9, 0, 25, 0])
        );
    }

    #[test]
    fn det_of_identity() {
        let d = det_i_minus_tw(&OrthogonalMatrix4::identity());
        assert_eq!(d, UniPoly::from_ints(&[1, -4, 6, -4, 1]));
    }

    #[test]
    fn pullback_matrix_matches_symbolic_pullback() {
        let g = aut_group_of_root_system().unwrap();
        let (den, scaled) = g.scaled();
        let monos = Monomial::all_of_degree(3);
        for (elt, a) in g.elements().iter().zip(scaled).step_by(97) {
            let m = pullback_matrix(a, 3);
            for (j, mono) in monos.iter().enumerate() {
                let sym = pullback(elt, &MultiPoly4::term(*mono, rat(1, 1)));
                for (i, target) in monos.iter().enumerate() {
                    let expect = sym.coeff(target) * rat(den.pow(3), 1);
                    assert_eq!(expect, rat(m[i][j], 1));
                }
            }
        }
    }
}
