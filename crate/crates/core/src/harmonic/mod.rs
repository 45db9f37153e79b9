//! Harmonic polynomials on R⁴: the Laplacian, exact bases of Harm_ℓ, the
//! W(F4)-invariant sextic P_6, orthogonal group actions and Molien series.

mod group;
mod molien;

pub use group::{aut_group_of_root_system, MatrixGroup, OrthogonalMatrix4};
pub use molien::{invariant_dim_by_projection, molien_harmonic_dims};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{rat, rat_int, Monomial, MultiPoly4};
use crate::gegenbauer::harm_dim;
use crate::{config, Result};

/// Δ = Σ ∂²/∂x_i².
pub fn laplacian(p: &MultiPoly4) -> MultiPoly4 {
    let mut out = MultiPoly4::zero();
    for (m, c) in p.terms() {
        for i in 0..4 {
            let e = m.0[i];
            if e < 2 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 2;
            out.add_term(dm, c * rat_int(e * (e - 1)));
        }
    }
    out
}

/// Laplacian in x2, x3, x4 only.
fn laplacian_tail(p: &MultiPoly4) -> MultiPoly4 {
    let mut out = MultiPoly4::zero();
    for (m, c) in p.terms() {
        for i in 1..4 {
            let e = m.0[i];
            if e < 2 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 2;
            out.add_term(dm, c * rat_int(e * (e - 1)));
        }
    }
    out
}

/// A basis of the harmonic homogeneous polynomials of one degree.
#[derive(Clone, Debug)]
pub struct HarmonicBasis {
    pub degree: u32,
    /// Seed monomial of each member: the unique monomial of x1-degree ≤ 1
    /// it contains.
    pub seeds: Vec<Monomial>,
    /// Primitive integer-coefficient members, ordered by seed.
    pub polys: Vec<MultiPoly4>,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Exact basis of ker Δ on homogeneous polynomials of degree `l`.
///
/// Writing h = Σ_k x1^k g_k with g_k in x2, x3, x4, the equation Δh = 0 is
/// the triangular system (k+2)(k+1) g_{k+2} = −Δ' g_k. The free variables
/// are g_0 and g_1, so each monomial of x1-degree 0 or 1 seeds exactly one
/// kernel element. There are C(l+2,2) + C(l+1,2) = dim Harm_l seeds.
pub fn harm_basis(l: u32) -> Result<Arc<HarmonicBasis>> {
    config::check_degree(l)?;
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<HarmonicBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&l) {
        return Ok(Arc::clone(b));
    }
    let b = Arc::new(build_harm_basis(l));
    cache.lock().unwrap().insert(l, Arc::clone(&b));
    Ok(b)
}

fn build_harm_basis(l: u32) -> HarmonicBasis {
    let mut seeds: Vec<Monomial> = Monomial::all_of_degree(l)
        .into_iter()
        .filter(|m| m.0[0] <= 1)
        .collect();
    seeds.sort();
    let polys: Vec<MultiPoly4> = seeds.iter().map(harmonic_from_seed).collect();
    debug_assert_eq!(BigInt::from(polys.len()), harm_dim(4, l));
    HarmonicBasis {
        degree: l,
        seeds,
        polys,
    }
}

fn harmonic_from_seed(seed: &Monomial) -> MultiPoly4 {
    let k0 = seed.0[0];
    let mut tail = *seed;
    tail.0[0] = 0;
    // g_k as polynomials in x2..x4
    let mut g = MultiPoly4::term(tail, rat(1, 1));
    let mut k = k0;
    let mut h = MultiPoly4::zero();
    while !g.is_zero() {
        for (m, c) in g.terms() {
            let mut mm = *m;
            mm.0[0] = k;
            h.add_term(mm, c.clone());
        }
        let next = laplacian_tail(&g);
        let denom = BigRational::from_integer(BigInt::from((k + 2) * (k + 1)));
        g = next.scale(&(-denom.recip()));
        k += 2;
    }
    h.primitive()
}

/// Rank of the Laplacian Hom_l → Hom_{l−2} on monomial coordinates.
/// dim ker = C(l+3,3) − rank; used to cross-check [`harm_basis`].
pub fn laplacian_rank(l: u32) -> usize {
    if l < 2 {
        return 0;
    }
    let src = Monomial::all_of_degree(l);
    let dst = Monomial::all_of_degree(l - 2);
    let index: HashMap<Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = vec![vec![BigInt::zero(); src.len()]; dst.len()];
    for (j, m) in src.iter().enumerate() {
        let lap = laplacian(&MultiPoly4::term(*m, rat(1, 1)));
        for (t, c) in lap.terms() {
            rows[index[t]][j] = c.to_integer();
        }
    }
    crate::exact::integer_rank(&rows)
}

/// The W(F4)-invariant harmonic sextic
/// P_6 = Σ x_i⁶ − 5 Σ_{i≠j} x_i⁴ x_j² + 30 Σ_{i<j<k} x_i² x_j² x_k².
pub fn p6() -> MultiPoly4 {
    let mut p = MultiPoly4::zero();
    for i in 0..4 {
        let mut e = [0; 4];
        e[i] = 6;
        p.add_term(Monomial(e), rat(1, 1));
        for j in 0..4 {
            if i != j {
                let mut e = [0; 4];
                e[i] = 4;
                e[j] = 2;
                p.add_term(Monomial(e), rat(-5, 1));
            }
        }
    }
    for skip in 0..4 {
        let mut e = [2; 4];
        e[skip] = 0;
        p.add_term(Monomial(e), rat(30, 1));
    }
    p
}

/// σ*P, the polynomial x ↦ P(σx).
pub fn pullback(sigma: &OrthogonalMatrix4, p: &MultiPoly4) -> MultiPoly4 {
    // Images of the coordinate functions: (σx)_i = Σ_j σ_ij x_j.
    let forms: Vec<MultiPoly4> = (0..4)
        .map(|i| {
            MultiPoly4::from_terms((0..4).map(|j| (Monomial::var(j), sigma.entry(i, j).clone())))
        })
        .collect();
    let mut powers: Vec<Vec<MultiPoly4>> = forms
        .iter()
        .map(|f| vec![MultiPoly4::one(), f.clone()])
        .collect();
    let mut out = MultiPoly4::zero();
    for (m, c) in p.terms() {
        let mut t = MultiPoly4::constant(c.clone());
        for i in 0..4 {
            let e = m.0[i] as usize;
            while powers[i].len() <= e {
                let next = &powers[i][powers[i].len() - 1] * &forms[i];
                powers[i].push(next);
            }
            if e > 0 {
                t = &t * &powers[i][e];
            }
        }
        out = &out + &t;
    }
    out
}
