//! Scaled Gegenbauer polynomials Q_{d,ℓ}, harmonic-space dimensions, exact
//! Gegenbauer expansions, and the two linear-programming certificates for
//! 24-point designs and codes on S³.

mod lp;

pub use lp::{certify_code_bound, certify_design_bound, LPCertificate};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{binomial, rat, rat_int, UniPoly};
use crate::{Error, Result};

/// Q_{d,ℓ} via the three-term recurrence
/// λ_{ℓ+1} Q_{ℓ+1} = x Q_ℓ − (1 − λ_{ℓ−1}) Q_{ℓ−1},  λ_ℓ = ℓ / (d + 2ℓ − 2),
/// started from Q_0 = 1 and Q_1 = d·x.
pub fn gegenbauer_poly(d: u32, l: u32) -> Result<UniPoly> {
    Ok(GegenbauerTable::new(d, l)?.polys.pop().unwrap())
}

fn lambda(d: u32, l: u32) -> BigRational {
    rat(l as i64, (d + 2 * l) as i64 - 2)
}

/// Q_{d,0}, …, Q_{d,L} for a fixed dimension.
#[derive(Clone, Debug)]
pub struct GegenbauerTable {
    d: u32,
    polys: Vec<UniPoly>,
}

impl GegenbauerTable {
    pub fn new(d: u32, max_degree: u32) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidArgument(format!(
                "Gegenbauer polynomials need d >= 3, got {d}"
            )));
        }
        let mut polys = vec![UniPoly::one()];
        if max_degree >= 1 {
            polys.push(UniPoly::monomial(1, rat_int(d)));
        }
        let x = UniPoly::x();
        for l in 1..max_degree {
            let prev = &polys[l as usize - 1];
            let cur = &polys[l as usize];
            let rhs = &(&x * cur) - &prev.scale(&(BigRational::one() - lambda(d, l - 1)));
            let next = rhs.scale(&lambda(d, l + 1).recip());
            polys.push(next);
        }
        Ok(GegenbauerTable { d, polys })
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.len() as u32 - 1
    }

    pub fn get(&self, l: u32) -> &UniPoly {
        &self.polys[l as usize]
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }
}

/// dim Harm_ℓ(R^d) = C(d+ℓ−1, ℓ) − C(d+ℓ−3, ℓ−2).
pub fn harm_dim(d: u32, l: u32) -> BigInt {
    let (d, l) = (d as i64, l as i64);
    binomial(d + l - 1, l) - binomial(d + l - 3, l - 2)
}

/// Fisher-type lower bound b_{d,t} on the size of a spherical t-design.
pub fn fisher_bound(d: u32, t: u32) -> BigInt {
    let (d, e) = (d as i64, (t / 2) as i64);
    if t.is_multiple_of(2) {
        binomial(d + e - 1, e) + binomial(d + e - 2, e - 1)
    } else {
        BigInt::from(2) * binomial(d + e - 1, e)
    }
}

/// F = Σ f_ℓ Q_{d,ℓ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GegenbauerExpansion {
    pub d: u32,
    pub coeffs: Vec<BigRational>,
}

impl GegenbauerExpansion {
    pub fn coeff(&self, l: usize) -> BigRational {
        self.coeffs
            .get(l)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Σ f_ℓ Q_ℓ expanded back into the monomial basis.
    pub fn to_poly(&self) -> UniPoly {
        let table = GegenbauerTable::new(self.d, self.coeffs.len().saturating_sub(1) as u32)
            .expect("expansion dimension was validated at construction");
        self.coeffs
            .iter()
            .zip(table.polys())
            .fold(UniPoly::zero(), |acc, (f, q)| &acc + &q.scale(f))
    }
}

/// Gegenbauer coefficients of `f` by back-substitution on the
/// degree-triangular system: match the leading coefficient against Q_r,
/// subtract, repeat. The result is re-expanded and compared with `f`.
pub fn gegenbauer_expand(d: u32, f: &UniPoly) -> Result<GegenbauerExpansion> {
    let Some(r) = f.degree() else {
        GegenbauerTable::new(d, 0)?;
        return Ok(GegenbauerExpansion { d, coeffs: vec![] });
    };
    let table = GegenbauerTable::new(d, r as u32)?;
    let mut rest = f.clone();
    let mut coeffs = vec![BigRational::zero(); r + 1];
    for l in (0..=r).rev() {
        let c = rest.coeff(l);
        if c.is_zero() {
            continue;
        }
        let q = table.get(l as u32);
        let fl = c / q.leading().unwrap();
        rest = &rest - &q.scale(&fl);
        coeffs[l] = fl;
    }
    if !rest.is_zero() {
        return Err(Error::identity(
            "gegenbauer_expand",
            format!("residual {rest}"),
        ));
    }
    let exp = GegenbauerExpansion { d, coeffs };
    if &exp.to_poly() != f {
        return Err(Error::identity(
            "gegenbauer_expand",
            "Σ f_ℓ Q_ℓ does not reproduce the input",
        ));
    }
    Ok(exp)
}
