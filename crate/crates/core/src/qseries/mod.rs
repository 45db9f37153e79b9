//! Truncated q-series with big-integer coefficients: eta quotients, E2,
//! scalar and harmonically weighted theta series of D4, and τ2 scans.

mod eta;
mod tau2;

pub use eta::{eta_quotient_coefficients, eta_quotient_naive, pentagonal_series};
pub use tau2::{
    congruence_scan, corollary_and_deligne_check, hecke_cross_checks, nonvanishing_scan,
    primes_up_to, CongruenceReport, DeligneReport, Tau2Table,
};

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact::{Monomial, MultiPoly4};
use crate::lattice::{enumerate_shell, jacobi_count, power_sums};
use crate::{config, Error, Result};

/// c_0 + c_1 q + … + c_M q^M.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerSeries {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntegerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.coeffs.iter().take(8).map(|c| c.to_string()).collect();
        write!(f, "IntegerSeries(M={}; {}", self.order(), shown.join(", "))?;
        if self.coeffs.len() > 8 {
            write!(f, ", …")?;
        }
        write!(f, ")")
    }
}

impl IntegerSeries {
    pub fn zero(order: usize) -> Self {
        IntegerSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Takes `coeffs` as c_0..c_M; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        IntegerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// c_n, or `None` past the truncation order.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        IntegerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntegerSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// f(q^k), kept at the same order.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * k > self.order() {
                break;
            }
            out.coeffs[n * k] = c.clone();
        }
        out
    }

    /// Truncated product, at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .into_par_iter()
            .map(|n| {
                (0..=n)
                    .map(|i| &self.coeffs[i] * &other.coeffs[n - i])
                    .sum()
            })
            .collect();
        IntegerSeries { coeffs }
    }

    /// First index where the two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl Add for &IntegerSeries {
    type Output = IntegerSeries;
    fn add(self, rhs: &IntegerSeries) -> IntegerSeries {
        IntegerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntegerSeries {
    type Output = IntegerSeries;
    fn sub(self, rhs: &IntegerSeries) -> IntegerSeries {
        IntegerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// σ(n) for n = 0..=order (σ(0) set to 0), by a divisor sieve.
pub fn divisor_sums(order: usize) -> Vec<u64> {
    let mut s = vec![0u64; order + 1];
    for d in 1..=order {
        for n in (d..=order).step_by(d) {
            s[n] += d as u64;
        }
    }
    s
}

/// E2 = 1 − 24 Σ σ(m) q^m.
pub fn e2_series(order: usize) -> Result<IntegerSeries> {
    config::check_series(order)?;
    let sigma = divisor_sums(order);
    let mut coeffs: Vec<BigInt> = sigma.iter().map(|&s| BigInt::from(s) * -24).collect();
    coeffs[0] = BigInt::one();
    Ok(IntegerSeries { coeffs })
}

/// Σ_m |(D4)_{2m}| q^m, checked coefficient-wise against 2E2(2z) − E2(z).
pub fn theta_scalar(order: usize) -> Result<IntegerSeries> {
    config::check_series(order)?;
    let mut coeffs = vec![BigInt::one()];
    for m in 1..=order as u64 {
        coeffs.push(BigInt::from(jacobi_count(m)?));
    }
    let theta = IntegerSeries { coeffs };
    let e2 = e2_series(order)?;
    let other = &e2.dilate(2).scale(&BigInt::from(2)) - &e2;
    if let Some(n) = theta.first_mismatch(&other) {
        return Err(Error::identity(
            "theta = 2E2(2z) - E2(z)",
            format!(
                "coefficient {n}: {} vs {}",
                theta.coeffs[n], other.coeffs[n]
            ),
        ));
    }
    Ok(theta)
}

/// Σ_m (Σ_{x ∈ (D4)_{2m}} P(x)) q^m for homogeneous P, from enumerated shells.
pub fn theta_weighted(p: &MultiPoly4, order: usize) -> Result<IntegerSeries> {
    Ok(theta_weighted_many(std::slice::from_ref(p), order)?.remove(0))
}

/// [`theta_weighted`] for several weights of one common degree, enumerating
/// each shell and its power sums once.
pub fn theta_weighted_many(ps: &[MultiPoly4], order: usize) -> Result<Vec<IntegerSeries>> {
    if ps.iter().any(|p| !p.is_homogeneous()) {
        return Err(Error::InvalidArgument(
            "weight polynomial must be homogeneous".into(),
        ));
    }
    let degrees: Vec<u32> = ps.iter().filter_map(MultiPoly4::degree).collect();
    let degree = degrees.first().copied().unwrap_or(0);
    if degrees.iter().any(|&d| d != degree) {
        return Err(Error::InvalidArgument(
            "weights must share one degree".into(),
        ));
    }
    config::check_shell_budget(order as u64)?;
    let forms: Vec<_> = ps.iter().map(MultiPoly4::integer_form).collect();
    let c0: Vec<BigInt> = ps
        .iter()
        .map(|p| {
            let at_origin = p.coeff(&Monomial::default());
            if degree == 0 && at_origin.is_integer() {
                Ok(at_origin.to_integer())
            } else if degree == 0 {
                Err(Error::identity("integral theta coefficient", "m = 0"))
            } else {
                Ok(BigInt::zero())
            }
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<BigInt>> = (1..=order as u64)
        .into_par_iter()
        .map(|m| {
            let shell = enumerate_shell(m)?;
            let sums = power_sums(shell.points(), degree);
            forms
                .iter()
                .map(|(terms, den)| {
                    let total: BigInt = terms.iter().map(|(mono, c)| c * &sums[mono]).sum();
                    if (&total % den).is_zero() {
                        Ok(total / den)
                    } else {
                        Err(Error::identity(
                            "integral theta coefficient",
                            format!("m = {m}"),
                        ))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(c0
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut coeffs = Vec::with_capacity(order + 1);
            coeffs.push(c);
            coeffs.extend(rows.iter().map(|r| r[i].clone()));
            IntegerSeries { coeffs }
        })
        .collect())
}
