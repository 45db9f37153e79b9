use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntegerSeries;
use crate::{config, Error, Result};

/// Π_{n≥1}(1 − q^{kn}) up to q^order as sparse (exponent, ±1) pairs, from
/// Euler's pentagonal number theorem.
pub fn pentagonal_series(k: usize, order: usize) -> Vec<(usize, i8)> {
    let mut out = vec![(0, 1)];
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let a = k * j * (3 * j - 1) / 2;
        if a > order {
            break;
        }
        out.push((a, sign));
        let b = k * j * (3 * j + 1) / 2;
        if b <= order {
            out.push((b, sign));
        }
    }
    out.sort_unstable();
    out
}

fn q_prefactor(factors: &[(usize, i32)]) -> Result<usize> {
    if factors.iter().any(|&(k, _)| k == 0) {
        return Err(Error::InvalidArgument("eta dilation must be >= 1".into()));
    }
    let num: i64 = factors.iter().map(|&(k, e)| k as i64 * e as i64).sum();
    if num % 24 != 0 || num < 0 {
        return Err(Error::InvalidArgument(format!(
            "q-prefactor {num}/24 of the eta quotient is not a nonnegative integer"
        )));
    }
    Ok((num / 24) as usize)
}

/// Multiplies (sign > 0) or divides (sign < 0) `c` in place by a sparse
/// series with constant term 1. `None` if an i128 operation overflows.
fn pass_i128(c: &mut [i128], sparse: &[(usize, i8)], divide: bool) -> Option<()> {
    let len = c.len();
    if divide {
        for n in 0..len {
            let mut v = c[n];
            for &(a, s) in &sparse[1..] {
                if a > n {
                    break;
                }
                v = v.checked_sub(c[n - a].checked_mul(s as i128)?)?;
            }
            c[n] = v;
        }
    } else {
        for n in (0..len).rev() {
            let mut v = c[n];
            for &(a, s) in &sparse[1..] {
                if a > n {
                    break;
                }
                v = v.checked_add(c[n - a].checked_mul(s as i128)?)?;
            }
            c[n] = v;
        }
    }
    Some(())
}

fn pass_big(c: &mut [BigInt], sparse: &[(usize, i8)], divide: bool) {
    let len = c.len();
    let step = |c: &mut [BigInt], n: usize, divide: bool| {
        let mut v = std::mem::take(&mut c[n]);
        for &(a, s) in &sparse[1..] {
            if a > n {
                break;
            }
            if (s > 0) != divide {
                v += &c[n - a];
            } else {
                v -= &c[n - a];
            }
        }
        c[n] = v;
    };
    if divide {
        for n in 0..len {
            step(c, n, true);
        }
    } else {
        for n in (0..len).rev() {
            step(c, n, false);
        }
    }
}

/// Coefficients of Π η(kz)^e up to q^order, for (k, e) in `factors`.
///
/// Each unit of |e| is one in-place pass of the dense series against the
/// sparse pentagonal series of (1 − q^k)(1 − q^{2k})…: multiplication for
/// e > 0, division for e < 0. The passes run in i128 and restart in big
/// integers if any operation overflows.
pub fn eta_quotient_coefficients(factors: &[(usize, i32)], order: usize) -> Result<IntegerSeries> {
    config::check_series(order)?;
    let shift = q_prefactor(factors)?;
    let mut out = IntegerSeries::zero(order);
    if shift > order {
        return Ok(out);
    }
    let inner = order - shift;
    let passes: Vec<(Vec<(usize, i8)>, bool)> = factors
        .iter()
        .flat_map(|&(k, e)| {
            let sparse = pentagonal_series(k, inner);
            std::iter::repeat_n((sparse, e < 0), e.unsigned_abs() as usize)
        })
        .collect();

    let mut small = vec![0i128; inner + 1];
    small[0] = 1;
    let fast = passes
        .iter()
        .try_for_each(|(s, div)| pass_i128(&mut small, s, *div));
    let body: Vec<BigInt> = match fast {
        Some(()) => small.into_iter().map(BigInt::from).collect(),
        None => {
            let mut big = vec![BigInt::zero(); inner + 1];
            big[0] = BigInt::one();
            for (s, div) in &passes {
                pass_big(&mut big, s, *div);
            }
            big
        }
    };
    for (n, c) in body.into_iter().enumerate() {
        out.coeffs[n + shift] = c;
    }
    Ok(out)
}

/// Independent oracle for [`eta_quotient_coefficients`]: multiplies out the
/// truncated product Π_n (1 − q^{kn})^e factor by factor with dense
/// convolutions, using geometric series for negative powers. Quadratic in
/// `order`; meant for small orders.
pub fn eta_quotient_naive(factors: &[(usize, i32)], order: usize) -> Result<IntegerSeries> {
    let shift = q_prefactor(factors)?;
    let mut out = IntegerSeries::zero(order);
    if shift > order {
        return Ok(out);
    }
    let inner = order - shift;
    let mut acc = IntegerSeries::one(inner);
    for &(k, e) in factors {
        for n in 1.. {
            let step = k * n;
            if step > inner {
                break;
            }
            let mut f = IntegerSeries::zero(inner);
            if e >= 0 {
                f.coeffs[0] = BigInt::one();
                f.coeffs[step] = BigInt::from(-1);
            } else {
                for j in (0..=inner).step_by(step) {
                    f.coeffs[j] = BigInt::one();
                }
            }
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&f);
            }
        }
    }
    for (n, c) in acc.coeffs.into_iter().enumerate() {
        out.coeffs[n + shift] = c;
    }
    Ok(out)
}
