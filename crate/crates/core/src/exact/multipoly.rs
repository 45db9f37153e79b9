use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntVector4;

/// Exponent vector of a monomial x1^a x2^b x3^c x4^d.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// tuples compared left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 4];
        e[i] = 1;
        Monomial(e)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// All exponent vectors of total degree `deg`, in ascending term order.
    pub fn all_of_degree(deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=deg {
            for b in 0..=deg - a {
                for c in 0..=deg - a - b {
                    out.push(Monomial([a, b, c, deg - a - b - c]));
                }
            }
        }
        out.sort();
        out
    }

    pub fn eval_i128(&self, x: &IntVector4) -> Option<i128> {
        let mut acc: i128 = 1;
        for (&e, &c) in self.0.iter().zip(x.0.iter()) {
            acc = acc.checked_mul((c as i128).checked_pow(e)?)?;
        }
        Some(acc)
    }

    pub fn eval_big(&self, x: &IntVector4) -> BigInt {
        let mut acc = BigInt::one();
        for (&e, &c) in self.0.iter().zip(x.0.iter()) {
            if e > 0 {
                acc *= num_traits::pow(BigInt::from(c), e as usize);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in four variables with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly4 {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::default(), c)
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The coordinate function x_{i+1}.
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly4 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(x[i].clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    pub fn eval_int(&self, x: &IntVector4) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += c * BigRational::from_integer(m.eval_big(x));
        }
        acc
    }

    /// Partial derivative with respect to x_{i+1}.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(dm, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Writes `self = coeffs / denom` with integer coefficients and the
    /// least positive common denominator.
    pub fn integer_form(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let denom = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    *m,
                    (c * BigRational::from_integer(denom.clone())).to_integer(),
                )
            })
            .collect();
        (coeffs, denom)
    }

    /// Positive rational multiple of `self` with coprime integer
    /// coefficients and a positive leading (greatest) term.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let denom = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    *m,
                    (c * BigRational::from_integer(denom.clone())).to_integer(),
                )
            })
            .collect();
        let mut g = scaled.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if scaled.last().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        MultiPoly4::from_terms(
            scaled
                .into_iter()
                .map(|(m, c)| (m, BigRational::from_integer(c / &g))),
        )
    }
}

impl Add for &MultiPoly4 {
    type Output = MultiPoly4;
    fn add(self, rhs: &MultiPoly4) -> MultiPoly4 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly4 {
    type Output = MultiPoly4;
    fn sub(self, rhs: &MultiPoly4) -> MultiPoly4 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly4 {
    type Output = MultiPoly4;
    fn mul(self, rhs: &MultiPoly4) -> MultiPoly4 {
        let mut out = MultiPoly4::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly4 {
    type Output = MultiPoly4;
    fn neg(self) -> MultiPoly4 {
        MultiPoly4 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest terms first reads more naturally.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{}", super::fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", super::fmt_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
