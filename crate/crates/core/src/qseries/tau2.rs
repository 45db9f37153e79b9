use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::eta_quotient_coefficients;
use crate::{Error, Result};

/// τ2(1..=M) from the coefficients of η(z)⁸η(2z)⁸.
#[derive(Clone, Debug)]
pub struct Tau2Table {
    // values[m] = τ2(m); values[0] = 0.
    values: Vec<BigInt>,
}

impl Tau2Table {
    pub fn new(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidArgument("τ2 bound must be >= 1".into()));
        }
        let series = eta_quotient_coefficients(&[(1, 8), (2, 8)], bound)?;
        let values = series.coeffs().to_vec();
        if !values[0].is_zero() || values[1] != BigInt::from(1) {
            return Err(Error::identity(
                "τ2 normalization",
                "q-expansion must start with q",
            ));
        }
        Ok(Tau2Table { values })
    }

    pub fn bound(&self) -> usize {
        self.values.len() - 1
    }

    /// τ2(m) for 1 ≤ m ≤ bound.
    pub fn get(&self, m: usize) -> Option<&BigInt> {
        (m >= 1).then(|| self.values.get(m)).flatten()
    }

    fn at(&self, m: usize) -> &BigInt {
        self.get(m).expect("index within table bound")
    }

    /// τ2(1), τ2(2), …
    pub fn values(&self) -> &[BigInt] {
        &self.values[1..]
    }

    /// CSV with header `m,tau2`, one row per m.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "m,tau2")?;
        for (m, v) in self.values.iter().enumerate().skip(1) {
            writeln!(w, "{m},{v}")?;
        }
        Ok(())
    }
}

pub fn primes_up_to(bound: usize) -> Vec<usize> {
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for n in 2..=bound {
        if !composite[n] {
            primes.push(n);
            for k in (n * n..=bound).step_by(n) {
                composite[k] = true;
            }
        }
    }
    primes
}

fn require(table: &Tau2Table, bound: usize) -> Result<()> {
    if bound > table.bound() {
        return Err(Error::InvalidArgument(format!(
            "scan bound {bound} exceeds the τ2 table bound {}",
            table.bound()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub primes_checked: usize,
    /// (p, modulus) pairs where τ2(p) ≢ p(p+1).
    pub violations: Vec<(usize, u32)>,
}

/// τ2(p) ≡ p(p+1) mod 3 and mod 5 for odd primes p ≤ bound.
pub fn congruence_scan(table: &Tau2Table, bound: usize) -> Result<CongruenceReport> {
    require(table, bound)?;
    let primes: Vec<usize> = primes_up_to(bound).into_iter().filter(|&p| p > 2).collect();
    let violations: Vec<(usize, u32)> = primes
        .par_iter()
        .flat_map_iter(|&p| {
            let t = table.at(p);
            let target = BigInt::from(p as u64 * (p as u64 + 1));
            [3u32, 5]
                .into_iter()
                .filter(move |&l| !(t - &target).is_multiple_of(&BigInt::from(l)))
                .map(move |l| (p, l))
        })
        .collect();
    Ok(CongruenceReport {
        primes_checked: primes.len(),
        violations,
    })
}

/// The first m ≤ bound with τ2(m) = 0, if any.
pub fn nonvanishing_scan(table: &Tau2Table, bound: usize) -> Result<Option<usize>> {
    require(table, bound)?;
    Ok((1..=bound)
        .into_par_iter()
        .find_first(|&m| table.at(m).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneReport {
    pub primes_checked: usize,
    /// Primes p ≡ 14 (mod 15), where non-vanishing is not forced.
    pub corollary_silent: usize,
    /// Primes p ≢ 14 (mod 15) with τ2(p) = 0.
    pub corollary_violations: Vec<usize>,
    /// Primes with τ2(p)² > 4p⁷.
    pub deligne_violations: Vec<usize>,
}

/// Non-vanishing of τ2(p) off the class p ≡ −1 (mod 15), and τ2(p)² ≤ 4p⁷,
/// for primes p ≤ bound.
pub fn corollary_and_deligne_check(table: &Tau2Table, bound: usize) -> Result<DeligneReport> {
    require(table, bound)?;
    let primes = primes_up_to(bound);
    let corollary_violations = primes
        .par_iter()
        .copied()
        .filter(|&p| p % 15 != 14 && table.at(p).is_zero())
        .collect();
    let deligne_violations = primes
        .par_iter()
        .copied()
        .filter(|&p| {
            let t = table.at(p);
            t * t > BigInt::from(4) * BigInt::from(p).pow(7)
        })
        .collect();
    Ok(DeligneReport {
        primes_checked: primes.len(),
        corollary_silent: primes.iter().filter(|&&p| p % 15 == 14).count(),
        corollary_violations,
        deligne_violations,
    })
}

/// Multiplicativity and prime-power relations expected of a Hecke
/// eigenform of weight 8 and level 2, as (name, lhs, rhs) triples. Only
/// relations whose indices fit in the table are returned.
pub fn hecke_cross_checks(table: &Tau2Table) -> Vec<(String, BigInt, BigInt)> {
    let t = |m| table.at(m).clone();
    let mut out = Vec::new();
    let b = table.bound();
    if b >= 6 {
        out.push(("tau2(6) = tau2(2)tau2(3)".into(), t(6), t(2) * t(3)));
    }
    if b >= 9 {
        out.push((
            "tau2(9) = tau2(3)^2 - 3^7".into(),
            t(9),
            t(3) * t(3) - BigInt::from(3i64.pow(7)),
        ));
    }
    if b >= 4 {
        out.push(("tau2(4) = tau2(2)^2".into(), t(4), t(2) * t(2)));
    }
    if b >= 35 {
        out.push(("tau2(35) = tau2(5)tau2(7)".into(), t(35), t(5) * t(7)));
    }
    if b >= 25 {
        out.push((
            "tau2(25) = tau2(5)^2 - 5^7".into(),
            t(25),
            t(5) * t(5) - BigInt::from(5i64.pow(7)),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eta_quotient_naive;

    #[test]
    fn leading_values() {
        let t = Tau2Table::new(10).unwrap();
        let expect: Vec<BigInt> = [1, -8, 12, 64, -210]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(&t.values()[..5], &expect[..]);
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(11), None);
    }

    #[test]
    fn matches_naive_product() {
        let t = Tau2Table::new(120).unwrap();
        let n = eta_quotient_naive(&[(1, 8), (2, 8)], 120).unwrap();
        assert_eq!(t.values(), &n.coeffs()[1..]);
    }

    #[test]
    fn hecke_relations() {
        let t = Tau2Table::new(40).unwrap();
        let checks = hecke_cross_checks(&t);
        assert_eq!(checks.len(), 5);
        for (name, lhs, rhs) in checks {
            assert_eq!(lhs, rhs, "{name}");
        }
    }

    #[test]
    fn scans_small() {
        let t = Tau2Table::new(2000).unwrap();
        let c = congruence_scan(&t, 2000).unwrap();
        assert!(c.violations.is_empty(), "{:?}", c.violations);
        assert_eq!(c.primes_checked, 302);
        assert_eq!(nonvanishing_scan(&t, 2000).unwrap(), None);
        let d = corollary_and_deligne_check(&t, 2000).unwrap();
        assert!(d.corollary_violations.is_empty() && d.deligne_violations.is_empty());
        assert!(d.corollary_silent > 0);
        assert!(congruence_scan(&t, 2001).is_err());
    }

    #[test]
    fn congruence_fails_at_two() {
        // p = 2 divides the level and is excluded from the scan.
        let t = Tau2Table::new(2).unwrap();
        assert_ne!(
            (t.get(2).unwrap() - BigInt::from(6)).mod_floor(&BigInt::from(3)),
            BigInt::zero()
        );
    }

    #[test]
    fn deligne_examples() {
        let t = Tau2Table::new(5).unwrap();
        let five = t.get(5).unwrap();
        assert_eq!(five * five, BigInt::from(44100));
        assert!(BigInt::from(44100) <= BigInt::from(4 * 5i64.pow(7)));
    }

    #[test]
    fn csv_export() {
        let t = Tau2Table::new(3).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "m,tau2\n1,1\n2,-8\n3,12\n");
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_up_to(1), Vec::<usize>::new());
        assert_eq!(primes_up_to(10_000).len(), 1229);
    }
}
