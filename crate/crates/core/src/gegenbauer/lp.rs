//! The two LP test functions for d = 4 and their exact certificates.
//!
//! F_T bounds spherical {10,4,2}-designs from below, F_C bounds codes with
//! inner products in [-1/2, 1/2] from above; both give 12.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{gegenbauer_expand, GegenbauerExpansion};
use crate::exact::{fmt_rational, rat, UniPoly};
use crate::{Error, Result};

/// A verified LP certificate: a test polynomial, its Gegenbauer expansion and
/// the structural data proving its sign condition.
#[derive(Clone, Debug)]
pub struct LPCertificate {
    pub name: &'static str,
    pub polynomial: UniPoly,
    pub expansion: GegenbauerExpansion,
    /// `polynomial = prefactor · Π square_factors² · Π sign_factors · residual`.
    pub prefactor: BigRational,
    pub square_factors: Vec<UniPoly>,
    pub sign_factors: Vec<UniPoly>,
    pub residual: UniPoly,
    /// Discriminant of the residual viewed as a quadratic in u = x², when
    /// that is how its sign is certified.
    pub discriminant: Option<BigRational>,
    pub value_at_one: BigRational,
    pub bound: BigRational,
    pub roots: Vec<(BigRational, usize)>,
    /// Named identities with their exact values, in the order checked.
    pub checks: Vec<(String, String)>,
}

impl LPCertificate {
    pub fn f0(&self) -> BigRational {
        self.expansion.coeff(0)
    }

    /// Recomputes every stored identity from scratch.
    pub fn reverify(&self) -> Result<()> {
        let product = self.factored_product();
        ensure(product == self.polynomial, "factored form", || {
            format!("{product} != {}", self.polynomial)
        })?;
        let again = gegenbauer_expand(self.expansion.d, &self.polynomial)?;
        ensure(again == self.expansion, "gegenbauer expansion", || {
            "expansion changed on recomputation".into()
        })?;
        let v1 = self.polynomial.eval(&BigRational::one());
        ensure(v1 == self.value_at_one, "F(1)", || fmt_rational(&v1))?;
        let b = &v1 / self.f0();
        ensure(b == self.bound, "bound F(1)/f_0", || fmt_rational(&b))?;
        if let Some(disc) = &self.discriminant {
            let d2 = quadratic_in_square_discriminant(&self.residual)?;
            ensure(&d2 == disc, "residual discriminant", || fmt_rational(&d2))?;
        }
        let roots = self.polynomial.rational_roots();
        ensure(roots == self.roots, "rational root set", || {
            format!("{roots:?}")
        })?;
        Ok(())
    }

    fn factored_product(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.prefactor.clone());
        for s in &self.square_factors {
            acc = &acc * &(s * s);
        }
        for s in &self.sign_factors {
            acc = &acc * s;
        }
        &acc * &self.residual
    }
}

fn ensure(ok: bool, name: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::identity(name, detail()))
    }
}

fn lin(c0: BigRational) -> UniPoly {
    UniPoly::new(vec![c0, BigRational::one()])
}

/// For an even quartic a·x⁴ + b·x² + c, the discriminant b² − 4ac of the
/// quadratic in u = x².
fn quadratic_in_square_discriminant(p: &UniPoly) -> Result<BigRational> {
    let even = p.degree() == Some(4) && p.coeff(1).is_zero() && p.coeff(3).is_zero();
    if !even {
        return Err(Error::identity(
            "residual shape",
            format!("{p} is not an even quartic"),
        ));
    }
    let (a, b, c) = (p.coeff(4), p.coeff(2), p.coeff(0));
    Ok(&b * &b - rat(4, 1) * a * c)
}

fn expansion_from(d: u32, coeffs: &[(usize, BigRational)]) -> GegenbauerExpansion {
    let r = coeffs.iter().map(|(l, _)| *l).max().unwrap_or(0);
    let mut v = vec![BigRational::zero(); r + 1];
    for (l, c) in coeffs {
        v[*l] = c.clone();
    }
    GegenbauerExpansion { d, coeffs: v }
}

/// Certificate that every spherical {10,4,2}-design on S³ has at least 12
/// points, with equality only for inner products in {−1/2, 0, 1/2}.
pub fn certify_design_bound() -> Result<LPCertificate> {
    let d = 4;
    let given = expansion_from(
        d,
        &[
            (0, rat(3, 1024)),
            (2, rat(1, 768)),
            (4, rat(1, 2560)),
            (10, rat(1, 11264)),
        ],
    );
    let from_gegenbauer = given.to_poly();

    let half = rat(1, 2);
    let square_factors = vec![UniPoly::x(), lin(half.clone()), lin(-half)];
    let residual = UniPoly::from_ints(&[13, 0, -28, 0, 16]);
    let mut cert = LPCertificate {
        name: "F_T",
        polynomial: from_gegenbauer.clone(),
        expansion: given.clone(),
        prefactor: rat(1, 16),
        square_factors,
        sign_factors: vec![],
        residual: residual.clone(),
        discriminant: None,
        value_at_one: BigRational::zero(),
        bound: BigRational::zero(),
        roots: vec![],
        checks: vec![],
    };

    // (i) Gegenbauer form equals the factored form.
    let factored = cert.factored_product();
    ensure(
        factored == from_gegenbauer,
        "F_T Gegenbauer form = factored form",
        || format!("{from_gegenbauer} != {factored}"),
    )?;
    let expansion = gegenbauer_expand(d, &factored)?;
    ensure(expansion == given, "F_T expansion coefficients", || {
        format!("{:?}", expansion.coeffs)
    })?;
    cert.checks
        .push(("Gegenbauer form = factored form".into(), "true".into()));
    for (l, f) in expansion.coeffs.iter().enumerate() {
        cert.checks.push((format!("f_{l}"), fmt_rational(f)));
    }

    // (ii) sign: squares times a quartic that is positive on all of R.
    let disc = quadratic_in_square_discriminant(&residual)?;
    let lead = residual.leading().unwrap().clone();
    ensure(
        disc.is_negative() && lead.is_positive(),
        "F_T >= 0 on [-1,1)",
        || format!("discriminant {disc}, leading {lead}"),
    )?;
    ensure(
        cert.prefactor.is_positive(),
        "F_T prefactor positive",
        || fmt_rational(&cert.prefactor),
    )?;
    cert.checks
        .push(("quartic discriminant in u=x^2".into(), fmt_rational(&disc)));
    cert.discriminant = Some(disc);

    // (iii), (iv)
    let v1 = factored.eval(&BigRational::one());
    ensure(v1 == rat(9, 256), "F_T(1) = 9/256", || fmt_rational(&v1))?;
    let bound = &v1 / expansion.coeff(0);
    ensure(bound == rat(12, 1), "F_T(1)/f_0 = 12", || {
        fmt_rational(&bound)
    })?;
    cert.checks.push(("F(1)".into(), fmt_rational(&v1)));
    cert.checks
        .push(("bound F(1)/f_0".into(), fmt_rational(&bound)));

    // (v) real zero set is exactly {−1/2, 0, 1/2}, each of multiplicity 2;
    // the quartic factor has no real zeros by (ii).
    let roots = factored.rational_roots();
    let expected = vec![(rat(-1, 2), 2), (rat(0, 1), 2), (rat(1, 2), 2)];
    ensure(roots == expected, "F_T root set = {-1/2, 0, 1/2}", || {
        format!("{roots:?}")
    })?;
    cert.checks
        .push(("root set".into(), "{-1/2, 0, 1/2}".into()));

    cert.value_at_one = v1;
    cert.bound = bound;
    cert.roots = roots;
    cert.expansion = expansion;
    Ok(cert)
}

/// Certificate that a code on S³ with inner products in [−1/2, 1/2] has at
/// most 12 points, for the family parameter `a1 >= 0`.
pub fn certify_code_bound(a1: &BigRational) -> Result<LPCertificate> {
    if a1.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "a_1 must be nonnegative, got {}",
            fmt_rational(a1)
        )));
    }
    let d = 4;
    let k = rat(64, 1) * a1 + rat(15, 1);
    let given = expansion_from(
        d,
        &[
            (0, (rat(4, 1) * a1 + rat(1, 1)) / rat(64, 1)),
            (2, &k / rat(1536, 1)),
            (4, &k / rat(5120, 1)),
            (10, rat(1, 11264)),
        ],
    );
    let from_gegenbauer = given.to_poly();

    // x^6 − 2x^4 + (5/4)x^2 + a1
    let residual = UniPoly::new(vec![
        a1.clone(),
        rat(0, 1),
        rat(5, 4),
        rat(0, 1),
        rat(-2, 1),
        rat(0, 1),
        rat(1, 1),
    ]);
    let mut cert = LPCertificate {
        name: "F_C",
        polynomial: from_gegenbauer.clone(),
        expansion: given.clone(),
        prefactor: BigRational::one(),
        square_factors: vec![UniPoly::x()],
        sign_factors: vec![UniPoly::new(vec![rat(-1, 4), rat(0, 1), rat(1, 1)])],
        residual: residual.clone(),
        discriminant: None,
        value_at_one: BigRational::zero(),
        bound: BigRational::zero(),
        roots: vec![],
        checks: vec![],
    };

    let factored = cert.factored_product();
    ensure(
        factored == from_gegenbauer,
        "F_C Gegenbauer form = factored form",
        || format!("{from_gegenbauer} != {factored}"),
    )?;
    let expansion = gegenbauer_expand(d, &factored)?;
    ensure(expansion == given, "F_C expansion coefficients", || {
        format!("{:?}", expansion.coeffs)
    })?;
    cert.checks
        .push(("Gegenbauer form = factored form".into(), "true".into()));
    for (l, f) in expansion.coeffs.iter().enumerate() {
        cert.checks.push((format!("f_{l}"), fmt_rational(f)));
    }

    // Sign on [−1/2, 1/2]: x² ≥ 0, x² − 1/4 ≤ 0, and the residual equals
    // x²·((x² − 1)² + 1/4) + a1 ≥ a1 ≥ 0.
    let quartic = UniPoly::new(vec![rat(5, 4), rat(0, 1), rat(-2, 1), rat(0, 1), rat(1, 1)]);
    let x2m1 = UniPoly::from_ints(&[-1, 0, 1]);
    let gap = &quartic - &(&x2m1 * &x2m1);
    ensure(
        gap == UniPoly::constant(rat(1, 4)),
        "x^4-2x^2+5/4-(x^2-1)^2 = 1/4",
        || gap.to_string(),
    )?;
    let rebuilt = &(&UniPoly::monomial(2, rat(1, 1)) * &quartic) + &UniPoly::constant(a1.clone());
    ensure(
        rebuilt == residual,
        "residual = x^2 (x^4-2x^2+5/4) + a_1",
        || rebuilt.to_string(),
    )?;
    let endpoint = cert.sign_factors[0].eval(&rat(1, 2));
    ensure(endpoint.is_zero(), "x^2-1/4 vanishes at 1/2", || {
        fmt_rational(&endpoint)
    })?;
    cert.checks
        .push(("x^4-2x^2+5/4-(x^2-1)^2".into(), fmt_rational(&gap.coeff(0))));

    let v1 = factored.eval(&BigRational::one());
    let expected_v1 = rat(3, 1) * (rat(4, 1) * a1 + rat(1, 1)) / rat(16, 1);
    ensure(v1 == expected_v1, "F_C(1) = 3(4a_1+1)/16", || {
        fmt_rational(&v1)
    })?;
    let bound = &v1 / expansion.coeff(0);
    ensure(bound == rat(12, 1), "F_C(1)/f_0 = 12", || {
        fmt_rational(&bound)
    })?;
    cert.checks.push(("F(1)".into(), fmt_rational(&v1)));
    cert.checks
        .push(("bound F(1)/f_0".into(), fmt_rational(&bound)));

    cert.value_at_one = v1;
    cert.bound = bound;
    cert.roots = factored.rational_roots();
    cert.expansion = expansion;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_certificate() {
        let c = certify_design_bound().unwrap();
        assert_eq!(c.bound, rat(12, 1));
        assert_eq!(c.value_at_one, rat(9, 256));
        assert_eq!(c.discriminant, Some(rat(-48, 1)));
        assert_eq!(c.f0(), rat(3, 1024));
        for l in [1, 3, 5, 6, 7, 8, 9] {
            assert!(c.expansion.coeff(l).is_zero());
        }
        assert_eq!(c.expansion.coeff(2), rat(1, 768));
        assert_eq!(c.expansion.coeff(4), rat(1, 2560));
        assert_eq!(c.expansion.coeff(10), rat(1, 11264));
        c.reverify().unwrap();
    }

    #[test]
    fn factored_form_of_f_t_matches_direct_expansion() {
        // 1/16 x^2 (x + 1/2)^2 (x - 1/2)^2 (16x^4 - 28x^2 + 13), multiplied out
        // by hand: x^2 (x^2 - 1/4)^2 (x^4 - 7/4 x^2 + 13/16).
        let x2 = UniPoly::monomial(2, rat(1, 1));
        let a = UniPoly::new(vec![rat(-1, 4), rat(0, 1), rat(1, 1)]);
        let b = UniPoly::new(vec![
            rat(13, 16),
            rat(0, 1),
            rat(-7, 4),
            rat(0, 1),
            rat(1, 1),
        ]);
        let direct = &(&x2 * &(&a * &a)) * &b;
        assert_eq!(certify_design_bound().unwrap().polynomial, direct);
    }

    #[test]
    fn code_certificate_at_zero() {
        let c = certify_code_bound(&rat(0, 1)).unwrap();
        assert_eq!(c.bound, rat(12, 1));
        assert_eq!(c.value_at_one, rat(3, 16));
        assert_eq!(c.expansion.coeff(10), rat(1, 11264));
        assert_eq!(c.expansion.coeff(4), rat(3, 1024));
        assert_eq!(c.expansion.coeff(2), rat(5, 512));
        assert_eq!(c.expansion.coeff(0), rat(1, 64));
        c.reverify().unwrap();
    }

    #[test]
    fn code_bound_is_parameter_free() {
        for a1 in [rat(0, 1), rat(1, 2), rat(1, 1), rat(7, 3)] {
            let c = certify_code_bound(&a1).unwrap();
            assert_eq!(c.bound, rat(12, 1));
            c.reverify().unwrap();
        }
    }

    #[test]
    fn negative_parameter_rejected() {
        assert!(matches!(
            certify_code_bound(&rat(-1, 3)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tampered_certificate_fails_reverify() {
        let mut c = certify_design_bound().unwrap();
        c.value_at_one = rat(1, 1);
        assert!(c.reverify().is_err());
    }
}
