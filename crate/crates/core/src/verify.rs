//! Check pipelines shared by the command-line tool and the FFI layer.
//!
//! Each pipeline returns named [`Check`]s. Library errors inside a pipeline
//! become failing checks, so a run always produces a complete report.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::exact::{fmt_rational, rat};
use crate::gegenbauer::{certify_code_bound, certify_design_bound};
use crate::harmonic::{aut_group_of_root_system, p6, MatrixGroup};
use crate::lattice::{
    analyze_lattice, cube_profile, derived_code_profile, design_deficit, enumerate_shell,
    gegenbauer_design_test, harmonic_strength, jacobi_count, octahedron_profile, odd_divisor_sum,
    p6_sum, reconstruction_check, solve_distance_distribution, LatticeDescription,
};
use crate::qseries::{
    congruence_scan, corollary_and_deligne_check, eta_quotient_coefficients, eta_quotient_naive,
    hecke_cross_checks, nonvanishing_scan, theta_scalar, theta_weighted, Tau2Table,
};
use crate::quaternion::{decompose_and_certify, subgroup_n_matrices};
use crate::report::{Check, RunReport};
use crate::{Error, Result};

/// Harmonic invariant dimensions of W(F4) for ℓ = 0..=18.
pub const WF4_MOLIEN: [u32; 19] = [1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2, 0, 1, 0, 1, 0, 2];

/// Harmonic invariant dimensions of the unit subgroup N for ℓ = 0..=12:
/// 1 + 7t⁶ + 9t⁸ + 26t¹².
pub const N_MOLIEN: [u32; 13] = [1, 0, 0, 0, 0, 0, 7, 0, 9, 0, 0, 0, 26];

/// τ2(1..=5).
pub const TAU2_LEADING: [i64; 5] = [1, -8, 12, 64, -210];

/// Degrees at which every shell is a design.
pub const DESIGN_DEGREES: [u32; 3] = [2, 4, 10];

fn or_fail(name: &str, r: Result<Vec<Check>>) -> Vec<Check> {
    r.unwrap_or_else(|e| vec![Check::failed(name, &e)])
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn shell_checks(m: u64, export: Option<&Path>) -> Result<Vec<Check>> {
    let shell = enumerate_shell(m)?;
    let mut checks = vec![Check::equal(
        "shell size = 24·σ_odd(m)",
        shell.len() as u64,
        jacobi_count(m)?,
    )];
    if let Some(path) = export {
        shell.write_points(BufWriter::new(File::create(path)?))?;
        checks.push(Check::new("export", true, path.display()));
    }
    Ok(checks)
}

/// Harmonic strength up to `max_degree` and the degree-6 sum against −192·τ2(m).
pub fn design_checks(m: u64, max_degree: u32) -> Result<Vec<Check>> {
    let shell = enumerate_shell(m)?;
    let strength = harmonic_strength(&shell, max_degree)?;
    let required: Vec<u32> = DESIGN_DEGREES
        .into_iter()
        .filter(|&l| l <= max_degree)
        .collect();
    let value = format!("{{{}}}", join(&strength.even));
    let mut checks = vec![
        Check::new(
            format!("strength contains {{{}}}", join(&required)),
            required.iter().all(|l| strength.even.contains(l)),
            value,
        ),
        Check::new(
            "antipodal (all odd degrees)",
            strength.antipodal,
            strength.antipodal,
        ),
    ];
    let tau = Tau2Table::new(m as usize)?;
    checks.push(Check::equal(
        "P6 sum = -192·tau2(m)",
        p6_sum(shell.points()),
        BigInt::from(-192) * tau.get(m as usize).expect("m within table"),
    ));
    Ok(checks)
}

/// Values of a1 whose F_C bound is checked when none is given.
pub fn default_a1_values() -> Vec<BigRational> {
    vec![rat(0, 1), rat(1, 2), rat(1, 1), rat(7, 3)]
}

pub fn lp_checks(a1: Option<&BigRational>) -> Result<Vec<Check>> {
    let t = certify_design_bound()?;
    t.reverify()?;
    let twelve = rat(12, 1);
    let coeffs: Vec<String> = t.expansion.coeffs.iter().map(fmt_rational).collect();
    let expected = [
        "3/1024", "0", "1/768", "0", "1/2560", "0", "0", "0", "0", "0", "1/11264",
    ];
    let mut checks = vec![
        Check::equal(
            "F_T gegenbauer coefficients",
            coeffs.join(","),
            expected.join(","),
        ),
        Check::equal("F_T(1)", fmt_rational(&t.value_at_one), "9/256".into()),
        Check::equal("F_T bound", fmt_rational(&t.bound), fmt_rational(&twelve)),
    ];
    checks.extend(
        t.checks
            .iter()
            .map(|(n, v)| Check::new(format!("F_T {n}"), true, v)),
    );
    let a1s = match a1 {
        Some(a) => vec![a.clone()],
        None => default_a1_values(),
    };
    for a in a1s {
        let c = certify_code_bound(&a)?;
        c.reverify()?;
        let tag = fmt_rational(&a);
        checks.push(Check::equal(
            format!("F_C bound (a1 = {tag})"),
            fmt_rational(&c.bound),
            fmt_rational(&twelve),
        ));
        checks.extend(
            c.checks
                .iter()
                .map(|(n, v)| Check::new(format!("F_C {n} (a1 = {tag})"), true, v)),
        );
    }
    Ok(checks)
}

pub fn decompose_checks(m: u64) -> Result<Vec<Check>> {
    let d = decompose_and_certify(m)?;
    Ok(vec![
        Check::equal(
            "orbit count = σ_odd(m)",
            d.orbits.len() as u64,
            odd_divisor_sum(m),
        ),
        Check::new(
            "every orbit has 24 points",
            d.orbits.iter().all(|o| o.len() == 24),
            d.orbits.len() * 24,
        ),
        Check::new("every orbit is a root-system copy", true, d.orbits.len()),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupChoice {
    WF4,
    N,
    Trivial,
}

impl GroupChoice {
    pub fn build(self) -> Result<MatrixGroup> {
        match self {
            GroupChoice::WF4 => aut_group_of_root_system(),
            GroupChoice::N => Ok(subgroup_n_matrices()),
            GroupChoice::Trivial => Ok(MatrixGroup::trivial()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupChoice::WF4 => "wf4",
            GroupChoice::N => "n",
            GroupChoice::Trivial => "trivial",
        }
    }
}

/// Molien dimensions up to `max_degree`, compared with the known values on
/// their common range.
pub fn molien_checks(group: GroupChoice, max_degree: u32) -> Result<Vec<Check>> {
    crate::config::check_series(max_degree as usize)?;
    let g = group.build()?;
    let dims = crate::harmonic::molien_harmonic_dims(&g, max_degree)?;
    let expected: Vec<BigInt> = match group {
        GroupChoice::WF4 => WF4_MOLIEN.iter().map(|&v| v.into()).collect(),
        GroupChoice::N => N_MOLIEN.iter().map(|&v| v.into()).collect(),
        GroupChoice::Trivial => (0..=max_degree as u64)
            .map(|l| ((l + 1) * (l + 1)).into())
            .collect(),
    };
    let n = dims.len().min(expected.len());
    let mut checks = vec![Check::new("group order", true, g.order())];
    if let Some(order) = match group {
        GroupChoice::WF4 => Some(1152),
        GroupChoice::N => Some(24),
        GroupChoice::Trivial => Some(1),
    } {
        checks[0] = Check::equal("group order", g.order(), order);
    }
    checks.push(Check::equal(
        format!("dims l=0..{}", n.saturating_sub(1)),
        join(&dims[..n]),
        join(&expected[..n]),
    ));
    if dims.len() > n {
        checks.push(Check::new(
            format!("dims l={}..{max_degree}", n),
            true,
            join(&dims[n..]),
        ));
    }
    Ok(checks)
}

fn tau2_leading_check(t: &Tau2Table) -> Check {
    let n = t.bound().min(TAU2_LEADING.len());
    Check::equal(
        format!("tau2(1..{n})"),
        join(&t.values()[..n]),
        join(&TAU2_LEADING[..n]),
    )
}

/// τ2 table, leading values, naive-product oracle and Hecke relations.
pub fn tau2_checks(bound: usize, out: Option<&Path>) -> Result<Vec<Check>> {
    let t = Tau2Table::new(bound)?;
    let mut checks = vec![tau2_leading_check(&t)];
    let oracle_order = bound.min(200);
    let naive = eta_quotient_naive(&[(1, 8), (2, 8)], oracle_order)?;
    checks.push(Check::equal(
        format!("pentagonal passes = direct product to order {oracle_order}"),
        join(&t.values()[..oracle_order]),
        join(&naive.coeffs()[1..]),
    ));
    for (name, lhs, rhs) in hecke_cross_checks(&t) {
        checks.push(Check::equal(name, lhs, rhs));
    }
    if let Some(path) = out {
        t.write_csv(BufWriter::new(File::create(path)?))?;
        checks.push(Check::new("export", true, path.display()));
    }
    Ok(checks)
}

/// θ = 2E2(2z) − E2(z) to `scalar_order`, and θ_{P6} = −192·η⁸η(2·)⁸ and
/// vanishing design-degree series to `weighted_order`.
pub fn theta_checks(scalar_order: usize, weighted_order: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let scalar = theta_scalar(scalar_order)?;
    checks.push(Check::new(
        "theta = 2E2(2z) - E2(z)",
        true,
        format!("order {}", scalar.order()),
    ));
    let weighted = theta_weighted(&p6(), weighted_order)?;
    let eta =
        eta_quotient_coefficients(&[(1, 8), (2, 8)], weighted_order)?.scale(&BigInt::from(-192));
    checks.push(Check::new(
        "theta_P6 = -192·eta(z)^8 eta(2z)^8",
        weighted == eta,
        match weighted.first_mismatch(&eta) {
            None => format!("order {weighted_order}"),
            Some(n) => format!("mismatch at q^{n}"),
        },
    ));
    let design_order = weighted_order.min(100);
    for l in DESIGN_DEGREES {
        let basis = crate::harmonic::harm_basis(l)?;
        let series = crate::qseries::theta_weighted_many(&basis.polys, design_order)?;
        checks.push(Check::new(
            format!("theta_P = 0 for P in Harm_{l}"),
            series.iter().all(|s| s.is_zero()),
            format!("{} polynomials, order {design_order}", basis.polys.len()),
        ));
    }
    Ok(checks)
}

/// Congruences and the Deligne bound for primes ≤ `prime_bound`,
/// non-vanishing for m ≤ `bound`.
pub fn scan_checks(bound: usize, prime_bound: usize, out: Option<&Path>) -> Result<Vec<Check>> {
    let t = Tau2Table::new(bound.max(prime_bound))?;
    let mut checks = vec![tau2_leading_check(&t)];
    let c = congruence_scan(&t, prime_bound)?;
    checks.push(Check::new(
        "tau2(p) = p(p+1) mod 3 and mod 5",
        c.violations.is_empty(),
        if c.violations.is_empty() {
            format!("{} odd primes <= {prime_bound}", c.primes_checked)
        } else {
            format!("violations {:?}", c.violations)
        },
    ));
    let z = nonvanishing_scan(&t, bound)?;
    checks.push(Check::new(
        format!("tau2(m) != 0 for m <= {bound}"),
        z.is_none(),
        z.map_or_else(|| "none".to_string(), |m| format!("zero at m = {m}")),
    ));
    let d = corollary_and_deligne_check(&t, prime_bound)?;
    checks.push(Check::new(
        "tau2(p) != 0 for p != 14 mod 15",
        d.corollary_violations.is_empty(),
        format!("{} primes, {} silent", d.primes_checked, d.corollary_silent),
    ));
    checks.push(Check::new(
        "tau2(p)^2 <= 4p^7",
        d.deligne_violations.is_empty(),
        if d.deligne_violations.is_empty() {
            format!("{} primes", d.primes_checked)
        } else {
            format!("violations {:?}", d.deligne_violations)
        },
    ));
    if let Some(path) = out {
        t.write_csv(BufWriter::new(File::create(path)?))?;
        checks.push(Check::new("export", true, path.display()));
    }
    Ok(checks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

/// Bounds used by [`verify_all`].
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub shell_counts: u64,
    pub design_shells: u64,
    pub orbit_shells: u64,
    pub theta_scalar: usize,
    pub theta_weighted: usize,
    pub primes: usize,
    pub nonvanishing: usize,
}

impl Profile {
    pub fn bounds(self) -> Bounds {
        match self {
            Profile::Quick => Bounds {
                shell_counts: 300,
                design_shells: 20,
                orbit_shells: 40,
                theta_scalar: 2000,
                theta_weighted: 40,
                primes: 2000,
                nonvanishing: 10_000,
            },
            Profile::Full => Bounds {
                shell_counts: 2000,
                design_shells: 100,
                orbit_shells: 200,
                theta_scalar: 2000,
                theta_weighted: 200,
                primes: 10_000,
                nonvanishing: 100_000,
            },
        }
    }
}

pub fn shell_count_range(max_m: u64) -> Result<Vec<Check>> {
    let bad: Vec<u64> = (1..=max_m)
        .into_par_iter()
        .map(|m| Ok((m, enumerate_shell(m)?.len() as u64 == jacobi_count(m)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(m, ok)| (!ok).then_some(m))
        .collect();
    Ok(vec![Check::new(
        format!("|shell(m)| = 24·σ_odd(m) for m <= {max_m}"),
        bad.is_empty(),
        if bad.is_empty() {
            "all".to_string()
        } else {
            format!("fails at {bad:?}")
        },
    )])
}

pub fn design_range(max_m: u64) -> Result<Vec<Check>> {
    let tau = Tau2Table::new(max_m as usize)?;
    let rows: Vec<(u64, bool, bool)> = (1..=max_m)
        .into_par_iter()
        .map(|m| {
            let shell = enumerate_shell(m)?;
            let mut design = true;
            for l in DESIGN_DEGREES {
                design &= design_deficit(&shell, l)?.iter().all(Zero::is_zero);
            }
            let p6 = p6_sum(shell.points())
                == BigInt::from(-192) * tau.get(m as usize).expect("in table");
            Ok((m, design, p6))
        })
        .collect::<Result<_>>()?;
    let not_design: Vec<u64> = rows.iter().filter(|r| !r.1).map(|r| r.0).collect();
    let not_p6: Vec<u64> = rows.iter().filter(|r| !r.2).map(|r| r.0).collect();
    Ok(vec![
        Check::new(
            format!("deficits vanish at l in {{2,4,10}} for m <= {max_m}"),
            not_design.is_empty(),
            if not_design.is_empty() {
                "all".into()
            } else {
                format!("fails at {not_design:?}")
            },
        ),
        Check::new(
            format!("P6 sum = -192·tau2(m) for m <= {max_m}"),
            not_p6.is_empty(),
            if not_p6.is_empty() {
                "all".into()
            } else {
                format!("fails at {not_p6:?}")
            },
        ),
    ])
}

pub fn orbit_range(max_m: u64) -> Result<Vec<Check>> {
    let bad: Vec<String> = (1..=max_m)
        .into_par_iter()
        .filter_map(|m| match decompose_and_certify(m) {
            Ok(d) if d.orbits.len() as u64 == odd_divisor_sum(m) => None,
            Ok(d) => Some(format!("m={m}: {} orbits", d.orbits.len())),
            Err(e) => Some(format!("m={m}: {e}")),
        })
        .collect();
    Ok(vec![Check::new(
        format!("orbits: count σ_odd(m), size 24, root copies, m <= {max_m}"),
        bad.is_empty(),
        if bad.is_empty() {
            "all".into()
        } else {
            bad.join("; ")
        },
    )])
}

pub fn distance_checks() -> Result<Vec<Check>> {
    let v = |xs: &[(i64, i64)]| xs.iter().map(|&(a, b)| rat(a, b)).collect::<Vec<_>>();
    let five = v(&[(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)]);
    let roots = solve_distance_distribution(4, 24, 5, &five, true)?;
    let cube =
        solve_distance_distribution(3, 8, 3, &v(&[(-1, 1), (-1, 3), (1, 3), (1, 1)]), false)?;
    let octa = solve_distance_distribution(3, 6, 3, &five, true)?;
    Ok(vec![
        Check::equal(
            "root system distribution",
            join(roots.count_vector()),
            "1,8,6,8,1".into(),
        ),
        Check::equal(
            "cube distribution",
            join(cube.count_vector()),
            "1,3,3,1".into(),
        ),
        Check::equal(
            "octahedron distribution",
            join(octa.count_vector()),
            "1,0,4,0,1".into(),
        ),
    ])
}

pub fn derived_checks() -> Result<Vec<Check>> {
    let roots = enumerate_shell(1)?;
    let mut checks = Vec::new();
    for (alpha, target, name) in [
        (rat(0, 1), octahedron_profile(), "octahedron"),
        (rat(1, 2), cube_profile(), "cube"),
        (rat(-1, 2), cube_profile(), "cube"),
    ] {
        let tag = fmt_rational(&alpha);
        let mut all_match = true;
        let mut all_design = true;
        for base in 0..roots.len() {
            let d = derived_code_profile(roots.points(), 2, base, &alpha)?;
            all_match &= d.profile == target;
            all_design &= gegenbauer_design_test(&d.profile, 3, 3)?.is_zero();
        }
        checks.push(Check::new(
            format!("X_{tag} is the {name}"),
            all_match,
            roots.len(),
        ));
        checks.push(Check::new(
            format!("X_{tag} passes the l=3 design test"),
            all_design,
            roots.len(),
        ));
    }
    checks.push(Check::new(
        "reconstruction",
        reconstruction_check()?,
        "gram-equivalent to roots",
    ));
    Ok(checks)
}

pub fn level_checks() -> Result<Vec<Check>> {
    let d4 = analyze_lattice(&LatticeDescription::d4(), 4)?;
    let scaled =
        LatticeDescription::from_ints([[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]])?;
    let s = analyze_lattice(&scaled, 2)?;
    Ok(vec![
        Check::new("D4 is even", d4.even, d4.even),
        Check::equal("D4 level", d4.level, BigInt::from(2)),
        Check::new(
            "D4 norm-2 vectors form the roots",
            d4.norm2_is_root_system,
            d4.norm2_is_root_system,
        ),
        Check::new("Gram 2I is even", s.even, s.even),
        Check::equal("Gram 2I level", s.level, BigInt::from(4)),
    ])
}

/// Numbered acceptance criteria, each a list of checks.
pub fn criterion(n: u8, profile: Profile) -> Vec<Check> {
    let b = profile.bounds();
    let name = format!("criterion {n}");
    let checks = match n {
        1 => shell_count_range(b.shell_counts),
        2 => design_range(b.design_shells),
        3 => lp_checks(None),
        4 => molien_checks(GroupChoice::WF4, 18).and_then(|mut c| {
            c.extend(molien_checks(GroupChoice::N, 12)?);
            Ok(c)
        }),
        5 => distance_checks(),
        6 => derived_checks(),
        7 => orbit_range(b.orbit_shells),
        8 => tau2_checks(5, None).and_then(|mut c| {
            c.extend(theta_checks(b.theta_scalar, b.theta_weighted)?);
            Ok(c)
        }),
        9 => scan_checks(b.nonvanishing, b.primes, None),
        10 => level_checks(),
        _ => Err(Error::InvalidArgument(format!("no criterion {n}"))),
    };
    or_fail(&name, checks)
        .into_iter()
        .map(|mut c| {
            c.name = format!("[{n}] {}", c.name);
            c
        })
        .collect()
}

pub fn verify_all(profile: Profile) -> RunReport {
    let mut report = RunReport::new("verify-all").param(
        "profile",
        match profile {
            Profile::Quick => "quick",
            Profile::Full => "full",
        },
    );
    for n in 1..=10 {
        report.extend(criterion(n, profile));
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pipelines_pass() {
        for checks in [
            shell_checks(3, None).unwrap(),
            design_checks(1, 12).unwrap(),
            lp_checks(None).unwrap(),
            decompose_checks(25).unwrap(),
            distance_checks().unwrap(),
            derived_checks().unwrap(),
            level_checks().unwrap(),
            tau2_checks(40, None).unwrap(),
        ] {
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
    }

    #[test]
    fn design_restricted_degree() {
        let c = design_checks(1, 2).unwrap();
        assert_eq!(c[0].value, "{2}");
        assert!(c.iter().all(|c| c.pass));
    }

    #[test]
    fn trivial_molien() {
        let c = molien_checks(GroupChoice::Trivial, 4).unwrap();
        assert!(c.iter().all(|c| c.pass));
        assert_eq!(c[1].value, "1,4,9,16,25");
    }

    #[test]
    fn unknown_criterion_fails() {
        let c = criterion(11, Profile::Quick);
        assert_eq!(c.len(), 1);
        assert!(!c[0].pass);
    }
}
