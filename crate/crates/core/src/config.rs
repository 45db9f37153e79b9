//! Size caps for the expensive pipelines, overridable from the environment.

use crate::{Error, Result};

/// Largest harmonic degree for which bases are built.
pub const ENV_MAX_DEGREE: &str = "D4V_MAX_DEGREE";
/// Largest truncation order accepted for eta products and E2.
pub const ENV_SERIES_CAP: &str = "D4V_SERIES_CAP";
/// Largest shell index for weighted theta series and per-shell scans.
pub const ENV_SHELL_BUDGET: &str = "D4V_SHELL_BUDGET";
/// Largest single shell index that may be enumerated.
pub const ENV_MAX_SHELL: &str = "D4V_MAX_SHELL";

pub const DEFAULT_MAX_DEGREE: u32 = 12;
pub const DEFAULT_SERIES_CAP: usize = 2_000_000;
pub const DEFAULT_SHELL_BUDGET: u64 = 200;
pub const DEFAULT_MAX_SHELL: u64 = 200_000;
/// Default eta-product truncation when the caller gives none.
pub const DEFAULT_ETA_TRUNCATION: usize = 100_000;

fn env_or<T: std::str::FromStr>(key: &str, default: T) -> T {
    std::env::var(key)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

pub fn max_degree() -> u32 {
    env_or(ENV_MAX_DEGREE, DEFAULT_MAX_DEGREE)
}

pub fn series_cap() -> usize {
    env_or(ENV_SERIES_CAP, DEFAULT_SERIES_CAP)
}

pub fn shell_budget() -> u64 {
    env_or(ENV_SHELL_BUDGET, DEFAULT_SHELL_BUDGET)
}

pub fn max_shell() -> u64 {
    env_or(ENV_MAX_SHELL, DEFAULT_MAX_SHELL)
}

pub fn check_degree(deg: u32) -> Result<()> {
    let cap = max_degree();
    if deg > cap {
        return Err(Error::CapExceeded {
            what: format!("harmonic degree {deg}"),
            cap: cap as u64,
            env: ENV_MAX_DEGREE,
        });
    }
    Ok(())
}

pub fn check_series(order: usize) -> Result<()> {
    let cap = series_cap();
    if order > cap {
        return Err(Error::CapExceeded {
            what: format!("series truncation {order}"),
            cap: cap as u64,
            env: ENV_SERIES_CAP,
        });
    }
    Ok(())
}

pub fn check_shell_budget(m: u64) -> Result<()> {
    let cap = shell_budget();
    if m > cap {
        return Err(Error::CapExceeded {
            what: format!("weighted theta order {m}"),
            cap,
            env: ENV_SHELL_BUDGET,
        });
    }
    Ok(())
}

pub fn check_shell(m: u64) -> Result<()> {
    let cap = max_shell();
    if m > cap {
        return Err(Error::CapExceeded {
            what: format!("shell index {m}"),
            cap,
            env: ENV_MAX_SHELL,
        });
    }
    Ok(())
}
