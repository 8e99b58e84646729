//! Size guards for exponential algorithms.
//!
//! Each guarded operation has a default ceiling. The environment variable
//! `QSYM_GUARD_MAX_N` replaces every default, and [`set_force`] disables the
//! soft guards entirely (the CLI's `--force`). Hard limits imposed by the
//! data representation are not affected by either.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "QSYM_GUARD_MAX_N";

static FORCE: AtomicBool = AtomicBool::new(false);

pub fn set_force(on: bool) {
    FORCE.store(on, Ordering::Relaxed);
}

pub fn forced() -> bool {
    FORCE.load(Ordering::Relaxed)
}

/// The ceiling in effect for an operation whose default is `default`.
pub fn limit(default: usize) -> usize {
    std::env::var(ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Fail with [`Error::GuardExceeded`] when `n` is above the soft ceiling.
pub fn check(what: &'static str, n: usize, default: usize) -> Result<()> {
    let max = limit(default);
    if n > max && !forced() {
        return Err(Error::GuardExceeded { what, n, max });
    }
    Ok(())
}

/// Fail when `n` is above a limit that `--force` cannot lift.
pub fn check_hard(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::GuardExceeded { what, n, max });
    }
    Ok(())
}
