//! Global resource caps.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap on dense amplitudes and enumerated assignments.
pub const DEFAULT_CAP: u64 = 1 << 22;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "CHROMASTATE_AMP_CAP";

/// Active cap, read once from `CHROMASTATE_AMP_CAP` (falls back to the default
/// when unset or unparsable).
pub fn amplitude_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_CAP)
    })
}

/// `base^exp` as u128, saturating.
pub fn pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Fails with [`Error::CapExceeded`] when `base^exp` exceeds the active cap.
pub fn check_cap(base: u64, exp: usize) -> Result<usize> {
    let needed = pow_u128(base, exp);
    let cap = amplitude_cap();
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(needed as usize)
}
