/// Size caps for the exact (exponential) searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest text accepted by [`crate::factor::lz_end_optimal`].
    pub lzend_opt: usize,
    /// Longest text accepted by [`crate::measures::smallest_attractor`].
    pub attractor: usize,
    /// Longest text accepted by [`crate::measures::smallest_bms`].
    pub bms: usize,
    /// Most strings an exhaustive sensitivity sweep may enumerate.
    pub exhaustive_budget: u64,
}

pub const ENV_LZEND_OPT: &str = "REPSENS_LIMIT_LZEND_OPT";
pub const ENV_ATTRACTOR: &str = "REPSENS_LIMIT_ATTRACTOR";
pub const ENV_BMS: &str = "REPSENS_LIMIT_BMS";
pub const ENV_EXHAUSTIVE: &str = "REPSENS_LIMIT_EXHAUSTIVE";

/// Bitmask searches index positions with a `u64`.
pub(crate) const HARD_CAP: usize = 63;

impl Default for Limits {
    fn default() -> Self {
        Self {
            lzend_opt: 24,
            attractor: 20,
            bms: 16,
            exhaustive_budget: 1 << 22,
        }
    }
}

impl Limits {
    /// Defaults overridden by any `REPSENS_LIMIT_*` variables that parse.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<u64>().ok());
        if let Some(v) = read(ENV_LZEND_OPT) {
            limits.lzend_opt = v as usize;
        }
        if let Some(v) = read(ENV_ATTRACTOR) {
            limits.attractor = v as usize;
        }
        if let Some(v) = read(ENV_BMS) {
            limits.bms = v as usize;
        }
        if let Some(v) = read(ENV_EXHAUSTIVE) {
            limits.exhaustive_budget = v;
        }
        limits
    }
}
