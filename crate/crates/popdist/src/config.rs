//! Enumeration bounds.
//!
//! Exhaustive enumeration over S_n is the ground truth everywhere in this
//! crate, so every enumerating entry point enforces a length bound. The
//! `POPDIST_MAX_N` environment variable overrides the defaults (an
//! unparseable value is ignored).

/// Hard cap on permutation length; entries are machine integers and
/// everything downstream is sized for desk-scale enumeration.
pub const MAX_PERM_LEN: usize = 16;

/// Default bound for class enumeration (oracle, statistic tables).
pub const DEFAULT_ENUMERATION_BOUND: usize = 10;

/// Default bound for generating the unrestricted separable class.
pub const DEFAULT_GENERATE_BOUND: usize = 12;

fn env_override() -> Option<usize> {
    std::env::var("POPDIST_MAX_N").ok()?.parse().ok()
}

/// Bound used by `oracle::enumerate_class` and `solver::xn_table`.
pub fn enumeration_bound() -> usize {
    env_override().unwrap_or(DEFAULT_ENUMERATION_BOUND).min(MAX_PERM_LEN)
}

/// Bound used by `separable::generate_separable`.
pub fn generate_bound() -> usize {
    env_override().unwrap_or(DEFAULT_GENERATE_BOUND).min(MAX_PERM_LEN)
}
