//! Size guards for the combinatorial operations.
//!
//! Every guard can be lifted by setting the `RUM_MAX_N` environment variable
//! to a larger value; by default the caps below apply.

/// Order enumeration cap (`n!` rows).
pub const MAX_ORDER_ENUMERATION: usize = 8;
/// Vertex-representation cap.
pub const MAX_VREP: usize = 8;
/// Half-space system solve cap.
pub const MAX_HREP_SOLVE: usize = 10;
/// Half-space system construction cap.
pub const MAX_HREP_BUILD: usize = 20;
/// Alternative-set size cap.
pub const MAX_ALTERNATIVES: usize = 20;
/// Sequence-inequality search caps.
pub const MAX_ARSP_N: usize = 6;
pub const MAX_ARSP_LEN: usize = 4;
/// Assignment/capacity verifier cap.
pub const MAX_AXIOM_VERIFY: usize = 5;

/// Effective cap: `default_cap`, unless `RUM_MAX_N` is set to something
/// parseable, in which case that value wins.
pub fn effective_cap(default_cap: usize) -> usize {
    match std::env::var("RUM_MAX_N") {
        Ok(v) => v.parse().unwrap_or(default_cap),
        Err(_) => default_cap,
    }
}

/// Guard helper: `Ok(())` when `n` is within the (possibly overridden) cap.
pub fn check_cap(n: usize, default_cap: usize) -> Result<(), usize> {
    let cap = effective_cap(default_cap);
    if n <= cap {
        Ok(())
    } else {
        Err(cap)
    }
}
