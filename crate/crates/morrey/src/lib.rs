//! Discrete Morrey sequence spaces `l^p_q(Z^d)` for `1 <= p <= q < infty`:
//! exact computation of the windowed norm
//! `||x|| = sup_{m,N} |S_{m,N}|^(1/q - 1/p) (sum_{k in S_{m,N}} |x_k|^p)^(1/p)`,
//! construction of the extremal families showing that the n-th Von
//! Neumann-Jordan and n-th James constants of these spaces equal `n` when
//! `p < q`, certified verification of that equality in integer arithmetic,
//! and a seeded randomized lower-bound search for both constants.

pub mod constants;
pub mod error;
pub mod json;
pub mod norm;
mod numeric;
pub mod search;
pub mod types;
pub mod witness;

pub use constants::{
    enumerate_sign_combos, james_min, nj_ratio, signed_sum, verify_family, verify_theorem,
    SignCombo, Verdicts, VerificationReport, FLOAT_UNIT_TOLERANCE,
};
pub use error::{Error, Result};
pub use norm::{
    canonical_range, morrey_norm, morrey_norm_bruteforce, morrey_norm_with_limits, norm_equals,
    NormLimits, SummedAreaTable,
};
pub use search::{search_lower_bound, SearchKind, SearchOutcome, SearchParams};
pub use types::{
    window_cardinality, ExactCertificate, LatticePoint, Mode, NormValue, Scalar, Sequence,
    SpaceParams, Window,
};
pub use witness::{
    build_witness, min_even_j, rademacher_pattern, spacing_is_valid, SignPattern, WitnessFamily,
};
