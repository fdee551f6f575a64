//! Exhaustive enumeration engines and executable bijections.
//!
//! Each engine is paired with a closed form in [`crate::reference`]; the
//! two are only ever compared, never derived from one another.

mod composition;
mod cycle;
mod dp;
mod generic;
mod path;
mod rank;

pub use composition::{
    all_compositions, bits_to_string, majorization_probability_exact,
    majorization_probability_exact_capped, majorizes_weak, motzkin_from_bitpair, parse_bits,
    Composition,
};
pub use cycle::{dominance_count, spitzer_rotation, CycleSequence};
pub use dp::{count_paths_dp, StepWeights};
pub use generic::{
    ballot_signed_perms, collision_deltas, collision_step_map, collision_walk,
    count_ballot_signed_perms, count_ballot_signed_perms_capped, has_ballot_property,
    is_collision_free, is_generic, is_generic_capped, random_generic_set, Certificate,
    GenericSet, SignedPermutation,
};
pub use path::{
    contract_to_motzkin, updown_bijection_to_endzero, updown_bijection_to_nonneg, Path, Step,
};
pub use rank::{alternation_rank_oracle, alternation_rank_oracle_capped, lead_rank_oracle};

/// Default enumeration caps; the CLI `--max-n` flag overrides them.
pub mod caps {
    pub const BALLOT: u64 = 10;
    pub const GENERICITY: u64 = 12;
    pub const MAJORIZATION: u64 = 12;
    pub const RANK_ORACLE: u64 = 4;
    pub const DOMINANCE: u64 = 14;

    /// Absolute ceilings, beyond which even an explicit cap is refused.
    pub const BALLOT_HARD: u64 = 13;
    pub const GENERICITY_HARD: u64 = 18;
    pub const MAJORIZATION_HARD: u64 = 16;
    pub const RANK_ORACLE_HARD: u64 = 6;
}

pub(crate) fn check_cap(what: &'static str, requested: u64, cap: u64, hard: u64) -> crate::Result<()> {
    let limit = cap.min(hard);
    if requested > limit {
        return Err(crate::Error::Resource {
            what,
            requested,
            cap: limit,
        });
    }
    Ok(())
}
