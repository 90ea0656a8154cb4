//! Quadratic fields Q(√Δ): prime splitting, prime-ideal inventories, imaginary class
//! groups and Golod–Shafarevich tower certificates.

mod classgroup;
mod field;
mod tower;

pub use classgroup::{
    class_group_imaginary, reduced_forms, ClassGroupSummary, Form, FORM_ENUMERATION_LIMIT,
};
pub use field::{
    make_field, make_field_i64, prime_ideals_in_norm_range, splitting_type, PrimeIdealRecord,
    QuadraticField, SplitType, FACTOR_LIMIT,
};
pub use tower::{
    candidate_sc, candidate_sc_in, genus_two_rank_lower, golod_shafarevich_check,
    theorem4_field, TowerCertificate,
};
