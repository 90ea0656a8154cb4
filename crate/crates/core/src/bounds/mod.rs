//! Rate bounds, the parameter conditions, schedules, search and certificates.

mod certificate;
mod conditions;
mod rates;
mod scan;
mod schedule;
mod search;
mod sweep;

pub use certificate::{
    certify, certify_custom, certify_theorem2, final_inequality_margin, Certificate, Check, CheckStatus,
    WitnessSummary,
};
pub use conditions::{
    check_conditions, check_conditions_with, condition_table, kmax_condition2, nq_count, required_sieve_limit,
    ParamWitness,
};
pub use rates::{growth_proxy, gv_asymptotic, gv_bound, nfc_bound, plotkin_bound, Delta};
pub use scan::{a_rq_upper_bounds, aqq_constant, final_inequality_scan, ARqBounds, ScanReport};
pub use schedule::{
    k_of_ell, sixth_root_floor, theorem1_schedule, theorem2_schedule, threshold_q, Schedule, ScheduleValues,
};
pub use search::{ell_range, r_grid, search_params, search_params_limited, search_params_with, SearchResult};
pub use sweep::{bound_sweep, parse_delta_grid, write_csv, BoundPoint};
