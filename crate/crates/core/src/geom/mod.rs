//! Exact-rational flags, Plücker coordinates and tilted Richardson membership.

mod flag;
mod incidence;
mod matrix;
mod membership;
mod sample;

pub use flag::{chi_set, Flag, MAX_TABLE_N};
pub use incidence::{random_relations, Relation};
pub use matrix::{rat, RationalMatrix};
pub use membership::{
    complete_to_permutation, member_t_grassmann, member_t_plucker, member_t_rank, stratum,
    StratumLabel,
};
pub use sample::{random_flag, sample_in_open_stratum, BOUND, PATH_BUDGET};
