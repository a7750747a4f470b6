//! Tame inertial types, `GL_2(F_q)`-weights and the digit conditions used to
//! certify that a weight is not a Serre weight of a generic type.

mod types;
mod weights;

pub use types::{enumerate_types, type_table, InertialType, TypeRow};
pub use weights::{
    digits_to_weight, hw, is_generic, lambda_candidates, membership_tuple, not_in_w_tau, not_in_w_tau_formal,
    type_digits, weight_to_digits, LambdaEntry, LambdaTuple, Weight, WeightDigits,
};
