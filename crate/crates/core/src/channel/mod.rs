//! AWGN channels and Monte-Carlo block error rate estimation.

mod awgn;
mod bler;
mod engine;
mod multiuser;
mod stats;

pub use awgn::{awgn, ChannelConfig};
pub use bler::{draw_trial, run_bler, PointResult, Trial};
pub use engine::{trial_rng, TrialBudget};
pub use multiuser::{
    draw_multiuser_trial, simulate_multiuser, user_bit_budgets, MultiUserConfig, MultiUserMode,
    MultiUserPoint, MultiUserTrial,
};
pub use stats::{clopper_pearson, is_non_increasing, sign_test_p_value, PairedComparison};
