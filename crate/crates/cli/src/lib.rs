pub mod commands;
pub mod input;
pub mod report;

use ewalk_core::Error;

/// Exit codes: 0 ok, 2 parse, 3 assumption or invariant, 4 non-convergence,
/// 5 budget, 1 anything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Parse { .. } => 2,
                Error::Domain(_) | Error::Invariant { .. } | Error::Assumption { .. } | Error::SingularBlock { .. } => 3,
                Error::NonConvergence { .. } => 4,
                Error::Budget { .. } => 5,
            };
        }
        if cause.downcast_ref::<input::InputError>().is_some() {
            return 2;
        }
    }
    1
}
