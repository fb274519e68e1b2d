pub mod degrade;
pub mod forward;
pub mod grid;
pub mod inspect;
pub mod metrics;
pub mod patchify;
