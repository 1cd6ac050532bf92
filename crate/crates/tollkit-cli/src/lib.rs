//! Library behind the `tollkit` command: four-policy comparison rows, η
//! sweeps, toll crossover searches and verification suites.

pub mod analysis;
pub mod crossover;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bottleneck.md")]
    mod bottleneck {}
    #[doc = include_str!("../../../book/src/tolls.md")]
    mod tolls {}
    #[doc = include_str!("../../../book/src/network.md")]
    mod network {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
