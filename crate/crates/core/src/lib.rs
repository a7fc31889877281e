//! Dyck tilings, Hermite histories and their relatives.
//!
//! The crate builds every object exhaustively at small size and checks the
//! generating-function identities that connect them by exact polynomial
//! arithmetic. See the guide in `book/` for a tour.

pub mod algebra;
pub mod error;
pub mod hermite;
pub mod identities;
pub mod orders;
pub mod paths;
pub mod render;
pub mod stirling;
pub mod symmetric;
pub mod tilings;

pub use error::{Error, Result};

// The guide's snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/paths.md")]
    mod paths {}
    #[doc = include_str!("../../../book/src/tilings.md")]
    mod tilings {}
    #[doc = include_str!("../../../book/src/hermite.md")]
    mod hermite {}
    #[doc = include_str!("../../../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../../../book/src/stirling.md")]
    mod stirling {}
    #[doc = include_str!("../../../book/src/symmetric.md")]
    mod symmetric {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
