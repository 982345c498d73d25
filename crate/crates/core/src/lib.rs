//! Lie algebras from the gentle algebra with one loop and `α² = 0`,
//! the root system of type BC, and the Lie algebras of types B and C.

pub mod borel;
pub mod error;
pub mod field;
pub mod homology;
pub mod liecore;
pub mod matrix;
pub mod quiverrep;
pub mod report;
pub mod riedtmann;
pub mod rootsys;

pub use error::{Error, Result};
pub use field::{FieldKind, Q};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/euler.md")]
    mod euler {}
    #[doc = include_str!("../../../book/src/lie.md")]
    mod lie {}
    #[doc = include_str!("../../../book/src/borel.md")]
    mod borel {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
