mod bridge;
pub mod charsets;
pub mod constraints;
pub mod diffpoly;
pub mod error;
pub mod ground;
pub mod ideals;
pub mod reduction;
pub mod shell;
pub mod splitting;
#[doc(hidden)]
pub mod testing;
pub mod zpoly;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/grammar.md")]
    mod grammar {}
    #[doc = include_str!("../../../book/src/library.md")]
    mod library {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
}
