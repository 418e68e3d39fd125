//! Exact computations with coherent sheaves on the projective line and on
//! weighted projective lines. The guide in `book/` walks through each module.

pub mod algebras;
pub mod error;
pub mod exact;
pub mod kronecker;
pub mod lengthcat;
pub mod p1;
pub mod selftest;
pub mod weights;
pub mod wpl;

pub use error::{Error, Result};

// The guide's code blocks run as doctests, one module per chapter.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/exact.md")]
mod book_exact {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/splitting.md")]
mod book_splitting {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/torsion.md")]
mod book_torsion {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/kronecker.md")]
mod book_kronecker {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/tubes.md")]
mod book_tubes {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algebras.md")]
mod book_algebras {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/weighted.md")]
mod book_weighted {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/weights.md")]
mod book_weights {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
