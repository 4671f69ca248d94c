//! Nilpotent orbits of simple Lie algebras in good characteristic.
//!
//! The crate classifies nilpotent orbits of types `A` and `D` by (decorated)
//! partitions, attaches weighted Dynkin diagrams to them, and decides which
//! orbits are stable under each Frobenius morphism, split or twisted,
//! including the three triality-related twists of `D4`. A stable orbit has
//! `F_q`-rational points. The [`oracle`] module checks these claims at small
//! scale by enumerating nilpotent matrices over finite fields and by exact
//! rational centralizer computations.
//!
//! ```
//! use nilorbit::{frobenius::FrobeniusDescriptor, orbits::OrbitLabel, wdd::weighted_diagram};
//!
//! let orbit: OrbitLabel = "D4:[4,4]:I".parse()?;
//! assert_eq!(weighted_diagram(&orbit)?.labels(), &[0, 2, 0, 2]);
//!
//! let f1 = FrobeniusDescriptor::by_name(orbit.dynkin_type(), "F1")?;
//! assert!(!nilorbit::frobenius::is_stable(&orbit, &f1)?);
//! # Ok::<(), nilorbit::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod oracle;
pub mod orbits;
pub mod roottypes;
pub mod wdd;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/root-systems.md")]
    mod root_systems {}
    #[doc = include_str!("../../../book/src/orbit-labels.md")]
    mod orbit_labels {}
    #[doc = include_str!("../../../book/src/weighted-diagrams.md")]
    mod weighted_diagrams {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    mod frobenius {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
