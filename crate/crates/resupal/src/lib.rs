//! Exact arithmetic for restricted Lie superalgebras over small finite fields.
//!
//! The library is organized bottom-up:
//!
//! * [`gfield`]: the fields `F_p` and `F_{p^2}` for odd primes `p`, with
//!   canonical modulus, Frobenius, and square roots.
//! * [`linalg`]: dense exact linear algebra over those fields (rref, rank,
//!   nullspace, solve, inverse).
//! * [`liesuper`]: Z/2-graded algebras given by structure constants, the
//!   superalgebra axioms, and basic invariants (derived algebra, center,
//!   lower central series).
//! * [`catalog`]: the built-in library of small nilpotent superalgebras and
//!   the `K(s,m)` families, addressable by `catalog:` URIs.
//! * [`restricted`]: p-power maps, their axioms, enumeration of all p-maps
//!   on a given algebra, p-nilpotency, and restricted derivations.
//! * [`cohomology`]: Chevalley-Eilenberg cochains and differentials, plus
//!   the restricted 2-cohomology used to classify central extensions.
//! * [`extensions`]: building central extensions from cocycles, equivalence
//!   of extensions, and decomposing an algebra as a central extension.
//! * [`equivalence`]: graded isomorphism search, automorphism groups, and
//!   orbit classification of cocycles.
//! * [`cli`]: the command-line interface.

pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod equivalence;
pub mod extensions;
pub mod gfield;
pub mod linalg;
pub mod liesuper;
pub mod ratio;
pub mod restricted;

/// Upper bound on brute-force enumeration sizes (vectors of a space,
/// automorphism candidates). Overridable via the `RESUPAL_BOUND`
/// environment variable.
pub fn enumeration_bound() -> u64 {
    std::env::var("RESUPAL_BOUND")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000)
}
