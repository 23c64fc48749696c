//! Lie-theoretic invariants of almost-simple groups and the automorphism
//! groups of moduli spaces of semistable principal bundles on curves.
//!
//! The layers, bottom up: [`rootdata`] builds root systems, [`finabel`]
//! does finite abelian groups and lattice quotients, [`weyl`] handles Weyl
//! group computations, [`groupclass`] models the forms `G^sc / mu`, and
//! [`moduli`] assembles automorphism groups, the classification table and
//! Hitchin numerology. [`cli`] is the command-line front end.

pub mod cli;
pub mod finabel;
pub mod groupclass;
pub mod moduli;
pub mod rational;
pub mod rootdata;
pub mod weyl;
