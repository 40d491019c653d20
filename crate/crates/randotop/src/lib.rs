//! Randomized simplices over the measure algebra of `[0,1)`, in exact
//! rational arithmetic.
//!
//! The standard simplex of probability vectors has a measure-theoretic
//! companion: the space of ordered partitions of `[0,1)` into `n+1` classes,
//! i.e. `[n]`-valued random variables. This crate materializes those
//! partitions as finite unions of half-open rational intervals and implements
//! the structural maps between the two worlds — the probability-law map and
//! its canonical section, pushforwards along monotone maps, explicit
//! homotopies and retracts, horn retractions and Kan fillers, cylinder
//! constructions, and the Eilenberg–Zilber normal form of realization points.
//! Everything is computed exactly, so the algebraic identities hold with zero
//! tolerance and are checked by seeded property suites.
//!
//! Entry points:
//! - [`measure`]: interval sets, the maps `g`, `ǧ`, `h`, `Φ` and the
//!   interpolation map `J`.
//! - [`simplex`]: partitions, probability vectors, monotone maps, chains.
//! - [`homotopy`]: the law-preserving homotopy `H_n` and the boundary/horn
//!   retracts.
//! - [`cylinder`]: prism partitions and the cylinder homotopies and retracts.
//! - [`simplicial`]: ordered complexes, canonical points, horn fillers.
//! - [`verify`]: the seeded verification suites behind the CLI.
//!
//! The `randotop` binary exposes `verify`, `sample` and `demo` subcommands;
//! see the crate examples for library usage.

pub mod cli;
pub mod complex;
pub mod cylinder;
pub mod error;
pub mod gen;
pub mod homotopy;
pub mod measure;
pub mod simplex;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use measure::{exhaustion, interpolate_chain, phi_pointwise, rat, Chain, IntervalSet, Q, ScaleDirection};

