//! Finite magmas as Cayley tables.
//!
//! The crate has four layers:
//!
//! * [`term`] — terms and identities over one binary operation, the
//!   systematic `Xij` codec for identities of Bol-Moufang type,
//!   dualization, and brute-force evaluation on a table.
//! * [`magma`] — the Cayley table itself plus structural analysis:
//!   neutral elements, inverses, inverse properties, Latin-ness,
//!   loop/group detection, canonical forms.
//! * [`finder`] — exhaustive backtracking search with constraint
//!   propagation for models of a structure spec plus required
//!   identities, used both to find counterexamples and to certify
//!   their absence up to a bound.
//! * [`lab`] — scripted claim suites: fixture tables, bounded theorem
//!   verification, the yes/no classification of the coded identities,
//!   and the long-running B25 campaign with checkpoint/resume.

pub mod finder;
pub mod lab;
pub mod magma;
pub mod term;
