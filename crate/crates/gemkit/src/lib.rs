//! # gemkit
//!
//! Edge-colored graphs encoding compact PL 4-manifolds: regular genus,
//! dipole calculus, trisections induced by tricolorings, and a compiler
//! from framed-link diagrams to 5-colored graphs.
//!
//! The central object is the [`gem::ColoredGraph`]: a regular
//! `(n+1)`-edge-colored multigraph whose dual pseudocomplex triangulates
//! a (singular) manifold. On top of it the crate provides
//!
//! - residue analysis and classification ([`gem`]),
//! - regular-genus computation and the exact numerical identities
//!   relating genera, residue counts and Euler characteristics
//!   ([`genus`]),
//! - dipole moves, capping-off, graph connected sums and heuristic
//!   sphere recognition ([`moves`]),
//! - fundamental-group presentations and the collapse search ([`pi1`]),
//! - quasi-trisections, the gem-induced-trisection verdict and the
//!   census driver ([`trisection`]),
//! - the framed-link compiler ([`linkforge`]).
//!
//! ```
//! use gemkit::gem::order_two_graph;
//! use gemkit::genus::{canonical_p4, ManifoldContext};
//! use gemkit::trisection::{verdict, TrisectOptions, TrisectionVerdict};
//!
//! // The order-2 graph encodes the 4-sphere: every tricoloring induces
//! // a genus-0 trisection.
//! let gem = order_two_graph(5);
//! let ctx = ManifoldContext::new(0, 0).unwrap();
//! for eps in canonical_p4() {
//!     let report = verdict(&gem, &eps, &ctx, &TrisectOptions::default()).unwrap();
//!     assert_eq!(report.verdict, TrisectionVerdict::GemInduced);
//!     assert_eq!(report.genus_central, 0);
//! }
//! ```

pub mod gem;
pub mod generator;
pub mod genus;
pub mod linkforge;
pub mod moves;
pub mod pi1;
pub mod trisection;

pub use gem::{parse_gem, Color, ColoredGraph};
pub use genus::{CyclicPermutation, ManifoldContext};
