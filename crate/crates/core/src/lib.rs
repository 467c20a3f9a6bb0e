//! Exact compositional analysis of passive linear circuits.
//!
//! Circuits are cospans of finite sets decorated by impedance-labelled
//! graphs over the field Q(s). The black box functor sends each circuit to
//! its external behavior, a Lagrangian relation between the spaces of
//! boundary potentials and currents, and it can be computed three ways:
//! from its categorical definition ([`blackbox::blackbox`]), by minimizing
//! the power functional onto the terminals first
//! ([`blackbox::blackbox_fast`]), and by solving Ohm's and Kirchhoff's laws
//! directly ([`blackbox::oracle_behavior`]).

pub mod blackbox;
pub mod circuit;
pub mod corel;
pub mod cospan;
pub mod dirichlet;
pub mod field;
pub mod lagrel;
pub mod netlist;
pub mod sample;
pub mod union_find;

pub use blackbox::{blackbox, blackbox_fast, oracle_behavior, Behavior};
pub use circuit::Circuit;
pub use field::{Rat, RatFunc};
