//! Category O for skew group algebras of products of sl₂: weights, stabilizer
//! representation theory, Verma and simple characters, BGG-type block
//! matrices, and a PBW engine for the Cherednik-type relations.

pub mod appendix;
pub mod cato_a;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod pbw;
pub mod poly;
pub mod rational;
pub mod selftest;
pub mod skew;
pub mod symgrp;
pub mod weightlat;

pub use error::{Error, Result};
