//! Analysis of binary parity-check matrices.
//!
//! A linear code has many parity-check matrices, and the choice matters for
//! iterative decoding: the Tanner graph of one representation can be a
//! forest while another hides the same code behind cycles. This crate
//! provides the pieces needed to study that choice at desk scale:
//!
//! * [`gf2`]: bit-packed GF(2) linear algebra (rank, null spaces, row spaces);
//! * [`tanner`]: Tanner graphs, forest tests, girth, components, pruning;
//! * [`cover`]: finite graph covers and the pseudocodewords they realize;
//! * [`pseudo`]: fundamental-cone membership, pseudocodeword verification,
//!   bounded enumeration, and reducibility certificates;
//! * [`perfect`]: deciding whether every pseudocodeword is a sum of
//!   codewords, with explicit witnesses when not;
//! * [`decode`]: reference maximum-likelihood and min-sum decoders plus a
//!   binary symmetric channel simulator;
//! * [`io`], [`report`], [`samples`], [`random`]: formats, JSON-ready report
//!   types, fixture matrices, and seeded generators.
//!
//! With the default `parallel` feature the expensive searches fan out with
//! rayon; without it every entry point falls back to the sequential path.

pub mod cover;
pub mod decode;
pub mod error;
pub mod gf2;
pub mod io;
pub mod perfect;
pub mod pseudo;
pub mod random;
pub mod report;
pub mod samples;
pub mod tanner;

pub use error::{Error, Result};
