//! Momentum band structure of `Z^d`-periodic quantum graphs with
//! Kirchhoff–Neumann vertices, and the band density `p`: the asymptotic
//! fraction of momenta that lie in the spectrum.
//!
//! Two independent routes estimate `p`: measuring bands along the momentum
//! axis ([`spectrum::density`]) and the Monte Carlo volume of the secular
//! zero-set union on the edge-phase torus ([`torus::mc_volume`]).

pub mod bonds;
pub mod cli;
pub mod error;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod reference;
pub mod sampling;
pub mod secular;
pub mod spectrum;
pub mod torus;

pub use bonds::{vertex_scattering, BondSystem, Direction};
pub use error::{Error, Result, ValidationReport, Violation};
pub use graph::{
    bloch_reduce, build_example, validate_cell, ExampleName, FundamentalCell, GraphTemplate,
    MagneticGraph,
};
pub use secular::{eval_phi, eval_secular, SecularValue};
pub use spectrum::{alpha_polynomial, band_intervals, density, in_spectrum, BandList, BandSettings};
pub use torus::{flow_point, mc_volume, sigma_membership, TorusPoint, VolumeEstimate};
