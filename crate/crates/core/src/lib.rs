//! Workbench for the combinatorics and numerics of mating a bounded-type
//! Siegel quadratic polynomial with a postcritically finite quadratic:
//! exact angle dynamics, invariant laminations, Hubbard trees, rotation
//! sets, drop chains, ray-equivalence classes, the T-graph, and the
//! candidate rational map with its verification probes.

pub mod acceptance;
pub mod angle;
pub mod error;
pub mod laminar;
pub mod lamination;
pub mod mating;
pub mod num;
pub mod pcf;
pub mod pipeline;
pub mod report;
pub mod rotation;
pub mod theta;

pub use angle::{cyclic_between, Angle, OrbitInfo};
pub use error::{Error, Result};
pub use lamination::{Class, LamKind, LaminationSet, Leaf, SectorRule};
pub use theta::{ContinuedFraction, Theta};
