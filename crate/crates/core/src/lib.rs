//! Khovanov homology through resolution cubes, Burnside functors and
//! homotopy cofibers.

pub mod burnside;
pub mod complex;
pub mod cube;
pub mod diagram;
pub mod frobenius;
pub mod jones;
pub mod khovanov;
pub mod lemmas;
pub mod spin;
pub mod lab;
