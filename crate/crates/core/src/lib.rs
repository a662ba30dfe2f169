//! Combinatorics of negative Calabi-Yau configurations on ℤΔ/𝕊[d], maximal
//! d-Brauer relations on polygons, graded Brauer quivers, and the
//! Auslander-Reiten theory of truncated polynomial dg algebras.

pub mod brauer;
pub mod config;
pub mod dga;
pub mod dynkin;
pub mod emit;
pub mod error;
pub mod hom;
pub mod truncpoly;

pub use error::{Error, Result};
