//! Separatrix diagrams, cylinder decompositions and rank-one constraints for
//! translation surfaces in low-genus strata.

pub mod appendix;
pub mod automorph;
pub mod constraints;
pub mod cylinder;
pub mod diagram;
pub mod enumeration;
pub mod error;
pub mod feasibility;
pub mod iso;
pub mod linalg;
pub mod mintype;
pub mod perm;
pub mod polygon;
pub mod quad;
pub mod rel;
pub mod scenarios;
pub mod separatrix;
pub mod spin;
pub mod svg;
