//! Compliance-control workbench.
//!
//! Stiffness-matrix design (symmetric positive-definite and triangular),
//! a discrete 6-DOF admittance controller, a penalty peg-in-hole contact
//! model and the closed-loop experiments built from them.

pub mod admittance;
pub mod contact;
pub mod error;
pub mod experiments;
pub mod io;
pub mod matcore;
pub mod stiffness;

pub use admittance::{AdmittanceParams, AdmittanceState, Frame, Wrench};
pub use contact::{ContactResult, PegHoleGeometry, PegPose, Phase};
pub use error::{Error, Result};
pub use matcore::{Mat6, Vec3, Vec6};
pub use stiffness::{EigenStatus, ShapeClass, StiffnessMatrix, TaskDesignSpec};
