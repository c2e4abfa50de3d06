//! Polyhedral model of good invariant cones and the cone spectrum.
//!
//! The open cone of the theory is stored through its closure: rays and facet
//! normals in exact rationals, kept consistent by double description.
//! Membership of the open cone means strict satisfaction of every facet
//! inequality. Feasibility questions are settled by an exact simplex over
//! the rationals or over a real number field; every verdict carries a
//! witness or a separating functional that re-verifies by substitution.

pub mod amplified;
pub mod cone;
pub mod error;
pub mod lp;
pub mod theorems;

pub use amplified::{
    cone_spectrum, is_alpha_amplified, validate_good_cone, AlgVec, AmplifiedOutcome,
    GoodConeCertificate, Invariance, SpectrumResult,
};
pub use cone::{ConeProvenance, PolyhedralCone};
pub use error::ConeError;
pub use lp::{strict_feasibility, StrictFeasibility};
pub use theorems::{
    iterate_spectrum_check, restriction_spectrum_check, subspace_meets_interior,
    verify_spectrum_theorem, InteriorMeet,
};
