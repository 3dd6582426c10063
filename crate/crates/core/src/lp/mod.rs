//! The feasibility program for k-uniform enumerators, an exact simplex that
//! decides it, and the certificates that let anyone audit the answer.

mod certificate;
mod dual;
mod program;
mod simplex;

pub use certificate::{verify_certificate_json, CertificateJson, CertificateType};
pub use dual::{
    two_support_certificate, verify_dual_certificate, DualCertificate, TwoSupportOutcome,
};
pub use program::{
    build_primal, verify_farkas, verify_point, CertificateStatus, FarkasCertificate, LinearProgram,
    Relation, Row,
};
pub use simplex::{
    solve_feasibility, solve_primal, FeasibilityResult, SolveOptions, DEFAULT_LP_MAX_N,
    DEFAULT_PIVOT_LIMIT,
};
