//! Conformal minimal disks from polynomial Enneper–Weierstrass data and the
//! distance and boundary inequalities they satisfy in the real unit ball.

pub mod checks;
pub mod data;
pub mod weierstrass;

pub use checks::{
    boundary_minimal_margin, distance_decreasing_margin, halfsphere_chain_check, inverse_lipschitz_check,
    isothermal_residual, lemma0_margin, metric_identity_audit, summarize_audits, AuditSummary, ChainReport,
    MetricAudit,
};
pub use data::{export_surface_samples, format_weierstrass, parse_weierstrass, read_weierstrass, write_weierstrass};
pub use weierstrass::{SurfacePoint, WeierstrassDisk};
