//! Quantitative partial observability for PDE initial states.
//!
//! Given a semi-discretized PDE, a set of sensors, and a low-dimensional
//! subspace of candidate initial perturbations, this crate computes the
//! unobservability index rho / epsilon: the ratio of the perturbation
//! radius to the smallest output discrepancy any such perturbation can
//! produce. A large index means sensor data of accuracy epsilon cannot
//! pin the initial state down better than rho in that subspace.
//!
//! Three benchmark models are included: a heat equation with a closed-form
//! gramian (the validation anchor), a finite-difference wave equation whose
//! boundary observability degenerates under refinement (the cautionary
//! counterexample), and a viscous Burgers' equation driving the nonlinear
//! empirical-gramian pipeline and its consistency sweep.

pub mod burgers;
pub mod consistency;
pub mod error;
pub mod heat;
pub mod linalg;
pub mod observability;
pub mod ode;
pub mod wave;

pub use burgers::{BurgersModel, FourierCoeffs};
pub use consistency::{
    burgers_index_sweep, convergence_diagnostics, sweep, ConvergenceReport, StudyRecord,
    StudySeries,
};
pub use error::{Error, Result};
pub use heat::HeatModel;
pub use linalg::{
    cholesky, gen_sym_eig, gram_schmidt, sym_eig, trapezoid_quadrature, EigResult, Mat,
    SymMatrix,
};
pub use observability::{
    direct_index_search, empirical_gramian, linear_gramian, unobservability_index,
    EstimationBasis, GramianPair, IndexMethod, IndexResult, ObservedModel, OutputSeries,
    OutputWeight, SearchConfig,
};
pub use ode::{modal_solve, rk4_integrate, LinearSystem, ModalForm, TrajectorySamples};
pub use wave::WaveModel;
