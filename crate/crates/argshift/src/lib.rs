//! Exact computer algebra for argument-shift (Mishchenko–Fomenko) subalgebras.
//!
//! Everything here runs over the rationals with arbitrary precision: root
//! systems and Chevalley bases for the semisimple types, the symmetric algebra
//! `S(g)` with its Lie–Poisson bracket, the one-parameter pencil of compatible
//! brackets obtained by freezing the argument along a fixed character, and the
//! degree-by-degree linear algebra needed to compare an argument-shift
//! subalgebra `A_mu` with the Poisson centralizer of its quadratic part.
//!
//! The main entry points, in dependency order:
//!
//! * [`root_system`] — root systems from Cartan matrices, with the invariant
//!   form normalized so long roots have squared length 2.
//! * [`chevalley`] — structure constants for a Chevalley-style basis, fixed by
//!   extraspecial-pair sign choices and checked against the Jacobi identity.
//! * [`polyring`] — sparse multivariate polynomials, the bracket pencil
//!   `t{.,.} + (1-t){.,.}_gamma`, and the substitution `psi_t`.
//! * [`invariants`] — adjoint invariants of `S(g)` degree by degree, and
//!   extraction of a generating set with the classical exponents.
//! * [`shift`] — directional derivatives along a regular `mu`, the family of
//!   shifted generators, and the quadratic elements `Q_mu`.
//! * [`centralizer`] — Poisson centralizers as kernels of exact sparse linear
//!   maps, the degenerate (`t = 0`) eigenvalue analysis, and the top-level
//!   centralizer-equality verification.
//! * [`pbw`] — the universal enveloping algebra in PBW normal form,
//!   symmetrization, and the quadratic-slice lifting check.

pub mod centralizer;
pub mod chevalley;
pub mod cli;
pub mod invariants;
pub mod linalg;
pub mod pbw;
pub mod polyring;
pub mod rational;
pub mod report;
pub mod root_system;
pub mod shift;

pub use rational::Q;

/// Everything that can go wrong outside of plain logic errors. Failures of
/// internal consistency checks (Jacobi, generator bookkeeping) get their own
/// variants so callers can tell a bad input from a bug.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported type `{0}`")]
    UnsupportedType(String),

    #[error("`{0}` is not a root of this system")]
    NotARoot(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live over different bases")]
    BasisMismatch,

    #[error("mu is not regular: pairing with root {root} vanishes")]
    NonRegularMu { root: String },

    #[error("structure constants failed a consistency check: {0}")]
    SignConsistency(String),

    #[error("expected a polynomial of degree at most 1")]
    NonlinearInput,

    #[error("expected a homogeneous polynomial")]
    InhomogeneousInput,

    #[error("the substitution psi_t is undefined at t = 0")]
    ZeroPencilParameter,

    #[error("invariant bookkeeping failed: {0}")]
    DegreeBookkeeping(String),

    #[error("shifted generators are dependent at degree {degree}: span {span}, expected {expected}")]
    DependentGenerators { degree: usize, span: usize, expected: usize },

    #[error("element is not the expected quadratic combination: {0}")]
    NotInQuadraticSpan(String),

    #[error("shifted family does not commute: {0}")]
    NonCommutingFamily(String),

    #[error("gave up after {attempts} attempts: {detail}")]
    RetriesExhausted { attempts: u32, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
