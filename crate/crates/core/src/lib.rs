//! Finite noncommutative covering projections of finite-dimensional
//! *-algebras.
//!
//! A finite group `G` acts on `Ã = ⊕ M_{n_i}(ℂ)` with fixed-point algebra
//! `A = Ã^G`. This crate checks the frame conditions that make `Ã` a
//! `G`-Galois Hilbert `A`-module, computes cotensor products `M □_G N` and
//! Borel constructions, builds the flat-bundle modules `Ã □_G ℂⁿ` of unitary
//! local systems with their `K₀` rank vectors, and works with constant
//! connections over a fuzzy (clock/shift) torus.
//!
//! Module map:
//!
//! - [`algebra`]: block matrix algebras and their elements
//! - [`group`], [`action`]: finite groups, actions, `A^G`, conditional expectation
//! - [`hilbert`]: the `A^G`-valued inner product and the Galois frame verifier
//! - [`cotensor`]: cotensor products, the `Map(G, ℂ)` comultiplication, Borel constructions
//! - [`flat_bundle`]: local systems, flat-bundle modules and `K₀` classes
//! - [`torus`]: fuzzy torus, its `ℤ_m × ℤ_n` covers, connections, lift and descent
//! - [`oracle`]: brute-force cross-checks kept independent of the main code paths

pub mod action;
pub mod algebra;
pub mod cotensor;
pub mod error;
pub mod flat_bundle;
pub mod group;
pub mod hilbert;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod torus;

pub use action::{ActionReport, Automorphism, CentralBlock, FixedSubalgebra, GroupAction, Law, LawViolation};
pub use algebra::{make_algebra, AlgebraElement, MatrixAlgebra};
pub use cotensor::{
    borel_construction, commutative_oracle, cotensor_modules, hopf_comultiplication, BorelConstruction,
    CotensorSubspace, GSet, HopfDelta, LeftGModule, OrbitQuotient, RightGModule, Side,
};
pub use error::{Error, Result};
pub use flat_bundle::{averaging_projection, flat_bundle_module, k_class, FlatBundleModule, KClass, LocalSystem};
pub use group::FiniteGroup;
pub use hilbert::{verify_g_decomposition, verify_galois_conditions, GaloisCandidate, GaloisReport, HilbertModule};
pub use linalg::{CMat, CVec, C64, DEFAULT_TOL};
pub use oracle::{oracle_borel_orbits, oracle_cotensor_dim, oracle_inner_product, OracleResult};
pub use torus::{
    descent_well_definedness, lift_connection, twisted_descent, ConnectionForm, Descent, FuzzyTorus, LiftedConnection,
    TorusCover,
};

/// Printed wherever a noncommutative covering is reported: the finite model
/// cannot certify strict outerness of the action.
pub const OUTERNESS_DISCLAIMER: &str = "strict outerness of the action is not certified by this finite-dimensional model; \
only the Hilbert-module and Galois frame conditions are verified (automorphisms of a finite-dimensional \
algebra are inner up to a block permutation)";
