//! Combinatorial and geometric machinery around adjunction complexes of
//! embedded surfaces in closed spin^c 4-manifolds.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`lattice`]: exact arithmetic on diagonal intersection lattices, spin^c
//!   structures, surface catalogs and the standard wall-crossing families.
//! * [`simplicial`]: abstract simplicial complexes, integer chains and
//!   cochains, Smith normal form and homology, barycentric subdivision and
//!   the cone/prism filling constructions.
//! * [`adjunction`]: the complex of surfaces and the adjunction complex of a
//!   finite catalog.
//! * [`wall_crossing`]: certification of wall-crossing collections, their
//!   fundamental cycles, bounding collections and the derived genus bounds.
//! * [`geometry`]: the stretching parameter space (cut-off functions,
//!   cylinder lengths, the piecewise homeomorphism onto the exterior cube
//!   boundary) and the quantitative vanishing predicate.
//!
//! Every complex here is catalog-relative: the true complexes have infinitely
//! many vertices, so homology computed from a finite catalog says nothing
//! about the ambient complexes beyond what the catalog contains.

pub mod adjunction;
pub mod error;
pub mod geometry;
pub mod int;
pub mod lattice;
pub mod simplicial;
pub mod wall_crossing;

pub use error::{Error, Result};
pub use int::Int;
