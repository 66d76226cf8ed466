//! Generalized polyhedra: solution sets of linear systems mixing `<=`, `<`,
//! and `=` rows, with exact geometry on top.
//!
//! The H-representation with strict rows is the primary carrier: strict
//! faces have no canonical generator form, so openness always flows through
//! feasibility tests rather than vertex enumeration. Closed sets optionally
//! move to generator form ([`GeneratorSet`]) via the double description
//! method for hulls, polars, images, and sums.
//!
//! Submodules:
//! - [`types`]: the core data types and pointwise predicates;
//! - [`canon`]: canonical H-form and semantic comparison;
//! - [`fm`]: strictness-aware Fourier–Motzkin projection;
//! - [`ops`]: closure, affine hulls, relative-interior rows, and
//!   projection-based images;
//! - [`hull`]: generator conversions and generator-based operations;
//! - [`cone`]: cones of a set at a point;
//! - [`cover`]: exact covering decisions for unions.

mod canon;
mod cone;
mod cover;
mod fm;
mod hull;
mod ops;
mod types;

pub use canon::{canonicalize, implies_row, poly_equal, poly_subset, prune_redundant, tidy_rows};
pub use cone::{exact_cone_pieces, homogenize_cone, pointwise_cone_membership};
pub use cover::{covers, CoverReport};
pub use fm::{eliminate_var, embed, fix_coords, project};
pub use hull::{
    convex_hull, linear_image, minkowski_sum, negate, polar_cone, to_generators, GeneratorSet,
};
pub use ops::{
    affine_hull, closure, implicit_equalities, linear_image_fm, minkowski_sum_fm, ri_rows,
};
pub use types::{AffineFlat, Constraint, EmptinessReport, GenPolyhedron, PolyCone, Rel};
