//! Exact integer and rational linear algebra used by every other module.

pub mod feasibility;
pub mod fm;
pub mod matrix;
pub mod polyhedron;
pub(crate) mod small;
pub mod snf;

pub use feasibility::{integer_feasible, integer_points, Constraint, ConstraintSystem, FeasibilityResult, Relation};
pub use matrix::IntegerMatrix;
pub use polyhedron::{polyhedron_vertices_2d, Polyhedron2};
pub use snf::{smith_normal_form, SmithDecomposition};
