pub mod group;
pub mod homology;
pub mod snf;

pub use group::{is_trivial_group, GroupPresentation};
pub use snf::{smith_normal_form, IntMatrix, SnfResult};
