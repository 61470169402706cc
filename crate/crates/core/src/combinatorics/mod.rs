//! Partitions, Pieri and strip combinatorics, and dimension formulas.

mod dims;
mod families;
mod lr;
mod partition;
mod strips;
mod tableaux;

pub use dims::{gl_dim, orthogonal_traceless_dim, to_u64, weyl_dim, weyl_dim_partition, Weight};
pub use families::{
    family_sizes, gl_one_box, hook_rank_closed, hook_rank_printed, hyperplane_bound_criterion,
    one_box_decomposition, so_one_box, FamilyId, FamilySizes, Part, PredictedDecomposition, Term,
};
pub use lr::{lr_coefficient, partitions_of};
pub use partition::{BoxPosition, Family, GroupSpec, Partition};
pub use strips::{added_box, all_horizontal_strips, horizontal_strips, pieri_add};
pub use tableaux::ssyt;
