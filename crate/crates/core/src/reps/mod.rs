//! Concrete models of the classical representations used by the pencils.

pub mod ambient;
pub mod forms;
pub mod lie;
pub mod module;
pub mod spin;

pub use ambient::ColumnWedge;
pub use forms::{BilinearFormSpec, FormKind};
pub use lie::{check_in_algebra, group_form, lie_basis, sl_basis, LieElement};
pub use module::{lie_action, orthogonal_module, schur_module, symplectic_module, RealizedModule};
pub use spin::{spin_space, SpinModule};
