//! Representations of the Kronecker quiver `V1 ⇉ V0` and the tilting
//! correspondence `F ↦ (Hom(O(1), F) ⇉ Hom(O, F))` on ℙ¹.

mod bundle;
mod pencil;
mod rep;
pub(crate) mod subspace;

pub use bundle::{global_sections, nonnegative_twist, tilt_bundle};
pub use pencil::pencil_decompose;
pub use rep::{rep_hom_ext, tilt_label, untilt, KroneckerLabel, KroneckerRep};
