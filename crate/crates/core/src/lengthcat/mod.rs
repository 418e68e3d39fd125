//! Length categories through their Ext-quivers, and tubes as nilpotent
//! representations of a cyclic quiver.

mod quiver;
mod tube;

pub use quiver::{check_uniserial, contract_quiver, expand_quiver, ValuedArrow, ValuedQuiver};
pub use tube::{ar_sequence, tube_class, tube_ext, tube_hom, tube_tau, ArSequence, TubeLabel};
