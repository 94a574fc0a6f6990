//! Bogomolov multipliers of finite p-groups.
//!
//! * [`pcgroup`]: polycyclic presentations, collection, the group catalog.
//! * [`groupkit`]: enumeration, subgroups, commutator sets, central products.
//! * [`zlattice`]: Smith normal form and linear algebra over `Z/n`.
//! * [`cohomology`]: the cocycle oracle computing `B0(G)` from its definition.
//! * [`wedge`]: exterior-square calculus, exact class-2 engine, certificates.

pub mod cohomology;
pub mod groupkit;
pub mod pcgroup;
pub mod wedge;
pub mod zlattice;

/// Version of the library, reported alongside every result.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
