//! Mod-2 motivic cohomology of classifying spaces of orthogonal, spin and
//! even Clifford groups: Steenrod squares on subtle Stiefel-Whitney classes,
//! and a Gröbner-basis kernel over F2 that certifies the relations.

pub mod algebra;
pub mod groebner;
pub mod presentations;
pub mod report;
pub mod splitting;
pub mod steenrod;
