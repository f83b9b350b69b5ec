//! Ground-truth engines used to check the label-level theory against
//! actual character values and actual groups.
//!
//! Two independent oracles live here. [`gl2`] builds the full exact
//! character table of GL_2(q) from the classical four-family construction
//! (linear characters, Steinberg twists, principal series, cuspidals) and
//! validates itself by orthogonality before anything else is allowed to
//! trust it; every verification routine then compares table-level facts
//! (Galois-transformed rows, value stabilizers, series images, virtual
//! character decompositions, inner products) against the label-level
//! predictions. [`bfs`] is a breadth-first matrix-group engine that
//! computes orders and exponents of small classical groups by literal
//! enumeration, cross-checking the exponent formulas.

pub mod bfs;
pub mod gl2;

pub use bfs::{
    gl_group, pgl2_group, psp4_group, sl2_group, so5_group, sp4_group, MatrixGroup,
    BFS_ORDER_GUARD,
};
pub use gl2::{
    dl_virtual_character, verify_field_of_values, verify_induction_commutes,
    verify_inner_product_property, verify_main_theorem, verify_series_compat, Gl2Character,
    Gl2CharKind, Gl2Class, Gl2ClassKind, Gl2Table, TorusCharacter, VerifyReport,
};
