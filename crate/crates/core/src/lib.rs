//! Exact computational tools for the character theory of finite general
//! linear groups.
//!
//! The crate revolves around one bookkeeping device: an irreducible
//! character of GL_n(q) is labelled by a pair `(s, nu)`, where `s` is a
//! multiset of irreducible polynomials over F_q with multiplicities (a
//! semisimple conjugacy class datum) and `nu` attaches a partition to each
//! polynomial. Galois conjugation of character values corresponds to a
//! concrete operation on these labels: replace each polynomial by the
//! minimal polynomial of the r-th power of its roots. The modules here
//! implement that action exactly and cross-check it in two independent
//! ways, through explicit GL_2(q) character tables and through
//! breadth-first closures of small matrix groups.
//!
//! Module map:
//!
//! * [`ffield`]: finite fields F_{p^k} and their extensions as explicit
//!   polynomial quotients, irreducibility tests, minimal polynomials, and
//!   the power map on irreducible polynomials.
//! * [`combinat`]: partitions, hooks, cyclotomic polynomials, and the
//!   q-analog degree formula.
//! * [`cyclo`]: exact arithmetic in cyclotomic fields Q(zeta_m) and the
//!   Galois action on them.
//! * [`labels`]: semisimple class labels, character labels, centralizer
//!   data, and character degrees for GL_n(q).
//! * [`galois`]: the ambient exponent, the label-level Galois action,
//!   value fields, and Galois orbits of labels.
//! * [`expo`]: closed-form group exponents for GL, Sp, and odd SO, with a
//!   duality check between the symplectic and odd orthogonal series.
//! * [`oracle`]: the two independent referees, a complete GL_2(q)
//!   character table built from scratch and a breadth-first matrix-group
//!   engine.
//!
//! Everything is exact: big integers, big rationals, and root-of-unity
//! bookkeeping; floating point appears only as a sanity overlay inside
//! tests.

pub mod combinat;
pub mod cyclo;
pub mod error;
pub mod expo;
pub mod ffield;
pub mod galois;
pub mod labels;
pub mod oracle;

pub use error::{Error, Result};
