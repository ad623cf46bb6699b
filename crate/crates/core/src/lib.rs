//! Exact F-signature functions `t -> s(R, f^t)` of hypersurface pairs over
//! prime fields, computed at p-adic rational parameters by finite linear
//! algebra over F_p, together with the tools to check their analytic
//! properties on computed tables.
//!
//! * [`field`], [`linalg`]: F_p arithmetic and exact ranks.
//! * [`poly`]: sparse polynomials and truncation modulo `m^[q]`.
//! * [`sigcore`]: colon lengths, signatures, Hilbert–Kunz sequences.
//! * [`newton`]: the monomial-ideal volume formula and lattice counts.
//! * [`fractal`]: Monsky's closed form over F_3 and the p-fractal probe.
//! * [`verify`]: property checks on signature tables.
//! * [`cli`]: the `fsig` command-line front end and its result cache.

pub mod cli;
pub mod error;
pub mod field;
pub mod fractal;
pub mod linalg;
pub mod newton;
pub mod poly;
pub mod rational;
pub mod sigcore;
pub mod verify;

pub use error::{Error, Result};
