//! Broken Lefschetz fibrations on smooth 4-manifolds, modelled as combinatorial
//! monodromy data.
//!
//! The crate is layered bottom-up:
//!
//! * [`algtop`]: exact integer matrices, Smith normal form, the symplectic
//!   pairing on `H1(Σg; Z)`.
//! * [`surface`]: curves as free-group words, their homology classes and the
//!   homological (transvection) action of Dehn twists.
//! * [`fibration`]: Lefschetz pieces, round cobordisms and validation.
//! * [`surgery`]: pushing singularities to the higher side, broken fiber sums,
//!   connected-sum models, trading negative nodes, blow-downs and the standard
//!   example families.
//! * [`invariants`]: Euler characteristic, signature, `χ_h`, fundamental group
//!   presentations, `H1` and homeomorphism-type reports.
//! * [`sw`]: Seiberg-Witten bookkeeping predicates on declared class data.
//! * [`format`] and [`cli`]: the `.blf` text format and the `blfkit` driver.

pub mod algtop;
pub mod cli;
pub mod error;
pub mod fibration;
pub mod format;
pub mod invariants;
pub mod surface;
pub mod surgery;
pub mod sw;

pub use error::{Error, ParseError, Result};
