//! Canonical cylinders of non-symmetric pseudo-cellular DG-operads, computed
//! exactly over the integers.

pub mod base;
pub mod cli;
pub mod cylinder;
pub mod error;
pub mod examples;
pub mod expr;
pub mod json;
pub mod koszul;
pub mod label;
pub mod latex;
pub mod linear;
pub mod load;
pub mod presentation;
pub mod sdr;
pub mod suspension;
pub mod terms;
pub mod tree;
pub mod verify;

pub use base::{BaseKind, BaseOperad};
pub use error::{OpError, Result};
pub use koszul::Sign;
pub use label::{BaseLabel, Generator, Label, Marker, Symbol};
pub use presentation::{differential, DgOperad, Presentation, Report};
pub use terms::{Element, Monomial};
pub use tree::{Node, PlanarTree, Tree};
