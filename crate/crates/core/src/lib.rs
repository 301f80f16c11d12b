//! Proof nets for classical propositional logic.
//!
//! Two categories of nets are provided: simple nets, whose linkings are sets
//! of atom pairs, and extended nets, which add anchors and multiplicities.
//! Maps between formulas are elaborated from a term language into either
//! category, and [`axiom_suite`] checks a catalog of equations between such
//! terms on sampled object bindings.

pub mod axiom_suite;
pub mod dot;
pub mod error;
pub mod extended_net;
pub mod formula;
pub mod json;
pub mod morphisms;
pub mod simple_net;

pub use error::{CatalogError, ElabError, FormulaError, NetError, NetFileError, SexpError};
pub use extended_net::{ExtendedNet, Node};
pub use formula::{parse_formula, parse_sequent, Formula, Label, LeafRef, Path, Sequent};
pub use morphisms::{elaborate, Category, Hom, MorphismExpr};
pub use simple_net::SimpleNet;
