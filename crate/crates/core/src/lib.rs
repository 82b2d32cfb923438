//! Dynamic deontic logic of legal competences.
//!
//! Formulas are evaluated on finite preference-action models; deontic
//! action models change those models by lexicographic product update.
//! On top of that sit Hohfeldian power and immunity checks, a
//! reduction-axiom translator to the static language, and randomized
//! countermodel search.

pub mod action;
pub mod error;
pub mod eval;
pub mod formula;
pub mod model;
pub mod relation;
pub mod update;

pub use action::{ActionModelEnv, DeonticActionModel};
pub use error::{EvalError, ModelError};
pub use eval::{eval, eval_cond_obl, truth_set};
pub use formula::{parse, ActionId, AgentId, AtomId, Formula};
pub use model::{PreferenceActionModel, ValidationReport};
pub use relation::Relation;
pub use update::{executable, product, UpdatedModel};

pub mod hohfeld;
pub mod io;
pub mod iso;
pub mod random;
pub mod reduction;
pub mod scenario;
