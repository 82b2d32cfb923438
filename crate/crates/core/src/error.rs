use thiserror::Error;

use crate::formula::{ActionId, AgentId, AtomId};

/// Errors raised while building models and action models.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model needs at least one state")]
    NoStates,
    #[error("an action model needs at least one action")]
    NoActions,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(AgentId),
    #[error("duplicate action `{0}`")]
    DuplicateAction(ActionId),
    #[error("invalid {kind} name `{name}`")]
    InvalidName { kind: &'static str, name: String },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(AgentId),
    #[error("unknown action `{0}`")]
    UnknownAction(ActionId),
    #[error("relation is over {got} elements but the carrier has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("blocks for `{agent}` do not partition the states: {reason}")]
    NotAPartition { agent: AgentId, reason: String },
}

/// Errors raised while evaluating formulas or computing updates.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(AgentId),
    #[error("unknown atom `{0}`")]
    UnknownAtom(AtomId),
    #[error("agent `{0}` has no equivalence relation in this model")]
    MissingEquivalence(AgentId),
    #[error("unknown action model `{0}`")]
    UnknownActionModel(String),
    #[error("action model `{model}` has no action `{action}`")]
    UnknownAction { model: String, action: ActionId },
    #[error("no action of `{0}` is executable in any state")]
    EmptyProduct(String),
    #[error("action model `{0}` has a pre- or postcondition with a dynamic modality")]
    NonStaticActionModel(String),
    #[error("action model `{model}` relates unknown agent `{agent}`")]
    ActionModelAgent { model: String, agent: AgentId },
}
