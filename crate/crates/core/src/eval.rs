//! Truth evaluation by direct recursive model checking.
//!
//! Every subformula is evaluated to its full truth vector over the model;
//! pointwise queries read one entry of that vector.

use crate::action::ActionModelEnv;
use crate::error::EvalError;
use crate::formula::{AgentId, Formula};
use crate::model::PreferenceActionModel;
use crate::relation::Relation;
use crate::update;

/// Truth vector of `f`, indexed like `model.states()`.
pub fn satisfying(
    model: &PreferenceActionModel,
    f: &Formula,
    env: &ActionModelEnv,
) -> Result<Vec<bool>, EvalError> {
    let n = model.len();
    Ok(match f {
        Formula::Atom(p) => model
            .val(p)
            .ok_or_else(|| EvalError::UnknownAtom(p.clone()))?
            .to_vec(),
        Formula::Top => vec![true; n],
        Formula::Bot => vec![false; n],
        Formula::Not(x) => satisfying(model, x, env)?.into_iter().map(|b| !b).collect(),
        Formula::And(x, y) => zip(model, x, y, env, |a, b| a && b)?,
        Formula::Or(x, y) => zip(model, x, y, env, |a, b| a || b)?,
        Formula::Imp(x, y) => zip(model, x, y, env, |a, b| !a || b)?,
        Formula::Iff(x, y) => zip(model, x, y, env, |a, b| a == b)?,
        Formula::PrefBox { from, to, body } => {
            let r = pref(model, from, to)?;
            let inner = satisfying(model, body, env)?;
            box_over(&r, &inner)
        }
        Formula::Univ(x) => {
            let inner = satisfying(model, x, env)?;
            vec![inner.iter().all(|b| *b); n]
        }
        Formula::Does(i, x) => {
            if !model.has_agent(i) {
                return Err(EvalError::UnknownAgent(i.clone()));
            }
            let r = model
                .eq(i)
                .ok_or_else(|| EvalError::MissingEquivalence(i.clone()))?;
            let inner = satisfying(model, x, env)?;
            box_over(r, &inner)
        }
        Formula::CondObl {
            from,
            to,
            consequent,
            condition,
        } => {
            let r = pref(model, from, to)?;
            let cond = satisfying(model, condition, env)?;
            let cons = satisfying(model, consequent, env)?;
            cond_obl_vector(&r, &cons, &cond)
        }
        Formula::ActBox {
            model: name,
            action,
            body,
        } => update::act_box_vector(model, env, name, action, body)?,
    })
}

fn zip(
    model: &PreferenceActionModel,
    x: &Formula,
    y: &Formula,
    env: &ActionModelEnv,
    op: impl Fn(bool, bool) -> bool,
) -> Result<Vec<bool>, EvalError> {
    let a = satisfying(model, x, env)?;
    let b = satisfying(model, y, env)?;
    Ok(a.into_iter().zip(b).map(|(a, b)| op(a, b)).collect())
}

fn pref(
    model: &PreferenceActionModel,
    from: &AgentId,
    to: &AgentId,
) -> Result<Relation, EvalError> {
    for a in [from, to] {
        if !model.has_agent(a) {
            return Err(EvalError::UnknownAgent(a.clone()));
        }
    }
    Ok(model.pref(from, to).into_owned())
}

fn box_over(r: &Relation, inner: &[bool]) -> Vec<bool> {
    (0..inner.len())
        .map(|w| r.successors(w).all(|v| inner[v]))
        .collect()
}

/// The ∀∃∀ clause: for every condition-state `v` above `w` there is a
/// condition-state `u` above `v` such that every condition-state above `u`
/// satisfies the consequent.
pub(crate) fn cond_obl_vector(r: &Relation, consequent: &[bool], condition: &[bool]) -> Vec<bool> {
    let n = condition.len();
    let settled: Vec<bool> = (0..n)
        .map(|u| condition[u] && r.successors(u).all(|s| !condition[s] || consequent[s]))
        .collect();
    let reaches_settled: Vec<bool> = (0..n)
        .map(|v| r.successors(v).any(|u| settled[u]))
        .collect();
    (0..n)
        .map(|w| r.successors(w).all(|v| !condition[v] || reaches_settled[v]))
        .collect()
}

fn state(model: &PreferenceActionModel, w: &str) -> Result<usize, EvalError> {
    model
        .state_index(w)
        .ok_or_else(|| EvalError::UnknownState(w.to_owned()))
}

/// `M, w ⊨ f`.
pub fn eval(
    model: &PreferenceActionModel,
    w: &str,
    f: &Formula,
    env: &ActionModelEnv,
) -> Result<bool, EvalError> {
    let k = state(model, w)?;
    Ok(satisfying(model, f, env)?[k])
}

/// Truth of `O i j (consequent / condition)` at `w`.
pub fn eval_cond_obl(
    model: &PreferenceActionModel,
    w: &str,
    from: &AgentId,
    to: &AgentId,
    consequent: &Formula,
    condition: &Formula,
    env: &ActionModelEnv,
) -> Result<bool, EvalError> {
    let k = state(model, w)?;
    let r = pref(model, from, to)?;
    let cond = satisfying(model, condition, env)?;
    let cons = satisfying(model, consequent, env)?;
    Ok(cond_obl_vector(&r, &cons, &cond)[k])
}

/// States where `f` holds, in model order.
pub fn truth_set(
    model: &PreferenceActionModel,
    f: &Formula,
    env: &ActionModelEnv,
) -> Result<Vec<String>, EvalError> {
    let bits = satisfying(model, f, env)?;
    Ok(model
        .states()
        .iter()
        .zip(bits)
        .filter(|(_, b)| *b)
        .map(|(s, _)| s.clone())
        .collect())
}
