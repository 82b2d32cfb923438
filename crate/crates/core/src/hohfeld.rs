//! Hohfeldian competences: power, immunity, liability and no-power, in a
//! global and a local reading, and permissibility of deontic actions.
//!
//! The global reading asks whether some executable action results in the
//! position. The local reading asks whether some executable action flips
//! the position's current truth value (establishing it when false,
//! cancelling it when true).

use std::str::FromStr;

use serde::Serialize;

use crate::action::{ActionModelEnv, DeonticActionModel};
use crate::error::EvalError;
use crate::eval::{eval, satisfying};
use crate::formula::{ActionId, AgentId, AtomId, Formula};
use crate::model::PreferenceActionModel;
use crate::update::product;

/// A normative position with its holder and addressees, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Position {
    #[serde(serialize_with = "display")]
    pub formula: Formula,
    pub subject: AgentId,
    pub addressees: (AgentId, AgentId),
}

fn display<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Kind {
    Power,
    Immunity,
    Liability,
    NoPower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Global,
    Local,
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "power" => Ok(Kind::Power),
            "immunity" => Ok(Kind::Immunity),
            "liability" => Ok(Kind::Liability),
            "nopower" | "no-power" => Ok(Kind::NoPower),
            _ => Err(format!(
                "unknown kind `{s}` (expected power, immunity, liability or nopower)"
            )),
        }
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "global" => Ok(Scope::Global),
            "local" => Ok(Scope::Local),
            _ => Err(format!("unknown scope `{s}` (expected global or local)")),
        }
    }
}

/// Outcome of a competence check.
///
/// For power and liability, `witnesses` are the actions realizing the
/// competence. For immunity and no-power they are the actions that break
/// it, so in every case `witnesses` is nonempty iff the corresponding
/// power holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PositionVerdict {
    pub kind: Kind,
    pub scope: Scope,
    pub holds: bool,
    pub witnesses: Vec<ActionId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub current_truth: Option<bool>,
}

/// For each action: is it executable at `w`, and does `target` hold after it.
fn outcomes(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    target: &Formula,
    env: &ActionModelEnv,
) -> Result<Vec<(ActionId, Option<bool>)>, EvalError> {
    let k = model
        .state_index(w)
        .ok_or_else(|| EvalError::UnknownState(w.to_owned()))?;
    let updated = match product(model, am) {
        Ok(u) => u,
        Err(EvalError::EmptyProduct(_)) => {
            return Ok(am.actions().iter().map(|a| (a.clone(), None)).collect())
        }
        Err(e) => return Err(e),
    };
    let after = satisfying(&updated.model, target, env)?;
    let w = model.state_name(k);
    Ok(am
        .actions()
        .iter()
        .map(|a| {
            let value = updated
                .pair(w, a)
                .and_then(|s| updated.model.state_index(s))
                .map(|x| after[x]);
            (a.clone(), value)
        })
        .collect())
}

fn realizing(outcomes: &[(ActionId, Option<bool>)], wanted: bool) -> Vec<ActionId> {
    outcomes
        .iter()
        .filter(|(_, v)| *v == Some(wanted))
        .map(|(a, _)| a.clone())
        .collect()
}

fn global(
    kind: Kind,
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    let witnesses = realizing(&outcomes(model, w, am, position, env)?, true);
    let power = !witnesses.is_empty();
    Ok(PositionVerdict {
        kind,
        scope: Scope::Global,
        holds: matches!(kind, Kind::Power | Kind::Liability) == power,
        witnesses,
        current_truth: None,
    })
}

fn local(
    kind: Kind,
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    let now = eval(model, w, position, env)?;
    let witnesses = realizing(&outcomes(model, w, am, position, env)?, !now);
    let power = !witnesses.is_empty();
    Ok(PositionVerdict {
        kind,
        scope: Scope::Local,
        holds: matches!(kind, Kind::Power | Kind::Liability) == power,
        witnesses,
        current_truth: Some(now),
    })
}

/// Some executable action results in the position.
pub fn global_power(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    global(Kind::Power, model, w, am, position, env)
}

/// No executable action results in the position.
pub fn global_immunity(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    global(Kind::Immunity, model, w, am, position, env)
}

/// Correlative of global power; same truth condition.
pub fn liability(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    global(Kind::Liability, model, w, am, position, env)
}

/// Every executable action leaves the position false; same truth condition
/// as global immunity.
pub fn no_power(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    global(Kind::NoPower, model, w, am, position, env)
}

/// Some executable action flips the truth value of the position at `w`.
pub fn local_power(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    local(Kind::Power, model, w, am, position, env)
}

/// No executable action flips the truth value of the position at `w`.
pub fn local_immunity(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    local(Kind::Immunity, model, w, am, position, env)
}

/// Dispatches on kind and scope. Liability and no-power are global notions;
/// in the local scope they are read as local power and local immunity.
pub fn verdict(
    kind: Kind,
    scope: Scope,
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    position: &Formula,
    env: &ActionModelEnv,
) -> Result<PositionVerdict, EvalError> {
    match scope {
        Scope::Global => global(kind, model, w, am, position, env),
        Scope::Local => local(kind, model, w, am, position, env),
    }
}

/// Anderson–Kanger permissibility: `a` is executable and leads to a state
/// without violation.
pub fn permissible(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    a: &ActionId,
    violation: &AtomId,
) -> Result<bool, EvalError> {
    if model.val(violation).is_none() {
        return Err(EvalError::UnknownAtom(violation.clone()));
    }
    let env = ActionModelEnv::new().with(am.clone());
    let f = Formula::act_dia(
        am.name(),
        a.clone(),
        Formula::not(Formula::Atom(violation.clone())),
    );
    eval(model, w, &f, &env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::scenario::bundle;

    fn park() -> (PreferenceActionModel, DeonticActionModel) {
        let b = bundle("parking").unwrap();
        (
            b.model("park").unwrap().clone(),
            b.action_model("John").unwrap().clone(),
        )
    }

    fn t(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn global_power_over_preserved_claim() {
        let (m, john) = park();
        let env = ActionModelEnv::new();
        let v = global_power(&m, "w2", &john, &t("O i c (do i d / p)"), &env).unwrap();
        assert!(v.holds);
        assert_eq!(v.witnesses, vec![ActionId::new("a2")]);
        let im = global_immunity(&m, "w2", &john, &t("O i c (do i d / p)"), &env).unwrap();
        assert!(!im.holds);
    }

    #[test]
    fn immunity_over_fine_at_w4() {
        // only a2 runs at w4, and it sets f false: no claim to the fine
        let (m, john) = park();
        let env = ActionModelEnv::new();
        let v = global_immunity(&m, "w4", &john, &t("O i c (f / true)"), &env).unwrap();
        assert!(v.holds);
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn local_power_to_fine() {
        let (m, john) = park();
        let env = ActionModelEnv::new();
        let v = local_power(&m, "w1", &john, &t("O i c (f / true)"), &env).unwrap();
        assert!(v.holds);
        assert_eq!(v.witnesses, vec![ActionId::new("a1")]);
        assert_eq!(v.current_truth, Some(false));
    }

    #[test]
    fn local_immunity_regarding_display() {
        let (m, john) = park();
        let env = ActionModelEnv::new();
        let p = local_power(&m, "w1", &john, &t("O i c (do i d / true)"), &env).unwrap();
        assert!(!p.holds);
        let i = local_immunity(&m, "w1", &john, &t("O i c (do i d / true)"), &env).unwrap();
        assert!(i.holds);
    }

    #[test]
    fn nothing_executable_means_immunity() {
        let (m, _) = park();
        let mut am =
            DeonticActionModel::new("Nil", AgentId::new("i"), [ActionId::new("a")]).unwrap();
        am.set_pre(&ActionId::new("a"), Formula::Bot).unwrap();
        let env = ActionModelEnv::new();
        for f in ["p", "!p", "O i c (f / true)"] {
            let v = global_power(&m, "w1", &am, &t(f), &env).unwrap();
            assert!(!v.holds);
            assert!(global_immunity(&m, "w1", &am, &t(f), &env).unwrap().holds);
            assert!(local_immunity(&m, "w1", &am, &t(f), &env).unwrap().holds);
        }
    }

    #[test]
    fn permissibility() {
        let (m, _) = park();
        let mut am =
            DeonticActionModel::new("Ok", AgentId::new("i"), [ActionId::new("a")]).unwrap();
        am.set_post(&ActionId::new("a"), AtomId::new("f"), Formula::Bot)
            .unwrap();
        for w in ["w1", "w2", "w3", "w4"] {
            assert!(permissible(&m, w, &am, &ActionId::new("a"), &AtomId::new("f")).unwrap());
        }
        let (_, john) = park();
        // inexecutable at w2
        assert!(!permissible(&m, "w2", &john, &ActionId::new("a1"), &AtomId::new("f")).unwrap());
        assert_eq!(
            permissible(&m, "w2", &john, &ActionId::new("a1"), &AtomId::new("V")),
            Err(EvalError::UnknownAtom(AtomId::new("V")))
        );
    }

    #[test]
    fn verdict_serializes() {
        let (m, john) = park();
        let v = verdict(
            Kind::NoPower,
            Scope::Local,
            &m,
            "w1",
            &john,
            &t("f"),
            &ActionModelEnv::new(),
        )
        .unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["kind"], "noPower");
        assert_eq!(json["scope"], "local");
        assert_eq!(json["currentTruth"], false);
    }
}
