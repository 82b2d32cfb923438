//! Lexicographic product update and the dynamic modality.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::action::{ActionModelEnv, DeonticActionModel};
use crate::error::EvalError;
use crate::eval::{eval, satisfying};
use crate::formula::{ActionId, Formula};
use crate::model::PreferenceActionModel;
use crate::relation::Relation;

/// Result of updating a model with an action model. States are the
/// executable `(world, action)` pairs, named `world*action`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdatedModel {
    pub model: PreferenceActionModel,
    /// For each state of `model`: the original state and the action.
    pub provenance: Vec<(String, ActionId)>,
}

impl UpdatedModel {
    pub fn origin(&self, state: &str) -> Option<(&str, &ActionId)> {
        let k = self.model.state_index(state)?;
        let (w, a) = &self.provenance[k];
        Some((w.as_str(), a))
    }

    /// Name of the pair `(w, a)` if it survived the update.
    pub fn pair(&self, w: &str, a: &ActionId) -> Option<&str> {
        self.provenance
            .iter()
            .position(|(w2, a2)| w2 == w && a2 == a)
            .map(|k| self.model.state_name(k))
    }
}

pub fn pair_name(w: &str, a: &ActionId) -> String {
    format!("{w}*{a}")
}

/// `M, w ⊨ Pre(a)`.
pub fn executable(
    model: &PreferenceActionModel,
    w: &str,
    am: &DeonticActionModel,
    a: &ActionId,
) -> Result<bool, EvalError> {
    let k = am.action_index(a).ok_or_else(|| EvalError::UnknownAction {
        model: am.name().to_owned(),
        action: a.clone(),
    })?;
    eval(model, w, am.pre(k), &ActionModelEnv::default())
}

/// `M ⊗ A`. Fails with [`EvalError::EmptyProduct`] when no action is
/// executable anywhere.
pub fn product(
    model: &PreferenceActionModel,
    am: &DeonticActionModel,
) -> Result<UpdatedModel, EvalError> {
    let (updated, _) = product_with_pre(model, am)?;
    updated.ok_or_else(|| EvalError::EmptyProduct(am.name().to_owned()))
}

type PreVectors = Vec<Vec<bool>>;

fn product_with_pre(
    model: &PreferenceActionModel,
    am: &DeonticActionModel,
) -> Result<(Option<UpdatedModel>, PreVectors), EvalError> {
    if !am.is_static() {
        return Err(EvalError::NonStaticActionModel(am.name().to_owned()));
    }
    for (from, to) in am.rel_entries().map(|(k, _)| k) {
        for ag in [from, to] {
            if !model.has_agent(ag) {
                return Err(EvalError::ActionModelAgent {
                    model: am.name().to_owned(),
                    agent: ag.clone(),
                });
            }
        }
    }
    let empty = ActionModelEnv::default();
    let pre: PreVectors = (0..am.len())
        .map(|k| satisfying(model, am.pre(k), &empty))
        .collect::<Result<_, _>>()?;

    let pairs: Vec<(usize, usize)> = (0..model.len())
        .flat_map(|w| (0..am.len()).map(move |a| (w, a)))
        .filter(|&(w, a)| pre[a][w])
        .collect();
    if pairs.is_empty() {
        return Ok((None, pre));
    }
    let names: Vec<String> = pairs
        .iter()
        .map(|&(w, a)| pair_name(model.state_name(w), &am.actions()[a]))
        .collect();
    let mut out = PreferenceActionModel::new(names, model.agents().iter().cloned())
        .expect("pair names are distinct because action ids contain no `*`");
    let m = pairs.len();

    for from in model.agents() {
        for to in model.agents() {
            let acts = am.rel(from, to);
            let states = model.pref(from, to);
            let mut r = Relation::empty(m);
            for (x, &(w, a)) in pairs.iter().enumerate() {
                for (y, &(w2, a2)) in pairs.iter().enumerate() {
                    // priority to the action order; the state order only
                    // breaks ties between equally effective actions
                    if acts.strict(a, a2) || (acts.equiv(a, a2) && states.contains(w, w2)) {
                        r.insert(x, y);
                    }
                }
            }
            out.set_pref(from.clone(), to.clone(), r)
                .expect("agents and size match");
        }
    }

    for (agent, eq) in model.eq_entries() {
        let r = Relation::from_pairs(
            m,
            (0..m)
                .flat_map(|x| (0..m).map(move |y| (x, y)))
                .filter(|&(x, y)| eq.contains(pairs[x].0, pairs[y].0)),
        );
        out.set_eq(agent.clone(), r).expect("agent and size match");
    }

    for k in 0..am.len() {
        if let Some(p) = am.post(k).keys().find(|p| model.val(p).is_none()) {
            return Err(EvalError::UnknownAtom(p.clone()));
        }
    }
    let mut post_cache: HashMap<(usize, &Formula), Vec<bool>> = HashMap::new();
    let mut vals = Vec::new();
    for (atom, _) in model.val_entries() {
        let mut bits = Vec::with_capacity(m);
        for &(w, a) in &pairs {
            let b = match am.post(a).get(atom) {
                None => model.val(atom).expect("atom is in the model")[w],
                Some(f) => {
                    let bits = match post_cache.entry((a, f)) {
                        Entry::Occupied(e) => e.into_mut(),
                        Entry::Vacant(e) => e.insert(satisfying(model, f, &empty)?),
                    };
                    bits[w]
                }
            };
            bits.push(b);
        }
        vals.push((atom.clone(), bits));
    }
    for (atom, bits) in vals {
        out.set_val_bits(atom, bits).expect("valid atom and size");
    }

    let provenance = pairs
        .iter()
        .map(|&(w, a)| (model.state_name(w).to_owned(), am.actions()[a].clone()))
        .collect();
    Ok((
        Some(UpdatedModel {
            model: out,
            provenance,
        }),
        pre,
    ))
}

/// Truth vector of `[act name action] body` over `model`.
pub(crate) fn act_box_vector(
    model: &PreferenceActionModel,
    env: &ActionModelEnv,
    name: &str,
    action: &ActionId,
    body: &Formula,
) -> Result<Vec<bool>, EvalError> {
    let am = env.get(name)?;
    let a = am
        .action_index(action)
        .ok_or_else(|| EvalError::UnknownAction {
            model: name.to_owned(),
            action: action.clone(),
        })?;
    let (updated, pre) = product_with_pre(model, am)?;
    let Some(updated) = updated else {
        return Ok(vec![true; model.len()]);
    };
    let after = satisfying(&updated.model, body, env)?;
    let mut out = vec![true; model.len()];
    for (x, (w, b)) in updated.provenance.iter().enumerate() {
        if b == action {
            let w = model
                .state_index(w)
                .expect("provenance names original states");
            debug_assert!(pre[a][w]);
            out[w] = after[x];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, AgentId, AtomId};

    fn ag(s: &str) -> AgentId {
        AgentId::new(s)
    }

    fn two_state() -> PreferenceActionModel {
        let mut m = PreferenceActionModel::new(["u", "v"], [ag("i"), ag("j")]).unwrap();
        m.set_pref(
            ag("i"),
            ag("j"),
            Relation::from_pairs(2, [(0, 1)]).closure(),
        )
        .unwrap();
        m.set_eq(ag("i"), Relation::identity(2)).unwrap();
        m.set_val(AtomId::new("p"), ["u"]).unwrap();
        m
    }

    #[test]
    fn identity_update_reproduces_the_model() {
        let m = two_state();
        let am = DeonticActionModel::new("Id", ag("i"), [ActionId::new("a")]).unwrap();
        let u = product(&m, &am).unwrap();
        assert_eq!(u.model.states(), ["u*a", "v*a"]);
        assert!(u.model.validate().is_ok());
        for i in m.agents() {
            for j in m.agents() {
                assert_eq!(*u.model.pref(i, j), *m.pref(i, j));
            }
        }
        assert_eq!(u.model.val(&AtomId::new("p")).unwrap(), &[true, false]);
        assert_eq!(u.origin("v*a"), Some(("v", &ActionId::new("a"))));
        assert_eq!(u.pair("u", &ActionId::new("a")), Some("u*a"));
    }

    #[test]
    fn nothing_executable() {
        let m = two_state();
        let mut am = DeonticActionModel::new("No", ag("i"), [ActionId::new("a")]).unwrap();
        am.set_pre(&ActionId::new("a"), Formula::Bot).unwrap();
        assert_eq!(product(&m, &am), Err(EvalError::EmptyProduct("No".into())));
        // the box is vacuous, the diamond false
        let env = ActionModelEnv::new().with(am);
        assert!(eval(&m, "u", &parse("[act No a] false").unwrap(), &env).unwrap());
        assert!(!eval(&m, "u", &parse("<act No a> true").unwrap(), &env).unwrap());
    }

    #[test]
    fn strict_action_order_connects_unrelated_states() {
        let m = two_state();
        let mut am =
            DeonticActionModel::new("S", ag("i"), [ActionId::new("lo"), ActionId::new("hi")])
                .unwrap();
        am.set_rel(
            ag("i"),
            ag("j"),
            Relation::from_pairs(2, [(0, 1)]).closure(),
        )
        .unwrap();
        am.set_pre(&ActionId::new("lo"), parse("!p").unwrap())
            .unwrap();
        am.set_pre(&ActionId::new("hi"), parse("p").unwrap())
            .unwrap();
        let u = product(&m, &am).unwrap();
        // v*lo sits below u*hi although v is above u in the original order
        let (x, y) = (
            u.model.state_index("v*lo").unwrap(),
            u.model.state_index("u*hi").unwrap(),
        );
        let r = u.model.pref(&ag("i"), &ag("j"));
        assert!(r.strict(x, y));
    }

    #[test]
    fn post_with_unknown_atom_is_rejected() {
        let m = two_state();
        let mut am = DeonticActionModel::new("P", ag("i"), [ActionId::new("a")]).unwrap();
        am.set_post(&ActionId::new("a"), AtomId::new("zz"), Formula::Top)
            .unwrap();
        assert_eq!(
            product(&m, &am),
            Err(EvalError::UnknownAtom(AtomId::new("zz")))
        );
    }

    #[test]
    fn executable_checks_precondition() {
        let m = two_state();
        let mut am = DeonticActionModel::new("E", ag("i"), [ActionId::new("a")]).unwrap();
        am.set_pre(&ActionId::new("a"), parse("p").unwrap())
            .unwrap();
        assert!(executable(&m, "u", &am, &ActionId::new("a")).unwrap());
        assert!(!executable(&m, "v", &am, &ActionId::new("a")).unwrap());
        assert!(executable(&m, "v", &am, &ActionId::new("b")).is_err());
    }
}
