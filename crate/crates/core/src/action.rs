//! Deontic action models.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use crate::error::{EvalError, ModelError};
use crate::formula::{is_atom_name, is_token, ActionId, AgentId, AtomId, Formula};
use crate::model::{check_preorder, Property, ValidationReport};
use crate::relation::Relation;

/// Actions with preconditions, postconditions and one effectivity preorder
/// per agent pair.
///
/// Agent pairs with no declared preorder are read as the total preorder,
/// i.e. all actions are equally effective and the update leaves that
/// pair's ideality ordering alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeonticActionModel {
    name: String,
    owner: AgentId,
    actions: Vec<ActionId>,
    index: HashMap<ActionId, usize>,
    rel: BTreeMap<(AgentId, AgentId), Relation>,
    pre: Vec<Formula>,
    post: Vec<BTreeMap<AtomId, Formula>>,
}

impl DeonticActionModel {
    /// Action ids are tokens; `*` is reserved for update state names.
    pub fn new(
        name: impl Into<String>,
        owner: AgentId,
        actions: impl IntoIterator<Item = ActionId>,
    ) -> Result<Self, ModelError> {
        let name = name.into();
        if !is_token(&name) {
            return Err(ModelError::InvalidName {
                kind: "action model",
                name,
            });
        }
        let actions: Vec<ActionId> = actions.into_iter().collect();
        if actions.is_empty() {
            return Err(ModelError::NoActions);
        }
        let mut index = HashMap::new();
        for (k, a) in actions.iter().enumerate() {
            if !is_token(a.as_str()) {
                return Err(ModelError::InvalidName {
                    kind: "action",
                    name: a.to_string(),
                });
            }
            if index.insert(a.clone(), k).is_some() {
                return Err(ModelError::DuplicateAction(a.clone()));
            }
        }
        let n = actions.len();
        Ok(DeonticActionModel {
            name,
            owner,
            actions,
            index,
            rel: BTreeMap::new(),
            pre: vec![Formula::Top; n],
            post: vec![BTreeMap::new(); n],
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn owner(&self) -> &AgentId {
        &self.owner
    }

    pub fn actions(&self) -> &[ActionId] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn action_index(&self, a: &ActionId) -> Option<usize> {
        self.index.get(a).copied()
    }

    fn idx(&self, a: &ActionId) -> Result<usize, ModelError> {
        self.action_index(a)
            .ok_or_else(|| ModelError::UnknownAction(a.clone()))
    }

    pub fn set_rel(&mut self, from: AgentId, to: AgentId, r: Relation) -> Result<(), ModelError> {
        if r.universe() != self.len() {
            return Err(ModelError::SizeMismatch {
                expected: self.len(),
                got: r.universe(),
            });
        }
        self.rel.insert((from, to), r);
        Ok(())
    }

    pub fn set_pre(&mut self, a: &ActionId, f: Formula) -> Result<(), ModelError> {
        let k = self.idx(a)?;
        self.pre[k] = f;
        Ok(())
    }

    pub fn set_post(&mut self, a: &ActionId, atom: AtomId, f: Formula) -> Result<(), ModelError> {
        if !is_atom_name(atom.as_str()) {
            return Err(ModelError::InvalidName {
                kind: "atom",
                name: atom.to_string(),
            });
        }
        let k = self.idx(a)?;
        self.post[k].insert(atom, f);
        Ok(())
    }

    pub fn pre(&self, k: usize) -> &Formula {
        &self.pre[k]
    }

    /// Explicit postconditions of action `k`; unlisted atoms keep their value.
    pub fn post(&self, k: usize) -> &BTreeMap<AtomId, Formula> {
        &self.post[k]
    }

    /// `Post(a)(p)`, with the identity default.
    pub fn post_of(&self, k: usize, atom: &AtomId) -> Formula {
        self.post[k]
            .get(atom)
            .cloned()
            .unwrap_or_else(|| Formula::Atom(atom.clone()))
    }

    pub fn declared_rel(&self, from: &AgentId, to: &AgentId) -> Option<&Relation> {
        self.rel.get(&(from.clone(), to.clone()))
    }

    pub fn rel_entries(&self) -> impl Iterator<Item = (&(AgentId, AgentId), &Relation)> {
        self.rel.iter()
    }

    /// Effectivity preorder for `from -> to`, total when undeclared.
    pub fn rel(&self, from: &AgentId, to: &AgentId) -> Cow<'_, Relation> {
        match self.declared_rel(from, to) {
            Some(r) => Cow::Borrowed(r),
            None => Cow::Owned(Relation::total(self.len())),
        }
    }

    /// `a < b` for the pair `from -> to`.
    pub fn strict(
        &self,
        from: &AgentId,
        to: &AgentId,
        a: &ActionId,
        b: &ActionId,
    ) -> Result<bool, ModelError> {
        let (a, b) = (self.idx(a)?, self.idx(b)?);
        Ok(self.rel(from, to).strict(a, b))
    }

    /// `a ≅ b` for the pair `from -> to`.
    pub fn equiv(
        &self,
        from: &AgentId,
        to: &AgentId,
        a: &ActionId,
        b: &ActionId,
    ) -> Result<bool, ModelError> {
        let (a, b) = (self.idx(a)?, self.idx(b)?);
        Ok(self.rel(from, to).equiv(a, b))
    }

    /// True when every pre- and postcondition is static.
    pub fn is_static(&self) -> bool {
        self.pre.iter().all(Formula::is_static)
            && self
                .post
                .iter()
                .flat_map(|m| m.values())
                .all(Formula::is_static)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let name = |k: usize| self.actions[k].to_string();
        for ((i, j), r) in &self.rel {
            check_preorder(&mut report, &format!("rel {i}->{j}"), r, name);
        }
        for (k, a) in self.actions.iter().enumerate() {
            if !self.pre[k].is_static() {
                report.push(
                    &format!("pre {a}"),
                    Property::Staticness,
                    vec![a.to_string()],
                );
            }
            for (p, f) in &self.post[k] {
                if !f.is_static() {
                    report.push(
                        &format!("post {a} {p}"),
                        Property::Staticness,
                        vec![a.to_string()],
                    );
                }
            }
        }
        report
    }
}

/// Action models addressable by name from `[act NAME a]` formulas.
#[derive(Clone, Debug, Default)]
pub struct ActionModelEnv {
    models: BTreeMap<String, DeonticActionModel>,
}

impl ActionModelEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a model; a name can only be bound once.
    pub fn insert(&mut self, model: DeonticActionModel) -> Result<(), String> {
        if self.models.contains_key(model.name()) {
            return Err(model.name().to_owned());
        }
        self.models.insert(model.name().to_owned(), model);
        Ok(())
    }

    pub fn with(mut self, model: DeonticActionModel) -> Self {
        self.models.insert(model.name().to_owned(), model);
        self
    }

    pub fn get(&self, name: &str) -> Result<&DeonticActionModel, EvalError> {
        self.models
            .get(name)
            .ok_or_else(|| EvalError::UnknownActionModel(name.to_owned()))
    }

    pub fn models(&self) -> impl Iterator<Item = &DeonticActionModel> {
        self.models.values()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }
}

impl FromIterator<DeonticActionModel> for ActionModelEnv {
    fn from_iter<T: IntoIterator<Item = DeonticActionModel>>(iter: T) -> Self {
        iter.into_iter().fold(Self::new(), Self::with)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn ag(s: &str) -> AgentId {
        AgentId::new(s)
    }

    fn ids(xs: &[&str]) -> Vec<ActionId> {
        xs.iter().map(|s| ActionId::new(*s)).collect()
    }

    #[test]
    fn chain_is_strict() {
        let mut a = DeonticActionModel::new("C", ag("j"), ids(&["a1", "a2", "a3"])).unwrap();
        a.set_rel(
            ag("i"),
            ag("k"),
            Relation::from_pairs(3, [(0, 1), (1, 2)]).closure(),
        )
        .unwrap();
        let (a1, a2, a3) = (
            ActionId::new("a1"),
            ActionId::new("a2"),
            ActionId::new("a3"),
        );
        assert!(a.strict(&ag("i"), &ag("k"), &a1, &a2).unwrap());
        assert!(a.strict(&ag("i"), &ag("k"), &a1, &a3).unwrap());
        assert!(!a.strict(&ag("i"), &ag("k"), &a2, &a1).unwrap());
        assert!(a.equiv(&ag("i"), &ag("k"), &a2, &a2).unwrap());
        // undeclared pair: everything equivalent
        assert!(a.equiv(&ag("k"), &ag("i"), &a1, &a3).unwrap());
        assert!(a
            .strict(&ag("i"), &ag("k"), &a1, &ActionId::new("zz"))
            .is_err());
    }

    #[test]
    fn dynamic_precondition_is_reported() {
        let mut a = DeonticActionModel::new("A", ag("i"), ids(&["a"])).unwrap();
        a.set_pre(&ActionId::new("a"), parse("[act A a] p").unwrap())
            .unwrap();
        let r = a.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].property, Property::Staticness);
    }

    #[test]
    fn missing_loop_is_reported() {
        let mut a = DeonticActionModel::new("A", ag("i"), ids(&["a1", "a2"])).unwrap();
        a.set_rel(ag("i"), ag("c"), Relation::from_pairs(2, [(1, 1)]))
            .unwrap();
        let r = a.validate();
        assert_eq!(r.violations[0].property, Property::Reflexivity);
        assert_eq!(r.violations[0].witness, vec!["a1"]);
    }

    #[test]
    fn star_is_reserved_in_action_ids() {
        assert!(DeonticActionModel::new("A", ag("i"), ids(&["a*b"])).is_err());
        assert!(DeonticActionModel::new("A", ag("i"), ids(&[])).is_err());
        assert!(DeonticActionModel::new("A", ag("i"), ids(&["a", "a"])).is_err());
    }
}
