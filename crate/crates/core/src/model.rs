//! Preference-action models and their frame conditions.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::ModelError;
use crate::formula::{is_atom_name, is_token, AgentId, AtomId};
use crate::relation::Relation;

/// Finite states with one ideality preorder per ordered agent pair, one
/// equivalence per agent and a valuation.
///
/// Agent pairs without a declared preorder are read as the identity
/// relation. Agents without a declared equivalence cannot be used with
/// `do`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceActionModel {
    states: Vec<String>,
    index: HashMap<String, usize>,
    agents: Vec<AgentId>,
    pref: BTreeMap<(AgentId, AgentId), Relation>,
    eq: BTreeMap<AgentId, Relation>,
    val: BTreeMap<AtomId, Vec<bool>>,
}

/// State names are tokens; `*` is allowed so that update results can be
/// written out and read back.
pub fn is_state_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '*')
}

impl PreferenceActionModel {
    pub fn new<S: Into<String>>(
        states: impl IntoIterator<Item = S>,
        agents: impl IntoIterator<Item = AgentId>,
    ) -> Result<Self, ModelError> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        let mut index = HashMap::new();
        for (k, s) in states.iter().enumerate() {
            if !is_state_name(s) {
                return Err(ModelError::InvalidName {
                    kind: "state",
                    name: s.clone(),
                });
            }
            if index.insert(s.clone(), k).is_some() {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        let mut seen = Vec::<AgentId>::new();
        for a in agents {
            if !is_token(a.as_str()) {
                return Err(ModelError::InvalidName {
                    kind: "agent",
                    name: a.to_string(),
                });
            }
            if seen.contains(&a) {
                return Err(ModelError::DuplicateAgent(a));
            }
            seen.push(a);
        }
        Ok(PreferenceActionModel {
            states,
            index,
            agents: seen,
            pref: BTreeMap::new(),
            eq: BTreeMap::new(),
            val: BTreeMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn state_name(&self, k: usize) -> &str {
        &self.states[k]
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn has_agent(&self, a: &AgentId) -> bool {
        self.agents.contains(a)
    }

    fn check_agent(&self, a: &AgentId) -> Result<(), ModelError> {
        if self.has_agent(a) {
            Ok(())
        } else {
            Err(ModelError::UnknownAgent(a.clone()))
        }
    }

    fn check_size(&self, r: &Relation) -> Result<(), ModelError> {
        if r.universe() == self.len() {
            Ok(())
        } else {
            Err(ModelError::SizeMismatch {
                expected: self.len(),
                got: r.universe(),
            })
        }
    }

    pub fn set_pref(&mut self, from: AgentId, to: AgentId, r: Relation) -> Result<(), ModelError> {
        self.check_agent(&from)?;
        self.check_agent(&to)?;
        self.check_size(&r)?;
        self.pref.insert((from, to), r);
        Ok(())
    }

    pub fn set_eq(&mut self, agent: AgentId, r: Relation) -> Result<(), ModelError> {
        self.check_agent(&agent)?;
        self.check_size(&r)?;
        self.eq.insert(agent, r);
        Ok(())
    }

    pub fn set_val_bits(&mut self, atom: AtomId, bits: Vec<bool>) -> Result<(), ModelError> {
        if !is_atom_name(atom.as_str()) {
            return Err(ModelError::InvalidName {
                kind: "atom",
                name: atom.to_string(),
            });
        }
        if bits.len() != self.len() {
            return Err(ModelError::SizeMismatch {
                expected: self.len(),
                got: bits.len(),
            });
        }
        self.val.insert(atom, bits);
        Ok(())
    }

    /// Sets the truth set of `atom` by state name.
    pub fn set_val<S: AsRef<str>>(
        &mut self,
        atom: AtomId,
        states: impl IntoIterator<Item = S>,
    ) -> Result<(), ModelError> {
        let mut bits = vec![false; self.len()];
        for s in states {
            let k = self
                .state_index(s.as_ref())
                .ok_or_else(|| ModelError::UnknownState(s.as_ref().to_owned()))?;
            bits[k] = true;
        }
        self.set_val_bits(atom, bits)
    }

    /// Declared preorder for `from -> to`, if any.
    pub fn declared_pref(&self, from: &AgentId, to: &AgentId) -> Option<&Relation> {
        self.pref.get(&(from.clone(), to.clone()))
    }

    /// The preorder for `from -> to`, defaulting to the identity.
    pub fn pref(&self, from: &AgentId, to: &AgentId) -> Cow<'_, Relation> {
        match self.declared_pref(from, to) {
            Some(r) => Cow::Borrowed(r),
            None => Cow::Owned(Relation::identity(self.len())),
        }
    }

    pub fn pref_entries(&self) -> impl Iterator<Item = (&(AgentId, AgentId), &Relation)> {
        self.pref.iter()
    }

    pub fn eq(&self, agent: &AgentId) -> Option<&Relation> {
        self.eq.get(agent)
    }

    pub fn eq_entries(&self) -> impl Iterator<Item = (&AgentId, &Relation)> {
        self.eq.iter()
    }

    pub fn val(&self, atom: &AtomId) -> Option<&[bool]> {
        self.val.get(atom).map(Vec::as_slice)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &AtomId> {
        self.val.keys()
    }

    pub fn val_entries(&self) -> impl Iterator<Item = (&AtomId, &Vec<bool>)> {
        self.val.iter()
    }

    /// Checks every frame condition and collects all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let name = |k: usize| self.states[k].clone();
        for ((i, j), r) in &self.pref {
            let rel = format!("pref {i}->{j}");
            check_preorder(&mut report, &rel, r, name);
        }
        for (i, r) in &self.eq {
            let rel = format!("eq {i}");
            check_preorder(&mut report, &rel, r, name);
            if let Some((a, b)) = r.symmetry_failure() {
                report.push(&rel, Property::Symmetry, vec![name(a), name(b)]);
            }
        }
        for (p, bits) in &self.val {
            if bits.len() != self.len() {
                report.push(&format!("val {p}"), Property::Containment, vec![]);
            }
        }
        report
    }
}

pub(crate) fn check_preorder(
    report: &mut ValidationReport,
    rel: &str,
    r: &Relation,
    name: impl Fn(usize) -> String,
) {
    if let Some(a) = r.reflexivity_failure() {
        report.push(rel, Property::Reflexivity, vec![name(a)]);
    }
    if let Some((a, b, c)) = r.transitivity_failure() {
        report.push(rel, Property::Transitivity, vec![name(a), name(b), name(c)]);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Reflexivity,
    Transitivity,
    Symmetry,
    Containment,
    Staticness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: String,
    pub property: Property,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {:?} fails at ({})",
            self.relation,
            self.property,
            self.witness.join(", ")
        )
    }
}

/// Frame-condition failures. Empty iff the structure is well formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, relation: &str, property: Property, witness: Vec<String>) {
        self.violations.push(Violation {
            relation: relation.to_owned(),
            property,
            witness,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ag(s: &str) -> AgentId {
        AgentId::new(s)
    }

    #[test]
    fn one_point_model_is_valid() {
        let mut m = PreferenceActionModel::new(["w"], [ag("i")]).unwrap();
        m.set_pref(ag("i"), ag("i"), Relation::identity(1)).unwrap();
        m.set_eq(ag("i"), Relation::identity(1)).unwrap();
        assert!(m.validate().is_ok());
    }

    #[test]
    fn missing_loop_is_reported() {
        let mut m = PreferenceActionModel::new(["w1", "w2"], [ag("i"), ag("c")]).unwrap();
        m.set_pref(ag("i"), ag("c"), Relation::from_pairs(2, [(0, 0), (0, 1)]))
            .unwrap();
        let report = m.validate();
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.property, Property::Reflexivity);
        assert_eq!(v.witness, vec!["w2"]);
        assert_eq!(v.relation, "pref i->c");
    }

    #[test]
    fn asymmetric_eq_is_reported() {
        let mut m = PreferenceActionModel::new(["a", "b"], [ag("i")]).unwrap();
        m.set_eq(ag("i"), Relation::from_pairs(2, [(0, 0), (1, 1), (0, 1)]))
            .unwrap();
        let r = m.validate();
        assert_eq!(r.violations[0].property, Property::Symmetry);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            PreferenceActionModel::new(Vec::<String>::new(), []).unwrap_err(),
            ModelError::NoStates
        );
        assert!(matches!(
            PreferenceActionModel::new(["w", "w"], []),
            Err(ModelError::DuplicateState(_))
        ));
        let mut m = PreferenceActionModel::new(["w"], [ag("i")]).unwrap();
        assert!(matches!(
            m.set_pref(ag("i"), ag("x"), Relation::identity(1)),
            Err(ModelError::UnknownAgent(_))
        ));
        assert!(matches!(
            m.set_val(AtomId::new("p"), ["v"]),
            Err(ModelError::UnknownState(_))
        ));
        assert!(matches!(
            m.set_eq(ag("i"), Relation::identity(2)),
            Err(ModelError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn undeclared_pairs_default_to_identity() {
        let m = PreferenceActionModel::new(["a", "b"], [ag("i"), ag("j")]).unwrap();
        assert!(m.pref(&ag("j"), &ag("i")).is_identity());
    }
}
