//! JSON file formats for models and action models.
//!
//! Model file:
//!
//! ```json
//! { "states": ["w1", "w2"], "agents": ["i", "c"],
//!   "pref": { "i->c": { "edges": [["w1", "w2"]], "closed": false } },
//!   "eq": { "i": { "blocks": [["w1"], ["w2"]] } },
//!   "val": { "p": ["w1"] } }
//! ```
//!
//! Preference edges are generators: unless `closed` is true the loader takes
//! their reflexive-transitive closure. Action-model files use the same
//! relation syntax under `rel` and carry formulas as strings.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::DeonticActionModel;
use crate::error::ModelError;
use crate::formula::{parse, ActionId, AgentId, AtomId, Formula, ParseError};
use crate::model::{PreferenceActionModel, ValidationReport};
use crate::relation::Relation;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in {context}: {source}")]
    Formula { context: String, source: ParseError },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("agent pair key `{0}` is not of the form `i->j`")]
    PairKey(String),
    #[error("unknown {kind} `{name}` in {context}")]
    Unknown {
        kind: &'static str,
        name: String,
        context: String,
    },
    #[error("structure violates its frame conditions:\n{0}")]
    Invalid(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlocksSpec {
    pub blocks: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub states: Vec<String>,
    #[serde(default)]
    pub agents: Vec<String>,
    #[serde(default)]
    pub pref: BTreeMap<String, RelationSpec>,
    #[serde(default)]
    pub eq: BTreeMap<String, BlocksSpec>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionModelFile {
    pub name: String,
    pub owner: String,
    pub actions: Vec<String>,
    #[serde(default)]
    pub rel: BTreeMap<String, RelationSpec>,
    #[serde(default)]
    pub pre: BTreeMap<String, String>,
    #[serde(default)]
    pub post: BTreeMap<String, BTreeMap<String, String>>,
}

fn split_pair(key: &str) -> Result<(AgentId, AgentId), LoadError> {
    match key.split_once("->") {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((AgentId::new(a.trim()), AgentId::new(b.trim())))
        }
        _ => Err(LoadError::PairKey(key.to_owned())),
    }
}

fn relation(
    spec: &RelationSpec,
    n: usize,
    lookup: impl Fn(&str) -> Option<usize>,
    context: &str,
) -> Result<Relation, LoadError> {
    let mut r = Relation::empty(n);
    for (a, b) in &spec.edges {
        let find = |s: &str| {
            lookup(s).ok_or_else(|| LoadError::Unknown {
                kind: "element",
                name: s.to_owned(),
                context: context.to_owned(),
            })
        };
        r.insert(find(a)?, find(b)?);
    }
    Ok(if spec.closed { r } else { r.closure() })
}

fn formula(text: &str, context: impl FnOnce() -> String) -> Result<Formula, LoadError> {
    parse(text).map_err(|source| LoadError::Formula {
        context: context(),
        source,
    })
}

impl ModelFile {
    pub fn into_model(self) -> Result<PreferenceActionModel, LoadError> {
        let mut m = PreferenceActionModel::new(
            self.states.iter().cloned(),
            self.agents.iter().map(|a| AgentId::new(a.as_str())),
        )?;
        let n = m.len();
        for (key, spec) in &self.pref {
            let (i, j) = split_pair(key)?;
            let r = relation(spec, n, |s| m.state_index(s), &format!("pref {key}"))?;
            m.set_pref(i, j, r)?;
        }
        for (agent, spec) in &self.eq {
            let agent = AgentId::new(agent.as_str());
            let mut blocks = Vec::new();
            let mut seen = BTreeSet::new();
            for block in &spec.blocks {
                let mut idx = Vec::new();
                for s in block {
                    let k = m.state_index(s).ok_or_else(|| LoadError::Unknown {
                        kind: "state",
                        name: s.clone(),
                        context: format!("eq {agent}"),
                    })?;
                    if !seen.insert(k) {
                        return Err(ModelError::NotAPartition {
                            agent,
                            reason: format!("`{s}` appears twice"),
                        }
                        .into());
                    }
                    idx.push(k);
                }
                blocks.push(idx);
            }
            if seen.len() != n {
                let missing = (0..n)
                    .find(|k| !seen.contains(k))
                    .expect("some state missing");
                return Err(ModelError::NotAPartition {
                    agent,
                    reason: format!("`{}` is in no block", m.state_name(missing)),
                }
                .into());
            }
            m.set_eq(
                agent,
                Relation::from_blocks(n, blocks.iter().map(Vec::as_slice)),
            )?;
        }
        for (atom, states) in &self.val {
            m.set_val(AtomId::new(atom.as_str()), states)?;
        }
        let report = m.validate();
        if !report.is_ok() {
            return Err(LoadError::Invalid(report));
        }
        Ok(m)
    }

    /// Writes relations in closed form so that reloading is exact.
    pub fn from_model(m: &PreferenceActionModel) -> Self {
        let name = |k: usize| m.state_name(k).to_owned();
        ModelFile {
            states: m.states().to_vec(),
            agents: m.agents().iter().map(ToString::to_string).collect(),
            pref: m
                .pref_entries()
                .map(|((i, j), r)| {
                    (
                        format!("{i}->{j}"),
                        RelationSpec {
                            edges: r.pairs().map(|(a, b)| (name(a), name(b))).collect(),
                            closed: true,
                        },
                    )
                })
                .collect(),
            eq: m
                .eq_entries()
                .map(|(i, r)| {
                    (
                        i.to_string(),
                        BlocksSpec {
                            blocks: r
                                .classes()
                                .into_iter()
                                .map(|c| c.into_iter().map(name).collect())
                                .collect(),
                        },
                    )
                })
                .collect(),
            val: m
                .val_entries()
                .map(|(p, bits)| {
                    (
                        p.to_string(),
                        bits.iter()
                            .enumerate()
                            .filter(|(_, b)| **b)
                            .map(|(k, _)| name(k))
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

impl ActionModelFile {
    pub fn into_action_model(self) -> Result<DeonticActionModel, LoadError> {
        let mut am = DeonticActionModel::new(
            self.name.clone(),
            AgentId::new(self.owner.as_str()),
            self.actions.iter().map(|a| ActionId::new(a.as_str())),
        )?;
        let n = am.len();
        for (key, spec) in &self.rel {
            let (i, j) = split_pair(key)?;
            let r = relation(
                spec,
                n,
                |s| am.action_index(&ActionId::new(s)),
                &format!("rel {key}"),
            )?;
            am.set_rel(i, j, r)?;
        }
        for (a, text) in &self.pre {
            let f = formula(text, || format!("pre of {a}"))?;
            am.set_pre(&ActionId::new(a.as_str()), f)?;
        }
        for (a, posts) in &self.post {
            for (p, text) in posts {
                let f = formula(text, || format!("post of {a} for {p}"))?;
                am.set_post(&ActionId::new(a.as_str()), AtomId::new(p.as_str()), f)?;
            }
        }
        let report = am.validate();
        if !report.is_ok() {
            return Err(LoadError::Invalid(report));
        }
        Ok(am)
    }

    pub fn from_action_model(am: &DeonticActionModel) -> Self {
        let name = |k: usize| am.actions()[k].to_string();
        ActionModelFile {
            name: am.name().to_owned(),
            owner: am.owner().to_string(),
            actions: am.actions().iter().map(ToString::to_string).collect(),
            rel: am
                .rel_entries()
                .map(|((i, j), r)| {
                    (
                        format!("{i}->{j}"),
                        RelationSpec {
                            edges: r.pairs().map(|(a, b)| (name(a), name(b))).collect(),
                            closed: true,
                        },
                    )
                })
                .collect(),
            pre: (0..am.len())
                .map(|k| (name(k), am.pre(k).to_string()))
                .collect(),
            post: (0..am.len())
                .filter(|&k| !am.post(k).is_empty())
                .map(|k| {
                    (
                        name(k),
                        am.post(k)
                            .iter()
                            .map(|(p, f)| (p.to_string(), f.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

pub fn model_from_json(text: &str) -> Result<PreferenceActionModel, LoadError> {
    serde_json::from_str::<ModelFile>(text)?.into_model()
}

pub fn model_to_json(m: &PreferenceActionModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("model file serializes")
}

pub fn action_model_from_json(text: &str) -> Result<DeonticActionModel, LoadError> {
    serde_json::from_str::<ActionModelFile>(text)?.into_action_model()
}

pub fn action_model_to_json(am: &DeonticActionModel) -> String {
    serde_json::to_string_pretty(&ActionModelFile::from_action_model(am))
        .expect("action model file serializes")
}

pub(crate) fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<PreferenceActionModel, LoadError> {
    model_from_json(&read(path)?)
}

pub fn load_action_model(path: &Path) -> Result<DeonticActionModel, LoadError> {
    action_model_from_json(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "states": ["w1", "w2", "w3"],
        "agents": ["i", "c"],
        "pref": { "i->c": { "edges": [["w1", "w2"], ["w2", "w3"]], "closed": false } },
        "eq": { "i": { "blocks": [["w1"], ["w2", "w3"]] } },
        "val": { "p": ["w1", "w2"] }
    }"#;

    #[test]
    fn generators_are_closed() {
        let m = model_from_json(SMALL).unwrap();
        let r = m.pref(&AgentId::new("i"), &AgentId::new("c"));
        assert!(r.contains(0, 2));
        assert!(r.contains(1, 1));
        assert!(m.eq(&AgentId::new("i")).unwrap().contains(1, 2));
    }

    #[test]
    fn closed_flag_keeps_edges_verbatim() {
        let text = SMALL.replace("\"closed\": false", "\"closed\": true");
        match model_from_json(&text) {
            Err(LoadError::Invalid(report)) => assert!(!report.is_ok()),
            other => panic!("expected invalid model, got {other:?}"),
        }
    }

    #[test]
    fn blocks_must_partition() {
        let text = SMALL.replace("[[\"w1\"], [\"w2\", \"w3\"]]", "[[\"w1\"], [\"w2\"]]");
        assert!(matches!(
            model_from_json(&text),
            Err(LoadError::Model(ModelError::NotAPartition { .. }))
        ));
        let text = SMALL.replace(
            "[[\"w1\"], [\"w2\", \"w3\"]]",
            "[[\"w1\", \"w2\"], [\"w2\", \"w3\"]]",
        );
        assert!(matches!(
            model_from_json(&text),
            Err(LoadError::Model(ModelError::NotAPartition { .. }))
        ));
    }

    #[test]
    fn dump_reload_is_identity() {
        let m = model_from_json(SMALL).unwrap();
        assert_eq!(model_from_json(&model_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(model_from_json("{"), Err(LoadError::Json(_))));
        let text = SMALL.replace("i->c", "ic");
        assert!(matches!(model_from_json(&text), Err(LoadError::PairKey(_))));
        let text = SMALL.replace("\"p\": [\"w1\", \"w2\"]", "\"p\": [\"w9\"]");
        assert!(model_from_json(&text).is_err());
    }

    #[test]
    fn action_model_formulas_are_parsed() {
        let text = r#"{ "name": "John", "owner": "john", "actions": ["a1","a2"],
            "rel": { "i->c": { "edges": [], "closed": false } },
            "pre": { "a1": "!d & p", "a2": "d | !p" },
            "post": { "a1": { "f": "true" }, "a2": { "f": "false" } } }"#;
        let am = action_model_from_json(text).unwrap();
        assert_eq!(am.pre(0), &parse("!d & p").unwrap());
        assert_eq!(am.post_of(1, &AtomId::new("f")), Formula::Bot);
        assert_eq!(am.post_of(1, &AtomId::new("d")), Formula::atom("d"));
        assert_eq!(
            action_model_from_json(&action_model_to_json(&am)).unwrap(),
            am
        );

        let bad = text.replace("!d & p", "!d &");
        assert!(matches!(
            action_model_from_json(&bad),
            Err(LoadError::Formula { .. })
        ));
    }
}
