//! Bundled worked examples and a runner for their checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::{ActionModelEnv, DeonticActionModel};
use crate::eval::{satisfying, truth_set};
use crate::formula::{parse, AgentId};
use crate::io::{ActionModelFile, LoadError, ModelFile};
use crate::iso::isomorphic;
use crate::model::PreferenceActionModel;
use crate::update::product;

const PARKING: &str = include_str!("../fixtures/parking.json");
const CONTRACT: &str = include_str!("../fixtures/contract.json");

pub const SCENARIOS: &[&str] = &["parking", "contract"];

/// A base model followed by a sequence of updates, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelRef {
    pub base: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub updates: Vec<String>,
}

impl std::fmt::Display for ModelRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.base)?;
        for u in &self.updates {
            write!(f, " x {u}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum Check {
    /// Truth of a formula at one state, or at every state when `state` is `*`.
    Formula {
        name: String,
        model: ModelRef,
        state: String,
        formula: String,
        expected: bool,
        note: String,
    },
    TruthSet {
        name: String,
        model: ModelRef,
        formula: String,
        expected: Vec<String>,
        note: String,
    },
    /// Exact edge set of one ideality preorder.
    Relation {
        name: String,
        model: ModelRef,
        pair: String,
        expected: Vec<(String, String)>,
        note: String,
    },
    Isomorphic {
        name: String,
        left: ModelRef,
        right: ModelRef,
        expected: bool,
        note: String,
    },
    Valid {
        name: String,
        model: ModelRef,
        note: String,
    },
}

impl Check {
    pub fn name(&self) -> &str {
        match self {
            Check::Formula { name, .. }
            | Check::TruthSet { name, .. }
            | Check::Relation { name, .. }
            | Check::Isomorphic { name, .. }
            | Check::Valid { name, .. } => name,
        }
    }

    pub fn note(&self) -> &str {
        match self {
            Check::Formula { note, .. }
            | Check::TruthSet { note, .. }
            | Check::Relation { note, .. }
            | Check::Isomorphic { note, .. }
            | Check::Valid { note, .. } => note,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BundleFile {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub models: BTreeMap<String, ModelFile>,
    #[serde(default)]
    pub action_models: BTreeMap<String, ActionModelFile>,
    #[serde(default)]
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct ScenarioBundle {
    pub name: String,
    pub description: String,
    pub models: BTreeMap<String, PreferenceActionModel>,
    pub env: ActionModelEnv,
    pub checks: Vec<Check>,
}

impl ScenarioBundle {
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        let file: BundleFile = serde_json::from_str(text)?;
        let mut models = BTreeMap::new();
        for (name, m) in file.models {
            models.insert(name, m.into_model()?);
        }
        let mut env = ActionModelEnv::new();
        for (_, am) in file.action_models {
            let am = am.into_action_model()?;
            let name = am.name().to_owned();
            env.insert(am).map_err(|_| LoadError::Unknown {
                kind: "duplicate action model",
                name,
                context: "bundle".into(),
            })?;
        }
        Ok(ScenarioBundle {
            name: file.name,
            description: file.description,
            models,
            env,
            checks: file.checks,
        })
    }

    pub fn model(&self, name: &str) -> Option<&PreferenceActionModel> {
        self.models.get(name)
    }

    pub fn action_model(&self, name: &str) -> Option<&DeonticActionModel> {
        self.env.get(name).ok()
    }

    /// Builds the model a [`ModelRef`] names.
    pub fn resolve(&self, r: &ModelRef) -> Result<PreferenceActionModel, String> {
        let mut m = self
            .models
            .get(&r.base)
            .cloned()
            .ok_or_else(|| format!("unknown model `{}`", r.base))?;
        for u in &r.updates {
            let am = self.env.get(u).map_err(|e| e.to_string())?;
            m = product(&m, am).map_err(|e| e.to_string())?.model;
        }
        Ok(m)
    }
}

/// A bundled scenario by name.
pub fn bundle(name: &str) -> Option<ScenarioBundle> {
    let text = match name {
        "parking" => PARKING,
        "contract" => CONTRACT,
        _ => return None,
    };
    Some(ScenarioBundle::from_json(text).expect("bundled fixtures are well formed"))
}

pub fn bundle_json(name: &str) -> Option<&'static str> {
    match name {
        "parking" => Some(PARKING),
        "contract" => Some(CONTRACT),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub outcomes: Vec<CheckOutcome>,
}

impl ScenarioReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

impl std::fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for o in &self.outcomes {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {}: {}", o.name, o.detail)?;
        }
        let passed = self.outcomes.iter().filter(|o| o.passed).count();
        write!(
            f,
            "{}: {passed}/{} checks passed",
            self.scenario,
            self.outcomes.len()
        )
    }
}

fn run_check(bundle: &ScenarioBundle, check: &Check) -> Result<(bool, String), String> {
    match check {
        Check::Formula {
            model,
            state,
            formula,
            expected,
            ..
        } => {
            let m = bundle.resolve(model)?;
            let f = parse(formula).map_err(|e| e.to_string())?;
            let bits = satisfying(&m, &f, &bundle.env).map_err(|e| e.to_string())?;
            let states: Vec<usize> = if state == "*" {
                (0..m.len()).collect()
            } else {
                vec![m
                    .state_index(state)
                    .ok_or_else(|| format!("unknown state `{state}`"))?]
            };
            let wrong: Vec<&str> = states
                .iter()
                .filter(|&&k| bits[k] != *expected)
                .map(|&k| m.state_name(k))
                .collect();
            let detail = if wrong.is_empty() {
                format!("{expected} at {state}")
            } else {
                format!(
                    "expected {expected}, got {} at {}",
                    !expected,
                    wrong.join(", ")
                )
            };
            Ok((wrong.is_empty(), detail))
        }
        Check::TruthSet {
            model,
            formula,
            expected,
            ..
        } => {
            let m = bundle.resolve(model)?;
            let f = parse(formula).map_err(|e| e.to_string())?;
            let got = truth_set(&m, &f, &bundle.env).map_err(|e| e.to_string())?;
            let got_set: BTreeSet<&String> = got.iter().collect();
            let ok = got_set == expected.iter().collect();
            Ok((ok, format!("{{{}}}", got.join(", "))))
        }
        Check::Relation {
            model,
            pair,
            expected,
            ..
        } => {
            let m = bundle.resolve(model)?;
            let (i, j) = pair
                .split_once("->")
                .ok_or_else(|| format!("bad agent pair `{pair}`"))?;
            let r = m.pref(&AgentId::new(i), &AgentId::new(j));
            let got: BTreeSet<(String, String)> = r
                .pairs()
                .map(|(a, b)| (m.state_name(a).to_owned(), m.state_name(b).to_owned()))
                .collect();
            let want: BTreeSet<(String, String)> = expected.iter().cloned().collect();
            let missing = want.difference(&got).count();
            let extra = got.difference(&want).count();
            Ok((
                missing == 0 && extra == 0,
                format!(
                    "{} pairs ({missing} missing, {extra} unexpected)",
                    got.len()
                ),
            ))
        }
        Check::Isomorphic {
            left,
            right,
            expected,
            ..
        } => {
            let (l, r) = (bundle.resolve(left)?, bundle.resolve(right)?);
            let w = isomorphic(&l, &r).map_err(|e| e.to_string())?;
            let verified = w.as_ref().is_some_and(|w| w.verify(&l, &r));
            let detail = match &w {
                Some(w) => w
                    .mapping
                    .iter()
                    .map(|(a, b)| format!("{a}->{b}"))
                    .collect::<Vec<_>>()
                    .join(", "),
                None => "not isomorphic".into(),
            };
            Ok((verified == *expected, detail))
        }
        Check::Valid { model, .. } => {
            let m = bundle.resolve(model)?;
            let report = m.validate();
            Ok((
                report.is_ok(),
                format!("{} violations", report.violations.len()),
            ))
        }
    }
}

/// Runs every check of the bundle. Checks that cannot be evaluated count
/// as failures.
pub fn run_scenario(bundle: &ScenarioBundle) -> ScenarioReport {
    let outcomes = bundle
        .checks
        .iter()
        .map(|c| {
            let (passed, detail) = match run_check(bundle, c) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                name: c.name().to_owned(),
                passed,
                detail,
                note: c.note().to_owned(),
            }
        })
        .collect();
    ScenarioReport {
        scenario: bundle.name.clone(),
        outcomes,
    }
}
