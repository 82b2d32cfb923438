//! Reduction axioms: translation of dynamic formulas into the static
//! language, and randomized audits of axiom schemata.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::action::{ActionModelEnv, DeonticActionModel};
use crate::error::EvalError;
use crate::eval::satisfying;
use crate::formula::{ActionId, AgentId, Formula};
use crate::io::{ActionModelFile, ModelFile};
use crate::model::{PreferenceActionModel, ValidationReport};
use crate::random::{random_formula, sample, GeneratorConfig, Sample, Vocabulary};
use crate::relation::Relation;
use crate::update::product;

/// Which rule set to use for the universal and agency modalities.
///
/// `Sound` quantifies over every action of the model, matching the
/// product update. `Paper` uses the single-action forms
/// `Pre(a) -> U [A,a] φ` and `Pre(a) -> do j [A,a] φ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Sound,
    Paper,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Sound => "sound",
            Variant::Paper => "paper",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sound" | "soundForm" => Ok(Variant::Sound),
            "paper" | "paperForm" => Ok(Variant::Paper),
            _ => Err(format!("unknown variant `{s}` (expected sound or paper)")),
        }
    }
}

/// Replaces every dynamic box by an equivalent static formula, innermost
/// first.
pub fn translate(
    f: &Formula,
    env: &ActionModelEnv,
    variant: Variant,
) -> Result<Formula, EvalError> {
    let inner = f.map_children(&mut |c| translate(c, env, variant))?;
    match inner {
        Formula::ActBox {
            model,
            action,
            body,
        } => {
            let am = env.get(&model)?;
            let a = action_index(am, &action)?;
            Ok(push(am, a, &body, variant))
        }
        other => Ok(other),
    }
}

fn action_index(am: &DeonticActionModel, a: &ActionId) -> Result<usize, EvalError> {
    am.action_index(a).ok_or_else(|| EvalError::UnknownAction {
        model: am.name().to_owned(),
        action: a.clone(),
    })
}

/// One rewrite of `[A,a] φ` for static `φ`, recursing into the
/// dynamic boxes the rule creates.
fn push(am: &DeonticActionModel, a: usize, f: &Formula, variant: Variant) -> Formula {
    let pre = || am.pre(a).clone();
    let guarded = |body: Formula| Formula::imp(pre(), body);
    let all = |g: &Formula| Formula::conj((0..am.len()).map(|c| push(am, c, g, variant)));
    match f {
        Formula::Atom(p) => guarded(am.post_of(a, p)),
        Formula::Top => Formula::Top,
        Formula::Bot => Formula::not(pre()),
        Formula::Not(x) => guarded(Formula::not(push(am, a, x, variant))),
        Formula::And(x, y) => Formula::and(push(am, a, x, variant), push(am, a, y, variant)),
        Formula::Or(x, y) => guarded(Formula::or(
            push(am, a, x, variant),
            push(am, a, y, variant),
        )),
        Formula::Imp(x, y) => guarded(Formula::imp(
            push(am, a, x, variant),
            push(am, a, y, variant),
        )),
        Formula::Iff(x, y) => guarded(Formula::iff(
            push(am, a, x, variant),
            push(am, a, y, variant),
        )),
        Formula::PrefBox { from, to, body } => {
            let rel = am.rel(from, to);
            let strict = (0..am.len())
                .filter(|&c| rel.strict(a, c))
                .map(|c| Formula::univ(push(am, c, body, variant)));
            let equiv = (0..am.len())
                .filter(|&c| rel.equiv(a, c))
                .map(|c| Formula::pref_box(from.clone(), to.clone(), push(am, c, body, variant)));
            guarded(Formula::conj(strict.chain(equiv).collect::<Vec<_>>()))
        }
        Formula::Univ(x) => guarded(Formula::univ(match variant {
            Variant::Sound => all(x),
            Variant::Paper => push(am, a, x, variant),
        })),
        Formula::Does(j, x) => guarded(Formula::does(
            j.clone(),
            match variant {
                Variant::Sound => all(x),
                Variant::Paper => push(am, a, x, variant),
            },
        )),
        Formula::CondObl { .. } => push(am, a, &f.unfold_cond_obl(), variant),
        Formula::ActBox { .. } => unreachable!("translate pushes innermost boxes first"),
    }
}

/// Names of the audited schemata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomName {
    AtomRed,
    NegRed,
    AndRed,
    UnivRed,
    PrefRed,
    DoRed,
    S4Pref,
    S5U,
    S5Do,
    InclUPref,
    InclUDo,
    QualifiedD,
    ONormality,
}

impl AxiomName {
    pub const ALL: [AxiomName; 13] = [
        AxiomName::AtomRed,
        AxiomName::NegRed,
        AxiomName::AndRed,
        AxiomName::UnivRed,
        AxiomName::PrefRed,
        AxiomName::DoRed,
        AxiomName::S4Pref,
        AxiomName::S5U,
        AxiomName::S5Do,
        AxiomName::InclUPref,
        AxiomName::InclUDo,
        AxiomName::QualifiedD,
        AxiomName::ONormality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::AtomRed => "atomRed",
            AxiomName::NegRed => "negRed",
            AxiomName::AndRed => "andRed",
            AxiomName::UnivRed => "univRed",
            AxiomName::PrefRed => "prefRed",
            AxiomName::DoRed => "doRed",
            AxiomName::S4Pref => "S4pref",
            AxiomName::S5U => "S5U",
            AxiomName::S5Do => "S5Do",
            AxiomName::InclUPref => "inclUPref",
            AxiomName::InclUDo => "inclUDo",
            AxiomName::QualifiedD => "qualifiedD",
            AxiomName::ONormality => "oNormality",
        }
    }

    /// Reduction axioms relate a dynamic formula to its one-step rewrite;
    /// the others are static validities.
    pub fn is_reduction(self) -> bool {
        matches!(
            self,
            AxiomName::AtomRed
                | AxiomName::NegRed
                | AxiomName::AndRed
                | AxiomName::UnivRed
                | AxiomName::PrefRed
                | AxiomName::DoRed
        )
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = AxiomName::ALL.iter().map(|a| a.as_str()).collect();
                format!("unknown axiom `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// A state where two formulas that should agree do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub check: String,
    pub variant: Option<Variant>,
    pub sample: Option<usize>,
    pub lhs: Formula,
    pub rhs: Formula,
    pub model: PreferenceActionModel,
    pub action_models: Vec<DeonticActionModel>,
    pub state: String,
    pub lhs_value: bool,
    pub rhs_value: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson<'a> {
    check: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<Variant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sample: Option<usize>,
    lhs: String,
    rhs: String,
    state: &'a str,
    lhs_value: bool,
    rhs_value: bool,
    model: ModelFile,
    action_models: Vec<ActionModelFile>,
}

impl CounterexampleReport {
    pub fn env(&self) -> ActionModelEnv {
        self.action_models.iter().cloned().collect()
    }

    /// Re-evaluates both sides and confirms the recorded, differing values.
    pub fn verify(&self) -> Result<bool, EvalError> {
        let env = self.env();
        let k = self
            .model
            .state_index(&self.state)
            .ok_or_else(|| EvalError::UnknownState(self.state.clone()))?;
        let lhs = satisfying(&self.model, &self.lhs, &env)?[k];
        let rhs = satisfying(&self.model, &self.rhs, &env)?[k];
        Ok(lhs == self.lhs_value && rhs == self.rhs_value && lhs != rhs)
    }

    fn json(&self) -> ReportJson<'_> {
        ReportJson {
            check: &self.check,
            variant: self.variant,
            sample: self.sample,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            state: &self.state,
            lhs_value: self.lhs_value,
            rhs_value: self.rhs_value,
            model: ModelFile::from_model(&self.model),
            action_models: self
                .action_models
                .iter()
                .map(ActionModelFile::from_action_model)
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json()).expect("report serializes")
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_string_pretty(&self.json()).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

/// First state of `model` where `lhs` and `rhs` differ.
pub fn compare(
    model: &PreferenceActionModel,
    env: &ActionModelEnv,
    lhs: &Formula,
    rhs: &Formula,
) -> Result<Option<(String, bool, bool)>, EvalError> {
    let l = satisfying(model, lhs, env)?;
    let r = satisfying(model, rhs, env)?;
    Ok((0..model.len())
        .find(|&k| l[k] != r[k])
        .map(|k| (model.state_name(k).to_owned(), l[k], r[k])))
}

fn report(
    check: impl Into<String>,
    variant: Option<Variant>,
    sample: Option<usize>,
    model: &PreferenceActionModel,
    env: &ActionModelEnv,
    lhs: Formula,
    rhs: Formula,
) -> Result<Option<CounterexampleReport>, EvalError> {
    Ok(
        compare(model, env, &lhs, &rhs)?.map(|(state, lhs_value, rhs_value)| {
            CounterexampleReport {
                check: check.into(),
                variant,
                sample,
                lhs,
                rhs,
                model: model.clone(),
                action_models: env.models().cloned().collect(),
                state,
                lhs_value,
                rhs_value,
            }
        }),
    )
}

fn component_depth(cfg: &GeneratorConfig) -> usize {
    cfg.max_formula_depth.saturating_sub(2).max(1)
}

/// An instance of `axiom` built from random components, as `(lhs, rhs)`.
/// Static schemata are paired with `true`.
pub fn axiom_instance(
    axiom: AxiomName,
    variant: Variant,
    s: &mut Sample,
    depth: usize,
) -> (Formula, Formula) {
    let vocab = Vocabulary::of(&s.model);
    let rng = &mut s.rng;
    let mut phi = || random_formula(rng, &vocab, depth);
    let (f1, f2, f3) = (phi(), phi(), phi());
    let agents = s.model.agents();
    let j = agents.choose(&mut s.rng).expect("agents").clone();
    let k = agents.choose(&mut s.rng).expect("agents").clone();
    let am = &s.action_model;
    let name = am.name().to_owned();
    let a = s.rng.gen_range(0..am.len());
    let boxed =
        |c: usize, f: &Formula| Formula::act_box(name.clone(), am.actions()[c].clone(), f.clone());
    let pre = am.pre(a).clone();
    let guarded = |f: Formula| Formula::imp(pre.clone(), f);
    let pref = |f: Formula| Formula::pref_box(j.clone(), k.clone(), f);
    let univ = Formula::univ;
    let does = |f: Formula| Formula::does(j.clone(), f);
    let every = |f: &Formula| Formula::conj((0..am.len()).map(|c| boxed(c, f)));
    match axiom {
        AxiomName::AtomRed => {
            let p = vocab.atoms.choose(&mut s.rng).expect("atoms").clone();
            (
                boxed(a, &Formula::Atom(p.clone())),
                guarded(am.post_of(a, &p)),
            )
        }
        AxiomName::NegRed => (
            boxed(a, &Formula::not(f1.clone())),
            guarded(Formula::not(boxed(a, &f1))),
        ),
        AxiomName::AndRed => (
            boxed(a, &Formula::and(f1.clone(), f2.clone())),
            Formula::and(boxed(a, &f1), boxed(a, &f2)),
        ),
        AxiomName::UnivRed => (
            boxed(a, &univ(f1.clone())),
            guarded(univ(match variant {
                Variant::Sound => every(&f1),
                Variant::Paper => boxed(a, &f1),
            })),
        ),
        AxiomName::DoRed => (
            boxed(a, &does(f1.clone())),
            guarded(does(match variant {
                Variant::Sound => every(&f1),
                Variant::Paper => boxed(a, &f1),
            })),
        ),
        AxiomName::PrefRed => {
            let rel = am.rel(&j, &k);
            let strict = (0..am.len())
                .filter(|&c| rel.strict(a, c))
                .map(|c| univ(boxed(c, &f1)));
            let equiv = (0..am.len())
                .filter(|&c| rel.equiv(a, c))
                .map(|c| pref(boxed(c, &f1)));
            (
                boxed(a, &pref(f1.clone())),
                guarded(Formula::conj(strict.chain(equiv).collect::<Vec<_>>())),
            )
        }
        AxiomName::S4Pref => (
            Formula::conj([
                Formula::imp(
                    pref(Formula::imp(f1.clone(), f2.clone())),
                    Formula::imp(pref(f1.clone()), pref(f2.clone())),
                ),
                Formula::imp(pref(f1.clone()), f1.clone()),
                Formula::imp(pref(f1.clone()), pref(pref(f1.clone()))),
            ]),
            Formula::Top,
        ),
        AxiomName::S5U => (s5(univ, &f1, &f2), Formula::Top),
        AxiomName::S5Do => (s5(does, &f1, &f2), Formula::Top),
        AxiomName::InclUPref => (
            Formula::imp(univ(f1.clone()), pref(f1.clone())),
            Formula::Top,
        ),
        AxiomName::InclUDo => (
            Formula::imp(univ(f1.clone()), does(f1.clone())),
            Formula::Top,
        ),
        AxiomName::QualifiedD => (
            Formula::imp(
                Formula::pref_dia(j.clone(), k.clone(), f1.clone()),
                Formula::imp(
                    Formula::cond_obl(j.clone(), k.clone(), f2.clone(), f1.clone()),
                    Formula::not(Formula::cond_obl(
                        j.clone(),
                        k.clone(),
                        Formula::not(f2.clone()),
                        f1.clone(),
                    )),
                ),
            ),
            Formula::Top,
        ),
        AxiomName::ONormality => (
            Formula::iff(
                Formula::cond_obl(
                    j.clone(),
                    k.clone(),
                    Formula::and(f2.clone(), f3.clone()),
                    f1.clone(),
                ),
                Formula::and(
                    Formula::cond_obl(j.clone(), k.clone(), f2.clone(), f1.clone()),
                    Formula::cond_obl(j.clone(), k.clone(), f3.clone(), f1.clone()),
                ),
            ),
            Formula::Top,
        ),
    }
}

/// K, T, 4 and 5 for a box operator.
fn s5(op: impl Fn(Formula) -> Formula, f1: &Formula, f2: &Formula) -> Formula {
    Formula::conj([
        Formula::imp(
            op(Formula::imp(f1.clone(), f2.clone())),
            Formula::imp(op(f1.clone()), op(f2.clone())),
        ),
        Formula::imp(op(f1.clone()), f1.clone()),
        Formula::imp(op(f1.clone()), op(op(f1.clone()))),
        Formula::imp(
            Formula::not(op(f1.clone())),
            op(Formula::not(op(f1.clone()))),
        ),
    ])
}

/// Searches the random suite for a countermodel to `axiom`. Samples are
/// tried in order; the first failure is returned.
pub fn audit_axiom(
    axiom: AxiomName,
    variant: Variant,
    cfg: &GeneratorConfig,
) -> Result<Option<CounterexampleReport>, EvalError> {
    let depth = component_depth(cfg);
    for k in 0..cfg.sample_count {
        let mut s = sample(cfg, k);
        let (lhs, rhs) = axiom_instance(axiom, variant, &mut s, depth);
        let env = if axiom.is_reduction() {
            s.env.clone()
        } else {
            ActionModelEnv::new()
        };
        let variant = axiom.is_reduction().then_some(variant);
        if let Some(r) = report(axiom.as_str(), variant, Some(k), &s.model, &env, lhs, rhs)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Samples random models over the vocabulary of `f` and `env` and returns
/// the first state where `f` and its translation disagree.
pub fn check_equivalence(
    f: &Formula,
    env: &ActionModelEnv,
    variant: Variant,
    cfg: &GeneratorConfig,
) -> Result<Option<CounterexampleReport>, EvalError> {
    let translated = translate(f, env, variant)?;
    let mut atoms = f.atoms();
    let mut agents = f.agents();
    for am in env.models() {
        agents.insert(am.owner().clone());
        for ((x, y), _) in am.rel_entries() {
            agents.insert(x.clone());
            agents.insert(y.clone());
        }
        for k in 0..am.len() {
            atoms.extend(am.pre(k).atoms());
            agents.extend(am.pre(k).agents());
            for (p, g) in am.post(k) {
                atoms.insert(p.clone());
                atoms.extend(g.atoms());
                agents.extend(g.agents());
            }
        }
    }
    let atoms: Vec<_> = atoms.into_iter().collect();
    let agents: Vec<_> = agents.into_iter().collect();
    for k in 0..cfg.sample_count {
        let mut rng = cfg.rng(k);
        let model = crate::random::random_model_over(cfg, &mut rng, &atoms, &agents);
        if let Some(r) = report(
            "translate",
            Some(variant),
            Some(k),
            &model,
            env,
            f.clone(),
            translated.clone(),
        )? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Soundness of the translation on random formulas `[A,a] φ`, where `φ`
/// may contain further boxes, over random models and action models.
pub fn translation_suite(
    variant: Variant,
    cfg: &GeneratorConfig,
) -> Result<Option<CounterexampleReport>, EvalError> {
    for k in 0..cfg.sample_count {
        let mut s = sample(cfg, k);
        let vocab = Vocabulary::of(&s.model).with_actions(&s.env);
        let a = s
            .action_model
            .actions()
            .choose(&mut s.rng)
            .expect("actions")
            .clone();
        let body = random_formula(&mut s.rng, &vocab, cfg.max_formula_depth.saturating_sub(1));
        let f = Formula::act_box(s.action_model.name(), a, body);
        let t = translate(&f, &s.env, variant)?;
        debug_assert!(t.is_static());
        if let Some(r) = report("translate", Some(variant), Some(k), &s.model, &s.env, f, t)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Conditional obligation at `w` read off the most ideal condition-states:
/// every condition-state above `w` that is maximal among condition-states
/// satisfies the consequent.
pub fn cond_obl_by_maxima(r: &Relation, consequent: &[bool], condition: &[bool], w: usize) -> bool {
    let n = condition.len();
    (0..n)
        .filter(|&v| r.contains(w, v) && condition[v])
        .filter(|&v| (0..n).all(|s| !(r.contains(v, s) && condition[s]) || r.contains(s, v)))
        .all(|v| consequent[v])
}

/// Compares the direct clause for `O i j (ψ / φ)` with its unfolded
/// definition and with the most-ideal-states reading, on random static
/// arguments.
pub fn definability_suite(
    cfg: &GeneratorConfig,
) -> Result<Option<CounterexampleReport>, EvalError> {
    let env = ActionModelEnv::new();
    for k in 0..cfg.sample_count {
        let mut s = sample(cfg, k);
        let vocab = Vocabulary::of(&s.model);
        let depth = component_depth(cfg);
        let psi = random_formula(&mut s.rng, &vocab, depth);
        let phi = random_formula(&mut s.rng, &vocab, depth);
        let i = s.model.agents().choose(&mut s.rng).expect("agents").clone();
        let j = s.model.agents().choose(&mut s.rng).expect("agents").clone();
        let o = Formula::cond_obl(i.clone(), j.clone(), psi.clone(), phi.clone());
        if let Some(r) = report(
            "definability",
            None,
            Some(k),
            &s.model,
            &env,
            o.clone(),
            o.unfold_cond_obl(),
        )? {
            return Ok(Some(r));
        }
        let direct = satisfying(&s.model, &o, &env)?;
        let rel = s.model.pref(&i, &j);
        let cons = satisfying(&s.model, &psi, &env)?;
        let cond = satisfying(&s.model, &phi, &env)?;
        for (w, &value) in direct.iter().enumerate() {
            let oracle = cond_obl_by_maxima(&rel, &cons, &cond, w);
            if oracle != value {
                return Ok(Some(CounterexampleReport {
                    check: "maximalStates".into(),
                    variant: None,
                    sample: Some(k),
                    lhs: o,
                    rhs: Formula::Top,
                    model: s.model.clone(),
                    action_models: Vec::new(),
                    state: s.model.state_name(w).to_owned(),
                    lhs_value: value,
                    rhs_value: oracle,
                }));
            }
        }
    }
    Ok(None)
}

/// Invalid product found by [`product_suite`].
#[derive(Clone, Debug)]
pub struct InvalidProduct {
    pub sample: usize,
    pub model: PreferenceActionModel,
    pub action_model: DeonticActionModel,
    pub report: ValidationReport,
}

/// Every nonempty product of a random model and action model satisfies the
/// frame conditions. Returns the number of nonempty products checked.
pub fn product_suite(cfg: &GeneratorConfig) -> Result<Result<usize, InvalidProduct>, EvalError> {
    let mut checked = 0;
    for k in 0..cfg.sample_count {
        let s = sample(cfg, k);
        match product(&s.model, &s.action_model) {
            Ok(u) => {
                let report = u.model.validate();
                if !report.is_ok() {
                    return Ok(Err(InvalidProduct {
                        sample: k,
                        model: s.model,
                        action_model: s.action_model,
                        report,
                    }));
                }
                checked += 1;
            }
            Err(EvalError::EmptyProduct(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Ok(checked))
}

/// One state, two always-executable actions that disagree on `p`. Here
/// `[A,a] U p` is false while `Pre(a) -> U [A,a] p` is true, and likewise
/// for `do i`.
pub fn two_action_instance() -> (PreferenceActionModel, DeonticActionModel) {
    let i = AgentId::new("i");
    let mut m = PreferenceActionModel::new(["w1"], [i.clone()]).expect("valid");
    m.set_eq(i.clone(), Relation::total(1))
        .expect("known agent");
    m.set_val_bits("p".into(), vec![false]).expect("sized");
    let (a, b) = (ActionId::new("a"), ActionId::new("b"));
    let mut am = DeonticActionModel::new("A", i, [a.clone(), b.clone()]).expect("valid");
    am.set_post(&a, "p".into(), Formula::Top)
        .expect("known action");
    am.set_post(&b, "p".into(), Formula::Bot)
        .expect("known action");
    (m, am)
}

/// The single-action instances of `univRed` and `doRed` on
/// [`two_action_instance`].
pub fn two_action_counterexamples() -> Vec<CounterexampleReport> {
    let (m, am) = two_action_instance();
    let env = ActionModelEnv::new().with(am.clone());
    let p = Formula::atom("p");
    let a = ActionId::new("a");
    let boxed = |f: Formula| Formula::act_box("A", a.clone(), f);
    let cases = [
        (
            AxiomName::UnivRed,
            boxed(Formula::univ(p.clone())),
            Formula::imp(Formula::Top, Formula::univ(boxed(p.clone()))),
        ),
        (
            AxiomName::DoRed,
            boxed(Formula::does("i", p.clone())),
            Formula::imp(Formula::Top, Formula::does("i", boxed(p.clone()))),
        ),
    ];
    cases
        .into_iter()
        .filter_map(|(ax, lhs, rhs)| {
            report(ax.as_str(), Some(Variant::Paper), None, &m, &env, lhs, rhs).expect("evaluable")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::scenario::bundle;

    fn john_env() -> ActionModelEnv {
        let b = bundle("parking").unwrap();
        ActionModelEnv::new().with(b.action_model("John").unwrap().clone())
    }

    fn t(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn atom_rule() {
        let out = translate(&t("[act John a1] f"), &john_env(), Variant::Sound).unwrap();
        assert_eq!(out, t("(!d & p) -> true"));
    }

    #[test]
    fn static_formulas_are_unchanged() {
        for s in ["p", "O i c (do i d / p)", "U (p -> [pref i c] q)"] {
            assert_eq!(
                translate(&t(s), &ActionModelEnv::new(), Variant::Sound).unwrap(),
                t(s)
            );
        }
    }

    #[test]
    fn pref_rule_uses_only_equivalent_actions() {
        let out = translate(
            &t("[act John a1] [pref i c] f"),
            &john_env(),
            Variant::Sound,
        )
        .unwrap();
        assert_eq!(out, t("(!d & p) -> [pref i c]((!d & p) -> true)"));
        let out = translate(
            &t("[act John a2] [pref i c] f"),
            &john_env(),
            Variant::Paper,
        )
        .unwrap();
        assert_eq!(out, t("(d | !p) -> [pref i c]((d | !p) -> false)"));
    }

    #[test]
    fn pref_rule_with_strictly_better_actions() {
        let b = bundle("parking").unwrap();
        let env = ActionModelEnv::new().with(b.action_model("Mary").unwrap().clone());
        let out = translate(&t("[act Mary b1] [pref i c] f"), &env, Variant::Sound).unwrap();
        assert_eq!(
            out,
            t("(!d & p) -> (U ((d | !p) -> false) & [pref i c]((!d & p) -> false))")
        );
    }

    #[test]
    fn constants_and_negation() {
        let env = john_env();
        assert_eq!(
            translate(&t("[act John a1] true"), &env, Variant::Sound).unwrap(),
            Formula::Top
        );
        assert_eq!(
            translate(&t("[act John a1] false"), &env, Variant::Sound).unwrap(),
            t("!(!d & p)")
        );
        assert_eq!(
            translate(&t("[act John a1] !f"), &env, Variant::Sound).unwrap(),
            t("(!d & p) -> !((!d & p) -> true)")
        );
    }

    #[test]
    fn unknown_names_are_errors() {
        let env = john_env();
        assert_eq!(
            translate(&t("[act Nobody a1] p"), &env, Variant::Sound),
            Err(EvalError::UnknownActionModel("Nobody".into()))
        );
        assert!(matches!(
            translate(&t("[act John zz] p"), &env, Variant::Sound),
            Err(EvalError::UnknownAction { .. })
        ));
    }

    #[test]
    fn translation_is_static_and_sound_on_fixtures() {
        let b = bundle("parking").unwrap();
        let m = b.model("park").unwrap();
        let env: ActionModelEnv = [
            b.action_model("John").unwrap().clone(),
            b.action_model("Mary").unwrap().clone(),
        ]
        .into_iter()
        .collect();
        for s in [
            "[act John a1] O i c (f / true)",
            "<act John a1> O i c ((!d & p) / true)",
            "[act John a2] [act Mary b2] (f <-> U f)",
            "[act John a1] do i (p | [pref i c] d)",
            "[act Mary b1] [act John a2] O i c (do i d / p)",
        ] {
            let f = t(s);
            let out = translate(&f, &env, Variant::Sound).unwrap();
            assert!(out.is_static());
            assert_eq!(
                satisfying(m, &f, &env).unwrap(),
                satisfying(m, &out, &env).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn single_action_rules_fail_on_two_action_instance() {
        let reports = two_action_counterexamples();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert!(r.verify().unwrap());
            assert!(!r.lhs_value && r.rhs_value);
        }
        let (m, am) = two_action_instance();
        let env = ActionModelEnv::new().with(am);
        for f in ["[act A a] U p", "[act A a] do i p"] {
            let f = t(f);
            let sound = translate(&f, &env, Variant::Sound).unwrap();
            let paper = translate(&f, &env, Variant::Paper).unwrap();
            assert_eq!(compare(&m, &env, &f, &sound).unwrap(), None);
            assert!(compare(&m, &env, &f, &paper).unwrap().is_some());
        }
    }

    #[test]
    fn check_equivalence_over_formula_vocabulary() {
        let cfg = GeneratorConfig {
            sample_count: 50,
            ..GeneratorConfig::default()
        };
        let (_, am) = two_action_instance();
        let env = ActionModelEnv::new().with(am);
        let f = t("[act A a] (U p | do i !p)");
        assert_eq!(
            check_equivalence(&f, &env, Variant::Sound, &cfg).unwrap(),
            None
        );
        let r = check_equivalence(&t("[act A a] U p"), &env, Variant::Paper, &cfg)
            .unwrap()
            .unwrap();
        assert!(r.verify().unwrap());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in AxiomName::ALL {
            assert_eq!(a.as_str().parse::<AxiomName>(), Ok(a));
        }
        assert!("nonsense".parse::<AxiomName>().is_err());
        assert_eq!("paperForm".parse::<Variant>(), Ok(Variant::Paper));
    }

    #[test]
    fn report_json_shape() {
        let r = &two_action_counterexamples()[0];
        let v = r.to_json();
        assert_eq!(v["check"], "univRed");
        assert_eq!(v["variant"], "paper");
        assert_eq!(v["state"], "w1");
        assert_eq!(v["lhsValue"], false);
        assert_eq!(v["rhsValue"], true);
        assert_eq!(v["actionModels"][0]["name"], "A");
    }

    #[test]
    fn maxima_reading_on_a_chain() {
        // w0 <= w1 <= w2; condition everywhere; consequent only at the top
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]).closure();
        let cond = [true; 3];
        let cons = [false, false, true];
        for w in 0..3 {
            assert!(cond_obl_by_maxima(&r, &cons, &cond, w));
        }
        assert!(!cond_obl_by_maxima(&r, &[true, true, false], &cond, 0));
    }
}
