//! Seeded random generators for models, action models and formulas.
//!
//! Every sample `k` of a suite draws from its own stream
//! `ChaCha8Rng::seed_from_u64(seed + k)`, so a single sample can be
//! reproduced from the seed and its index alone.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{ActionModelEnv, DeonticActionModel};
use crate::formula::{ActionId, AgentId, AtomId, Formula};
use crate::model::PreferenceActionModel;
use crate::relation::Relation;

pub const DEFAULT_SEED: u64 = 0x0001_e9a1_c0de;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_states: usize,
    pub max_actions: usize,
    pub max_atoms: usize,
    pub max_agents: usize,
    pub max_formula_depth: usize,
    pub sample_count: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: DEFAULT_SEED,
            max_states: 5,
            max_actions: 3,
            max_atoms: 3,
            max_agents: 2,
            max_formula_depth: 4,
            sample_count: 500,
        }
    }
}

impl GeneratorConfig {
    /// Random stream for sample `k`.
    pub fn rng(&self, k: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(k as u64))
    }
}

const ATOMS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
const AGENTS: [&str; 4] = ["i", "j", "k", "l"];

fn random_preorder(rng: &mut impl Rng, n: usize) -> Relation {
    match rng.gen_range(0..6) {
        0 => Relation::identity(n),
        1 => Relation::total(n),
        _ => {
            let density = rng.gen_range(0.1..0.6);
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(density))
                .collect();
            Relation::from_pairs(n, pairs).closure()
        }
    }
}

fn random_equivalence(rng: &mut impl Rng, n: usize) -> Relation {
    match rng.gen_range(0..4) {
        0 => Relation::identity(n),
        1 => Relation::total(n),
        _ => {
            let blocks = rng.gen_range(1..=n);
            let mut parts: Vec<Vec<usize>> = vec![Vec::new(); blocks];
            for s in 0..n {
                parts[rng.gen_range(0..blocks)].push(s);
            }
            Relation::from_blocks(n, parts.iter().map(Vec::as_slice))
        }
    }
}

fn random_bits(rng: &mut impl Rng, n: usize) -> Vec<bool> {
    match rng.gen_range(0..6) {
        0 => vec![false; n],
        1 => vec![true; n],
        _ => (0..n).map(|_| rng.gen_bool(0.5)).collect(),
    }
}

/// A valid preference-action model with `1..=max_states` states named
/// `w1..`, agents `i, j, ..` and atoms `p, q, ..`. Every agent pair gets a
/// preorder and every agent an equivalence.
pub fn random_model(cfg: &GeneratorConfig, rng: &mut impl Rng) -> PreferenceActionModel {
    let agents = rng.gen_range(1..=cfg.max_agents.clamp(1, AGENTS.len()));
    let atoms = rng.gen_range(1..=cfg.max_atoms.clamp(1, ATOMS.len()));
    let agents: Vec<AgentId> = AGENTS[..agents].iter().map(|a| AgentId::new(*a)).collect();
    let atoms: Vec<AtomId> = ATOMS[..atoms].iter().map(|a| AtomId::new(*a)).collect();
    random_model_over(cfg, rng, &atoms, &agents)
}

/// As [`random_model`], over a fixed vocabulary.
pub fn random_model_over(
    cfg: &GeneratorConfig,
    rng: &mut impl Rng,
    atoms: &[AtomId],
    agents: &[AgentId],
) -> PreferenceActionModel {
    let n = rng.gen_range(1..=cfg.max_states.max(1));
    let mut m = PreferenceActionModel::new((1..=n).map(|k| format!("w{k}")), agents.to_vec())
        .expect("generated names are valid");
    for from in agents {
        for to in agents {
            m.set_pref(from.clone(), to.clone(), random_preorder(rng, n))
                .expect("known agents");
        }
        m.set_eq(from.clone(), random_equivalence(rng, n))
            .expect("known agent");
    }
    for atom in atoms {
        m.set_val_bits(atom.clone(), random_bits(rng, n))
            .expect("sized valuation");
    }
    m
}

/// Vocabulary a formula may draw on.
#[derive(Clone, Debug)]
pub struct Vocabulary {
    pub atoms: Vec<AtomId>,
    pub agents: Vec<AgentId>,
    /// Action models available for dynamic boxes; empty for static formulas.
    pub actions: Vec<(String, Vec<ActionId>)>,
}

impl Vocabulary {
    pub fn of(model: &PreferenceActionModel) -> Self {
        Vocabulary {
            atoms: model.atoms().cloned().collect(),
            agents: model.agents().to_vec(),
            actions: Vec::new(),
        }
    }

    pub fn with_actions(mut self, env: &ActionModelEnv) -> Self {
        self.actions = env
            .models()
            .map(|am| (am.name().to_owned(), am.actions().to_vec()))
            .collect();
        self
    }
}

/// A random formula of depth at most `depth`. Dynamic boxes appear only when
/// the vocabulary lists action models.
pub fn random_formula(rng: &mut impl Rng, vocab: &Vocabulary, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::Atom(
                vocab
                    .atoms
                    .choose(rng)
                    .expect("nonempty vocabulary")
                    .clone(),
            ),
        };
    }
    let d = depth - 1;
    let agent =
        |rng: &mut _| -> AgentId { vocab.agents.choose(rng).expect("nonempty agents").clone() };
    let kinds = if vocab.actions.is_empty() { 12 } else { 14 };
    match rng.gen_range(0..kinds) {
        0 | 1 => Formula::not(random_formula(rng, vocab, d)),
        2 => Formula::and(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        3 => Formula::or(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        4 => Formula::imp(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        5 => Formula::iff(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        6 | 7 => {
            let (from, to) = (agent(rng), agent(rng));
            Formula::pref_box(from, to, random_formula(rng, vocab, d))
        }
        8 => Formula::univ(random_formula(rng, vocab, d)),
        9 => {
            let a = agent(rng);
            Formula::does(a, random_formula(rng, vocab, d))
        }
        10 | 11 => {
            let (from, to) = (agent(rng), agent(rng));
            Formula::cond_obl(
                from,
                to,
                random_formula(rng, vocab, d),
                random_formula(rng, vocab, d),
            )
        }
        _ => {
            let (model, actions) = vocab.actions.choose(rng).expect("nonempty");
            let a = actions.choose(rng).expect("nonempty action model").clone();
            Formula::act_box(model.clone(), a, random_formula(rng, vocab, d))
        }
    }
}

/// A random static formula over the vocabulary of `model`.
pub fn random_static_formula(
    rng: &mut impl Rng,
    model: &PreferenceActionModel,
    depth: usize,
) -> Formula {
    random_formula(rng, &Vocabulary::of(model), depth)
}

/// A valid deontic action model over the vocabulary of `model`, with
/// actions `a1..`. Preconditions are pairwise exclusive with positive
/// probability and overlapping with positive probability; each
/// postcondition overrides at most two atoms.
pub fn random_action_model(
    cfg: &GeneratorConfig,
    rng: &mut impl Rng,
    model: &PreferenceActionModel,
    name: &str,
) -> DeonticActionModel {
    let n = rng.gen_range(1..=cfg.max_actions.max(1));
    let agents = model.agents().to_vec();
    let owner = agents.choose(rng).expect("model has agents").clone();
    let actions: Vec<ActionId> = (1..=n).map(|k| ActionId::new(format!("a{k}"))).collect();
    let mut am = DeonticActionModel::new(name, owner, actions.clone()).expect("valid names");
    for from in &agents {
        for to in &agents {
            if rng.gen_bool(0.8) {
                am.set_rel(from.clone(), to.clone(), random_preorder(rng, n))
                    .expect("sized relation");
            }
        }
    }
    let vocab = Vocabulary::of(model);
    let depth = cfg.max_formula_depth.min(2);
    let pres: Vec<Formula> = if rng.gen_bool(0.4) {
        // pairwise exclusive, jointly exhaustive
        let cuts: Vec<Formula> = (1..n).map(|_| random_formula(rng, &vocab, depth)).collect();
        (0..n)
            .map(|k| {
                let mut parts: Vec<Formula> =
                    cuts[..k].iter().map(|c| Formula::not(c.clone())).collect();
                if k < n - 1 {
                    parts.push(cuts[k].clone());
                }
                Formula::conj(parts)
            })
            .collect()
    } else {
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    Formula::Top
                } else {
                    random_formula(rng, &vocab, depth)
                }
            })
            .collect()
    };
    for (a, pre) in actions.iter().zip(pres) {
        am.set_pre(a, pre).expect("known action");
        let overrides = rng.gen_range(0..=2.min(vocab.atoms.len()));
        for atom in vocab.atoms.choose_multiple(rng, overrides) {
            let post = match rng.gen_range(0..4) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => random_formula(rng, &vocab, 1),
            };
            am.set_post(a, atom.clone(), post).expect("known action");
        }
    }
    am
}

/// One sample of a suite: a model, a single action model named `A` and
/// the environment holding it.
pub struct Sample {
    pub model: PreferenceActionModel,
    pub action_model: DeonticActionModel,
    pub env: ActionModelEnv,
    pub rng: ChaCha8Rng,
}

pub fn sample(cfg: &GeneratorConfig, k: usize) -> Sample {
    let mut rng = cfg.rng(k);
    let model = random_model(cfg, &mut rng);
    let action_model = random_action_model(cfg, &mut rng, &model, "A");
    let env = ActionModelEnv::new().with(action_model.clone());
    Sample {
        model,
        action_model,
        env,
        rng,
    }
}
