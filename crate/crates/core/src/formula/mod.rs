//! Formula language: abstract syntax, derived operators and the
//! conditional-obligation unfolding.
//!
//! The surface grammar lives in [`parse`]; [`Formula`]'s `Display` impl
//! prints the same grammar back.

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse, ParseError};

macro_rules! token_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(name: impl Into<String>) -> Self {
                Self(name.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }
    };
}

token_newtype!(
    /// An agent name. Agents are compared by name only.
    AgentId
);
token_newtype!(
    /// An atomic proposition.
    AtomId
);
token_newtype!(
    /// A deontic action inside an action model.
    ActionId
);

/// Words with a fixed meaning in the grammar; they cannot be atoms.
pub const KEYWORDS: &[&str] = &["U", "E", "O", "P", "do", "true", "false"];

/// True for `[A-Za-z0-9_]+`.
pub fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Atoms are tokens that start with a letter or underscore and are not keywords.
pub fn is_atom_name(s: &str) -> bool {
    is_token(s)
        && s.chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && !KEYWORDS.contains(&s)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(AtomId),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `[pref i j] φ`: φ holds in every state at least as ideal with respect
    /// to `from`'s obligations towards `to`.
    PrefBox {
        from: AgentId,
        to: AgentId,
        body: Box<Formula>,
    },
    Univ(Box<Formula>),
    Does(AgentId, Box<Formula>),
    /// `O i j (ψ / φ)`: given φ, `from` owes ψ to `to`.
    CondObl {
        from: AgentId,
        to: AgentId,
        consequent: Box<Formula>,
        condition: Box<Formula>,
    },
    /// `[act A a] φ`: after executing `action` of the action model `model`
    /// (if executable), φ holds.
    ActBox {
        model: String,
        action: ActionId,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(AtomId::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn pref_box(from: impl Into<AgentId>, to: impl Into<AgentId>, body: Formula) -> Self {
        Formula::PrefBox {
            from: from.into(),
            to: to.into(),
            body: Box::new(body),
        }
    }

    pub fn univ(f: Formula) -> Self {
        Formula::Univ(Box::new(f))
    }

    pub fn does(agent: impl Into<AgentId>, f: Formula) -> Self {
        Formula::Does(agent.into(), Box::new(f))
    }

    pub fn cond_obl(
        from: impl Into<AgentId>,
        to: impl Into<AgentId>,
        consequent: Formula,
        condition: Formula,
    ) -> Self {
        Formula::CondObl {
            from: from.into(),
            to: to.into(),
            consequent: Box::new(consequent),
            condition: Box::new(condition),
        }
    }

    pub fn act_box(model: impl Into<String>, action: impl Into<ActionId>, body: Formula) -> Self {
        Formula::ActBox {
            model: model.into(),
            action: action.into(),
            body: Box::new(body),
        }
    }

    // Derived forms. Each one expands to a single core shape.

    /// `<pref i j> φ` = `![pref i j] !φ`
    pub fn pref_dia(from: impl Into<AgentId>, to: impl Into<AgentId>, body: Formula) -> Self {
        Formula::not(Formula::pref_box(from, to, Formula::not(body)))
    }

    /// `E φ` = `!U !φ`
    pub fn exist(f: Formula) -> Self {
        Formula::not(Formula::univ(Formula::not(f)))
    }

    /// Weak permission `P i j (ψ / φ)` = `!O i j (!ψ / φ)`.
    pub fn perm(
        from: impl Into<AgentId>,
        to: impl Into<AgentId>,
        consequent: Formula,
        condition: Formula,
    ) -> Self {
        Formula::not(Formula::cond_obl(
            from,
            to,
            Formula::not(consequent),
            condition,
        ))
    }

    /// Unconditional directed obligation `O i j (ψ / true)`.
    pub fn uncond_obl(
        from: impl Into<AgentId>,
        to: impl Into<AgentId>,
        consequent: Formula,
    ) -> Self {
        Formula::cond_obl(from, to, consequent, Formula::Top)
    }

    /// `<act A a> φ` = `![act A a] !φ`
    pub fn act_dia(model: impl Into<String>, action: impl Into<ActionId>, body: Formula) -> Self {
        Formula::not(Formula::act_box(model, action, Formula::not(body)))
    }

    /// Given `condition`, `holder` has a claim against `bearer` regarding φ:
    /// `O bearer holder (do bearer φ / condition)`.
    pub fn claim(
        holder: impl Into<AgentId>,
        bearer: impl Into<AgentId>,
        f: Formula,
        condition: Formula,
    ) -> Self {
        let bearer = bearer.into();
        Formula::cond_obl(bearer.clone(), holder, Formula::does(bearer, f), condition)
    }

    /// Given `condition`, `holder` has a privilege against `other` regarding φ:
    /// `!O holder other (do holder !φ / condition)`.
    pub fn privilege(
        holder: impl Into<AgentId>,
        other: impl Into<AgentId>,
        f: Formula,
        condition: Formula,
    ) -> Self {
        let holder = holder.into();
        Formula::not(Formula::cond_obl(
            holder.clone(),
            other,
            Formula::does(holder, Formula::not(f)),
            condition,
        ))
    }

    /// Left-nested conjunction; `Top` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bot` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    /// A formula is static when it contains no dynamic modality.
    pub fn is_static(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::ActBox { .. }));
        !found
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Operator nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        self.children().map(|c| 1 + c.depth()).max().unwrap_or(0)
    }

    pub fn count_cond_obl(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| n += matches!(f, Formula::CondObl { .. }) as usize);
        n
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> impl Iterator<Item = &Formula> {
        let (a, b): (Option<&Formula>, Option<&Formula>) = match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => (None, None),
            Formula::Not(x) | Formula::Univ(x) | Formula::Does(_, x) => (Some(x), None),
            Formula::PrefBox { body, .. } | Formula::ActBox { body, .. } => (Some(body), None),
            Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) | Formula::Iff(x, y) => {
                (Some(x), Some(y))
            }
            Formula::CondObl {
                consequent,
                condition,
                ..
            } => (Some(consequent), Some(condition)),
        };
        a.into_iter().chain(b)
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Rebuilds this node with its children replaced by `g(child)`.
    pub fn map_children<E>(
        &self,
        g: &mut impl FnMut(&Formula) -> Result<Formula, E>,
    ) -> Result<Formula, E> {
        let mut b = |x: &Formula| g(x).map(Box::new);
        Ok(match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::Not(x) => Formula::Not(b(x)?),
            Formula::And(x, y) => Formula::And(b(x)?, b(y)?),
            Formula::Or(x, y) => Formula::Or(b(x)?, b(y)?),
            Formula::Imp(x, y) => Formula::Imp(b(x)?, b(y)?),
            Formula::Iff(x, y) => Formula::Iff(b(x)?, b(y)?),
            Formula::PrefBox { from, to, body } => Formula::PrefBox {
                from: from.clone(),
                to: to.clone(),
                body: b(body)?,
            },
            Formula::Univ(x) => Formula::Univ(b(x)?),
            Formula::Does(i, x) => Formula::Does(i.clone(), b(x)?),
            Formula::CondObl {
                from,
                to,
                consequent,
                condition,
            } => Formula::CondObl {
                from: from.clone(),
                to: to.clone(),
                consequent: b(consequent)?,
                condition: b(condition)?,
            },
            Formula::ActBox {
                model,
                action,
                body,
            } => Formula::ActBox {
                model: model.clone(),
                action: action.clone(),
                body: b(body)?,
            },
        })
    }

    /// Replaces every `O i j (ψ / φ)` by its definition in terms of the
    /// ideality box, innermost first:
    /// `[pref i j](φ -> <pref i j>(φ & [pref i j](φ -> ψ)))`.
    pub fn unfold_cond_obl(&self) -> Formula {
        let inner = self
            .map_children(&mut |c| Ok::<_, std::convert::Infallible>(c.unfold_cond_obl()))
            .unwrap_or_else(|e| match e {});
        match inner {
            Formula::CondObl {
                from,
                to,
                consequent,
                condition,
            } => {
                let cond = *condition;
                Formula::pref_box(
                    from.clone(),
                    to.clone(),
                    Formula::imp(
                        cond.clone(),
                        Formula::pref_dia(
                            from.clone(),
                            to.clone(),
                            Formula::and(
                                cond.clone(),
                                Formula::pref_box(from, to, Formula::imp(cond, *consequent)),
                            ),
                        ),
                    ),
                )
            }
            other => other,
        }
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn agents(&self) -> BTreeSet<AgentId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::PrefBox { from, to, .. } | Formula::CondObl { from, to, .. } => {
                out.insert(from.clone());
                out.insert(to.clone());
            }
            Formula::Does(i, _) => {
                out.insert(i.clone());
            }
            _ => {}
        });
        out
    }

    /// Names of action models referenced by dynamic modalities.
    pub fn action_models(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::ActBox { model, .. } = f {
                out.insert(model.clone());
            }
        });
        out
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn unfold_matches_definition() {
        let got =
            Formula::cond_obl("i", "j", Formula::atom("q"), Formula::atom("p")).unfold_cond_obl();
        let want = p("[pref i j](p -> <pref i j>(p & [pref i j](p -> q)))");
        assert_eq!(got, want);
        assert_eq!(got.count_cond_obl(), 0);
    }

    #[test]
    fn unfold_leaves_atoms_alone() {
        assert_eq!(Formula::atom("p").unfold_cond_obl(), Formula::atom("p"));
    }

    #[test]
    fn unfold_nested() {
        let f = p("O i j (O j i (q / r) / U O i i (p / p))");
        let g = f.unfold_cond_obl();
        assert_eq!(g.count_cond_obl(), 0);
        assert!(g.size() <= f.size() * 7 * 3);
        assert_eq!(g.unfold_cond_obl(), g);
    }

    #[test]
    fn derived_forms_expand_to_core_shapes() {
        let q = Formula::atom("q");
        let c = Formula::atom("c");
        assert_eq!(
            Formula::perm("i", "j", q.clone(), c.clone()),
            Formula::not(Formula::cond_obl(
                "i",
                "j",
                Formula::not(q.clone()),
                c.clone()
            ))
        );
        assert_eq!(
            Formula::claim("i", "j", q.clone(), c.clone()),
            p("O j i (do j q / c)")
        );
        assert_eq!(
            Formula::privilege("i", "j", q.clone(), c.clone()),
            p("!O i j (do i !q / c)")
        );
        assert_eq!(
            Formula::uncond_obl("i", "j", q.clone()),
            p("O i j (q / true)")
        );
        assert_eq!(Formula::exist(q.clone()), p("!U !q"));
        assert_eq!(Formula::act_dia("A", "a", q), p("![act A a] !q"));
    }

    #[test]
    fn staticness() {
        assert!(p("O i c (do i d / p) & U q").is_static());
        assert!(!p("p & <act John a1> q").is_static());
    }

    #[test]
    fn vocabulary_collection() {
        let f = p("O i c (do k d / p) & [act A a] [pref x y] q");
        let atoms: Vec<_> = f.atoms().into_iter().map(|a| a.0).collect();
        assert_eq!(atoms, ["d", "p", "q"]);
        let agents: Vec<_> = f.agents().into_iter().map(|a| a.0).collect();
        assert_eq!(agents, ["c", "i", "k", "x", "y"]);
        assert_eq!(f.action_models().into_iter().collect::<Vec<_>>(), ["A"]);
    }

    #[test]
    fn atom_names() {
        assert!(is_atom_name("p"));
        assert!(is_atom_name("V"));
        assert!(!is_atom_name("U"));
        assert!(!is_atom_name("true"));
        assert!(!is_atom_name("1x"));
        assert!(!is_atom_name("a*b"));
    }
}
