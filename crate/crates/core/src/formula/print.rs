use std::fmt;

use super::Formula;

#[derive(Clone, Copy, PartialEq, Eq)]
enum BinOp {
    And,
    Or,
    Imp,
    Iff,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "->",
            BinOp::Iff => "<->",
        }
    }
}

fn binary(f: &Formula) -> Option<(BinOp, &Formula, &Formula)> {
    match f {
        Formula::And(a, b) => Some((BinOp::And, a, b)),
        Formula::Or(a, b) => Some((BinOp::Or, a, b)),
        Formula::Imp(a, b) => Some((BinOp::Imp, a, b)),
        Formula::Iff(a, b) => Some((BinOp::Iff, a, b)),
        _ => None,
    }
}

/// Operands of a binary connective are parenthesised unless they are unary
/// or repeat the parent connective on its associative side. This is more
/// parentheses than the precedence rules need, but it reads better.
fn operand(f: &mut fmt::Formatter<'_>, child: &Formula, parent: BinOp, left: bool) -> fmt::Result {
    match binary(child) {
        None => write!(f, "{child}"),
        Some((op, _, _)) => {
            let assoc_side = if parent == BinOp::Imp { !left } else { left };
            if op == parent && assoc_side {
                write!(f, "{child}")
            } else {
                write!(f, "({child})")
            }
        }
    }
}

fn unary_body(f: &mut fmt::Formatter<'_>, body: &Formula) -> fmt::Result {
    if binary(body).is_some() {
        write!(f, "({body})")
    } else {
        write!(f, "{body}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((op, a, b)) = binary(self) {
            operand(f, a, op, true)?;
            write!(f, " {} ", op.symbol())?;
            return operand(f, b, op, false);
        }
        match self {
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Top => f.write_str("true"),
            Formula::Bot => f.write_str("false"),
            Formula::Not(x) => {
                f.write_str("!")?;
                unary_body(f, x)
            }
            Formula::PrefBox { from, to, body } => {
                write!(f, "[pref {from} {to}] ")?;
                unary_body(f, body)
            }
            Formula::Univ(x) => {
                f.write_str("U ")?;
                unary_body(f, x)
            }
            Formula::Does(i, x) => {
                write!(f, "do {i} ")?;
                unary_body(f, x)
            }
            Formula::CondObl {
                from,
                to,
                consequent,
                condition,
            } => write!(f, "O {from} {to} ({consequent} / {condition})"),
            Formula::ActBox {
                model,
                action,
                body,
            } => {
                write!(f, "[act {model} {action}] ")?;
                unary_body(f, body)
            }
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) | Formula::Iff(..) => {
                unreachable!()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::{parse, Formula};

    #[test]
    fn grammar_forms() {
        assert_eq!(
            Formula::pref_box("i", "c", Formula::atom("d")).to_string(),
            "[pref i c] d"
        );
        assert_eq!(
            Formula::uncond_obl("i", "c", Formula::does("i", Formula::atom("d"))).to_string(),
            "O i c (do i d / true)"
        );
    }

    #[test]
    fn parenthesisation() {
        for (src, want) in [
            ("!p & q -> U r", "(!p & q) -> U r"),
            ("p -> q -> r", "p -> q -> r"),
            ("(p -> q) -> r", "(p -> q) -> r"),
            ("p & q & r", "p & q & r"),
            ("p & (q & r)", "p & (q & r)"),
            ("[pref i j](p | q)", "[pref i j] (p | q)"),
            ("!!U p", "!!U p"),
        ] {
            let f = parse(src).unwrap();
            assert_eq!(f.to_string(), want);
            assert_eq!(parse(want).unwrap(), f);
        }
    }
}
