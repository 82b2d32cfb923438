//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp { "<->" imp }
//! imp     := or [ "->" imp ]
//! or      := and { "|" and }
//! and     := unary { "&" unary }
//! unary   := "!" unary
//!          | "[" "pref" AG AG "]" unary | "<" "pref" AG AG ">" unary
//!          | "U" unary | "E" unary | "do" AG unary
//!          | "O" AG AG "(" formula "/" formula ")"
//!          | "P" AG AG "(" formula "/" formula ")"
//!          | "[" "act" ID ID "]" unary | "<" "act" ID ID ">" unary
//!          | "true" | "false" | ATOM | "(" formula ")"
//! ```

use std::fmt;

use super::{is_atom_name, ActionId, AgentId, AtomId, Formula};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: found {}, expected one of: {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Lt,
    Gt,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::DoubleArrow => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let rest = &chars[i..];
        let (tok, len) = if rest.starts_with(&['<', '-', '>']) {
            (Tok::DoubleArrow, 3)
        } else if rest.starts_with(&['-', '>']) {
            (Tok::Arrow, 2)
        } else {
            match c {
                '!' => (Tok::Bang, 1),
                '&' => (Tok::Amp, 1),
                '|' => (Tok::Pipe, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '[' => (Tok::LBrack, 1),
                ']' => (Tok::RBrack, 1),
                '<' => (Tok::Lt, 1),
                '>' => (Tok::Gt, 1),
                '/' => (Tok::Slash, 1),
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let len = rest
                        .iter()
                        .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                        .count();
                    (Tok::Ident(rest[..len].iter().collect()), len)
                }
                other => {
                    return Err(ParseError {
                        line: l0,
                        column: c0,
                        found: format!("`{other}`"),
                        expected: vec!["a formula token".into()],
                    })
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

const UNARY_START: &[&str] = &[
    "`!`", "`[`", "`<`", "`(`", "`U`", "`E`", "`do`", "`O`", "`P`", "`true`", "`false`", "atom",
];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

/// Parses a formula. Derived surface forms (`<pref ..>`, `E`, `P`,
/// `<act ..>`) are expanded into core nodes.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if p.peek() != &Tok::Eof {
        return Err(p.error(&["`<->`", "`->`", "`|`", "`&`", "end of input"]));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            found: s.tok.to_string(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    /// `( formula / formula )` as used by `O` and `P`.
    fn cond_args(&mut self) -> Result<(Formula, Formula), ParseError> {
        self.expect(Tok::LParen)?;
        let consequent = self.formula()?;
        if *self.peek() != Tok::Slash {
            return Err(self.error(&["`/`", "`<->`", "`->`", "`|`", "`&`"]));
        }
        self.bump();
        let condition = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok((consequent, condition))
    }

    /// Body of a bracketed modality after the opening `[` or `<`.
    fn bracket(&mut self, close: Tok, diamond: bool) -> Result<Formula, ParseError> {
        let kind = match self.peek() {
            Tok::Ident(s) if s == "pref" || s == "act" => s.clone(),
            _ => return Err(self.error(&["`pref`", "`act`"])),
        };
        self.bump();
        let first = self.ident(if kind == "pref" {
            "agent"
        } else {
            "action model name"
        })?;
        let second = self.ident(if kind == "pref" { "agent" } else { "action" })?;
        self.expect(close)?;
        let body = self.unary()?;
        Ok(match (kind.as_str(), diamond) {
            ("pref", false) => Formula::pref_box(AgentId::new(first), AgentId::new(second), body),
            ("pref", true) => Formula::pref_dia(AgentId::new(first), AgentId::new(second), body),
            (_, false) => Formula::act_box(first, ActionId::new(second), body),
            (_, true) => Formula::act_dia(first, ActionId::new(second), body),
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LBrack => {
                self.bump();
                self.bracket(Tok::RBrack, false)
            }
            Tok::Lt => {
                self.bump();
                self.bracket(Tok::Gt, true)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`<->`", "`->`", "`|`", "`&`"]));
                }
                self.bump();
                Ok(f)
            }
            Tok::Ident(word) => {
                self.bump();
                match word.as_str() {
                    "true" => Ok(Formula::Top),
                    "false" => Ok(Formula::Bot),
                    "U" => Ok(Formula::univ(self.unary()?)),
                    "E" => Ok(Formula::exist(self.unary()?)),
                    "do" => {
                        let agent = self.ident("agent")?;
                        Ok(Formula::does(AgentId::new(agent), self.unary()?))
                    }
                    "O" | "P" => {
                        let from = AgentId::new(self.ident("agent")?);
                        let to = AgentId::new(self.ident("agent")?);
                        let (consequent, condition) = self.cond_args()?;
                        Ok(if word == "O" {
                            Formula::cond_obl(from, to, consequent, condition)
                        } else {
                            Formula::perm(from, to, consequent, condition)
                        })
                    }
                    w if is_atom_name(w) => Ok(Formula::Atom(AtomId::new(w))),
                    _ => {
                        self.pos -= 1;
                        Err(self.error(UNARY_START))
                    }
                }
            }
            _ => Err(self.error(UNARY_START)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn directed_conditional_claim() {
        assert_eq!(
            parse("O i c (do i d / p)").unwrap(),
            Formula::cond_obl("i", "c", Formula::does("i", a("d")), a("p"))
        );
    }

    #[test]
    fn constants() {
        assert_eq!(parse("true").unwrap(), Formula::Top);
        assert_eq!(parse(" false ").unwrap(), Formula::Bot);
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("!p & q -> U r").unwrap(),
            Formula::imp(
                Formula::and(Formula::not(a("p")), a("q")),
                Formula::univ(a("r"))
            )
        );
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(a("p"), Formula::and(a("q"), a("r")))
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::imp(a("p"), Formula::imp(a("q"), a("r")))
        );
        assert_eq!(
            parse("p <-> q <-> r").unwrap(),
            Formula::iff(Formula::iff(a("p"), a("q")), a("r"))
        );
        assert_eq!(
            parse("p -> q <-> r").unwrap(),
            Formula::iff(Formula::imp(a("p"), a("q")), a("r"))
        );
        assert_eq!(
            parse("[pref i j] p & q").unwrap(),
            Formula::and(Formula::pref_box("i", "j", a("p")), a("q"))
        );
    }

    #[test]
    fn diamonds_expand() {
        assert_eq!(
            parse("<pref i j> p").unwrap(),
            Formula::not(Formula::pref_box("i", "j", Formula::not(a("p"))))
        );
        assert_eq!(
            parse("<act John a1> O i c (f / true)").unwrap(),
            Formula::not(Formula::act_box(
                "John",
                "a1",
                Formula::not(Formula::uncond_obl("i", "c", a("f")))
            ))
        );
        assert_eq!(
            parse("P i j (p / q)").unwrap(),
            Formula::perm("i", "j", a("p"), a("q"))
        );
    }

    #[test]
    fn multiline_error_position() {
        let e = parse("p &\n  & q").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains(&"atom".to_string()));
    }

    #[test]
    fn missing_slash() {
        let e = parse("O i j (p q)").unwrap_err();
        assert_eq!(e.column, 10);
        assert!(e.expected.contains(&"`/`".to_string()));
    }

    #[test]
    fn bad_bracket_keyword() {
        let e = parse("[foo i j] p").unwrap_err();
        assert_eq!(e.expected, vec!["`pref`", "`act`"]);
        assert_eq!(e.found, "`foo`");
    }

    #[test]
    fn trailing_input() {
        let e = parse("p q").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse("p )").is_err());
        assert!(parse("").is_err());
        assert!(parse("p $ q").is_err());
    }

    #[test]
    fn keywords_are_not_atoms() {
        assert!(parse("U").is_err());
        assert!(parse("p & O").is_err());
    }
}
