//! Text syntax for game formulas and theories.
//!
//! ```text
//! letters p q r          # optional declaration
//! p -> q | r
//! p & (q | r) -> s
//! true -> p              # same as a bare `p`
//! ```
//!
//! `&` binds tighter than `|`; `true`/`false` are the empty conjunction and
//! disjunction; `&(φ)` and `|(φ)` are one-element connectives. Atoms are
//! identifiers, optionally applied to a parenthesized argument list with no
//! space before the parenthesis, as in `F(p,q)`.

use std::fmt;

use super::formula::{GameFormula, GameSequent, GameTheory};
use crate::subset::Universe;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Atom(String),
    True,
    False,
    And,
    Or,
    Open,
    Close,
    Arrow,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '*')
}

fn lex(text: &str, line: usize) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |column: usize, message: String| ParseError {
        line,
        column,
        message,
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            _ if c.is_whitespace() => i += 1,
            '&' => {
                out.push((Token::And, col));
                i += 1;
            }
            '|' => {
                out.push((Token::Or, col));
                i += 1;
            }
            '(' => {
                out.push((Token::Open, col));
                i += 1;
            }
            ')' => {
                out.push((Token::Close, col));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Token::Arrow, col));
                i += 2;
            }
            _ if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if chars.get(i) == Some(&'(') {
                    // applied atom: name(arg, ...)
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ')')
                        .map(|p| i + p)
                        .ok_or_else(|| err(i + 1, "unclosed argument list".into()))?;
                    let inner: String = chars[i + 1..close].iter().collect();
                    let args: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if args.iter().any(|a| a.is_empty() || !a.chars().all(is_ident_char)) {
                        return Err(err(i + 1, format!("bad argument list `({inner})`")));
                    }
                    name = format!("{name}({})", args.join(","));
                    i = close + 1;
                }
                let tok = match name.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Atom(name),
                };
                out.push((tok, start + 1));
            }
            _ => return Err(err(col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn disjunction(&mut self) -> Result<GameFormula, ParseError> {
        let mut items = vec![self.conjunction()?];
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            GameFormula::Disj(items)
        })
    }

    fn conjunction(&mut self) -> Result<GameFormula, ParseError> {
        let mut items = vec![self.primary()?];
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            items.push(self.primary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            GameFormula::Conj(items)
        })
    }

    fn primary(&mut self) -> Result<GameFormula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of formula"));
        };
        self.pos += 1;
        match tok {
            Token::Atom(a) => Ok(GameFormula::Atom(a)),
            Token::True => Ok(GameFormula::top()),
            Token::False => Ok(GameFormula::bottom()),
            Token::Open => {
                let inner = self.disjunction()?;
                self.expect(Token::Close, "`)`")?;
                Ok(inner)
            }
            Token::And | Token::Or => {
                self.expect(Token::Open, "`(` after prefix connective")?;
                let inner = self.disjunction()?;
                self.expect(Token::Close, "`)`")?;
                Ok(if tok == Token::And {
                    GameFormula::Conj(vec![inner])
                } else {
                    GameFormula::Disj(vec![inner])
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a formula"))
            }
        }
    }
}

fn parser(text: &str, line: usize) -> Result<Parser, ParseError> {
    Ok(Parser {
        tokens: lex(text, line)?,
        pos: 0,
        line,
        end_column: text.chars().count() + 1,
    })
}

pub fn parse_formula(text: &str) -> Result<GameFormula, ParseError> {
    let mut p = parser(text, 1)?;
    let f = p.disjunction()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

fn parse_sequent_line(text: &str, line: usize) -> Result<GameSequent, ParseError> {
    let mut p = parser(text, line)?;
    let first = p.disjunction()?;
    let sequent = match p.peek() {
        None => GameSequent::fact(first),
        Some(Token::Arrow) => {
            p.pos += 1;
            GameSequent::new(first, p.disjunction()?)
        }
        Some(_) => return Err(p.error("expected `->` or end of line")),
    };
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(sequent)
}

/// Parses a theory, one sequent per line, `#` starting a comment. An optional
/// `letters ...` line declares the letters; otherwise they are inferred in
/// order of first occurrence.
pub fn parse_theory(text: &str) -> Result<GameTheory> {
    let mut declared: Option<Vec<String>> = None;
    let mut sequents = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.trim_start().strip_prefix("letters") {
            if rest.is_empty() || rest.starts_with(|c: char| c.is_whitespace() || c == ':') {
                let names = rest
                    .trim_start_matches(':')
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_owned);
                declared.get_or_insert_with(Vec::new).extend(names);
                continue;
            }
        }
        sequents.push(parse_sequent_line(line, i + 1)?);
    }
    match declared {
        Some(names) => GameTheory::new(Universe::new(names)?, sequents),
        None => Ok(GameTheory::inferred(sequents)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;
    use proptest::prelude::*;
    use GameFormula::*;

    fn a(s: &str) -> GameFormula {
        GameFormula::atom(s)
    }

    #[test]
    fn sequent_examples() {
        let t = parse_theory("p -> q | r\np & q -> r\np -> (q | r) & s").unwrap();
        let s = t.sequents();
        assert_eq!(s[0], GameSequent::new(a("p"), Disj(vec![a("q"), a("r")])));
        assert_eq!(s[1], GameSequent::new(Conj(vec![a("p"), a("q")]), a("r")));
        assert_eq!(
            s[2].conclusion,
            Conj(vec![Disj(vec![a("q"), a("r")]), a("s")])
        );
        assert_eq!(t.letters().names(), ["p", "q", "r", "s"]);
    }

    #[test]
    fn constants_and_facts() {
        let t = parse_theory("# facts\ntrue -> p\np -> false\nq\n").unwrap();
        assert_eq!(t.sequents()[0], GameSequent::fact(a("p")));
        assert_eq!(t.sequents()[1], GameSequent::new(a("p"), GameFormula::bottom()));
        assert_eq!(t.sequents()[2], GameSequent::fact(a("q")));
    }

    #[test]
    fn declared_letters_are_enforced() {
        let t = parse_theory("letters p q r\np -> q").unwrap();
        assert_eq!(t.letters().names(), ["p", "q", "r"]);
        assert_eq!(
            parse_theory("letters p\np -> q").unwrap_err(),
            Error::UndeclaredAtom("q".into())
        );
    }

    #[test]
    fn applied_atoms() {
        assert_eq!(
            parse_formula("F(p, q) & le(a,b)").unwrap(),
            Conj(vec![a("F(p,q)"), a("le(a,b)")])
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_theory("p -> q\np -> (q | r").unwrap_err();
        match err {
            Error::Parse(e) => assert_eq!((e.line, e.column), (2, 12)),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_formula("p $ q").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("").is_err());
    }

    fn arb_formula() -> impl Strategy<Value = GameFormula> {
        let leaf = prop_oneof![
            "[a-e]".prop_map(GameFormula::Atom),
            Just(GameFormula::top()),
            Just(GameFormula::bottom()),
        ];
        leaf.prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(Conj),
                prop::collection::vec(inner, 0..4).prop_map(Disj),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
