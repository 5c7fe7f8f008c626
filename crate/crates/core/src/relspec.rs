//! A small s-expression language for describing relations.
//!
//! ```text
//! (union (fc 1) (inverse (fc 1)))
//! (compose (offset "a" a 1) (identity "a"))
//! (product (alphabet a b) "a*" "b*")
//! (pairs "ab" ("a" "ab") ("ε" "b"))
//! (automaton "r.json")
//! ```
//!
//! Alphabets are either `(alphabet s₁ s₂ …)` or a string whose characters are
//! the symbols. Named fixtures (`fc`, `tree`, `thm4`, …) take numeric
//! parameters. `;` starts a comment running to the end of the line.

use std::path::{Path, PathBuf};

use crate::alphabet::Alphabet;
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::relation::AutomaticRelation;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Atom { text: String, quoted: bool, line: usize, column: usize },
    List { items: Vec<Node>, line: usize, column: usize },
}

impl Node {
    fn pos(&self) -> (usize, usize) {
        match self {
            Node::Atom { line, column, .. } | Node::List { line, column, .. } => (*line, *column),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.pos();
        Error::Parse { line, column, message: message.into() }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn fail(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }

    fn node(&mut self) -> Result<Node> {
        self.skip_space();
        let (line, column) = (self.line, self.column);
        match self.chars.peek().copied() {
            None => Err(self.fail("unexpected end of input")),
            Some(')') => Err(self.fail("unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.chars.peek() {
                        None => return Err(Error::Parse { line, column, message: "unclosed `(`".into() }),
                        Some(')') => {
                            self.bump();
                            return Ok(Node::List { items, line, column });
                        }
                        Some(_) => items.push(self.node()?),
                    }
                }
            }
            Some('"') => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(Error::Parse { line, column, message: "unterminated string".into() }),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => text.push(c),
                            Some('n') => text.push('\n'),
                            _ => return Err(self.fail("bad escape in string")),
                        },
                        Some(c) => text.push(c),
                    }
                }
                Ok(Node::Atom { text, quoted: true, line, column })
            }
            Some(_) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';' {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Node::Atom { text, quoted: false, line, column })
            }
        }
    }
}

fn parse(text: &str) -> Result<Node> {
    let mut lx = Lexer { chars: text.chars().peekable(), line: 1, column: 1 };
    let node = lx.node()?;
    lx.skip_space();
    if lx.chars.peek().is_some() {
        return Err(lx.fail("trailing input after the expression"));
    }
    Ok(node)
}

/// Evaluates relation expressions; `(automaton "file")` paths are resolved
/// against `base_dir`.
pub struct Evaluator {
    base_dir: PathBuf,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { base_dir: PathBuf::from(".") }
    }
}

impl Evaluator {
    pub fn new(base_dir: impl AsRef<Path>) -> Self {
        Evaluator { base_dir: base_dir.as_ref().to_path_buf() }
    }

    pub fn eval_str(&self, text: &str) -> Result<AutomaticRelation> {
        self.relation(&parse(text)?)
    }

    fn relation(&self, n: &Node) -> Result<AutomaticRelation> {
        let (head, args) = match n {
            Node::Atom { text, quoted: false, .. } => (text.as_str(), &[][..]),
            Node::Atom { .. } => return Err(n.error("expected a relation, found a string")),
            Node::List { items, .. } => match items.split_first() {
                Some((Node::Atom { text, quoted: false, .. }, rest)) => (text.as_str(), rest),
                _ => return Err(n.error("expected `(operator …)`")),
            },
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(n.error(format!("`{head}` takes {k} argument(s), got {}", args.len())))
            }
        };
        let at = |e: Error| match e {
            Error::Parse { .. } => e,
            other => n.error(other.to_string()),
        };
        match head {
            "union" | "intersect" | "difference" | "compose" => {
                arity(2)?;
                let (x, y) = (self.relation(&args[0])?, self.relation(&args[1])?);
                match head {
                    "union" => x.union(&y),
                    "intersect" => x.intersect(&y),
                    "difference" => x.difference(&y),
                    _ => x.compose(&y),
                }
                .map_err(at)
            }
            "inverse" | "sym" | "complement" | "minimize" => {
                arity(1)?;
                let x = self.relation(&args[0])?;
                match head {
                    "inverse" => Ok(x.inverse()),
                    "sym" => x.symmetric_closure(),
                    "complement" => x.complement(),
                    _ => x.minimize(),
                }
                .map_err(at)
            }
            "identity" | "equal-length" | "all" | "empty" => {
                arity(1)?;
                let a = alphabet(&args[0])?;
                match head {
                    "identity" => AutomaticRelation::identity(&a),
                    "equal-length" => AutomaticRelation::equal_length(&a),
                    "all" => AutomaticRelation::all(&a),
                    _ => AutomaticRelation::empty(&a),
                }
                .map_err(at)
            }
            "offset" => {
                arity(3)?;
                let a = alphabet(&args[0])?;
                let c = number(&args[2])?;
                if c == 0 {
                    return Err(args[2].error("offset must be at least 1"));
                }
                AutomaticRelation::offset_successor(&a, atom(&args[1])?, c).map_err(at)
            }
            "product" => {
                arity(3)?;
                let a = alphabet(&args[0])?;
                let lang = |x: &Node| Automaton::from_regex(&a, atom(x)?).map_err(|e| x.error(e.to_string()));
                AutomaticRelation::product(&lang(&args[1])?, &lang(&args[2])?).map_err(at)
            }
            "pairs" => {
                let (first, rest) = args.split_first().ok_or_else(|| n.error("`pairs` needs an alphabet"))?;
                let a = alphabet(first)?;
                let pairs = rest
                    .iter()
                    .map(|p| match p {
                        Node::List { items, .. } if items.len() == 2 => {
                            let w = |x: &Node| a.parse_word(atom(x)?).map_err(|e| x.error(e.to_string()));
                            Ok((w(&items[0])?, w(&items[1])?))
                        }
                        _ => Err(p.error("expected a pair `(u v)`")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                AutomaticRelation::from_pairs(&a, &pairs).map_err(at)
            }
            "automaton" => {
                arity(1)?;
                let path = self.base_dir.join(atom(&args[0])?);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| args[0].error(format!("cannot read {}: {e}", path.display())))?;
                AutomaticRelation::new(Automaton::from_json(&text).map_err(at)?).map_err(at)
            }
            name if fixtures::RELATION_NAMES.contains(&name) => {
                let params = args.iter().map(number).collect::<Result<Vec<_>>>()?;
                if name == "fc" && params.first() == Some(&0) {
                    return Err(n.error("offset must be at least 1"));
                }
                if name == "thm4" && params.first().is_some_and(|&k| k < 2) {
                    return Err(n.error("k must be at least 2"));
                }
                fixtures::relation(name, &params).map_err(at)
            }
            other => Err(n.error(format!("unknown operator `{other}`"))),
        }
    }
}

fn atom(n: &Node) -> Result<&str> {
    match n {
        Node::Atom { text, .. } => Ok(text),
        Node::List { .. } => Err(n.error("expected a symbol or string")),
    }
}

fn number(n: &Node) -> Result<usize> {
    match n {
        Node::Atom { text, quoted: false, .. } => {
            text.parse().map_err(|_| n.error(format!("expected a number, got `{text}`")))
        }
        _ => Err(n.error("expected a number")),
    }
}

fn alphabet(n: &Node) -> Result<Alphabet> {
    match n {
        Node::Atom { text, quoted: true, .. } => Alphabet::chars(text).map_err(|e| n.error(e.to_string())),
        Node::List { items, .. } if matches!(items.first(), Some(Node::Atom { text, quoted: false, .. }) if text == "alphabet") =>
        {
            let names = items[1..].iter().map(atom).collect::<Result<Vec<_>>>()?;
            Alphabet::new(names).map_err(|e| n.error(e.to_string()))
        }
        _ => Err(n.error("expected an alphabet: a string or `(alphabet …)`")),
    }
}

/// Parses and evaluates with paths relative to the working directory.
pub fn parse_relation(text: &str) -> Result<AutomaticRelation> {
    Evaluator::default().eval_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_example() {
        let r = parse_relation("(union (fc 1) (inverse (fc 1)))").unwrap();
        let f = fixtures::fc(1).unwrap();
        assert!(r.equivalent(&f.symmetric_closure().unwrap()).unwrap());
    }

    #[test]
    fn constructors() {
        let p = parse_relation("(product (alphabet a b) \"a*\" \"b*\") ; comment").unwrap();
        assert!(p.contains_str("aa", "bbb").unwrap());
        assert!(!p.contains_str("b", "").unwrap());
        let q = parse_relation("(pairs \"ab\" (\"a\" \"ab\") (\"ε\" \"b\"))").unwrap();
        assert!(q.contains_str("", "b").unwrap());
        assert_eq!(q.automaton().enumerate(4).unwrap().len(), 2);
        let c = parse_relation("(compose (offset \"a\" a 1) (offset \"a\" a 1))").unwrap();
        assert!(c.equivalent(&fixtures::fc(2).unwrap()).unwrap());
        assert!(parse_relation("tree").unwrap().equivalent(&fixtures::tree().unwrap()).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_relation("(union (fc 1)\n  (frob 2))").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }), "{e}");
        assert!(matches!(parse_relation("(fc 1"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse_relation("(fc 0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_relation("(fc 1) x"), Err(Error::Parse { .. })));
        let mismatch = parse_relation("(union (fc 1) (identity \"ab\"))").unwrap_err();
        assert!(matches!(mismatch, Error::Parse { line: 1, column: 1, .. }));
    }
}
