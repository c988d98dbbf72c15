//! Recursive-descent parser for the TPTP FOF subset.
//!
//! ```text
//! formula := unit ( ('&' unit)+ | ('|' unit)+ | '=>' unit | '<=>' unit )?
//! unit    := '~' unit | ('!' | '?') '[' VAR (',' VAR)* ']' ':' unit
//!          | '(' formula ')' | '$true' | '$false' | atom
//! atom    := ident args? | term ('=' | '!=') term
//! ```
//! Lowercase identifiers are symbols, uppercase identifiers are variables,
//! `%` starts a line comment.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Dollar(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Forall,
    Exists,
    Tilde,
    Amp,
    Pipe,
    Implies,
    Iff,
    Eq,
    Neq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => alloc::format!("`{s}`"),
            Tok::Dollar(s) => alloc::format!("`${s}`"),
            Tok::Eof => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrack => "[",
                    Tok::RBrack => "]",
                    Tok::Comma => ",",
                    Tok::Colon => ":",
                    Tok::Forall => "!",
                    Tok::Exists => "?",
                    Tok::Tilde => "~",
                    Tok::Amp => "&",
                    Tok::Pipe => "|",
                    Tok::Implies => "=>",
                    Tok::Iff => "<=>",
                    Tok::Eq => "=",
                    Tok::Neq => "!=",
                    _ => unreachable!(),
                };
                alloc::format!("`{s}`")
            }
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, msg: String| ParseError { line, column, kind: ParseErrorKind::Syntax(msg) };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBrack, 1),
            ']' => (Tok::RBrack, 1),
            ',' => (Tok::Comma, 1),
            ':' => (Tok::Colon, 1),
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Pipe, 1),
            '?' => (Tok::Exists, 1),
            '!' if peek == Some('=') => (Tok::Neq, 2),
            '!' => (Tok::Forall, 1),
            '=' if peek == Some('>') => (Tok::Implies, 2),
            '=' => (Tok::Eq, 1),
            '<' if peek == Some('=') && chars.get(i + 2) == Some(&'>') => (Tok::Iff, 3),
            '$' | 'a'..='z' | 'A'..='Z' => {
                let start = if c == '$' { i + 1 } else { i };
                let mut j = start;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                if j == start {
                    return Err(err(l0, c0, "expected a word after `$`".to_string()));
                }
                let word: String = chars[start..j].iter().collect();
                let tok = if c == '$' {
                    Tok::Dollar(word)
                } else if c.is_ascii_uppercase() {
                    Tok::Var(word)
                } else {
                    Tok::Ident(word)
                };
                (tok, j - i)
            }
            other => return Err(err(l0, c0, alloc::format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line: l0, column: c0 });
        i += len;
        col += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, column: t.column, kind }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = self.peek().describe();
        self.error_here(ParseErrorKind::Syntax(alloc::format!("expected {wanted}, found {found}")))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let first = self.unit()?;
        match self.peek() {
            Tok::Amp | Tok::Pipe => {
                let op = self.peek().clone();
                let mut items = alloc::vec![first];
                while *self.peek() == op {
                    self.bump();
                    items.push(self.unit()?);
                }
                if matches!(self.peek(), Tok::Amp | Tok::Pipe | Tok::Implies | Tok::Iff) {
                    return Err(self.unexpected("`)` (mixed connectives need parentheses)"));
                }
                Ok(if op == Tok::Amp { Formula::And(items) } else { Formula::Or(items) })
            }
            Tok::Implies | Tok::Iff => {
                let op = self.bump();
                let rhs = self.unit()?;
                if matches!(self.peek(), Tok::Amp | Tok::Pipe | Tok::Implies | Tok::Iff) {
                    return Err(self.unexpected("`)` (non-associative connective needs parentheses)"));
                }
                Ok(if op == Tok::Implies { Formula::implies(first, rhs) } else { Formula::iff(first, rhs) })
            }
            _ => Ok(first),
        }
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::Not(Box::new(self.unit()?)))
            }
            Tok::Forall | Tok::Exists => {
                let q = self.bump();
                self.expect(Tok::LBrack)?;
                let mut vars = Vec::new();
                loop {
                    match self.bump() {
                        Tok::Var(v) => vars.push(v),
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("a variable"));
                        }
                    }
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBrack => break,
                        _ => return Err(self.unexpected("`,` or `]`")),
                    }
                }
                self.expect(Tok::RBrack)?;
                self.expect(Tok::Colon)?;
                let body = Box::new(self.unit()?);
                Ok(if q == Tok::Forall { Formula::Forall(vars, body) } else { Formula::Exists(vars, body) })
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Dollar(w) => {
                let f = match w.as_str() {
                    "true" => Formula::And(Vec::new()),
                    "false" => Formula::Or(Vec::new()),
                    _ => return Err(self.error_here(ParseErrorKind::UnknownSymbol(alloc::format!("${w}")))),
                };
                self.bump();
                Ok(f)
            }
            Tok::Var(_) => {
                let lhs = self.term()?;
                self.equation(lhs)
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.bump();
                let args = if *self.peek() == Tok::LParen { self.args()? } else { Vec::new() };
                if matches!(self.peek(), Tok::Eq | Tok::Neq) {
                    self.pos = at;
                    let lhs = self.term()?;
                    return self.equation(lhs);
                }
                let arity = match self.sig.relation_arity(&name) {
                    Some(a) => a,
                    None => {
                        self.pos = at;
                        return Err(self.error_here(ParseErrorKind::UnknownSymbol(name)));
                    }
                };
                if arity != args.len() {
                    self.pos = at;
                    return Err(self.error_here(ParseErrorKind::ArityMismatch { symbol: name, expected: arity, found: args.len() }));
                }
                Ok(Formula::Pred(name, args))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn equation(&mut self, lhs: Term) -> Result<Formula, ParseError> {
        match self.bump() {
            Tok::Eq => Ok(Formula::Eq(lhs, self.term()?)),
            Tok::Neq => Ok(Formula::neq(lhs, self.term()?)),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("`=` or `!=`"))
            }
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = alloc::vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.bump();
                let args = if *self.peek() == Tok::LParen { self.args()? } else { Vec::new() };
                let arity = match self.sig.function_arity(&name) {
                    Some(a) => a,
                    None => {
                        self.pos = at;
                        return Err(self.error_here(ParseErrorKind::UnknownSymbol(name)));
                    }
                };
                if arity != args.len() {
                    self.pos = at;
                    return Err(self.error_here(ParseErrorKind::ArityMismatch { symbol: name, expected: arity, found: args.len() }));
                }
                Ok(Term::App(name, args))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses one formula, checking every symbol against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, sig };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig() -> Signature {
        let mut s = Signature::betweenness();
        s.add_relation("p", 1).unwrap();
        s.add_constant("a").unwrap();
        s.add_function("f", 1).unwrap();
        s
    }

    #[test]
    fn axiom_a_ast() {
        let f = parse_formula("![A,B,C]: (sb(A,B,C) => sb(C,B,A))", &sig()).unwrap();
        let v = |s: &str| Term::var(s);
        let want = Formula::forall(
            &["A", "B", "C"],
            Formula::implies(Formula::pred("sb", vec![v("A"), v("B"), v("C")]), Formula::pred("sb", vec![v("C"), v("B"), v("A")])),
        );
        assert_eq!(f, want);
    }

    #[test]
    fn reflexivity() {
        let f = parse_formula("![X]: X = X", &sig()).unwrap();
        assert_eq!(f, Formula::forall(&["X"], Formula::eq(Term::var("X"), Term::var("X"))));
    }

    #[test]
    fn functions_in_equations() {
        let f = parse_formula("f(a) != a & p(f(a))", &sig()).unwrap();
        let fa = Term::App("f".into(), vec![Term::constant("a")]);
        assert_eq!(f, Formula::And(vec![Formula::neq(fa.clone(), Term::constant("a")), Formula::pred("p", vec![fa])]));
    }

    #[test]
    fn nested_conjunction_kept_distinct() {
        let f = parse_formula("(p(a) & p(a)) & p(a)", &sig()).unwrap();
        assert!(matches!(&f, Formula::And(items) if items.len() == 2));
    }

    #[test]
    fn reports_position_of_syntax_error() {
        let e = parse_formula("![X]:\n  (p(X) => )", &sig()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn unknown_symbol_and_arity() {
        let e = parse_formula("q(a)", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("q".into()));
        let e = parse_formula("![X]: sb(X,X)", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ArityMismatch { symbol: "sb".into(), expected: 3, found: 2 });
        assert_eq!(e.column, 7);
        let e = parse_formula("f(a,a) = a", &sig()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { .. }));
    }

    #[test]
    fn mixed_connectives_rejected() {
        assert!(parse_formula("p(a) & p(a) | p(a)", &sig()).is_err());
        assert!(parse_formula("p(a) => p(a) => p(a)", &sig()).is_err());
        assert!(parse_formula("p(a) p(a)", &sig()).is_err());
    }

    #[test]
    fn comments_and_truth_constants() {
        let f = parse_formula("% header\n$true | ~ $false", &sig()).unwrap();
        assert_eq!(f, Formula::Or(vec![Formula::And(vec![]), Formula::Not(Box::new(Formula::Or(vec![])))]));
    }
}
