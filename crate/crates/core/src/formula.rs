//! First-order formulas over `⟨R, a, b, …⟩`: a parser for the text grammar,
//! a printer producing canonical text, satisfaction in finite structures,
//! and formula-defined reducts.
//!
//! Text grammar (whitespace is insignificant):
//!
//! ```text
//! formula := disj
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "!" unary | ("E" | "A") var "." formula | "(" formula ")" | atom
//! atom    := "R(" var "," var ")" | label "(" var ")" | var "=" var | var "!=" var
//! ```
//!
//! `&` and `|` associate to the left and a quantifier's scope extends as far
//! right as possible. `u!=v` is sugar for `!(u=v)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::structure::{FinStructure, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown label `{name}` at offset {offset}")]
    UnknownLabel { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownLabel { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("free variable `{0}` has no value")]
    Unbound(String),
    #[error("vertex {vertex} assigned to `{var}` is outside the universe of size {n}")]
    OutOfRange { var: String, vertex: usize, n: usize },
    #[error("formula uses label atoms but the structure is unlabeled")]
    Unlabeled,
    #[error("expected free variables {expected:?}, found {found:?}")]
    WrongFreeVariables {
        expected: Vec<String>,
        found: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Rel(usize, usize),
    Label(usize, usize),
    Eq(usize, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
}

/// A parsed formula. Variables are stored as slots into `vars`, one slot per
/// distinct name.
#[derive(Clone, Debug)]
pub struct Formula {
    root: Node,
    vars: Vec<String>,
    signature: Signature,
}

impl PartialEq for Formula {
    /// Structural equality up to the slot numbering.
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.to_string() == other.to_string()
    }
}

impl Eq for Formula {}

impl Formula {
    /// Parses with label names `a`–`z`.
    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        Formula::parse_with(text, &Signature::lettered(26))
    }

    pub fn parse_with(text: &str, signature: &Signature) -> Result<Formula, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            end: text.len(),
            vars: Vec::new(),
            signature,
        };
        let root = p.formula()?;
        if p.pos < p.tokens.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(Formula {
            root,
            vars: p.vars,
            signature: signature.clone(),
        })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn var_name(&self, slot: usize) -> &str {
        &self.vars[slot]
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        collect_free(&self.root, &mut bound, &mut out);
        out.iter().map(|&s| self.vars[s].as_str()).collect()
    }

    pub fn is_quantifier_free(&self) -> bool {
        fn qf(n: &Node) -> bool {
            match n {
                Node::Rel(..) | Node::Label(..) | Node::Eq(..) => true,
                Node::Not(a) => qf(a),
                Node::And(a, b) | Node::Or(a, b) => qf(a) && qf(b),
                Node::Exists(..) | Node::Forall(..) => false,
            }
        }
        qf(&self.root)
    }

    fn uses_labels(&self) -> bool {
        fn walk(n: &Node) -> bool {
            match n {
                Node::Label(..) => true,
                Node::Rel(..) | Node::Eq(..) => false,
                Node::Not(a) | Node::Exists(_, a) | Node::Forall(_, a) => walk(a),
                Node::And(a, b) | Node::Or(a, b) => walk(a) || walk(b),
            }
        }
        walk(&self.root)
    }

    /// For `E z. body`, the variable name and the body as a formula.
    pub fn strip_exists(&self) -> Option<(&str, Formula)> {
        match &self.root {
            Node::Exists(v, body) => Some((
                self.vars[*v].as_str(),
                Formula {
                    root: (**body).clone(),
                    vars: self.vars.clone(),
                    signature: self.signature.clone(),
                },
            )),
            _ => None,
        }
    }

    /// Satisfaction of the formula in `x` under `assignment`.
    pub fn eval(&self, x: &FinStructure, assignment: &[(&str, usize)]) -> Result<bool, EvalError> {
        let mut env = vec![None; self.vars.len()];
        for &(name, vertex) in assignment {
            if vertex >= x.size() {
                return Err(EvalError::OutOfRange {
                    var: name.to_string(),
                    vertex,
                    n: x.size(),
                });
            }
            if let Some(slot) = self.vars.iter().position(|v| v == name) {
                env[slot] = Some(vertex);
            }
        }
        for name in self.free_vars() {
            let slot = self.vars.iter().position(|v| v == name).unwrap();
            if env[slot].is_none() {
                return Err(EvalError::Unbound(name.to_string()));
            }
        }
        if x.labels().is_none() && self.uses_labels() {
            return Err(EvalError::Unlabeled);
        }
        Ok(eval_node(&self.root, x, &mut env))
    }

    /// The structure on the same universe (labels kept) whose relation is
    /// `{(x, y) : f[x, y]}`; `f` must have exactly the free variables `u`, `v`.
    pub fn reduct(&self, x: &FinStructure) -> Result<FinStructure, EvalError> {
        self.reduct_on(x, "u", "v")
    }

    pub fn reduct_on(&self, x: &FinStructure, first: &str, second: &str) -> Result<FinStructure, EvalError> {
        let mut found: Vec<String> = self.free_vars().iter().map(|s| s.to_string()).collect();
        found.sort();
        let mut expected = vec![first.to_string(), second.to_string()];
        expected.sort();
        if found != expected {
            return Err(EvalError::WrongFreeVariables { expected, found });
        }
        if x.labels().is_none() && self.uses_labels() {
            return Err(EvalError::Unlabeled);
        }
        let s1 = self.vars.iter().position(|v| v == first).unwrap();
        let s2 = self.vars.iter().position(|v| v == second).unwrap();
        let mut env = vec![None; self.vars.len()];
        Ok(x.with_relation(|a, b| {
            env[s1] = Some(a);
            env[s2] = Some(b);
            eval_node(&self.root, x, &mut env)
        }))
    }

    fn write_node(&self, n: &Node, ctx: u8, out: &mut String) {
        // Precedences: quantifier 0, | 1, & 2, ! and atoms 3.
        let var = |s: &usize| self.vars[*s].as_str();
        match n {
            Node::Rel(a, b) => {
                out.push_str(&format!("{}({},{})", self.signature.binary, var(a), var(b)));
            }
            Node::Label(l, a) => {
                let name = self
                    .signature
                    .labels
                    .get(*l)
                    .cloned()
                    .unwrap_or_else(|| format!("label{l}"));
                out.push_str(&format!("{name}({})", var(a)));
            }
            Node::Eq(a, b) => out.push_str(&format!("{}={}", var(a), var(b))),
            Node::Not(inner) => {
                if let Node::Eq(a, b) = inner.as_ref() {
                    out.push_str(&format!("{}!={}", var(a), var(b)));
                } else {
                    out.push('!');
                    self.write_node(inner, 3, out);
                }
            }
            Node::And(a, b) | Node::Or(a, b) => {
                let (prec, op) = if matches!(n, Node::And(..)) { (2, " & ") } else { (1, " | ") };
                let wrap = ctx > prec;
                if wrap {
                    out.push('(');
                }
                self.write_node(a, prec, out);
                out.push_str(op);
                self.write_node(b, prec + 1, out);
                if wrap {
                    out.push(')');
                }
            }
            Node::Exists(v, body) | Node::Forall(v, body) => {
                let q = if matches!(n, Node::Exists(..)) { 'E' } else { 'A' };
                let wrap = ctx > 0;
                if wrap {
                    out.push('(');
                }
                out.push_str(&format!("{q} {}. ", var(v)));
                self.write_node(body, 0, out);
                if wrap {
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_node(&self.root, 0, &mut out);
        f.write_str(&out)
    }
}

impl FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

fn collect_free(n: &Node, bound: &mut Vec<usize>, out: &mut Vec<usize>) {
    let see = |v: usize, bound: &Vec<usize>, out: &mut Vec<usize>| {
        if !bound.contains(&v) && !out.contains(&v) {
            out.push(v);
        }
    };
    match n {
        Node::Rel(a, b) | Node::Eq(a, b) => {
            see(*a, bound, out);
            see(*b, bound, out);
        }
        Node::Label(_, a) => see(*a, bound, out),
        Node::Not(a) => collect_free(a, bound, out),
        Node::And(a, b) | Node::Or(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Node::Exists(v, body) | Node::Forall(v, body) => {
            bound.push(*v);
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

fn eval_node(n: &Node, x: &FinStructure, env: &mut [Option<usize>]) -> bool {
    let val = |env: &[Option<usize>], s: usize| env[s].expect("unbound variable slot");
    match n {
        Node::Rel(a, b) => x.has(val(env, *a), val(env, *b)),
        Node::Label(l, a) => x.label(val(env, *a)) == Some(*l),
        Node::Eq(a, b) => val(env, *a) == val(env, *b),
        Node::Not(a) => !eval_node(a, x, env),
        Node::And(a, b) => eval_node(a, x, env) && eval_node(b, x, env),
        Node::Or(a, b) => eval_node(a, x, env) || eval_node(b, x, env),
        Node::Exists(v, body) | Node::Forall(v, body) => {
            let want = matches!(n, Node::Exists(..));
            let saved = env[*v];
            let mut result = !want;
            for w in 0..x.size() {
                env[*v] = Some(w);
                if eval_node(body, x, env) == want {
                    result = want;
                    break;
                }
            }
            env[*v] = saved;
            result
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Pipe,
    Eq,
    Neq,
    Dot,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'=' => Tok::Eq,
            b'.' => Tok::Dot,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                out.push((i, Tok::Neq));
                i += 2;
                continue;
            }
            b'!' => Tok::Bang,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: Vec<String>,
    signature: &'a Signature,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k).map(|t| &t.1)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn slot(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        }
    }

    fn var(&mut self) -> Result<usize, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(self.slot(&name))
            }
            _ => Err(self.error("expected a variable")),
        }
    }

    fn formula(&mut self) -> Result<Node, ParseError> {
        let mut left = self.conj()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let right = self.conj()?;
            left = Node::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Node, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let right = self.unary()?;
            left = Node::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Node::Not(Box::new(self.unary()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(q))
                if (q == "E" || q == "A")
                    && matches!(self.peek_at(1), Some(Tok::Ident(_)))
                    && self.peek_at(2) == Some(&Tok::Dot) =>
            {
                self.pos += 1;
                let v = self.var()?;
                self.pos += 1;
                let body = Box::new(self.formula()?);
                Ok(if q == "E" {
                    Node::Exists(v, body)
                } else {
                    Node::Forall(v, body)
                })
            }
            Some(Tok::Ident(_)) => self.atom(),
            Some(_) => Err(self.error("expected a formula")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let start = self.offset();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.error("expected an atom"));
        };
        match self.peek_at(1) {
            Some(Tok::LParen) => {
                self.pos += 2;
                let a = self.var()?;
                if name == self.signature.binary {
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.var()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Node::Rel(a, b));
                }
                self.expect(Tok::RParen, "`)`")?;
                match self.signature.label_index(&name) {
                    Some(l) => Ok(Node::Label(l, a)),
                    None => Err(ParseError::UnknownLabel {
                        offset: start,
                        name,
                    }),
                }
            }
            Some(Tok::Eq) | Some(Tok::Neq) => {
                let a = self.var()?;
                let neg = self.peek() == Some(&Tok::Neq);
                self.pos += 1;
                let b = self.var()?;
                let eq = Node::Eq(a, b);
                Ok(if neg { Node::Not(Box::new(eq)) } else { eq })
            }
            _ => {
                self.pos += 1;
                Err(self.error("expected `(`, `=` or `!=` after identifier"))
            }
        }
    }
}

/// The named formulas used by the circle constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Defines the linear order ρ from `⟨S, →, A, B⟩`.
    Lambda2,
    /// Defines the linear order τ from `⟨S, →, A, B, C⟩`.
    Lambda3,
    /// Recovers `→` from `⟨S, τ, A, B, C⟩`.
    Mu3,
    /// Incomparability `u ≠ v ∧ ¬R(u,v) ∧ ¬R(v,u)`.
    Theta,
    /// Unrelatedness `¬R(u,v) ∧ ¬R(v,u)`.
    Phi,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Lambda2,
        Builtin::Lambda3,
        Builtin::Mu3,
        Builtin::Theta,
        Builtin::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Lambda2 => "lambda2",
            Builtin::Lambda3 => "lambda3",
            Builtin::Mu3 => "mu3",
            Builtin::Theta => "theta",
            Builtin::Phi => "phi",
        }
    }

    fn source(self) -> &'static str {
        match self {
            Builtin::Lambda2 => {
                "((a(u) & a(v)) | (b(u) & b(v))) & R(u,v) \
                 | ((a(u) & b(v)) | (b(u) & a(v))) & R(v,u)"
            }
            Builtin::Lambda3 => {
                "((a(u) & a(v)) | (b(u) & b(v)) | (c(u) & c(v))) & R(u,v) \
                 | ((a(u) & c(v)) | (c(u) & b(v)) | (b(u) & a(v))) & R(v,u) \
                 | ((c(u) & a(v)) | (b(u) & c(v)) | (a(u) & b(v))) & (u!=v & !R(u,v) & !R(v,u))"
            }
            Builtin::Mu3 => {
                "((a(u) & a(v)) | (b(u) & b(v)) | (c(u) & c(v))) & R(u,v) \
                 | ((c(u) & a(v)) | (b(u) & c(v)) | (a(u) & b(v))) & !R(u,v)"
            }
            Builtin::Theta => "u!=v & !R(u,v) & !R(v,u)",
            Builtin::Phi => "!R(u,v) & !R(v,u)",
        }
    }

    pub fn signature(self) -> Signature {
        match self {
            Builtin::Lambda2 => Signature::lettered(2),
            Builtin::Lambda3 | Builtin::Mu3 => Signature::lettered(3),
            Builtin::Theta | Builtin::Phi => Signature::plain(),
        }
    }

    pub fn formula(self) -> Formula {
        Formula::parse_with(self.source(), &self.signature()).expect("builtin formula parses")
    }
}

impl FromStr for Builtin {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown builtin formula `{s}`"))
    }
}

pub fn builtin(name: &str) -> Result<Formula, String> {
    Ok(name.parse::<Builtin>()?.formula())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn parses_atoms_and_connectives() {
        let phi = f("!R(u,v) & !R(v,u)");
        assert_eq!(phi.to_string(), "!R(u,v) & !R(v,u)");
        assert_eq!(
            *phi.root(),
            Node::And(
                Box::new(Node::Not(Box::new(Node::Rel(0, 1)))),
                Box::new(Node::Not(Box::new(Node::Rel(1, 0))))
            )
        );
        let guard = f("(a(u) & a(v)) | (b(u) & b(v))");
        assert_eq!(guard.to_string(), "a(u) & a(v) | b(u) & b(v)");
        assert_eq!(guard.free_vars(), vec!["u", "v"]);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let err = Formula::parse("R(u,").unwrap_err();
        assert_eq!(err.offset(), 4);
        assert!(matches!(err, ParseError::Syntax { .. }));
        assert!(Formula::parse("R(u,v) &").is_err());
        assert!(Formula::parse("R(u,v))").is_err());
        assert_eq!(Formula::parse("u # v").unwrap_err().offset(), 2);
        let err = Formula::parse_with("d(u)", &Signature::lettered(3)).unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownLabel {
                offset: 0,
                name: "d".into()
            }
        );
    }

    #[test]
    fn quantifier_scope_and_printing() {
        let g = f("R(x,y) & E z. R(x,z) & R(z,y)");
        assert_eq!(g.to_string(), "R(x,y) & (E z. R(x,z) & R(z,y))");
        assert_eq!(g.free_vars(), vec!["x", "y"]);
        assert!(!g.is_quantifier_free());
        let h = f("A x. E y. R(x,y) | x=y");
        assert_eq!(h.to_string(), "A x. E y. R(x,y) | x=y");
        assert!(h.free_vars().is_empty());
        // A variable called E is still a variable.
        assert_eq!(f("E=u").to_string(), "E=u");
    }

    #[test]
    fn left_associativity_is_preserved() {
        let left = f("R(u,v) & R(v,u) & u=v");
        let right = f("R(u,v) & (R(v,u) & u=v)");
        assert_ne!(left.root(), right.root());
        assert_eq!(right.to_string(), "R(u,v) & (R(v,u) & u=v)");
        assert_eq!(f(&right.to_string()).root(), right.root());
    }

    #[test]
    fn evaluation() {
        let c3 = FinStructure::cycle3();
        assert_eq!(f("R(u,v)").eval(&c3, &[("u", 0), ("v", 1)]), Ok(true));
        assert_eq!(f("R(u,v)").eval(&c3, &[("u", 1), ("v", 0)]), Ok(false));
        let i2 = FinStructure::edgeless(2);
        assert_eq!(Builtin::Phi.formula().eval(&i2, &[("u", 0), ("v", 1)]), Ok(true));
        assert_eq!(f("u=u").eval(&c3, &[("u", 2)]), Ok(true));
        // Every vertex of C3 has an out-neighbour.
        assert_eq!(f("A x. E y. R(x,y)").eval(&c3, &[]), Ok(true));
        assert_eq!(f("A x. E y. R(x,y)").eval(&FinStructure::chain(3), &[]), Ok(false));
    }

    #[test]
    fn evaluation_errors() {
        let c3 = FinStructure::cycle3();
        assert_eq!(
            f("R(u,v)").eval(&c3, &[("u", 0)]),
            Err(EvalError::Unbound("v".into()))
        );
        assert!(matches!(
            f("R(u,v)").eval(&c3, &[("u", 0), ("v", 5)]),
            Err(EvalError::OutOfRange { vertex: 5, .. })
        ));
        assert_eq!(f("a(u)").eval(&c3, &[("u", 0)]), Err(EvalError::Unlabeled));
    }

    #[test]
    fn quantified_variables_shadow_assignments() {
        let c3 = FinStructure::cycle3();
        // `x` is bound, so the assignment to x is irrelevant.
        let g = f("E x. R(x,y)");
        assert_eq!(g.eval(&c3, &[("x", 0), ("y", 0)]), Ok(true));
        assert_eq!(g.free_vars(), vec!["y"]);
    }

    #[test]
    fn reducts() {
        let c3 = FinStructure::cycle3();
        assert_eq!(f("R(u,v)").reduct(&c3).unwrap(), c3);
        let rev = f("R(v,u)").reduct(&c3).unwrap();
        assert_eq!(rev.arrows(), vec![(0, 2), (1, 0), (2, 1)]);
        assert!(matches!(
            f("R(u,w)").reduct(&c3),
            Err(EvalError::WrongFreeVariables { .. })
        ));
        assert!(matches!(f("u=u").reduct(&c3), Err(EvalError::WrongFreeVariables { .. })));
        let theta = Builtin::Theta.formula().reduct(&FinStructure::edgeless(3)).unwrap();
        assert_eq!(theta.arrow_count(), 6);
    }

    #[test]
    fn builtins() {
        assert_eq!(Builtin::Theta.formula().to_string(), "u!=v & !R(u,v) & !R(v,u)");
        assert_eq!(Builtin::Phi.formula().free_vars().len(), 2);
        for b in Builtin::ALL {
            let g = b.formula();
            assert!(g.is_quantifier_free(), "{}", b.name());
            assert_eq!(g.free_vars(), vec!["u", "v"]);
            let again = Formula::parse_with(&g.to_string(), &b.signature()).unwrap();
            assert_eq!(again.root(), g.root());
            assert_eq!(again.to_string(), g.to_string());
        }
        assert_eq!(
            Builtin::Lambda2.formula().to_string(),
            "(a(u) & a(v) | b(u) & b(v)) & R(u,v) | (a(u) & b(v) | b(u) & a(v)) & R(v,u)"
        );
        assert!(builtin("nope").is_err());
    }
}
