//! Formula syntax: abstract syntax tree, parser, printer, substitution and
//! box-abstraction.
//!
//! The core language has variables, `bot` and the connectives `&`, `|`, `->`
//! and the modal operator `box`. Negation, `top`, `<->` and the identity
//! connective `==` are surface sugar: the parser expands them and the printer
//! folds them back when the core pattern matches exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// A modal propositional formula.
///
/// `Formula::Box` is the necessity operator; everything else is the usual
/// intuitionistic base. Formulas are immutable values: all operations build
/// fresh trees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Falsum,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    pub fn boxed(inner: Formula) -> Formula {
        Formula::Box(Box::new(inner))
    }

    /// `~f`, expanded form `f -> bot`.
    pub fn not(inner: Formula) -> Formula {
        Formula::implies(inner, Formula::Falsum)
    }

    /// `top`, expanded form `bot -> bot`.
    pub fn top() -> Formula {
        Formula::not(Formula::Falsum)
    }

    /// `f <-> g`, expanded form `(f -> g) & (g -> f)`.
    pub fn iff(left: Formula, right: Formula) -> Formula {
        Formula::and(
            Formula::implies(left.clone(), right.clone()),
            Formula::implies(right, left),
        )
    }

    /// Propositional identity `f == g`, expanded form
    /// `box(f -> g) & box(g -> f)`.
    pub fn ident(left: Formula, right: Formula) -> Formula {
        Formula::and(
            Formula::boxed(Formula::implies(left.clone(), right.clone())),
            Formula::boxed(Formula::implies(right, left)),
        )
    }

    /// Recognizes `f -> bot` and returns `f`.
    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Falsum => Some(a),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self.as_not(), Some(Formula::Falsum))
    }

    /// Recognizes `(a -> b) & (b -> a)` and returns `(a, b)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::And(l, r) = self {
            if let (Formula::Implies(a, b), Formula::Implies(c, d)) = (&**l, &**r) {
                if a == d && b == c {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Recognizes `box(a -> b) & box(b -> a)` and returns `(a, b)`.
    pub fn as_ident(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::And(l, r) = self {
            if let (Formula::Box(bl), Formula::Box(br)) = (&**l, &**r) {
                if let (Formula::Implies(a, b), Formula::Implies(c, d)) = (&**bl, &**br) {
                    if a == d && b == c {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// True iff the formula contains no `box`.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Falsum => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Box(_) => false,
        }
    }

    /// Variables occurring in the formula, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(x) => {
                out.insert(x.clone());
            }
            Formula::Falsum => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
            Formula::Box(a) => a.collect_variables(out),
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Falsum => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Box(a) => 1 + a.size(),
        }
    }

    /// Connective nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Falsum => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Box(a) => 1 + a.depth(),
        }
    }

    /// Maximal nesting of `box`.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Falsum => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Box(a) => 1 + a.modal_depth(),
        }
    }

    /// Replaces every occurrence of `var` (including under `box`) by
    /// `replacement`.
    pub fn substitute(&self, var: &str, replacement: &Formula) -> Formula {
        match self {
            Formula::Var(x) if x == var => replacement.clone(),
            Formula::Var(_) | Formula::Falsum => self.clone(),
            Formula::And(a, b) => Formula::and(
                a.substitute(var, replacement),
                b.substitute(var, replacement),
            ),
            Formula::Or(a, b) => Formula::or(
                a.substitute(var, replacement),
                b.substitute(var, replacement),
            ),
            Formula::Implies(a, b) => Formula::implies(
                a.substitute(var, replacement),
                b.substitute(var, replacement),
            ),
            Formula::Box(a) => Formula::boxed(a.substitute(var, replacement)),
        }
    }

    /// Applies a simultaneous substitution (used to undo `abstract_boxes`).
    pub fn substitute_all(&self, binding: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(x) => binding.get(x).cloned().unwrap_or_else(|| self.clone()),
            Formula::Falsum => Formula::Falsum,
            Formula::And(a, b) => {
                Formula::and(a.substitute_all(binding), b.substitute_all(binding))
            }
            Formula::Or(a, b) => Formula::or(a.substitute_all(binding), b.substitute_all(binding)),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute_all(binding), b.substitute_all(binding))
            }
            Formula::Box(a) => Formula::boxed(a.substitute_all(binding)),
        }
    }

    /// Replaces every maximal `box`-rooted subformula by a fresh variable.
    ///
    /// Identical boxed subformulas receive the same variable, so the skeleton
    /// is propositional and `skeleton.substitute_all(&binding)` recovers the
    /// input. Fresh names are derived from a hash of the boxed subterm's
    /// canonical rendering, which makes the abstraction deterministic across
    /// runs.
    pub fn abstract_boxes(&self) -> (Formula, BTreeMap<String, Formula>) {
        let free: BTreeSet<String> = self.variables();
        let mut binding: BTreeMap<String, Formula> = BTreeMap::new();
        let skeleton = self.abstract_boxes_rec(&free, &mut binding);
        (skeleton, binding)
    }

    fn abstract_boxes_rec(
        &self,
        free: &BTreeSet<String>,
        binding: &mut BTreeMap<String, Formula>,
    ) -> Formula {
        match self {
            Formula::Box(_) => {
                if let Some(name) = binding
                    .iter()
                    .find_map(|(n, f)| (f == self).then(|| n.clone()))
                {
                    return Formula::Var(name);
                }
                let name = fresh_box_name(self, free, binding);
                binding.insert(name.clone(), self.clone());
                Formula::Var(name)
            }
            Formula::Var(_) | Formula::Falsum => self.clone(),
            Formula::And(a, b) => Formula::and(
                a.abstract_boxes_rec(free, binding),
                b.abstract_boxes_rec(free, binding),
            ),
            Formula::Or(a, b) => Formula::or(
                a.abstract_boxes_rec(free, binding),
                b.abstract_boxes_rec(free, binding),
            ),
            Formula::Implies(a, b) => Formula::implies(
                a.abstract_boxes_rec(free, binding),
                b.abstract_boxes_rec(free, binding),
            ),
        }
    }

    /// Canonical text form. `parse(render(f))` is structurally equal to `f`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_at(self, Level::Equiv, &mut out);
        out
    }
}

fn fresh_box_name(
    boxed: &Formula,
    free: &BTreeSet<String>,
    binding: &BTreeMap<String, Formula>,
) -> String {
    let digest = Sha256::digest(boxed.render().as_bytes());
    // 12 hex chars suffice; extend on the (theoretical) collision with a
    // user variable or an earlier abstraction.
    for len in [12usize, 24, 48] {
        let name = format!("b_{}", hex_prefix(&digest, len));
        if !free.contains(&name) && !binding.contains_key(&name) {
            return name;
        }
    }
    let mut name = format!("b_{}", hex_prefix(&digest, 64));
    while free.contains(&name) || binding.contains_key(&name) {
        name.push('x');
    }
    name
}

fn hex_prefix(digest: &[u8], chars: usize) -> String {
    let mut s = String::with_capacity(chars);
    for byte in digest {
        for nibble in [byte >> 4, byte & 0xf] {
            s.push(char::from_digit(nibble as u32, 16).unwrap());
            if s.len() == chars {
                return s;
            }
        }
    }
    s
}

/// Binding strength, loosest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Equiv,
    Implies,
    Or,
    And,
    Unary,
    Atom,
}

fn render_at(f: &Formula, required: Level, out: &mut String) {
    // Sugar first, core constructors after.
    if f.is_top() {
        out.push_str("top");
        return;
    }
    if let Some((a, b)) = f.as_ident() {
        return render_binary(a, " == ", b, Level::Equiv, required, out, Assoc::None);
    }
    if let Some((a, b)) = f.as_iff() {
        return render_binary(a, " <-> ", b, Level::Equiv, required, out, Assoc::None);
    }
    if let Some(a) = f.as_not() {
        out.push('~');
        render_tight(a, out);
        return;
    }
    match f {
        Formula::Var(x) => out.push_str(x),
        Formula::Falsum => out.push_str("bot"),
        Formula::And(a, b) => render_binary(a, " & ", b, Level::And, required, out, Assoc::Left),
        Formula::Or(a, b) => render_binary(a, " | ", b, Level::Or, required, out, Assoc::Left),
        Formula::Implies(a, b) => {
            render_binary(a, " -> ", b, Level::Implies, required, out, Assoc::Right)
        }
        Formula::Box(a) => {
            out.push_str("box");
            let mark = out.len();
            out.push(' ');
            render_tight_spaced(a, mark, out);
        }
    }
}

#[derive(Clone, Copy)]
enum Assoc {
    Left,
    Right,
    None,
}

fn render_binary(
    left: &Formula,
    op: &str,
    right: &Formula,
    level: Level,
    required: Level,
    out: &mut String,
    assoc: Assoc,
) {
    let parens = level < required;
    if parens {
        out.push('(');
    }
    let (left_req, right_req) = match assoc {
        Assoc::Left => (level, bump(level)),
        Assoc::Right => (bump(level), level),
        Assoc::None => (bump(level), bump(level)),
    };
    render_at(left, left_req, out);
    out.push_str(op);
    render_at(right, right_req, out);
    if parens {
        out.push(')');
    }
}

fn bump(level: Level) -> Level {
    match level {
        Level::Equiv => Level::Implies,
        Level::Implies => Level::Or,
        Level::Or => Level::And,
        Level::And => Level::Unary,
        Level::Unary | Level::Atom => Level::Atom,
    }
}

/// Renders a unary operand: atoms and unary chains attach bare, anything
/// looser is parenthesized (`~x`, `~box x`, `~(x & y)`).
fn render_tight(f: &Formula, out: &mut String) {
    render_at(f, Level::Unary, out);
}

/// Same, for `box`: `box x` (space) versus `box(x -> y)` (no space).
fn render_tight_spaced(f: &Formula, space_at: usize, out: &mut String) {
    let before = out.len();
    render_at(f, Level::Unary, out);
    if out.as_bytes().get(before) == Some(&b'(') {
        out.remove(space_at);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Parse error with byte position and the tokens that would have been
/// accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Bot,
    Top,
    BoxOp,
    Not,
    And,
    Or,
    Arrow,
    Iff,
    Ident2, // `==`
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Bot => "`bot`".into(),
            Token::Top => "`top`".into(),
            Token::BoxOp => "`box`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::Ident2 => "`==`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push((Token::LParen, pos));
            }
            ')' => {
                chars.next();
                tokens.push((Token::RParen, pos));
            }
            '~' | '¬' => {
                chars.next();
                tokens.push((Token::Not, pos));
            }
            '&' | '∧' => {
                chars.next();
                tokens.push((Token::And, pos));
            }
            '|' | '∨' => {
                chars.next();
                tokens.push((Token::Or, pos));
            }
            '□' => {
                chars.next();
                tokens.push((Token::BoxOp, pos));
            }
            '⊥' => {
                chars.next();
                tokens.push((Token::Bot, pos));
            }
            '→' => {
                chars.next();
                tokens.push((Token::Arrow, pos));
            }
            '↔' => {
                chars.next();
                tokens.push((Token::Iff, pos));
            }
            '≡' => {
                chars.next();
                tokens.push((Token::Ident2, pos));
            }
            '-' => {
                chars.next();
                if bytes.get(pos + 1) == Some(&b'>') {
                    chars.next();
                    tokens.push((Token::Arrow, pos));
                } else {
                    return Err(ParseError {
                        position: pos,
                        expected: "`->`".into(),
                        found: "`-`".into(),
                    });
                }
            }
            '<' => {
                chars.next();
                if bytes.get(pos + 1) == Some(&b'-') && bytes.get(pos + 2) == Some(&b'>') {
                    chars.next();
                    chars.next();
                    tokens.push((Token::Iff, pos));
                } else {
                    return Err(ParseError {
                        position: pos,
                        expected: "`<->`".into(),
                        found: "`<`".into(),
                    });
                }
            }
            '=' => {
                chars.next();
                if bytes.get(pos + 1) == Some(&b'=') {
                    chars.next();
                    tokens.push((Token::Ident2, pos));
                } else {
                    return Err(ParseError {
                        position: pos,
                        expected: "`==`".into(),
                        found: "`=`".into(),
                    });
                }
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let token = match name.as_str() {
                    "bot" => Token::Bot,
                    "top" => Token::Top,
                    "box" => Token::BoxOp,
                    _ => Token::Ident(name),
                };
                tokens.push((token, pos));
            }
            other => {
                return Err(ParseError {
                    position: pos,
                    expected: "a formula token".into(),
                    found: format!("`{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.describe(),
            None => "end of input".into(),
        }
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            position: self.pos(),
            expected: expected.into(),
            found: self.found(),
        }
    }

    fn equiv(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        match self.peek() {
            Some(Token::Iff) => {
                self.advance();
                let rhs = self.implication()?;
                if matches!(self.peek(), Some(Token::Iff) | Some(Token::Ident2)) {
                    return Err(self.error("`(` (`<->` and `==` are non-associative)"));
                }
                Ok(Formula::iff(lhs, rhs))
            }
            Some(Token::Ident2) => {
                self.advance();
                let rhs = self.implication()?;
                if matches!(self.peek(), Some(Token::Iff) | Some(Token::Ident2)) {
                    return Err(self.error("`(` (`<->` and `==` are non-associative)"));
                }
                Ok(Formula::ident(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if matches!(self.peek(), Some(Token::Arrow)) {
            self.advance();
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while matches!(self.peek(), Some(Token::Or)) {
            self.advance();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some(Token::And)) {
            self.advance();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Not) => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::BoxOp) => {
                self.advance();
                Ok(Formula::boxed(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.advance() {
            Some(Token::Ident(name)) => Ok(Formula::Var(name)),
            Some(Token::Bot) => Ok(Formula::Falsum),
            Some(Token::Top) => Ok(Formula::top()),
            Some(Token::LParen) => {
                let inner = self.equiv()?;
                match self.advance() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.cursor = self.cursor.saturating_sub(1);
                        Err(self.error("`)`"))
                    }
                }
            }
            _ => {
                self.cursor = self.cursor.saturating_sub(1);
                Err(self.error("a variable, `bot`, `top`, `~`, `box` or `(`"))
            }
        }
    }
}

/// Parses a formula; derived connectives are expanded to core form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(ParseError {
            position: 0,
            expected: "a formula".into(),
            found: "empty input".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let formula = parser.equiv()?;
    if parser.peek().is_some() {
        return Err(parser.error("end of input"));
    }
    Ok(formula)
}

/// Canonical size-ordered enumeration of formulas over the given variables.
///
/// Atoms (`bot` then the variables in the given order) come first; composite
/// formulas of size `s` are listed `&`, `|`, `->` (left subtree size
/// ascending, subtrees in enumeration order) and then `box` when requested.
/// Used as the deterministic formula stream in acceptance sweeps.
pub fn enumerate_formulas(vars: &[&str], max_size: usize, include_box: bool) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = Vec::with_capacity(max_size);
    for size in 1..=max_size {
        let mut level = Vec::new();
        if size == 1 {
            level.push(Formula::Falsum);
            level.extend(vars.iter().map(|v| Formula::var(*v)));
        } else {
            let makers: [fn(Formula, Formula) -> Formula; 3] =
                [Formula::and, Formula::or, Formula::implies];
            for make in makers {
                for left_size in 1..size - 1 {
                    let right_size = size - 1 - left_size;
                    for l in &by_size[left_size - 1] {
                        for r in &by_size[right_size - 1] {
                            level.push(make(l.clone(), r.clone()));
                        }
                    }
                }
            }
            if include_box {
                for inner in &by_size[size - 2] {
                    level.push(Formula::boxed(inner.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn parses_box_implication() {
        let f = parse("box(x -> y)").unwrap();
        assert_eq!(f, Formula::boxed(Formula::implies(v("x"), v("y"))));
    }

    #[test]
    fn expands_identity_connective() {
        let f = parse("x == y").unwrap();
        assert_eq!(f, Formula::ident(v("x"), v("y")));
        assert_eq!(
            f,
            Formula::and(
                Formula::boxed(Formula::implies(v("x"), v("y"))),
                Formula::boxed(Formula::implies(v("y"), v("x"))),
            )
        );
    }

    #[test]
    fn expands_negated_falsum() {
        assert_eq!(
            parse("~bot").unwrap(),
            Formula::implies(Formula::Falsum, Formula::Falsum)
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("x & y | z").unwrap(),
            Formula::or(Formula::and(v("x"), v("y")), v("z"))
        );
        assert_eq!(
            parse("x -> y -> z").unwrap(),
            Formula::implies(v("x"), Formula::implies(v("y"), v("z")))
        );
        assert_eq!(
            parse("box x -> y").unwrap(),
            Formula::implies(Formula::boxed(v("x")), v("y"))
        );
        assert_eq!(parse("~box x").unwrap(), Formula::not(Formula::boxed(v("x"))));
        assert_eq!(
            parse("x | ~x").unwrap(),
            Formula::or(v("x"), Formula::not(v("x")))
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("□x ∧ ¬y → ⊥").unwrap(), parse("box x & ~y -> bot").unwrap());
        assert_eq!(parse("x ≡ y").unwrap(), parse("x == y").unwrap());
        assert_eq!(parse("x ↔ y").unwrap(), parse("x <-> y").unwrap());
    }

    #[test]
    fn nonassociative_equiv_rejected() {
        assert!(parse("x <-> y <-> z").is_err());
        assert!(parse("x == y == z").is_err());
    }

    #[test]
    fn error_positions() {
        let err = parse("x &").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(parse("").is_err());
        assert!(parse("(x -> y").is_err());
        assert!(parse("X").is_err());
    }

    #[test]
    fn renders_canonically() {
        let f = Formula::boxed(Formula::implies(v("x"), v("y")));
        assert_eq!(f.render(), "box(x -> y)");
        let ident = Formula::and(
            Formula::boxed(Formula::implies(v("x"), v("y"))),
            Formula::boxed(Formula::implies(v("y"), v("x"))),
        );
        assert_eq!(ident.render(), "x == y");
        assert_eq!(Formula::Falsum.render(), "bot");
        assert_eq!(Formula::top().render(), "top");
        assert_eq!(Formula::not(v("x")).render(), "~x");
        assert_eq!(Formula::boxed(v("x")).render(), "box x");
        assert_eq!(Formula::not(Formula::and(v("x"), v("y"))).render(), "~(x & y)");
        assert_eq!(
            Formula::implies(Formula::implies(v("x"), v("y")), v("z")).render(),
            "(x -> y) -> z"
        );
        assert_eq!(
            Formula::or(v("z"), Formula::or(v("x"), v("y"))).render(),
            "z | (x | y)"
        );
    }

    #[test]
    fn substitute_examples() {
        let f = Formula::implies(v("x"), v("x"));
        assert_eq!(
            f.substitute("x", &Formula::Falsum),
            Formula::implies(Formula::Falsum, Formula::Falsum)
        );
        let g = Formula::and(Formula::boxed(v("x")), v("y"));
        assert_eq!(
            g.substitute("x", &Formula::or(v("y"), v("z"))),
            Formula::and(Formula::boxed(Formula::or(v("y"), v("z"))), v("y"))
        );
        assert_eq!(v("y").substitute("x", &Formula::top()), v("y"));
    }

    #[test]
    fn abstract_boxes_examples() {
        let f = parse("box x -> box x").unwrap();
        let (skeleton, binding) = f.abstract_boxes();
        assert_eq!(binding.len(), 1);
        let (name, body) = binding.iter().next().unwrap();
        assert_eq!(body, &Formula::boxed(v("x")));
        assert_eq!(
            skeleton,
            Formula::implies(Formula::var(name.clone()), Formula::var(name.clone()))
        );
        assert_eq!(skeleton.substitute_all(&binding), f);

        let g = parse("x | ~x").unwrap();
        let (skeleton, binding) = g.abstract_boxes();
        assert_eq!(skeleton, g);
        assert!(binding.is_empty());

        let h = parse("box x & box box x").unwrap();
        let (skeleton, binding) = h.abstract_boxes();
        assert_eq!(binding.len(), 2);
        assert!(skeleton.is_propositional());
        assert_eq!(skeleton.substitute_all(&binding), h);
        if let Formula::And(a, b) = &skeleton {
            assert_ne!(a, b);
        } else {
            panic!("expected conjunction skeleton");
        }
    }

    #[test]
    fn abstract_boxes_is_deterministic() {
        let f = parse("box(x -> y) & (box(x -> y) | box y)").unwrap();
        let (s1, b1) = f.abstract_boxes();
        let (s2, b2) = f.abstract_boxes();
        assert_eq!(s1, s2);
        assert_eq!(b1, b2);
        // identical boxed subterms share one variable
        assert_eq!(b1.len(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let atoms = enumerate_formulas(&["x", "y"], 1, false);
        assert_eq!(atoms.len(), 3);
        let props3 = enumerate_formulas(&["x", "y"], 3, false);
        assert_eq!(props3.len(), 3 + 27);
        let modal2 = enumerate_formulas(&["x", "y"], 2, true);
        assert_eq!(modal2.len(), 3 + 3);
        let props7 = enumerate_formulas(&["x", "y"], 7, false);
        assert_eq!(props7.len(), 11_451);
        assert!(props7.iter().all(|f| f.depth() <= 3));
    }
}
