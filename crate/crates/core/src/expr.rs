//! Boolean expressions in apostrophe-NOT sum-of-products notation.
//!
//! `ABC + A'BC + AB'C'` parses as an OR of three ANDs. Juxtaposition is AND,
//! `*`, `.` and `·` are explicit AND, `+` is OR, a trailing `'` or a leading
//! `!` is NOT. Precedence is NOT > AND > OR.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Boolean expression tree over named variables.
///
/// `And`/`Or` are flat and always carry at least two children when built
/// through the constructors or the parser.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(bool),
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    /// Negation with double-negation removal.
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        match e {
            Expr::Not(inner) => *inner,
            other => Expr::Not(Box::new(other)),
        }
    }

    /// N-ary AND. Nested ANDs are flattened, a single child is returned as
    /// is, and no children yields the empty product `1`.
    pub fn and(children: impl IntoIterator<Item = Expr>) -> Expr {
        let mut flat = Vec::new();
        for c in children {
            match c {
                Expr::And(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Expr::Const(true),
            1 => flat.pop().unwrap(),
            _ => Expr::And(flat),
        }
    }

    /// N-ary OR; the empty sum is `0`.
    pub fn or(children: impl IntoIterator<Item = Expr>) -> Expr {
        let mut flat = Vec::new();
        for c in children {
            match c {
                Expr::Or(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Expr::Const(false),
            1 => flat.pop().unwrap(),
            _ => Expr::Or(flat),
        }
    }

    /// Distinct variables in first-appearance order, left to right.
    pub fn variables(&self) -> VarOrder {
        fn walk<'a>(e: &'a Expr, seen: &mut Vec<&'a str>) {
            match e {
                Expr::Const(_) => {}
                Expr::Var(v) => {
                    if !seen.contains(&v.as_str()) {
                        seen.push(v);
                    }
                }
                Expr::Not(c) => walk(c, seen),
                Expr::And(cs) | Expr::Or(cs) => cs.iter().for_each(|c| walk(c, seen)),
            }
        }
        let mut seen = Vec::new();
        walk(self, &mut seen);
        VarOrder {
            names: seen.into_iter().map(str::to_owned).collect(),
        }
    }

    /// Evaluates with a variable lookup; the first unbound name is an error.
    pub fn eval_with<F>(&self, lookup: &F) -> Result<bool, EvalError>
    where
        F: Fn(&str) -> Option<bool>,
    {
        Ok(match self {
            Expr::Const(b) => *b,
            Expr::Var(v) => lookup(v).ok_or_else(|| EvalError::Unbound(v.clone()))?,
            Expr::Not(c) => !c.eval_with(lookup)?,
            Expr::And(cs) => {
                let mut acc = true;
                for c in cs {
                    acc &= c.eval_with(lookup)?;
                }
                acc
            }
            Expr::Or(cs) => {
                let mut acc = false;
                for c in cs {
                    acc |= c.eval_with(lookup)?;
                }
                acc
            }
        })
    }

    pub fn eval(&self, assignment: &HashMap<String, bool>) -> Result<bool, EvalError> {
        self.eval_with(&|v: &str| assignment.get(v).copied())
    }

    /// Canonical text; see [`format`].
    pub fn format(&self) -> String {
        format(self)
    }

    fn all_single_letter(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var(v) => v.chars().count() == 1,
            Expr::Not(c) => c.all_single_letter(),
            Expr::And(cs) | Expr::Or(cs) => cs.iter().all(Expr::all_single_letter),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
}

/// Ordered list of distinct variable names. Position 0 is the most
/// significant bit of a row index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarOrder {
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarOrderError {
    #[error("duplicate variable `{0}` in order")]
    Duplicate(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

impl VarOrder {
    pub fn new<I, S>(names: I) -> Result<VarOrder, VarOrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !is_identifier(&n) {
                return Err(VarOrderError::InvalidName(n));
            }
            if out.contains(&n) {
                return Err(VarOrderError::Duplicate(n));
            }
            out.push(n);
        }
        Ok(VarOrder { names: out })
    }

    /// `A`..`Z` for up to 26 variables, `x0`, `x1`, ... beyond that.
    pub fn default_names(n: usize) -> VarOrder {
        let names = if n <= 26 {
            (0..n)
                .map(|i| ((b'A' + i as u8) as char).to_string())
                .collect()
        } else {
            (0..n).map(|i| format!("x{i}")).collect()
        };
        VarOrder { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    /// Appends every name of `other` not already present.
    pub fn merge(&mut self, other: &VarOrder) {
        for n in &other.names {
            if !self.contains(n) {
                self.names.push(n.clone());
            }
        }
    }

    /// Concatenation; fails on a shared name.
    pub fn concat(&self, other: &VarOrder) -> Result<VarOrder, VarOrderError> {
        VarOrder::new(self.names.iter().chain(other.names.iter()).cloned())
    }

    /// Value of variable `pos` in row `row` (leftmost variable = MSB).
    pub fn bit_of(&self, row: u32, pos: usize) -> bool {
        (row >> (self.len() - 1 - pos)) & 1 == 1
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// How identifiers are tokenized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IdentMode {
    /// Every letter is its own variable; juxtaposition is AND.
    #[default]
    SingleLetter,
    /// Identifiers are `[A-Za-z][A-Za-z0-9_]*`; AND must be written.
    MultiLetter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("missing operand")]
    EmptyOperand,
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("constant adjacent to an identifier")]
    ConstantAdjacent,
    #[error("missing operator between operands")]
    MissingOperator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(bool),
    Or,
    And,
    Bang,
    Apos,
    LParen,
    RParen,
}

fn lex(text: &str, mode: IdentMode) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let err = |offset, kind| ParseError { offset, kind };
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '+' => Tok::Or,
            '*' | '.' | '·' => Tok::And,
            '!' => Tok::Bang,
            '\'' | '’' => Tok::Apos,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0' | '1' => {
                let prev_adj = i > 0 && (bytes[i - 1] as char).is_ascii_alphanumeric();
                let next_adj = bytes
                    .get(i + 1)
                    .is_some_and(|b| (*b as char).is_ascii_alphanumeric() || *b == b'_');
                if prev_adj || next_adj {
                    return Err(err(i, ParseErrorKind::ConstantAdjacent));
                }
                Tok::Const(c == '1')
            }
            c if c.is_ascii_alphabetic() => match mode {
                IdentMode::SingleLetter => Tok::Ident(c.to_string()),
                IdentMode::MultiLetter => {
                    let mut end = i + 1;
                    while let Some(&(j, d)) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            chars.next();
                            end = j + 1;
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(text[i..end].to_owned())
                }
            },
            other => return Err(err(i, ParseErrorKind::UnexpectedChar(other))),
        };
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    mode: IdentMode,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind,
        }
    }

    fn parse_or(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.parse_and()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            terms.push(self.parse_and()?);
        }
        Ok(Expr::or(terms))
    }

    fn starts_factor(tok: Option<&Tok>) -> bool {
        matches!(
            tok,
            Some(Tok::Ident(_) | Tok::Const(_) | Tok::Bang | Tok::LParen)
        )
    }

    fn parse_and(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.parse_unary()?];
        loop {
            match self.peek() {
                Some(Tok::And) => {
                    self.pos += 1;
                    factors.push(self.parse_unary()?);
                }
                t if Self::starts_factor(t) => {
                    if self.mode == IdentMode::MultiLetter {
                        return Err(self.error(ParseErrorKind::MissingOperator));
                    }
                    factors.push(self.parse_unary()?);
                }
                _ => break,
            }
        }
        Ok(Expr::and(factors))
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Bang) {
            self.pos += 1;
            return Ok(Expr::not(self.parse_unary()?));
        }
        let mut e = self.parse_primary()?;
        while self.peek() == Some(&Tok::Apos) {
            self.pos += 1;
            e = Expr::not(e);
        }
        Ok(e)
    }

    fn parse_primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Const(b)) => {
                self.pos += 1;
                Ok(Expr::Const(b))
            }
            Some(Tok::LParen) => {
                let open = self.offset();
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError {
                        offset: open,
                        kind: ParseErrorKind::Unbalanced,
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error(ParseErrorKind::EmptyOperand)),
        }
    }
}

/// Parses single-letter notation (`AB'C` is `A·B'·C`).
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    parse_expression_with(text, IdentMode::SingleLetter)
}

pub fn parse_expression_with(text: &str, mode: IdentMode) -> Result<Expr, ParseError> {
    let toks = lex(text, mode)?;
    if toks.is_empty() {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::Empty,
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        mode,
    };
    let e = p.parse_or()?;
    match p.peek() {
        None => Ok(e),
        Some(Tok::RParen) => Err(p.error(ParseErrorKind::Unbalanced)),
        Some(_) => Err(p.error(ParseErrorKind::EmptyOperand)),
    }
}

/// Canonical text: apostrophe NOT, `+` OR, minimal parentheses.
///
/// AND is juxtaposition when every name is a single letter and no AND has
/// a constant operand; otherwise it is written ` * `, which must be parsed
/// back in [`IdentMode::MultiLetter`] when names are longer than a letter.
pub fn format(expr: &Expr) -> String {
    let juxtapose = expr.all_single_letter();
    let mut out = String::new();
    write_expr(expr, juxtapose, &mut out);
    out
}

fn write_expr(e: &Expr, juxtapose: bool, out: &mut String) {
    match e {
        Expr::Const(b) => out.push(if *b { '1' } else { '0' }),
        Expr::Var(v) => out.push_str(v),
        Expr::Not(c) => {
            let wrap = matches!(**c, Expr::And(_) | Expr::Or(_));
            if wrap {
                out.push('(');
            }
            write_expr(c, juxtapose, out);
            if wrap {
                out.push(')');
            }
            out.push('\'');
        }
        Expr::And(cs) => {
            let sep = if juxtapose && !cs.iter().any(is_const_literal) {
                ""
            } else {
                " * "
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                let wrap = matches!(c, Expr::Or(_) | Expr::And(_));
                if wrap {
                    out.push('(');
                }
                write_expr(c, juxtapose, out);
                if wrap {
                    out.push(')');
                }
            }
        }
        Expr::Or(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                let wrap = matches!(c, Expr::Or(_));
                if wrap {
                    out.push('(');
                }
                write_expr(c, juxtapose, out);
                if wrap {
                    out.push(')');
                }
            }
        }
    }
}

fn is_const_literal(e: &Expr) -> bool {
    match e {
        Expr::Const(_) => true,
        Expr::Not(c) => is_const_literal(c),
        _ => false,
    }
}

/// One `NAME = expr` line of an equations file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("line {line}: expected `NAME = expression`")]
    MissingEquals { line: usize },
    #[error("line {line}: invalid output name `{name}`")]
    InvalidName { line: usize, name: String },
    #[error("line {line}: duplicate output `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: {source}")]
    Syntax {
        line: usize,
        #[source]
        source: ParseError,
    },
}

/// Parses an equations file: one `NAME = expr` per line, `#` starts a
/// comment, blank lines are skipped.
pub fn parse_equations(text: &str, mode: IdentMode) -> Result<Vec<Equation>, EquationError> {
    let mut out: Vec<Equation> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (lhs, rhs) = body
            .split_once('=')
            .ok_or(EquationError::MissingEquals { line })?;
        let name = lhs.trim();
        if !is_identifier(name) {
            return Err(EquationError::InvalidName {
                line,
                name: name.to_owned(),
            });
        }
        if out.iter().any(|e| e.name == name) {
            return Err(EquationError::Duplicate {
                line,
                name: name.to_owned(),
            });
        }
        let expr = parse_expression_with(rhs, mode)
            .map_err(|source| EquationError::Syntax { line, source })?;
        out.push(Equation {
            name: name.to_owned(),
            expr,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Expr {
        Expr::var(n)
    }

    fn nv(n: &str) -> Expr {
        Expr::not(v(n))
    }

    fn p(s: &str) -> Expr {
        parse_expression(s).unwrap()
    }

    fn assign(pairs: &[(&str, bool)]) -> HashMap<String, bool> {
        pairs.iter().map(|(k, b)| (k.to_string(), *b)).collect()
    }

    #[test]
    fn parses_sop_f() {
        let e = p("ABC + A'BC + AB'C'");
        let want = Expr::Or(vec![
            Expr::And(vec![v("A"), v("B"), v("C")]),
            Expr::And(vec![nv("A"), v("B"), v("C")]),
            Expr::And(vec![v("A"), nv("B"), nv("C")]),
        ]);
        assert_eq!(e, want);
    }

    #[test]
    fn parses_pos_g() {
        let e = p("(A+B+C)(A'+B+C)(A+B'+C')");
        let Expr::And(fs) = &e else {
            panic!("expected And, got {e:?}")
        };
        assert_eq!(fs.len(), 3);
        assert!(fs
            .iter()
            .all(|f| matches!(f, Expr::Or(cs) if cs.len() == 3)));
        assert_eq!(p("(A + B + C) · (A' + B + C) · (A + B' + C')"), e);
        assert_eq!(p("(A+B+C)*(A'+B+C).(A+B'+C')"), e);
    }

    #[test]
    fn double_negation_removed() {
        assert_eq!(p("A''"), v("A"));
        assert_eq!(p("!A'"), v("A"));
        assert_eq!(p("(AB)''"), p("AB"));
        assert_eq!(p("A'''"), nv("A"));
    }

    #[test]
    fn prefix_bang_binds_tightest() {
        assert_eq!(p("!AB"), Expr::And(vec![nv("A"), v("B")]));
        assert_eq!(p("!(AB)"), Expr::not(Expr::And(vec![v("A"), v("B")])));
    }

    #[test]
    fn apostrophe_applies_to_group() {
        assert_eq!(p("(A + B)'"), Expr::not(Expr::Or(vec![v("A"), v("B")])));
    }

    #[test]
    fn constants() {
        assert_eq!(p("1"), Expr::Const(true));
        assert_eq!(p("A + 0"), Expr::Or(vec![v("A"), Expr::Const(false)]));
        let e = parse_expression("A1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ConstantAdjacent);
        assert_eq!(e.offset, 1);
        assert!(parse_expression("A_").is_err());
        let e = parse_expression("1A").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ConstantAdjacent);
        assert_eq!(e.offset, 0);
        assert!(parse_expression("10").is_err());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let e = parse_expression("A + ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyOperand);
        assert_eq!(e.offset, 4);

        let e = parse_expression("(A + B").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbalanced);
        assert_eq!(e.offset, 0);

        let e = parse_expression("A + B)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbalanced);
        assert_eq!(e.offset, 5);

        let e = parse_expression("A + ()").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyOperand);

        let e = parse_expression("   ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Empty);

        let e = parse_expression("A $ B").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(e.offset, 2);

        assert!(parse_expression("'A").is_err());
        assert!(parse_expression("A ++ B").is_err());
    }

    #[test]
    fn multi_letter_mode() {
        let e = parse_expression_with("en * state' + reset", IdentMode::MultiLetter).unwrap();
        assert_eq!(
            e,
            Expr::Or(vec![Expr::And(vec![v("en"), nv("state")]), v("reset")])
        );
        let err = parse_expression_with("en state", IdentMode::MultiLetter).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingOperator);
        assert_eq!(err.offset, 3);
        // In single-letter mode the same text is five variables.
        assert_eq!(p("en").variables().len(), 2);
    }

    #[test]
    fn eval_truth_tables() {
        let e = |s: &str, a: &[(&str, bool)]| p(s).eval(&assign(a)).unwrap();
        assert!(!e("AB", &[("A", false), ("B", true)]));
        assert!(e("A + B", &[("A", false), ("B", true)]));
        assert!(!e("A'", &[("A", true)]));
        assert!(!p("0 * 1").eval(&HashMap::new()).unwrap());
        assert!(p("0 + 1").eval(&HashMap::new()).unwrap());
        assert!(!p("1'").eval(&HashMap::new()).unwrap());

        let maj = "A'BC + AB'C + ABC' + ABC";
        assert!(e(maj, &[("A", true), ("B", true), ("C", false)]));

        for a in [false, true] {
            assert!(!e("AA'", &[("A", a)]));
        }
    }

    #[test]
    fn eval_unbound() {
        let err = p("A + B").eval(&assign(&[("A", false)])).unwrap_err();
        assert_eq!(err, EvalError::Unbound("B".into()));
    }

    #[test]
    fn variables_first_appearance() {
        assert_eq!(p("ABC + A'BC + AB'C'").variables().names(), ["A", "B", "C"]);
        assert!(p("1").variables().is_empty());
        assert_eq!(p("BA + AB").variables().names(), ["B", "A"]);
    }

    #[test]
    fn format_examples() {
        assert_eq!(p("AB'C' + BC").format(), "AB'C' + BC");
        assert_eq!(
            Expr::not(Expr::Or(vec![v("A"), v("B")])).format(),
            "(A + B)'"
        );
        assert_eq!(v("A").format(), "A");
        assert_eq!(p("(A+B)(C+D')").format(), "(A + B)(C + D')");
        assert_eq!(p("A(B(C + D))").format(), "AB(C + D)");
        assert_eq!(p("A * 1").format(), "A * 1");
        assert_eq!(p("A * 1'").format(), "A * 1'");
    }

    #[test]
    fn format_multi_letter() {
        let e = parse_expression_with("(en + go) * st'", IdentMode::MultiLetter).unwrap();
        let s = e.format();
        assert_eq!(s, "(en + go) * st'");
        assert_eq!(
            parse_expression_with(&s, IdentMode::MultiLetter).unwrap(),
            e
        );
    }

    #[test]
    fn precedence_and_de_morgan() {
        let all = |n: usize| 0..1u32 << n;
        let names = ["A", "B", "C"];
        for row in all(3) {
            let a: HashMap<String, bool> = names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.to_string(), (row >> (2 - i)) & 1 == 1))
                .collect();
            assert_eq!(p("A + BC").eval(&a), p("A + (B*C)").eval(&a));
            assert_eq!(p("(AB)'").eval(&a), p("A' + B'").eval(&a));
        }
    }

    #[test]
    fn var_order_validation() {
        assert!(VarOrder::new(["A", "B"]).is_ok());
        assert_eq!(
            VarOrder::new(["A", "A"]).unwrap_err(),
            VarOrderError::Duplicate("A".into())
        );
        assert!(VarOrder::new(["1x"]).is_err());
        assert!(VarOrder::new([""]).is_err());
        let o = VarOrder::new(["A", "B", "C"]).unwrap();
        assert!(o.bit_of(0b100, 0));
        assert!(!o.bit_of(0b100, 2));
        assert_eq!(VarOrder::default_names(3).names(), ["A", "B", "C"]);
        assert_eq!(VarOrder::default_names(27).names()[26], "x26");
    }

    #[test]
    fn equations_file() {
        let text = "# example functions\nF = ABC + A'BC + AB'C'\n\nG = A'B + BC' # trailing\n";
        let eqs = parse_equations(text, IdentMode::SingleLetter).unwrap();
        assert_eq!(eqs.len(), 2);
        assert_eq!(eqs[0].name, "F");
        assert_eq!(eqs[1].expr, p("A'B + BC'"));

        assert!(matches!(
            parse_equations("F ABC", IdentMode::SingleLetter),
            Err(EquationError::MissingEquals { line: 1 })
        ));
        assert!(matches!(
            parse_equations("F = A\nF = B", IdentMode::SingleLetter),
            Err(EquationError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            parse_equations("\nF = A +", IdentMode::SingleLetter),
            Err(EquationError::Syntax { line: 2, .. })
        ));
    }
}
