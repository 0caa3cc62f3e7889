//! Truth tables, cube algebra, canonical SOP/POS forms and exhaustive
//! equivalence checking.
//!
//! Rows are indexed big-endian: variable 0 of a [`VarOrder`] is the most
//! significant bit of the row number, so row `0b011` of `[A, B, C]` is
//! `A=0, B=1, C=1`.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{Expr, VarOrder};

/// Largest variable count accepted by exhaustive structures (16M rows).
pub const MAX_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("variable `{0}` is missing from the variable order")]
    MissingVariable(String),
    #[error("{n} variables exceeds the limit of {max}")]
    TooManyVariables { n: usize, max: usize },
    #[error("variable orders differ: [{left}] vs [{right}]")]
    OrderMismatch { left: String, right: String },
    #[error("expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

pub(crate) fn check_width(n: usize) -> Result<(), LogicError> {
    if n > MAX_VARS {
        Err(LogicError::TooManyVariables { n, max: MAX_VARS })
    } else {
        Ok(())
    }
}

/// Packs a bit vector (index 0 = most significant) into a row number.
pub fn bits_to_row(bits: &[bool]) -> u32 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u32)
}

pub fn row_to_bits(row: u32, n: usize) -> Vec<bool> {
    (0..n).map(|j| (row >> (n - 1 - j)) & 1 == 1).collect()
}

/// Renders a row as `n` characters of `0`/`1`.
pub fn row_to_string(row: u32, n: usize) -> String {
    (0..n)
        .map(|j| {
            if (row >> (n - 1 - j)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Complete function table over an ordered set of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    order: VarOrder,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(order: VarOrder, bits: Vec<bool>) -> Result<TruthTable, LogicError> {
        check_width(order.len())?;
        let expected = 1usize << order.len();
        if bits.len() != expected {
            return Err(LogicError::LengthMismatch {
                expected,
                got: bits.len(),
            });
        }
        Ok(TruthTable { order, bits })
    }

    pub fn from_fn(
        order: VarOrder,
        f: impl Fn(u32) -> bool + Sync + Send,
    ) -> Result<TruthTable, LogicError> {
        check_width(order.len())?;
        let bits = (0..1u32 << order.len()).into_par_iter().map(f).collect();
        Ok(TruthTable { order, bits })
    }

    /// Table with ones exactly at `rows`.
    pub fn from_ones(order: VarOrder, rows: &[u32]) -> Result<TruthTable, LogicError> {
        check_width(order.len())?;
        let size = 1usize << order.len();
        let mut bits = vec![false; size];
        for &r in rows {
            let slot = bits.get_mut(r as usize).ok_or(LogicError::LengthMismatch {
                expected: size,
                got: r as usize + 1,
            })?;
            *slot = true;
        }
        Ok(TruthTable { order, bits })
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, row: u32) -> bool {
        self.bits[row as usize]
    }

    pub fn ones(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i as u32)
    }

    pub fn zeros(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| !**b)
            .map(|(i, _)| i as u32)
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable {
            order: self.order.clone(),
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

/// Builds the table of `expr` over `order`.
pub fn table_from_expr(expr: &Expr, order: &VarOrder) -> Result<TruthTable, LogicError> {
    let bound = BoundExpr::bind(expr, order)?;
    TruthTable::from_fn(order.clone(), |row| bound.eval_row(row))
}

/// Expression with variables resolved to bit positions of a row.
#[derive(Clone, Debug)]
pub(crate) enum BoundExpr {
    Const(bool),
    Var(u32),
    Not(Box<BoundExpr>),
    And(Vec<BoundExpr>),
    Or(Vec<BoundExpr>),
}

impl BoundExpr {
    pub(crate) fn bind(expr: &Expr, order: &VarOrder) -> Result<BoundExpr, LogicError> {
        check_width(order.len())?;
        let n = order.len();
        fn go(e: &Expr, order: &VarOrder, n: usize) -> Result<BoundExpr, LogicError> {
            Ok(match e {
                Expr::Const(b) => BoundExpr::Const(*b),
                Expr::Var(v) => {
                    let pos = order
                        .position(v)
                        .ok_or_else(|| LogicError::MissingVariable(v.clone()))?;
                    BoundExpr::Var((n - 1 - pos) as u32)
                }
                Expr::Not(c) => BoundExpr::Not(Box::new(go(c, order, n)?)),
                Expr::And(cs) => BoundExpr::And(
                    cs.iter()
                        .map(|c| go(c, order, n))
                        .collect::<Result<_, _>>()?,
                ),
                Expr::Or(cs) => BoundExpr::Or(
                    cs.iter()
                        .map(|c| go(c, order, n))
                        .collect::<Result<_, _>>()?,
                ),
            })
        }
        go(expr, order, n)
    }

    pub(crate) fn eval_row(&self, row: u32) -> bool {
        match self {
            BoundExpr::Const(b) => *b,
            BoundExpr::Var(shift) => (row >> shift) & 1 == 1,
            BoundExpr::Not(c) => !c.eval_row(row),
            BoundExpr::And(cs) => cs.iter().all(|c| c.eval_row(row)),
            BoundExpr::Or(cs) => cs.iter().any(|c| c.eval_row(row)),
        }
    }
}

/// State of one variable inside a product term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    /// Uncomplemented.
    Pos,
    /// Complemented.
    Neg,
    Absent,
}

impl Literal {
    /// Berkeley character: `1`, `0`, `-`.
    pub fn to_char(self) -> char {
        match self {
            Literal::Pos => '1',
            Literal::Neg => '0',
            Literal::Absent => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Literal> {
        match c {
            '1' => Some(Literal::Pos),
            '0' => Some(Literal::Neg),
            '-' => Some(Literal::Absent),
            _ => None,
        }
    }
}

/// Product term over `width` variables.
///
/// Stored as a care mask and a value mask in row-bit convention: variable
/// `j` lives at bit `width - 1 - j`, so a cube contains row `r` exactly when
/// `r & care == value`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    width: u8,
    care: u32,
    value: u32,
}

impl Cube {
    /// Largest supported width.
    pub const MAX_WIDTH: usize = 32;

    fn mask(width: usize) -> u32 {
        if width == 32 {
            u32::MAX
        } else {
            (1u32 << width) - 1
        }
    }

    pub fn universal(width: usize) -> Cube {
        assert!(width <= Self::MAX_WIDTH);
        Cube {
            width: width as u8,
            care: 0,
            value: 0,
        }
    }

    pub fn minterm(width: usize, row: u32) -> Cube {
        assert!(width <= Self::MAX_WIDTH);
        let care = Self::mask(width);
        Cube {
            width: width as u8,
            care,
            value: row & care,
        }
    }

    /// Builds from raw masks; bits of `value` outside `care` are dropped.
    pub fn from_masks(width: usize, care: u32, value: u32) -> Cube {
        assert!(width <= Self::MAX_WIDTH);
        let care = care & Self::mask(width);
        Cube {
            width: width as u8,
            care,
            value: value & care,
        }
    }

    pub fn from_literals(lits: &[Literal]) -> Cube {
        let width = lits.len();
        assert!(width <= Self::MAX_WIDTH);
        let mut care = 0;
        let mut value = 0;
        for (j, l) in lits.iter().enumerate() {
            let bit = 1u32 << (width - 1 - j);
            match l {
                Literal::Pos => {
                    care |= bit;
                    value |= bit;
                }
                Literal::Neg => care |= bit,
                Literal::Absent => {}
            }
        }
        Cube {
            width: width as u8,
            care,
            value,
        }
    }

    /// Parses a Berkeley-style string of `0`, `1`, `-`.
    pub fn parse(s: &str) -> Option<Cube> {
        let lits: Option<Vec<Literal>> = s.chars().map(Literal::from_char).collect();
        let lits = lits?;
        (lits.len() <= Self::MAX_WIDTH).then(|| Cube::from_literals(&lits))
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn care(&self) -> u32 {
        self.care
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn literal(&self, j: usize) -> Literal {
        let bit = 1u32 << (self.width() - 1 - j);
        if self.care & bit == 0 {
            Literal::Absent
        } else if self.value & bit != 0 {
            Literal::Pos
        } else {
            Literal::Neg
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (0..self.width()).map(|j| self.literal(j))
    }

    /// Copy with variable `j` set to `lit`.
    pub fn with_literal(&self, j: usize, lit: Literal) -> Cube {
        let bit = 1u32 << (self.width() - 1 - j);
        let (care, value) = match lit {
            Literal::Pos => (self.care | bit, self.value | bit),
            Literal::Neg => (self.care | bit, self.value & !bit),
            Literal::Absent => (self.care & !bit, self.value & !bit),
        };
        Cube {
            width: self.width,
            care,
            value,
        }
    }

    pub fn literal_count(&self) -> usize {
        self.care.count_ones() as usize
    }

    pub fn absent_count(&self) -> usize {
        self.width() - self.literal_count()
    }

    pub fn contains_row(&self, row: u32) -> bool {
        row & self.care == self.value
    }

    /// True when every row of `other` is a row of `self`.
    pub fn contains(&self, other: &Cube) -> bool {
        self.care & other.care == self.care && other.value & self.care == self.value
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        let common = self.care & other.care;
        self.value & common == other.value & common
    }

    /// Rows of the cube in ascending order.
    pub fn rows(&self) -> impl Iterator<Item = u32> + '_ {
        let free = !self.care & Self::mask(self.width());
        let count = 1u64 << free.count_ones();
        let free_bits: Vec<u32> = (0..32).filter(|b| free >> b & 1 == 1).collect();
        (0..count).map(move |k| {
            let mut row = self.value;
            for (i, b) in free_bits.iter().enumerate() {
                if (k >> i) & 1 == 1 {
                    row |= 1 << b;
                }
            }
            row
        })
    }

    /// Concatenates `self` (high variables) with `low`.
    pub fn concat(&self, low: &Cube) -> Cube {
        let width = self.width() + low.width();
        assert!(width <= Self::MAX_WIDTH);
        let shift = low.width() as u32;
        Cube {
            width: width as u8,
            care: self.care.checked_shl(shift).unwrap_or(0) | low.care,
            value: self.value.checked_shl(shift).unwrap_or(0) | low.value,
        }
    }

    /// Product of the cube's literals named by `order`.
    pub fn to_expr(&self, order: &VarOrder) -> Expr {
        Expr::and(
            order
                .names()
                .iter()
                .zip(self.literals())
                .filter_map(|(name, l)| match l {
                    Literal::Pos => Some(Expr::var(name.clone())),
                    Literal::Neg => Some(Expr::not(Expr::var(name.clone()))),
                    Literal::Absent => None,
                }),
        )
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.literals() {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube({self})")
    }
}

/// Lexicographic by literal pattern with `-` < `0` < `1` (Berkeley
/// character order); narrower cubes sort first.
impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(l: Literal) -> u8 {
            match l {
                Literal::Absent => 0,
                Literal::Neg => 1,
                Literal::Pos => 2,
            }
        }
        self.width
            .cmp(&other.width)
            .then_with(|| self.literals().map(rank).cmp(other.literals().map(rank)))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// OR of cubes over a variable order. The empty cover is constant 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    order: VarOrder,
    cubes: Vec<Cube>,
}

impl Cover {
    pub fn new(order: VarOrder, cubes: Vec<Cube>) -> Result<Cover, LogicError> {
        for c in &cubes {
            if c.width() != order.len() {
                return Err(LogicError::LengthMismatch {
                    expected: order.len(),
                    got: c.width(),
                });
            }
        }
        Ok(Cover { order, cubes })
    }

    pub fn empty(order: VarOrder) -> Cover {
        Cover {
            order,
            cubes: Vec::new(),
        }
    }

    /// Reads the top-level OR of product terms from an SOP expression.
    /// Returns `None` when `expr` is not in sum-of-products shape.
    pub fn from_sop_expr(expr: &Expr, order: &VarOrder) -> Result<Option<Cover>, LogicError> {
        fn literal(e: &Expr) -> Option<(&str, Literal)> {
            match e {
                Expr::Var(v) => Some((v, Literal::Pos)),
                Expr::Not(c) => match &**c {
                    Expr::Var(v) => Some((v, Literal::Neg)),
                    _ => None,
                },
                _ => None,
            }
        }
        let width = order.len();
        let product = |e: &Expr| -> Result<Option<Cube>, LogicError> {
            let factors: Vec<&Expr> = match e {
                Expr::And(cs) => cs.iter().collect(),
                other => vec![other],
            };
            let mut cube = Cube::universal(width);
            for f in factors {
                let Some((name, lit)) = literal(f) else {
                    return Ok(None);
                };
                let j = order
                    .position(name)
                    .ok_or_else(|| LogicError::MissingVariable(name.to_owned()))?;
                match (cube.literal(j), lit) {
                    (Literal::Absent, _) => cube = cube.with_literal(j, lit),
                    (have, want) if have == want => {}
                    // x·x' is empty; no cube represents it
                    _ => return Ok(None),
                }
            }
            Ok(Some(cube))
        };
        let terms: Vec<&Expr> = match expr {
            Expr::Or(cs) => cs.iter().collect(),
            Expr::Const(false) => vec![],
            other => vec![other],
        };
        let mut cubes = Vec::with_capacity(terms.len());
        for t in terms {
            match product(t)? {
                Some(c) => cubes.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(Cover {
            order: order.clone(),
            cubes,
        }))
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn eval_row(&self, row: u32) -> bool {
        self.cubes.iter().any(|c| c.contains_row(row))
    }

    pub fn eval(&self, input: &[bool]) -> Result<bool, LogicError> {
        cover_eval(self, input)
    }

    pub fn to_table(&self) -> Result<TruthTable, LogicError> {
        TruthTable::from_fn(self.order.clone(), |r| self.eval_row(r))
    }

    pub fn to_expr(&self) -> Expr {
        Expr::or(self.cubes.iter().map(|c| c.to_expr(&self.order)))
    }
}

/// Standard SOP: one full minterm per 1-row, ascending.
pub fn canonical_sop(table: &TruthTable) -> Cover {
    let n = table.order().len();
    Cover {
        order: table.order().clone(),
        cubes: table.ones().map(|r| Cube::minterm(n, r)).collect(),
    }
}

/// Product of maxterms, one per 0-row. A variable appears complemented in a
/// maxterm iff its bit is 1 in that row.
pub fn canonical_pos(table: &TruthTable) -> Expr {
    let order = table.order();
    let n = order.len();
    Expr::and(table.zeros().map(|row| {
        Expr::or((0..n).map(|j| {
            let v = Expr::var(order.names()[j].clone());
            if order.bit_of(row, j) {
                Expr::not(v)
            } else {
                v
            }
        }))
    }))
}

pub fn cover_eval(cover: &Cover, input: &[bool]) -> Result<bool, LogicError> {
    if input.len() != cover.order.len() {
        return Err(LogicError::LengthMismatch {
            expected: cover.order.len(),
            got: input.len(),
        });
    }
    Ok(cover.eval_row(bits_to_row(input)))
}

/// Anything [`equivalent`] can compare.
#[derive(Clone, Copy, Debug)]
pub enum Function<'a> {
    Table(&'a TruthTable),
    Cover(&'a Cover),
    Expr(&'a Expr),
}

impl<'a> From<&'a TruthTable> for Function<'a> {
    fn from(t: &'a TruthTable) -> Self {
        Function::Table(t)
    }
}

impl<'a> From<&'a Cover> for Function<'a> {
    fn from(c: &'a Cover) -> Self {
        Function::Cover(c)
    }
}

impl<'a> From<&'a Expr> for Function<'a> {
    fn from(e: &'a Expr) -> Self {
        Function::Expr(e)
    }
}

enum RowEval<'a> {
    Table(&'a TruthTable),
    Cover(&'a Cover),
    Expr(BoundExpr),
}

impl RowEval<'_> {
    fn eval(&self, row: u32) -> bool {
        match self {
            RowEval::Table(t) => t.get(row),
            RowEval::Cover(c) => c.eval_row(row),
            RowEval::Expr(e) => e.eval_row(row),
        }
    }
}

fn same_order(have: &VarOrder, want: &VarOrder) -> Result<(), LogicError> {
    if have == want {
        Ok(())
    } else {
        Err(LogicError::OrderMismatch {
            left: have.to_string(),
            right: want.to_string(),
        })
    }
}

impl<'a> Function<'a> {
    fn bind(self, order: &VarOrder) -> Result<RowEval<'a>, LogicError> {
        Ok(match self {
            Function::Table(t) => {
                same_order(t.order(), order)?;
                RowEval::Table(t)
            }
            Function::Cover(c) => {
                same_order(c.order(), order)?;
                RowEval::Cover(c)
            }
            Function::Expr(e) => RowEval::Expr(BoundExpr::bind(e, order)?),
        })
    }
}

/// Lowest row on which `a` and `b` differ over `order`, if any.
///
/// Tables and covers must carry exactly `order`; expressions are bound to
/// it. The sweep is split across threads; the result is still the first
/// differing row.
pub fn counterexample<'a, 'b>(
    a: impl Into<Function<'a>>,
    b: impl Into<Function<'b>>,
    order: &VarOrder,
) -> Result<Option<u32>, LogicError> {
    check_width(order.len())?;
    let ea = a.into().bind(order)?;
    let eb = b.into().bind(order)?;
    Ok((0..1u32 << order.len())
        .into_par_iter()
        .find_first(|&r| ea.eval(r) != eb.eval(r)))
}

pub fn equivalent<'a, 'b>(
    a: impl Into<Function<'a>>,
    b: impl Into<Function<'b>>,
    order: &VarOrder,
) -> Result<bool, LogicError> {
    Ok(counterexample(a, b, order)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn order(names: &[&str]) -> VarOrder {
        VarOrder::new(names.iter().copied()).unwrap()
    }

    fn abc() -> VarOrder {
        order(&["A", "B", "C"])
    }

    const MAJORITY: &str = "A'BC + AB'C + ABC' + ABC";

    #[test]
    fn majority_table_matches_reference_rows() {
        let e = parse_expression(MAJORITY).unwrap();
        let t = table_from_expr(&e, &abc()).unwrap();
        let want = [false, false, false, true, false, true, true, true];
        assert_eq!(t.bits(), want);
    }

    #[test]
    fn contradiction_table_is_zero() {
        let e = parse_expression("AA'").unwrap();
        let t = table_from_expr(&e, &order(&["A"])).unwrap();
        assert!(t.bits().iter().all(|b| !b));
    }

    #[test]
    fn pos_g_zero_rows() {
        // Zeros worked out per factor: (A+B+C) at 000, (A'+B+C) at 100,
        // (A+B'+C') at 011.
        let e = parse_expression("(A + B + C)(A' + B + C)(A + B' + C')").unwrap();
        let t = table_from_expr(&e, &abc()).unwrap();
        assert_eq!(t.zeros().collect::<Vec<_>>(), vec![0, 3, 4]);
    }

    #[test]
    fn table_errors() {
        let e = parse_expression("AB").unwrap();
        assert_eq!(
            table_from_expr(&e, &order(&["A"])).unwrap_err(),
            LogicError::MissingVariable("B".into())
        );
        let wide = VarOrder::default_names(25);
        assert!(matches!(
            table_from_expr(&Expr::Const(true), &wide),
            Err(LogicError::TooManyVariables { n: 25, .. })
        ));
        assert!(TruthTable::new(abc(), vec![false; 7]).is_err());
    }

    #[test]
    fn canonical_sop_majority() {
        let e = parse_expression(MAJORITY).unwrap();
        let t = table_from_expr(&e, &abc()).unwrap();
        let c = canonical_sop(&t);
        let s: Vec<String> = c.cubes().iter().map(|c| c.to_string()).collect();
        assert_eq!(s, ["011", "101", "110", "111"]);
        assert_eq!(c.to_expr().format(), "A'BC + AB'C + ABC' + ABC");
    }

    #[test]
    fn canonical_sop_constants() {
        let zero = TruthTable::new(abc(), vec![false; 8]).unwrap();
        assert!(canonical_sop(&zero).is_empty());
        let one = TruthTable::new(order(&["A", "B"]), vec![true; 4]).unwrap();
        let c = canonical_sop(&one);
        assert_eq!(c.len(), 4);
        assert!(c.cubes().iter().all(|c| c.absent_count() == 0));
    }

    #[test]
    fn canonical_pos_examples() {
        let mut bits = vec![true; 8];
        bits[0] = false;
        let t = TruthTable::new(abc(), bits).unwrap();
        assert_eq!(canonical_pos(&t).format(), "A + B + C");

        let g = TruthTable::from_ones(abc(), &[1, 2, 5, 6, 7]).unwrap();
        let pos = canonical_pos(&g);
        assert_eq!(pos.format(), "(A + B + C)(A + B' + C')(A' + B + C)");
        let reference = parse_expression("(A + B + C)(A' + B + C)(A + B' + C')").unwrap();
        assert!(equivalent(&pos, &reference, &abc()).unwrap());
        assert!(equivalent(&pos, &g, &abc()).unwrap());

        let one = TruthTable::new(abc(), vec![true; 8]).unwrap();
        assert_eq!(canonical_pos(&one), Expr::Const(true));
    }

    #[test]
    fn cover_eval_examples() {
        let empty = Cover::empty(abc());
        assert!(!cover_eval(&empty, &[true, false, true]).unwrap());

        let ab = order(&["A", "B"]);
        let c = Cover::new(ab, vec![Cube::parse("10").unwrap()]).unwrap();
        assert!(cover_eval(&c, &[true, false]).unwrap());
        assert!(!cover_eval(&c, &[true, true]).unwrap());
        assert!(matches!(
            cover_eval(&c, &[true]),
            Err(LogicError::LengthMismatch {
                expected: 2,
                got: 1
            })
        ));

        let abcd = order(&["A", "B", "C", "D"]);
        let g = parse_expression("A'B + AB'CD + BC' + ABD + B'C'D'").unwrap();
        let cover = Cover::from_sop_expr(&g, &abcd).unwrap().unwrap();
        assert_eq!(cover.len(), 5);
        assert!(cover_eval(&cover, &[false, true, false, false]).unwrap());
    }

    #[test]
    fn from_sop_expr_shapes() {
        let o = abc();
        let c = Cover::from_sop_expr(&parse_expression("A + B'C").unwrap(), &o)
            .unwrap()
            .unwrap();
        assert_eq!(c.cubes()[0].to_string(), "1--");
        assert_eq!(c.cubes()[1].to_string(), "-01");
        assert!(
            Cover::from_sop_expr(&parse_expression("(A + B)C").unwrap(), &o)
                .unwrap()
                .is_none()
        );
        assert!(Cover::from_sop_expr(&parse_expression("AA'").unwrap(), &o)
            .unwrap()
            .is_none());
        let z = Cover::from_sop_expr(&Expr::Const(false), &o)
            .unwrap()
            .unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn equivalence_examples() {
        let o = abc();
        let f = parse_expression("ABC + A'BC + AB'C'").unwrap();
        let t = table_from_expr(&f, &o).unwrap();
        assert!(equivalent(&f, &canonical_sop(&t), &o).unwrap());

        let a = order(&["A"]);
        let x = parse_expression("A").unwrap();
        let y = parse_expression("A'").unwrap();
        assert!(!equivalent(&x, &y, &a).unwrap());
        assert_eq!(counterexample(&x, &y, &a).unwrap(), Some(0));

        let maj = parse_expression(MAJORITY).unwrap();
        let short = parse_expression("AB + AC + BC").unwrap();
        assert!(equivalent(&maj, &short, &o).unwrap());

        let other = TruthTable::new(order(&["B", "A", "C"]), vec![false; 8]).unwrap();
        assert!(matches!(
            equivalent(&other, &maj, &o),
            Err(LogicError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn cube_basics() {
        let c = Cube::parse("0-1").unwrap();
        assert_eq!(c.literal(0), Literal::Neg);
        assert_eq!(c.literal(1), Literal::Absent);
        assert_eq!(c.literal(2), Literal::Pos);
        assert_eq!(c.rows().collect::<Vec<_>>(), vec![0b001, 0b011]);
        assert!(Cube::parse("--1").unwrap().contains(&c));
        assert!(!c.contains(&Cube::parse("--1").unwrap()));
        assert!(c.intersects(&Cube::parse("-11").unwrap()));
        assert!(!c.intersects(&Cube::parse("1--").unwrap()));
        assert_eq!(c.to_expr(&abc()).format(), "A'C");
        assert_eq!(Cube::universal(3).to_expr(&abc()), Expr::Const(true));
        assert_eq!(
            Cube::parse("1")
                .unwrap()
                .concat(&Cube::parse("0-").unwrap()),
            Cube::parse("10-").unwrap()
        );
        assert!(Cube::parse("-") < Cube::parse("0"));
        assert!(Cube::parse("01") < Cube::parse("1-"));
        assert!(Cube::parse("2").is_none());
    }

    #[test]
    fn row_helpers() {
        assert_eq!(bits_to_row(&[true, false, true]), 5);
        assert_eq!(row_to_bits(5, 3), vec![true, false, true]);
        assert_eq!(row_to_string(3, 3), "011");
        assert_eq!(row_to_string(0, 0), "");
    }
}
