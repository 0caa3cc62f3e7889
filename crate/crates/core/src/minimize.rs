//! Two-level minimization.
//!
//! Prime implicants come from Quine-McCluskey merging. The cover is chosen
//! exactly with Petrick's method for small charts and greedily otherwise.
//! Multi-output sharing is exact-match only: identical cubes in different
//! outputs share one AND row.

use std::collections::HashSet;

use thiserror::Error;

use crate::expr::VarOrder;
use crate::logic::{Cover, Cube, LogicError, TruthTable};

/// Prime generation refuses wider functions.
pub const MAX_MINIMIZE_VARS: usize = 16;
/// Petrick's method is used when the prime count is at most this...
pub const EXACT_MAX_PRIMES: usize = 24;
/// ...and the ON-set has at most this many minterms.
pub const EXACT_MAX_MINTERMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimizeError {
    #[error("{n} variables exceeds the minimization limit of {max}")]
    TooManyVariables { n: usize, max: usize },
    #[error("row {row} is out of range for {n} variables")]
    RowOutOfRange { row: u32, n: usize },
    #[error("row {0} is in both the ON-set and the don't-care set")]
    OnDcOverlap(u32),
    #[error("minterm {0} is not covered by any prime")]
    Uncovered(u32),
    #[error("cube width {got} does not match {expected} variables")]
    WidthMismatch { expected: usize, got: usize },
    #[error("output `{0}` selects a term outside the pool")]
    TermOutOfRange(String),
    #[error("duplicate cube {0} in term pool")]
    DuplicateTerm(Cube),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// ON-set and don't-care rows of a single-output function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizeSpec {
    order: VarOrder,
    on_set: Vec<u32>,
    dc_set: Vec<u32>,
}

impl MinimizeSpec {
    /// Rows are sorted and deduplicated; ON and DC must be disjoint.
    pub fn new(order: VarOrder, on_set: &[u32], dc_set: &[u32]) -> Result<Self, MinimizeError> {
        let n = order.len();
        if n > MAX_MINIMIZE_VARS {
            return Err(MinimizeError::TooManyVariables {
                n,
                max: MAX_MINIMIZE_VARS,
            });
        }
        let norm = |rows: &[u32]| -> Result<Vec<u32>, MinimizeError> {
            let mut v = rows.to_vec();
            v.sort_unstable();
            v.dedup();
            if let Some(&row) = v.iter().find(|&&r| (r as u64) >= 1u64 << n) {
                return Err(MinimizeError::RowOutOfRange { row, n });
            }
            Ok(v)
        };
        let on_set = norm(on_set)?;
        let dc_set = norm(dc_set)?;
        if let Some(&row) = on_set.iter().find(|r| dc_set.binary_search(r).is_ok()) {
            return Err(MinimizeError::OnDcOverlap(row));
        }
        Ok(MinimizeSpec {
            order,
            on_set,
            dc_set,
        })
    }

    /// ON-set = 1-rows of the table not listed in `dc`.
    pub fn from_table(table: &TruthTable, dc: &[u32]) -> Result<Self, MinimizeError> {
        let dcs: HashSet<u32> = dc.iter().copied().collect();
        let on: Vec<u32> = table.ones().filter(|r| !dcs.contains(r)).collect();
        MinimizeSpec::new(table.order().clone(), &on, dc)
    }

    pub fn from_cover(cover: &Cover, dc: &[u32]) -> Result<Self, MinimizeError> {
        if cover.order().len() > MAX_MINIMIZE_VARS {
            return Err(MinimizeError::TooManyVariables {
                n: cover.order().len(),
                max: MAX_MINIMIZE_VARS,
            });
        }
        MinimizeSpec::from_table(&cover.to_table()?, dc)
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn on_set(&self) -> &[u32] {
        &self.on_set
    }

    pub fn dc_set(&self) -> &[u32] {
        &self.dc_set
    }
}

/// Sort key for prime lists: more `-` first, then literal pattern.
fn prime_order(a: &Cube, b: &Cube) -> std::cmp::Ordering {
    b.absent_count()
        .cmp(&a.absent_count())
        .then_with(|| a.cmp(b))
}

/// All prime implicants of ON ∪ DC by iterated pairwise merging.
pub fn prime_implicants(spec: &MinimizeSpec) -> Result<Vec<Cube>, MinimizeError> {
    let n = spec.order.len();
    if n > MAX_MINIMIZE_VARS {
        return Err(MinimizeError::TooManyVariables {
            n,
            max: MAX_MINIMIZE_VARS,
        });
    }
    let mut level: HashSet<Cube> = spec
        .on_set
        .iter()
        .chain(&spec.dc_set)
        .map(|&r| Cube::minterm(n, r))
        .collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let mut merged: HashSet<Cube> = HashSet::new();
        let mut used: HashSet<Cube> = HashSet::new();
        for c in &level {
            for bit in 0..n {
                let b = 1u32 << bit;
                // Pair each cube with its partner that has this bit set.
                if c.care() & b == 0 || c.value() & b != 0 {
                    continue;
                }
                let partner = Cube::from_masks(n, c.care(), c.value() | b);
                if level.contains(&partner) {
                    merged.insert(Cube::from_masks(n, c.care() & !b, c.value()));
                    used.insert(*c);
                    used.insert(partner);
                }
            }
        }
        primes.extend(level.iter().filter(|c| !used.contains(c)).copied());
        level = merged;
    }
    primes.sort_by(prime_order);
    Ok(primes)
}

/// How a cover was selected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMethod {
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub cover: Cover,
    pub method: CoverMethod,
}

/// Picks a subset of `primes` covering every ON-set minterm.
pub fn minimum_cover(primes: &[Cube], spec: &MinimizeSpec) -> Result<Cover, MinimizeError> {
    select_cover(primes, spec).map(|s| s.cover)
}

/// [`minimum_cover`] that also reports which algorithm ran.
///
/// Exact selection returns the chosen primes in the order of `primes`;
/// greedy selection returns them in the order they were picked. Among
/// equally good choices the lexicographically smaller cube wins.
pub fn select_cover(primes: &[Cube], spec: &MinimizeSpec) -> Result<Selection, MinimizeError> {
    let n = spec.order.len();
    if let Some(c) = primes.iter().find(|c| c.width() != n) {
        return Err(MinimizeError::WidthMismatch {
            expected: n,
            got: c.width(),
        });
    }
    let minterms = &spec.on_set;
    // Chart: for each minterm, the primes covering it.
    let mut chart: Vec<Vec<usize>> = Vec::with_capacity(minterms.len());
    for &m in minterms {
        let cols: Vec<usize> = (0..primes.len())
            .filter(|&i| primes[i].contains_row(m))
            .collect();
        if cols.is_empty() {
            return Err(MinimizeError::Uncovered(m));
        }
        chart.push(cols);
    }
    let exact = primes.len() <= EXACT_MAX_PRIMES && minterms.len() <= EXACT_MAX_MINTERMS;
    let (picked, method) = if minterms.is_empty() {
        (Vec::new(), CoverMethod::Exact)
    } else if exact {
        (petrick(primes, &chart), CoverMethod::Exact)
    } else {
        (greedy(primes, &chart), CoverMethod::Greedy)
    };
    let cover = Cover::new(
        spec.order.clone(),
        picked.into_iter().map(|i| primes[i]).collect(),
    )?;
    Ok(Selection { cover, method })
}

fn greedy(primes: &[Cube], chart: &[Vec<usize>]) -> Vec<usize> {
    let mut uncovered = vec![true; chart.len()];
    let mut remaining = chart.len();
    let mut gain = vec![0usize; primes.len()];
    for cols in chart {
        for &i in cols {
            gain[i] += 1;
        }
    }
    let mut picked = Vec::new();
    while remaining > 0 {
        let best = (0..primes.len())
            .filter(|&i| gain[i] > 0)
            .min_by(|&a, &b| {
                gain[b]
                    .cmp(&gain[a])
                    .then_with(|| primes[a].cmp(&primes[b]))
            })
            .expect("chart rows are non-empty");
        picked.push(best);
        for (m, cols) in chart.iter().enumerate() {
            if uncovered[m] && cols.contains(&best) {
                uncovered[m] = false;
                remaining -= 1;
                for &i in cols {
                    gain[i] -= 1;
                }
            }
        }
    }
    picked
}

/// Petrick's method: multiply out the product of per-minterm sums of prime
/// sets, absorbing supersets, and keep the smallest products. Products
/// larger than the greedy solution are pruned since they cannot be optimal.
fn petrick(primes: &[Cube], chart: &[Vec<usize>]) -> Vec<usize> {
    let bound = greedy(primes, chart).len() as u32;
    let mut clauses: Vec<u32> = chart
        .iter()
        .map(|cols| cols.iter().fold(0u32, |acc, &i| acc | 1 << i))
        .collect();
    clauses.sort_by_key(|c| (c.count_ones(), *c));
    clauses.dedup();

    let mut products: Vec<u32> = vec![0];
    for clause in clauses {
        let mut next: Vec<u32> = Vec::new();
        for &p in &products {
            if p & clause != 0 {
                next.push(p);
                continue;
            }
            let mut bits = clause;
            while bits != 0 {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                let q = p | 1 << i;
                if q.count_ones() <= bound {
                    next.push(q);
                }
            }
        }
        products = absorb(next);
    }

    let best_size = products.iter().map(|p| p.count_ones()).min().unwrap_or(0);
    let key = |p: u32| -> Vec<Cube> {
        let mut cubes: Vec<Cube> = (0..primes.len())
            .filter(|i| p >> i & 1 == 1)
            .map(|i| primes[i])
            .collect();
        cubes.sort();
        cubes
    };
    let best = products
        .into_iter()
        .filter(|p| p.count_ones() == best_size)
        .min_by_key(|&p| key(p))
        .unwrap_or(0);
    (0..primes.len()).filter(|i| best >> i & 1 == 1).collect()
}

/// Removes duplicates and every set that is a superset of another.
fn absorb(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u32> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept
}

/// Primes followed by cover selection. The result agrees with `spec` on
/// every row outside the don't-care set.
pub fn minimize(spec: &MinimizeSpec) -> Result<Cover, MinimizeError> {
    minimize_with_method(spec).map(|s| s.cover)
}

pub fn minimize_with_method(spec: &MinimizeSpec) -> Result<Selection, MinimizeError> {
    let primes = prime_implicants(spec)?;
    select_cover(&primes, spec)
}

/// Product terms of one output in a [`MultiOutputCover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputTerms {
    pub name: String,
    pub terms: Vec<usize>,
}

/// Several outputs drawing from one shared pool of product terms, the
/// netlist handed to the fitter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiOutputCover {
    order: VarOrder,
    pool: Vec<Cube>,
    outputs: Vec<OutputTerms>,
}

impl MultiOutputCover {
    pub fn new(
        order: VarOrder,
        pool: Vec<Cube>,
        outputs: Vec<OutputTerms>,
    ) -> Result<Self, MinimizeError> {
        let mut seen = HashSet::new();
        for c in &pool {
            if c.width() != order.len() {
                return Err(MinimizeError::WidthMismatch {
                    expected: order.len(),
                    got: c.width(),
                });
            }
            if !seen.insert(*c) {
                return Err(MinimizeError::DuplicateTerm(*c));
            }
        }
        for o in &outputs {
            if o.terms.iter().any(|&t| t >= pool.len()) {
                return Err(MinimizeError::TermOutOfRange(o.name.clone()));
            }
        }
        Ok(MultiOutputCover {
            order,
            pool,
            outputs,
        })
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn pool(&self) -> &[Cube] {
        &self.pool
    }

    pub fn outputs(&self) -> &[OutputTerms] {
        &self.outputs
    }

    pub fn output_names(&self) -> Vec<String> {
        self.outputs.iter().map(|o| o.name.clone()).collect()
    }

    /// The cover of output `i`, cubes in selection order.
    pub fn output_cover(&self, i: usize) -> Cover {
        let cubes = self.outputs[i]
            .terms
            .iter()
            .map(|&t| self.pool[t])
            .collect();
        Cover::new(self.order.clone(), cubes).expect("pool widths validated")
    }

    pub fn eval_row(&self, output: usize, row: u32) -> bool {
        self.outputs[output]
            .terms
            .iter()
            .any(|&t| self.pool[t].contains_row(row))
    }

    /// Number of pool terms selected by two or more outputs.
    pub fn shared_term_count(&self) -> usize {
        let mut uses = vec![0usize; self.pool.len()];
        for o in &self.outputs {
            for &t in &o.terms {
                uses[t] += 1;
            }
        }
        uses.iter().filter(|&&u| u >= 2).count()
    }
}

/// Merges named covers into one pool of distinct cubes in first-use order.
pub fn share_terms(covers: &[(String, Cover)]) -> Result<MultiOutputCover, MinimizeError> {
    let order = covers
        .first()
        .map(|(_, c)| c.order().clone())
        .unwrap_or_default();
    let mut pool: Vec<Cube> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut outputs = Vec::with_capacity(covers.len());
    for (name, cover) in covers {
        if cover.order() != &order {
            return Err(LogicError::OrderMismatch {
                left: order.to_string(),
                right: cover.order().to_string(),
            }
            .into());
        }
        let mut terms: Vec<usize> = Vec::with_capacity(cover.len());
        for cube in cover.cubes() {
            let t = *index.entry(*cube).or_insert_with(|| {
                pool.push(*cube);
                pool.len() - 1
            });
            if !terms.contains(&t) {
                terms.push(t);
            }
        }
        outputs.push(OutputTerms {
            name: name.clone(),
            terms,
        });
    }
    Ok(MultiOutputCover {
        order,
        pool,
        outputs,
    })
}
