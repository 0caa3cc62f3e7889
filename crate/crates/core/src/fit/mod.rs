//! Mapping netlists onto a device profile, the end-to-end compile pipeline,
//! and the text interchange formats.

mod berkeley;
mod fusemap;

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::device::{DeviceError, PlaProfile, PlaState, Plane};
use crate::expr::{Equation, VarOrder, VarOrderError};
use crate::logic::{
    self, canonical_sop, table_from_expr, BoundExpr, Cover, Cube, Literal, LogicError,
};
use crate::minimize::{
    self, share_terms, CoverMethod, MinimizeError, MinimizeSpec, MultiOutputCover,
    EXACT_MAX_MINTERMS, EXACT_MAX_PRIMES,
};

pub use berkeley::{read_berkeley_pla, write_berkeley_pla, BerkeleyPla};
pub use fusemap::{emit_fusemap, parse_fusemap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CapacityAxis {
    Terms,
    Inputs,
    Outputs,
}

impl fmt::Display for CapacityAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapacityAxis::Terms => "terms",
            CapacityAxis::Inputs => "inputs",
            CapacityAxis::Outputs => "outputs",
        })
    }
}

/// A malformed line in one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("design needs {needed} {axis} but the device has {available}")]
    Capacity {
        needed: usize,
        available: usize,
        axis: CapacityAxis,
    },
    #[error("output polarity requested but the profile has no output XOR")]
    PolarityWithoutXor,
    #[error("unknown output `{0}`")]
    UnknownOutput(String),
    #[error("equation variable `{0}` is not a device input")]
    UnknownInput(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Minimize(#[from] MinimizeError),
    #[error(transparent)]
    Device(#[from] DeviceError),
    #[error(transparent)]
    Order(#[from] VarOrderError),
}

/// Outcome of mapping a netlist onto a device.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub terms_used: usize,
    pub terms_available: usize,
    pub outputs_used: usize,
    pub inputs_used: usize,
    /// Per output: its name and the AND rows it collects.
    pub assignments: Vec<(String, Vec<usize>)>,
    /// Rows feeding more than one output.
    pub shared_terms: usize,
}

impl fmt::Display for FitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "terms {}/{}, inputs {}, outputs {}, shared terms {}",
            self.terms_used,
            self.terms_available,
            self.inputs_used,
            self.outputs_used,
            self.shared_terms
        )?;
        for (name, rows) in &self.assignments {
            let rows: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
            writeln!(f, "  {name}: rows [{}]", rows.join(", "))?;
        }
        Ok(())
    }
}

/// Labels for `count` slots, `given` first, then `nc0`, `nc1`, ... skipping
/// names already taken.
fn padded_names(given: &[String], count: usize) -> Vec<String> {
    let mut names: Vec<String> = given.to_vec();
    let taken: HashSet<String> = given.iter().cloned().collect();
    let mut k = 0;
    while names.len() < count {
        let candidate = format!("nc{k}");
        k += 1;
        if !taken.contains(&candidate) {
            names.push(candidate);
        }
    }
    names
}

/// Places the term pool on AND rows `0..k` in pool order and wires each
/// output's selection in the OR plane. Unused rows stay fully open and
/// polarity is left at zero.
pub fn fit(
    cover: &MultiOutputCover,
    profile: &PlaProfile,
) -> Result<(PlaState, FitReport), FitError> {
    let check = |needed: usize, available: usize, axis| {
        if needed > available {
            Err(FitError::Capacity {
                needed,
                available,
                axis,
            })
        } else {
            Ok(())
        }
    };
    let n = cover.order().len();
    check(n, profile.n_inputs(), CapacityAxis::Inputs)?;
    check(
        cover.outputs().len(),
        profile.n_outputs(),
        CapacityAxis::Outputs,
    )?;
    check(cover.pool().len(), profile.n_terms(), CapacityAxis::Terms)?;

    let mut state = PlaState::disconnected(*profile);
    for (r, cube) in cover.pool().iter().enumerate() {
        for (j, lit) in cube.literals().enumerate() {
            let col = match lit {
                Literal::Pos => 2 * j,
                Literal::Neg => 2 * j + 1,
                Literal::Absent => continue,
            };
            state = state.set_crosspoint(Plane::And, r, col, true)?;
        }
    }
    for (o, out) in cover.outputs().iter().enumerate() {
        for &t in &out.terms {
            state = state.set_crosspoint(Plane::Or, o, t, true)?;
        }
    }
    let inputs = padded_names(cover.order().names(), profile.n_inputs());
    let outputs = padded_names(&cover.output_names(), profile.n_outputs());
    let state = state.with_names(Some(inputs), Some(outputs))?;

    let report = FitReport {
        terms_used: cover.pool().len(),
        terms_available: profile.n_terms(),
        outputs_used: cover.outputs().len(),
        inputs_used: n,
        assignments: cover
            .outputs()
            .iter()
            .map(|o| (o.name.clone(), o.terms.clone()))
            .collect(),
        shared_terms: cover.shared_term_count(),
    };
    Ok((state, report))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileOptions {
    /// Run two-level minimization on each output.
    pub minimize: bool,
    /// Outputs to implement in complemented form through the output XOR.
    pub complemented: Vec<String>,
    /// Input order; defaults to first appearance across the equations.
    pub order: Option<VarOrder>,
    /// Map equations already in SOP form term for term instead of
    /// expanding them to minterms. Ignored for complemented outputs and
    /// when minimizing.
    pub as_written: bool,
}

/// Everything the pipeline produced.
#[derive(Clone, Debug)]
pub struct Compilation {
    pub state: PlaState,
    pub report: FitReport,
    pub netlist: MultiOutputCover,
    /// One line per stage decision.
    pub log: Vec<String>,
}

/// Variables of all equations in first-appearance order.
pub fn equations_order(equations: &[Equation]) -> VarOrder {
    let mut order = VarOrder::default();
    for eq in equations {
        order.merge(&eq.expr.variables());
    }
    order
}

fn dedup_cover(cover: Cover) -> Cover {
    let mut cubes: Vec<Cube> = Vec::with_capacity(cover.len());
    for &c in cover.cubes() {
        if !cubes.contains(&c) {
            cubes.push(c);
        }
    }
    Cover::new(cover.order().clone(), cubes).expect("same order")
}

/// Equations → truth tables → canonical SOP → optional minimization → term
/// sharing → fit → output polarity.
///
/// A complemented output is compiled from the complement of its table and
/// the XOR bit restores the requested function.
pub fn compile(
    equations: &[Equation],
    profile: &PlaProfile,
    options: &CompileOptions,
) -> Result<Compilation, FitError> {
    let order = match &options.order {
        Some(o) => {
            let need = equations_order(equations);
            if let Some(missing) = need.names().iter().find(|v| !o.contains(v)) {
                return Err(LogicError::MissingVariable(missing.clone()).into());
            }
            o.clone()
        }
        None => equations_order(equations),
    };
    if order.len() > profile.n_inputs() {
        return Err(FitError::Capacity {
            needed: order.len(),
            available: profile.n_inputs(),
            axis: CapacityAxis::Inputs,
        });
    }
    if !options.complemented.is_empty() && !profile.has_output_xor() {
        return Err(FitError::PolarityWithoutXor);
    }
    if let Some(unknown) = options
        .complemented
        .iter()
        .find(|c| !equations.iter().any(|e| &e.name == *c))
    {
        return Err(FitError::UnknownOutput(unknown.clone()));
    }

    let mut log = vec![format!("inputs: {order}")];
    let mut covers = Vec::with_capacity(equations.len());
    let mut polarity = Vec::with_capacity(equations.len());
    for eq in equations {
        let flip = options.complemented.contains(&eq.name);
        let mut table = table_from_expr(&eq.expr, &order)?;
        if flip {
            table = table.complement();
        }
        let canonical = canonical_sop(&table);
        let written = if options.as_written && !flip && !options.minimize {
            Cover::from_sop_expr(&eq.expr, &order)?.map(dedup_cover)
        } else {
            None
        };
        let cover = if let Some(cover) = written {
            log.push(format!("{}: {} terms as written", eq.name, cover.len()));
            cover
        } else if options.minimize {
            let spec = MinimizeSpec::from_table(&table, &[])?;
            let sel = minimize::minimize_with_method(&spec)?;
            let method = match sel.method {
                CoverMethod::Exact => "exact",
                CoverMethod::Greedy => "greedy",
            };
            log.push(format!(
                "{}: {} minterms -> {} terms ({method}; exact limit {EXACT_MAX_PRIMES} primes / {EXACT_MAX_MINTERMS} minterms)",
                eq.name,
                canonical.len(),
                sel.cover.len()
            ));
            sel.cover
        } else {
            log.push(format!("{}: {} minterms", eq.name, canonical.len()));
            canonical
        };
        covers.push((eq.name.clone(), cover));
        polarity.push(flip);
    }
    let netlist = if covers.is_empty() {
        MultiOutputCover::new(order.clone(), vec![], vec![])?
    } else {
        share_terms(&covers)?
    };
    log.push(format!("netlist: {} distinct terms", netlist.pool().len()));

    let (mut state, report) = fit(&netlist, profile)?;
    for (o, &flip) in polarity.iter().enumerate() {
        if flip {
            state = state.set_polarity(o, true)?;
        }
    }
    log.push(format!(
        "bitstream: {} of {} AND rows used",
        report.terms_used, report.terms_available
    ));
    Ok(Compilation {
        state,
        report,
        netlist,
        log,
    })
}

/// First disagreement found by [`verify_device`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub row: u32,
    pub output: String,
    pub expected: bool,
    pub actual: bool,
}

/// Exhaustively compares a device against equations over all `2^n` device
/// inputs.
///
/// Equation variables and names are matched to the device's input and
/// output labels when it carries them; otherwise inputs follow
/// first-appearance order and outputs declaration order.
pub fn verify_device(
    state: &PlaState,
    equations: &[Equation],
) -> Result<Option<Mismatch>, FitError> {
    let profile = state.profile();
    let n = profile.n_inputs();
    let order = match state.input_names() {
        Some(names) => VarOrder::new(names.iter().cloned())?,
        None => {
            let used = equations_order(equations);
            if used.len() > n {
                return Err(FitError::Capacity {
                    needed: used.len(),
                    available: n,
                    axis: CapacityAxis::Inputs,
                });
            }
            VarOrder::new(padded_names(used.names(), n))?
        }
    };
    let mut targets = Vec::with_capacity(equations.len());
    for (i, eq) in equations.iter().enumerate() {
        let o = match state.output_names() {
            Some(names) => names
                .iter()
                .position(|n| n == &eq.name)
                .ok_or_else(|| FitError::UnknownOutput(eq.name.clone()))?,
            None if i < profile.n_outputs() => i,
            None => return Err(FitError::UnknownOutput(eq.name.clone())),
        };
        let bound = BoundExpr::bind(&eq.expr, &order).map_err(|e| match e {
            LogicError::MissingVariable(v) => FitError::UnknownInput(v),
            other => other.into(),
        })?;
        targets.push((o, bound, eq.name.clone()));
    }
    logic::check_width(n)?;
    let ev = state.evaluator();
    let hit = (0..1u32 << n).into_par_iter().find_map_first(|row| {
        targets.iter().find_map(|(o, bound, name)| {
            let expected = bound.eval_row(row);
            let actual = ev.output(*o, row);
            (expected != actual).then(|| Mismatch {
                row,
                output: name.clone(),
                expected,
                actual,
            })
        })
    });
    Ok(hit)
}
