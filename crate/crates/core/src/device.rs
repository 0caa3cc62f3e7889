//! The PLA device: a programmable AND plane feeding a programmable OR
//! plane, with an optional XOR polarity bit per output.
//!
//! AND-plane column `2j` is the true literal of input `j` and column
//! `2j + 1` its complement. A connected crosspoint includes that literal in
//! the row's product. OR-plane entry `(o, r)` connects term `r` to output
//! `o`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::logic::{bits_to_row, row_to_bits, MAX_VARS};

/// Product terms in one CoolRunner-II function block PLA.
pub const COOLRUNNER_PRODUCT_TERMS: usize = 56;
/// OR gates (macrocells) in one CoolRunner-II function block.
pub const COOLRUNNER_OR_GATES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SwitchTech {
    /// Starts connected; programming blows it open.
    Fuse,
    /// Starts open; programming makes it conduct.
    Antifuse,
}

impl SwitchTech {
    pub fn as_str(self) -> &'static str {
        match self {
            SwitchTech::Fuse => "fuse",
            SwitchTech::Antifuse => "antifuse",
        }
    }

    /// Connectivity of an unprogrammed crosspoint.
    pub fn blank_connected(self) -> bool {
        matches!(self, SwitchTech::Fuse)
    }
}

impl FromStr for SwitchTech {
    type Err = DeviceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fuse" => Ok(SwitchTech::Fuse),
            "antifuse" => Ok(SwitchTech::Antifuse),
            other => Err(DeviceError::InvalidProfile(format!(
                "unknown switch technology `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plane {
    And,
    Or,
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::And => "AND",
            Plane::Or => "OR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeviceError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("{plane} crosspoint ({row}, {col}) is out of range")]
    OutOfRange {
        plane: Plane,
        row: usize,
        col: usize,
    },
    #[error("output {0} is out of range")]
    OutputOutOfRange(usize),
    #[error("expected {expected} input bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("profile has no output XOR; polarity must stay 0")]
    NoOutputXor,
    #[error("expected {expected} {what} names, got {got}")]
    NameCount {
        what: &'static str,
        expected: usize,
        got: usize,
    },
}

/// Device dimensions and technology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlaProfile {
    n_inputs: usize,
    n_terms: usize,
    n_outputs: usize,
    tech: SwitchTech,
    has_output_xor: bool,
}

impl PlaProfile {
    pub fn new(
        n_inputs: usize,
        n_terms: usize,
        n_outputs: usize,
        tech: SwitchTech,
        has_output_xor: bool,
    ) -> Result<Self, DeviceError> {
        if n_inputs == 0 || n_terms == 0 || n_outputs == 0 {
            return Err(DeviceError::InvalidProfile(
                "input, term and output counts must be at least 1".into(),
            ));
        }
        if n_inputs > MAX_VARS {
            return Err(DeviceError::InvalidProfile(format!(
                "{n_inputs} inputs exceeds the limit of {MAX_VARS}"
            )));
        }
        Ok(PlaProfile {
            n_inputs,
            n_terms,
            n_outputs,
            tech,
            has_output_xor,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn tech(&self) -> SwitchTech {
        self.tech
    }

    pub fn has_output_xor(&self) -> bool {
        self.has_output_xor
    }

    pub fn with_tech(self, tech: SwitchTech) -> Self {
        PlaProfile { tech, ..self }
    }

    pub fn with_output_xor(self, has_output_xor: bool) -> Self {
        PlaProfile {
            has_output_xor,
            ..self
        }
    }
}

/// `nXpYmZ[:fuse|antifuse][:xor]`, e.g. `n3p4m1` or `n10p56m16:antifuse:xor`.
/// Technology defaults to fuse, XOR to absent.
impl FromStr for PlaProfile {
    type Err = DeviceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DeviceError::InvalidProfile(format!("cannot parse profile `{s}`"));
        let mut parts = s.split(':');
        let dims = parts.next().ok_or_else(bad)?;
        let rest = dims.strip_prefix('n').ok_or_else(bad)?;
        let (n, rest) = rest.split_once('p').ok_or_else(bad)?;
        let (p, m) = rest.split_once('m').ok_or_else(bad)?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let (n, p, m) = (num(n)?, num(p)?, num(m)?);
        let mut tech = SwitchTech::Fuse;
        let mut xor = false;
        let (mut seen_tech, mut seen_xor) = (false, false);
        for opt in parts {
            match opt {
                "fuse" | "antifuse" if !seen_tech => {
                    tech = opt.parse()?;
                    seen_tech = true;
                }
                "xor" if !seen_xor => {
                    xor = true;
                    seen_xor = true;
                }
                _ => return Err(bad()),
            }
        }
        PlaProfile::new(n, p, m, tech, xor)
    }
}

impl fmt::Display for PlaProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n{}p{}m{}:{}",
            self.n_inputs,
            self.n_terms,
            self.n_outputs,
            self.tech.as_str()
        )?;
        if self.has_output_xor {
            f.write_str(":xor")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StuckAt {
    Connected,
    Disconnected,
}

impl StuckAt {
    pub fn as_bool(self) -> bool {
        matches!(self, StuckAt::Connected)
    }
}

/// A single crosspoint stuck at a fixed connectivity.
///
/// AND plane: `row` is the term, `col` the literal column. OR plane: `row`
/// is the output, `col` the term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fault {
    pub plane: Plane,
    pub row: usize,
    pub col: usize,
    pub stuck: StuckAt,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} stuck-{}",
            self.plane,
            self.row,
            self.col,
            if self.stuck.as_bool() { 1 } else { 0 }
        )
    }
}

/// `and:ROW:COL:0|1` or `or:OUTPUT:TERM:0|1`; `1` means stuck connected.
impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [plane, row, col, stuck] = parts[..] else {
            return Err(format!("fault `{s}` is not PLANE:ROW:COL:STUCK"));
        };
        let plane = match plane.to_ascii_lowercase().as_str() {
            "and" => Plane::And,
            "or" => Plane::Or,
            other => return Err(format!("unknown plane `{other}`")),
        };
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| format!("bad coordinate `{t}`"))
        };
        let stuck = match stuck {
            "1" => StuckAt::Connected,
            "0" => StuckAt::Disconnected,
            other => return Err(format!("stuck value must be 0 or 1, got `{other}`")),
        };
        Ok(Fault {
            plane,
            row: num(row)?,
            col: num(col)?,
            stuck,
        })
    }
}

/// Programmed device image. Immutable; programming returns a new state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaState {
    profile: PlaProfile,
    and_plane: Vec<bool>,
    or_plane: Vec<bool>,
    polarity: Vec<bool>,
    input_names: Option<Vec<String>>,
    output_names: Option<Vec<String>>,
}

impl PlaState {
    /// Unprogrammed device: fuse crosspoints all connected, antifuse
    /// crosspoints all open, polarity zero.
    pub fn blank(profile: PlaProfile) -> PlaState {
        let c = profile.tech.blank_connected();
        PlaState {
            and_plane: vec![c; profile.n_terms * 2 * profile.n_inputs],
            or_plane: vec![c; profile.n_outputs * profile.n_terms],
            polarity: vec![false; profile.n_outputs],
            profile,
            input_names: None,
            output_names: None,
        }
    }

    /// Device with every crosspoint open, whatever the technology.
    pub fn disconnected(profile: PlaProfile) -> PlaState {
        PlaState {
            and_plane: vec![false; profile.n_terms * 2 * profile.n_inputs],
            or_plane: vec![false; profile.n_outputs * profile.n_terms],
            polarity: vec![false; profile.n_outputs],
            profile,
            input_names: None,
            output_names: None,
        }
    }

    pub(crate) fn from_parts(
        profile: PlaProfile,
        and_plane: Vec<bool>,
        or_plane: Vec<bool>,
        polarity: Vec<bool>,
    ) -> Result<PlaState, DeviceError> {
        let (n, p, m) = (profile.n_inputs, profile.n_terms, profile.n_outputs);
        if and_plane.len() != p * 2 * n || or_plane.len() != m * p || polarity.len() != m {
            return Err(DeviceError::InvalidProfile(
                "matrix dimensions do not match the profile".into(),
            ));
        }
        if !profile.has_output_xor && polarity.iter().any(|&b| b) {
            return Err(DeviceError::NoOutputXor);
        }
        Ok(PlaState {
            profile,
            and_plane,
            or_plane,
            polarity,
            input_names: None,
            output_names: None,
        })
    }

    pub fn profile(&self) -> &PlaProfile {
        &self.profile
    }

    fn index(&self, plane: Plane, row: usize, col: usize) -> Result<usize, DeviceError> {
        let (rows, cols) = self.plane_dims(plane);
        if row >= rows || col >= cols {
            return Err(DeviceError::OutOfRange { plane, row, col });
        }
        Ok(row * cols + col)
    }

    /// `(rows, cols)` of a plane.
    pub fn plane_dims(&self, plane: Plane) -> (usize, usize) {
        match plane {
            Plane::And => (self.profile.n_terms, 2 * self.profile.n_inputs),
            Plane::Or => (self.profile.n_outputs, self.profile.n_terms),
        }
    }

    pub fn crosspoint(&self, plane: Plane, row: usize, col: usize) -> Result<bool, DeviceError> {
        let i = self.index(plane, row, col)?;
        Ok(match plane {
            Plane::And => self.and_plane[i],
            Plane::Or => self.or_plane[i],
        })
    }

    /// AND-plane bit for term `row`, literal column `col` (panics out of range).
    pub fn and_bit(&self, row: usize, col: usize) -> bool {
        self.and_plane[row * 2 * self.profile.n_inputs + col]
    }

    /// OR-plane bit: does `term` drive `output` (panics out of range).
    pub fn or_bit(&self, output: usize, term: usize) -> bool {
        self.or_plane[output * self.profile.n_terms + term]
    }

    pub fn polarity(&self) -> &[bool] {
        &self.polarity
    }

    pub fn set_crosspoint(
        &self,
        plane: Plane,
        row: usize,
        col: usize,
        connected: bool,
    ) -> Result<PlaState, DeviceError> {
        let i = self.index(plane, row, col)?;
        let mut next = self.clone();
        match plane {
            Plane::And => next.and_plane[i] = connected,
            Plane::Or => next.or_plane[i] = connected,
        }
        Ok(next)
    }

    pub fn set_polarity(&self, output: usize, complemented: bool) -> Result<PlaState, DeviceError> {
        if output >= self.profile.n_outputs {
            return Err(DeviceError::OutputOutOfRange(output));
        }
        if complemented && !self.profile.has_output_xor {
            return Err(DeviceError::NoOutputXor);
        }
        let mut next = self.clone();
        next.polarity[output] = complemented;
        Ok(next)
    }

    pub fn input_names(&self) -> Option<&[String]> {
        self.input_names.as_deref()
    }

    pub fn output_names(&self) -> Option<&[String]> {
        self.output_names.as_deref()
    }

    /// Attaches pin labels. They do not affect evaluation.
    pub fn with_names(
        mut self,
        inputs: Option<Vec<String>>,
        outputs: Option<Vec<String>>,
    ) -> Result<PlaState, DeviceError> {
        if let Some(i) = &inputs {
            if i.len() != self.profile.n_inputs {
                return Err(DeviceError::NameCount {
                    what: "input",
                    expected: self.profile.n_inputs,
                    got: i.len(),
                });
            }
        }
        if let Some(o) = &outputs {
            if o.len() != self.profile.n_outputs {
                return Err(DeviceError::NameCount {
                    what: "output",
                    expected: self.profile.n_outputs,
                    got: o.len(),
                });
            }
        }
        self.input_names = inputs;
        self.output_names = outputs;
        Ok(self)
    }

    /// Input labels, falling back to `i0`, `i1`, ...
    pub fn input_labels(&self) -> Vec<String> {
        self.input_names.clone().unwrap_or_else(|| {
            (0..self.profile.n_inputs)
                .map(|j| format!("i{j}"))
                .collect()
        })
    }

    /// Output labels, falling back to `o0`, `o1`, ...
    pub fn output_labels(&self) -> Vec<String> {
        self.output_names.clone().unwrap_or_else(|| {
            (0..self.profile.n_outputs)
                .map(|o| format!("o{o}"))
                .collect()
        })
    }

    /// Same device with every switch technology detail dropped: equal
    /// connectivity, polarity and names.
    pub fn same_connectivity(&self, other: &PlaState) -> bool {
        self.and_plane == other.and_plane
            && self.or_plane == other.or_plane
            && self.polarity == other.polarity
    }

    /// Flattened row-evaluator for repeated simulation.
    pub fn evaluator(&self) -> PlaEvaluator {
        let n = self.profile.n_inputs;
        let terms = (0..self.profile.n_terms)
            .map(|r| {
                let mut t = TermMask::default();
                for j in 0..n {
                    let bit = 1u32 << (n - 1 - j);
                    let pos = self.and_bit(r, 2 * j);
                    let neg = self.and_bit(r, 2 * j + 1);
                    if pos && neg {
                        t.dead = true;
                    }
                    if pos || neg {
                        t.care |= bit;
                    }
                    if pos {
                        t.value |= bit;
                    }
                }
                t
            })
            .collect();
        let outputs = (0..self.profile.n_outputs)
            .map(|o| {
                (0..self.profile.n_terms)
                    .filter(|&r| self.or_bit(o, r))
                    .collect()
            })
            .collect();
        PlaEvaluator {
            n_inputs: n,
            terms,
            outputs,
            polarity: self.polarity.clone(),
        }
    }

    pub fn eval(&self, input: &[bool]) -> Result<Vec<bool>, DeviceError> {
        self.evaluator().eval(input)
    }

    pub fn eval_row(&self, row: u32) -> Vec<bool> {
        self.evaluator().eval_row(row)
    }

    pub fn inject_fault(&self, fault: &Fault) -> Result<PlaState, DeviceError> {
        self.set_crosspoint(fault.plane, fault.row, fault.col, fault.stuck.as_bool())
    }

    /// Every single stuck-crosspoint fault: AND plane then OR plane,
    /// row-major, stuck-connected before stuck-disconnected.
    pub fn all_faults(&self) -> Vec<Fault> {
        let mut out = Vec::new();
        for plane in [Plane::And, Plane::Or] {
            let (rows, cols) = self.plane_dims(plane);
            for row in 0..rows {
                for col in 0..cols {
                    for stuck in [StuckAt::Connected, StuckAt::Disconnected] {
                        out.push(Fault {
                            plane,
                            row,
                            col,
                            stuck,
                        });
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct TermMask {
    care: u32,
    value: u32,
    /// Both literals of some input connected.
    dead: bool,
}

/// Precomputed masks of a [`PlaState`].
#[derive(Clone, Debug)]
pub struct PlaEvaluator {
    n_inputs: usize,
    terms: Vec<TermMask>,
    outputs: Vec<Vec<usize>>,
    polarity: Vec<bool>,
}

impl PlaEvaluator {
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Product term `r` on `row`. An empty row is the empty product (1).
    pub fn term(&self, r: usize, row: u32) -> bool {
        let t = &self.terms[r];
        !t.dead && row & t.care == t.value
    }

    /// Output `o` on `row`: OR of its connected terms (0 when none), then
    /// XOR with the polarity bit.
    pub fn output(&self, o: usize, row: u32) -> bool {
        let raw = self.outputs[o].iter().any(|&r| self.term(r, row));
        raw ^ self.polarity[o]
    }

    pub fn eval_row(&self, row: u32) -> Vec<bool> {
        (0..self.outputs.len())
            .map(|o| self.output(o, row))
            .collect()
    }

    pub fn eval(&self, input: &[bool]) -> Result<Vec<bool>, DeviceError> {
        if input.len() != self.n_inputs {
            return Err(DeviceError::LengthMismatch {
                expected: self.n_inputs,
                got: input.len(),
            });
        }
        Ok(self.eval_row(bits_to_row(input)))
    }
}

pub fn blank_device(profile: PlaProfile) -> PlaState {
    PlaState::blank(profile)
}

pub fn eval_pla(state: &PlaState, input: &[bool]) -> Result<Vec<bool>, DeviceError> {
    state.eval(input)
}

pub fn inject_fault(state: &PlaState, fault: &Fault) -> Result<PlaState, DeviceError> {
    state.inject_fault(fault)
}

/// Lowest input row on which two devices of equal shape disagree.
pub fn first_difference(a: &PlaState, b: &PlaState) -> Option<u32> {
    let (ea, eb) = (a.evaluator(), b.evaluator());
    let n = a.profile.n_inputs;
    let m = a.profile.n_outputs;
    (0..1u32 << n)
        .into_par_iter()
        .find_first(|&row| (0..m).any(|o| ea.output(o, row) != eb.output(o, row)))
}

/// Lowest-index input vector exposing `fault`, or `None` when the fault is
/// undetectable.
pub fn find_test_vector(good: &PlaState, fault: &Fault) -> Result<Option<Vec<bool>>, DeviceError> {
    let bad = good.inject_fault(fault)?;
    Ok(first_difference(good, &bad).map(|r| row_to_bits(r, good.profile.n_inputs)))
}

/// Classification of one fault.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultOutcome {
    pub fault: Fault,
    /// First exposing input row, `None` when undetectable.
    pub test_row: Option<u32>,
}

/// Classifies every single stuck-crosspoint fault of `good`, in
/// [`PlaState::all_faults`] order.
pub fn fault_sweep(good: &PlaState) -> Vec<FaultOutcome> {
    good.all_faults()
        .into_par_iter()
        .map(|fault| {
            let bad = good
                .inject_fault(&fault)
                .expect("enumerated faults are in range");
            FaultOutcome {
                fault,
                test_row: first_difference(good, &bad),
            }
        })
        .collect()
}

/// ASCII crosspoint picture: a header naming the AND-plane columns and the
/// OR-plane columns, one line per AND row (`X` connected, `.` open) with its
/// OR connections after a `|`, and a `POL` line when the profile has output
/// XORs.
///
/// ```text
/// AND: A A' B B'
/// OR: F
/// T0 X..X | X
/// T1 .X.. | .
/// ```
pub fn render_crosspoint_diagram(state: &PlaState) -> String {
    let p = state.profile.n_terms;
    let m = state.profile.n_outputs;
    let mut out = String::new();
    let and_labels: Vec<String> = state
        .input_labels()
        .into_iter()
        .flat_map(|name| [name.clone(), format!("{name}'")])
        .collect();
    out.push_str("AND: ");
    out.push_str(&and_labels.join(" "));
    out.push('\n');
    out.push_str("OR: ");
    out.push_str(&state.output_labels().join(" "));
    out.push('\n');

    let mut label_width = format!("T{}", p.saturating_sub(1)).len();
    if state.profile.has_output_xor {
        label_width = label_width.max(3);
    }
    let cols = 2 * state.profile.n_inputs;
    for r in 0..p {
        let and: String = (0..cols)
            .map(|c| if state.and_bit(r, c) { 'X' } else { '.' })
            .collect();
        let or: String = (0..m)
            .map(|o| if state.or_bit(o, r) { 'X' } else { '.' })
            .collect();
        out.push_str(&format!("{:<label_width$} {and} | {or}\n", format!("T{r}")));
    }
    if state.profile.has_output_xor {
        let pol: String = state
            .polarity
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        out.push_str(&format!(
            "{:<label_width$} {} | {pol}\n",
            "POL",
            " ".repeat(cols)
        ));
    }
    out
}
