//! Controller synthesis from symbolic state tables.
//!
//! A state table (KISS2) is binary-encoded, turned into next-state and
//! output SOP covers over `(state bits ++ inputs)`, fitted onto a PLA, and
//! simulated with the state register kept in the harness.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::device::{PlaProfile, PlaState};
use crate::expr::{VarOrder, VarOrderError};
use crate::fit::{fit, FitError, FitReport, FormatError};
use crate::logic::{bits_to_row, row_to_string, Cover, Cube, Literal};
use crate::minimize::{self, share_terms, MinimizeError, MinimizeSpec, MultiOutputCover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsmError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("state `{state}`: transitions {first} and {second} overlap")]
    Overlap {
        state: String,
        first: usize,
        second: usize,
    },
    #[error("state `{state}`: transition {index} duplicates an earlier one")]
    Duplicate { state: String, index: usize },
    #[error("transition {0} references an undeclared state")]
    UndeclaredState(usize),
    #[error("transition {index}: expected {expected} {what} bits, got {got}")]
    TransitionWidth {
        index: usize,
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("state `{state}` has no transition for input {input}")]
    Unspecified { state: String, input: String },
    #[error("expected {expected} input bits, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error(transparent)]
    Names(#[from] VarOrderError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Minimize(#[from] MinimizeError),
}

/// One row of the state table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    /// Cube over the machine inputs.
    pub input: Cube,
    pub current: usize,
    pub next: usize,
    pub outputs: Vec<bool>,
}

/// Symbolic Mealy machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fsm {
    inputs: Vec<String>,
    outputs: Vec<String>,
    states: Vec<String>,
    reset: usize,
    transitions: Vec<Transition>,
}

impl Fsm {
    pub fn new(
        inputs: Vec<String>,
        outputs: Vec<String>,
        states: Vec<String>,
        reset: usize,
        transitions: Vec<Transition>,
    ) -> Result<Fsm, FsmError> {
        if states.is_empty() {
            return Err(FsmError::Invalid("no states".into()));
        }
        if reset >= states.len() {
            return Err(FsmError::Invalid("reset state is not declared".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(FsmError::Invalid(format!("state `{s}` declared twice")));
            }
        }
        VarOrder::new(inputs.iter().cloned())?;
        VarOrder::new(outputs.iter().cloned())?;
        let (k, q) = (inputs.len(), outputs.len());
        if k > crate::logic::MAX_VARS {
            return Err(FsmError::Invalid(format!("{k} inputs is too many")));
        }
        for (i, t) in transitions.iter().enumerate() {
            if t.current >= states.len() || t.next >= states.len() {
                return Err(FsmError::UndeclaredState(i));
            }
            if t.input.width() != k {
                return Err(FsmError::TransitionWidth {
                    index: i,
                    what: "input",
                    expected: k,
                    got: t.input.width(),
                });
            }
            if t.outputs.len() != q {
                return Err(FsmError::TransitionWidth {
                    index: i,
                    what: "output",
                    expected: q,
                    got: t.outputs.len(),
                });
            }
            for (j, u) in transitions[..i].iter().enumerate() {
                if u.current != t.current || !u.input.intersects(&t.input) {
                    continue;
                }
                let state = states[t.current].clone();
                return Err(
                    if u.input == t.input && u.next == t.next && u.outputs == t.outputs {
                        FsmError::Duplicate { state, index: i }
                    } else {
                        FsmError::Overlap {
                            state,
                            first: j,
                            second: i,
                        }
                    },
                );
            }
        }
        Ok(Fsm {
            inputs,
            outputs,
            states,
            reset,
            transitions,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn reset(&self) -> usize {
        self.reset
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// The transition taken from `state` on input row `input`, if specified.
    pub fn lookup(&self, state: usize, input: u32) -> Option<&Transition> {
        self.transitions
            .iter()
            .find(|t| t.current == state && t.input.contains_row(input))
    }
}

/// Parses the KISS2 subset: `.i`, `.o`, `.s`, `.p`, `.r`, optional `.ilb` and
/// `.ob` name lists, `.e`/`.end`, and lines `INPUTS CURRENT NEXT OUTPUTS`.
///
/// States are numbered by first mention; without `.r` the first mentioned
/// state is the reset state.
pub fn parse_kiss2(text: &str) -> Result<Fsm, FsmError> {
    let mut k: Option<usize> = None;
    let mut q: Option<usize> = None;
    let mut declared_s: Option<(usize, usize)> = None;
    let mut declared_p: Option<(usize, usize)> = None;
    let mut reset: Option<(usize, String)> = None;
    let mut ilb: Option<(usize, Vec<String>)> = None;
    let mut ob: Option<(usize, Vec<String>)> = None;
    let mut states: Vec<String> = Vec::new();
    let mut transitions: Vec<Transition> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();

    let count = |ln: usize, tok: Option<&str>, what: &str| -> Result<usize, FormatError> {
        tok.and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::new(ln, format!("`{what}` needs a count")))
    };

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('.') {
            let mut toks = directive.split_whitespace();
            match toks.next().unwrap_or("") {
                "i" => k = Some(count(ln, toks.next(), ".i")?),
                "o" => q = Some(count(ln, toks.next(), ".o")?),
                "s" => declared_s = Some((ln, count(ln, toks.next(), ".s")?)),
                "p" => declared_p = Some((ln, count(ln, toks.next(), ".p")?)),
                "r" => {
                    let name = toks
                        .next()
                        .ok_or_else(|| FormatError::new(ln, "`.r` needs a state name"))?;
                    reset = Some((ln, name.to_owned()));
                }
                "ilb" => ilb = Some((ln, toks.map(str::to_owned).collect())),
                "ob" => ob = Some((ln, toks.map(str::to_owned).collect())),
                "e" | "end" => break,
                other => {
                    return Err(
                        FormatError::new(ln, format!("unknown directive `.{other}`")).into(),
                    )
                }
            }
            continue;
        }

        let (Some(ni), Some(no)) = (k, q) else {
            return Err(FormatError::new(ln, "transition before `.i` and `.o`").into());
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let expected = (ni > 0) as usize + 2 + (no > 0) as usize;
        if toks.len() != expected {
            return Err(FormatError::new(
                ln,
                format!("expected {expected} fields, found {}", toks.len()),
            )
            .into());
        }
        let mut it = toks.into_iter();
        let input = if ni > 0 { it.next().unwrap() } else { "" };
        let current = it.next().unwrap();
        let next = it.next().unwrap();
        let outs = if no > 0 { it.next().unwrap() } else { "" };
        if input.chars().count() != ni {
            return Err(FormatError::new(
                ln,
                format!(
                    "input field has {} bits, expected {ni}",
                    input.chars().count()
                ),
            )
            .into());
        }
        if outs.chars().count() != no {
            return Err(FormatError::new(
                ln,
                format!(
                    "output field has {} bits, expected {no}",
                    outs.chars().count()
                ),
            )
            .into());
        }
        let lits: Vec<Literal> = input
            .chars()
            .map(|c| {
                Literal::from_char(c)
                    .ok_or_else(|| FormatError::new(ln, format!("illegal input character `{c}`")))
            })
            .collect::<Result<_, _>>()?;
        let outputs: Vec<bool> = outs
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(FormatError::new(
                    ln,
                    format!("illegal output character `{other}`"),
                )),
            })
            .collect::<Result<_, _>>()?;
        let mut intern = |name: &str| -> usize {
            states.iter().position(|s| s == name).unwrap_or_else(|| {
                states.push(name.to_owned());
                states.len() - 1
            })
        };
        let current = intern(current);
        let next = intern(next);
        transitions.push(Transition {
            input: Cube::from_literals(&lits),
            current,
            next,
            outputs,
        });
        lines.push(ln);
    }

    let (Some(ni), Some(no)) = (k, q) else {
        return Err(FormatError::new(0, "missing `.i` or `.o`").into());
    };
    if let Some((ln, s)) = declared_s {
        if s != states.len() {
            return Err(FormatError::new(
                ln,
                format!(".s declares {s} states but {} appear", states.len()),
            )
            .into());
        }
    }
    if let Some((ln, p)) = declared_p {
        if p != transitions.len() {
            return Err(FormatError::new(
                ln,
                format!(
                    ".p declares {p} transitions but {} appear",
                    transitions.len()
                ),
            )
            .into());
        }
    }
    let reset = match reset {
        Some((ln, name)) => states
            .iter()
            .position(|s| *s == name)
            .ok_or_else(|| FormatError::new(ln, format!("reset state `{name}` is not declared")))?,
        None => 0,
    };
    let names = |given: Option<(usize, Vec<String>)>, n: usize, prefix: &str| match given {
        Some((ln, v)) if v.len() != n => Err(FormatError::new(
            ln,
            format!("expected {n} names, found {}", v.len()),
        )),
        Some((_, v)) => Ok(v),
        None => Ok((0..n).map(|i| format!("{prefix}{i}")).collect()),
    };
    let inputs = names(ilb, ni, "x")?;
    let outputs = names(ob, no, "z")?;

    Fsm::new(inputs, outputs, states, reset, transitions).map_err(|e| match e {
        FsmError::Overlap {
            state,
            first,
            second,
        } => FsmError::Format(FormatError::new(
            lines[second],
            format!(
                "state `{state}`: input cube overlaps the transition on line {}",
                lines[first]
            ),
        )),
        FsmError::Duplicate { state, index } => FsmError::Format(FormatError::new(
            lines[index],
            format!("state `{state}`: duplicate transition"),
        )),
        other => other,
    })
}

/// Binary state assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateEncoding {
    bits: usize,
    names: Vec<String>,
    codes: Vec<u32>,
    reset: usize,
}

impl StateEncoding {
    /// Reset gets code 0; the other states get 1, 2, ... in declaration
    /// order. Width is `ceil(log2(states))`, so a single-state machine has
    /// no state bits.
    pub fn binary(fsm: &Fsm) -> StateEncoding {
        let s = fsm.states.len();
        let bits = (usize::BITS - (s - 1).leading_zeros()) as usize;
        let mut codes = vec![0u32; s];
        let mut next = 1;
        for (i, code) in codes.iter_mut().enumerate() {
            if i != fsm.reset {
                *code = next;
                next += 1;
            }
        }
        StateEncoding {
            bits,
            names: fsm.states.clone(),
            codes,
            reset: fsm.reset,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn code(&self, state: usize) -> u32 {
        self.codes[state]
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn reset(&self) -> usize {
        self.reset
    }

    pub fn state_of(&self, code: u32) -> Option<usize> {
        self.codes.iter().position(|&c| c == code)
    }

    /// `s0`..`s{b-1}`, most significant first.
    pub fn bit_names(&self) -> Vec<String> {
        (0..self.bits).map(|i| format!("s{i}")).collect()
    }

    /// Sidecar text read back by [`parse_encoding`].
    pub fn emit(&self, n_inputs: usize, n_outputs: usize) -> String {
        let mut out = format!(
            "PLAENC 1\nBITS {}\nINPUTS {n_inputs}\nOUTPUTS {n_outputs}\n",
            self.bits
        );
        for (name, &code) in self.names.iter().zip(&self.codes) {
            out.push_str(&format!("STATE {name} {}\n", code_string(code, self.bits)));
        }
        out.push_str(&format!("RESET {}\nEND\n", self.names[self.reset]));
        out
    }
}

fn code_string(code: u32, bits: usize) -> String {
    if bits == 0 {
        "-".to_owned()
    } else {
        row_to_string(code, bits)
    }
}

/// Parsed encoding sidecar: encoding plus machine input/output counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingSidecar {
    pub encoding: StateEncoding,
    pub n_inputs: usize,
    pub n_outputs: usize,
}

pub fn parse_encoding(text: &str) -> Result<EncodingSidecar, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| FormatError::new(0, format!("truncated sidecar: expected {what}")))
    };
    let (ln, l) = next("header")?;
    if l != "PLAENC 1" {
        return Err(FormatError::new(ln, "expected `PLAENC 1`"));
    }
    let mut field = |key: &str| -> Result<usize, FormatError> {
        let (ln, l) = next(key)?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            [k, v] if k == key => v
                .parse()
                .map_err(|_| FormatError::new(ln, format!("bad {key} value `{v}`"))),
            _ => Err(FormatError::new(ln, format!("expected `{key} <count>`"))),
        }
    };
    let bits = field("BITS")?;
    let n_inputs = field("INPUTS")?;
    let n_outputs = field("OUTPUTS")?;
    if bits > 24 {
        return Err(FormatError::new(
            0,
            format!("{bits} state bits is too many"),
        ));
    }
    let mut names = Vec::new();
    let mut codes = Vec::new();
    let reset = loop {
        let (ln, l) = next("STATE or RESET")?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["STATE", name, code] => {
                let c = if bits == 0 && code == "-" {
                    0
                } else if code.len() == bits && code.chars().all(|c| c == '0' || c == '1') {
                    u32::from_str_radix(code, 2).unwrap_or(0)
                } else {
                    return Err(FormatError::new(ln, format!("bad state code `{code}`")));
                };
                if names.iter().any(|n| n == name) || codes.contains(&c) {
                    return Err(FormatError::new(
                        ln,
                        format!("duplicate state or code `{name}`"),
                    ));
                }
                names.push(name.to_owned());
                codes.push(c);
            }
            ["RESET", name] => {
                let r = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| FormatError::new(ln, format!("unknown reset state `{name}`")))?;
                if codes[r] != 0 {
                    return Err(FormatError::new(ln, "reset state must have code 0"));
                }
                break r;
            }
            _ => return Err(FormatError::new(ln, format!("unexpected line `{l}`"))),
        }
    };
    let (ln, l) = next("END")?;
    if l != "END" {
        return Err(FormatError::new(ln, "expected `END`"));
    }
    Ok(EncodingSidecar {
        encoding: StateEncoding {
            bits,
            names,
            codes,
            reset,
        },
        n_inputs,
        n_outputs,
    })
}

/// `a` minus `b` as disjoint cubes.
fn sharp(a: Cube, b: Cube) -> Vec<Cube> {
    if !a.intersects(&b) {
        return vec![a];
    }
    let mut rest = a;
    let mut out = Vec::new();
    for j in 0..a.width() {
        let lb = b.literal(j);
        if lb == Literal::Absent || rest.literal(j) != Literal::Absent {
            continue;
        }
        let flip = if lb == Literal::Pos {
            Literal::Neg
        } else {
            Literal::Pos
        };
        out.push(rest.with_literal(j, flip));
        rest = rest.with_literal(j, lb);
    }
    out
}

/// Cubes of a state's input space with no explicit transition.
fn unspecified_inputs(fsm: &Fsm, state: usize) -> Vec<Cube> {
    let mut free = vec![Cube::universal(fsm.inputs.len())];
    for t in fsm.transitions.iter().filter(|t| t.current == state) {
        free = free.into_iter().flat_map(|c| sharp(c, t.input)).collect();
    }
    free
}

/// Next-state and output covers of an encoded machine, plus the rows whose
/// state bits match no state code (don't-cares).
///
/// Variables are the state bits `s0..` followed by the machine inputs;
/// outputs are `D0..` (next-state bits) followed by the machine outputs.
/// Input combinations without a transition hold the state with all outputs
/// 0, or are an error when `strict` is set.
pub fn fsm_to_covers(
    fsm: &Fsm,
    encoding: &StateEncoding,
    strict: bool,
) -> Result<(MultiOutputCover, Vec<u32>), FsmError> {
    let b = encoding.bits;
    let k = fsm.inputs.len();
    let q = fsm.outputs.len();
    let order = VarOrder::new(
        encoding
            .bit_names()
            .into_iter()
            .chain(fsm.inputs.iter().cloned()),
    )?;
    let out_names: Vec<String> = (0..b)
        .map(|i| format!("D{i}"))
        .chain(fsm.outputs.iter().cloned())
        .collect();
    VarOrder::new(out_names.iter().cloned())?;
    if b + k > crate::logic::MAX_VARS {
        return Err(FsmError::Invalid(format!(
            "{} state bits plus {k} inputs exceeds {}",
            b,
            crate::logic::MAX_VARS
        )));
    }

    let bit_set = |code: u32, j: usize| (code >> (b - 1 - j)) & 1 == 1;
    let mut covers: Vec<Vec<Cube>> = vec![Vec::new(); b + q];
    for t in &fsm.transitions {
        let code = encoding.code(t.current);
        let cube = Cube::minterm(b, code).concat(&t.input);
        let next = encoding.code(t.next);
        for (j, cover) in covers.iter_mut().enumerate().take(b) {
            if bit_set(next, j) {
                cover.push(cube);
            }
        }
        for (o, &bit) in t.outputs.iter().enumerate() {
            if bit {
                covers[b + o].push(cube);
            }
        }
    }
    for s in 0..fsm.states.len() {
        let free = unspecified_inputs(fsm, s);
        if strict {
            if let Some(c) = free.first() {
                return Err(FsmError::Unspecified {
                    state: fsm.states[s].clone(),
                    input: c.to_string(),
                });
            }
        }
        let code = encoding.code(s);
        for c in free {
            let cube = Cube::minterm(b, code).concat(&c);
            for (j, cover) in covers.iter_mut().enumerate().take(b) {
                if bit_set(code, j) {
                    cover.push(cube);
                }
            }
        }
    }

    let named: Vec<(String, Cover)> = out_names
        .into_iter()
        .zip(covers)
        .map(|(name, cubes)| Cover::new(order.clone(), cubes).map(|c| (name, c)))
        .collect::<Result<_, _>>()
        .map_err(FitError::from)?;
    let netlist = if named.is_empty() {
        MultiOutputCover::new(order, vec![], vec![])?
    } else {
        share_terms(&named)?
    };

    let used: std::collections::HashSet<u32> = encoding.codes.iter().copied().collect();
    let dc: Vec<u32> = (0..1u32 << b)
        .filter(|c| !used.contains(c))
        .flat_map(|c| (0..1u32 << k).map(move |x| (c << k) | x))
        .collect();
    Ok((netlist, dc))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SynthOptions {
    pub minimize: bool,
    /// Reject unspecified (state, input) combinations instead of holding.
    pub strict: bool,
}

/// A controller PLA: inputs are `state bits ++ machine inputs`, outputs
/// are `next-state bits ++ machine outputs`. Any further device pins are
/// unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControllerImage {
    state: PlaState,
    encoding: StateEncoding,
    n_inputs: usize,
    n_outputs: usize,
}

impl ControllerImage {
    /// Reassembles an image from a device and its encoding sidecar.
    pub fn new(
        state: PlaState,
        encoding: StateEncoding,
        n_inputs: usize,
        n_outputs: usize,
    ) -> Result<ControllerImage, FsmError> {
        let pf = state.profile();
        let b = encoding.bits;
        if b + n_inputs > pf.n_inputs() || b + n_outputs > pf.n_outputs() {
            return Err(FsmError::Invalid(format!(
                "device {pf} is too small for {b} state bits, {n_inputs} inputs and {n_outputs} outputs"
            )));
        }
        Ok(ControllerImage {
            state,
            encoding,
            n_inputs,
            n_outputs,
        })
    }

    pub fn device(&self) -> &PlaState {
        &self.state
    }

    pub fn encoding(&self) -> &StateEncoding {
        &self.encoding
    }

    pub fn profile(&self) -> &PlaProfile {
        self.state.profile()
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn sidecar(&self) -> String {
        self.encoding.emit(self.n_inputs, self.n_outputs)
    }
}

/// Encodes, builds covers, optionally minimizes each one against the
/// unused-code don't-cares, and fits the result.
pub fn synthesize_controller(
    fsm: &Fsm,
    profile: &PlaProfile,
    options: SynthOptions,
) -> Result<(ControllerImage, FitReport), FsmError> {
    let encoding = StateEncoding::binary(fsm);
    let (netlist, dc) = fsm_to_covers(fsm, &encoding, options.strict)?;
    let netlist = if options.minimize {
        let covers: Vec<(String, Cover)> = (0..netlist.outputs().len())
            .map(|o| {
                let spec = MinimizeSpec::from_cover(&netlist.output_cover(o), &dc)?;
                Ok((
                    netlist.outputs()[o].name.clone(),
                    minimize::minimize(&spec)?,
                ))
            })
            .collect::<Result<_, MinimizeError>>()?;
        if covers.is_empty() {
            netlist
        } else {
            share_terms(&covers)?
        }
    } else {
        netlist
    };
    let (state, report) = fit(&netlist, profile)?;
    let image = ControllerImage::new(state, encoding, fsm.inputs.len(), fsm.outputs.len())?;
    Ok((image, report))
}

/// One simulated clock cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub cycle: usize,
    /// State register contents during the cycle.
    pub state: u32,
    pub outputs: Vec<bool>,
}

/// Runs the controller from the reset code: each cycle evaluates the PLA
/// at `(state ++ input)`, records the outputs, then latches the next-state
/// bits.
pub fn simulate_controller(
    image: &ControllerImage,
    inputs: &[Vec<bool>],
) -> Result<Vec<TraceStep>, FsmError> {
    let b = image.encoding.bits;
    let k = image.n_inputs;
    let q = image.n_outputs;
    let pad = image.profile().n_inputs() - b - k;
    let ev = image.state.evaluator();
    let mut reg = image.encoding.code(image.encoding.reset);
    let mut trace = Vec::with_capacity(inputs.len());
    for (cycle, vector) in inputs.iter().enumerate() {
        if vector.len() != k {
            return Err(FsmError::WidthMismatch {
                expected: k,
                got: vector.len(),
            });
        }
        let row = ((((reg as u64) << k) | bits_to_row(vector) as u64) << pad) as u32;
        let outputs = (b..b + q).map(|o| ev.output(o, row)).collect();
        trace.push(TraceStep {
            cycle,
            state: reg,
            outputs,
        });
        reg = (0..b).fold(0, |acc, o| (acc << 1) | ev.output(o, row) as u32);
    }
    Ok(trace)
}

/// `cycle state_code outputs`, one line per cycle.
pub fn format_trace(trace: &[TraceStep], state_bits: usize) -> String {
    trace
        .iter()
        .map(|s| {
            let outs: String = s
                .outputs
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            format!(
                "{} {} {}\n",
                s.cycle,
                code_string(s.state, state_bits),
                outs
            )
        })
        .collect()
}

impl fmt::Display for Fsm {
    /// KISS2 text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, ".i {}", self.inputs.len())?;
        writeln!(f, ".o {}", self.outputs.len())?;
        writeln!(f, ".ilb {}", self.inputs.join(" "))?;
        writeln!(f, ".ob {}", self.outputs.join(" "))?;
        writeln!(f, ".s {}", self.states.len())?;
        writeln!(f, ".p {}", self.transitions.len())?;
        writeln!(f, ".r {}", self.states[self.reset])?;
        for t in &self.transitions {
            let outs: String = t
                .outputs
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            let fields = [
                t.input.to_string(),
                self.states[t.current].clone(),
                self.states[t.next].clone(),
                outs,
            ];
            let fields: Vec<&str> = fields
                .iter()
                .map(String::as_str)
                .filter(|s| !s.is_empty())
                .collect();
            writeln!(f, "{}", fields.join(" "))?;
        }
        writeln!(f, ".e")
    }
}

/// Index of each state's code, for callers mapping traces back to names.
pub fn code_to_state(encoding: &StateEncoding) -> HashMap<u32, String> {
    encoding
        .codes
        .iter()
        .zip(&encoding.names)
        .map(|(&c, n)| (c, n.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression_with;
    use crate::expr::IdentMode;
    use crate::logic::{equivalent, Cover};

    const TOGGLE: &str = ".i 1\n.o 1\n.ilb en\n.ob q\n1 S0 S1 1\n1 S1 S0 0\n.e\n";

    fn prof(s: &str) -> PlaProfile {
        s.parse().unwrap()
    }

    #[test]
    fn toggle_parses() {
        let fsm = parse_kiss2(TOGGLE).unwrap();
        assert_eq!(fsm.states(), ["S0", "S1"]);
        assert_eq!(fsm.inputs(), ["en"]);
        assert_eq!(fsm.outputs(), ["q"]);
        assert_eq!(fsm.reset(), 0);
        assert_eq!(fsm.transitions().len(), 2);
    }

    #[test]
    fn reset_directive() {
        let fsm = parse_kiss2(&TOGGLE.replace(".ilb en", ".ilb en\n.r S1")).unwrap();
        assert_eq!(fsm.reset(), 1);
        let enc = StateEncoding::binary(&fsm);
        assert_eq!(enc.code(1), 0);
        assert_eq!(enc.code(0), 1);
    }

    #[test]
    fn overlapping_cubes_rejected() {
        let text = ".i 2\n.o 1\n1- S0 A 0\n-1 S0 B 0\n";
        let err = parse_kiss2(text).unwrap_err();
        assert!(matches!(&err, FsmError::Format(f) if f.line == 4), "{err}");
        let dup = ".i 1\n.o 1\n1 S0 S1 0\n1 S0 S1 0\n";
        let err = parse_kiss2(dup).unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        // Same cube in different states is fine.
        assert!(parse_kiss2(".i 1\n.o 1\n1 S0 S1 0\n1 S1 S0 0\n").is_ok());
    }

    #[test]
    fn kiss2_errors() {
        let cases = [
            (".i 1\n.o 1\n11 S0 S1 0\n", 3, "input field"),
            (".i 1\n.o 1\n1 S0 S1 00\n", 3, "output field"),
            (".i 1\n.o 1\n1 S0 S1\n", 3, "fields"),
            (".i 1\n.o 1\n1 S0 S1 -\n", 3, "illegal output"),
            (".i 1\n.o 1\nx S0 S1 0\n", 3, "illegal input"),
            ("1 S0 S1 0\n", 1, "before"),
            (".i 1\n.o 1\n.s 3\n1 S0 S1 0\n", 3, ".s declares"),
            (".i 1\n.o 1\n.p 2\n1 S0 S1 0\n", 3, ".p declares"),
            (".i 1\n.o 1\n.r S9\n1 S0 S1 0\n", 3, "reset state"),
            (".i 1\n.o 1\n.q\n", 3, "unknown directive"),
        ];
        for (text, line, needle) in cases {
            match parse_kiss2(text) {
                Err(FsmError::Format(f)) => {
                    assert_eq!(f.line, line, "{f}");
                    assert!(f.message.contains(needle), "{f} / {needle}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_kiss2("").is_err());
    }

    #[test]
    fn zero_input_machine() {
        let fsm = parse_kiss2(".i 0\n.o 1\nA B 1\nB A 0\n").unwrap();
        assert_eq!(fsm.inputs().len(), 0);
        let (image, _) =
            synthesize_controller(&fsm, &prof("n1p4m2"), SynthOptions::default()).unwrap();
        let trace = simulate_controller(&image, &[vec![], vec![], vec![]]).unwrap();
        let outs: Vec<bool> = trace.iter().map(|s| s.outputs[0]).collect();
        assert_eq!(outs, [true, false, true]);
    }

    #[test]
    fn toggle_next_state_cover() {
        let fsm = parse_kiss2(TOGGLE).unwrap();
        let enc = StateEncoding::binary(&fsm);
        assert_eq!(enc.bits(), 1);
        let (netlist, dc) = fsm_to_covers(&fsm, &enc, false).unwrap();
        assert!(dc.is_empty());
        assert_eq!(netlist.order().names(), ["s0", "en"]);
        assert_eq!(netlist.output_names(), ["D0", "q"]);
        let d0 = netlist.output_cover(0);
        let want = parse_expression_with("s0' * en + s0 * en'", IdentMode::MultiLetter).unwrap();
        assert!(equivalent(&d0, &want, netlist.order()).unwrap());
        assert!(fsm_to_covers(&fsm, &enc, true).is_err());
    }

    #[test]
    fn all_to_reset_has_empty_next_state() {
        let fsm = parse_kiss2(".i 1\n.o 1\n- A A 0\n- B A 1\n- C A 0\n").unwrap();
        let enc = StateEncoding::binary(&fsm);
        assert_eq!(enc.bits(), 2);
        let (netlist, dc) = fsm_to_covers(&fsm, &enc, true).unwrap();
        assert!(netlist.outputs()[0].terms.is_empty());
        assert!(netlist.outputs()[1].terms.is_empty());
        // Code 11 is unused: rows 110 and 111 are don't-cares.
        assert_eq!(dc, [0b110, 0b111]);
    }

    #[test]
    fn sharp_is_disjoint_difference() {
        let a = Cube::universal(3);
        let b = Cube::parse("1-0").unwrap();
        let pieces = sharp(a, b);
        for row in 0..8u32 {
            let hits = pieces.iter().filter(|c| c.contains_row(row)).count();
            assert_eq!(hits, usize::from(!b.contains_row(row)), "row {row}");
        }
        assert_eq!(sharp(b, a), vec![]);
        let c = Cube::parse("0--").unwrap();
        assert_eq!(sharp(c, b), vec![c]);
    }

    #[test]
    fn toggle_fits_and_simulates() {
        let fsm = parse_kiss2(TOGGLE).unwrap();
        let (image, report) =
            synthesize_controller(&fsm, &prof("n2p4m2"), SynthOptions::default()).unwrap();
        assert_eq!(report.terms_used, 2);
        let trace = simulate_controller(&image, &[vec![true], vec![true], vec![true]]).unwrap();
        let states: Vec<u32> = trace.iter().map(|s| s.state).collect();
        let outs: Vec<bool> = trace.iter().map(|s| s.outputs[0]).collect();
        assert_eq!(states, [0, 1, 0]);
        assert_eq!(outs, [true, false, true]);
        assert_eq!(format_trace(&trace, 1), "0 0 1\n1 1 0\n2 0 1\n");

        // Holding with enable low.
        let trace = simulate_controller(&image, &vec![vec![false]; 4]).unwrap();
        assert!(trace.iter().all(|s| s.state == 0 && !s.outputs[0]));
        assert!(simulate_controller(&image, &[]).unwrap().is_empty());
        assert!(matches!(
            simulate_controller(&image, &[vec![true, false]]),
            Err(FsmError::WidthMismatch {
                expected: 1,
                got: 2
            })
        ));
    }

    #[test]
    fn capacity_on_inputs() {
        let fsm = parse_kiss2(".i 2\n.o 1\n-- A B 0\n-- B C 1\n-- C A 0\n").unwrap();
        let err =
            synthesize_controller(&fsm, &prof("n3p8m3"), SynthOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            FsmError::Fit(FitError::Capacity {
                needed: 4,
                available: 3,
                axis: crate::fit::CapacityAxis::Inputs
            })
        ));
    }

    #[test]
    fn minimize_uses_dont_cares() {
        let fsm = parse_kiss2(".i 1\n.o 1\n1 A B 0\n0 A A 0\n1 B C 0\n0 B B 0\n- C A 1\n").unwrap();
        let big = prof("n3p16m3");
        let (plain, r0) = synthesize_controller(&fsm, &big, SynthOptions::default()).unwrap();
        let (min, r1) = synthesize_controller(
            &fsm,
            &big,
            SynthOptions {
                minimize: true,
                strict: true,
            },
        )
        .unwrap();
        assert!(r1.terms_used <= r0.terms_used);
        let seq: Vec<Vec<bool>> = [1, 1, 0, 1, 1, 1, 0, 0, 1]
            .iter()
            .map(|&b| vec![b == 1])
            .collect();
        assert_eq!(
            simulate_controller(&plain, &seq).unwrap(),
            simulate_controller(&min, &seq).unwrap()
        );
    }

    #[test]
    fn larger_device_pads_pins() {
        let fsm = parse_kiss2(TOGGLE).unwrap();
        let (image, _) =
            synthesize_controller(&fsm, &prof("n5p8m4"), SynthOptions::default()).unwrap();
        let trace = simulate_controller(&image, &[vec![true], vec![false], vec![true]]).unwrap();
        let outs: Vec<bool> = trace.iter().map(|s| s.outputs[0]).collect();
        assert_eq!(outs, [true, false, false]);
    }

    #[test]
    fn sidecar_round_trip() {
        let fsm = parse_kiss2(".i 1\n.o 2\n.r B\n- A B 00\n- B C 01\n- C A 10\n").unwrap();
        let (image, _) =
            synthesize_controller(&fsm, &prof("n3p8m4"), SynthOptions::default()).unwrap();
        let text = image.sidecar();
        assert_eq!(
            text,
            "PLAENC 1\nBITS 2\nINPUTS 1\nOUTPUTS 2\nSTATE A 01\nSTATE B 00\nSTATE C 10\nRESET B\nEND\n"
        );
        let side = parse_encoding(&text).unwrap();
        assert_eq!(&side.encoding, image.encoding());
        let rebuilt = ControllerImage::new(
            image.device().clone(),
            side.encoding,
            side.n_inputs,
            side.n_outputs,
        )
        .unwrap();
        assert_eq!(rebuilt, image);
        assert!(parse_encoding(&text.replace("RESET B", "RESET A")).is_err());
        assert!(parse_encoding(&text.replace("STATE C 10", "STATE C 01")).is_err());
        assert!(parse_encoding("PLAENC 2\n").is_err());
        assert_eq!(code_to_state(image.encoding())[&0], "B");
    }

    #[test]
    fn kiss2_display_round_trips() {
        let fsm = parse_kiss2(".i 2\n.o 1\n.r B\n1- A B 1\n01 A A 0\n-- B A 0\n").unwrap();
        assert_eq!(parse_kiss2(&fsm.to_string()).unwrap(), fsm);
    }

    #[test]
    fn single_state_machine_has_no_state_bits() {
        let fsm = parse_kiss2(".i 1\n.o 1\n1 A A 1\n0 A A 0\n").unwrap();
        let enc = StateEncoding::binary(&fsm);
        assert_eq!(enc.bits(), 0);
        let (image, _) =
            synthesize_controller(&fsm, &prof("n1p2m1"), SynthOptions::default()).unwrap();
        let trace = simulate_controller(&image, &[vec![true], vec![false]]).unwrap();
        assert_eq!(format_trace(&trace, 0), "0 - 1\n1 - 0\n");
        let cover = Cover::new(VarOrder::new(["x0"]).unwrap(), vec![]).unwrap();
        assert!(cover.is_empty());
    }
}
