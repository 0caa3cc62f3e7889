// Fuse map text format:
//
//   PLAFUSE 1
//   TECH fuse|antifuse XOR 0|1
//   DIM <n> <p> <m>
//   [ILB <n names>]
//   [OB <m names>]
//   AND
//   <p lines of 2n bits: in0, in0', in1, in1', ...>
//   OR
//   <m lines of p bits>
//   [POL <m bits>]          present iff XOR 1
//   END
//
// A stored 1 is a connected crosspoint: an intact fuse, or a programmed
// antifuse.

use crate::device::{PlaProfile, PlaState, SwitchTech};

use super::FormatError;

fn bits(v: impl Iterator<Item = bool>) -> String {
    v.map(|b| if b { '1' } else { '0' }).collect()
}

pub fn emit_fusemap(state: &PlaState) -> String {
    let pf = state.profile();
    let (n, p, m) = (pf.n_inputs(), pf.n_terms(), pf.n_outputs());
    let mut out = String::new();
    out.push_str("PLAFUSE 1\n");
    out.push_str(&format!(
        "TECH {} XOR {}\n",
        pf.tech().as_str(),
        pf.has_output_xor() as u8
    ));
    out.push_str(&format!("DIM {n} {p} {m}\n"));
    if let Some(names) = state.input_names() {
        out.push_str(&format!("ILB {}\n", names.join(" ")));
    }
    if let Some(names) = state.output_names() {
        out.push_str(&format!("OB {}\n", names.join(" ")));
    }
    out.push_str("AND\n");
    for r in 0..p {
        out.push_str(&bits((0..2 * n).map(|c| state.and_bit(r, c))));
        out.push('\n');
    }
    out.push_str("OR\n");
    for o in 0..m {
        out.push_str(&bits((0..p).map(|r| state.or_bit(o, r))));
        out.push('\n');
    }
    if pf.has_output_xor() {
        out.push_str(&format!("POL {}\n", bits(state.polarity().iter().copied())));
    }
    out.push_str("END\n");
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l.strip_suffix('\r').unwrap_or(l)))
            }
            None => Err(FormatError::new(
                self.last + 1,
                format!("truncated document: expected {what}"),
            )),
        }
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner
            .peek()
            .and_then(|(_, l)| l.split_whitespace().next())
    }
}

fn parse_bits(line: usize, s: &str, width: usize, what: &str) -> Result<Vec<bool>, FormatError> {
    if s.len() != width {
        return Err(FormatError::new(
            line,
            format!("{what} has {} columns, expected {width}", s.len()),
        ));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(FormatError::new(
                line,
                format!("illegal character `{other}`"),
            )),
        })
        .collect()
}

fn expect_exact(lines: &mut Lines<'_>, keyword: &str) -> Result<(), FormatError> {
    let (ln, l) = lines.next(keyword)?;
    if l.trim() != keyword {
        return Err(FormatError::new(
            ln,
            format!("expected `{keyword}`, found `{l}`"),
        ));
    }
    Ok(())
}

pub fn parse_fusemap(text: &str) -> Result<PlaState, FormatError> {
    let mut lines = Lines::new(text);

    let (ln, l) = lines.next("header")?;
    if l.trim() != "PLAFUSE 1" {
        return Err(FormatError::new(
            ln,
            "malformed header: expected `PLAFUSE 1`",
        ));
    }

    let (ln, l) = lines.next("TECH line")?;
    let (tech, xor) = match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["TECH", tech, "XOR", xor] => {
            let tech = match tech {
                "fuse" => SwitchTech::Fuse,
                "antifuse" => SwitchTech::Antifuse,
                other => {
                    return Err(FormatError::new(
                        ln,
                        format!("unknown technology `{other}`"),
                    ))
                }
            };
            let xor = match xor {
                "0" => false,
                "1" => true,
                other => {
                    return Err(FormatError::new(
                        ln,
                        format!("XOR must be 0 or 1, got `{other}`"),
                    ))
                }
            };
            (tech, xor)
        }
        _ => {
            return Err(FormatError::new(
                ln,
                "malformed header: expected `TECH <tech> XOR <0|1>`",
            ))
        }
    };

    let (ln, l) = lines.next("DIM line")?;
    let dims: Vec<usize> = match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["DIM", n, p, m] => [n, p, m]
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| FormatError::new(ln, format!("bad dimension `{t}`")))
            })
            .collect::<Result<_, _>>()?,
        _ => {
            return Err(FormatError::new(
                ln,
                "malformed header: expected `DIM <n> <p> <m>`",
            ))
        }
    };
    let (n, p, m) = (dims[0], dims[1], dims[2]);
    let profile =
        PlaProfile::new(n, p, m, tech, xor).map_err(|e| FormatError::new(ln, e.to_string()))?;

    let mut input_names = None;
    let mut output_names = None;
    if lines.peek_keyword() == Some("ILB") {
        let (ln, l) = lines.next("ILB")?;
        let names: Vec<String> = l.split_whitespace().skip(1).map(str::to_owned).collect();
        if names.len() != n {
            return Err(FormatError::new(
                ln,
                format!(
                    "dimension mismatch: ILB has {} names, expected {n}",
                    names.len()
                ),
            ));
        }
        input_names = Some(names);
    }
    if lines.peek_keyword() == Some("OB") {
        let (ln, l) = lines.next("OB")?;
        let names: Vec<String> = l.split_whitespace().skip(1).map(str::to_owned).collect();
        if names.len() != m {
            return Err(FormatError::new(
                ln,
                format!(
                    "dimension mismatch: OB has {} names, expected {m}",
                    names.len()
                ),
            ));
        }
        output_names = Some(names);
    }

    expect_exact(&mut lines, "AND")?;
    let mut and_plane = Vec::with_capacity(p * 2 * n);
    for _ in 0..p {
        let (ln, l) = lines.next("AND row")?;
        and_plane.extend(parse_bits(ln, l.trim(), 2 * n, "AND row")?);
    }
    expect_exact(&mut lines, "OR")?;
    let mut or_plane = Vec::with_capacity(m * p);
    for _ in 0..m {
        let (ln, l) = lines.next("OR row")?;
        or_plane.extend(parse_bits(ln, l.trim(), p, "OR row")?);
    }
    let mut polarity = vec![false; m];
    if xor {
        let (ln, l) = lines.next("POL line")?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["POL", bits] => polarity = parse_bits(ln, bits, m, "POL line")?,
            _ => return Err(FormatError::new(ln, "expected `POL <bits>`")),
        }
    }
    expect_exact(&mut lines, "END")?;
    if let Some((i, l)) = lines.inner.find(|(_, l)| !l.trim().is_empty()) {
        return Err(FormatError::new(
            i + 1,
            format!("unexpected content after END: `{l}`"),
        ));
    }

    let state = PlaState::from_parts(profile, and_plane, or_plane, polarity)
        .map_err(|e| FormatError::new(0, e.to_string()))?;
    state
        .with_names(input_names, output_names)
        .map_err(|e| FormatError::new(0, e.to_string()))
}
