//! Berkeley `.pla` subset (type `f` only).

use std::collections::HashMap;

use crate::expr::VarOrder;
use crate::logic::{Cube, Literal};
use crate::minimize::{MultiOutputCover, OutputTerms};

use super::FormatError;

/// A parsed `.pla` file plus non-fatal diagnostics.
#[derive(Clone, Debug)]
pub struct BerkeleyPla {
    pub cover: MultiOutputCover,
    pub warnings: Vec<String>,
}

/// Writes `.i`, `.o`, `.p`, `.ilb`, `.ob`, one line per pool cube in pool
/// order, then `.e`.
pub fn write_berkeley_pla(cover: &MultiOutputCover) -> String {
    let n = cover.order().len();
    let m = cover.outputs().len();
    let mut out = format!(".i {n}\n.o {m}\n.p {}\n", cover.pool().len());
    if n > 0 {
        out.push_str(&format!(".ilb {}\n", cover.order()));
    }
    if m > 0 {
        out.push_str(&format!(".ob {}\n", cover.output_names().join(" ")));
    }
    for (t, cube) in cover.pool().iter().enumerate() {
        let outs: String = cover
            .outputs()
            .iter()
            .map(|o| if o.terms.contains(&t) { '1' } else { '0' })
            .collect();
        out.push_str(&format!("{cube} {outs}\n"));
    }
    out.push_str(".e\n");
    out
}

/// Reads a type-`f` `.pla` file.
///
/// Input characters `0`, `1`, `-` map to complemented, true and absent
/// literals; output characters must be `0` or `1`. Repeated input cubes are
/// merged into one pool entry. A `.p` count that disagrees with the number
/// of cube lines is a warning, or an error when `strict` is set.
pub fn read_berkeley_pla(text: &str, strict: bool) -> Result<BerkeleyPla, FormatError> {
    let mut n_in: Option<usize> = None;
    let mut n_out: Option<usize> = None;
    let mut declared_p: Option<(usize, usize)> = None;
    let mut ilb: Option<Vec<String>> = None;
    let mut ob: Option<Vec<String>> = None;
    let mut pool: Vec<Cube> = Vec::new();
    let mut index: HashMap<Cube, usize> = HashMap::new();
    let mut selections: Vec<Vec<usize>> = Vec::new();
    let mut cube_lines = 0usize;
    let mut warnings = Vec::new();

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
            let key = toks.next().unwrap_or("");
            match key {
                "i" => {
                    if !pool.is_empty() || cube_lines > 0 {
                        return Err(FormatError::new(ln, "`.i` after cube lines"));
                    }
                    let v = count(ln, toks.next(), ".i")?;
                    if v > Cube::MAX_WIDTH {
                        return Err(FormatError::new(ln, format!("{v} inputs is too many")));
                    }
                    n_in = Some(v);
                }
                "o" => {
                    if cube_lines > 0 {
                        return Err(FormatError::new(ln, "`.o` after cube lines"));
                    }
                    let v = count(ln, toks.next(), ".o")?;
                    n_out = Some(v);
                    selections = vec![Vec::new(); v];
                }
                "p" => declared_p = Some((ln, count(ln, toks.next(), ".p")?)),
                "ilb" => ilb = Some(toks.map(str::to_owned).collect()),
                "ob" => ob = Some(toks.map(str::to_owned).collect()),
                "type" => match toks.next() {
                    Some("f") => {}
                    Some(t) => {
                        return Err(FormatError::new(
                            ln,
                            format!("unsupported `.type {t}`: only type f covers are accepted"),
                        ))
                    }
                    None => return Err(FormatError::new(ln, "`.type` needs a value")),
                },
                "e" | "end" => break,
                other => {
                    return Err(FormatError::new(
                        ln,
                        format!("unknown directive `.{other}`"),
                    ))
                }
            }
            continue;
        }

        let (Some(ni), Some(no)) = (n_in, n_out) else {
            return Err(FormatError::new(ln, "cube line before `.i` and `.o`"));
        };
        let joined: String = line.split_whitespace().collect();
        if joined.chars().count() != ni + no {
            return Err(FormatError::new(
                ln,
                format!(
                    "wrong line width: {} characters, expected {ni} inputs + {no} outputs",
                    joined.chars().count()
                ),
            ));
        }
        let (ins, outs) = joined.split_at(ni);
        let mut lits = Vec::with_capacity(ni);
        for c in ins.chars() {
            lits.push(
                Literal::from_char(c).ok_or_else(|| {
                    FormatError::new(ln, format!("illegal input character `{c}`"))
                })?,
            );
        }
        let cube = Cube::from_literals(&lits);
        let t = *index.entry(cube).or_insert_with(|| {
            pool.push(cube);
            pool.len() - 1
        });
        for (o, c) in outs.chars().enumerate() {
            match c {
                '1' => {
                    if !selections[o].contains(&t) {
                        selections[o].push(t);
                    }
                }
                '0' => {}
                '-' | '~' | '2' => {
                    return Err(FormatError::new(
                        ln,
                        format!("don't-care output `{c}` is not supported (type fd); pass don't-cares to the minimizer instead"),
                    ))
                }
                other => {
                    return Err(FormatError::new(ln, format!("illegal output character `{other}`")))
                }
            }
        }
        cube_lines += 1;
    }

    let (Some(ni), Some(no)) = (n_in, n_out) else {
        return Err(FormatError::new(0, "missing `.i` or `.o`"));
    };
    if let Some((ln, p)) = declared_p {
        if p != cube_lines {
            let msg = format!(".p declares {p} cubes but {cube_lines} were read");
            if strict {
                return Err(FormatError::new(ln, msg));
            }
            warnings.push(format!("line {ln}: {msg}"));
        }
    }
    let order = match ilb {
        Some(names) if names.len() == ni => {
            VarOrder::new(names).map_err(|e| FormatError::new(0, format!(".ilb: {e}")))?
        }
        Some(names) => {
            return Err(FormatError::new(
                0,
                format!(".ilb has {} names, expected {ni}", names.len()),
            ))
        }
        None => VarOrder::default_names(ni),
    };
    let out_names = match ob {
        Some(names) if names.len() == no => names,
        Some(names) => {
            return Err(FormatError::new(
                0,
                format!(".ob has {} names, expected {no}", names.len()),
            ))
        }
        None => (0..no).map(|o| format!("F{o}")).collect(),
    };
    let outputs = out_names
        .into_iter()
        .zip(selections)
        .map(|(name, terms)| OutputTerms { name, terms })
        .collect();
    let cover = MultiOutputCover::new(order, pool, outputs)
        .map_err(|e| FormatError::new(0, e.to_string()))?;
    Ok(BerkeleyPla { cover, warnings })
}
