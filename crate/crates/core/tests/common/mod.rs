//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the library's algorithms; everything is brute force.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cube as a string over {0,1,-}, variable 0 first.
pub fn cube_contains(cube: &str, row: u32, n: usize) -> bool {
    cube.chars().enumerate().all(|(j, c)| {
        let bit = (row >> (n - 1 - j)) & 1 == 1;
        match c {
            '-' => true,
            '1' => bit,
            '0' => !bit,
            _ => panic!("bad cube char {c}"),
        }
    })
}

pub fn cube_rows(cube: &str, n: usize) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|&r| cube_contains(cube, r, n))
        .collect()
}

/// Every cube over `n` variables (3^n of them).
pub fn all_cubes(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| ['0', '1', '-'].map(|c| format!("{p}{c}")))
            .collect();
    }
    out
}

/// Primes by definition: implicants of ON ∪ DC not strictly inside another
/// implicant.
pub fn brute_primes(n: usize, on: &[u32], dc: &[u32]) -> Vec<String> {
    let allowed: HashSet<u32> = on.iter().chain(dc).copied().collect();
    let implicants: Vec<String> = all_cubes(n)
        .into_iter()
        .filter(|c| cube_rows(c, n).iter().all(|r| allowed.contains(r)))
        .collect();
    let rows: Vec<HashSet<u32>> = implicants
        .iter()
        .map(|c| cube_rows(c, n).into_iter().collect())
        .collect();
    let mut out: Vec<String> = implicants
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !rows
                .iter()
                .enumerate()
                .any(|(j, r)| j != *i && r.len() > rows[*i].len() && rows[*i].is_subset(r))
        })
        .map(|(_, c)| c.clone())
        .collect();
    out.sort();
    out
}

/// Literal-removal primality: dropping any literal must reach a row outside
/// ON ∪ DC.
pub fn is_prime(cube: &str, n: usize, on: &[u32], dc: &[u32]) -> bool {
    let allowed: HashSet<u32> = on.iter().chain(dc).copied().collect();
    let inside = |c: &str| cube_rows(c, n).iter().all(|r| allowed.contains(r));
    if !inside(cube) {
        return false;
    }
    cube.char_indices()
        .filter(|(_, c)| *c != '-')
        .all(|(j, _)| {
            let mut widened: Vec<char> = cube.chars().collect();
            widened[j] = '-';
            !inside(&widened.into_iter().collect::<String>())
        })
}

/// Fewest cubes from `primes` covering `on`, by breadth-first search over
/// coverage masks. `on` must have at most 20 rows.
pub fn optimum_cover_size(n: usize, on: &[u32], primes: &[String]) -> usize {
    assert!(on.len() <= 20);
    let full: u32 = if on.is_empty() {
        0
    } else {
        (1u32 << on.len()) - 1
    };
    let masks: Vec<u32> = primes
        .iter()
        .map(|p| {
            on.iter()
                .enumerate()
                .filter(|(_, &r)| cube_contains(p, r, n))
                .fold(0u32, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut dist = vec![usize::MAX; full as usize + 1];
    dist[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(m) = queue.pop_front() {
        if m == full {
            return dist[m as usize];
        }
        for &pm in &masks {
            let next = m | pm;
            if dist[next as usize] == usize::MAX {
                dist[next as usize] = dist[m as usize] + 1;
                queue.push_back(next);
            }
        }
    }
    panic!("primes do not cover the ON-set")
}

/// Random ON/DC split: each row is DC with probability `dc_frac` (capped
/// so DC stays within `dc_frac` of the rows), otherwise ON with
/// probability one half.
pub fn random_function(rng: &mut impl Rng, n: usize, dc_frac: f64) -> (Vec<u32>, Vec<u32>) {
    let rows = 1u32 << n;
    let max_dc = ((rows as f64) * dc_frac).floor() as usize;
    let mut on = Vec::new();
    let mut dc = Vec::new();
    for r in 0..rows {
        if dc.len() < max_dc && rng.gen_bool(dc_frac) {
            dc.push(r);
        } else if rng.gen_bool(0.5) {
            on.push(r);
        }
    }
    (on, dc)
}

pub fn random_cube(rng: &mut impl Rng, n: usize, p_absent: f64) -> String {
    (0..n)
        .map(|_| {
            if rng.gen_bool(p_absent) {
                '-'
            } else if rng.gen_bool(0.5) {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Random expression text over the given single-letter names, using every
/// operator form the grammar offers.
pub fn random_expr_text(rng: &mut impl Rng, names: &[&str], depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        let v = names.choose(rng).unwrap();
        return match rng.gen_range(0..10) {
            0 => "1".into(),
            1 => "0".into(),
            2 | 3 => format!("{v}'"),
            4 => format!("!{v}"),
            _ => v.to_string(),
        };
    }
    let a = random_expr_text(rng, names, depth - 1);
    let b = random_expr_text(rng, names, depth - 1);
    match rng.gen_range(0..5) {
        0 => format!("({a} + {b})"),
        1 => format!("({a})({b})"),
        2 => format!("({a}) * ({b})"),
        3 => format!("({a} + {b})'"),
        _ => format!("!({a} . {b})"),
    }
}

/// State table held as plain data for the reference interpreter.
#[derive(Clone, Debug)]
pub struct RawFsm {
    pub k: usize,
    pub q: usize,
    pub states: Vec<String>,
    pub reset: String,
    /// (input cube, current, next, output bits)
    pub rows: Vec<(String, String, String, String)>,
}

impl RawFsm {
    pub fn kiss2(&self) -> String {
        let mut s = format!(".i {}\n.o {}\n.r {}\n", self.k, self.q, self.reset);
        for (i, c, nx, o) in &self.rows {
            let fields: Vec<&str> = [i.as_str(), c, nx, o]
                .into_iter()
                .filter(|f| !f.is_empty())
                .collect();
            s.push_str(&fields.join(" "));
            s.push('\n');
        }
        s.push_str(".e\n");
        s
    }

    /// Outputs per cycle and the state name during each cycle. Missing
    /// transitions hold the state and drive all outputs low.
    pub fn run(&self, inputs: &[u32]) -> (Vec<String>, Vec<String>) {
        let mut state = self.reset.clone();
        let mut outs = Vec::new();
        let mut states = Vec::new();
        for &x in inputs {
            states.push(state.clone());
            let hit = self
                .rows
                .iter()
                .find(|(i, c, _, _)| *c == state && cube_contains(i, x, self.k));
            match hit {
                Some((_, _, nx, o)) => {
                    outs.push(o.clone());
                    state = nx.clone();
                }
                None => outs.push("0".repeat(self.q)),
            }
        }
        (outs, states)
    }
}

/// Splits the `k`-input space into disjoint cubes by random recursive
/// splitting.
fn random_partition(rng: &mut impl Rng, k: usize) -> Vec<String> {
    let mut done = Vec::new();
    let mut work = vec!["-".repeat(k)];
    while let Some(c) = work.pop() {
        let free: Vec<usize> = c
            .char_indices()
            .filter(|(_, ch)| *ch == '-')
            .map(|(j, _)| j)
            .collect();
        if free.is_empty() || rng.gen_bool(0.4) {
            done.push(c);
            continue;
        }
        let j = *free.choose(rng).unwrap();
        for bit in ['0', '1'] {
            let mut v: Vec<char> = c.chars().collect();
            v[j] = bit;
            work.push(v.into_iter().collect());
        }
    }
    done
}

/// Random machine with up to `max_states` states. With `complete` every
/// (state, input) pair has a transition; otherwise some pieces are dropped.
pub fn random_fsm(
    rng: &mut impl Rng,
    max_states: usize,
    max_k: usize,
    max_q: usize,
    complete: bool,
) -> RawFsm {
    let s = rng.gen_range(1..=max_states);
    let k = rng.gen_range(0..=max_k);
    let q = rng.gen_range(0..=max_q);
    let mut states: Vec<String> = (0..s).map(|i| format!("st{i}")).collect();
    states.shuffle(rng);
    let mut rows = Vec::new();
    for cur in &states {
        for cube in random_partition(rng, k) {
            if !complete && rng.gen_bool(0.15) {
                continue;
            }
            let next = states.choose(rng).unwrap().clone();
            let outs: String = (0..q)
                .map(|_| if rng.gen_bool(0.5) { '1' } else { '0' })
                .collect();
            rows.push((cube, cur.clone(), next, outs));
        }
    }
    rows.shuffle(rng);
    let reset = states.choose(rng).unwrap().clone();
    // KISS2 needs at least one mention of every state; keep those with rows.
    let mentioned: HashSet<&String> = rows.iter().flat_map(|(_, c, n, _)| [c, n]).collect();
    let states: Vec<String> = states
        .iter()
        .filter(|s| mentioned.contains(s))
        .cloned()
        .collect();
    let reset = if mentioned.contains(&reset) {
        reset
    } else if let Some(first) = states.first() {
        first.clone()
    } else {
        // Everything dropped: fall back to a single self loop.
        let st = "st0".to_string();
        rows.push(("-".repeat(k), st.clone(), st.clone(), "0".repeat(q)));
        return RawFsm {
            k,
            q,
            states: vec![st.clone()],
            reset: st,
            rows,
        };
    };
    RawFsm {
        k,
        q,
        states,
        reset,
        rows,
    }
}

pub fn bits_of(row: u32, n: usize) -> Vec<bool> {
    (0..n).map(|j| (row >> (n - 1 - j)) & 1 == 1).collect()
}

pub fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
