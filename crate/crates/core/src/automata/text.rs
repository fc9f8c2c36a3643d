//! Plain-text DFA format.
//!
//! ```text
//! dfa 1
//! states <n>
//! alphabet <k>
//! initial <q0 | ->
//! accepting <m> <id_1> ... <id_m>
//! letter <a> <name>                  (optional, all k or none)
//! trans <a> <d_0> ... <d_{n-1}>      (k lines)
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use super::{Dfa, StateId};
use crate::error::{Error, Result};

/// Serialises `dfa` in the text format. The output is byte-stable: equal
/// automata produce equal text.
pub fn write_dfa(dfa: &Dfa) -> String {
    let mut out = String::with_capacity(32 + dfa.num_states * dfa.alphabet_size * 6);
    out.push_str("dfa 1\n");
    let _ = writeln!(out, "states {}", dfa.num_states);
    let _ = writeln!(out, "alphabet {}", dfa.alphabet_size);
    match dfa.initial {
        Some(q) => {
            let _ = writeln!(out, "initial {q}");
        }
        None => out.push_str("initial -\n"),
    }
    let _ = write!(out, "accepting {}", dfa.num_accepting());
    for q in dfa.accepting.ones() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    if let Some(names) = &dfa.letter_names {
        for (a, name) in names.iter().enumerate() {
            let _ = writeln!(out, "letter {a} {name}");
        }
    }
    for (a, row) in dfa.delta.iter().enumerate() {
        let _ = write!(out, "trans {a}");
        for d in row {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            if !line.trim().is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| Error::parse(self.last + 1, format!("unexpected end of input, expected `{what}`")))
    }
}

fn number<T: FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

/// Parses `keyword <value>` and returns the value.
fn header<T: FromStr>(lines: &mut Lines<'_>, keyword: &str) -> Result<(usize, T)> {
    let (no, line) = lines.expect(keyword)?;
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(Error::parse(no, format!("expected `{keyword}`")));
    }
    let value = number(no, tokens.next(), keyword)?;
    if tokens.next().is_some() {
        return Err(Error::parse(no, format!("trailing tokens after `{keyword}`")));
    }
    Ok((no, value))
}

/// Parses the text format. Errors carry the 1-based line number.
pub fn read_dfa(text: &str) -> Result<Dfa> {
    let mut lines = Lines::new(text);

    let (no, version) = header::<u32>(&mut lines, "dfa")?;
    if version != 1 {
        return Err(Error::parse(no, format!("unsupported format version {version}")));
    }
    let (no, n) = header::<usize>(&mut lines, "states")?;
    if n >= u32::MAX as usize {
        return Err(Error::parse(no, "state count exceeds the 32-bit id space"));
    }
    let (_, k) = header::<usize>(&mut lines, "alphabet")?;

    let (no, line) = lines.expect("initial")?;
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("initial") {
        return Err(Error::parse(no, "expected `initial`"));
    }
    let initial = match tokens.next() {
        Some("-") => None,
        token => {
            let q: StateId = number(no, token, "initial state")?;
            if q as usize >= n {
                return Err(Error::parse(no, format!("initial state {q} out of range")));
            }
            Some(q)
        }
    };
    if tokens.next().is_some() {
        return Err(Error::parse(no, "trailing tokens after `initial`"));
    }

    let (no, line) = lines.expect("accepting")?;
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("accepting") {
        return Err(Error::parse(no, "expected `accepting`"));
    }
    let m: usize = number(no, tokens.next(), "accepting count")?;
    let mut accepting = FixedBitSet::with_capacity(n);
    let mut previous: Option<usize> = None;
    let mut seen = 0usize;
    for token in tokens {
        let q: usize = number(no, Some(token), "accepting state")?;
        if q >= n {
            return Err(Error::parse(no, format!("accepting state {q} out of range")));
        }
        if previous.is_some_and(|p| p >= q) {
            return Err(Error::parse(no, "accepting ids must be strictly increasing"));
        }
        previous = Some(q);
        accepting.insert(q);
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(no, format!("declared {m} accepting states, listed {seen}")));
    }

    let mut names: Vec<String> = Vec::new();
    let mut delta: Vec<Vec<StateId>> = Vec::with_capacity(k);
    while delta.len() < k {
        let (no, line) = lines.expect("trans")?;
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("letter ") {
            if !delta.is_empty() {
                return Err(Error::parse(no, "`letter` lines must precede `trans` lines"));
            }
            let (id, name) = rest.split_once(' ').unwrap_or((rest, ""));
            let a: usize = number(no, Some(id), "letter id")?;
            if a != names.len() || a >= k {
                return Err(Error::parse(no, format!("expected letter {}, found {a}", names.len())));
            }
            names.push(name.to_string());
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        if tokens.next() != Some("trans") {
            return Err(Error::parse(no, "expected `trans` or `letter`"));
        }
        let a: usize = number(no, tokens.next(), "letter id")?;
        if a != delta.len() {
            return Err(Error::parse(no, format!("expected trans row {}, found {a}", delta.len())));
        }
        let mut row = Vec::with_capacity(n);
        for token in tokens {
            let d: StateId = number(no, Some(token), "target state")?;
            if d as usize >= n {
                return Err(Error::parse(no, format!("target state {d} out of range")));
            }
            row.push(d);
        }
        if row.len() != n {
            return Err(Error::parse(
                no,
                format!("trans row {a} has {} entries, expected {n}", row.len()),
            ));
        }
        delta.push(row);
    }
    if !names.is_empty() && names.len() != k {
        return Err(Error::parse(
            lines.last,
            format!("{} letter names given for {k} letters", names.len()),
        ));
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, "unexpected content after the last `trans` row"));
    }

    Ok(Dfa {
        num_states: n,
        alphabet_size: k,
        delta,
        accepting,
        initial,
        letter_names: (k > 0 && !names.is_empty()).then_some(names),
    })
}
