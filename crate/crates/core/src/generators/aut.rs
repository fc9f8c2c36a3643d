use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use fixedbitset::FixedBitSet;

use crate::automata::{Dfa, Lts, Transition};
use crate::error::{Error, Result};

fn parse_number(line: usize, token: &str, what: &str) -> Result<u32> {
    token
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{}`", token.trim())))
}

fn parenthesised(line: usize, text: &str) -> Result<&str> {
    text.trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse(line, "expected a parenthesised tuple"))
}

/// Parses an Aldébaran `.aut` file.
///
/// Labels may be quoted or bare; quoted labels are stored without the
/// quotes. The source state runs up to the first comma and the target
/// starts after the last, so labels may contain commas.
pub fn load_aut(text: &str) -> Result<Lts> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `des` header"))?;
    let body = header
        .trim()
        .strip_prefix("des")
        .ok_or_else(|| Error::parse(no, "expected `des (<initial>, <transitions>, <states>)`"))?;
    let fields: Vec<&str> = parenthesised(no, body)?.split(',').collect();
    let [initial, declared, states] = fields[..] else {
        return Err(Error::parse(no, "header needs exactly three fields"));
    };
    let initial = parse_number(no, initial, "initial state")?;
    let declared = parse_number(no, declared, "transition count")? as usize;
    let num_states = parse_number(no, states, "state count")? as usize;
    if initial as usize >= num_states {
        return Err(Error::parse(no, format!("initial state {initial} out of range")));
    }

    let mut lts = Lts::new(num_states, initial);
    let mut last = no;
    for (no, line) in lines {
        last = no;
        let inner = parenthesised(no, line)?;
        let (from, rest) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(no, "expected `(<from>, <label>, <to>)`"))?;
        let (label, to) = rest
            .rsplit_once(',')
            .ok_or_else(|| Error::parse(no, "expected `(<from>, <label>, <to>)`"))?;
        let from = parse_number(no, from, "source state")?;
        let to = parse_number(no, to, "target state")?;
        for s in [from, to] {
            if s as usize >= num_states {
                return Err(Error::parse(no, format!("state {s} out of range")));
            }
        }
        let label = label.trim();
        let label = match label.strip_prefix('"') {
            Some(quoted) => quoted
                .strip_suffix('"')
                .ok_or_else(|| Error::parse(no, "unterminated label quote"))?,
            None => label,
        };
        lts.add(from, label, to);
    }
    if lts.transitions.len() != declared {
        return Err(Error::parse(
            last,
            format!(
                "header declares {declared} transitions, found {}",
                lts.transitions.len()
            ),
        ));
    }
    Ok(lts)
}

/// Budget for [`determinize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminizeLimits {
    pub max_states: usize,
    pub deadline: Option<Instant>,
}

impl Default for DeterminizeLimits {
    fn default() -> Self {
        DeterminizeLimits {
            max_states: 1 << 24,
            deadline: None,
        }
    }
}

/// Subset construction from `{initial}`.
///
/// Subsets are numbered in discovery order of a breadth-first search that
/// scans labels in id order. Labels that never occur on a reachable subset
/// transition are dropped; the rest keep their relative order.
pub fn determinize(lts: &Lts, limits: &DeterminizeLimits) -> Result<Lts> {
    lts.check()?;
    let num_labels = lts.labels.len();
    let mut edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); lts.num_states];
    for t in &lts.transitions {
        edges[t.from as usize].push((t.label, t.to));
    }
    for e in &mut edges {
        e.sort_unstable();
        e.dedup();
    }

    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    let start = vec![lts.initial];
    ids.insert(start.clone(), 0);
    queue.push_back(start);
    let mut transitions = Vec::new();
    let mut successors: Vec<Vec<u32>> = vec![Vec::new(); num_labels];
    let mut current = 0u32;
    while let Some(subset) = queue.pop_front() {
        if let Some(deadline) = limits.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout);
            }
        }
        for s in successors.iter_mut() {
            s.clear();
        }
        for &q in &subset {
            for &(label, to) in &edges[q as usize] {
                successors[label as usize].push(to);
            }
        }
        for (label, targets) in successors.iter_mut().enumerate() {
            if targets.is_empty() {
                continue;
            }
            targets.sort_unstable();
            targets.dedup();
            let next = ids.len() as u32;
            let to = match ids.entry(targets.clone()) {
                Entry::Occupied(e) => *e.get(),
                Entry::Vacant(e) => {
                    if next as usize >= limits.max_states {
                        return Err(Error::ResourceExceeded {
                            what: "determinized states",
                            required: next as u64 + 1,
                            limit: limits.max_states as u64,
                        });
                    }
                    queue.push_back(e.key().clone());
                    e.insert(next);
                    next
                }
            };
            transitions.push(Transition {
                from: current,
                label: label as u32,
                to,
            });
        }
        current += 1;
    }

    let mut used = vec![false; num_labels];
    for t in &transitions {
        used[t.label as usize] = true;
    }
    let mut renumber = vec![u32::MAX; num_labels];
    let mut labels = Vec::new();
    for (i, label) in lts.labels.iter().enumerate() {
        if used[i] {
            renumber[i] = labels.len() as u32;
            labels.push(label.clone());
        }
    }
    for t in &mut transitions {
        t.label = renumber[t.label as usize];
    }
    Ok(Lts {
        num_states: ids.len(),
        initial: 0,
        labels,
        transitions,
    })
}

/// Makes a deterministic LTS total: every original state accepts, and a
/// new rejecting sink `⊥` (the last state) receives every missing transition.
pub fn complete_to_dfa(dlts: &Lts) -> Result<Dfa> {
    dlts.check()?;
    if let Some((state, label)) = dlts.first_nondeterminism() {
        return Err(Error::Nondeterministic {
            state,
            label: dlts.label(label).to_string(),
        });
    }
    let n = dlts.num_states + 1;
    let sink = dlts.num_states as u32;
    let mut delta = vec![vec![sink; n]; dlts.labels.len()];
    for t in &dlts.transitions {
        delta[t.label as usize][t.from as usize] = t.to;
    }
    let mut accepting = FixedBitSet::with_capacity(n);
    accepting.insert_range(..dlts.num_states);
    Dfa::new(delta, accepting, Some(dlts.initial))?.with_letter_names(dlts.labels.clone())
}
