use crate::error::{Error, Result};

/// A labelled transition `(from, label, to)`; the label indexes [`Lts::labels`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: u32,
    pub label: u32,
    pub to: u32,
}

/// Labelled transition system. Transitions may be nondeterministic and
/// incomplete.
///
/// Labels are interned in first-appearance order, which later becomes the
/// letter order of the derived DFA.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lts {
    pub num_states: usize,
    pub initial: u32,
    pub labels: Vec<String>,
    pub transitions: Vec<Transition>,
}

impl Lts {
    pub fn new(num_states: usize, initial: u32) -> Self {
        Lts {
            num_states,
            initial,
            labels: Vec::new(),
            transitions: Vec::new(),
        }
    }

    /// Interns `label`, returning its id.
    pub fn label_id(&mut self, label: &str) -> u32 {
        match self.labels.iter().position(|l| l == label) {
            Some(i) => i as u32,
            None => {
                self.labels.push(label.to_string());
                (self.labels.len() - 1) as u32
            }
        }
    }

    pub fn add(&mut self, from: u32, label: &str, to: u32) {
        let label = self.label_id(label);
        self.transitions.push(Transition { from, label, to });
    }

    pub fn label(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    /// Checks state ids and label ids.
    pub fn check(&self) -> Result<()> {
        let n = self.num_states;
        if self.initial as usize >= n {
            return Err(Error::InvalidParameter(format!(
                "initial state {} out of range for {n} states",
                self.initial
            )));
        }
        for t in &self.transitions {
            if t.from as usize >= n || t.to as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "transition ({}, {}) references a state outside 0..{n}",
                    t.from, t.to
                )));
            }
            if t.label as usize >= self.labels.len() {
                return Err(Error::InvalidParameter(format!("unknown label id {}", t.label)));
            }
        }
        Ok(())
    }

    /// Whether every (state, label) has at most one successor.
    pub fn is_deterministic(&self) -> bool {
        self.first_nondeterminism().is_none()
    }

    pub(crate) fn first_nondeterminism(&self) -> Option<(usize, u32)> {
        let mut sorted: Vec<_> = self.transitions.iter().map(|t| (t.from, t.label, t.to)).collect();
        sorted.sort_unstable();
        sorted.dedup();
        sorted
            .windows(2)
            .find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
            .map(|w| (w[0].0 as usize, w[0].1))
    }
}
