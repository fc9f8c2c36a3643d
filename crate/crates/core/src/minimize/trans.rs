use fixedbitset::FixedBitSet;

use super::{Algorithm, Limits, RefinementReport};
use crate::automata::{partition_from_apart, ApartMatrix, Dfa, Partition};
use crate::error::{Error, Result};
use crate::par;

/// Pair-graph minimisation.
///
/// Builds the graph on `Q × Q` with an edge `(q, q') → (δ(q,a), δ(q',a))`
/// per letter, then alternates a reachability squaring step with
/// propagation of apartness from reachable apart pairs until the apart set
/// is stable. Needs `|Q|⁴` bits for the reachability matrix, guarded by
/// [`Limits::max_reach_cells`].
pub fn trans_minimize(dfa: &Dfa, limits: &Limits) -> Result<RefinementReport> {
    trans_minimize_with(dfa, limits).map(|(report, _)| report)
}

/// Bit-packed square matrix stored row-major in 64-bit words.
struct BitMatrix {
    dim: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    fn new(dim: usize) -> Self {
        let words_per_row = dim.div_ceil(64);
        BitMatrix {
            dim,
            words_per_row,
            words: vec![0; dim * words_per_row],
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn set(&mut self, r: usize, c: usize) {
        self.words[r * self.words_per_row + c / 64] |= 1 << (c % 64);
    }

    fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                (bits != 0).then(|| {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    w * 64 + b
                })
            })
        })
    }

    /// `R ∪ R·R`, reading only the current matrix.
    fn square_step(&self) -> BitMatrix {
        let wpr = self.words_per_row;
        let rows: Vec<Vec<u64>> = par::map(self.dim, |s| {
            let mut out = self.row(s).to_vec();
            for t in Self::ones(self.row(s)) {
                for (o, &w) in out.iter_mut().zip(self.row(t)) {
                    *o |= w;
                }
            }
            out
        });
        let mut words = Vec::with_capacity(self.dim * wpr);
        for row in rows {
            words.extend_from_slice(&row);
        }
        BitMatrix {
            dim: self.dim,
            words_per_row: wpr,
            words,
        }
    }
}

/// [`trans_minimize`] also returning the apartness matrix.
pub fn trans_minimize_with(dfa: &Dfa, limits: &Limits) -> Result<(RefinementReport, ApartMatrix)> {
    let n = dfa.num_states;
    let v = n
        .checked_mul(n)
        .ok_or_else(|| Error::InvalidParameter("pair graph size overflows".into()))?;
    let cells = (v as u128) * (v as u128);
    if cells > u128::from(limits.max_reach_cells) {
        // Two bit-packed copies are live during a squaring step.
        return Err(Error::ResourceExceeded {
            what: "pair-graph reachability matrix (bytes)",
            required: u64::try_from(cells / 4).unwrap_or(u64::MAX),
            limit: limits.max_reach_cells / 4,
        });
    }

    let pair = |q: usize, r: usize| q * n + r;
    let mut apart = vec![0u64; v.div_ceil(64)];
    let mark = |apart: &mut [u64], s: usize| apart[s / 64] |= 1 << (s % 64);
    let is_apart = |apart: &[u64], s: usize| apart[s / 64] >> (s % 64) & 1 == 1;
    let mut reach = BitMatrix::new(v);
    for q in 0..n {
        for r in 0..n {
            if dfa.accepting.contains(q) != dfa.accepting.contains(r) {
                mark(&mut apart, pair(q, r));
            }
            for row in &dfa.delta {
                reach.set(pair(q, r), pair(row[q] as usize, row[r] as usize));
            }
        }
    }

    let mut passes = 0;
    let mut refining = 0;
    loop {
        limits.check_deadline()?;
        reach = reach.square_step();
        passes += 1;
        let newly: Vec<bool> = par::map(v, |s| {
            !is_apart(&apart, s)
                && reach
                    .row(s)
                    .iter()
                    .zip(&apart)
                    .any(|(&r, &a)| r & a != 0)
        });
        let mut changed = false;
        for (s, &flag) in newly.iter().enumerate() {
            if flag {
                mark(&mut apart, s);
                changed = true;
            }
        }
        if !changed {
            break;
        }
        refining += 1;
    }

    let mut bits = FixedBitSet::with_capacity(v);
    for s in (0..v).filter(|&s| is_apart(&apart, s)) {
        bits.insert(s);
    }
    let matrix = ApartMatrix::from_bits(n, bits);
    let partition = if n == 0 {
        Partition::identity(0)
    } else {
        partition_from_apart(&matrix)?
    };
    Ok((
        RefinementReport {
            partition,
            refining_iterations: refining,
            closure_iterations: passes,
            algorithm: Algorithm::Trans,
        },
        matrix,
    ))
}
