use fixedbitset::FixedBitSet;

use super::Partition;
use crate::error::{Error, Result};

/// Symmetric, irreflexive inequivalence relation over states, stored as a
/// full `n × n` bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartMatrix {
    n: usize,
    bits: FixedBitSet,
}

impl ApartMatrix {
    /// The empty relation: no pair is apart.
    pub fn new(n: usize) -> Self {
        ApartMatrix {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    /// Builds from a row-major `n²` bitset. Symmetry and irreflexivity are
    /// the caller's responsibility; see [`ApartMatrix::check_shape`].
    pub fn from_bits(n: usize, bits: FixedBitSet) -> Self {
        assert_eq!(bits.len(), n * n, "apart matrix must have n² cells");
        ApartMatrix { n, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> bool {
        self.bits.contains(p * self.n + q)
    }

    /// Marks `p` and `q` apart (both orientations). Diagonal requests are ignored.
    pub fn set(&mut self, p: usize, q: usize) {
        if p != q {
            self.bits.insert(p * self.n + q);
            self.bits.insert(q * self.n + p);
        }
    }

    pub fn count_apart_pairs(&self) -> usize {
        self.bits.count_ones(..) / 2
    }

    /// Whether the relation is symmetric and irreflexive.
    pub fn check_shape(&self) -> bool {
        let n = self.n;
        (0..n).all(|p| !self.get(p, p) && (0..p).all(|q| self.get(p, q) == self.get(q, p)))
    }
}

/// Groups states whose pair is not apart. Fails when "not apart" is not
/// transitive, which means the producing algorithm stopped early.
pub fn partition_from_apart(m: &ApartMatrix) -> Result<Partition> {
    let n = m.n();
    const NONE: u32 = u32::MAX;
    let mut block_of = vec![NONE; n];
    let mut reps: Vec<usize> = Vec::new();
    for q in 0..n {
        if block_of[q] != NONE {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(q);
        block_of[q] = id;
        for r in q + 1..n {
            if !m.get(q, r) {
                if block_of[r] != NONE {
                    // r already sits with an earlier representative p, which
                    // is apart from q.
                    let p = reps[block_of[r] as usize];
                    return Err(Error::NonTransitiveApart(p, r, q));
                }
                block_of[r] = id;
            }
        }
    }
    // Each reported triple (x, y, z) has x ~ y, y ~ z and x apart from z.
    for r in 0..n {
        for s in r + 1..n {
            let (br, bs) = (block_of[r], block_of[s]);
            let apart = m.get(r, s);
            if br == bs && apart {
                return Err(Error::NonTransitiveApart(r, reps[br as usize], s));
            }
            if br != bs && !apart {
                let (rr, rs) = (reps[br as usize], reps[bs as usize]);
                return Err(if rr < rs {
                    Error::NonTransitiveApart(rr, r, s)
                } else {
                    Error::NonTransitiveApart(rs, s, r)
                });
            }
        }
    }
    Ok(Partition {
        block_of,
        num_blocks: reps.len(),
    })
}
