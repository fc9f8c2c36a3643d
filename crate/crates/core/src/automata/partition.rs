use std::collections::HashMap;

/// A state equivalence given as a block id per state.
///
/// Block ids are normalised by first occurrence: scanning states in order,
/// the first state of each block gets the next unused id. Two partitions are
/// therefore equal iff they induce the same equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub block_of: Vec<u32>,
    pub num_blocks: usize,
}

impl Partition {
    /// Normalises arbitrary labels; states share a block iff their labels are equal.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, u32> = HashMap::new();
        let block_of = labels
            .iter()
            .map(|label| {
                let next = ids.len() as u32;
                *ids.entry(*label).or_insert(next)
            })
            .collect();
        Partition {
            block_of,
            num_blocks: ids.len(),
        }
    }

    /// Like [`Partition::from_labels`] for labels that are state ids in `0..n`
    /// (leader arrays), without hashing.
    pub fn from_leaders(leaders: &[u32]) -> Self {
        const NONE: u32 = u32::MAX;
        let mut ids = vec![NONE; leaders.len()];
        let mut next = 0u32;
        let block_of = leaders
            .iter()
            .map(|&l| {
                let slot = &mut ids[l as usize];
                if *slot == NONE {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Partition {
            block_of,
            num_blocks: next as usize,
        }
    }

    /// Every state in its own block.
    pub fn identity(n: usize) -> Self {
        Partition {
            block_of: (0..n as u32).collect(),
            num_blocks: n,
        }
    }

    /// All states in one block (no blocks when `n == 0`).
    pub fn coarsest(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
            num_blocks: usize::from(n > 0),
        }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.block_of[p] == self.block_of[q]
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut image = vec![u32::MAX; self.num_blocks];
        self.block_of
            .iter()
            .zip(&coarser.block_of)
            .all(|(&fine, &coarse)| {
                let slot = &mut image[fine as usize];
                if *slot == u32::MAX {
                    *slot = coarse;
                }
                *slot == coarse
            })
    }

    /// Members of each block, in increasing state order.
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.num_blocks];
        for (q, &b) in self.block_of.iter().enumerate() {
            out[b as usize].push(q as u32);
        }
        out
    }

    /// Whether ids already follow the first-occurrence rule.
    pub fn is_normalized(&self) -> bool {
        let mut next = 0u32;
        for &b in &self.block_of {
            if b == next {
                next += 1;
            } else if b > next {
                return false;
            }
        }
        next as usize == self.num_blocks
    }
}
