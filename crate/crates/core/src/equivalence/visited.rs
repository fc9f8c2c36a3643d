use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

const EMPTY: u64 = u64::MAX;

/// Lock-free insert-only hash set of state pairs packed into 64 bits.
///
/// Concurrent [`PairSet::insert`] calls are linearizable; growing the table
/// needs exclusive access and is done between exploration waves.
pub struct PairSet {
    slots: Vec<AtomicU64>,
    mask: usize,
    len: AtomicUsize,
}

#[inline]
pub fn pack(a: u32, b: u32) -> u64 {
    (u64::from(a) << 32) | u64::from(b)
}

#[inline]
pub fn unpack(key: u64) -> (u32, u32) {
    ((key >> 32) as u32, key as u32)
}

#[inline]
fn fmix64(mut k: u64) -> u64 {
    k ^= k >> 33;
    k = k.wrapping_mul(0xff51_afd7_ed55_8ccd);
    k ^= k >> 33;
    k = k.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    k ^ (k >> 33)
}

fn empty_slots(capacity: usize) -> Vec<AtomicU64> {
    (0..capacity).map(|_| AtomicU64::new(EMPTY)).collect()
}

impl PairSet {
    /// A set able to hold `capacity / 2` pairs before it must grow.
    pub fn with_capacity(capacity: usize) -> Self {
        let capacity = capacity.max(16).next_power_of_two();
        PairSet {
            slots: empty_slots(capacity),
            mask: capacity - 1,
            len: AtomicUsize::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.len.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Inserts `key`; true if it was not present. Both halves of the key
    /// must not be `u32::MAX` at once.
    pub fn insert(&self, key: u64) -> bool {
        debug_assert_ne!(key, EMPTY);
        let mut i = fmix64(key) as usize & self.mask;
        loop {
            let slot = &self.slots[i];
            let current = slot.load(Ordering::Acquire);
            if current == key {
                return false;
            }
            if current == EMPTY {
                match slot.compare_exchange(EMPTY, key, Ordering::AcqRel, Ordering::Acquire) {
                    Ok(_) => {
                        self.len.fetch_add(1, Ordering::Relaxed);
                        return true;
                    }
                    Err(winner) if winner == key => return false,
                    Err(_) => {}
                }
            }
            i = (i + 1) & self.mask;
        }
    }

    pub fn contains(&self, key: u64) -> bool {
        let mut i = fmix64(key) as usize & self.mask;
        loop {
            match self.slots[i].load(Ordering::Acquire) {
                EMPTY => return false,
                k if k == key => return true,
                _ => i = (i + 1) & self.mask,
            }
        }
    }

    /// Grows the table so that `additional` more inserts keep the load
    /// factor at or below one half.
    pub fn reserve(&mut self, additional: usize) {
        let needed = self.len().saturating_add(additional).saturating_mul(2);
        if needed <= self.slots.len() {
            return;
        }
        let capacity = needed.next_power_of_two();
        let old = std::mem::replace(&mut self.slots, empty_slots(capacity));
        self.mask = capacity - 1;
        for slot in old {
            let key = slot.into_inner();
            if key != EMPTY {
                let mut i = fmix64(key) as usize & self.mask;
                while *self.slots[i].get_mut() != EMPTY {
                    i = (i + 1) & self.mask;
                }
                *self.slots[i].get_mut() = key;
            }
        }
    }

    /// All stored keys, in table order.
    pub fn keys(&self) -> impl Iterator<Item = u64> + '_ {
        self.slots
            .iter()
            .map(|s| s.load(Ordering::Relaxed))
            .filter(|&k| k != EMPTY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_grow() {
        let mut set = PairSet::with_capacity(4);
        for a in 0..100u32 {
            set.reserve(1);
            assert!(set.insert(pack(a, a + 1)));
            assert!(!set.insert(pack(a, a + 1)));
        }
        assert_eq!(set.len(), 100);
        assert!(set.contains(pack(42, 43)));
        assert!(!set.contains(pack(43, 42)));
        assert!(set.capacity() >= 200);
        assert_eq!(set.keys().count(), 100);
    }

    #[test]
    fn packing() {
        assert_eq!(unpack(pack(7, u32::MAX - 1)), (7, u32::MAX - 1));
    }
}
