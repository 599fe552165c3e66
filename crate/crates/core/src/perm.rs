//! Explicit symmetric-group machinery for small orders.
//!
//! Groups up to `t = 8` (40320 elements) are enumerated once, partitioned
//! into conjugacy classes by cycle type, and cached behind an `Arc`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest tensor order the permutation tables support.
pub const MAX_ORDER: usize = 8;

/// A permutation of `{0, .., t-1}` in image notation: `i -> images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(t: usize) -> Permutation {
        Permutation {
            images: (0..t).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let t = images.len();
        let mut seen = vec![false; t];
        for &i in &images {
            if i >= t || seen[i] {
                return Err(Error::Internal("invalid permutation image list".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images = (0..self.images.len())
            .map(|i| self.images[other.images[i]])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Cycle lengths in descending order (the cycle type).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }

    /// Length of the longest strictly decreasing subsequence of the image
    /// sequence, via patience sorting on the reversed order.
    pub fn longest_decreasing_run(&self) -> usize {
        // Longest decreasing subsequence of `images` equals the longest
        // increasing subsequence of the reversed sequence.
        let mut tails: Vec<usize> = Vec::new();
        for &x in self.images.iter().rev() {
            match tails.binary_search(&x) {
                // strictly increasing: replace the first element >= x
                Ok(pos) | Err(pos) => {
                    if pos == tails.len() {
                        tails.push(x);
                    } else {
                        tails[pos] = x;
                    }
                }
            }
        }
        tails.len()
    }
}

/// One conjugacy class of `S_t`.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    /// Cycle lengths, descending.
    pub cycle_type: Vec<usize>,
    /// Number of cycles (parts of the type).
    pub cycle_count: usize,
    /// Number of group elements in the class.
    pub size: usize,
    /// Index into `GroupTable::elements` of one representative.
    pub representative: usize,
}

/// Fully enumerated `S_t` with class bookkeeping.
#[derive(Debug)]
pub struct GroupTable {
    pub order: usize,
    pub elements: Vec<Permutation>,
    /// Cycle count of each element, aligned with `elements`.
    pub cycle_counts: Vec<usize>,
    pub classes: Vec<ConjugacyClass>,
}

impl GroupTable {
    fn build(t: usize) -> GroupTable {
        let mut elements = Vec::new();
        let mut current: Vec<usize> = (0..t).collect();
        heap_permutations(&mut current, t, &mut elements);
        let cycle_counts: Vec<usize> = elements.iter().map(|p| p.cycle_count()).collect();
        let mut by_type: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for (idx, p) in elements.iter().enumerate() {
            let ty = p.cycle_type();
            let entry = by_type.entry(ty).or_insert((0, idx));
            entry.0 += 1;
        }
        let mut classes: Vec<ConjugacyClass> = by_type
            .into_iter()
            .map(|(cycle_type, (size, representative))| ConjugacyClass {
                cycle_count: cycle_type.len(),
                cycle_type,
                size,
                representative,
            })
            .collect();
        classes.sort_by(|a, b| a.cycle_type.cmp(&b.cycle_type));
        GroupTable {
            order: t,
            elements,
            cycle_counts,
            classes,
        }
    }
}

fn heap_permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation {
            images: current.clone(),
        });
        return;
    }
    for i in 0..k {
        heap_permutations(current, k - 1, out);
        if k.is_multiple_of(2) {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
}

/// Shared table for `S_t`; errors beyond [`MAX_ORDER`].
pub fn symmetric_group(t: usize) -> Result<Arc<GroupTable>> {
    if t == 0 {
        return Err(Error::Unsupported("order t must be at least 1".into()));
    }
    if t > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "symmetric-group tables stop at t = {MAX_ORDER}, got t = {t}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GroupTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    Ok(guard
        .entry(t)
        .or_insert_with(|| Arc::new(GroupTable::build(t)))
        .clone())
}
