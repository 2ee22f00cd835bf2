use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dominance::dominates_unchecked;
use crate::error::{domain, usage};
use crate::linalg::inf_dist;
use crate::{Result, SupportSet};

/// Two points of one key closer than this in `∞`-norm are the same point.
pub const DUPLICATE_TOL: f64 = 1e-10;

/// A point tied to a super support, with its objective values cached.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchiveEntry {
    pub x: Vec<f64>,
    pub support: SupportSet,
    pub f: Vec<f64>,
}

/// Entries grouped by support, mutually nondominated within each group.
///
/// Groups iterate in lexicographic support order; entries keep insertion
/// order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParetoArchive {
    groups: BTreeMap<SupportSet, Vec<ArchiveEntry>>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts every entry in order, keeping only the nondominated ones.
    pub fn from_entries(entries: impl IntoIterator<Item = ArchiveEntry>) -> Self {
        let mut archive = Self::new();
        for e in entries {
            archive.insert(e);
        }
        archive
    }

    pub fn len(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn num_keys(&self) -> usize {
        self.groups.len()
    }

    pub fn keys(&self) -> impl Iterator<Item = &SupportSet> {
        self.groups.keys()
    }

    pub fn group(&self, key: &SupportSet) -> &[ArchiveEntry] {
        self.groups.get(key).map_or(&[], Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = &ArchiveEntry> {
        self.groups.values().flatten()
    }

    pub fn into_entries(self) -> impl Iterator<Item = ArchiveEntry> {
        self.groups.into_values().flatten()
    }

    /// Whether exactly `x` is stored under `key`.
    pub fn contains(&self, key: &SupportSet, x: &[f64]) -> bool {
        self.group(key).iter().any(|e| e.x == x)
    }

    /// Adds `entry` and drops the mates it dominates. Returns `false`, and
    /// leaves the archive unchanged, when a mate duplicates or dominates it.
    pub fn insert(&mut self, entry: ArchiveEntry) -> bool {
        let rejected = self.group(&entry.support).iter().any(|y| {
            inf_dist(&y.x, &entry.x) <= DUPLICATE_TOL || dominates_unchecked(&y.f, &entry.f)
        });
        if rejected {
            return false;
        }
        let mates = self.groups.entry(entry.support.clone()).or_default();
        mates.retain(|y| !dominates_unchecked(&entry.f, &y.f));
        mates.push(entry);
        debug_assert!(mutually_nondominated(mates));
        true
    }

    /// Removes exactly `x` from `key`, returning whether it was present.
    pub fn remove(&mut self, key: &SupportSet, x: &[f64]) -> bool {
        let Some(mates) = self.groups.get_mut(key) else {
            return false;
        };
        let before = mates.len();
        mates.retain(|e| e.x != x);
        let removed = mates.len() < before;
        if mates.is_empty() {
            self.groups.remove(key);
        }
        removed
    }

    /// Checks the structural invariants: `supp(x) ⊆ J`, `|J| = s`, no
    /// duplicates and no dominated mates within a key.
    pub fn validate(&self, s: usize) -> Result<()> {
        for (key, mates) in &self.groups {
            if key.len() != s {
                return Err(usage!("support {} does not have size s={}", key, s));
            }
            for e in mates {
                if &e.support != key {
                    return Err(usage!("entry filed under {} carries support {}", key, e.support));
                }
                if let Some(i) = (0..e.x.len()).find(|&i| e.x[i] != 0.0 && !key.contains(i)) {
                    return Err(domain!("entry is nonzero at index {} outside {}", i + 1, key));
                }
            }
            if !mutually_nondominated(mates) {
                return Err(usage!("entries under {} are not mutually nondominated", key));
            }
            for (a, ea) in mates.iter().enumerate() {
                if mates[a + 1..].iter().any(|eb| inf_dist(&ea.x, &eb.x) <= DUPLICATE_TOL) {
                    return Err(usage!("duplicate points under {}", key));
                }
            }
        }
        Ok(())
    }
}

fn mutually_nondominated(mates: &[ArchiveEntry]) -> bool {
    mates
        .iter()
        .all(|a| !mates.iter().any(|b| dominates_unchecked(&b.f, &a.f)))
}
