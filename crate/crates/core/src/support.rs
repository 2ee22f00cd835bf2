use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, usage};
use crate::Result;

/// Entries with magnitude at or below this value count as zero when a
/// support is read off a floating-point vector.
pub const ZERO_TOL: f64 = 1e-12;

/// Sorted, duplicate-free set of coordinate indices over `0..n`.
///
/// Indices are 0-based in memory; [`SupportSet::to_one_based`] renders them
/// the way they appear in serialized output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportSet {
    indices: Vec<usize>,
    n: usize,
}

impl SupportSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(usage!("duplicate index in support {:?}", indices));
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(usage!("index {} out of range for dimension {}", last, n));
            }
        }
        Ok(Self { indices, n })
    }

    /// All coordinates `0..n`.
    pub fn full(n: usize) -> Self {
        Self {
            indices: (0..n).collect(),
            n,
        }
    }

    /// `S_1(x)`: coordinates with `|x_i| > ZERO_TOL`.
    pub fn of(x: &[f64]) -> Self {
        Self {
            indices: (0..x.len())
                .filter(|&i| libm::fabs(x[i]) > ZERO_TOL)
                .collect(),
            n: x.len(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self) -> SupportSet {
        SupportSet {
            indices: (0..self.n).filter(|&i| !self.contains(i)).collect(),
            n: self.n,
        }
    }

    /// 1-based indices joined by `sep`, e.g. `"1;3"`.
    pub fn to_one_based(&self, sep: &str) -> String {
        let mut out = String::new();
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                out.push_str(sep);
            }
            out.push_str(&format!("{}", i + 1));
        }
        out
    }

    /// Parses the output of [`SupportSet::to_one_based`].
    pub fn parse_one_based(text: &str, sep: char, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Self::new(Vec::new(), n);
        }
        let mut idx = Vec::new();
        for tok in text.split(sep) {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| usage!("bad support index {:?}", tok))?;
            if v == 0 {
                return Err(usage!("support indices are 1-based, got 0"));
            }
            idx.push(v - 1);
        }
        Self::new(idx, n)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_one_based(","))
    }
}

/// Cardinality bound `s` with `1 ≤ s < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparseBudget(usize);

impl SparseBudget {
    pub fn new(s: usize, n: usize) -> Result<Self> {
        if s == 0 || s >= n {
            return Err(usage!("sparsity bound must satisfy 1 <= s < n (s={}, n={})", s, n));
        }
        Ok(Self(s))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn admits(self, x: &[f64]) -> bool {
        SupportSet::of(x).len() <= self.0
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic iterator over the `k`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Euclidean projection onto `{‖x‖₀ ≤ s}`: keeps the `s` largest magnitudes,
/// preferring the smaller index among equal magnitudes.
pub fn project_sparse(x: &[f64], s: SparseBudget) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| {
        libm::fabs(x[b])
            .partial_cmp(&libm::fabs(x[a]))
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut out = alloc::vec![0.0; x.len()];
    for &i in order.iter().take(s.get()) {
        out[i] = x[i];
    }
    out
}

/// All super supports `J ⊇ S_1(x)` with `|J| = s`, in lexicographic order.
pub fn super_supports(x: &[f64], s: SparseBudget) -> Result<Vec<SupportSet>> {
    let supp = SupportSet::of(x);
    let s = s.get();
    if supp.len() > s {
        return Err(domain!(
            "point has {} nonzeros, more than the bound s={}",
            supp.len(),
            s
        ));
    }
    let free = supp.complement();
    let mut out: Vec<SupportSet> = Combinations::new(free.len(), s - supp.len())
        .map(|combo| {
            let mut idx: Vec<usize> = supp.indices().to_vec();
            idx.extend(combo.iter().map(|&c| free.indices()[c]));
            idx.sort_unstable();
            SupportSet { indices: idx, n: x.len() }
        })
        .collect();
    out.sort();
    Ok(out)
}
