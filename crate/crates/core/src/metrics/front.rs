use alloc::vec::Vec;

use crate::dominance::dominates_unchecked;
use crate::error::data;
use crate::{Result, SupportSet};

/// One front row: objective values and, optionally, the point behind them.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontRow {
    pub f: Vec<f64>,
    pub x: Option<Vec<f64>>,
    pub support: Option<SupportSet>,
}

impl FrontRow {
    pub fn values(f: Vec<f64>) -> Self {
        Self {
            f,
            x: None,
            support: None,
        }
    }
}

/// Rows of finite objective vectors of a common length.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Front {
    rows: Vec<FrontRow>,
}

impl Front {
    pub fn new(rows: Vec<FrontRow>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let m = first.f.len();
            if m == 0 {
                return Err(data!("front rows need at least one objective"));
            }
            for (i, r) in rows.iter().enumerate() {
                if r.f.len() != m {
                    return Err(data!("row {} has {} objectives, expected {}", i + 1, r.f.len(), m));
                }
                if r.f.iter().any(|v| !v.is_finite()) {
                    return Err(data!("row {} has non-finite objective values", i + 1));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn from_values(values: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(values.into_iter().map(FrontRow::values).collect())
    }

    pub fn rows(&self) -> &[FrontRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<FrontRow> {
        self.rows
    }

    pub fn values(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.iter().map(|r| r.f.as_slice())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of objectives, `None` for an empty front.
    pub fn num_objectives(&self) -> Option<usize> {
        self.rows.first().map(|r| r.f.len())
    }

    /// Rows not dominated by any other row, with exact duplicates of an
    /// earlier row's objective vector removed; order is preserved.
    pub fn nondominated(&self) -> Front {
        let mut keep: Vec<FrontRow> = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let dominated = self.rows.iter().any(|o| dominates_unchecked(&o.f, &r.f));
            let repeated = self.rows[..i].iter().any(|o| o.f == r.f);
            if !dominated && !repeated {
                keep.push(r.clone());
            }
        }
        Front { rows: keep }
    }
}

/// Union of the fronts with dominated rows and exact duplicates removed.
pub fn build_reference_front(fronts: &[Front]) -> Result<Front> {
    let m = fronts.iter().find_map(Front::num_objectives);
    if let Some(m) = m {
        if fronts.iter().any(|f| f.num_objectives().is_some_and(|k| k != m)) {
            return Err(data!("fronts have different numbers of objectives"));
        }
    }
    let rows: Vec<FrontRow> = fronts.iter().flat_map(|f| f.rows.iter().cloned()).collect();
    Ok(Front { rows }.nondominated())
}
