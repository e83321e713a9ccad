use std::collections::HashMap;

use crate::error::{Error, Result};

/// A sample of n (first object, second object) index pairs with optional
/// labels. For drug-target data the first id indexes the drug table and the
/// second the target table; a homogeneous sample indexes one shared table
/// with both slots.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSample {
    first_ids: Vec<usize>,
    second_ids: Vec<usize>,
    labels: Option<Vec<f64>>,
    homogeneous: bool,
}

impl PairSample {
    pub fn new(
        first_ids: Vec<usize>,
        second_ids: Vec<usize>,
        labels: Option<Vec<f64>>,
        homogeneous: bool,
    ) -> Result<Self> {
        if second_ids.len() != first_ids.len() {
            return Err(Error::LengthMismatch {
                context: "pair sample second ids",
                expected: first_ids.len(),
                got: second_ids.len(),
            });
        }
        if let Some(y) = &labels {
            if y.len() != first_ids.len() {
                return Err(Error::LengthMismatch {
                    context: "pair sample labels",
                    expected: first_ids.len(),
                    got: y.len(),
                });
            }
        }
        Ok(Self {
            first_ids,
            second_ids,
            labels,
            homogeneous,
        })
    }

    pub fn len(&self) -> usize {
        self.first_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first_ids.is_empty()
    }

    pub fn first_ids(&self) -> &[usize] {
        &self.first_ids
    }

    pub fn second_ids(&self) -> &[usize] {
        &self.second_ids
    }

    pub fn labels(&self) -> Option<&[f64]> {
        self.labels.as_deref()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        (self.first_ids[i], self.second_ids[i])
    }

    /// New sample keeping only the pairs at `indices`, labels included.
    /// Object ids are left untouched; callers relabel where needed.
    pub fn subset(&self, indices: &[usize]) -> PairSample {
        let first = indices.iter().map(|&i| self.first_ids[i]).collect();
        let second = indices.iter().map(|&i| self.second_ids[i]).collect();
        let labels = self
            .labels
            .as_ref()
            .map(|y| indices.iter().map(|&i| y[i]).collect());
        PairSample {
            first_ids: first,
            second_ids: second,
            labels,
            homogeneous: self.homogeneous,
        }
    }

    pub fn max_first_id(&self) -> Option<usize> {
        self.first_ids.iter().copied().max()
    }

    pub fn max_second_id(&self) -> Option<usize> {
        self.second_ids.iter().copied().max()
    }
}

/// Result of compacting an id sequence onto 0..unique_count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactIds {
    /// Same length as the input; each entry is the compact id of the original.
    pub compact: Vec<usize>,
    /// Original ids in first-occurrence order; `unique[compact[i]] == ids[i]`.
    pub unique: Vec<usize>,
}

impl CompactIds {
    pub fn unique_count(&self) -> usize {
        self.unique.len()
    }
}

/// Relabel an id sequence onto a dense 0-based range, preserving
/// first-occurrence order. This is what keeps the vec-trick inner loops
/// running over unique objects only.
pub fn relabel_compact(ids: &[usize]) -> CompactIds {
    let mut unique = Vec::new();
    let mut seen: HashMap<usize, usize> = HashMap::with_capacity(ids.len());
    let compact = ids
        .iter()
        .map(|&id| {
            *seen.entry(id).or_insert_with(|| {
                unique.push(id);
                unique.len() - 1
            })
        })
        .collect();
    CompactIds { compact, unique }
}
