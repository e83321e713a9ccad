//! Train/test splitters for the four evaluation settings, plus the matching
//! inner/validation split used by early stopping.
//!
//! Setting 1 splits pair indices; setting 2 holds out whole targets;
//! setting 3 holds out whole drugs; setting 4 holds out drug groups and
//! target groups jointly, ignoring pairs that share exactly one side with
//! the held-out block.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{relabel_compact, PairSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Setting {
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
}

impl Setting {
    pub fn from_u8(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Setting::One),
            2 => Ok(Setting::Two),
            3 => Ok(Setting::Three),
            4 => Ok(Setting::Four),
            other => Err(Error::BadSetting(other)),
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }
}

/// Disjoint train/validation/test/ignored partition of pair indices.
/// `validation` is empty until `inner_split` carves it out of `train`.
/// `held_drugs`/`held_targets` record the object groups the fold holds out
/// (empty where the setting holds out no objects on that side).
#[derive(Debug, Clone)]
pub struct SplitPlan {
    pub setting: Setting,
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
    pub ignored: Vec<usize>,
    pub held_drugs: Vec<usize>,
    pub held_targets: Vec<usize>,
    pub seed: u64,
}

fn shuffled(mut items: Vec<usize>, rng: &mut ChaCha8Rng) -> Vec<usize> {
    items.shuffle(rng);
    items
}

/// Balanced slice of a shuffled list into `folds` chunks; chunk `index`.
fn fold_chunk(items: &[usize], folds: usize, index: usize) -> &[usize] {
    let base = items.len() / folds;
    let extra = items.len() % folds;
    let start = index * base + index.min(extra);
    let len = base + usize::from(index < extra);
    &items[start..start + len]
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let s = (n as f64).sqrt().round() as usize;
    (s * s == n).then_some(s)
}

/// One fold of a `fold_count`-fold cross-validation split under the given
/// setting. The shuffle is a pure function of `seed`, so sweeping
/// `fold_index` over `0..fold_count` partitions the data.
pub fn split_setting(
    sample: &PairSample,
    setting: Setting,
    fold_count: usize,
    fold_index: usize,
    seed: u64,
) -> Result<SplitPlan> {
    if fold_count < 2 {
        return Err(Error::BadFoldCount(fold_count));
    }
    if fold_index >= fold_count {
        return Err(Error::FoldIndexOutOfRange {
            index: fold_index,
            folds: fold_count,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sample.len();
    let mut plan = SplitPlan {
        setting,
        train: Vec::new(),
        validation: Vec::new(),
        test: Vec::new(),
        ignored: Vec::new(),
        held_drugs: Vec::new(),
        held_targets: Vec::new(),
        seed,
    };

    match setting {
        Setting::One => {
            if n < fold_count {
                return Err(Error::TooFewObjects(format!(
                    "{n} pairs for {fold_count} folds"
                )));
            }
            let order = shuffled((0..n).collect(), &mut rng);
            let held: HashSet<usize> = fold_chunk(&order, fold_count, fold_index)
                .iter()
                .copied()
                .collect();
            for i in 0..n {
                if held.contains(&i) {
                    plan.test.push(i);
                } else {
                    plan.train.push(i);
                }
            }
        }
        Setting::Two | Setting::Three => {
            let ids = if setting == Setting::Two {
                sample.second_ids()
            } else {
                sample.first_ids()
            };
            let unique = relabel_compact(ids).unique;
            if unique.len() < fold_count {
                return Err(Error::TooFewObjects(format!(
                    "{} unique objects for {fold_count} folds",
                    unique.len()
                )));
            }
            let order = shuffled(unique, &mut rng);
            let held: HashSet<usize> = fold_chunk(&order, fold_count, fold_index)
                .iter()
                .copied()
                .collect();
            for i in 0..n {
                if held.contains(&ids[i]) {
                    plan.test.push(i);
                } else {
                    plan.train.push(i);
                }
            }
            let mut held: Vec<usize> = held.into_iter().collect();
            held.sort_unstable();
            if setting == Setting::Two {
                plan.held_targets = held;
            } else {
                plan.held_drugs = held;
            }
        }
        Setting::Four => {
            let side = integer_sqrt(fold_count).ok_or(Error::FoldCountNotSquare(fold_count))?;
            let drugs = relabel_compact(sample.first_ids()).unique;
            let targets = relabel_compact(sample.second_ids()).unique;
            if drugs.len() < side || targets.len() < side {
                return Err(Error::TooFewObjects(format!(
                    "{} drugs / {} targets for {side}x{side} groups",
                    drugs.len(),
                    targets.len()
                )));
            }
            let drug_order = shuffled(drugs, &mut rng);
            let target_order = shuffled(targets, &mut rng);
            let held_drugs: HashSet<usize> = fold_chunk(&drug_order, side, fold_index / side)
                .iter()
                .copied()
                .collect();
            let held_targets: HashSet<usize> = fold_chunk(&target_order, side, fold_index % side)
                .iter()
                .copied()
                .collect();
            for i in 0..n {
                let d_held = held_drugs.contains(&sample.first_ids()[i]);
                let t_held = held_targets.contains(&sample.second_ids()[i]);
                match (d_held, t_held) {
                    (true, true) => plan.test.push(i),
                    (false, false) => plan.train.push(i),
                    _ => plan.ignored.push(i),
                }
            }
            plan.held_drugs = held_drugs.into_iter().collect();
            plan.held_drugs.sort_unstable();
            plan.held_targets = held_targets.into_iter().collect();
            plan.held_targets.sort_unstable();
        }
    }
    Ok(plan)
}

fn rounded_count(fraction: f64, total: usize) -> usize {
    ((fraction * total as f64).round() as usize).clamp(1, total - 1)
}

/// Split the training indices into (inner, validation) with roughly
/// `fraction` of the split unit going to inner, honoring the setting's
/// object-disjointness rule. Under setting 4 pairs sharing exactly one side
/// with the validation block belong to neither set.
pub fn inner_split(
    sample: &PairSample,
    train: &[usize],
    setting: Setting,
    fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::BadFraction(fraction));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let split_objects = |ids: Vec<usize>, rng: &mut ChaCha8Rng| -> Result<HashSet<usize>> {
        if ids.len() < 2 {
            return Err(Error::TooFewObjects(format!(
                "{} unique objects for an inner split",
                ids.len()
            )));
        }
        let take = rounded_count(fraction, ids.len());
        let order = shuffled(ids, rng);
        Ok(order[..take].iter().copied().collect())
    };

    let mut inner = Vec::new();
    let mut validation = Vec::new();
    match setting {
        Setting::One => {
            if train.len() < 2 {
                return Err(Error::TooFewObjects(format!(
                    "{} training pairs for an inner split",
                    train.len()
                )));
            }
            let order = shuffled(train.to_vec(), &mut rng);
            let take = rounded_count(fraction, order.len());
            inner = order[..take].to_vec();
            validation = order[take..].to_vec();
        }
        Setting::Two | Setting::Three => {
            let ids: Vec<usize> = if setting == Setting::Two {
                train.iter().map(|&i| sample.second_ids()[i]).collect()
            } else {
                train.iter().map(|&i| sample.first_ids()[i]).collect()
            };
            let inner_objects = split_objects(relabel_compact(&ids).unique, &mut rng)?;
            for (&i, id) in train.iter().zip(&ids) {
                if inner_objects.contains(id) {
                    inner.push(i);
                } else {
                    validation.push(i);
                }
            }
        }
        Setting::Four => {
            let drug_ids: Vec<usize> = train.iter().map(|&i| sample.first_ids()[i]).collect();
            let target_ids: Vec<usize> = train.iter().map(|&i| sample.second_ids()[i]).collect();
            let inner_drugs = split_objects(relabel_compact(&drug_ids).unique, &mut rng)?;
            let inner_targets = split_objects(relabel_compact(&target_ids).unique, &mut rng)?;
            for ((&i, d), t) in train.iter().zip(&drug_ids).zip(&target_ids) {
                match (inner_drugs.contains(d), inner_targets.contains(t)) {
                    (true, true) => inner.push(i),
                    (false, false) => validation.push(i),
                    _ => {} // one side held out: usable by neither slice
                }
            }
        }
    }
    inner.sort_unstable();
    validation.sort_unstable();
    Ok((inner, validation))
}
