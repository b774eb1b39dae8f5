use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::coeff::CoefficientRing;
use crate::linalg::GroupDescriptor;

/// Groups indexed by (homological position, internal degree), known on
/// positions `0..=max_position` and degrees in `window`. Zero entries are not
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedModule {
    pub coeff: CoefficientRing,
    pub max_position: usize,
    pub window: (i64, i64),
    #[serde(serialize_with = "entry_list")]
    pub entries: BTreeMap<(usize, i64), GroupDescriptor>,
}

impl BigradedModule {
    pub fn new(coeff: CoefficientRing, max_position: usize, window: (i64, i64)) -> Self {
        BigradedModule { coeff, max_position, window, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, i: usize, t: i64, g: GroupDescriptor) {
        if g.is_zero() {
            self.entries.remove(&(i, t));
        } else {
            self.entries.insert((i, t), g);
        }
    }

    pub fn get(&self, i: usize, t: i64) -> GroupDescriptor {
        self.entries.get(&(i, t)).cloned().unwrap_or_default()
    }

    pub fn in_window(&self, t: i64) -> bool {
        self.window.0 <= t && t <= self.window.1
    }

    /// Positions carrying a nonzero entry somewhere in the window.
    pub fn support_positions(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.entries.keys().map(|&(i, _)| i).collect();
        v.dedup();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries of one position, in increasing degree.
    pub fn row(&self, i: usize) -> Vec<(i64, GroupDescriptor)> {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(&(_, t), g)| (t, g.clone())).collect()
    }
}

impl fmt::Display for BigradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "positions 0..={} window [{}, {}] over {}", self.max_position, self.window.0, self.window.1, self.coeff)?;
        if self.entries.is_empty() {
            return writeln!(f, "  zero");
        }
        for (&(i, t), g) in &self.entries {
            writeln!(f, "  [{i}, {t}] {}", g.format(&self.coeff))?;
        }
        Ok(())
    }
}

/// Serializes a map as a list of `[key, value]` pairs, for keys that text
/// formats cannot use as object keys.
pub(crate) fn entry_list<K: Serialize, V: Serialize, S: Serializer>(map: &BTreeMap<K, V>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(map.iter())
}
