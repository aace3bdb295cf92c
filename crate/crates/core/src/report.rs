//! Structured results of axiom and theorem checks.

use std::collections::BTreeMap;

use crate::incidence::{LineId, LineSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// The check could not be evaluated because something it relies on
    /// does not hold; the counterexample names the dependency.
    DependencyUnmet,
}

/// Named lines and line sets that exhibit (or witness) a property.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    /// Short machine-readable name of the violated (or witnessed) condition.
    pub tag: String,
    pub description: String,
    pub lines: Vec<(String, LineId)>,
    pub sets: Vec<(String, LineSet)>,
}

impl Witness {
    pub fn new(tag: &str, description: impl Into<String>) -> Self {
        Witness {
            tag: tag.to_string(),
            description: description.into(),
            ..Default::default()
        }
    }

    pub fn with_line(mut self, name: &str, l: LineId) -> Self {
        self.lines.push((name.to_string(), l));
        self
    }

    pub fn with_set(mut self, name: &str, s: LineSet) -> Self {
        self.sets.push((name.to_string(), s));
        self
    }

    pub fn line(&self, name: &str) -> Option<LineId> {
        self.lines.iter().find(|(n, _)| n == name).map(|(_, l)| *l)
    }

    pub fn set(&self, name: &str) -> Option<&LineSet> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub cases_examined: u64,
    /// Set when some quantifier was sampled rather than exhausted.
    pub sampling_seed: Option<u64>,
    pub counts: BTreeMap<String, u64>,
}

impl Stats {
    pub fn count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.counts.get(key).copied()
    }

    /// Tracks the running minimum and maximum of `value` under `key_min`/`key_max`.
    pub fn observe_range(&mut self, key: &str, value: u64) {
        let min = self.counts.entry(format!("{key}_min")).or_insert(value);
        *min = (*min).min(value);
        let max = self.counts.entry(format!("{key}_max")).or_insert(value);
        *max = (*max).max(value);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check_name: String,
    pub outcome: Outcome,
    pub counterexample: Option<Witness>,
    pub witness_sample: Vec<Witness>,
    pub stats: Stats,
}

impl CheckReport {
    pub fn pass(check_name: &str, stats: Stats) -> Self {
        CheckReport {
            check_name: check_name.to_string(),
            outcome: Outcome::Pass,
            counterexample: None,
            witness_sample: Vec::new(),
            stats,
        }
    }

    pub fn fail(check_name: &str, counterexample: Witness, stats: Stats) -> Self {
        CheckReport {
            check_name: check_name.to_string(),
            outcome: Outcome::Fail,
            counterexample: Some(counterexample),
            witness_sample: Vec::new(),
            stats,
        }
    }

    pub fn dependency_unmet(check_name: &str, dependency: &str, detail: impl Into<String>) -> Self {
        let w = Witness::new(
            "dependency_unmet",
            format!("{}: {}", dependency, detail.into()),
        );
        CheckReport {
            check_name: check_name.to_string(),
            outcome: Outcome::DependencyUnmet,
            counterexample: Some(w),
            witness_sample: Vec::new(),
            stats: Stats::default(),
        }
    }

    /// Builds a pass or fail report depending on whether a counterexample was found.
    pub fn from_search(check_name: &str, counterexample: Option<Witness>, stats: Stats) -> Self {
        match counterexample {
            Some(w) => Self::fail(check_name, w, stats),
            None => Self::pass(check_name, stats),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn with_samples(mut self, samples: Vec<Witness>) -> Self {
        self.witness_sample = samples;
        self
    }
}
