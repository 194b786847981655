//! Comparison of splitting data of two fields prime by prime.

use serde_json::{json, Value};

use super::fingerprint::{entry_json, Fingerprint, PrimeEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EquivMode {
    /// Splitting numbers only.
    G,
    /// Full `(e, f)` multisets.
    Full,
}

impl EquivMode {
    pub fn name(&self) -> &'static str {
        match self {
            EquivMode::G => "g",
            EquivMode::Full => "full",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    EquivalentUpTo(u64),
    DistinguishedAt {
        p: u64,
        left: PrimeEntry,
        right: PrimeEntry,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivVerdict {
    pub mode: EquivMode,
    pub bound: u64,
    pub outcome: Outcome,
    /// Primes not index-safe for at least one side.
    pub excluded: Vec<u64>,
}

impl EquivVerdict {
    pub fn equivalent(&self) -> bool {
        matches!(self.outcome, Outcome::EquivalentUpTo(_))
    }

    pub fn exit_code(&self) -> i32 {
        if self.equivalent() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": 1,
            "mode": self.mode.name(),
            "bound": self.bound,
        });
        let o = v.as_object_mut().unwrap();
        match &self.outcome {
            Outcome::EquivalentUpTo(b) => {
                o.insert("verdict".into(), json!("equivalent"));
                o.insert("up_to".into(), json!(b));
            }
            Outcome::DistinguishedAt { p, left, right } => {
                o.insert("verdict".into(), json!("distinguished"));
                o.insert("p".into(), json!(p));
                o.insert("left".into(), entry_json(left));
                o.insert("right".into(), entry_json(right));
            }
        }
        o.insert("excluded".into(), json!(self.excluded));
        v
    }

    pub fn to_table(&self) -> String {
        let mut s = match &self.outcome {
            Outcome::EquivalentUpTo(b) => {
                format!("equivalent up to {b} (mode {})\n", self.mode.name())
            }
            Outcome::DistinguishedAt { p, left, right } => format!(
                "distinguished at p = {p} (mode {}): {} vs {}\n",
                self.mode.name(),
                describe(left, self.mode),
                describe(right, self.mode)
            ),
        };
        if !self.excluded.is_empty() {
            let ex: Vec<String> = self.excluded.iter().map(u64::to_string).collect();
            s.push_str(&format!("excluded: {}\n", ex.join(", ")));
        }
        s
    }
}

fn describe(e: &PrimeEntry, mode: EquivMode) -> String {
    match (e, mode) {
        (PrimeEntry::Split { g, .. }, EquivMode::G) => format!("g={g}"),
        (PrimeEntry::Split { g, ef }, EquivMode::Full) => {
            let pairs: Vec<String> = ef.iter().map(|(e, f)| format!("({e},{f})")).collect();
            format!("g={g} ef={}", pairs.join(""))
        }
        (PrimeEntry::Skipped(r), _) => format!("skipped ({r})"),
    }
}

/// First prime `≤ min(bounds)` where the two sides differ, skipping primes
/// excluded on either side.
pub fn compare(left: &Fingerprint, right: &Fingerprint, mode: EquivMode) -> EquivVerdict {
    let bound = left.bound.min(right.bound);
    let mut excluded = Vec::new();
    let mut outcome = Outcome::EquivalentUpTo(bound);
    for (p, l) in left.primes.range(..=bound) {
        let Some(r) = right.primes.get(p) else {
            continue;
        };
        let differs = match (l, r) {
            (PrimeEntry::Split { g: g1, ef: e1 }, PrimeEntry::Split { g: g2, ef: e2 }) => {
                match mode {
                    EquivMode::G => g1 != g2,
                    EquivMode::Full => e1 != e2,
                }
            }
            _ => {
                excluded.push(*p);
                false
            }
        };
        if differs && outcome == Outcome::EquivalentUpTo(bound) {
            outcome = Outcome::DistinguishedAt {
                p: *p,
                left: l.clone(),
                right: r.clone(),
            };
        }
    }
    EquivVerdict {
        mode,
        bound,
        outcome,
        excluded,
    }
}
