//! Gesture accuracy against a reference trace by greedy time-ordered
//! one-to-one matching.

use crate::types::{GestureEvent, GestureFamily, GestureKind};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub dt_ms: u64,
    pub dist_px: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { dt_ms: 200, dist_px: 30.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{0} events are not sorted by time")]
    UnsortedInput(&'static str),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FamilyCount {
    pub matched: usize,
    pub reference: usize,
    pub candidate: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub tol: Tolerance,
    /// Indexed like [`GestureFamily::COLUMNS`].
    pub families: [FamilyCount; 5],
}

fn column(f: GestureFamily) -> usize {
    GestureFamily::COLUMNS.iter().position(|c| *c == f).unwrap_or(0)
}

impl EvalReport {
    pub fn count(&self, f: GestureFamily) -> FamilyCount {
        self.families[column(f)]
    }

    /// Percentage of reference events of the family that were matched;
    /// `None` when the reference has none.
    pub fn accuracy(&self, f: GestureFamily) -> Option<f64> {
        let c = self.count(f);
        (c.reference > 0).then(|| 100.0 * c.matched as f64 / c.reference as f64)
    }

    pub fn matched(&self) -> usize {
        self.families.iter().map(|c| c.matched).sum()
    }

    pub fn reference(&self) -> usize {
        self.families.iter().map(|c| c.reference).sum()
    }

    pub fn recognition_accuracy(&self) -> Option<f64> {
        let r = self.reference();
        (r > 0).then(|| self.matched() as f64 / r as f64)
    }

    pub fn miss_rate(&self) -> Option<f64> {
        self.recognition_accuracy().map(|a| 1.0 - a)
    }
}

/// Positions must agree when both events carry them: click positions, and
/// both endpoints of cut segments.
fn positions_agree(a: &GestureKind, b: &GestureKind, dist_px: f64) -> bool {
    match (a, b) {
        (GestureKind::Click { pos: p }, GestureKind::Click { pos: q }) => p.distance(*q) <= dist_px,
        (GestureKind::CutEnd { seg: s }, GestureKind::CutEnd { seg: r }) => {
            s[0].distance(r[0]) <= dist_px && s[1].distance(r[1]) <= dist_px
        }
        _ => true,
    }
}

fn check_sorted(events: &[GestureEvent], which: &'static str) -> Result<(), EvalError> {
    if events.windows(2).all(|w| w[0].t <= w[1].t) {
        Ok(())
    } else {
        Err(EvalError::UnsortedInput(which))
    }
}

/// Greedy matching: each reference event, in time order, takes the earliest
/// unmatched candidate of the same kind within tolerance. Returns
/// `(reference index, candidate index)` pairs.
pub fn match_events(
    candidate: &[GestureEvent],
    reference: &[GestureEvent],
    tol: Tolerance,
) -> Result<Vec<(usize, usize)>, EvalError> {
    check_sorted(candidate, "candidate")?;
    check_sorted(reference, "reference")?;
    let mut taken = vec![false; candidate.len()];
    let mut pairs = Vec::new();
    for (ri, r) in reference.iter().enumerate() {
        let lo = candidate.partition_point(|c| c.t + tol.dt_ms < r.t);
        let found = candidate[lo..]
            .iter()
            .enumerate()
            .take_while(|(_, c)| c.t <= r.t.saturating_add(tol.dt_ms))
            .find(|(i, c)| {
                !taken[lo + i] && c.kind.tag() == r.kind.tag() && positions_agree(&c.kind, &r.kind, tol.dist_px)
            })
            .map(|(i, _)| lo + i);
        if let Some(ci) = found {
            taken[ci] = true;
            pairs.push((ri, ci));
        }
    }
    Ok(pairs)
}

pub fn accuracy_vs_reference(
    candidate: &[GestureEvent],
    reference: &[GestureEvent],
    tol: Tolerance,
) -> Result<EvalReport, EvalError> {
    let pairs = match_events(candidate, reference, tol)?;
    let mut families = [FamilyCount::default(); 5];
    for e in reference {
        families[column(e.kind.family())].reference += 1;
    }
    for e in candidate {
        families[column(e.kind.family())].candidate += 1;
    }
    for (ri, _) in pairs {
        families[column(reference[ri].kind.family())].matched += 1;
    }
    Ok(EvalReport { tol, families })
}
