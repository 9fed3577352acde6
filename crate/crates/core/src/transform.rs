//! Turning a DAG into one of its independence maps by arc additions and
//! covered arc reversals.

use std::fmt;

use crate::consensus::is_imap_of;
use crate::dag::{Arc, Dag, NodeOrder};
use crate::error::{Error, Result};
use crate::mdi::{construct_beta, run_method, Method, Step, TieBreak};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformStep {
    Add(Arc),
    /// Reversal of an arc that is covered when the step is applied.
    ReverseCovered(Arc),
}

impl TransformStep {
    pub fn arc(&self) -> Arc {
        match *self {
            TransformStep::Add(a) | TransformStep::ReverseCovered(a) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformTrace {
    pub start: Dag,
    pub end: Dag,
    pub steps: Vec<TransformStep>,
}

impl TransformTrace {
    pub fn additions(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, TransformStep::Add(_))).count()
    }

    pub fn reversals(&self) -> usize {
        self.steps.len() - self.additions()
    }
}

/// Why [`validate_trace`] rejected a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceViolation {
    /// Before any step, `I(h)` is not contained in `I(start)`.
    StartNotIMap,
    /// Step `index` (zero based) could not be applied or broke the
    /// containment.
    Step { index: usize, kind: StepFault },
    /// Replay finished on a graph other than `h`.
    FinalMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepFault {
    /// Added arc already present, a self arc, or an unknown node.
    BadAddition,
    /// The resulting graph has a directed cycle.
    Cycle,
    /// The reversed arc is missing.
    MissingArc,
    /// The reversed arc is not covered.
    NotCovered,
    /// `I(h)` is no longer contained in the current model.
    LostIMap,
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceViolation::StartNotIMap => write!(f, "target is not an independence map of the start graph"),
            TraceViolation::Step { index, kind } => {
                let what = match kind {
                    StepFault::BadAddition => "invalid addition",
                    StepFault::Cycle => "directed cycle",
                    StepFault::MissingArc => "reversed arc missing",
                    StepFault::NotCovered => "reversed arc not covered",
                    StepFault::LostIMap => "target no longer an independence map",
                };
                write!(f, "step {}: {what}", index + 1)
            }
            TraceViolation::FinalMismatch => write!(f, "final graph differs from the target"),
        }
    }
}

impl std::error::Error for TraceViolation {}

/// A sequence of additions and covered reversals turning `g` into `h`.
///
/// Requires `I(h)` to be contained in `I(g)`. The MDI map of `g` relative
/// to an ordering consistent with `h` is reached by the percolation steps,
/// and the remaining arcs of `h` are then added in ordering position of
/// head, then tail.
pub fn g2h(g: &Dag, h: &Dag) -> Result<TransformTrace> {
    g.require_same_nodes(h)?;
    if !is_imap_of(h, g)? {
        return Err(Error::NotAnIMap);
    }
    let alpha = construct_beta(h, &NodeOrder::identity(h.n()), &TieBreak::Corrected)?;
    let run = run_method(Method::B2, g, &alpha, &TieBreak::Corrected)?;
    let mut steps: Vec<TransformStep> = run
        .steps
        .iter()
        .filter_map(|s| match *s {
            Step::Add(a) => Some(TransformStep::Add(a)),
            Step::Reverse(a) => Some(TransformStep::ReverseCovered(a)),
            Step::Swap(..) => None,
        })
        .collect();
    debug_assert!(run.dag.is_subgraph_of(h));
    let mut missing: Vec<Arc> = h
        .arcs()
        .into_iter()
        .filter(|a| !run.dag.has_arc(a.from, a.to))
        .collect();
    missing.sort_by_key(|a| (alpha.position(a.to), alpha.position(a.from)));
    steps.extend(missing.into_iter().map(TransformStep::Add));
    Ok(TransformTrace {
        start: g.clone(),
        end: h.clone(),
        steps,
    })
}

/// Replays `tr` from its start graph and checks every step.
pub fn validate_trace(tr: &TransformTrace, h: &Dag) -> std::result::Result<(), TraceViolation> {
    let mut cur = tr.start.clone();
    if !cur.same_nodes(h) {
        return Err(TraceViolation::FinalMismatch);
    }
    if !is_imap_of(h, &cur).unwrap_or(false) {
        return Err(TraceViolation::StartNotIMap);
    }
    for (index, step) in tr.steps.iter().enumerate() {
        let fail = |kind| TraceViolation::Step { index, kind };
        let next = match *step {
            TransformStep::Add(a) => match cur.with_arc(a) {
                Ok(d) => d,
                Err(Error::Cycle) => return Err(fail(StepFault::Cycle)),
                Err(_) => return Err(fail(StepFault::BadAddition)),
            },
            TransformStep::ReverseCovered(a) => match cur.reverse_covered_arc(a) {
                Ok(d) => d,
                Err(Error::NotCovered(..)) => return Err(fail(StepFault::NotCovered)),
                Err(Error::Cycle) => return Err(fail(StepFault::Cycle)),
                Err(_) => return Err(fail(StepFault::MissingArc)),
            },
        };
        if !is_imap_of(h, &next).unwrap_or(false) {
            return Err(fail(StepFault::LostIMap));
        }
        cur = next;
    }
    if cur != *h {
        return Err(TraceViolation::FinalMismatch);
    }
    Ok(())
}
