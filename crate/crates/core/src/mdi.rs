//! Minimal directed independence maps relative to a node ordering.
//!
//! The percolation methods ([`Method::A`], [`Method::B`], [`Method::A2`],
//! [`Method::B2`]) transform a DAG into the MDI map of its independence
//! model relative to `alpha` through arc additions and covered arc
//! reversals, starting from an ordering built by [`construct_beta`].
//! [`mdi_bruteforce`] and [`mdi_iamb`] compute the same map directly from
//! separation statements and serve as independent checks.

use std::fmt;

use crate::dag::{Arc, Dag, NodeId, NodeOrder};
use crate::error::{Error, Result};
use crate::separation::Separator;

/// Default node limit for [`mdi_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 12;

/// How [`construct_beta`] picks the next sink of the residual graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// The rightmost sink in `alpha`. With this rule every method returns
    /// the MDI map.
    #[default]
    Corrected,
    /// The sink with the highest node index. On the five-node
    /// counterexample declared as I, J, K, L, M this selects M, L, K, J, I
    /// and reproduces the failing run.
    LegacyTrace,
    /// The first listed node that is currently a sink; falls back to the
    /// [`TieBreak::LegacyTrace`] rule when none of them is.
    Scripted(Vec<NodeId>),
}

impl TieBreak {
    fn check(&self, n: usize) -> Result<()> {
        if let TieBreak::Scripted(list) = self {
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidNode { index: v, n });
            }
        }
        Ok(())
    }
}

/// The percolation variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    A,
    B,
    A2,
    B2,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::A, Method::B, Method::A2, Method::B2];
}

/// One modification performed by a method, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// An arc added while covering.
    Add(Arc),
    /// A covered arc replaced by its reversal.
    Reverse(Arc),
    /// Two neighbors interchanged in the working ordering, left one first.
    Swap(NodeId, NodeId),
}

impl Step {
    /// The step as a trace line such as `ADD I J`.
    pub fn display<'a>(&'a self, dag: &'a Dag) -> impl fmt::Display + 'a {
        StepLine { step: self, dag }
    }
}

struct StepLine<'a> {
    step: &'a Step,
    dag: &'a Dag,
}

impl fmt::Display for StepLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kw, a, b) = match *self.step {
            Step::Add(arc) => ("ADD", arc.from, arc.to),
            Step::Reverse(arc) => ("REVERSE", arc.from, arc.to),
            Step::Swap(a, b) => ("SWAP", a, b),
        };
        write!(f, "{kw} {} {}", self.dag.name(a), self.dag.name(b))
    }
}

/// Result of a percolation run.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub dag: Dag,
    /// The ordering returned by [`construct_beta`].
    pub initial_beta: NodeOrder,
    pub steps: Vec<Step>,
}

/// An ordering consistent with `g` and as close to `alpha` as possible.
pub fn construct_beta(g: &Dag, alpha: &NodeOrder, tie: &TieBreak) -> Result<NodeOrder> {
    g.require_order(alpha)?;
    tie.check(g.n())?;
    let n = g.n();
    let mut outdeg: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let mut removed = vec![false; n];
    let is_sink = |v: NodeId, outdeg: &[usize], removed: &[bool]| !removed[v] && outdeg[v] == 0;
    let highest = |outdeg: &[usize], removed: &[bool]| (0..n).rev().find(|&v| is_sink(v, outdeg, removed));

    let mut beta: Vec<NodeId> = Vec::with_capacity(n);
    for _ in 0..n {
        let sink = match tie {
            TieBreak::Corrected => alpha
                .nodes()
                .iter()
                .rev()
                .copied()
                .find(|&v| is_sink(v, &outdeg, &removed)),
            TieBreak::LegacyTrace => highest(&outdeg, &removed),
            TieBreak::Scripted(list) => list
                .iter()
                .copied()
                .find(|&v| is_sink(v, &outdeg, &removed))
                .or_else(|| highest(&outdeg, &removed)),
        }
        .expect("a DAG always has a sink");

        beta.insert(0, sink);
        let mut i = 0;
        while i + 1 < beta.len() {
            let right = beta[i + 1];
            if !g.has_arc(sink, right) && alpha.position(sink) > alpha.position(right) {
                beta.swap(i, i + 1);
                i += 1;
            } else {
                break;
            }
        }

        removed[sink] = true;
        for p in g.parents(sink) {
            outdeg[p] -= 1;
        }
    }
    Ok(NodeOrder::from_perm_unchecked(beta))
}

struct Percolation<'a> {
    g: Dag,
    beta: NodeOrder,
    alpha: &'a NodeOrder,
    steps: Vec<Step>,
}

impl Percolation<'_> {
    fn cover_and_reverse(&mut self, arc: Arc) {
        for added in self.g.covering_arcs(arc, &self.beta) {
            self.g.add_arc_unchecked(added);
            self.steps.push(Step::Add(added));
        }
        self.g.reverse_unchecked(arc);
        self.steps.push(Step::Reverse(arc));
    }

    /// Interchanges the nodes at positions `i` and `i + 1`.
    fn interchange(&mut self, i: usize) {
        let (l, r) = (self.beta.node_at(i), self.beta.node_at(i + 1));
        self.beta.swap_positions(i, i + 1);
        self.steps.push(Step::Swap(l, r));
    }

    #[inline]
    fn alpha_pos(&self, i: usize) -> usize {
        self.alpha.position(self.beta.node_at(i))
    }

    fn done(&self) -> bool {
        self.beta.nodes() == self.alpha.nodes()
    }

    /// Moves the node at position `i` leftwards while its left neighbor is
    /// later in `alpha`, covering and reversing `Z -> Y` where present.
    fn percolate_left(&mut self, mut i: usize) {
        while i > 0 && self.alpha_pos(i - 1) > self.alpha_pos(i) {
            let (z, y) = (self.beta.node_at(i - 1), self.beta.node_at(i));
            if self.g.has_arc(z, y) {
                self.cover_and_reverse(Arc::new(z, y));
            }
            self.interchange(i - 1);
            i -= 1;
        }
    }

    /// Moves the node at position `i` rightwards while its right neighbor
    /// is earlier in `alpha`, covering and reversing `Y -> Z` where present.
    fn percolate_right(&mut self, mut i: usize) {
        let n = self.beta.len();
        while i + 1 < n && self.alpha_pos(i + 1) < self.alpha_pos(i) {
            let (y, z) = (self.beta.node_at(i), self.beta.node_at(i + 1));
            if self.g.has_arc(y, z) {
                self.cover_and_reverse(Arc::new(y, z));
            }
            self.interchange(i);
            i += 1;
        }
    }

    fn method_a(&mut self) {
        let n = self.beta.len();
        while let Some(i) = (1..n).find(|&i| self.alpha_pos(i - 1) > self.alpha_pos(i)) {
            self.percolate_left(i);
        }
    }

    fn method_b(&mut self) {
        let n = self.beta.len();
        while let Some(i) = (0..n.saturating_sub(1)).find(|&i| self.alpha_pos(i + 1) < self.alpha_pos(i)) {
            self.percolate_right(i);
        }
    }

    fn method_a2(&mut self) {
        // The nodes considered so far always occupy the leftmost positions,
        // so the leftmost unconsidered node sits at position k.
        for k in 0..self.beta.len() {
            if self.done() {
                break;
            }
            self.percolate_left(k);
        }
    }

    fn method_b2(&mut self) {
        let n = self.beta.len();
        for k in (0..n).rev() {
            if self.done() {
                break;
            }
            let y = self.alpha.node_at(k);
            self.percolate_right(self.beta.position(y));
        }
    }
}

/// Runs one percolation method and records every modification.
pub fn run_method(method: Method, g: &Dag, alpha: &NodeOrder, tie: &TieBreak) -> Result<MethodRun> {
    let beta = construct_beta(g, alpha, tie)?;
    let mut p = Percolation {
        g: g.clone(),
        beta: beta.clone(),
        alpha,
        steps: Vec::new(),
    };
    match method {
        Method::A => p.method_a(),
        Method::B => p.method_b(),
        Method::A2 => p.method_a2(),
        Method::B2 => p.method_b2(),
    }
    debug_assert!(p.done());
    debug_assert!(p.g.is_acyclic());
    Ok(MethodRun {
        dag: p.g,
        initial_beta: beta,
        steps: p.steps,
    })
}

pub fn method_a(g: &Dag, alpha: &NodeOrder, tie: &TieBreak) -> Result<Dag> {
    run_method(Method::A, g, alpha, tie).map(|r| r.dag)
}

pub fn method_b(g: &Dag, alpha: &NodeOrder, tie: &TieBreak) -> Result<Dag> {
    run_method(Method::B, g, alpha, tie).map(|r| r.dag)
}

pub fn method_a2(g: &Dag, alpha: &NodeOrder, tie: &TieBreak) -> Result<Dag> {
    run_method(Method::A2, g, alpha, tie).map(|r| r.dag)
}

/// The reference construction used by consensus and transformation code.
pub fn method_b2(g: &Dag, alpha: &NodeOrder, tie: &TieBreak) -> Result<Dag> {
    run_method(Method::B2, g, alpha, tie).map(|r| r.dag)
}

/// The MDI map of `g` relative to `alpha`.
pub fn mdi_map(g: &Dag, alpha: &NodeOrder) -> Result<Dag> {
    method_b2(g, alpha, &TieBreak::Corrected)
}

/// Advances `idx` to the next `k`-combination of `0..m` in lexicographic
/// order; false when exhausted.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Parents of each node are the smallest `X` within its `alpha`
/// predecessors with `A _|_ Pre(A) \ X | X`, found by exhaustive search
/// over subsets of increasing size.
pub fn mdi_bruteforce(g: &Dag, alpha: &NodeOrder) -> Result<Dag> {
    mdi_bruteforce_limited(g, alpha, BRUTEFORCE_LIMIT)
}

pub fn mdi_bruteforce_limited(g: &Dag, alpha: &NodeOrder, limit: usize) -> Result<Dag> {
    g.require_order(alpha)?;
    if g.n() > limit {
        return Err(Error::SizeLimit {
            what: "brute-force MDI map",
            limit,
            n: g.n(),
        });
    }
    let sep = Separator::new(g);
    let mut arcs = Vec::new();
    for &a in alpha.nodes() {
        let pre = alpha.predecessors(a);
        let m = pre.len();
        'sizes: for size in 0..=m {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let chosen: Vec<NodeId> = idx.iter().map(|&i| pre[i]).collect();
                let rest: Vec<NodeId> = pre.iter().copied().filter(|v| !chosen.contains(v)).collect();
                if sep.separated(&[a], &rest, &chosen) {
                    arcs.extend(chosen.iter().map(|&p| Arc::new(p, a)));
                    break 'sizes;
                }
                if !next_combination(&mut idx, m) {
                    break;
                }
            }
        }
    }
    Dag::new(g.names().to_vec(), &arcs)
}

/// Parents of each node found by the grow/shrink Markov boundary search
/// restricted to its `alpha` predecessors. Candidates are scanned in
/// ascending `alpha` position.
pub fn mdi_iamb(g: &Dag, alpha: &NodeOrder) -> Result<Dag> {
    g.require_order(alpha)?;
    let sep = Separator::new(g);
    let n = g.n();
    let mut arcs = Vec::new();
    let mut in_pa = vec![false; n];
    for &a in alpha.nodes() {
        let pre = alpha.predecessors(a);
        let mut pa: Vec<NodeId> = Vec::new();
        loop {
            let mut changed = false;
            for &b in pre {
                if !in_pa[b] && !sep.separated(&[a], &[b], &pa) {
                    in_pa[b] = true;
                    pa.push(b);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for b in pa.clone() {
            let others: Vec<NodeId> = pa.iter().copied().filter(|&v| v != b).collect();
            if sep.separated(&[a], &[b], &others) {
                pa.retain(|&v| v != b);
                in_pa[b] = false;
            }
        }
        for &p in &pa {
            in_pa[p] = false;
            arcs.push(Arc::new(p, a));
        }
    }
    Dag::new(g.names().to_vec(), &arcs)
}
