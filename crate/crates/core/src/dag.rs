//! DAG representation and the arc calculus: covering, covered reversal,
//! parameter counting, descendants, consistency with node orderings and
//! Markov equivalence.
//!
//! Graphs are stored as dense adjacency matrices. Every public constructor
//! and mutator validates acyclicity; the `pub(crate)` `*_unchecked`
//! mutators exist for the percolation methods, whose intermediate states
//! are acyclic by construction.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Index of a node within a node-set context.
pub type NodeId = usize;

type Names = std::sync::Arc<[String]>;

/// A directed arc `from -> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
}

impl Arc {
    pub fn new(from: NodeId, to: NodeId) -> Self {
        Arc { from, to }
    }

    pub fn reversed(self) -> Self {
        Arc {
            from: self.to,
            to: self.from,
        }
    }
}

impl From<(NodeId, NodeId)> for Arc {
    fn from((from, to): (NodeId, NodeId)) -> Self {
        Arc { from, to }
    }
}

/// A directed acyclic graph over a fixed, labelled node set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dag {
    n: usize,
    adj: Vec<bool>,
    names: Names,
}

fn validate_names(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for name in names {
        if name.is_empty() || name.starts_with('#') || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateNode(name.clone()));
        }
    }
    Ok(())
}

/// Default labels `X0, X1, ...` for unnamed graphs.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("X{i}")).collect()
}

impl Dag {
    /// Builds a validated DAG. Rejects self arcs, duplicate arcs, out of
    /// range indices and directed cycles.
    pub fn new(names: Vec<String>, arcs: &[Arc]) -> Result<Dag> {
        validate_names(&names)?;
        let n = names.len();
        let mut adj = vec![false; n * n];
        for arc in arcs {
            for v in [arc.from, arc.to] {
                if v >= n {
                    return Err(Error::InvalidNode { index: v, n });
                }
            }
            if arc.from == arc.to {
                return Err(Error::SelfArc(arc.from));
            }
            let cell = &mut adj[arc.from * n + arc.to];
            if *cell {
                return Err(Error::DuplicateArc(arc.from, arc.to));
            }
            *cell = true;
        }
        let dag = Dag {
            n,
            adj,
            names: names.into(),
        };
        if !dag.is_acyclic() {
            return Err(Error::Cycle);
        }
        Ok(dag)
    }

    /// The graph without arcs over `names`.
    pub fn empty(names: Vec<String>) -> Result<Dag> {
        Dag::new(names, &[])
    }

    /// Builds a DAG over `X0..X{n-1}` from index pairs.
    pub fn from_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Result<Dag> {
        let arcs: Vec<Arc> = pairs.iter().copied().map(Arc::from).collect();
        Dag::new(default_names(n), &arcs)
    }

    /// Builds a DAG from node labels and arcs given by label.
    pub fn from_named(names: &[&str], arcs: &[(&str, &str)]) -> Result<Dag> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let lookup = |s: &str| {
            names
                .iter()
                .position(|m| *m == s)
                .ok_or_else(|| Error::InvalidInput(format!("unknown node `{s}`")))
        };
        let arcs = arcs
            .iter()
            .map(|(a, b)| Ok(Arc::new(lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Dag::new(owned, &arcs)
    }

    /// Builds a DAG from a row-major adjacency matrix sharing `like`'s labels.
    pub(crate) fn from_matrix_like(like: &Dag, adj: Vec<bool>) -> Option<Dag> {
        debug_assert_eq!(adj.len(), like.n * like.n);
        let dag = Dag {
            n: like.n,
            adj,
            names: like.names.clone(),
        };
        dag.is_acyclic().then_some(dag)
    }

    /// The graph over the same node set with no arcs.
    pub fn cleared(&self) -> Dag {
        Dag {
            n: self.n,
            adj: vec![false; self.n * self.n],
            names: self.names.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn has_arc(&self, from: NodeId, to: NodeId) -> bool {
        self.adj[from * self.n + to]
    }

    #[inline]
    pub fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    /// All arcs, sorted by (tail, head) index.
    pub fn arcs(&self) -> Vec<Arc> {
        let n = self.n;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_arc(a, b))
            .map(Arc::from)
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x).count()
    }

    pub fn parents(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n).filter(move |&u| self.has_arc(u, v))
    }

    pub fn children(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n).filter(move |&w| self.has_arc(v, w))
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.parents(v).count()
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.children(v).count()
    }

    /// True when both graphs are over the same labelled node set.
    pub fn same_nodes(&self, other: &Dag) -> bool {
        self.names == other.names
    }

    pub(crate) fn require_same_nodes(&self, other: &Dag) -> Result<()> {
        if self.same_nodes(other) {
            Ok(())
        } else {
            Err(Error::NodeSetMismatch(format!(
                "graphs over {} and {} labelled nodes differ",
                self.n, other.n
            )))
        }
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidNode { index: v, n: self.n })
        }
    }

    pub(crate) fn require_order(&self, order: &NodeOrder) -> Result<()> {
        if order.len() == self.n {
            Ok(())
        } else {
            Err(Error::NodeSetMismatch(format!(
                "ordering over {} nodes for a graph over {}",
                order.len(),
                self.n
            )))
        }
    }

    fn require_arc(&self, arc: Arc) -> Result<()> {
        self.check_node(arc.from)?;
        self.check_node(arc.to)?;
        if self.has_arc(arc.from, arc.to) {
            Ok(())
        } else {
            Err(Error::MissingArc(arc.from, arc.to))
        }
    }

    /// Kahn's algorithm; `None` if the graph has a cycle.
    fn kahn(&self) -> Option<Vec<NodeId>> {
        let n = self.n;
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut ready: Vec<NodeId> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            out.push(v);
            for w in (0..n).rev() {
                if self.has_arc(v, w) {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        (out.len() == n).then_some(out)
    }

    pub(crate) fn is_acyclic(&self) -> bool {
        self.kahn().is_some()
    }

    /// Some topological order of the graph.
    pub fn topological_order(&self) -> NodeOrder {
        let perm = self.kahn().expect("Dag invariant: acyclic");
        NodeOrder::from_perm_unchecked(perm)
    }

    /// True iff every arc points from an earlier to a later position.
    pub fn is_consistent(&self, order: &NodeOrder) -> Result<bool> {
        self.require_order(order)?;
        Ok(self.is_consistent_unchecked(order))
    }

    pub(crate) fn is_consistent_unchecked(&self, order: &NodeOrder) -> bool {
        self.arcs()
            .iter()
            .all(|arc| order.position(arc.from) < order.position(arc.to))
    }

    /// Nodes reachable from `a` by descending routes, `a` included.
    pub fn descendants(&self, a: NodeId) -> Result<BTreeSet<NodeId>> {
        self.check_node(a)?;
        let mask = self.descendant_mask(a);
        Ok((0..self.n).filter(|&v| mask[v]).collect())
    }

    pub(crate) fn descendant_mask(&self, a: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(v) = stack.pop() {
            for w in self.children(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// `from -> to` is covered iff `Pa(from) = Pa(to) \ {from}`.
    pub fn is_covered(&self, arc: Arc) -> Result<bool> {
        self.require_arc(arc)?;
        Ok(self.is_covered_unchecked(arc))
    }

    pub(crate) fn is_covered_unchecked(&self, arc: Arc) -> bool {
        (0..self.n)
            .filter(|&x| x != arc.from)
            .all(|x| self.has_arc(x, arc.from) == self.has_arc(x, arc.to))
    }

    /// The smallest arc set whose addition makes `arc` covered:
    /// `X -> to` for `X in Pa(from) \ Pa(to)` and `X -> from` for
    /// `X in Pa(to) \ (Pa(from) + from)`. Sorted by ascending position of
    /// `X` in `reference`.
    pub(crate) fn covering_arcs(&self, arc: Arc, reference: &NodeOrder) -> Vec<Arc> {
        let Arc { from: y, to: z } = arc;
        let mut added: Vec<Arc> = (0..self.n)
            .filter_map(|x| {
                if x == y || x == z {
                    return None;
                }
                match (self.has_arc(x, y), self.has_arc(x, z)) {
                    (true, false) => Some(Arc::new(x, z)),
                    (false, true) => Some(Arc::new(x, y)),
                    _ => None,
                }
            })
            .collect();
        added.sort_by_key(|a| reference.position(a.from));
        added
    }

    /// Adds the smallest set of arcs that makes `arc` covered. The returned
    /// list records the additions in ascending `reference` position of the
    /// new parent.
    pub fn cover_arc(&self, arc: Arc, reference: &NodeOrder) -> Result<(Dag, Vec<Arc>)> {
        self.require_arc(arc)?;
        self.require_order(reference)?;
        let added = self.covering_arcs(arc, reference);
        let mut out = self.clone();
        for a in &added {
            out.add_arc_unchecked(*a);
        }
        if !out.is_acyclic() {
            return Err(Error::Cycle);
        }
        Ok((out, added))
    }

    /// Replaces a covered arc by its reversal.
    pub fn reverse_covered_arc(&self, arc: Arc) -> Result<Dag> {
        self.require_arc(arc)?;
        if !self.is_covered_unchecked(arc) {
            return Err(Error::NotCovered(arc.from, arc.to));
        }
        let mut out = self.clone();
        out.reverse_unchecked(arc);
        debug_assert!(out.is_acyclic());
        Ok(out)
    }

    /// A copy with `arc` added; fails on duplicates, self arcs and cycles.
    pub fn with_arc(&self, arc: Arc) -> Result<Dag> {
        self.check_node(arc.from)?;
        self.check_node(arc.to)?;
        if arc.from == arc.to {
            return Err(Error::SelfArc(arc.from));
        }
        if self.has_arc(arc.from, arc.to) {
            return Err(Error::DuplicateArc(arc.from, arc.to));
        }
        let mut out = self.clone();
        out.add_arc_unchecked(arc);
        if !out.is_acyclic() {
            return Err(Error::Cycle);
        }
        Ok(out)
    }

    pub fn without_arc(&self, arc: Arc) -> Result<Dag> {
        self.require_arc(arc)?;
        let mut out = self.clone();
        out.remove_arc_unchecked(arc);
        Ok(out)
    }

    #[inline]
    pub(crate) fn add_arc_unchecked(&mut self, arc: Arc) {
        self.adj[arc.from * self.n + arc.to] = true;
    }

    #[inline]
    pub(crate) fn remove_arc_unchecked(&mut self, arc: Arc) {
        self.adj[arc.from * self.n + arc.to] = false;
    }

    #[inline]
    pub(crate) fn reverse_unchecked(&mut self, arc: Arc) {
        self.remove_arc_unchecked(arc);
        self.add_arc_unchecked(arc.reversed());
    }

    /// `sum_B [prod_{A in Pa(B)} r_A] (r_B - 1)`.
    pub fn parameter_count(&self, cards: &CardinalityMap) -> Result<BigUint> {
        if cards.len() != self.n {
            return Err(Error::NodeSetMismatch(format!(
                "cardinalities for {} nodes, graph has {}",
                cards.len(),
                self.n
            )));
        }
        let mut total = BigUint::default();
        for b in 0..self.n {
            let mut term = BigUint::one();
            for a in self.parents(b) {
                term *= cards.get(a);
            }
            term *= cards.get(b) - 1;
            total += term;
        }
        Ok(total)
    }

    /// Markov equivalence via identical skeletons and identical
    /// unshielded colliders.
    pub fn equivalent(&self, other: &Dag) -> Result<bool> {
        self.require_same_nodes(other)?;
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                if self.adjacent(a, b) != other.adjacent(a, b) {
                    return Ok(false);
                }
            }
        }
        for c in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    if a == c || b == c || self.adjacent(a, b) {
                        continue;
                    }
                    let here = self.has_arc(a, c) && self.has_arc(b, c);
                    let there = other.has_arc(a, c) && other.has_arc(b, c);
                    if here != there {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// True when every arc of `self` is an arc of `other`.
    pub fn is_subgraph_of(&self, other: &Dag) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(&a, &b)| !a || b)
    }

    /// The same graph with its nodes permuted to follow `names`.
    pub fn relabel(&self, names: &[String]) -> Result<Dag> {
        if names.len() != self.n {
            return Err(Error::NodeSetMismatch(format!(
                "{} labels for {} nodes",
                names.len(),
                self.n
            )));
        }
        let map = names
            .iter()
            .map(|s| {
                self.index_of(s)
                    .ok_or_else(|| Error::NodeSetMismatch(format!("node `{s}` not in graph")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inverse = vec![0; self.n];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let arcs: Vec<Arc> = self
            .arcs()
            .into_iter()
            .map(|a| Arc::new(inverse[a.from], inverse[a.to]))
            .collect();
        Dag::new(names.to_vec(), &arcs)
    }

    /// A node-indexed label list for an arbitrary node set, for display.
    pub fn format_nodes(&self, nodes: &[NodeId]) -> String {
        nodes.iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .iter()
            .map(|a| format!("{}->{}", self.name(a.from), self.name(a.to)))
            .collect();
        write!(f, "Dag[{}]{{{}}}", self.names.join(","), arcs.join(", "))
    }
}

/// A total order of the node set, with constant-time position lookup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeOrder {
    perm: Vec<NodeId>,
    pos: Vec<usize>,
}

impl NodeOrder {
    pub fn new(perm: Vec<NodeId>) -> Result<Self> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::NotAPermutation(format!("node {v} out of range")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::NotAPermutation(format!("node {v} repeated")));
            }
            pos[v] = i;
        }
        Ok(NodeOrder { perm, pos })
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<NodeId>) -> Self {
        let mut pos = vec![0; perm.len()];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        NodeOrder { perm, pos }
    }

    pub fn identity(n: usize) -> Self {
        NodeOrder {
            perm: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    /// Resolves an ordering given by node labels against `dag`'s node set.
    pub fn from_names<S: AsRef<str>>(dag: &Dag, names: &[S]) -> Result<Self> {
        let perm = names
            .iter()
            .map(|s| {
                dag.index_of(s.as_ref())
                    .ok_or_else(|| Error::NotAPermutation(format!("unknown node `{}`", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if perm.len() != dag.n() {
            return Err(Error::NotAPermutation(format!(
                "{} names for {} nodes",
                perm.len(),
                dag.n()
            )));
        }
        NodeOrder::new(perm)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.perm
    }

    #[inline]
    pub fn position(&self, v: NodeId) -> usize {
        self.pos[v]
    }

    #[inline]
    pub fn node_at(&self, i: usize) -> NodeId {
        self.perm[i]
    }

    #[inline]
    pub fn precedes(&self, a: NodeId, b: NodeId) -> bool {
        self.pos[a] < self.pos[b]
    }

    /// Nodes strictly before `v`.
    pub fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.perm[..self.pos[v]]
    }

    /// Interchanges the nodes at positions `i` and `j`.
    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.perm.swap(i, j);
        self.pos[self.perm[i]] = i;
        self.pos[self.perm[j]] = j;
    }
}

/// Number of states of each node's random variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CardinalityMap {
    states: Vec<u32>,
}

impl CardinalityMap {
    pub fn new(states: Vec<u32>) -> Result<Self> {
        if let Some((node, &value)) = states.iter().enumerate().find(|(_, &r)| r < 2) {
            return Err(Error::InvalidCardinality { node, value });
        }
        Ok(CardinalityMap { states })
    }

    pub fn uniform(n: usize, r: u32) -> Result<Self> {
        CardinalityMap::new(vec![r; n])
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    #[inline]
    pub fn get(&self, v: NodeId) -> u32 {
        self.states[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.states
    }

    /// Permutes entries the same way [`Dag::relabel`] permutes nodes.
    pub fn relabel(&self, from: &Dag, names: &[String]) -> Result<Self> {
        let states = names
            .iter()
            .map(|s| {
                from.index_of(s)
                    .map(|v| self.states[v])
                    .ok_or_else(|| Error::NodeSetMismatch(format!("node `{s}` not in graph")))
            })
            .collect::<Result<Vec<_>>>()?;
        CardinalityMap::new(states)
    }
}
