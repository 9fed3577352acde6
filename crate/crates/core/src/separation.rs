//! Separation statements `X _|_ Y | Z` in a DAG.
//!
//! [`Separator`] answers queries by reachability over (node, direction)
//! states, one query in time linear in the number of arcs once the
//! adjacency lists are built. [`d_separated_oracle`] decides the same
//! predicate through the moralized ancestral graph and shares no code with
//! the engine.

use std::collections::BTreeSet;

use crate::dag::{Dag, NodeId};
use crate::error::{Error, Result};

/// Default node limit for [`all_separation_statements`].
pub const STATEMENT_LIMIT: usize = 7;

/// A separation query with pairwise disjoint sets and non-empty `x`, `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparationQuery {
    x: Vec<NodeId>,
    y: Vec<NodeId>,
    z: Vec<NodeId>,
}

fn normalized(mut v: Vec<NodeId>) -> Vec<NodeId> {
    v.sort_unstable();
    v.dedup();
    v
}

impl SeparationQuery {
    pub fn new(x: Vec<NodeId>, y: Vec<NodeId>, z: Vec<NodeId>) -> Result<Self> {
        let (x, y, z) = (normalized(x), normalized(y), normalized(z));
        if x.is_empty() || y.is_empty() {
            return Err(Error::InvalidQuery("X and Y must be non-empty".into()));
        }
        let overlaps = |a: &[NodeId], b: &[NodeId]| a.iter().any(|v| b.binary_search(v).is_ok());
        if overlaps(&x, &y) || overlaps(&x, &z) || overlaps(&y, &z) {
            return Err(Error::InvalidQuery("X, Y and Z must be disjoint".into()));
        }
        Ok(SeparationQuery { x, y, z })
    }

    pub fn pair(a: NodeId, b: NodeId, z: &[NodeId]) -> Result<Self> {
        SeparationQuery::new(vec![a], vec![b], z.to_vec())
    }

    pub fn x(&self) -> &[NodeId] {
        &self.x
    }

    pub fn y(&self) -> &[NodeId] {
        &self.y
    }

    pub fn z(&self) -> &[NodeId] {
        &self.z
    }

    /// The query with `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        SeparationQuery {
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
        }
    }

    fn check(&self, g: &Dag) -> Result<()> {
        match self.x.iter().chain(&self.y).chain(&self.z).find(|&&v| v >= g.n()) {
            Some(&v) => Err(Error::InvalidQuery(format!(
                "node {v} out of range for {} nodes",
                g.n()
            ))),
            None => Ok(()),
        }
    }
}

/// Adjacency lists of a DAG, prepared for repeated separation queries.
#[derive(Debug, Clone)]
pub struct Separator {
    parents: Vec<Vec<NodeId>>,
    children: Vec<Vec<NodeId>>,
}

const UP: usize = 0;
const DOWN: usize = 1;

impl Separator {
    pub fn new(g: &Dag) -> Self {
        let n = g.n();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for arc in g.arcs() {
            parents[arc.to].push(arc.from);
            children[arc.from].push(arc.to);
        }
        Separator { parents, children }
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    /// Decides a validated query.
    pub fn query(&self, q: &SeparationQuery) -> bool {
        self.separated(&q.x, &q.y, &q.z)
    }

    /// `x _|_ y | z`. The sets must be disjoint and in range; an empty `x`
    /// or `y` is trivially separated.
    pub fn separated(&self, x: &[NodeId], y: &[NodeId], z: &[NodeId]) -> bool {
        let n = self.n();
        let mut in_z = vec![false; n];
        let mut in_y = vec![false; n];
        for &v in z {
            in_z[v] = true;
        }
        for &v in y {
            in_y[v] = true;
        }

        // Ancestors of Z, Z included: colliders that may pass the ball.
        let mut anc_z = in_z.clone();
        let mut stack: Vec<NodeId> = z.to_vec();
        while let Some(v) = stack.pop() {
            for &p in &self.parents[v] {
                if !anc_z[p] {
                    anc_z[p] = true;
                    stack.push(p);
                }
            }
        }

        let mut visited = vec![[false; 2]; n];
        let mut frontier: Vec<(NodeId, usize)> = x.iter().map(|&v| (v, UP)).collect();
        while let Some((v, dir)) = frontier.pop() {
            if visited[v][dir] {
                continue;
            }
            visited[v][dir] = true;
            if !in_z[v] && in_y[v] {
                return false;
            }
            if dir == UP {
                if !in_z[v] {
                    frontier.extend(self.parents[v].iter().map(|&p| (p, UP)));
                    frontier.extend(self.children[v].iter().map(|&c| (c, DOWN)));
                }
            } else {
                if !in_z[v] {
                    frontier.extend(self.children[v].iter().map(|&c| (c, DOWN)));
                }
                if anc_z[v] {
                    frontier.extend(self.parents[v].iter().map(|&p| (p, UP)));
                }
            }
        }
        true
    }
}

/// True iff no `Z`-active route joins a node of `X` and a node of `Y`.
pub fn d_separated(g: &Dag, q: &SeparationQuery) -> Result<bool> {
    q.check(g)?;
    Ok(Separator::new(g).query(q))
}

/// Moralized ancestral graph criterion: `X` and `Y` are separated iff they
/// are disconnected in the moral graph of the ancestral closure of
/// `X + Y + Z` once `Z` is deleted.
pub fn d_separated_oracle(g: &Dag, q: &SeparationQuery) -> Result<bool> {
    q.check(g)?;
    let n = g.n();
    let mut keep = vec![false; n];
    let mut stack: Vec<NodeId> = q.x.iter().chain(&q.y).chain(&q.z).copied().collect();
    for &v in &stack {
        keep[v] = true;
    }
    while let Some(v) = stack.pop() {
        let parents: Vec<NodeId> = g.parents(v).collect();
        for p in parents {
            if !keep[p] {
                keep[p] = true;
                stack.push(p);
            }
        }
    }

    let mut moral = vec![vec![false; n]; n];
    for v in (0..n).filter(|&v| keep[v]) {
        let pa: Vec<NodeId> = (0..n).filter(|&p| g.has_arc(p, v)).collect();
        for (i, &p) in pa.iter().enumerate() {
            moral[p][v] = true;
            moral[v][p] = true;
            for &o in &pa[i + 1..] {
                moral[p][o] = true;
                moral[o][p] = true;
            }
        }
    }

    let mut blocked = vec![false; n];
    for &v in &q.z {
        blocked[v] = true;
    }
    let mut seen = vec![false; n];
    let mut queue: std::collections::VecDeque<NodeId> = q.x.iter().copied().collect();
    for &v in &q.x {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        if q.y.contains(&v) {
            return Ok(false);
        }
        for w in 0..n {
            if moral[v][w] && keep[w] && !blocked[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(true)
}

/// A singleton statement `a _|_ b | Z` with `a < b`; `given` is a bit mask
/// over node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    pub a: NodeId,
    pub b: NodeId,
    pub given: u64,
}

impl Statement {
    pub fn given_nodes(&self) -> Vec<NodeId> {
        (0..64).filter(|i| self.given >> i & 1 == 1).collect()
    }
}

/// Every singleton statement of `g`, for graphs of at most
/// [`STATEMENT_LIMIT`] nodes.
pub fn all_separation_statements(g: &Dag) -> Result<BTreeSet<Statement>> {
    all_separation_statements_limited(g, STATEMENT_LIMIT)
}

pub fn all_separation_statements_limited(g: &Dag, limit: usize) -> Result<BTreeSet<Statement>> {
    let n = g.n();
    if n > limit.min(63) {
        return Err(Error::SizeLimit {
            what: "separation statement enumeration",
            limit: limit.min(63),
            n,
        });
    }
    let sep = Separator::new(g);
    let mut out = BTreeSet::new();
    let mut z = Vec::with_capacity(n);
    for a in 0..n {
        for b in a + 1..n {
            let rest = !((1u64 << a) | (1u64 << b)) & ((1u64 << n) - 1);
            // Enumerate subsets of `rest`.
            let mut given = 0u64;
            loop {
                z.clear();
                z.extend((0..n).filter(|i| given >> i & 1 == 1));
                if sep.separated(&[a], &[b], &z) {
                    out.insert(Statement { a, b, given });
                }
                if given == rest {
                    break;
                }
                given = (given.wrapping_sub(rest)) & rest;
            }
        }
    }
    Ok(out)
}
