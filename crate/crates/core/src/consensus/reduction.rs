//! Consensus instances built from feedback arc set instances.
//!
//! Every arc `Vi -> Vj` of the input digraph contributes a gadget of seven
//! nodes `A B C D E F G` (with 9, 2, 3, 9, 2, 2 and 9 states) wired to the
//! endpoint nodes, each of which has 9 states. Three DAGs are emitted:
//!
//! * the first keeps the observable gadget arcs
//!   `A->B, Vi->B, B->C, D->E, G->E, E->F, F->Vj`;
//! * the second has only `B->C<-F` per gadget;
//! * the third has only `C->F<-E` per gadget.
//!
//! The parameter bound is left to the caller.

use std::collections::BTreeSet;

use super::ConsensusInstance;
use crate::dag::{Arc, CardinalityMap, Dag, NodeId};
use crate::error::{Error, Result};

const ENDPOINT_STATES: u32 = 9;
const GADGET_STATES: [u32; 7] = [9, 2, 3, 9, 2, 2, 9];
const GADGET_LABELS: [&str; 7] = ["A", "B", "C", "D", "E", "F", "G"];

/// A directed graph (cycles allowed) over labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(names: Vec<String>, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        for &(a, b) in &arcs {
            if let Some(&v) = [a, b].iter().find(|&&v| v >= n) {
                return Err(Error::InvalidNode { index: v, n });
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateArc(a, b));
            }
        }
        Ok(Digraph { names, arcs })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// Node indices of one arc's gadget within the generated node set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeGadget {
    pub tail: NodeId,
    pub head: NodeId,
    pub a: NodeId,
    pub b: NodeId,
    pub c: NodeId,
    pub d: NodeId,
    pub e: NodeId,
    pub f: NodeId,
    pub g: NodeId,
}

#[derive(Debug, Clone)]
pub struct FasReduction {
    /// The three DAGs with the prescribed cardinalities and no bound.
    pub instance: ConsensusInstance,
    /// The feedback arc set budget of the source instance.
    pub k: usize,
    /// One gadget per digraph arc, in input order.
    pub gadgets: Vec<EdgeGadget>,
}

/// Builds the three-DAG consensus instance for `digraph`. Endpoint nodes
/// come first in digraph order, followed by the gadgets in arc order.
pub fn reduce_fas_to_consensus(digraph: &Digraph, k: usize) -> Result<FasReduction> {
    let mut names: Vec<String> = digraph.names.clone();
    let mut states: Vec<u32> = vec![ENDPOINT_STATES; names.len()];
    let mut gadgets = Vec::with_capacity(digraph.arcs.len());
    for &(i, j) in &digraph.arcs {
        let base = names.len();
        for (label, &r) in GADGET_LABELS.iter().zip(&GADGET_STATES) {
            names.push(format!("{label}_{}_{}", digraph.names[i], digraph.names[j]));
            states.push(r);
        }
        gadgets.push(EdgeGadget {
            tail: i,
            head: j,
            a: base,
            b: base + 1,
            c: base + 2,
            d: base + 3,
            e: base + 4,
            f: base + 5,
            g: base + 6,
        });
    }

    let observed: Vec<Arc> = gadgets
        .iter()
        .flat_map(|x| {
            [
                (x.a, x.b),
                (x.tail, x.b),
                (x.b, x.c),
                (x.d, x.e),
                (x.g, x.e),
                (x.e, x.f),
                (x.f, x.head),
            ]
        })
        .map(Arc::from)
        .collect();
    let second: Vec<Arc> = gadgets
        .iter()
        .flat_map(|x| [(x.b, x.c), (x.f, x.c)])
        .map(Arc::from)
        .collect();
    let third: Vec<Arc> = gadgets
        .iter()
        .flat_map(|x| [(x.c, x.f), (x.e, x.f)])
        .map(Arc::from)
        .collect();

    let dags = vec![
        Dag::new(names.clone(), &observed)?,
        Dag::new(names.clone(), &second)?,
        Dag::new(names, &third)?,
    ];
    let instance = ConsensusInstance::new(dags, CardinalityMap::new(states)?, None)?;
    Ok(FasReduction { instance, k, gadgets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_arc_gadget() {
        let d = Digraph::new(names(&["V1", "V2"]), vec![(0, 1)]).unwrap();
        let r = reduce_fas_to_consensus(&d, 1).unwrap();
        let dags = r.instance.dags();
        assert_eq!(r.instance.n(), 9);
        assert_eq!(dags[0].arc_count(), 7);
        assert_eq!(dags[1].arc_count(), 2);
        assert_eq!(dags[2].arc_count(), 2);
        let g = dags[0].clone();
        let id = |s: &str| g.index_of(s).unwrap();
        for (a, b) in [
            ("A_V1_V2", "B_V1_V2"),
            ("V1", "B_V1_V2"),
            ("B_V1_V2", "C_V1_V2"),
            ("D_V1_V2", "E_V1_V2"),
            ("G_V1_V2", "E_V1_V2"),
            ("E_V1_V2", "F_V1_V2"),
            ("F_V1_V2", "V2"),
        ] {
            assert!(g.has_arc(id(a), id(b)), "{a}->{b}");
        }
        assert!(dags[1].has_arc(id("B_V1_V2"), id("C_V1_V2")));
        assert!(dags[1].has_arc(id("F_V1_V2"), id("C_V1_V2")));
        assert!(dags[2].has_arc(id("C_V1_V2"), id("F_V1_V2")));
        assert!(dags[2].has_arc(id("E_V1_V2"), id("F_V1_V2")));
        assert_eq!(r.instance.cards().as_slice(), &[9, 9, 9, 2, 3, 9, 2, 2, 9]);
        assert!(r.instance.bound().is_none());
    }

    #[test]
    fn empty_digraph() {
        let d = Digraph::new(vec![], vec![]).unwrap();
        let r = reduce_fas_to_consensus(&d, 0).unwrap();
        assert_eq!(r.instance.dags().len(), 3);
        assert!(r.instance.dags().iter().all(|g| g.arc_count() == 0));
    }

    #[test]
    fn gadgets_share_endpoints() {
        let d = Digraph::new(names(&["V1", "V2", "V3"]), vec![(0, 1), (1, 2)]).unwrap();
        let r = reduce_fas_to_consensus(&d, 1).unwrap();
        assert_eq!(r.instance.n(), 3 + 14);
        assert_eq!(r.instance.dags()[0].arc_count(), 14);
        let [g1, g2] = [r.gadgets[0], r.gadgets[1]];
        assert_eq!(g1.head, g2.tail);
        let c1 = &r.instance.dags()[0];
        assert!(c1.has_arc(g1.f, 1));
        assert!(c1.has_arc(1, g2.b));
    }

    #[test]
    fn cyclic_digraph_yields_acyclic_dags() {
        let d = Digraph::new(names(&["a", "b"]), vec![(0, 1), (1, 0)]).unwrap();
        assert!(reduce_fas_to_consensus(&d, 1).is_ok());
        assert!(Digraph::new(names(&["a"]), vec![(0, 0), (0, 0)]).is_err());
    }
}
