//! Consensus of several DAGs over a shared node set.
//!
//! The consensus DAG is the minimal directed independence map of the
//! intersection of the given independence models with the fewest
//! parameters. Finding it is NP-hard; this module provides the union of
//! the per-DAG MDI maps for a fixed ordering ([`heuristic_consensus`]),
//! the polynomial membership check ([`verify_imap`], [`verify_instance`]),
//! exhaustive search for tiny node sets ([`exact_consensus`]) and local
//! search over orderings ([`search`]).

mod reduction;
pub mod search;

use num_bigint::BigUint;

use crate::dag::{CardinalityMap, Dag, NodeId, NodeOrder};
use crate::enumerate::AllDags;
use crate::error::{Error, Result};
use crate::mdi::{construct_beta, mdi_map, TieBreak};
use crate::separation::{all_separation_statements, Separator};

pub use reduction::{reduce_fas_to_consensus, Digraph, EdgeGadget, FasReduction};
pub use search::{search_ordering, search_ordering_traced, Neighborhood, SearchConfig, SearchOutcome, Strategy};

/// Default node limit for [`exact_consensus`].
pub const EXACT_LIMIT: usize = 5;

/// DAGs to combine, the cardinalities of their variables and an optional
/// parameter bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsensusInstance {
    dags: Vec<Dag>,
    cards: CardinalityMap,
    bound: Option<BigUint>,
}

impl ConsensusInstance {
    pub fn new(dags: Vec<Dag>, cards: CardinalityMap, bound: Option<BigUint>) -> Result<Self> {
        let Some(first) = dags.first() else {
            return Err(Error::InvalidInput(
                "a consensus instance needs at least one DAG".into(),
            ));
        };
        for g in &dags[1..] {
            first.require_same_nodes(g)?;
        }
        if cards.len() != first.n() {
            return Err(Error::NodeSetMismatch(format!(
                "cardinalities for {} nodes, graphs have {}",
                cards.len(),
                first.n()
            )));
        }
        if bound.as_ref().is_some_and(|d| *d == BigUint::default()) {
            return Err(Error::InvalidInput("the parameter bound must be positive".into()));
        }
        Ok(ConsensusInstance { dags, cards, bound })
    }

    pub fn dags(&self) -> &[Dag] {
        &self.dags
    }

    pub fn cards(&self) -> &CardinalityMap {
        &self.cards
    }

    pub fn bound(&self) -> Option<&BigUint> {
        self.bound.as_ref()
    }

    pub fn with_bound(mut self, bound: Option<BigUint>) -> Result<Self> {
        self.bound = None;
        ConsensusInstance::new(self.dags, self.cards, bound)
    }

    pub fn n(&self) -> usize {
        self.dags[0].n()
    }

    pub fn names(&self) -> &[String] {
        self.dags[0].names()
    }

    fn require_nodes(&self, g: &Dag) -> Result<()> {
        self.dags[0].require_same_nodes(g)
    }
}

/// A consensus candidate together with its parameter count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsensusResult {
    pub dag: Dag,
    pub params: BigUint,
    /// The ordering the heuristic ran with; absent for exhaustive results.
    pub ordering: Option<NodeOrder>,
}

/// Union of the MDI maps of every input DAG relative to `alpha`.
pub fn heuristic_consensus(inst: &ConsensusInstance, alpha: &NodeOrder) -> Result<ConsensusResult> {
    let mut union = inst.dags[0].cleared();
    for g in &inst.dags {
        let map = mdi_map(g, alpha)?;
        for arc in map.arcs() {
            union.add_arc_unchecked(arc);
        }
    }
    debug_assert!(union.is_consistent_unchecked(alpha));
    let params = union.parameter_count(&inst.cards)?;
    Ok(ConsensusResult {
        dag: union,
        params,
        ordering: Some(alpha.clone()),
    })
}

/// A causal-list statement of `candidate` that some input DAG violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImapViolation {
    pub node: NodeId,
    /// Index of the input DAG in which the statement fails.
    pub dag: usize,
    pub parents: Vec<NodeId>,
    pub rest: Vec<NodeId>,
}

/// Checks `A _|_ Pre(A) \ Pa(A) | Pa(A)` in every model for every node
/// `A`, under an ordering consistent with `candidate`. Returns the first
/// failing statement.
pub fn imap_violation(candidate: &Dag, models: &[Dag]) -> Result<Option<ImapViolation>> {
    for g in models {
        candidate.require_same_nodes(g)?;
    }
    let n = candidate.n();
    let order = construct_beta(candidate, &NodeOrder::identity(n), &TieBreak::Corrected)?;
    let seps: Vec<Separator> = models.iter().map(Separator::new).collect();
    for &a in order.nodes() {
        let parents: Vec<NodeId> = candidate.parents(a).collect();
        let rest: Vec<NodeId> = order
            .predecessors(a)
            .iter()
            .copied()
            .filter(|&v| !candidate.has_arc(v, a))
            .collect();
        if rest.is_empty() {
            continue;
        }
        if let Some(i) = seps.iter().position(|s| !s.separated(&[a], &rest, &parents)) {
            return Ok(Some(ImapViolation {
                node: a,
                dag: i,
                parents,
                rest,
            }));
        }
    }
    Ok(None)
}

/// True iff `I(g)` is contained in the independence model of every input.
pub fn verify_imap(g: &Dag, inst: &ConsensusInstance) -> Result<bool> {
    inst.require_nodes(g)?;
    Ok(imap_violation(g, &inst.dags)?.is_none())
}

/// True iff `I(h)` is contained in `I(g)`.
pub fn is_imap_of(h: &Dag, g: &Dag) -> Result<bool> {
    Ok(imap_violation(h, std::slice::from_ref(g))?.is_none())
}

/// The decision question: `g` is an independence map of every input and
/// has at most `bound` parameters.
pub fn verify_instance(g: &Dag, inst: &ConsensusInstance) -> Result<bool> {
    let bound = inst.bound.as_ref().ok_or(Error::MissingBound)?;
    Ok(verify_imap(g, inst)? && g.parameter_count(&inst.cards)? <= *bound)
}

/// All consensus DAGs, by exhaustive enumeration. Optima are returned in
/// enumeration order; several non-equivalent ones may exist.
pub fn exact_consensus(inst: &ConsensusInstance, limit: usize) -> Result<Vec<ConsensusResult>> {
    let n = inst.n();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "exact consensus",
            limit,
            n,
        });
    }
    let mut best: Option<BigUint> = None;
    let mut optima: Vec<Dag> = Vec::new();
    for g in AllDags::new(&inst.dags[0]) {
        let params = g.parameter_count(&inst.cards)?;
        if best.as_ref().is_some_and(|b| params > *b) {
            continue;
        }
        if imap_violation(&g, &inst.dags)?.is_some() {
            continue;
        }
        if best.as_ref().is_none_or(|b| params < *b) {
            best = Some(params);
            optima.clear();
        }
        optima.push(g);
    }
    let params = best.expect("the complete DAG is always an independence map");
    Ok(optima
        .into_iter()
        .map(|dag| ConsensusResult {
            dag,
            params: params.clone(),
            ordering: None,
        })
        .collect())
}

/// Number of singleton separation statements of `g`, for comparing optima
/// by the independences they represent.
pub fn independence_count(g: &Dag) -> Result<usize> {
    all_separation_statements(g).map(|s| s.len())
}
