//! Random DAGs and orderings for tests, benchmarks and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dag::{default_names, Arc, Dag, NodeOrder};

/// A random permutation of `0..n`.
pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NodeOrder {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    NodeOrder::new(perm).expect("shuffled identity is a permutation")
}

/// A DAG over `X0..X{n-1}` whose arcs follow a random hidden ordering;
/// each forward pair becomes an arc with probability `density`.
pub fn random_dag<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Dag {
    let hidden = random_order(n, rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                arcs.push(Arc::new(hidden.node_at(i), hidden.node_at(j)));
            }
        }
    }
    Dag::new(default_names(n), &arcs).expect("arcs follow a topological order")
}

/// Adds each missing `alpha`-forward arc to `g` with probability `p`. The
/// result is consistent with `alpha` whenever `g` is.
pub fn add_forward_arcs<R: Rng + ?Sized>(g: &Dag, alpha: &NodeOrder, p: f64, rng: &mut R) -> Dag {
    let mut out = g.clone();
    let n = g.n();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (alpha.node_at(i), alpha.node_at(j));
            if !out.adjacent(a, b) && rng.gen_bool(p) {
                out = out.with_arc(Arc::new(a, b)).expect("forward arc keeps acyclicity");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn density_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_dag(6, 0.0, &mut rng).arc_count(), 0);
        assert_eq!(random_dag(6, 1.0, &mut rng).arc_count(), 15);
    }

    #[test]
    fn forward_arcs_stay_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let alpha = random_order(7, &mut rng);
        let g = add_forward_arcs(&Dag::from_pairs(7, &[]).unwrap(), &alpha, 0.5, &mut rng);
        assert!(g.is_consistent(&alpha).unwrap());
    }
}
