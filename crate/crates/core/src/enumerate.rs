//! Exhaustive enumeration of the DAGs over a small node set.

use crate::dag::Dag;

/// Iterates over every DAG sharing `like`'s node set, in a fixed order.
///
/// Each unordered node pair is either non-adjacent or oriented one of two
/// ways; the `3^(n(n-1)/2)` assignments are walked in counter order and
/// the cyclic ones skipped.
pub struct AllDags {
    like: Dag,
    pairs: Vec<(usize, usize)>,
    digits: Vec<u8>,
    exhausted: bool,
}

impl AllDags {
    pub fn new(like: &Dag) -> Self {
        let n = like.n();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        AllDags {
            like: like.cleared(),
            digits: vec![0; pairs.len()],
            pairs,
            exhausted: false,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            if *d < 2 {
                *d += 1;
                return;
            }
            *d = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for AllDags {
    type Item = Dag;

    fn next(&mut self) -> Option<Dag> {
        let n = self.like.n();
        while !self.exhausted {
            let mut adj = vec![false; n * n];
            for (&(a, b), &d) in self.pairs.iter().zip(&self.digits) {
                match d {
                    1 => adj[a * n + b] = true,
                    2 => adj[b * n + a] = true,
                    _ => {}
                }
            }
            self.advance();
            if let Some(dag) = Dag::from_matrix_like(&self.like, adj) {
                return Some(dag);
            }
        }
        None
    }
}

/// Every DAG over `X0..X{n-1}`.
pub fn all_dags(n: usize) -> AllDags {
    AllDags::new(&Dag::from_pairs(n, &[]).expect("valid empty graph"))
}
