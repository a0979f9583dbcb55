//! Acyclicity on small index-based digraphs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Outcome of a topological sort: either a linear extension or a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acyclicity {
    /// Node indices in an order where every edge points forward.
    Order(Vec<usize>),
    /// `c[0] -> c[1] -> ... -> c[k-1] -> c[0]`, rotated to start at its least index.
    Cycle(Vec<usize>),
}

/// Topologically sorts nodes `0..n` under `edges`, always emitting the least
/// available index first, so the order is deterministic given the numbering.
pub fn topological_sort(n: usize, edges: &[(usize, usize)]) -> Acyclicity {
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in edges {
        succ[a].push(b);
        pred[b].push(a);
        indeg[b] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(a)) = ready.pop() {
        order.push(a);
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(Reverse(b));
            }
        }
    }
    if order.len() == n {
        return Acyclicity::Order(order);
    }

    // Every unsorted node keeps an unsorted predecessor; walking predecessors
    // from any of them must revisit a node.
    let stuck: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let start = (0..n).find(|&i| stuck[i]).expect("unsorted node");
    let mut seen = vec![None; n];
    let mut walk = Vec::new();
    let mut cur = start;
    while seen[cur].is_none() {
        seen[cur] = Some(walk.len());
        walk.push(cur);
        cur = *pred[cur]
            .iter()
            .filter(|&&p| stuck[p])
            .min()
            .expect("stuck node has a stuck predecessor");
    }
    let mut cycle: Vec<usize> = walk[seen[cur].unwrap()..].to_vec();
    cycle.reverse();
    let lead = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(lead);
    Acyclicity::Cycle(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_with_least_index_first() {
        let r = topological_sort(4, &[(3, 0), (2, 1)]);
        assert_eq!(r, Acyclicity::Order(vec![2, 1, 3, 0]));
        assert_eq!(topological_sort(0, &[]), Acyclicity::Order(vec![]));
    }

    #[test]
    fn reports_cycle_in_edge_direction() {
        // 0 -> 2 -> 1 -> 3 -> 0, plus a tail 4 -> 0
        let edges = [(0, 2), (2, 1), (1, 3), (3, 0), (4, 0)];
        match topological_sort(5, &edges) {
            Acyclicity::Cycle(c) => {
                assert_eq!(c[0], 0);
                for i in 0..c.len() {
                    let e = (c[i], c[(i + 1) % c.len()]);
                    assert!(edges.contains(&e), "{e:?} not an edge");
                }
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn two_cycle() {
        assert_eq!(topological_sort(2, &[(0, 1), (1, 0)]), Acyclicity::Cycle(vec![0, 1]));
    }
}
