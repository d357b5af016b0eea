//! Exact Tanner-graph girth by breadth-first search. Shares nothing with the
//! block-level certifier and serves as its cross-check.

use crate::sparse::SparseBinaryMatrix;
use std::collections::VecDeque;

/// Girth of the Tanner graph of `h`, or `None` when the graph has no cycle.
pub fn girth_bfs_oracle(h: &SparseBinaryMatrix) -> Option<usize> {
    let m = h.nrows();
    let n = h.ncols();
    // nodes 0..m are checks, m..m+n variables
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + n];
    for &(r, c) in h.entries() {
        adj[r].push(m + c);
        adj[m + c].push(r);
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; m + n];
    let mut parent = vec![usize::MAX; m + n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    // every cycle passes through a variable node
    for root in m..m + n {
        for &t in &touched {
            dist[t] = usize::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if 2 * dist[u] + 1 >= best {
                        break 'bfs;
                    }
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}
