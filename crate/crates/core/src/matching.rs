//! Maximum bipartite matching (Hopcroft–Karp) with a König vertex cover.

use std::collections::VecDeque;

const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Matching {
    pub size: usize,
    /// `left_match[x] = Some(y)` when left `x` is matched to right `y`.
    pub left_match: Vec<Option<usize>>,
    pub right_match: Vec<Option<usize>>,
}

/// Maximum matching of the bipartite graph with `adj[x]` listing the right
/// neighbours of left vertex `x`. O(E sqrt V).
pub fn hopcroft_karp(right_count: usize, adj: &[Vec<u32>]) -> Matching {
    let left_count = adj.len();
    let mut left_match: Vec<Option<usize>> = vec![None; left_count];
    let mut right_match: Vec<Option<usize>> = vec![None; right_count];
    let mut dist = vec![UNREACHED; left_count];
    let mut size = 0;
    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for x in 0..left_count {
            if left_match[x].is_none() {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = UNREACHED;
            }
        }
        let mut found_free = false;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                match right_match[y as usize] {
                    None => found_free = true,
                    Some(z) if dist[z] == UNREACHED => {
                        dist[z] = dist[x] + 1;
                        queue.push_back(z);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found_free {
            break;
        }
        let mut next_edge = vec![0usize; left_count];
        for x in 0..left_count {
            if left_match[x].is_none()
                && augment(
                    x,
                    adj,
                    &mut dist,
                    &mut next_edge,
                    &mut left_match,
                    &mut right_match,
                )
            {
                size += 1;
            }
        }
    }
    Matching {
        size,
        left_match,
        right_match,
    }
}

/// Iterative layered DFS for one augmenting path from `root`.
fn augment(
    root: usize,
    adj: &[Vec<u32>],
    dist: &mut [u32],
    next_edge: &mut [usize],
    left_match: &mut [Option<usize>],
    right_match: &mut [Option<usize>],
) -> bool {
    let mut stack: Vec<(usize, usize)> = vec![(root, usize::MAX)];
    while let Some(&(x, _)) = stack.last() {
        if next_edge[x] == adj[x].len() {
            dist[x] = UNREACHED;
            stack.pop();
            continue;
        }
        let y = adj[x][next_edge[x]] as usize;
        next_edge[x] += 1;
        match right_match[y] {
            None => {
                // flip the path
                stack.last_mut().unwrap().1 = y;
                for &(u, v) in stack.iter().rev() {
                    left_match[u] = Some(v);
                    right_match[v] = Some(u);
                }
                return true;
            }
            Some(z) if dist[z] == dist[x] + 1 => {
                stack.last_mut().unwrap().1 = y;
                stack.push((z, usize::MAX));
            }
            Some(_) => {}
        }
    }
    false
}

/// Left and right vertices reachable from free left vertices along
/// alternating paths. By König's theorem `(left \ Z) ∪ (right ∩ Z)` is a
/// minimum vertex cover.
pub fn alternating_reach(adj: &[Vec<u32>], matching: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; adj.len()];
    let mut right = vec![false; matching.right_match.len()];
    let mut queue: VecDeque<usize> = (0..adj.len())
        .filter(|&x| matching.left_match[x].is_none())
        .collect();
    for &x in &queue {
        left[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            let y = y as usize;
            if right[y] || matching.left_match[x] == Some(y) {
                continue;
            }
            right[y] = true;
            if let Some(z) = matching.right_match[y] {
                if !left[z] {
                    left[z] = true;
                    queue.push_back(z);
                }
            }
        }
    }
    (left, right)
}
