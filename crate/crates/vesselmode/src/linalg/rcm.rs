//! Reverse Cuthill-McKee ordering for bandwidth reduction.

/// Returns `perm` such that new index `i` corresponds to old index `perm[i]`.
/// Starts each connected component from a pseudo-peripheral vertex.
pub fn reverse_cuthill_mckee(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.sort_unstable_by_key(|&v| adj[v].len());

    for &start in &nodes {
        if visited[start] {
            continue;
        }
        let root = pseudo_peripheral(adj, start);
        // Cuthill-McKee BFS with neighbors sorted by ascending degree
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        visited[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nb: Vec<usize> = adj[v].iter().copied().filter(|&u| !visited[u]).collect();
            nb.sort_unstable_by_key(|&u| adj[u].len());
            for u in nb {
                visited[u] = true;
                queue.push_back(u);
            }
        }
    }
    order.reverse();
    order
}

fn pseudo_peripheral(adj: &[Vec<usize>], start: usize) -> usize {
    let mut root = start;
    let mut last_ecc = 0usize;
    for _ in 0..8 {
        let (levels, ecc) = bfs_levels(adj, root);
        if ecc <= last_ecc {
            break;
        }
        last_ecc = ecc;
        // pick a min-degree vertex in the last level
        let far: Vec<usize> = (0..adj.len()).filter(|&v| levels[v] == ecc as i64).collect();
        if let Some(&v) = far.iter().min_by_key(|&&v| adj[v].len()) {
            root = v;
        } else {
            break;
        }
    }
    root
}

fn bfs_levels(adj: &[Vec<usize>], root: usize) -> (Vec<i64>, usize) {
    let mut level = vec![-1i64; adj.len()];
    let mut q = std::collections::VecDeque::new();
    level[root] = 0;
    q.push_back(root);
    let mut ecc = 0usize;
    while let Some(v) = q.pop_front() {
        for &u in &adj[v] {
            if level[u] < 0 {
                level[u] = level[v] + 1;
                ecc = ecc.max(level[u] as usize);
                q.push_back(u);
            }
        }
    }
    (level, ecc)
}

/// Half-bandwidth of the pattern under a given ordering (`perm[new] = old`).
pub fn bandwidth(adj: &[Vec<usize>], perm: &[usize]) -> usize {
    let n = adj.len();
    let mut inv = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let mut bw = 0usize;
    for v in 0..n {
        for &u in &adj[v] {
            bw = bw.max(inv[v].abs_diff(inv[u]));
        }
    }
    bw
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_bandwidth_on_a_ring_with_chord() {
        // ring 0-1-...-49-0: natural ordering has bandwidth 49, RCM ~ 2.
        let n = 50;
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i].push(j);
            adj[j].push(i);
        }
        let id: Vec<usize> = (0..n).collect();
        let perm = reverse_cuthill_mckee(&adj);
        assert!(bandwidth(&adj, &perm) <= 4);
        assert_eq!(bandwidth(&adj, &id), n - 1);
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, id);
    }
}
