//! Maximum bipartite matching by augmenting paths.

/// Maximum matching of a bipartite graph given as left-side adjacency lists
/// over right ids `0..n_right`. Returns the right partner of every left
/// vertex. Neighbors are tried in list order, so results are deterministic.
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for left in 0..adj.len() {
        let mut seen = vec![false; n_right];
        augment(left, adj, &mut seen, &mut match_right);
    }
    let mut match_left = vec![None; adj.len()];
    for (r, l) in match_right.iter().enumerate() {
        if let Some(l) = *l {
            match_left[l] = Some(r);
        }
    }
    match_left
}

fn augment(
    left: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &r in &adj[left] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(other) => augment(other, adj, seen, match_right),
        };
        if free {
            match_right[r] = Some(left);
            return true;
        }
    }
    false
}

/// A perfect matching, if one exists.
pub fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    max_matching(adj, n_right).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn needs_augmenting_path() {
        // Greedy would match 0-0 and strand 1.
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(perfect_matching(&adj, 2), Some(vec![1, 0]));
    }

    #[test]
    fn hall_violation_has_no_perfect_matching() {
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), None);
        let m = max_matching(&adj, 3);
        assert_eq!(m.iter().flatten().count(), 2);
    }
}
