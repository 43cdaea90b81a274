//! Exhaustive enumeration of small connected graphs up to isomorphism.

use crate::par;

use super::graph::Graph;
use super::structure::next_permutation;

fn pair_bits(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}

fn is_connected_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if reach >> i & 1 == 1 {
                    next |= 1 << j;
                }
                if reach >> j & 1 == 1 {
                    next |= 1 << i;
                }
            }
        }
        if next == reach {
            return reach == (1 << n) - 1;
        }
        reach = next;
    }
}

/// One representative of every isomorphism class of connected graphs on
/// exactly `n` vertices (`n ≤ 7`): the edge bitmask minimal over relabelings.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "corpus enumeration is exhaustive; keep n small");
    if n == 0 {
        return Vec::new();
    }
    let pairs = pair_bits(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        slot[i][j] = k;
        slot[j][i] = k;
    }
    let mut perms = Vec::new();
    let mut p: Vec<u32> = (0..n as u32).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let total = 1usize << pairs.len();
    let keep = par::map_range(total, |m| {
        let mask = m as u32;
        if !is_connected_mask(n, &pairs, mask) {
            return false;
        }
        perms.iter().all(|p| {
            let mut img = 0u32;
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    img |= 1 << slot[p[i] as usize][p[j] as usize];
                }
            }
            img >= mask
        })
    });
    keep.iter()
        .enumerate()
        .filter(|(_, &k)| k)
        .map(|(m, _)| {
            let e: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| m >> k & 1 == 1)
                .map(|(_, &(i, j))| (i as u32, j as u32))
                .collect();
            Graph::from_indices(n, &e).unwrap()
        })
        .collect()
}

/// All connected graphs on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // Connected graphs on n unlabeled vertices: 1, 1, 2, 6, 21, 112.
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }
}
