#![allow(dead_code)]

use dstar::{from_edge_list, GraphSpec};
use rand::Rng;

/// Decodes a Prüfer sequence into the edge list of a labelled tree on `n` vertices.
pub fn prufer_tree(seq: &[usize], n: usize) -> GraphSpec {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    from_edge_list(n, &edges).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> GraphSpec {
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_tree(&seq, n)
}
