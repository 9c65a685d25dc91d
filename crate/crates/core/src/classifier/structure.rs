//! Structural obstructions to strong cospectrality in `T(l, m)`, `l != m`.
//!
//! For `l != m` the automorphisms of `T(l, m)` are the permutations of the
//! branches on each side. Strongly cospectral vertices are fixed by the same
//! automorphisms, and cospectral vertices have equal degree and equal numbers
//! of closed walks of every length.

use crate::graph::{build_double_subdivided_star, Position, StarLayout};

use super::evidence::{AsymmetryEvidence, WalkSeparation};

/// `P_6` as `T(1, 1)`: path position `i` (1-based) is vertex `P6_ORDER[i - 1]`.
pub const P6_ORDER: [usize; 6] = [3, 2, 0, 1, 4, 5];

/// 1-based position on the path of a vertex of `T(1, 1)`.
pub fn path_position_p6(v: usize) -> Option<usize> {
    P6_ORDER.iter().position(|&x| x == v).map(|i| i + 1)
}

fn branch_of(p: Position) -> Option<(crate::graph::Side, usize)> {
    match p {
        Position::Center(_) => None,
        Position::Middle(s, i) | Position::Pendant(s, i) => Some((s, i)),
    }
}

/// Whether some branch permutation fixes `u` or `v` but moves the other.
pub fn aut_separates(lay: &StarLayout, u: usize, v: usize) -> bool {
    let moves_second = |x: usize, y: usize| {
        let (bx, by) = (branch_of(lay.locate(x)), branch_of(lay.locate(y)));
        match by {
            None => false,
            Some((side, i)) => {
                let fixed_branch = bx.filter(|&(s, _)| s == side);
                if fixed_branch.map(|(_, j)| j) == Some(i) {
                    return false;
                }
                let free = lay.branches(side) - usize::from(fixed_branch.is_some());
                free >= 2
            }
        }
    };
    moves_second(u, v) || moves_second(v, u)
}

/// Smallest `k ≤ max_len` with `(A^k)_{uu} != (A^k)_{vv}`, computed exactly.
pub fn closed_walk_separation(neighbors: &[Vec<usize>], u: usize, v: usize, max_len: usize) -> Option<WalkSeparation> {
    let n = neighbors.len();
    let mut xu = vec![0u128; n];
    let mut xv = vec![0u128; n];
    xu[u] = 1;
    xv[v] = 1;
    for k in 1..=max_len {
        let step = |x: &[u128]| -> Option<Vec<u128>> {
            let mut y = vec![0u128; n];
            for (w, nb) in neighbors.iter().enumerate() {
                for &z in nb {
                    y[w] = y[w].checked_add(x[z])?;
                }
            }
            Some(y)
        };
        xu = step(&xu)?;
        xv = step(&xv)?;
        if xu[u] != xv[v] {
            return Some(WalkSeparation {
                pair: (u, v),
                length: k,
                walks: (xu[u] as u64, xv[v] as u64),
            });
        }
    }
    None
}

/// Classifies every unordered vertex pair of `T(l, m)`, `l != m`, by the first
/// obstruction that applies: unequal degree, a separating branch permutation,
/// or a closed-walk count difference.
pub(crate) fn asymmetry_evidence(l: usize, m: usize) -> AsymmetryEvidence {
    assert!(l != m);
    let g = build_double_subdivided_star(l, m).expect("valid parameters");
    let lay = StarLayout::new(l, m);
    let deg = g.degrees();
    let nb = g.neighbors();
    let n = g.n();
    let mut ev = AsymmetryEvidence {
        total_pairs: n * (n - 1) / 2,
        degree_mismatch_pairs: 0,
        aut_separated_pairs: 0,
        walk_separated: Vec::new(),
        uncovered: Vec::new(),
    };
    for u in 0..n {
        for v in u + 1..n {
            if deg[u] != deg[v] {
                ev.degree_mismatch_pairs += 1;
            } else if aut_separates(&lay, u, v) {
                ev.aut_separated_pairs += 1;
            } else if let Some(w) = closed_walk_separation(&nb, u, v, 2 * n) {
                ev.walk_separated.push(w);
            } else {
                ev.uncovered.push((u, v));
            }
        }
    }
    ev
}
