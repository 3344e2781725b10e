//! Seeded generators for triangulations and planar 3-trees.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ConstructionSequence, PlaneTriangulation, Vertex};

/// Random triangulation on `n >= 4` vertices built along a canonical ordering:
/// each new vertex covers a random consecutive sub-path of the outer path,
/// the last one covers the whole path. Outer face is `(0, 1, n - 1)`.
pub fn random_triangulation(n: usize, seed: u64) -> PlaneTriangulation {
    assert!(n >= 4, "random_triangulation needs n >= 4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<Vertex>> = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
    let mut path: Vec<Vertex> = vec![0, 2, 1];
    for x in 3..n {
        let edges = path.len() - 1;
        let (a, b) = if x == n - 1 {
            (0, edges)
        } else {
            let len = if rng.gen_bool(0.85) {
                let mut k = 1;
                while k < edges && rng.gen_bool(0.5) {
                    k += 1;
                }
                k
            } else {
                rng.gen_range(1..=edges)
            };
            let a = rng.gen_range(0..=edges - len);
            (a, a + len)
        };
        cover_subpath(&mut rot, &path, a, b, x);
        path.splice(a + 1..b, [x]);
    }
    PlaneTriangulation::new(rot, [0, 1, n - 1]).expect("canonical construction yields a triangulation")
}

/// Adds vertex `x` (with id `rot.len()`) adjacent to `path[a..=b]`, on the
/// outer side of the path (which is on the left of `path[0] -> path[1]`).
pub(crate) fn cover_subpath(rot: &mut Vec<Vec<Vertex>>, path: &[Vertex], a: usize, b: usize, x: Vertex) {
    debug_assert_eq!(rot.len(), x);
    for t in a..=b {
        let p = path[t];
        let r = &mut rot[p];
        if t == a {
            let i = r.iter().position(|&y| y == path[a + 1]).unwrap();
            r.insert(i, x);
        } else {
            let i = r.iter().position(|&y| y == path[t - 1]).unwrap();
            r.insert(i + 1, x);
        }
    }
    rot.push((a..=b).rev().map(|t| path[t]).collect());
}

/// Random planar 3-tree: each step stacks into a uniformly chosen inner face.
pub fn random_3tree(n: usize, seed: u64) -> ConstructionSequence {
    assert!(n >= 3, "random_3tree needs n >= 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2]];
    let mut steps = Vec::new();
    for x in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [p, q, r] = faces.swap_remove(i);
        steps.push((x, [p, q, r]));
        faces.extend([[p, q, x], [q, r, x], [r, p, x]]);
    }
    ConstructionSequence { base: [0, 1, 2], steps }
}

/// Random planar 3-tree whose face tree has grand-degree at most 2 everywhere:
/// no face ever gets all three of its child faces subdivided.
pub fn random_3tree_gd2(n: usize, seed: u64) -> ConstructionSequence {
    assert!(n >= 3, "random_3tree_gd2 needs n >= 3");
    struct Node {
        tri: [Vertex; 3],
        parent: Option<usize>,
        used: u8,
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = vec![Node { tri: [0, 1, 2], parent: None, used: 0 }];
    let mut leaves: Vec<usize> = vec![0];
    let mut steps = Vec::new();
    for x in 3..n {
        let allowed: Vec<usize> = leaves
            .iter()
            .copied()
            .filter(|&l| nodes[l].parent.map_or(true, |p| nodes[p].used < 2))
            .collect();
        let pick = allowed[rng.gen_range(0..allowed.len())];
        leaves.retain(|&l| l != pick);
        if let Some(p) = nodes[pick].parent {
            nodes[p].used += 1;
        }
        let [p, q, r] = nodes[pick].tri;
        steps.push((x, [p, q, r]));
        for tri in [[p, q, x], [q, r, x], [r, p, x]] {
            leaves.push(nodes.len());
            nodes.push(Node { tri, parent: Some(pick), used: 0 });
        }
    }
    ConstructionSequence { base: [0, 1, 2], steps }
}
