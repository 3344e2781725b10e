//! Exhaustive generation of small triangulations up to isomorphism.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{GraphError, PlaneTriangulation, Vertex};

/// Isomorphism-invariant code: lexicographically smallest BFS code over all
/// rooted darts in both orientations. Triangulations on n >= 4 vertices are
/// 3-connected, so graph isomorphism coincides with embedding isomorphism up
/// to mirroring.
pub fn canonical_code(g: &PlaneTriangulation) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for u in 0..g.n() {
        for &v in g.rotation(u) {
            for mirror in [false, true] {
                let code = bfs_code(g, u, v, mirror);
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap_or_default()
}

fn bfs_code(g: &PlaneTriangulation, root: Vertex, first: Vertex, mirror: bool) -> Vec<usize> {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut start = vec![usize::MAX; n];
    label[root] = 0;
    start[root] = first;
    let mut next = 1;
    let mut queue = VecDeque::from([root]);
    let mut code = Vec::with_capacity(2 * g.edge_count() + n);
    while let Some(w) = queue.pop_front() {
        let rot = g.rotation(w);
        let d = rot.len();
        let i0 = rot.iter().position(|&x| x == start[w]).unwrap();
        for k in 0..d {
            let x = if mirror { rot[(i0 + d - k) % d] } else { rot[(i0 + k) % d] };
            if label[x] == usize::MAX {
                label[x] = next;
                start[x] = w;
                next += 1;
                queue.push_back(x);
            }
            code.push(label[x]);
        }
        code.push(usize::MAX);
    }
    code
}

/// One representative per isomorphism class of triangulations on `n` vertices,
/// `4 <= n <= 8`, ordered by canonical code.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<PlaneTriangulation>, GraphError> {
    if n > 8 {
        return Err(GraphError::SizeTooLarge(n));
    }
    if n < 4 {
        return Err(GraphError::TooSmall(n));
    }
    let mut found: BTreeMap<Vec<usize>, PlaneTriangulation> = BTreeMap::new();
    let rot: Vec<Vec<Vertex>> = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
    extend(n, rot, vec![0, 2, 1], &mut found);
    Ok(found.into_values().collect())
}

fn extend(n: usize, rot: Vec<Vec<Vertex>>, path: Vec<Vertex>, found: &mut BTreeMap<Vec<usize>, PlaneTriangulation>) {
    let x = rot.len();
    let edges = path.len() - 1;
    if x == n - 1 {
        let mut rot = rot;
        super::generate_cover(&mut rot, &path, 0, edges, x);
        let g = PlaneTriangulation::new(rot, [0, 1, x]).expect("canonical construction");
        found.entry(canonical_code(&g)).or_insert(g);
        return;
    }
    for a in 0..edges {
        for b in a + 1..=edges {
            let mut r = rot.clone();
            super::generate_cover(&mut r, &path, a, b, x);
            let mut p = path.clone();
            p.splice(a + 1..b, [x]);
            extend(n, r, p, found);
        }
    }
}
