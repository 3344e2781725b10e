//! Plane triangulations stored as rotation systems.
//!
//! Rotations are clockwise. Faces are traced with the rule "reverse the dart,
//! then take the clockwise successor": the face on the left of `u -> v` continues
//! with `v -> cw_next(v, u)`. With this rule inner faces come out counterclockwise
//! and the outer face `v1 v2 vn` is traced as `v2 -> v1 -> vn`.
//!
//! Vertex ids are `0..n`.

mod enumerate;
mod generate;
mod sequence;

pub use enumerate::{canonical_code, enumerate_triangulations};
pub use generate::{random_3tree, random_3tree_gd2, random_triangulation};
pub use sequence::ConstructionSequence;
use generate::cover_subpath as generate_cover;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("duplicate dart {0}->{1}")]
    DuplicateDart(Vertex, Vertex),
    #[error("self loop at {0}")]
    SelfLoop(Vertex),
    #[error("dart {0}->{1} has no reverse")]
    EmbeddingInconsistent(Vertex, Vertex),
    #[error("face through dart {0}->{1} has length {2}")]
    NonTriangularFace(Vertex, Vertex, usize),
    #[error("face count {found} differs from 2n-4 = {expected}")]
    WrongFaceCount { found: usize, expected: usize },
    #[error("outer face {0:?} is not a face")]
    OuterNotAFace([Vertex; 3]),
    #[error("too few vertices: {0}")]
    TooSmall(usize),
    #[error("degree-3 vertices {0} and {1} are adjacent")]
    AdjacentDegreeThree(Vertex, Vertex),
    #[error("removing degree-3 vertices does not leave a triangulation")]
    NotTriangulationAfterPeel,
    #[error("enumeration supports n <= 8, got {0}")]
    SizeTooLarge(usize),
    #[error("invalid construction sequence: {0}")]
    InvalidSequence(&'static str),
}

/// Traces all faces of a rotation system. Each face is returned as the cycle
/// of dart tails in tracing order.
pub fn trace_faces(rot: &[Vec<Vertex>]) -> Result<Vec<Vec<Vertex>>, GraphError> {
    let index = dart_index(rot)?;
    let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut faces = Vec::new();
    for (u, nbrs) in rot.iter().enumerate() {
        for &v in nbrs {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                if !seen.insert((a, b)) {
                    if (a, b) == (u, v) {
                        break;
                    }
                    return Err(GraphError::EmbeddingInconsistent(a, b));
                }
                face.push(a);
                let i = index[&(b, a)];
                let c = rot[b][(i + 1) % rot[b].len()];
                a = b;
                b = c;
                if face.len() > 2 * index.len() {
                    return Err(GraphError::EmbeddingInconsistent(u, v));
                }
            }
            faces.push(face);
        }
    }
    Ok(faces)
}

fn dart_index(rot: &[Vec<Vertex>]) -> Result<BTreeMap<(Vertex, Vertex), usize>, GraphError> {
    let n = rot.len();
    let mut index = BTreeMap::new();
    for (u, nbrs) in rot.iter().enumerate() {
        for (i, &v) in nbrs.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if v == u {
                return Err(GraphError::SelfLoop(u));
            }
            if index.insert((u, v), i).is_some() {
                return Err(GraphError::DuplicateDart(u, v));
            }
        }
    }
    for &(u, v) in index.keys() {
        if !index.contains_key(&(v, u)) {
            return Err(GraphError::EmbeddingInconsistent(u, v));
        }
    }
    Ok(index)
}

/// A maximal planar graph with a clockwise rotation system and a designated
/// outer face `(v1, v2, vn)`; the outer face is traced as `v2 -> v1 -> vn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTriangulation {
    rot: Vec<Vec<Vertex>>,
    index: BTreeMap<(Vertex, Vertex), usize>,
    outer: [Vertex; 3],
}

impl PlaneTriangulation {
    /// Builds a triangulation from clockwise rotations. `outer` must be the
    /// vertex set of a face, in either cyclic order; `outer[0]` becomes `v1`
    /// and the remaining two are assigned to `v2` and `vn` by orientation.
    pub fn new(rot: Vec<Vec<Vertex>>, outer: [Vertex; 3]) -> Result<Self, GraphError> {
        let n = rot.len();
        if n < 3 {
            return Err(GraphError::TooSmall(n));
        }
        let index = dart_index(&rot)?;
        let faces = trace_faces(&rot)?;
        for f in &faces {
            if f.len() != 3 {
                return Err(GraphError::NonTriangularFace(f[0], f[1], f.len()));
            }
        }
        if faces.len() != 2 * n - 4 {
            return Err(GraphError::WrongFaceCount { found: faces.len(), expected: 2 * n - 4 });
        }
        let [a, b, c] = outer;
        for &x in &outer {
            if x >= n {
                return Err(GraphError::VertexOutOfRange(x));
            }
        }
        let mut oriented = None;
        for f in &faces {
            let mut g = f.clone();
            for _ in 0..3 {
                if g[0] == a {
                    break;
                }
                g.rotate_left(1);
            }
            if g[0] != a {
                continue;
            }
            // traced as v2 -> v1 -> vn, i.e. cyclically (v1, vn, v2)
            if g[1] == c && g[2] == b {
                oriented = Some([a, b, c]);
            } else if g[1] == b && g[2] == c {
                oriented = Some([a, c, b]);
            }
        }
        let outer = oriented.ok_or(GraphError::OuterNotAFace(outer))?;
        Ok(PlaneTriangulation { rot, index, outer })
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.index.len() / 2
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    /// `(v1, v2, vn)`.
    pub fn outer_face(&self) -> [Vertex; 3] {
        self.outer
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.index.contains_key(&(u, v))
    }

    /// Clockwise successor of `u` in the rotation at `v`.
    pub fn cw_next(&self, v: Vertex, u: Vertex) -> Vertex {
        let i = self.index[&(v, u)];
        self.rot[v][(i + 1) % self.rot[v].len()]
    }

    /// Clockwise predecessor of `u` in the rotation at `v`.
    pub fn cw_prev(&self, v: Vertex, u: Vertex) -> Vertex {
        let i = self.index[&(v, u)];
        let d = self.rot[v].len();
        self.rot[v][(i + d - 1) % d]
    }

    /// Apex of the face on the left of the dart `u -> v`.
    pub fn left_apex(&self, u: Vertex, v: Vertex) -> Vertex {
        self.cw_next(v, u)
    }

    /// Edges as `(min, max)` pairs in increasing order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.index.keys().filter(|(u, v)| u < v).copied().collect()
    }

    /// All faces as oriented triples.
    pub fn faces(&self) -> Vec<[Vertex; 3]> {
        trace_faces(&self.rot)
            .expect("validated at construction")
            .into_iter()
            .map(|f| [f[0], f[1], f[2]])
            .collect()
    }

    /// Face count check, 2n - 4 triangles, plus edge count 3n - 6.
    pub fn counts_ok(&self) -> bool {
        let n = self.n();
        self.faces().len() == 2 * n - 4 && self.edge_count() == 3 * n - 6
    }

    /// Same embedding with every rotation reversed. `v1` and `v2` keep their
    /// roles on the outer face.
    pub fn mirrored(&self) -> PlaneTriangulation {
        let rot: Vec<Vec<Vertex>> = self.rot.iter().map(|r| r.iter().rev().copied().collect()).collect();
        PlaneTriangulation::new(rot, self.outer).expect("mirror of a triangulation")
    }

    /// Re-designates the outer face; `face` must be a face in either orientation.
    pub fn with_outer(&self, face: [Vertex; 3]) -> Result<PlaneTriangulation, GraphError> {
        PlaneTriangulation::new(self.rot.clone(), face)
    }

    /// True if no pair of vertices disconnects the graph (n >= 4).
    pub fn is_three_connected(&self) -> bool {
        let n = self.n();
        if n < 4 {
            return false;
        }
        for a in 0..n {
            for b in a + 1..n {
                let start = (0..n).find(|&x| x != a && x != b).unwrap();
                let mut seen = vec![false; n];
                seen[a] = true;
                seen[b] = true;
                seen[start] = true;
                let mut queue = VecDeque::from([start]);
                let mut count = 1;
                while let Some(x) = queue.pop_front() {
                    for &y in &self.rot[x] {
                        if !seen[y] {
                            seen[y] = true;
                            count += 1;
                            queue.push_back(y);
                        }
                    }
                }
                if count != n - 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Vertices strictly inside a counterclockwise cycle (as traced faces are).
    pub fn interior_of_cycle(&self, cycle: &[Vertex]) -> Vec<Vertex> {
        let len = cycle.len();
        let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
        let mut inside: BTreeSet<Vertex> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..len {
            let prev = cycle[(i + len - 1) % len];
            let cur = cycle[i];
            let next = cycle[(i + 1) % len];
            let mut x = self.cw_next(cur, prev);
            while x != next {
                if !on_cycle.contains(&x) && inside.insert(x) {
                    queue.push_back(x);
                }
                x = self.cw_next(cur, x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &y in &self.rot[x] {
                if !on_cycle.contains(&y) && inside.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        inside.into_iter().collect()
    }

    /// Subgraph bounded by the counterclockwise triangle `(a, b, c)` together
    /// with everything inside, relabelled. Returns the triangulation, whose
    /// outer face has `v1 = a`, `v2 = b`, `vn = c` when `a -> b -> c` runs
    /// counterclockwise, and the map from new ids to old ids.
    pub fn inner_subgraph(&self, tri: [Vertex; 3]) -> (PlaneTriangulation, Vec<Vertex>) {
        let inside = self.interior_of_cycle(&tri);
        self.induced_with_boundary(&tri, &inside)
    }

    /// Induced subgraph on a counterclockwise boundary triangle plus the
    /// given interior vertices. The boundary vertices become `v1, v2, vn` in
    /// order, the interior vertices follow.
    pub fn induced_with_boundary(&self, boundary: &[Vertex], inside: &[Vertex]) -> (PlaneTriangulation, Vec<Vertex>) {
        let mut old_of: Vec<Vertex> = boundary.to_vec();
        old_of.extend_from_slice(inside);
        let new_of: BTreeMap<Vertex, usize> = old_of.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let len = boundary.len();
        let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); old_of.len()];
        for (i, &cur) in boundary.iter().enumerate() {
            let prev = boundary[(i + len - 1) % len];
            let next = boundary[(i + 1) % len];
            // interior wedge from prev clockwise to next, then the outside
            // closes back with next -> prev directly
            let mut wedge = vec![prev];
            let mut x = self.cw_next(cur, prev);
            while x != next {
                if new_of.contains_key(&x) {
                    wedge.push(x);
                }
                x = self.cw_next(cur, x);
            }
            wedge.push(next);
            rot[i] = wedge.iter().map(|v| new_of[v]).collect();
        }
        for (i, &v) in inside.iter().enumerate() {
            rot[len + i] = self.rot[v].iter().map(|x| new_of[x]).collect();
        }
        let outer = [new_of[&boundary[0]], new_of[&boundary[1]], new_of[&boundary[len - 1]]];
        let g = PlaneTriangulation::new(rot, outer).expect("induced subgraph of a triangle is a triangulation");
        (g, old_of)
    }
}

/// Stacks a new degree-3 vertex into every face. New vertices get ids
/// `k..3k-4`; the outer face becomes `(v1, v2, x)` where `x` is the vertex
/// stacked into the old outer face.
pub fn kleetope(t: &PlaneTriangulation) -> PlaneTriangulation {
    let k = t.n();
    let faces = t.faces();
    let mut rot = t.rot.clone();
    let [v1, v2, _] = t.outer;
    let mut outer_new = 0;
    for (fi, f) in faces.iter().enumerate() {
        let x = k + fi;
        let [a, b, c] = *f;
        // in a's rotation b follows c; the new vertex goes between them
        insert_after(&mut rot[a], c, x);
        insert_after(&mut rot[b], a, x);
        insert_after(&mut rot[c], b, x);
        rot.push(vec![a, c, b]);
        let set = [a, b, c];
        if set.contains(&v1) && set.contains(&v2) && set.contains(&t.outer[2]) {
            outer_new = x;
        }
    }
    PlaneTriangulation::new(rot, [v1, v2, outer_new]).expect("kleetope of a triangulation")
}

fn insert_after(list: &mut Vec<Vertex>, after: Vertex, x: Vertex) {
    let i = list.iter().position(|&y| y == after).expect("neighbor present");
    list.insert(i + 1, x);
}

/// Result of removing all degree-3 vertices.
#[derive(Debug, Clone)]
pub struct Peeled {
    pub base: PlaneTriangulation,
    /// `old_of[new] = old` for the base vertices.
    pub old_of: Vec<Vertex>,
    /// Removed vertex (old id) and its containing face in base ids.
    pub removed: Vec<(Vertex, [Vertex; 3])>,
}

/// Removes every degree-3 vertex of `g`. Requires n >= 5 and no two degree-3
/// vertices adjacent.
pub fn peel_degree_three(g: &PlaneTriangulation) -> Result<Peeled, GraphError> {
    let n = g.n();
    let deg3: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    for &v in &deg3 {
        for &w in g.rotation(v) {
            if g.degree(w) == 3 {
                return Err(GraphError::AdjacentDegreeThree(v.min(w), v.max(w)));
            }
        }
    }
    let removed_set: BTreeSet<Vertex> = deg3.iter().copied().collect();
    let old_of: Vec<Vertex> = (0..n).filter(|v| !removed_set.contains(v)).collect();
    if old_of.len() < 4 {
        return Err(GraphError::NotTriangulationAfterPeel);
    }
    let new_of: BTreeMap<Vertex, usize> = old_of.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rot: Vec<Vec<Vertex>> = old_of
        .iter()
        .map(|&v| g.rotation(v).iter().filter(|w| !removed_set.contains(w)).map(|w| new_of[w]).collect())
        .collect();
    let [v1, v2, vn] = g.outer;
    let outer = if removed_set.contains(&vn) {
        [new_of[&v1], new_of[&v2], new_of[&other_corner(g, vn, v1, v2)]]
    } else if removed_set.contains(&v1) || removed_set.contains(&v2) {
        let x = if removed_set.contains(&v1) { v1 } else { v2 };
        let nb = g.rotation(x);
        [new_of[&nb[0]], new_of[&nb[1]], new_of[&nb[2]]]
    } else {
        [new_of[&v1], new_of[&v2], new_of[&vn]]
    };
    let base = PlaneTriangulation::new(rot, outer).map_err(|_| GraphError::NotTriangulationAfterPeel)?;
    let removed = deg3
        .iter()
        .map(|&v| {
            let nb = g.rotation(v);
            // rotation [a, c, b] of a stacked vertex inside ccw face (a, b, c)
            (v, [new_of[&nb[0]], new_of[&nb[2]], new_of[&nb[1]]])
        })
        .collect();
    Ok(Peeled { base, old_of, removed })
}

fn other_corner(g: &PlaneTriangulation, x: Vertex, a: Vertex, b: Vertex) -> Vertex {
    *g.rotation(x).iter().find(|&&w| w != a && w != b).expect("degree 3")
}

/// Builds a triangulation from consistently oriented (counterclockwise) faces.
pub fn from_faces(n: usize, faces: &[[Vertex; 3]], outer: [Vertex; 3]) -> Result<PlaneTriangulation, GraphError> {
    // in the clockwise rotation at a, the corner (a, b, c) makes b follow c
    let mut succ: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); n];
    for &[a, b, c] in faces {
        for (x, from, to) in [(a, c, b), (b, a, c), (c, b, a)] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange(x));
            }
            if succ[x].insert(from, to).is_some() {
                return Err(GraphError::DuplicateDart(x, from));
            }
        }
    }
    let mut rot = Vec::with_capacity(n);
    for s in &succ {
        let Some((&first, _)) = s.iter().next() else {
            return Err(GraphError::TooSmall(n));
        };
        let mut r = vec![first];
        let mut x = s[&first];
        while x != first {
            r.push(x);
            x = *s.get(&x).ok_or(GraphError::EmbeddingInconsistent(x, first))?;
            if r.len() > n {
                return Err(GraphError::EmbeddingInconsistent(x, first));
            }
        }
        rot.push(r);
    }
    PlaneTriangulation::new(rot, outer)
}

/// Tetrahedron `K4`.
pub fn k4() -> PlaneTriangulation {
    from_faces(4, &[[0, 1, 2], [1, 3, 2], [0, 2, 3], [0, 3, 1]], [0, 1, 3]).expect("K4")
}

/// Octahedron; 0 and 5 are antipodal, 1 2 3 4 the equator.
pub fn octahedron() -> PlaneTriangulation {
    let faces = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 1],
        [5, 2, 1],
        [5, 3, 2],
        [5, 4, 3],
        [5, 1, 4],
    ];
    from_faces(6, &faces, [0, 1, 2]).expect("octahedron")
}

/// Icosahedron; 0 and 11 are antipodal poles.
pub fn icosahedron() -> PlaneTriangulation {
    let mut faces = Vec::new();
    for i in 0..5 {
        let (u, u1) = (1 + i, 1 + (i + 1) % 5);
        let (l, l1) = (6 + i, 6 + (i + 1) % 5);
        faces.push([0, u, u1]);
        faces.push([u, l, u1]);
        faces.push([u1, l, l1]);
        faces.push([11, l1, l]);
    }
    from_faces(12, &faces, [0, 1, 2]).expect("icosahedron")
}
