//! Sub-instances cut out of the host triangulation, drawn recursively and
//! plugged back into the host diagram.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{run, AlgoError, Drawing, Run, Target};
use crate::diagram::{ArcDiagram, Item};
use crate::graph::{from_faces, PlaneTriangulation, Vertex};

/// A triangulation cut out of the host, with the host id of every vertex.
#[derive(Clone, Debug)]
pub(crate) struct SubInstance {
    pub(crate) g: PlaneTriangulation,
    pub(crate) old_of: Vec<Vertex>,
}

fn face_key(f: [Vertex; 3]) -> [Vertex; 3] {
    let m = (0..3).min_by_key(|&i| f[i]).unwrap();
    [f[m], f[(m + 1) % 3], f[(m + 2) % 3]]
}

/// Faces of `g` inside a counterclockwise cycle, counterclockwise.
pub(crate) fn faces_inside(g: &PlaneTriangulation, cycle: &[Vertex]) -> Vec<[Vertex; 3]> {
    let len = cycle.len();
    let mut wall: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for i in 0..len {
        let (a, b) = (cycle[i], cycle[(i + 1) % len]);
        wall.insert((a, b));
        wall.insert((b, a));
    }
    let mut seen: BTreeSet<[Vertex; 3]> = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<[Vertex; 3]> = Vec::new();
    for i in 0..len {
        let (a, b) = (cycle[i], cycle[(i + 1) % len]);
        stack.push([a, b, g.left_apex(a, b)]);
    }
    while let Some(f) = stack.pop() {
        if !seen.insert(face_key(f)) {
            continue;
        }
        out.push(f);
        for i in 0..3 {
            let (x, y) = (f[i], f[(i + 1) % 3]);
            if !wall.contains(&(x, y)) {
                stack.push([y, x, g.left_apex(y, x)]);
            }
        }
    }
    out
}

impl SubInstance {
    /// The part of `g` inside the counterclockwise `cycle`, completed by the
    /// counterclockwise `extra` faces (whose edges may be virtual) to a
    /// triangulation with outer face `outer = (v1, v2, vn)`.
    pub(crate) fn cut(
        g: &PlaneTriangulation,
        cycle: &[Vertex],
        extra: &[[Vertex; 3]],
        outer: [Vertex; 3],
    ) -> Result<SubInstance, AlgoError> {
        let mut faces = faces_inside(g, cycle);
        faces.extend_from_slice(extra);
        let mut verts: BTreeSet<Vertex> = faces.iter().flatten().copied().collect();
        for v in outer {
            verts.remove(&v);
        }
        let mut old_of: Vec<Vertex> = outer.to_vec();
        old_of.extend(verts);
        let new_of: BTreeMap<Vertex, Vertex> = old_of.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut rel: Vec<[Vertex; 3]> = faces.iter().map(|f| f.map(|v| new_of[&v])).collect();
        rel.push([0, 2, 1]);
        let sub = from_faces(old_of.len(), &rel, [0, 1, 2])
            .map_err(|e| AlgoError::CaseNotMatched(format!("sub-instance on {cycle:?} is no triangulation: {e}")))?;
        Ok(SubInstance { g: sub, old_of })
    }

    /// The triangle `(a, b, c)`, counterclockwise, with everything inside.
    pub(crate) fn triangle(g: &PlaneTriangulation, tri: [Vertex; 3]) -> Result<SubInstance, AlgoError> {
        SubInstance::cut(g, &tri, &[], tri)
    }

    pub(crate) fn to_host(&self, d: &ArcDiagram) -> ArcDiagram {
        d.relabel(|v| self.old_of[v])
    }
}

impl<'g> Run<'g> {
    /// Draws a sub-instance one level deeper.
    pub(crate) fn draw_sub(&mut self, sub: &SubInstance, target: Target) -> Result<Drawing, AlgoError> {
        let dr = run(&sub.g, &self.opts, target, self.depth + 1)?;
        self.merge_stats(&dr.stats);
        Ok(dr)
    }
}

/// Every way (up to `limit`) of splicing `sub` into `host` such that the
/// vertices both share keep their host positions. Edges of `sub` replace the
/// host's drawing of the same edge. Only planar results are returned.
pub(crate) fn plug(host: &ArcDiagram, sub: &ArcDiagram, limit: usize) -> Vec<ArcDiagram> {
    let boundary: Vec<Vertex> = sub.vertices().filter(|&v| host.has_vertex(v)).collect();
    if boundary.is_empty() || boundary.windows(2).any(|w| host.vpos(w[0]) > host.vpos(w[1])) {
        return Vec::new();
    }
    let mut base = host.clone();
    for (e, _) in sub.edges() {
        if base.shape(e).is_some() && base.remove_edge(e).is_err() {
            return Vec::new();
        }
    }
    let mut segments: Vec<Vec<Item>> = alloc::vec![Vec::new()];
    for &it in sub.spine() {
        match it {
            Item::Vertex(x) if boundary.contains(&x) => segments.push(Vec::new()),
            _ => segments.last_mut().unwrap().push(it),
        }
    }
    // insertion index ranges per segment, in the base diagram
    let nb = boundary.len();
    let mut ranges: Vec<Vec<usize>> = Vec::with_capacity(nb + 1);
    for (k, seg) in segments.iter().enumerate() {
        if seg.is_empty() {
            ranges.push(alloc::vec![usize::MAX]);
            continue;
        }
        let cand = if k == 0 {
            alloc::vec![base.vpos(boundary[0])]
        } else if k == nb {
            alloc::vec![base.vpos(boundary[nb - 1]) + 1]
        } else {
            let (lo, hi) = (base.vpos(boundary[k - 1]) + 1, base.vpos(boundary[k]));
            let mut c = alloc::vec![lo];
            if hi != lo {
                c.push(hi);
            }
            c.extend(lo + 1..hi);
            c
        };
        ranges.push(cand);
    }
    let mut out = Vec::new();
    let mut choice = alloc::vec![0usize; segments.len()];
    let mut tried = 0;
    loop {
        tried += 1;
        let mut d = base.clone();
        let mut ok = true;
        // right to left so that earlier indices stay put
        for k in (0..segments.len()).rev() {
            if segments[k].is_empty() {
                continue;
            }
            if d.splice(ranges[k][choice[k]], &segments[k], &BTreeMap::new()).is_err() {
                ok = false;
                break;
            }
        }
        if ok {
            for (e, s) in sub.edges() {
                d.shapes_mut().insert(e, s);
            }
            if d.is_planar() {
                out.push(d);
            }
        }
        if tried >= limit {
            break;
        }
        // next combination, odometer style
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < ranges[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    out
}
