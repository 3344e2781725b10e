//! Pure drawing primitives: each takes a diagram and returns a new one, or an
//! error if the result would not be planar.

use alloc::vec::Vec;

use super::{ArcDiagram, DiagramError, Edge, Item, Shape};
use crate::graph::Vertex;

fn planar_or_cross(d: ArcDiagram) -> Result<ArcDiagram, DiagramError> {
    match d.check_planar() {
        Ok(()) => Ok(d),
        Err(DiagramError::NotPlanar(a, b)) => Err(DiagramError::WouldCross(a, b)),
        Err(e) => Err(e),
    }
}

/// Turns mountain `m` and every other mountain sharing its left endpoint into
/// down-up biarcs crossing the spine right of that endpoint.
pub fn push_down(d: &ArcDiagram, m: Edge) -> Result<ArcDiagram, DiagramError> {
    if d.shape(m) != Some(Shape::Mountain) {
        return Err(DiagramError::NotAMountain(m));
    }
    let mut out = d.clone();
    out.push_down_at(d.left_end(m));
    planar_or_cross(out)
}

/// Places `v` inside pocket `e = p_l p_r` (right after `p_l`), joins it to
/// `p_l` and `p_r` by pockets and to the remaining neighbors by mountains.
/// `left` and `right` are the neighbors left of `p_l` and right of `p_r`.
pub fn insert_vertex_in_pocket(
    d: &ArcDiagram,
    v: Vertex,
    e: Edge,
    left: &[Vertex],
    right: &[Vertex],
) -> Result<ArcDiagram, DiagramError> {
    if d.shape(e) != Some(Shape::Pocket) {
        return Err(DiagramError::NotAPocket(e));
    }
    let (pl, pr) = d.ends(e);
    let mut out = d.clone();
    out.insert_vertex_at(d.vpos(pl) + 1, v)?;
    out.pocket(pl, v)?;
    out.pocket(v, pr)?;
    for &w in left.iter().chain(right) {
        out.mountain(w, v)?;
    }
    planar_or_cross(out)
}

/// Places `v` right after the left endpoint `m` of a just pushed-down
/// mountain (before the new crossings). The edge `m v` becomes a pocket and
/// every other edge to `neighbors` a mountain.
pub fn insert_vertex_over_pushed_mountain(
    d: &ArcDiagram,
    v: Vertex,
    m: Vertex,
    neighbors: &[Vertex],
) -> Result<ArcDiagram, DiagramError> {
    let mut out = d.clone();
    out.insert_vertex_at(d.vpos(m) + 1, v)?;
    for &w in neighbors {
        if w == m {
            out.pocket(m, v)?;
        } else {
            out.mountain(w, v)?;
        }
    }
    planar_or_cross(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    AsIs,
    /// Spine reversed and pages swapped.
    RotatedPi,
}

/// Where the parts of a sub-diagram go. The sub-diagram's spine is cut at its
/// `boundary` vertices (which must already be in the host, in the same
/// left-to-right order); the run of items before the first boundary vertex,
/// between consecutive ones, and after the last one are inserted in the host
/// right after `anchors[k]`, or at the very left if the anchor is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlugSpec {
    pub boundary: Vec<Vertex>,
    pub anchors: Vec<Option<Item>>,
}

/// Splices `sub` into `d`. Edges of `sub` already present in `d` keep the
/// host's drawing; all other edges and their credits are copied.
pub fn plug_subdiagram(
    d: &ArcDiagram,
    spec: &PlugSpec,
    sub: &ArcDiagram,
    orientation: Orientation,
) -> Result<ArcDiagram, DiagramError> {
    let sub = match orientation {
        Orientation::AsIs => sub.clone(),
        Orientation::RotatedPi => sub.rotated_pi(),
    };
    if spec.anchors.len() != spec.boundary.len() + 1 {
        return Err(DiagramError::BoundaryMismatch("one anchor per segment"));
    }
    let sub_order: Vec<Vertex> = sub.vertices().filter(|v| spec.boundary.contains(v)).collect();
    if sub_order.len() != spec.boundary.len() {
        return Err(DiagramError::BoundaryMismatch("boundary vertex missing from sub-diagram"));
    }
    for w in sub_order.windows(2) {
        if !d.has_vertex(w[0]) || !d.has_vertex(w[1]) || d.vpos(w[0]) > d.vpos(w[1]) {
            return Err(DiagramError::BoundaryMismatch("boundary order differs"));
        }
    }
    if sub_order.len() == 1 && !d.has_vertex(sub_order[0]) {
        return Err(DiagramError::BoundaryMismatch("boundary vertex missing from host"));
    }
    let mut segments: Vec<Vec<Item>> = Vec::with_capacity(sub_order.len() + 1);
    segments.push(Vec::new());
    for &it in sub.spine() {
        match it {
            Item::Vertex(x) if sub_order.contains(&x) => segments.push(Vec::new()),
            _ => segments.last_mut().unwrap().push(it),
        }
    }
    let mut out = d.clone();
    let mut new_shapes = alloc::collections::BTreeMap::new();
    for (e, s) in sub.edges() {
        if out.shape(e).is_none() {
            new_shapes.insert(e, s);
        }
    }
    // crossings of edges kept from the host are not copied
    for seg in &mut segments {
        seg.retain(|it| match it {
            Item::Crossing(e) => new_shapes.contains_key(e),
            Item::Vertex(_) => true,
        });
    }
    for (k, seg) in segments.iter().enumerate() {
        if seg.is_empty() {
            continue;
        }
        let at = match spec.anchors[k] {
            None => 0,
            Some(it) => out.pos(it).ok_or(DiagramError::BoundaryMismatch("anchor not in host"))? + 1,
        };
        out.splice(at, seg, &alloc::collections::BTreeMap::new())?;
    }
    for (&e, &s) in &new_shapes {
        out.shapes_mut().insert(e, s);
        out.set_credit(e, sub.credit(e));
    }
    for (e, _) in sub.edges() {
        if new_shapes.contains_key(&e) && !out.shape(e).is_some_and(|s| s.is_biarc() == out.pos(Item::Crossing(e)).is_some()) {
            return Err(DiagramError::MalformedBiarc(e));
        }
    }
    planar_or_cross(out)
}
