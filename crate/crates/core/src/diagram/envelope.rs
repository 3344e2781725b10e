//! Upper and lower envelopes by nesting depth on each page.

use alloc::vec;
use alloc::vec::Vec;

use super::{ArcDiagram, DiagramError, Edge, HalfArc, Item, Page, Shape};
use crate::graph::Vertex;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnvElem {
    Item(Item),
    Arc(Edge),
}

/// The chain of items and edges visible from `side`, left to right.
pub fn envelope(d: &ArcDiagram, side: Side) -> Result<Vec<EnvElem>, DiagramError> {
    d.check_planar()?;
    let (near_page, far_page) = match side {
        Side::Upper => (Page::Upper, Page::Lower),
        Side::Lower => (Page::Lower, Page::Upper),
    };
    let n = d.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let arcs = d.half_arcs();
    let mut near: Vec<&HalfArc> = arcs.iter().filter(|h| h.page == near_page).collect();
    near.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
    // outermost near arc over each gap, and whether an item is hidden
    let mut near_gap: Vec<Option<Edge>> = vec![None; n];
    let mut hidden = vec![false; n];
    let mut reach = 0usize;
    for h in &near {
        if h.a < reach {
            continue;
        }
        reach = h.b;
        for g in h.a..h.b {
            near_gap[g] = Some(h.edge);
        }
        for p in h.a + 1..h.b {
            hidden[p] = true;
        }
    }
    // innermost far arc over each gap
    let mut far: Vec<&HalfArc> = arcs.iter().filter(|h| h.page == far_page).collect();
    far.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
    let mut far_gap: Vec<Option<Edge>> = vec![None; n];
    let mut stack: Vec<&HalfArc> = Vec::new();
    let mut k = 0;
    for g in 0..n - 1 {
        while k < far.len() && far[k].a <= g {
            stack.push(far[k]);
            k += 1;
        }
        while stack.last().is_some_and(|t| t.b <= g) {
            stack.pop();
        }
        far_gap[g] = stack.last().map(|t| t.edge);
    }

    let mut out = Vec::new();
    let mut last_arc: Option<Edge> = None;
    for p in 0..n {
        if !hidden[p] {
            out.push(EnvElem::Item(d.spine()[p]));
            last_arc = None;
        }
        if p + 1 == n {
            break;
        }
        if let Some(e) = near_gap[p].or(far_gap[p]) {
            if last_arc != Some(e) {
                out.push(EnvElem::Arc(e));
                last_arc = Some(e);
            }
        }
    }
    Ok(out)
}

/// Reads the upper envelope as a path of vertices joined by proper arcs.
/// Fails with the first offending edge if a biarc is visible from above, or
/// with `None` if the chain is not a simple vertex/edge alternation.
pub fn upper_envelope_path(d: &ArcDiagram) -> Result<Vec<Vertex>, Option<Edge>> {
    let env = envelope(d, Side::Upper).map_err(|_| None)?;
    let mut path = Vec::new();
    let mut pending: Option<Edge> = None;
    for el in env {
        match el {
            EnvElem::Item(Item::Vertex(v)) => {
                if let Some(e) = pending.take() {
                    let &u = path.last().ok_or(None)?;
                    if Edge::new(u, v) != e {
                        return Err(None);
                    }
                } else if !path.is_empty() {
                    return Err(None);
                }
                path.push(v);
            }
            EnvElem::Item(Item::Crossing(e)) => return Err(Some(e)),
            EnvElem::Arc(e) => {
                if !d.shape(e).is_some_and(Shape::is_proper) {
                    return Err(Some(e));
                }
                if pending.is_some() {
                    return Err(None);
                }
                pending = Some(e);
            }
        }
    }
    if pending.is_some() {
        return Err(None);
    }
    Ok(path)
}
