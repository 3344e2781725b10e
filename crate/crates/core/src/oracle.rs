//! Exhaustive ground truth for tiny graphs: 2-page embeddability of a fixed
//! spine order and the minimum number of down-up biarcs over all orders.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{ArcDiagram, Edge, Item, Shape};
use crate::graph::{PlaneTriangulation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} vertices exceed the oracle limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Optimum found by [`min_biarcs_bruteforce`] with one diagram attaining it.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub min_biarcs: usize,
    pub witness: ArcDiagram,
}

/// Whether spans `[a1, b1]` and `[a2, b2]` (each `a < b`) interleave.
fn interleave(x: (usize, usize), y: (usize, usize)) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

fn span(pos: &BTreeMap<Vertex, usize>, e: (Vertex, Vertex)) -> (usize, usize) {
    let (a, b) = (pos[&e.0], pos[&e.1]);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Page per node of a conflict graph where some nodes have a fixed page.
/// `None` if no consistent 2-colouring exists.
fn two_colour(n: usize, fixed: &[Option<bool>], conflicts: &[(usize, usize)]) -> Option<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in conflicts {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut col: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    let starts = (0..n).filter(|&i| fixed[i].is_some()).chain(0..n);
    for s in starts {
        if col[s].is_some() {
            continue;
        }
        col[s] = Some(fixed[s].unwrap_or(true));
        queue.push_back(s);
        while let Some(a) = queue.pop_front() {
            let ca = col[a].expect("queued nodes are coloured");
            for &b in &adj[a] {
                match col[b] {
                    Some(cb) if cb == ca => return None,
                    Some(_) => {}
                    None => {
                        if fixed[b] == Some(ca) {
                            return None;
                        }
                        col[b] = Some(!ca);
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    Some(col.into_iter().map(|c| c.expect("all coloured")).collect())
}

/// Whether the edges can be split into two pages without two interleaving
/// edges on the same page, for the given spine order.
pub fn two_page_embeddable(edges: &[(Vertex, Vertex)], order: &[Vertex]) -> bool {
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let spans: Vec<(usize, usize)> = edges.iter().map(|&e| span(&pos, e)).collect();
    let mut conflicts = Vec::new();
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            if interleave(spans[i], spans[j]) {
                conflicts.push((i, j));
            }
        }
    }
    two_colour(spans.len(), &vec![None; spans.len()], &conflicts).is_some()
}

/// A diagram for a fixed spine (vertices and crossings), the chosen biarcs
/// and pages for the rest, if one exists.
fn complete(spine: &[Item], edges: &[(Vertex, Vertex)], biarcs: &[usize]) -> Option<ArcDiagram> {
    let pos: BTreeMap<Item, usize> = spine.iter().enumerate().map(|(i, &it)| (it, i)).collect();
    let vp = |v: Vertex| pos[&Item::Vertex(v)];
    // nodes: proper edges first, then two fixed half-arcs per biarc
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut fixed: Vec<Option<bool>> = Vec::new();
    let mut proper: Vec<usize> = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if biarcs.contains(&i) {
            continue;
        }
        let (x, y) = (vp(a), vp(b));
        spans.push((x.min(y), x.max(y)));
        fixed.push(None);
        proper.push(i);
    }
    for &i in biarcs {
        let (a, b) = edges[i];
        let (x, y) = (vp(a), vp(b));
        let c = pos[&Item::Crossing(Edge::new(a, b))];
        spans.push((x.min(y), c));
        fixed.push(Some(false));
        spans.push((c, x.max(y)));
        fixed.push(Some(true));
    }
    let mut conflicts = Vec::new();
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            if interleave(spans[i], spans[j]) {
                if fixed[i].is_some() && fixed[j].is_some() && fixed[i] == fixed[j] {
                    return None;
                }
                conflicts.push((i, j));
            }
        }
    }
    let col = two_colour(spans.len(), &fixed, &conflicts)?;
    let mut shapes = BTreeMap::new();
    for (k, &i) in proper.iter().enumerate() {
        let (a, b) = edges[i];
        shapes.insert(Edge::new(a, b), if col[k] { Shape::Mountain } else { Shape::Pocket });
    }
    for &i in biarcs {
        shapes.insert(Edge::new(edges[i].0, edges[i].1), Shape::Biarc);
    }
    let d = ArcDiagram::from_parts(spine.to_vec(), shapes, BTreeMap::new()).ok()?;
    d.is_planar().then_some(d)
}

/// Places the crossings of `biarcs[k..]` at every admissible spine index in
/// turn; stops at the first arrangement that can be completed.
fn place_crossings(
    spine: &mut Vec<Item>,
    edges: &[(Vertex, Vertex)],
    biarcs: &[usize],
    k: usize,
    out: &mut Option<ArcDiagram>,
) {
    if out.is_some() {
        return;
    }
    if k == biarcs.len() {
        *out = complete(spine, edges, biarcs);
        return;
    }
    let (a, b) = edges[biarcs[k]];
    let pa = spine.iter().position(|&it| it == Item::Vertex(a)).expect("vertex on spine");
    let pb = spine.iter().position(|&it| it == Item::Vertex(b)).expect("vertex on spine");
    let (lo, hi) = (pa.min(pb), pa.max(pb));
    for i in lo + 1..=hi {
        spine.insert(i, Item::Crossing(Edge::new(a, b)));
        place_crossings(spine, edges, biarcs, k + 1, out);
        spine.remove(i);
        if out.is_some() {
            return;
        }
    }
}

/// Calls `f` on every `k`-subset of `0..n` (lexicographic) until it returns
/// true.
fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::new(), f)
}

/// A diagram with exactly `budget` down-up biarcs on the given vertex order,
/// if one exists.
fn with_budget(edges: &[(Vertex, Vertex)], order: &[Vertex], budget: usize) -> Option<ArcDiagram> {
    let mut found = None;
    subsets(edges.len(), budget, &mut |set| {
        let mut spine: Vec<Item> = order.iter().map(|&v| Item::Vertex(v)).collect();
        place_crossings(&mut spine, edges, set, 0, &mut found);
        found.is_some()
    });
    found
}

/// Fewest down-up biarcs over diagrams with the given vertex order, trying
/// budgets up to `max_budget`.
pub fn min_biarcs_for_order(
    edges: &[(Vertex, Vertex)],
    order: &[Vertex],
    max_budget: usize,
) -> Option<(usize, ArcDiagram)> {
    (0..=max_budget.min(edges.len())).find_map(|b| with_budget(edges, order, b).map(|d| (b, d)))
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [Vertex]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exact minimum number of down-up biarcs in a monotone arc diagram of `g`,
/// over all spine orders, edge shapes and crossing positions. Budgets are
/// tried in increasing order. With no biarcs the first vertex can stay
/// leftmost, since 2-page embeddings survive cyclic shifts of the spine.
pub fn min_biarcs_bruteforce(g: &PlaneTriangulation, max_n: usize) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > max_n {
        return Err(OracleError::TooLarge { n, max: max_n });
    }
    let edges = g.edges();
    for budget in 0..=edges.len() {
        let mut order: Vec<Vertex> = (0..n).collect();
        loop {
            if budget > 0 || order.first() == Some(&0) {
                if let Some(d) = with_budget(&edges, &order, budget) {
                    return Ok(OracleResult { min_biarcs: budget, witness: d });
                }
            }
            if !next_permutation(&mut order) || (budget == 0 && order[0] != 0) {
                break;
            }
        }
    }
    unreachable!("every plane triangulation has a monotone diagram with down-up biarcs")
}
