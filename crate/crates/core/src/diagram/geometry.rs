//! Independent planarity oracle: every half-arc is a semicircle over exact
//! rational spine coordinates, and two semicircles on the same page conflict
//! if their circles meet strictly off the spine.

use alloc::vec::Vec;

use num_rational::Ratio;

use super::{ArcDiagram, Edge, HalfArc};

type Q = Ratio<i128>;

fn circles_meet_off_spine(a: &HalfArc, b: &HalfArc, x: &[Q]) -> bool {
    let (c1, r1) = ((x[a.a] + x[a.b]) / 2, (x[a.b] - x[a.a]) / 2);
    let (c2, r2) = ((x[b.a] + x[b.b]) / 2, (x[b.b] - x[b.a]) / 2);
    if c1 == c2 {
        // concentric circles meet only if they coincide
        return r1 == r2;
    }
    // radical line x = ((r1^2 - r2^2) - (c1^2 - c2^2)) / (2 (c2 - c1))
    let px = (r1 * r1 - r2 * r2 - c1 * c1 + c2 * c2) / (Q::from_integer(2) * (c2 - c1));
    let y2 = r1 * r1 - (px - c1) * (px - c1);
    y2 > Q::from_integer(0)
}

/// First pair of same-page half-arcs whose semicircles intersect away from
/// the spine, placing spine item `i` at `coords[i]` (strictly increasing).
pub fn semicircle_conflict(d: &ArcDiagram, coords: &[Ratio<i64>]) -> Option<(Edge, Edge)> {
    assert_eq!(coords.len(), d.len());
    let x: Vec<Q> = coords.iter().map(|c| Q::new(*c.numer() as i128, *c.denom() as i128)).collect();
    let arcs = d.half_arcs();
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if a.page == b.page && circles_meet_off_spine(a, b, &x) {
                return Some((a.edge, b.edge));
            }
        }
    }
    None
}
