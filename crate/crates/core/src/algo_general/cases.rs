//! The constructions for a vertex `u` together with its regions
//! `X_1 .. X_{k-1}`: first `u` is placed while the rightmost nonempty
//! region is handled, then the remaining regions are processed right to
//! left. Nonempty triangles next to the pivot vertices are drawn
//! recursively and plugged in.

use alloc::format;
use alloc::vec::Vec;

use super::search::append_last;
use super::steps::{insert_one, How};
use super::sub::{plug, SubInstance};
use super::{AlgoError, Drawing, Run, Target};
use crate::canonical_order::{OrderingState, PivotSide, ProblemType, Profile, Region, RegionClass};
use crate::diagram::{ArcDiagram, Context, Edge, Shape};
use crate::graph::Vertex;

/// Plug combinations tried per sub-diagram.
const PLUG_LIMIT: usize = 64;
/// Partial drawings kept between two regions.
const KEEP: usize = 6;

/// A partial drawing while `u` and its regions are processed.
#[derive(Clone, Debug)]
pub(crate) struct Phase {
    pub(crate) d: ArcDiagram,
    /// 1-based index of the next region to process, 0 when done.
    pub(crate) next: usize,
    /// Missing edges at `u` are drawn as mountains.
    pub(crate) u_mountains: bool,
}

fn unmatched(what: impl Into<alloc::string::String>) -> AlgoError {
    AlgoError::CaseNotMatched(what.into())
}

fn planar(d: ArcDiagram, what: &str) -> Result<ArcDiagram, AlgoError> {
    if d.is_planar() {
        Ok(d)
    } else {
        Err(unmatched(format!("{what} is not planar")))
    }
}

impl<'g> Run<'g> {
    fn prof(&self, c: Vertex) -> Result<Profile, AlgoError> {
        Ok(self.st.profile(&self.d, c)?)
    }

    /// Inserts `v` at spine index `at` and draws its edges to the vertices
    /// already present (restricted to `only` if given): pockets where planar,
    /// else mountains. With `mountains` set, mountains are tried first.
    pub(crate) fn put(
        &self,
        d: &ArcDiagram,
        v: Vertex,
        at: usize,
        only: Option<&[Vertex]>,
        mountains: bool,
    ) -> Result<ArcDiagram, AlgoError> {
        let mut d = d.clone();
        d.insert_vertex_at(at, v)?;
        for &w in self.g.rotation(v) {
            if !d.has_vertex(w) || only.is_some_and(|o| !o.contains(&w)) {
                continue;
            }
            add_edge(&mut d, v, w, mountains)?;
        }
        Ok(d)
    }

    /// Pushes down the mountains of `m` and puts `v` right after `m`.
    fn put_pushed(&self, d: &ArcDiagram, v: Vertex, m: Vertex) -> Result<ArcDiagram, AlgoError> {
        let mut d = d.clone();
        d.push_down_at(m);
        let d = planar(d, "push-down")?;
        self.put(&d, v, d.vpos(m) + 1, None, false)
    }

    /// Draws every missing edge between present vertices at `verts`.
    pub(crate) fn fill(&self, d: &ArcDiagram, verts: &[Vertex], mountains: bool) -> Result<ArcDiagram, AlgoError> {
        let mut d = d.clone();
        for &x in verts {
            if !d.has_vertex(x) {
                continue;
            }
            for &w in self.g.rotation(x) {
                if d.has_vertex(w) && d.shape_of(x, w).is_none() {
                    add_edge(&mut d, x, w, mountains)?;
                }
            }
        }
        Ok(d)
    }

    /// Complete candidate drawings for `u` and its regions, cheapest first
    /// under `ctx`.
    pub(crate) fn region_plans(&mut self, u: Vertex, regions: &[Region], ctx: &Context) -> Result<Vec<ArcDiagram>, AlgoError> {
        let ws = self.st.path_neighbors(u);
        let mut phases = self.init_phases(u, regions, &ws)?;
        let mut last_err = None;
        while phases.iter().any(|p| p.next > 0) {
            let mut next = Vec::new();
            for ph in phases {
                if ph.next == 0 {
                    next.push(ph);
                    continue;
                }
                match self.region_step(u, regions, &ws, &ph) {
                    Ok(v) => next.extend(v),
                    Err(e) => last_err = Some(e),
                }
            }
            phases = prune(next, ctx);
            if phases.is_empty() {
                return Err(last_err.unwrap_or_else(|| unmatched("no drawing survived")));
            }
        }
        let mut inner: Vec<Vertex> = regions.iter().flat_map(|r| r.vertices.iter().copied()).collect();
        inner.push(u);
        let mut out = Vec::new();
        for ph in phases {
            let d = match self.fill(&ph.d, &[u], ph.u_mountains).and_then(|d| self.fill(&d, &inner, false)) {
                Ok(d) => d,
                Err(e) => {
                    last_err = Some(e);
                    continue;
                }
            };
            if d.is_planar() {
                out.push(d);
            }
        }
        if out.is_empty() {
            return Err(last_err.unwrap_or_else(|| unmatched("no complete drawing")));
        }
        out.sort_by_key(|d| ctx.required_cost(d));
        Ok(out)
    }

    fn init_phases(&mut self, u: Vertex, regions: &[Region], ws: &[Vertex]) -> Result<Vec<Phase>, AlgoError> {
        let [_, _, vn] = self.g.outer_face();
        if u == vn && self.target == Target::Adapt {
            // u goes to the right end, joined by mountains up to the
            // rightmost nonempty region
            let j = regions.iter().rposition(|r| !r.vertices.is_empty()).map_or(0, |x| x + 1);
            let mut d = self.d.clone();
            d.insert_vertex_at(d.len(), u)?;
            for &w in &ws[j..] {
                d.mountain(w, u)?;
            }
            self.bump("regions-last-adapt");
            return Ok(alloc::vec![Phase { d: planar(d, "last vertex")?, next: j, u_mountains: false }]);
        }
        let d = self.d.clone();
        self.init_from(u, regions, ws, regions.len(), &d)
    }

    /// Places `u` while handling the rightmost region among `X_1 .. X_t`
    /// that is not an empty mountain.
    fn init_from(
        &mut self,
        u: Vertex,
        regions: &[Region],
        ws: &[Vertex],
        t_max: usize,
        d: &ArcDiagram,
    ) -> Result<Vec<Phase>, AlgoError> {
        let mut t = t_max;
        while t >= 1 && regions[t - 1].class == RegionClass::EmptyMountain {
            t -= 1;
        }
        if t == 0 {
            return Err(unmatched(format!("all regions of u={u} are empty mountains")));
        }
        let r = &regions[t - 1];
        match r.class {
            RegionClass::EmptyPocket => {
                self.bump("regions-init-pocket");
                let d = self.put(d, u, d.vpos(ws[t - 1]) + 1, Some(&ws[t - 1..]), false)?;
                Ok(alloc::vec![Phase { d, next: t - 1, u_mountains: false }])
            }
            RegionClass::LeftPivot => self.init_left(u, regions, ws, t, d),
            RegionClass::RightPivot => self.init_right(u, regions, ws, t, d),
            RegionClass::BothPivot => self.init_both(u, regions, ws, t, d),
            RegionClass::EmptyMountain => unreachable!(),
        }
    }

    /// `c` over its pushed down leftmost mountain and `u` in the pocket left
    /// of it.
    fn init_left_plain(
        &mut self,
        u: Vertex,
        c: Vertex,
        ell: Vertex,
        ws: &[Vertex],
        t: usize,
        d0: &ArcDiagram,
    ) -> Result<Phase, AlgoError> {
        self.bump("regions-init-left");
        let d = self.put_pushed(d0, c, ell)?;
        let d = self.put(&d, u, d.vpos(ell) + 1, Some(&ws[t - 1..]), false)?;
        Ok(Phase { d, next: t - 1, u_mountains: false })
    }

    /// `u` goes into the leftmost edge of the run of empty regions left of
    /// `X_t` and its mountains are pushed down to make room for `c` to its
    /// right.
    fn init_left_spread(
        &mut self,
        u: Vertex,
        c: Vertex,
        regions: &[Region],
        ws: &[Vertex],
        t: usize,
        d0: &ArcDiagram,
    ) -> Result<Phase, AlgoError> {
        self.bump("regions-init-left-spread");
        let j = Self::empty_run(regions, t);
        let mut d = d0.clone();
        if d.shape_of(ws[j], ws[j + 1]) == Some(Shape::Mountain) {
            d.push_down_at(ws[j]);
        }
        let d = planar(d, "push-down")?;
        let mut d = self.put(&d, u, d.vpos(ws[j]) + 1, Some(&ws[j..t]), false)?;
        d.push_down_at(u);
        let d = planar(d, "push-down at u")?;
        let d = self.put(&d, c, d.vpos(u) + 1, None, false)?;
        let d = self.fill_only(&d, u, &ws[t..], true)?;
        Ok(Phase { d, next: j, u_mountains: false })
    }

    /// Left end `j` of the run of empty regions `X_{j+1} .. X_{t-1}`.
    fn empty_run(regions: &[Region], t: usize) -> usize {
        let mut j = t - 1;
        while j >= 1 && regions[j - 1].vertices.is_empty() {
            j -= 1;
        }
        j
    }

    fn init_left(
        &mut self,
        u: Vertex,
        regions: &[Region],
        ws: &[Vertex],
        t: usize,
        d0: &ArcDiagram,
    ) -> Result<Vec<Phase>, AlgoError> {
        let r = &regions[t - 1];
        let cs = &r.eligible;
        let s = cs.len();
        let wr = ws[t];
        let cs_last = cs[s - 1];
        let delta = self.triangle_inside([u, cs_last, wr])?;
        let left_empty = t >= 2 && regions[t - 2].vertices.is_empty();
        if s == 1 {
            let c = cs[0];
            let ell = self.prof(c)?.ell();
            if delta.is_empty() && left_empty {
                let mut out = Vec::new();
                let mut err = None;
                match self.init_left_spread(u, c, regions, ws, t, d0) {
                    Ok(ph) => out.push(ph),
                    Err(e) => err = Some(e),
                }
                if regions[t - 2].class == RegionClass::EmptyPocket && ell == ws[t - 1] {
                    // u into the pocket left of ell, c between u and ell
                    self.bump("regions-init-left-nested");
                    let attempt = self
                        .put(d0, u, d0.vpos(ws[t - 2]) + 1, Some(&ws[t - 2..t]), false)
                        .and_then(|d| self.put(&d, c, d.vpos(u) + 1, None, false))
                        .and_then(|d| self.fill_only(&d, u, &ws[t..], true));
                    match attempt {
                        Ok(d) => out.push(Phase { d, next: t - 1, u_mountains: false }),
                        Err(e) => err = Some(e),
                    }
                }
                // the plain drawing below, paying for the mountain at u
                match self.init_left_plain(u, c, ell, ws, t, d0) {
                    Ok(ph) => out.push(ph),
                    Err(e) => err = Some(e),
                }
                return if out.is_empty() { Err(err.unwrap()) } else { Ok(out) };
            }
            if delta.is_empty() {
                return Ok(alloc::vec![self.init_left_plain(u, c, ell, ws, t, d0)?]);
            }
            self.bump("regions-init-left");
            let d = self.put_pushed(d0, c, ell)?;
            let d = self.put(&d, u, d.vpos(ell) + 1, Some(&ws[t - 1..]), false)?;
            return self.plug_triangle(&d, [u, c, wr], Target::Adapt, &[None, Some(c)], t - 1);
        }
        self.bump("regions-init-left-many");
        let mut d = d0.clone();
        if s == 2 {
            let ell = self.prof(cs[0])?.ell();
            d = self.put_pushed(&d, cs[0], ell)?;
            d = self.put(&d, u, d.vpos(ell) + 1, Some(&ws[t - 1..]), false)?;
            d = self.put(&d, cs[1], d.vpos(u) + 1, None, false)?;
        } else {
            for (h, &c) in cs.iter().enumerate() {
                if h != s - 2 {
                    let ell = self.prof(c)?.ell();
                    d = self.put_pushed(&d, c, ell)?;
                }
            }
            let ell_s = self.prof(cs_last)?.ell();
            d = self.put(&d, cs[s - 2], d.vpos(ell_s) + 1, None, false)?;
            d = self.put(&d, u, d.vpos(cs[s - 2]) + 1, Some(&ws[t - 1..]), false)?;
        }
        if delta.is_empty() {
            return Ok(alloc::vec![Phase { d, next: t - 1, u_mountains: false }]);
        }
        self.plug_triangle(&d, [u, cs_last, wr], Target::Adapt, &[None, Some(cs_last)], t - 1)
    }

    fn init_right(
        &mut self,
        u: Vertex,
        regions: &[Region],
        ws: &[Vertex],
        t: usize,
        d0: &ArcDiagram,
    ) -> Result<Vec<Phase>, AlgoError> {
        let c = regions[t - 1].eligible[0];
        let p = self.prof(c)?;
        let (wl, ell) = (ws[t - 1], p.ell());
        if ell != wl {
            return Err(unmatched(format!("right pivot {c} does not start at w={wl}")));
        }
        let delta = self.triangle_inside([u, wl, c])?;
        let simple = t == 1 || !regions[t - 2].vertices.is_empty();
        if simple {
            let d = self.put_pushed(d0, c, ell)?;
            if delta.is_empty() {
                self.bump("regions-init-right");
                let d = self.put(&d, u, d.vpos(wl) + 1, Some(&ws[t - 1..]), false)?;
                return Ok(alloc::vec![Phase { d, next: t - 1, u_mountains: false }]);
            }
            self.bump("regions-init-right-sub");
            let sub = SubInstance::triangle(self.g, [wl, c, u])?;
            return self.plug_strong_last(&d, &sub, u, regions, ws, t, t - 1);
        }
        let j = Self::empty_run(regions, t);
        if delta.is_empty() {
            self.bump("regions-init-right-spread");
            let mut d = d0.clone();
            insert_one(&mut d, &p, How::Pocket)?;
            let d = planar(d, "pocket insertion")?;
            let d = self.put(&d, u, d.vpos(c) + 1, Some(&ws[j..]), false)?;
            return Ok(alloc::vec![Phase { d, next: j, u_mountains: false }]);
        }
        self.bump("regions-init-right-virtual");
        let d = self.put_pushed(d0, c, ell)?;
        let mut cycle = alloc::vec![u];
        cycle.extend_from_slice(&ws[j..t]);
        cycle.push(c);
        let extra: Vec<[Vertex; 3]> = (j..t - 1).map(|h| [ws[h + 1], ws[h], c]).collect();
        let sub = SubInstance::cut(self.g, &cycle, &extra, [ws[j], c, u])?;
        self.plug_strong_last(&d, &sub, u, regions, ws, t, j)
    }

    /// Draws `sub` (with `u` as its last vertex) as an extensible diagram and
    /// plugs it into `d`; virtual edges are dropped. A problematic `u` left
    /// out by the recursion is inserted into its pocket if it has right pivot
    /// type; otherwise `u` is placed later together with `X_{t-1}` and its
    /// edges into the plugged part become mountains.
    #[allow(clippy::too_many_arguments)]
    fn plug_strong_last(
        &mut self,
        d: &ArcDiagram,
        sub: &SubInstance,
        u: Vertex,
        regions: &[Region],
        ws: &[Vertex],
        t: usize,
        next: usize,
    ) -> Result<Vec<Phase>, AlgoError> {
        let dr = self.draw_sub(sub, Target::Strong)?;
        let mut sd = dr.diagram.clone();
        let mut later = false;
        if let Some(x) = dr.pending {
            let p = pending_profile(sub, &dr, x)?;
            match p.kind.pivot_side() {
                Some(PivotSide::Left) if t == 1 => {
                    insert_one(&mut sd, &p, How::PushAt(p.ell()))?;
                }
                Some(PivotSide::Left) => later = true,
                _ => {
                    insert_one(&mut sd, &p, How::Pocket)?;
                }
            }
        }
        let mut sd = sub.to_host(&sd);
        drop_virtual(self, &mut sd)?;
        let mut out = Vec::new();
        for x in plug(d, &sd, PLUG_LIMIT) {
            if later {
                // u is placed with the regions further left
                for ph in self.init_from(u, regions, ws, t - 1, &x)? {
                    out.push(Phase { u_mountains: true, ..ph });
                }
            } else {
                out.push(Phase { d: x, next, u_mountains: false });
            }
        }
        if out.is_empty() {
            return Err(unmatched(format!("sub-diagram for u={u} does not plug in")));
        }
        Ok(out)
    }

    fn init_both(
        &mut self,
        u: Vertex,
        regions: &[Region],
        ws: &[Vertex],
        t: usize,
        d0: &ArcDiagram,
    ) -> Result<Vec<Phase>, AlgoError> {
        let Some(d) = self.both_pivot_empty_box(u, &regions[t - 1], d0)? else {
            self.bump("regions-init-both-sub");
            let j = Self::empty_run(regions, t);
            let mut out = Vec::new();
            for x in self.both_pivot_pentagon(u, &regions[t - 1], ws[j], d0, Target::Main)? {
                if let Ok(y) = self.fill_only(&x, u, &ws[t..], true) {
                    out.push(Phase { d: y, next: j, u_mountains: false });
                }
            }
            return nonempty(out, u);
        };
        let ell_s = self.prof(*regions[t - 1].eligible.last().unwrap())?.ell();
        self.bump("regions-init-both");
        let d = self.put(&d, u, d.vpos(ell_s) + 1, Some(&ws[t - 1..]), false)?;
        Ok(alloc::vec![Phase { d, next: t - 1, u_mountains: false }])
    }

    /// A both-pivot region whose quadrilateral is not empty: the right pivot
    /// goes in over its pushed down mountain, then the part of the region
    /// between `u`, the path from `w` to the right pivot and the right pivot
    /// itself is drawn recursively, with virtual edges from the path to the
    /// right pivot closing it to a triangle `(w, c_s, u)`.
    fn both_pivot_pentagon(
        &mut self,
        u: Vertex,
        r: &Region,
        w: Vertex,
        d0: &ArcDiagram,
        target: Target,
    ) -> Result<Vec<ArcDiagram>, AlgoError> {
        let cs = *r.eligible.last().unwrap();
        let wp = self.prof(cs)?.ell();
        let d = self.put_pushed(d0, cs, wp)?;
        let path = self.st.path();
        let pos = |v: Vertex| path.iter().position(|&x| x == v);
        let (Some(a), Some(b)) = (pos(w), pos(wp)) else {
            return Err(unmatched(format!("both-pivot region of u={u}: {w} or {wp} is off the path")));
        };
        let mut cycle = alloc::vec![u];
        cycle.extend_from_slice(&path[a..=b]);
        cycle.push(cs);
        let extra: Vec<[Vertex; 3]> = (a..b).map(|h| [path[h + 1], path[h], cs]).collect();
        let sub = SubInstance::cut(self.g, &cycle, &extra, [w, cs, u])?;
        let dr = self.draw_sub(&sub, target)?;
        let mut sd = sub.to_host(&dr.diagram);
        drop_virtual(self, &mut sd)?;
        Ok(plug(&d, &sd, PLUG_LIMIT))
    }

    /// Places every eligible vertex of a both-pivot region over its pushed
    /// down leftmost mountain, provided the quadrilateral between the last
    /// two of them, their shared path vertex and `u` is empty.
    fn both_pivot_empty_box(&self, u: Vertex, r: &Region, d0: &ArcDiagram) -> Result<Option<ArcDiagram>, AlgoError> {
        let cs = &r.eligible;
        let s = cs.len();
        let (cl, cr) = (cs[s - 2], cs[s - 1]);
        let pr = self.prof(cr)?;
        if pr.kind.pivot_side() != Some(PivotSide::Right) {
            return Err(unmatched(format!("both-pivot region of u={u}: rightmost eligible {cr} is no right pivot")));
        }
        let wp = pr.ell();
        for (a, b) in [(cl, wp), (cr, u), (u, cl)] {
            if !self.g.has_edge(a, b) {
                return Err(unmatched(format!("both-pivot region of u={u}: no edge {a}-{b}")));
            }
        }
        if !self.g.interior_of_cycle(&[cl, wp, cr, u]).is_empty() {
            return Ok(None);
        }
        let mut d = d0.clone();
        for &c in cs {
            let ell = self.prof(c)?.ell();
            d = self.put_pushed(&d, c, ell)?;
        }
        Ok(Some(d))
    }

    /// Processes region `X_j` once `u` is placed to its right, then joins
    /// `u w_j` by a mountain.
    fn region_step(&mut self, u: Vertex, regions: &[Region], ws: &[Vertex], ph: &Phase) -> Result<Vec<Phase>, AlgoError> {
        let wl = ws[ph.next - 1];
        let mut out = Vec::new();
        let verts = &regions[ph.next - 1].vertices;
        for mut p in self.region_body(u, regions, ws, ph)? {
            // edges from the region to w_j that the sub-diagram did not draw
            match self.fill(&p.d, verts, true).or_else(|_| self.fill(&p.d, verts, false)) {
                Ok(d) => p.d = d,
                Err(_) => continue,
            }
            if p.d.shape_of(u, wl).is_none() {
                p.d.mountain(wl, u)?;
                if !p.d.is_planar() {
                    continue;
                }
            }
            out.push(p);
        }
        if out.is_empty() {
            return Err(unmatched(format!("mountain {wl}-{u} crosses the region drawing")));
        }
        Ok(out)
    }

    fn region_body(&mut self, u: Vertex, regions: &[Region], ws: &[Vertex], ph: &Phase) -> Result<Vec<Phase>, AlgoError> {
        let j = ph.next;
        let r = &regions[j - 1];
        let (wl, wr) = (ws[j - 1], ws[j]);
        let mut d = ph.d.clone();
        let done = |d: ArcDiagram| Phase { d, next: j - 1, u_mountains: ph.u_mountains };
        match r.class {
            RegionClass::EmptyPocket | RegionClass::EmptyMountain => Ok(alloc::vec![done(d)]),
            RegionClass::LeftPivot => {
                let cs = &r.eligible;
                let s = cs.len();
                for &c in &cs[..s - 1] {
                    let ell = self.prof(c)?.ell();
                    d = self.put_pushed(&d, c, ell)?;
                }
                let c = cs[s - 1];
                let ell = self.prof(c)?.ell();
                let delta = self.triangle_inside([u, c, wr])?;
                if delta.is_empty() {
                    self.bump("regions-left");
                    return Ok(alloc::vec![done(self.put_pushed(&d, c, ell)?)]);
                }
                if ph.d.shape_of(u, wr) == Some(Shape::Mountain) {
                    self.bump("regions-left-sub-rotated");
                    let d = self.put_pushed(&d, c, ell)?;
                    let sub = SubInstance::triangle(self.g, [u, c, wr])?;
                    let dr = self.draw_sub(&sub, Target::Strong)?;
                    let mut sd = dr.diagram.clone();
                    if let Some(x) = dr.pending {
                        let p = pending_profile(&sub, &dr, x)?;
                        if p.kind == ProblemType::T3MP {
                            insert_one(&mut sd, &p, How::Pocket)?;
                        } else {
                            append_last(&mut sd, &p)?;
                        }
                    }
                    let sd = sub.to_host(&sd);
                    let mut out = Vec::new();
                    for mask in 0..8u8 {
                        let mut s2 = sd.clone();
                        let mut h2 = d.clone();
                        if mask & 1 != 0 && s2.push_down_at(u).is_empty() {
                            continue;
                        }
                        if mask & 2 != 0 && s2.push_down_at(wr).is_empty() {
                            continue;
                        }
                        if mask & 4 != 0 && h2.push_down_at(wr).is_empty() {
                            continue;
                        }
                        for x in plug(&h2, &s2.rotated_pi(), PLUG_LIMIT) {
                            out.push(done(x));
                        }
                    }
                    return nonempty(out, u);
                }
                self.bump("regions-left-sub");
                let sub = SubInstance::triangle(self.g, [wr, u, c])?;
                let dr = self.draw_sub(&sub, Target::Strong)?;
                let sd = sub.to_host(&dr.diagram);
                let mut out = Vec::new();
                for x in plug(&d, &sd, PLUG_LIMIT) {
                    if dr.pending.is_some() {
                        let mut y = x.clone();
                        y.push_down_at(ell);
                        let Ok(y) = planar(y, "push-down") else { continue };
                        let Ok(y) = self.put(&y, c, y.vpos(ell) + 1, None, true) else { continue };
                        out.push(done(y));
                    } else {
                        out.push(done(x));
                    }
                }
                nonempty(out, u)
            }
            RegionClass::RightPivot => {
                let c = r.eligible[0];
                let ell = self.prof(c)?.ell();
                if ell != wl {
                    return Err(unmatched(format!("right pivot {c} does not start at w={wl}")));
                }
                let d = self.put_pushed(&d, c, ell)?;
                let delta = self.triangle_inside([u, wl, c])?;
                if delta.is_empty() {
                    self.bump("regions-right");
                    return Ok(alloc::vec![done(d)]);
                }
                self.bump("regions-right-sub");
                let sub = SubInstance::triangle(self.g, [wl, c, u])?;
                let dr = self.draw_sub(&sub, Target::Adapt)?;
                let sd = sub.to_host(&dr.diagram);
                nonempty(plug(&d, &sd, PLUG_LIMIT).into_iter().map(done).collect(), u)
            }
            RegionClass::BothPivot => {
                if let Some(d) = self.both_pivot_empty_box(u, r, &d)? {
                    self.bump("regions-both");
                    return Ok(alloc::vec![done(d)]);
                }
                self.bump("regions-both-sub");
                let out: Vec<Phase> = self.both_pivot_pentagon(u, r, wl, &d, Target::Adapt)?.into_iter().map(done).collect();
                nonempty(out, u)
            }
        }
    }

    /// Vertices inside the counterclockwise triangle, which must exist.
    fn triangle_inside(&self, tri: [Vertex; 3]) -> Result<Vec<Vertex>, AlgoError> {
        for i in 0..3 {
            if !self.g.has_edge(tri[i], tri[(i + 1) % 3]) {
                return Err(unmatched(format!("{tri:?} is not a triangle")));
            }
        }
        Ok(self.g.interior_of_cycle(&tri))
    }

    /// Adds the missing edges from `v` to `to`.
    fn fill_only(&self, d: &ArcDiagram, v: Vertex, to: &[Vertex], mountains: bool) -> Result<ArcDiagram, AlgoError> {
        let mut d = d.clone();
        for &w in to {
            if d.shape_of(v, w).is_none() {
                add_edge(&mut d, v, w, mountains)?;
            }
        }
        Ok(d)
    }

    /// Draws the triangle `tri` (counterclockwise, `tri[0] tri[1]` the base
    /// edge, `tri[2]` last) recursively and plugs it into `d`, optionally
    /// after pushing down the mountains at one vertex.
    fn plug_triangle(
        &mut self,
        d: &ArcDiagram,
        tri: [Vertex; 3],
        target: Target,
        pre: &[Option<Vertex>],
        next: usize,
    ) -> Result<Vec<Phase>, AlgoError> {
        let sub = SubInstance::triangle(self.g, tri)?;
        let dr = self.draw_sub(&sub, target)?;
        let sd = sub.to_host(&dr.diagram);
        let mut out = Vec::new();
        for &m in pre {
            let mut base = d.clone();
            if let Some(m) = m {
                if base.push_down_at(m).is_empty() {
                    continue;
                }
            }
            for x in plug(&base, &sd, PLUG_LIMIT) {
                out.push(Phase { d: x, next, u_mountains: false });
            }
        }
        nonempty(out, tri[0])
    }
}

fn nonempty(out: Vec<Phase>, u: Vertex) -> Result<Vec<Phase>, AlgoError> {
    if out.is_empty() {
        Err(unmatched(format!("sub-diagram next to u={u} does not plug in")))
    } else {
        Ok(out)
    }
}

/// Adds edge `v w` as a pocket, or as a mountain if the pocket crosses
/// something (the other way round with `mountains`).
fn add_edge(d: &mut ArcDiagram, v: Vertex, w: Vertex, mountains: bool) -> Result<(), AlgoError> {
    let (first, second) = if mountains { (Shape::Mountain, Shape::Pocket) } else { (Shape::Pocket, Shape::Mountain) };
    let e = d.add_proper(v, w, first)?;
    if d.is_planar() {
        return Ok(());
    }
    d.to_proper(e, second)?;
    if d.is_planar() {
        return Ok(());
    }
    Err(unmatched(format!("edge {v}-{w} fits neither page")))
}

/// Profile of the vertex a strong recursion left out, in sub-instance ids.
fn pending_profile(sub: &SubInstance, dr: &Drawing, x: Vertex) -> Result<Profile, AlgoError> {
    let st = OrderingState::from_order(&sub.g, &dr.order)?;
    let _ = sub;
    Ok(st.profile(&dr.diagram, x)?)
}

/// Removes edges of a plugged sub-diagram that are not edges of the host.
fn drop_virtual(run: &Run<'_>, d: &mut ArcDiagram) -> Result<(), AlgoError> {
    let virt: Vec<Edge> = d.edges().map(|(e, _)| e).filter(|e| !run.g.has_edge(e.0, e.1)).collect();
    for e in virt {
        d.remove_edge(e)?;
    }
    Ok(())
}

/// Keeps the cheapest distinct partial drawings.
fn prune(mut v: Vec<Phase>, ctx: &Context) -> Vec<Phase> {
    v.sort_by_key(|p| (p.next, ctx.required_cost(&p.d)));
    let mut out: Vec<Phase> = Vec::new();
    for p in v {
        if out.len() == KEEP {
            break;
        }
        if !out.iter().any(|q| q.d == p.d && q.next == p.next) {
            out.push(p);
        }
    }
    out
}
