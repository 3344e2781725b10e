//! Single-vertex insertions and the steps built only from them: default
//! insertion, the last vertex, and the two pivot shortcuts.

use alloc::vec::Vec;

use super::{AlgoError, Run, Target};
use crate::canonical_order::{OrderingState, PivotSide, ProblemType, Profile};
use crate::diagram::{ArcDiagram, Credit, Shape};
use crate::graph::Vertex;

/// How a single eligible vertex is put on the spine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum How {
    /// Into the rightmost covered pocket if there is one, otherwise over the
    /// pushed-down rightmost covered mountain.
    Default,
    /// Into the rightmost covered pocket.
    Pocket,
    /// Into the `k`-th covered path edge, which must be a pocket.
    PocketAt(usize),
    /// Push down the mountains of the given path vertex and place the new
    /// vertex right after it.
    PushAt(Vertex),
}

/// Inserts `p.v` as described by `how`. Returns `"pocket"` or `"push-down"`.
pub(crate) fn insert_one(d: &mut ArcDiagram, p: &Profile, how: How) -> Result<&'static str, AlgoError> {
    let pocket = p.shapes.iter().rposition(|&s| s == Shape::Pocket);
    let how = match how {
        How::Default => match pocket {
            Some(k) => How::PocketAt(k),
            None => How::PushAt(p.neighbors[p.degree() - 2]),
        },
        How::Pocket => match pocket {
            Some(k) => How::PocketAt(k),
            None => return Err(AlgoError::CaseNotMatched(alloc::format!("vertex {} covers no pocket", p.v))),
        },
        h => h,
    };
    match how {
        How::PocketAt(k) => {
            if p.shapes.get(k) != Some(&Shape::Pocket) {
                return Err(AlgoError::CaseNotMatched(alloc::format!("edge {k} under vertex {} is no pocket", p.v)));
            }
            let (pl, pr) = (p.neighbors[k], p.neighbors[k + 1]);
            d.insert_vertex_at(d.vpos(pl) + 1, p.v)?;
            for &w in &p.neighbors {
                if w == pl || w == pr {
                    d.pocket(w, p.v)?;
                } else {
                    d.mountain(w, p.v)?;
                }
            }
            Ok("pocket")
        }
        How::PushAt(m) => {
            d.push_down_at(m);
            d.insert_vertex_at(d.vpos(m) + 1, p.v)?;
            for &w in &p.neighbors {
                if w == m {
                    d.pocket(w, p.v)?;
                } else {
                    d.mountain(w, p.v)?;
                }
            }
            Ok("push-down")
        }
        How::Default | How::Pocket => unreachable!(),
    }
}

/// Applies `plan` in order to copies of the diagram and ordering state.
pub(crate) fn chain<'g>(
    d: &ArcDiagram,
    st: &OrderingState<'g>,
    plan: &[(Vertex, How)],
) -> Result<(ArcDiagram, OrderingState<'g>), AlgoError> {
    let mut d = d.clone();
    let mut st = st.clone();
    for &(v, how) in plan {
        let p = st.profile(&d, v)?;
        insert_one(&mut d, &p, how)?;
        st.advance_mut(v)?;
    }
    Ok((d, st))
}

impl<'g> Run<'g> {
    /// Inserts a non-problematic eligible vertex, if any. Push-down insertions
    /// with a gain come first, then pocket insertions, then the rest.
    pub(crate) fn step_default(&mut self) -> Result<bool, AlgoError> {
        let mut best: Option<((u8, usize), Profile)> = None;
        for v in self.st.eligible_set() {
            let p = self.st.profile(&self.d, v)?;
            if p.kind.is_problematic() {
                continue;
            }
            let all_mountains = p.shapes.iter().all(|&s| s == Shape::Mountain);
            let key = match (all_mountains, p.degree()) {
                (true, d) if d >= 6 => (0, usize::MAX - d),
                (false, _) => (1, 0),
                _ => (2, 0),
            };
            if best.as_ref().map_or(true, |(k, _)| key < *k) {
                best = Some((key, p));
            }
        }
        let Some((_, p)) = best else { return Ok(false) };
        let mut d = self.d.clone();
        let kind = insert_one(&mut d, &p, How::Default)?;
        let allowance = if kind == "pocket" {
            self.one_minus_chi()
        } else {
            Credit::from_integer(5 - p.degree() as i64)
        };
        self.commit(kind, d, &[p.v], allowance)?;
        Ok(true)
    }

    /// Inserts `vn`. Returns `false` if the run stops before it.
    pub(crate) fn step_last(&mut self) -> Result<bool, AlgoError> {
        let [_, _, vn] = self.g.outer_face();
        if !self.st.is_eligible(vn) {
            return Err(AlgoError::NotLastVertex(vn));
        }
        let p = self.st.profile(&self.d, vn)?;
        match self.target {
            Target::Adapt => {
                let mut d = self.d.clone();
                d.insert_vertex_at(d.len(), vn)?;
                for &w in &p.neighbors {
                    d.mountain(w, vn)?;
                }
                self.commit("last-adapt", d, &[vn], self.one_minus_chi())?;
            }
            _ if !p.kind.is_problematic() => {
                let mut d = self.d.clone();
                let kind = insert_one(&mut d, &p, How::Default)?;
                let allowance = if kind == "pocket" {
                    self.one_minus_chi()
                } else {
                    Credit::from_integer(5 - p.degree() as i64)
                };
                self.commit(kind, d, &[vn], allowance)?;
            }
            Target::Strong => {
                self.pending = Some(vn);
                return Ok(false);
            }
            Target::Main => {
                let how = match p.kind {
                    ProblemType::T3MP => How::Pocket,
                    _ => How::PushAt(p.ell()),
                };
                let mut d = self.d.clone();
                insert_one(&mut d, &p, how)?;
                let allowance = Credit::from_integer(1) + self.chi();
                self.commit("last", d, &[vn], allowance)?;
            }
        }
        Ok(true)
    }

    /// A problematic `v` whose pivot cover has a single path neighbour goes in
    /// together with that cover. Otherwise a right-pivot `v` whose pivot
    /// cover is eligible goes in together with it.
    pub(crate) fn step_pivot_shortcuts(&mut self) -> Result<bool, AlgoError> {
        let [_, _, vn] = self.g.outer_face();
        let el = self.st.eligible_set();
        let mut profiles: Vec<Profile> = Vec::with_capacity(el.len());
        for &v in &el {
            profiles.push(self.st.profile(&self.d, v)?);
        }
        for p in &profiles {
            let Some(pc) = p.pivot_cover else { continue };
            if self.target == Target::Adapt && pc == vn {
                continue;
            }
            if self.st.path_neighbors(pc).len() != 1 {
                continue;
            }
            let first = match p.kind.pivot_side() {
                Some(PivotSide::Left) => How::PushAt(p.ell()),
                _ => How::Pocket,
            };
            let (d, _) = chain(&self.d, &self.st, &[(p.v, first), (pc, How::Default)])?;
            let allowance = Credit::from_integer(1) + self.chi() * 2;
            self.commit("pivot-pair", d, &[p.v, pc], allowance)?;
            return Ok(true);
        }
        for p in &profiles {
            if p.kind != ProblemType::T3MP {
                continue;
            }
            let Some(pc) = p.pivot_cover else { continue };
            let Some(q) = profiles.iter().find(|q| q.v == pc) else { continue };
            let (d, _) = chain(&self.d, &self.st, &[(p.v, How::Pocket), (pc, How::Default)])?;
            let allowance = if q.kind == ProblemType::T3MP {
                self.one_minus_chi()
            } else {
                Credit::from_integer(1)
            };
            self.commit("pivot-eligible", d, &[p.v, pc], allowance)?;
            return Ok(true);
        }
        Ok(false)
    }
}
