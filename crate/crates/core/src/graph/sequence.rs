//! Construction sequences of planar 3-trees.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{from_faces, GraphError, PlaneTriangulation, Vertex};

/// Base triangle `(v1, v2, v3)` and insertion steps `(new vertex, face)`.
/// The base inner face runs counterclockwise `v1 -> v2 -> v3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSequence {
    pub base: [Vertex; 3],
    pub steps: Vec<(Vertex, [Vertex; 3])>,
}

fn key(f: [Vertex; 3]) -> [Vertex; 3] {
    let mut k = f;
    k.sort_unstable();
    k
}

impl ConstructionSequence {
    pub fn n(&self) -> usize {
        3 + self.steps.len()
    }

    /// Checks ids and that every step targets a current inner face. Returns the
    /// final oriented inner faces.
    pub fn check(&self) -> Result<Vec<[Vertex; 3]>, GraphError> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut mark = |v: Vertex| -> Result<(), GraphError> {
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if seen[v] {
                return Err(GraphError::InvalidSequence("vertex appears twice"));
            }
            seen[v] = true;
            Ok(())
        };
        for &v in &self.base {
            mark(v)?;
        }
        let [a, b, c] = self.base;
        let mut faces: BTreeMap<[Vertex; 3], [Vertex; 3]> = BTreeMap::new();
        faces.insert(key([a, b, c]), [a, b, c]);
        for &(x, f) in &self.steps {
            mark(x)?;
            let [p, q, r] = faces
                .remove(&key(f))
                .ok_or(GraphError::InvalidSequence("target is not a current face"))?;
            for g in [[p, q, x], [q, r, x], [r, p, x]] {
                faces.insert(key(g), g);
            }
        }
        Ok(faces.into_values().collect())
    }

    /// Replays the sequence into a plane triangulation with outer face
    /// `(v1, v2, v3)`.
    pub fn replay(&self) -> Result<PlaneTriangulation, GraphError> {
        let mut faces = self.check()?;
        let [a, b, c] = self.base;
        faces.push([b, a, c]);
        from_faces(self.n(), &faces, [a, b, c])
    }
}
