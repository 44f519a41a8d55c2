//! Canonical vertex addressing on the level-m graph approximations.
//!
//! A vertex is F_w(q_c) for a word w over {0,1,2} of length m and a corner
//! c. A junction point has exactly two such representations,
//! F_{u a c^t}(q_c) = F_{u c a^t}(q_a); the canonical one is the
//! lexicographically smaller (word, corner) pair. Boundary points q_c have
//! the single representation (c^m, c).

use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexAddress {
    pub word: Vec<u8>,
    pub corner: u8,
}

impl VertexAddress {
    pub fn new(word: Vec<u8>, corner: u8) -> Self {
        debug_assert!(corner < 3 && word.iter().all(|&l| l < 3));
        VertexAddress { word, corner }
    }

    pub fn level(&self) -> usize {
        self.word.len()
    }

    /// The other representation of the same point, if there is one.
    pub fn twin(&self) -> Option<VertexAddress> {
        let c = self.corner;
        let mut w = self.word.clone();
        let mut tail = 0usize;
        while w.last() == Some(&c) {
            w.pop();
            tail += 1;
        }
        let a = *w.last()?;
        let mut tw = w;
        tw.pop();
        tw.push(c);
        tw.extend(std::iter::repeat(a).take(tail));
        Some(VertexAddress::new(tw, a))
    }

    pub fn canonicalize(self) -> VertexAddress {
        match self.twin() {
            Some(t) if t < self => t,
            _ => self,
        }
    }

    pub fn is_boundary(&self) -> bool {
        self.word.iter().all(|&l| l == self.corner)
    }

    /// Planar coordinates in the equilateral embedding: q_0 at the apex,
    /// q_1 bottom right, q_2 bottom left, unit side.
    pub fn coords(&self) -> (f64, f64) {
        const Q: [(f64, f64); 3] = [
            (0.5, 0.866_025_403_784_438_6),
            (1.0, 0.0),
            (0.0, 0.0),
        ];
        let (mut x, mut y) = Q[self.corner as usize];
        for &l in self.word.iter().rev() {
            let (qx, qy) = Q[l as usize];
            x = (x + qx) / 2.0;
            y = (y + qy) / 2.0;
        }
        (x, y)
    }

    /// Image under the reflection fixing q_0 (letters and corner 1 <-> 2).
    pub fn reflect(&self) -> VertexAddress {
        let swap = |l: u8| match l {
            1 => 2,
            2 => 1,
            other => other,
        };
        VertexAddress::new(self.word.iter().map(|&l| swap(l)).collect(), swap(self.corner))
            .canonicalize()
    }

    /// Image under the rotation q_0 -> q_1 -> q_2 -> q_0.
    pub fn rotate(&self) -> VertexAddress {
        VertexAddress::new(
            self.word.iter().map(|&l| (l + 1) % 3).collect(),
            (self.corner + 1) % 3,
        )
        .canonicalize()
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.word {
            write!(f, "{l}")?;
        }
        write!(f, ":{}", self.corner)
    }
}

/// The level-m graph: canonical vertices in sorted order and the level-m
/// cells as corner-index triples. Cell i corresponds to the word given by
/// the base-3 digits of i, most significant first.
#[derive(Debug)]
pub struct MeshTopology {
    pub level: usize,
    pub vertices: Vec<VertexAddress>,
    pub cells: Vec<[u32; 3]>,
}

impl MeshTopology {
    pub fn new(level: usize) -> Arc<MeshTopology> {
        let ncells = 3usize.pow(level as u32);
        let mut addrs: Vec<VertexAddress> = Vec::with_capacity(3 * ncells);
        for ci in 0..ncells {
            let word = cell_word(ci, level);
            for c in 0..3u8 {
                addrs.push(VertexAddress::new(word.clone(), c).canonicalize());
            }
        }
        let mut vertices = addrs.clone();
        vertices.sort();
        vertices.dedup();
        let cells = (0..ncells)
            .map(|ci| {
                let mut tri = [0u32; 3];
                for c in 0..3 {
                    let a = &addrs[3 * ci + c];
                    tri[c] = vertices.binary_search(a).expect("canonical address") as u32;
                }
                tri
            })
            .collect();
        Arc::new(MeshTopology {
            level,
            vertices,
            cells,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, addr: &VertexAddress) -> Option<u32> {
        self.vertices
            .binary_search(&addr.clone().canonicalize())
            .ok()
            .map(|i| i as u32)
    }

    /// Indices of q_0, q_1, q_2.
    pub fn boundary(&self) -> [u32; 3] {
        let mut out = [0u32; 3];
        for c in 0..3u8 {
            let addr = VertexAddress::new(vec![c; self.level], c);
            out[c as usize] = self.index_of(&addr).expect("boundary vertex");
        }
        out
    }

    pub fn is_boundary_index(&self, idx: u32) -> bool {
        self.vertices[idx as usize].is_boundary()
    }

    /// Graph edges: unordered vertex pairs sharing a cell.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(3 * self.cells.len());
        for tri in &self.cells {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let (x, y) = (tri[a].min(tri[b]), tri[a].max(tri[b]));
                out.push((x, y));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn cell_word(index: usize, level: usize) -> Vec<u8> {
    let mut word = vec![0u8; level];
    let mut rem = index;
    for slot in word.iter_mut().rev() {
        *slot = (rem % 3) as u8;
        rem /= 3;
    }
    word
}

/// Topologies for levels 0..=m plus the parent/child index maps the
/// hierarchical solver needs.
#[derive(Debug)]
pub struct MeshHierarchy {
    pub levels: Vec<Arc<MeshTopology>>,
    /// coarse vertex index -> index of the same point one level finer
    pub lift: Vec<Vec<u32>>,
    /// per coarse cell, fine indices of its three midpoints; entry i is the
    /// midpoint opposite corner i
    pub midpoints: Vec<Vec<[u32; 3]>>,
}

impl MeshHierarchy {
    pub fn new(level: usize) -> MeshHierarchy {
        let levels: Vec<Arc<MeshTopology>> = (0..=level).map(MeshTopology::new).collect();
        let mut lift = Vec::with_capacity(level);
        let mut midpoints = Vec::with_capacity(level);
        for k in 0..level {
            let coarse = &levels[k];
            let fine = &levels[k + 1];
            let mut l = vec![u32::MAX; coarse.vertex_count()];
            let mut mids = Vec::with_capacity(coarse.cells.len());
            for (ci, tri) in coarse.cells.iter().enumerate() {
                // child cells of coarse cell ci are 3ci, 3ci+1, 3ci+2
                for c in 0..3 {
                    l[tri[c] as usize] = fine.cells[3 * ci + c][c];
                }
                // midpoint between corners j and k is vertex of child j at corner k
                mids.push([
                    fine.cells[3 * ci + 1][2],
                    fine.cells[3 * ci + 0][2],
                    fine.cells[3 * ci + 0][1],
                ]);
            }
            debug_assert!(l.iter().all(|&v| v != u32::MAX));
            lift.push(l);
            midpoints.push(mids);
        }
        MeshHierarchy {
            levels,
            lift,
            midpoints,
        }
    }
}
