use super::{StallingsGraph, NONE};
use crate::unionfind::UnionFind;
use crate::words::{Basis, Letter};

/// A based, involutive, labeled graph that may violate determinism. Folding
/// turns it into a [`StallingsGraph`].
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    basis: Basis,
    vertex_count: usize,
    edges: Vec<(u32, Letter, u32)>,
    identify: Vec<(u32, u32)>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FoldStats {
    /// Vertex merges performed, including requested identifications.
    pub merges: usize,
}

impl LabeledGraph {
    /// A single basepoint `0` and no edges.
    pub fn new(basis: Basis) -> Self {
        LabeledGraph {
            basis,
            vertex_count: 1,
            edges: Vec::new(),
            identify: Vec::new(),
        }
    }

    /// Copies the vertices and edges of `g`; vertex ids are preserved.
    pub fn from_graph(g: &StallingsGraph) -> Self {
        let mut out = LabeledGraph::new(g.basis());
        out.vertex_count = g.vertex_count();
        out.edges = g
            .edges()
            .into_iter()
            .map(|(p, a, q)| (p as u32, a, q as u32))
            .collect();
        out
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, p: usize, x: Letter, q: usize) {
        debug_assert!(p < self.vertex_count && q < self.vertex_count);
        if x.is_inverse() {
            self.edges.push((q as u32, x.inverse(), p as u32));
        } else {
            self.edges.push((p as u32, x, q as u32));
        }
    }

    /// Adds a fresh path `from -letters-> to`.
    pub fn add_path(&mut self, from: usize, letters: &[Letter], to: usize) {
        if letters.is_empty() {
            self.identify(from, to);
            return;
        }
        let mut cur = from;
        for (i, &x) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                to
            } else {
                self.add_vertex()
            };
            self.add_edge(cur, x, next);
            cur = next;
        }
    }

    pub fn add_loop(&mut self, at: usize, letters: &[Letter]) {
        self.add_path(at, letters, at);
    }

    /// Requests that `p` and `q` become one vertex.
    pub fn identify(&mut self, p: usize, q: usize) {
        self.identify.push((p as u32, q as u32));
    }

    /// Appends a disjoint copy of `g`; returns the id of its basepoint.
    pub fn add_graph(&mut self, g: &StallingsGraph) -> usize {
        let offset = self.vertex_count;
        self.vertex_count += g.vertex_count();
        for (p, a, q) in g.edges() {
            self.edges
                .push(((p + offset) as u32, a, (q + offset) as u32));
        }
        offset
    }

    pub fn fold(&self) -> StallingsGraph {
        self.fold_with_stats().0
    }

    pub fn fold_with_stats(&self) -> (StallingsGraph, FoldStats) {
        let mut folder = Folder::new(self.basis, self.vertex_count);
        for &(p, q) in &self.identify {
            folder.pending.push((p, q));
        }
        for &(p, a, q) in &self.edges {
            folder.add_edge(p, a.code(), q);
        }
        folder.run();
        folder.finish()
    }

    /// Folds, then removes dangling vertices other than the basepoint.
    pub fn fold_and_prune(&self) -> StallingsGraph {
        self.fold().pruned()
    }
}

/// Union-find over vertices plus a worklist of label conflicts. Each class
/// representative owns one slot per letter; slot targets may be stale and
/// are resolved through `find`.
struct Folder {
    k: usize,
    basis: Basis,
    uf: UnionFind,
    table: Vec<u32>,
    pending: Vec<(u32, u32)>,
    merges: usize,
}

impl Folder {
    fn new(basis: Basis, n: usize) -> Self {
        let k = basis.letter_count();
        Folder {
            k,
            basis,
            uf: UnionFind::new(n),
            table: vec![NONE; n * k],
            pending: Vec::new(),
            merges: 0,
        }
    }

    fn set(&mut self, v: u32, c: usize, t: u32) {
        let v = self.uf.find(v as usize);
        let slot = &mut self.table[v * self.k + c];
        if *slot == NONE {
            *slot = t;
        } else if *slot != t {
            self.pending.push((*slot, t));
        }
    }

    fn add_edge(&mut self, p: u32, c: usize, q: u32) {
        self.set(p, c, q);
        self.set(q, c ^ 1, p);
        self.run();
    }

    fn run(&mut self) {
        while let Some((x, y)) = self.pending.pop() {
            let Some((keep, gone)) = self.uf.union(x as usize, y as usize) else {
                continue;
            };
            self.merges += 1;
            for c in 0..self.k {
                let ty = self.table[gone * self.k + c];
                if ty == NONE {
                    continue;
                }
                self.table[gone * self.k + c] = NONE;
                let slot = &mut self.table[keep * self.k + c];
                if *slot == NONE {
                    *slot = ty;
                } else {
                    self.pending.push((*slot, ty));
                }
            }
        }
    }

    fn finish(mut self) -> (StallingsGraph, FoldStats) {
        let n = self.uf.len();
        let mut delta = vec![NONE; n * self.k];
        for v in 0..n {
            if self.uf.find(v) != v {
                continue;
            }
            for c in 0..self.k {
                let t = self.table[v * self.k + c];
                if t != NONE {
                    delta[v * self.k + c] = self.uf.find(t as usize) as u32;
                }
            }
        }
        let root = self.uf.find(0);
        let g = StallingsGraph::canonical_from_table(self.basis, &delta, root);
        (
            g,
            FoldStats {
                merges: self.merges,
            },
        )
    }
}
