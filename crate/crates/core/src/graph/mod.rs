//! Stallings graphs: the based, deterministic, involutive labeled graphs that
//! represent finitely generated subgroups of a free group.

mod core;
mod fold;
mod morphism;
mod ops;
mod text;

use std::collections::VecDeque;
use std::fmt;

pub use self::core::{CoreAutomaton, CoreDecomposition};
pub use self::fold::{FoldStats, LabeledGraph};
pub use self::morphism::GraphMorphism;
pub use self::ops::StepKind;
pub use self::text::{parse_subgroup_file, SubgroupFile};

use crate::error::{Error, Result};
use crate::words::{Basis, Letter, ReducedWord, Word};

pub(crate) const NONE: u32 = u32::MAX;

/// The graph `(Γ(H), 1)` of a subgroup `H`.
///
/// Vertices are always numbered canonically: breadth-first from the basepoint
/// `0`, visiting letters in the order `a1 < A1 < a2 < ...`. Two graphs over
/// the same basis are therefore equal exactly when they represent the same
/// subgroup.
///
/// Each vertex keeps one slot per letter of the symmetrized alphabet: the
/// `a`-slot is the forward index, the `A`-slot the reverse index of the
/// positive `a`-edges. Both are written together, which keeps the graph
/// involutive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StallingsGraph {
    basis: Basis,
    delta: Vec<u32>,
}

impl StallingsGraph {
    /// The graph of the trivial subgroup: one vertex, no edges.
    pub fn trivial(basis: Basis) -> Self {
        StallingsGraph {
            basis,
            delta: vec![NONE; basis.letter_count()],
        }
    }

    /// The graph of `F` itself: a single vertex with a loop per generator.
    pub fn whole_group(basis: Basis) -> Self {
        StallingsGraph {
            basis,
            delta: vec![0; basis.letter_count()],
        }
    }

    /// Folds a bouquet of loops labeled by `generators`.
    pub fn build(basis: Basis, generators: &[ReducedWord]) -> Self {
        let mut g = LabeledGraph::new(basis);
        for w in generators {
            g.add_loop(0, w.letters());
        }
        g.fold()
    }

    /// Builds a graph from explicit edges, renumbering canonically with
    /// `base` as basepoint. Labels may be inverse letters. The input must be
    /// deterministic and connected; admissibility is not required.
    pub fn from_edges(
        basis: Basis,
        vertex_count: usize,
        base: usize,
        edges: &[(usize, Letter, usize)],
    ) -> Result<Self> {
        let k = basis.letter_count();
        let mut delta = vec![NONE; vertex_count.max(1) * k];
        for &(p, x, q) in edges {
            for v in [p, q] {
                if v >= vertex_count {
                    return Err(Error::UnknownVertex {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            if !basis.contains(x) {
                return Err(Error::GeneratorOutOfRange {
                    index: x.generator() + 1,
                    rank: basis.rank(),
                });
            }
            for (s, c, t) in [(p, x.code(), q), (q, x.inverse().code(), p)] {
                let slot = &mut delta[s * k + c];
                if *slot != NONE && *slot as usize != t {
                    return Err(Error::NotDeterministic {
                        vertex: s,
                        letter: Letter::from_code(c).to_char(),
                    });
                }
                *slot = t as u32;
            }
        }
        if base >= vertex_count.max(1) {
            return Err(Error::UnknownVertex {
                vertex: base,
                count: vertex_count,
            });
        }
        let g = Self::canonical_from_table(basis, &delta, base);
        if g.vertex_count() != vertex_count.max(1) {
            let seen = Self::reachable(basis, &delta, base);
            let missing = seen.iter().position(|&s| !s).unwrap_or(0);
            return Err(Error::Disconnected(missing));
        }
        Ok(g)
    }

    /// Renumbers the component of `root` in a full transition table.
    /// Vertices outside that component are dropped.
    pub(crate) fn canonical_from_table(basis: Basis, delta: &[u32], root: usize) -> Self {
        let k = basis.letter_count();
        let m = delta.len() / k;
        let mut id = vec![NONE; m];
        let mut order = Vec::new();
        id[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for c in 0..k {
                let t = delta[v * k + c];
                if t != NONE && id[t as usize] == NONE {
                    id[t as usize] = order.len() as u32;
                    order.push(t as usize);
                }
            }
        }
        let mut out = vec![NONE; order.len() * k];
        for (new, &old) in order.iter().enumerate() {
            for c in 0..k {
                let t = delta[old * k + c];
                if t != NONE {
                    out[new * k + c] = id[t as usize];
                }
            }
        }
        StallingsGraph { basis, delta: out }
    }

    fn reachable(basis: Basis, delta: &[u32], root: usize) -> Vec<bool> {
        let k = basis.letter_count();
        let m = delta.len() / k;
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for c in 0..k {
                let t = delta[v * k + c];
                if t != NONE && !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t as usize);
                }
            }
        }
        seen
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn vertex_count(&self) -> usize {
        self.delta.len() / self.basis.letter_count()
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    #[inline]
    pub fn target(&self, v: usize, x: Letter) -> Option<usize> {
        self.target_code(v, x.code())
    }

    #[inline]
    pub(crate) fn target_code(&self, v: usize, c: usize) -> Option<usize> {
        let t = self.delta[v * self.basis.letter_count() + c];
        (t != NONE).then_some(t as usize)
    }

    /// Positive edges `(p, a, q)` sorted by `(p, a, q)`.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for a in self.basis.generators() {
                if let Some(q) = self.target(v, a) {
                    out.push((v, a, q));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.delta.iter().step_by(2).filter(|&&t| t != NONE).count()
    }

    /// In-degree plus out-degree; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        let k = self.basis.letter_count();
        self.delta[v * k..(v + 1) * k]
            .iter()
            .filter(|&&t| t != NONE)
            .count()
    }

    pub fn is_trivial(&self) -> bool {
        self.delta.iter().all(|&t| t == NONE)
    }

    /// Every vertex except possibly the basepoint has degree at least 2.
    pub fn is_admissible(&self) -> bool {
        (1..self.vertex_count()).all(|v| self.degree(v) >= 2)
    }

    /// Rank of the represented subgroup (Euler characteristic of the graph).
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Follows `letters` from `v`; `None` at the first missing transition.
    pub fn read(&self, v: usize, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(v, |p, &x| self.target(p, x))
    }

    pub fn path_read(&self, v: usize, w: &Word) -> Option<usize> {
        self.read(v, w.letters())
    }

    /// A reduced word is in the subgroup iff it labels a loop at the basepoint.
    pub fn contains(&self, w: &ReducedWord) -> bool {
        self.read(0, w.letters()) == Some(0)
    }

    /// The same subgroup viewed inside a free group of larger rank.
    pub fn with_basis(&self, basis: Basis) -> Result<Self> {
        if basis.rank() < self.basis.rank() {
            return Err(Error::OutOfRange(format!(
                "cannot restrict a rank-{} graph to rank {}",
                self.basis.rank(),
                basis.rank()
            )));
        }
        let (k0, k1) = (self.basis.letter_count(), basis.letter_count());
        let n = self.vertex_count();
        let mut delta = vec![NONE; n * k1];
        for v in 0..n {
            delta[v * k1..v * k1 + k0].copy_from_slice(&self.delta[v * k0..(v + 1) * k0]);
        }
        Ok(StallingsGraph { basis, delta })
    }

    /// Removes degree-1 vertices other than the basepoint until admissible.
    pub fn pruned(&self) -> Self {
        let k = self.basis.letter_count();
        let n = self.vertex_count();
        let mut delta = self.delta.clone();
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut stack: Vec<usize> = (1..n).filter(|&v| degree[v] == 1).collect();
        if stack.is_empty() {
            return self.clone();
        }
        while let Some(v) = stack.pop() {
            if degree[v] != 1 {
                continue;
            }
            let c = (0..k)
                .find(|&c| delta[v * k + c] != NONE)
                .expect("degree-1 vertex has an edge");
            let t = delta[v * k + c] as usize;
            delta[v * k + c] = NONE;
            delta[t * k + (c ^ 1)] = NONE;
            degree[v] = 0;
            degree[t] -= 1;
            if t != 0 && degree[t] == 1 {
                stack.push(t);
            }
        }
        Self::canonical_from_table(self.basis, &delta, 0)
    }

    /// Generators read off a breadth-first spanning tree: one per edge outside
    /// the tree.
    pub fn schreier_generators(&self) -> Vec<ReducedWord> {
        let n = self.vertex_count();
        let mut tree_path: Vec<Option<Vec<Letter>>> = vec![None; n];
        let mut tree_edge = vec![None; n];
        tree_path[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for x in self.basis.letters() {
                if let Some(t) = self.target(v, x) {
                    if tree_path[t].is_none() {
                        let mut p = tree_path[v].clone().unwrap();
                        p.push(x);
                        tree_path[t] = Some(p);
                        tree_edge[t] = Some(if x.is_inverse() {
                            (t, x.inverse(), v)
                        } else {
                            (v, x, t)
                        });
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut gens = Vec::new();
        for (p, a, q) in self.edges() {
            if tree_edge[q] == Some((p, a, q)) || tree_edge[p] == Some((p, a, q)) {
                continue;
            }
            let word = tree_path[p]
                .iter()
                .flatten()
                .copied()
                .chain(std::iter::once(a))
                .chain(tree_path[q].iter().flatten().rev().map(|x| x.inverse()));
            gens.push(ReducedWord::from_letters(word));
        }
        gens
    }

    /// Canonical text form; equal strings iff equal subgroups (same basis).
    pub fn canonical_form(&self) -> String {
        self.to_text()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\nbase: 0\n", self.vertex_count());
        for (p, a, q) in self.edges() {
            s.push_str(&format!("{} {} {}\n", p, a.to_char(), q));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph stallings {\n  0 [shape=doublecircle];\n");
        for (p, a, q) in self.edges() {
            s.push_str(&format!("  {} -> {} [label=\"{}\"];\n", p, q, a.to_char()));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for StallingsGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StallingsGraph(rank {}; ", self.basis.rank())?;
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(p, a, q)| format!("{p}{a}{q}"))
            .collect();
        write!(f, "n={} [{}])", self.vertex_count(), edges.join(" "))
    }
}

impl fmt::Display for StallingsGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
