use super::{StallingsGraph, NONE};
use crate::words::{Letter, ReducedWord};

/// Split of a graph into its tail (the path spelling `t(1)` from the
/// basepoint) and its core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub tail_word: ReducedWord,
    /// `τ(1)`: the first core vertex reached from the basepoint.
    pub core_entry: usize,
    /// Sorted.
    pub core_vertices: Vec<usize>,
    /// In path order, starting with the basepoint; empty when the subgroup is
    /// cyclically reduced.
    pub tail_vertices: Vec<usize>,
    in_core: Vec<bool>,
}

impl CoreDecomposition {
    pub fn is_core(&self, v: usize) -> bool {
        self.in_core[v]
    }

    pub fn core_size(&self) -> usize {
        self.core_vertices.len()
    }
}

impl StallingsGraph {
    /// Tail/core split. The tail is the chain of degree-2 vertices hanging off
    /// a degree-1 basepoint. The trivial subgroup has core `{0}` and an empty
    /// tail.
    pub fn decompose(&self) -> CoreDecomposition {
        let n = self.vertex_count();
        let k = self.basis().letter_count();
        let mut tail_vertices = Vec::new();
        let mut tail_letters = Vec::new();
        let mut entry = 0;
        if self.degree(0) == 1 {
            let mut cur = 0usize;
            let mut came_by = None;
            loop {
                tail_vertices.push(cur);
                // leave by the unique edge other than the one we arrived on
                let Some(c) =
                    (0..k).find(|&c| Some(c) != came_by && self.target_code(cur, c).is_some())
                else {
                    break;
                };
                tail_letters.push(Letter::from_code(c));
                cur = self.target_code(cur, c).unwrap();
                came_by = Some(c ^ 1);
                if cur == 0 || self.degree(cur) != 2 {
                    break;
                }
            }
            entry = cur;
        }
        let mut in_core = vec![true; n];
        for &v in &tail_vertices {
            in_core[v] = false;
        }
        let core_vertices = (0..n).filter(|&v| in_core[v]).collect();
        CoreDecomposition {
            tail_word: ReducedWord::from_letters(tail_letters),
            core_entry: entry,
            core_vertices,
            tail_vertices,
            in_core,
        }
    }

    pub fn core_automaton(&self) -> CoreAutomaton {
        CoreAutomaton::new(self, &self.decompose())
    }
}

/// The core as a partial deterministic automaton over the symmetrized
/// alphabet, all states accepting. States are core vertices in increasing
/// vertex order.
#[derive(Clone, Debug)]
pub struct CoreAutomaton {
    letters: usize,
    delta: Vec<u32>,
    vertex_of: Vec<usize>,
    state_of: Vec<u32>,
    entry: usize,
}

impl CoreAutomaton {
    pub fn new(g: &StallingsGraph, decomposition: &CoreDecomposition) -> Self {
        let k = g.basis().letter_count();
        let vertex_of = decomposition.core_vertices.clone();
        let mut state_of = vec![NONE; g.vertex_count()];
        for (s, &v) in vertex_of.iter().enumerate() {
            state_of[v] = s as u32;
        }
        let mut delta = vec![NONE; vertex_of.len() * k];
        for (s, &v) in vertex_of.iter().enumerate() {
            for c in 0..k {
                if let Some(t) = g.target_code(v, c) {
                    delta[s * k + c] = state_of[t];
                }
            }
        }
        let entry = state_of[decomposition.core_entry] as usize;
        CoreAutomaton {
            letters: k,
            delta,
            vertex_of,
            state_of,
            entry,
        }
    }

    pub fn state_count(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn letter_count(&self) -> usize {
        self.letters
    }

    /// Vertex count of the graph the core was taken from.
    pub fn graph_vertex_count(&self) -> usize {
        self.state_of.len()
    }

    /// State of `τ(1)`.
    pub fn entry(&self) -> usize {
        self.entry
    }

    pub fn vertex(&self, state: usize) -> usize {
        self.vertex_of[state]
    }

    pub fn state(&self, vertex: usize) -> Option<usize> {
        self.state_of
            .get(vertex)
            .copied()
            .filter(|&s| s != NONE)
            .map(|s| s as usize)
    }

    #[inline]
    pub fn next(&self, s: usize, c: usize) -> Option<usize> {
        let t = self.delta[s * self.letters + c];
        (t != NONE).then_some(t as usize)
    }

    pub(crate) fn table(&self) -> &[u32] {
        &self.delta
    }

    pub fn read(&self, s: usize, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(s, |p, x| self.next(p, x.code()))
    }

    /// Bit `c` set iff state `s` has a transition by letter code `c`.
    pub fn defined_letters(&self, s: usize) -> u64 {
        (0..self.letters)
            .filter(|&c| self.next(s, c).is_some())
            .fold(0, |m, c| m | (1 << c))
    }
}
