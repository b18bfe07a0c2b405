//! Malnormality through the fiber square of the core.
//!
//! `H` is malnormal when `H^g ∩ H` is trivial for every `g ∉ H`. In the
//! fiber square of the core this says every component off the diagonal is a
//! tree: a cycle through `(p, q)` with `p ≠ q` spells infinitely many words
//! readable from both `p` and `q`.

use std::collections::VecDeque;

use crate::graph::{CoreAutomaton, StallingsGraph};
use crate::unionfind::UnionFind;

/// The fiber square of a core automaton: vertices are ordered pairs of
/// states, with an `a`-edge wherever both coordinates have one.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    states: usize,
    letters: usize,
    delta: Vec<u32>,
    vertex_of: Vec<usize>,
    component: Vec<u32>,
    component_vertices: Vec<usize>,
    component_edges: Vec<usize>,
}

pub fn fiber_square(core: &CoreAutomaton) -> ProductGraph {
    let n = core.state_count();
    let k = core.letter_count();
    let mut delta = vec![u32::MAX; n * n * k];
    let mut uf = UnionFind::new(n * n);
    for s in 0..n {
        for t in 0..n {
            let i = s * n + t;
            for c in 0..k {
                if let (Some(s2), Some(t2)) = (core.next(s, c), core.next(t, c)) {
                    delta[i * k + c] = (s2 * n + t2) as u32;
                    uf.union(i, s2 * n + t2);
                }
            }
        }
    }
    let (component, count) = uf.classes();
    let mut component_vertices = vec![0; count];
    let mut component_edges = vec![0; count];
    for i in 0..n * n {
        let c = component[i] as usize;
        component_vertices[c] += 1;
        component_edges[c] += (0..k)
            .step_by(2)
            .filter(|&a| delta[i * k + a] != u32::MAX)
            .count();
    }
    ProductGraph {
        states: n,
        letters: k,
        delta,
        vertex_of: (0..n).map(|s| core.vertex(s)).collect(),
        component,
        component_vertices,
        component_edges,
    }
}

impl ProductGraph {
    pub fn vertex_count(&self) -> usize {
        self.states * self.states
    }

    pub fn component_count(&self) -> usize {
        self.component_vertices.len()
    }

    /// Component of the pair of states `(s, t)`.
    pub fn component(&self, s: usize, t: usize) -> usize {
        self.component[s * self.states + t] as usize
    }

    /// The pairs in component `c`, in row-major order.
    pub fn members(&self, c: usize) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .filter(|&i| self.component[i] as usize == c)
            .map(|i| (i / self.states, i % self.states))
            .collect()
    }

    pub fn next(&self, s: usize, t: usize, letter: usize) -> Option<(usize, usize)> {
        let j = self.delta[(s * self.states + t) * self.letters + letter];
        (j != u32::MAX).then(|| (j as usize / self.states, j as usize % self.states))
    }

    /// Vertex and edge counts of component `c`; inverse edge pairs count once.
    pub fn component_size(&self, c: usize) -> (usize, usize) {
        (self.component_vertices[c], self.component_edges[c])
    }

    pub fn is_tree(&self, c: usize) -> bool {
        self.component_edges[c] < self.component_vertices[c]
    }

    /// Unordered pairs of distinct vertices whose component has a cycle,
    /// as graph vertices with `p < q`, sorted.
    pub fn cyclic_off_diagonal_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.states {
            for t in s + 1..self.states {
                if !self.is_tree(self.component(s, t)) {
                    let (p, q) = (self.vertex_of[s], self.vertex_of[t]);
                    out.push((p.min(q), p.max(q)));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Calls `f(s, t)` for each pair of states `s < t` whose component in the
/// fiber square carries a cycle.
///
/// Only unordered pairs are stored. Swapping coordinates is an automorphism
/// of the square without fixed points off the diagonal. A component it maps
/// to itself is never a tree, and the quotient by the swap has the same
/// edge to vertex ratio, so counting on unordered pairs decides the cycle
/// question for every component.
fn for_each_infinite_pair(core: &CoreAutomaton, mut f: impl FnMut(usize, usize)) {
    let n = core.state_count();
    if n < 2 {
        return;
    }
    let k = core.letter_count();
    let index = |p: usize, q: usize| -> usize {
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        p * (2 * n - p - 1) / 2 + (q - p - 1)
    };
    let pairs = n * (n - 1) / 2;
    let mut comp = vec![u32::MAX; pairs];
    let mut cyclic: Vec<bool> = Vec::new();
    let mut queue = VecDeque::new();
    let mut start = 0;
    for p in 0..n {
        for q in p + 1..n {
            let i = start;
            start += 1;
            if comp[i] != u32::MAX {
                continue;
            }
            let id = cyclic.len() as u32;
            comp[i] = id;
            queue.push_back((p as u32, q as u32));
            let (mut vertices, mut edges) = (0usize, 0usize);
            while let Some((x, y)) = queue.pop_front() {
                vertices += 1;
                for c in 0..k {
                    let (Some(x2), Some(y2)) = (core.next(x as usize, c), core.next(y as usize, c))
                    else {
                        continue;
                    };
                    if c % 2 == 0 {
                        edges += 1;
                    }
                    let j = index(x2, y2);
                    if comp[j] == u32::MAX {
                        comp[j] = id;
                        queue.push_back((x2 as u32, y2 as u32));
                    }
                }
            }
            cyclic.push(edges >= vertices);
        }
    }
    let mut i = 0;
    for p in 0..n {
        for q in p + 1..n {
            if cyclic[comp[i] as usize] {
                f(p, q);
            }
            i += 1;
        }
    }
}

/// Unordered pairs `p < q` of core vertices whose languages share
/// infinitely many words, sorted.
pub fn infinite_intersection_pairs(h: &StallingsGraph) -> Vec<(usize, usize)> {
    let core = h.core_automaton();
    let mut out = Vec::new();
    for_each_infinite_pair(&core, |s, t| {
        let (p, q) = (core.vertex(s), core.vertex(t));
        out.push((p.min(q), p.max(q)));
    });
    out.sort_unstable();
    out
}

pub fn is_malnormal(h: &StallingsGraph) -> bool {
    let mut found = false;
    for_each_infinite_pair(&h.core_automaton(), |_, _| found = true);
    !found
}

/// One round: identify every pair with an infinite common language at once,
/// then fold. `None` when the graph is already malnormal.
fn closure_step(h: &StallingsGraph) -> Option<StallingsGraph> {
    let core = h.core_automaton();
    let mut uf = UnionFind::new(core.state_count());
    let mut any = false;
    for_each_infinite_pair(&core, |s, t| {
        uf.union(s, t);
        any = true;
    });
    if !any {
        return None;
    }
    let pairs: Vec<(usize, usize)> = (0..core.state_count())
        .filter_map(|s| {
            let r = uf.find(s);
            (r != s).then(|| (core.vertex(s), core.vertex(r)))
        })
        .collect();
    Some(h.identify_and_fold(&pairs).expect("core vertices exist"))
}

/// The least malnormal extension of `H`, with the number of rounds taken.
pub fn malnormal_closure(h: &StallingsGraph) -> (StallingsGraph, usize) {
    let mut g = h.clone();
    let mut rounds = 0;
    while let Some(next) = closure_step(&g) {
        g = next;
        rounds += 1;
    }
    (g, rounds)
}

/// Every intermediate graph `H = H_0 < H_1 < … < H_k`.
pub fn malnormal_closure_trace(h: &StallingsGraph) -> Vec<StallingsGraph> {
    let mut trace = vec![h.clone()];
    while let Some(next) = closure_step(trace.last().unwrap()) {
        trace.push(next);
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::sub;
    use crate::words::{Basis, Letter};

    fn hypercube(k: usize) -> StallingsGraph {
        let edges: Vec<_> = (0..1usize << k)
            .flat_map(|v| (0..k).map(move |i| (v, Letter::positive(i), v ^ (1 << i))))
            .collect();
        StallingsGraph::from_edges(Basis::new(k).unwrap(), 1 << k, 0, &edges).unwrap()
    }

    #[test]
    fn square_of_a_squared() {
        let sq = fiber_square(&sub(2, &["aa"]).core_automaton());
        assert_eq!(sq.vertex_count(), 4);
        assert_eq!(sq.component_count(), 2);
        assert_eq!(sq.members(sq.component(0, 0)), vec![(0, 0), (1, 1)]);
        assert_eq!(sq.members(sq.component(0, 1)), vec![(0, 1), (1, 0)]);
        assert_eq!(sq.component_size(sq.component(0, 1)), (2, 2));
        assert_eq!(sq.cyclic_off_diagonal_pairs(), vec![(0, 1)]);
        assert_eq!(sq.next(0, 1, 0), Some((1, 0)));
    }

    #[test]
    fn single_state_squares() {
        let sq = fiber_square(&sub(2, &["a"]).core_automaton());
        assert_eq!((sq.vertex_count(), sq.component_count()), (1, 1));
        assert_eq!(
            fiber_square(&sub(2, &["abA"]).core_automaton()).vertex_count(),
            1
        );
    }

    #[test]
    fn pair_examples() {
        assert_eq!(infinite_intersection_pairs(&sub(2, &["aa"])), vec![(0, 1)]);
        assert!(infinite_intersection_pairs(&sub(2, &["a"])).is_empty());
        assert!(infinite_intersection_pairs(&sub(2, &["abA"])).is_empty());
    }

    #[test]
    fn unordered_scan_matches_full_square() {
        for gens in [
            &["aa"][..],
            &["abAB"],
            &["aab", "bba"],
            &["abA", "bbaB", "aaa"],
            &["aba", "bab"],
        ] {
            let h = sub(2, gens);
            let full = fiber_square(&h.core_automaton()).cyclic_off_diagonal_pairs();
            assert_eq!(infinite_intersection_pairs(&h), full, "{gens:?}");
        }
    }

    #[test]
    fn malnormal_examples() {
        assert!(is_malnormal(&sub(2, &["a"])));
        assert!(!is_malnormal(&sub(2, &["aa"])));
        assert!(is_malnormal(&sub(2, &[])));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(malnormal_closure(&sub(2, &["aa"])), (sub(2, &["a"]), 1));
        assert_eq!(malnormal_closure(&sub(2, &["a"])), (sub(2, &["a"]), 0));
        let f = StallingsGraph::whole_group(Basis::new(2).unwrap());
        assert_eq!(malnormal_closure(&hypercube(2)), (f, 1));
        let trace = malnormal_closure_trace(&sub(2, &["aa"]));
        assert_eq!(trace, vec![sub(2, &["aa"]), sub(2, &["a"])]);
    }
}
