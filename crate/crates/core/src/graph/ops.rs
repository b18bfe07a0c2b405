use std::collections::HashMap;

use super::morphism::lift_pair;
use super::{LabeledGraph, StallingsGraph, NONE};
use crate::error::{Error, Result};
use crate::words::{Letter, ReducedWord};

/// How adding one generator transforms the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// The generator already belongs to the subgroup.
    NoOp,
    /// A fresh path `from -word-> to` is attached and nothing folds.
    REStep {
        from: usize,
        word: ReducedWord,
        to: usize,
    },
    /// Two existing vertices (`p < q`) are identified, then the graph folds.
    IStep { p: usize, q: usize },
}

impl StallingsGraph {
    /// `H^g = g^-1 H g`, rebuilt from conjugated Schreier generators.
    pub fn conjugate(&self, g: &ReducedWord) -> StallingsGraph {
        let gens: Vec<_> = self
            .schreier_generators()
            .iter()
            .map(|x| x.conjugate_by(g))
            .collect();
        StallingsGraph::build(self.basis(), &gens)
    }

    /// `<H ∪ K>`: glue at the basepoints and fold.
    pub fn join(&self, other: &StallingsGraph) -> StallingsGraph {
        let (h, k) = lift_pair(self, other);
        let mut g = LabeledGraph::from_graph(&h);
        let base = g.add_graph(&k);
        g.identify(0, base);
        g.fold()
    }

    /// `H ∩ K`: the component of the pair of basepoints in the fiber product,
    /// pruned to admissibility.
    pub fn intersect(&self, other: &StallingsGraph) -> StallingsGraph {
        let (h, k) = lift_pair(self, other);
        let letters = h.basis().letter_count();
        let mut id: HashMap<(usize, usize), u32> = HashMap::new();
        let mut pairs = vec![(0usize, 0usize)];
        id.insert((0, 0), 0);
        let mut delta: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            for c in 0..letters {
                let t = match (h.target_code(p, c), k.target_code(q, c)) {
                    (Some(p2), Some(q2)) => {
                        let next = pairs.len() as u32;
                        *id.entry((p2, q2)).or_insert_with(|| {
                            pairs.push((p2, q2));
                            next
                        })
                    }
                    _ => NONE,
                };
                delta.push(t);
            }
        }
        StallingsGraph::canonical_from_table(h.basis(), &delta, 0).pruned()
    }

    /// Identifies each pair of vertices and folds, pruning any dangling
    /// vertices that result.
    pub fn identify_and_fold(&self, pairs: &[(usize, usize)]) -> Result<StallingsGraph> {
        let n = self.vertex_count();
        let mut g = LabeledGraph::from_graph(self);
        for &(p, q) in pairs {
            for v in [p, q] {
                if v >= n {
                    return Err(Error::UnknownVertex {
                        vertex: v,
                        count: n,
                    });
                }
            }
            g.identify(p, q);
        }
        Ok(g.fold_and_prune())
    }

    /// A subgroup of index `r`: an `r`-sheeted cyclic cover in which every
    /// edge outside a spanning tree climbs one sheet. The basepoint lifts to
    /// sheet 0.
    pub fn index_r_subgroup(&self, r: usize) -> Result<StallingsGraph> {
        if self.is_trivial() {
            return Err(Error::TrivialSubgroup);
        }
        if r == 0 {
            return Err(Error::OutOfRange("index must be at least 1".into()));
        }
        let k = self.basis().letter_count();
        let n = self.vertex_count();
        let rank = self.basis().rank();
        let tree = self.spanning_tree();
        let mut delta = vec![NONE; n * r * k];
        for (p, a, q) in self.edges() {
            let shift = usize::from(!tree[p * rank + a.generator()]);
            for i in 0..r {
                let (s, t) = (p * r + i, q * r + (i + shift) % r);
                delta[s * k + a.code()] = t as u32;
                delta[t * k + a.inverse().code()] = s as u32;
            }
        }
        Ok(StallingsGraph::canonical_from_table(self.basis(), &delta, 0).pruned())
    }

    /// Marks the positive edges of a breadth-first spanning tree, indexed by
    /// `source * rank + generator`.
    fn spanning_tree(&self) -> Vec<bool> {
        let n = self.vertex_count();
        let rank = self.basis().rank();
        let mut seen = vec![false; n];
        let mut tree = vec![false; n * rank];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for x in self.basis().letters() {
                let Some(t) = self.target(v, x) else { continue };
                if !seen[t] {
                    seen[t] = true;
                    let source = if x.is_inverse() { t } else { v };
                    tree[source * rank + x.generator()] = true;
                    queue.push_back(t);
                }
            }
        }
        tree
    }

    /// Adds one generator, reporting whether this was an expansion without
    /// folding or an identification of two existing vertices.
    pub fn add_generator(&self, g: &ReducedWord) -> (StallingsGraph, StepKind) {
        if self.contains(g) {
            return (self.clone(), StepKind::NoOp);
        }
        let letters = g.letters();
        let mut prefix = 0;
        let mut p = 0;
        while prefix < letters.len() {
            match self.target(p, letters[prefix]) {
                Some(t) => {
                    p = t;
                    prefix += 1;
                }
                None => break,
            }
        }
        let mut suffix = 0;
        let mut q = 0;
        while suffix < letters.len() {
            match self.target(q, letters[letters.len() - 1 - suffix].inverse()) {
                Some(t) => {
                    q = t;
                    suffix += 1;
                }
                None => break,
            }
        }
        if prefix + suffix < letters.len() {
            let middle = letters[prefix..letters.len() - suffix].to_vec();
            let mut lg = LabeledGraph::from_graph(self);
            lg.add_path(p, &middle, q);
            let (out, stats) = lg.fold_with_stats();
            debug_assert_eq!(stats.merges, 0);
            let word = ReducedWord::from_reduced_vec(middle);
            return (
                out,
                StepKind::REStep {
                    from: p,
                    word,
                    to: q,
                },
            );
        }
        // the whole word is readable from the basepoint up to `prefix`; the rest
        // is read backwards from the basepoint
        let tail_back: Vec<Letter> = letters[prefix..]
            .iter()
            .rev()
            .map(|x| x.inverse())
            .collect();
        let q = self.read(0, &tail_back).expect("suffix readable");
        let (p, q) = (p.min(q), p.max(q));
        debug_assert_ne!(p, q);
        let out = self.identify_and_fold(&[(p, q)]).expect("vertices exist");
        (out, StepKind::IStep { p, q })
    }
}
