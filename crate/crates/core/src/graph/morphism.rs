use super::{StallingsGraph, NONE};

/// The unique basepoint- and label-preserving map `Γ(H) → Γ(G)`, which exists
/// exactly when `H ≤ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    map: Vec<usize>,
    target_vertices: usize,
}

impl GraphMorphism {
    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_vertices];
        self.map
            .iter()
            .all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    /// Number of preimages of each target vertex.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target_vertices];
        for &t in &self.map {
            sizes[t] += 1;
        }
        sizes
    }
}

impl StallingsGraph {
    /// Simultaneous traversal from the two basepoints.
    pub fn homomorphism(&self, target: &StallingsGraph) -> Option<GraphMorphism> {
        if self.basis() != target.basis() {
            let (a, b) = lift_pair(self, target);
            return a.homomorphism(&b);
        }
        let k = self.basis().letter_count();
        let n = self.vertex_count();
        let mut map = vec![NONE; n];
        map[0] = 0;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let image = map[v] as usize;
            for c in 0..k {
                let Some(w) = self.target_code(v, c) else {
                    continue;
                };
                let t = target.target_code(image, c)? as u32;
                if map[w] == NONE {
                    map[w] = t;
                    stack.push(w);
                } else if map[w] != t {
                    return None;
                }
            }
        }
        Some(GraphMorphism {
            map: map.into_iter().map(|t| t as usize).collect(),
            target_vertices: target.vertex_count(),
        })
    }

    /// `Some(index)` iff `self` is a finite-index subgroup of `larger`: the
    /// tails agree and the morphism restricted to the cores is a cover. The
    /// index is the common fiber size over core vertices.
    pub fn is_fi_extension(&self, larger: &StallingsGraph) -> Option<usize> {
        if self.basis() != larger.basis() {
            let (a, b) = lift_pair(self, larger);
            return a.is_fi_extension(&b);
        }
        let phi = self.homomorphism(larger)?;
        let dh = self.decompose();
        let dg = larger.decompose();
        if dh.tail_word != dg.tail_word {
            return None;
        }
        let k = self.basis().letter_count();
        for &p in &dh.core_vertices {
            let image = phi.image(p);
            if !dg.is_core(image) {
                return None;
            }
            for c in 0..k {
                let lifted = self.target_code(p, c).is_some_and(|t| dh.is_core(t));
                let below = larger.target_code(image, c).is_some_and(|t| dg.is_core(t));
                if below && !lifted {
                    return None;
                }
            }
        }
        let mut fibers = vec![0usize; larger.vertex_count()];
        for &p in &dh.core_vertices {
            fibers[phi.image(p)] += 1;
        }
        let d = fibers[dg.core_entry];
        if d == 0 || dg.core_vertices.iter().any(|&q| fibers[q] != d) {
            return None;
        }
        Some(d)
    }
}

/// Both graphs over the larger of their two bases.
pub(crate) fn lift_pair(
    a: &StallingsGraph,
    b: &StallingsGraph,
) -> (StallingsGraph, StallingsGraph) {
    let basis = a.basis().max(b.basis());
    (a.with_basis(basis).unwrap(), b.with_basis(basis).unwrap())
}
