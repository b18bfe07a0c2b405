//! Seeded random subgroups, graphs and covers. Every generator here is a
//! pure function of its arguments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{StallingsGraph, SubgroupFile, NONE};
use crate::words::{Basis, Letter, ReducedWord};

/// Parameters of a random subgroup file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub rank: usize,
    pub generators: usize,
    /// Generator lengths are drawn uniformly from `1..=max_len`.
    pub max_len: usize,
    pub seed: u64,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random reduced word of length `len`.
pub fn random_reduced_word<R: Rng>(rng: &mut R, basis: Basis, len: usize) -> ReducedWord {
    let k = basis.letter_count();
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let x = match letters.last() {
            None => Letter::from_code(rng.gen_range(0..k)),
            Some(prev) => {
                // skip the one code that would cancel
                let c = rng.gen_range(0..k - 1);
                let banned = prev.inverse().code();
                Letter::from_code(if c >= banned { c + 1 } else { c })
            }
        };
        letters.push(x);
    }
    ReducedWord::from_letters(letters)
}

pub fn random_subgroup(spec: &RandomSpec) -> Result<SubgroupFile> {
    let basis = Basis::new(spec.rank)?;
    if spec.generators > 0 && spec.max_len == 0 {
        return Err(Error::OutOfRange(
            "generator length bound must be at least 1".into(),
        ));
    }
    let mut rng = rng(spec.seed);
    let generators = (0..spec.generators)
        .map(|_| {
            let len = rng.gen_range(1..=spec.max_len);
            random_reduced_word(&mut rng, basis, len)
        })
        .collect();
    Ok(SubgroupFile { basis, generators })
}

/// A random graph on about `n` vertices: each generator acts by a random
/// permutation with each edge kept with probability `density`. Returns the
/// component of vertex 0, pruned to admissibility.
pub fn random_graph(basis: Basis, n: usize, density: f64, seed: u64) -> StallingsGraph {
    let k = basis.letter_count();
    let mut rng = rng(seed);
    let mut delta = vec![NONE; n.max(1) * k];
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for g in 0..basis.rank() {
        perm.shuffle(&mut rng);
        for (v, &t) in perm.iter().enumerate() {
            if rng.gen_bool(density) {
                delta[v * k + 2 * g] = t;
                delta[t as usize * k + 2 * g + 1] = v as u32;
            }
        }
    }
    StallingsGraph::canonical_from_table(basis, &delta, 0).pruned()
}

/// A random `r`-sheeted cover of `g`, cut down to the component of the lifted
/// basepoint and pruned. It represents a finite-index subgroup of `g`.
pub fn random_cover(g: &StallingsGraph, r: usize, seed: u64) -> StallingsGraph {
    let r = r.max(1);
    let k = g.basis().letter_count();
    let mut rng = rng(seed);
    let mut delta = vec![NONE; g.vertex_count() * r * k];
    let mut sheets: Vec<usize> = (0..r).collect();
    for (p, a, q) in g.edges() {
        sheets.shuffle(&mut rng);
        for (i, &j) in sheets.iter().enumerate() {
            let (s, t) = (p * r + i, q * r + j);
            delta[s * k + a.code()] = t as u32;
            delta[t * k + a.inverse().code()] = s as u32;
        }
    }
    StallingsGraph::canonical_from_table(g.basis(), &delta, 0).pruned()
}

/// The kernel of `F_k → Z_2^k`: the Cayley graph of `Z_2^k` on the standard
/// generators. Vertex ids are bit masks before canonical renumbering.
pub fn hypercube_graph(k: usize) -> Result<StallingsGraph> {
    let basis = Basis::new(k)?;
    if k > 20 {
        return Err(Error::OutOfRange(format!(
            "hypercube dimension {k} is too large"
        )));
    }
    let edges: Vec<_> = (0..1usize << k)
        .flat_map(|v| (0..k).map(move |i| (v, Letter::positive(i), v ^ (1 << i))))
        .collect();
    StallingsGraph::from_edges(basis, 1 << k, 0, &edges)
}
