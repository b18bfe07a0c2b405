//! Fuzz sources and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use stallings::random::{random_cover, random_reduced_word, rng};
use stallings::{Basis, LabeledGraph, Letter, ReducedWord, StallingsGraph};

pub fn basis(rank: usize) -> Basis {
    Basis::new(rank).unwrap()
}

pub fn sub(rank: usize, gens: &[&str]) -> StallingsGraph {
    let b = basis(rank);
    let ws: Vec<_> = gens
        .iter()
        .map(|g| ReducedWord::parse(g, b).unwrap())
        .collect();
    StallingsGraph::build(b, &ws)
}

pub fn word(rank: usize, w: &str) -> ReducedWord {
    ReducedWord::parse(w, basis(rank)).unwrap()
}

/// Random subgroup from the seed: a few short random generators, optionally
/// replaced by a random cover (to create languages shared by several
/// vertices) and conjugated (to create a tail).
pub fn fuzz_subgroup(seed: u64, rank: usize) -> StallingsGraph {
    let mut r = rng(seed);
    let b = basis(rank);
    let gens: Vec<ReducedWord> = (0..r.gen_range(1..=3))
        .map(|_| {
            let len = r.gen_range(1..=5);
            random_reduced_word(&mut r, b, len)
        })
        .collect();
    let mut h = StallingsGraph::build(b, &gens);
    if r.gen_bool(0.6) && !h.is_trivial() {
        h = random_cover(&h, r.gen_range(2..=3), r.gen());
    }
    if r.gen_bool(0.3) {
        let len = r.gen_range(1..=2);
        h = h.conjugate(&random_reduced_word(&mut r, b, len));
    }
    h
}

/// `count` fuzzed nontrivial subgroups whose graphs satisfy `keep`, drawn
/// from consecutive seeds starting at `start`.
pub fn fuzz_corpus(
    start: u64,
    count: usize,
    rank: usize,
    keep: impl Fn(&StallingsGraph) -> bool,
) -> Vec<StallingsGraph> {
    (start..)
        .map(|s| fuzz_subgroup(s, rank))
        .filter(|h| !h.is_trivial() && keep(h))
        .take(count)
        .collect()
}

/// Every partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    go(&mut vec![0], 0, n, &mut out);
    out
}

/// The quotient of `h` by a vertex partition, folded and pruned.
pub fn quotient_by(h: &StallingsGraph, labels: &[usize]) -> StallingsGraph {
    let mut g = LabeledGraph::from_graph(h);
    let mut first = vec![usize::MAX; labels.len()];
    for (v, &l) in labels.iter().enumerate() {
        if first[l] == usize::MAX {
            first[l] = v;
        } else {
            g.identify(first[l], v);
        }
    }
    g.fold_and_prune()
}

/// Every distinct folded quotient of `h` over all vertex partitions.
pub fn all_quotients(h: &StallingsGraph) -> Vec<StallingsGraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in set_partitions(h.vertex_count()) {
        let q = quotient_by(h, &p);
        if seen.insert(q.canonical_form()) {
            out.push(q);
        }
    }
    out
}

/// Random reduced closed walk at the basepoint of `g` of length at most
/// `max_len`, reduced afterwards.
pub fn random_loop<R: Rng>(r: &mut R, g: &StallingsGraph, max_len: usize) -> ReducedWord {
    let len = r.gen_range(0..=max_len);
    let mut letters = Vec::new();
    let mut v = 0;
    for _ in 0..len {
        let options: Vec<Letter> = g
            .basis()
            .letters()
            .filter(|&x| g.target(v, x).is_some())
            .collect();
        if options.is_empty() {
            break;
        }
        let x = options[r.gen_range(0..options.len())];
        v = g.target(v, x).unwrap();
        letters.push(x);
    }
    // walk back to the basepoint along the spanning-tree word
    let back = path_to_base(g, v);
    letters.extend(back);
    ReducedWord::from_letters(letters)
}

/// A word labeling a path from `v` to the basepoint.
pub fn path_to_base(g: &StallingsGraph, v: usize) -> Vec<Letter> {
    let n = g.vertex_count();
    let mut prev: Vec<Option<(usize, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for x in g.basis().letters() {
            if let Some(t) = g.target(u, x) {
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((u, x));
                    queue.push_back(t);
                }
            }
        }
    }
    // prev gives base -> v; invert it
    let mut out = Vec::new();
    let mut cur = v;
    while let Some((u, x)) = prev[cur] {
        out.push(x.inverse());
        cur = u;
    }
    out
}
