//! Finite-index extensions.
//!
//! `H ≤ G` has finite index exactly when `G` arises from `H` by identifying
//! core vertices with equal state languages. Those languages are compared on
//! the core automaton: two states are equivalent when the automata started
//! there accept the same words, which is the Nerode relation computed by
//! partition refinement.

mod count;
mod enumerate;
mod language;
mod minimize;

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CoreAutomaton, CoreDecomposition, LabeledGraph, StallingsGraph, NONE};
use crate::words::Letter;

pub use count::{fi_extension_bound, subspace_count, FiBound, SubspaceCount};
pub use enumerate::{
    enumerate_fi_extensions, enumerate_fi_extensions_with, EnumerationOptions, ExtensionLattice,
    ExtensionMember,
};
pub use language::{validate_extension_language, LanguageReport, LanguageView};

/// A partition of the core vertices of a graph. Tail vertices belong to no
/// block. Blocks are numbered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    block: Vec<u32>,
    count: usize,
}

impl VertexPartition {
    /// Builds a partition from per-vertex labels; `None` marks a vertex
    /// outside the partitioned set.
    pub fn from_labels(labels: &[Option<usize>]) -> Self {
        let mut relabel = std::collections::HashMap::new();
        let block = labels
            .iter()
            .map(|l| match l {
                Some(l) => {
                    let next = relabel.len() as u32;
                    *relabel.entry(*l).or_insert(next)
                }
                None => NONE,
            })
            .collect();
        VertexPartition {
            block,
            count: relabel.len(),
        }
    }

    /// Lifts labels on automaton states to labels on graph vertices. The
    /// labels must be numbered by first occurrence; states follow vertex
    /// order, so block numbers already follow smallest vertices.
    fn from_states(aut: &CoreAutomaton, labels: &[u32]) -> Self {
        let mut block = vec![NONE; aut.graph_vertex_count()];
        for (s, &l) in labels.iter().enumerate() {
            block[aut.vertex(s)] = l;
        }
        let count = labels.iter().max().map_or(0, |&m| m as usize + 1);
        VertexPartition { block, count }
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.block
            .get(v)
            .copied()
            .filter(|&b| b != NONE)
            .map(|b| b as usize)
    }

    pub fn block_count(&self) -> usize {
        self.count
    }

    pub fn same(&self, p: usize, q: usize) -> bool {
        matches!((self.block_of(p), self.block_of(q)), (Some(a), Some(b)) if a == b)
    }

    /// Each block as a sorted list of vertices, in block order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &b) in self.block.iter().enumerate() {
            if b != NONE {
                out[b as usize].push(v);
            }
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.count == self.block.iter().filter(|&&b| b != NONE).count()
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &VertexPartition) -> bool {
        if self.block.len() != coarser.block.len() {
            return false;
        }
        let mut image = vec![NONE; self.count];
        for (&b, &c) in self.block.iter().zip(&coarser.block) {
            if (b == NONE) != (c == NONE) {
                return false;
            }
            if b == NONE {
                continue;
            }
            let slot = &mut image[b as usize];
            if *slot == NONE {
                *slot = c;
            } else if *slot != c {
                return false;
            }
        }
        true
    }

    /// The sorted blocks written as `0,1|2|3`.
    pub fn key(&self) -> String {
        let mut out = String::new();
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
        }
        out
    }
}

/// State labels of the Nerode partition of a core automaton, numbered by
/// first occurrence.
pub(crate) fn nerode_labels(aut: &CoreAutomaton) -> Vec<u32> {
    minimize::refine_involutive(aut.state_count(), aut.letter_count(), aut.table())
}

/// States are equivalent iff they accept the same words.
pub fn nerode_partition(aut: &CoreAutomaton) -> VertexPartition {
    VertexPartition::from_states(aut, &nerode_labels(aut))
}

/// Quotient of `h` by a partition of its core; the tail is kept as is.
/// Returns the graph and the number of determinism conflicts met while
/// gluing, which are then resolved by folding.
pub(crate) fn quotient(
    h: &StallingsGraph,
    d: &CoreDecomposition,
    p: &VertexPartition,
) -> (StallingsGraph, usize) {
    let k = h.basis().letter_count();
    let tail = d.tail_vertices.len();
    let m = tail + p.block_count();
    if p.is_discrete() {
        return (h.clone(), 0);
    }
    let mut id = vec![0u32; h.vertex_count()];
    for (i, &v) in d.tail_vertices.iter().enumerate() {
        id[v] = i as u32;
    }
    for &v in &d.core_vertices {
        id[v] = (tail + p.block_of(v).expect("core vertex in partition")) as u32;
    }
    let mut delta = vec![NONE; m * k];
    let mut conflicts = 0;
    for v in 0..h.vertex_count() {
        for c in 0..k {
            let Some(t) = h.target_code(v, c) else {
                continue;
            };
            let slot = &mut delta[id[v] as usize * k + c];
            if *slot == NONE {
                *slot = id[t];
            } else if *slot != id[t] {
                conflicts += 1;
            }
        }
    }
    if conflicts == 0 {
        return (
            StallingsGraph::canonical_from_table(h.basis(), &delta, 0),
            0,
        );
    }
    let mut g = LabeledGraph::new(h.basis());
    for _ in 1..m {
        g.add_vertex();
    }
    for (v, x, t) in h.edges() {
        g.add_edge(id[v] as usize, x, id[t] as usize);
    }
    (g.fold_and_prune(), conflicts)
}

/// Result of [`commensurator_with_report`].
#[derive(Clone, Debug)]
pub struct CommensuratorReport {
    pub graph: StallingsGraph,
    /// Determinism conflicts met while forming the quotient.
    pub fold_conflicts: usize,
    pub partition: VertexPartition,
}

/// The maximum finite-index extension `H_fi`, which is the commensurator of
/// `H` in `F`.
pub fn commensurator(h: &StallingsGraph) -> StallingsGraph {
    commensurator_with_report(h).graph
}

pub fn commensurator_with_report(h: &StallingsGraph) -> CommensuratorReport {
    let d = h.decompose();
    let aut = CoreAutomaton::new(h, &d);
    let partition = nerode_partition(&aut);
    let (graph, fold_conflicts) = quotient(h, &d, &partition);
    CommensuratorReport {
        graph,
        fold_conflicts,
        partition,
    }
}

fn check_vertex(h: &StallingsGraph, v: usize) -> Result<()> {
    if v < h.vertex_count() {
        Ok(())
    } else {
        Err(Error::UnknownVertex {
            vertex: v,
            count: h.vertex_count(),
        })
    }
}

fn check_pair(h: &StallingsGraph, p: usize, q: usize) -> Result<()> {
    check_vertex(h, p)?;
    check_vertex(h, q)?;
    if p == q {
        return Err(Error::SameVertex(p));
    }
    Ok(())
}

/// Whether identifying `p` and `q` (then folding) yields a finite-index
/// extension: both must be core vertices with equal languages.
pub fn is_identification_fi(h: &StallingsGraph, p: usize, q: usize) -> Result<bool> {
    check_pair(h, p, q)?;
    Ok(nerode_partition(&h.core_automaton()).same(p, q))
}

/// Identifies each pair and folds. See [`StallingsGraph::identify_and_fold`].
pub fn identify_and_fold(h: &StallingsGraph, pairs: &[(usize, usize)]) -> Result<StallingsGraph> {
    h.identify_and_fold(pairs)
}

/// Equivalence of `p` and `q` decided on the fiber square of the core: both
/// projections of the component of `(p, q)` must be covers. Equal vertices are
/// allowed.
pub fn sim_by_product_covers(h: &StallingsGraph, p: usize, q: usize) -> Result<bool> {
    check_vertex(h, p)?;
    check_vertex(h, q)?;
    let aut = h.core_automaton();
    let (Some(sp), Some(sq)) = (aut.state(p), aut.state(q)) else {
        return Err(Error::OutOfRange(format!(
            "vertices {p} and {q} must both lie in the core"
        )));
    };
    Ok(synchronized_search(&aut, sp, &aut, sq))
}

/// Breadth-first search over pairs of states; fails as soon as one side has
/// a transition the other lacks.
fn synchronized_search(a: &CoreAutomaton, s: usize, b: &CoreAutomaton, t: usize) -> bool {
    let k = a.letter_count();
    debug_assert_eq!(k, b.letter_count());
    let mut seen = std::collections::HashSet::from([(s, t)]);
    let mut queue = VecDeque::from([(s, t)]);
    while let Some((x, y)) = queue.pop_front() {
        for c in 0..k {
            match (a.next(x, c), b.next(y, c)) {
                (None, None) => {}
                (Some(x2), Some(y2)) => {
                    if seen.insert((x2, y2)) {
                        queue.push_back((x2, y2));
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Whether `H` and `K` have the same commensurator: equal tail words and
/// equal core languages from the core entries.
pub fn fi_equivalent(h: &StallingsGraph, k: &StallingsGraph) -> bool {
    let basis = h.basis().max(k.basis());
    let (h, k) = (h.with_basis(basis).unwrap(), k.with_basis(basis).unwrap());
    let (dh, dk) = (h.decompose(), k.decompose());
    if dh.tail_word != dk.tail_word {
        return false;
    }
    let (ah, ak) = (CoreAutomaton::new(&h, &dh), CoreAutomaton::new(&k, &dk));
    synchronized_search(&ah, ah.entry(), &ak, ak.entry())
}

/// Transitions out of state `s`.
pub(crate) fn letters_at(
    aut: &CoreAutomaton,
    s: usize,
) -> impl Iterator<Item = (Letter, usize)> + '_ {
    (0..aut.letter_count()).filter_map(move |c| aut.next(s, c).map(|t| (Letter::from_code(c), t)))
}
