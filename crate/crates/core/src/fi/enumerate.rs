use std::collections::HashMap;

use super::{nerode_labels, quotient, VertexPartition};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::{CoreAutomaton, StallingsGraph};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Abort with [`Error::CapExceeded`] past this many extensions.
    pub cap: usize,
    pub exec: Execution,
    /// Compute the inclusion order by pairwise homomorphism tests.
    pub order: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            cap: 1_000_000,
            exec: Execution::default(),
            order: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionMember {
    pub graph: StallingsGraph,
    /// Index of `H` in this extension.
    pub index: usize,
    /// Canonical form of `graph`.
    pub key: String,
    /// The congruence on the core of `H` whose quotient is `graph`.
    pub partition: VertexPartition,
}

/// All finite-index extensions of `H`, sorted by index and then by key.
/// `H` comes first and the commensurator last.
#[derive(Clone, Debug)]
pub struct ExtensionLattice {
    pub members: Vec<ExtensionMember>,
    /// Pairs `(i, j)`, `i ≠ j`, with member `i` contained in member `j`.
    /// Empty when the order was not requested.
    pub order: Vec<(usize, usize)>,
    /// Covering pairs `(i, j)`: member `j` contains member `i` with nothing
    /// strictly between them.
    pub hasse: Vec<(usize, usize)>,
}

impl ExtensionLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, g: &StallingsGraph) -> Option<usize> {
        self.members.iter().position(|m| &m.graph == g)
    }

    pub fn contains(&self, g: &StallingsGraph) -> bool {
        self.position(g).is_some()
    }

    /// `H_fi`.
    pub fn maximum(&self) -> &ExtensionMember {
        self.members.last().expect("a lattice always contains H")
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.order.binary_search(&(i, j)).is_ok()
    }
}

pub fn enumerate_fi_extensions(h: &StallingsGraph) -> Result<ExtensionLattice> {
    enumerate_fi_extensions_with(h, EnumerationOptions::default())
}

/// Breadth-first closure over the congruences of the core automaton that
/// refine the Nerode partition, starting from the discrete one. Each step
/// merges two classes inside one Nerode class and closes under transitions.
pub fn enumerate_fi_extensions_with(
    h: &StallingsGraph,
    opts: EnumerationOptions,
) -> Result<ExtensionLattice> {
    let d = h.decompose();
    let aut = CoreAutomaton::new(h, &d);
    let n = aut.state_count();
    let nerode = nerode_labels(&aut);

    let discrete: Vec<u32> = (0..n as u32).collect();
    let mut ids: HashMap<Vec<u32>, usize> = HashMap::from([(discrete.clone(), 0)]);
    let mut congruences = vec![discrete];
    let mut successors: Vec<Vec<usize>> = Vec::new();
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let found = exec::map(opts.exec, &congruences[frontier.clone()], |p| {
            one_merge_successors(&aut, &nerode, p)
        });
        let next_start = congruences.len();
        for list in found {
            let mut out = Vec::with_capacity(list.len());
            for c in list {
                let next = congruences.len();
                let id = *ids.entry(c).or_insert_with_key(|c| {
                    congruences.push(c.clone());
                    next
                });
                out.push(id);
            }
            out.sort_unstable();
            out.dedup();
            successors.push(out);
        }
        if congruences.len() > opts.cap {
            return Err(Error::CapExceeded(opts.cap));
        }
        frontier = next_start..congruences.len();
    }

    let hasse_raw: Vec<(usize, usize)> = successors
        .iter()
        .enumerate()
        .flat_map(|(i, succ)| {
            let minimal: Vec<usize> = succ
                .iter()
                .copied()
                .filter(|&q| {
                    !succ
                        .iter()
                        .any(|&r| r != q && refines(&congruences[r], &congruences[q]))
                })
                .collect();
            minimal.into_iter().map(move |q| (i, q))
        })
        .collect();

    let built = exec::map(opts.exec, &congruences, |labels| {
        let partition = VertexPartition::from_states(&aut, labels);
        let (graph, conflicts) = quotient(h, &d, &partition);
        debug_assert_eq!(conflicts, 0, "a congruence quotient is deterministic");
        let index = n / partition.block_count();
        ExtensionMember {
            key: graph.canonical_form(),
            graph,
            index,
            partition,
        }
    });
    let mut order_of: Vec<usize> = (0..built.len()).collect();
    order_of
        .sort_by(|&a, &b| (built[a].index, &built[a].key).cmp(&(built[b].index, &built[b].key)));
    let mut rank = vec![0; built.len()];
    for (pos, &i) in order_of.iter().enumerate() {
        rank[i] = pos;
    }
    let mut slots: Vec<Option<ExtensionMember>> = built.into_iter().map(Some).collect();
    let members: Vec<ExtensionMember> =
        order_of.iter().map(|&i| slots[i].take().unwrap()).collect();
    let mut hasse: Vec<(usize, usize)> = hasse_raw
        .into_iter()
        .map(|(a, b)| (rank[a], rank[b]))
        .collect();
    hasse.sort_unstable();

    let order = if opts.order {
        let rows = exec::map_range(opts.exec, members.len(), |i| {
            (0..members.len())
                .filter(|&j| j != i && members[i].graph.homomorphism(&members[j].graph).is_some())
                .map(|j| (i, j))
                .collect::<Vec<_>>()
        });
        rows.into_iter().flatten().collect()
    } else {
        Vec::new()
    };
    Ok(ExtensionLattice {
        members,
        order,
        hasse,
    })
}

/// Congruences obtained from `p` by merging two of its classes that lie in
/// one Nerode class.
fn one_merge_successors(aut: &CoreAutomaton, nerode: &[u32], p: &[u32]) -> Vec<Vec<u32>> {
    // first state of each class, grouped by Nerode class
    let classes = p.iter().max().map_or(0, |&m| m as usize + 1);
    let mut rep = vec![u32::MAX; classes];
    let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
    for (s, &c) in p.iter().enumerate() {
        if rep[c as usize] == u32::MAX {
            rep[c as usize] = s as u32;
            groups.entry(nerode[s]).or_default().push(s);
        }
    }
    let mut out = Vec::new();
    let mut groups: Vec<Vec<usize>> = groups.into_values().collect();
    groups.sort_unstable();
    for g in &groups {
        for (i, &s) in g.iter().enumerate() {
            for &t in &g[i + 1..] {
                out.push(merge_closure(aut, p, &rep, s, t));
            }
        }
    }
    out
}

/// The least congruence containing `p` and the pair `(s, t)`.
fn merge_closure(aut: &CoreAutomaton, p: &[u32], rep: &[u32], s: usize, t: usize) -> Vec<u32> {
    let mut uf = UnionFind::new(p.len());
    for (x, &c) in p.iter().enumerate() {
        uf.union(x, rep[c as usize] as usize);
    }
    let k = aut.letter_count();
    let mut work = vec![(s, t)];
    while let Some((x, y)) = work.pop() {
        if uf.union(x, y).is_none() {
            continue;
        }
        for c in 0..k {
            if let (Some(x2), Some(y2)) = (aut.next(x, c), aut.next(y, c)) {
                work.push((x2, y2));
            }
        }
    }
    uf.classes().0
}

/// Whether labeling `a` is finer than or equal to labeling `b`.
fn refines(a: &[u32], b: &[u32]) -> bool {
    let mut image = HashMap::new();
    a.iter()
        .zip(b)
        .all(|(&x, &y)| *image.entry(x).or_insert(y) == y)
}
